"""
Reference values by exhaustive enumeration of spin configurations.

Nothing here reuses the chain decomposition, the census or the transfer
matrix: chains are rebuilt by trial division and integer scans, and every
expectation is a plain sum over 2^n configurations.
"""
import math
import logging
import itertools
import numpy as np
from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Sequence, Tuple
from scipy.special import entr
from multiplicative_ising.constants import ENUMERATION_CHUNK_BITS, MAX_ENUMERATION_SITES
from multiplicative_ising.errors import TooLargeForEnumeration, UnboundedChain
from multiplicative_ising.gibbs.measure import CylinderEvent
from multiplicative_ising.lattice.semigroup import SemigroupSpec

logger = logging.getLogger(__name__)

Site = Tuple[int, ...]


@dataclass(frozen=True)
class InvolvedSiteSet:
    """
    sites touched by the multiple sum of a box

    Parameters:
    -----------
        sites:
            ordered sites, bit b of a configuration index is the spin of sites[b]
        bonds:
            (a, b) position pairs, one per term sigma_a sigma_b of the sum
        volume:
            N_1 ... N_d
    """

    sites: Tuple[Site, ...]
    bonds: Tuple[Tuple[int, int], ...]
    volume: int

    @property
    def index(self) -> Dict[Site, int]:
        return {s: i for i, s in enumerate(self.sites)}

    def __len__(self):
        return len(self.sites)


def _divides(p: Site, x: Site) -> bool:
    return all(c % q == 0 for c, q in zip(x, p))


def _is_root(x: Site, generators) -> bool:
    return not any(_divides(p, x) for p in generators)


def _is_smooth(t: int, section: Sequence[int]) -> bool:
    for p in section:
        while t % p == 0:
            t //= p
    return t == 1


def _next_smooth(t: int, section: Sequence[int]) -> int:
    t += 1
    while not _is_smooth(t, section):
        t += 1
    return t


def _lift(x: Site, t: int, spec: SemigroupSpec, j: int) -> Site:
    """x times the element g of G with g_j = t"""
    out = list(x)
    for p in spec.generators:
        q = p[j - 1]
        while t % q == 0:
            t //= q
            out = [a * b for a, b in zip(out, p)]
    return tuple(out)


def involved_sites(
    spec: SemigroupSpec,
    box: Sequence[int],
    j: int = None,
    cap: str = "coordinate",
) -> InvolvedSiteSet:
    """
    every sigma_m sigma_succ(m) term of the multiple sum over the box

    Parameters:
    -----------
        cap:
            'coordinate' keeps chain members with j-th coordinate <= N_j,
            'rank' keeps them up to the largest member inside the box
    """
    j = spec.direction if j is None else j
    if any(p[j - 1] == 1 for p in spec.generators):
        raise UnboundedChain(f"the brute-force sum needs every generator to move coordinate {j}")
    section = [p[j - 1] for p in spec.generators]
    box = tuple(box)
    pairs = []
    for x in itertools.product(*(range(1, n + 1) for n in box)):
        if not _is_root(x, spec.generators):
            continue
        limit = box[j - 1] // x[j - 1]
        if cap == "rank":
            inside = [
                t
                for t in range(1, limit + 1)
                if _is_smooth(t, section)
                and all(a <= n for a, n in zip(_lift(x, t, spec, j), box))
            ]
            limit = max(inside)
        for t in range(1, limit + 1):
            if _is_smooth(t, section):
                pairs.append((_lift(x, t, spec, j), _lift(x, _next_smooth(t, section), spec, j)))
    sites = sorted({s for pair in pairs for s in pair})
    index = {s: i for i, s in enumerate(sites)}
    return InvolvedSiteSet(
        sites=tuple(sites),
        bonds=tuple((index[a], index[b]) for a, b in pairs),
        volume=math.prod(box),
    )


def _spins(start: int, stop: int, n: int) -> np.ndarray:
    index = np.arange(start, stop, dtype=np.int64)
    return (1 - 2 * ((index[:, None] >> np.arange(n)) & 1)).astype(np.int8)


def _chunk_sums(args) -> Tuple[float, float]:
    """(sum of all weights, sum over configurations matching the pins) on one index range"""
    start, stop, n, bonds, beta, log_r, log_1mr, shift, pins = args
    spins = _spins(start, stop, n)
    a, b = np.array([x for x, _ in bonds], dtype=int), np.array([y for _, y in bonds], dtype=int)
    S = np.sum(spins[:, a].astype(np.int64) * spins[:, b], axis=1) if len(bonds) else 0
    n_plus = np.sum(spins == 1, axis=1)
    log_weight = beta * S - shift
    if log_r is not None:
        log_weight = log_weight + n_plus * log_r + (n - n_plus) * log_1mr
    weights = np.exp(log_weight) * np.ones(len(spins))
    mask = np.ones(len(spins), dtype=bool)
    for position, value in pins:
        mask &= spins[:, position] == value
    return math.fsum(weights), math.fsum(weights[mask])


def _enumerate(n, bonds, beta, log_r, log_1mr, pins, executor, workers) -> Tuple[float, float, float]:
    shift = abs(beta) * len(bonds)
    chunk = 2**ENUMERATION_CHUNK_BITS
    tasks = [
        (start, min(start + chunk, 2**n), n, bonds, beta, log_r, log_1mr, shift, pins)
        for start in range(0, 2**n, chunk)
    ]
    if executor == "futures":
        with ProcessPoolExecutor(max_workers=workers) as pool:
            sums = list(pool.map(_chunk_sums, tasks))
    else:
        sums = [_chunk_sums(task) for task in tasks]
    total = math.fsum(s for s, _ in sums)
    matched = math.fsum(m for _, m in sums)
    return total, matched, shift


def brute_force_mgf(
    r: float,
    beta: float,
    spec: SemigroupSpec,
    box: Sequence[int],
    j: int = None,
    cap: str = "coordinate",
    normalize: str = "volume",
    max_sites: int = MAX_ENUMERATION_SITES,
    executor: str = "iterative",
    workers: int = 4,
) -> float:
    """
    (1/|box|) log sum_config P_r(config) exp(beta S(config)) over all 2^n configurations
    """
    involved = involved_sites(spec, box, j, cap)
    if len(involved) > max_sites:
        raise TooLargeForEnumeration(len(involved), max_sites)
    total, _, shift = _enumerate(
        len(involved), involved.bonds, beta, math.log(r), math.log(1 - r), (), executor, workers
    )
    log_mgf = math.log(total) + shift
    if normalize == "site":
        return log_mgf / len(involved.bonds)
    return log_mgf / involved.volume


def brute_force_cylinder(
    event: CylinderEvent,
    beta: float,
    spec: SemigroupSpec,
    box: Sequence[int],
    j: int = None,
    cap: str = "coordinate",
    max_sites: int = MAX_ENUMERATION_SITES,
    executor: str = "iterative",
    workers: int = 4,
) -> float:
    """finite-volume Gibbs probability of the event, exp(beta S) over all configurations"""
    involved = involved_sites(spec, box, j, cap)
    if len(involved) > max_sites:
        raise TooLargeForEnumeration(len(involved), max_sites)
    index = involved.index
    pins = tuple((index[s], v) for s, v in zip(event.sites, event.values) if s in index)
    n_outside = len(event) - len(pins)
    total, matched, _ = _enumerate(
        len(involved), involved.bonds, beta, None, None, pins, executor, workers
    )
    return matched / total * 0.5**n_outside


def brute_force_block_entropy(beta: float, k: int, tail: int = 2) -> float:
    """
    -sum p log p over the 2^k blocks at the start of a free-ended chain

    block probabilities are ratios of pinned partition sums of a chain of
    k + tail spins
    """
    n = k + tail
    spins = _spins(0, 2**n, n).astype(np.int64)
    weights = np.exp(beta * np.sum(spins[:, :-1] * spins[:, 1:], axis=1) - abs(beta) * (n - 1))
    block_index = np.arange(2**n) & (2**k - 1)
    pinned: List[float] = [math.fsum(weights[block_index == b]) for b in range(2**k)]
    Z = math.fsum(pinned)
    return math.fsum(entr(np.array(pinned) / Z))
