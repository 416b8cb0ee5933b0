import logging
import numpy as np
import pandas as pd
from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Sequence, Tuple
from multiplicative_ising.errors import TooLargeForEnumeration
from multiplicative_ising.gibbs.measure import CylinderEvent
from multiplicative_ising.lattice.chains import (
    ChainDecomposition,
    Site,
    decompose_box,
    format_site,
)
from multiplicative_ising.lattice.semigroup import SemigroupSpec
from multiplicative_ising.postprocessor.intervals import clopper_pearson_interval
from multiplicative_ising.thermodynamics.transfer import bond_agreement

logger = logging.getLogger(__name__)

SHARD_SIZE = 1000
MAX_SAMPLE_SITES = 10**7


@dataclass(frozen=True)
class SampleResult:
    """
    Parameters:
    -----------
        sites:
            retained chain members, grouped by root and ordered by rank
        configurations:
            int8 array of shape (count, len(sites)) with entries -+1
    """

    sites: Tuple[Site, ...]
    configurations: np.ndarray
    seed: int
    beta: float

    def column(self, site: Site) -> np.ndarray:
        return self.configurations[:, self.sites.index(site)]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.configurations, columns=[format_site(s) for s in self.sites])


def _sample_shard(args) -> np.ndarray:
    lengths, q, count, seed_seq = args
    rng = np.random.default_rng(seed_seq)
    blocks = []
    for length, n_chains in lengths:
        first = rng.choice(np.array([-1, 1], dtype=np.int8), size=(count, n_chains, 1))
        agree = rng.random((count, n_chains, length - 1)) < q
        bonds = np.where(agree, 1, -1).astype(np.int8)
        spins = first * np.cumprod(np.concatenate([np.ones_like(first), bonds], axis=2), axis=2)
        blocks.append(spins.reshape(count, n_chains * length))
    return np.concatenate(blocks, axis=1).astype(np.int8)


def _grouped(decomposition: ChainDecomposition):
    """chains grouped by length, with the column order they are sampled in"""
    groups: Dict[int, List] = {}
    for chain in decomposition.chains:
        groups.setdefault(chain.length, []).append(chain)
    order = []
    for length in sorted(groups):
        for chain in groups[length]:
            order.extend(chain.members)
    return [(length, len(groups[length])) for length in sorted(groups)], order


def sample_box(
    box: Sequence[int],
    beta: float,
    spec: SemigroupSpec,
    j: int = None,
    seed: int = 0,
    count: int = 1,
    cap: str = "coordinate",
    executor: str = "iterative",
    workers: int = 4,
) -> SampleResult:
    """
    draw configurations of the retained chain sites from the limit measure

    each chain starts with a uniform spin and every bond agrees with
    probability q = e^beta / (2 cosh beta). Configurations are split into
    shards of SHARD_SIZE with seeds spawned from one SeedSequence, so the
    output only depends on seed and count.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    decomposition = decompose_box(box, spec, j, cap)
    if decomposition.retained_count > MAX_SAMPLE_SITES:
        raise TooLargeForEnumeration(decomposition.retained_count, MAX_SAMPLE_SITES)
    lengths, order = _grouped(decomposition)
    q = bond_agreement(beta)
    sizes = [SHARD_SIZE] * (count // SHARD_SIZE)
    if count % SHARD_SIZE:
        sizes.append(count % SHARD_SIZE)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    tasks = [(lengths, q, size, s) for size, s in zip(sizes, seeds)]
    if executor == "futures":
        with ProcessPoolExecutor(max_workers=workers) as pool:
            shards = list(pool.map(_sample_shard, tasks))
    else:
        shards = [_sample_shard(task) for task in tasks]
    logger.debug(f"sampled {count} configurations of {len(order)} sites in {len(sizes)} shards")
    # restore root order
    position = {site: i for i, site in enumerate(order)}
    sites = decomposition.sites
    columns = [position[s] for s in sites]
    configurations = np.concatenate(shards, axis=0)[:, columns]
    return SampleResult(sites=sites, configurations=configurations, seed=seed, beta=beta)


def empirical_cylinder_frequency(
    sample: SampleResult, event: CylinderEvent, coverage: float = None
) -> Tuple[float, Tuple[float, float]]:
    """
    fraction of sampled configurations in the event, with a Clopper-Pearson interval
    """
    mask = np.ones(len(sample.configurations), dtype=bool)
    for site, value in zip(event.sites, event.values):
        mask &= sample.column(site) == value
    hits, total = int(mask.sum()), len(mask)
    lower, upper = clopper_pearson_interval(hits, total, coverage)
    return hits / total, (float(lower), float(upper))
