import math
import bisect
import logging
import itertools
import pandas as pd
from fractions import Fraction
from functools import lru_cache
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union
from multiplicative_ising.errors import OrderAmbiguity, UnboundedChain
from multiplicative_ising.lattice.semigroup import (
    SemigroupSpec,
    enumerate_scalar_semigroup,
    first_elements,
    normalization_constant,
)

logger = logging.getLogger(__name__)

Site = Tuple[int, ...]
CAPS = ("coordinate", "rank")


def as_site(i: Union[int, Sequence[int]], d: int) -> Site:
    """normalize a scalar (d=1) or a vector index to a d-tuple of positive ints"""
    site = (int(i),) if isinstance(i, int) else tuple(int(x) for x in i)
    if len(site) != d or any(x < 1 for x in site):
        raise ValueError(f"{i} is not a point of N^{d}")
    return site


def format_site(site: Site) -> str:
    return ":".join(str(x) for x in site)


def check_cap(cap: str) -> None:
    if cap not in CAPS:
        raise ValueError(f"Incorrect cap '{cap}'. Available options are: {CAPS}")


def _valuation(x: int, m: int) -> int:
    a = 0
    while x % m == 0:
        x //= m
        a += 1
    return a


def _apply(site: Site, exponents: Sequence[int], spec: SemigroupSpec) -> Site:
    out = list(site)
    for a, p in zip(exponents, spec.generators):
        if a:
            out = [x * q**a for x, q in zip(out, p)]
    return tuple(out)


def is_root(i: Union[int, Sequence[int]], spec: SemigroupSpec) -> bool:
    """no generator divides i coordinate-wise"""
    site = as_site(i, spec.d)
    return all(any(x % q for x, q in zip(site, p)) for p in spec.generators)


def factor_index(
    i: Union[int, Sequence[int]], spec: SemigroupSpec
) -> Tuple[Site, Tuple[int, ...]]:
    """
    unique factorization i = root * p_1^l_1 * ... * p_k^l_k with root in I

    Returns:
    --------
        (root, (l_1, ..., l_k))
    """
    site = as_site(i, spec.d)
    exponents = []
    for p in spec.generators:
        exponents.append(min(_valuation(x, q) for x, q in zip(site, p) if q > 1))
    root = list(site)
    for a, p in zip(exponents, spec.generators):
        root = [x // q**a for x, q in zip(root, p)]
    return tuple(root), tuple(exponents)


def _order_key(element: Tuple[Tuple[int, ...], Site], j: int):
    exponents, g = element
    return (g[j - 1], exponents)


def _elements_within(
    spec: SemigroupSpec, bounds: Sequence[Optional[int]]
) -> List[Tuple[Tuple[int, ...], Site]]:
    """
    every g in G with g_c <= bounds[c] (None leaves coordinate c unbounded),
    as (exponent vector, g) pairs
    """
    d = spec.d
    out = [((), (1,) * d)]
    for p in spec.generators:
        if all(bounds[c] is None or p[c] == 1 for c in range(d)):
            raise UnboundedChain(
                f"generator {p} is not bounded by the box limits {tuple(bounds)}"
            )
        grown = []
        for exponents, g in out:
            a = 0
            while all(bounds[c] is None or g[c] <= bounds[c] for c in range(d)):
                grown.append((exponents + (a,), g))
                g = tuple(x * q for x, q in zip(g, p))
                a += 1
        out = grown
    return out


def _rank(exponents: Sequence[int], spec: SemigroupSpec, j: int) -> Tuple[int, bool]:
    """1-based position of p^exponents in G under the order along coordinate j"""
    free = spec.free_generators(j)
    if not free:
        t = math.prod(p[j - 1] ** a for a, p in zip(exponents, spec.generators))
        return len(enumerate_scalar_semigroup(spec.section(j), t)), False
    others = [a for s, a in enumerate(exponents) if s not in free]
    if len(free) == 1 and not any(others):
        return exponents[free[0]] + 1, True
    raise OrderAmbiguity(
        f"exponents {tuple(exponents)} have infinitely many predecessors along "
        f"coordinate {j}: generators {[spec.generators[s] for s in free]} have entry 1 there"
    )


def _member_at(root: Site, rank: int, spec: SemigroupSpec, j: int) -> Site:
    """the chain member of the given rank"""
    free = spec.free_generators(j)
    if free:
        if len(free) > 1 or rank < 1:
            raise OrderAmbiguity(f"rank {rank} is not defined along coordinate {j}")
        exponents = [0] * spec.k
        exponents[free[0]] = rank - 1
        return _apply(root, exponents, spec)
    g_j = first_elements(spec.section(j), rank)[-1]
    exponents = [_valuation(g_j, p[j - 1]) for p in spec.generators]
    return _apply(root, exponents, spec)


def chain_index_j(
    i: Union[int, Sequence[int]],
    spec: SemigroupSpec,
    j: int = None,
    strict: bool = False,
) -> int:
    """
    position j(i) of i within its chain, members sorted by their j-th coordinate

    ties (generators with entry 1 along j) are broken on the exponent vector;
    with strict=True they raise OrderAmbiguity instead
    """
    _, rank, ambiguous = chain_position(i, spec, j)
    if ambiguous:
        if strict:
            raise OrderAmbiguity(f"rank of {i} along coordinate {j} relies on a tie-break")
        logger.warning(f"rank of {i} along coordinate {j} relies on a tie-break")
    return rank


def chain_position(
    i: Union[int, Sequence[int]], spec: SemigroupSpec, j: int = None
) -> Tuple[Site, int, bool]:
    """(root, rank, ambiguous) of i along coordinate j"""
    j = spec.direction if j is None else j
    root, exponents = factor_index(i, spec)
    rank, ambiguous = _rank(exponents, spec, j)
    return root, rank, ambiguous


class Chain(NamedTuple):
    root: Site
    members: Tuple[Site, ...]
    successor: Site

    @property
    def length(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ChainDecomposition:
    """
    roots of a box with their retained chains

    Parameters:
    -----------
        box:
            (N_1, ..., N_d)
        direction:
            ordering coordinate j
        cap:
            'coordinate' keeps members with j-th coordinate <= N_j,
            'rank' keeps members up to the rank of the largest member inside the box
        chains:
            one Chain per root, ordered by root
        ambiguous:
            True if some rank relied on a tie-break
    """

    box: Site
    direction: int
    cap: str
    chains: Tuple[Chain, ...]
    ambiguous: bool = False

    @property
    def roots(self) -> Tuple[Site, ...]:
        return tuple(c.root for c in self.chains)

    @property
    def census(self) -> Dict[int, int]:
        counts = {}
        for c in self.chains:
            counts[c.length] = counts.get(c.length, 0) + 1
        return dict(sorted(counts.items()))

    @property
    def retained_count(self) -> int:
        return sum(c.length for c in self.chains)

    @property
    def sites(self) -> Tuple[Site, ...]:
        return tuple(s for c in self.chains for s in c.members)

    @property
    def volume(self) -> int:
        return math.prod(self.box)


def _retained(root, box, spec, j, cap):
    if cap == "coordinate":
        if spec.free_generators(j):
            raise UnboundedChain(
                f"generators {[spec.generators[s] for s in spec.free_generators(j)]} have "
                f"entry 1 in coordinate {j}: coordinate-capped chains are infinite"
            )
        bounds = [None] * spec.d
        bounds[j - 1] = box[j - 1] // root[j - 1]
        elements = sorted(_elements_within(spec, bounds), key=lambda e: _order_key(e, j))
        return [_apply(root, e, spec) for e, _ in elements], False

    inside = _elements_within(spec, [n // x for n, x in zip(box, root)])
    top, _ = max(inside, key=lambda e: _order_key(e, j))
    b, ambiguous = _rank(top, spec, j)
    if ambiguous:
        return [_member_at(root, r, spec, j) for r in range(1, b + 1)], True
    bounds = [None] * spec.d
    bounds[j - 1] = math.prod(p[j - 1] ** a for a, p in zip(top, spec.generators))
    elements = sorted(_elements_within(spec, bounds), key=lambda e: _order_key(e, j))
    return [_apply(root, e, spec) for e, _ in elements[:b]], False


def decompose_box(
    box: Sequence[int],
    spec: SemigroupSpec,
    j: int = None,
    cap: str = "coordinate",
    strict: bool = False,
) -> ChainDecomposition:
    """
    list every root of the box with its retained chain

    Parameters:
    -----------
        box:
            (N_1, ..., N_d), all N_s >= 1
        spec:
            SemigroupSpec
        j:
            ordering coordinate (defaults to spec.direction)
        cap:
            'coordinate' or 'rank'
        strict:
            raise OrderAmbiguity instead of flagging a tie-break

    Returns:
    --------
        ChainDecomposition ordered by root
    """
    j = spec.direction if j is None else j
    check_cap(cap)
    box = as_site(box, spec.d)
    chains = []
    ambiguous = False
    for root in itertools.product(*(range(1, n + 1) for n in box)):
        if not is_root(root, spec):
            continue
        members, tied = _retained(root, box, spec, j, cap)
        ambiguous |= tied
        successor = _member_at(root, len(members) + 1, spec, j)
        chains.append(Chain(root=root, members=tuple(members), successor=successor))
    if ambiguous:
        if strict:
            raise OrderAmbiguity(f"chain order along coordinate {j} relies on a tie-break")
        logger.warning(f"chain order along coordinate {j} relies on a tie-break")
    return ChainDecomposition(
        box=box, direction=j, cap=cap, chains=tuple(chains), ambiguous=ambiguous
    )


@lru_cache(maxsize=None)
def _section_prefix(spec: SemigroupSpec, c: int, size: int) -> Tuple[int, ...]:
    return tuple(first_elements(spec.section(c), size))


def _ell(spec: SemigroupSpec, c: int, m: int) -> Optional[int]:
    """l^(c)_m, or None when the section semigroup has fewer than m elements"""
    size = 64
    while size < m:
        size *= 2
    elements = _section_prefix(spec, c, size)
    return elements[m - 1] if len(elements) >= m else None


def census_J(box: Sequence[int], spec: SemigroupSpec, M: Sequence[int]) -> int:
    """
    number of indices in the J cell M: prod_c (N_c // l_{M_c} - N_c // l_{M_c + 1})
    """
    box = as_site(box, spec.d)
    count = 1
    for c, (n, m) in enumerate(zip(box, M), start=1):
        low, high = _ell(spec, c, m), _ell(spec, c, m + 1)
        count *= (n // low if low else 0) - (n // high if high else 0)
    return count


@lru_cache(maxsize=None)
def _subset_products(spec: SemigroupSpec) -> Tuple[Tuple[int, Site], ...]:
    out = []
    for t in range(spec.k + 1):
        for subset in itertools.combinations(spec.generators, t):
            product = tuple(math.prod(p[c] for p in subset) for c in range(spec.d))
            out.append(((-1) ** t, product))
    return tuple(out)


def count_roots(lower: Sequence[int], upper: Sequence[int], spec: SemigroupSpec) -> int:
    """
    exact number of roots in the half-open box prod_c (lower_c, upper_c],
    by inclusion-exclusion over generator subsets
    """
    total = 0
    for sign, product in _subset_products(spec):
        term = 1
        for lo, hi, q in zip(lower, upper, product):
            term *= hi // q - lo // q
            if term == 0:
                break
        total += sign * term
    return total


def census_K(box: Sequence[int], spec: SemigroupSpec, M: Sequence[int]) -> int:
    """number of roots in the J cell M"""
    box = as_site(box, spec.d)
    lower, upper = [], []
    for c, (n, m) in enumerate(zip(box, M), start=1):
        low, high = _ell(spec, c, m), _ell(spec, c, m + 1)
        upper.append(n // low if low else 0)
        lower.append(n // high if high else 0)
    return count_roots(lower, upper, spec)


@lru_cache(maxsize=4096)
def _b_count(spec: SemigroupSpec, j: int, ks: Tuple[int, ...]) -> Tuple[int, bool]:
    bounds = [_ell(spec, c, k) for c, k in enumerate(ks, start=1)]
    inside = _elements_within(spec, bounds)
    top, _ = max(inside, key=lambda e: _order_key(e, j))
    return _rank(top, spec, j)


def b_count(
    spec: SemigroupSpec, j: int = None, ks: Sequence[int] = (1,), strict: bool = False
) -> int:
    """
    number of elements of G up to (in the order along j) the largest element of G
    inside the box l^(1)_{k_1} x ... x l^(d)_{k_d}
    """
    j = spec.direction if j is None else j
    b, ambiguous = _b_count(spec, j, tuple(int(k) for k in ks))
    if ambiguous and strict:
        raise OrderAmbiguity(f"b_count{tuple(ks)} along coordinate {j} relies on a tie-break")
    return b


def chain_census(
    box: Sequence[int], spec: SemigroupSpec, j: int = None, cap: str = "coordinate"
) -> Dict[int, int]:
    """
    chain length -> number of roots, counted exactly without visiting the box

    roots are grouped by J cell (floor differences) and counted per cell by
    inclusion-exclusion; boxes with up to ~1e12 points are cheap
    """
    j = spec.direction if j is None else j
    check_cap(cap)
    box = as_site(box, spec.d)
    census = {}
    if cap == "coordinate":
        if spec.free_generators(j):
            raise UnboundedChain(
                f"coordinate-capped chains along coordinate {j} are infinite for {spec.generators}"
            )
        n_j = box[j - 1]
        elements = enumerate_scalar_semigroup(spec.section(j), n_j)
        for m, ell in enumerate(elements, start=1):
            lower = [0] * spec.d
            upper = list(box)
            upper[j - 1] = n_j // ell
            lower[j - 1] = n_j // elements[m] if m < len(elements) else 0
            count = count_roots(lower, upper, spec)
            if count:
                census[m] = census.get(m, 0) + count
        return dict(sorted(census.items()))

    ranges = [
        range(1, len(enumerate_scalar_semigroup(spec.section(c), n)) + 1)
        for c, n in enumerate(box, start=1)
    ]
    for M in itertools.product(*ranges):
        count = census_K(box, spec, M)
        if not count:
            continue
        length = b_count(spec, j, M)
        census[length] = census.get(length, 0) + count
    return dict(sorted(census.items()))


def chain_length_weights(
    spec: SemigroupSpec,
    j: int = None,
    K: int = 10,
    cap: str = None,
    normalization: str = "volume",
) -> List[Fraction]:
    """
    limiting fraction of box points that are roots of a chain of length 1..K

    Parameters:
    -----------
        cap:
            'rank' (default for a single generator) gives (P-1)^2 / P^(l+1);
            'coordinate' (default otherwise) gives C (1/l_M - 1/l_{M+1})
        normalization:
            prefactor C of the coordinate-capped weights, see normalization_constant
    """
    j = spec.direction if j is None else j
    cap = cap or ("rank" if spec.k == 1 else "coordinate")
    check_cap(cap)
    if cap == "rank" and spec.d > 1:
        if spec.k != 1:
            raise ValueError("rank-capped weights have a closed form for a single generator only")
        P = spec.products[0]
        return [Fraction((P - 1) ** 2, P ** (ell + 1)) for ell in range(1, K + 1)]
    if spec.free_generators(j):
        raise UnboundedChain(
            f"coordinate-capped chains along coordinate {j} are infinite for {spec.generators}"
        )
    C = normalization_constant(spec, j, normalization)
    ells = first_elements(spec.section(j), K + 1)
    inverse = [Fraction(1, x) for x in ells] + [Fraction(0)] * (K + 1 - len(ells))
    return [C * (inverse[m] - inverse[m + 1]) for m in range(K)]


def decomposition_to_frame(decomposition: ChainDecomposition) -> pd.DataFrame:
    """one row per root: root,length"""
    return pd.DataFrame(
        {
            "root": [format_site(c.root) for c in decomposition.chains],
            "length": [c.length for c in decomposition.chains],
        }
    )


def census_to_frame(census: Dict[int, int]) -> pd.DataFrame:
    return pd.DataFrame(
        {"M_index": list(census.keys()), "count": list(census.values())}
    )
