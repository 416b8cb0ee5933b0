import json
import math
import logging
import itertools
from functools import reduce
from fractions import Fraction
from dataclasses import dataclass
from typing import List, NamedTuple, Sequence, Tuple, Union
from multiplicative_ising.errors import (
    CoprimalityViolation,
    DegenerateGenerator,
    InvalidGenerator,
)

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class SemigroupSpec:
    """
    Generators p_1, ..., p_k of a multiplicative semigroup G in N^d

    Parameters:
    -----------
        d:
            lattice dimension
        generators:
            k vectors of positive integers, pairwise coprime in every coordinate
        direction:
            1-based coordinate j that orders chains (used by directional quantities)
    """

    d: int
    generators: Tuple[Vector, ...]
    direction: int = 1

    def __post_init__(self):
        object.__setattr__(
            self, "generators", tuple(tuple(int(x) for x in p) for p in self.generators)
        )
        check_generators(self.generators, self.d)
        if not 1 <= self.direction <= self.d:
            raise InvalidGenerator(
                f"direction must be in 1..{self.d}, got {self.direction}"
            )

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def products(self) -> Tuple[int, ...]:
        """P_i = p_i1 * ... * p_id for every generator"""
        return tuple(math.prod(p) for p in self.generators)

    def section(self, j: int = None) -> Tuple[int, ...]:
        """generators of S^(j), the j-th coordinate semigroup, with entries 1 dropped"""
        j = self.direction if j is None else j
        return tuple(p[j - 1] for p in self.generators if p[j - 1] > 1)

    def free_generators(self, j: int = None) -> Tuple[int, ...]:
        """0-based indices of the generators whose j-th entry is 1"""
        j = self.direction if j is None else j
        return tuple(s for s, p in enumerate(self.generators) if p[j - 1] == 1)

    def with_direction(self, j: int) -> "SemigroupSpec":
        return SemigroupSpec(d=self.d, generators=self.generators, direction=j)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "generators": [list(p) for p in self.generators],
            "direction": self.direction,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "SemigroupSpec":
        try:
            d = int(data["d"])
            generators = data["generators"]
        except KeyError as exc:
            raise InvalidGenerator(f"spec is missing the field {exc}") from exc
        return validate_generators(generators, d, direction=int(data.get("direction", 1)))

    @classmethod
    def from_json(cls, text: str) -> "SemigroupSpec":
        return cls.from_dict(json.loads(text))


def check_generators(generators: Sequence[Vector], d: int) -> None:
    """raise if the generators break positivity, non-degeneracy or coordinate-wise coprimality"""
    if d < 1:
        raise InvalidGenerator(f"dimension must be positive, got {d}")
    for i, p in enumerate(generators, start=1):
        if len(p) != d:
            raise InvalidGenerator(
                f"generator {i} has {len(p)} entries, expected d={d}"
            )
        if any(x < 1 for x in p):
            raise InvalidGenerator(f"generator {i} has a non-positive entry: {p}")
        if all(x == 1 for x in p):
            raise DegenerateGenerator(f"generator {i} is the all-ones vector")
    for s in range(d):
        for (i, p), (i2, p2) in itertools.combinations(enumerate(generators, start=1), 2):
            g = math.gcd(p[s], p2[s])
            if g != 1:
                raise CoprimalityViolation(coordinate=s + 1, first=i, second=i2, gcd=g)


def validate_generators(
    vectors: Sequence[Union[int, Sequence[int]]], d: int, direction: int = 1
) -> SemigroupSpec:
    """
    build a SemigroupSpec from raw generator vectors

    Parameters:
    -----------
        vectors:
            list of integer vectors (plain integers are accepted when d=1)
        d:
            lattice dimension
        direction:
            1-based ordering coordinate j

    Returns:
    --------
        validated SemigroupSpec

    Raises:
    -------
        CoprimalityViolation, DegenerateGenerator, InvalidGenerator
    """
    generators = []
    for p in vectors:
        if isinstance(p, int):
            p = (p,)
        generators.append(tuple(int(x) for x in p))
    return SemigroupSpec(d=d, generators=tuple(generators), direction=direction)


def enumerate_scalar_semigroup(generators: Sequence[int], bound: int) -> List[int]:
    """
    all products p_1^a_1 ... p_k^a_k <= bound, sorted ascending

    multiply-and-merge sieve: each generator multiplies the current list by its
    powers up to the bound. Generators equal to 1 contribute nothing.
    """
    elements = [1] if bound >= 1 else []
    for p in sorted(set(generators)):
        if p < 2:
            continue
        grown = []
        for x in elements:
            while x <= bound:
                grown.append(x)
                x *= p
        elements = grown
    return sorted(set(elements))


def first_elements(generators: Sequence[int], count: int) -> List[int]:
    """
    the first ``count`` elements l_1 < l_2 < ... of <generators>

    merges the streams p * l_i, one cursor per generator; the list is shorter
    than ``count`` only when the semigroup is finite (no generator >= 2).
    """
    gens = sorted({p for p in generators if p >= 2})
    if not gens:
        return [1][:count]
    elements = [1]
    cursors = [0] * len(gens)
    heads = list(gens)
    while len(elements) < count:
        smallest = min(heads)
        elements.append(smallest)
        for s, p in enumerate(gens):
            if heads[s] == smallest:
                cursors[s] += 1
                heads[s] = elements[cursors[s]] * p
    return elements[:count]


class GammaValue(NamedTuple):
    exact: Fraction
    partial: float
    bound: int

    def __float__(self):
        return float(self.exact)


def gamma_exact(generators: Sequence[int]) -> Fraction:
    """gamma(G) = sum 1/l_i = prod (1 - 1/p_i)^-1"""
    return reduce(
        lambda acc, p: acc / (1 - Fraction(1, p)),
        (p for p in generators if p >= 2),
        Fraction(1),
    )


def gamma(generators: Sequence[int], bound: int = 10**6) -> GammaValue:
    """
    gamma(G) in exact rational arithmetic, plus the partial sum over the
    elements <= bound for cross-validation
    """
    partial = math.fsum(1.0 / x for x in enumerate_scalar_semigroup(generators, bound))
    return GammaValue(exact=gamma_exact(generators), partial=partial, bound=bound)


def density_K_over_J(spec: SemigroupSpec) -> Fraction:
    """density of the root set I: prod_i (1 - 1/(p_i1 ... p_id))"""
    return math.prod((1 - Fraction(1, P) for P in spec.products), start=Fraction(1))


root_density = density_K_over_J


def directional_constant(spec: SemigroupSpec, j: int = None) -> Fraction:
    """
    the directional prefactor C = prod_i (1 - 1/(p_i1...p_id)) * prod_{i != j} gamma(S^(i))

    sections reduced to <> = {1} contribute gamma = 1
    """
    j = spec.direction if j is None else j
    others = (gamma_exact(spec.section(i)) for i in range(1, spec.d + 1) if i != j)
    return density_K_over_J(spec) * math.prod(others, start=Fraction(1))


NORMALIZATIONS = ("site", "volume", "directional")


def semigroup_section(spec: SemigroupSpec, j: int = None) -> Tuple[int, ...]:
    """generators of S^(j); an empty tuple stands for the trivial semigroup {1}"""
    return spec.section(j)


def normalization_constant(
    spec: SemigroupSpec, j: int = None, normalization: str = "site"
) -> Fraction:
    """
    prefactor of the directional series

    Parameters:
    -----------
        normalization:
            'site' (per retained chain site, 1/gamma(S^(j))), 'volume' (per box
            point, the root density) or 'directional' (directional_constant)
    """
    if normalization == "site":
        return 1 / gamma_exact(spec.section(j))
    if normalization == "volume":
        return density_K_over_J(spec)
    if normalization == "directional":
        return directional_constant(spec, j)
    raise ValueError(
        f"Incorrect normalization '{normalization}'. Available options are: {NORMALIZATIONS}"
    )
