import json
import math
import logging
import numpy as np
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union
from multiplicative_ising.lattice.chains import (
    Site,
    as_site,
    chain_position,
    decompose_box,
    factor_index,
)
from multiplicative_ising.lattice.semigroup import SemigroupSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CylinderEvent:
    """
    {sigma_s = v for every (s, v) in zip(sites, values)}

    Parameters:
    -----------
        sites:
            distinct points of N^d (plain integers are read as points of N)
        values:
            matching spins in {-1, +1}
    """

    sites: Tuple[Site, ...]
    values: Tuple[int, ...]

    def __post_init__(self):
        sites = tuple(
            (s,) if isinstance(s, int) else tuple(int(x) for x in s) for s in self.sites
        )
        values = tuple(int(v) for v in self.values)
        if len(sites) != len(values):
            raise ValueError(f"{len(sites)} sites but {len(values)} values")
        if len(set(sites)) != len(sites):
            raise ValueError(f"event sites must be distinct, got {sites}")
        if any(v not in (-1, 1) for v in values):
            raise ValueError(f"event values must be -1 or +1, got {values}")
        if len({len(s) for s in sites}) > 1:
            raise ValueError(f"event sites have mixed dimensions: {sites}")
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.sites)

    def scaled(self, m: Union[int, Sequence[int]]) -> "CylinderEvent":
        """the event moved to m * sites"""
        if isinstance(m, int):
            m = (m,) * (len(self.sites[0]) if self.sites else 1)
        return CylinderEvent(
            sites=tuple(tuple(a * b for a, b in zip(s, m)) for s in self.sites),
            values=self.values,
        )

    def to_json(self) -> str:
        return json.dumps({"sites": [list(s) for s in self.sites], "values": list(self.values)})

    @classmethod
    def from_json(cls, text: str) -> "CylinderEvent":
        data = json.loads(text)
        sites = tuple(tuple(s) if isinstance(s, list) else s for s in data["sites"])
        return cls(sites=sites, values=tuple(data["values"]))


@dataclass(frozen=True)
class LayerView:
    root: Site
    positions: Tuple[int, ...]
    values: Tuple[int, ...]


def cylinder_marginal(event: CylinderEvent, keep: Sequence) -> CylinderEvent:
    """sub-event on the sites listed in keep"""
    keep = {(s,) if isinstance(s, int) else tuple(s) for s in keep}
    pairs = [(s, v) for s, v in zip(event.sites, event.values) if s in keep]
    return CylinderEvent(sites=tuple(s for s, _ in pairs), values=tuple(v for _, v in pairs))


def layer_views(
    event: CylinderEvent, spec: SemigroupSpec, j: int = None
) -> List[LayerView]:
    """split the event along the independent chains, ranks increasing on every chain"""
    layers: Dict[Site, List[Tuple[int, int]]] = {}
    ambiguous = False
    for site, value in zip(event.sites, event.values):
        root, rank, tied = chain_position(site, spec, j)
        ambiguous |= tied
        layers.setdefault(root, []).append((rank, value))
    if ambiguous:
        logger.warning("layer ranks rely on a tie-break")
    views = []
    for root in sorted(layers):
        ranked = sorted(layers[root])
        views.append(
            LayerView(
                root=root,
                positions=tuple(rank for rank, _ in ranked),
                values=tuple(value for _, value in ranked),
            )
        )
    return views


def limit_cylinder_probability(
    event: CylinderEvent, beta: float, spec: SemigroupSpec, j: int = None
) -> float:
    """
    infinite-volume probability of a cylinder event

    every chain carries an independent zero-field Ising chain with a free left
    end; two spins g bonds apart agree with probability (1 + tanh(beta)^g)/2
    """
    t = math.tanh(beta)
    prob = 1.0
    for view in layer_views(event, spec, j):
        prob *= 0.5
        for (a, u), (b, w) in zip(
            zip(view.positions, view.values), zip(view.positions[1:], view.values[1:])
        ):
            correlation = t ** (b - a)
            prob *= 0.5 * (1 + correlation) if u == w else 0.5 * (1 - correlation)
    return prob


def check_multiplication_invariance(
    event: CylinderEvent,
    m: Union[int, Sequence[int]],
    beta: float,
    spec: SemigroupSpec,
    j: int = None,
) -> float:
    """|mu(m * event) - mu(event)| in the infinite-volume measure"""
    return abs(
        limit_cylinder_probability(event.scaled(m), beta, spec, j)
        - limit_cylinder_probability(event, beta, spec, j)
    )


def _pinned_chain_probability(beta: float, n: int, pinned: Dict[int, int]) -> float:
    """P(pinned spins) for the chain measure exp(beta sum s_i s_i+1) on n spins"""
    # rows and columns ordered (+1, -1), scaled by exp(-|beta|)
    step = np.exp(np.array([[beta, -beta], [-beta, beta]]) - abs(beta))
    states = np.array([1, -1])
    full, part = np.ones(2), np.ones(2)
    for position in range(n):
        if position:
            full, part = step @ full, step @ part
            scale = full.sum()
            full, part = full / scale, part / scale
        if position in pinned:
            part = np.where(states == pinned[position], part, 0.0)
    return float(part.sum() / full.sum())


def finite_volume_probability(
    event: CylinderEvent,
    beta: float,
    spec: SemigroupSpec,
    box: Sequence[int],
    j: int = None,
    cap: str = "coordinate",
) -> float:
    """
    probability of the event under the finite-volume Gibbs measure of the box

    the Hamiltonian couples each retained chain member with its successor, so
    its domain is every retained member plus the first member past the cap.
    The measure factorizes over chains: each chain touched by the event is a
    free-ended nearest-neighbour chain, and its pinned probability is the
    ratio of two transfer sweeps along it, one with the event spins pinned.
    Cost is linear in the touched chain lengths.
    Event sites outside the domain are uniform.
    """
    decomposition = decompose_box(box, spec, j, cap)
    domains = {c.root: c.members + (c.successor,) for c in decomposition.chains}
    pinned: Dict[Site, Dict[int, int]] = {}
    n_free = 0
    for site, value in zip(event.sites, event.values):
        site = as_site(site, spec.d)
        root, _ = factor_index(site, spec)
        domain = domains.get(root, ())
        if site in domain:
            pinned.setdefault(root, {})[domain.index(site)] = value
        else:
            n_free += 1
    prob = 0.5**n_free
    for root, positions in pinned.items():
        prob *= _pinned_chain_probability(beta, len(domains[root]), positions)
    return prob
