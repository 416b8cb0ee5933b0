import math
from typing import Sequence
from multiplicative_ising.lattice.chains import (
    census_to_frame,
    chain_census,
    decompose_box,
    decomposition_to_frame,
)
from multiplicative_ising.lattice.semigroup import SemigroupSpec
from multiplicative_ising.processors.base import IsingProcessor

# boxes beyond this many points are only censused
MAX_LISTED_VOLUME = 10**6


class DecomposeProcessor(IsingProcessor):
    """
    Roots and retained chain lengths of a box

    Parameters:
    -----------
        spec:
            SemigroupSpec
        box:
            (N_1, ..., N_d)
        cap:
            'coordinate' or 'rank'
        census:
            emit the chain-length census (M_index,count) instead of one row per root
    """

    command = "decompose"

    def __init__(
        self,
        spec: SemigroupSpec,
        box: Sequence[int],
        cap: str = "coordinate",
        census: bool = False,
    ):
        self._spec = spec
        self._box = tuple(box)
        self._cap = cap
        self._census = census or math.prod(self._box) > MAX_LISTED_VOLUME

    def process(self):
        metadata = {"spec": self._spec.to_json(), "box": list(self._box), "cap": self._cap}
        if self._census:
            census = chain_census(self._box, self._spec, cap=self._cap)
            metadata["roots"] = sum(census.values())
            metadata["retained"] = sum(m * n for m, n in census.items())
            return self.make_output(census_to_frame(census), **metadata)
        decomposition = decompose_box(self._box, self._spec, cap=self._cap)
        metadata["roots"] = len(decomposition.chains)
        metadata["retained"] = decomposition.retained_count
        metadata["ambiguous"] = decomposition.ambiguous
        return self.make_output(decomposition_to_frame(decomposition), **metadata)
