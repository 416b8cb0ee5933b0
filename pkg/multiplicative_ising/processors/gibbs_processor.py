import pandas as pd
from typing import Sequence
from multiplicative_ising.gibbs.measure import (
    CylinderEvent,
    finite_volume_probability,
    limit_cylinder_probability,
)
from multiplicative_ising.gibbs.sampler import sample_box
from multiplicative_ising.lattice.semigroup import SemigroupSpec
from multiplicative_ising.processors.base import IsingProcessor


class GibbsProcessor(IsingProcessor):
    """
    Cylinder probabilities: the infinite-volume value for every beta and, when
    a box is given, the exact finite-volume value
    """

    command = "gibbs"

    def __init__(
        self,
        spec: SemigroupSpec,
        event: CylinderEvent,
        betas: Sequence[float],
        box: Sequence[int] = None,
        cap: str = "coordinate",
    ):
        self._spec = spec
        self._event = event
        self._betas = list(betas)
        self._box = box
        self._cap = cap

    def process(self):
        rows = []
        for beta in self._betas:
            row = {"beta": beta, "limit": limit_cylinder_probability(self._event, beta, self._spec)}
            if self._box:
                row["finite"] = finite_volume_probability(
                    self._event, beta, self._spec, self._box, cap=self._cap
                )
            rows.append(row)
        return self.make_output(
            pd.DataFrame(rows),
            spec=self._spec.to_json(),
            event=self._event.to_json(),
            box=list(self._box) if self._box else None,
        )


class SampleProcessor(IsingProcessor):
    """Configurations of the retained chain sites of a box, one row per configuration"""

    command = "sample"

    def __init__(
        self,
        spec: SemigroupSpec,
        box: Sequence[int],
        beta: float,
        seed: int = 0,
        count: int = 1,
        cap: str = "coordinate",
        executor: str = "iterative",
        workers: int = 4,
    ):
        self._spec = spec
        self._box = tuple(box)
        self._beta = beta
        self._seed = seed
        self._count = count
        self._cap = cap
        self._executor = executor
        self._workers = workers

    def process(self):
        sample = sample_box(
            self._box,
            self._beta,
            self._spec,
            seed=self._seed,
            count=self._count,
            cap=self._cap,
            executor=self._executor,
            workers=self._workers,
        )
        return self.make_output(
            sample.to_frame(),
            spec=self._spec.to_json(),
            box=list(self._box),
            beta=self._beta,
            seed=self._seed,
            count=self._count,
        )
