import pandas as pd
from typing import Sequence
from multiplicative_ising.lattice.semigroup import SemigroupSpec
from multiplicative_ising.processors.base import IsingProcessor
from multiplicative_ising.thermodynamics.ldp import rate_curve, rate_frame


class RateProcessor(IsingProcessor):
    """
    Rate function I_r on an x grid, long format r,x,I,eta,capped
    """

    command = "rate"

    def __init__(
        self,
        spec: SemigroupSpec,
        r: Sequence[float],
        x_grid: Sequence[float],
        tol: float = 1e-10,
        normalization: str = "site",
        executor: str = "iterative",
        workers: int = 4,
    ):
        self._spec = spec
        self._r = list(r)
        self._x_grid = list(x_grid)
        self._tol = tol
        self._normalization = normalization
        self._executor = executor
        self._workers = workers

    def process(self):
        frames = []
        for r in self._r:
            points = rate_curve(
                r,
                self._spec,
                self._x_grid,
                tol=self._tol,
                normalization=self._normalization,
                executor=self._executor,
                workers=self._workers,
            )
            frame = rate_frame(points)
            frame.insert(0, "r", r)
            frames.append(frame)
        return self.make_output(
            pd.concat(frames, ignore_index=True),
            spec=self._spec.to_json(),
            normalization=self._normalization,
            tol=self._tol,
        )
