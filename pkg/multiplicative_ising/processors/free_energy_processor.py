import pandas as pd
from typing import Sequence
from multiplicative_ising.constants import DEFAULT_TOL
from multiplicative_ising.lattice.semigroup import SemigroupSpec
from multiplicative_ising.processors.base import IsingProcessor
from multiplicative_ising.thermodynamics.free_energy import (
    build_series,
    finite_mgf,
    free_energy_curve,
    free_energy_general,
)

METHODS = ("series", "general", "finite")


class FreeEnergyProcessor(IsingProcessor):
    """
    F_r(beta) and F'_r(beta) at individual points

    Parameters:
    -----------
        spec:
            SemigroupSpec
        r:
            list of biases
        betas:
            list of inverse temperatures
        method:
            'series' (certified series), 'general' (rank-capped cell sum) or
            'finite' (exact finite-volume value of box)
        truncation:
            fixed number of series terms (series) or cells per axis (general)
    """

    command = "free-energy"

    def __init__(
        self,
        spec: SemigroupSpec,
        r: Sequence[float],
        betas: Sequence[float],
        tol: float = DEFAULT_TOL,
        truncation: int = None,
        normalization: str = "site",
        method: str = "series",
        box: Sequence[int] = None,
        cap: str = "coordinate",
    ):
        self._spec = spec
        self._r = list(r)
        self._betas = list(betas)
        self._tol = tol
        self._truncation = truncation
        self._normalization = normalization
        self._method = method
        self._box = box
        self._cap = cap

    def _rows(self, r):
        if self._method == "general":
            for beta in self._betas:
                res = free_energy_general(r, beta, self._spec, K_cap=self._truncation or 64)
                yield {
                    "r": r,
                    "beta": beta,
                    "F": res.value,
                    "tail_bound": res.tail_bound,
                    "truncation_K": res.truncation_K,
                }
            return
        if self._method == "finite":
            normalize = "site" if self._normalization == "site" else "volume"
            for beta in self._betas:
                value = finite_mgf(r, beta, self._spec, self._box, cap=self._cap, normalize=normalize)
                yield {"r": r, "beta": beta, "F": value}
            return
        series = build_series(r, self._spec, normalization=self._normalization)
        for beta in self._betas:
            res = series.value(beta, self._tol, self._truncation)
            yield {
                "r": r,
                "beta": beta,
                "F": res.value,
                "dF": series.derivative(beta, self._tol, self._truncation),
                "tail_bound": res.tail_bound,
                "truncation_K": res.truncation_K,
            }

    def process(self):
        rows = [row for r in self._r for row in self._rows(r)]
        return self.make_output(
            pd.DataFrame(rows),
            spec=self._spec.to_json(),
            method=self._method,
            normalization=self._normalization,
            tol=self._tol,
        )


class CurveProcessor(IsingProcessor):
    """
    F_r on a beta grid for one or several biases, long format r,beta,F,...

    Parameters:
    -----------
        executor:
            'iterative' or 'futures'
        workers:
            number of processes with the futures executor
    """

    command = "curve"

    def __init__(
        self,
        spec: SemigroupSpec,
        r: Sequence[float],
        betas: Sequence[float],
        tol: float = DEFAULT_TOL,
        truncation: int = None,
        normalization: str = "site",
        executor: str = "iterative",
        workers: int = 4,
    ):
        self._spec = spec
        self._r = list(r)
        self._betas = list(betas)
        self._tol = tol
        self._truncation = truncation
        self._normalization = normalization
        self._executor = executor
        self._workers = workers

    def process(self):
        frames = []
        for r in self._r:
            series = build_series(r, self._spec, normalization=self._normalization)
            frame = free_energy_curve(
                series, self._betas, self._tol, self._truncation, self._executor, self._workers
            )
            frame.insert(0, "r", r)
            frames.append(frame)
        data = pd.concat(frames, ignore_index=True)
        return self.make_output(
            data,
            spec=self._spec.to_json(),
            r=self._r,
            generators=[list(p) for p in self._spec.generators],
            normalization=self._normalization,
            truncation=self._truncation,
            truncation_K=int(data["truncation_K"].max()),
            tail_bound=float(data["tail_bound"].max()),
            tol=self._tol,
        )
