import pandas as pd
from typing import Sequence
from multiplicative_ising.constants import DEFAULT_TOL
from multiplicative_ising.gibbs.entropy import ks_entropy_closed_form, ks_entropy_directional
from multiplicative_ising.lattice.semigroup import SemigroupSpec
from multiplicative_ising.processors.base import IsingProcessor


class KSEntropyProcessor(IsingProcessor):
    """Kolmogorov-Sinai entropy of the limit measure: series and closed form per beta"""

    command = "ks-entropy"

    def __init__(
        self,
        spec: SemigroupSpec,
        betas: Sequence[float],
        tol: float = DEFAULT_TOL,
        normalization: str = "site",
    ):
        self._spec = spec
        self._betas = list(betas)
        self._tol = tol
        self._normalization = normalization

    def process(self):
        rows = []
        for beta in self._betas:
            rows.append(
                {
                    "beta": beta,
                    "entropy": ks_entropy_directional(
                        beta, self._spec, tol=self._tol, normalization=self._normalization
                    ),
                    "closed_form": ks_entropy_closed_form(
                        beta, self._spec, normalization=self._normalization
                    ),
                }
            )
        return self.make_output(
            pd.DataFrame(rows), spec=self._spec.to_json(), normalization=self._normalization
        )
