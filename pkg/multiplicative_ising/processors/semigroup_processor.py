import pandas as pd
from multiplicative_ising.lattice.semigroup import (
    SemigroupSpec,
    density_K_over_J,
    directional_constant,
    enumerate_scalar_semigroup,
    gamma,
    semigroup_section,
)
from multiplicative_ising.processors.base import IsingProcessor


class SemigroupProcessor(IsingProcessor):
    """
    Elements and constants of a semigroup

    Parameters:
    -----------
        spec:
            SemigroupSpec
        bound:
            list the section elements <= bound, also the partial-sum bound of gamma
        show_gamma:
            emit the constants table (gamma, partial sum, root density, directional C)
            instead of the elements
    """

    command = "semigroup"

    def __init__(self, spec: SemigroupSpec, bound: int = 1000, show_gamma: bool = False):
        self._spec = spec
        self._bound = bound
        self._show_gamma = show_gamma

    def process(self):
        spec = self._spec
        if not self._show_gamma:
            rows = []
            for c in range(1, spec.d + 1):
                elements = enumerate_scalar_semigroup(semigroup_section(spec, c), self._bound)
                rows += [{"coordinate": c, "k": k, "element": x} for k, x in enumerate(elements, 1)]
            data = pd.DataFrame(rows, columns=["coordinate", "k", "element"])
            return self.make_output(data, spec=spec.to_json(), bound=self._bound)

        rows = []
        for c in range(1, spec.d + 1):
            value = gamma(semigroup_section(spec, c), self._bound)
            name = "gamma" if spec.d == 1 else f"gamma_S{c}"
            rows.append({"quantity": name, "value": str(value.exact)})
            rows.append({"quantity": f"{name}_partial", "value": repr(value.partial)})
        rows.append({"quantity": "root_density", "value": str(density_K_over_J(spec))})
        if spec.d > 1:
            rows.append(
                {
                    "quantity": f"directional_constant_j{spec.direction}",
                    "value": str(directional_constant(spec)),
                }
            )
        return self.make_output(pd.DataFrame(rows), spec=spec.to_json(), bound=self._bound)
