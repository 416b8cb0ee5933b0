import math
import logging
import itertools
import numpy as np
from fractions import Fraction
from multiplicative_ising.constants import MAX_ENUMERATION_SITES
from multiplicative_ising.errors import TooLargeForEnumeration
from multiplicative_ising.gibbs.entropy import ks_entropy_2multiple
from multiplicative_ising.gibbs.measure import (
    CylinderEvent,
    check_multiplication_invariance,
    finite_volume_probability,
)
from multiplicative_ising.lattice.semigroup import (
    directional_constant,
    gamma_exact,
    validate_generators,
)
from multiplicative_ising.oracle.brute_force import (
    brute_force_block_entropy,
    brute_force_cylinder,
    brute_force_mgf,
)
from multiplicative_ising.postprocessor.report import build_report
from multiplicative_ising.processors.base import IsingProcessor
from multiplicative_ising.thermodynamics.free_energy import build_series, finite_mgf
from multiplicative_ising.thermodynamics.ldp import rate_function
from multiplicative_ising.thermodynamics.reference import doubling_closed_form
from multiplicative_ising.thermodynamics.transfer import (
    binary_entropy,
    bond_agreement,
    ising_block_entropy,
)

logger = logging.getLogger(__name__)

SPECS = {
    "doubling": validate_generators([2], 1),
    "two_three": validate_generators([2, 3], 1),
    "fig1": validate_generators([2, 3, 5, 7, 11], 1),
    "fig2": validate_generators([(2, 3), (3, 5), (5, 7), (7, 11), (11, 2)], 2),
    "diag23": validate_generators([(2, 3)], 2),
    "product6": validate_generators([(6, 1)], 2),
}

BIASES = [0.1, 0.3, 0.5, 0.7, 0.9]

# (spec, box, cap)
ENUMERATION_CASES = [
    ("doubling", (12,), "coordinate"),
    ("two_three", (8,), "coordinate"),
    ("diag23", (3, 3), "coordinate"),
    ("diag23", (3, 3), "rank"),
    ("product6", (4, 2), "coordinate"),
]

CYLINDER_CASES = [
    ("doubling", (6,), CylinderEvent(sites=(1, 2, 3), values=(1, -1, 1))),
    ("doubling", (6,), CylinderEvent(sites=(3, 12), values=(1, 1))),
    ("two_three", (8,), CylinderEvent(sites=(2, 4, 9), values=(-1, -1, 1))),
    ("diag23", (3, 3), CylinderEvent(sites=((1, 1), (2, 3)), values=(1, -1))),
    ("product6", (4, 2), CylinderEvent(sites=((1, 1), (6, 1), (2, 2)), values=(1, 1, -1))),
]

INVARIANCE_CASES = [
    ("doubling", (1, 2, 4, 5), 3),
    ("doubling", (1, 2, 3, 4, 6), 2),
    ("doubling", (1, 2, 4, 5), 5),
    ("doubling", (1, 3, 6, 12), 7),
    ("two_three", (1, 2, 3, 4, 6), 5),
    ("two_three", (1, 2, 5, 6), 7),
    ("fig2", ((1, 1), (2, 3), (6, 15)), (13, 17)),
    ("diag23", ((1, 1), (2, 3), (4, 9)), (5, 7)),
    ("diag23", ((1, 1), (2, 3), (4, 9), (2, 1)), (2, 3)),
    ("diag23", ((1, 1), (2, 3), (4, 9), (2, 1)), (3, 5)),
]


class VerifyProcessor(IsingProcessor):
    """
    Cross-checks of the analytic code against brute-force enumeration and
    exact constants; the output table has one row per check

    Parameters:
    -----------
        max_sites:
            enumeration cases with more involved sites are skipped
    """

    command = "verify"

    def __init__(
        self,
        max_sites: int = MAX_ENUMERATION_SITES,
        executor: str = "iterative",
        workers: int = 4,
    ):
        self._max_sites = max_sites
        self._executor = executor
        self._workers = workers

    def _mgf_errors(self):
        errors, skipped = [], 0
        for name, box, cap in ENUMERATION_CASES:
            spec = SPECS[name]
            for r, beta in itertools.product(BIASES, [-2.0, -1.0, 0.0, 1.0, 2.0]):
                try:
                    oracle = brute_force_mgf(
                        r, beta, spec, box, cap=cap, max_sites=self._max_sites,
                        executor=self._executor, workers=self._workers,
                    )
                except TooLargeForEnumeration:
                    skipped += 1
                    continue
                errors.append(abs(finite_mgf(r, beta, spec, box, cap=cap) - oracle))
        return errors, 1e-12, skipped

    def _cylinder_errors(self):
        errors, skipped = [], 0
        for name, box, event in CYLINDER_CASES:
            spec = SPECS[name]
            for beta in [-0.7, 0.0, 0.8, 1.5]:
                try:
                    oracle = brute_force_cylinder(
                        event, beta, spec, box, max_sites=self._max_sites,
                        executor=self._executor, workers=self._workers,
                    )
                except TooLargeForEnumeration:
                    skipped += 1
                    continue
                value = finite_volume_probability(event, beta, spec, box)
                errors.append(abs(value - oracle))
        return errors, 1e-12, skipped

    @staticmethod
    def _block_entropy_errors():
        errors = [
            abs(ising_block_entropy(beta, k) - brute_force_block_entropy(beta, k))
            for beta in [0.0, 0.3, 1.2]
            for k in range(1, 11)
        ]
        return errors, 1e-12, 0

    @staticmethod
    def _universality_errors():
        errors = []
        for name in ["doubling", "two_three", "fig1", "fig2"]:
            for beta in [-2.0, 1.0, 2.0]:
                value = build_series(0.5, SPECS[name]).value(beta).value
                errors.append(abs(value - math.log(math.cosh(beta))))
        return errors, 1e-12, 0

    @staticmethod
    def _normalization_errors():
        errors = []
        for spec in SPECS.values():
            if spec.free_generators():
                continue
            for r in BIASES:
                errors.append(abs(build_series(r, spec).value(0.0).value))
        return errors, 1e-12, 0

    @staticmethod
    def _constant_errors():
        checks = [
            (gamma_exact([2, 3, 5, 7, 11]), Fraction(77, 16)),
            (directional_constant(SPECS["fig2"], 1), Fraction(2261, 660)),
            (gamma_exact([2]), Fraction(2)),
        ]
        return [float(abs(a - b)) for a, b in checks], 0.0, 0

    @staticmethod
    def _invariance_errors():
        # every sign pattern on every site set
        errors = [
            check_multiplication_invariance(
                CylinderEvent(sites=sites, values=values), m, beta, SPECS[name]
            )
            for name, sites, m in INVARIANCE_CASES
            for values in itertools.product([-1, 1], repeat=len(sites))
            for beta in [-0.5, 0.8, 2.0]
        ]
        return errors, 1e-12, 0

    @staticmethod
    def _ks_errors():
        errors = []
        for p in [(2,), (3,), (2, 3)]:
            P = math.prod(p)
            for beta in [0.0, 0.5, 1.0, 2.0]:
                H = binary_entropy(bond_agreement(beta))
                closed = (P - 1) / P * math.log(2) + H / P
                errors.append(abs(ks_entropy_2multiple(beta, p) - closed))
        return errors, 1e-10, 0

    @staticmethod
    def _anchor_errors():
        errors = []
        for r in [0.2, 0.5, 0.7]:
            series = build_series(r, SPECS["doubling"])
            for beta in [-1.5, -0.3, 0.4, 1.5]:
                value = series.value(beta, truncation=100).value
                errors.append(abs(value - doubling_closed_form(r, beta, K=100)))
        return errors, 1e-10, 0

    @staticmethod
    def _derivative_errors():
        errors = []
        step = 1e-5
        series = build_series(0.4, SPECS["two_three"])
        for beta in np.linspace(-2.0, 2.0, 21):
            numeric = (series.value(beta + step).value - series.value(beta - step).value) / (2 * step)
            errors.append(abs(series.derivative(beta) - numeric))
        return errors, 1e-6, 0

    @staticmethod
    def _rate_errors():
        errors = []
        for x in [-0.8, -0.5, -0.2, 0.0, 0.2, 0.5, 0.8]:
            closed = 0.5 * ((1 + x) * math.log1p(x) + (1 - x) * math.log1p(-x))
            errors.append(abs(rate_function(0.5, SPECS["two_three"], x).I - closed))
        return errors, 1e-8, 0

    def process(self):
        checks = {
            "finite_mgf_vs_enumeration": self._mgf_errors,
            "finite_volume_probability_vs_enumeration": self._cylinder_errors,
            "block_entropy_vs_enumeration": self._block_entropy_errors,
            "universality_at_half": self._universality_errors,
            "normalization_at_zero": self._normalization_errors,
            "exact_constants": self._constant_errors,
            "multiplication_invariance": self._invariance_errors,
            "ks_entropy_closed_form": self._ks_errors,
            "doubling_closed_form_anchor": self._anchor_errors,
            "derivative_vs_central_difference": self._derivative_errors,
            "rate_closed_form_at_half": self._rate_errors,
        }
        results = {}
        for name, check in checks.items():
            logger.info(f"running {name}")
            results[name] = check()
        report = build_report(results)
        return self.make_output(report, max_sites=self._max_sites)

    @staticmethod
    def passed(output: dict) -> bool:
        return bool(output["data"]["passed"].all())
