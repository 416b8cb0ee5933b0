from multiplicative_ising.thermodynamics.transfer import (
    SpectralData,
    spectral,
    field_from_bias,
    bond_agreement,
    binary_entropy,
    transfer_matrix,
    chain_partition,
    log_chain_partition,
    chain_log_expectation,
    ising_block_probability,
    ising_block_entropy,
)
from multiplicative_ising.thermodynamics.free_energy import (
    FreeEnergyResult,
    FreeEnergySeries,
    series_1d,
    series_directional,
    build_series,
    free_energy_1d,
    free_energy_directional,
    free_energy_general,
    finite_mgf,
    free_energy_derivative,
    free_energy_curve,
)
from multiplicative_ising.thermodynamics.ldp import (
    RatePoint,
    rate_function,
    rate_curve,
    rate_frame,
    legendre_dual,
)
from multiplicative_ising.thermodynamics.reference import (
    doubling_closed_form,
    product_closed_form,
)
