from multiplicative_ising.lattice.semigroup import (
    SemigroupSpec,
    validate_generators,
    enumerate_scalar_semigroup,
    first_elements,
    gamma,
    gamma_exact,
    density_K_over_J,
    root_density,
    directional_constant,
    normalization_constant,
    semigroup_section,
)
from multiplicative_ising.lattice.chains import (
    ChainDecomposition,
    is_root,
    factor_index,
    chain_index_j,
    chain_position,
    decompose_box,
    census_J,
    census_K,
    count_roots,
    chain_census,
    chain_length_weights,
    b_count,
    decomposition_to_frame,
    census_to_frame,
)
