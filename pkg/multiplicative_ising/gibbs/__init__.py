from multiplicative_ising.gibbs.measure import (
    CylinderEvent,
    LayerView,
    cylinder_marginal,
    layer_views,
    limit_cylinder_probability,
    check_multiplication_invariance,
    finite_volume_probability,
)
from multiplicative_ising.gibbs.entropy import (
    ks_series,
    ks_entropy_2multiple,
    ks_entropy_directional,
    ks_entropy_closed_form,
)
from multiplicative_ising.gibbs.sampler import (
    SampleResult,
    sample_box,
    empirical_cylinder_frequency,
)
