from multiplicative_ising.oracle.brute_force import (
    InvolvedSiteSet,
    involved_sites,
    brute_force_mgf,
    brute_force_cylinder,
    brute_force_block_entropy,
)
