# numerical defaults shared by the thermodynamics, gibbs and oracle packages

DEFAULT_TOL = 1e-12

# hard cap on the number of series terms
TRUNCATION_CAP = 100_000

# chain partition sums switch from vector iteration to the spectral form above this length
LOG_SPACE_THRESHOLD = 64

# bisection bracket for the rate function solver
BETA_MAX = 50.0
BISECTION_ITERATIONS = 80

# exact enumeration over 2^n spin configurations
MAX_ENUMERATION_SITES = 24
ENUMERATION_CHUNK_BITS = 18
