from multiplicative_ising.utils.path_handler import Paths

paths = Paths()
