from multiplicative_ising.utils.configs.config import Config
from multiplicative_ising.lattice.semigroup import SemigroupSpec, validate_generators


class SpecConfig(Config):
    """
    a named semigroup specification from the bundled catalogue

    Parameters:
    -----------
        name:
            catalogue key
        d:
            lattice dimension
        generators:
            list of generator vectors
        direction:
            ordering coordinate
    """

    def __init__(self, name: str, d: int, generators: list, direction: int = 1):
        super().__init__(name=name)
        self.d = d
        self.generators = generators
        self.direction = direction

    def to_spec(self) -> SemigroupSpec:
        return validate_generators(self.generators, self.d, direction=self.direction)
