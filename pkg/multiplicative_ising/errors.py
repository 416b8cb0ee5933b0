class IsingError(Exception):
    """base class for every error raised by multiplicative_ising"""


class SemigroupError(IsingError, ValueError):
    """invalid generators or an ill-defined order on a semigroup"""


class InvalidGenerator(SemigroupError):
    pass


class DegenerateGenerator(SemigroupError):
    pass


class CoprimalityViolation(SemigroupError):
    """
    two generators share a prime factor in one coordinate

    Parameters:
    -----------
        coordinate:
            1-based coordinate s with gcd(p_is, p_i's) > 1
        first, second:
            1-based indices of the offending generators
    """

    def __init__(self, coordinate: int, first: int, second: int, gcd: int):
        self.coordinate = coordinate
        self.first = first
        self.second = second
        self.gcd = gcd
        super().__init__(
            f"generators {first} and {second} are not coprime in coordinate "
            f"{coordinate} (gcd={gcd})"
        )


class OrderAmbiguity(SemigroupError):
    pass


class UnboundedChain(SemigroupError):
    pass


class BiasOutOfRange(IsingError, ValueError):
    pass


class EmptyBlock(IsingError, ValueError):
    pass


class ToleranceTooTight(IsingError):
    pass


class BracketFailure(IsingError):
    """bisection could not bracket F'(eta) = x inside [-beta_max, beta_max]"""

    def __init__(self, x: float, bracket: tuple, slopes: tuple):
        self.x = x
        self.bracket = bracket
        self.slopes = slopes
        super().__init__(
            f"no bracket for x={x}: F' on {bracket} spans {slopes}"
        )


class TooLargeForEnumeration(IsingError):
    def __init__(self, n_sites: int, max_sites: int):
        self.n_sites = n_sites
        self.max_sites = max_sites
        super().__init__(
            f"{n_sites} involved sites exceed the enumeration cap of {max_sites}"
        )


class ConfigError(IsingError):
    pass
