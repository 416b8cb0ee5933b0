from multiplicative_ising.errors import ConfigError


class Config:
    """named configuration, subclasses add their fields"""

    def __init__(self, name: str) -> None:
        if not name or not isinstance(name, str):
            raise ConfigError(f"configurations need a nonempty name, got {name!r}")
        self.name = name

    def __repr__(self) -> str:
        fields = ", ".join(f"{key}={value!r}" for key, value in vars(self).items())
        return f"{type(self).__name__}({fields})"
