from multiplicative_ising.utils.configs.config import Config


class ProcessorConfig(Config):
    """
    preset for one CLI command

    Parameters:
    -----------
        name:
            preset name, also the output file stem
        command:
            CLI command the preset runs
        spec:
            name of a bundled spec
        params:
            command options (r values, beta grid, truncation, ...)
    """

    def __init__(self, name: str, command: str, spec: str, params: dict = None):
        super().__init__(name=name)
        self.command = command
        self.spec = spec
        self.params = params or {}
