import yaml
import importlib.util
import importlib.resources
from multiplicative_ising.errors import ConfigError
from multiplicative_ising.utils.configs.spec import SpecConfig


def load_processor_config(config_name: str):
    path = f"multiplicative_ising.configs.processor.{config_name}"
    loader = importlib.util.find_spec(path)
    if loader is None:
        raise ConfigError(f"No config file found for the selected preset '{config_name}'")
    config_module = importlib.import_module(path)
    # every preset module defines a variable named processor_config
    return getattr(config_module, "processor_config")


def load_spec_catalogue() -> dict:
    text = (
        importlib.resources.files("multiplicative_ising.configs.spec")
        .joinpath("specs_configs.yaml")
        .read_text()
    )
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid spec catalogue: {exc}") from exc


def load_spec_config(config_name: str) -> SpecConfig:
    configs = load_spec_catalogue()
    if config_name not in configs:
        raise ConfigError(
            f"Incorrect spec '{config_name}'. Available specs are: {list(configs.keys())}"
        )
    config = configs[config_name]
    return SpecConfig(
        name=config_name,
        d=config["d"],
        generators=config["generators"],
        direction=config.get("direction", 1),
    )
