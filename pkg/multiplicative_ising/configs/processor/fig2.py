from multiplicative_ising.utils.configs.processor import ProcessorConfig

processor_config = ProcessorConfig(
    name="fig2",
    command="curve",
    spec="fig2",
    params={
        "r": [0.1, 0.3, 0.5, 0.7, 0.9],
        "beta_grid": "-3:3:121",
        "truncation": 100,
        "normalization": "site",
    },
)
