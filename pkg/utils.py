import math
import pathlib
import numpy as np
from multiplicative_ising.errors import ConfigError
from multiplicative_ising.gibbs.measure import CylinderEvent
from multiplicative_ising.lattice.chains import CAPS
from multiplicative_ising.lattice.semigroup import (
    NORMALIZATIONS,
    SemigroupSpec,
    validate_generators,
)
from multiplicative_ising.processors.free_energy_processor import METHODS
from multiplicative_ising.thermodynamics.free_energy import EXECUTORS
from multiplicative_ising.utils.load_config import load_spec_catalogue, load_spec_config

COMMANDS = [
    "semigroup",
    "decompose",
    "free-energy",
    "curve",
    "rate",
    "ks-entropy",
    "gibbs",
    "sample",
    "verify",
]
FORMATS = ["csv", "json"]


def parse_floats(text: str) -> list:
    """'0.1,0.3' -> [0.1, 0.3]"""
    try:
        values = [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"could not read a list of numbers from '{text}'") from exc
    if not values or not all(math.isfinite(x) for x in values):
        raise ConfigError(f"'{text}' must be a nonempty list of finite numbers")
    return values


def parse_grid(text: str) -> list:
    """'start:stop:count' -> count evenly spaced values, both endpoints included"""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(f"grids are written start:stop:count, got '{text}'")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"could not read the grid '{text}'") from exc
    if count < 1 or not (math.isfinite(start) and math.isfinite(stop)):
        raise ConfigError(f"grid '{text}' must have finite endpoints and a positive count")
    return [float(x) for x in np.linspace(start, stop, count)]


def parse_points(text: str) -> list:
    """'2,3' -> [2, 3] and '2:3,3:5' -> [(2, 3), (3, 5)]"""
    points = []
    try:
        for item in str(text).split(","):
            item = item.strip()
            if not item:
                continue
            coords = tuple(int(x) for x in item.split(":"))
            points.append(coords[0] if len(coords) == 1 else coords)
    except ValueError as exc:
        raise ConfigError(f"could not read integer points from '{text}'") from exc
    if not points:
        raise ConfigError(f"'{text}' holds no points")
    return points


def parse_box(text: str) -> tuple:
    """'8,9' -> (8, 9)"""
    try:
        box = tuple(int(x) for x in str(text).split(",") if x.strip())
    except ValueError as exc:
        raise ConfigError(f"could not read the box '{text}'") from exc
    if not box or any(n < 1 for n in box):
        raise ConfigError(f"box sides must be positive integers, got '{text}'")
    return box


def build_spec(args: dict) -> SemigroupSpec:
    """
    semigroup from --spec-file (JSON), --spec (bundled name) or --gens/--d,
    with --dir overriding the ordering coordinate
    """
    if args["spec_file"]:
        spec = SemigroupSpec.from_json(pathlib.Path(args["spec_file"]).read_text())
    elif args["spec"]:
        spec = load_spec_config(args["spec"]).to_spec()
    elif args["gens"]:
        generators = parse_points(args["gens"])
        d = args["d"] or (1 if isinstance(generators[0], int) else len(generators[0]))
        spec = validate_generators(generators, d)
    else:
        raise ConfigError("a semigroup is needed: use --gens, --spec or --spec-file")
    if args["dir"]:
        if not 1 <= args["dir"] <= spec.d:
            raise ConfigError(f"--dir must lie in 1..{spec.d}, got {args['dir']}")
        spec = spec.with_direction(args["dir"])
    return spec


def build_betas(args: dict) -> list:
    if args["beta_grid"]:
        return parse_grid(args["beta_grid"])
    if args["beta"] is not None:
        return parse_floats(args["beta"])
    raise ConfigError(f"'{args['command']}' needs --beta or --beta-grid")


def build_event(args: dict) -> CylinderEvent:
    if args["event_file"]:
        return CylinderEvent.from_json(pathlib.Path(args["event_file"]).read_text())
    if not (args["sites"] and args["values"]):
        raise ConfigError("'gibbs' needs --sites and --values, or --event-file")
    try:
        values = [int(v) for v in args["values"].split(",")]
        return CylinderEvent(sites=tuple(parse_points(args["sites"])), values=tuple(values))
    except ValueError as exc:
        raise ConfigError(f"invalid event: {exc}") from exc


def run_checker(args: dict) -> None:
    # check command
    if args["command"] not in COMMANDS:
        raise ConfigError(f"Incorrect command. Available commands are: {COMMANDS}")
    # check executor
    if args["executor"] not in EXECUTORS:
        raise ConfigError(f"Incorrect executor. Available executors are: {list(EXECUTORS)}")
    if args["workers"] < 1:
        raise ConfigError(f"workers must be positive, got {args['workers']}")
    # check output format
    if args["format"] not in FORMATS:
        raise ConfigError(f"Incorrect format. Available formats are: {FORMATS}")
    # check normalization
    if args["normalization"] and args["normalization"] not in NORMALIZATIONS:
        raise ConfigError(
            f"Incorrect normalization. Available normalizations are: {list(NORMALIZATIONS)}"
        )
    # check chain cap
    if args["cap"] not in CAPS:
        raise ConfigError(f"Incorrect cap. Available caps are: {list(CAPS)}")
    # check method
    if args["method"] not in METHODS:
        raise ConfigError(f"Incorrect method. Available methods are: {list(METHODS)}")
    # check bundled spec
    if args["spec"]:
        available_specs = list(load_spec_catalogue().keys())
        if args["spec"] not in available_specs:
            raise ConfigError(f"Incorrect spec. Available specs are: {available_specs}")
    if args["tol"] is not None and not args["tol"] > 0:
        raise ConfigError(f"tol must be positive, got {args['tol']}")
    if args["truncation"] is not None and args["truncation"] < 0:
        raise ConfigError(f"truncation must be non-negative, got {args['truncation']}")
    # command requirements
    command = args["command"]
    if command in ["decompose", "sample"] and not args["box"]:
        raise ConfigError(f"'{command}' needs --box")
    if command == "free-energy" and args["method"] == "finite" and not args["box"]:
        raise ConfigError("the finite method needs --box")
    if command in ["free-energy", "curve", "rate"] and not args["r"]:
        raise ConfigError(f"'{command}' needs --r")
    if command == "rate" and not args["x_grid"]:
        raise ConfigError("'rate' needs --x-grid")
    if command == "sample" and args["count"] < 1:
        raise ConfigError(f"count must be positive, got {args['count']}")


def get_command(args: dict) -> str:
    """return the command that reruns this computation"""
    cmd = f"python run.py {args['command']}"
    for arg, value in args.items():
        if arg in ["command", "verbose", "out"] or value in [None, False, ""]:
            continue
        flag = arg.replace("_", "-")
        cmd += f" --{flag}" if value is True else f" --{flag} {value}"
    return cmd
