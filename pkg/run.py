import sys
import time
import logging
import argparse
from humanfriendly import format_timespan
from multiplicative_ising.constants import MAX_ENUMERATION_SITES
from multiplicative_ising.errors import ConfigError, IsingError, SemigroupError
from multiplicative_ising.postprocessor.writers import render, write_output
from multiplicative_ising.processors.decompose_processor import DecomposeProcessor
from multiplicative_ising.processors.free_energy_processor import (
    CurveProcessor,
    FreeEnergyProcessor,
)
from multiplicative_ising.processors.gibbs_processor import GibbsProcessor, SampleProcessor
from multiplicative_ising.processors.ks_entropy_processor import KSEntropyProcessor
from multiplicative_ising.processors.rate_processor import RateProcessor
from multiplicative_ising.processors.semigroup_processor import SemigroupProcessor
from multiplicative_ising.processors.verify_processor import VerifyProcessor
from multiplicative_ising.utils import paths
from multiplicative_ising.utils.load_config import load_processor_config
from utils import (
    COMMANDS,
    build_betas,
    build_event,
    build_spec,
    get_command,
    parse_box,
    parse_floats,
    parse_grid,
    run_checker,
)


def apply_preset(args: dict) -> None:
    """fill every option left unset on the command line from the preset"""
    config = load_processor_config(args["preset"])
    if config.command != args["command"]:
        raise ConfigError(
            f"preset '{config.name}' runs '{config.command}', not '{args['command']}'"
        )
    if not (args["gens"] or args["spec"] or args["spec_file"]):
        args["spec"] = config.spec
    for key, value in config.params.items():
        if args.get(key) is not None:
            continue
        args[key] = ",".join(str(v) for v in value) if isinstance(value, list) else value


def build_processor(args: dict):
    command = args["command"]
    execution = {"executor": args["executor"], "workers": args["workers"]}
    if command == "verify":
        max_sites = args["max_sites"] or MAX_ENUMERATION_SITES
        return VerifyProcessor(max_sites=max_sites, **execution)

    spec = build_spec(args)
    normalization = args["normalization"] or "site"
    box = parse_box(args["box"]) if args["box"] else None
    if command == "semigroup":
        return SemigroupProcessor(spec, bound=args["bound"], show_gamma=args["gamma"])
    if command == "decompose":
        return DecomposeProcessor(spec, box, cap=args["cap"], census=args["census"])
    if command == "free-energy":
        return FreeEnergyProcessor(
            spec,
            parse_floats(args["r"]),
            build_betas(args),
            tol=args["tol"] or 1e-12,
            truncation=args["truncation"],
            normalization=normalization,
            method=args["method"],
            box=box,
            cap=args["cap"],
        )
    if command == "curve":
        return CurveProcessor(
            spec,
            parse_floats(args["r"]),
            build_betas(args),
            tol=args["tol"] or 1e-12,
            truncation=args["truncation"],
            normalization=normalization,
            **execution,
        )
    if command == "rate":
        return RateProcessor(
            spec,
            parse_floats(args["r"]),
            parse_grid(args["x_grid"]),
            tol=args["tol"] or 1e-10,
            normalization=normalization,
            **execution,
        )
    if command == "ks-entropy":
        return KSEntropyProcessor(
            spec, build_betas(args), tol=args["tol"] or 1e-12, normalization=normalization
        )
    if command == "gibbs":
        return GibbsProcessor(
            spec,
            build_event(args),
            build_betas(args),
            box=box,
            cap=args["cap"],
        )
    return SampleProcessor(
        spec,
        box,
        build_betas(args)[0],
        seed=args["seed"],
        count=args["count"],
        cap=args["cap"],
        **execution,
    )


def main(args) -> int:
    args = vars(args)
    if args["verbose"]:
        logging.basicConfig(level=logging.DEBUG)
    for flag in ["fig1", "fig2"]:
        if args[flag]:
            args["preset"] = flag
    # progress goes to stderr when the table itself is printed
    log = sys.stdout if (args["out"] or args["preset"]) else sys.stderr
    try:
        if args["preset"]:
            apply_preset(args)
        run_checker(args)
        processor = build_processor(args)
        print(f"Processing {args['command']}", file=log)
        t0 = time.monotonic()
        output = processor.run()
        output["metadata"]["command"] = get_command(args)
        exec_time = format_timespan(time.monotonic() - t0)
        print(f"Done in {exec_time}", file=log)
    except (ConfigError, SemigroupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IsingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    if args["out"]:
        path = write_output(output, args["out"], args["format"])
        print(f"Output written to {path}", file=log)
    elif args["preset"]:
        path = paths.output_path(args["command"], args["preset"], extension=args["format"])
        write_output(output, path, args["format"])
        print(f"Output written to {path}", file=log)
    else:
        sys.stdout.write(render(output, args["format"]))

    if args["command"] == "verify" and not VerifyProcessor.passed(output):
        print("verification failed", file=sys.stderr)
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="multiplicative Ising models")
    parser.add_argument(
        "command",
        type=str,
        choices=COMMANDS,
        help=f"computation to run {COMMANDS}",
    )
    # semigroup
    parser.add_argument(
        "--gens",
        dest="gens",
        type=str,
        default=None,
        help="generators, '2,3,5' in d=1 or '2:3,3:5' in d=2",
    )
    parser.add_argument(
        "--spec",
        dest="spec",
        type=str,
        default=None,
        help="name of a bundled spec (doubling, two_three, fig1, fig2, diag23, product6)",
    )
    parser.add_argument(
        "--spec-file",
        dest="spec_file",
        type=str,
        default=None,
        help='JSON file {"d": ..., "generators": [...], "direction": ...}',
    )
    parser.add_argument(
        "--d",
        dest="d",
        type=int,
        default=None,
        help="lattice dimension (inferred from --gens by default)",
    )
    parser.add_argument(
        "--dir",
        dest="dir",
        type=int,
        default=None,
        help="ordering coordinate j (default 1)",
    )
    # numerical parameters
    parser.add_argument(
        "--r",
        dest="r",
        type=str,
        default=None,
        help="bias values, comma separated",
    )
    parser.add_argument(
        "--beta",
        dest="beta",
        type=str,
        default=None,
        help="inverse temperatures, comma separated",
    )
    parser.add_argument(
        "--beta-grid",
        dest="beta_grid",
        type=str,
        default=None,
        help="inverse temperature grid start:stop:count (endpoints included)",
    )
    parser.add_argument(
        "--x-grid",
        dest="x_grid",
        type=str,
        default=None,
        help="rate function grid start:stop:count (endpoints included)",
    )
    parser.add_argument(
        "--tol",
        dest="tol",
        type=float,
        default=None,
        help="absolute tolerance (default 1e-12, 1e-10 for rate)",
    )
    parser.add_argument(
        "--truncation",
        dest="truncation",
        type=int,
        default=None,
        help="fixed number of series terms instead of the tolerance",
    )
    parser.add_argument(
        "--normalization",
        dest="normalization",
        type=str,
        default=None,
        help="series normalization {site, volume, directional} (default site)",
    )
    parser.add_argument(
        "--method",
        dest="method",
        type=str,
        default="series",
        help="free-energy method {series, general, finite} (default series)",
    )
    parser.add_argument(
        "--box",
        dest="box",
        type=str,
        default=None,
        help="box sides N_1,...,N_d",
    )
    parser.add_argument(
        "--cap",
        dest="cap",
        type=str,
        default="coordinate",
        help="chain cap {coordinate, rank} (default coordinate)",
    )
    parser.add_argument(
        "--bound",
        dest="bound",
        type=int,
        default=1000,
        help="list semigroup elements up to this bound (default 1000)",
    )
    parser.add_argument(
        "--gamma",
        action="store_true",
        help="print the semigroup constants instead of the elements",
    )
    parser.add_argument(
        "--census",
        action="store_true",
        help="print the chain-length census instead of one row per root",
    )
    # events and sampling
    parser.add_argument(
        "--sites",
        dest="sites",
        type=str,
        default=None,
        help="cylinder sites, '1,2,4' in d=1 or '1:1,2:3' in d=2",
    )
    parser.add_argument(
        "--values",
        dest="values",
        type=str,
        default=None,
        help="cylinder spins, comma separated -1/1",
    )
    parser.add_argument(
        "--event-file",
        dest="event_file",
        type=str,
        default=None,
        help='JSON file {"sites": [...], "values": [...]}',
    )
    parser.add_argument(
        "--seed",
        dest="seed",
        type=int,
        default=0,
        help="sampler seed (default 0)",
    )
    parser.add_argument(
        "--count",
        dest="count",
        type=int,
        default=1,
        help="number of sampled configurations (default 1)",
    )
    parser.add_argument(
        "--max-sites",
        dest="max_sites",
        type=int,
        default=None,
        help=f"enumeration limit in sites for verify (default {MAX_ENUMERATION_SITES})",
    )
    # presets
    parser.add_argument(
        "--preset",
        dest="preset",
        type=str,
        default=None,
        help="name of a bundled preset",
    )
    parser.add_argument(
        "--fig1",
        action="store_true",
        help="free-energy curves of <2,3,5,7,11>",
    )
    parser.add_argument(
        "--fig2",
        action="store_true",
        help="free-energy curves of the five-generator d=2 example",
    )
    # execution and output
    parser.add_argument(
        "--executor",
        dest="executor",
        type=str,
        default="iterative",
        help="executor {iterative, futures} (default iterative)",
    )
    parser.add_argument(
        "--workers",
        dest="workers",
        type=int,
        default=4,
        help="number of workers with the futures executor (default 4)",
    )
    parser.add_argument(
        "--out",
        dest="out",
        type=str,
        default=None,
        help="output file (default stdout, or outs/<command>/<preset>.<format> with a preset)",
    )
    parser.add_argument(
        "--format",
        dest="format",
        type=str,
        default="csv",
        help="output format {csv, json} (default csv)",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="debug logging",
    )
    return parser


if __name__ == "__main__":
    parser = build_parser()
    args = parser.parse_args()
    sys.exit(main(args))
