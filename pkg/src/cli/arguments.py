"""Command-line flags of the experiment runner."""
import argparse
from typing import Dict, List, Optional, Sequence

from src.config import config
from src.errors import ConfigError
from src.models.reports import EXPERIMENTS, SPACES, RunConfig

TOLERANCE_PREFIX = "--tol-"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-projection",
        description="Spectral projections on the hyperbolic disk and on Damek-Ricci spaces.",
        epilog="Any metric bound can be overridden with --tol-<metric> VALUE.",
        allow_abbrev=False,
    )
    parser.add_argument("experiment", help=f"one of: {', '.join(EXPERIMENTS)}")
    parser.add_argument("--space", default="disk", help=f"one of: {', '.join(SPACES)}")
    parser.add_argument("--m", type=int, default=2, help="dimension of p (even)")
    parser.add_argument("--k", type=int, default=1, help="dimension of the centre z")
    parser.add_argument("--mode", type=int, default=0, help="angular mode n of the disk test function")
    parser.add_argument("--R", type=float, default=1.0, help="support radius of the bump")
    parser.add_argument("--profile", dest="profile_csv", default=None, help="CSV file with rho,value rows")
    parser.add_argument("--lambda", dest="lambda_value", type=float, default=None,
                        help="single real lambda (sets --lambda-min and --lambda-max)")
    parser.add_argument("--lambda-min", type=float, default=0.5)
    parser.add_argument("--lambda-max", type=float, default=8.0)
    parser.add_argument("--lambda-step", type=float, default=0.5)
    parser.add_argument("--im-min", type=float, default=-3.0)
    parser.add_argument("--im-max", type=float, default=3.0)
    parser.add_argument("--im-step", type=float, default=0.25)
    parser.add_argument("--rho", type=float, default=0.0, help="geodesic distance of the evaluation point")
    parser.add_argument("--out", default=config.output_dir, help="artifact directory")
    parser.add_argument("--threads", type=int, default=config.threads,
                        help="worker threads for grid sweeps (SPECTRAL_THREADS)")
    parser.add_argument("--lambda-cutoff", type=float, default=config.lambda_max,
                        help="truncation of the spectral integrals")
    parser.add_argument("--K", type=int, default=20, help="largest pole index in residue sums")
    return parser


def parse_tolerances(extra: Sequence[str]) -> Dict[str, float]:
    """Collect ``--tol-<metric> VALUE`` (or ``--tol-<metric>=VALUE``) pairs.

    Raises:
        ConfigError: An argument that is not a tolerance override, or a bad value.
    """
    tolerances: Dict[str, float] = {}
    items = list(extra)
    i = 0
    while i < len(items):
        item = items[i]
        if not item.startswith(TOLERANCE_PREFIX):
            raise ConfigError(f"unrecognized argument {item!r}")
        name, sep, raw = item[len(TOLERANCE_PREFIX):].partition("=")
        if not sep:
            if i + 1 >= len(items):
                raise ConfigError(f"{item} needs a value")
            raw = items[i + 1]
            i += 1
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(f"{item} expects a number, got {raw!r}") from None
        if not name:
            raise ConfigError("empty metric name in tolerance override")
        tolerances[name.replace("-", "_")] = value
        i += 1
    return tolerances


def parse_args(argv: Optional[List[str]] = None) -> RunConfig:
    """Build and validate the run configuration.

    Raises:
        ConfigError: Unknown flags, bad overrides or invalid values.
    """
    args, extra = build_parser().parse_known_args(argv)
    lambda_min, lambda_max = args.lambda_min, args.lambda_max
    if args.lambda_value is not None:
        lambda_min = lambda_max = args.lambda_value
    cfg = RunConfig(
        experiment=args.experiment,
        space=args.space,
        m=args.m,
        k=args.k,
        mode=args.mode,
        R=args.R,
        profile_csv=args.profile_csv,
        lambda_min=lambda_min,
        lambda_max=lambda_max,
        lambda_step=args.lambda_step,
        im_min=args.im_min,
        im_max=args.im_max,
        im_step=args.im_step,
        rho=args.rho,
        out=args.out,
        threads=args.threads,
        lambda_cutoff=args.lambda_cutoff,
        K=args.K,
        tolerances=parse_tolerances(extra),
    )
    cfg.validate()
    return cfg
