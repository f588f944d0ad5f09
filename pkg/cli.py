# cli.py
"""
Command line for the pentagon verifier.

    python cli.py verify --weight g --mode modp --trials 20 --seed 7
    python cli.py coeff --weight g --both --monomial 124,125,134,135,235
    python cli.py show matrix-lhs
    python cli.py crosscheck --weight h
    python cli.py explore --grid "0:sym;sym:0;sym:sym"

Exit status: 0 verified, 1 identity fails, 2 usage or configuration error.
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from agents.report_agent import ReportAgent
from agents.verification_agent import VerificationAgent
from core.errors import PentagonError, VerificationError
from core.report_schema import RunConfig
from core.settings import LOG_LEVELS, Settings, load_settings

logger = logging.getLogger("pentagon")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

SHOW_OBJECTS = ("weight", "matrix-A", "matrix-lhs", "matrix-rhs", "form")


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--weight", choices=("f", "g", "h", "composite"), default="f")
    common.add_argument("--mode", choices=("symbolic", "modp"), default="symbolic")
    common.add_argument("--prime", type=int, default=settings.prime)
    common.add_argument("--trials", type=int, default=settings.trials)
    common.add_argument("--seed", type=int, default=settings.seed)
    common.add_argument("--lambda", dest="lam", default="sym", help="'sym' or a rational such as 3/2")
    common.add_argument("--mu", default="sym", help="'sym' or a rational such as 3/2")
    common.add_argument("--zeta", help="five distinct rationals z1,z2,z3,z4,z5")
    common.add_argument("--output", choices=("text", "structured"), default="text")
    common.add_argument("--timings", action="store_true", help="include phase timings in the report")
    common.add_argument("--log-level", choices=LOG_LEVELS, default=settings.log_level)

    parser = argparse.ArgumentParser(
        prog="pentagon",
        description="Verify fermionic solutions of the pentagon equation",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("verify", parents=[common], help="lhs - rhs of the pentagon equation")

    coeff = commands.add_parser("coeff", parents=[common], help="coefficient of one monomial")
    coeff.add_argument("--monomial", required=True, help="comma-separated faces, e.g. 124,125,135")
    coeff.add_argument("--side", choices=("lhs", "rhs"), default="lhs")
    coeff.add_argument("--both", action="store_true", help="both sides with an equality verdict")

    show = commands.add_parser("show", parents=[common], help="render a weight, form or matrix")
    show.add_argument("object", choices=SHOW_OBJECTS)
    show.add_argument("--tet", default="1234")

    commands.add_parser("crosscheck", parents=[common], help="Gaussian representations and minor rule")

    explore = commands.add_parser("explore", parents=[common], help="composite residual over a (lam, mu) grid")
    explore.add_argument("--grid", help='cells lam:mu separated by ";", e.g. "0:1;sym:sym"')
    return parser


def to_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        weight=args.weight,
        mode=args.mode,
        prime=args.prime,
        trials=args.trials,
        seed=args.seed,
        lam=args.lam,
        mu=args.mu,
        zeta=args.zeta,
        output=args.output,
        monomial=getattr(args, "monomial", None),
        side=getattr(args, "side", "lhs"),
        both=getattr(args, "both", False),
        tet=getattr(args, "tet", "1234"),
        show_object=getattr(args, "object", None),
        grid=getattr(args, "grid", None),
        timings=args.timings,
    )


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    try:
        settings = load_settings()
    except PentagonError as e:
        return _usage_error(str(e))

    args = build_parser(settings).parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        config = to_config(args)
    except ValidationError as e:
        return _usage_error(f"invalid configuration\n{e}")

    agent = VerificationAgent(config)
    try:
        status, report = agent.run()
    except VerificationError as e:
        logger.error("self-check failed: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (PentagonError, ValueError, ZeroDivisionError) as e:
        return _usage_error(str(e))

    renderer = ReportAgent()
    if config.output == "structured":
        print(renderer.render_structured(agent.document(report)))
    else:
        timings = agent.timings if config.timings else None
        sys.stdout.write(renderer.render_text(report, timings))
    return status


if __name__ == "__main__":
    sys.exit(main())
