"""
Weyl Lab
Command-line controller: one subcommand per experiment, each printing a
versioned JSON report envelope on stdout. Logs go to stderr.
"""
import argparse
import json
import logging
import sys
import time

from config import config
from exact_arith import LabError, parse_matrix, parse_rational
from quadratic_forms import minus_one_obstruction
from quaternion import Mat2Padic, QuaternionAlgebra, SplitContext, approximate_in_G, split
from transitivity import (
    FailedAt,
    nonstandard_apartment,
    selfcheck,
    strong_transitivity_decide,
    theorem1_dichotomy,
    weyl_transitivity_check,
)
from tree import axis, ball_enumerate, base_vertex, chambers_in, displacement, to_dot, translation_on

logger = logging.getLogger("WeylLab")


def setup_logging(level=None, log_file=None):
    handlers = [logging.StreamHandler(sys.stderr)]
    log_file = log_file or config.LOG_FILE
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, (level or config.LOG_LEVEL).upper(), logging.WARNING),
        format='%(asctime)s [%(name)s] [%(levelname)s] %(message)s',
        handlers=handlers,
        force=True,
    )


def _primes(text):
    return [int(t) for t in text.split(",") if t.strip()]


class WeylLab:
    """Runs one subcommand and returns (exit code, result payload)."""

    def minus_one(self, args):
        result = minus_one_obstruction(args.alpha, args.beta)
        return 0, dict(result.to_dict(), minus_one_in_D2=result.isotropic)

    def strong(self, args):
        verdict = strong_transitivity_decide(args.alpha, args.beta, args.height)
        return 0, verdict.to_dict()

    def weyl(self, args):
        report = weyl_transitivity_check(args.alpha, args.beta, args.p, args.radius, args.maxlen, args.depth)
        code = 1 if isinstance(report.verdict, FailedAt) else 0
        return code, report.to_dict()

    def dichotomy(self, args):
        frame = theorem1_dichotomy(args.alpha, args.beta, args.primes, args.radius, args.maxlen, args.depth)
        return 0, {"rows": json.loads(frame.to_json(orient="records"))}

    def sec5_demo(self, args):
        record = nonstandard_apartment(args.A, args.B, args.p, args.radius)
        return (0 if record.passed else 1), record.to_dict()

    def ball(self, args):
        ball = ball_enumerate(base_vertex(args.p), args.radius)
        if args.dot:
            to_dot(ball, args.dot)
            logger.info(f"wrote {args.dot}")
        return 0, {
            "vertices": len(ball),
            "expected_vertices": ball.expected_size(),
            "chambers": len(chambers_in(ball)),
            "dot": args.dot,
        }

    def approximate(self, args):
        algebra = QuaternionAlgebra(args.alpha, args.beta)
        prec = max(config.DEFAULT_PRECISION, args.digits + 2 * config.APPROX_MARGIN)
        ctx = SplitContext.build(algebra, args.p, prec)
        target = Mat2Padic.from_rational(parse_matrix(args.target), args.p, prec)
        q = approximate_in_G(target, ctx, args.digits)
        return 0, {
            "quaternion": str(q),
            "norm": str(q.norm()),
            "certified_digits": args.digits,
            "split": str(split(q, ctx)),
            "split_context": ctx.describe(),
        }

    def axis(self, args):
        g = parse_matrix(args.matrix)
        ball = ball_enumerate(base_vertex(args.p), args.radius)
        seg = axis(g, ball)
        return 0, {
            "segment": seg.to_list(),
            "translation_length": displacement(g, seg.vertices[0]),
            "shift": translation_on(g, seg),
        }

    def selfcheck(self, args):
        result = selfcheck(args.seed, args.samples)
        return (0 if result["passed"] else 1), result


def build_parser():
    parser = argparse.ArgumentParser(prog=config.TOOL_NAME, description="Transitivity experiments on the tree of SL2(Q_p)")
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--pretty", dest="pretty", action="store_true", default=True)
    fmt.add_argument("--compact", dest="pretty", action="store_false")
    parser.add_argument("--log-level", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def algebra_args(p):
        p.add_argument("--alpha", type=parse_rational, required=True)
        p.add_argument("--beta", type=parse_rational, required=True)

    p = sub.add_parser("minus-one", help="decide -1 in D^2")
    algebra_args(p)

    p = sub.add_parser("strong", help="strong transitivity verdict")
    algebra_args(p)
    p.add_argument("--height", type=int, default=None)

    p = sub.add_parser("weyl", help="Weyl transitivity on a ball")
    algebra_args(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--maxlen", type=int, required=True)
    p.add_argument("--depth", type=int, default=None)

    p = sub.add_parser("dichotomy", help="Weyl / strong table over primes")
    algebra_args(p)
    p.add_argument("--primes", type=_primes, required=True)
    p.add_argument("--radius", type=int, default=config.DICHOTOMY_RADIUS)
    p.add_argument("--maxlen", type=int, default=config.DICHOTOMY_MAXLEN)
    p.add_argument("--depth", type=int, default=None)

    p = sub.add_parser("sec5-demo", help="non-standard apartment of A, B")
    p.add_argument("--p", type=int, default=config.DEMO_PRIME)
    p.add_argument("--A", default=config.DEMO_A)
    p.add_argument("--B", default=config.DEMO_B)
    p.add_argument("--radius", type=int, default=config.DEMO_RADIUS)

    p = sub.add_parser("ball", help="enumerate a ball")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--dot", default=None)

    p = sub.add_parser("approximate", help="rational norm-1 approximation of an SL2 target")
    p.add_argument("--alpha", type=parse_rational, default=parse_rational("-2"))
    p.add_argument("--beta", type=parse_rational, default=parse_rational("-5"))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--digits", type=int, required=True)

    p = sub.add_parser("axis", help="axis of a hyperbolic matrix inside a ball")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--radius", type=int, required=True)

    p = sub.add_parser("selfcheck", help="seeded split and density property runs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=20)
    return parser


def _parameters(args):
    return {k: (v if isinstance(v, (int, list, type(None))) else str(v))
            for k, v in vars(args).items() if k not in ("command", "pretty", "log_level")}


def envelope(command, parameters, result, seconds):
    return {
        "tool": config.TOOL_NAME,
        "version": config.VERSION,
        "schema": config.SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "result": result,
        "timing": {"seconds": round(seconds, 3)},
    }


def emit(doc, pretty=True, stream=None):
    stream = stream or sys.stdout
    stream.write(json.dumps(doc, sort_keys=True, indent=2 if pretty else None, default=str) + "\n")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    setup_logging(args.log_level)
    lab = WeylLab()
    handler = getattr(lab, args.command.replace("-", "_"))
    params = _parameters(args)
    start = time.perf_counter()
    try:
        code, result = handler(args)
    except LabError as e:
        logger.warning(f"{args.command} failed: {e.reason}: {e.detail}")
        code, result = 1, {"error": {"reason": e.reason, "detail": e.detail}}
    except ValueError as e:
        logger.warning(f"{args.command}: invalid input: {e}")
        code, result = 2, {"error": {"reason": "InvalidInput", "detail": str(e)}}
    emit(envelope(args.command, params, result, time.perf_counter() - start), args.pretty)
    return code


if __name__ == "__main__":
    sys.exit(main())
