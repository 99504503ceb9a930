"""Command-line interface.

Exit codes: 0 every check passed, 1 some check failed, 2 input or usage error.
"""

import argparse
import json
import os
import sys

from . import io
from .calogero import CMParams, cm_representative, cm_trace_square, interaction_terms, verify_cm
from .components import (
    ComponentParams,
    DefectiveParams,
    component_representative,
    defective_representative,
    enumerate_components,
    verify_component,
)
from .errors import ParabolicMomentError
from .exact_linalg import fmt_rat, rat
from .moment import moment_map
from .parabolic import Region, new_context
from .report import SCHEMA_VERSION
from .semicanonical import semicanonicalize, spec
from .sweep import run_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}") from None


def _rats(text):
    try:
        return tuple(rat(x) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a comma separated list of rationals, got {text!r}") from None


def _context(args):
    alpha = args.alpha
    n = args.n if args.n is not None else sum(alpha)
    return new_context(n, alpha, args.allow_conjecture)


def _read_input(spec_):
    if spec_ in (None, "-"):
        text = sys.stdin.read()
    elif os.path.exists(spec_):
        with open(spec_, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = spec_
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise UsageError(f"input is not valid JSON: {err}") from None


# single-shot commands: JSON document in, JSON document out


def _cmd_moment(doc):
    ctx = io.context_from(doc)
    return {"mu": io.mat_to_json(moment_map(ctx, io.quad_from(ctx, doc)))}


def _cmd_semicanonical(doc):
    ctx = io.context_from(doc)
    res = semicanonicalize(ctx, io.matrix_in(ctx, doc, "r", Region.P))
    return {
        "m": io.mat_to_json(res.m),
        "b": io.mat_to_json(res.b),
        "partition": [[a + 1 for a in cell] for cell in res.partition],
    }


def _cmd_spec(doc):
    ctx = io.context_from(doc)
    return {"spec": spec(ctx, io.matrix_in(ctx, doc, "r", Region.P)).to_json()}


def _cmd_components(doc):
    ctx = io.context_from(doc)
    if "a" not in doc:
        return {"components": [list(a) for a in enumerate_components(ctx)]}
    rho = io.vector_in(ctx, doc, "rho")
    sigma = io.vector_in(ctx, doc, "sigma")
    if "aprime" in doc:
        q = defective_representative(ctx, DefectiveParams(tuple(doc["a"]), tuple(doc["aprime"]), rho, sigma))
    else:
        q = component_representative(ctx, ComponentParams(tuple(doc["a"]), rho, sigma))
    return {"quad": io.quad_to_json(q), "mu": io.mat_to_json(moment_map(ctx, q))}


def _cm_params(ctx, doc):
    return CMParams(tuple(io.vector_in(ctx, doc, "rho")), tuple(io.vector_in(ctx, doc, "sigma")))


def _cmd_cm(doc):
    ctx = io.context_from(doc)
    return {"quad": io.quad_to_json(cm_representative(ctx, _cm_params(ctx, doc)))}


def _hamiltonian(ctx, params):
    rho = [rat(x) for x in params.rho]
    blocks = []
    for k, terms in enumerate(interaction_terms(ctx, rho)):
        blocks.append({
            "block": k + 1,
            "pairs": [{"p": p + 1, "q": q + 1, "inverse_square_gap": fmt_rat(t)} for p, q, t in terms],
            "interaction": fmt_rat(-2 * sum((t for _, _, t in terms), rat(0))),
        })
    return {
        "trace_s2": fmt_rat(cm_trace_square(ctx, params)),
        "kinetic": fmt_rat(sum((rat(x) ** 2 for x in params.sigma), rat(0))),
        "per_block": blocks,
    }


def _cmd_hamiltonian(doc):
    ctx = io.context_from(doc)
    return _hamiltonian(ctx, _cm_params(ctx, doc))


SINGLE = {
    "moment": _cmd_moment,
    "semicanonical": _cmd_semicanonical,
    "spec": _cmd_spec,
    "components": _cmd_components,
    "cm": _cmd_cm,
    "hamiltonian": _cmd_hamiltonian,
}


def _emit(args, doc):
    text = io.dumps(doc) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(p, need_alpha=True):
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--alpha", type=_ints, required=need_alpha, help="composition, e.g. 2,1")
    p.add_argument("--allow-conjecture", action="store_true")
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.add_argument("--format", choices=["json"], default="json")


def build_parser():
    parser = argparse.ArgumentParser(prog="parabolic-moment", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="randomised point checks for one composition")
    vsub = verify.add_subparsers(dest="target", required=True)
    for name in ("components", "cm"):
        p = vsub.add_parser(name)
        _add_common(p)
        p.add_argument("--trials", type=int, default=50)
        p.add_argument("--seed", type=int, default=0)

    sweep = sub.add_parser("sweep", help="verify every composition of n")
    sweep.add_argument("--n", type=int, required=True)
    sweep.add_argument("--trials", type=int, default=10)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--allow-conjecture", action="store_true")
    sweep.add_argument("--out", default=None)
    sweep.add_argument("--format", choices=["json"], default="json")

    for name in SINGLE:
        p = sub.add_parser(name, help=f"run '{name}' on a JSON document")
        p.add_argument("--input", default=None, help="JSON text, a file path, or - for stdin (default)")
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=["json"], default="json")
        if name == "hamiltonian":
            p.add_argument("--alpha", type=_ints, default=None)
            p.add_argument("--rho", type=_rats, default=None)
            p.add_argument("--sigma", type=_rats, default=None)
    return parser


def _verify(args):
    ctx = _context(args)
    if args.seed < 0 or args.trials < 0:
        raise UsageError("--seed and --trials must be non-negative")
    if args.target == "cm":
        rep = verify_cm(ctx, args.trials, args.seed)
        _emit(args, rep.to_json())
        return rep.passed or ctx.conjecture_regime
    reports = [verify_component(ctx, a, args.trials, args.seed) for a in enumerate_components(ctx)]
    ok = all(r.passed for r in reports)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "components",
        "context": {"n": ctx.n, "alpha": list(ctx.alpha)},
        "regime": reports[0].regime,
        "seed": args.seed,
        "trials": args.trials,
        "component_count": len(reports),
        "components": [r.to_json() for r in reports],
        "status": "pass" if ok else "fail",
    }
    _emit(args, doc)
    return ok or ctx.conjecture_regime


def _single(args):
    if args.command == "hamiltonian" and args.alpha is not None:
        if args.rho is None or args.sigma is None:
            raise UsageError("hamiltonian needs --rho and --sigma together with --alpha")
        doc = {"alpha": list(args.alpha), "rho": [fmt_rat(x) for x in args.rho],
               "sigma": [fmt_rat(x) for x in args.sigma]}
    else:
        doc = _read_input(args.input)
    io.validate(args.command, doc)
    _emit(args, SINGLE[args.command](doc))
    return True


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "verify":
            ok = _verify(args)
        elif args.command == "sweep":
            if args.n < 1 or args.trials < 0 or args.seed < 0:
                raise UsageError("--n must be positive, --trials and --seed non-negative")
            doc, ok = run_sweep(args.n, args.trials, args.seed, args.allow_conjecture)
            _emit(args, doc)
        else:
            ok = _single(args)
    except io.SchemaError as err:
        _error("SchemaError", str(err), pointer=err.pointer)
        return EXIT_USAGE
    except ParabolicMomentError as err:
        _error(type(err).__name__, str(err))
        return EXIT_USAGE
    except UsageError as err:
        _error("UsageError", str(err))
        return EXIT_USAGE
    return EXIT_OK if ok else EXIT_FAIL


def _error(name, message, **extra):
    sys.stderr.write(json.dumps({"error": name, "message": message, **extra}, sort_keys=True) + "\n")


if __name__ == "__main__":
    sys.exit(main())
