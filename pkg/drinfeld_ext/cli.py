"""
Command-line front end.

    drinfeld-ext dual --q 2 --drinfeld "T,1"
    drinfeld-ext bidual --q 3 --drinfeld "1,1,1,1"
    drinfeld-ext carlitz-ext --m 1 --n 2
    drinfeld-ext reduce --kind e-vs-c --q 2 --drinfeld "T,1" --delta "tau^2"
    drinfeld-ext split --kind e-vs-c --q 2 --drinfeld "T,1" --delta "tau"
    drinfeld-ext act --kind carlitz --m 1 --n 2 --delta '["0", "tau"]' --b "t"
    drinfeld-ext verify --suite cocycle --q 3 --trials 100 --seed 7

Exit codes: 0 success, 1 bad input, 2 unsupported by the theory,
3 verification failure.
"""
import argparse
import sys

from . import __version__
from .base_field import degree_guard, parse_k_element, parse_t_poly
from .biderivation import Biderivation
from .config import OUTPUT_FORMATS, CliConfig
from .exceptions import (
    DegreeGuardError,
    DrinfeldExtError,
    ParseError,
    UnsupportedError,
    VerificationError,
)
from .ext_engine import (
    KINDS,
    act,
    bidual_tmodule,
    carlitz_ext_structure,
    drinfeld_from_dual,
    dual_presentation,
    dual_tmodule,
    find_splitting,
    normalize_top_coefficient,
    reduce,
)
from .ext_logger import get_logger, set_console_level
from .serialization import (
    biderivation_from_json,
    certificate_to_json,
    dumps,
    ext_class_to_json,
    loads,
    matrix_from_json,
    matrix_to_json,
    pretty_class,
    pretty_matrix,
    tmodule_from_json,
    tmodule_to_json,
)
from .skew_poly import format_skew_matrix
from .tmodule import carlitz, carlitz_tensor, make_drinfeld
from .verify import SUITES, run_suites

logger = get_logger(__name__)

PROG = "drinfeld-ext"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNSUPPORTED = 2
EXIT_VERIFICATION = 3

# first match wins
EXIT_CODES = (
    (UnsupportedError, EXIT_UNSUPPORTED),
    (VerificationError, EXIT_VERIFICATION),
    (DegreeGuardError, EXIT_VERIFICATION),
    (DrinfeldExtError, EXIT_INPUT),
)


def exit_code_for(exc):
    for cls, code in EXIT_CODES:
        if isinstance(exc, cls):
            return code
    return EXIT_INPUT


# input ------------------------------------------------------------------------------


def _read_file(args):
    if not args.file:
        return None
    try:
        with open(args.file, encoding="utf-8") as handle:
            return loads(handle.read())
    except OSError as exc:
        raise ParseError(f"cannot read {args.file}: {exc.strerror}") from None


def _parse_drinfeld_list(text, config):
    """Comma-separated coefficients a_1..a_r; error positions index into ``text``."""
    coeffs = []
    offset = 0
    for item in text.split(","):
        lead = len(item) - len(item.lstrip())
        try:
            coeffs.append(parse_k_element(item.strip(), config))
        except ParseError as exc:
            position = None if exc.position is None else exc.position + offset + lead
            raise ParseError(exc.reason, text, position) from None
        offset += len(item) + 1
    return coeffs


def load_drinfeld(args, cfg):
    """The Drinfeld module from --drinfeld or the file, normalized on request."""
    document = _read_file(args)
    if document is not None and "context" in document:
        module = tmodule_from_json(document["context"], cfg.field)
    elif document is not None and ("drinfeld" in document or "phi_t" in document):
        module = tmodule_from_json(document, cfg.field)
    elif document is not None and "source" in document:
        module = tmodule_from_json(document["source"], cfg.field)
    elif args.drinfeld:
        module = make_drinfeld(_parse_drinfeld_list(args.drinfeld, cfg.field))
    else:
        raise ParseError("a Drinfeld module is required (--drinfeld or --file)")
    if not hasattr(module, "rank"):
        raise ParseError("the module is not given as a Drinfeld module")
    if cfg.normalize and not module.a(module.rank).is_one():
        module, lam = normalize_top_coefficient(module)
        logger.info("rescaled by lambda = %s", lam)
    return module


def _delta_matrix(args, document, cfg, shape):
    raw = document.get("delta_t") if document is not None else None
    if raw is None:
        raw = args.delta
    if raw is None:
        raise ParseError("a biderivation value is required (--delta or --file)")
    if isinstance(raw, str):
        text = raw.strip()
        raw = loads(text) if text.startswith("[") else [[text]]
    return matrix_from_json(raw, cfg.field, shape)


def _dual_context(document, delta, cfg):
    """E for a dual-vs-c document: ``context``, else ``drinfeld``, else recovered
    from the source E^v."""
    if "context" in document:
        E = tmodule_from_json(document["context"], delta.config)
    elif "drinfeld" in document:
        E = tmodule_from_json({"drinfeld": document["drinfeld"]}, delta.config)
    else:
        return drinfeld_from_dual(delta.source)
    if not hasattr(E, "rank"):
        raise ParseError("the context is not given as a Drinfeld module")
    return E


def load_biderivation(args, cfg):
    """(kind, context, delta) from the command line or the file."""
    kind = args.kind
    document = _read_file(args)
    if document is not None and "source" in document:
        delta = biderivation_from_json(document, cfg.field)
        if kind == "dual-vs-c":
            return kind, _dual_context(document, delta, cfg), delta
        return kind, None, delta
    if kind == "carlitz":
        m, n = args.m, args.n
        if document is not None:
            m, n = document.get("m", m), document.get("n", n)
        if m is None or n is None:
            raise ParseError("the carlitz kind needs --m and --n")
        m, n = int(m), int(n)
        source, target = carlitz_tensor(cfg.field, m), carlitz_tensor(cfg.field, n)
        value = _delta_matrix(args, document, cfg, (n, m))
        return kind, None, Biderivation(source, target, value)
    E = load_drinfeld(args, cfg)
    C = carlitz(cfg.field)
    if kind == "e-vs-c":
        return kind, E, Biderivation(E, C, _delta_matrix(args, document, cfg, (1, 1)))
    source = dual_presentation(E)
    return kind, E, Biderivation(source, C, _delta_matrix(args, document, cfg, (1, source.dim)))


# output -------------------------------------------------------------------------------


def render(cfg, payload, pretty_lines):
    if cfg.output == "json":
        return dumps(payload)
    return "\n".join(pretty_lines)


# commands -----------------------------------------------------------------------------


def cmd_dual(args, cfg):
    E = load_drinfeld(args, cfg)
    pi, edual = dual_tmodule(E)
    payload = {
        "module": tmodule_to_json(E),
        "pi_t": matrix_to_json(pi.phi_t),
        "edual": tmodule_to_json(edual),
    }
    lines = ["Pi(t) =", pretty_matrix(pi.phi_t), "", "E^v(t) =", pretty_matrix(edual.phi_t)]
    return render(cfg, payload, lines), EXIT_OK


def cmd_bidual(args, cfg):
    E = load_drinfeld(args, cfg)
    xi = bidual_tmodule(E)
    payload = {"module": tmodule_to_json(E), "xi_t": matrix_to_json(xi.phi_t)}
    lines = ["Xi(t) =", pretty_matrix(xi.phi_t)]
    return render(cfg, payload, lines), EXIT_OK


def cmd_carlitz_ext(args, cfg):
    pi = carlitz_ext_structure(cfg.field, args.m, args.n)
    payload = {"m": args.m, "n": args.n, "pi_t": matrix_to_json(pi.phi_t)}
    lines = ["Pi(t) =", pretty_matrix(pi.phi_t)]
    return render(cfg, payload, lines), EXIT_OK


def _reduction_output(cfg, reduction):
    if not reduction.check():
        raise VerificationError("certificate check failed: delta - inner(witness) != reduced")
    payload = certificate_to_json(reduction)
    lines = [
        f"reduced: {format_skew_matrix(reduction.reduced.value())}",
        pretty_class(reduction.reduced),
        "witness:",
        pretty_matrix(reduction.witness),
        "check: true",
    ]
    return render(cfg, payload, lines), EXIT_OK


def cmd_reduce(args, cfg):
    kind, context, delta = load_biderivation(args, cfg)
    return _reduction_output(cfg, reduce(kind, delta, context))


def cmd_act(args, cfg):
    kind, context, delta = load_biderivation(args, cfg)
    b = parse_t_poly(args.b, cfg.field)
    reduction = act(kind, delta, b, context)
    payload = {"b": args.b, "class": ext_class_to_json(reduction.reduced)}
    return render(cfg, payload, [pretty_class(reduction.reduced)]), EXIT_OK


def cmd_split(args, cfg):
    _, _, delta = load_biderivation(args, cfg)
    u = find_splitting(delta, cfg.degree_bound)
    payload = {"split": u is not None, "witness": None if u is None else matrix_to_json(u)}
    if u is None:
        lines = ["no splitting witness within the degree bound"]
    else:
        lines = ["split by the witness", pretty_matrix(u)]
    return render(cfg, payload, lines), EXIT_OK


def cmd_verify(args, cfg):
    results = run_suites(args.suite or ["all"], cfg)
    failed = [result for result in results if not result.passed]
    payload = {
        "field": cfg.field.q,
        "seed": cfg.seed,
        "suites": [result.to_json() for result in results],
    }
    lines = []
    for result in results:
        if result.passed:
            lines.append(f"{result.name}: ok ({result.trials} trials)")
        else:
            lines.append(f"{result.name}: FAILED at trial {result.failed_trial}")
            lines.append(f"  {result.failure}")
    return render(cfg, payload, lines), EXIT_VERIFICATION if failed else EXIT_OK


# parser ----------------------------------------------------------------------------------


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=2, help="field size, a prime power")
    common.add_argument("--modulus", help="irreducible modulus in x for m > 1, e.g. x^2+x+1")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--bound", type=int, help="degree bound for the splitting oracle")
    common.add_argument("--output", choices=OUTPUT_FORMATS, default="pretty")
    common.add_argument(
        "--normalize", action="store_true", help="rescale a_r to 1 when it is not"
    )
    common.add_argument("--file", help="JSON t-module or biderivation")
    common.add_argument("-v", "--verbose", action="count", default=0)
    return common


def _add_module_args(parser):
    parser.add_argument("--drinfeld", help='comma-separated a_1..a_r, e.g. "T,1"')


def _add_biderivation_args(parser):
    parser.add_argument("--kind", choices=KINDS, required=True)
    _add_module_args(parser)
    parser.add_argument("--delta", help="delta(t): a skew polynomial or a JSON list")
    parser.add_argument("--m", type=int)
    parser.add_argument("--n", type=int)


def build_parser():
    parser = argparse.ArgumentParser(
        prog=PROG, description="Ext^1 of Drinfeld modules and t-modules, exactly"
    )
    parser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    common = _common_parser()
    commands = parser.add_subparsers(dest="command", required=True)

    dual = commands.add_parser("dual", parents=[common], help="Ext^1(E,C) and E^v")
    _add_module_args(dual)
    dual.set_defaults(func=cmd_dual)

    bidual = commands.add_parser("bidual", parents=[common], help="Ext^1(E^v,C)")
    _add_module_args(bidual)
    bidual.set_defaults(func=cmd_bidual)

    carlitz_ext = commands.add_parser(
        "carlitz-ext", parents=[common], help="Ext^1(C^(x)m, C^(x)n)"
    )
    carlitz_ext.add_argument("--m", type=int, required=True)
    carlitz_ext.add_argument("--n", type=int, required=True)
    carlitz_ext.set_defaults(func=cmd_carlitz_ext)

    reduce_cmd = commands.add_parser("reduce", parents=[common], help="reduced representative")
    _add_biderivation_args(reduce_cmd)
    reduce_cmd.set_defaults(func=cmd_reduce)

    split = commands.add_parser("split", parents=[common], help="search an inner witness")
    _add_biderivation_args(split)
    split.set_defaults(func=cmd_split)

    act_cmd = commands.add_parser("act", parents=[common], help="t-action on a class")
    _add_biderivation_args(act_cmd)
    act_cmd.add_argument("--b", required=True, help="element of F_q[t], e.g. t^2+1")
    act_cmd.set_defaults(func=cmd_act)

    verify = commands.add_parser("verify", parents=[common], help="property suites")
    verify.add_argument(
        "--suite",
        action="append",
        help=f"one of {', '.join(SUITES)} or all; repeatable",
    )
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    set_console_level(args.verbose)
    try:
        cfg = CliConfig.from_args(args)
        logger.info("%s with q = %d", args.command, cfg.field.q)
        with degree_guard(cfg.abort_theta_degree):
            text, code = args.func(args, cfg)
    except DrinfeldExtError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
