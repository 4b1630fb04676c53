"""
JSON forms and the pretty printer.

t-module::

    {"q": {"p": 2, "m": 1}, "dim": 1, "phi_t": [["T+T*tau+tau^2"]]}
    {"q": {"p": 2, "m": 1}, "drinfeld": ["T", "1"]}

biderivation::

    {"source": <t-module>, "target": <t-module>, "delta_t": [["tau^2"]]}
"""
import json

from .base_field import FqConfig, format_k_element, parse_k_element
from .biderivation import Biderivation
from .exceptions import DimensionError, ParseError
from .ext_engine import ExtClassCtens, ExtClassDualC, ExtClassEC
from .skew_poly import format_skew_poly, parse_skew_matrix
from .tmodule import DrinfeldModule, TModulePresentation, make_drinfeld

THETA = "θ"
TAU = "τ"


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", text, exc.pos) from None


def _require(obj, key, what):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{what} is missing the {key!r} field")
    return obj[key]


# fields -----------------------------------------------------------------------


def field_to_json(config):
    obj = {"p": config.p, "m": config.m}
    if config.modulus is not None:
        obj["modulus"] = config.modulus_str()
    return obj


def field_from_json(obj):
    if isinstance(obj, int):
        return FqConfig.from_q(obj)
    p = _require(obj, "p", "field")
    return FqConfig(int(p), int(obj.get("m", 1)), obj.get("modulus"))


# matrices -----------------------------------------------------------------------


def matrix_to_json(matrix):
    return [[format_skew_poly(e) for e in row] for row in matrix.entries]


def matrix_from_json(rows, config, shape=None):
    """Accepts a list of lists, or a flat list reshaped row-major to ``shape``."""
    if shape is not None and isinstance(rows, list) and rows and not isinstance(rows[0], list):
        n_rows, n_cols = shape
        if len(rows) != n_rows * n_cols:
            raise DimensionError(f"expected {n_rows * n_cols} entries, got {len(rows)}")
        rows = [rows[i * n_cols:(i + 1) * n_cols] for i in range(n_rows)]
    matrix = parse_skew_matrix(rows, config)
    if shape is not None and matrix.shape != tuple(shape):
        raise DimensionError(f"expected a {shape} matrix, got {matrix.shape}")
    return matrix


# t-modules --------------------------------------------------------------------------


def tmodule_to_json(module):
    obj = {
        "q": field_to_json(module.config),
        "dim": module.dim,
        "phi_t": matrix_to_json(module.phi_t),
    }
    if isinstance(module, DrinfeldModule):
        obj["drinfeld"] = [format_k_element(a) for a in module.coefficients]
    return obj


def tmodule_from_json(obj, config=None):
    if not isinstance(obj, dict):
        raise ParseError("a t-module must be a JSON object")
    if "q" in obj:
        config = field_from_json(obj["q"])
    elif config is None:
        raise ParseError("t-module is missing the 'q' field")
    if "drinfeld" in obj:
        coeffs = obj["drinfeld"]
        if isinstance(coeffs, str):
            coeffs = coeffs.split(",")
        return make_drinfeld([parse_k_element(str(a), config) for a in coeffs])
    phi_t = matrix_from_json(_require(obj, "phi_t", "t-module"), config)
    if "dim" in obj and int(obj["dim"]) != phi_t.rows:
        raise DimensionError(f"dim {obj['dim']} does not match Phi(t) of size {phi_t.rows}")
    if phi_t.shape == (1, 1):
        poly = phi_t[0, 0]
        if poly.degree >= 1 and poly.constant_term() == config.theta():
            return make_drinfeld(poly.coeffs[1:])
    return TModulePresentation(phi_t)


# biderivations ----------------------------------------------------------------------


def biderivation_to_json(delta):
    return {
        "source": tmodule_to_json(delta.source),
        "target": tmodule_to_json(delta.target),
        "delta_t": matrix_to_json(delta.value),
    }


def biderivation_from_json(obj, config=None):
    source = tmodule_from_json(_require(obj, "source", "biderivation"), config)
    target = tmodule_from_json(_require(obj, "target", "biderivation"), source.config)
    value = matrix_from_json(
        _require(obj, "delta_t", "biderivation"), source.config, (target.dim, source.dim)
    )
    return Biderivation(source, target, value)


# classes and certificates -----------------------------------------------------------


def ext_class_to_json(cls):
    obj = {
        "kind": cls.kind,
        "coords": [format_k_element(c) for c in cls.coords],
        "value": matrix_to_json(cls.value()),
    }
    if isinstance(cls, ExtClassCtens):
        obj["m"], obj["n"] = cls.m, cls.n
    else:
        obj["context"] = tmodule_to_json(cls.context)
    return obj


def ext_class_from_json(obj, config=None):
    kind = _require(obj, "kind", "class")
    if kind == "carlitz":
        if config is None:
            raise ParseError("a carlitz class needs the field")
        coords = tuple(parse_k_element(str(c), config) for c in obj["coords"])
        return ExtClassCtens(int(obj["m"]), int(obj["n"]), coords)
    context = tmodule_from_json(_require(obj, "context", "class"), config)
    coords = tuple(parse_k_element(str(c), context.config) for c in obj["coords"])
    if kind == "e-vs-c":
        return ExtClassEC(context, coords)
    if kind == "dual-vs-c":
        return ExtClassDualC(context, coords)
    raise ParseError(f"unknown class kind {kind!r}")


def certificate_to_json(reduction):
    """The certificate; its ``input`` can be read back by ``biderivation_from_json``.

    For ``dual-vs-c`` the input also carries E under ``context``.
    """
    certificate = reduction.certificate()
    given = biderivation_to_json(certificate["input"])
    if reduction.kind == "dual-vs-c":
        given["context"] = tmodule_to_json(reduction.reduced.context)
    return {
        "kind": reduction.kind,
        "input": given,
        "reduced": ext_class_to_json(certificate["reduced"]),
        "witness": matrix_to_json(certificate["witness"]),
        "check": certificate["check"],
    }


# pretty printing --------------------------------------------------------------------


def pretty_k(x):
    return format_k_element(x, variable=THETA)


def pretty_skew(poly):
    return format_skew_poly(poly, coeff_str=pretty_k, tau=TAU)


def pretty_matrix(matrix):
    """Rows in brackets, columns aligned."""
    cells = [[pretty_skew(e) for e in row] for row in matrix.entries]
    widths = [max(len(row[j]) for row in cells) for j in range(matrix.cols)]
    lines = []
    for row in cells:
        padded = "  ".join(cell.ljust(width) for cell, width in zip(row, widths))
        lines.append(f"[ {padded} ]")
    return "\n".join(lines)


def pretty_class(cls):
    coords = ", ".join(pretty_k(c) for c in cls.coords)
    return f"{cls.kind} class ({coords})\n{pretty_matrix(cls.value())}"
