"""
Seeded property suites behind ``drinfeld-ext verify``.

Every trial draws from its own ``numpy.random.Generator`` seeded by
(seed, suite, trial), so a failure is reproduced by its trial number alone.
Random K elements are fractions of theta-polynomials of degree <= 2 with
nonzero denominators; Drinfeld module ranks are drawn from 2..5 (2..3 for the
suites that run reductions).
"""
import dataclasses
from dataclasses import dataclass
from typing import Optional

import galois
import numpy as np

from .base_field import format_k_element, parse_k_element
from .biderivation import (
    Biderivation,
    delta_eval,
    inner,
    is_der0,
    is_strictly_inner,
    split_check,
    t_action_left,
    t_action_right,
)
from .exceptions import ConfigError, DrinfeldExtError
from .ext_engine import (
    KINDS,
    act,
    bidual_tmodule,
    biduality_check,
    carlitz_ext_structure,
    class_biderivation,
    dual_morphism,
    dual_presentation,
    dual_tmodule,
    ext_sequence_check,
    find_splitting,
    lie_inner_solve,
    lie_inner_value,
    reduce,
)
from .ext_logger import get_logger
from .skew_poly import SkewMatrix, SkewPoly, format_skew_matrix, format_skew_poly
from .tmodule import (
    DrinfeldModule,
    TModuleMorphism,
    carlitz,
    carlitz_tensor,
    is_morphism,
    phi_eval,
)

logger = get_logger(__name__)

CARLITZ_PAIRS = ((1, 2), (1, 3), (2, 3))


def make_rng(seed, *keys):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *keys])))


# generators -------------------------------------------------------------------------


def random_fq(rng, config, nonzero=False):
    low = 1 if nonzero else 0
    return config.fq(int(rng.integers(low, config.q)))


def random_theta_poly(rng, config, max_degree=2, nonzero=False):
    degree = int(rng.integers(0, max_degree + 1))
    coeffs = [int(c) for c in rng.integers(0, config.q, size=degree + 1)]
    if nonzero and not any(coeffs):
        coeffs[0] = 1
    return config.poly(coeffs)


def random_k(rng, config, max_degree=2, nonzero=False):
    num = random_theta_poly(rng, config, max_degree, nonzero=nonzero)
    den = random_theta_poly(rng, config, max_degree, nonzero=True)
    return config.element(num, den)


def random_skew(rng, config, max_degree=3, nonzero=False):
    degree = int(rng.integers(0, max_degree + 1))
    coeffs = [random_k(rng, config) for _ in range(degree + 1)]
    if nonzero:
        coeffs[-1] = random_k(rng, config, nonzero=True)
    return SkewPoly(config, coeffs)


def random_skew_matrix(rng, config, rows, cols, max_degree=3):
    return SkewMatrix(
        config, [[random_skew(rng, config, max_degree) for _ in range(cols)] for _ in range(rows)]
    )


def random_drinfeld(rng, config, min_rank=2, max_rank=5, monic_top=False):
    rank = int(rng.integers(min_rank, max_rank + 1))
    coeffs = [random_k(rng, config) for _ in range(rank - 1)]
    coeffs.append(config.one() if monic_top else random_k(rng, config, nonzero=True))
    return DrinfeldModule(coeffs)


def random_t_poly(rng, config, max_degree=3):
    degree = int(rng.integers(0, max_degree + 1))
    coeffs = [int(c) for c in rng.integers(0, config.q, size=degree + 1)]
    return galois.Poly(config.field(coeffs), field=config.field)


def random_biderivation(rng, config, kind, max_rank=3, max_degree=None):
    """(context, biderivation) for one of the three reduction kinds.

    ``max_degree`` caps the tau-degree of delta(t); by default it is large
    enough for the reducers to have work to do.
    """
    if kind == "e-vs-c":
        E = random_drinfeld(rng, config, max_rank=max_rank)
        degree = E.rank + 2 if max_degree is None else max_degree
        value = random_skew_matrix(rng, config, 1, 1, degree)
        return E, Biderivation(E, carlitz(config), value)
    if kind == "dual-vs-c":
        E = random_drinfeld(rng, config, max_rank=max_rank, monic_top=True)
        source = dual_presentation(E)
        degree = 3 if max_degree is None else max_degree
        value = random_skew_matrix(rng, config, 1, E.rank - 1, degree)
        return E, Biderivation(source, carlitz(config), value)
    m, n = CARLITZ_PAIRS[int(rng.integers(len(CARLITZ_PAIRS)))]
    value = random_skew_matrix(rng, config, n, m, 2 if max_degree is None else max_degree)
    return None, Biderivation(carlitz_tensor(config, m), carlitz_tensor(config, n), value)


def small_biderivation(rng, config):
    """A rank-2 or Carlitz biderivation with delta(t) of tau-degree <= 2.

    Evaluating it at polynomials of t-degree <= 2 keeps theta-degrees well
    below the default abort threshold for q <= 4.
    """
    kind = KINDS[int(rng.integers(len(KINDS)))]
    return random_biderivation(rng, config, kind, max_rank=2, max_degree=2)[1]


def _class_combination(cls, other=None, scalar=None):
    coords = cls.coords
    if other is not None:
        coords = tuple(x + y for x, y in zip(coords, other.coords))
    if scalar is not None:
        coords = tuple(scalar * x for x in coords)
    return dataclasses.replace(cls, coords=coords)


# suites -------------------------------------------------------------------------------


def suite_field(rng, config, bound):
    x, y, z = (random_k(rng, config) for _ in range(3))
    if (x + y) + z != x + (y + z) or (x * y) * z != x * (y * z):
        return f"associativity fails for {x}, {y}, {z}"
    if x * (y + z) != x * y + x * z:
        return f"distributivity fails for {x}, {y}, {z}"
    if x and x * x.inverse() != config.one():
        return f"inverse fails for {x}"
    if (x + y).frobenius(1) != x.frobenius(1) + y.frobenius(1):
        return f"frobenius is not additive on {x}, {y}"
    if (x * y).frobenius(1) != x.frobenius(1) * y.frobenius(1):
        return f"frobenius is not multiplicative on {x}, {y}"
    c = config.constant(random_fq(rng, config))
    if c.frobenius(1) != c:
        return f"frobenius moves the constant {c}"
    if parse_k_element(format_k_element(x), config) != x:
        return f"parse(print(x)) != x for {x}"
    return None


def suite_skew(rng, config, bound):
    a, b, c = (random_skew(rng, config, 2, nonzero=True) for _ in range(3))
    if (a * b) * c != a * (b * c):
        return f"associativity fails for {a}, {b}, {c}"
    if a * (b + c) != a * b + a * c or (a + b) * c != a * c + b * c:
        return f"distributivity fails for {a}, {b}, {c}"
    if (a * b).degree != a.degree + b.degree:
        return f"degree is not additive for {a}, {b}"
    k = int(rng.integers(0, 4))
    x = random_k(rng, config)
    if SkewPoly.tau(config, k) * SkewPoly.constant(x) != SkewPoly.monomial(x.frobenius(k), k):
        return f"tau^{k} * {x} does not commute to its twist"
    return None


def suite_phi(rng, config, bound):
    E = random_drinfeld(rng, config, max_rank=3)
    a, b = random_t_poly(rng, config), random_t_poly(rng, config)
    if phi_eval(E, a * b) != phi_eval(E, a) * phi_eval(E, b):
        return f"Phi is not multiplicative on {a}, {b} for {E}"
    if phi_eval(E, a + b) != phi_eval(E, a) + phi_eval(E, b):
        return f"Phi is not additive on {a}, {b} for {E}"
    if not is_morphism(phi_eval(E, a), E, E):
        return f"Phi({a}) is not an endomorphism of {E}"
    return None


def suite_cocycle(rng, config, bound):
    delta = small_biderivation(rng, config)
    a, b = random_t_poly(rng, config, 1), random_t_poly(rng, config, 1)
    lhs = delta_eval(delta, a * b)
    rhs = phi_eval(delta.target, a) * delta_eval(delta, b) + delta_eval(delta, a) * phi_eval(
        delta.source, b
    )
    if lhs != rhs:
        return f"cocycle law fails for delta(t) = {delta.value} at a = {a}, b = {b}"
    return None


def suite_inner(rng, config, bound):
    delta = small_biderivation(rng, config)
    u = random_skew_matrix(rng, config, *delta.value.shape, 2)
    derivation = inner(u, delta.source, delta.target)
    a, b = random_t_poly(rng, config, 1), random_t_poly(rng, config, 1)
    lhs = delta_eval(derivation, a * b)
    rhs = phi_eval(derivation.target, a) * delta_eval(derivation, b) + delta_eval(
        derivation, a
    ) * phi_eval(derivation.source, b)
    if lhs != rhs:
        return f"inner({format_skew_matrix(u)}) breaks the cocycle law"
    if not split_check(derivation, u):
        return f"split_check(inner(u), u) fails for u = {format_skew_matrix(u)}"
    if is_strictly_inner(u) and not is_der0(derivation):
        return f"strictly inner u = {format_skew_matrix(u)} leaves Der_0"
    return None


def suite_taction(rng, config, bound):
    delta = small_biderivation(rng, config)
    b = random_t_poly(rng, config, 2)
    difference = t_action_right(delta, b) - t_action_left(b, delta)
    if difference != inner(delta_eval(delta, b), delta.source, delta.target):
        return f"right - left != inner(delta(b)) for b = {b}, delta(t) = {delta.value}"
    return None


def suite_soundness(rng, config, bound):
    kind = KINDS[int(rng.integers(len(KINDS)))]
    context, delta = random_biderivation(rng, config, kind)
    if not reduce(kind, delta, context).check():
        return f"{kind}: certificate fails for delta(t) = {delta.value}"
    return None


def suite_idempotence(rng, config, bound):
    kind = KINDS[int(rng.integers(len(KINDS)))]
    context, delta = random_biderivation(rng, config, kind)
    reduced = reduce(kind, delta, context).reduced
    again = reduce(kind, class_biderivation(reduced), context).reduced
    if again != reduced:
        return f"{kind}: reduction is not idempotent on delta(t) = {delta.value}"
    return None


def suite_linearity(rng, config, bound):
    kind = KINDS[int(rng.integers(len(KINDS)))]
    context, delta = random_biderivation(rng, config, kind)
    other = Biderivation(
        delta.source, delta.target, random_skew_matrix(rng, config, *delta.value.shape, 3)
    )
    c = config.constant(random_fq(rng, config))
    first = reduce(kind, delta, context).reduced
    second = reduce(kind, other, context).reduced
    if reduce(kind, delta + other, context).reduced != _class_combination(first, second):
        return f"{kind}: reduction is not additive"
    if reduce(kind, delta.scale(c), context).reduced != _class_combination(first, scalar=c):
        return f"{kind}: reduction does not commute with the scalar {c}"
    return None


def suite_class_action(rng, config, bound):
    kind = KINDS[int(rng.integers(len(KINDS)))]
    context, delta = random_biderivation(rng, config, kind)
    act(kind, delta, random_t_poly(rng, config, 2), context)
    return None


def suite_canonical(rng, config, bound):
    E = random_drinfeld(rng, config, max_rank=3)
    r = E.rank
    first = SkewPoly(config, [random_k(rng, config) for _ in range(r)])
    second = SkewPoly(config, [random_k(rng, config) for _ in range(r)])
    if first == second:
        return None
    difference = Biderivation(E, carlitz(config), SkewMatrix.from_poly(first - second))
    u = find_splitting(difference, r + 3 if bound is None else bound)
    if u is not None:
        return (
            f"distinct reduced classes {format_skew_poly(first)} and "
            f"{format_skew_poly(second)} differ by inner({format_skew_matrix(u)})"
        )
    return None


def suite_dual(rng, config, bound):
    E = random_drinfeld(rng, config)
    dual_tmodule(E)
    if not ext_sequence_check(E):
        return f"exact sequence shape fails for {E}"
    return None


def suite_bidual(rng, config, bound):
    E = random_drinfeld(rng, config, max_rank=4, monic_top=True)
    bidual_tmodule(E)
    if not biduality_check(E):
        return f"biduality fails for {E}"
    return None


def suite_carlitz(rng, config, bound):
    m, n = CARLITZ_PAIRS[int(rng.integers(len(CARLITZ_PAIRS)))]
    carlitz_ext_structure(config, m, n)
    return None


def suite_lie(rng, config, bound):
    E = random_drinfeld(rng, config, max_rank=3)
    C = carlitz(config)
    coeffs = [config.zero()] + [random_k(rng, config) for _ in range(int(rng.integers(1, 6)))]
    v = SkewMatrix.from_poly(SkewPoly(config, coeffs))
    u = lie_inner_solve(E, C, v)
    if u is None or lie_inner_value(u, E, C) != v:
        return f"Lie-level solve fails for v = {format_skew_matrix(v)}"
    c = random_k(rng, config, nonzero=True)
    obstructed = SkewMatrix.from_poly(SkewPoly(config, [c] + coeffs[1:]))
    if lie_inner_solve(E, C, obstructed) is not None:
        return f"grade-0 value {c} was solved at the Lie level"
    return None


def suite_morphism(rng, config, bound):
    E = random_drinfeld(rng, config, max_rank=3)
    r = E.rank
    identity = TModuleMorphism(E, E, SkewMatrix.identity(config, 1))
    if dual_morphism(identity) != SkewMatrix.identity(config, r):
        return f"identity does not dualize to I_r for {E}"
    c = config.constant(random_fq(rng, config, nonzero=True))
    scalar = TModuleMorphism(E, E, SkewMatrix.identity(config, 1).scale(c))
    scalar_dual = dual_morphism(scalar)
    if scalar_dual != SkewMatrix.identity(config, r).scale(c):
        return f"the scalar {c} does not dualize to c*I_r"
    t_endo = TModuleMorphism(E, E, E.phi_t)
    t_dual = dual_morphism(t_endo)
    pi, _ = dual_tmodule(E)
    if t_dual != pi.phi_t:
        return f"the dual of Phi(t) differs from Pi(t) for {E}"
    if dual_morphism(scalar.compose(t_endo)) != t_dual * scalar_dual:
        return "dualizing reverses composition fails"
    if any(not t_dual[0, j].is_zero() for j in range(1, r)):
        return "the dual of Phi(t) does not preserve Der_0"
    lam = random_k(rng, config, 1, nonzero=True)
    F = DrinfeldModule([E.a(i) * lam / lam.frobenius(i) for i in range(1, r + 1)])
    gamma = TModuleMorphism(E, F, SkewMatrix.from_poly(SkewPoly.constant(lam)))
    gamma_dual = dual_morphism(gamma)
    pi_f, _ = dual_tmodule(F)
    if gamma_dual * pi_f.phi_t != pi.phi_t * gamma_dual:
        return f"the dual of lambda = {lam} does not intertwine Pi(t)"
    if dual_morphism(TModuleMorphism(F, F, F.phi_t).compose(gamma)) != gamma_dual * pi_f.phi_t:
        return f"dualizing Phi_F(t) after lambda = {lam} does not reverse composition"
    if any(not gamma_dual[0, j].is_zero() for j in range(1, r)):
        return f"the dual of lambda = {lam} does not preserve Der_0"
    return None


SUITES = {
    "field": suite_field,
    "skew": suite_skew,
    "phi": suite_phi,
    "cocycle": suite_cocycle,
    "inner": suite_inner,
    "taction": suite_taction,
    "soundness": suite_soundness,
    "idempotence": suite_idempotence,
    "linearity": suite_linearity,
    "class-action": suite_class_action,
    "canonical": suite_canonical,
    "dual": suite_dual,
    "bidual": suite_bidual,
    "carlitz": suite_carlitz,
    "lie": suite_lie,
    "morphism": suite_morphism,
}


@dataclass
class SuiteResult:
    name: str
    trials: int
    failed_trial: Optional[int] = None
    failure: Optional[str] = None

    @property
    def passed(self):
        return self.failure is None

    def to_json(self):
        return dataclasses.asdict(self)


def expand_suites(names):
    selected = []
    for name in names:
        for part in name.split(","):
            part = part.strip()
            if part == "all":
                selected.extend(SUITES)
            elif part in SUITES:
                selected.append(part)
            else:
                raise ConfigError(
                    f"unknown suite {part!r}, expected one of {sorted(SUITES)} or all"
                )
    return list(dict.fromkeys(selected))


def run_suite(name, config, seed, trials, bound=None):
    suite = SUITES[name]
    index = list(SUITES).index(name)
    for trial in range(trials):
        rng = make_rng(seed, index, trial)
        try:
            failure = suite(rng, config, bound)
        except DrinfeldExtError as exc:
            failure = f"{type(exc).__name__}: {exc}"
        if failure is not None:
            logger.warning("suite %s failed at trial %d: %s", name, trial, failure)
            return SuiteResult(name, trial + 1, trial, failure)
        logger.debug("suite %s trial %d passed", name, trial)
    logger.info("suite %s passed %d trials", name, trials)
    return SuiteResult(name, trials)


def run_suites(names, cli_config):
    return [
        run_suite(
            name, cli_config.field, cli_config.seed, cli_config.trials, cli_config.degree_bound
        )
        for name in expand_suites(names)
    ]
