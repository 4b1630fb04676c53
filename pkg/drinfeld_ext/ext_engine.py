"""
Canonical representatives of Ext^1 classes and the t-module structures they
carry.

Three situations are computed:

* ``e-vs-c``: Ext^1(E, C) for a Drinfeld module E of rank r >= 2,
  representatives b_0 + b_1 tau + ... + b_{r-1} tau^(r-1);
* ``dual-vs-c``: Ext^1(E^v, C) for the dual E^v of E with a_r = 1,
  representatives of degree vector <= (0, ..., 0, 1);
* ``carlitz``: Ext^1(C^(x)m, C^(x)n) for n > m, representatives constant and
  supported on the first column.

Every reducer subtracts explicit inner biderivations and accumulates the
witness, so each result carries an exact certificate. The reducers also
accept symbolic coefficients (``forms.Form``); reducing ``t * (b e_i)`` with
symbolic b gives column i of the matrix of the t-action directly.
"""
from dataclasses import dataclass

from .biderivation import Biderivation, inner, inner_value, t_action_left, t_action_right
from .exceptions import (
    DimensionError,
    NotAMorphismError,
    NotATModuleError,
    UnsupportedError,
    VerificationError,
)
from .ext_logger import get_logger
from .forms import Form
from .linalg import k_frobenius, k_mul, k_scale, k_sub, k_zero_matrix, solve_linear
from .skew_poly import SkewMatrix, SkewPoly
from .tmodule import (
    DrinfeldModule,
    TModulePresentation,
    carlitz,
    carlitz_tensor,
    make_drinfeld,
)

logger = get_logger(__name__)

KINDS = ("e-vs-c", "dual-vs-c", "carlitz")

RANK_ONE_REASON = (
    "rank >= 2 required; rank-1 reduction needs Artin-Schreier roots "
    "(Ext^1(C,C) is not computed)"
)
N_LEQ_M_REASON = (
    "unsupported: Ext^1(C^(x)m,C^(x)n) for n <= m is not a t-module in general "
    "(its structure involves tau^-1, the adjoint picture)"
)
TOP_COEFFICIENT_REASON = (
    "the dual-vs-C reduction needs a_r = 1; rescale E by an isomorphism "
    "(--normalize) first"
)


# classes ----------------------------------------------------------------------


@dataclass(frozen=True)
class ExtClassEC:
    """b_0 + b_1 tau + ... + b_{r-1} tau^(r-1) in Ext^1(E, C)."""

    context: DrinfeldModule
    coords: tuple

    kind = "e-vs-c"

    def value(self):
        return SkewMatrix.from_poly(SkewPoly(self.context.config, self.coords))

    def source(self):
        return self.context

    def target(self):
        return carlitz(self.context.config)


@dataclass(frozen=True)
class ExtClassDualC:
    """(u_1, ..., u_{r-2}, c + d tau) in Ext^1(E^v, C).

    ``coords`` holds u_1, ..., u_{r-2}, c, d.
    """

    context: DrinfeldModule
    coords: tuple

    kind = "dual-vs-c"

    def value(self):
        config = self.context.config
        entries = [SkewPoly.constant(u) for u in self.coords[:-2]]
        entries.append(SkewPoly(config, self.coords[-2:]))
        return SkewMatrix(config, [entries])

    def source(self):
        return dual_presentation(self.context)

    def target(self):
        return carlitz(self.context.config)


@dataclass(frozen=True)
class ExtClassCtens:
    """Constant first column (coords) of an n x m representative in
    Ext^1(C^(x)m, C^(x)n)."""

    m: int
    n: int
    coords: tuple

    kind = "carlitz"

    @property
    def config(self):
        return self.coords[0].config

    def value(self):
        config = self.config
        zero = SkewPoly(config)
        return SkewMatrix(
            config,
            [[SkewPoly.constant(c)] + [zero] * (self.m - 1) for c in self.coords],
        )

    def source(self):
        return carlitz_tensor(self.config, self.m)

    def target(self):
        return carlitz_tensor(self.config, self.n)


def class_biderivation(cls):
    """The biderivation whose value at t is the reduced representative."""
    return Biderivation(cls.source(), cls.target(), cls.value())


@dataclass(frozen=True)
class Reduction:
    """Result of a reducer: ``delta - inner(witness) == reduced``."""

    delta: Biderivation
    reduced: object
    witness: SkewMatrix

    @property
    def kind(self):
        return self.reduced.kind

    def check(self):
        residual = inner(self.witness, self.delta.source, self.delta.target)
        return self.delta.value - residual.value == self.reduced.value()

    def certificate(self):
        return {
            "input": self.delta,
            "reduced": self.reduced,
            "witness": self.witness,
            "check": self.check(),
        }


def _coords(poly, length, zero):
    return tuple(zero if c is None else c for c in (poly.coeff(i) for i in range(length)))


# Ext^1(E, C) ----------------------------------------------------------------------


def _require_rank(E):
    if not isinstance(E, DrinfeldModule):
        raise DimensionError("a Drinfeld module is required")
    if E.rank < 2:
        raise UnsupportedError(RANK_ONE_REASON)


def bonn_inner(E, c, m):
    """delta^(c tau^m)(t) for E -> C, i.e. c tau^m Phi(t) - (theta + tau) c tau^m."""
    u = SkewPoly.monomial(c, m)
    return u * E.phi_poly - carlitz(E.config).phi_poly * u


def _reduce_ec_value(E, value, zero):
    r = E.rank
    a_r = E.a(r)
    witness = SkewPoly(E.config)
    while value.degree >= r:
        n = value.degree
        m = n - r
        c = value.leading() / a_r.frobenius(m)
        logger.debug("e-vs-c: clearing tau^%d with c*tau^%d", n, m)
        u = SkewPoly.monomial(c, m)
        value = value - bonn_inner(E, c, m)
        witness = witness + u
    return _coords(value, r, zero), witness


def reduce_vs_carlitz(E, delta):
    """Reduced representative of delta in Ext^1(E, C), degree <= r - 1."""
    _require_rank(E)
    if delta.source != E or delta.target != carlitz(E.config):
        raise DimensionError("reduce_vs_carlitz needs a biderivation E -> C")
    coords, witness = _reduce_ec_value(E, delta.value[0, 0], E.config.zero())
    return Reduction(delta, ExtClassEC(E, coords), SkewMatrix.from_poly(witness))


def closed_form_pi(E):
    """Pi(t) of Ext^1(E, C) in closed form.

    theta on the diagonal, tau on the subdiagonal, last column
    -(a_i/a_r) tau in row i, plus a_r^-q tau^2 in row 1 and theta in row r-1.
    """
    _require_rank(E)
    config = E.config
    r = E.rank
    a_r = E.a(r)
    theta = config.theta()
    entries = [[SkewPoly(config)] * r for _ in range(r)]
    for i in range(r):
        entries[i][i] = SkewPoly.constant(theta)
        if i + 1 < r:
            entries[i + 1][i] = SkewPoly.tau(config)
    for i in range(1, r):
        column = [config.zero(), -(E.a(i) / a_r)]
        if i == 1:
            column.append(a_r.frobenius(1).inverse())
        if i == r - 1:
            column[0] = theta
        entries[i][r - 1] = SkewPoly(config, column)
    return SkewMatrix(config, entries)


def dual_presentation(E):
    """E^v = Ext^1_0(E, C): the lower right (r-1) x (r-1) block of Pi(t)."""
    r = E.rank
    return TModulePresentation(closed_form_pi(E).submatrix(1, r, 1, r))


def drinfeld_from_dual(presentation):
    """The Drinfeld module E with a_r = 1 whose E^v is ``presentation``.

    a_i is minus the tau coefficient in row i of the last column.
    """
    config = presentation.config
    last = presentation.dim - 1
    coeffs = [-presentation.phi_t[i, last].coeff_or_zero(1) for i in range(presentation.dim)]
    E = make_drinfeld(coeffs + [config.one()])
    if dual_presentation(E) != presentation:
        raise NotATModuleError("presentation is not the dual of a Drinfeld module with a_r = 1")
    return E


def dual_tmodule(E):
    """(Pi, E^v): Ext^1(E, C) as an r-dimensional t-module and its Der_0 part.

    Column i of Pi(t) is the reduction of t * (b tau^i) for symbolic b.
    """
    _require_rank(E)
    config = E.config
    r = E.rank
    c_t = carlitz(config).phi_poly
    b = Form.variable(config)
    columns = []
    for i in range(r):
        value = c_t * SkewPoly.monomial(b, i)
        coords, _ = _reduce_ec_value(E, value, Form.zero(config))
        columns.append([f.poly for f in coords])
    pi_t = SkewMatrix(config, [[columns[i][j] for i in range(r)] for j in range(r)])
    if pi_t != closed_form_pi(E):
        raise VerificationError("Pi(t) differs from its closed form")
    pi = TModulePresentation(pi_t)
    edual = TModulePresentation(pi_t.submatrix(1, r, 1, r))
    logger.info("Ext^1(E,C) computed for rank %d", r)
    return pi, edual


def ext_sequence_check(E):
    """0 -> E^v -> Ext^1(E, C) -> G_a -> 0 at the level of Pi(t)."""
    pi, edual = dual_tmodule(E)
    config = E.config
    first = [SkewPoly.constant(config.theta()), SkewPoly.tau(config)]
    first += [SkewPoly(config)] * (E.rank - 2)
    return list(pi.phi_t.column(0)) == first and edual == dual_presentation(E)


# Ext^1(E^v, C) ------------------------------------------------------------------


def _require_monic_top(E):
    _require_rank(E)
    if not E.a(E.rank).is_one():
        raise UnsupportedError(TOP_COEFFICIENT_REASON)


def _basic_witness(config, r, s, c, m):
    """The 1 x (r-1) witness c tau^m in coordinate s (1-based)."""
    entries = [SkewPoly(config)] * (r - 1)
    entries[s - 1] = SkewPoly.monomial(c, m)
    return SkewMatrix(config, [entries])


def basic_inner(E, s, c, m):
    """The basic inner biderivation v(s, c, m) in Der(Psi, C)."""
    _require_monic_top(E)
    config = E.config
    source = dual_presentation(E)
    return inner(_basic_witness(config, E.rank, s, c, m), source, carlitz(config))


def _reduce_dual_value(E, value, zero):
    config = E.config
    r = E.rank
    psi_t = dual_presentation(E).phi_t
    c_t = carlitz(config).phi_t
    last = r - 2
    witness = SkewMatrix.zero(config, 1, r - 1)

    def subtract(s, c, m):
        nonlocal value, witness
        u = _basic_witness(config, r, s, c, m)
        value = value - inner_value(u, psi_t, c_t)
        witness = witness + u

    while True:
        for z in range(last):
            while value[0, z].degree >= 1:
                d = value[0, z].degree
                logger.debug("dual-vs-c: lowering coordinate %d from degree %d", z + 1, d)
                subtract(z + 2, value[0, z].leading(), d - 1)
        n = value[0, last].degree
        if n < 2:
            break
        logger.debug("dual-vs-c: lowering the last coordinate from degree %d", n)
        subtract(1, value[0, last].leading(), n - 2)
    coords = [zero if value[0, z].is_zero() else value[0, z].coeffs[0] for z in range(last)]
    coords.extend(_coords(value[0, last], 2, zero))
    return tuple(coords), witness


def reduce_dualC(E, delta):
    """Reduced representative of delta in Ext^1(E^v, C), E with a_r = 1."""
    _require_monic_top(E)
    config = E.config
    if delta.source != dual_presentation(E) or delta.target != carlitz(config):
        raise DimensionError("reduce_dualC needs a biderivation E^v -> C")
    coords, witness = _reduce_dual_value(E, delta.value, config.zero())
    return Reduction(delta, ExtClassDualC(E, coords), witness)


def closed_form_xi(E):
    """Xi(t): theta on the diagonal, last row (alpha_1, ..., alpha_r) with
    alpha_n = sum_f a_{r-f} tau^(r-n-f) and alpha_r = Phi(t)."""
    _require_monic_top(E)
    config = E.config
    r = E.rank
    entries = [[SkewPoly(config)] * r for _ in range(r)]
    for i in range(r - 1):
        entries[i][i] = SkewPoly.constant(config.theta())
    for n in range(1, r):
        alpha = SkewPoly(config)
        for f in range(r - n):
            alpha = alpha + SkewPoly.monomial(E.a(r - f), r - n - f)
        entries[r - 1][n - 1] = alpha
    entries[r - 1][r - 1] = E.phi_poly
    return SkewMatrix(config, entries)


def bidual_tmodule(E):
    """Xi: Ext^1(E^v, C) as an r-dimensional t-module.

    Basis: e_i the unit vector in coordinate i (i <= r-1) and e_r = tau in
    the last coordinate; column i is the reduction of t * (b e_i).
    """
    _require_monic_top(E)
    config = E.config
    r = E.rank
    c_t = carlitz(config).phi_t
    b = Form.variable(config)
    zero_form = Form.zero(config)
    columns = []
    for i in range(r):
        entries = [SkewPoly(config)] * (r - 1)
        if i < r - 1:
            entries[i] = SkewPoly.monomial(b, 0)
        else:
            entries[r - 2] = SkewPoly.monomial(b, 1)
        value = c_t * SkewMatrix(config, [entries])
        coords, _ = _reduce_dual_value(E, value, zero_form)
        columns.append([f.poly for f in coords])
    xi_t = SkewMatrix(config, [[columns[i][j] for i in range(r)] for j in range(r)])
    if xi_t != closed_form_xi(E):
        raise VerificationError("Xi(t) differs from its closed form")
    if xi_t[r - 1, r - 1] != E.phi_poly:
        raise VerificationError("biduality fails: alpha_r differs from Phi(t)")
    logger.info("Ext^1(E^v,C) computed for rank %d", r)
    return TModulePresentation(xi_t)


def biduality_check(E):
    """alpha_r = Phi(t), theta * I on the first r - 1 coordinates, and the
    last row of Xi(t) is the alpha vector."""
    xi_t = bidual_tmodule(E).phi_t
    r = E.rank
    config = E.config
    top = xi_t.submatrix(0, r - 1, 0, r)
    expected_top = SkewMatrix.blocks(
        [
            [
                SkewMatrix.scalar(config, SkewPoly.constant(config.theta()), r - 1),
                SkewMatrix.zero(config, r - 1, 1),
            ]
        ]
    )
    return (
        xi_t[r - 1, r - 1] == E.phi_poly
        and top == expected_top
        and xi_t.row(r - 1) == closed_form_xi(E).row(r - 1)
    )


def normalize_top_coefficient(E):
    """(E', lam) with E' = lam Phi lam^-1 isomorphic to E and a'_r = 1.

    Needs a (q^r - 1)-th root lam of a_r in K; a'_i = a_i lam^(1 - q^i).
    """
    _require_rank(E)
    config = E.config
    r = E.rank
    lam = E.a(r).nth_root(config.q**r - 1)
    if lam is None:
        raise UnsupportedError(
            f"a_r = {E.a(r)} has no (q^{r}-1)-th root in K, so no isomorphism "
            "makes the top coefficient 1"
        )
    coefficients = [E.a(i) * lam / lam.frobenius(i) for i in range(1, r + 1)]
    logger.info("normalized the top coefficient with lambda = %s", lam)
    return DrinfeldModule(coefficients), lam


# Ext^1(C^(x)m, C^(x)n) ----------------------------------------------------------


def _require_carlitz_pair(m, n):
    if m < 1:
        raise DimensionError(f"tensor power must be >= 1, got {m}")
    if n <= m:
        raise UnsupportedError(N_LEQ_M_REASON)


def qin_inner(config, m, n, i, j, k, c):
    """delta^(c Q_ij tau^k)(t) for C^(x)m -> C^(x)n, Q_ij the unit matrix (1-based)."""
    _require_carlitz_pair(m, n)
    u = SkewMatrix.zero(config, n, m).with_entry(i - 1, j - 1, SkewPoly.monomial(c, k))
    return inner_value(u, carlitz_tensor(config, m).phi_t, carlitz_tensor(config, n).phi_t)


def _reduce_carlitz_value(config, m, n, value, zero):
    phi_t = carlitz_tensor(config, m).phi_t
    psi_t = carlitz_tensor(config, n).phi_t
    witness = SkewMatrix.zero(config, n, m)

    def subtract(u):
        nonlocal value, witness
        value = value - inner_value(u, phi_t, psi_t)
        witness = witness + u

    def fold():
        # column j moves into the witness column j - 1, clearing column j
        for j in range(m - 1, 0, -1):
            column = value.column(j)
            if all(e.is_zero() for e in column):
                continue
            u = SkewMatrix.zero(config, n, m)
            for i, e in enumerate(column):
                u = u.with_entry(i, j - 1, e)
            subtract(u)

    fold()
    while True:
        column = value.column(0)
        d = max(e.degree for e in column)
        if d < 1:
            break
        i = next(row for row, e in enumerate(column) if e.degree == d)
        logger.debug("carlitz: clearing tau^%d in row %d", d, i + 1)
        c = column[i].leading()
        subtract(SkewMatrix.zero(config, n, m).with_entry(i, m - 1, SkewPoly.monomial(c, d - 1)))
        fold()
    coords = tuple(zero if e.is_zero() else e.coeffs[0] for e in value.column(0))
    return coords, witness


def reduce_carlitz(m, n, delta):
    """Reduced representative of delta in Ext^1(C^(x)m, C^(x)n), n > m."""
    _require_carlitz_pair(m, n)
    config = delta.config
    if delta.source != carlitz_tensor(config, m) or delta.target != carlitz_tensor(config, n):
        raise DimensionError(f"reduce_carlitz needs a biderivation C^(x){m} -> C^(x){n}")
    coords, witness = _reduce_carlitz_value(config, m, n, delta.value, config.zero())
    return Reduction(delta, ExtClassCtens(m, n, coords), witness)


def closed_form_carlitz_pi(config, m, n):
    """[[C^(x)(n-m)(t), 1 in the bottom left], [0, theta I_m + N_m]]."""
    _require_carlitz_pair(m, n)
    k = n - m
    top_right = SkewMatrix.zero(config, k, m).with_entry(k - 1, 0, SkewPoly.one(config))
    bottom_right = carlitz_tensor(config, m).phi_t.constant_term()
    return SkewMatrix.blocks(
        [
            [carlitz_tensor(config, k).phi_t, top_right],
            [SkewMatrix.zero(config, m, k), bottom_right],
        ]
    )


def carlitz_ext_structure(config, m, n):
    """Pi: Ext^1(C^(x)m, C^(x)n) as an n-dimensional t-module; its top left
    block is C^(x)(n-m)."""
    _require_carlitz_pair(m, n)
    psi_t = carlitz_tensor(config, n).phi_t
    b = Form.variable(config)
    zero_form = Form.zero(config)
    zero = SkewPoly(config)
    columns = []
    for i in range(n):
        entries = [[zero] * m for _ in range(n)]
        entries[i][0] = SkewPoly.monomial(b, 0)
        value = psi_t * SkewMatrix(config, entries)
        coords, _ = _reduce_carlitz_value(config, m, n, value, zero_form)
        columns.append([f.poly for f in coords])
    pi_t = SkewMatrix(config, [[columns[i][j] for i in range(n)] for j in range(n)])
    if pi_t != closed_form_carlitz_pi(config, m, n):
        raise VerificationError("Pi(t) differs from its closed form")
    if pi_t.submatrix(0, n - m, 0, n - m) != carlitz_tensor(config, n - m).phi_t:
        raise VerificationError("Ext^1_0 block differs from C^(x)(n-m)")
    logger.info("Ext^1(C^(x)%d, C^(x)%d) computed", m, n)
    return TModulePresentation(pi_t)


# dispatch -------------------------------------------------------------------------


def reduce(kind, delta, context=None):
    """Run the reducer for ``kind``. ``context`` is the Drinfeld module E for
    the ``dual-vs-c`` kind, whose biderivations start at E^v."""
    if kind == "e-vs-c":
        return reduce_vs_carlitz(delta.source, delta)
    if kind == "dual-vs-c":
        if context is None:
            raise DimensionError("the dual-vs-c reduction needs the module E")
        return reduce_dualC(context, delta)
    if kind == "carlitz":
        return reduce_carlitz(delta.source.dim, delta.target.dim, delta)
    raise DimensionError(f"unknown reduction kind {kind!r}, expected one of {KINDS}")


def act(kind, delta, b, context=None):
    """The class of b * delta, checked against the class of delta * b."""
    left = reduce(kind, t_action_left(b, delta), context)
    right = reduce(kind, t_action_right(delta, b), context)
    if left.reduced != right.reduced:
        raise VerificationError("the two t-actions give different classes")
    return left


# splitting oracle -----------------------------------------------------------------


def default_bound(delta):
    return max(delta.value.degree, delta.source.phi_t.degree, 0) + 3


def _graded_system(delta, bound):
    """Equations of u Phi(t) - Psi(t) u = delta(t), grade by grade.

    Unknowns are (i, j, k), the tau^k coefficient of u[i][j]; an equation
    maps (unknown, twist s) to the coefficient of unknown^(q^s).
    """
    source, target = delta.source, delta.target
    phi_t, psi_t = source.phi_t, target.phi_t
    e, d = target.dim, source.dim
    top = int(max(delta.value.degree, bound + max(phi_t.degree, psi_t.degree), 0))
    equations = {}
    rhs = {}
    for a in range(e):
        for b in range(d):
            for g in range(top + 1):
                equations[(a, b, g)] = {}
                rhs[(a, b, g)] = delta.value[a, b].coeff_or_zero(g)

    def add(key, term, coeff):
        if key not in equations or coeff.is_zero():
            return
        terms = equations[key]
        terms[term] = terms[term] + coeff if term in terms else coeff

    for a in range(e):
        for j in range(d):
            for k in range(bound + 1):
                # u[a][j] tau^k Phi[j][b]
                for b in range(d):
                    for l, phi in enumerate(phi_t[j, b].coeffs):
                        add((a, b, k + l), ((a, j, k), 0), phi.frobenius(k))
    for i in range(e):
        for b in range(d):
            for k in range(bound + 1):
                # -Psi[a][i] u[i][b] tau^k
                for a in range(e):
                    for l, psi in enumerate(psi_t[a, i].coeffs):
                        add((a, b, l + k), ((i, b, k), l), -psi)
    for terms in equations.values():
        for term in [t for t, c in terms.items() if c.is_zero()]:
            del terms[term]
    return equations, rhs


def find_splitting(delta, degree_bound=None):
    """An inner witness u of tau-degree <= degree_bound with inner(u) = delta,
    or None when the graded solve finds none."""
    bound = default_bound(delta) if degree_bound is None else degree_bound
    if bound < 0:
        raise DimensionError("degree bound must be >= 0")
    config = delta.config
    e, d = delta.target.dim, delta.source.dim
    equations, rhs = _graded_system(delta, bound)
    unknowns = sorted((i, j, k) for i in range(e) for j in range(d) for k in range(bound + 1))
    values = {}
    occurs = {x: set() for x in unknowns}
    for key, terms in equations.items():
        for x, _ in terms:
            occurs[x].add(key)

    def assign(x, value):
        values[x] = value
        for key in occurs[x]:
            terms = equations[key]
            for term in [t for t in terms if t[0] == x]:
                coeff = terms.pop(term)
                rhs[key] = rhs[key] - coeff * value.frobenius(term[1])

    order = sorted(equations, key=lambda key: (-key[2], key[0], key[1]))
    while len(values) < len(unknowns):
        progressed = False
        for key in order:
            terms = equations[key]
            if not terms:
                if not rhs[key].is_zero():
                    logger.debug("splitting: grade %d inconsistent", key[2])
                    return None
                continue
            if len(terms) == 1:
                ((x, twist), coeff), = terms.items()
                root = (rhs[key] / coeff).frobenius_root(twist)
                if root is None:
                    logger.debug("splitting: no q^%d-th root at grade %d", twist, key[2])
                    return None
                assign(x, root)
                progressed = True
                break
        if progressed:
            continue
        linear = [
            key for key in order
            if equations[key] and all(t[1] == 0 for t in equations[key])
        ]
        block = sorted({t[0] for key in linear for t in equations[key]})
        if block:
            rows = [[equations[key].get((x, 0), config.zero()) for x in block] for key in linear]
            solution, determined = solve_linear(
                rows, [rhs[key] for key in linear], len(block), config
            )
            if solution is None:
                logger.debug("splitting: twist-free block inconsistent")
                return None
            fixed = [(x, v) for x, v, known in zip(block, solution, determined) if known]
            for x, v in fixed:
                assign(x, v)
            if fixed:
                continue
        x = next(x for x in unknowns if x not in values)
        logger.debug("splitting: pinning u%s to 0", x)
        assign(x, config.zero())
    for key, terms in equations.items():
        if not rhs[key].is_zero():
            return None
    entries = [[SkewPoly(config)] * d for _ in range(e)]
    for i in range(e):
        for j in range(d):
            entries[i][j] = SkewPoly(config, [values[(i, j, k)] for k in range(bound + 1)])
    u = SkewMatrix(config, entries)
    if inner(u, delta.source, delta.target) != delta:
        return None
    return u


# Lie level ------------------------------------------------------------------------


def lie_inner_solve(E, F, v):
    """u with u dPhi - dPsi u = v, tau-grade by tau-grade, or None.

    Grade k >= 1: (alpha + S) X = V_k with alpha = theta^(q^k) - theta and
    S(X) = X M^(q^k) - N X nilpotent, so X = sum_s (-1)^s alpha^-(s+1) S^s(V_k).
    Grade 0 is the linear system S(X) = V_0.
    """
    config = E.config
    d, e = E.dim, F.dim
    if v.shape != (e, d):
        raise DimensionError(f"value shape {v.shape} does not match {(e, d)}")
    M = E.nilpotent_part()
    N = F.nilpotent_part()
    theta = config.theta()
    grades = {}
    degree = v.degree
    for k in range(0, int(degree) + 1 if degree >= 0 else 0):
        V = [[v[i, j].coeff_or_zero(k) for j in range(d)] for i in range(e)]
        if all(x.is_zero() for row in V for x in row):
            continue
        if k == 0:
            X = _solve_grade_zero(M, N, V, config)
            if X is None:
                logger.debug("lie: grade 0 is obstructed")
                return None
        else:
            alpha = theta.frobenius(k) - theta
            Mk = k_frobenius(M, k)
            X = k_zero_matrix(config, e, d)
            term = V
            inv = alpha.inverse()
            factor = inv
            for s in range(d + e):
                X = [[x + y for x, y in zip(rx, ry)] for rx, ry in zip(X, k_scale(factor, term))]
                term = k_sub(k_mul(term, Mk, config), k_mul(N, term, config))
                factor = -(factor * inv)
        grades[k] = X
    entries = [[SkewPoly(config)] * d for _ in range(e)]
    for i in range(e):
        for j in range(d):
            coeffs = [
                grades[k][i][j] if k in grades else config.zero()
                for k in range(max(grades) + 1 if grades else 0)
            ]
            entries[i][j] = SkewPoly(config, coeffs)
    return SkewMatrix(config, entries)


def _solve_grade_zero(M, N, V, config):
    e, d = len(V), len(V[0])
    # column of x[p][q] in S(X) = X M - N X
    rows = []
    rhs = []
    for i in range(e):
        for j in range(d):
            row = [config.zero()] * (e * d)
            for p in range(e):
                for q in range(d):
                    coeff = config.zero()
                    if p == i:
                        coeff = coeff + M[q][j]
                    if q == j:
                        coeff = coeff - N[i][p]
                    row[p * d + q] = coeff
            rows.append(row)
            rhs.append(V[i][j])
    solution, _ = solve_linear(rows, rhs, e * d, config)
    if solution is None:
        return None
    return [[solution[p * d + q] for q in range(d)] for p in range(e)]


def lie_inner_value(u, E, F):
    """u dPhi(t) - dPsi(t) u."""
    config = E.config
    lie_e = SkewMatrix(config, [[SkewPoly.constant(x) for x in row] for row in E.lie()])
    lie_f = SkewMatrix(config, [[SkewPoly.constant(x) for x in row] for row in F.lie()])
    return inner_value(u, lie_e, lie_f)


def ext0_projection(delta):
    """An equivalent biderivation with d delta(t) = 0."""
    constant = delta.value.constant_term()
    if constant.is_zero():
        return delta
    u = lie_inner_solve(delta.source, delta.target, constant)
    if u is None:
        raise UnsupportedError("class has nonzero image in Ext^1(Lie(E),Lie(F))")
    return delta - inner(u, delta.source, delta.target)


# dual morphisms -------------------------------------------------------------------


def dual_morphism(beta):
    """The matrix of beta^v: Ext^1(F, C) -> Ext^1(E, C), delta -> delta o beta.

    Column i is the class of (b tau^i) beta in Ext^1(E, C), each coordinate an
    F_q-linear form in b; the matrix acts on coordinate vectors.
    """
    E, F = beta.source, beta.target
    if not (isinstance(E, DrinfeldModule) and isinstance(F, DrinfeldModule)):
        raise NotAMorphismError("dual morphisms are computed between Drinfeld modules")
    if E.rank != F.rank:
        raise NotAMorphismError(
            "Drinfeld modules of different ranks have no non-zero morphisms"
        )
    _require_rank(E)
    config = E.config
    r = E.rank
    b = Form.variable(config)
    columns = []
    for i in range(r):
        value = SkewPoly.monomial(b, i) * beta.beta[0, 0]
        coords, _ = _reduce_ec_value(E, value, Form.zero(config))
        columns.append([f.poly for f in coords])
    return SkewMatrix(config, [[columns[i][j] for i in range(r)] for j in range(r)])

