"""
t-modules E = (G_a^d, Phi) presented by the single matrix Phi(t).
"""
from fractions import Fraction

from .exceptions import DimensionError, NotAMorphismError, NotATModuleError
from .linalg import k_identity, k_is_zero, k_power, k_scale, k_sub
from .skew_poly import SkewMatrix, SkewPoly

UNKNOWN = "unknown"


class TModulePresentation:
    """A t-module of dimension d given by Phi(t) in Mat_d(K{tau}).

    The tangent action ``lie()`` must be theta*I + N with N nilpotent;
    presentations violating it are rejected at construction.

    Parameters
    ----------
    phi_t : SkewMatrix
        Square d x d matrix, the value of Phi at t.
    family : tuple, optional
        Provenance tag, e.g. ``("carlitz_tensor", n)``; used by ``weight``.
    """

    def __init__(self, phi_t, family=None):
        if phi_t.rows != phi_t.cols:
            raise DimensionError(f"Phi(t) must be square, got {phi_t.shape}")
        self.phi_t = phi_t
        self.family = family
        self._check_nilpotent()

    def _check_nilpotent(self):
        nilpotent = self.nilpotent_part()
        if not k_is_zero(k_power(nilpotent, self.dim, self.config)):
            raise NotATModuleError(
                "not a t-module: the tangent action is not theta*I + nilpotent"
            )

    @property
    def config(self):
        return self.phi_t.config

    @property
    def dim(self):
        return self.phi_t.rows

    def lie(self):
        """dPhi(t) = theta*I + N, as a K matrix."""
        return self.phi_t.to_k_rows()

    def nilpotent_part(self):
        return k_sub(self.lie(), k_scale(self.config.theta(), k_identity(self.config, self.dim)))

    def phi_eval(self, a):
        return phi_eval(self, a)

    def __eq__(self, other):
        if not isinstance(other, TModulePresentation):
            return NotImplemented
        return self.config == other.config and self.phi_t == other.phi_t

    def __hash__(self):
        return hash(self.phi_t)

    def __repr__(self):
        return f"{type(self).__name__}({self.phi_t})"


class DrinfeldModule(TModulePresentation):
    """Phi(t) = theta + a_1 tau + ... + a_r tau^r with a_r != 0."""

    def __init__(self, coefficients, family=None):
        coefficients = tuple(coefficients)
        if not coefficients or coefficients[-1].is_zero():
            raise NotATModuleError("not a Drinfeld module")
        config = coefficients[0].config
        poly = SkewPoly(config, (config.theta(),) + coefficients)
        self.coefficients = coefficients
        super().__init__(SkewMatrix.from_poly(poly), family)

    @property
    def rank(self):
        return len(self.coefficients)

    def a(self, i):
        """a_0 = theta, a_i for 1 <= i <= r, zero beyond."""
        if i == 0:
            return self.config.theta()
        if 1 <= i <= self.rank:
            return self.coefficients[i - 1]
        return self.config.zero()

    @property
    def phi_poly(self):
        return self.phi_t[0, 0]


class TModuleMorphism:
    """beta: E -> F with beta*Phi_E(t) = Phi_F(t)*beta."""

    def __init__(self, source, target, beta):
        if not is_morphism(beta, source, target):
            raise NotAMorphismError("beta does not intertwine Phi_E(t) and Phi_F(t)")
        self.source = source
        self.target = target
        self.beta = beta

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise NotAMorphismError("morphisms are not composable")
        return TModuleMorphism(other.source, self.target, self.beta * other.beta)


def make_drinfeld(coeffs):
    coeffs = tuple(coeffs)
    if not coeffs:
        raise NotATModuleError("not a Drinfeld module")
    return DrinfeldModule(coeffs)


def carlitz(config):
    return make_drinfeld([config.one()])


def carlitz_tensor(config, n):
    """C^(x)n: theta*I_n + N_n (superdiagonal ones) + E_n*tau (bottom-left tau)."""
    if n < 1:
        raise DimensionError(f"tensor power must be >= 1, got {n}")
    if n == 1:
        return DrinfeldModule([config.one()], family=("carlitz_tensor", 1))
    theta = SkewPoly.constant(config.theta())
    one = SkewPoly.one(config)
    zero = SkewPoly(config)
    entries = [[zero] * n for _ in range(n)]
    for i in range(n):
        entries[i][i] = theta
        if i + 1 < n:
            entries[i][i + 1] = one
    entries[n - 1][0] = SkewPoly.tau(config)
    return TModulePresentation(SkewMatrix(config, entries), family=("carlitz_tensor", n))


def phi_eval(module, a):
    """Phi(a) for a in F_q[t] (a ``galois.Poly``), by Horner's rule."""
    config = module.config
    phi_t = module.phi_t
    result = SkewMatrix.zero(config, module.dim, module.dim)
    for c in a.coeffs:
        result = result * phi_t + SkewMatrix.identity(config, module.dim).scale(config.constant(c))
    return result


def is_morphism(beta, source, target):
    if beta.shape != (target.dim, source.dim):
        raise DimensionError(
            f"a morphism E -> F needs shape {(target.dim, source.dim)}, got {beta.shape}"
        )
    return beta * source.phi_t == target.phi_t * beta


def lie(module):
    return module.lie()


def weight(module):
    """d/r for the families with a known rank, else ``"unknown"``."""
    if module.family is not None and module.family[0] == "carlitz_tensor":
        return Fraction(module.family[1])
    if isinstance(module, DrinfeldModule):
        return Fraction(1, module.rank)
    return UNKNOWN
