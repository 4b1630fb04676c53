"""
Biderivations Der(Phi, Psi) between t-modules E = (G_a^d, Phi) and
F = (G_a^e, Psi), stored by their value at t.
"""
from .exceptions import DimensionError, NotATModuleError
from .skew_poly import SkewMatrix
from .tmodule import TModulePresentation, phi_eval


def inner_value(u, phi_t, psi_t):
    """u*Phi(t) - Psi(t)*u. Works for symbolic coefficients in ``u`` too."""
    return u * phi_t - psi_t * u


class Biderivation:
    """delta in Der(Phi, Psi), determined by delta(t) in Mat_{e x d}(K{tau})."""

    def __init__(self, source, target, value_at_t):
        if value_at_t.shape != (target.dim, source.dim):
            raise DimensionError(
                f"a biderivation E -> F needs shape {(target.dim, source.dim)}, "
                f"got {value_at_t.shape}"
            )
        self.source = source
        self.target = target
        self.value = value_at_t

    @property
    def value_at_t(self):
        return self.value

    @property
    def config(self):
        return self.value.config

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, SkewMatrix.zero(source.config, target.dim, source.dim))

    def _check_pair(self, other):
        if self.source != other.source or self.target != other.target:
            raise DimensionError("biderivations of a mismatched module pair")

    def __eq__(self, other):
        if not isinstance(other, Biderivation):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.value == other.value
        )

    def __hash__(self):
        return hash(self.value)

    def __add__(self, other):
        if not isinstance(other, Biderivation):
            return NotImplemented
        return baer_sum(self, other)

    def __neg__(self):
        return Biderivation(self.source, self.target, -self.value)

    def __sub__(self, other):
        if not isinstance(other, Biderivation):
            return NotImplemented
        return baer_sum(self, -other)

    def scale(self, c):
        """c*delta for c in F_q (or K)."""
        return Biderivation(self.source, self.target, self.value.scale(c))

    def __call__(self, a):
        return delta_eval(self, a)

    def __repr__(self):
        return f"Biderivation({self.value})"


def delta_eval(delta, a):
    """delta(a) for a in F_q[t] from delta(t) and the rule
    delta(ab) = Psi(a) delta(b) + delta(a) Phi(b).

    Runs delta(t^(k+1)) = Psi(t) delta(t^k) + delta(t) Phi(t)^k upward and
    combines F_q-linearly; delta vanishes on constants.
    """
    config = delta.config
    phi_t = delta.source.phi_t
    psi_t = delta.target.phi_t
    total = SkewMatrix.zero(config, delta.target.dim, delta.source.dim)
    current = total
    phi_power = SkewMatrix.identity(config, delta.source.dim)
    for k, c in enumerate(reversed(a.coeffs)):
        if k > 0:
            current = psi_t * current + delta.value * phi_power
            phi_power = phi_power * phi_t
        if int(c):
            total = total + current.scale(config.constant(c))
    return total


def inner(u, source, target):
    if u.shape != (target.dim, source.dim):
        raise DimensionError(
            f"an inner witness E -> F needs shape {(target.dim, source.dim)}, got {u.shape}"
        )
    return Biderivation(source, target, inner_value(u, source.phi_t, target.phi_t))


def baer_sum(d1, d2):
    d1._check_pair(d2)
    return Biderivation(d1.source, d1.target, d1.value + d2.value)


def t_action_right(delta, b):
    """(delta * b)(t) = delta(t) Phi(b)."""
    return Biderivation(delta.source, delta.target, delta.value * phi_eval(delta.source, b))


def t_action_left(b, delta):
    """(b * delta)(t) = Psi(b) delta(t)."""
    return Biderivation(delta.source, delta.target, phi_eval(delta.target, b) * delta.value)


def is_der0(delta):
    return delta.value.constant_term().is_zero()


def is_strictly_inner(u):
    return u.constant_term().is_zero()


def extension_block(delta):
    """Upsilon(t) = [[Phi(t), 0], [delta(t), Psi(t)]]."""
    config = delta.config
    d, e = delta.source.dim, delta.target.dim
    return SkewMatrix.blocks(
        [
            [delta.source.phi_t, SkewMatrix.zero(config, d, e)],
            [delta.value, delta.target.phi_t],
        ]
    )


def extension_matrix(delta):
    try:
        return TModulePresentation(extension_block(delta))
    except NotATModuleError:
        raise NotATModuleError("extension is not a t-module presentation") from None


def split_check(delta, u):
    """True iff Theta^-1 Upsilon(t) Theta = diag(Phi(t), Psi(t)) for
    Theta = [[I_d, 0], [u, I_e]]."""
    if u.shape != delta.value.shape:
        raise DimensionError(f"witness shape {u.shape} does not match {delta.value.shape}")
    config = delta.config
    d, e = delta.source.dim, delta.target.dim
    upper = [SkewMatrix.identity(config, d), SkewMatrix.zero(config, d, e)]
    theta = SkewMatrix.blocks([upper, [u, SkewMatrix.identity(config, e)]])
    theta_inv = SkewMatrix.blocks([upper, [-u, SkewMatrix.identity(config, e)]])
    conjugated = theta_inv * extension_block(delta) * theta
    split = SkewMatrix.blocks(
        [
            [delta.source.phi_t, SkewMatrix.zero(config, d, e)],
            [SkewMatrix.zero(config, e, d), delta.target.phi_t],
        ]
    )
    return conjugated == split
