"""
Exact arithmetic in F_q (q = p^m), the polynomial ring F_q[T] and the rational
function field K = F_q(T).

F_q and F_q[T] are ``galois`` field arrays and polynomials. ``KElement`` is a
fraction kept in canonical form after every operation: coprime numerator and
denominator, denominator monic.
"""
import contextvars
from contextlib import contextmanager

import galois
import numpy as np

from .exceptions import DegreeGuardError, FieldError, ParseError
from .parsing import ExpressionParser

DEFAULT_ABORT_DEGREE = 10000
ABORT_DEGREE_ENV = "DRINFELD_EXT_ABORT_DEG"

# moduli for the generator g of F_q over F_p, written in x
BUILTIN_MODULI = {
    4: "x^2+x+1",
    8: "x^3+x+1",
    9: "x^2+1",
}

_abort_degree = contextvars.ContextVar("abort_degree", default=None)


def abort_degree():
    """Current theta-degree threshold, None outside ``degree_guard``."""
    return _abort_degree.get()


@contextmanager
def degree_guard(limit):
    token = _abort_degree.set(limit)
    try:
        yield limit
    finally:
        _abort_degree.reset(token)


def split_prime_power(q):
    """Return (p, m) with q = p^m, or raise FieldError."""
    if q < 2:
        raise FieldError(f"q = {q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise FieldError(f"q = {q} is not a prime power")
    return p, m


def _poly_is_zero(poly):
    return poly.degree == 0 and int(poly.coeffs[0]) == 0


class FqConfig:
    """The finite field F_q together with the polynomial ring F_q[T].

    Parameters
    ----------
    p : int
        Characteristic, must be prime.
    m : int
        Extension degree, q = p^m.
    modulus : str or galois.Poly, optional
        Irreducible polynomial of degree m over F_p defining the generator
        ``g``. Required for m > 1 unless q is in ``BUILTIN_MODULI``.
    """

    __slots__ = ("p", "m", "q", "modulus", "field", "_zero_poly", "_one_poly")

    def __init__(self, p, m=1, modulus=None):
        if not galois.is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError(f"extension degree must be >= 1, got {m}")
        self.p = p
        self.m = m
        self.q = p**m
        prime_field = galois.GF(p)
        if m == 1:
            if modulus is not None:
                raise FieldError("a modulus is only meaningful for m > 1")
            self.modulus = None
            self.field = prime_field
        else:
            if modulus is None:
                if self.q not in BUILTIN_MODULI:
                    raise FieldError(
                        f"q = {self.q} needs an irreducible modulus of degree {m} "
                        f"over F_{p} (built in: q in {sorted(BUILTIN_MODULI)})"
                    )
                modulus = BUILTIN_MODULI[self.q]
            if isinstance(modulus, str):
                modulus = parse_modulus(modulus, p)
            if modulus.degree != m:
                raise FieldError(f"modulus must have degree {m}, got {modulus.degree}")
            if not modulus.is_irreducible():
                raise FieldError(f"modulus {modulus} is not irreducible over F_{p}")
            if int(modulus.coeffs[0]) != 1:
                raise FieldError("modulus must be monic")
            self.modulus = modulus
            self.field = galois.GF(self.q, irreducible_poly=modulus)
        self._zero_poly = galois.Poly([0], field=self.field)
        self._one_poly = galois.Poly([1], field=self.field)

    @classmethod
    def from_q(cls, q, modulus=None):
        p, m = split_prime_power(q)
        return cls(p, m, modulus)

    def __eq__(self, other):
        if not isinstance(other, FqConfig):
            return NotImplemented
        return (self.p, self.m, self.modulus_key()) == (other.p, other.m, other.modulus_key())

    def __hash__(self):
        return hash((self.p, self.m, self.modulus_key()))

    def __repr__(self):
        if self.modulus is None:
            return f"FqConfig(p={self.p}, m={self.m})"
        return f"FqConfig(p={self.p}, m={self.m}, modulus={self.modulus_str()!r})"

    def modulus_key(self):
        if self.modulus is None:
            return None
        return tuple(int(c) for c in self.modulus.coeffs)

    def modulus_str(self):
        if self.modulus is None:
            return None
        return format_fp_poly(self.modulus, "x")

    # F_q elements ---------------------------------------------------------

    def fq(self, value):
        """F_q element from an int in [0, q) (base-p digits of the residue)."""
        if isinstance(value, (int, np.integer)):
            if not 0 <= int(value) < self.q:
                raise FieldError(f"{value} is not the integer form of an element of F_{self.q}")
            return self.field(int(value))
        return self.field(value)

    def generator(self):
        """The class g of x modulo the modulus (x itself when m = 1 is not defined)."""
        if self.m == 1:
            raise FieldError("the generator g exists only for m > 1")
        return self.field(self.p)

    def fq_elements(self):
        return [self.field(i) for i in range(self.q)]

    # F_q[T] -----------------------------------------------------------------

    def poly(self, coeffs_desc):
        return galois.Poly(self.field(list(coeffs_desc)), field=self.field)

    def theta_poly(self):
        return galois.Poly([1, 0], field=self.field)

    # K ----------------------------------------------------------------------

    def zero(self):
        return KElement._raw(self, self._zero_poly, self._one_poly)

    def one(self):
        return KElement._raw(self, self._one_poly, self._one_poly)

    def theta(self):
        return KElement._raw(self, self.theta_poly(), self._one_poly)

    def constant(self, value):
        """Embed an F_q element (or its integer form) into K."""
        c = value if isinstance(value, galois.FieldArray) else self.fq(value)
        return KElement._raw(self, galois.Poly([c], field=self.field), self._one_poly)

    def element(self, num, den=None):
        if den is None:
            den = self._one_poly
        return normalize(num, den, self)


class KElement:
    """Element of K = F_q(T) in canonical form. Immutable."""

    __slots__ = ("config", "num", "den", "_key")

    def __init__(self, config, num, den=None):
        canonical = normalize(num, config._one_poly if den is None else den, config)
        self.config = config
        self.num = canonical.num
        self.den = canonical.den
        self._key = canonical._key

    @classmethod
    def _raw(cls, config, num, den):
        # caller guarantees canonical form
        limit = abort_degree()
        if limit is not None and max(num.degree, den.degree) > limit:
            raise DegreeGuardError(max(num.degree, den.degree), limit)
        self = object.__new__(cls)
        self.config = config
        self.num = num
        self.den = den
        self._key = None
        return self

    # comparison -------------------------------------------------------------

    def key(self):
        if self._key is None:
            self._key = (
                tuple(int(c) for c in self.num.coeffs),
                tuple(int(c) for c in self.den.coeffs),
            )
        return self._key

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_zero(self):
        return _poly_is_zero(self.num)

    def is_one(self):
        return self.num.degree == 0 and self.den.degree == 0 and int(self.num.coeffs[0]) == 1

    def __bool__(self):
        return not self.is_zero()

    def is_constant(self):
        """True iff the element lies in the image of F_q."""
        return self.num.degree == 0 and self.den.degree == 0

    @property
    def theta_degree(self):
        return max(self.num.degree, self.den.degree)

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, KElement):
            if other.config is not self.config and other.config != self.config:
                raise FieldError("elements of different fields")
            return other
        if isinstance(other, (int, np.integer)):
            return self.config.constant(int(other) % self.config.p)
        if isinstance(other, galois.FieldArray) and other.ndim == 0:
            return self.config.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return normalize(self.num + other.num, self.den, self.config)
        return normalize(
            self.num * other.den + other.num * self.den, self.den * other.den, self.config
        )

    __radd__ = __add__

    def __neg__(self):
        return KElement._raw(self.config, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.config.zero()
        if self.den.degree == 0 and other.den.degree == 0:
            return KElement._raw(self.config, self.num * other.num, self.config._one_poly)
        return normalize(self.num * other.num, self.den * other.den, self.config)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise FieldError("division by zero in K")
        return normalize(self.den, self.num, self.config)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, (int, np.integer)):
            return NotImplemented
        exponent = int(exponent)
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0:
            return self.config.one()
        return KElement._raw(self.config, self.num**exponent, self.den**exponent)

    # Frobenius ----------------------------------------------------------------

    def frobenius(self, k=1):
        """x^(q^k). The q-power map fixes F_q, so it only stretches exponents."""
        if k < 0:
            raise FieldError("frobenius exponent must be non-negative")
        if k == 0 or self.is_constant():
            return self
        power = self.config.q**k
        return KElement._raw(
            self.config,
            _stretch(self.num, power, self.config),
            _stretch(self.den, power, self.config),
        )

    def frobenius_root(self, k=1):
        """The y with y^(q^k) = x, or None when x is not a q^k-th power in K."""
        if k == 0 or self.is_constant():
            return self
        power = self.config.q**k
        num = _shrink(self.num, power, self.config)
        den = _shrink(self.den, power, self.config)
        if num is None or den is None:
            return None
        return KElement._raw(self.config, num, den)

    def nth_root(self, n):
        """An n-th root in K for n prime to p, or None.

        Uses the square-free decomposition of numerator and denominator, so
        only gcd computations are involved.
        """
        if n < 1 or n % self.config.p == 0:
            raise FieldError(f"root index {n} must be positive and prime to p")
        if self.is_zero():
            return self
        lead = self.num.coeffs[0]
        mu = None
        for c in self.config.fq_elements()[1:]:
            if c**n == lead:
                mu = c
                break
        if mu is None:
            return None
        num = _poly_nth_root(self.num * galois.Poly([lead**-1], field=self.config.field), n)
        den = _poly_nth_root(self.den, n)
        if num is None or den is None:
            return None
        return normalize(num * galois.Poly([mu], field=self.config.field), den, self.config)

    # printing -------------------------------------------------------------------

    def __str__(self):
        return format_k_element(self)

    def __repr__(self):
        return f"KElement({format_k_element(self)!r})"


def _stretch(poly, power, config):
    if poly.degree == 0:
        return poly
    degrees = np.asarray(poly.nonzero_degrees, dtype=np.int64) * power
    return galois.Poly.Degrees(degrees, poly.nonzero_coeffs, field=config.field)


def _shrink(poly, power, config):
    if poly.degree == 0:
        return poly
    degrees = np.asarray(poly.nonzero_degrees, dtype=np.int64)
    if np.any(degrees % power):
        return None
    return galois.Poly.Degrees(degrees // power, poly.nonzero_coeffs, field=config.field)


def _poly_nth_root(poly, n):
    # poly is monic
    if poly.degree == 0:
        return poly
    if poly.degree % n:
        return None
    factors, multiplicities = poly.square_free_factors()
    root = galois.Poly([1], field=poly.field)
    for factor, multiplicity in zip(factors, multiplicities):
        if multiplicity % n:
            return None
        root = root * factor ** (multiplicity // n)
    return root


def normalize(num, den, config):
    """Canonical KElement for num/den: coprime, monic denominator.

    Raises FieldError("division by zero in K") when den is zero.
    """
    if _poly_is_zero(den):
        raise FieldError("division by zero in K")
    if _poly_is_zero(num):
        return KElement._raw(config, config._zero_poly, config._one_poly)
    if den.degree > 0:
        common = galois.gcd(num, den)
        if common.degree > 0:
            num = num // common
            den = den // common
    lead = den.coeffs[0]
    if int(lead) != 1:
        scale = galois.Poly([lead**-1], field=config.field)
        num = num * scale
        den = den * scale
    return KElement._raw(config, num, den)


def frobenius(x, k):
    """x^(q^k) for a KElement x."""
    return x.frobenius(k)


# printing ---------------------------------------------------------------------


def format_fq(c, config, generator="g"):
    """Integer for m = 1, polynomial in the generator for m > 1."""
    value = int(c)
    if config.m == 1:
        return str(value)
    digits = []
    while value:
        digits.append(value % config.p)
        value //= config.p
    if not digits:
        return "0"
    return _format_terms(
        [(d, coeff) for d, coeff in enumerate(digits) if coeff], generator, str
    )


def format_fp_poly(poly, variable):
    pairs = [(int(d), int(c)) for d, c in zip(poly.nonzero_degrees, poly.nonzero_coeffs)]
    if not pairs:
        return "0"
    return _format_terms(sorted(pairs, key=lambda pair: pair[0]), variable, str)


def _format_terms(pairs, variable, coeff_str):
    """pairs of (degree, coefficient), rendered in ascending degree."""
    parts = []
    for degree, coeff in sorted(pairs, key=lambda pair: pair[0]):
        text = coeff_str(coeff)
        if degree == 0:
            parts.append(text)
            continue
        monomial = variable if degree == 1 else f"{variable}^{degree}"
        if text == "1":
            parts.append(monomial)
        elif "+" in text:
            parts.append(f"({text})*{monomial}")
        else:
            parts.append(f"{text}*{monomial}")
    return "+".join(parts)


def format_theta_poly(poly, config, variable="T", generator="g"):
    if _poly_is_zero(poly):
        return "0"
    pairs = list(zip((int(d) for d in poly.nonzero_degrees), poly.nonzero_coeffs))
    return _format_terms(pairs, variable, lambda c: format_fq(c, config, generator))


def format_k_element(x, variable="T", generator="g"):
    num = format_theta_poly(x.num, x.config, variable, generator)
    if x.den.degree == 0:
        return num
    den = format_theta_poly(x.den, x.config, variable, generator)
    return f"({num})/({den})"


# parsing ----------------------------------------------------------------------


def fp_integer(config):
    def integer(value, position):
        if value >= config.p:
            raise ParseError(
                f"coefficient {value} out of range for F_{config.p}", "", position
            )
        return config.constant(value)

    return integer


def _k_divide(a, b, position):
    return a / b


def k_atoms(config):
    atoms = {"T": config.theta()}
    if config.m > 1:
        atoms["g"] = config.constant(config.generator())
    return atoms


def parse_k_element(text, config):
    """Parse an element of K, e.g. ``"(T+2)/(T)"`` or ``"g^2*T+1"``."""
    parser = ExpressionParser(k_atoms(config), fp_integer(config), _k_divide)
    try:
        return parser.parse(text)
    except ParseError as exc:
        raise ParseError(exc.reason, text, exc.position) from None


def parse_modulus(text, p):
    """Parse a polynomial in ``x`` over F_p into a galois.Poly."""
    prime_field = galois.GF(p)
    x = galois.Poly([1, 0], field=prime_field)

    def integer(value, position):
        if value >= p:
            raise ParseError(f"coefficient {value} out of range for F_{p}", text, position)
        return galois.Poly([value], field=prime_field)

    return ExpressionParser({"x": x}, integer).parse(text)


def parse_t_poly(text, config):
    """Parse an element of F_q[t], e.g. ``"t^2+g*t+1"``."""
    field = config.field
    atoms = {"t": galois.Poly([1, 0], field=field)}
    if config.m > 1:
        atoms["g"] = galois.Poly([config.generator()], field=field)

    def integer(value, position):
        if value >= config.p:
            raise ParseError(f"coefficient {value} out of range for F_{config.p}", text, position)
        return galois.Poly([value], field=field)

    return ExpressionParser(atoms, integer).parse(text)


def format_t_poly(poly, config):
    return format_theta_poly(poly, config, variable="t")
