"""
The twisted polynomial ring K{tau}, tau*x = x^q*tau, and matrices over it.

Coefficients are usually ``KElement`` but any object with ``+``, ``-``,
``is_zero()``, ``frobenius(k)`` and scaling by a KElement works (see
``forms.Form``), which lets the reducers run on symbolic inputs.
"""
from .base_field import format_k_element, fp_integer, k_atoms
from .exceptions import DimensionError, FieldError, ParseError
from .parsing import ExpressionParser

NEG_INF = float("-inf")


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


class SkewPoly:
    """c_0 + c_1*tau + ... + c_n*tau^n, trailing zeros stripped."""

    __slots__ = ("config", "coeffs")

    def __init__(self, config, coeffs=()):
        self.config = config
        self.coeffs = _strip(coeffs)

    @classmethod
    def zero(cls, config):
        return cls(config)

    @classmethod
    def one(cls, config):
        return cls(config, (config.one(),))

    @classmethod
    def constant(cls, x):
        return cls(x.config, (x,))

    @classmethod
    def tau(cls, config, k=1):
        return cls.monomial(config.one(), k)

    @classmethod
    def monomial(cls, c, k):
        """c*tau^k. ``c`` fixes the coefficient type."""
        if c.is_zero():
            return cls(c.config)
        return cls(c.config, [_zero_like(c)] * k + [c])

    @property
    def degree(self):
        if not self.coeffs:
            return NEG_INF
        return len(self.coeffs) - 1

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return None

    def coeff_or_zero(self, k):
        c = self.coeff(k)
        return self.config.zero() if c is None else c

    def constant_term(self):
        return self.coeff_or_zero(0)

    def leading(self):
        return self.coeffs[-1] if self.coeffs else None

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    # equality ---------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, SkewPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # ring operations ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return SkewPoly(self.config, _add_sequences(self.coeffs, other.coeffs))

    def __neg__(self):
        return SkewPoly(self.config, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SkewPoly):
            return skew_mul(self, other)
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = SkewPoly.one(self.config)
        for _ in range(exponent):
            result = skew_mul(result, self)
        return result

    def scale(self, x):
        """x * self for x in K (left multiplication)."""
        if x.is_zero():
            return SkewPoly(self.config)
        return SkewPoly(self.config, [x * c for c in self.coeffs])

    def right_scale(self, x):
        """self * x for x in K: c_i tau^i x = c_i x^(q^i) tau^i."""
        if x.is_zero():
            return SkewPoly(self.config)
        return SkewPoly(self.config, [c * x.frobenius(i) for i, c in enumerate(self.coeffs)])

    def shift(self, k):
        """tau^k * self."""
        if not self.coeffs:
            return self
        zero = _zero_like(self.coeffs[0])
        return SkewPoly(self.config, [zero] * k + [c.frobenius(k) for c in self.coeffs])

    def frobenius(self, k=1):
        """Twist every coefficient by x -> x^(q^k)."""
        return SkewPoly(self.config, [c.frobenius(k) for c in self.coeffs])

    def __call__(self, b):
        """Evaluate on b in K: sum of c_k * b^(q^k)."""
        total = self.config.zero()
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                total = total + c * b.frobenius(k)
        return total

    # printing -------------------------------------------------------------------

    def __str__(self):
        return format_skew_poly(self)

    def __repr__(self):
        return f"SkewPoly({format_skew_poly(self)!r})"


def _zero_like(c):
    return c - c


def _add_sequences(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return out


def skew_mul(a, b):
    """Product in K{tau}: (a_i tau^i)(b_j tau^j) = a_i b_j^(q^i) tau^(i+j)."""
    if a.is_zero() or b.is_zero():
        return SkewPoly(a.config)
    out = [None] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b.coeffs):
            if bj.is_zero():
                continue
            term = ai * bj.frobenius(i)
            out[i + j] = term if out[i + j] is None else out[i + j] + term
    zero = _zero_like(a.coeffs[-1] * b.coeffs[-1])
    return SkewPoly(a.config, [zero if c is None else c for c in out])


def degree(a):
    return a.degree


class SkewMatrix:
    """Rectangular matrix over K{tau}. Shapes are checked, never broadcast."""

    __slots__ = ("config", "entries")

    def __init__(self, config, entries):
        rows = tuple(tuple(row) for row in entries)
        if not rows or not rows[0]:
            raise DimensionError("a matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DimensionError("ragged matrix rows")
        self.config = config
        self.entries = rows

    @classmethod
    def zero(cls, config, rows, cols):
        return cls(config, [[SkewPoly(config)] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, config, size):
        return cls.scalar(config, SkewPoly.one(config), size)

    @classmethod
    def scalar(cls, config, entry, size):
        zero = SkewPoly(config)
        return cls(config, [[entry if i == j else zero for j in range(size)] for i in range(size)])

    @classmethod
    def from_poly(cls, poly):
        return cls(poly.config, [[poly]])

    @classmethod
    def blocks(cls, grid):
        """Assemble a block matrix from a grid of SkewMatrix blocks."""
        config = grid[0][0].config
        entries = []
        for block_row in grid:
            height = block_row[0].rows
            if any(block.rows != height for block in block_row):
                raise DimensionError("blocks in a row must have equal heights")
            for r in range(height):
                entries.append([e for block in block_row for e in block.entries[r]])
        return cls(config, entries)

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def submatrix(self, row_start, row_stop, col_start, col_stop):
        return SkewMatrix(
            self.config, [row[col_start:col_stop] for row in self.entries[row_start:row_stop]]
        )

    def with_entry(self, i, j, value):
        entries = [list(row) for row in self.entries]
        entries[i][j] = value
        return SkewMatrix(self.config, entries)

    @property
    def degree(self):
        return max(entry.degree for row in self.entries for entry in row)

    def is_zero(self):
        return all(entry.is_zero() for row in self.entries for entry in row)

    def __eq__(self, other):
        if isinstance(other, SkewMatrix):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, SkewMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return SkewMatrix(
            self.config,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return SkewMatrix(self.config, [[-a for a in row] for row in self.entries])

    def __sub__(self, other):
        if not isinstance(other, SkewMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SkewMatrix):
            return mat_mul(self, other)
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        if self.rows != self.cols:
            raise DimensionError("only square matrices have powers")
        result = SkewMatrix.identity(self.config, self.rows)
        for _ in range(exponent):
            result = mat_mul(result, self)
        return result

    def scale(self, x):
        return SkewMatrix(self.config, [[a.scale(x) for a in row] for row in self.entries])

    def map(self, func):
        return SkewMatrix(self.config, [[func(a) for a in row] for row in self.entries])

    def constant_term(self):
        """The tau^0 part, as a matrix of constant entries."""
        return self.map(lambda a: SkewPoly(self.config, a.coeffs[:1]))

    def to_k_rows(self):
        return [[a.constant_term() for a in row] for row in self.entries]

    def __str__(self):
        return format_skew_matrix(self)

    def __repr__(self):
        return f"SkewMatrix({format_skew_matrix(self)!r})"


def mat_mul(a, b):
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    entries = []
    for i in range(a.rows):
        row = []
        for k in range(b.cols):
            total = SkewPoly(a.config)
            for j in range(a.cols):
                total = total + skew_mul(a.entries[i][j], b.entries[j][k])
            row.append(total)
        entries.append(row)
    return SkewMatrix(a.config, entries)


def constant_term(a):
    return a.constant_term()


def k_matrix(config, rows):
    """SkewMatrix of constants from a grid of KElements."""
    return SkewMatrix(config, [[SkewPoly.constant(x) for x in row] for row in rows])


# printing ---------------------------------------------------------------------


def _wrap(text):
    if any(ch in text for ch in "+/"):
        return f"({text})"
    return text


def format_skew_poly(a, coeff_str=None, tau="tau"):
    """Ascending tau-degree, e.g. ``T+(1+T)*tau+tau^2``."""
    if coeff_str is None:
        coeff_str = format_k_element
    if a.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(a.coeffs):
        if c.is_zero():
            continue
        text = coeff_str(c)
        if k == 0:
            parts.append(text)
            continue
        monomial = tau if k == 1 else f"{tau}^{k}"
        parts.append(monomial if text == "1" else f"{_wrap(text)}*{monomial}")
    return "+".join(parts)


def format_skew_matrix(a, coeff_str=None, tau="tau"):
    return "[" + ", ".join(
        "[" + ", ".join(format_skew_poly(e, coeff_str, tau) for e in row) + "]"
        for row in a.entries
    ) + "]"


# parsing ----------------------------------------------------------------------


def _skew_divide(a, b, position):
    if not (a.is_constant() and b.is_constant()):
        raise ParseError("division is only defined between elements of K", "", position)
    if b.is_zero():
        raise FieldError("division by zero in K")
    return SkewPoly.constant(a.constant_term() / b.constant_term())


def parse_skew_poly(text, config):
    """Parse e.g. ``"T + (T+1)*tau + tau^2"``; products follow tau*x = x^q*tau."""
    atoms = {name: SkewPoly.constant(x) for name, x in k_atoms(config).items()}
    atoms["tau"] = SkewPoly.tau(config)
    k_integer = fp_integer(config)

    def integer(value, position):
        return SkewPoly.constant(k_integer(value, position))

    try:
        return ExpressionParser(atoms, integer, _skew_divide).parse(text)
    except ParseError as exc:
        raise ParseError(exc.reason, text, exc.position) from None


def parse_skew_matrix(rows, config):
    """Parse a list of lists of skew-polynomial strings."""
    if not isinstance(rows, (list, tuple)) or not rows:
        raise ParseError("a matrix must be a non-empty list of rows")
    if not all(isinstance(row, (list, tuple)) for row in rows):
        raise ParseError("a matrix must be a list of lists")
    return SkewMatrix(config, [[parse_skew_poly(str(e), config) for e in row] for row in rows])
