"""
F_q-linear forms in one unknown b in K: b -> sum_k c_k * b^(q^k).

A form is stored as the skew polynomial sum_k c_k tau^k. Forms behave like K
coefficients under the operations the reducers use, so reducing ``b * e_i``
with symbolic b yields each output coordinate as a form, i.e. as an entry of a
matrix over K{tau}.
"""
from .base_field import KElement
from .skew_poly import SkewPoly


class Form:
    __slots__ = ("poly",)

    def __init__(self, poly):
        self.poly = poly

    @classmethod
    def zero(cls, config):
        return cls(SkewPoly(config))

    @classmethod
    def variable(cls, config):
        """The form b itself."""
        return cls(SkewPoly.one(config))

    @property
    def config(self):
        return self.poly.config

    def is_zero(self):
        return self.poly.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Form):
            return self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return Form(self.poly + other.poly)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return Form(self.poly - other.poly)

    def __neg__(self):
        return Form(-self.poly)

    def __mul__(self, other):
        if isinstance(other, KElement):
            return Form(self.poly.scale(other))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, KElement):
            return Form(self.poly.scale(other.inverse()))
        return NotImplemented

    def frobenius(self, k=1):
        return Form(self.poly.shift(k))

    def __call__(self, b):
        return self.poly(b)

    def __repr__(self):
        return f"Form({self.poly})"
