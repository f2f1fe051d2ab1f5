"""Exact scalars: Gaussian rationals Q(i) and polynomials in hbar over Q(i)."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """re + i*im with both parts held as reduced fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(x, 0)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            den = other.re * other.re + other.im * other.im
            num = self * other.conjugate()
            return GaussianRational(num.re / den, num.im / den)
        return NotImplemented

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return (GaussianRational(1) / self) ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i" if self.im != 1 else "i"
        sign = "+" if self.im > 0 else "-"
        im = abs(self.im)
        return f"({self.re}{sign}{im if im != 1 else ''}{'*' if im != 1 else ''}i)"


ZERO_G = GaussianRational(0)
ONE_G = GaussianRational(1)
I_G = GaussianRational(0, 1)


class HbarScalar:
    """Polynomial sum_j coeffs[j] * hbar**j with Gaussian-rational coefficients.

    Stored canonically: trailing zero coefficients are stripped, so the zero
    scalar has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list) -> "HbarScalar":
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def const(cls, c) -> "HbarScalar":
        return cls((c,))

    @classmethod
    def hbar(cls, power: int = 1, coeff=1) -> "HbarScalar":
        return cls([0] * power + [coeff])

    @classmethod
    def coerce(cls, x) -> "HbarScalar":
        if isinstance(x, HbarScalar):
            return x
        return cls((x,))

    @property
    def degree(self) -> int:
        """hbar-degree; -1 for the zero scalar."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, j: int) -> GaussianRational:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return ZERO_G

    def __add__(self, other):
        if not isinstance(other, HbarScalar):
            try:
                other = HbarScalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] = out[j] + c
        return HbarScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return HbarScalar._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, HbarScalar):
            other = HbarScalar.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return HbarScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, HbarScalar):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return HbarScalar()
            out = [ZERO_G] * (len(a) + len(b) - 1)
            for j, x in enumerate(a):
                for k, y in enumerate(b):
                    out[j + k] = out[j + k] + x * y
            return HbarScalar._raw(out)
        if isinstance(other, (int, Fraction, GaussianRational)):
            if other == 0:
                return HbarScalar()
            return HbarScalar._raw([c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return HbarScalar._raw([c / other for c in self.coeffs])
        return NotImplemented

    def __pow__(self, k: int):
        out = HbarScalar.const(1)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "HbarScalar":
        return HbarScalar._raw([c * j for j, c in enumerate(self.coeffs)][1:])

    def __call__(self, hbar: complex) -> complex:
        return hbar_eval(self, hbar)

    def __eq__(self, other):
        if isinstance(other, HbarScalar):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == HbarScalar.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"HbarScalar({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append(f"{c}*hbar" if c != 1 else "hbar")
            else:
                parts.append(f"{c}*hbar^{j}" if c != 1 else f"hbar^{j}")
        return " + ".join(parts)


def hbar_eval(s: HbarScalar, hbar: complex) -> complex:
    """Horner evaluation of s at a complex hbar."""
    out = 0j
    for c in reversed(s.coeffs):
        out = out * hbar + complex(c)
    return out


def hbar_over_i(power: int = 1) -> HbarScalar:
    """(hbar/i)**power, i.e. (-i)**power * hbar**power."""
    return HbarScalar.hbar(power, GaussianRational(0, -1) ** power)
