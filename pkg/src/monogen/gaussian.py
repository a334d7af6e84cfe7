"""Exact Gaussian rationals ``p + q i`` with ``p, q`` in Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Complex, Rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GaussianRational:
    """An exact complex number with rational real and imaginary parts.

    Mixing with ``int``/``Fraction`` stays exact; mixing with ``float`` or
    ``complex`` degrades to a Python ``complex``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + Fraction(im)
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def from_quad(cls, quad) -> "GaussianRational":
        """Build from ``[re_num, re_den, im_num, im_den]``."""
        if len(quad) != 4:
            raise ValueError(f"expected four integers, got {quad!r}")
        rn, rd, inum, iden = (int(v) for v in quad)
        if rd == 0 or iden == 0:
            raise ZeroDivisionError("zero denominator in Gaussian rational")
        return cls._make(Fraction(rn, rd), Fraction(inum, iden))

    def to_quad(self) -> list[int]:
        return [self.re.numerator, self.re.denominator,
                self.im.numerator, self.im.denominator]

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(Fraction(other), _ZERO)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Complex):
                return complex(self) + other
            return NotImplemented
        return GaussianRational._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Complex):
                return complex(self) - other
            return NotImplemented
        return GaussianRational._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Complex):
                return other - complex(self)
            return NotImplemented
        return GaussianRational._make(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Complex):
                return complex(self) * other
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational._make(self.re * o.re, _ZERO)
        return GaussianRational._make(self.re * o.re - self.im * o.im,
                                      self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Complex):
                return complex(self) / other
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Complex):
                return other / complex(self)
            return NotImplemented
        return o * self.reciprocal()

    def reciprocal(self) -> "GaussianRational":
        d = self.re * self.re + self.im * self.im
        if not d:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational._make(self.re / d, -self.im / d)

    def __pow__(self, k):
        if not isinstance(k, int):
            return complex(self) ** k
        if k < 0:
            return self.reciprocal() ** (-k)
        result = GaussianRational._make(_ONE, _ZERO)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def __abs__(self) -> float:
        return abs(complex(self))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- display ----------------------------------------------------------

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


def _fmt_real(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if float(x).is_integer() and abs(x) < 1e15:
        return str(int(x))
    return format(float(x), ".12g")


def format_scalar(c) -> str:
    """Render an exact or floating complex scalar as ``2``, ``-i``, ``(1+2i)``..."""
    if isinstance(c, GaussianRational):
        re, im = c.re, c.im
    else:
        c = complex(c)
        re, im = c.real, c.imag
        # display precision; also drops signed zeros
        re = float(format(re, ".12g")) + 0.0
        im = float(format(im, ".12g")) + 0.0
    if not im:
        return _fmt_real(re)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = _fmt_real(im) + "i"
    if not re:
        return ims
    sign = "" if ims.startswith("-") else "+"
    s = f"{_fmt_real(re)}{sign}{ims}"
    return f"({s})"


def is_negative_monomial(c) -> bool:
    """True for ``-2`` or ``-3i``: one nonzero part and it is negative."""
    re, im = real_part(c), imag_part(c)
    return (not im and re < 0) or (not re and im < 0)


def as_gaussian(value) -> GaussianRational:
    """Convert ints, Fractions and JSON-style quads to ``GaussianRational``."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Rational)):
        return GaussianRational._make(Fraction(value), _ZERO)
    if isinstance(value, (list, tuple)) and len(value) == 4:
        return GaussianRational.from_quad(value)
    raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")


def is_exact(value) -> bool:
    return isinstance(value, (GaussianRational, int, Fraction))


def real_part(value):
    """Real part, kept exact for exact scalars."""
    if isinstance(value, GaussianRational):
        return value.re
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return complex(value).real


def imag_part(value):
    if isinstance(value, GaussianRational):
        return value.im
    if isinstance(value, (int, Fraction)):
        return _ZERO
    return complex(value).imag


I = GaussianRational._make(_ZERO, _ONE)
ONE = GaussianRational._make(_ONE, _ZERO)
ZERO = GaussianRational._make(_ZERO, _ZERO)
