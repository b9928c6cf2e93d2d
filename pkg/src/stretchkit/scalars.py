"""Scalar kinds: exact Gaussian rationals ("gq") and complex doubles ("cf64").

Every matrix, vector and tensor in this package carries exactly one scalar
kind.  The two kinds never mix inside a computation; crossing them raises
:class:`~stretchkit.errors.VariantError` instead of silently degrading exact
values to floating point.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import VariantError

GQ = "gq"
CF64 = "cf64"
KINDS = (GQ, CF64)

# Default float comparison thresholds: plenty of double-precision headroom
# for products up to a few hundred rows.
REL_TOL = 1e-9
ABS_TOL = 1e-12

_EXACT_TYPES = (int, Fraction)
_F0 = Fraction(0)


class GaussianRational:
    """Complex number with exact :class:`fractions.Fraction` components.

    Instances are immutable by convention.  Arithmetic accepts ints,
    Fractions and other GaussianRationals; floats and complex operands are
    rejected so approximate values cannot leak into an exact computation.
    Components are always kept in lowest terms with positive denominator
    (guaranteed by ``Fraction``).
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if not isinstance(re, _EXACT_TYPES) or not isinstance(im, _EXACT_TYPES):
            raise VariantError(
                "exact scalar components must be int or Fraction, got "
                f"{type(re).__name__}/{type(im).__name__}"
            )
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        v = object.__new__(cls)
        v.re = re
        v.im = im
        return v

    def _coerced(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, _EXACT_TYPES):
            return GaussianRational._raw(Fraction(other), _F0)
        return None

    def __add__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational._raw(self.re * o.re, _F0)
        return GaussianRational._raw(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if not o.im:
            return GaussianRational._raw(self.re / o.re, self.im / o.re)
        d = o.re * o.re + o.im * o.im
        return GaussianRational._raw(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        """|z|^2 as an exact Fraction."""
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        """Lossy cast, for display and demos only."""
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"gq({self.re!s}, {self.im!s})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


def gq(re=0, im=0) -> GaussianRational:
    """Convenience constructor; accepts ints, Fractions and strings like "3/2"."""
    if isinstance(re, str):
        re = Fraction(re)
    if isinstance(im, str):
        im = Fraction(im)
    return GaussianRational(re, im)


def kind_of(value) -> str:
    if isinstance(value, GaussianRational):
        return GQ
    if isinstance(value, complex):
        return CF64
    raise VariantError(f"value {value!r} carries no scalar kind")


def coerce(value, kind: str):
    """Coerce ``value`` into the given kind, refusing cross-kind conversions."""
    if kind == GQ:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, _EXACT_TYPES):
            return GaussianRational(value)
        raise VariantError(f"cannot place {type(value).__name__} into exact ('gq') data")
    if kind == CF64:
        if isinstance(value, GaussianRational):
            raise VariantError("cannot place exact scalar into float ('cf64') data")
        if isinstance(value, (complex, float, int)):
            return complex(value)
        raise VariantError(f"cannot place {type(value).__name__} into 'cf64' data")
    raise VariantError(f"unknown scalar kind {kind!r}")


def zero(kind: str):
    return GaussianRational._raw(_F0, _F0) if kind == GQ else 0j


def one(kind: str):
    return GaussianRational._raw(Fraction(1), _F0) if kind == GQ else complex(1.0)


def close(x: complex, y: complex, rel_tol: float = REL_TOL, abs_tol: float = ABS_TOL) -> bool:
    """Float comparison with relative tolerance and an absolute floor."""
    return abs(x - y) <= max(abs_tol, rel_tol * max(abs(x), abs(y)))
