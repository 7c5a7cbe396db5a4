"""Exact coefficients: Gaussian rationals and series truncated at h^(N+1)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import ConfigurationError, InputError, NotInvertible

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

__all__ = [
    "Q",
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "DeformationSeries",
    "series_arith",
    "series_invert",
    "as_scalar",
    "render_rational",
]

_Q0 = Q(0)
_Q1 = Q(1)


def _q(value):
    if isinstance(value, str):
        return Q(Fraction(value))
    if isinstance(value, (int, Rational)) or type(value) is Q:
        return Q(value)
    raise TypeError(f"not an exact rational: {value!r}")


def render_rational(q) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Scalar:
    """A Gaussian rational ``re + im*i`` with exact arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Q else _q(re)
        self.im = im if type(im) is Q else _q(im)

    @classmethod
    def _make(cls, re, im):
        s = object.__new__(cls)
        s.re = re
        s.im = im
        return s

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return Scalar._make(-self.re, -self.im)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        return Scalar._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        return Scalar._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar._make(a * c, _Q0)
        return Scalar._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self):
        return Scalar._make(self.re, -self.im)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        norm = self.re * self.re + self.im * self.im
        return Scalar._make(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def render(self) -> str:
        re, im = self.re, self.im
        if not im:
            return render_rational(re)
        if im == 1:
            imag = "i"
        elif im == -1:
            imag = "-i"
        else:
            imag = f"{render_rational(im)}*i"
        if not re:
            return imag
        if im < 0:
            return f"({render_rational(re)} - {imag.lstrip('-')})"
        return f"({render_rational(re)} + {imag})"

    __str__ = render

    def __repr__(self):
        return f"Scalar({self.render()})"


ZERO = Scalar._make(_Q0, _Q0)
ONE = Scalar._make(_Q1, _Q0)
I = Scalar._make(_Q0, _Q1)


def as_scalar(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, complex):
        raise TypeError("floating complex numbers are not exact")
    if isinstance(value, float):
        raise TypeError("floats are not exact")
    return Scalar(_q(value), _Q0)


class DeformationSeries:
    """Coefficients ``c0..cN`` of ``c0 + c1*h + ... + cN*h^N`` in R_N."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order=None):
        coeffs = [as_scalar(c) for c in coeffs]
        if order is None:
            order = max(len(coeffs) - 1, 0)
        if order < 0:
            raise ConfigurationError("truncation order must be non-negative")
        coeffs = coeffs[: order + 1]
        coeffs += [ZERO] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, value, order):
        return cls([as_scalar(value)], order)

    @classmethod
    def h(cls, order, power=1):
        if power > order:
            return cls([], order)
        return cls([ZERO] * power + [ONE], order)

    @classmethod
    def from_sparse(cls, sparse, order):
        coeffs = [ZERO] * (order + 1)
        for k, c in sparse.items():
            if k <= order:
                coeffs[k] = coeffs[k] + c
        return cls(coeffs, order)

    def sparse(self):
        return {k: c for k, c in enumerate(self.coeffs) if c}

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self):
        return not self

    def _coerce(self, other):
        if isinstance(other, DeformationSeries):
            if other.order != self.order:
                raise ConfigurationError(
                    f"truncation order mismatch: {self.order} vs {other.order}"
                )
            return other
        return DeformationSeries.constant(other, self.order)

    def __eq__(self, other):
        if isinstance(other, DeformationSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        return DeformationSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return DeformationSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        n = self.order
        out = [ZERO] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return DeformationSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.invert() ** (-n)
        out = DeformationSeries.constant(1, self.order)
        for _ in range(n):
            out = out * self
        return out

    def invert(self):
        c0 = self.coeffs[0]
        if not c0:
            raise NotInvertible("series with zero constant term is not invertible", index=0)
        inv0 = c0.inverse()
        out = [inv0]
        # b_k = -inv0 * sum_{j=1..k} a_j b_{k-j}
        for k in range(1, self.order + 1):
            acc = ZERO
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-(inv0 * acc))
        return DeformationSeries(out, self.order)

    def __truediv__(self, other):
        return self * self._coerce(other).invert()

    def truncate(self, order):
        if order > self.order:
            raise ConfigurationError("cannot raise the truncation order of a series")
        return DeformationSeries(self.coeffs[: order + 1], order)

    def render(self) -> str:
        return render_series(self.sparse())

    __str__ = render

    def __repr__(self):
        return f"DeformationSeries({self.render()!r}, order={self.order})"


def _render_hterm(k, c):
    if k == 0:
        return c.render()
    hp = "h" if k == 1 else f"h^{k}"
    if c == ONE:
        return hp
    if c == -ONE:
        return "-" + hp
    return f"{c.render()}*{hp}"


def render_series(sparse) -> str:
    """Render ``{k: c}`` as ``c0 + c1*h + ...`` skipping zero coefficients."""
    parts = [_render_hterm(k, c) for k, c in sorted(sparse.items()) if c]
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def series_arith(a: DeformationSeries, b: DeformationSeries, op: str) -> DeformationSeries:
    if a.order != b.order:
        raise ConfigurationError(f"truncation order mismatch: {a.order} vs {b.order}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "sub":
        return a - b
    raise InputError(f"unknown series operation {op!r}")


def series_invert(a: DeformationSeries) -> DeformationSeries:
    return a.invert()
