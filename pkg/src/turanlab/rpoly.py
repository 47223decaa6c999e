"""Dense univariate polynomials and truncated power series over the rationals.

RationalPoly stores coefficients low-to-high with no trailing zeros (the zero
polynomial is the empty tuple), all entries fractions.Fraction.  These are the
containers for the recurrence polynomials and their Turán differences, and
the series operations double as independent oracles for the generating-series
identity exp(x sum g(n) q^n / n) = prod (1 - q^n)^(-x f(n)).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class RationalPoly:
    """Immutable dense polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "RationalPoly":
        return cls()

    @classmethod
    def one(cls) -> "RationalPoly":
        return cls((1,))

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def coeff(self, k: int) -> Fraction:
        if k < 0:
            raise ValueError("coefficient index must be >= 0")
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPoly(out)

    def __neg__(self) -> "RationalPoly":
        return RationalPoly([-c for c in self.coeffs])

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def __mul__(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return RationalPoly()
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        if bj:
                            out[i + j] += ai * bj
            return RationalPoly(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "RationalPoly":
        c = _as_fraction(c)
        if c == 0:
            return RationalPoly()
        return RationalPoly([c * a for a in self.coeffs])

    def shift(self, k: int) -> "RationalPoly":
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return RationalPoly((Fraction(0),) * k + self.coeffs)

    def __call__(self, x: Scalar) -> Fraction:
        """Exact evaluation by Horner's rule."""
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_neg(self) -> "RationalPoly":
        """p(-x)."""
        return RationalPoly([c if i % 2 == 0 else -c
                             for i, c in enumerate(self.coeffs)])

    def derivative(self) -> "RationalPoly":
        return RationalPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def trailing_zeros(self) -> int:
        """Multiplicity of the root at x = 0 (0 for the zero polynomial)."""
        k = 0
        for c in self.coeffs:
            if c:
                break
            k += 1
        return k if self.coeffs else 0

    def integer_coeffs(self) -> tuple[list[int], int]:
        """(den * self) as an integer coefficient list together with den."""
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        return [int(c * den) for c in self.coeffs], den

    def divmod(self, other: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(r) - len(other.coeffs) + 1)
        db = other.degree
        lb = other.coeffs[-1]
        while len(r) - 1 >= db and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < db:
                break
            f = r[-1] / lb
            k = len(r) - 1 - db
            q[k] = f
            for i, c in enumerate(other.coeffs):
                r[k + i] -= f * c
            r.pop()
        return RationalPoly(q), RationalPoly(r)

    def exact_div(self, other: "RationalPoly") -> "RationalPoly":
        q, r = self.divmod(other)
        if r:
            raise ValueError("division is not exact")
        return q

    def __repr__(self):
        if not self.coeffs:
            return "RationalPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "RationalPoly(" + " + ".join(parts) + ")"


class TruncatedSeries:
    """Power series in q truncated at order N inclusive (len(coeffs) == N+1)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence[Scalar], order: int | None = None):
        cs = [_as_fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = cs[:order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = cs
        self.order = order

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([], order)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], n)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            [a - b for a, b in zip(self.coeffs, other.coeffs)], n)

    def scale(self, c: Scalar) -> "TruncatedSeries":
        c = _as_fraction(c)
        return TruncatedSeries([c * a for a in self.coeffs], self.order)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[:n + 1]):
            if a:
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return TruncatedSeries(out, n)

    def __repr__(self):
        return f"TruncatedSeries({self.coeffs}, order={self.order})"


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """exp of a series with zero constant term, by the derivative recurrence.

    (exp u)' = u' exp u gives e_k = (1/k) * sum_{j=1..k} j u_j e_{k-j}.
    """
    if s.coeffs[0] != 0:
        raise ValueError("series_exp requires zero constant term")
    N = s.order
    e = [Fraction(0)] * (N + 1)
    e[0] = Fraction(1)
    for k in range(1, N + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            uj = s.coeffs[j]
            if uj:
                acc += j * uj * e[k - j]
        e[k] = acc / k
    return TruncatedSeries(e, N)


def series_log_one_minus(n: int, N: int) -> TruncatedSeries:
    """-log(1 - q^n) truncated at order N: sum over k >= 1, kn <= N of q^(kn)/k."""
    if n < 1:
        raise ValueError("n >= 1 required")
    out = [Fraction(0)] * (N + 1)
    k = 1
    while k * n <= N:
        out[k * n] = Fraction(1, k)
        k += 1
    return TruncatedSeries(out, N)
