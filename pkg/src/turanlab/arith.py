"""Arithmetic-function families and Möbius machinery.

The library works with normalized arithmetic functions g (g(1) = 1), in
particular the two double-sequence families

    sigma_d(n) = sum of d-th powers of the divisors of n,
    psi_d(n)   = n**d            (psi_1 is the identity function),

the Möbius function, and the exact product exponents f with

    n * f(n) = sum over divisors l of n of mu(l) * g(n/l),

so that exp(x * sum g(n) q^n / n) = prod (1 - q^n)^(-x f(n)).

Everything here is exact: integers where possible, fractions.Fraction
otherwise.  Memo dictionaries are only mutated under the GIL (single dict
operations); for concurrent use, warm them up first via values().
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable, Union

Value = Union[int, Fraction]

_SPF_CACHE: list[int] = [0, 1]


def _spf_table(limit: int) -> list[int]:
    """Smallest-prime-factor sieve, grown on demand and cached."""
    global _SPF_CACHE
    if limit < len(_SPF_CACHE):
        return _SPF_CACHE
    size = max(limit + 1, 2 * len(_SPF_CACHE))
    spf = list(range(size))
    for p in range(2, isqrt(size - 1) + 1):
        if spf[p] == p:  # p prime
            for m in range(p * p, size, p):
                if spf[m] == m:
                    spf[m] = p
    _SPF_CACHE = spf
    return spf


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization [(p, e), ...] with p ascending."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    out: list[tuple[int, int]] = []
    if n <= 10 ** 6:
        spf = _spf_table(n)
        while n > 1:
            p = spf[n]
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out
    # trial division beyond the sieve range
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def moebius(n: int) -> int:
    """Möbius function: 0 on non-squarefree n, else (-1)^(number of prime factors)."""
    if n < 1:
        raise ValueError(f"moebius requires n >= 1, got {n}")
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def sigma(d: int, n: int) -> int:
    """Divisor power sum: sum of l**d over divisors l of n."""
    if n < 1 or d < 0:
        raise ValueError(f"sigma requires n >= 1 and d >= 0, got (d={d}, n={n})")
    out = 1
    for p, e in factorize(n):
        if d == 0:
            out *= e + 1
        else:
            pd = p ** d
            out *= (pd ** (e + 1) - 1) // (pd - 1)
    return out


def psi(d: int, n: int) -> int:
    """Power function n**d."""
    if n < 1 or d < 0:
        raise ValueError(f"psi requires n >= 1 and d >= 0, got (d={d}, n={n})")
    return n ** d


class ArithFn:
    """A normalized arithmetic function with memoized exact values.

    kind is one of "sigma", "psi", "id", "table".  sigma/psi carry the
    exponent d; "table" carries an explicit value list for 1..N and rejects
    queries beyond it (there is no continuation rule for table data).
    """

    def __init__(self, kind: str, d: int | None = None,
                 table: list[Value] | None = None, label: str | None = None):
        if kind in ("sigma", "psi"):
            if d is None or d < 0:
                raise ValueError(f"{kind} needs a non-negative integer exponent d")
            self.d = d
        elif kind == "id":
            self.d = 1
        elif kind == "table":
            if not table:
                raise ValueError("table-backed ArithFn needs explicit values for 1..N")
            vals = [v if isinstance(v, int) else Fraction(v) for v in table]
            if vals[0] != 1:
                raise ValueError(f"normalization g(1) = 1 violated: g(1) = {vals[0]}")
            self.table = vals
            self.d = None
        else:
            raise ValueError(f"unknown ArithFn kind {kind!r}")
        self.kind = kind
        if label is None:
            label = {"sigma": f"sigma:{d}", "psi": f"psi:{d}", "id": "id",
                     "table": "table"}[kind]
        self.label = label
        self._memo: dict[int, Value] = {}

    def __call__(self, n: int) -> Value:
        if n < 1:
            raise ValueError(f"arithmetic functions are defined for n >= 1, got {n}")
        v = self._memo.get(n)
        if v is not None:
            return v
        if self.kind == "sigma":
            v = sigma(self.d, n)
        elif self.kind in ("psi", "id"):
            v = n ** self.d
        else:
            if n > len(self.table):
                raise ValueError(
                    f"table-backed function has values for n <= {len(self.table)}, "
                    f"queried at n = {n} (no extrapolation)")
            v = self.table[n - 1]
        self._memo[n] = v
        return v

    def values(self, N: int) -> list[Value]:
        """[g(1), ..., g(N)] computed in bulk (a divisor sieve for sigma)."""
        if self.kind == "sigma":
            vals = [0] * (N + 1)
            for l in range(1, N + 1):
                ld = l ** self.d
                for m in range(l, N + 1, l):
                    vals[m] += ld
            out = vals[1:]
        elif self.kind in ("psi", "id"):
            out = [n ** self.d for n in range(1, N + 1)]
        else:
            if N > len(self.table):
                raise ValueError(
                    f"table-backed function has values for n <= {len(self.table)}, "
                    f"requested N = {N}")
            out = self.table[:N]
        for n, v in enumerate(out, start=1):
            self._memo.setdefault(n, v)
        return out

    def is_integer_valued(self, upto: int | None = None) -> bool:
        if self.kind in ("sigma", "psi", "id"):
            return True
        vals = self.table if upto is None else self.table[:upto]
        return all(isinstance(v, int) or v.denominator == 1 for v in vals)

    def __repr__(self):
        return f"ArithFn({self.label})"


def sigma_fn(d: int) -> ArithFn:
    return ArithFn("sigma", d)


def psi_fn(d: int) -> ArithFn:
    return ArithFn("psi", d)


def identity_fn() -> ArithFn:
    return ArithFn("id")


@dataclass
class DoubleSequence:
    """A d-indexed family of normalized arithmetic functions g_d."""

    family: Callable[[int], ArithFn]
    label: str
    _cache: dict[int, ArithFn] = field(default_factory=dict, repr=False)

    def __call__(self, d: int) -> ArithFn:
        fn = self._cache.get(d)
        if fn is None:
            fn = self.family(d)
            self._cache[d] = fn
        return fn


def sigma_family() -> DoubleSequence:
    return DoubleSequence(sigma_fn, "sigma")


def psi_family() -> DoubleSequence:
    return DoubleSequence(psi_fn, "psi")


@dataclass
class ProductExponents:
    """Exact exponents f(n) of the product form, n*f(n) = sum mu(l) g(n/l)."""

    g_label: str
    f: list[Fraction]  # f[n-1] = f(n), 1 <= n <= N

    def __call__(self, n: int) -> Fraction:
        if not 1 <= n <= len(self.f):
            raise ValueError(f"product exponents computed for n <= {len(self.f)}")
        return self.f[n - 1]


def product_exponents(g: ArithFn, N: int) -> ProductExponents:
    """f(n) = (1/n) * sum over divisors l of n of mu(l) * g(n/l), for n <= N."""
    if N < 1:
        raise ValueError("N >= 1 required")
    g.values(N)
    out = []
    for n in range(1, N + 1):
        acc = Fraction(0)
        for l in divisors(n):
            mu = moebius(l)
            if mu:
                acc += mu * Fraction(g(n // l))
        out.append(acc / n)
    return ProductExponents(g.label, out)


@dataclass
class ClassDReport:
    """Finite-grid certificate for the class-D inequality 0 <= g_d(n) - n^d <= g_1(n)(n-1)^(d-1).

    A passing report certifies the displayed inequality on the grid only; it
    is not a proof for all (d, n).
    """

    label: str
    d_max: int
    n_max: int
    ok: bool
    first_violation: tuple[int, int] | None = None  # (d, n)
    side: str | None = None  # "lower" | "upper"


def check_class_D(seq: DoubleSequence, d_max: int, n_max: int) -> ClassDReport:
    """Check the class-D sandwich for 1 <= d <= d_max, 2 <= n <= n_max, exactly."""
    if d_max < 1 or n_max < 1:
        raise ValueError("d_max and n_max must be >= 1")
    g1 = seq(1)
    g1_vals = g1.values(n_max)
    for d in range(1, d_max + 1):
        gd = seq(d)
        gd_vals = gd.values(n_max)
        for n in range(2, n_max + 1):
            diff = Fraction(gd_vals[n - 1]) - n ** d
            if diff < 0:
                return ClassDReport(seq.label, d_max, n_max, False, (d, n), "lower")
            if diff > Fraction(g1_vals[n - 1]) * (n - 1) ** (d - 1):
                return ClassDReport(seq.label, d_max, n_max, False, (d, n), "upper")
    return ClassDReport(seq.label, d_max, n_max, True)
