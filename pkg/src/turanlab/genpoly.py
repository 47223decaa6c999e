"""Polynomial sequences P_n attached to a normalized arithmetic function g.

The sequence is defined by P_0 = 1 and the convolution recurrence

    P_n(x) = (x/n) * sum_{k=1..n} g(k) * P_{n-k}(x),

so that sum P_n(x) q^n = exp(x sum g(n) q^n / n).  For g = sigma_1 the values
P_n(1) are the partition numbers, for g = sigma_2 the plane partition numbers.

Two independent routes are provided besides the recurrence: a brute-force
composition/partition sum (exponential in n, for oracle use) and evaluation
through the truncated exponential series in rpoly.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Union

from .arith import ArithFn
from .rpoly import RationalPoly

Value = Union[int, Fraction]

COMPOSITION_ORACLE_MAX_N = 20


class BudgetExceeded(Exception):
    """Raised when a scan's coarse memory accounting exceeds its budget."""


class PolySequence:
    """The cached family P_0..P_N for a fixed g, built by the recurrence."""

    def __init__(self, g: ArithFn, N: int = 0):
        self.g = g
        self.polys: list[RationalPoly] = [RationalPoly.one()]
        if N:
            self.extend(N)

    @property
    def built_to(self) -> int:
        return len(self.polys) - 1

    def extend(self, N: int) -> "PolySequence":
        gv = self.g.values(N) if N >= 1 else []
        for n in range(self.built_to + 1, N + 1):
            deg = n - 1
            acc = [Fraction(0)] * (deg + 1)
            for k in range(1, n + 1):
                gk = gv[k - 1]
                if not gk:
                    continue
                for i, c in enumerate(self.polys[n - k].coeffs):
                    if c:
                        acc[i] += gk * c
            inv_n = Fraction(1, n)
            self.polys.append(RationalPoly([Fraction(0)] + [c * inv_n for c in acc]))
        return self

    def poly(self, n: int) -> RationalPoly:
        if not 0 <= n <= self.built_to:
            raise ValueError(f"P_{n} not built (built_to = {self.built_to})")
        return self.polys[n]

    def coefficient(self, n: int, k: int) -> Fraction:
        """A_{n,k}: the coefficient of x^k in P_n."""
        if not 0 <= n <= self.built_to:
            raise ValueError(f"P_{n} not built (built_to = {self.built_to})")
        if not 0 <= k <= n:
            raise ValueError(f"coefficient index k = {k} out of range 0..{n}")
        return self.polys[n].coeff(k)

    def __repr__(self):
        return f"PolySequence(g={self.g.label}, built_to={self.built_to})"


def build_sequence(g: ArithFn, N: int) -> PolySequence:
    """Exact P_0..P_N for g via the recurrence."""
    if N < 0:
        raise ValueError("N >= 0 required")
    return PolySequence(g, N)


def value_sequence(g: ArithFn, x: Value, N: int,
                   memory_budget_bytes: int | None = None,
                   values: list[Value] | None = None) -> list[Value]:
    """[P_0(x), ..., P_N(x)] without building polynomials.

    Fast path keeps plain integers as long as every division by n is exact
    (always the case for the sigma family at integer x); otherwise values
    drop into Fraction arithmetic.  `values` resumes from a previously
    computed prefix.  The memory budget is a coarse cap on the total stored
    value size, enforced every step.
    """
    if N < 0:
        raise ValueError("N >= 0 required")
    gv = g.values(N) if N >= 1 else []
    x = x if isinstance(x, int) else Fraction(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        x = x.numerator
    P: list[Value] = list(values) if values else [1]
    if P[0] != 1:
        raise ValueError("resume prefix must start with P_0 = 1")
    used = 0
    if memory_budget_bytes is not None:
        for v in P:
            used += _value_bytes(v)
    for n in range(len(P), N + 1):
        acc = 0
        for k in range(1, n + 1):
            gk = gv[k - 1]
            if gk:
                acc += gk * P[n - k]
        acc = x * acc
        if isinstance(acc, int):
            q, r = divmod(acc, n)
            v = q if r == 0 else Fraction(acc, n)
        else:
            v = acc / n
        P.append(v)
        if memory_budget_bytes is not None:
            used += _value_bytes(v)
            if used > memory_budget_bytes:
                raise BudgetExceeded(
                    f"value scan exceeded memory budget at n = {n} "
                    f"({used} > {memory_budget_bytes} bytes)")
    return P


def _value_bytes(v: Value) -> int:
    if isinstance(v, int):
        return v.bit_length() // 8 + 28
    return (v.numerator.bit_length() + v.denominator.bit_length()) // 8 + 56


def _partitions(n: int):
    """Yield the partitions of n as descending tuples of parts."""
    if n == 0:
        yield ()
        return
    stack = [(n, n, ())]
    while stack:
        rem, mx, acc = stack.pop()
        if rem == 0:
            yield acc
            continue
        for part in range(min(rem, mx), 0, -1):
            stack.append((rem - part, part, acc + (part,)))


def composition_oracle(g: ArithFn, n: int, x: Value,
                       max_n: int = COMPOSITION_ORACLE_MAX_N) -> Fraction:
    """P_n(x) by the explicit sum over compositions of n.

    Iterates over partitions with multiplicity weights 1/prod(c_m!) --
    equivalent to the ordered-composition sum with its 1/k! symmetrization,
    exponentially cheaper.  Guarded: the partition count explodes, so n is
    capped (p(20) = 627 terms is still fine, p(50) is not).
    """
    if n < 0:
        raise ValueError("n >= 0 required")
    if n > max_n:
        raise ValueError(
            f"composition_oracle is exponential in n; n = {n} exceeds the cap "
            f"{max_n} (the sum has p(n) terms, use the recurrence instead)")
    x = Fraction(x)
    if n == 0:
        return Fraction(1)
    g.values(n)
    total = Fraction(0)
    for parts in _partitions(n):
        term = Fraction(1)
        for m in parts:
            term *= Fraction(g(m), m)
        mult = 1
        run = 1
        for i in range(1, len(parts)):
            run = run + 1 if parts[i] == parts[i - 1] else 1
            mult *= run if run > 1 else 1
        # mult accumulated run factorials incrementally: product of c_m!
        total += term * x ** len(parts) / mult
    return total


def ordered_composition_oracle(g: ArithFn, n: int, x: Value) -> Fraction:
    """The literal ordered-composition sum with 1/k!; only for tiny n."""
    if n > 10:
        raise ValueError("ordered composition sum only supported for n <= 10")
    x = Fraction(x)
    if n == 0:
        return Fraction(1)
    g.values(n)
    total = Fraction(0)

    def rec(rem: int, term: Fraction, k: int):
        nonlocal total
        if rem == 0:
            total += term * x ** k / factorial(k)
            return
        for m in range(1, rem + 1):
            rec(rem - m, term * Fraction(g(m), m), k + 1)

    rec(n, Fraction(1), 0)
    return total
