"""Turán differences Delta_n = P_n^2 - P_{n-1} P_{n+1} and exception scans.

Signs are always decided in exact rational arithmetic; no floating point is
involved anywhere in exception-set membership.  A value x_0 with
Delta_n(x_0) >= 0 means the sequence is log-concave at n for that argument;
the set of n with Delta_n(1) < 0 is the strictly log-convex exception set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Union

from .arith import ArithFn, psi_fn
from .genpoly import PolySequence, value_sequence
from .rpoly import RationalPoly

Value = Union[int, Fraction]


@dataclass
class TuranPoly:
    """Delta_n as an exact polynomial; degree 2n, x^2 divides it for n >= 2."""

    n: int
    delta: RationalPoly

    def coeff(self, k: int) -> Fraction:
        """D_{n,k}: the coefficient of x^k in Delta_n."""
        return self.delta.coeff(k)


def delta(seq: PolySequence, n: int) -> TuranPoly:
    """Exact Delta_n from a built sequence (needs P_{n+1})."""
    if n < 1:
        raise ValueError("n >= 1 required")
    if n + 1 > seq.built_to:
        raise ValueError(
            f"Delta_{n} needs P_{n + 1}; sequence built to {seq.built_to}")
    pn = seq.poly(n)
    d = pn * pn - seq.poly(n - 1) * seq.poly(n + 1)
    return TuranPoly(n, d)


def delta1_closed_form(g: ArithFn) -> RationalPoly:
    """(x/2)(x - g(2))."""
    g2 = Fraction(g(2))
    return RationalPoly([0, -g2 / 2, Fraction(1, 2)])


def delta2_closed_form(g: ArithFn) -> RationalPoly:
    """(x^2/12)(x^2 + 3 g(2)^2 - 4 g(3))."""
    g2, g3 = Fraction(g(2)), Fraction(g(3))
    return RationalPoly([0, 0, (3 * g2 ** 2 - 4 * g3) / 12, 0, Fraction(1, 12)])


def delta3_closed_form(g: ArithFn) -> RationalPoly:
    """The quoted sextic for Delta_3 in terms of g(2), g(3), g(4)."""
    g2, g3, g4 = Fraction(g(2)), Fraction(g(3)), Fraction(g(4))
    return RationalPoly([
        0,
        0,
        -g4 * g2 / 8 + g3 ** 2 / 9,
        -g2 ** 3 / 16 + g3 * g2 / 6 - g4 / 8,
        g2 ** 2 / 16 - g3 / 18,
        g2 / 48,
        Fraction(1, 144),
    ])


def delta3_formula_check(g: ArithFn) -> bool:
    """Compare the recurrence-built Delta_3 with its closed form, exactly."""
    seq = PolySequence(g, 4)
    return delta(seq, 3).delta == delta3_closed_form(g)


def d2_closed_form(g: ArithFn, n: int) -> Fraction:
    """D_{n,2} = (1/n^2) [g(n)^2 - n^2/(n^2-1) g(n-1) g(n+1)], n >= 2."""
    if n < 2:
        raise ValueError("n >= 2 required")
    gn = Fraction(g(n))
    return (gn ** 2 - Fraction(n * n, n * n - 1) * g(n - 1) * g(n + 1)) / n ** 2


def d3_closed_form(g: ArithFn, n: int) -> Fraction:
    """The three-sum closed form for D_{n,3}, n >= 2."""
    if n < 2:
        raise ValueError("n >= 2 required")
    s1 = sum(Fraction(g(k) * g(n - k), k) for k in range(1, n))
    s2 = sum(Fraction(g(n + 1 - k) * g(k), 2 * (n + 1 - k) * k)
             for k in range(1, n + 1))
    s3 = sum(Fraction(g(n - 1 - k) * g(k), 2 * (n - 1 - k) * k)
             for k in range(1, n - 1))
    return (2 * Fraction(g(n), n * n) * s1
            - Fraction(g(n - 1), n - 1) * s2
            - Fraction(g(n + 1), n + 1) * s3)


def d_coefficients_check(seq: PolySequence, n: int) -> bool:
    """Check D_{n,2} and D_{n,3} against their closed forms, exactly."""
    if n < 2:
        raise ValueError("n >= 2 required")
    t = delta(seq, n)
    return (t.coeff(2) == d2_closed_form(seq.g, n)
            and t.coeff(3) == d3_closed_form(seq.g, n))


def d_leading(n: int) -> Fraction:
    """D_{n,2n} = 1/((n!)^2 (n+1)), independent of g."""
    return Fraction(1, factorial(n) ** 2 * (n + 1))


def sign_of(v: Value) -> int:
    return (v > 0) - (v < 0)


def sign_at(values: list[Value], n: int) -> int:
    """Exact sign of Delta_n(x0) from a value-mode prefix [P_0(x0), ...]."""
    if n + 1 >= len(values):
        raise ValueError(f"sign_at needs values up to P_{n + 1}")
    return sign_of(values[n] * values[n] - values[n - 1] * values[n + 1])


def sign_at_x(g: ArithFn, n: int, x0: Value) -> int:
    """Exact sign of Delta_n(x0), computing the value prefix on the fly."""
    vals = value_sequence(g, x0, n + 1)
    return sign_of(vals[n] * vals[n] - vals[n - 1] * vals[n + 1])


@dataclass
class ExceptionReport:
    """All n in the window with an exact strict-negativity certificate."""

    g_label: str
    x0: Fraction
    N: int
    exceptions: tuple[int, ...]
    signs: dict[int, int] | None = None
    truncated_at: int | None = None  # set when an early-stop cut the scan short

    def to_dict(self) -> dict:
        out = {
            "g": self.g_label,
            "x": str(self.x0),
            "N": self.N,
            "exceptions": list(self.exceptions),
        }
        if self.truncated_at is not None:
            out["truncated_at"] = self.truncated_at
        return out


def exceptions(g: ArithFn, x0: Value, N: int,
               stop_after: int | None = None,
               keep_signs: bool = False,
               values: list[Value] | None = None,
               progress: Callable[[int, list[Value]], None] | None = None,
               memory_budget_bytes: int | None = None) -> ExceptionReport:
    """Scan 1 <= n <= N for Delta_n(x0) < 0 with exact sign certificates.

    Ties Delta_n(x0) = 0 are not exceptions (the definition is strict).
    stop_after ends the scan once that many exceptions are witnessed
    (reported via truncated_at).  `values` resumes a previous scan;
    `progress` is called as progress(n, values) after each new value.
    """
    if N < 1:
        raise ValueError("N >= 1 required")
    x0 = Fraction(x0)
    gv = g.values(N + 1)
    x_int: Value = x0.numerator if x0.denominator == 1 else x0
    P: list[Value] = list(values) if values else [1]
    exc: list[int] = []
    signs: dict[int, int] = {}
    used = sum(_approx_bytes(v) for v in P) if memory_budget_bytes else 0
    # rescan the already-computed prefix for exceptions first
    for n in range(1, min(len(P) - 1, N + 1)):
        s = sign_of(P[n] * P[n] - P[n - 1] * P[n + 1])
        if keep_signs:
            signs[n] = s
        if s < 0:
            exc.append(n)
    truncated = None
    n = len(P)
    while n <= N + 1:
        acc = 0
        for k in range(1, n + 1):
            gk = gv[k - 1]
            if gk:
                acc += gk * P[n - k]
        acc = x_int * acc
        if isinstance(acc, int):
            q, r = divmod(acc, n)
            v: Value = q if r == 0 else Fraction(acc, n)
        else:
            v = acc / n
        P.append(v)
        if memory_budget_bytes:
            used += _approx_bytes(v)
            if used > memory_budget_bytes:
                from .genpoly import BudgetExceeded
                raise BudgetExceeded(
                    f"exception scan exceeded memory budget at n = {n}")
        if progress is not None:
            progress(n, P)
        m = n - 1  # Delta_m is decidable once P_{m+1} exists
        if 1 <= m <= N:
            s = sign_of(P[m] * P[m] - P[m - 1] * P[m + 1])
            if keep_signs:
                signs[m] = s
            if s < 0:
                exc.append(m)
                if stop_after is not None and len(exc) >= stop_after:
                    truncated = m
                    break
        n += 1
    return ExceptionReport(g.label, x0, N, tuple(exc),
                           signs if keep_signs else None, truncated)


def _approx_bytes(v: Value) -> int:
    if isinstance(v, int):
        return v.bit_length() // 8 + 28
    return (v.numerator.bit_length() + v.denominator.bit_length()) // 8 + 56


def table1_matrix(d_max: int = 18, n_max: int = 14) -> dict[int, tuple[int, ...]]:
    """Exception pattern for the power family: d -> exceptional n (at x=1)."""
    out = {}
    for d in range(1, d_max + 1):
        rep = exceptions(psi_fn(d), 1, n_max)
        out[d] = rep.exceptions
    return out


@dataclass
class Table2Row:
    """Log-concave / strictly-log-convex split of a scan window."""

    d: int
    N: int
    exceptions: tuple[int, ...]
    log_concave_interior: tuple[int, ...] = field(init=False)
    log_concave_tail_from: int = field(init=False)

    def __post_init__(self):
        m = max(self.exceptions) if self.exceptions else 0
        self.log_concave_tail_from = m  # log-concave for all scanned n > m
        self.log_concave_interior = tuple(
            n for n in range(1, m) if n not in self.exceptions)


def table2_rows(d_max: int = 9, N: int = 200) -> list[Table2Row]:
    """Properties of the power-family values at x = 1 for d = 1..d_max."""
    rows = []
    for d in range(1, d_max + 1):
        rep = exceptions(psi_fn(d), 1, N)
        rows.append(Table2Row(d, N, rep.exceptions))
    return rows


@dataclass
class Table3Row:
    """Global-nonnegativity certification summary for one d."""

    d: int
    n_min: int
    n_max: int
    all_nonneg: bool
    failures: tuple[int, ...] = ()


def table3_rows(spec: list[tuple[int, int, int]] | None = None) -> list[Table3Row]:
    """Certify Delta_n >= 0 on all of R for the power family.

    spec is a list of (d, n_min, n_max); default is the paper's d aspect:
    d = 1 for n <= 100 and d in {2, 3, 4} for n <= 60.
    """
    from .realroots import is_nonneg_on_reals

    if spec is None:
        spec = [(1, 2, 100), (2, 2, 60), (3, 2, 60), (4, 2, 60)]
    rows = []
    for d, n_min, n_max in spec:
        seq = PolySequence(psi_fn(d), n_max + 1)
        failures = []
        for n in range(n_min, n_max + 1):
            if not is_nonneg_on_reals(delta(seq, n).delta).nonneg:
                failures.append(n)
        rows.append(Table3Row(d, n_min, n_max, not failures, tuple(failures)))
    return rows
