"""Exact formulas and lower bounds for covering array numbers.

Everything here is exact integer arithmetic; square roots are compared by
squaring.  ``CAN(t, n, q)`` is the least size of a strength-t, degree-n,
order-q covering array.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator

from .errors import (
    CertificateFails,
    DegreeTooSmall,
    NotApplicable,
    ParamOutOfRange,
    SizeTooSmall,
    UnknownCAN,
)

__all__ = [
    "BoundResult",
    "CanEntry",
    "KnownCanTable",
    "max_degree_strength2",
    "can2",
    "hilton_milner_bound",
    "structure_window",
    "window_size_for",
    "roux_lower",
    "roux_upper_recursion_3",
    "improved_lower_3",
    "improved_lower_t",
    "forced_column_profile",
    "replay_odd_certificate",
    "replay_even_certificate",
    "known_can_table",
    "binom_exceeds_5l",
    "binom_exceeds_4l2",
    "window_root_gap",
    "best_lower_bound",
    "all_bounds",
]


@dataclass(frozen=True)
class BoundResult:
    value: int
    kind: str  # "exact", "lower" or "upper"
    rule: str
    params: tuple = ()
    note: str = ""

    @property
    def provenance(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.rule}({args})"


# ---------------------------------------------------------------------------
# strength 2


def max_degree_strength2(m: int) -> int:
    """Largest degree of a binary 2-covering array with m rows: C(m-1, floor(m/2)-1)."""
    if m < 4:
        raise SizeTooSmall(f"formula holds for m >= 4, got {m}")
    return comb(m - 1, m // 2 - 1)


def can2(n: int) -> int:
    """CAN(2, n, 2): least m >= 4 with max_degree_strength2(m) >= n."""
    if n < 2:
        raise DegreeTooSmall(f"need n >= 2, got {n}")
    m = 4
    while max_degree_strength2(m) < n:
        m += 1
    return m


def hilton_milner_bound(m: int, k: int) -> int:
    """Degree cap 1 + C(m-1, k-1) - C(m-k-1, k-1) for families with empty common support."""
    if not 2 <= k <= m // 2:
        raise ParamOutOfRange(f"need 2 <= k <= floor(m/2), got m={m}, k={k}")
    return 1 + comb(m - 1, k - 1) - comb(m - k - 1, k - 1)


def structure_window(m: int) -> tuple[int, int]:
    """(lo, hi) such that lo < n <= hi is the structure-theorem degree range for size m.

    lo = C(m-1, floor(m/2)-1) + m - 3 floor(m/2), hi = C(m-1, floor(m/2)-1).
    For even m this is hi - m/2 < n <= hi.
    """
    hi = max_degree_strength2(m)
    return hi + m - 3 * (m // 2), hi


def window_size_for(n: int, parity: int | None = None, min_m: int = 4) -> int | None:
    """The m (>= min_m, optionally of given parity) whose structure window holds n."""
    m = min_m
    while True:
        lo, hi = structure_window(m)
        if lo >= n:
            return None
        if lo < n <= hi and (parity is None or m % 2 == parity):
            return m
        m += 1


# ---------------------------------------------------------------------------
# known values


@dataclass(frozen=True)
class CanEntry:
    t: int
    n: int
    q: int
    value: int
    kind: str  # "exact" or "lower"
    source: str  # "published-exact", "published-lower", "derived-witness", "trivial"
    witness: str | None = None  # name of a constructor producing an array of this size


@dataclass
class KnownCanTable:
    """Explicit CAN entries plus the closed-form families for strengths 2 and n - 2."""

    entries: dict = field(default_factory=dict)

    def add(self, entry: CanEntry) -> None:
        self.entries[(entry.t, entry.n, entry.q)] = entry

    def lookup(self, t: int, n: int, q: int) -> CanEntry:
        if t < 0 or n < t:
            raise UnknownCAN(f"CAN({t},{n},{q}) is undefined")
        key = (t, n, q)
        if key in self.entries:
            return self.entries[key]
        if t == 0:
            return CanEntry(t, n, q, 1, "exact", "trivial")
        if t == 1:
            return CanEntry(t, n, q, q, "exact", "trivial")
        if t == n:
            return CanEntry(t, n, q, q**t, "exact", "trivial", "full_array")
        if q == 2 and t == 2:
            return CanEntry(2, n, 2, can2(n), "exact", "derived-witness", "standard_maximal_2ca")
        if q == 2 and t == n - 2 and n >= 4:
            return CanEntry(t, n, 2, 2**n // 3, "exact", "derived-witness", "johnson_entringer")
        raise UnknownCAN(f"no tabulated value for CAN({t},{n},{q})")

    def exact(self, t: int, n: int, q: int) -> int:
        e = self.lookup(t, n, q)
        if e.kind != "exact":
            raise UnknownCAN(f"CAN({t},{n},{q}) is only known as a lower bound ({e.value})")
        return e.value

    def __iter__(self) -> Iterator[CanEntry]:
        return iter(sorted(self.entries.values(), key=lambda e: (e.q, e.t, e.n)))

    def rows(self, max_n: int = 16) -> list[CanEntry]:
        """Explicit entries plus the formula families instantiated up to max_n."""
        out = dict(self.entries)
        for n in range(2, max_n + 1):
            out.setdefault((2, n, 2), self.lookup(2, n, 2))
            if n >= 4:
                out.setdefault((n - 2, n, 2), self.lookup(n - 2, n, 2))
        return sorted(out.values(), key=lambda e: (e.q, e.t, e.n))


@lru_cache(maxsize=1)
def _table() -> KnownCanTable:
    tab = KnownCanTable()
    tab.add(CanEntry(3, 5, 2, 10, "exact", "published-exact", "fixed_matrix:CA10x5"))
    for n in range(6, 12):
        # Table 3 sizes; witnessed by column-deleting the Hadamard array
        tab.add(CanEntry(3, n, 2, 12, "exact", "published-exact", "hadamard_3ca_12x11"))
    tab.add(CanEntry(3, 12, 2, 15, "exact", "published-exact"))
    tab.add(CanEntry(4, 12, 2, 24, "exact", "published-exact", "guided_uniqueness_24x12"))
    tab.add(CanEntry(3, 15, 2, 15, "lower", "published-lower"))
    tab.add(CanEntry(3, 16, 2, 15, "lower", "published-lower"))
    tab.add(CanEntry(5, 13, 2, 49, "lower", "published-lower", "nonexistence_48x13"))
    return tab


def known_can_table() -> KnownCanTable:
    return _table()


# ---------------------------------------------------------------------------
# Roux and the improved strength-3 bounds


def roux_lower(t: int, n: int, q: int) -> BoundResult:
    """CAN(t, n, q) >= q CAN(t-1, n-1, q)."""
    if t < 1 or n < t:
        raise ParamOutOfRange(f"need 1 <= t <= n, got t={t}, n={n}")
    base = known_can_table().exact(t - 1, n - 1, q)
    return BoundResult(q * base, "lower", "roux", (("t", t), ("n", n), ("q", q)),
                       f"{q} * CAN({t - 1},{n - 1},{q}) = {q} * {base}")


def roux_upper_recursion_3(n: int) -> BoundResult:
    """CAN(3, 2n, 2) <= CAN(3, n, 2) + CAN(2, n, 2)."""
    a = known_can_table().exact(3, n, 2)
    b = can2(n)
    return BoundResult(a + b, "upper", "roux-doubling", (("n", n),),
                       f"CAN(3,{2 * n},2) <= CAN(3,{n},2) + CAN(2,{n},2) = {a} + {b}")


def improved_lower_3(n: int) -> BoundResult:
    """Improved bound on CAN(3, n, 2) when n - 1 falls in a structure window.

    Odd m >= 7: 2 CAN(2, n-1, 2) + 1.  Even m >= 8: 2 CAN(2, n-1, 2) + 2.
    """
    return improved_lower_t(3, n)


def improved_lower_t(t: int, n: int) -> BoundResult:
    """CAN(t, n, 2) >= 2^(t-3)(2m+1) (m odd) or 2^(t-2)(m+1) (m even).

    m is the size whose structure window contains n - t + 2, with m >= 7.
    """
    if t < 3:
        raise ParamOutOfRange(f"need t >= 3, got {t}")
    base = n - t + 2
    if base < 2:
        raise NotApplicable(f"no window for n={n}, t={t}")
    m = window_size_for(base, min_m=7)
    if m is None:
        raise NotApplicable(f"n - t + 2 = {base} lies in no structure window with m >= 7")
    if m % 2:
        value = 2 ** (t - 3) * (2 * m + 1)
        rule = "improved-odd"
    else:
        value = 2 ** (t - 2) * (m + 1)
        rule = "improved-even"
    lo, hi = structure_window(m)
    return BoundResult(value, "lower", rule, (("t", t), ("n", n), ("m", m)),
                       f"window {lo} < {base} <= {hi}")


def forced_column_profile(m: int, n_plus_1: int) -> tuple[int, frozenset]:
    """Forced column weight and admissible column distances of a 2m x (n+1) 3-CA.

    Valid when m >= 5 and n lies in the structure window of m.
    """
    n = n_plus_1 - 1
    if m < 5:
        raise NotApplicable(f"needs m >= 5, got {m}")
    lo, hi = structure_window(m)
    if not lo < n <= hi:
        raise NotApplicable(f"n = {n} outside window ({lo}, {hi}] for m = {m}")
    return m, frozenset({2 * (m // 2), 2 * ((m + 1) // 2)})


# ---------------------------------------------------------------------------
# auxiliary inequalities


def binom_exceeds_5l(l: int) -> bool:
    """C(2l-1, l-1) > 5l."""
    return comb(2 * l - 1, l - 1) > 5 * l


def binom_exceeds_4l2(l: int) -> bool:
    """C(2l, l-1) >= 4 l^2."""
    return comb(2 * l, l - 1) >= 4 * l * l


def _half_minus_half_root_exceeds(n: int, b: int) -> bool:
    """Exact test of n/2 - sqrt(n)/2 > b, i.e. n - 2b > sqrt(n)."""
    d = n - 2 * b
    return d > 0 and d * d > n


def window_root_gap(l: int) -> list[tuple[int, bool]]:
    """Check n/2 - sqrt(n)/2 > C(2l-1, l-2) over C(2l, l-1) - l + 2 <= n <= C(2l, l-1)."""
    hi = comb(2 * l, l - 1)
    b = comb(2 * l - 1, l - 2)
    return [(n, _half_minus_half_root_exceeds(n, b)) for n in range(hi - l + 2, hi + 1)]


# ---------------------------------------------------------------------------
# proof replays


@dataclass(frozen=True)
class CertificateReport:
    rule: str
    m: int
    n: int
    certified: bool
    quantities: dict
    checks: tuple = ()

    def summary(self) -> str:
        q = ", ".join(f"{k}={v}" for k, v in self.quantities.items())
        return f"{self.rule}(m={self.m}, n={self.n}): certified={self.certified}; {q}"


def replay_odd_certificate(m: int, n: int) -> CertificateReport:
    """Distance-sum contradiction ruling out a 2m x (n+1) binary 3-CA (m odd).

    Upper: 2(m-1) a (n - a) with a = C(m-2, floor(m/2)-2).
    Lower: (m-1) C(n, 2).  Certified when upper < lower.
    """
    if m < 7 or m % 2 == 0:
        raise NotApplicable(f"needs odd m >= 7, got {m}")
    lo, hi = structure_window(m)
    if not lo < n <= hi:
        raise NotApplicable(f"n = {n} outside window ({lo}, {hi}] for m = {m}")
    a = comb(m - 2, m // 2 - 2)
    upper = 2 * (m - 1) * a * (n - a)
    lower = (m - 1) * comb(n, 2)
    checks = []
    l = (m - 1) // 2
    if l >= 4:
        b = comb(2 * l - 1, l - 2)
        checks.append(("window_root_gap", l, n, _half_minus_half_root_exceeds(n, b)))
        checks.append(("binom_exceeds_5l", l, binom_exceeds_5l(l)))
        if l >= 5:
            checks.append(("binom_exceeds_4l2", l, binom_exceeds_4l2(l)))
    if not upper < lower:
        raise CertificateFails(f"distance-sum certificate fails: {upper} >= {lower}")
    if not all(c[-1] for c in checks):
        raise CertificateFails(f"auxiliary inequality fails: {checks}")
    return CertificateReport(
        "odd-distance-sum", m, n, True,
        {"row_ones_cap": a, "upper": upper, "lower": lower},
        tuple(checks),
    )


def gram_determinant(size: int, dim: int) -> int:
    """det(2 size I + J) of dimension dim: (2 size)^(dim-1) (2 size + dim)."""
    return (2 * size) ** (dim - 1) * (2 * size + dim)


def replay_even_certificate(m: int, n: int) -> CertificateReport:
    """Rank contradiction ruling out a (2m+1) x (n+1) binary 3-CA (m even).

    A +-1 matrix with 2m+1 rows and n+1 columns at mutual distance m has
    Gram matrix 2m I + J, which is nonsingular of order n+1; rank cannot
    exceed the row count, so n + 1 > 2m + 1 is a contradiction.
    """
    if m < 8 or m % 2:
        raise NotApplicable(f"needs even m >= 8, got {m}")
    lo, hi = structure_window(m)
    if not lo < n <= hi:
        raise NotApplicable(f"n = {n} outside window ({lo}, {hi}] for m = {m}")
    dim = n + 1
    det = gram_determinant(m, dim)
    l = m // 2
    checks = [("binom_exceeds_5l", l, binom_exceeds_5l(l))]
    if l >= 5:
        checks.append(("binom_exceeds_4l2", l, binom_exceeds_4l2(l)))
    if det == 0 or not dim > 2 * m + 1:
        raise CertificateFails(f"rank certificate fails: rank {dim} vs rows {2 * m + 1}")
    if not all(c[-1] for c in checks):
        raise CertificateFails(f"auxiliary inequality fails: {checks}")
    return CertificateReport(
        "even-rank", m, n, True,
        {"rank_demand": dim, "rows": 2 * m + 1, "gram_det": det},
        tuple(checks),
    )


# ---------------------------------------------------------------------------
# aggregation used by the CLI


def all_bounds(t: int, n: int, q: int) -> list[BoundResult]:
    """Every bound rule that applies to CAN(t, n, q), with provenance."""
    out = [BoundResult(q**t, "lower", "trivial", (("t", t), ("q", q)), "q^t patterns")]
    tab = known_can_table()
    try:
        e = tab.lookup(t, n, q)
        out.append(BoundResult(e.value, e.kind, "table", (("t", t), ("n", n), ("q", q)), e.source))
    except UnknownCAN:
        pass
    try:
        out.append(roux_lower(t, n, q))
    except (UnknownCAN, ParamOutOfRange):
        pass
    if q == 2 and t >= 3:
        try:
            out.append(improved_lower_t(t, n))
        except NotApplicable:
            pass
    if q == 2 and t == 3 and n % 2 == 0:
        try:
            out.append(roux_upper_recursion_3(n // 2))
        except (UnknownCAN, DegreeTooSmall):
            pass
    return out


def best_lower_bound(t: int, n: int, q: int) -> BoundResult:
    cands = [b for b in all_bounds(t, n, q) if b.kind in ("lower", "exact")]
    return max(cands, key=lambda b: (b.value, b.kind == "exact"))
