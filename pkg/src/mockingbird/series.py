"""Truncated power series over exact integers, the Hadamard and max
products, and fixpoint solving of the six counting equations.

Every equation has the shape F = Phi(F) where each nonconstant term of Phi
carries a factor z, so Phi is a contraction in the z-adic metric: iterating
from the zero series fixes coefficient d after d+1 rounds.  Solvers run
exactly N+1 rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class TruncSeries:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise SeriesError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n]

    def _check(self, other: "TruncSeries") -> None:
        if self.order != other.order:
            raise SeriesError(
                f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(tuple(a + b for a, b in
                                 zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(tuple(a - b for a, b in
                                 zip(self.coefficients, other.coefficients)))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        a, b = self.coefficients, other.coefficients
        n = len(a)
        out = [0] * n
        for i, ai in enumerate(a):
            if ai:
                for j in range(n - i):
                    out[i + j] += ai * b[j]
        return TruncSeries(tuple(out))

    def scale(self, c: int) -> "TruncSeries":
        return TruncSeries(tuple(c * a for a in self.coefficients))

    def shift(self) -> "TruncSeries":
        """Multiply by z (truncated)."""
        return TruncSeries((0,) + self.coefficients[:-1])


def constant(c: int, order: int) -> TruncSeries:
    return TruncSeries((c,) + (0,) * order)


def zero(order: int) -> TruncSeries:
    return constant(0, order)


def one(order: int) -> TruncSeries:
    return constant(1, order)


def z(order: int) -> TruncSeries:
    if order < 1:
        return zero(order)
    return TruncSeries((0, 1) + (0,) * (order - 1))


def series_arith(op: str, a: TruncSeries, b: TruncSeries) -> TruncSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise SeriesError(f"unknown operation {op!r}")


def hadamard(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Coefficientwise product."""
    a._check(b)
    return TruncSeries(tuple(x * y for x, y in
                             zip(a.coefficients, b.coefficients)))


def max_product(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Bilinear extension of the monomial rule z^i * z^j = z^max(i,j):
    coefficient n is a_n * (sum of b below n) + b_n * (sum of a below n)
    + a_n * b_n."""
    a._check(b)
    out = []
    sum_a = 0
    sum_b = 0
    for an, bn in zip(a.coefficients, b.coefficients):
        out.append(an * sum_b + bn * sum_a + an * bn)
        sum_a += an
        sum_b += bn
    return TruncSeries(tuple(out))


def substitute_z2(a: TruncSeries) -> TruncSeries:
    """Substitute z := z^2, truncated at the same order."""
    n = a.order
    out = [0] * (n + 1)
    for i, c in enumerate(a.coefficients):
        if 2 * i > n:
            break
        out[2 * i] = c
    return TruncSeries(tuple(out))


# ---------------------------------------------------------------------------
# The six equations.
#
# All solutions are ladder-indexed: coefficient d counts the upset of the
# d-ladder (or, for motzkin/min, combinators of degree d; for classes,
# equivalence classes of height d).  The sequence layer re-exposes the
# conventional indexing.


def _fixpoint(phi: Callable[[TruncSeries], TruncSeries], order: int) -> TruncSeries:
    f = zero(order)
    for _ in range(order + 1):
        f = phi(f)
    return f


def _solve_sizes(order: int) -> TruncSeries:
    o = one(order)
    return _fixpoint(lambda f: o + f.shift() + hadamard(f, f).shift(), order)


def _solve_edges(order: int) -> TruncSeries:
    g = _solve_sizes(order)
    return _fixpoint(
        lambda f: f.shift() + g.shift() + hadamard(f, g).scale(2).shift(),
        order)


def _solve_motzkin(order: int) -> TruncSeries:
    base = one(order) + z(order)
    return _fixpoint(lambda f: base + (f * f).shift() - f.shift(), order)


def _solve_min(order: int) -> TruncSeries:
    base = one(order) + z(order)
    return _fixpoint(
        lambda f: base + (f * f).shift() - substitute_z2(f).shift(), order)


def _solve_classes(order: int) -> TruncSeries:
    base = one(order) + z(order)
    return _fixpoint(
        lambda f: base + max_product(f, f).shift() - f.shift(), order)


def solve_interval_family(order: int) -> dict[int, TruncSeries]:
    """Joint fixpoint for the catalytic family F_k = 1 + z(F_k (.) F_k)
    + z * sum over i in [0..k] of C(k,i) F_{k+i}.

    Coefficient d of F_k depends on coefficients d-1 of F_k .. F_{2k}, so
    round d only needs the series with k <= 2^(order - d); higher-k
    coefficients beyond that demand are never touched and stay zero.
    """
    kmax = 1 << order
    coeffs: dict[int, list[int]] = {
        k: [1] + [0] * order for k in range(1, 2 * kmax + 1)}
    for d in range(1, order + 1):
        limit = 1 << (order - d)
        for k in range(1, limit + 1):
            prev = coeffs[k][d - 1]
            total = prev * prev
            if d == 1:
                # every constant coefficient is 1: the binomial sum is 2^k
                total += 1 << k
            else:
                binom = 1  # C(k, i), updated incrementally
                for i in range(k + 1):
                    total += binom * coeffs[k + i][d - 1]
                    binom = binom * (k - i) // (i + 1)
            coeffs[k][d] = total
    return {k: TruncSeries(tuple(v)) for k, v in coeffs.items() if k <= kmax}


def solve_equation(name: str, order: int):
    """Solve one of the named equations to the given truncation order.

    Returns a TruncSeries, except for ``intervals`` which returns the pair
    (F_1, family table keyed by k).
    """
    if order < 0:
        raise SeriesError("order must be >= 0")
    if name == "sizes":
        return _solve_sizes(order)
    if name == "edges":
        return _solve_edges(order)
    if name == "motzkin":
        return _solve_motzkin(order)
    if name == "min":
        return _solve_min(order)
    if name == "classes":
        return _solve_classes(order)
    if name == "intervals":
        family = solve_interval_family(order)
        return family[1], family
    raise SeriesError(f"unknown equation {name!r}")
