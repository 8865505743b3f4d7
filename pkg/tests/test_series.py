import random

import pytest

from mockingbird.series import (
    SeriesError,
    TruncSeries,
    constant,
    hadamard,
    max_product,
    one,
    series_arith,
    solve_equation,
    solve_interval_family,
    substitute_z2,
    z,
    zero,
)


def S(*coeffs):
    return TruncSeries(tuple(coeffs))


class TestArith:
    def test_mul(self):
        assert series_arith("mul", S(1, 1, 0), S(1, 1, 0)) == S(1, 2, 1)

    def test_sub_to_zero(self):
        assert series_arith("sub", S(1, 1), S(1, 1)) == S(0, 0)

    def test_mul_truncates(self):
        assert series_arith("mul", S(0, 1), S(0, 1)) == S(0, 0)

    def test_order_mismatch(self):
        with pytest.raises(SeriesError):
            series_arith("add", S(1, 1), S(1, 1, 1))

    def test_unknown_op(self):
        with pytest.raises(SeriesError):
            series_arith("div", S(1), S(1))


class TestHadamard:
    def test_pointwise(self):
        assert hadamard(S(1, 2), S(3, 4)) == S(3, 8)

    def test_all_ones_identity(self):
        a = S(5, -2, 7)
        assert hadamard(a, S(1, 1, 1)) == a

    def test_disjoint_monomials(self):
        assert hadamard(S(0, 1, 0), S(0, 0, 1)) == S(0, 0, 0)


class TestMaxProduct:
    def test_small_expansion(self):
        assert max_product(S(1, 1), S(1, 1)) == S(1, 3)

    def test_monomial_rule(self):
        assert max_product(S(0, 1, 0), S(0, 0, 1)) == S(0, 0, 1)

    def test_zero_annihilates(self):
        assert max_product(S(3, 1, 4), zero(2)) == zero(2)

    def test_commutative_associative_random(self):
        rng = random.Random(1234)
        for _ in range(100):
            a, b, c = (S(*(rng.randint(-5, 5) for _ in range(6)))
                       for _ in range(3))
            assert max_product(a, b) == max_product(b, a)
            assert max_product(max_product(a, b), c) == \
                max_product(a, max_product(b, c))
            assert hadamard(a, b) == hadamard(b, a)
            assert hadamard(hadamard(a, b), c) == hadamard(a, hadamard(b, c))
            assert a * (b + c) == a * b + a * c


class TestSubstituteZ2:
    def test_spreads_coefficients(self):
        assert substitute_z2(S(1, 1, 1, 0, 0)) == S(1, 0, 1, 0, 1)

    def test_constant(self):
        assert substitute_z2(constant(1, 3)) == constant(1, 3)

    def test_truncates(self):
        assert substitute_z2(S(0, 1)) == S(0, 0)


class TestSolve:
    def test_motzkin_prefix(self):
        assert solve_equation("motzkin", 7).coefficients == \
            (1, 1, 1, 2, 4, 9, 21, 51)

    def test_classes_prefix(self):
        assert solve_equation("classes", 5).coefficients == \
            (1, 1, 2, 10, 170, 33490)

    def test_sizes_prefix_ladder_indexed(self):
        assert solve_equation("sizes", 5).coefficients == \
            (1, 2, 6, 42, 1806, 3263442)

    def test_min_prefix(self):
        assert solve_equation("min", 7).coefficients == \
            (1, 1, 2, 4, 12, 34, 108, 344)

    def test_edges_prefix_ladder_indexed(self):
        assert solve_equation("edges", 5).coefficients == \
            (0, 1, 7, 97, 8287, 29942737)

    def test_intervals_returns_family(self):
        f1, family = solve_equation("intervals", 3)
        assert f1.coefficients == (1, 3, 17, 371)
        assert family[2][0] == 1
        assert family[2][1] == 5  # a_2(1)

    def test_unknown_name(self):
        with pytest.raises(SeriesError):
            solve_equation("fibonacci", 5)


def _residual(name, f, order):
    o = one(order)
    zz = z(order)
    if name == "motzkin":
        return o + zz + (f * f).shift() - f.shift() - f
    if name == "min":
        return o + zz + (f * f).shift() - substitute_z2(f).shift() - f
    if name == "classes":
        return o + zz + max_product(f, f).shift() - f.shift() - f
    if name == "sizes":
        return o + f.shift() + hadamard(f, f).shift() - f
    raise AssertionError(name)


class TestResiduals:
    def test_solutions_satisfy_their_equations(self):
        order = 12
        for name in ("motzkin", "min", "classes", "sizes"):
            f = solve_equation(name, order)
            assert _residual(name, f, order) == zero(order)

    def test_edges_residual(self):
        order = 12
        g = solve_equation("sizes", order)
        f = solve_equation("edges", order)
        rhs = f.shift() + g.shift() + hadamard(f, g).scale(2).shift()
        assert rhs == f

    def test_interval_family_residual(self):
        from math import comb

        order = 6
        family = solve_interval_family(order)
        # coefficient d of F_k is reliable for k <= 2^(order - d)
        for k in (1, 2, 4):
            for d in range(1, order + 1):
                if k > 1 << (order - d):
                    continue
                lhs = family[k][d]
                rhs = family[k][d - 1] ** 2 + sum(
                    comb(k, i) * family[k + i][d - 1] for i in range(k + 1))
                assert lhs == rhs
