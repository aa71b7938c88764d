from fractions import Fraction

import pytest
from hypothesis import given, settings

from faberfields.polyring import CoeffPoly, c
from faberfields.series import (
    INF,
    BiSeries,
    DiagonalError,
    LaurentSeries,
    LaurentWPoly,
    LeadingCoefficientError,
    OrderError,
    PowerSeries,
    SeriesError,
    WPoly,
    const_series,
    divided_difference,
    laurent_mul,
    laurent_pow,
    laurent_recip,
    ps_add,
    ps_compose,
    ps_div,
    ps_log,
    ps_mul,
    ps_reversion,
    ps_scale,
    seed_series,
    series_agree,
    wpoly_eval_laurent,
    wpoly_reciprocal_substitute,
    z_series,
    zero_series,
)

from .strategies import power_series, reversible_series, unit_series

c1, c2, c3 = c(1), c(2), c(3)
one = CoeffPoly.one()
zero = CoeffPoly.zero()


# -- independent oracles ------------------------------------------------------


def mercator_log(x: CoeffPoly, order: int) -> PowerSeries:
    """log(1 + x z) as sum (-1)^(n+1) x^n z^n / n, the classical series."""
    data = [zero]
    for n in range(1, order + 1):
        sign = 1 if n % 2 else -1
        data.append(x ** n * Fraction(sign, n))
    return PowerSeries(data)


def lagrange_reversion(N: int) -> PowerSeries:
    """Reverse of the seed by the classical coefficient formula
    g_n = (1/n) [z^(n-1)] (z/f(z))^n, fully independent of Newton iteration."""
    r = laurent_recip(seed_series(N + 1).shift(-1))  # z/f
    coeffs = [zero, one]
    r_pow = r
    for n in range(2, N + 1):
        r_pow = r_pow * r
        coeffs.append(r_pow.coefficient(n - 1) * Fraction(1, n))
    return PowerSeries(coeffs[: N + 1])


class TestSeed:
    def test_seed_three(self):
        f = seed_series(3)
        assert f.coefficient(0) == zero
        assert f.coefficient(1) == one
        assert f.coefficient(2) == c1
        assert f.coefficient(3) == c2
        assert f.order == 3

    def test_seed_one_is_z(self):
        f = seed_series(1)
        assert f.coefficient(1) == one
        assert f.order == 1

    def test_seed_derivative(self):
        df = seed_series(3).derivative()
        assert df.coefficient(0) == one
        assert df.coefficient(1) == c1 * 2
        assert df.coefficient(2) == c2 * 3

    def test_seed_requires_positive_order(self):
        with pytest.raises(ValueError):
            seed_series(0)


class TestMulAddScale:
    def test_mul_by_zero(self):
        f = seed_series(4)
        assert ps_mul(f, zero_series(4)).is_zero()

    def test_fprime_squared(self):
        # f'(z)^2 = 1 + 4 c1 z + (4 c1^2 + 6 c2) z^2 + ..., by hand.
        df = seed_series(3).derivative()
        sq = ps_mul(df, df)
        assert sq.coefficient(0) == one
        assert sq.coefficient(1) == c1 * 4
        assert sq.coefficient(2) == c1 * c1 * 4 + c2 * 6

    def test_one_plus_z_times_one_minus_z(self):
        a = PowerSeries([1, 1], order=3)
        b = PowerSeries([1, -1], order=3)
        prod = ps_mul(a, b)
        assert prod.coefficient(0) == one
        assert prod.coefficient(1) == zero
        assert prod.coefficient(2) == -one

    def test_scale(self):
        f = seed_series(2)
        assert ps_scale(f, c1).coefficient(1) == c1
        assert ps_add(f, -f).is_zero()

    def test_order_propagation_min(self):
        a = PowerSeries([1, 1], order=5)
        b = PowerSeries([1, 1], order=3)
        assert ps_add(a, b).order == 3
        assert ps_mul(a, b).order == 3


class TestDiv:
    def test_inverse_derivative(self):
        # 1/f' = 1 - 2 c1 z + (4 c1^2 - 3 c2) z^2 + ...
        inv = ps_div(const_series(1), seed_series(3).derivative())
        assert inv.coefficient(0) == one
        assert inv.coefficient(1) == c1 * -2
        assert inv.coefficient(2) == c1 * c1 * 4 - c2 * 3

    def test_self_division(self):
        f = seed_series(5)
        q = ps_div(f, f)
        assert q.coefficient(0) == one
        assert all(not q.coefficient(k) for k in range(1, q.order + 1))

    def test_sq_ratio_low_order(self):
        # z^2 f'^2 / f^2 = 1 + 2 c1 z + ...
        f = seed_series(3)
        df = f.derivative()
        s = ps_div(ps_mul(df, df) * ps_mul(z_series(), z_series()), ps_mul(f, f))
        assert s.coefficient(0) == one
        assert s.coefficient(1) == c1 * 2

    def test_zero_lead_rejected(self):
        with pytest.raises(LeadingCoefficientError):
            ps_div(const_series(1), zero_series(3))

    def test_non_unit_lead_rejected(self):
        bad = PowerSeries([c1, one], order=3)
        with pytest.raises(LeadingCoefficientError) as exc:
            ps_div(const_series(1), bad)
        assert exc.value.valuation == 0

    @given(unit_series, unit_series)
    @settings(max_examples=30)
    def test_div_mul_round_trip(self, a, b):
        q = ps_div(a, b)
        back = ps_mul(q, b)
        assert series_agree(back, a, through=min(back.order, a.order)) is None


class TestLog:
    def test_log_of_one(self):
        assert ps_log(PowerSeries([1], order=4)).is_zero()

    def test_mercator(self):
        got = ps_log(PowerSeries([one, c1], order=2))
        want = mercator_log(c1, 2)
        assert series_agree(got, want, through=2) is None

    def test_log_quotient_rule(self):
        # d/dz log(f/z) = f'/f - 1/z, checked as Laurent series.
        f = seed_series(6)
        lhs = ps_log(f.shift(-1)).derivative()
        rhs = f.derivative() * laurent_recip(f) - z_series().shift(-2)
        assert series_agree(lhs, rhs, through=min(lhs.order, rhs.order)) is None

    def test_requires_unit_constant(self):
        with pytest.raises(SeriesError):
            ps_log(seed_series(3))

    @given(unit_series)
    @settings(max_examples=30)
    def test_log_derivative_identity(self, a):
        if a.order < 1:
            return
        la = ps_log(a)
        lhs = ps_mul(la.derivative(), a)
        rhs = a.derivative()
        assert series_agree(lhs, rhs, through=min(lhs.order, rhs.order)) is None


class TestCompose:
    def test_square_outer(self):
        f = seed_series(4)
        got = ps_compose(PowerSeries([0, 0, 1], order=4), f)
        want = ps_mul(f, f)
        assert series_agree(got, want, through=min(got.order, want.order)) is None

    def test_identity_outer(self):
        f = seed_series(4)
        got = ps_compose(z_series(), f)
        assert series_agree(got, f, through=4) is None

    def test_faber_one_at_reciprocal(self):
        # F_1(1/f(z)) = 1/f(z) + c1 = 1/z + (c1^2 - c2) z + ...
        f = seed_series(4)
        h = laurent_recip(f) + c1
        assert h.coefficient(-1) == one
        assert h.coefficient(0) == zero
        assert h.coefficient(1) == c1 * c1 - c2

    def test_nonzero_constant_rejected(self):
        with pytest.raises(SeriesError):
            ps_compose(seed_series(3), PowerSeries([1, 1], order=3))


class TestReversion:
    def test_identity(self):
        g = ps_reversion(PowerSeries([0, 1], order=4))
        assert series_agree(g, z_series(), through=4) is None

    def test_seed_order_three(self):
        g = ps_reversion(seed_series(3))
        assert g.coefficient(1) == one
        assert g.coefficient(2) == -c1
        assert g.coefficient(3) == c1 * c1 * 2 - c2

    def test_against_lagrange_oracle(self):
        got = ps_reversion(seed_series(8))
        want = lagrange_reversion(8)
        assert series_agree(got, want, through=8) is None

    def test_defining_identity(self):
        f = seed_series(6)
        g = ps_reversion(f)
        assert series_agree(ps_compose(f, g), z_series(), through=6) is None
        assert series_agree(ps_compose(g, f), z_series(), through=6) is None

    def test_wrong_shape_rejected(self):
        with pytest.raises(SeriesError):
            ps_reversion(PowerSeries([0, c1 + 1], order=3))
        with pytest.raises(SeriesError):
            ps_reversion(PowerSeries([1, 1], order=3))

    @given(reversible_series)
    @settings(max_examples=20, deadline=None)
    def test_round_trip_random(self, a):
        g = ps_reversion(a)
        back = ps_compose(a, g)
        assert series_agree(back, z_series(), through=back.order) is None
        forth = ps_compose(g, a)
        assert series_agree(forth, z_series(), through=forth.order) is None


class TestLaurent:
    def test_reciprocal_of_seed(self):
        # 1/f = 1/z - c1 + (c1^2 - c2) z + (2 c1 c2 - c1^3 - c3) z^2 + ...
        h = laurent_recip(seed_series(4))
        assert h.valuation == -1
        assert h.coefficient(-1) == one
        assert h.coefficient(0) == -c1
        assert h.coefficient(1) == c1 * c1 - c2
        assert h.coefficient(2) == c1 * c2 * 2 - CoeffPoly.var(1, 3) - c3

    def test_product_with_reciprocal(self):
        f = seed_series(5)
        p = laurent_mul(f, laurent_recip(f))
        assert p.coefficient(0) == one
        assert all(not p.coefficient(k) for k in range(1, p.order + 1))

    def test_monomial_reciprocal_exact(self):
        inv = laurent_recip(z_series())
        assert inv.valuation == -1
        assert inv.order is INF

    def test_pow_negative(self):
        f = seed_series(5)
        m = laurent_mul(laurent_pow(f, -2), laurent_pow(f, 2))
        assert m.coefficient(0) == one
        assert all(not m.coefficient(k) for k in range(m.valuation, 0))

    def test_pow_zero(self):
        p = laurent_pow(seed_series(3), 0)
        assert p.coefficient(0) == one
        assert p.order is INF

    def test_coefficient_below_valuation_is_zero(self):
        f = seed_series(3)
        assert f.coefficient(-5) == zero

    def test_order_error_past_truncation(self):
        f = seed_series(3)
        with pytest.raises(OrderError):
            f.coefficient(4)

    def test_shift_and_integrate(self):
        f = seed_series(3)
        assert f.shift(-1).coefficient(0) == one
        back = f.derivative().integrate(0)
        assert series_agree(back, f, through=back.order) is None

    def test_integrate_rejects_log_term(self):
        with pytest.raises(SeriesError):
            z_series().shift(-2).integrate()  # 1/z has no series primitive


class TestTruncationStability:
    @given(power_series, power_series)
    @settings(max_examples=30)
    def test_mul(self, a, b):
        full = a * b
        if a.order < 1:
            return
        cut = a.truncate(a.order - 1) * b
        assert cut.order <= full.order
        assert series_agree(full.truncate(cut.order), cut, through=cut.order) is None

    @given(unit_series)
    @settings(max_examples=20)
    def test_log(self, a):
        if a.order < 2:
            return
        full = ps_log(a)
        cut = ps_log(a.truncate(a.order - 1))
        assert series_agree(full.truncate(cut.order), cut, through=cut.order) is None

    @given(power_series, unit_series)
    @settings(max_examples=20)
    def test_div(self, a, b):
        full = ps_div(a, b)
        if b.order < 1:
            return
        cut = ps_div(a, b.truncate(b.order - 1))
        assert cut.order <= full.order
        assert series_agree(full.truncate(cut.order), cut, through=cut.order) is None

    @given(unit_series, reversible_series)
    @settings(max_examples=20)
    def test_compose(self, outer, inner):
        if inner.order < 2:
            return
        full = ps_compose(outer, inner)
        cut = ps_compose(outer, inner.truncate(inner.order - 1))
        assert cut.order <= full.order
        assert series_agree(full.truncate(cut.order), cut, through=cut.order) is None

    @given(reversible_series)
    @settings(max_examples=20, deadline=None)
    def test_reversion(self, a):
        if a.order < 2:
            return
        full = ps_reversion(a)
        cut = ps_reversion(a.truncate(a.order - 1))
        assert series_agree(full.truncate(cut.order), cut, through=cut.order) is None


class TestWPoly:
    def test_eval_at_reciprocal_marker(self):
        # T_1(w) = w + 3 c1 at w = 1/u.
        t1 = WPoly([c1 * 3, one])
        got = wpoly_reciprocal_substitute(t1)
        assert got == LaurentWPoly({-1: one, 0: c1 * 3})

    def test_constant_substitution(self):
        p = WPoly([c2])
        assert wpoly_reciprocal_substitute(p) == LaurentWPoly({0: c2})

    def test_degree_two_reciprocal(self):
        # F_2(w) = w^2 + 2 c1 w + (2 c2 - c1^2) at w = 1/u.
        f2 = WPoly([c2 * 2 - c1 * c1, c1 * 2, one])
        got = wpoly_reciprocal_substitute(f2)
        assert got == LaurentWPoly({-2: one, -1: c1 * 2, 0: c2 * 2 - c1 * c1})

    def test_eval_at_laurent_series(self):
        f = seed_series(5)
        h = laurent_recip(f)
        p = WPoly([c1, one])  # w + c1
        got = wpoly_eval_laurent(p, h)
        assert got.coefficient(-1) == one
        assert got.coefficient(0) == zero

    def test_wpoly_arithmetic(self):
        a = WPoly([one, c1])
        b = WPoly([c2, one])
        assert (a * b).coefficient(1) == c1 * c2 + one
        assert (a + b).coefficient(0) == one + c2
        assert a.deriv_w() == WPoly([c1])

    def test_render_descending(self):
        f2 = WPoly([c2 * 2 - c1 * c1, c1 * 2, one])
        assert f2.render() == "w^2 + 2*c1*w + (2*c2 - c1^2)"


class TestLaurentWPoly:
    def test_eval_at_variable(self):
        lam = LaurentWPoly({-1: -one, 1: c1})
        s = lam.at_variable()
        assert s.coefficient(-1) == -one
        assert s.coefficient(1) == c1
        assert s.order is INF

    def test_eval_at_series_negative_powers(self):
        f = seed_series(6)
        lam = LaurentWPoly({-1: one})
        got = lam.eval_at(f)
        want = laurent_recip(f)
        assert series_agree(got, want, through=min(got.order, want.order)) is None

    def test_render(self):
        lam = LaurentWPoly({1: c1 * -2, 0: -one})
        assert lam.render() == "-2*c1*u - 1"


class TestDividedDifference:
    def test_linear(self):
        p = BiSeries.zeros(1, 1, exact=True)
        rows = [list(r) for r in p.rows]
        rows[0][1] = one
        rows[1][0] = -one
        q = divided_difference(BiSeries(rows, 1, 1, 0, True))
        assert q.coefficient(0, 0) == one
        assert all(not q.coefficient(i, j)
                   for i in range(2) for j in range(2) if (i, j) != (0, 0))

    def test_difference_of_squares(self):
        p = BiSeries.zeros(2, 2, exact=True)
        rows = [list(r) for r in p.rows]
        rows[0][2] = one
        rows[2][0] = -one
        q = divided_difference(BiSeries(rows, 2, 2, 0, True))
        assert q.coefficient(1, 0) == one
        assert q.coefficient(0, 1) == one
        assert not q.coefficient(1, 1)

    def test_telescoping_example(self):
        # P = v g(u) - u g(v) with g(z) = c1 z^2 gives Q = -c1 u v.
        p = BiSeries.zeros(2, 2, exact=True)
        rows = [list(r) for r in p.rows]
        rows[2][1] = c1
        rows[1][2] = -c1
        q = divided_difference(BiSeries(rows, 2, 2, 0, True))
        assert q.coefficient(1, 1) == -c1
        assert not q.coefficient(0, 0)

    def test_defining_relation_on_truncation(self):
        # (v - u) Q = P coefficientwise: Q[i][j-1] - Q[i-1][j] = P[i][j].
        r = laurent_recip(seed_series(8).shift(-1))
        nv = 7
        rows = [[zero] * (nv + 1) for _ in range(3)]
        for i in range(3):
            rows[i][1] = rows[i][1] + r.coefficient(i)
        for j in range(nv + 1):
            rows[1][j] = rows[1][j] - r.coefficient(j)
        p = BiSeries(rows, 2, nv, 0, False)
        q = divided_difference(p)
        for i in range(q.nu + 1):
            for j in range(q.nv + 1):
                lhs = q.coefficient(i, j - 1) if j >= 1 else zero
                lhs = lhs - (q.coefficient(i - 1, j) if i >= 1 else zero)
                assert lhs == p.coefficient(i, j)

    def test_diagonal_violation_reported(self):
        p = BiSeries.zeros(1, 1, exact=True)
        rows = [list(r) for r in p.rows]
        rows[0][1] = one
        rows[1][0] = one  # v + u does not vanish on the diagonal
        with pytest.raises(DiagonalError) as exc:
            divided_difference(BiSeries(rows, 1, 1, 0, True))
        assert exc.value.degree == 1


class TestJsonAndRender:
    def test_series_json_round_trip(self):
        f = laurent_recip(seed_series(4))
        blob = f.to_json_obj()
        back = LaurentSeries.from_json_obj(blob)
        assert back == f

    def test_exact_series_json(self):
        s = z_series()
        blob = s.to_json_obj()
        assert blob["order"] is None
        assert LaurentSeries.from_json_obj(blob) == s

    def test_render(self):
        f = seed_series(3)
        assert f.render() == "z + c1*z^2 + c2*z^3"
        h = laurent_recip(seed_series(3))
        assert h.render().startswith("z^-1 - c1")

    def test_wpoly_json_round_trip(self):
        p = WPoly([c2 * 2 - c1 * c1, c1 * 2, one])
        assert WPoly.from_json_obj(p.to_json_obj()) == p

    def test_laurent_wpoly_json_round_trip(self):
        lam = LaurentWPoly({-1: -one, 0: c1 * -3, 1: c1 * c1 - c2 * 4})
        assert LaurentWPoly.from_json_obj(lam.to_json_obj()) == lam
