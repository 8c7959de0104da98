"""Stieltjes constants with certified bounds, the eta expansion of the
log-derivative, Li coefficients, and the two-sided growth bounds."""

import math
from fractions import Fraction

import mpmath
from mpmath import mpf
import numpy
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from zeta_explicit.liconst import (
    MAX_ORDER,
    StieltjesTable,
    build_stieltjes_table,
    coffey_decomposition,
    eta_from_gamma,
    lambda_direct,
    li_lambda_identity,
    rh_statistic,
    stieltjes,
    stieltjes_shifted,
)
from zeta_explicit.mpcore import PrecisionContext
from zeta_explicit.zeros import SumSpec

F = Fraction

LAMBDA_ANCHORS = {
    1: 0.02309570896612103,
    2: 0.09234573522804667,
    3: 0.2076389205543248,
    4: 0.3687904794922416,
    5: 0.5755427144611775,
}


@pytest.mark.parametrize("n", [0, 1, 2, 5, 10])
def test_stieltjes_matches_mpmath(ctx, n):
    value, bound = stieltjes(n, ctx=ctx)
    with mpmath.workprec(ctx.bits + 64):
        ref = mpmath.stieltjes(n)
        err = abs(value.val - ref)
    assert err <= bound.val
    assert err < mpf(1) / 10 ** 40


def test_stieltjes_bound_is_honest(ctx):
    # Doubling the precision moves the value by less than the coarser
    # certified bound.
    wide = PrecisionContext(bits=384)
    for n in (1, 3, 7):
        v1, b1 = stieltjes(n, ctx=ctx)
        v2, _ = stieltjes(n, ctx=wide)
        with wide.workprec(16):
            assert abs(v1.val - v2.val) <= b1.val


def test_stieltjes_eps_contract(ctx):
    value, bound = stieltjes(2, eps=1e-30, ctx=ctx)
    assert float(bound.val) < 1e-30
    with pytest.raises(ArithmeticError):
        stieltjes(2, eps=1e-80, ctx=ctx, m=50, K=2)


def test_stieltjes_domain_guards(ctx):
    with pytest.raises(ValueError):
        stieltjes(MAX_ORDER + 1, ctx=ctx)
    with pytest.raises(ValueError):
        stieltjes(-1, ctx=ctx)
    with pytest.raises(ValueError):
        stieltjes_shifted(0, F(-1, 2), ctx)
    with pytest.raises(ValueError):
        stieltjes_shifted(0, F(0), ctx)


def test_shifted_order_zero_is_digamma(ctx):
    for a in (F(1, 4), F(1, 3), F(3, 7)):
        value, bound = stieltjes_shifted(0, a, ctx)
        with mpmath.workprec(ctx.bits + 64):
            ref = -mpmath.digamma(mpmath.mpf(a.numerator) / a.denominator)
            err = abs(value.val - ref)
        assert err <= bound.val
        assert err < mpf(1) / 10 ** 40


def test_shifted_reduces_to_plain(ctx):
    v1, _ = stieltjes_shifted(1, F(1), ctx)
    v2, _ = stieltjes(1, ctx=ctx)
    assert v1.val == v2.val


def test_raw_limit_extrapolation_oracle():
    # Independent double-precision oracle: fit a + b/m + c/m^2 through
    # the partial sums Sum_{k<=m} 1/k - log m, then a -> gamma_0.
    ms = [10 ** 3, 10 ** 4, 10 ** 5]
    rows, rhs = [], []
    for m in ms:
        rows.append([1.0, 1.0 / m, 1.0 / m ** 2])
        rhs.append(math.fsum(1.0 / k for k in range(1, m + 1)) - math.log(m))
    gamma0 = float(numpy.linalg.solve(numpy.array(rows), numpy.array(rhs))[0])
    assert abs(gamma0 - 0.5772156649015329) < 1e-9

    # Same protocol for gamma_1 with basis {1, log m / m, 1/m}.
    rows, rhs = [], []
    for m in ms:
        rows.append([1.0, math.log(m) / m, 1.0 / m])
        rhs.append(math.fsum(math.log(k) / k for k in range(2, m + 1))
                   - math.log(m) ** 2 / 2)
    gamma1 = float(numpy.linalg.solve(numpy.array(rows), numpy.array(rhs))[0])
    assert abs(gamma1 - (-0.0728158454836767)) < 1e-8


def test_eta_closed_form_duals(ctx, consts8):
    g0 = consts8.gamma(0).val
    g1 = consts8.gamma(1).val
    g2 = consts8.gamma(2).val
    with ctx.workprec(16):
        assert abs(consts8.eta(0).val + g0) < mpf(2) ** (-150)
        assert abs(consts8.eta(1).val - (g0 * g0 + 2 * g1)) < mpf(2) ** (-150)
        assert abs(consts8.eta(2).val
                   - (-F(3, 2) * g2 - 3 * g0 * g1 - g0 ** 3)) < mpf(2) ** (-150)


def test_eta_from_gamma_input_forms(ctx, consts8):
    gammas = [consts8.gamma(n) for n in range(6)]
    a = eta_from_gamma(consts8, ctx)
    b = eta_from_gamma(gammas, ctx)
    c = eta_from_gamma([(g, ctx.real(0)) for g in gammas], ctx)
    for x, y, z in zip(b, b, c):
        assert x.val == y.val == z.val
    for x, y in zip(a[:len(b)], b):
        assert x.val == y.val


def test_eta_from_gamma_rejects_short_input(ctx):
    with pytest.raises(ValueError):
        eta_from_gamma([ctx.real(0)], ctx)


def test_lambda_anchors(consts8):
    for n, ref in LAMBDA_ANCHORS.items():
        assert float(consts8.lam(n).val) == pytest.approx(ref, abs=1e-15)


def test_li_lambda_identity_is_table_value(ctx, consts8):
    for n in (1, 3, 8):
        assert li_lambda_identity(n, consts8, ctx).val == consts8.lam(n).val


def test_table_shape(consts8):
    assert isinstance(consts8, StieltjesTable)
    assert consts8.order == 8
    assert consts8.gamma_bound(3).val > 0
    d = consts8.to_dict()
    assert {"order", "gammas", "etas", "lambdas"} <= set(d)
    with pytest.raises(IndexError):
        consts8.lam(9)


def test_coffey_reassembly_and_bounds(ctx, consts20):
    with ctx.workprec(16):
        for n in range(1, 21):
            S1, S2, bounds_ok = coffey_decomposition(n, consts20, ctx)
            rebuilt = 1 - F(n, 2) * ctx.real(ctx.log_4pi + ctx.euler_gamma).val \
                + S1.val + S2.val
            assert abs(rebuilt - consts20.lam(n).val) < mpf(2) ** (-140), n
            assert bounds_ok, n
            if n >= 2:
                assert S1.val >= 0, n


def test_coffey_anchor_values(ctx, consts8):
    S1, S2, _ = coffey_decomposition(2, consts8, ctx)
    with ctx.workprec(16):
        assert abs(S1.val - mpmath.pi ** 2 / 8) < mpf(2) ** (-150)
    assert float(S2.val) == pytest.approx(0.9668850969627005, abs=1e-15)


def test_lambda_direct_two_routes(ctx, fixture100, consts8):
    spec = SumSpec(K=100)
    direct, tail = lambda_direct(1, fixture100, spec, ctx)
    with ctx.workprec(16):
        corrected = direct.val + tail.val
        gap = abs(corrected - consts8.lam(1).val)
        assert gap < mpf(1) / 10 ** 4  # frozen fixture gap is 3.4e-6
    with pytest.raises(ValueError):
        lambda_direct(0, fixture100, spec, ctx)


def test_rh_statistic_report(ctx, fixture100):
    report = rh_statistic(fixture100, SumSpec(K=100), ctx)
    assert report.pairs == 100
    assert report.within_tolerance
    assert float(report.target.val) == pytest.approx(0.046191417932242068,
                                                     abs=1e-15)
    with ctx.workprec(16):
        assert abs(report.corrected.val - report.target.val) \
            <= abs(report.tail.val)
    d = report.to_dict()
    assert {"pairs", "corrected", "target", "discrepancy",
            "within_tolerance"} <= set(d)


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=1, max_value=8))
def test_lambda_identity_direct_consistency(n):
    # The two routes drift apart only by the truncation tail at fixture
    # scale; 1e-3 is far above the observed gaps yet far below lambda_n.
    ctx = PrecisionContext(bits=192)
    from zeta_explicit.zeros import fixture_table
    table = fixture_table(ctx)
    consts = build_stieltjes_table(8, ctx)
    direct, tail = lambda_direct(n, table, SumSpec(K=100), ctx)
    with ctx.workprec(16):
        corrected = direct.val + tail.val
        assert abs(corrected - consts.lam(n).val) < mpf(1) / 10 ** 3
