import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from burgess import baselines
from burgess.bounds import (
    BurgessParams,
    bound_value,
    derive_params,
    extremal_scan,
    feasible_params,
    holder_chain,
    holder_chain_direct_w,
    iroot,
    least_nonresidue,
    max_window_spread,
    nonresidue_max_gap,
    pv_ratio_scan,
    resolve_params,
)
from burgess.chars import build_modulus
from burgess.errors import DegenerateParams, UnknownVariant

ORDERED_VARIANTS = ("refined_14r", "ik_12r", "ik_1r", "burgess_classic")


@pytest.fixture(scope="module")
def mod101():
    return build_modulus(101)


@pytest.fixture(scope="module")
def mod10007():
    return build_modulus(10007)


def test_iroot():
    for n in list(range(0, 200)) + [10 ** 12, 10 ** 12 + 1]:
        for k in (2, 3, 4, 6):
            r = iroot(n, k)
            assert r ** k <= n < (r + 1) ** k


def test_derive_params_example():
    p = derive_params(5000, 10007, 2)
    assert (p.U, p.V) == (15, 20)
    assert abs(p.z - math.exp(math.sqrt(math.log(15)))) < 1e-12
    assert not p.degenerate
    assert not p.in_refined_range  # 5000 > 10007^0.625


def test_derive_params_degenerate_flag():
    p = derive_params(10, 10007, 2)  # N below 32 q^{1/4}
    assert p.U == 0 and p.degenerate
    assert p.z == 1.0


def test_derive_params_floor_never_exceeds():
    rng = random.Random(8)
    for _ in range(200):
        q = rng.choice([101, 1009, 10007, 65537])
        n = rng.randint(1, 10 ** 6)
        r = rng.randint(2, 4)
        p = derive_params(n, q, r)
        # U and V are the exact floors of the defining expressions
        assert (16 * r * (p.U + 1)) ** (2 * r) * q > n ** (2 * r)
        assert (p.V + 1) ** (2 * r) > r ** (2 * r) * q
        assert p.V ** (2 * r) <= r ** (2 * r) * q
        assert 16 * p.U * p.V <= n  # UV <= N/16


def test_feasible_params_respect_collision_hypotheses():
    p = feasible_params(63, 10007, 2)
    assert p.U == 63
    assert p.U <= p.N and p.U * p.N <= p.q
    assert p.source == "fallback"
    tight = feasible_params(5000, 10007, 2)
    assert tight.U == 2  # q // N
    assert resolve_params(5000, 10007, 2).source == "derived"
    assert resolve_params(63, 10007, 2).source == "fallback"


def test_bound_value_examples():
    pv = bound_value("polya_vinogradov", 1, 10007)
    assert abs(pv.value - math.sqrt(10007) * math.log(10007)) < 1e-9
    n = iroot(10007, 2)
    ref = bound_value("refined_14r", n, 10007, r=2)
    want = n ** 0.5 * 10007 ** (3 / 16) * math.log(10007) ** 0.125
    assert abs(ref.value - want) < 1e-9
    with pytest.raises(UnknownVariant):
        bound_value("nope", 10, 101, r=2)
    with pytest.raises(ValueError):
        bound_value("ik_1r", 10, 101, r=1)
    assert bound_value("burgess_classic", 10, 101, r=1).value > 0
    assert bound_value("grh", 100, 101).grh_delta == 0.05


def test_variant_ordering_chain():
    rng = random.Random(12)
    for _ in range(100):
        q = rng.choice([3, 5, 101, 1009, 10007, 999983])
        n = rng.randint(1, int(math.isqrt(q)) + 5)
        r = rng.randint(2, 4)
        vals = [bound_value(v, n, q, r=r).value for v in ORDERED_VARIANTS]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_holder_chain_passes(mod101):
    chi = mod101.legendre()
    rep = holder_chain(chi, 0, 50, 2)
    assert rep.passed and rep.exact
    assert rep.first_moment == 50 * rep.rough_count
    assert rep.holder_lhs == rep.W ** 4
    assert rep.holder_rhs == (rep.first_moment ** 2 * rep.second_moment
                              * rep.moment2r)


def test_holder_chain_collected_equals_direct(mod101, mod10007):
    for mod, n in ((mod101, 6), (mod10007, 39)):
        chi = mod.legendre()
        rep = holder_chain(chi, 3, n, 2)
        assert rep.W == holder_chain_direct_w(chi, 3, n, rep.params)


def test_holder_chain_complex_character(mod101):
    chi = mod101.character(4)
    rep = holder_chain(chi, 0, 6, 2)
    assert rep.passed and not rep.exact


def test_holder_chain_single_unit_rough(mod101):
    # z above U forces the rough set down to {1}
    chi = mod101.legendre()
    params = BurgessParams(N=6, q=101, r=2, U=2, V=6, z=2.5,
                           degenerate=False, in_refined_range=True,
                           source="override")
    rep = holder_chain(chi, 0, 6, 2, params=params)
    assert rep.passed


def test_holder_chain_degenerate_error(mod101):
    chi = mod101.legendre()
    with pytest.raises(DegenerateParams):
        holder_chain(chi, 0, 101, 2)  # N = q makes q // N = 1


def test_extremal_scan_orthogonality(mod101):
    res = extremal_scan(101, 50, 101, [0])
    assert res.max_abs_sum == 0.0
    assert all(v == 0 for v in res.worst_ratio.values())


def test_extremal_scan_fluctuation(mod101):
    res = extremal_scan(101, 50, 10, list(range(0, 91)))
    assert res.max_abs_sum <= 10
    assert res.max_abs_sum >= math.sqrt(10) * 0.3
    assert res.worst_ratio["polya_vinogradov"] < 1.0
    assert res.windows == 91


def test_extremal_scan_conjugation_invariant():
    for m in (7, 33):
        a = extremal_scan(101, m, 17, list(range(50)))
        b = extremal_scan(101, (101 - 1 - m) % 100, 17, list(range(50)))
        assert abs(a.max_abs_sum - b.max_abs_sum) < 1e-9


def test_max_window_spread_small():
    # q=5 prefix sums [0,1,0,-1,0,0]: spread 2
    assert max_window_spread(5) == 2.0
    assert max_window_spread(3) == 1.0


def test_pv_scan_regression():
    worst, worst_q, ratios = pv_ratio_scan(10 ** 3)
    assert worst < 1.0
    assert all(r < 1.0 for _, r in ratios)
    assert worst_q == baselines.PV_WORST_PRIME  # attained low in the range


def test_least_nonresidue_examples():
    assert least_nonresidue(7) == 3
    assert least_nonresidue(3) == 2
    assert least_nonresidue(41) == 3
    with pytest.raises(ValueError):
        least_nonresidue(8)


def test_nonresidue_gap_examples():
    assert nonresidue_max_gap(7) == (2, 1)
    assert nonresidue_max_gap(3) == (1, 1)


def test_nonresidue_gap_baseline_q10007():
    gap, start = nonresidue_max_gap(10007)
    assert gap == baselines.NONRESIDUE_GAP_Q10007
    cap = math.ceil(10007 ** 0.25 * math.log(10007))
    assert gap <= cap * baselines.NONRESIDUE_GAP_CONSTANT + 1e-9


def test_least_nonresidue_within_first_gap():
    for q in (3, 7, 11, 101, 1009, 10007):
        gap, start = nonresidue_max_gap(q)
        assert least_nonresidue(q) <= start + gap


def test_holder_c0_standin_stable():
    measured = baselines.measure_holder_c0_standin()
    assert abs(measured - baselines.HOLDER_C0_STANDIN) < 1e-12


@given(st.integers(1, 10 ** 5), st.sampled_from([101, 1009, 10007]),
       st.integers(2, 4))
@settings(max_examples=80, deadline=None)
def test_uv_budget_property(n, q, r):
    p = derive_params(n, q, r)
    assert 16 * p.U * p.V <= n
    assert p.degenerate == (p.U < 2)
