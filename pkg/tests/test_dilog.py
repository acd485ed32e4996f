"""Rogers dilogarithm, numeric coefficient propagation, identity checks."""

import math
import random

import pytest

from periodica.catalog import get_entry
from periodica.periodicity import NuPeriodSpec
from periodica.seeds import ExchangeMatrix, SymbolicSeed
from periodica.semifield import trop_evaluate
from periodica.dilog import (
    PI2_6,
    constancy_probe,
    count_tropical_signs,
    kahan_sum,
    li2,
    propagate_numeric,
    rogers_L,
    trace_y_system_residual,
    verify_identity,
)
from periodica.tysystems import build_schedule

A1 = ExchangeMatrix.from_rows([[0]])
A2 = get_entry("A2").matrix


def ident(n):
    return tuple(range(n))


def entry_schedule(name):
    e = get_entry(name)
    claim = e.seed_period_claim()
    return build_schedule(e.matrix, claim.spec(), claim.slices)


# -- Rogers dilogarithm ---------------------------------------------------------


def test_rogers_endpoints_exact():
    assert rogers_L(0.0) == 0.0
    assert rogers_L(1.0) == PI2_6


def test_rogers_half():
    assert abs(rogers_L(0.5) - math.pi**2 / 12) < 1e-12


def test_rogers_euler_relation():
    rng = random.Random(42)
    for _ in range(100):
        x = rng.random()
        assert abs(rogers_L(x) + rogers_L(1.0 - x) - PI2_6) < 1e-12


def test_rogers_domain():
    for bad in (-0.1, 1.1):
        with pytest.raises(ValueError):
            rogers_L(bad)
        with pytest.raises(ValueError):
            li2(bad)


def test_li2_against_mpmath():
    mp = pytest.importorskip("mpmath")
    rng = random.Random(7)
    xs = [rng.random() for _ in range(60)] + [0.0, 0.5, 1.0, 1e-12, 1 - 1e-12]
    for x in xs:
        assert abs(li2(x) - float(mp.polylog(2, x))) < 1e-12


def test_rogers_against_mpmath_integral():
    mp = pytest.importorskip("mpmath")

    def L_ref(x):
        if x in (0.0, 1.0):
            return x * PI2_6
        return float(mp.polylog(2, x) + mp.log(x) * mp.log(1 - x) / 2)

    for x in [0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99]:
        assert abs(rogers_L(x) - L_ref(x)) < 1e-12


def test_kahan_sum():
    assert sum([0.1] * 10) != 1.0  # plain float accumulation drifts
    assert kahan_sum([0.1] * 10) == 1.0


# -- numeric propagation ----------------------------------------------------------


def test_propagate_isolated_vertex():
    sched = build_schedule(A1, NuPeriodSpec((0, 0), (0,)), slices=[(0,), (0,)])
    trace = propagate_numeric(sched, [2.5])
    assert trace.values[(0, 0)] == 2.5
    assert abs(trace.values[(0, 1)] - 1 / 2.5) < 1e-15


def test_propagate_a2_satisfies_y_system_and_period():
    sched = entry_schedule("A2")
    trace = propagate_numeric(sched, [1.0, 1.0])
    assert len(trace.values) == 10
    assert trace_y_system_residual(trace) < 1e-9
    assert trace.period_residual < 1e-9


def test_propagate_rejects_bad_input():
    sched = entry_schedule("A2")
    with pytest.raises(ValueError):
        propagate_numeric(sched, [1.0, -1.0])
    with pytest.raises(ValueError):
        propagate_numeric(sched, [1.0])
    # a non-period schedule is refused outright
    half = build_schedule(A2, NuPeriodSpec((0, 1), ident(2)))
    with pytest.raises(ValueError):
        propagate_numeric(half, [1.0, 1.0])


# -- tropical sign counts ----------------------------------------------------------


def test_sign_counts_a2_against_symbolic_oracle():
    """Signs from the integer run must match tropical evaluation of the full
    universal-semifield coefficients, and the frozen counts are (6, 4)."""
    sched = entry_schedule("A2")
    n_plus, n_minus, w_plus, w_minus = count_tropical_signs(sched)
    assert (n_plus, n_minus) == (6, 4)
    assert (w_plus, w_minus) == (6, 4)

    trace = propagate_numeric(sched, [1.0, 1.0])
    seed = SymbolicSeed.initial(A2)
    for u, k in enumerate([0, 1] * 5):
        mono = trop_evaluate(seed.y[k], 4)  # joint variables: y-vars at 2, 3
        sign = mono.sign()
        assert sign != 0
        assert trace.signs[(k, u)] == sign
        seed = seed.mutate(k)


FROZEN_SIGN_COUNTS = {
    # computed by the integer run and cross-checked against the symbolic
    # tropical evaluation on the small entries
    "A1": (1, 1),
    "A2": (6, 4),
    "A3": (12, 6),
    "A4": (20, 8),
    "A5": (30, 10),
    "A6": (42, 12),
    "A4-level4": (48, 60),
    "B4-level4": (152, 200),
    "sine-gordon-D13": (468, 156),
}


@pytest.mark.parametrize("name,expected", sorted(FROZEN_SIGN_COUNTS.items()))
def test_sign_count_fixtures(name, expected):
    sched = entry_schedule(name)
    n_plus, n_minus, _, _ = count_tropical_signs(sched)
    assert (n_plus, n_minus) == expected
    assert n_plus + n_minus == len(sched.forward)


def test_sign_counts_weighted_equal_plain_for_quivers():
    sched = entry_schedule("A3")
    n_plus, n_minus, w_plus, w_minus = count_tropical_signs(sched)
    assert (n_plus, n_minus) == (w_plus, w_minus)


def test_mixed_sign_raises():
    # a non-period schedule reaches mixed-sign columns only with check off;
    # simplest guard test: the period precondition trips first
    half = build_schedule(A2, NuPeriodSpec((0, 1), ident(2)))
    with pytest.raises(ValueError):
        count_tropical_signs(half)


# -- the identities -----------------------------------------------------------------


def test_identity_a2_five_trials():
    sched = entry_schedule("A2")
    rep = verify_identity(sched, trials=5, rng_seed=321)
    assert rep.ok
    assert rep.residual_minus < 1e-9 and rep.residual_plus < 1e-9
    assert abs(rep.sum_minus - 4) < 1e-9 and abs(rep.sum_plus - 6) < 1e-9
    assert rep.pairing_residual < 1e-9
    assert rep.trial_spread < 1e-9
    assert not rep.conditional
    assert len(rep.per_trial) == 5


def test_identity_a3():
    rep = verify_identity(entry_schedule("A3"), trials=3, rng_seed=5)
    assert rep.ok and (rep.n_plus, rep.n_minus) == (12, 6)


def test_identity_rejects_non_period():
    half = build_schedule(A2, NuPeriodSpec((0, 1), ident(2)))
    with pytest.raises(ValueError):
        verify_identity(half, trials=1)


def test_weighted_identity_skew_symmetrizable():
    """Rank-2 non-symmetric matrix: find its seed period with the symbolic
    oracle, then check the weighted identities (conditional)."""
    from periodica.periodicity import check_seed_period_symbolic

    B = ExchangeMatrix.from_rows([[0, 2], [-1, 0]])
    period = None
    for reps in range(1, 8):
        spec = NuPeriodSpec((0, 1) * reps, ident(2))
        if check_seed_period_symbolic(B, spec).seed_periodic:
            period = spec
            break
    assert period is not None and len(period.sequence) == 6
    sched = build_schedule(B, period)
    n_plus, n_minus, w_plus, w_minus = count_tropical_signs(sched)
    assert n_plus + n_minus == 6
    assert (w_plus, w_minus) != (n_plus, n_minus)  # weights actually differ
    rep = verify_identity(sched, trials=4, rng_seed=11)
    assert rep.conditional
    assert rep.ok
    assert abs(rep.sum_minus - w_minus) < 1e-9
    assert abs(rep.sum_plus - w_plus) < 1e-9


def test_zero_infinity_limit_matches_signs():
    sched = entry_schedule("A2")
    for t in (1e-3, 1e-6):
        trace = propagate_numeric(sched, [t, t])
        for site, y in trace.values.items():
            assert math.copysign(1, math.log(y)) == -trace.signs[site]


# -- constancy ------------------------------------------------------------------------


def test_constancy_probe_a2():
    rep = constancy_probe(entry_schedule("A2"), base_point=[1.0, 1.0], epsilon=1e-5)
    assert rep.ok
    assert rep.spread < 1e-9
    assert rep.max_gradient < 1e-6
    assert rep.draws >= 10


def test_constancy_probe_refuses_non_period():
    not_period = build_schedule(A1, NuPeriodSpec((0,), (0,)))
    with pytest.raises(ValueError):
        constancy_probe(not_period)
