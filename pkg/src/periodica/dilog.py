"""Numerical verification of the dilogarithm identities attached to seed periods.

Given a verified seed period, positive reals propagated through the
coefficient exchange relation satisfy the associated Y-system; the Rogers
dilogarithm values summed over one fundamental window equal the counts of
negative/positive tropical coefficient monomials, independently of the
initial values.  For skew-symmetrizable matrices each site is weighted by
the right-symmetrizer entry and the result is flagged as conditional.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .periodicity import check_seed_period_tropical
from .seeds import run_tropical
from .tysystems import SliceSchedule, _y_exponents

PI2_6 = math.pi * math.pi / 6.0


class SignCoherenceError(RuntimeError):
    """A tropical coefficient came out with mixed signs."""


def li2(x: float) -> float:
    """Dilogarithm sum_{k>=1} x^k / k^2 on [0, 1].

    Power series below 1/2, reflection onto [0, 1/2] above.
    """
    if x < 0.0 or x > 1.0:
        raise ValueError(f"li2 argument {x} outside [0, 1]")
    if x == 1.0:
        return PI2_6
    if x > 0.5:
        return PI2_6 - math.log(x) * math.log1p(-x) - li2(1.0 - x)
    total = 0.0
    term = x
    k = 1
    while abs(term) > 1e-13 * (k * k):
        total += term / (k * k)
        k += 1
        term *= x
    return total


def rogers_L(x: float) -> float:
    """Rogers dilogarithm on [0, 1]; L(0) = 0, L(1) = pi^2/6."""
    if x < 0.0 or x > 1.0:
        raise ValueError(f"rogers_L argument {x} outside [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI2_6
    return li2(x) + 0.5 * math.log(x) * math.log1p(-x)


def kahan_sum(values) -> float:
    total = 0.0
    carry = 0.0
    for v in values:
        y = v - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


def _require_seed_period(schedule: SliceSchedule) -> None:
    if not schedule.spec.is_identity_nu():
        raise ValueError("dilogarithm checks need an identity-relabeling seed period")
    verdict = check_seed_period_tropical(schedule.base, schedule.spec)
    if not verdict.seed_periodic:
        raise ValueError(
            f"sequence is not a seed period (witness {verdict.witness}); refusing"
        )


@dataclass
class NumericYTrace:
    schedule: SliceSchedule
    initial: list  # the initial values actually used (after any rescale)
    values: dict  # (i, u) in the fundamental window -> positive float
    signs: dict  # (i, u) -> +1 | -1
    period_residual: float

    def sites(self):
        return self.schedule.window_sites()


def propagate_numeric(
    schedule: SliceSchedule, initial_y, check: bool = True
) -> NumericYTrace:
    """Run the coefficient exchange relation over positive reals.

    Records the value and the tropical sign at every forward point of the
    fundamental window, plus how far the next window drifts from this one
    (exactly zero in theory for a seed period).  If the floats overflow,
    the run restarts once from initial values compressed toward 1; a
    second failure is a hard error.
    """
    if check:
        _require_seed_period(schedule)
    n = schedule.n
    y0 = [float(v) for v in initial_y]
    if len(y0) != n or any(v <= 0 for v in y0):
        raise ValueError("initial coefficients must be n positive reals")
    c_states = _tropical_signs(schedule)
    try:
        values, second = _propagate(schedule, y0)
    except OverflowError:
        y0 = [math.sqrt(v) for v in y0]
        values, second = _propagate(schedule, y0)  # second failure propagates
    drift = max(
        abs(math.log(second[s]) - math.log(values[s])) for s in values
    )
    return NumericYTrace(schedule, y0, values, c_states, drift)


def _propagate(schedule: SliceSchedule, initial_y):
    n = schedule.n
    omega = schedule.omega
    y = list(initial_y)
    values: dict = {}
    second: dict = {}
    for u in range(2 * omega):
        b = schedule.b_at(u)
        sl = schedule.slice_at[u % omega]
        for k in sl:
            if not math.isfinite(y[k]) or y[k] <= 0.0:
                raise OverflowError("coefficient propagation left the float range")
            target = values if u < omega else second
            target[(k, u % omega)] = y[k]
        for k in sl:
            yk = y[k]
            for i in range(n):
                if i == k:
                    continue
                e = b[k][i]
                if e >= 0:
                    y[i] /= (1.0 + 1.0 / yk) ** e
                else:
                    y[i] *= (1.0 + yk) ** (-e)
            y[k] = 1.0 / yk
    return values, second


def _tropical_signs(schedule: SliceSchedule) -> dict:
    """Sign of the tropical coefficient at each window forward point."""
    seq = [k for sl in schedule.slice_at for k in sl]
    _, _, states = run_tropical(schedule.base, seq, record=True)
    signs = {}
    pos = 0
    for u, sl in enumerate(schedule.slice_at):
        for k in sl:
            _, c, kk = states[pos]
            assert kk == k
            col = [c[r][k] for r in range(schedule.n)]
            if all(v == 0 for v in col):
                raise SignCoherenceError(f"zero tropical coefficient at ({k}, {u})")
            if all(v >= 0 for v in col):
                signs[(k, u)] = 1
            elif all(v <= 0 for v in col):
                signs[(k, u)] = -1
            else:
                raise SignCoherenceError(
                    f"mixed-sign tropical coefficient at ({k}, {u}): {col}"
                )
            pos += 1
    return signs


def count_tropical_signs(schedule: SliceSchedule, check: bool = True):
    """(N+, N-) over the fundamental window and the weighted pair."""
    if check:
        _require_seed_period(schedule)
    signs = _tropical_signs(schedule)
    d_tilde = schedule.base.d_tilde
    n_plus = sum(1 for s in signs.values() if s > 0)
    n_minus = sum(1 for s in signs.values() if s < 0)
    w_plus = sum(d_tilde[i] for (i, _), s in signs.items() if s > 0)
    w_minus = sum(d_tilde[i] for (i, _), s in signs.items() if s < 0)
    return n_plus, n_minus, w_plus, w_minus


def trace_y_system_residual(trace: NumericYTrace) -> float:
    """How well the recorded window satisfies the generated Y-system."""
    schedule = trace.schedule
    omega = schedule.omega

    def val(j, v):
        return trace.values[(j, v % omega)]

    worst = 0.0
    for (i, u) in schedule.window_sites():
        lam, plus, minus = _y_exponents(schedule, i, u)
        lhs = math.log(val(i, u)) + math.log(val(i, u + lam))
        rhs = 0.0
        for (j, v), e in plus.items():
            rhs += e * math.log1p(val(j, v))
        for (j, v), e in minus.items():
            rhs -= e * math.log1p(1.0 / val(j, v))
        worst = max(worst, abs(lhs - rhs))
    return worst


@dataclass
class DilogReport:
    sum_minus: float  # (6/pi^2) * sum of weighted L(Y/(1+Y))
    sum_plus: float  # (6/pi^2) * sum of weighted L(1/(1+Y))
    n_plus: int
    n_minus: int
    weighted_plus: int
    weighted_minus: int
    weighted_sites: int
    residual_minus: float
    residual_plus: float
    pairing_residual: float
    trial_spread: float
    max_y_system_residual: float
    trials: int
    tolerance: float
    conditional: bool
    ok: bool
    per_trial: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "sum_minus": self.sum_minus,
            "sum_plus": self.sum_plus,
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "weighted_plus": self.weighted_plus,
            "weighted_minus": self.weighted_minus,
            "weighted_sites": self.weighted_sites,
            "residual_minus": self.residual_minus,
            "residual_plus": self.residual_plus,
            "pairing_residual": self.pairing_residual,
            "trial_spread": self.trial_spread,
            "max_y_system_residual": self.max_y_system_residual,
            "trials": self.trials,
            "tolerance": self.tolerance,
            "conditional": self.conditional,
            "ok": self.ok,
            "per_trial": self.per_trial,
        }


def _draw_initial(rng: random.Random, n: int) -> list:
    return [10.0 ** rng.uniform(-1.0, 1.0) for _ in range(n)]


def dilog_sums(trace: NumericYTrace):
    """Weighted (6/pi^2)-normalized Rogers sums over the window."""
    d_tilde = trace.schedule.base.d_tilde
    minus_terms = []
    plus_terms = []
    for (i, u), y in trace.values.items():
        w = d_tilde[i]
        minus_terms.append(w * rogers_L(y / (1.0 + y)))
        plus_terms.append(w * rogers_L(1.0 / (1.0 + y)))
    return kahan_sum(minus_terms) / PI2_6, kahan_sum(plus_terms) / PI2_6


def verify_identity(
    schedule: SliceSchedule,
    trials: int = 5,
    tolerance: float = 1e-9,
    rng_seed: int = 2026,
) -> DilogReport:
    """Check both dilogarithm identities over random positive initial data."""
    if trials < 1:
        raise ValueError("at least one trial is required")
    _require_seed_period(schedule)
    n_plus, n_minus, w_plus, w_minus = count_tropical_signs(schedule, check=False)
    weighted_sites = w_plus + w_minus
    rng = random.Random(rng_seed)

    per_trial = []
    sums_minus = []
    sums_plus = []
    max_y_res = 0.0
    for _ in range(trials):
        init = _draw_initial(rng, schedule.n)
        trace = propagate_numeric(schedule, init, check=False)
        sm, sp = dilog_sums(trace)
        max_y_res = max(
            max_y_res, trace_y_system_residual(trace), trace.period_residual
        )
        sums_minus.append(sm)
        sums_plus.append(sp)
        per_trial.append({"initial": trace.initial, "sum_minus": sm, "sum_plus": sp})

    sm = sums_minus[0]
    sp = sums_plus[0]
    spread = max(
        max(sums_minus) - min(sums_minus), max(sums_plus) - min(sums_plus)
    )
    residual_minus = max(abs(v - w_minus) for v in sums_minus)
    residual_plus = max(abs(v - w_plus) for v in sums_plus)
    pairing = max(
        abs(a + b - weighted_sites) for a, b in zip(sums_minus, sums_plus)
    )
    report = DilogReport(
        sum_minus=sm,
        sum_plus=sp,
        n_plus=n_plus,
        n_minus=n_minus,
        weighted_plus=w_plus,
        weighted_minus=w_minus,
        weighted_sites=weighted_sites,
        residual_minus=residual_minus,
        residual_plus=residual_plus,
        pairing_residual=pairing,
        trial_spread=spread,
        max_y_system_residual=max_y_res,
        trials=trials,
        tolerance=tolerance,
        conditional=not schedule.base.is_skew_symmetric(),
        ok=(
            residual_minus < tolerance
            and residual_plus < tolerance
            and pairing < tolerance
            and spread < tolerance
        ),
        per_trial=per_trial,
    )
    return report


@dataclass
class ConstancyReport:
    spread: float
    max_gradient: float
    draws: int
    epsilon: float
    ok: bool

    def to_json(self) -> dict:
        return {
            "spread": self.spread,
            "max_gradient": self.max_gradient,
            "draws": self.draws,
            "epsilon": self.epsilon,
            "ok": self.ok,
        }


def constancy_probe(
    schedule: SliceSchedule,
    base_point=None,
    epsilon: float = 1e-5,
    draws: int = 10,
    rng_seed: int = 2026,
    spread_tol: float = 1e-9,
    gradient_tol: float = 1e-6,
) -> ConstancyReport:
    """Initial-value independence of the dilogarithm sum.

    (a) spread of the sum over random draws; (b) central finite-difference
    gradient at the base point.  Both must vanish numerically.
    """
    _require_seed_period(schedule)
    n = schedule.n
    if base_point is None:
        base_point = [1.0] * n
    rng = random.Random(rng_seed)

    def sum_at(point):
        trace = propagate_numeric(schedule, point, check=False)
        return dilog_sums(trace)[0]

    sums = [sum_at(_draw_initial(rng, n)) for _ in range(max(draws, 10))]
    spread = max(sums) - min(sums)

    max_grad = 0.0
    for i in range(n):
        hi = list(base_point)
        lo = list(base_point)
        hi[i] += epsilon
        lo[i] -= epsilon
        grad = (sum_at(hi) - sum_at(lo)) / (2.0 * epsilon)
        max_grad = max(max_grad, abs(grad))
    return ConstancyReport(
        spread=spread,
        max_gradient=max_grad,
        draws=max(draws, 10),
        epsilon=epsilon,
        ok=spread < spread_tol and max_grad < gradient_tol,
    )
