"""Mutation schedules from sliced periods, and the induced T- and Y-systems.

A slice decomposition of a relabeling-period turns the composite mutation
into a doubly infinite sequence of stages; the coefficients and cluster
variables read off at the forward mutation points obey closed systems of
relations whose exponents come from the stage matrices.  Everything here
is periodic with horizon ``omega = t * g`` (slice count times relabeling
order), so one window of data determines the systems.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import log

from .periodicity import NuPeriodSpec, check_matrix_period, compose
from .seeds import ExchangeMatrix


class SliceConditionError(ValueError):
    """A slice contains two indices whose exchange entry is nonzero."""


@dataclass(frozen=True)
class SliceSchedule:
    base: ExchangeMatrix
    spec: NuPeriodSpec
    slices: tuple  # tuple[tuple[int, ...], ...] partitioning the sequence
    matrices: tuple  # raw integer matrices B(0..omega), length omega + 1
    slice_at: tuple  # index tuple mutated at stage u, length omega
    forward: tuple  # sorted window forward points (u, i) -> stored as (i, u)
    occurrences: dict  # index -> sorted tuple of window stages
    orbit_lengths: tuple  # nu-orbit length per index
    J: frozenset  # indices that get mutated at all
    regular: bool

    @property
    def t(self) -> int:
        return len(self.slices)

    @property
    def g(self) -> int:
        return self.spec.g

    @property
    def omega(self) -> int:
        return len(self.slice_at)

    @property
    def n(self) -> int:
        return self.base.n

    def b_at(self, u: int):
        return self.matrices[u % self.omega]

    def is_forward(self, i: int, u: int) -> bool:
        return (u % self.omega) in self.occurrences.get(i, ())

    def lambda_plus(self, i: int, u: int) -> int:
        occ = self.occurrences[i]
        r = u % self.omega
        pos = occ.index(r)
        if pos + 1 < len(occ):
            return occ[pos + 1] - r
        return occ[0] + self.omega - r

    def lambda_minus(self, i: int, u: int) -> int:
        occ = self.occurrences[i]
        r = u % self.omega
        pos = occ.index(r)
        if pos > 0:
            return r - occ[pos - 1]
        return r - (occ[-1] - self.omega)

    def next_forward(self, i: int, u: int) -> int:
        """Smallest forward stage of index i strictly after u."""
        occ = self.occurrences.get(i)
        if not occ:
            raise KeyError(f"index {i} is never mutated")
        q, r = divmod(u, self.omega)
        for v in occ:
            if v > r:
                return q * self.omega + v
        return (q + 1) * self.omega + occ[0]

    def window_sites(self) -> list:
        return [(i, u) for (u, i) in sorted((u, i) for (i, u) in self.forward)]

    def to_json(self) -> dict:
        return {
            "sequence": [k + 1 for k in self.spec.sequence],
            "slices": [[k + 1 for k in sl] for sl in self.slices],
            "nu": [v + 1 for v in self.spec.nu],
            "t": self.t,
            "g": self.g,
            "omega": self.omega,
            "regular": self.regular,
            "forward_points": [[i + 1, u] for (i, u) in self.window_sites()],
            "lambda_plus": {
                f"{i + 1},{u}": self.lambda_plus(i, u) for (i, u) in self.window_sites()
            },
            "J": sorted(i + 1 for i in self.J),
        }


def build_schedule(B: ExchangeMatrix, spec: NuPeriodSpec, slices=None) -> SliceSchedule:
    """Validate a slice decomposition of a matrix period and precompute one window.

    ``slices`` defaults to the maximal decomposition into singletons, which
    always satisfies the slice condition.
    """
    if not spec.sequence:
        raise ValueError("an empty sequence has no schedule")
    if slices is None:
        slices = tuple((k,) for k in spec.sequence)
    else:
        slices = tuple(tuple(sl) for sl in slices)
        flat = tuple(k for sl in slices for k in sl)
        if flat != tuple(spec.sequence):
            raise ValueError("slices do not partition the sequence in order")
    if not check_matrix_period(B, spec):
        raise ValueError("the sequence is not a matrix period under the given relabeling")

    n = B.n
    t = len(slices)
    g = spec.g
    omega = t * g

    nu_pow = tuple(range(n))
    stage_slices = []
    for _ in range(g):
        for sl in slices:
            stage_slices.append(tuple(nu_pow[k] for k in sl))
        nu_pow = compose(spec.nu, nu_pow)

    matrices = [B.b]
    cur = B
    for u, sl in enumerate(stage_slices):
        for a in sl:
            for bb in sl:
                if a != bb and cur.b[a][bb] != 0:
                    raise SliceConditionError(
                        f"slice condition fails at stage {u}: "
                        f"b[{a + 1}][{bb + 1}] = {cur.b[a][bb]} != 0"
                    )
        for k in sl:
            cur = cur.mutate(k)
        matrices.append(cur.b)
    if matrices[-1] != B.b:
        raise AssertionError("window did not close up; matrix period check was wrong")

    forward = []
    occurrences = {}
    for u, sl in enumerate(stage_slices):
        for i in sl:
            forward.append((i, u))
            occurrences.setdefault(i, []).append(u)
    occurrences = {i: tuple(sorted(v)) for i, v in occurrences.items()}

    orbit = [0] * n
    for i in range(n):
        length = 1
        j = spec.nu[i]
        while j != i:
            j = spec.nu[j]
            length += 1
        orbit[i] = length

    J = frozenset(occurrences)
    orbits_of_entries = set()
    distinct = True
    for k in spec.sequence:
        rep = min(_orbit_of(spec.nu, k))
        if rep in orbits_of_entries:
            distinct = False
        orbits_of_entries.add(rep)
    regular = (J == frozenset(range(n))) and distinct

    return SliceSchedule(
        base=B,
        spec=spec,
        slices=slices,
        matrices=tuple(matrices),
        slice_at=tuple(stage_slices),
        forward=tuple(forward),
        occurrences=occurrences,
        orbit_lengths=tuple(orbit),
        J=J,
        regular=regular,
    )


def _orbit_of(nu, i):
    out = [i]
    j = nu[i]
    while j != i:
        out.append(j)
        j = nu[j]
    return out


@dataclass(frozen=True)
class TYRelation:
    kind: str  # "Y" | "T"
    site: tuple  # (i, u)
    partner: tuple  # (i, u + lambda_plus)
    plus: tuple  # sorted ((j, v), exp), exp > 0
    minus: tuple
    external_plus: tuple = ()  # sorted (j, exp) for indices never mutated
    external_minus: tuple = ()
    with_coefficients: bool = True

    def plus_map(self) -> dict:
        return dict(self.plus)

    def minus_map(self) -> dict:
        return dict(self.minus)

    def to_json(self) -> dict:
        data = {
            "kind": self.kind,
            "site": [self.site[0] + 1, self.site[1]],
            "partner": [self.partner[0] + 1, self.partner[1]],
            "plus_exponents": [[[j + 1, v], e] for (j, v), e in self.plus],
            "minus_exponents": [[[j + 1, v], e] for (j, v), e in self.minus],
        }
        if self.kind == "T":
            data["external_plus"] = [[j + 1, e] for j, e in self.external_plus]
            data["external_minus"] = [[j + 1, e] for j, e in self.external_minus]
            data["with_coefficients"] = self.with_coefficients
        return data


def _y_exponents(schedule: SliceSchedule, i: int, u: int):
    """Exponent maps of the coefficient relation at forward point (i, u)."""
    lam = schedule.lambda_plus(i, u)
    plus, minus = {}, {}
    for v in range(u + 1, u + lam):
        b = schedule.b_at(v)
        for j in schedule.slice_at[v % schedule.omega]:
            e = b[j][i]
            if e < 0:
                plus[(j, v)] = plus.get((j, v), 0) - e
            elif e > 0:
                minus[(j, v)] = minus.get((j, v), 0) + e
    return lam, plus, minus


def _t_exponents(schedule: SliceSchedule, i: int, u: int):
    """Exponent maps of the cluster relation at forward point (i, u)."""
    lam = schedule.lambda_plus(i, u)
    b = schedule.b_at(u)
    plus, minus, ext_plus, ext_minus = {}, {}, {}, {}
    for j in range(schedule.n):
        e = b[j][i]
        if e == 0 or j == i:
            continue
        if j in schedule.J:
            v = schedule.next_forward(j, u)
            if e > 0:
                plus[(j, v)] = e
            else:
                minus[(j, v)] = -e
        else:
            if e > 0:
                ext_plus[j] = e
            else:
                ext_minus[j] = -e
    return lam, plus, minus, ext_plus, ext_minus


def _sorted_items(d: dict) -> tuple:
    return tuple(sorted(d.items(), key=lambda kv: (kv[0][1], kv[0][0]) if isinstance(kv[0], tuple) else kv[0]))


def gen_y_system(schedule: SliceSchedule) -> list:
    out = []
    for (i, u) in schedule.window_sites():
        lam, plus, minus = _y_exponents(schedule, i, u)
        out.append(
            TYRelation(
                kind="Y",
                site=(i, u),
                partner=(i, u + lam),
                plus=_sorted_items(plus),
                minus=_sorted_items(minus),
            )
        )
    return out


def gen_t_system(schedule: SliceSchedule, with_coefficients: bool = True) -> list:
    out = []
    for (i, u) in schedule.window_sites():
        lam, plus, minus, ext_plus, ext_minus = _t_exponents(schedule, i, u)
        out.append(
            TYRelation(
                kind="T",
                site=(i, u),
                partner=(i, u + lam),
                plus=_sorted_items(plus),
                minus=_sorted_items(minus),
                external_plus=tuple(sorted(ext_plus.items())),
                external_minus=tuple(sorted(ext_minus.items())),
                with_coefficients=with_coefficients,
            )
        )
    return out


# -- duality of the exponent functions ----------------------------------------


@dataclass
class DualityReport:
    ok: bool
    checked_pairs: int
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked_pairs": self.checked_pairs,
            "violations": self.violations[:32],
        }


def _shifted_lookup(rel_map, omega, site_i, site_u, key_j, key_v):
    """Exponent pair (plus, minus) of the relation at (site_i, site_u) on key
    (key_j, key_v), using one-window periodicity."""
    r = site_u % omega
    shift = site_u - r
    rel = rel_map[(site_i, r)]
    key = (key_j, key_v - shift)
    return rel.plus_map().get(key, 0), rel.minus_map().get(key, 0)


def check_duality(schedule: SliceSchedule, yrels, trels) -> DualityReport:
    """Weighted symmetry between coefficient- and cluster-relation exponents.

    For every window site (i, u) and every forward point (j, v) in a
    two-window band, d_j * G(j, v; i, u - lambda_minus(i, u)) must equal
    d_i * H(i, u; j, v), separately for the plus and minus maps.
    """
    omega = schedule.omega
    d = schedule.base.d
    y_map = {rel.site: rel for rel in yrels}
    t_map = {rel.site: rel for rel in trels}
    checked = 0
    violations = []
    for (i, u) in schedule.window_sites():
        shifted_u = u - schedule.lambda_minus(i, u)
        for j in sorted(schedule.J):
            for base_v in schedule.occurrences[j]:
                for window in (-1, 0, 1):
                    v = base_v + window * omega
                    g_pm = _shifted_lookup(y_map, omega, i, shifted_u, j, v)
                    h_pm = _shifted_lookup(t_map, omega, j, v, i, u)
                    checked += 1
                    for a, (g_e, h_e) in enumerate(zip(g_pm, h_pm)):
                        if d[j] * g_e != d[i] * h_e:
                            violations.append(
                                {
                                    "part": "plus" if a == 0 else "minus",
                                    "j": j + 1,
                                    "v": v,
                                    "i": i + 1,
                                    "u": u,
                                    "weighted_g": d[j] * g_e,
                                    "weighted_h": d[i] * h_e,
                                }
                            )
    return DualityReport(ok=not violations, checked_pairs=checked, violations=violations)


# -- numeric consistency: coefficients from cluster ratios ---------------------


@dataclass
class YFromTReport:
    ok: bool
    max_residual: float
    sites_checked: int
    tolerance: float

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "max_residual": self.max_residual,
            "sites_checked": self.sites_checked,
            "tolerance": self.tolerance,
        }


def y_from_t_check(
    schedule: SliceSchedule,
    trels,
    initial_x=None,
    rng=None,
    tolerance: float = 1e-9,
    windows: int = 4,
) -> YFromTReport:
    """Propagate positive reals through the coefficient-free cluster dynamics,
    define coefficient values as the ratio of the two relation products, and
    measure how well they satisfy the coefficient relations."""
    import random as _random

    n = schedule.n
    omega = schedule.omega
    if rng is None:
        rng = _random.Random(20240 + n)
    if initial_x is None:
        x = [10.0 ** rng.uniform(-1.0, 1.0) for _ in range(n)]
    else:
        x = [float(v) for v in initial_x]
        if len(x) != n or any(v <= 0 for v in x):
            raise ValueError("initial cluster values must be n positive reals")

    t_map = {rel.site: rel for rel in trels}
    external = {j: x[j] for j in range(n) if j not in schedule.J}
    T = {}
    for u in range(windows * omega):
        b = schedule.b_at(u)
        sl = schedule.slice_at[u % omega]
        for k in sl:
            T[(k, u)] = x[k]
        for k in sl:
            plus, minus = 1.0, 1.0
            for j in range(n):
                e = b[j][k]
                if e > 0:
                    plus *= x[j] ** e
                elif e < 0:
                    minus *= x[j] ** (-e)
            x[k] = (plus + minus) / x[k]

    def y_value(i, u):
        r = u % omega
        shift = u - r
        rel = t_map[(i, r)]
        val = 1.0
        for (j, v), e in rel.plus:
            val *= T[(j, v + shift)] ** e
        for (j, v), e in rel.minus:
            val /= T[(j, v + shift)] ** e
        for j, e in rel.external_plus:
            val *= external[j] ** e
        for j, e in rel.external_minus:
            val /= external[j] ** e
        return val

    max_res = 0.0
    sites = 0
    lo, hi = omega, (windows - 2) * omega  # keep every referenced stage in range
    for (i, base_u) in schedule.window_sites():
        for w in range(windows):
            u = base_u + w * omega
            if not (lo <= u < hi):
                continue
            lam, plus, minus = _y_exponents(schedule, i, u)
            lhs = log(y_value(i, u)) + log(y_value(i, u + lam))
            rhs = 0.0
            for (j, v), e in plus.items():
                rhs += e * log(1.0 + y_value(j, v))
            for (j, v), e in minus.items():
                rhs -= e * log(1.0 + 1.0 / y_value(j, v))
            max_res = max(max_res, abs(lhs - rhs))
            sites += 1
    if sites == 0:
        raise ValueError("window too small to evaluate any relation")
    return YFromTReport(
        ok=max_res < tolerance,
        max_residual=max_res,
        sites_checked=sites,
        tolerance=tolerance,
    )


# -- slice independence --------------------------------------------------------


def canonical_relation_key(schedule: SliceSchedule, rels) -> set:
    """Relations with forward points renamed (index, occurrence ordinal),
    invariant under the choice of slices of the same sequence."""
    omega = schedule.omega
    pos = {
        (i, u): k for i, occ in schedule.occurrences.items() for k, u in enumerate(occ)
    }

    def rename(site):
        j, v = site
        q, r = divmod(v, omega)
        return (j, q * len(schedule.occurrences[j]) + pos[(j, r)])

    out = set()
    for rel in rels:
        out.add(
            (
                rel.kind,
                rename(rel.site),
                rename(rel.partner),
                tuple(sorted((rename(k), e) for k, e in rel.plus)),
                tuple(sorted((rename(k), e) for k, e in rel.minus)),
                rel.external_plus,
                rel.external_minus,
            )
        )
    return out


# -- rendering -----------------------------------------------------------------


def _product_latex(symbol, items, inverse=False):
    bits = []
    for (j, v), e in items:
        power = f"^{{{e}}}" if e != 1 else ""
        if symbol == "x":
            bits.append(f"x_{{{j + 1}}}({v}){power}")
        else:
            arg = f"y_{{{j + 1}}}({v})" + ("^{-1}" if inverse else "")
            bits.append(f"\\bigl(1+{arg}\\bigr){power}")
    return " ".join(bits) if bits else "1"


def relation_latex(rel: TYRelation) -> str:
    i, u = rel.site
    _, u2 = rel.partner
    if rel.kind == "Y":
        num = _product_latex("y", rel.plus)
        den = _product_latex("y", rel.minus, inverse=True)
        return (
            f"y_{{{i + 1}}}({u})\\,y_{{{i + 1}}}({u2}) = "
            f"\\frac{{{num}}}{{{den}}}"
        )
    plus = _product_latex("x", rel.plus)
    minus = _product_latex("x", rel.minus)
    for j, e in rel.external_plus:
        plus += f" \\, x_{{{j + 1}}}^{{{e}}}"
    for j, e in rel.external_minus:
        minus += f" \\, x_{{{j + 1}}}^{{{e}}}"
    if rel.with_coefficients:
        pre_p = f"\\frac{{y_{{{i + 1}}}({u})}}{{1+y_{{{i + 1}}}({u})}}\\,"
        pre_m = f"\\frac{{1}}{{1+y_{{{i + 1}}}({u})}}\\,"
    else:
        pre_p = pre_m = ""
    return (
        f"x_{{{i + 1}}}({u})\\,x_{{{i + 1}}}({u2}) = "
        f"{pre_p}{plus} + {pre_m}{minus}"
    )


def render_latex(rels) -> str:
    lines = ["\\begin{align*}"]
    lines += [relation_latex(rel) + " \\\\" for rel in rels]
    lines.append("\\end{align*}")
    return "\n".join(lines)


def balanced_sites(schedule: SliceSchedule, rel: TYRelation):
    """Half-shifted presentation of a relation site, regular schedules only.

    Returns ((i, 2u + t*g_i), (i, 2u2 - t*g_i)) in doubled time units, so the
    two sides sit symmetrically around their midpoint.
    """
    if not schedule.regular:
        raise ValueError("balanced presentation exists only for regular periods")
    i, u = rel.site
    _, u2 = rel.partner
    tg_i = schedule.t * schedule.orbit_lengths[i]
    return (i, 2 * u + tg_i), (i, 2 * u2 - tg_i)


def _half(twice: int) -> str:
    return str(twice // 2) if twice % 2 == 0 else f"{twice}/2"


def relation_latex_balanced(schedule: SliceSchedule, rel: TYRelation) -> str:
    """Symmetric half-shift presentation of one relation.

    Cluster variables move to tilde coordinates shifted forward by half a
    revisit gap, so the two sides of a relation sit at site +- half-gap;
    coefficients keep their sites.  Regular schedules only.
    """
    if not schedule.regular:
        raise ValueError("balanced presentation exists only for regular periods")
    i, u = rel.site
    lam = rel.partner[1] - u
    mid2 = 2 * u + lam  # doubled midpoint of the two raw stages

    def tilde(j, v):
        shift = schedule.t * schedule.orbit_lengths[j]
        return f"\\tilde x_{{{j + 1}}}({_half(2 * v - shift)})"

    if rel.kind == "Y":
        lhs = (
            f"y_{{{i + 1}}}({_half(mid2 - lam)})\\,"
            f"y_{{{i + 1}}}({_half(mid2 + lam)})"
        )
        num = " ".join(
            f"\\bigl(1+y_{{{j + 1}}}({v})\\bigr)" + (f"^{{{e}}}" if e != 1 else "")
            for (j, v), e in rel.plus
        ) or "1"
        den = " ".join(
            f"\\bigl(1+y_{{{j + 1}}}({v})^{{-1}}\\bigr)" + (f"^{{{e}}}" if e != 1 else "")
            for (j, v), e in rel.minus
        ) or "1"
        return f"{lhs} = \\frac{{{num}}}{{{den}}}"

    lhs = (
        f"\\tilde x_{{{i + 1}}}({_half(2 * u - lam)})\\,"
        f"\\tilde x_{{{i + 1}}}({_half(2 * u + lam)})"
    )
    plus = " ".join(
        tilde(j, v) + (f"^{{{e}}}" if e != 1 else "") for (j, v), e in rel.plus
    ) or "1"
    minus = " ".join(
        tilde(j, v) + (f"^{{{e}}}" if e != 1 else "") for (j, v), e in rel.minus
    ) or "1"
    for j, e in rel.external_plus:
        plus += f" \\, x_{{{j + 1}}}^{{{e}}}"
    for j, e in rel.external_minus:
        minus += f" \\, x_{{{j + 1}}}^{{{e}}}"
    u = rel.site[1]
    if rel.with_coefficients:
        pre_p = f"\\frac{{y_{{{i + 1}}}({u})}}{{1+y_{{{i + 1}}}({u})}}\\,"
        pre_m = f"\\frac{{1}}{{1+y_{{{i + 1}}}({u})}}\\,"
    else:
        pre_p = pre_m = ""
    return f"{lhs} = {pre_p}{plus} + {pre_m}{minus}"


def render_latex_balanced(schedule: SliceSchedule, rels) -> str:
    lines = ["\\begin{align*}"]
    lines += [relation_latex_balanced(schedule, rel) + " \\\\" for rel in rels]
    lines.append("\\end{align*}")
    return "\n".join(lines)
