"""Schedules, T/Y-relation generation, duality, numeric consistency."""

import random

import pytest

from periodica.catalog import get_entry
from periodica.periodicity import NuPeriodSpec
from periodica.seeds import ExchangeMatrix, SymbolicSeed
from periodica.semifield import SFRational
from periodica.tysystems import (
    relation_latex_balanced,
    render_latex_balanced,
    SliceConditionError,
    balanced_sites,
    build_schedule,
    canonical_relation_key,
    check_duality,
    gen_t_system,
    gen_y_system,
    relation_latex,
    render_latex,
    y_from_t_check,
)

A2 = get_entry("A2").matrix
A3 = get_entry("A3").matrix
A1 = ExchangeMatrix.from_rows([[0]])


def ident(n):
    return tuple(range(n))


def a2_schedule():
    return build_schedule(A2, NuPeriodSpec((0, 1), ident(2)))


def a4l4_plus_schedule():
    e = get_entry("A4-level4")
    spec = NuPeriodSpec(tuple(e.sequences["plus"][0]), e.permutations["nu"])
    return build_schedule(e.matrix, spec, e.sequences["plus"])


# -- schedule construction -----------------------------------------------------


def test_a2_schedule_shape():
    s = a2_schedule()
    assert s.t == 2 and s.g == 1 and s.omega == 2
    assert s.window_sites() == [(0, 0), (1, 1)]
    assert s.regular
    for (i, u) in s.window_sites():
        assert s.lambda_plus(i, u) == 2
        assert s.lambda_minus(i, u) == 2


def test_slice_condition_violation_names_the_pair():
    with pytest.raises(SliceConditionError) as err:
        build_schedule(A2, NuPeriodSpec((0, 1), ident(2)), slices=[(0, 1)])
    assert "stage 0" in str(err.value) and "b[1][2]" in str(err.value)


def test_maximal_slicing_always_validates():
    for name in ("A2", "A3", "A4-level4", "sine-gordon-D13"):
        e = get_entry(name)
        claim = e.seed_period_claim()
        sched = build_schedule(
            e.matrix, NuPeriodSpec(claim.sequence, claim.nu), None
        )
        assert sched.omega == len(claim.sequence)


def test_non_period_is_rejected():
    with pytest.raises(ValueError):
        build_schedule(A2, NuPeriodSpec((0,), ident(2)))


def test_a4_level4_forward_points_parity():
    s = a4l4_plus_schedule()
    assert s.t == 1 and s.g == 2 and s.omega == 2
    assert s.regular
    e = get_entry("A4-level4")
    # label "(i,j)" at index k; forward exactly when i + j + u is even
    for k, label in enumerate(e.labels):
        i, j = (int(v) for v in label.strip("()").split(","))
        for u in range(2):
            assert s.is_forward(k, u) == ((i + j + u) % 2 == 0)
    for (k, u) in s.window_sites():
        assert s.lambda_plus(k, u) == 2  # t * g_i for a regular period


def test_schedule_periodicity_of_gaps():
    s = a4l4_plus_schedule()
    for (i, u) in s.window_sites():
        assert s.lambda_plus(i, u + s.omega) == s.lambda_plus(i, u)
        assert s.lambda_minus(i, u - s.omega) == s.lambda_minus(i, u)


def test_gap_reciprocity():
    # lambda_plus at the previous visit equals lambda_minus here
    for sched in (a2_schedule(), a4l4_plus_schedule(), _sine_gordon_sched()):
        for (i, u) in sched.window_sites():
            lam_minus = sched.lambda_minus(i, u)
            assert sched.lambda_plus(i, u - lam_minus) == lam_minus


def _sine_gordon_sched():
    e = get_entry("sine-gordon-D13")
    spec = NuPeriodSpec(
        tuple(k for sl in e.sequences["block1"] for k in sl), e.permutations["rot"]
    )
    return build_schedule(e.matrix, spec, e.sequences["block1"])


# -- relation generation ---------------------------------------------------------


def test_a2_y_relations_match_direct_mutation():
    """Oracle: run the coefficient exchange symbolically along the window and
    verify the emitted relation by substitution."""
    s = a2_schedule()
    rels = gen_y_system(s)
    assert [r.site for r in rels] == [(0, 0), (1, 1)]
    r0 = rels[0]
    assert r0.partner == (0, 2)
    assert r0.plus == () and r0.minus == (((1, 1), 1),)

    # direct run: y(0), y(1), y(2) with seeds in the universal semifield
    seed0 = SymbolicSeed.initial(A2)
    seed1 = seed0.mutate(0)
    seed2 = seed1.mutate(1)
    lhs = seed0.y[0] * seed2.y[0]
    rhs = (SFRational.one() + seed1.y[1].inv()) ** (-1)
    assert lhs.eq(rhs)


def test_a1_relations_are_trivial():
    s = build_schedule(A1, NuPeriodSpec((0, 0), (0,)), slices=[(0,), (0,)])
    yr = gen_y_system(s)
    tr = gen_t_system(s)
    assert all(r.plus == () and r.minus == () for r in yr + tr)


def test_a2_t_relation_example():
    s = a2_schedule()
    rels = gen_t_system(s)
    r0 = rels[0]
    assert r0.site == (0, 0) and r0.partner == (0, 2)
    assert r0.plus == () and r0.minus == (((1, 1), 1),)
    assert r0.with_coefficients
    tex = relation_latex(r0)
    assert "x_{1}(0)" in tex and "x_{2}(1)" in tex and "1+y_{1}(0)" in tex

    free = gen_t_system(s, with_coefficients=False)
    assert not free[0].with_coefficients
    assert "y" not in relation_latex(free[0])


def test_a4_level4_octahedron_structure():
    """Cluster relations on the grid: horizontal neighbors in one product,
    vertical neighbors in the other, boundary terms dropped."""
    s = a4l4_plus_schedule()
    e = get_entry("A4-level4")
    coord = {k: tuple(int(v) for v in lab.strip("()").split(",")) for k, lab in enumerate(e.labels)}

    for rel in gen_t_system(s, with_coefficients=False):
        i, j = coord[rel.site[0]]
        u = rel.site[1]
        assert rel.partner[1] == u + 2
        plus_coords = sorted(coord[k] for (k, v), _ in rel.plus)
        minus_coords = sorted(coord[k] for (k, v), _ in rel.minus)
        horizontals = sorted(
            (i + d, j) for d in (-1, 1) if 1 <= i + d <= 4
        )
        verticals = sorted((i, j + d) for d in (-1, 1) if 1 <= j + d <= 3)
        groups = {tuple(plus_coords), tuple(minus_coords)}
        assert groups == {tuple(horizontals), tuple(verticals)}
        assert all(e == 1 for _, e in rel.plus + rel.minus)
        assert all(v == u + 1 for (_, v), _ in rel.plus + rel.minus)


def test_a4_level4_y_structure():
    """Coefficient relations on the grid pair horizontal neighbors in the
    numerator and vertical neighbors in the denominator."""
    s = a4l4_plus_schedule()
    e = get_entry("A4-level4")
    coord = {k: tuple(int(v) for v in lab.strip("()").split(",")) for k, lab in enumerate(e.labels)}
    for rel in gen_y_system(s):
        i, j = coord[rel.site[0]]
        u = rel.site[1]
        assert rel.partner[1] == u + 2
        plus_coords = sorted(coord[k] for (k, v), _ in rel.plus)
        minus_coords = sorted(coord[k] for (k, v), _ in rel.minus)
        assert plus_coords == sorted((i + d, j) for d in (-1, 1) if 1 <= i + d <= 4)
        assert minus_coords == sorted((i, j + d) for d in (-1, 1) if 1 <= j + d <= 3)
        assert all(v == u + 1 for (_, v), _ in rel.plus + rel.minus)


def test_a4_level4_y_structure_matches_t_by_duality():
    s = a4l4_plus_schedule()
    rep = check_duality(s, gen_y_system(s), gen_t_system(s))
    assert rep.ok and rep.checked_pairs > 0


def test_b4_level4_forward_point_pattern():
    """Forward points of the half-sweep schedule cycle through the four
    residues: plus dots with plus circles, minus dots, plus dots with minus
    circles, minus dots again."""
    e = get_entry("B4-level4")
    seqs = e.sequences
    slices = (
        tuple(seqs["dot_plus"][0]) + tuple(seqs["circ_plus"][0]),
        tuple(seqs["dot_minus"][0]),
    )
    seq = tuple(k for sl in slices for k in sl)
    sched = build_schedule(e.matrix, NuPeriodSpec(seq, e.permutations["nu"]), slices)
    assert sched.t == 2 and sched.g == 2 and sched.omega == 4
    assert sched.regular

    groups = {
        0: set(seqs["dot_plus"][0]) | set(seqs["circ_plus"][0]),
        1: set(seqs["dot_minus"][0]),
        2: set(seqs["dot_plus"][0]) | set(seqs["circ_minus"][0]),
        3: set(seqs["dot_minus"][0]),
    }
    for u in range(4):
        assert set(sched.slice_at[u]) == groups[u]
    # gap lengths: t * g_i = 4 for circles (orbit length 2), 2 for dots
    for (k, u) in sched.window_sites():
        expected = 2 * sched.orbit_lengths[k]
        assert sched.lambda_plus(k, u) == expected


def test_window_locality():
    for sched in (a2_schedule(), a4l4_plus_schedule(), _sine_gordon_sched()):
        for rel in gen_y_system(sched):
            i, u = rel.site
            lam = rel.partner[1] - u
            for (j, v), e in rel.plus + rel.minus:
                assert u < v < u + lam and e > 0
        for rel in gen_t_system(sched):
            i, u = rel.site
            for (j, v), e in rel.plus + rel.minus:
                assert v > u and v - sched.lambda_minus(j, v) < u and e > 0


# -- duality ---------------------------------------------------------------------


def test_duality_exact_on_catalog_schedules():
    for sched in (a2_schedule(), _a3_sched(), a4l4_plus_schedule()):
        rep = check_duality(sched, gen_y_system(sched), gen_t_system(sched))
        assert rep.ok, rep.violations[:3]


def _a3_sched():
    e = get_entry("A3")
    return build_schedule(
        A3, NuPeriodSpec((0, 2, 1), ident(3)), e.sequences["full"]
    )


def test_duality_zero_matrix():
    B = ExchangeMatrix.from_rows([[0, 0], [0, 0]])
    s = build_schedule(B, NuPeriodSpec((0, 1), ident(2)))
    yr, tr = gen_y_system(s), gen_t_system(s)
    assert all(r.plus == () and r.minus == () for r in yr + tr)
    assert check_duality(s, yr, tr).ok


def test_duality_weighted_skew_symmetrizable():
    B = ExchangeMatrix.from_rows([[0, 2], [-1, 0]])
    assert B.d == (1, 2)
    s = build_schedule(B, NuPeriodSpec((0, 1), ident(2)))
    yr, tr = gen_y_system(s), gen_t_system(s)
    # raw exponents differ across the transposed site pair (1 vs 2);
    # the d-weighted combination matches: d_2 * 1 == d_1 * 2
    assert yr[0].minus == (((1, 1), 1),)
    assert tr[1].minus == (((0, 2), 2),)
    assert B.d[1] * 1 == B.d[0] * 2
    assert check_duality(s, yr, tr).ok


# -- numeric coefficient-from-cluster check ---------------------------------------


def test_y_from_t_a2():
    s = a2_schedule()
    rep = y_from_t_check(s, gen_t_system(s), rng=random.Random(5))
    assert rep.ok and rep.max_residual < 1e-9


def test_y_from_t_a4_level4_three_draws():
    s = a4l4_plus_schedule()
    tr = gen_t_system(s)
    for trial in range(3):
        rep = y_from_t_check(s, tr, rng=random.Random(100 + trial))
        assert rep.ok and rep.max_residual < 1e-9


def test_y_from_t_constant_one_on_a1():
    s = build_schedule(A1, NuPeriodSpec((0, 0), (0,)), slices=[(0,), (0,)])
    rep = y_from_t_check(s, gen_t_system(s), initial_x=[1.0])
    assert rep.max_residual == 0.0


def test_y_from_t_with_external_vertex():
    # an extra never-mutated vertex joins through the external factors
    B = ExchangeMatrix.from_rows([[0, 1, -1], [-1, 0, 0], [1, 0, 0]])
    spec = NuPeriodSpec((0, 1) * 5, ident(3))
    sched = build_schedule(B, spec)
    tr = gen_t_system(sched)
    assert any(r.external_plus or r.external_minus for r in tr)
    rep = y_from_t_check(sched, tr, rng=random.Random(9))
    assert rep.ok


# -- slice independence ------------------------------------------------------------


def test_slice_choice_independence_on_a3():
    e = get_entry("A3")
    claim = e.seed_period_claim()
    coarse = build_schedule(A3, claim.spec(), claim.slices)
    fine = build_schedule(A3, claim.spec(), None)
    assert coarse.omega != fine.omega
    for gen in (gen_y_system, gen_t_system):
        assert canonical_relation_key(coarse, gen(coarse)) == canonical_relation_key(
            fine, gen(fine)
        )


# -- regular presentation -----------------------------------------------------------


def test_balanced_presentation_regular_only():
    s = a2_schedule()
    rel = gen_y_system(s)[0]
    left, right = balanced_sites(s, rel)
    assert left == (0, 2) and right == (0, 2)  # doubled units, symmetric midpoint

    irregular = build_schedule(A2, NuPeriodSpec((0, 1) * 5, ident(2)))
    assert not irregular.regular
    with pytest.raises(ValueError):
        balanced_sites(irregular, gen_y_system(irregular)[0])


def test_render_latex_smoke():
    s = a2_schedule()
    text = render_latex(gen_y_system(s))
    assert text.startswith("\\begin{align*}") and "y_{1}(0)" in text


def test_balanced_rendering_recovers_symmetric_grid_form():
    """In tilde coordinates the grid relation reads off neighbors at the
    shared middle stage with the two sides one step either way."""
    s = a4l4_plus_schedule()
    rels = gen_t_system(s, with_coefficients=False)
    by_site = {r.site: r for r in rels}
    # the vertex labeled (2,2) is forward at u = 0 (2+2+0 even)
    e = get_entry("A4-level4")
    k = list(e.labels).index("(2,2)")
    tex = relation_latex_balanced(s, by_site[(k, 0)])
    who = k + 1
    assert f"\\tilde x_{{{who}}}(-1)\\,\\tilde x_{{{who}}}(1) =" in tex
    # all four neighbors appear at the midpoint stage 0
    for lab in ("(1,2)", "(3,2)", "(2,1)", "(2,3)"):
        j = list(e.labels).index(lab) + 1
        assert f"\\tilde x_{{{j}}}(0)" in tex

    balanced_all = render_latex_balanced(s, gen_y_system(s))
    assert balanced_all.count("y_") > 0

    irregular = build_schedule(A2, NuPeriodSpec((0, 1) * 5, ident(2)))
    with pytest.raises(ValueError):
        relation_latex_balanced(irregular, gen_t_system(irregular)[0])


def test_empty_sequence_rejected():
    with pytest.raises(ValueError):
        build_schedule(A2, NuPeriodSpec((), ident(2)))


def test_tamely_laced_schedule_at_scale():
    """The 34-vertex entry through the whole pipeline: regular schedule,
    mixed orbit lengths, exact duality, numeric consistency."""
    e = get_entry("tamely-laced-level4")
    base = e.sequences["base"]
    spec = NuPeriodSpec(tuple(k for sl in base for k in sl), e.permutations["nu"])
    sched = build_schedule(e.matrix, spec, base)
    assert sched.t == 2 and sched.g == 5 and sched.omega == 10
    assert sched.regular
    # shared column vertices repeat every other stage, rotated ones once a round
    for (k, u) in sched.window_sites():
        assert sched.lambda_plus(k, u) == 2 * sched.orbit_lengths[k]
        assert sched.orbit_lengths[k] in (1, 5)

    yr, tr = gen_y_system(sched), gen_t_system(sched)
    assert len(yr) == len(sched.forward) == 110  # 5 rotations of 22 mutations
    rep = check_duality(sched, yr, tr)
    assert rep.ok, rep.violations[:3]
    num = y_from_t_check(sched, tr, rng=random.Random(2))
    assert num.ok and num.max_residual < 1e-9
