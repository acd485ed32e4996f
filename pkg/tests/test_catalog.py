"""Catalog fixtures: every stored claim must verify, and stated lengths
must be minimal in the claimed repetition count."""

import pytest

from periodica.catalog import Claim, entry_names, get_entry
from periodica.periodicity import (
    NuPeriodSpec,
    check_matrix_period,
    check_seed_period_tropical,
)

ALL_ENTRIES = entry_names()


def _verify(entry, claim):
    spec = claim.spec()
    if claim.level == "matrix":
        return check_matrix_period(entry.matrix, spec)
    return bool(check_seed_period_tropical(entry.matrix, spec).seed_periodic)


@pytest.mark.parametrize("name", ALL_ENTRIES)
def test_every_claim_checks(name):
    entry = get_entry(name)
    assert entry.claims, "entries must carry at least one claim"
    for claim in entry.claims:
        assert _verify(entry, claim), f"{name}:{claim.label} failed"


@pytest.mark.parametrize(
    "name", [n for n in ALL_ENTRIES if get_entry(n).has_seed_period() and n != "A1"]
)
def test_one_fewer_repetition_is_not_a_seed_period(name):
    entry = get_entry(name)
    claim = entry.seed_period_claim()
    reps = entry.metadata["expected_seed_period_repetitions"]
    assert len(claim.slices) % reps == 0
    per_rep = len(claim.slices) // reps
    shorter = claim.slices[: per_rep * (reps - 1)]
    seq = tuple(k for sl in shorter for k in sl)
    verdict = check_seed_period_tropical(entry.matrix, NuPeriodSpec(seq, claim.nu))
    assert not verdict.seed_periodic


def test_a2_entry_shape():
    e = get_entry("A2")
    assert e.matrix.b == ((0, 1), (-1, 0))
    claim = e.seed_period_claim()
    assert claim.sequence == (0, 1) * 5
    assert e.metadata["expected_seed_period_repetitions"] == 5


def test_a4_level4_entry_shape():
    e = get_entry("A4-level4")
    assert e.n == 12
    claim = e.seed_period_claim()
    assert len(claim.sequence) == 108
    assert e.metadata == {
        "coxeter_number": 5,
        "level": 4,
        "expected_seed_period_repetitions": 9,
    }


def test_b4_level4_entry_shape():
    e = get_entry("B4-level4")
    assert e.n == 25
    assert e.matrix.is_skew_symmetric()
    assert len(e.seed_period_claim().sequence) == 352
    assert e.metadata["dual_coxeter_number"] == 7
    assert e.figure_transcribed


def test_sine_gordon_entry_shape():
    e = get_entry("sine-gordon-D13")
    assert e.n == 13
    assert len(e.seed_period_claim().sequence) == 624


def test_del_pezzo_records_seed_level_result():
    e = get_entry("delPezzo3")
    assert not e.has_seed_period()
    # matrix period of the full cycle holds; the seed-level outcome is
    # recorded here without asserting any expectation about it
    seq = tuple(k for sl in e.sequences["cycle"] for k in sl)
    verdict = check_seed_period_tropical(e.matrix, NuPeriodSpec.identity(seq, 6))
    assert verdict.matrix_periodic
    print(f"delPezzo3 full-cycle seed-level tropical check: {verdict.seed_periodic}")


def test_unknown_entry():
    with pytest.raises(KeyError):
        get_entry("E8-nope")


def test_entry_json_and_dot():
    e = get_entry("A2")
    data = e.to_json()
    assert data["quiver"] == {"vertices": 2, "arrows": [[1, 2, 1]]}
    assert data["claims"][0]["label"] == "full-matrix"
    dot = e.quiver().to_dot()
    assert "1 -> 2" in dot

    big = get_entry("tamely-laced-level4")
    assert big.n == 34
    assert big.to_json()["figure_transcribed"]


def test_claims_expose_slice_structure():
    e = get_entry("B4-level4")
    claim = e.seed_period_claim()
    assert isinstance(claim, Claim)
    # six slices per sweep, eleven sweeps
    assert len(claim.slices) == 66
    sizes = [len(sl) for sl in claim.slices[:6]]
    assert sizes == [4, 9, 3, 4, 9, 3]
