import pytest

from fibcong.congruences import (
    BASE_VALUES,
    FAMILIES,
    CongruenceFamily,
    base_consistency,
    check_case,
    run_sweep,
    verdict,
)
from fibcong.residue import RingDescriptor, legendre
from fibcong.sums import SUM_SPECS, reduce_exact, sum_exact


def exact_case_sides(family, p, s):
    # independent oracle: both sides straight from exact rationals
    ring = RingDescriptor(p, family.mod_mult * s)
    n_lhs = family.truncation(p, s)
    n_rhs = family.truncation(p, s - 1)
    spec = SUM_SPECS[family.sum_id]
    lhs = reduce_exact(sum_exact(spec, n_lhs).value, ring).rep
    chi = legendre(family.symbol, p)
    rhs = chi * p**family.p_exp * reduce_exact(sum_exact(spec, n_rhs).value, ring).rep
    return lhs, rhs % ring.modulus, ring.modulus


def test_registry_table_is_frozen():
    rows = {
        "F1-full": ("S1", -5, 1, 3, False, ()),
        "F1-half": ("S1", -5, 1, 3, True, ()),
        "F2-full": ("S2", -1, 1, 3, False, ()),
        "F2-half": ("S2", -1, 1, 3, True, ()),
        "F3-full": ("S3", 5, 2, 5, False, ()),
        "F3-half": ("S3", 5, 2, 4, True, ()),
        "F4-full": ("S4", 1, 2, 5, False, ()),
        "F4-half": ("S4", 1, 2, 4, True, ()),
        "F5-full": ("S5", -3, 1, 3, False, ()),
        "F6-full": ("S6", -2, 1, 3, False, ((3, 1),)),
    }
    assert list(FAMILIES) == list(rows)
    for fid, (sum_id, sym, e, c, half, exc) in rows.items():
        fam = FAMILIES[fid]
        assert (fam.sum_id, fam.symbol, fam.p_exp, fam.mod_mult, fam.half,
                fam.exceptions) == (sum_id, sym, e, c, half, exc)


def test_truncation_lengths():
    fam_full = FAMILIES["F1-full"]
    fam_half = FAMILIES["F1-half"]
    assert fam_full.truncation(7, 2) == 49
    assert fam_half.truncation(7, 2) == 25
    # s = 0 collapses to a single term in both modes
    assert fam_full.truncation(7, 0) == 1
    assert fam_half.truncation(7, 0) == 1


def test_check_case_first_family_small():
    o = check_case(FAMILIES["F1-full"], 3, 1)
    assert o.rhs == (1 * 3 * 10) % 27 == 3
    assert o.lhs == 3 and o.holds
    assert o.n_lhs == 3 and o.n_rhs == 1 and o.mod_exp == 3
    assert not o.symbol_zero and not o.expected_exception
    assert o.ok


def test_check_case_half_mode_small():
    o = check_case(FAMILIES["F2-half"], 3, 1)
    # S2(2) = 1149/128 = 21 (mod 27); rhs = (-1|3)*3*2 = -6 = 21 (mod 27)
    assert o.lhs == 21 and o.rhs == 21 and o.holds


def test_expected_exception_case():
    o = check_case(FAMILIES["F6-full"], 3, 1)
    assert not o.holds
    assert o.expected_exception
    assert o.excess == 2
    assert o.ok  # fails exactly as registered


def test_exception_is_limited_to_s_equals_1():
    o = check_case(FAMILIES["F6-full"], 3, 2)
    assert o.holds and not o.expected_exception and o.ok


@pytest.mark.parametrize(
    "fid,p,s",
    [
        ("F1-full", 7, 1), ("F1-half", 11, 1), ("F2-full", 5, 1),
        ("F3-full", 3, 1), ("F3-half", 7, 1), ("F4-full", 5, 1),
        ("F4-half", 3, 2), ("F5-full", 7, 1), ("F6-full", 5, 1),
        ("F1-full", 3, 2), ("F2-half", 3, 2),
    ],
)
def test_check_case_sides_match_exact_oracle(fid, p, s):
    fam = FAMILIES[fid]
    o = check_case(fam, p, s)
    lhs, rhs, modulus = exact_case_sides(fam, p, s)
    assert (o.lhs, o.rhs) == (lhs, rhs)
    assert o.holds == ((lhs - rhs) % modulus == 0)


def test_symbol_zero_cases_execute_and_hold():
    o = check_case(FAMILIES["F1-full"], 5, 1)   # (-5|5) = 0
    assert o.symbol_zero and o.rhs == 0 and o.holds
    o = check_case(FAMILIES["F5-full"], 3, 1)   # (-3|3) = 0
    assert o.symbol_zero and o.rhs == 0 and o.holds
    o = check_case(FAMILIES["F3-full"], 5, 1)   # (5|5) = 0
    assert o.symbol_zero and o.rhs == 0 and o.holds


def test_excess_bounds_and_holds_equivalence():
    for fid in FAMILIES:
        for p in (3, 5, 7):
            o = check_case(FAMILIES[fid], p, 1)
            assert 0 <= o.excess <= o.mod_exp
            assert o.holds == (o.excess == o.mod_exp)


def test_lifting_consistency_excess_monotone():
    # recomputing a case at one smaller modulus exponent caps the excess
    samples = [("F1-full", 3, 1), ("F6-full", 3, 1), ("F3-full", 7, 1), ("F2-half", 3, 2)]
    for fid, p, s in samples:
        fam = FAMILIES[fid]
        o = check_case(fam, p, s)
        k = fam.mod_mult * s
        ring_lo = RingDescriptor(p, k - 1)
        spec = SUM_SPECS[fam.sum_id]
        lhs = reduce_exact(sum_exact(spec, fam.truncation(p, s)).value, ring_lo).rep
        chi = legendre(fam.symbol, p)
        rhs = chi * p**fam.p_exp * reduce_exact(
            sum_exact(spec, fam.truncation(p, s - 1)).value, ring_lo
        ).rep % ring_lo.modulus
        diff = (lhs - rhs) % ring_lo.modulus
        excess_lo = k - 1
        if diff:
            excess_lo = 0
            while diff % p == 0:
                diff //= p
                excess_lo += 1
        assert excess_lo == min(o.excess, k - 1)


def test_run_sweep_examples():
    outs = run_sweep([FAMILIES["F1-full"]], 7, 1)
    assert [o.p for o in outs] == [3, 5, 7]
    assert all(o.holds for o in outs)
    assert verdict(outs)

    assert run_sweep([], 100, 3) == []
    assert verdict([])

    outs = run_sweep([FAMILIES["F6-full"]], 3, 1)
    assert len(outs) == 1
    assert not outs[0].holds and outs[0].expected_exception
    assert verdict(outs)


def test_run_sweep_order_and_determinism():
    fams = [FAMILIES["F2-full"], FAMILIES["F1-full"]]
    outs1 = run_sweep(fams, 11, 2)
    outs2 = run_sweep(fams, 11, 2)
    assert outs1 == outs2
    keys = [(o.family_id, o.p, o.s) for o in outs1]
    want = [
        (fid, p, s)
        for fid in ("F2-full", "F1-full")
        for p in (3, 5, 7, 11)
        for s in (1, 2)
    ]
    assert keys == want


def test_unexpectedly_passing_exception_is_flagged():
    fake = CongruenceFamily("F6-fake", "S6", -2, 1, 3, half=False, exceptions=((5, 1),))
    o = check_case(fake, 5, 1)   # this case actually holds
    assert o.holds and o.expected_exception
    assert not o.ok
    assert not verdict([o])


def test_base_consistency():
    assert base_consistency() == []
    assert BASE_VALUES == {"S1": 10, "S2": 2, "S3": 300, "S4": 672, "S5": 13, "S6": 32}


def test_outcome_record_schema():
    o = check_case(FAMILIES["F1-full"], 3, 1)
    rec = o.to_record()
    assert list(rec) == [
        "family", "p", "s", "truncation", "modulus", "lhs", "rhs",
        "valuation_excess", "holds", "expected_exception", "symbol_zero",
    ]
    assert rec["modulus"] == "3^3"
    assert isinstance(rec["lhs"], str) and isinstance(rec["rhs"], str)


def test_check_case_rejects_bad_s():
    with pytest.raises(ValueError):
        check_case(FAMILIES["F1-full"], 3, 0)
