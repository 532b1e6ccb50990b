"""Acceptance suite: one test per acceptance criterion, each printing a
pass/fail line with its runtime (run with ``pytest -v -s`` to see them).
"""

import json
import subprocess
import sys
import time
from fractions import Fraction

from fibcong.congruences import FAMILIES, check_case, run_sweep, verdict
from fibcong.quadratic import check_structural_identities
from fibcong.residue import RingDescriptor, odd_primes
from fibcong.sequences import COMPANION_SPECS, second_order_stream
from fibcong.series import SERIES_SPECS, verify_limit
from fibcong.sums import (
    SUM_SPECS,
    reduce_exact,
    running_sums_exact,
    running_sums_mod,
    sum_exact,
)

BASE_EXPECTED = {"S1": 10, "S2": 2, "S3": 300, "S4": 672, "S5": 13, "S6": 32}
ORACLE_RINGS = [(3, 6), (5, 5), (7, 4), (11, 3), (13, 3)]


class timer:
    def __init__(self, budget_s: float):
        self.budget = budget_s

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        return False


def report(num: int, desc: str, t: timer) -> None:
    print(f"ACCEPTANCE {num} ({desc}): PASS in {t.elapsed:.2f}s")
    assert t.elapsed < t.budget, f"criterion {num} exceeded {t.budget}s budget"


def sweep_two_tiers(family_ids, p1, p2):
    """s=1 cases for odd p <= p1 plus s=2 cases for odd p <= p2."""
    fams = [FAMILIES[f] for f in family_ids]
    outs = run_sweep(fams, p1, 1)
    outs += [check_case(f, p, 2) for f in fams for p in odd_primes(p2)]
    return outs


def test_criterion_1_base_values():
    with timer(1.0) as t:
        for sum_id, expected in BASE_EXPECTED.items():
            got = sum_exact(SUM_SPECS[sum_id], 1).value
            assert got == expected, f"{sum_id}(1) = {got}"
    report(1, "base values S1(1)..S6(1)", t)


def test_criterion_2_full_truncation_s1_s2():
    with timer(300.0) as t:
        outs = sweep_two_tiers(["F1-full", "F2-full"], 199, 97)
        bad = [o for o in outs if not o.holds]
        assert not bad, bad[:3]
    report(2, "S1/S2 full truncations, p<200 s=1 and p<100 s=2, mod p^3s", t)


def test_criterion_3_half_truncation_s1_s2():
    with timer(300.0) as t:
        outs = sweep_two_tiers(["F1-half", "F2-half"], 199, 97)
        bad = [o for o in outs if not o.holds]
        assert not bad, bad[:3]
    report(3, "S1/S2 half truncations, same bounds, mod p^3s", t)


def test_criterion_4_s3_s4_both_modes():
    with timer(600.0) as t:
        outs = run_sweep(
            [FAMILIES[f] for f in ("F3-full", "F3-half", "F4-full", "F4-half")], 59, 2
        )
        bad = [o for o in outs if not o.holds]
        assert not bad, bad[:3]
    report(4, "S3/S4 full mod p^5s and half mod p^4s, p<60 s in {1,2}", t)


def test_criterion_5_s5_s6_with_exception():
    with timer(300.0) as t:
        outs = sweep_two_tiers(["F5-full", "F6-full"], 97, 29)
        failing = [(o.family_id, o.p, o.s) for o in outs if not o.holds]
        assert failing == [("F6-full", 3, 1)]
        assert all(o.ok for o in outs)
        assert verdict(outs)
        # and the CLI reports the exception while still exiting 0
        proc = subprocess.run(
            [sys.executable, "-m", "fibcong", "check", "s6",
             "--p-max", "3", "--s-max", "1", "--format", "json"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["cases"][0]["expected_exception"] is True
    report(5, "S5/S6 sweeps with the sole S6(3^1) exception", t)


def test_criterion_6_exact_modular_equivalence():
    with timer(60.0) as t:
        for sum_id, spec in SUM_SPECS.items():
            exact_prefixes = []
            it = running_sums_exact(spec)
            for _ in range(121):
                exact_prefixes.append(next(it))
            for p, k in ORACLE_RINGS:
                ring = RingDescriptor(p, k)
                mod_it = running_sums_mod(spec, ring)
                for n in range(121):
                    want = str(reduce_exact(exact_prefixes[n], ring).rep)
                    got = str(next(mod_it))
                    assert got == want, f"{sum_id} N={n} ring={ring}"
    report(6, "exact/modular oracle equivalence, N<=120, five rings", t)


def test_criterion_7_series_limits():
    targets = [("E1", 50), ("E2", 30), ("E3", 30), ("E4", 30), ("E8", 50), ("ECZ", 30)]
    with timer(120.0) as t:
        for sid, digits in targets:
            r = verify_limit(SERIES_SPECS[sid], digits)
            assert r.passed, f"{sid} at {digits} digits: |err| = {float(r.abs_error)}"
            assert r.abs_error.to_fraction() < Fraction(1, 10 ** (digits - 2))
    report(7, "series limits match their closed forms at target digits", t)


def test_criterion_8_structural_identities():
    with timer(30.0) as t:
        assert check_structural_identities() == []
        f0, f1, l0, l1 = 0, 1, 2, 1
        for m in range(10_001):
            assert l0 * l0 - 5 * f0 * f0 == 4 * (-1) ** m
            f0, f1 = f1, f0 + f1
            l0, l1 = l1, l0 + l1
        u = second_order_stream(COMPANION_SPECS["u"])
        v = second_order_stream(COMPANION_SPECS["v"])
        for _ in range(501):
            un, vn = next(u), next(v)
            assert vn * vn - 2400 * un * un == 1
    report(8, "quadratic/Cassini/Pell structural identities", t)


def test_criterion_9_determinism_parallel_sweep(tmp_path):
    with timer(120.0) as t:
        payloads = []
        for i in range(2):
            out = tmp_path / f"sweep{i}.json"
            proc = subprocess.run(
                [sys.executable, "-m", "fibcong", "check", "all",
                 "--p-max", "50", "--s-max", "1", "--jobs", "8",
                 "--format", "json", "--out", str(out)],
                capture_output=True, text=True,
            )
            assert proc.returncode == 0, proc.stderr
            payload = json.loads(out.read_text())
            payload.pop("timestamp")
            payloads.append(payload)
        assert payloads[0] == payloads[1]
    report(9, "byte-identical JSON from repeated --jobs 8 sweeps", t)
