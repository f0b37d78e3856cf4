"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""
import math
import time

import numpy as np
import pytest

import test_properties as props
from bohrlab import verify
from bohrlab.radii import find_minimal_root, radius_value, table1, theoremD_Phi
from bohrlab.weights import plain_monomials

PLAIN = plain_monomials()


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail
    return emit


def test_criterion_1_table(report):
    t0 = time.perf_counter()
    rows = table1()
    elapsed = time.perf_counter() - t0
    worst = max(r["abs_diff"] for r in rows)
    report(1, len(rows) == 24 and worst <= 1e-5 and elapsed < 1.0,
           f"24-row table max |diff| {worst:.2e} in {elapsed:.3f} s")


def _bisect_root(lo, hi, g):
    # plain bisection, independent of the library solver
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if (g(mid) > 0) == (g(lo) > 0) else (lo, mid)
    return 0.5 * (lo + hi)


NAMED = [
    ("theoremD_rstar", {}, _bisect_root(0.0, 0.5, lambda r: 3 * r**3 - 5 * r**2 - 3 * r + 1)),
    ("corollary2_radius", {}, math.sqrt(5) - 2),
    ("lemma2_rpm", {"p": 1, "m": 0}, math.sqrt(2) - 1),
    ("corollary5_rtilde", {"weights": PLAIN, "p": 2, "m": 0}, 1 / math.sqrt(3)),
    ("corollary5_rtilde", {"weights": PLAIN, "p": 2, "m": 1},
     _bisect_root(0.6, 0.8, lambda r: 5 * r**4 + 4 * r**3 - 2 * r**2 - 4 * r + 1)),
    ("theorem5_rstar", {"weights": PLAIN, "p": 1, "m": 0}, (math.sqrt(5) - 1) / 2),
    ("theorem5_Rstar", {"weights": PLAIN, "p": 2, "m": 0}, 0.5 ** 0.5),
    ("theorem5_Rstar", {"weights": PLAIN, "p": 4, "m": 0}, 0.5 ** 0.25),
    ("lacunary_kp", {"k": 1, "p": 1}, (1 / 3) ** 1),
    ("lacunary_kp", {"k": 2, "p": 1}, (1 / 3) ** 0.5),
    ("lacunary_kp", {"k": 1, "p": 0.5}, 0.5 / 2.5),
    ("theorem1_Rp", {"p": 2, "a0": 0.0}, 1 / 3),
    ("theorem1_Rp", {"p": 2, "a0": 0.25}, 1.25 / 3.25),
    ("theorem1_Rp", {"p": 2, "a0": 0.5}, 1.5 / 3.5),
]


def test_criterion_2_named_constants(report):
    from bohrlab import radii
    worst_closed = worst_solver = 0.0
    for id_, params, closed in NAMED:
        worst_closed = max(worst_closed, abs(radius_value(id_, **params) - closed))
        P = radii._normalize(params)
        entry = radii.CATALOG[id_]
        lo, hi = entry.window(P) if entry.window else (0.0, radii.R_MAX)
        raw = find_minimal_root(entry.residual(P), lo=lo, hi=hi, vectorized=True).value
        worst_solver = max(worst_solver, abs(raw - closed))
    assert radius_value("theoremD_rstar") == pytest.approx(0.24683, abs=1e-5)
    assert radius_value("corollary5_rtilde", weights=PLAIN, p=2, m=1) == pytest.approx(0.731348, abs=1e-6)
    report(2, worst_closed <= 1e-6 and worst_solver <= 1e-10,
           f"{len(NAMED)} constants, max |value - closed| {worst_closed:.1e}, solver agreement {worst_solver:.1e}")


def test_criterion_3_cross_identities(report):
    d1 = abs(radius_value("corollary1_r1") - radius_value("theoremD_rstar"))
    r = np.linspace(0.0, 1.0, 201)
    d2 = float(np.max(np.abs(theoremD_Phi(1.0, r) - (3 * r**3 - 5 * r**2 - 3 * r + 1))))
    d3 = abs(radius_value("lemma2_rpm", p=1, m=0) - (math.sqrt(2) - 1))
    report(3, d1 <= 1e-10 and d2 <= 1e-14 and d3 <= 1e-10,
           f"corollary1 vs D {d1:.1e}, Phi(1,r) {d2:.1e}, lemma2 {d3:.1e}")


def test_criterion_4_inequality_suites(report):
    t0 = time.perf_counter()
    failed = []
    worst = -math.inf
    ids = sorted(verify.claims())
    for theorem_id in ids:
        rep = verify.check_theorem(theorem_id)
        worst = max(worst, rep.max_violation)
        if not rep.passed:
            failed.append(theorem_id)
    elapsed = time.perf_counter() - t0
    report(4, not failed and elapsed < 120.0,
           f"{len(ids)} claims on the standard corpus, worst violation {worst:.2e}, "
           f"{elapsed:.1f} s, failed {failed}")


def test_criterion_5_sharpness(report):
    missing = []
    sharp = [i for i in sorted(verify.claims()) if verify.has_sharpness_clause(i)]
    for theorem_id in sharp:
        res = verify.sharpness_probe(theorem_id, delta=0.01)
        if not res.found or any(w["gap"] < 1e-6 for w in res.witnesses):
            missing.append(theorem_id)
    lam = verify.theorem4_lambda_check(lam=0.9, a=0.999999)
    grid = verify.theorem4_grid_check(lam=8 / 9)
    report(5, not missing and lam["exceeds"] and grid["holds"],
           f"{len(sharp)} sharp claims, missing {missing}; D_0.9 excess {lam['excess']:.2e}, "
           f"D_8/9 grid holds {grid['holds']}")


def test_criterion_6_equality_cases(report):
    bad = []
    points = 0
    for case_id in verify.EQUALITY_CASES:
        grid = verify.equality_grid(case_id)
        assert len(grid) >= 10
        for params in grid:
            res = verify.equality_check(case_id, params)
            points += 1
            if res.residual > res.budget + 1e-9:
                bad.append((case_id, params))
    report(6, not bad, f"{len(verify.EQUALITY_CASES)} cases, {points} points, violations {bad[:3]}")


def test_criterion_7_biconditional(report):
    out = verify.corollary2_biconditional()
    report(7, bool(out["holds_admissible"] and out["fails_low"]),
           f"holds on [1/2,1): {out['holds_admissible']}, witness at a0=0.4: {out['fails_low']}")


PROPERTY_TESTS = [
    props.test_class_B_bounds, props.test_class_P_bounds, props.test_phi_telescopes,
    props.test_phi_monotone, props.test_tail_error_monotone, props.test_d_lambda_monotone,
    props.test_parity_dispatch_matches_degree_parities, props.test_lemma4_additivity,
    props.test_compose_lacunary_evaluation,
]


def test_criterion_8_properties(report):
    failures = []
    for prop in PROPERTY_TESTS:
        try:
            prop()
        except Exception as exc:  # noqa: BLE001 - collect and report every property
            failures.append(f"{prop.__name__}: {type(exc).__name__}")
    report(8, not failures, f"{len(PROPERTY_TESTS)} properties x 1000 trials, failures {failures}")
