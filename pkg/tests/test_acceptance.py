"""Acceptance suite: every criterion at its stated tolerance, one printed
pass/fail line per criterion (run with -s to see the lines for passing tests)."""

import numpy as np

from zzqec.closedform import (
    estimate_delta_dipole,
    p_exact,
    p_recursive,
    threshold,
)
from zzqec.codes import LAFLAMME5, STEANE7, build_code, make_layout
from zzqec.phasestate import LogicalAmplitudes, apply_z_mask, evolve, from_logical, inner
from zzqec.recovery import (
    classify_z_error,
    failure_probability_brute,
    failure_probability_factorized,
    images_orthogonal,
    nonzero_odd_supports,
    single_block_orthogonal_set,
)

SYM = LogicalAmplitudes.from_alpha_sq(0.5)


def _report(num, desc, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" [{detail}]" if detail else ""
    print(f"criterion {num} {status}: {desc}{suffix}")
    assert ok, f"criterion {num} failed: {desc}{suffix}"


def mask(*qubits):
    return sum(1 << (q - 1) for q in qubits)


def _fit_coefficient(p_of_dt, power, lo, hi, n=8):
    grid = np.geomspace(lo, hi, n)
    ratios = np.array([p_of_dt(float(dt)) / dt ** power for dt in grid])
    design = np.stack([np.ones_like(grid), grid ** 2], axis=1)
    sol, *_ = np.linalg.lstsq(design, ratios, rcond=None)
    return float(sol[0])


def test_criterion_1_depth1_closed_form_equivalence():
    tol = 1e-12
    worst = 0.0
    alphas = np.linspace(0.0, 1.0, 9)
    for kind in (STEANE7, LAFLAMME5):
        layout = make_layout(kind, 1)
        for dt in np.linspace(0.0, np.pi, 200):
            for asq in alphas:
                got = failure_probability_brute(
                    layout, LogicalAmplitudes.from_alpha_sq(float(asq)), float(dt)).p_fail
                want = p_exact(kind, 1, float(asq), float(dt))
                worst = max(worst, abs(got - want))
    _report(1, "depth-1 brute engine matches closed forms "
               "(200 angles x 9 amplitudes x 2 codes)",
            worst <= tol, f"max dev {worst:.2e}, tol {tol:.0e}")


def test_criterion_2_depth2_exact_curves():
    tol = 1e-9
    worst = 0.0
    for kind in (STEANE7, LAFLAMME5):
        layout = make_layout(kind, 2)
        for dt in np.linspace(0.0, np.pi / 2, 100):
            for asq in (0.0, 0.25, 0.5, 1.0):
                got = failure_probability_factorized(
                    layout, LogicalAmplitudes.from_alpha_sq(asq), float(dt)).p_fail
                want = p_exact(kind, 2, asq, float(dt))
                worst = max(worst, abs(got - want))
    _report(2, "depth-2 factorized engine matches closed forms "
               "(100 angles x 4 amplitudes x 2 codes)",
            worst <= tol, f"max dev {worst:.2e}, tol {tol:.0e}")


def test_criterion_3_brute_factorized_agreement():
    tol = 1e-9
    layout = make_layout(LAFLAMME5, 2)
    worst = 0.0
    for dt in np.linspace(0.0, np.pi / 2, 50):
        for asq in (0.0, 0.5, 1.0):
            amps = LogicalAmplitudes.from_alpha_sq(asq)
            pb = failure_probability_brute(layout, amps, float(dt)).p_fail
            pf = failure_probability_factorized(layout, amps, float(dt)).p_fail
            worst = max(worst, abs(pb - pf))
    _report(3, "5-qubit depth-2 brute and factorized engines agree (50 angles)",
            worst <= tol, f"max dev {worst:.2e}, tol {tol:.0e}")


def test_criterion_4_small_angle_coefficients():
    rel_tol = 1e-3
    fits = {}
    for kind, target in ((STEANE7, 14.0), (LAFLAMME5, 6.0)):
        layout = make_layout(kind, 1)
        fits[f"{kind}-depth1"] = (_fit_coefficient(
            lambda dt: failure_probability_brute(layout, SYM, dt).p_fail,
            2, 1e-4, 1e-3), target)
    for kind, target in ((STEANE7, 4116.0), (LAFLAMME5, 360.0)):
        layout = make_layout(kind, 2)
        fits[f"{kind}-depth2"] = (_fit_coefficient(
            lambda dt: failure_probability_factorized(layout, SYM, dt).p_fail,
            4, 5e-4, 3e-3), target)
    fits["block-pair"] = (fits["steane7-depth2"][0] / 21.0, 196.0)
    worst = max(abs(got - want) / want for got, want in fits.values())
    detail = ", ".join(f"{k}={got:.4g} (want {want:g})" for k, (got, want) in fits.items())
    _report(4, "small-angle coefficients 14, 6, 4116, 360, 196 within 0.1%",
            worst <= rel_tol, detail)


def test_criterion_5_thresholds_and_crossings():
    rep7 = threshold(STEANE7)
    rep5 = threshold(LAFLAMME5)
    exact = ((rep7.threshold.numerator, rep7.threshold.denominator) == (1, 294)
             and (rep5.threshold.numerator, rep5.threshold.denominator) == (1, 60))

    crossings_ok = True
    detail = []
    for kind in (STEANE7, LAFLAMME5):
        star = np.sqrt(threshold(kind).threshold_float)
        grid = np.linspace(0.9 * star, 1.1 * star, 4001)
        step = float(grid[1] - grid[0])
        for na in range(1, 5):
            for nb in range(na + 1, 5):
                diffs = np.array([p_recursive(kind, na, float(dt))
                                  - p_recursive(kind, nb, float(dt)) for dt in grid])
                idx = np.nonzero(np.diff(np.sign(diffs)) != 0)[0]
                if len(idx) == 0 or abs(grid[idx[0]] - star) > 2 * step:
                    crossings_ok = False
                    detail.append(f"{kind} n={na}/{nb}")
    _report(5, "thresholds are exactly 1/294 and 1/60; recursion curves n=1..4 "
               "cross there within grid resolution",
            exact and crossings_ok, "; ".join(detail) or
            f"1/294={rep7.threshold_float:.2e}, 1/60={rep5.threshold_float:.2e}")


def test_criterion_6_structural_identities():
    ok = True
    notes = []

    # pair-error identities of the 7-qubit code, both words, exact signs
    layout7 = make_layout(STEANE7, 1)
    zero7 = from_logical(layout7, LogicalAmplitudes(1.0, 0.0))
    one7 = from_logical(layout7, LogicalAmplitudes(0.0, 1.0))
    identities7 = [((1, 2), 3), ((5, 6), 3), ((2, 3), 1), ((4, 5), 1), ((6, 7), 1), ((3, 4), 7)]
    for pair, single in identities7:
        a0 = apply_z_mask(zero7, mask(*pair)).amps
        b0 = apply_z_mask(zero7, mask(single)).amps
        a1 = apply_z_mask(one7, mask(*pair)).amps
        b1 = apply_z_mask(one7, mask(single)).amps
        if not (np.allclose(a0, -b0, atol=1e-15) and np.allclose(a1, b1, atol=1e-15)):
            ok = False
            notes.append(f"7-qubit pair identity {pair}~{single}")

    groups = [[(1, 2), (5, 6)], [(2, 3), (4, 5), (6, 7)], [(3, 4)]]
    for group in groups:
        if len({classify_z_error(build_code(STEANE7), mask(*p)) for p in group}) != 1:
            ok = False
            notes.append(f"7-qubit classification group {group}")

    # degenerate-pair identity of the 5-qubit code on both words
    layout5 = make_layout(LAFLAMME5, 1)
    for amps in (LogicalAmplitudes(1.0, 0.0), LogicalAmplitudes(0.0, 1.0)):
        word = from_logical(layout5, amps)
        a = apply_z_mask(word, mask(2, 3)).amps
        b = apply_z_mask(word, mask(4, 5)).amps
        if not np.allclose(a, b, atol=1e-15):
            ok = False
            notes.append("5-qubit degenerate pair")

    # parity relation over all 128 masks at 20 angles
    worst_parity = 0.0
    for dt in np.linspace(0.0, np.pi, 20):
        ev0 = evolve(zero7, layout7, float(dt))
        ev1 = evolve(one7, layout7, float(dt))
        for m in range(128):
            lhs = inner(apply_z_mask(zero7, m), ev0)
            rhs = inner(apply_z_mask(one7, m), ev1)
            sign = -1 if bin(m).count("1") % 2 else 1
            worst_parity = max(worst_parity, abs(lhs - sign * rhs))
    if worst_parity > 1e-12:
        ok = False
        notes.append(f"parity relation dev {worst_parity:.2e}")

    # 5-qubit depth-2 failure vanishes at pi/2
    layout52 = make_layout(LAFLAMME5, 2)
    p_half = failure_probability_brute(layout52, SYM, float(np.pi / 2)).p_fail
    p_half_f = failure_probability_factorized(layout52, SYM, float(np.pi / 2)).p_fail
    if max(p_half, p_half_f) > 1e-9:
        ok = False
        notes.append(f"pi/2 failure {max(p_half, p_half_f):.2e}")

    # 7-qubit codewords are fully correctible at depth 1
    worst_word = 0.0
    for amps in (LogicalAmplitudes(1.0, 0.0), LogicalAmplitudes(0.0, 1.0)):
        for dt in np.linspace(0.0, np.pi, 40):
            worst_word = max(worst_word,
                             failure_probability_brute(layout7, amps, float(dt)).p_fail)
    if worst_word > 1e-12:
        ok = False
        notes.append(f"codeword failure {worst_word:.2e}")

    _report(6, "structural identities: pair-error relations, parity over 128 masks "
               "x 20 angles, pi/2 zero, fully-correctible codewords",
            ok, "; ".join(notes) or
            f"parity dev {worst_parity:.1e}, codeword dev {worst_word:.1e}")


KNOWN_SET_7 = ([mask(m) for m in range(1, 8)] + [mask(1, m) for m in range(2, 8)]
               + [mask(2, 3), mask(1, 4, 5)])
KNOWN_SET_5 = ([mask(m) for m in range(1, 6)] + [mask(1, m) for m in range(2, 6)]
               + [mask(2, m) for m in range(3, 6)] + [mask(1, 2, m) for m in range(3, 6)])


def test_criterion_7_orthogonal_set_maximality():
    ok = True
    notes = []
    for kind, known in ((STEANE7, KNOWN_SET_7), (LAFLAMME5, KNOWN_SET_5)):
        code = build_code(kind)
        found = single_block_orthogonal_set(code)
        if len(found) != 15:
            ok = False
            notes.append(f"{kind}: built set has {len(found)} masks")
        for lst, label in ((found, "built"), (known, "published")):
            pairwise = all(images_orthogonal(code, 0, a) for a in lst) and all(
                images_orthogonal(code, a, b)
                for i, a in enumerate(lst) for b in lst[i + 1:])
            if not pairwise:
                ok = False
                notes.append(f"{kind}: {label} set fails orthogonality")
        members = set(found)
        for candidate in range(1, 1 << code.n_physical):
            if candidate in members:
                continue
            if images_orthogonal(code, 0, candidate) and all(
                    images_orthogonal(code, candidate, m) for m in found):
                ok = False
                notes.append(f"{kind}: mask {candidate:#x} extends the set")
    _report(7, "orthogonal sets: exactly 15 masks per code, published lists pass, "
               "no 16th mask extends either set", ok, "; ".join(notes))


def test_criterion_8_nonzero_support_enumeration():
    triples = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]
    full = tuple(range(1, 8))
    complements = [tuple(sorted(set(full) - set(t))) for t in triples]
    want7 = sorted(triples + complements + [full], key=lambda t: (len(t), t))
    got7 = nonzero_odd_supports(build_code(STEANE7))
    want5 = [(1, 2, 5), (1, 3, 4), (2, 3, 4, 5)]
    got5 = nonzero_odd_supports(build_code(LAFLAMME5))
    ok = got7 == want7 and got5 == want5
    _report(8, "nonzero composite-error supports match the published lists "
               "(7 triples + 7 complements + full set; three sets)",
            ok, f"counts {len(got7)} and {len(got5)}")


def test_criterion_9_dipole_estimate():
    val = estimate_delta_dipole(1.5e-8)
    ok = 3e-3 <= val <= 3e-2
    _report(9, "dipole coupling estimate at 150 angstrom lies in [3e-3, 3e-2] 1/s",
            ok, f"delta = {val:.3e} 1/s")
