"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines are printed even while
pytest captures output) or directly with ``python3 tests/test_acceptance.py``.
"""
import pathlib
import subprocess
import sys

import numpy as np
import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from conftest import DATA, GOLDEN, random_matrix  # noqa: E402
from nhresponse.degeneracy import classify, petermann_simple, strength_function  # noqa: E402
from nhresponse.fixtures import (  # noqa: E402
    DEGENERATE_ENERGY,
    FIXTURES,
    double_jordan,
    four_level,
    three_level,
)
from nhresponse.minors import (  # noqa: E402
    mode_from_partial_trace,
    partial_trace_direct,
    partial_trace_explicit,
    partial_trace_recursive,
)
from nhresponse.modal import flv_expand  # noqa: E402
from nhresponse.perturb import predict_polygons  # noqa: E402
from nhresponse.response import (  # noqa: E402
    eigenvalue_clusters,
    greens_direct,
    greens_uniform,
    loglog_slope,
    power_sweep,
)


def verdict(number: int, ok: bool, detail: str, capsys=None) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    assert ok, line


def unit(n, i, j):
    m = np.zeros((n, n), dtype=complex)
    m[i, j] = 1
    return m


def check_1():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for trial in range(100):
        n = 2 + trial % 9
        h = random_matrix(rng, n)
        exp = flv_expand(h, 0.0)
        spectrum = np.linalg.eigvals(h)
        radius = np.max(np.abs(spectrum)) + 1
        count = 0
        while count < 20:
            e = radius * (2 * rng.random() - 1 + 1j * (2 * rng.random() - 1))
            if np.min(np.abs(spectrum - e)) < 1e-2:
                continue  # too close to a pole to call off-resonant
            gu = greens_uniform(exp, e).matrix
            gd = greens_direct(h, e).matrix
            worst = max(worst, np.linalg.norm(gu - gd) / np.linalg.norm(gd))
            count += 1
    return worst <= 1e-9, f"max relative deviation {worst:.2e} over 2000 evaluations (limit 1e-9)"


def check_2():
    rng = np.random.default_rng(7)
    worst_trace = worst_mode = 0.0
    for n in range(1, 7):
        for _ in range(4):
            m = random_matrix(rng, n)
            exp = flv_expand(m, 0.0)
            for k in range(1, n + 1):
                d = partial_trace_direct(m, k)
                scale = max(1.0, np.linalg.norm(d))
                for other in (partial_trace_recursive(m, k), partial_trace_explicit(m, k)):
                    worst_trace = max(worst_trace, np.linalg.norm(d - other) / scale)
            for k in range(n):
                b = mode_from_partial_trace(m, k)
                scale = max(1.0, np.linalg.norm(exp.modes[k]))
                worst_mode = max(worst_mode, np.linalg.norm(b - exp.modes[k]) / scale)
    ok = worst_trace <= 1e-9 and worst_mode <= 1e-9
    return ok, f"routes differ by {worst_trace:.2e}, modes by {worst_mode:.2e} (limit 1e-9 scaled)"


def check_3():
    k0 = classify(FIXTURES["F1-EP"], 0).petermann
    kp = classify(FIXTURES["F1-DP"], 2).petermann
    ep = classify(FIXTURES["F1-EP"], 1)
    b0 = np.linalg.norm(flv_expand(FIXTURES["F1-DP"], 0).modes[0])
    # B_0 at the doubled root vanishes on sqrt(a) d = sqrt(c) b and only there
    on = [three_level(2, 4, 1, 1, 0.5), three_level(np.sqrt(6), 2, 3, 3, 3 * np.sqrt(1.5))]
    off = [three_level(2, 4, 1, 1, 0.6), three_level(1, 1, 1, 1, 2)]
    on_ok = all(np.linalg.norm(flv_expand(h, 0).modes[0]) <= 1e-12 for h in on)
    off_ok = all(np.linalg.norm(flv_expand(h, 0).modes[0]) > 1e-6 for h in off)
    ok = (
        abs(k0 - 2) <= 1e-10
        and abs(kp - 1.5) <= 1e-10
        and abs(ep.xi ** 2 - 2) <= 1e-10
        and abs(ep.eta ** 2 - 2) <= 1e-10
        and b0 <= 1e-12
        and on_ok
        and off_ok
    )
    return ok, (
        f"K0={k0:.12f} K+={kp:.12f} xi^2={ep.xi ** 2:.12f} eta^2={ep.eta ** 2:.12f} "
        f"|B0|={b0:.1e} dp-condition on={on_ok} off={off_ok}"
    )


TABLE = {
    "F2-EP4": ((4, 1, 4, 1), 1, 1),
    "F2-31": ((4, 2, 3, 1), 1, 1),
    "F2-22": ((4, 2, 2, 2), 5, 4),
    "F2-211": ((4, 3, 2, 1), 3, 3),
}


def check_4():
    parts, ok = [], True
    for name, (sig, eta2, xi2) in TABLE.items():
        r = classify(FIXTURES[name], 0)
        good = r.signature == sig and abs(r.eta ** 2 - eta2) <= 1e-9 and abs(r.xi ** 2 - xi2) <= 1e-9
        ok &= good
        parts.append(f"{name} {r.signature} eta^2={r.eta ** 2:.10g} xi^2={r.xi ** 2:.10g}")
    return ok, "; ".join(parts)


def check_5():
    worst = 0.0
    for f in (0.1, 0.5, 1, 2, 5):
        r = classify(four_level(0, a=1, b=-1, c=1, d=0, e=f, f=f), 0)
        eta2 = 3 + 2 * f * f
        xi2 = 0.5 * (eta2 + np.sqrt(eta2 ** 2 - 16 * f * f))
        worst = max(worst, abs(r.eta ** 2 - eta2), abs(r.xi ** 2 - xi2))
    f = 0.05
    small = classify(four_level(0, a=1, b=-1, c=1, d=0, e=f, f=f), 0).xi ** 2
    approx = 3 + 2 / 3 * f * f
    rel = abs(small - approx) / approx
    return worst <= 1e-8 and rel <= 0.01, f"curve error {worst:.2e} (limit 1e-8); small-f relative gap {rel:.2e} (limit 1e-2)"


def check_6():
    ep = power_sweep(FIXTURES["F1-EP"], 0, 2, 201, 0.1)
    dp = power_sweep(FIXTURES["F1-DP"], 0, 2, 201, 0.1)
    pe, pd = ep.powers.max(), dp.powers.max()
    ratio = pe / pd
    ok = 15 <= ratio <= 25 and abs(pe / 1250 - 1) <= 0.2 and abs(pd / 62.5 - 1) <= 0.2
    return ok, (
        f"EP peak {pe:.1f} at E={ep.energies[ep.powers.argmax()]:.3f}, DP peak {pd:.2f} at "
        f"E={dp.energies[dp.powers.argmax()]:.3f}, ratio {ratio:.2f}"
    )


def check_7():
    parts, ok = [], True
    for name, ell in (("F1-DP", 1), ("F1-EP", 2), ("F2-31", 3), ("F2-EP4", 4)):
        s = loglog_slope(FIXTURES[name], DEGENERATE_ENERGY[name])
        ok &= abs(s / (-2 * ell) - 1) <= 0.02
        parts.append(f"{name} {s:.4f} (target {-2 * ell})")
    return ok, "; ".join(parts)


def check_8():
    parts, ok = [], True
    for name, hp, eps in (("F1-EP", unit(3, 1, 0), 1e-4), ("F2-EP4", unit(4, 3, 0), 1e-8)):
        h = FIXTURES[name]
        r = classify(h, DEGENERATE_ENERGY[name])
        e1 = predict_polygons(h, hp, eps, r).matched_error
        e2 = predict_polygons(h, hp, eps / 2, r).matched_error
        bound = 10 * eps ** (2 / r.ell)
        target = 2 ** (-2 / r.ell)
        ratio = e2 / e1 if e1 > 0 else float("nan")
        good = e1 <= bound and abs(ratio / target - 1) <= 0.3
        ok &= good
        parts.append(f"{name} err {e1:.1e}<= {bound:.0e}, halving ratio {ratio:.3f} vs {target:.3f}")
    h0, hp = double_jordan(1.0, 3.0)
    r = classify(h0, 0)
    pred = predict_polygons(h0, hp, 1e-6, r)
    moduli = sorted(abs(z) for z in pred.exact_roots)
    expect = abs(pred.sectors[0].h / pred.sectors[1].h) ** (1 / r.ell)
    got = moduli[-1] / moduli[0]
    two = len(pred.sectors) == 2 and abs(got / expect - 1) <= 0.05
    ok &= two
    parts.append(f"beta=2 radius ratio {got:.6f} vs {expect:.6f}")
    return ok, "; ".join(parts)


def check_9():
    errors, ratios = [], []
    for t in range(2, 9):
        c = 10.0 ** (-t)
        h = three_level(1, 1, 1, c, 1)
        # the member of the split pair with the larger real part
        root = max((z for z, _ in eigenvalue_clusters(h) if abs(z - 1) < 0.5), key=lambda z: z.real)
        exp = flv_expand(h, root)
        errors.append(abs(strength_function(exp, 2, 0) - 2))
        k = petermann_simple(exp)
        ratios.append(k * abs(2 * (root - 1)) ** 2 / 2)
    monotone = all(b < a for a, b in zip(errors, errors[1:]))
    final_ok = errors[-1] <= 1e-6
    link_ok = all(abs(x - 1) <= 0.05 for x in ratios)
    return monotone and final_ok and link_ok, (
        f"|eta(2,0)^2-2| from {errors[0]:.2e} to {errors[-1]:.2e} monotone={monotone} "
        f"(final limit 1e-6); Petermann/link ratio within [{min(ratios):.4f}, {max(ratios):.4f}]"
    )


def check_10():
    mismatches = []
    for name in FIXTURES:
        for command in ("analyze", "modes"):
            cmd = [sys.executable, "-m", "nhresponse.cli", command, str(DATA / f"{name}.json")]
            runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
            golden = (GOLDEN / f"{command}-{name}.json").read_bytes()
            if not runs[0] == runs[1] == golden:
                mismatches.append(f"{command}-{name}")
    return not mismatches, f"{2 * len(FIXTURES)} golden files, mismatches: {mismatches or 'none'}"


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8, check_9, check_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_acceptance_criterion(number, capsys):
    ok, detail = CHECKS[number - 1]()
    verdict(number, ok, detail, capsys)


if __name__ == "__main__":
    failed = 0
    for i, check in enumerate(CHECKS, 1):
        ok, detail = check()
        print(f"{'PASS' if ok else 'FAIL'} criterion {i}: {detail}")
        failed += not ok
    sys.exit(1 if failed else 0)
