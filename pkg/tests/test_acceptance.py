"""Exit criteria. Every check is exact unless a time limit is stated.

Each test appends one PASS/FAIL line to RESULTS; conftest prints them in the
terminal summary.
"""

import random
import time
from fractions import Fraction as F

from recconv.analyzer import condition_v, decide_linear, quadratic_family
from recconv.dsl import from_recurrence, parse, render, to_recurrence
from recconv.gf_verifier import check_example_identity, check_linear_identity, linear_identity
from recconv.model import LinearRecurrence, PolynomialRecurrence, trajectory
from recconv.oracle import Converged, OracleConfig, decide_combined, simulate
from recconv.xval import GridSpec, linear_instances, linear_from_params, sweep_condition_v, sweep_linear

RESULTS: list[str] = []

CFG = OracleConfig(max_steps=300)
A_VALUES = [-1, "1/2", 1, 2]
C_VALUES = [0, 1, 3]
K_VALUES = [0, 1, 3]
GRID_12 = {"L": [1, 2], "a": A_VALUES, "c": C_VALUES, "K": K_VALUES, "d": [0]}
GRID_34 = {**GRID_12, "d": [1, "-1/2"]}


def record(n: int, text: str, ok: bool) -> None:
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {text}")
    print(RESULTS[-1])
    assert ok, text


def test_c01_homogeneous_sweep():
    t0 = time.perf_counter()
    rep = sweep_linear(GridSpec(GRID_12), CFG)
    elapsed = time.perf_counter() - t0
    ok = rep.total == 36 + 432 and not rep.mismatches and elapsed < 10
    record(1, f"{rep.total} instances, {len(rep.mismatches)} mismatches, {elapsed:.2f}s (<10s)", ok)


def test_c02_nonhomogeneous_sweep():
    rep = sweep_linear(GridSpec(GRID_34), CFG)
    zero = [r for r in rep.rows if r.params["K"] == 0]
    zero_ok = all(
        r.method == "theorem-3" and not r.condition and r.oracle != "converged" for r in zero
    )
    ok = rep.total == 2 * (36 + 432) and not rep.mismatches and zero_ok and len(zero) > 0
    record(2, f"{rep.total} instances, {len(rep.mismatches)} mismatches, {len(zero)} K=0 rows all theorem-3/no oracle convergence", ok)


def test_c03_asymptotic_is_not_exact():
    rec = LinearRecurrence(1, (F(1, 2),), (3,), 1)
    verdict, _ = decide_linear(rec, 2)
    orbit = trajectory(rec, 301)
    gaps_ok = all(abs(q - 2) == F(1, 2**i) for i, q in enumerate(orbit))
    out = simulate(rec, 2, CFG)
    ok = (
        verdict.outcome == "does-not-converge"
        and verdict.method == "theorem-4"
        and gaps_ok
        and 2 not in out.trajectory
        and not isinstance(out, Converged)
    )
    record(3, "q_i = 2 + 2^-i: theorem-4 negative, no term equals 2 in 300 steps", ok)


def test_c04_fibonacci_cancellation():
    r = check_linear_identity(LinearRecurrence(2, (1, 1), (0, 1)), None, 10)
    want = (0, 1) + (0,) * 9 + (-89, -55)
    ok = r.coefficients == tuple(F(x) for x in want)
    record(4, "Fibonacci N=10: R(x) = x - 89x^11 - 55x^12 exactly", ok)


def test_c05_family_cancellation():
    r = check_example_identity(1, 1, 0, 0, (1, 2, 3), None, 16)
    ok = r.middle_zero and all(r.coefficients[i] == 0 for i in range(3, 17))
    record(5, "quadratic family a=(1,1,0), c=(1,2,3), N=16: x^3..x^16 all zero", ok)


def test_c06_perturbation_sensitivity():
    rng = random.Random(6)
    broken = 0
    for _ in range(50):
        L = rng.randint(1, 3)
        a = [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(L - 1)]
        a.append(F(rng.choice([-2, -1, 1, 2]), rng.randint(1, 3)))
        c = [F(rng.randint(-3, 3)) for _ in range(L)]
        rec = LinearRecurrence(L, tuple(a), tuple(c), F(rng.randint(-1, 1)))
        N = 14
        p = trajectory(rec, N + 1)
        assert linear_identity(rec, p).middle_zero
        t = rng.randint(L, N - L)
        p[t] += 1
        if not linear_identity(rec, p).middle_zero:
            broken += 1
    record(6, f"+1 on an interior term breaks the middle in {broken}/50 instances", broken == 50)


def test_c07_condition_v_positive():
    v = condition_v(0, 1, 0, 0, 1, 1, 1, 1)
    out = simulate(quadratic_family(0, 1, 0, 0, (1, 1, 1)), 1, CFG)
    ok = v.overall and isinstance(out, Converged) and out.M == 0
    record(7, "a=(0,1,0), d=0, c=(1,1,1), K=1: V true and oracle M=0", ok)


def test_c08_condition_v_counterexample():
    v = condition_v(0, 0, 0, 1, 1, 1, 1, 1)
    out = simulate(quadratic_family(0, 0, 0, 1, (1, 1, 1)), 1, CFG)
    keys = ("a1", "a2", "a3", "d", "c0", "c1", "c2", "K")
    rep = sweep_condition_v(GridSpec({k: [x] for k, x in zip(keys, (0, 0, 0, 1, 1, 1, 1, 1))}), CFG)
    flagged = len(rep.mismatches) == 1 and rep.mismatches[0].index == 0
    ok = (not v.overall) and isinstance(out, Converged) and out.M == 0 and flagged
    record(8, "a=0, d=1, c=(1,1,1), K=1: V false, oracle M=0, sweep flags it", ok)


def test_c09_backward_uniqueness():
    rng = random.Random(9)
    vals = [F(-1), F(1, 2), F(1), F(2), F(0), F(3)]
    converged = bad = 0
    for _ in range(1000):
        L = rng.randint(1, 3)
        K = rng.choice([F(0), F(1), F(3)])
        d = rng.choice([F(0), F(1), F(-1, 2)])
        a = [rng.choice(vals) for _ in range(L - 1)] + [rng.choice(vals[:4])]
        c = [rng.choice([K, K, K, F(0), F(1)]) for _ in range(L)]
        if K != 0 and rng.random() < 0.5:
            fix = (1 - d / K) - sum(a[:-1], F(0))
            if fix != 0:
                a[-1] = fix
        out = simulate(LinearRecurrence(L, tuple(a), tuple(c), d), K, CFG)
        if isinstance(out, Converged):
            converged += 1
            bad += out.M != 0
    sq = simulate(PolynomialRecurrence(1, {(2,): 1}, (-1,)), 1, CFG)
    ok = bad == 0 and converged > 0 and isinstance(sq, Converged) and sq.M == 1
    record(9, f"{converged}/1000 linear runs converged, all with M=0; r=r^2 from -1 has M=1", ok)


def test_c10_analyze_is_fast():
    worst = 0.0
    count = 0
    for grid in (GRID_12, GRID_34):
        for p in linear_instances(GridSpec(grid)):
            text = render(from_recurrence(linear_from_params(p), F(p["K"])))
            t0 = time.perf_counter()
            f = parse(text)
            decide_combined(to_recurrence(f), f.target, CFG)
            worst = max(worst, time.perf_counter() - t0)
            count += 1
    big = [F(10**200 + i, 7**150) for i in range(8)]
    t0 = time.perf_counter()
    condition_v(*big)
    v_time = time.perf_counter() - t0
    ok = worst < 0.010 and v_time < 0.010
    record(10, f"parse+analyze worst {worst * 1e3:.2f} ms over {count} instances; V on 600-digit inputs {v_time * 1e3:.2f} ms", ok)
