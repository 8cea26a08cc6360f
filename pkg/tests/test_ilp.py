"""Exact 0-1 solver: model building, optimality against exhaustive
enumeration, target short-circuiting, bounds, and time limits."""

import itertools

import pytest

from tembed.ilp import (
    IlpModel,
    MalformedModelError,
    SolveStatus,
    lp_relaxation_bound,
    solve,
)
from tembed.ilp.kernel import KERNEL_NAME, available_kernels
from tembed.rng import SplitMix64


def random_model(rng: SplitMix64, n_vars=None, n_rows=None) -> IlpModel:
    n = n_vars if n_vars is not None else 2 + rng.randrange(9)
    m = n_rows if n_rows is not None else rng.randrange(2 * n + 1)
    mod = IlpModel(f"rnd{rng.randrange(10**6)}")
    xs = [mod.binary(f"x{j}") for j in range(n)]
    mod.maximize(
        {j: rng.randrange(21) - 10 for j in xs if rng.randrange(4) != 0}
    )
    for _ in range(m):
        coeffs = {
            j: rng.randrange(13) - 6 for j in xs if rng.randrange(3) != 0
        }
        coeffs = {j: a for j, a in coeffs.items() if a}
        if not coeffs:
            coeffs = {rng.randrange(n): 1 + rng.randrange(3)}
        rhs = rng.randrange(17) - 5
        kind = rng.randrange(6)
        if kind == 0:
            mod.add_ge(coeffs, rhs)
        elif kind == 1 and rng.randrange(2):
            # equalities kept satisfiable-ish but not always
            mod.add_eq(coeffs, rhs)
        else:
            mod.add_le(coeffs, rhs)
    return mod


def brute_force(mod: IlpModel):
    """(best value or None, feasible assignment count) by enumeration."""
    arrays = mod.to_arrays()
    best, feas = None, 0
    for bits in itertools.product((0, 1), repeat=mod.num_vars):
        ok = True
        for r in range(arrays.n_rows):
            lo, hi = arrays.indptr[r], arrays.indptr[r + 1]
            act = sum(
                arrays.vals[k] * bits[arrays.cols[k]] for k in range(lo, hi)
            )
            s = arrays.sense[r]
            if s == 0 and act > arrays.rhs[r] + 1e-9:
                ok = False
            elif s == 1 and act < arrays.rhs[r] - 1e-9:
                ok = False
            elif s == 2 and abs(act - arrays.rhs[r]) > 1e-9:
                ok = False
            if not ok:
                break
        if ok:
            feas += 1
            val = mod.objective_value(bits)
            if best is None or val > best:
                best = val
    return best, feas


def test_model_building_and_validation():
    mod = IlpModel("toy")
    x = mod.binary("x")
    y = mod.binary("y")
    mod.maximize({x: 2.0, y: 1.0})
    mod.add_le({x: 1, y: 1}, 1, name="pick_one")
    assert mod.num_vars == 2 and mod.num_rows == 1
    assert mod.var("y") == y
    with pytest.raises(MalformedModelError):
        mod.binary("x")
    with pytest.raises(MalformedModelError):
        mod.binary("1bad")
    with pytest.raises(MalformedModelError):
        mod.add_le({}, 1)
    with pytest.raises(MalformedModelError):
        mod.add_le({5: 1.0}, 1)
    with pytest.raises(MalformedModelError):
        mod.add_le({x: float("inf")}, 1)


def test_trivial_solutions():
    mod = IlpModel()
    x = mod.binary("x")
    mod.maximize({x: 3.0})
    out = solve(mod)
    assert out.status is SolveStatus.OPTIMAL
    assert out.value == 3.0
    assert out.assignment == (1,)

    mod2 = IlpModel()
    a = mod2.binary("a")
    mod2.maximize({a: -1.0})
    out2 = solve(mod2)
    assert out2.value == 0.0 and out2.assignment == (0,)


def test_infeasible_model():
    mod = IlpModel()
    x = mod.binary("x")
    mod.maximize({x: 1.0})
    mod.add_ge({x: 1}, 2)
    out = solve(mod)
    assert out.status is SolveStatus.INFEASIBLE
    assert out.value is None and out.assignment is None


@pytest.mark.parametrize("kernel", available_kernels())
def test_exhaustive_exactness(kernel):
    rng = SplitMix64(2024)
    for trial in range(120):
        mod = random_model(rng)
        expect, _ = brute_force(mod)
        out = solve(mod, kernel=kernel)
        if expect is None:
            assert out.status is SolveStatus.INFEASIBLE, (trial, mod.name)
        else:
            assert out.status is SolveStatus.OPTIMAL, (trial, mod.name)
            assert out.value == pytest.approx(expect, abs=1e-6), (trial, mod.name)
            assert out.assignment is not None
            assert mod.objective_value(out.assignment) == pytest.approx(
                out.value, abs=1e-9
            )


def test_solutions_are_feasible():
    rng = SplitMix64(77)
    for _ in range(40):
        mod = random_model(rng)
        out = solve(mod)
        if out.assignment is None:
            continue
        arrays = mod.to_arrays()
        x = out.assignment
        for r in range(arrays.n_rows):
            lo, hi = arrays.indptr[r], arrays.indptr[r + 1]
            act = sum(arrays.vals[k] * x[arrays.cols[k]] for k in range(lo, hi))
            s, b = arrays.sense[r], arrays.rhs[r]
            assert (
                (s == 0 and act <= b + 1e-7)
                or (s == 1 and act >= b - 1e-7)
                or (s == 2 and abs(act - b) <= 1e-7)
            )


def test_target_short_circuit():
    rng = SplitMix64(31)
    for _ in range(60):
        mod = random_model(rng)
        expect, _ = brute_force(mod)
        if expect is None:
            continue
        out = solve(mod, target=expect)
        assert out.status is SolveStatus.REACHED_TARGET
        assert out.value is not None and out.value >= expect - 1e-9
        above = solve(mod, target=expect + 0.5)
        assert above.status is SolveStatus.BOUND_BELOW_TARGET
        assert above.bound < expect + 0.5


def test_time_limit_reports_unknown():
    # a dense knapsack-ish model the search cannot finish in ~no time
    rng = SplitMix64(5150)
    mod = IlpModel("slow")
    xs = [mod.binary(f"x{j}") for j in range(46)]
    mod.maximize({j: 20 + rng.randrange(20) for j in xs})
    for r in range(40):
        mod.add_le({j: 1 + rng.randrange(9) for j in xs}, 60 + rng.randrange(40))
    out = solve(mod, time_limit=1e-4)
    assert out.status is SolveStatus.TIME_LIMIT
    assert out.wall_time >= 0.0


def test_lp_relaxation_dominates_integer_optimum():
    rng = SplitMix64(888)
    for _ in range(50):
        mod = random_model(rng)
        expect, _ = brute_force(mod)
        if expect is None:
            continue
        bound = lp_relaxation_bound(mod)
        assert bound >= expect - 1e-6


def test_lp_relaxation_fixed_vars():
    mod = IlpModel("caps")
    xs = [mod.binary(f"x{j}") for j in range(4)]
    mod.maximize({j: 1.0 for j in xs})
    mod.add_le({j: 1.0 for j in xs}, 2)
    assert 2.0 - 1e-9 <= lp_relaxation_bound(mod) <= 2.0 + 1e-5
    pinned = lp_relaxation_bound(mod, fixed={0: 0, 1: 0})
    assert 2.0 - 1e-9 <= pinned <= 2.0 + 1e-5
    squeezed = lp_relaxation_bound(mod, fixed={0: 0, 1: 0, 2: 0})
    assert 1.0 - 1e-9 <= squeezed <= 1.0 + 1e-5
    by_name = lp_relaxation_bound(mod, fixed={"x0": 1, "x1": 1, "x2": 1})
    assert by_name <= 2.0 + 1e-5
    with pytest.raises(ValueError):
        lp_relaxation_bound(mod, fixed={0: 2})
    with pytest.raises(IndexError):
        lp_relaxation_bound(mod, fixed={9: 1})


def test_empty_model_bound():
    assert lp_relaxation_bound(IlpModel()) == 0.0


def test_outcome_metadata():
    mod = IlpModel()
    x = mod.binary("x")
    mod.maximize({x: 1.0})
    out = solve(mod)
    assert out.kernel == KERNEL_NAME
    assert out.nodes >= 1
    assert out.wall_time >= 0.0
    assert out.reached(1.0) and not out.reached(1.5)


def test_lp_gating_options_agree():
    rng = SplitMix64(404)
    for _ in range(25):
        mod = random_model(rng)
        base = solve(mod)
        for kwargs in ({"lp_rows_max": 0}, {"lp_stride": 3}, {"lp_rows_max": 2}):
            out = solve(mod, **kwargs)
            assert out.status is base.status
            if base.value is not None:
                assert out.value == pytest.approx(base.value, abs=1e-6)
