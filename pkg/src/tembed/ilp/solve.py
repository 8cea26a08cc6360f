"""Public solving entry points for 0-1 maximization models.

solve() runs exact branch and bound. With a target it stops as soon as any
feasible point reaches it (ReachedTarget) or proves none can
(BoundBelowTarget / Infeasible); without one it proves optimality. Every
prune in the kernels is backed by a dual-certified bound, so the Optimal /
BoundBelowTarget / Infeasible verdicts are exact for integral objectives.
A time limit turns an unfinished run into TimeLimit with the best
incumbent and a still-valid global bound.
"""

from __future__ import annotations

from .kernel import KERNEL_NAME, load_kernel
from .kernel import lp_bound as _kernel_lp_bound
from .kernel import search as _kernel_search
from .model import IlpModel, ModelArrays, SolveOutcome, SolveStatus

_STATUS_BY_CODE = (
    SolveStatus.REACHED_TARGET,
    SolveStatus.OPTIMAL,
    SolveStatus.BOUND_BELOW_TARGET,
    SolveStatus.INFEASIBLE,
    SolveStatus.TIME_LIMIT,
)

LP_ROWS_MAX = 800


def solve(
    model: IlpModel | ModelArrays,
    target: float | None = None,
    time_limit: float | None = None,
    lp_rows_max: int = LP_ROWS_MAX,
    lp_stride: int = 1,
    kernel: str | None = None,
) -> SolveOutcome:
    arr = model.to_arrays() if isinstance(model, IlpModel) else model
    if kernel is None:
        run, kname = _kernel_search, KERNEL_NAME
    else:
        mod = load_kernel(kernel)
        run, kname = mod.search, mod.KERNEL_NAME
    res = run(
        arr.n_vars,
        arr.n_rows,
        arr.obj,
        arr.indptr,
        arr.cols,
        arr.vals,
        arr.sense,
        arr.rhs,
        arr.cindptr,
        arr.crows,
        arr.cvals,
        arr.integral_obj,
        target,
        time_limit,
        int(lp_rows_max),
        max(1, int(lp_stride)),
    )
    return SolveOutcome(
        status=_STATUS_BY_CODE[res["status"]],
        value=res["value"],
        assignment=tuple(res["x"]) if res["x"] is not None else None,
        bound=res["bound"],
        nodes=res["nodes"],
        wall_time=res["wall_time"],
        kernel=kname,
        lp_calls=res["lp_calls"],
    )


def lp_relaxation_bound(
    model: IlpModel | ModelArrays,
    fixed: dict[int | str, int] | None = None,
) -> float:
    """Certified upper bound on every 0-1 completion of a partial assignment.

    fixed maps variables (by index, or by name on an IlpModel) to 0 or 1;
    those coordinates are pinned and the remaining box is relaxed. The
    result is dual-certified and never exceeds the trivial box bound, so it
    is at least as tight while staying valid. An empty model bounds to 0.
    """
    arr = model.to_arrays() if isinstance(model, IlpModel) else model
    if arr.n_vars == 0:
        return 0.0
    lb = [0.0] * arr.n_vars
    ub = [1.0] * arr.n_vars
    for key, val in (fixed or {}).items():
        if isinstance(key, str):
            if not isinstance(model, IlpModel):
                raise TypeError("name keys in fixed need an IlpModel, not raw arrays")
            j = model.var(key)
        else:
            j = int(key)
            if not 0 <= j < arr.n_vars:
                raise IndexError(f"fixed variable index {j} out of range")
        if val not in (0, 1):
            raise ValueError(f"fixed value for variable {key!r} must be 0 or 1")
        lb[j] = ub[j] = float(val)
    return float(
        _kernel_lp_bound(
            arr.n_vars,
            arr.n_rows,
            arr.obj,
            arr.indptr,
            arr.cols,
            arr.vals,
            arr.sense,
            arr.rhs,
            arr.cindptr,
            arr.crows,
            arr.cvals,
            lb,
            ub,
        )
    )
