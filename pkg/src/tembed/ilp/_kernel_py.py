"""Pure-Python search kernel for 0-1 maximization models.

Depth-first branch and bound with:

* incremental constraint propagation (activity bounds per row, unit fixes
  to fixpoint, conflict detection);
* a bounded-variable dual simplex on the node's live bounds, run when the
  model is small enough (lp_rows_max gate), warm-started from the slack
  basis. Its result is never trusted directly: every prune uses a
  Lagrangian bound L(y) evaluated from the final duals after clipping them
  to the valid sign cone, so simplex convergence affects speed only;
* branching on the most-fractional LP variable (ties to the lowest index,
  1 first), or on the free variable with the highest conflict score when
  the LP is gated off. Scores count how often a variable's rows produced
  a propagation conflict and are halved every 256 conflicts, so branching
  chases the currently contested part of the model; scoreless ties fall
  back to the lowest index with the objective-sign value preference.

The compiled kernel in _kernel.pyx mirrors this module; keep them in step.
"""

from __future__ import annotations

import time

import numpy as np

KERNEL_NAME = "python"

REACHED_TARGET, OPTIMAL, BOUND_BELOW_TARGET, INFEASIBLE, TIME_LIMIT = range(5)

FEAS_TOL = 1e-7
SAFETY = 1e-6
PIVOT_TOL = 1e-9
BIG = float("inf")


def _col_dots(cindptr, crows, cvals, vec):
    """Per-column dot products A_j . vec for CSC arrays, empty-column safe."""
    t = cvals * vec[crows]
    cs = np.concatenate(([0.0], np.cumsum(t)))
    return cs[cindptr[1:]] - cs[cindptr[:-1]]


class _Lp:
    """Bounded-variable dual simplex over A x + s = rhs with status-coded
    slack bounds. Solves max obj.x for the caller-supplied box [lb, ub]."""

    def __init__(self, n, m, obj, indptr, cols, vals, sense, rhs, cindptr, crows, cvals):
        self.n, self.m = n, m
        self.obj = obj
        self.indptr, self.cols, self.vals = indptr, cols, vals
        self.sense, self.rhs = sense, rhs
        self.cindptr, self.crows, self.cvals = cindptr, crows, cvals
        # slack boxes by sense: <= gives [0, inf), >= gives (-inf, 0], = gives [0, 0]
        self.slack_lb = np.where(sense == 1, -BIG, 0.0)
        self.slack_ub = np.where(sense == 0, BIG, 0.0)
        self.max_iter = 40 * (m + 1) + 2 * n + 200

    def solve(self, lb, ub):
        """Returns (certified_bound, x or None, optimal flag).

        certified_bound is a valid upper bound on the box-constrained
        integer problem regardless of convergence; x is the primal point
        when the simplex finished optimal. A certified-infeasible LP
        returns (-inf, None, True).
        """
        n, m = self.n, self.m
        if m == 0:
            x = np.where(self.obj > 0, ub, lb).astype(float)
            return self._trivial(lb, ub) + SAFETY, x, True
        nt = n + m
        lo = np.concatenate((lb, self.slack_lb))
        hi = np.concatenate((ub, self.slack_ub))
        cost = np.concatenate((self.obj, np.zeros(m)))

        # slack basis; structurals start at their objective-favoring bound,
        # which is dual feasible by construction
        vstat = np.where(cost[:n] > 0, 1, 0).astype(np.int8)  # 0 at lb, 1 at ub
        fixed = lo[:n] >= hi[:n] - 1e-12
        vstat[fixed & (vstat == 1)] = 1  # value identical either way
        x = np.where(vstat == 1, hi[:n], lo[:n]).astype(float)

        basis = np.arange(n, nt, dtype=np.int64)
        in_basis = np.zeros(nt, dtype=bool)
        in_basis[n:] = True
        at_ub = np.zeros(nt, dtype=bool)
        at_ub[:n] = vstat == 1
        binv = np.eye(m)
        self._binv_ref = binv
        d = cost.copy()  # reduced costs; basic entries forced to 0 below
        d[n:] = 0.0

        # basic values
        row_act = np.add.reduceat(self.vals * x[self.cols], self.indptr[:-1]) if len(self.vals) else np.zeros(m)
        if self.indptr[-1] == 0:
            row_act = np.zeros(m)
        xb = self.rhs - row_act

        nb_val = np.where(at_ub, hi, lo)

        for _ in range(self.max_iter):
            bl = lo[basis]
            bu = hi[basis]
            below = bl - xb
            above = xb - bu
            viol = np.maximum(below, above)
            r = int(np.argmax(viol))
            if viol[r] <= FEAS_TOL:
                return self._finish_optimal(lb, ub, basis, xb, nb_val, in_basis)

            exit_low = below[r] >= above[r]
            rho = binv[r]
            alpha = np.empty(nt)
            alpha[:n] = _col_dots(self.cindptr, self.crows, self.cvals, rho)
            alpha[n:] = rho

            movable = ~in_basis & (hi > lo + 1e-12)
            if exit_low:
                elig = movable & ((~at_ub & (alpha < -PIVOT_TOL)) | (at_ub & (alpha > PIVOT_TOL)))
            else:
                elig = movable & ((~at_ub & (alpha > PIVOT_TOL)) | (at_ub & (alpha < -PIVOT_TOL)))
            idx = np.nonzero(elig)[0]
            if len(idx) == 0:
                if self._infeasible_certified(rho, alpha, lo, hi, exit_low):
                    return -BIG, None, True
                return self._finish_bound_only(lb, ub, basis)

            ratios = np.abs(d[idx]) / np.abs(alpha[idx])
            q = int(idx[np.argmin(ratios)])

            # pivot q into row r
            w = np.empty(m)
            aq = alpha[q]
            if q < n:
                w[:] = 0.0
                for p in range(self.cindptr[q], self.cindptr[q + 1]):
                    w += self.cvals[p] * binv[:, self.crows[p]]
            else:
                w = binv[:, q - n].copy()

            bound_r = bl[r] if exit_low else bu[r]
            t = (xb[r] - bound_r) / aq
            theta = d[q] / aq

            xb -= t * w
            xq_new = nb_val[q] + t
            leaving = basis[r]
            basis[r] = q
            in_basis[leaving] = False
            in_basis[q] = True
            at_ub[leaving] = not exit_low
            nb_val[leaving] = bound_r
            xb[r] = xq_new

            piv = w[r]
            brow = binv[r] / piv
            w[r] = 0.0
            binv -= np.outer(w, brow)
            binv[r] = brow

            d -= theta * alpha
            d[q] = 0.0

        return self._finish_bound_only(lb, ub, basis)

    def _duals(self, basis, binv):
        cb = np.zeros(self.m)
        struct = basis < self.n
        cb[struct] = self.obj[basis[struct]]
        return cb @ binv

    def _certify(self, lb, ub, y):
        """Lagrangian bound from clipped duals; valid for any y."""
        y = y.copy()
        y[self.sense == 0] = np.maximum(y[self.sense == 0], 0.0)
        y[self.sense == 1] = np.minimum(y[self.sense == 1], 0.0)
        d = self.obj - _col_dots(self.cindptr, self.crows, self.cvals, y)
        box = np.where(d > 0, d * ub, d * lb)
        return float(y @ self.rhs + box.sum())

    def _trivial(self, lb, ub):
        return float(np.where(self.obj > 0, self.obj * ub, self.obj * lb).sum())

    def _finish_bound_only(self, lb, ub, basis):
        y = self._duals(basis, self._binv_ref)
        bound = min(self._certify(lb, ub, y), self._trivial(lb, ub))
        return bound + SAFETY, None, False

    def _finish_optimal(self, lb, ub, basis, xb, nb_val, in_basis):
        x = nb_val[: self.n].copy()
        for r, b in enumerate(basis):
            if b < self.n:
                x[b] = xb[r]
        y = self._duals(basis, self._binv_ref)
        bound = min(self._certify(lb, ub, y), self._trivial(lb, ub))
        return bound + SAFETY, x, True

    def _infeasible_certified(self, rho, alpha, lo, hi, exit_low):
        """Interval-arithmetic check that row rho.(Ax + s) = rho.rhs cannot
        hold inside the box; makes an infeasibility verdict safe to act on."""
        target = float(rho @ self.rhs)
        lo_sum = hi_sum = 0.0
        for j in range(len(alpha)):
            a = alpha[j]
            if a == 0.0:
                continue
            l, u = lo[j], hi[j]
            t1, t2 = a * l, a * u
            lo_sum += min(t1, t2)
            hi_sum += max(t1, t2)
            if lo_sum == -BIG and hi_sum == BIG:
                return False
        return target < lo_sum - 1e-6 or target > hi_sum + 1e-6


def search(
    n_vars,
    n_rows,
    obj,
    indptr,
    cols,
    vals,
    sense,
    rhs,
    cindptr,
    crows,
    cvals,
    integral_obj,
    target,
    time_limit,
    lp_rows_max,
    lp_stride,
):
    """Run the DFS; returns a plain dict consumed by tembed.ilp.solve."""
    t0 = time.monotonic()
    n, m = int(n_vars), int(n_rows)
    obj_l = [float(v) for v in obj]
    indptr_l = [int(v) for v in indptr]
    cols_l = [int(v) for v in cols]
    vals_l = [float(v) for v in vals]
    sense_l = [int(v) for v in sense]
    rhs_l = [float(v) for v in rhs]
    cindptr_l = [int(v) for v in cindptr]
    crows_l = [int(v) for v in crows]
    cvals_l = [float(v) for v in cvals]

    lb = [0] * n
    ub = [1] * n

    min_act = [0.0] * m
    max_act = [0.0] * m
    for r in range(m):
        lo_a = hi_a = 0.0
        for p in range(indptr_l[r], indptr_l[r + 1]):
            a = vals_l[p]
            if a < 0:
                lo_a += a
            else:
                hi_a += a
        min_act[r] = lo_a
        max_act[r] = hi_a

    surrogate = sum(a for a in obj_l if a > 0)

    queue: list[int] = list(range(m))
    in_queue = [True] * m

    trail: list[int] = []
    # frames: [var, first_value, trail_mark, second_done, bound_at_push]
    frames: list[list] = []

    vscore = [0.0] * n
    conflicts = 0

    def bump_row(r: int) -> None:
        nonlocal conflicts
        for p in range(indptr_l[r], indptr_l[r + 1]):
            vscore[cols_l[p]] += 1.0
        conflicts += 1
        if conflicts % 256 == 0:
            for j in range(n):
                vscore[j] *= 0.5

    inc_val = None
    inc_x: list[int] | None = None
    pruned_bound = -BIG
    root_bound = BIG
    nodes = 0
    lp_calls = 0
    obj_vars = [j for j in range(n) if obj_l[j] != 0.0]
    use_lp_model = 0 < m <= lp_rows_max and n > 0
    lp = (
        _Lp(
            n,
            m,
            np.asarray(obj, dtype=float),
            np.asarray(indptr, dtype=np.int64),
            np.asarray(cols, dtype=np.int64),
            np.asarray(vals, dtype=float),
            np.asarray(sense, dtype=np.int64),
            np.asarray(rhs, dtype=float),
            np.asarray(cindptr, dtype=np.int64),
            np.asarray(crows, dtype=np.int64),
            np.asarray(cvals, dtype=float),
        )
        if use_lp_model
        else None
    )

    def need() -> float:
        want = -BIG
        if inc_val is not None:
            want = inc_val + (1.0 if integral_obj else 1e-9)
        if target is not None:
            want = max(want, float(target))
        return want

    def fix(j: int, v: int) -> bool:
        """Fix free var j to v, updating activities; False on contradiction."""
        nonlocal surrogate
        if lb[j] == ub[j]:
            return lb[j] == v
        lb[j] = v
        ub[j] = v
        trail.append(j)
        o = obj_l[j]
        if o > 0:
            surrogate += o * (v - 1)
        elif o < 0:
            surrogate += o * v
        for p in range(cindptr_l[j], cindptr_l[j + 1]):
            r = crows_l[p]
            a = cvals_l[p]
            av = a * v
            min_act[r] += av - (a if a < 0 else 0.0)
            max_act[r] += av - (a if a > 0 else 0.0)
            if not in_queue[r]:
                in_queue[r] = True
                queue.append(r)
        return True

    def unfix_to(mark: int) -> None:
        nonlocal surrogate
        while len(trail) > mark:
            j = trail.pop()
            v = lb[j]
            o = obj_l[j]
            if o > 0:
                surrogate -= o * (v - 1)
            elif o < 0:
                surrogate -= o * v
            for p in range(cindptr_l[j], cindptr_l[j + 1]):
                r = crows_l[p]
                a = cvals_l[p]
                av = a * v
                min_act[r] -= av - (a if a < 0 else 0.0)
                max_act[r] -= av - (a if a > 0 else 0.0)
            lb[j] = 0
            ub[j] = 1

    def drain_queue() -> None:
        while queue:
            in_queue[queue.pop()] = False

    def propagate() -> bool:
        while queue:
            r = queue.pop()
            in_queue[r] = False
            s = sense_l[r]
            b = rhs_l[r]
            if s != 1:  # <= or =
                if min_act[r] > b + FEAS_TOL:
                    bump_row(r)
                    drain_queue()
                    return False
                slack = b - min_act[r]
                for p in range(indptr_l[r], indptr_l[r + 1]):
                    j = cols_l[p]
                    if lb[j] != ub[j]:
                        a = vals_l[p]
                        if a > slack + FEAS_TOL:
                            if not fix(j, 0):
                                bump_row(r)
                                drain_queue()
                                return False
                            slack = b - min_act[r]
                        elif -a > slack + FEAS_TOL:
                            if not fix(j, 1):
                                bump_row(r)
                                drain_queue()
                                return False
                            slack = b - min_act[r]
            if s != 0:  # >= or =
                if max_act[r] < b - FEAS_TOL:
                    bump_row(r)
                    drain_queue()
                    return False
                gap = max_act[r] - b
                for p in range(indptr_l[r], indptr_l[r + 1]):
                    j = cols_l[p]
                    if lb[j] != ub[j]:
                        a = vals_l[p]
                        if a > gap + FEAS_TOL:
                            if not fix(j, 1):
                                bump_row(r)
                                drain_queue()
                                return False
                            gap = max_act[r] - b
                        elif -a > gap + FEAS_TOL:
                            if not fix(j, 0):
                                bump_row(r)
                                drain_queue()
                                return False
                            gap = max_act[r] - b
        return True

    def backtrack() -> bool:
        nonlocal pruned_bound
        while frames:
            f = frames[-1]
            unfix_to(f[2])
            if not f[3]:
                f[3] = True
                fix(f[0], 1 - f[1])
                return True
            frames.pop()
        return False

    def leaf_value() -> float:
        return sum(obj_l[j] * lb[j] for j in range(n) if obj_l[j] != 0.0)

    def finish(status: int) -> dict:
        bound = root_bound
        if status in (OPTIMAL, BOUND_BELOW_TARGET, INFEASIBLE):
            if inc_val is not None:
                bound = inc_val if integral_obj else max(inc_val, pruned_bound)
                bound = min(bound, root_bound)
                if status == BOUND_BELOW_TARGET:
                    bound = min(max(inc_val, pruned_bound), root_bound)
            else:
                bound = min(pruned_bound, root_bound) if pruned_bound > -BIG else -BIG
        elif status == TIME_LIMIT:
            open_b = max((f[4] for f in frames), default=-BIG)
            bound = min(root_bound, max(inc_val if inc_val is not None else -BIG, open_b, pruned_bound))
            if bound == -BIG:
                bound = root_bound
        return {
            "status": status,
            "value": inc_val,
            "x": inc_x,
            "bound": bound,
            "nodes": nodes,
            "lp_calls": lp_calls,
            "wall_time": time.monotonic() - t0,
        }

    def record_incumbent(val: float, x: list[int]) -> int | None:
        nonlocal inc_val, inc_x
        if inc_val is None or val > inc_val:
            inc_val = val
            inc_x = x
            if target is not None and val >= target - 1e-9:
                return REACHED_TARGET
        return None

    def propagate_with_fixing() -> bool:
        """Row propagation interleaved with surrogate-based fixing: an
        objective variable whose off-preferred value already drops the
        node's best possible value under need() may be pinned. Discarded
        assignments score below want, which pruned_bound must cover."""
        nonlocal pruned_bound
        if not propagate():
            return False
        while True:
            want = need()
            if want == -BIG:
                return True
            did = False
            for j in obj_vars:
                if lb[j] != ub[j]:
                    o = obj_l[j]
                    if o > 0:
                        if surrogate - o < want - 1e-9:
                            fix(j, 1)
                            did = True
                    elif surrogate + o < want - 1e-9:
                        fix(j, 0)
                        did = True
            if not did:
                return True
            if integral_obj and float(want).is_integer():
                pruned_bound = max(pruned_bound, want - 1.0)
            else:
                pruned_bound = max(pruned_bound, want - 1e-9)
            if not propagate():
                return False

    while True:
        nodes += 1
        if time_limit is not None and time.monotonic() - t0 > time_limit:
            return finish(TIME_LIMIT)

        feasible = propagate_with_fixing()
        at_root = not frames
        if not feasible:
            if at_root:
                # a conflict after discarding-fixes only refutes reaching
                # the target, not feasibility itself
                if pruned_bound > -BIG and target is not None:
                    return finish(BOUND_BELOW_TARGET)
                return finish(INFEASIBLE)
            if not backtrack():
                break
            continue

        node_bound = surrogate
        want = need()
        lp_x = None
        if (
            lp is not None
            and node_bound >= want - SAFETY
            and len(frames) % lp_stride == 0
        ):
            lp_calls += 1
            lb_arr = np.array(lb, dtype=float)
            ub_arr = np.array(ub, dtype=float)
            cert, x_opt, optimal = lp.solve(lb_arr, ub_arr)
            node_bound = min(node_bound, cert)
            if optimal and x_opt is not None:
                rounded = np.rint(x_opt)
                if np.all(np.abs(x_opt - rounded) <= 1e-7):
                    xi = [int(v) for v in rounded]
                    if _check_feasible(xi, indptr_l, cols_l, vals_l, sense_l, rhs_l):
                        val = sum(obj_l[j] * xi[j] for j in range(n) if obj_l[j])
                        stop = record_incumbent(val, xi)
                        if at_root:
                            root_bound = min(root_bound, node_bound)
                        if stop is not None:
                            return finish(stop)
                        pruned_bound = max(pruned_bound, min(node_bound, val))
                        if not backtrack():
                            break
                        continue
                lp_x = x_opt
            elif optimal and x_opt is None:
                # certified infeasible
                node_bound = -BIG

        if at_root:
            root_bound = min(root_bound, node_bound)

        if node_bound < need() - SAFETY:
            pruned_bound = max(pruned_bound, node_bound)
            if at_root:
                break
            if not backtrack():
                break
            continue

        # pick a branching variable
        branch = -1
        first = 1
        if lp_x is not None:
            best = 1e-6
            for j in range(n):
                if lb[j] != ub[j]:
                    xv = lp_x[j]
                    f = xv - int(xv)
                    score = f if f <= 0.5 else 1.0 - f
                    if score > best:
                        best = score
                        branch = j
            first = 1
        if branch < 0:
            best_s = -1.0
            for j in range(n):
                if lb[j] != ub[j] and vscore[j] > best_s:
                    best_s = vscore[j]
                    branch = j
                    first = 1 if obj_l[j] > 0 else 0
        if branch < 0:
            # every variable fixed: feasible leaf
            val = leaf_value()
            stop = record_incumbent(val, list(lb))
            if stop is not None:
                return finish(stop)
            if not backtrack():
                break
            continue

        frames.append([branch, first, len(trail), False, node_bound])
        fix(branch, first)

    # tree exhausted
    if inc_val is None:
        if pruned_bound > -BIG and target is not None:
            return finish(BOUND_BELOW_TARGET)
        return finish(INFEASIBLE)
    if target is not None:
        return finish(BOUND_BELOW_TARGET if inc_val < target else REACHED_TARGET)
    return finish(OPTIMAL)


def _check_feasible(x, indptr, cols, vals, sense, rhs) -> bool:
    for r in range(len(sense)):
        act = 0.0
        for p in range(indptr[r], indptr[r + 1]):
            act += vals[p] * x[cols[p]]
        if sense[r] != 1 and act > rhs[r] + FEAS_TOL:
            return False
        if sense[r] != 0 and act < rhs[r] - FEAS_TOL:
            return False
    return True


def lp_bound(
    n_vars, n_rows, obj, indptr, cols, vals, sense, rhs, cindptr, crows, cvals, lb, ub
) -> float:
    """Certified LP-relaxation bound for the given box; -inf if certified
    infeasible. Never tighter than reality, never looser than the trivial
    box bound."""
    if n_vars == 0:
        return 0.0
    lp = _Lp(
        int(n_vars),
        int(n_rows),
        np.asarray(obj, dtype=float),
        np.asarray(indptr, dtype=np.int64),
        np.asarray(cols, dtype=np.int64),
        np.asarray(vals, dtype=float),
        np.asarray(sense, dtype=np.int64),
        np.asarray(rhs, dtype=float),
        np.asarray(cindptr, dtype=np.int64),
        np.asarray(crows, dtype=np.int64),
        np.asarray(cvals, dtype=float),
    )
    bound, _, _ = lp.solve(np.asarray(lb, dtype=float), np.asarray(ub, dtype=float))
    return bound
