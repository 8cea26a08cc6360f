# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled search kernel for 0-1 maximization models.

Same algorithm and result contract as _kernel_py.py (the readable
reference); keep the two in step. All hot loops run on typed memoryviews,
and the LP workspaces are allocated once per model instead of per call.
"""

import time

import numpy as np

from libc.math cimport HUGE_VAL, fabs, floor

KERNEL_NAME = "compiled"

REACHED_TARGET, OPTIMAL, BOUND_BELOW_TARGET, INFEASIBLE, TIME_LIMIT = range(5)

cdef double FEAS_TOL = 1e-7
cdef double SAFETY = 1e-6
cdef double PIVOT_TOL = 1e-9
cdef double BIG = HUGE_VAL


cdef class _Lp:
    """Bounded-variable dual simplex over A x + s = rhs with status-coded
    slack bounds. Solves max obj.x for the caller-supplied box [lb, ub]."""

    cdef:
        Py_ssize_t n, m, nt
        int max_iter
        double[::1] obj, vals, rhs, cvals
        long long[::1] indptr, cols, cindptr, crows, sense
        double[::1] lo, hi, cost, d, xb, nb_val, alpha, w, brow, y, x_out
        double[:, ::1] binv
        long long[::1] basis
        signed char[::1] in_basis, at_ub

    def __init__(self, n, m, obj, indptr, cols, vals, sense, rhs, cindptr, crows, cvals):
        self.n = n
        self.m = m
        self.nt = n + m
        self.obj = np.ascontiguousarray(obj, dtype=np.float64)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.cols = np.ascontiguousarray(cols, dtype=np.int64)
        self.vals = np.ascontiguousarray(vals, dtype=np.float64)
        self.sense = np.ascontiguousarray(sense, dtype=np.int64)
        self.rhs = np.ascontiguousarray(rhs, dtype=np.float64)
        self.cindptr = np.ascontiguousarray(cindptr, dtype=np.int64)
        self.crows = np.ascontiguousarray(crows, dtype=np.int64)
        self.cvals = np.ascontiguousarray(cvals, dtype=np.float64)
        self.max_iter = 40 * (m + 1) + 2 * n + 200

        cdef Py_ssize_t nt = self.nt
        self.lo = np.empty(nt)
        self.hi = np.empty(nt)
        self.cost = np.empty(nt)
        self.d = np.empty(nt)
        self.alpha = np.empty(nt)
        self.nb_val = np.empty(nt)
        self.xb = np.empty(m)
        self.w = np.empty(m)
        self.brow = np.empty(m)
        self.y = np.empty(m)
        self.x_out = np.empty(n)
        self.binv = np.empty((m, m))
        self.basis = np.empty(nt, dtype=np.int64)
        self.in_basis = np.empty(nt, dtype=np.int8)
        self.at_ub = np.empty(nt, dtype=np.int8)

        cdef Py_ssize_t j, r
        for j in range(n):
            self.cost[j] = self.obj[j]
        for r in range(m):
            self.cost[n + r] = 0.0
            # slack boxes by sense: <= gives [0, inf), >= gives (-inf, 0], = gives [0, 0]
            self.lo[n + r] = -BIG if self.sense[r] == 1 else 0.0
            self.hi[n + r] = BIG if self.sense[r] == 0 else 0.0

    cdef solve(self, double[::1] lb, double[::1] ub):
        """Returns (certified_bound, code) with code 0 = optimal, x in
        self.x_out; 1 = bound only; 2 = certified infeasible (bound -inf).
        certified_bound is a valid upper bound on the box-constrained
        integer problem regardless of convergence."""
        cdef Py_ssize_t n = self.n, m = self.m, nt = self.nt
        cdef Py_ssize_t i, j, r, k, q, p, b, leaving
        cdef double a, v, below, above, viol, worst, aq, t, theta, ratio, best_ratio
        cdef double bound_r, piv, wi, xq_new
        cdef bint exit_low, ok

        if m == 0:
            for j in range(n):
                self.x_out[j] = ub[j] if self.obj[j] > 0 else lb[j]
            return self._trivial(lb, ub) + SAFETY, 0

        for j in range(n):
            self.lo[j] = lb[j]
            self.hi[j] = ub[j]

        # slack basis; structurals start at their objective-favoring bound,
        # which is dual feasible by construction
        for j in range(n):
            self.at_ub[j] = 1 if self.obj[j] > 0 else 0
            self.in_basis[j] = 0
            self.nb_val[j] = self.hi[j] if self.at_ub[j] else self.lo[j]
            self.d[j] = self.cost[j]
        for r in range(m):
            self.basis[r] = n + r
            self.in_basis[n + r] = 1
            self.at_ub[n + r] = 0
            self.nb_val[n + r] = self.lo[n + r]
            self.d[n + r] = 0.0

        for r in range(m):
            v = 0.0
            for p in range(self.indptr[r], self.indptr[r + 1]):
                v += self.vals[p] * self.nb_val[self.cols[p]]
            self.xb[r] = self.rhs[r] - v

        for i in range(m):
            for k in range(m):
                self.binv[i, k] = 0.0
            self.binv[i, i] = 1.0

        cdef int it
        for it in range(self.max_iter):
            r = 0
            worst = -BIG
            for i in range(m):
                b = self.basis[i]
                v = self.xb[i]
                below = self.lo[b] - v
                above = v - self.hi[b]
                viol = below if below >= above else above
                if viol > worst:
                    worst = viol
                    r = i
            if worst <= FEAS_TOL:
                return self._finish(lb, ub, 1)

            b = self.basis[r]
            v = self.xb[r]
            exit_low = (self.lo[b] - v) >= (v - self.hi[b])

            # alpha = row r of B^-1 A over all columns, slacks included
            for j in range(n):
                a = 0.0
                for p in range(self.cindptr[j], self.cindptr[j + 1]):
                    a += self.cvals[p] * self.binv[r, self.crows[p]]
                self.alpha[j] = a
            for i in range(m):
                self.alpha[n + i] = self.binv[r, i]

            q = -1
            best_ratio = BIG
            for j in range(nt):
                if self.in_basis[j] or self.hi[j] <= self.lo[j] + 1e-12:
                    continue
                a = self.alpha[j]
                if exit_low:
                    ok = (a < -PIVOT_TOL) if not self.at_ub[j] else (a > PIVOT_TOL)
                else:
                    ok = (a > PIVOT_TOL) if not self.at_ub[j] else (a < -PIVOT_TOL)
                if not ok:
                    continue
                ratio = fabs(self.d[j]) / fabs(a)
                if ratio < best_ratio:
                    best_ratio = ratio
                    q = j
            if q < 0:
                if self._infeasible_certified(r, exit_low):
                    return -BIG, 2
                return self._finish(lb, ub, 0)

            # pivot q into row r
            aq = self.alpha[q]
            if q < n:
                for i in range(m):
                    self.w[i] = 0.0
                for p in range(self.cindptr[q], self.cindptr[q + 1]):
                    a = self.cvals[p]
                    k = self.crows[p]
                    for i in range(m):
                        self.w[i] += a * self.binv[i, k]
            else:
                k = q - n
                for i in range(m):
                    self.w[i] = self.binv[i, k]

            bound_r = self.lo[b] if exit_low else self.hi[b]
            t = (self.xb[r] - bound_r) / aq
            theta = self.d[q] / aq

            for i in range(m):
                self.xb[i] -= t * self.w[i]
            xq_new = self.nb_val[q] + t
            leaving = b
            self.basis[r] = q
            self.in_basis[leaving] = 0
            self.in_basis[q] = 1
            self.at_ub[leaving] = 0 if exit_low else 1
            self.nb_val[leaving] = bound_r
            self.xb[r] = xq_new

            piv = self.w[r]
            for k in range(m):
                self.brow[k] = self.binv[r, k] / piv
            self.w[r] = 0.0
            for i in range(m):
                wi = self.w[i]
                if wi != 0.0:
                    for k in range(m):
                        self.binv[i, k] -= wi * self.brow[k]
            for k in range(m):
                self.binv[r, k] = self.brow[k]

            for j in range(nt):
                self.d[j] -= theta * self.alpha[j]
            self.d[q] = 0.0

        return self._finish(lb, ub, 0)

    cdef double _certified_bound(self, double[::1] lb, double[::1] ub):
        """Lagrangian bound from the clipped duals; valid for any y."""
        cdef Py_ssize_t n = self.n, m = self.m
        cdef Py_ssize_t i, j, k, b, p
        cdef double cb, yv, tot, dj
        for k in range(m):
            self.y[k] = 0.0
        for i in range(m):
            b = self.basis[i]
            if b < n:
                cb = self.obj[b]
                if cb != 0.0:
                    for k in range(m):
                        self.y[k] += cb * self.binv[i, k]
        tot = 0.0
        for k in range(m):
            yv = self.y[k]
            if self.sense[k] == 0:
                if yv < 0.0:
                    yv = 0.0
            elif self.sense[k] == 1:
                if yv > 0.0:
                    yv = 0.0
            self.y[k] = yv
            tot += yv * self.rhs[k]
        for j in range(n):
            dj = self.obj[j]
            for p in range(self.cindptr[j], self.cindptr[j + 1]):
                dj -= self.cvals[p] * self.y[self.crows[p]]
            tot += dj * ub[j] if dj > 0.0 else dj * lb[j]
        return tot

    cdef double _trivial(self, double[::1] lb, double[::1] ub):
        cdef Py_ssize_t j
        cdef double tot = 0.0, o
        for j in range(self.n):
            o = self.obj[j]
            tot += o * ub[j] if o > 0.0 else o * lb[j]
        return tot

    cdef _finish(self, double[::1] lb, double[::1] ub, bint optimal):
        cdef double cert = self._certified_bound(lb, ub)
        cdef double triv = self._trivial(lb, ub)
        cdef double bound = (cert if cert < triv else triv) + SAFETY
        cdef Py_ssize_t i, b
        if optimal:
            for b in range(self.n):
                self.x_out[b] = self.nb_val[b]
            for i in range(self.m):
                b = self.basis[i]
                if b < self.n:
                    self.x_out[b] = self.xb[i]
            return bound, 0
        return bound, 1

    cdef bint _infeasible_certified(self, Py_ssize_t r, bint exit_low):
        """Interval-arithmetic check that row rho.(Ax + s) = rho.rhs cannot
        hold inside the box; makes an infeasibility verdict safe to act on."""
        cdef Py_ssize_t i, j
        cdef double target = 0.0, lo_sum = 0.0, hi_sum = 0.0, a, l, u, t1, t2
        for i in range(self.m):
            target += self.binv[r, i] * self.rhs[i]
        for j in range(self.nt):
            a = self.alpha[j]
            if a == 0.0:
                continue
            l = self.lo[j]
            u = self.hi[j]
            t1 = a * l
            t2 = a * u
            lo_sum += t1 if t1 <= t2 else t2
            hi_sum += t2 if t1 <= t2 else t1
            if lo_sum == -BIG and hi_sum == BIG:
                return False
        return target < lo_sum - 1e-6 or target > hi_sum + 1e-6


cdef class _Search:
    cdef:
        Py_ssize_t n, m
        double[::1] obj, vals, rhs, cvals
        long long[::1] indptr, cols, cindptr, crows, sense
        signed char[::1] lb, ub, in_queue, ffirst, fsecond, xi_buf
        double[::1] min_act, max_act, fbound, lbf, ubf, vscore
        int[::1] queue, trail, fvar, fmark, obj_vars
        Py_ssize_t qlen, tlen, depth, n_obj
        long long conflicts
        double surrogate, target, inc_val, pruned_bound, root_bound
        bint integral_obj, has_target, has_inc, has_limit
        double time_limit, t0
        long long nodes, lp_calls
        object inc_x
        _Lp lp
        int lp_stride

    def __init__(
        self,
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
        cdef Py_ssize_t n = n_vars, m = n_rows, r, p, j
        cdef double a, lo_a, hi_a
        self.n = n
        self.m = m
        self.obj = np.ascontiguousarray(obj, dtype=np.float64)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.cols = np.ascontiguousarray(cols, dtype=np.int64)
        self.vals = np.ascontiguousarray(vals, dtype=np.float64)
        self.sense = np.ascontiguousarray(sense, dtype=np.int64)
        self.rhs = np.ascontiguousarray(rhs, dtype=np.float64)
        self.cindptr = np.ascontiguousarray(cindptr, dtype=np.int64)
        self.crows = np.ascontiguousarray(crows, dtype=np.int64)
        self.cvals = np.ascontiguousarray(cvals, dtype=np.float64)

        self.lb = np.zeros(n, dtype=np.int8)
        self.ub = np.ones(n, dtype=np.int8)
        self.min_act = np.zeros(m)
        self.max_act = np.zeros(m)
        for r in range(m):
            lo_a = 0.0
            hi_a = 0.0
            for p in range(self.indptr[r], self.indptr[r + 1]):
                a = self.vals[p]
                if a < 0:
                    lo_a += a
                else:
                    hi_a += a
            self.min_act[r] = lo_a
            self.max_act[r] = hi_a

        self.surrogate = 0.0
        objv = []
        for j in range(n):
            a = self.obj[j]
            if a > 0:
                self.surrogate += a
            if a != 0.0:
                objv.append(j)
        self.obj_vars = np.asarray(objv, dtype=np.int32) if objv else np.empty(0, dtype=np.int32)
        self.n_obj = len(objv)

        self.queue = np.arange(m, dtype=np.int32) if m else np.empty(0, dtype=np.int32)
        self.in_queue = np.ones(m, dtype=np.int8)
        self.qlen = m
        self.trail = np.empty(n, dtype=np.int32)
        self.tlen = 0
        self.fvar = np.empty(n, dtype=np.int32)
        self.fmark = np.empty(n, dtype=np.int32)
        self.ffirst = np.empty(n, dtype=np.int8)
        self.fsecond = np.empty(n, dtype=np.int8)
        self.fbound = np.empty(n)
        self.depth = 0
        self.lbf = np.empty(n)
        self.ubf = np.empty(n)
        self.xi_buf = np.empty(n, dtype=np.int8)
        self.vscore = np.zeros(n)
        self.conflicts = 0

        self.integral_obj = bool(integral_obj)
        self.has_target = target is not None
        self.target = float(target) if target is not None else 0.0
        self.has_limit = time_limit is not None
        self.time_limit = float(time_limit) if time_limit is not None else 0.0
        self.has_inc = False
        self.inc_val = -BIG
        self.inc_x = None
        self.pruned_bound = -BIG
        self.root_bound = BIG
        self.nodes = 0
        self.lp_calls = 0
        self.lp_stride = max(1, int(lp_stride))
        if 0 < m <= int(lp_rows_max) and n > 0:
            self.lp = _Lp(n, m, obj, indptr, cols, vals, sense, rhs, cindptr, crows, cvals)
        else:
            self.lp = None
        self.t0 = time.monotonic()

    cdef double need(self):
        cdef double want = -BIG
        if self.has_inc:
            want = self.inc_val + (1.0 if self.integral_obj else 1e-9)
        if self.has_target and self.target > want:
            want = self.target
        return want

    cdef bint fix(self, Py_ssize_t j, int v):
        cdef Py_ssize_t p, r
        cdef double a, av, o
        if self.lb[j] == self.ub[j]:
            return self.lb[j] == v
        self.lb[j] = v
        self.ub[j] = v
        self.trail[self.tlen] = j
        self.tlen += 1
        o = self.obj[j]
        if o > 0:
            self.surrogate += o * (v - 1)
        elif o < 0:
            self.surrogate += o * v
        for p in range(self.cindptr[j], self.cindptr[j + 1]):
            r = self.crows[p]
            a = self.cvals[p]
            av = a * v
            self.min_act[r] += av - (a if a < 0 else 0.0)
            self.max_act[r] += av - (a if a > 0 else 0.0)
            if not self.in_queue[r]:
                self.in_queue[r] = 1
                self.queue[self.qlen] = r
                self.qlen += 1
        return True

    cdef void unfix_to(self, Py_ssize_t mark):
        cdef Py_ssize_t j, p, r
        cdef double a, av, o
        cdef int v
        while self.tlen > mark:
            self.tlen -= 1
            j = self.trail[self.tlen]
            v = self.lb[j]
            o = self.obj[j]
            if o > 0:
                self.surrogate -= o * (v - 1)
            elif o < 0:
                self.surrogate -= o * v
            for p in range(self.cindptr[j], self.cindptr[j + 1]):
                r = self.crows[p]
                a = self.cvals[p]
                av = a * v
                self.min_act[r] -= av - (a if a < 0 else 0.0)
                self.max_act[r] -= av - (a if a > 0 else 0.0)
            self.lb[j] = 0
            self.ub[j] = 1

    cdef void drain(self):
        while self.qlen > 0:
            self.qlen -= 1
            self.in_queue[self.queue[self.qlen]] = 0

    cdef void bump_row(self, Py_ssize_t r):
        cdef Py_ssize_t p, j
        for p in range(self.indptr[r], self.indptr[r + 1]):
            self.vscore[self.cols[p]] += 1.0
        self.conflicts += 1
        if self.conflicts % 256 == 0:
            for j in range(self.n):
                self.vscore[j] *= 0.5

    cdef bint propagate(self):
        cdef Py_ssize_t r, p, j
        cdef long long s
        cdef double b, slack, gap, a
        while self.qlen > 0:
            self.qlen -= 1
            r = self.queue[self.qlen]
            self.in_queue[r] = 0
            s = self.sense[r]
            b = self.rhs[r]
            if s != 1:  # <= or =
                if self.min_act[r] > b + FEAS_TOL:
                    self.bump_row(r)
                    self.drain()
                    return False
                slack = b - self.min_act[r]
                for p in range(self.indptr[r], self.indptr[r + 1]):
                    j = self.cols[p]
                    if self.lb[j] != self.ub[j]:
                        a = self.vals[p]
                        if a > slack + FEAS_TOL:
                            if not self.fix(j, 0):
                                self.bump_row(r)
                                self.drain()
                                return False
                            slack = b - self.min_act[r]
                        elif -a > slack + FEAS_TOL:
                            if not self.fix(j, 1):
                                self.bump_row(r)
                                self.drain()
                                return False
                            slack = b - self.min_act[r]
            if s != 0:  # >= or =
                if self.max_act[r] < b - FEAS_TOL:
                    self.bump_row(r)
                    self.drain()
                    return False
                gap = self.max_act[r] - b
                for p in range(self.indptr[r], self.indptr[r + 1]):
                    j = self.cols[p]
                    if self.lb[j] != self.ub[j]:
                        a = self.vals[p]
                        if a > gap + FEAS_TOL:
                            if not self.fix(j, 1):
                                self.bump_row(r)
                                self.drain()
                                return False
                            gap = self.max_act[r] - b
                        elif -a > gap + FEAS_TOL:
                            if not self.fix(j, 0):
                                self.bump_row(r)
                                self.drain()
                                return False
                            gap = self.max_act[r] - b
        return True

    cdef bint propagate_with_fixing(self):
        """Row propagation interleaved with surrogate-based fixing: an
        objective variable whose off-preferred value already drops the
        node's best possible value under need() may be pinned. Discarded
        assignments score below want, which pruned_bound must cover."""
        cdef double want, o
        cdef Py_ssize_t k, j
        cdef bint did
        if not self.propagate():
            return False
        while True:
            want = self.need()
            if want == -BIG:
                return True
            did = False
            for k in range(self.n_obj):
                j = self.obj_vars[k]
                if self.lb[j] != self.ub[j]:
                    o = self.obj[j]
                    if o > 0:
                        if self.surrogate - o < want - 1e-9:
                            self.fix(j, 1)
                            did = True
                    elif self.surrogate + o < want - 1e-9:
                        self.fix(j, 0)
                        did = True
            if not did:
                return True
            if self.integral_obj and want == floor(want):
                if want - 1.0 > self.pruned_bound:
                    self.pruned_bound = want - 1.0
            elif want - 1e-9 > self.pruned_bound:
                self.pruned_bound = want - 1e-9
            if not self.propagate():
                return False

    cdef bint backtrack(self):
        while self.depth > 0:
            self.unfix_to(self.fmark[self.depth - 1])
            if not self.fsecond[self.depth - 1]:
                self.fsecond[self.depth - 1] = 1
                self.fix(self.fvar[self.depth - 1], 1 - self.ffirst[self.depth - 1])
                return True
            self.depth -= 1
        return False

    cdef double leaf_value(self):
        cdef double tot = 0.0
        cdef Py_ssize_t k, j
        for k in range(self.n_obj):
            j = self.obj_vars[k]
            tot += self.obj[j] * self.lb[j]
        return tot

    cdef int record_incumbent(self, double val, x):
        if not self.has_inc or val > self.inc_val:
            self.has_inc = True
            self.inc_val = val
            self.inc_x = x
            if self.has_target and val >= self.target - 1e-9:
                return REACHED_TARGET
        return -1

    cdef bint check_feasible(self, signed char[::1] x):
        cdef Py_ssize_t r, p
        cdef double act
        for r in range(self.m):
            act = 0.0
            for p in range(self.indptr[r], self.indptr[r + 1]):
                act += self.vals[p] * x[self.cols[p]]
            if self.sense[r] != 1 and act > self.rhs[r] + FEAS_TOL:
                return False
            if self.sense[r] != 0 and act < self.rhs[r] - FEAS_TOL:
                return False
        return True

    cdef dict finish(self, int status):
        cdef double bound = self.root_bound
        cdef double open_b, cand
        cdef Py_ssize_t i
        if status == OPTIMAL or status == BOUND_BELOW_TARGET or status == INFEASIBLE:
            if self.has_inc:
                bound = self.inc_val if self.integral_obj else max(self.inc_val, self.pruned_bound)
                bound = min(bound, self.root_bound)
                if status == BOUND_BELOW_TARGET:
                    bound = min(max(self.inc_val, self.pruned_bound), self.root_bound)
            else:
                bound = min(self.pruned_bound, self.root_bound) if self.pruned_bound > -BIG else -BIG
        elif status == TIME_LIMIT:
            open_b = -BIG
            for i in range(self.depth):
                if self.fbound[i] > open_b:
                    open_b = self.fbound[i]
            cand = self.inc_val if self.has_inc else -BIG
            if open_b > cand:
                cand = open_b
            if self.pruned_bound > cand:
                cand = self.pruned_bound
            bound = min(self.root_bound, cand)
            if bound == -BIG:
                bound = self.root_bound
        return {
            "status": status,
            "value": self.inc_val if self.has_inc else None,
            "x": self.inc_x,
            "bound": bound,
            "nodes": self.nodes,
            "lp_calls": self.lp_calls,
            "wall_time": time.monotonic() - self.t0,
        }

    cdef dict run(self):
        cdef Py_ssize_t j, branch
        cdef int first, stop
        cdef double node_bound, want, val, f, score, best, xv, cert, cand
        cdef bint feasible, at_root, has_lp_x, ok_int
        cdef int code
        cdef double[::1] x_opt

        while True:
            self.nodes += 1
            if self.has_limit and time.monotonic() - self.t0 > self.time_limit:
                return self.finish(TIME_LIMIT)

            feasible = self.propagate_with_fixing()
            at_root = self.depth == 0
            if not feasible:
                if at_root:
                    # a conflict after discarding-fixes only refutes reaching
                    # the target, not feasibility itself
                    if self.pruned_bound > -BIG and self.has_target:
                        return self.finish(BOUND_BELOW_TARGET)
                    return self.finish(INFEASIBLE)
                if not self.backtrack():
                    break
                continue

            node_bound = self.surrogate
            want = self.need()
            has_lp_x = False
            if (
                self.lp is not None
                and node_bound >= want - SAFETY
                and self.depth % self.lp_stride == 0
            ):
                self.lp_calls += 1
                for j in range(self.n):
                    self.lbf[j] = self.lb[j]
                    self.ubf[j] = self.ub[j]
                cert, code = self.lp.solve(self.lbf, self.ubf)
                if cert < node_bound:
                    node_bound = cert
                if code == 0:
                    x_opt = self.lp.x_out
                    ok_int = True
                    for j in range(self.n):
                        xv = x_opt[j]
                        f = floor(xv + 0.5)
                        if fabs(xv - f) > 1e-7:
                            ok_int = False
                            break
                        self.xi_buf[j] = <signed char> f
                    if ok_int and self.check_feasible(self.xi_buf):
                        val = 0.0
                        for j in range(self.n):
                            if self.obj[j] != 0.0:
                                val += self.obj[j] * self.xi_buf[j]
                        stop = self.record_incumbent(val, [int(self.xi_buf[j]) for j in range(self.n)])
                        if at_root and node_bound < self.root_bound:
                            self.root_bound = node_bound
                        if stop >= 0:
                            return self.finish(stop)
                        cand = min(node_bound, val)
                        if cand > self.pruned_bound:
                            self.pruned_bound = cand
                        if not self.backtrack():
                            break
                        continue
                    has_lp_x = True
                elif code == 2:
                    # certified infeasible
                    node_bound = -BIG

            if at_root and node_bound < self.root_bound:
                self.root_bound = node_bound

            if node_bound < self.need() - SAFETY:
                if node_bound > self.pruned_bound:
                    self.pruned_bound = node_bound
                if at_root:
                    break
                if not self.backtrack():
                    break
                continue

            # pick a branching variable
            branch = -1
            first = 1
            if has_lp_x:
                best = 1e-6
                for j in range(self.n):
                    if self.lb[j] != self.ub[j]:
                        xv = self.lp.x_out[j]
                        f = xv - <long> xv
                        score = f if f <= 0.5 else 1.0 - f
                        if score > best:
                            best = score
                            branch = j
                first = 1
            if branch < 0:
                best = -1.0
                for j in range(self.n):
                    if self.lb[j] != self.ub[j] and self.vscore[j] > best:
                        best = self.vscore[j]
                        branch = j
                        first = 1 if self.obj[j] > 0 else 0
            if branch < 0:
                # every variable fixed: feasible leaf
                val = self.leaf_value()
                stop = self.record_incumbent(val, [int(self.lb[j]) for j in range(self.n)])
                if stop >= 0:
                    return self.finish(stop)
                if not self.backtrack():
                    break
                continue

            self.fvar[self.depth] = branch
            self.ffirst[self.depth] = first
            self.fmark[self.depth] = self.tlen
            self.fsecond[self.depth] = 0
            self.fbound[self.depth] = node_bound
            self.depth += 1
            self.fix(branch, first)

        # tree exhausted
        if not self.has_inc:
            if self.pruned_bound > -BIG and self.has_target:
                return self.finish(BOUND_BELOW_TARGET)
            return self.finish(INFEASIBLE)
        if self.has_target:
            return self.finish(BOUND_BELOW_TARGET if self.inc_val < self.target else REACHED_TARGET)
        return self.finish(OPTIMAL)


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
    cdef _Search s = _Search(
        int(n_vars),
        int(n_rows),
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
    )
    return s.run()


def lp_bound(
    n_vars, n_rows, obj, indptr, cols, vals, sense, rhs, cindptr, crows, cvals, lb, ub
):
    """Certified LP-relaxation bound for the given box; -inf if certified
    infeasible. Never tighter than reality, never looser than the trivial
    box bound."""
    if int(n_vars) == 0:
        return 0.0
    cdef _Lp lp = _Lp(
        int(n_vars),
        int(n_rows),
        obj,
        indptr,
        cols,
        vals,
        sense,
        rhs,
        cindptr,
        crows,
        cvals,
    )
    cdef double[::1] lbv = np.ascontiguousarray(lb, dtype=np.float64)
    cdef double[::1] ubv = np.ascontiguousarray(ub, dtype=np.float64)
    bound, _ = lp.solve(lbv, ubv)
    return float(bound)
