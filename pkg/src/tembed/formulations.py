"""Embeddability into the block templates as exact 0-1 programs.

For the two-sided template the program is a certificate both ways: optimum
n means embeddable, a proven bound below n means no embedding into that
template exists. For the four-sided template the program under-approximates
adjacency (U2-U3 coupling is only used inside a single vertex's chain set,
never between two vertices), so a bound below n is reported as
NoSolutionFound rather than a refusal.

Variable naming is stable and file-friendly: y_<i>_<k> for membership of
vertex i in partition k, yp_<i> for the assigned flag, z_<i>_<j>_<k> for
the edge coverage choices.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

from .graphs import ProblemGraph, independence_number
from .ilp import IlpModel, SolveOutcome, SolveStatus, solve
from .templates import Template
from .verify import Embedding, embedding_from_chains


class KindMismatchError(ValueError):
    pass


class CapacityMismatchError(ValueError):
    pass


class IncompleteAssignmentError(ValueError):
    pass


class EmbedStatus(Enum):
    EMBEDDABLE = "Embeddable"
    NOT_EMBEDDABLE = "NotEmbeddable"
    NO_SOLUTION_FOUND = "NoSolutionFound"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class BteAssignment:
    """Two-sided membership per vertex; in_u1[i]/in_u2[i] say whether vertex
    i holds a chain on that side, assigned[i] that it holds at least one."""

    in_u1: tuple[bool, ...]
    in_u2: tuple[bool, ...]
    assigned: tuple[bool, ...]

    @property
    def n(self) -> int:
        return len(self.assigned)

    def doubled(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.in_u1[i] and self.in_u2[i])

    def side_counts(self) -> tuple[int, int]:
        return sum(self.in_u1), sum(self.in_u2)


@dataclass(frozen=True)
class QteAssignment:
    """Four-sided membership per vertex plus, per edge, the coverage label
    k in 1..4 naming the interface that realizes it."""

    membership: tuple[tuple[bool, bool, bool, bool], ...]
    assigned: tuple[bool, ...]
    edge_labels: dict[tuple[int, int], int]

    @property
    def n(self) -> int:
        return len(self.assigned)

    def part_counts(self) -> tuple[int, int, int, int]:
        c = [0, 0, 0, 0]
        for mem in self.membership:
            for k in range(4):
                c[k] += mem[k]
        return tuple(c)


@dataclass(frozen=True)
class EmbedResult:
    status: EmbedStatus
    assignment: BteAssignment | QteAssignment | None
    outcome: SolveOutcome

    @property
    def embeddable(self) -> bool:
        return self.status is EmbedStatus.EMBEDDABLE


def build_bte_model(g: ProblemGraph, cap1: int, cap2: int) -> IlpModel:
    """3n variables, n + 2 + 2|E| rows, objective = number of assigned
    vertices. The pairwise edge cuts forbid an edge whose endpoints sit on
    one common side with neither endpoint on the other side."""
    if cap1 < 0 or cap2 < 0:
        raise CapacityMismatchError(f"negative capacity ({cap1}, {cap2})")
    n = g.n
    mod = IlpModel("bte")
    y = [(mod.binary(f"y_{i}_1"), mod.binary(f"y_{i}_2")) for i in range(n)]
    yp = [mod.binary(f"yp_{i}") for i in range(n)]
    mod.maximize({v: 1.0 for v in yp})
    for i in range(n):
        mod.add_le({yp[i]: 1, y[i][0]: -1, y[i][1]: -1}, 0, name=f"link_{i}")
    if n:
        mod.add_le({y[i][0]: 1 for i in range(n)}, cap1, name="cap_1")
        mod.add_le({y[i][1]: 1 for i in range(n)}, cap2, name="cap_2")
    for i, j in g.edges:
        mod.add_le(
            {y[i][0]: 1, y[j][0]: 1, y[i][1]: -1, y[j][1]: -1}, 1, name=f"e_{i}_{j}_1"
        )
        mod.add_le(
            {y[i][1]: 1, y[j][1]: 1, y[i][0]: -1, y[j][0]: -1}, 1, name=f"e_{i}_{j}_2"
        )
    return mod


def _check_sizes(sizes) -> tuple[int, int, int, int]:
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) != 4:
        raise CapacityMismatchError(f"need four partition sizes, got {len(sizes)}")
    if any(s < 0 for s in sizes):
        raise CapacityMismatchError(f"negative partition size in {sizes}")
    return sizes


def build_qte_model(g: ProblemGraph, sizes) -> IlpModel:
    """5n + 4|E| variables; n link rows, 4 capacity rows, 4n contiguity
    rows, 8|E| pair rows, |E| coverage rows. Membership sets are forced to
    be intervals of U1..U4 and every edge must pick one of the four
    realizing interfaces (U1-U2, U2-U1, U3-U4, U4-U3)."""
    sizes = _check_sizes(sizes)
    n = g.n
    mod = IlpModel("qte")
    y = [tuple(mod.binary(f"y_{i}_{k}") for k in (1, 2, 3, 4)) for i in range(n)]
    yp = [mod.binary(f"yp_{i}") for i in range(n)]
    z = {
        (i, j): tuple(mod.binary(f"z_{i}_{j}_{k}") for k in (1, 2, 3, 4))
        for i, j in g.edges
    }
    mod.maximize({v: 1.0 for v in yp})
    for i in range(n):
        mod.add_le(
            {yp[i]: 1, y[i][0]: -1, y[i][1]: -1, y[i][2]: -1, y[i][3]: -1},
            0,
            name=f"link_{i}",
        )
    for k in range(4):
        if n:
            mod.add_le({y[i][k]: 1 for i in range(n)}, sizes[k], name=f"cap_{k + 1}")
    for i in range(n):
        a, b, c, d = y[i]
        mod.add_le({a: 1, c: 1, b: -1}, 1, name=f"ct_{i}_1")
        mod.add_le({b: 1, d: 1, c: -1}, 1, name=f"ct_{i}_2")
        mod.add_le({a: 1, d: 1, b: -1}, 1, name=f"ct_{i}_3")
        mod.add_le({a: 1, d: 1, c: -1}, 1, name=f"ct_{i}_4")
    # interface k pairs partition p_k of i with q_k of j
    pairs = ((0, 1), (1, 0), (2, 3), (3, 2))
    for i, j in g.edges:
        zz = z[(i, j)]
        for k, (p, q) in enumerate(pairs):
            mod.add_le({zz[k]: 1, y[i][p]: -1}, 0, name=f"ze_{i}_{j}_{k + 1}a")
            mod.add_le({zz[k]: 1, y[j][q]: -1}, 0, name=f"ze_{i}_{j}_{k + 1}b")
        mod.add_ge({zz[0]: 1, zz[1]: 1, zz[2]: 1, zz[3]: 1}, 1, name=f"cov_{i}_{j}")
    return mod


def _status_from(outcome: SolveOutcome, certificate: bool) -> EmbedStatus:
    if outcome.status is SolveStatus.REACHED_TARGET:
        return EmbedStatus.EMBEDDABLE
    if outcome.status is SolveStatus.TIME_LIMIT:
        return EmbedStatus.UNKNOWN
    return EmbedStatus.NOT_EMBEDDABLE if certificate else EmbedStatus.NO_SOLUTION_FOUND


def embed_bte(
    g: ProblemGraph,
    cap1: int,
    cap2: int,
    time_limit: float | None = None,
    **solve_kwargs,
) -> EmbedResult:
    """Decide embeddability into a two-sided template with the given side
    capacities. NotEmbeddable is a certificate: the proven bound is < n."""
    mod = build_bte_model(g, cap1, cap2)
    out = solve(mod, target=g.n, time_limit=time_limit, **solve_kwargs)
    status = _status_from(out, certificate=True)
    assignment = None
    if status is EmbedStatus.EMBEDDABLE:
        x = out.assignment
        in1 = tuple(bool(x[mod.var(f"y_{i}_1")]) for i in range(g.n))
        in2 = tuple(bool(x[mod.var(f"y_{i}_2")]) for i in range(g.n))
        assigned = tuple(a or b for a, b in zip(in1, in2))
        assignment = BteAssignment(in1, in2, assigned)
    return EmbedResult(status, assignment, out)


def _lift_from_bte(b: BteAssignment, g: ProblemGraph, sizes) -> QteAssignment | None:
    """Rewrite a full two-sided solution as a four-sided one.

    Side-2 chains become matched U2/U3 pairs and side-1 chains split across
    U1 and U4; a doubled vertex keeps a contiguous interval ({1,2,3} or
    {2,3,4}). Needs the side counts to fit (side 2 within min(|U2|, |U3|),
    side 1 within |U1| + |U4|), which the caller arranges via the caps it
    solved the two-sided program with.
    """
    s1, s2, s3, s4 = sizes
    side1 = [v for v in range(g.n) if b.in_u1[v]]
    if sum(b.in_u2) > min(s2, s3) or len(side1) > s1 + s4:
        return None
    upper = set(side1[:s1])
    membership = []
    for v in range(g.n):
        outer = b.in_u1[v]
        membership.append(
            (
                outer and v in upper,
                b.in_u2[v],
                b.in_u2[v],
                outer and v not in upper,
            )
        )
    labels: dict[tuple[int, int], int] = {}
    for i, j in g.edges:
        if b.in_u1[i] and b.in_u2[j]:
            labels[(i, j)] = 1 if i in upper else 4
        elif b.in_u2[i] and b.in_u1[j]:
            labels[(i, j)] = 2 if j in upper else 3
        else:
            return None
    return QteAssignment(tuple(membership), b.assigned, labels)


def embed_qte(
    g: ProblemGraph,
    sizes,
    time_limit: float | None = None,
    **solve_kwargs,
) -> EmbedResult:
    """Decide embeddability through the four-sided program. A proven bound
    below n only shows this formulation cannot place the graph, so the
    result is NoSolutionFound, not a certificate.

    Two presolves run before the program itself. First a bound: every edge
    interface needs an endpoint touching U1 or U4, so vertices touching
    neither form an independent set and the optimum is at most
    |U1| + |U4| + alpha(G); below n the target is unreachable and the
    solver is skipped. Then a lift: the much smaller two-sided program
    with caps (|U1| + |U4|, min(|U2|, |U3|)) is tried, and a full solution
    there rewrites directly into a four-sided one. Only the full program
    can refute. The search itself runs propagation-only by default: on
    this model class the LP relaxation guides branching worse than the
    feasibility dive and costs far more per node.
    """
    t0 = time.monotonic()
    solve_kwargs.setdefault("lp_rows_max", 0)
    sizes = _check_sizes(sizes)
    need_mid = g.n - sizes[0] - sizes[3]
    if need_mid > 0 and g.n <= 63:
        alpha = independence_number(g, at_least=need_mid)
        if alpha < need_mid:
            out = SolveOutcome(
                status=SolveStatus.BOUND_BELOW_TARGET,
                value=None,
                assignment=None,
                bound=float(sizes[0] + sizes[3] + alpha),
                nodes=0,
                wall_time=time.monotonic() - t0,
                kernel="presolve",
            )
            return EmbedResult(EmbedStatus.NO_SOLUTION_FOUND, None, out)
    lift_budget = None if time_limit is None else max(time_limit / 4.0, 0.05)
    two_sided = embed_bte(
        g, sizes[0] + sizes[3], min(sizes[1], sizes[2]), time_limit=lift_budget
    )
    if two_sided.status is EmbedStatus.EMBEDDABLE:
        lifted = _lift_from_bte(two_sided.assignment, g, sizes)
        if lifted is not None:
            out = SolveOutcome(
                status=SolveStatus.REACHED_TARGET,
                value=float(g.n),
                assignment=None,
                bound=float(g.n),
                nodes=two_sided.outcome.nodes,
                wall_time=time.monotonic() - t0,
                kernel="presolve",
            )
            return EmbedResult(EmbedStatus.EMBEDDABLE, lifted, out)
    mod = build_qte_model(g, sizes)
    if time_limit is not None:
        time_limit = max(time_limit - (time.monotonic() - t0), 0.01)
    out = solve(mod, target=g.n, time_limit=time_limit, **solve_kwargs)
    status = _status_from(out, certificate=False)
    assignment = None
    if status is EmbedStatus.EMBEDDABLE:
        x = out.assignment
        mem = tuple(
            tuple(bool(x[mod.var(f"y_{i}_{k}")]) for k in (1, 2, 3, 4))
            for i in range(g.n)
        )
        assigned = tuple(any(m) for m in mem)
        labels: dict[tuple[int, int], int] = {}
        for i, j in g.edges:
            for k in (1, 2, 3, 4):
                if x[mod.var(f"z_{i}_{j}_{k}")]:
                    labels[(i, j)] = k
                    break
        assignment = QteAssignment(mem, assigned, labels)
    return EmbedResult(status, assignment, out)


def assignment_to_physical(a: BteAssignment | QteAssignment, t: Template) -> Embedding:
    """Expand a feasible logical assignment into physical qubit chains.

    Chain slots are handed out greedily by ascending chain index within
    each partition; a vertex in both U2 and U3 takes the matched pair (same
    index on both sides) so its union stays connected.
    """
    if isinstance(a, BteAssignment):
        if t.kind != "bte":
            raise KindMismatchError(f"two-sided assignment vs {t.kind!r} template")
        return _bte_physical(a, t)
    if isinstance(a, QteAssignment):
        if t.kind != "qte":
            raise KindMismatchError(f"four-sided assignment vs {t.kind!r} template")
        return _qte_physical(a, t)
    raise KindMismatchError(f"unsupported assignment type {type(a).__name__}")


def _bte_physical(a: BteAssignment, t: Template) -> Embedding:
    side1, side2 = t.partitions
    c1, c2 = a.side_counts()
    if c1 > len(side1) or c2 > len(side2):
        raise CapacityMismatchError(
            f"assignment needs ({c1}, {c2}) chains, template has "
            f"({len(side1)}, {len(side2)})"
        )
    chains: dict[int, tuple[int, ...]] = {}
    next1 = next2 = 0
    for v in range(a.n):
        qubits: tuple[int, ...] = ()
        if a.in_u1[v]:
            qubits += side1[next1]
            next1 += 1
        if a.in_u2[v]:
            qubits += side2[next2]
            next2 += 1
        if not qubits:
            raise IncompleteAssignmentError(f"vertex {v} has no side")
        chains[v] = qubits
    return embedding_from_chains(a.n, t.host(), chains)


def _qte_physical(a: QteAssignment, t: Template) -> Embedding:
    u1, u2, u3, u4 = t.partitions
    counts = a.part_counts()
    limits = (len(u1), len(u2), len(u3), len(u4))
    if any(c > s for c, s in zip(counts, limits)):
        raise CapacityMismatchError(
            f"assignment needs {counts} chains, template has {limits}"
        )
    chains: dict[int, list[int]] = {v: [] for v in range(a.n)}
    # matched U2/U3 pairs first, so pair slots stay aligned
    pair_users = [v for v in range(a.n) if a.membership[v][1] and a.membership[v][2]]
    used2 = [False] * len(u2)
    used3 = [False] * len(u3)
    for slot, v in enumerate(pair_users):
        chains[v].extend(u2[slot])
        chains[v].extend(u3[slot])
        used2[slot] = used3[slot] = True
    free2 = iter(i for i, u in enumerate(used2) if not u)
    free3 = iter(i for i, u in enumerate(used3) if not u)
    next1 = next4 = 0
    for v in range(a.n):
        m1, m2, m3, m4 = a.membership[v]
        if m1:
            chains[v].extend(u1[next1])
            next1 += 1
        if m2 and not m3:
            chains[v].extend(u2[next(free2)])
        if m3 and not m2:
            chains[v].extend(u3[next(free3)])
        if m4:
            chains[v].extend(u4[next4])
            next4 += 1
        if not chains[v]:
            raise IncompleteAssignmentError(f"vertex {v} has no partition")
    return embedding_from_chains(a.n, t.host(), chains)
