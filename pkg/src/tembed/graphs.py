"""Undirected simple problem graphs and odd-cycle machinery.

Vertices are dense 0-based integers. Edges are stored normalized (i < j),
deduplicated and sorted, so two graphs compare equal iff they are identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations


class SelfLoopError(ValueError):
    pass


class VertexRangeError(ValueError):
    pass


class NonSquareMatrixError(ValueError):
    pass


class TooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise VertexRangeError(f"negative vertex count {self.n}")
        prev = None
        for i, j in self.edges:
            if i == j:
                raise SelfLoopError(f"self loop at vertex {i}")
            if not (0 <= i < j < self.n):
                raise VertexRangeError(f"edge ({i}, {j}) outside 0..{self.n - 1}")
            if prev is not None and (i, j) <= prev:
                raise ValueError(f"edges not sorted/deduplicated near ({i}, {j})")
            prev = (i, j)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Per-vertex adjacency as bitmasks; handy for subset enumeration."""
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return tuple(masks)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, i: int, j: int) -> bool:
        if i > j:
            i, j = j, i
        return (i, j) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def is_independent(self, vertices) -> bool:
        vs = set(vertices)
        return not any(i in vs and j in vs for i, j in self.edges)


def graph_from_edge_list(n: int, edges) -> ProblemGraph:
    """Build a graph from an arbitrary iterable of pairs; normalizes and dedupes."""
    norm = set()
    for i, j in edges:
        i, j = int(i), int(j)
        if i == j:
            raise SelfLoopError(f"self loop at vertex {i}")
        if i > j:
            i, j = j, i
        norm.add((i, j))
    return ProblemGraph(n, tuple(sorted(norm)))


def graph_from_qubo(q) -> ProblemGraph:
    """Interaction graph of a QUBO matrix: edge {i, j} iff Q[i][j] != 0, i < j.

    Q must be square and upper triangular; the diagonal (linear terms) is
    ignored.
    """
    rows = [list(r) for r in q]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquareMatrixError("QUBO matrix is not square")
    edges = []
    for i in range(n):
        for j in range(n):
            if j < i and rows[i][j] != 0:
                raise ValueError(f"nonzero below the diagonal at ({i}, {j})")
            if j > i and rows[i][j] != 0:
                edges.append((i, j))
    return ProblemGraph(n, tuple(sorted(edges)))


# -- named constructions ----------------------------------------------------


def empty_graph(n: int) -> ProblemGraph:
    return ProblemGraph(n, ())


def complete_graph(n: int) -> ProblemGraph:
    return ProblemGraph(n, tuple(combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> ProblemGraph:
    """K_{a,b} with left side 0..a-1 and right side a..a+b-1."""
    edges = tuple((i, a + j) for i in range(a) for j in range(b))
    return ProblemGraph(a + b, edges)


def cycle_graph(n: int) -> ProblemGraph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return graph_from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(m: int) -> ProblemGraph:
    """K_{1,m}: center 0 joined to leaves 1..m."""
    return ProblemGraph(m + 1, tuple((0, i) for i in range(1, m + 1)))


def min_oct_counterexample() -> ProblemGraph:
    """11-vertex graph whose minimum odd cycle transversals have size 1
    yet balanced two-sided templates need a strictly larger doubled set.

    Vertices 0 and 1 are adjacent hubs over the shared block {3,4,5,6};
    vertex 2 is a hub over all of {3,...,10}. Removing 0 (or 1) leaves a
    bipartite graph with sides of size 2 and 8, so a minimum transversal
    forces a 9-slot side, while the non-minimum transversal {0, 2} leaves
    a 6/7 split.
    """
    edges = [(0, 1)]
    for a in (3, 4, 5, 6):
        edges += [(0, a), (1, a)]
    for x in range(3, 11):
        edges.append((2, x))
    return graph_from_edge_list(11, edges)


# -- bipartiteness and odd cycle transversals -------------------------------


@dataclass(frozen=True)
class Bipartition:
    left: frozenset[int]
    right: frozenset[int]


@dataclass(frozen=True)
class OddCycle:
    """Witness of non-bipartiteness: a closed odd walk of distinct vertices."""

    cycle: tuple[int, ...]


def bipartition_check(g: ProblemGraph, removed=frozenset()) -> Bipartition | OddCycle:
    """Two-color g with `removed` vertices deleted.

    Returns a Bipartition on success, else an OddCycle listing the vertices
    of an odd cycle that avoids `removed`.
    """
    removed = frozenset(removed)
    color = {}
    parent: dict[int, int | None] = {}
    depth = {}
    for root in range(g.n):
        if root in removed or root in color:
            continue
        color[root] = 0
        parent[root] = None
        depth[root] = 0
        queue = [root]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in g.adjacency[u]:
                if v in removed:
                    continue
                if v not in color:
                    color[v] = color[u] ^ 1
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif color[v] == color[u]:
                    return OddCycle(_cycle_through(parent, depth, u, v))
    left = frozenset(v for v, c in color.items() if c == 0)
    right = frozenset(v for v, c in color.items() if c == 1)
    return Bipartition(left, right)


def _cycle_through(parent, depth, u, v) -> tuple[int, ...]:
    # climb to common depth, then to the meeting point; |cycle| is odd
    # because u and v share a color, hence share depth parity
    pu, pv = [u], [v]
    while depth[pu[-1]] > depth[pv[-1]]:
        pu.append(parent[pu[-1]])
    while depth[pv[-1]] > depth[pu[-1]]:
        pv.append(parent[pv[-1]])
    while pu[-1] != pv[-1]:
        pu.append(parent[pu[-1]])
        pv.append(parent[pv[-1]])
    return tuple(pu + list(reversed(pv[:-1])))


def min_oct_bruteforce(g: ProblemGraph, max_n: int = 20) -> frozenset[int]:
    """Smallest vertex set whose removal leaves g bipartite.

    Exhaustive over subsets by increasing size, lexicographic within a size,
    so ties resolve to the lexicographically first set. Guarded by max_n.
    """
    if g.n > max_n:
        raise TooLargeError(f"n={g.n} exceeds brute-force guard {max_n}")
    for size in range(g.n + 1):
        for sub in combinations(range(g.n), size):
            if isinstance(bipartition_check(g, frozenset(sub)), Bipartition):
                return frozenset(sub)
    raise AssertionError("unreachable: removing all vertices is bipartite")


def independence_number(g: ProblemGraph, at_least: int | None = None) -> int:
    """Exact maximum independent set size by bitmask branch and bound.

    With at_least set, the search may stop at the first set of that size
    and return its size (decision use). Limited to n <= 63.
    """
    if g.n > 63:
        raise TooLargeError(f"n={g.n} exceeds the bitmask limit 63")
    masks = g.neighbor_masks
    best = 0
    goal = g.n + 1 if at_least is None else at_least

    def grab(cand: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if best >= goal:
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            grab(cand & ~masks[v], size + 1)
            if best >= goal:
                return

    grab((1 << g.n) - 1, 0)
    return best
