"""Chimera hardware graphs.

C_{M,N,L} is an M x N grid of complete bipartite K_{L,L} cells. Within a
cell every left-partition qubit couples to every right-partition qubit.
The i-th left qubit of a cell couples to the i-th left qubit of the cells
above and below; the i-th right qubit couples to the i-th right qubit of
the cells to the left and right.

Linear index: ((row * N + col) * 2 + side) * L + unit, side 0 = left,
side 1 = right, row 0 at the top.
"""

from __future__ import annotations

from dataclasses import dataclass

LEFT = 0
RIGHT = 1


class ZeroDimensionError(ValueError):
    pass


class QubitRangeError(ValueError):
    pass


@dataclass(frozen=True)
class ChimeraGraph:
    m: int  # grid rows
    n: int  # grid columns
    l: int  # qubits per cell side

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.l < 1:
            raise ZeroDimensionError(f"C_{{{self.m},{self.n},{self.l}}} has a zero dimension")

    @property
    def num_vertices(self) -> int:
        return 2 * self.m * self.n * self.l

    @property
    def num_edges(self) -> int:
        intra = self.m * self.n * self.l * self.l
        vertical = self.l * self.n * (self.m - 1)
        horizontal = self.l * self.m * (self.n - 1)
        return intra + vertical + horizontal

    def vertex_index(self, row: int, col: int, side: int, unit: int) -> int:
        if not (0 <= row < self.m and 0 <= col < self.n):
            raise QubitRangeError(f"cell ({row}, {col}) outside {self.m}x{self.n} grid")
        if side not in (LEFT, RIGHT):
            raise QubitRangeError(f"side must be {LEFT} or {RIGHT}, got {side}")
        if not (0 <= unit < self.l):
            raise QubitRangeError(f"unit {unit} outside 0..{self.l - 1}")
        return ((row * self.n + col) * 2 + side) * self.l + unit

    def vertex_coord(self, idx: int) -> tuple[int, int, int, int]:
        if not (0 <= idx < self.num_vertices):
            raise QubitRangeError(f"qubit {idx} outside 0..{self.num_vertices - 1}")
        idx, unit = divmod(idx, self.l)
        idx, side = divmod(idx, 2)
        row, col = divmod(idx, self.n)
        return row, col, side, unit

    def neighbors(self, idx: int) -> tuple[int, ...]:
        row, col, side, unit = self.vertex_coord(idx)
        out = []
        opp = RIGHT if side == LEFT else LEFT
        out.extend(self.vertex_index(row, col, opp, u) for u in range(self.l))
        if side == LEFT:
            if row > 0:
                out.append(self.vertex_index(row - 1, col, LEFT, unit))
            if row + 1 < self.m:
                out.append(self.vertex_index(row + 1, col, LEFT, unit))
        else:
            if col > 0:
                out.append(self.vertex_index(row, col - 1, RIGHT, unit))
            if col + 1 < self.n:
                out.append(self.vertex_index(row, col + 1, RIGHT, unit))
        return tuple(sorted(out))

    def adjacent(self, a: int, b: int) -> bool:
        ra, ca, sa, ua = self.vertex_coord(a)
        rb, cb, sb, ub = self.vertex_coord(b)
        if (ra, ca) == (rb, cb):
            return sa != sb
        if sa != sb or ua != ub:
            return False
        if sa == LEFT:
            return ca == cb and abs(ra - rb) == 1
        return ra == rb and abs(ca - cb) == 1

    def edges(self):
        """All couplers as sorted (u, v) pairs, u < v, in lexicographic order."""
        for u in range(self.num_vertices):
            for v in self.neighbors(u):
                if v > u:
                    yield (u, v)

    def degree(self, idx: int) -> int:
        return len(self.neighbors(idx))
