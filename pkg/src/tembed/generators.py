"""Seeded generators for the five random problem-graph families.

Every draw comes from substream(seed, family, n, density, ...), so a
GenSpec pins its edge set byte for byte across platforms and sessions.
Each family documents its draw order; reordering draws is a breaking
change to the corpus, not a refactor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import ProblemGraph, graph_from_edge_list
from .rng import SplitMix64, substream

FAMILIES = ("Percolation", "BarabasiAlbert", "ErdosRenyi", "Regular", "NoisyBipartite")

DENSITIES = {"low": 0.25, "medium": 0.5, "high": 0.75}


class UnknownFamilyError(ValueError):
    pass


class DegenerateSpec(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    """One reproducible instance: family, size, density, seed."""

    family: str
    n: int
    p: float
    seed: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnknownFamilyError(f"unknown family {self.family!r}")
        if self.n < 2:
            raise DegenerateSpec(f"need n >= 2, got {self.n}")
        if not 0.0 < self.p < 1.0:
            raise DegenerateSpec(f"density must sit strictly inside (0, 1), got {self.p}")

    def stream(self, *tags) -> SplitMix64:
        return substream(self.seed, self.family, self.n, f"{self.p!r}", *tags)


def generate(spec: GenSpec) -> ProblemGraph:
    """Build the spec's graph; an identical spec yields the identical edge set."""
    edges = _BUILDERS[spec.family](spec)
    return graph_from_edge_list(spec.n, sorted(edges))


def percolation_chi(spec: GenSpec) -> list[float]:
    """The vertex weights chi that the Percolation family conditions on."""
    if spec.family != "Percolation":
        raise UnknownFamilyError("chi values exist only for the Percolation family")
    rng = spec.stream("chi")
    return [rng.random() for _ in range(spec.n)]


def _percolation(spec: GenSpec) -> list[tuple[int, int]]:
    """chi_i per vertex, then one coin per pair (i < j, lexicographic);
    edge {i, j} appears with probability min{1, p / |chi_i - chi_j|}."""
    chi = percolation_chi(spec)
    rng = spec.stream("edges")
    out = []
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            # gap * u < p  <=>  u < p / gap, and always true at gap == 0
            if abs(chi[i] - chi[j]) * rng.random() < spec.p:
                out.append((i, j))
    return out


def _erdos_renyi(spec: GenSpec) -> list[tuple[int, int]]:
    """One coin per pair (i < j, lexicographic), independent at rate p."""
    rng = spec.stream("edges")
    return [
        (i, j)
        for i in range(spec.n)
        for j in range(i + 1, spec.n)
        if rng.random() < spec.p
    ]


def _barabasi_albert(spec: GenSpec) -> list[tuple[int, int]]:
    """Seed clique on m = max(1, round(p(n-1)/2)) vertices, then each new
    vertex attaches to m distinct earlier vertices drawn degree-
    proportionally from the edge-endpoint urn (uniform while the urn is
    still empty). Edge count is exactly C(m,2) + (n-m)m."""
    n = spec.n
    m = max(1, round(spec.p * (n - 1) / 2))
    if m >= n:
        raise DegenerateSpec(f"attachment degree {m} needs more than {n} vertices")
    rng = spec.stream("attach")
    edges = [(i, j) for i in range(m) for j in range(i + 1, m)]
    urn = [v for e in edges for v in e]
    for v in range(m, n):
        targets: set[int] = set()
        while len(targets) < m:
            t = urn[rng.randrange(len(urn))] if urn else rng.randrange(v)
            targets.add(t)
        for t in sorted(targets):
            edges.append((t, v))
            urn.extend((t, v))
    return edges


def _regular(spec: GenSpec) -> list[tuple[int, int]]:
    """Exact d-regular graph, d = round(p(n-1)), by configuration-model
    pairing with repair: pair shuffled stubs greedily, re-shuffle the
    leftovers, restart the attempt once no suitable pair remains."""
    n = spec.n
    d = round(spec.p * (n - 1))
    if d == 0:
        raise DegenerateSpec(f"degree rounds to 0 at n={n}, p={spec.p}")
    if d >= n:
        raise DegenerateSpec(f"degree {d} too large for {n} vertices")
    if (n * d) % 2:
        raise DegenerateSpec(f"n*d = {n}*{d} is odd; no {d}-regular graph exists")
    rng = spec.stream("pairing")
    for _ in range(100):
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            return list(edges)
    raise DegenerateSpec(f"no simple {d}-regular pairing found after 100 attempts")


def _try_pairing(n: int, d: int, rng: SplitMix64) -> set[tuple[int, int]] | None:
    edges: set[tuple[int, int]] = set()
    stubs = [v for v in range(n) for _ in range(d)]
    while stubs:
        rng.shuffle(stubs)
        leftover = []
        for k in range(0, len(stubs), 2):
            u, v = stubs[k], stubs[k + 1]
            if u > v:
                u, v = v, u
            if u != v and (u, v) not in edges:
                edges.add((u, v))
            else:
                leftover.append(stubs[k])
                leftover.append(stubs[k + 1])
        if len(leftover) == len(stubs) and not _suitable_pair_exists(leftover, edges):
            return None
        stubs = leftover
    return edges


def _suitable_pair_exists(stubs: list[int], edges: set[tuple[int, int]]) -> bool:
    verts = sorted(set(stubs))
    for a_idx, a in enumerate(verts):
        for b in verts[a_idx + 1 :]:
            if (a, b) not in edges:
                return True
    return False


def _noisy_bipartite(spec: GenSpec) -> list[tuple[int, int]]:
    """Random equal split (shuffle, first ceil(n/2) on side 0), cross edges
    at rate p, same-side noise edges at rate 0.05p; one coin per pair
    (i < j, lexicographic)."""
    n = spec.n
    rng = spec.stream("split")
    order = list(range(n))
    rng.shuffle(order)
    side = [1] * n
    for v in order[: (n + 1) // 2]:
        side[v] = 0
    coin = spec.stream("edges")
    noise = 0.05 * spec.p
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            prob = spec.p if side[i] != side[j] else noise
            if coin.random() < prob:
                out.append((i, j))
    return out


_BUILDERS = {
    "Percolation": _percolation,
    "BarabasiAlbert": _barabasi_albert,
    "ErdosRenyi": _erdos_renyi,
    "Regular": _regular,
    "NoisyBipartite": _noisy_bipartite,
}
