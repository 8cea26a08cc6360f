"""Independent reference implementations the tests compare against.

Everything here is written straight from the definitions rather than by
calling back into the package: embeddability by enumerating all 4^n side
assignments, the equivalent disjoint-independent-set decision, an
embedding checker with its own Chimera adjacency derived from the
coordinate rules, the reference splitmix64 recurrence, and small brute
forces for the odd-cycle-transversal narrative.
"""

from __future__ import annotations

import numpy as np

# -- two-sided embeddability --------------------------------------------------

_STATE_CACHE: dict[int, tuple] = {}


def _state_table(n):
    """All 4^n assignments; per-vertex state bits: 1 = side 1, 2 = side 2."""
    if n not in _STATE_CACHE:
        idx = np.arange(4**n, dtype=np.int64)
        states = np.empty((4**n, n), dtype=np.uint8)
        for v in range(n):
            states[:, v] = (idx >> (2 * v)) & 3
        count1 = (states & 1).sum(axis=1).astype(np.int16)
        count2 = (states >> 1).sum(axis=1).astype(np.int16)
        assigned = (states != 0).all(axis=1)
        _STATE_CACHE[n] = (states, count1, count2, assigned)
    return _STATE_CACHE[n]


def bte_bruteforce_4n(g, caps):
    """{(cap1, cap2): embeddable} over every one of the 4^n assignments.

    An assignment embeds iff every vertex holds at least one side, the
    side counts are within the caps, and each edge has its endpoints on
    opposite sides (one endpoint on side 1, the other on side 2, in
    either orientation; a doubled vertex counts for both).
    """
    states, count1, count2, assigned = _state_table(g.n)
    ok = assigned.copy()
    for u, v in g.edges:
        su, sv = states[:, u], states[:, v]
        cov = ((su & 1) & (sv >> 1)) | ((sv & 1) & (su >> 1))
        np.logical_and(ok, cov != 0, out=ok)
        if not ok.any():
            break
    return {
        (c1, c2): bool((ok & (count1 <= c1) & (count2 <= c2)).any())
        for (c1, c2) in caps
    }


def bte_min_doubled(g, cap1, cap2):
    """Fewest doubled vertices over all feasible assignments, None if none."""
    states, count1, count2, assigned = _state_table(g.n)
    ok = assigned & (count1 <= cap1) & (count2 <= cap2)
    for u, v in g.edges:
        su, sv = states[:, u], states[:, v]
        cov = ((su & 1) & (sv >> 1)) | ((sv & 1) & (su >> 1))
        ok &= cov != 0
    if not ok.any():
        return None
    doubles = (states == 3).sum(axis=1)
    return int(doubles[ok].min())


def _independent_masks(g):
    nbr = [0] * g.n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    sets = [0]
    for v in range(g.n):
        bit, bad = 1 << v, nbr[v]
        sets.extend([s | bit for s in sets if not s & bad])
    return sets


def bte_pairs_oracle(g, cap1, cap2):
    """Embeddable iff disjoint independent sets of sizes >= n - cap1 and
    >= n - cap2 exist (the side-2-only and side-1-only vertex sets)."""
    need_a, need_b = g.n - cap1, g.n - cap2
    sets = _independent_masks(g)
    aa = [s for s in sets if s.bit_count() >= need_a]
    bb = [s for s in sets if s.bit_count() >= need_b]
    return any(a & b == 0 for a in aa for b in bb)


# -- Chimera adjacency and embedding checking, from scratch -------------------


def chimera_neighbor_map(m, n, l):
    """Neighbor sets rebuilt from the coordinate rules alone: cells are
    complete bipartite, left units couple vertically, right units
    horizontally, id = ((row*N + col)*2 + side)*L + unit."""

    def cid(r, c, s, u):
        return ((r * n + c) * 2 + s) * l + u

    adj = {q: set() for q in range(2 * m * n * l)}

    def join(a, b):
        adj[a].add(b)
        adj[b].add(a)

    for r in range(m):
        for c in range(n):
            for u1 in range(l):
                for u2 in range(l):
                    join(cid(r, c, 0, u1), cid(r, c, 1, u2))
    for r in range(m - 1):
        for c in range(n):
            for u in range(l):
                join(cid(r, c, 0, u), cid(r + 1, c, 0, u))
    for r in range(m):
        for c in range(n - 1):
            for u in range(l):
                join(cid(r, c, 1, u), cid(r, c + 1, 1, u))
    return adj


def embedding_oracle(n_vertices, edges, adj, chains):
    """(ok, kinds) for a chain map, straight from the minor definition.

    Ownership resolves to the first claimant so overlap handling matches
    a first-wins scan; kinds is the set of violation categories.
    """
    kinds = set()
    owner = {}
    for v in range(n_vertices):
        chain = tuple(chains.get(v, ()))
        if not chain:
            kinds.add("empty_chain")
        for q in chain:
            if q in owner and owner[q] != v:
                kinds.add("overlap")
            else:
                owner.setdefault(q, v)
    for v in range(n_vertices):
        chain = set(chains.get(v, ()))
        if len(chain) > 1:
            start = min(chain)
            seen, stack = {start}, [start]
            while stack:
                q = stack.pop()
                for p in adj[q]:
                    if p in chain and p not in seen:
                        seen.add(p)
                        stack.append(p)
            if seen != chain:
                kinds.add("disconnected")
    covered = set()
    for q, v in owner.items():
        for p in adj[q]:
            w = owner.get(p)
            if w is not None and w != v:
                covered.add((v, w) if v < w else (w, v))
    for i, j in edges:
        if ((i, j) if i < j else (j, i)) not in covered:
            kinds.add("missing_edge")
    return (not kinds, kinds)


def chain_stays_connected(adj, chain, removed):
    """Does chain minus one qubit stay connected? (Singletons count as
    connected; used to predict the violation kind of a deletion.)"""
    rest = set(chain) - {removed}
    if len(rest) <= 1:
        return True
    start = min(rest)
    seen, stack = {start}, [start]
    while stack:
        q = stack.pop()
        for p in adj[q]:
            if p in rest and p not in seen:
                seen.add(p)
                stack.append(p)
    return seen == rest


# -- reference splitmix64 -----------------------------------------------------


def splitmix64_reference(seed, count):
    mask = (1 << 64) - 1
    z = seed & mask
    out = []
    for _ in range(count):
        z = (z + 0x9E3779B97F4A7C15) & mask
        x = z
        x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & mask
        x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & mask
        x ^= x >> 31
        out.append(x)
    return out


# -- four-sided solution invariants -------------------------------------------

QTE_INTERFACES = ((0, 1), (1, 0), (2, 3), (3, 2))


def qte_invariant_problems(g, sizes, assignment):
    """Invariant failures for an Embeddable four-sided result: every
    vertex placed on a contiguous run of parts, part counts within the
    sizes, every edge realized (and its recorded label consistent)."""
    problems = []
    mem = assignment.membership
    if len(mem) != g.n:
        problems.append(f"membership length {len(mem)} != {g.n}")
        return problems
    for v, parts in enumerate(mem):
        ks = [k for k in range(4) if parts[k]]
        if not ks:
            problems.append(f"vertex {v} unplaced")
        elif ks != list(range(ks[0], ks[-1] + 1)):
            problems.append(f"vertex {v} parts not contiguous: {ks}")
    counts = assignment.part_counts()
    if any(c > s for c, s in zip(counts, sizes)):
        problems.append(f"capacity exceeded: {counts} > {tuple(sizes)}")
    for i, j in g.edges:
        if not any(mem[i][p] and mem[j][q] for p, q in QTE_INTERFACES):
            problems.append(f"edge ({i}, {j}) uncovered")
        label = assignment.edge_labels.get((i, j))
        if label is None:
            problems.append(f"edge ({i}, {j}) unlabeled")
        else:
            p, q = QTE_INTERFACES[label - 1]
            if not (mem[i][p] and mem[j][q]):
                problems.append(f"edge ({i}, {j}) label {label} unrealized")
    return problems


# -- odd cycle transversal narrative ------------------------------------------


def forced_single_double_feasible(g, doubled, cap1, cap2):
    """Can g embed with the doubled set exactly {doubled}? All other
    vertices then take a single side, so the question is whether g minus
    the vertex has a proper 2-coloring with both class sizes, plus one
    for the doubled vertex, within the caps. Checked by enumerating all
    2^(n-1) side choices."""
    rest = [v for v in range(g.n) if v != doubled]
    cross = [(u, v) for u, v in g.edges if u != doubled and v != doubled]
    pos = {v: k for k, v in enumerate(rest)}
    for bits in range(1 << len(rest)):
        on1 = sum(1 for v in rest if not (bits >> pos[v]) & 1)
        if on1 + 1 > cap1 or (len(rest) - on1) + 1 > cap2:
            continue
        if all(((bits >> pos[u]) & 1) != ((bits >> pos[v]) & 1) for u, v in cross):
            return True
    return False
