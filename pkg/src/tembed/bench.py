"""Desk-scale benchmark over the random-graph corpus.

For every (family, density, n, instance) cell the harness generates the
instance, tries each selected template under a per-solve time limit, and
records one row per attempt. Row statuses are template-relative:
NotEmbeddable means a proof that this template cannot host the graph
(for the four-sided program that is a refutation of the program, which is
the same thing from the benchmark's point of view), Unknown means the
limit was hit first. Aggregates are the largest embedded n per cell and a
cumulative embedded-vs-time series per template, which together mirror
the usual largest-graph tables and performance profiles. Everything is
deterministic except wall_time and statuses that depend on the limit.

Cells whose parameters cannot produce a graph at all (an exactly-regular
degree that rounds to 0 or makes n*d odd) are recorded under "skipped"
instead of inventing a different instance silently.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

from .chimera import ChimeraGraph
from .formulations import EmbedStatus, assignment_to_physical, embed_bte, embed_qte
from .generators import DENSITIES, FAMILIES, DegenerateSpec, GenSpec, generate
from .rng import substream
from .templates import Template, bte_template, qte_template

TEMPLATES = ("bte", "qte")

CSV_COLUMNS = ("family", "density", "n", "seed", "template", "status", "wall_time", "nodes")


class BenchConfigError(ValueError):
    pass


@dataclass(frozen=True)
class BenchConfig:
    """Benchmark grid: Chimera C_{M,M,L}, families x densities x sizes."""

    m: int = 4
    l: int = 4
    families: tuple[str, ...] = FAMILIES
    densities: tuple[str, ...] = ("low", "medium", "high")
    n_lo: int | None = None  # default M*L + 1: just past the clique bound
    n_hi: int | None = None  # default 2*M*L: the full bipartite target size
    instances_per_cell: int = 5
    time_limit: float = 60.0
    templates: tuple[str, ...] = TEMPLATES
    base_seed: int = 0

    def __post_init__(self):
        if self.m < 1 or self.l < 1:
            raise BenchConfigError(f"bad Chimera dimensions ({self.m}, {self.l})")
        for fam in self.families:
            if fam not in FAMILIES:
                raise BenchConfigError(f"unknown family {fam!r}")
        for d in self.densities:
            if d not in DENSITIES:
                raise BenchConfigError(f"unknown density {d!r} (want one of {sorted(DENSITIES)})")
        if not self.families or not self.densities or not self.templates:
            raise BenchConfigError("families, densities and templates must be nonempty")
        for t in self.templates:
            if t not in TEMPLATES:
                raise BenchConfigError(f"unknown template {t!r}")
        if "qte" in self.templates and self.m % 2:
            raise BenchConfigError(f"the four-sided template needs even M, got {self.m}")
        if self.instances_per_cell < 1:
            raise BenchConfigError("instances_per_cell must be at least 1")
        if self.time_limit <= 0:
            raise BenchConfigError("time_limit must be positive")
        lo, hi = self.n_range
        if lo < 2 or hi < lo:
            raise BenchConfigError(f"bad n range [{lo}, {hi}]")

    @property
    def n_range(self) -> tuple[int, int]:
        ml = self.m * self.l
        lo = self.n_lo if self.n_lo is not None else ml + 1
        hi = self.n_hi if self.n_hi is not None else 2 * ml
        return lo, hi


@dataclass(frozen=True)
class BenchRow:
    family: str
    density: str
    n: int
    seed: int
    template: str
    status: str  # Embeddable | NotEmbeddable | Unknown
    wall_time: float
    nodes: int
    chains: tuple[tuple[int, ...], ...] | None = None


_STATUS_LABEL = {
    EmbedStatus.EMBEDDABLE: "Embeddable",
    EmbedStatus.NOT_EMBEDDABLE: "NotEmbeddable",
    EmbedStatus.NO_SOLUTION_FOUND: "NotEmbeddable",
    EmbedStatus.UNKNOWN: "Unknown",
}


@dataclass
class BenchReport:
    config: BenchConfig
    rows: list[BenchRow] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)

    def largest_embedded(self) -> dict[tuple[str, str, str], int | None]:
        """Max Embeddable n per (template, family, density); None if none."""
        out: dict[tuple[str, str, str], int | None] = {}
        for t in self.config.templates:
            for fam in self.config.families:
                for d in self.config.densities:
                    out[(t, fam, d)] = None
        for row in self.rows:
            if row.status == "Embeddable":
                key = (row.template, row.family, row.density)
                if out.get(key) is None or row.n > out[key]:
                    out[key] = row.n
        return out

    def profile(self) -> dict[str, list[tuple[float, int]]]:
        """Per template: cumulative count of embedded instances vs time."""
        out: dict[str, list[tuple[float, int]]] = {}
        for t in self.config.templates:
            times = sorted(r.wall_time for r in self.rows if r.template == t and r.status == "Embeddable")
            out[t] = [(w, k + 1) for k, w in enumerate(times)]
        return out

    def rows_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([r.family, r.density, r.n, r.seed, r.template, r.status, f"{r.wall_time:.6f}", r.nodes])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = []
        for r in self.rows:
            d = {
                "family": r.family,
                "density": r.density,
                "n": r.n,
                "seed": r.seed,
                "template": r.template,
                "status": r.status,
                "wall_time": r.wall_time,
                "nodes": r.nodes,
            }
            if r.chains is not None:
                d["chains"] = {str(v): list(c) for v, c in enumerate(r.chains)}
            rows.append(d)
        largest = [
            {"template": t, "family": fam, "density": d, "largest": n}
            for (t, fam, d), n in sorted(self.largest_embedded().items())
        ]
        return json.dumps(
            {
                "config": asdict(self.config),
                "rows": rows,
                "skipped": self.skipped,
                "largest_embedded": largest,
                "profile": {t: [[w, k] for w, k in series] for t, series in self.profile().items()},
            },
            indent=2,
        )


def instance_seed(base_seed: int, family: str, density: str, n: int, k: int) -> int:
    """Seed of instance k in a cell; stable across runs and configs."""
    return substream(base_seed, "bench", family, density, n, k).next_u64()


def _host_templates(cfg: BenchConfig) -> dict[str, Template]:
    host = ChimeraGraph(cfg.m, cfg.m, cfg.l)
    out: dict[str, Template] = {}
    if "bte" in cfg.templates:
        out["bte"] = bte_template(host)
    if "qte" in cfg.templates:
        out["qte"] = qte_template(host)
    return out


def run_bench(cfg: BenchConfig, progress=None) -> BenchReport:
    """Run the whole grid sequentially; progress(row) after each attempt."""
    report = BenchReport(cfg)
    templates = _host_templates(cfg)
    ml = cfg.m * cfg.l
    bte_caps = (ml, ml)
    qte_sizes = None
    if "qte" in cfg.templates:
        qte_sizes = tuple(len(part) for part in templates["qte"].partitions)
    lo, hi = cfg.n_range

    for fam in cfg.families:
        for density in cfg.densities:
            p = DENSITIES[density]
            for n in range(lo, hi + 1):
                for k in range(cfg.instances_per_cell):
                    seed = instance_seed(cfg.base_seed, fam, density, n, k)
                    try:
                        g = generate(GenSpec(fam, n, p, seed))
                    except DegenerateSpec as exc:
                        report.skipped.append(
                            {"family": fam, "density": density, "n": n, "seed": seed, "reason": str(exc)}
                        )
                        continue
                    for tname in cfg.templates:
                        if tname == "bte":
                            res = embed_bte(g, *bte_caps, time_limit=cfg.time_limit)
                        else:
                            res = embed_qte(g, qte_sizes, time_limit=cfg.time_limit)
                        chains = None
                        if res.status is EmbedStatus.EMBEDDABLE:
                            emb = assignment_to_physical(res.assignment, templates[tname])
                            chains = emb.chains
                        row = BenchRow(
                            family=fam,
                            density=density,
                            n=n,
                            seed=seed,
                            template=tname,
                            status=_STATUS_LABEL[res.status],
                            wall_time=res.outcome.wall_time,
                            nodes=res.outcome.nodes,
                            chains=chains,
                        )
                        report.rows.append(row)
                        if progress is not None:
                            progress(row)
    return report
