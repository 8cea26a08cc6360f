"""Command-line front end.

Subcommands: gen (random instances), embed (decide + emit an embedding),
verify (check an embedding file), clique (largest-clique template
embedding), export-lp (write the 0-1 program), bench (the desk-scale
benchmark grid).

Exit codes: 0 success; 1 a definite negative (NotEmbeddable, verification
failed); 2 usage or input errors; 3 undecided at the time limit.
`--chimera M,L` always means the square host C_{M,M,L}. TEMBED_TIME_LIMIT
sets the default solve limit in seconds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bench import TEMPLATES, BenchConfig, BenchConfigError, run_bench
from .chimera import ChimeraGraph
from .formulations import EmbedStatus, assignment_to_physical, embed_bte, embed_qte
from .generators import DENSITIES, FAMILIES, GenSpec, generate
from .ilp import export_lp
from .io import graph_to_dimacs, load_graph, save_graph
from .templates import bte_template, qte_template, triad_clique_template
from .verify import (
    embedding_from_chains,
    embedding_to_json,
    load_embedding,
    verify,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3


class UsageError(ValueError):
    pass


def _chimera_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected M,L — got {text!r}")
    try:
        m, l = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers M,L — got {text!r}")
    if m < 1 or l < 1:
        raise argparse.ArgumentTypeError(f"Chimera dimensions must be positive, got {text!r}")
    return m, l


def _csv_list(text: str) -> tuple[str, ...]:
    items = tuple(s.strip() for s in text.split(",") if s.strip())
    if not items:
        raise argparse.ArgumentTypeError("expected a comma-separated list")
    return items


def _default_time_limit() -> float | None:
    raw = os.environ.get("TEMBED_TIME_LIMIT")
    if raw is None or not raw.strip():
        return None
    try:
        v = float(raw)
    except ValueError:
        raise UsageError(f"TEMBED_TIME_LIMIT is not a number: {raw!r}")
    return v if v > 0 else None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_gen(args) -> int:
    if (args.p is None) == (args.density is None):
        raise UsageError("give exactly one of --p or --density")
    p = args.p if args.p is not None else DENSITIES[args.density]
    spec = GenSpec(args.family, args.n, p, args.seed)
    g = generate(spec)
    if args.out is None:
        sys.stdout.write(graph_to_dimacs(g))
    else:
        save_graph(g, args.out)
        sidecar = Path(args.out).with_suffix(Path(args.out).suffix + ".spec.json")
        sidecar.write_text(
            json.dumps({"family": spec.family, "n": spec.n, "p": spec.p, "seed": spec.seed})
        )
        _say(f"wrote {args.out} ({g.n} vertices, {g.num_edges} edges) and {sidecar}")
    return EXIT_OK


def _template_for(name: str, m: int, l: int):
    host = ChimeraGraph(m, m, l)
    return bte_template(host) if name == "bte" else qte_template(host)


def cmd_embed(args) -> int:
    g = load_graph(args.graph)
    m, l = args.chimera
    t = _template_for(args.template, m, l)
    limit = args.time_limit if args.time_limit is not None else _default_time_limit()
    if args.template == "bte":
        cap1, cap2 = t.sizes
        res = embed_bte(g, cap1, cap2, time_limit=limit)
    else:
        res = embed_qte(g, t.sizes, time_limit=limit)
    out = res.outcome
    if res.status is EmbedStatus.EMBEDDABLE:
        emb = assignment_to_physical(res.assignment, t)
        _emit(embedding_to_json(emb), args.out)
        _say(
            f"Embeddable: {g.n} vertices into {args.template} of C_{{{m},{m},{l}}} "
            f"({out.wall_time:.2f}s, {out.nodes} nodes)"
        )
        return EXIT_OK
    if res.status is EmbedStatus.UNKNOWN:
        _say(f"Unknown: time limit hit at bound {out.bound:.6g} ({out.nodes} nodes)")
        return EXIT_TIMEOUT
    word = "NotEmbeddable" if res.status is EmbedStatus.NOT_EMBEDDABLE else "NoSolutionFound"
    _say(
        f"{word}: proven bound {out.bound:.6g} < {g.n} "
        f"({out.wall_time:.2f}s, {out.nodes} nodes)"
    )
    return EXIT_NEGATIVE


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    emb = load_embedding(args.embedding)
    m, l = args.chimera if args.chimera else (emb.m, emb.l)
    host = ChimeraGraph(m, m, l)
    report = verify(g, host, emb)
    if args.json:
        sys.stdout.write(report.to_json() + "\n")
    else:
        print(report.summary())
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_clique(args) -> int:
    m, l = args.chimera
    t = triad_clique_template(ChimeraGraph(m, m, l), plus_one=args.plus_one)
    chains = t.all_chains
    n = len(chains)
    emb = embedding_from_chains(n, t.host(), dict(enumerate(chains)))
    from .graphs import complete_graph

    report = verify(complete_graph(n), t.host(), emb)
    if not report.ok:
        _say(report.summary())
        return EXIT_NEGATIVE
    _emit(embedding_to_json(emb), args.out)
    _say(f"K_{n} clique embedding in C_{{{m},{m},{l}}} (verified)")
    return EXIT_OK


def cmd_export_lp(args) -> int:
    from .formulations import build_bte_model, build_qte_model

    g = load_graph(args.graph)
    m, l = args.chimera
    t = _template_for(args.template, m, l)
    if args.template == "bte":
        cap1, cap2 = t.sizes
        model = build_bte_model(g, cap1, cap2)
    else:
        model = build_qte_model(g, t.sizes)
    _emit(export_lp(model), args.out)
    if args.out:
        _say(f"wrote {args.out} ({model.num_vars} variables, {model.num_rows} rows)")
    return EXIT_OK


def cmd_bench(args) -> int:
    limit = args.time_limit
    if limit is None:
        limit = _default_time_limit() or 60.0
    try:
        cfg = BenchConfig(
            m=args.chimera[0],
            l=args.chimera[1],
            families=args.families,
            densities=args.densities,
            n_lo=args.n_lo,
            n_hi=args.n_hi,
            instances_per_cell=args.instances,
            time_limit=limit,
            templates=args.templates,
            base_seed=args.seed,
        )
    except BenchConfigError as exc:
        raise UsageError(str(exc))

    def progress(row):
        if not args.quiet:
            _say(
                f"{row.family:15s} {row.density:6s} n={row.n:3d} {row.template:3s} "
                f"{row.status:13s} {row.wall_time:7.2f}s {row.nodes} nodes"
            )

    report = run_bench(cfg, progress=progress)
    _emit(report.to_json(), args.out)
    if args.csv:
        Path(args.csv).write_text(report.rows_csv())
        _say(f"wrote {args.csv}")
    embedded = sum(r.status == "Embeddable" for r in report.rows)
    _say(f"bench done: {len(report.rows)} rows, {embedded} embeddable, {len(report.skipped)} skipped")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tembed",
        description="Exact minor-embedding of problem graphs into Chimera template minors.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=None, help="density in (0,1)")
    p.add_argument("--density", choices=sorted(DENSITIES), default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="graph file (.json for JSON, else DIMACS)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("embed", help="decide embeddability and emit the embedding")
    p.add_argument("--template", required=True, choices=TEMPLATES)
    p.add_argument("--chimera", type=_chimera_pair, required=True, metavar="M,L")
    p.add_argument("--graph", required=True)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="check an embedding file against its graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--embedding", required=True)
    p.add_argument("--chimera", type=_chimera_pair, default=None, metavar="M,L")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("clique", help="emit the clique template embedding")
    p.add_argument("--chimera", type=_chimera_pair, required=True, metavar="M,L")
    p.add_argument("--plus-one", action="store_true", help="include the extra chain (K_{ML+1})")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_clique)

    p = sub.add_parser("export-lp", aliases=["export_lp"], help="write the 0-1 program as LP text")
    p.add_argument("--template", required=True, choices=TEMPLATES)
    p.add_argument("--chimera", type=_chimera_pair, required=True, metavar="M,L")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export_lp)

    p = sub.add_parser("bench", help="run the benchmark grid")
    p.add_argument("--chimera", type=_chimera_pair, default=(4, 4), metavar="M,L")
    p.add_argument("--families", type=_csv_list, default=FAMILIES)
    p.add_argument("--densities", type=_csv_list, default=("low", "medium", "high"))
    p.add_argument("--n-lo", type=int, default=None)
    p.add_argument("--n-hi", type=int, default=None)
    p.add_argument("--instances", type=int, default=5)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--templates", type=_csv_list, default=TEMPLATES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="report JSON path (default stdout)")
    p.add_argument("--csv", default=None, help="also write per-row CSV here")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_bench)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass both through
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        _say(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
