"""Benchmark harness: configuration validation, row bookkeeping, status
labels, and a tiny end-to-end run."""

import csv
import io
import json

import pytest

from tembed.bench import (
    CSV_COLUMNS,
    BenchConfig,
    BenchConfigError,
    BenchReport,
    instance_seed,
    run_bench,
)
from tembed.bench import _STATUS_LABEL
from tembed.chimera import ChimeraGraph
from tembed.formulations import EmbedStatus
from tembed.generators import DENSITIES, DegenerateSpec, GenSpec, generate
from tembed.templates import bte_template, qte_template
from tembed.verify import embedding_from_chains, verify


def tiny_config(**overrides):
    base = dict(
        m=2,
        l=2,
        families=("ErdosRenyi",),
        densities=("medium",),
        n_lo=5,
        n_hi=6,
        instances_per_cell=2,
        time_limit=30.0,
        templates=("bte", "qte"),
        base_seed=7,
    )
    base.update(overrides)
    return BenchConfig(**base)


def test_config_defaults_follow_template_capacity():
    cfg = BenchConfig(m=4, l=4)
    assert cfg.n_range == (17, 32)
    cfg2 = BenchConfig(m=2, l=2, n_lo=5, n_hi=8)
    assert cfg2.n_range == (5, 8)


def test_config_validation():
    with pytest.raises(BenchConfigError):
        BenchConfig(m=3, l=2, templates=("qte",))  # odd grid
    with pytest.raises(BenchConfigError):
        BenchConfig(m=2, l=2, densities=("extreme",))
    with pytest.raises(BenchConfigError):
        BenchConfig(m=2, l=2, n_lo=9, n_hi=5)
    with pytest.raises(BenchConfigError):
        BenchConfig(m=2, l=2, instances_per_cell=0)
    with pytest.raises(BenchConfigError):
        BenchConfig(m=2, l=2, templates=("hexagonal",))
    with pytest.raises(BenchConfigError):
        BenchConfig(m=2, l=2, families=("Unknown",))
    with pytest.raises(BenchConfigError):
        BenchConfig(m=2, l=2, time_limit=0.0)


def test_status_labels_are_template_relative():
    assert _STATUS_LABEL[EmbedStatus.EMBEDDABLE] == "Embeddable"
    assert _STATUS_LABEL[EmbedStatus.NOT_EMBEDDABLE] == "NotEmbeddable"
    assert _STATUS_LABEL[EmbedStatus.NO_SOLUTION_FOUND] == "NotEmbeddable"
    assert _STATUS_LABEL[EmbedStatus.UNKNOWN] == "Unknown"


def test_instance_seed_is_deterministic_and_distinct():
    a = instance_seed(7, "ErdosRenyi", "medium", 5, 0)
    assert a == instance_seed(7, "ErdosRenyi", "medium", 5, 0)
    others = {
        instance_seed(7, "ErdosRenyi", "medium", 5, 1),
        instance_seed(7, "ErdosRenyi", "medium", 6, 0),
        instance_seed(7, "ErdosRenyi", "low", 5, 0),
        instance_seed(7, "Percolation", "medium", 5, 0),
        instance_seed(8, "ErdosRenyi", "medium", 5, 0),
    }
    assert a not in others
    assert len(others) == 5


def test_tiny_run_shape_and_consistency():
    cfg = tiny_config()
    report = run_bench(cfg)
    assert isinstance(report, BenchReport)
    # 1 family x 1 density x 2 n x 2 instances x 2 templates
    assert len(report.rows) == 8
    assert report.skipped == []
    for row in report.rows:
        assert row.family == "ErdosRenyi"
        assert row.density == "medium"
        assert row.template in ("bte", "qte")
        assert row.status in ("Embeddable", "NotEmbeddable", "Unknown")
        assert row.wall_time >= 0.0
        assert (row.chains is not None) == (row.status == "Embeddable")


def test_embeddable_rows_reverify_from_seeds():
    report = run_bench(tiny_config())
    host = ChimeraGraph(2, 2, 2)
    for row in report.rows:
        if row.status != "Embeddable":
            continue
        g = generate(GenSpec(row.family, row.n, DENSITIES[row.density], row.seed))
        emb = embedding_from_chains(
            g.n, host, {v: c for v, c in enumerate(row.chains)}
        )
        assert verify(g, host, emb).ok, (row.template, row.n, row.seed)


def test_largest_embedded_and_profile():
    report = run_bench(tiny_config())
    largest = report.largest_embedded()
    assert set(largest) == {(t, "ErdosRenyi", "medium") for t in ("bte", "qte")}
    for (template, _fam, _dens), value in largest.items():
        mine = [
            r
            for r in report.rows
            if r.template == template and r.status == "Embeddable"
        ]
        assert value == (max(r.n for r in mine) if mine else None)
    profile = report.profile()
    assert set(profile) == {"bte", "qte"}
    for template, series in profile.items():
        mine = [
            r
            for r in report.rows
            if r.template == template and r.status == "Embeddable"
        ]
        assert len(series) == len(mine)
        assert [k for _, k in series] == list(range(1, len(mine) + 1))
        times = [w for w, _ in series]
        assert times == sorted(times)


def test_csv_and_json_outputs():
    report = run_bench(tiny_config())
    text = report.rows_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == list(CSV_COLUMNS)
    assert len(rows) == 1 + len(report.rows)
    payload = json.loads(report.to_json())
    assert set(payload) >= {"config", "rows", "skipped", "largest_embedded", "profile"}
    assert payload["config"]["m"] == 2
    assert len(payload["rows"]) == len(report.rows)
    for row in payload["rows"]:
        if row["status"] == "Embeddable":
            assert isinstance(row["chains"], dict)
            assert len(row["chains"]) == row["n"]
        else:
            assert "chains" not in row


def test_degenerate_regular_cells_are_skipped():
    # n=7 at medium density rounds to d=3; n*d odd, no such graph exists
    cfg = tiny_config(families=("Regular",), n_lo=7, n_hi=7, instances_per_cell=1)
    report = run_bench(cfg)
    assert report.rows == []
    assert len(report.skipped) == 1
    entry = report.skipped[0]
    assert entry["family"] == "Regular"
    assert entry["n"] == 7
    assert entry["reason"]
    with pytest.raises(DegenerateSpec):
        generate(GenSpec("Regular", 7, 0.5, entry["seed"]))


def test_progress_callback_sees_every_row():
    seen = []
    report = run_bench(tiny_config(), progress=seen.append)
    assert len(seen) == len(report.rows)
    assert all(r is s for r, s in zip(report.rows, seen))


def test_bench_reruns_are_deterministic_modulo_timing():
    key = lambda r: (r.family, r.density, r.n, r.seed, r.template, r.status, r.chains)
    a = run_bench(tiny_config())
    b = run_bench(tiny_config())
    assert [key(r) for r in a.rows] == [key(r) for r in b.rows]


def test_bench_host_matches_library_templates():
    host = ChimeraGraph(2, 2, 2)
    assert bte_template(host).sizes == (4, 4)
    assert qte_template(host).sizes == (2, 4, 4, 2)
    payload = json.loads(run_bench(tiny_config()).to_json())
    assert payload["config"]["m"] == 2 and payload["config"]["l"] == 2
