"""LP file writer and parser: canonical round trips, wrapping, and the
strict rejection of anything outside the binary-maximize dialect."""

import pytest

from tembed.graphs import complete_graph, cycle_graph, graph_from_edge_list
from tembed.formulations import build_bte_model, build_qte_model
from tembed.ilp import (
    IlpModel,
    LpFormatError,
    UnsupportedLpError,
    export_lp,
    parse_lp,
    read_lp,
    solve,
    write_lp,
)
from tembed.rng import SplitMix64

from test_ilp import brute_force, random_model


def canon(mod: IlpModel):
    return (
        mod.name,
        tuple(mod.var_names),
        tuple(sorted(mod.objective.items())),
        tuple(
            (r.name, tuple(sorted(r.coeffs.items())), r.sense, r.rhs)
            for r in mod.rows
        ),
    )


def test_export_layout_smoke():
    mod = build_bte_model(cycle_graph(3), 2, 2)
    text = export_lp(mod)
    lines = text.splitlines()
    assert lines[0] == "\\ bte"
    assert "Maximize" in lines and "Subject To" in lines
    assert "Bounds" in lines and "Binary" in lines
    assert lines[-1] == "End"
    assert all(len(line) <= 78 for line in lines)


def test_round_trip_preserves_model():
    for mod in (
        build_bte_model(cycle_graph(5), 3, 3),
        build_bte_model(complete_graph(4), 2, 2),
        build_qte_model(cycle_graph(4), (1, 2, 2, 1)),
    ):
        back = parse_lp(export_lp(mod))
        assert canon(back) == canon(mod)
        # and the re-export is byte identical
        assert export_lp(back) == export_lp(mod)


def test_round_trip_random_models_solve_identically():
    rng = SplitMix64(616)
    for _ in range(40):
        mod = random_model(rng)
        back = parse_lp(export_lp(mod))
        a, b = solve(mod), solve(back)
        assert a.status is b.status
        if a.value is not None:
            assert b.value == pytest.approx(a.value, abs=1e-9)


def test_wide_rows_wrap_with_continuations():
    g = graph_from_edge_list(30, [(i, (i + 1) % 30) for i in range(30)])
    mod = build_bte_model(g, 15, 15)
    text = export_lp(mod)
    assert all(len(line) <= 78 for line in text.splitlines())
    assert parse_lp(text).num_vars == mod.num_vars


def test_empty_objective_placeholder():
    mod = IlpModel("noobj")
    x = mod.binary("x")
    mod.add_le({x: 1}, 1)
    back = parse_lp(export_lp(mod))
    assert back.objective == {}
    assert export_lp(back) == export_lp(mod)


def test_file_helpers(tmp_path):
    mod = build_bte_model(cycle_graph(4), 2, 2)
    path = tmp_path / "model.lp"
    write_lp(mod, path)
    assert canon(read_lp(path)) == canon(mod)


@pytest.mark.parametrize(
    "text",
    [
        "Minimize\n obj: x\nSubject To\n c: x <= 1\nBinary\n x\nEnd\n",
        "Maximize\n obj: x\nSubject To\n c: x <= 1\nGeneral\n x\nEnd\n",
        "Maximize\n obj: x\nSubject To\n c: x <= 1\nBounds\n x free\nBinary\n x\nEnd\n",
        "Maximize\n obj: x\nSubject To\n c: x <= 1\nEnd\n",
        "Maximize\n obj: x\nSubject To\n c: x <=\nBinary\n x\nEnd\n",
        "Maximize\n obj: x\nSubject To\n c: x ? 1\nBinary\n x\nEnd\n",
        "Maximize\n obj: x + y\nSubject To\n c: x <= 1\nBinary\n x\nEnd\n",
    ],
)
def test_parser_rejects_unsupported_dialects(text):
    with pytest.raises((UnsupportedLpError, LpFormatError)):
        parse_lp(text)


def test_structural_counts_for_two_sided_models():
    for g, caps in [
        (cycle_graph(6), (3, 3)),
        (complete_graph(5), (4, 4)),
        (graph_from_edge_list(4, [(0, 1)]), (2, 2)),
    ]:
        mod = build_bte_model(g, *caps)
        assert mod.num_vars == 3 * g.n
        assert mod.num_rows == g.n + 2 + 2 * g.num_edges
        back = parse_lp(export_lp(mod))
        assert back.num_vars == 3 * g.n
        assert back.num_rows == g.n + 2 + 2 * g.num_edges


def test_structural_counts_for_four_sided_models():
    g = cycle_graph(5)
    mod = build_qte_model(g, (2, 4, 4, 2))
    assert mod.num_vars == 5 * g.n + 4 * g.num_edges
    assert mod.num_rows == g.n + 4 + 4 * g.n + 9 * g.num_edges
    back = parse_lp(export_lp(mod))
    assert back.num_rows == mod.num_rows
