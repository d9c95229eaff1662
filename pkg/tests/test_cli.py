"""File parsing, the block pipeline, the benchmark driver, and the CLI."""

from __future__ import annotations

import re

import pytest

from conftest import complete_graph, glue_at_vertex, grid_graph, petersen_graph
from oneplanar.cli import (
    CSV_HEADER,
    ParseError,
    _parse_duration,
    bench,
    main,
    parse_graph_file,
    run_pipeline,
)
from oneplanar.embedding import count_crossings, parse_embedding, validate
from oneplanar.graph import GraphError, build_graph
from oneplanar.search import SearchConfig


def k7_then_k6():
    """K7 and K6 sharing vertex 0, K7 edges first so its block leads."""
    k7 = complete_graph(7)
    k6 = complete_graph(6)
    return glue_at_vertex(k7, k6)


class TestEdgelistParsing:
    def test_basic(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("# a triangle\n0 1\n1 2\n\n0 2\n")
        g = parse_graph_file(str(f))
        assert g.n == 3 and g.edges == ((0, 1), (1, 2), (0, 2))

    def test_vertex_count_is_max_plus_one(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("0 5\n")
        assert parse_graph_file(str(f)).n == 6

    @pytest.mark.parametrize(
        "payload,lineno",
        [
            ("0 1\n2\n", 2),
            ("0 1 2\n", 1),
            ("0 one\n", 1),
            ("0 -1\n", 1),
        ],
    )
    def test_errors_carry_line_numbers(self, tmp_path, payload, lineno):
        f = tmp_path / "bad.txt"
        f.write_text(payload)
        with pytest.raises(ParseError) as err:
            parse_graph_file(str(f))
        assert err.value.lineno == lineno
        assert str(f) in str(err.value)

    @pytest.mark.parametrize("payload", ["0 0\n", "0 1\n1 0\n"])
    def test_rejects_malformed_graphs(self, tmp_path, payload):
        f = tmp_path / "bad.txt"
        f.write_text(payload)
        with pytest.raises(GraphError):
            parse_graph_file(str(f))

    def test_comments_only_is_empty_graph(self, tmp_path):
        f = tmp_path / "empty.txt"
        f.write_text("# nothing here\n")
        g = parse_graph_file(str(f))
        assert g.n == 0 and g.m == 0


class TestGmlParsing:
    GOOD = """
    graph [
      comment "ignored"
      directed 0
      node [ id 10 label "a" ]
      node [ id 12 label "b" graphics [ x 3 y 4 ] ]
      node [ id 11 ]
      edge [ source 10 target 12 weight 2 ]
      edge [ source 12 target 11 ]
    ]
    """

    def test_ids_compact_in_sorted_order(self, tmp_path):
        f = tmp_path / "g.gml"
        f.write_text(self.GOOD)
        g = parse_graph_file(str(f))
        # ids 10,11,12 become 0,1,2
        assert g.n == 3 and g.edges == ((0, 2), (1, 2))

    def test_extension_selects_format(self, tmp_path):
        f = tmp_path / "g.gml"
        f.write_text(self.GOOD)
        assert parse_graph_file(str(f), fmt="auto").m == 2

    def test_leading_token_selects_format(self, tmp_path):
        f = tmp_path / "noext"
        f.write_text(self.GOOD)
        assert parse_graph_file(str(f)).m == 2

    @pytest.mark.parametrize(
        "payload,fragment",
        [
            ("graph [ node [ id 1 ] node [ id 1 ] ]", "duplicate"),
            ("graph [ node [ label \"x\" ] ]", "id"),
            ("graph [ edge [ source 0 target 1 ] ]", "unknown"),
            ("graph [ node [ id 0 ]", "end of file"),
            ("graph [ node [ id 0 ] edge [ source 0 ] ]", "target"),
        ],
    )
    def test_structural_errors(self, tmp_path, payload, fragment):
        f = tmp_path / "bad.gml"
        f.write_text(payload)
        with pytest.raises(ParseError) as err:
            parse_graph_file(str(f))
        assert fragment in str(err.value).lower()

    def test_explicit_format_overrides_extension(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("graph [ node [ id 0 ] node [ id 1 ] edge [ source 0 target 1 ] ]")
        assert parse_graph_file(str(f), fmt="gml").m == 1
        with pytest.raises(ParseError):
            parse_graph_file(str(f), fmt="edgelist")


class TestPipeline:
    def test_planar_multi_block(self):
        g = build_graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        record, emb = run_pipeline(g, SearchConfig(), name="tri-bridge")
        assert record.verdict == "OnePlanar"
        assert record.blocks == 2 and record.crossings == 0
        assert record.backtracked is False
        assert validate(g, emb)

    def test_two_k6_blocks_sum_crossings(self):
        g = glue_at_vertex(complete_graph(6), complete_graph(6))
        record, emb = run_pipeline(g, SearchConfig())
        assert record.verdict == "OnePlanar"
        assert record.blocks == 2
        assert record.crossings == 6
        assert count_crossings(emb) == 6
        assert validate(g, emb)

    def test_negative_block_halts_early(self):
        record, emb = run_pipeline(k7_then_k6(), SearchConfig())
        assert record.verdict == "NotOnePlanar" and emb is None
        # The K7 block leads and dies at the density gate, so the K6
        # block is never searched at all.
        assert record.nodes == 0 and record.backtracked is False

    def test_unknown_from_expired_budget(self):
        g = glue_at_vertex(complete_graph(6), complete_graph(6))
        record, emb = run_pipeline(g, SearchConfig(time_budget=0.0))
        assert record.verdict == "Unknown" and emb is None

    def test_record_density(self):
        record, _ = run_pipeline(complete_graph(5), SearchConfig())
        assert record.n == 5 and record.m == 10 and record.density == 2.0


def write_corpus(root) -> dict[str, str]:
    """A small standard instance directory; returns name -> path."""
    files = {}
    named = (
        ("k5.txt", complete_graph(5)),
        ("grid.txt", grid_graph(3, 4)),
        ("k7.txt", complete_graph(7)),
        ("petersen.txt", petersen_graph()),
    )
    for name, g in named:
        p = root / name
        p.write_text("".join(f"{u} {v}\n" for u, v in g.edges))
        files[name] = str(p)
    gml = root / "k4.gml"
    parts = ["graph ["]
    parts += [f"node [ id {v} ]" for v in range(4)]
    parts += [f"edge [ source {u} target {v} ]" for u, v in complete_graph(4).edges]
    gml.write_text(" ".join(parts + ["]"]))
    files["k4.gml"] = str(gml)
    return files


def strip_times(csv: str) -> str:
    out = []
    for line in csv.splitlines():
        if line.startswith("# n="):
            line = re.sub(r"mean_time_ms=\S+", "mean_time_ms=_", line)
        elif not line.startswith(("#", CSV_HEADER)):
            cols = line.split(",")
            cols[7] = "_"
            line = ",".join(cols)
        out.append(line)
    return "\n".join(out)


class TestBench:
    def test_csv_shape(self, tmp_path):
        write_corpus(tmp_path)
        result = bench([str(tmp_path)], SearchConfig())
        lines = result.csv.splitlines()
        assert lines[0] == CSV_HEADER
        rows = [l for l in lines if l and not l.startswith("#")][1:]
        assert [r.split(",")[0] for r in rows] == [
            "grid.txt", "k4.gml", "k5.txt", "k7.txt", "petersen.txt"
        ]
        verdicts = {r.split(",")[0]: r.split(",")[5] for r in rows}
        assert verdicts == {
            "grid.txt": "OnePlanar",
            "k4.gml": "OnePlanar",
            "k5.txt": "OnePlanar",
            "k7.txt": "NotOnePlanar",
            "petersen.txt": "OnePlanar",
        }
        assert any(l.startswith("# summary") for l in lines)
        # grid (n=12) and petersen (n=10) land in the 10-20 bucket
        assert any(l.startswith("# n=10-20 files=2") for l in lines)

    def test_row_field_count_matches_header(self, tmp_path):
        write_corpus(tmp_path)
        result = bench([str(tmp_path)], SearchConfig())
        width = len(CSV_HEADER.split(","))
        for line in result.csv.splitlines():
            if line and not line.startswith("#"):
                assert len(line.split(",")) == width

    def test_malformed_file_becomes_error_row(self, tmp_path):
        (tmp_path / "bad.txt").write_text("0 zero\n")
        (tmp_path / "ok.txt").write_text("0 1\n")
        result = bench([str(tmp_path)], SearchConfig())
        by_name = {r.name: r for r in result.records}
        assert by_name["bad.txt"].verdict == "Error"
        assert by_name["bad.txt"].error
        assert by_name["ok.txt"].verdict == "OnePlanar"

    def test_skip_planar_drops_rows(self, tmp_path):
        write_corpus(tmp_path)
        result = bench([str(tmp_path)], SearchConfig(), skip_planar=True)
        names = [r.name for r in result.records]
        assert names == ["k5.txt", "k7.txt", "petersen.txt"]

    def test_worker_counts_agree(self, tmp_path):
        write_corpus(tmp_path)
        one = bench([str(tmp_path)], SearchConfig(), workers=1)
        two = bench([str(tmp_path)], SearchConfig(), workers=2)
        assert strip_times(one.csv) == strip_times(two.csv)

    def test_explicit_file_list(self, tmp_path):
        files = write_corpus(tmp_path)
        result = bench([files["k5.txt"]], SearchConfig())
        assert [r.name for r in result.records] == ["k5.txt"]


class TestDurations:
    @pytest.mark.parametrize(
        "text,seconds",
        [("300", 300.0), ("45s", 45.0), ("5m", 300.0), ("3h", 10800.0), ("2.5m", 150.0)],
    )
    def test_accepted(self, text, seconds):
        assert _parse_duration(text) == seconds

    @pytest.mark.parametrize("text", ["", "s", "5x", "h3"])
    def test_rejected(self, text):
        import argparse

        with pytest.raises(argparse.ArgumentTypeError):
            _parse_duration(text)


class TestMain:
    def test_check_positive(self, tmp_path, capsys):
        f = tmp_path / "k5.txt"
        f.write_text("".join(f"{u} {v}\n" for u, v in complete_graph(5).edges))
        assert main(["check", str(f)]) == 0
        out = capsys.readouterr().out
        assert "k5.txt: OnePlanar with 1 crossing(s)" in out
        assert "blocks=1" in out

    def test_check_negative_still_exits_zero(self, tmp_path, capsys):
        f = tmp_path / "k7.txt"
        f.write_text("".join(f"{u} {v}\n" for u, v in complete_graph(7).edges))
        assert main(["check", str(f)]) == 0
        assert "NotOnePlanar" in capsys.readouterr().out

    def test_check_parse_error_exits_two(self, tmp_path, capsys):
        f = tmp_path / "bad.txt"
        f.write_text("nope\n")
        assert main(["check", str(f)]) == 2
        assert "bad.txt" in capsys.readouterr().err

    def test_check_missing_file_exits_two(self, tmp_path):
        assert main(["check", str(tmp_path / "absent.txt")]) == 2

    def test_emitted_embedding_parses_back(self, tmp_path):
        f = tmp_path / "k5.txt"
        g = complete_graph(5)
        f.write_text("".join(f"{u} {v}\n" for u, v in g.edges))
        out = tmp_path / "cert.txt"
        assert main(["check", str(f), "--emit-embedding", str(out)]) == 0
        emb = parse_embedding(out.read_text(), g)
        assert validate(g, emb)

    def test_check_oracle_flag(self, tmp_path, capsys):
        f = tmp_path / "k5.txt"
        f.write_text("".join(f"{u} {v}\n" for u, v in complete_graph(5).edges))
        assert main(["check", str(f), "--oracle"]) == 0
        out = capsys.readouterr().out
        assert "oracle: OnePlanar (agrees)" in out

    def test_check_oracle_skipped_when_too_large(self, tmp_path, capsys):
        f = tmp_path / "k7.txt"
        f.write_text("".join(f"{u} {v}\n" for u, v in complete_graph(7).edges))
        assert main(["check", str(f), "--oracle"]) == 0
        assert "oracle: skipped" in capsys.readouterr().out

    def test_bench_writes_csv(self, tmp_path, capsys):
        write_corpus(tmp_path)
        out = tmp_path / "report.csv"
        assert main(["bench", str(tmp_path), "--out", str(out)]) == 0
        assert out.read_text().splitlines()[0] == CSV_HEADER

    def test_bench_stdout_default(self, tmp_path, capsys):
        files = write_corpus(tmp_path)
        assert main(["bench", files["grid.txt"]]) == 0
        assert capsys.readouterr().out.splitlines()[0] == CSV_HEADER

    def test_flags_reach_search(self, tmp_path, capsys):
        f = tmp_path / "k5.txt"
        f.write_text("".join(f"{u} {v}\n" for u, v in complete_graph(5).edges))
        assert main(["check", str(f), "--no-skew", "--no-kite",
                     "--completion-prob", "0", "--timeout", "45s", "--seed", "9"]) == 0
        assert "OnePlanar" in capsys.readouterr().out

    def test_threads_env(self, tmp_path, monkeypatch, capsys):
        write_corpus(tmp_path)
        monkeypatch.setenv("ONEPLANAR_THREADS", "2")
        assert main(["bench", str(tmp_path)]) == 0
        env_csv = capsys.readouterr().out
        monkeypatch.delenv("ONEPLANAR_THREADS")
        assert main(["bench", str(tmp_path)]) == 0
        plain_csv = capsys.readouterr().out
        assert strip_times(env_csv) == strip_times(plain_csv)
