"""File formats: round-trips, diagnostics, DL import, CSV emission."""

import json

import numpy as np
import pytest

from cssnet import CssFormatError, parse_css, write_css
from cssnet.io import (
    actor_table_csv,
    estimate_report_json,
    long_csv,
    matrix_csv,
    parse_css_text,
    parse_dl_text,
    roc_csv,
    summary_csv,
    write_css_text,
    write_slice_dir,
)

from conftest import make_random_css, random_sample


SMALL = """\
css n=3 relation=advice
labels=ann,bob,cat

# perceiver blocks follow
perceiver 1
0 1 0
0 0 1
1 0 0
perceiver 2
0 0 0
1 0 0
0 0 0
perceiver 3
0 1 1
0 0 0
0 1 0
"""


class TestCssText:
    def test_parse_small(self):
        css = parse_css_text(SMALL)
        assert css.n_actors == 3
        assert css.relation_name == "advice"
        assert css.actor_labels == ["ann", "bob", "cat"]
        assert css.cells[0, 1, 0] == 1  # perceiver 1 sees 1 -> 2
        assert css.cells[2, 1, 2] == 1  # perceiver 3 sees 3 -> 2

    def test_round_trip_random(self, rng):
        for _ in range(10):
            css = make_random_css(rng, int(rng.integers(2, 9)))
            again = parse_css_text(write_css_text(css))
            assert (again.cells == css.cells).all()
            assert again.relation_name == css.relation_name

    def test_round_trip_with_labels(self):
        css = parse_css_text(SMALL)
        assert parse_css_text(write_css_text(css)).actor_labels == css.actor_labels

    def test_nonzero_diagonal_diagnostic(self):
        bad = SMALL.replace("perceiver 1\n0 1 0", "perceiver 1\n1 1 0")
        with pytest.raises(CssFormatError, match=r":6: .*nonzero diagonal at \(1, 1\)"):
            parse_css_text(bad, "x.css")

    def test_non_binary_cell(self):
        bad = SMALL.replace("0 0 1", "0 0 2", 1)
        with pytest.raises(CssFormatError, match="non-binary value '2'"):
            parse_css_text(bad)

    def test_row_length_mismatch(self):
        bad = SMALL.replace("0 0 1", "0 0", 1)
        with pytest.raises(CssFormatError, match="expected 3 values, got 2"):
            parse_css_text(bad)

    def test_malformed_header(self):
        with pytest.raises(CssFormatError, match="header"):
            parse_css_text("csss n=3 relation=x\n")
        with pytest.raises(CssFormatError, match="n="):
            parse_css_text("css relation=x n=3\n")
        with pytest.raises(CssFormatError, match="relation"):
            parse_css_text("css n=3\n")

    def test_wrong_label_count(self):
        bad = SMALL.replace("labels=ann,bob,cat", "labels=ann,bob")
        with pytest.raises(CssFormatError, match="expected 3 labels"):
            parse_css_text(bad)

    def test_blocks_out_of_order(self):
        bad = SMALL.replace("perceiver 2", "perceiver 9")
        with pytest.raises(CssFormatError, match="expected 'perceiver 2'"):
            parse_css_text(bad)

    def test_trailing_garbage(self):
        with pytest.raises(CssFormatError, match="unexpected content"):
            parse_css_text(SMALL + "\n0 1 0\n")

    def test_missing_rows(self):
        truncated = "\n".join(SMALL.splitlines()[:-1])
        with pytest.raises(CssFormatError, match="missing row"):
            parse_css_text(truncated)


class TestSliceDir:
    def test_round_trip(self, tmp_path, rng):
        css = make_random_css(rng, 5)
        target = tmp_path / "advice_css"
        write_slice_dir(css, target)
        again = parse_css(target)
        assert (again.cells == css.cells).all()
        assert again.relation_name == css.relation_name

    def test_manifest_dimension_mismatch(self, tmp_path, rng):
        css = make_random_css(rng, 4)
        target = tmp_path / "d"
        write_slice_dir(css, target)
        manifest = json.loads((target / "manifest.json").read_text())
        manifest["n_actors"] = 5
        (target / "manifest.json").write_text(json.dumps(manifest))
        with pytest.raises(CssFormatError, match="missing slice_5.csv|expected 5 rows"):
            parse_css(target)

    def test_missing_manifest(self, tmp_path):
        target = tmp_path / "empty"
        target.mkdir()
        with pytest.raises(CssFormatError, match="manifest.json"):
            parse_css(target)

    def test_nonzero_diagonal(self, tmp_path, rng):
        css = make_random_css(rng, 3)
        target = tmp_path / "d"
        write_slice_dir(css, target)
        rows = (target / "slice_2.csv").read_text().splitlines()
        cols = rows[1].split(",")
        cols[1] = "1"
        rows[1] = ",".join(cols)
        (target / "slice_2.csv").write_text("\n".join(rows) + "\n")
        with pytest.raises(CssFormatError, match=r"nonzero diagonal at \(2, 2\)"):
            parse_css(target)


class TestWriteCss:
    def test_auto_format_by_suffix(self, tmp_path, rng):
        css = make_random_css(rng, 4)
        file_target = tmp_path / "a.css"
        dir_target = tmp_path / "a_dir"
        write_css(css, file_target)
        write_css(css, dir_target)
        assert file_target.is_file()
        assert (dir_target / "manifest.json").is_file()
        assert (parse_css(file_target).cells == parse_css(dir_target).cells).all()

    def test_unknown_format_rejected(self, tmp_path, rng):
        with pytest.raises(ValueError, match="unknown format"):
            write_css(make_random_css(rng, 3), tmp_path / "x.css", fmt="xml")


class TestDlImport:
    def _dl_text(self, css):
        n = css.n_actors
        parts = [f"DL N={n} NM={n}", "FORMAT = FULLMATRIX DIAGONAL PRESENT", "DATA:"]
        for m in range(1, n + 1):
            for row in css.slice(m):
                parts.append(" ".join(str(int(v)) for v in row))
        return "\n".join(parts) + "\n"

    def test_round_trip_through_dl(self, rng):
        css = make_random_css(rng, 6)
        again = parse_dl_text(self._dl_text(css), "k.dat")
        assert (again.cells == css.cells).all()
        assert again.relation_name == "k"

    def test_detected_by_parse_css(self, tmp_path, rng):
        css = make_random_css(rng, 4)
        path = tmp_path / "net.dat"
        path.write_text(self._dl_text(css))
        assert (parse_css(path).cells == css.cells).all()

    def test_labels_picked_up(self, rng):
        css = make_random_css(rng, 3)
        text = self._dl_text(css).replace(
            "DATA:", 'ROW LABELS:\n"ann"\n"bob"\n"cat"\nDATA:'
        )
        assert parse_dl_text(text).actor_labels == ["ann", "bob", "cat"]

    def test_wrong_matrix_count(self, rng):
        css = make_random_css(rng, 4)
        text = self._dl_text(css).replace("NM=4", "NM=3")
        with pytest.raises(CssFormatError, match="NM=3"):
            parse_dl_text(text)

    def test_token_count_mismatch(self, rng):
        css = make_random_css(rng, 3)
        with pytest.raises(CssFormatError, match="expected 27 data values"):
            parse_dl_text(self._dl_text(css) + "0 1\n")

    def test_force_zero_diagonal(self):
        text = (
            "DL N=2 NM=2\nFORMAT = FULLMATRIX DIAGONAL PRESENT\nDATA:\n"
            "1 1\n0 0\n0 1\n0 0\n"
        )
        with pytest.raises(CssFormatError, match="nonzero diagonal"):
            parse_dl_text(text)
        css = parse_dl_text(text, force_zero_diagonal=True)
        assert css.cells[0, 0, 0] == 0
        assert css.cells[0, 1, 0] == 1

    def test_unsupported_shapes(self):
        with pytest.raises(CssFormatError, match="DATA"):
            parse_dl_text("DL N=3 NM=3\n0 1 0\n")
        with pytest.raises(CssFormatError, match="only FULLMATRIX"):
            parse_dl_text("DL N=2 NM=2\nFORMAT=EDGELIST1\nDATA:\n0\n")
        with pytest.raises(CssFormatError, match="DIAGONAL ABSENT"):
            parse_dl_text(
                "DL N=2 NM=2\nFORMAT=FULLMATRIX DIAGONAL ABSENT\nDATA:\n0\n"
            )


class TestCsvEmission:
    def test_matrix_csv(self):
        mat = np.array([[0, 1], [1, 0]])
        assert matrix_csv(mat) == "0,1\n1,0\n"

    def test_roc_csv_columns_and_rounding(self, rng):
        from cssnet import roc_table

        css = make_random_css(rng, 6)
        table = roc_table(css, random_sample(rng, 6, 4), w=2.0)
        text = roc_csv(table, digits=3)
        header, *rows = text.strip().splitlines()
        assert header == "k,tpr,fpr,type1_count,type2_count,delta,delta_w"
        assert len(rows) == len(table.rows)
        first = rows[0].split(",")
        assert first[0] == "0"
        assert first[1] == f"{table.rows[0].tpr:.3f}"

    def test_actor_and_summary_csv(self, rng):
        from cssnet import error_breakdown_table, error_summary

        css = make_random_css(rng, 5)
        profiles = error_breakdown_table(css)
        text = actor_table_csv(profiles)
        assert text.splitlines()[0].startswith("actor_id,type1_count")
        assert len(text.strip().splitlines()) == 6
        summary = error_summary(profiles)
        lines = summary_csv(summary, digits=3).strip().splitlines()
        assert lines[0].startswith("n_actors,mean_type1")
        assert lines[1].split(",")[0] == "5"

    def test_nan_serialized_as_empty(self):
        import math

        from cssnet.simulate import ExperimentResult, ExperimentRow

        from test_simulate import _small_config

        rows = [ExperimentRow("d", "rtm", "w=auto", 5, 0, 3, 1, math.nan, True)]
        text = long_csv(ExperimentResult(config=_small_config(), rows=rows))
        assert text.strip().splitlines()[1] == "d,rtm,w=auto,5,0,3,1,,1"

    def test_estimate_report_json_fields(self, rng):
        from cssnet import rtm

        css = make_random_css(rng, 6)
        report = rtm(css, random_sample(rng, 6, 4))
        payload = json.loads(estimate_report_json(report))
        assert payload["method"] == "rtm"
        assert payload["k_star"] == report.k_star
        assert "knowledge_region" in payload
        assert payload["d_bar"] == pytest.approx(report.roc.d_bar)
