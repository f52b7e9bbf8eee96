import csv
import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3g2.catalog import DataError, LiteratureCatalog, load_literature, load_nikulin
from k3g2.emit import parse_json, render, render_many
from k3g2.tables import (
    TableArtifact,
    betti_table,
    case2_rows,
    case3_values,
    d4_values,
    fixed_sets_table,
    literature_diff,
    sum_sets,
    tuples_table,
)

cells = st.one_of(st.integers(-1000, 1000), st.text(max_size=12))


@given(st.lists(st.tuples(cells, cells, cells), max_size=15))
def test_json_round_trip(rows):
    # sortable rows: keep a single type per column
    rows = [(int(a) if isinstance(a, int) else 0, str(b), str(c)) for a, b, c in rows]
    t = TableArtifact("t", ("a", "b", "c"), tuple(rows), ("note",))
    assert parse_json(render(t, "json")) == [t]
    assert parse_json(render_many([t, t], "json")) == [t, t]


def test_csv_quoting():
    t = TableArtifact("t", ("x", "y"), ((1, 'a,"b"'),))
    back = list(csv.reader(io.StringIO(render(t, "csv"))))
    assert back == [["x", "y"], ["1", 'a,"b"']]


def test_markdown_layout():
    t = TableArtifact("t", ("b2", "b3"), ((2, "25 29"),))
    md = render(t, "md")
    assert "| b2 | b3 |" in md and "| 2 | 25 29 |" in md


def test_rows_sorted_and_checked():
    t = TableArtifact("t", ("a",), ((3,), (1,), (2,)))
    assert t.rows == ((1,), (2,), (3,))
    with pytest.raises(ValueError):
        TableArtifact("t", ("a", "b"), ((1,),))


@pytest.mark.parametrize("case", ["1", "2", "3", "d4"])
def test_tables_deterministic_across_threads(case, nikulin):
    a = render(betti_table(case, nikulin, threads=1), "json")
    b = render(betti_table(case, nikulin, threads=4), "json")
    assert a == b


def test_case2_census():
    rows, counts = case2_rows()
    assert counts == {"sums": 60, "matched": 31, "remaining": 29}
    assert rows[0][:4] == (4, 27, 22, 22)
    assert (24, 91, 21, 1, "yes") in rows
    # realised only by a pair with an empty fixed locus
    assert (6, 33, 22, 20, "no") in rows


def test_case3_sets():
    v = case3_values()
    assert {b3 for _, b3 in v["tuples"]} == {63, 71, 79}
    assert v["barely"] == {(0, 71)}
    assert v["barely_tuples"] == {(0, 63), (0, 71)}


def test_d4_sum_sets_agree():
    s12, s23 = sum_sets()
    assert s12 == s23 and len(s12) == 60


def test_d4_count(nikulin):
    vals = d4_values(nikulin)
    assert len(vals) == 83
    assert vals[(12, 43)] is False


def test_literature_diff_with_empty_catalog(nikulin):
    t = betti_table("2", nikulin)
    left = literature_diff(t, LiteratureCatalog(()), "2")
    assert {r[:2] for r in t.rows} == set(left.rows)


def test_case2_literature_diff(nikulin, literature):
    left = literature_diff(betti_table("2", nikulin), literature, "2")
    assert set(left.rows) == {(4, 31), (6, 29), (6, 37), (22, 77), (22, 81), (22, 85), (24, 91)}


def test_tuple_table_count():
    assert len(tuples_table().rows) == 342


def test_fixed_sets_table_rows():
    t = fixed_sets_table("3")
    assert len(t.rows) == 12 and t.notes == ("group order 4",)


def test_nikulin_catalog(tmp_path, nikulin):
    assert len(nikulin) == 75 and not nikulin.problems()
    lines = [f"{r} {a} {d}" for r, a, d in list(nikulin)[:-1]]
    short = tmp_path / "short.txt"
    short.write_text("\n".join(lines))
    assert load_nikulin(short).problems() == ["expected 75 triples, found 74"]
    bad = tmp_path / "bad.txt"
    bad.write_text("1 1\n")
    with pytest.raises(DataError):
        load_nikulin(bad)
    with pytest.raises(DataError):
        load_nikulin(tmp_path / "missing.txt")


def test_literature_catalog(tmp_path, literature):
    assert (4, 67) in literature.pairs("2")
    broken = tmp_path / "lit.json"
    broken.write_text(json.dumps({"entries": [{"b2": 1}]}))
    with pytest.raises(DataError):
        load_literature(broken)
