from __future__ import annotations

import io

import pytest

from walkcent.canon import canonical_graph6
from walkcent.graph import parse_edge_list, parse_graph6, to_graph6
from walkcent.search import (ResumeError, SearchFinding, SearchSpec, dedup_findings,
                             isomorphism_classes, scan, scan_graph)

from conftest import EIGHT


def test_spec_validation():
    with pytest.raises(ValueError):
        SearchSpec(n=4, min_count=0)
    with pytest.raises(ValueError):
        SearchSpec(n=11)
    with pytest.raises(ValueError):
        SearchSpec()
    with pytest.raises(ValueError):
        SearchSpec(n=4, predicate="nope")
    assert SearchSpec(n=4, predicate="rc-exceeds-sc").measures == ("sc", "rc")


def test_n1_yields_nothing():
    r = scan(SearchSpec(n=1))
    assert r.findings == [] and r.graphs_scanned == 1


def test_nine_graph_found_via_stream(nine):
    spec = SearchSpec(graph6_source=[to_graph6(nine)], min_count=2)
    r = scan(spec)
    pairs = {f.pair for f in r.findings}
    assert (2, 8) in pairs
    f = next(f for f in r.findings if f.pair == (2, 8))
    assert f.counts["sc"] == 2
    assert f.values["sc"][0] == pytest.approx(2.12, abs=0.05)


def test_ten_rc_and_sc_counts(ten):
    spec = SearchSpec(graph6_source=[to_graph6(ten)], measures=("sc", "rc"), min_count=2,
                      interval=(0.0, 30.0))
    f = next(f for f in scan(spec).findings if f.pair == (3, 4))
    assert f.counts == {"sc": 2, "rc": 2}


def test_findings_reverify(nine):
    spec = SearchSpec(graph6_source=[to_graph6(nine)], min_count=1, resolution=1000)
    for f in scan_graph(nine, spec):
        again = scan_graph(parse_graph6(f.graph6), SearchSpec(graph6_source=[], min_count=1,
                                                              resolution=4000))
        match = next(x for x in again if x.pair == f.pair)
        assert match.counts == f.counts


def test_cospectral_katz_gap_on_eight(eight):
    spec = SearchSpec(graph6_source=[to_graph6(eight)], predicate="cospectral-katz-gap")
    r = scan(spec)
    assert (1, 8) in {f.pair for f in r.findings}
    f = next(f for f in r.findings if f.pair == (1, 8))
    assert f.gaps["katz"] > 1e-8 and f.gaps["tc"] > 1e-8
    assert "cospectral" in f.tsv_lines()[0]


def test_no_katz_gap_up_to_7():
    assert scan(SearchSpec(n=(2, 7), predicate="cospectral-katz-gap")).findings == []


def test_ranking_and_determinism():
    spec = SearchSpec(n=(5, 6), min_count=1)
    a = scan(spec)
    b = scan(SearchSpec(n=(5, 6), min_count=1, workers=2, chunk=7))
    assert [f.to_dict() for f in a.findings] == [f.to_dict() for f in b.findings]
    keys = [f.sort_key() for f in a.findings]
    assert keys == sorted(keys)


def test_no_two_interlacings_small():
    assert scan(SearchSpec(n=(2, 6), min_count=2)).findings == []


def test_stream_errors_reported_and_scan_continues(nine):
    lines = io.StringIO("A_\nbad!\n# comment\n\n" + to_graph6(nine) + "\nD?\n")
    r = scan(SearchSpec(graph6_source=lines, min_count=2))
    assert [ln for ln, _ in r.errors] == [2, 6]
    assert r.graphs_scanned == 2
    assert any(f.pair == (2, 8) for f in r.findings)


def test_stream_connected_filter():
    r = scan(SearchSpec(graph6_source=["A?", "A_"], connected_only=True))
    assert r.graphs_scanned == 1
    r = scan(SearchSpec(graph6_source=["A?", "A_"], connected_only=False))
    assert r.graphs_scanned == 2


def test_stream_file(tmp_path, nine):
    p = tmp_path / "in.g6"
    p.write_text(to_graph6(nine) + "\n")
    assert scan(SearchSpec(graph6_source=str(p), min_count=2)).findings


def test_resume(tmp_path):
    path = tmp_path / "resume.txt"
    full = scan(SearchSpec(n=(5, 6), min_count=1))
    spec = SearchSpec(n=(5, 6), min_count=1, chunk=40)
    first = scan(spec, resume=path)
    text = path.read_text().splitlines()
    assert text[0].startswith("spec=") and text[1] == f"count={first.graphs_scanned}"
    assert text[2].startswith("last=")
    # rewind to a mid-run checkpoint: keep only findings from the first 40 graphs
    from walkcent.canon import enumerate_graphs

    g6s = [to_graph6(g) for n in (5, 6) for g in enumerate_graphs(n, True)]
    head = set(g6s[:40])
    kept = [ln for ln in text[3:] if any(f'"{s}"' in ln for s in head)]
    path.write_text("\n".join([text[0], "count=40", f"last={g6s[39]}"] + kept) + "\n")
    resumed = scan(spec, resume=path)
    assert [f.to_dict() for f in resumed.findings] == [f.to_dict() for f in full.findings]
    assert resumed.graphs_scanned == full.graphs_scanned


def test_resume_mismatch(tmp_path):
    path = tmp_path / "resume.txt"
    scan(SearchSpec(n=4), resume=path)
    with pytest.raises(ResumeError):
        scan(SearchSpec(n=4, min_count=2), resume=path)
    path.write_text(path.read_text().replace("last=", "last=XXX", 1))
    with pytest.raises(ResumeError):
        scan(SearchSpec(n=4), resume=path)


def test_dedup_and_classes(eight):
    f = SearchFinding("G??xuO", 8, (1, 8))
    assert len(dedup_findings([f, f])) == 1
    relabeled = parse_edge_list(EIGHT)
    assert isomorphism_classes([SearchFinding(to_graph6(relabeled), 8, (1, 8))]) == [
        canonical_graph6(eight)]


def test_tsv_format():
    f = SearchFinding("H", 9, (2, 8), {"sc": 2}, {"sc": [2.1223133721, 4.4765987830]})
    assert f.tsv_lines() == ["H\t2\t8\tsc\t2\t2.1223133721,4.476598783"]


def test_rc_exceeds_sc_runs():
    r = scan(SearchSpec(n=(3, 6), predicate="rc-exceeds-sc"))
    for f in r.findings:
        assert f.counts["rc"] > f.counts["sc"]
