"""Whole-pipeline behaviour: stripping, inference, reporting, CLI."""
from __future__ import annotations

import json
import shutil
from pathlib import Path

import pytest

from kindforge.cli import main
from kindforge.driver import (
    bundled_corpus_dir,
    infer_source,
    run_corpus,
    strip_annotations,
)
from kindforge.errors import SolveError, TypeMismatch
from kindforge.parser import parse_source
from kindforge.syntax import (
    FreshSupply,
    KindVar,
    Mult,
    SL,
    TL,
    TU,
    pretty_kind,
)

FST = "fst : (a, b) -> a\nfst = /\\a => /\\b => \\p:(a, b) -> let (x, y) = p in x\n"

DOT = (
    "dot : (b -> c) -> (a -> b) -> a -> c\n"
    "dot = /\\b => /\\c => /\\a => \\f:(b -> c) -> \\g:(a -> b) -> \\x:a -> f (g x)\n"
)

DOT_WRITTEN = (
    "dot : forall b:*T . forall c:*T . forall a:*T . (b -> c) -> (a -> b) -> a -> c\n"
    "dot = /\\b => /\\c => /\\a => \\f:(b -> c) -> \\g:(a -> b) -> \\x:a -> f (g x)\n"
)


# ---------------------------------------------------------------------------
# Stripping
# ---------------------------------------------------------------------------


def test_strip_replaces_written_kind():
    supply = FreshSupply()
    prog = parse_source("type C = rec a:1S . !Int;a\n", supply)
    stripped, slots = strip_annotations(prog, supply)
    rec = stripped.decl("C").body
    assert isinstance(rec.kind, KindVar)
    by_cat = {s.category: s for s in slots}
    assert by_cat["recursive"].written == SL
    assert by_cat["type-abbreviation"].written is None


def test_strip_keeps_existing_fresh_slots():
    supply = FreshSupply()
    prog = parse_source(FST, supply)
    stripped, slots = strip_annotations(prog, supply)
    assert stripped == prog
    assert all(s.written is None for s in slots)
    assert [s.category for s in slots] == ["universal", "universal"]


def test_strip_zero_annotation_program_identity():
    supply = FreshSupply()
    prog = parse_source("f : ()\nf = ()\n", supply)
    stripped, slots = strip_annotations(prog, supply)
    assert stripped == prog and slots == []


# ---------------------------------------------------------------------------
# Inference
# ---------------------------------------------------------------------------


def test_fst_inference():
    res = infer_source(FST)
    assert res.solution.kind_vars == {0: TL, 1: TU}
    assert res.solution.mult_vars == {0: Mult.LIN, 1: Mult.LIN}
    assert "forall a:1T . forall b:*T" in res.emit()


def test_dot_unannotated_infers_top():
    res = infer_source(DOT)
    assert all(pretty_kind(a.inferred) == "1T" for a in res.annotations)
    assert len(res.annotations) == 3
    assert all(a.verdict == "inferred-fresh" for a in res.annotations)


def test_dot_written_reports_more_general():
    res = infer_source(DOT_WRITTEN)
    assert [a.verdict for a in res.annotations] == ["more-general"] * 3
    assert all(pretty_kind(a.written) == "*T" for a in res.annotations)
    assert all(pretty_kind(a.inferred) == "1T" for a in res.annotations)
    # written kinds stay in the emitted program; the report is advisory
    assert "forall b:*T" in res.emit()


def test_signature_body_mismatch():
    with pytest.raises(TypeMismatch):
        infer_source("f : () -> ()\nf = /\\a => \\x:a -> x\n")
    with pytest.raises(TypeMismatch):
        infer_source("f : Int -> Int\nf = \\x:Int -> ()\n")


def test_quantifier_names_must_match():
    with pytest.raises(TypeMismatch):
        infer_source("f : forall a:1T . a -> a\nf = /\\b => \\x:b -> x\n")


def test_later_decls_use_solved_schemes():
    res = infer_source("id : a -> a\nid = /\\a => \\x:a -> x\nuse : Int -> Int\nuse = \\n:Int -> id [Int] n\n")
    assert res.annotations[0].inferred == TL


def test_unsatisfiable_program_provenance():
    with pytest.raises(SolveError) as err:
        infer_source("drop : 1() -> ()\ndrop = \\x:1() -> ()\n")
    assert err.value.origin.rule == "weaken"


def test_reinference_fixpoint():
    for src in (FST, DOT, DOT_WRITTEN):
        emitted = infer_source(src).emit()
        again = infer_source(emitted).emit()
        assert again == emitted


def test_traces_available_with_explain():
    res = infer_source(FST, explain=True)
    assert any(line.startswith("iter ") and "'k1" in line for line in res.traces)


# ---------------------------------------------------------------------------
# Corpus
# ---------------------------------------------------------------------------


def test_bundled_corpus_clean():
    summary, reports = run_corpus(bundled_corpus_dir())
    assert summary.files_failed == 0
    assert summary.files_ok >= 15
    assert summary.verdict_total("more-general") >= 1


def test_empty_directory(tmp_path):
    summary, reports = run_corpus(tmp_path)
    assert summary.total == 0 and summary.files_ok == 0 and summary.files_failed == 0


def test_corpus_with_one_bad_file(tmp_path):
    shutil.copy(bundled_corpus_dir() / "fst.fstk", tmp_path / "fst.fstk")
    (tmp_path / "bad.fstk").write_text("drop : 1() -> ()\ndrop = \\x:1() -> ()\n")
    summary, reports = run_corpus(tmp_path)
    assert summary.files_failed == 1 and summary.files_ok == 1
    bad = next(r for r in reports if r.path.endswith("bad.fstk"))
    assert not bad.ok and "unsatisfiable" in bad.error


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _write(tmp_path, name, text) -> str:
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_cli_infer_json(tmp_path, capsys):
    path = _write(tmp_path, "fst.fstk", FST)
    assert main(["infer", path, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["solution"]["kindVars"] == {"k0": "1T", "k1": "*T"}
    assert payload["solution"]["multVars"] == {"m0": "1", "m1": "1"}
    assert [a["verdict"] for a in payload["annotations"]] == ["inferred-fresh"] * 2


def test_cli_json_and_text_agree(tmp_path, capsys):
    path = _write(tmp_path, "dot.fstk", DOT_WRITTEN)
    assert main(["infer", path, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert main(["infer", path]) == 0
    text = capsys.readouterr().out
    for a in payload["annotations"]:
        assert a["category"] in text
        assert a["verdict"] in text
        assert a["inferred"] in text


def test_cli_emit_annotated(tmp_path, capsys):
    path = _write(tmp_path, "fst.fstk", FST)
    out = tmp_path / "fst_annotated.fstk"
    assert main(["infer", path, "--emit-annotated", str(out)]) == 0
    capsys.readouterr()
    emitted = out.read_text()
    assert "forall a:1T . forall b:*T" in emitted
    assert main(["infer", str(out)]) == 0


def test_cli_exit_codes(tmp_path, capsys):
    bad_parse = _write(tmp_path, "bad_parse.fstk", "f : ( \nf = ()\n")
    assert main(["infer", bad_parse]) == 2
    bad_kinds = _write(tmp_path, "bad_kinds.fstk", "drop : 1() -> ()\ndrop = \\x:1() -> ()\n")
    assert main(["infer", bad_kinds]) == 1
    capsys.readouterr()


def test_cli_dump_constraints_fst(tmp_path, capsys):
    path = _write(tmp_path, "fst.fstk", FST)
    assert main(["dump-constraints", path]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l and not l.startswith("--")]
    assert sorted(lines) == sorted(
        [
            "'m0 = lub(mult('k0), mult('k1))",
            "'k0 <: 'm0 T",
            "'k1 <: 'm0 T",
            "'m1 = lub(mult('k0), mult('k1))",
            "'k0 <: 'm1 T",
            "'k1 <: 'm1 T",
            "'k1 <: *T",
        ]
    )


def test_cli_dump_explain_provenance(tmp_path, capsys):
    path = _write(tmp_path, "fst.fstk", FST)
    assert main(["dump-constraints", path, "--explain"]) == 0
    out = capsys.readouterr().out
    assert "weaken@" in out


def test_cli_explain_traces(tmp_path, capsys):
    path = _write(tmp_path, "fst.fstk", FST)
    assert main(["infer", path, "--explain"]) == 0
    err = capsys.readouterr().err
    assert "iter 1: 'k1 1T -> *T" in err


def test_cli_no_optimize_same_outcome(tmp_path, capsys):
    path = _write(tmp_path, "fst.fstk", FST)
    assert main(["infer", path, "--json"]) == 0
    fast = json.loads(capsys.readouterr().out)
    assert main(["infer", path, "--json", "--no-optimize"]) == 0
    slow = json.loads(capsys.readouterr().out)
    assert fast["solution"] == slow["solution"]


def test_cli_corpus_json_and_report(tmp_path, capsys):
    report_dir = tmp_path / "report"
    assert (
        main(["corpus", str(bundled_corpus_dir()), "--json", "--report-dir", str(report_dir)])
        == 0
    )
    payload = json.loads(capsys.readouterr().out)
    assert payload["summary"]["filesFailed"] == 0
    assert payload["summary"]["total"] > 0
    assert (report_dir / "summary.csv").exists()
    assert (report_dir / "annotations.csv").exists()
    assert (report_dir / "annotations_by_category.png").stat().st_size > 0
    import csv

    with (report_dir / "summary.csv").open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["category", "exact", "more-general", "inferred-fresh", "total"]
    total_row = rows[-1]
    assert int(total_row[-1]) == payload["summary"]["total"]


def test_cli_corpus_failure_exit(tmp_path, capsys):
    (tmp_path / "bad.fstk").write_text("drop : 1() -> ()\ndrop = \\x:1() -> ()\n")
    assert main(["corpus", str(tmp_path)]) == 1
    capsys.readouterr()
