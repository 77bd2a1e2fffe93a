import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from polyid.cli import main
from polyid.errors import EmptyInput, InconsistentQ, InfeasibleDims, IoFailure, RaggedGrid
from polyid.grid import Cell, classify
from polyid.instance import emit_instance, parse_instance, random_instance
from polyid.intervals import special_interval

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestParse:
    def test_single(self):
        inst = parse_instance("#")
        assert inst.polyomino.cells == {Cell(1, 1)} and inst.q is None

    def test_ring_with_q(self):
        inst = parse_instance((DATA / "ring3.txt").read_text())
        assert len(inst.polyomino) == 8
        assert inst.q.cells == {Cell(2, 2)}
        assert tuple(inst.rect.hi) == (4, 4)

    def test_top_row_first(self):
        inst = parse_instance("#.\n##\n")
        assert inst.polyomino.cells == {Cell(1, 1), Cell(2, 1), Cell(1, 2)}

    def test_ragged(self):
        with pytest.raises(RaggedGrid):
            parse_instance("##\n #\n")

    def test_empty(self):
        with pytest.raises(EmptyInput):
            parse_instance("\n\n")
        with pytest.raises(EmptyInput):
            parse_instance("..\n")

    def test_inconsistent_q(self):
        with pytest.raises(InconsistentQ):
            parse_instance("###\n#.#\n###\nQ: 1,1\n")

    def test_inline_q(self):
        inst = parse_instance("###\n#.#\n###\nQ: 2,2\n")
        assert inst.q.cells == {Cell(2, 2)}

    @pytest.mark.parametrize("name", ["ring3.txt", "ring5.txt", "single.txt", "domino.txt", "touch.txt", "plus.txt"])
    def test_round_trip_golden(self, name):
        text = (DATA / name).read_text()
        assert emit_instance(parse_instance(text)) == text


class TestRandom:
    def test_three_by_three(self):
        for seed in range(10):
            inst = random_instance(3, 3, seed)
            assert inst.q.cells == {Cell(2, 2)}

    def test_infeasible(self):
        with pytest.raises(InfeasibleDims):
            random_instance(2, 2, 0)

    def test_seed_determinism(self, capsys):
        a = run(capsys, "random", "--rect", "6x5", "--seed", 7)
        b = run(capsys, "random", "--rect", "6x5", "--seed", 7)
        assert a == b and a[0] == 0
        assert parse_instance(a[1]).q is not None

    @given(st.integers(3, 9), st.integers(3, 9), st.integers(0, 10**6))
    def test_always_in_scope(self, w, h, seed):
        inst = random_instance(w, h, seed)
        assert classify(inst.q).convex
        special_interval(inst.rect, inst.q)
        assert parse_instance(emit_instance(inst)).polyomino == inst.polyomino

    def test_bad_rect_flag(self, capsys):
        code, _, err = run(capsys, "random", "--rect", "axb")
        assert code == 1 and "MxN" in err


class TestCommands:
    @pytest.mark.parametrize(
        "command, name",
        [
            ("verify", "ring3"),
            ("lambda", "ring3"),
            ("alpha", "ring3"),
            ("classify", "ring3"),
            ("minors", "single"),
        ],
    )
    def test_golden(self, capsys, command, name):
        code, out, _ = run(capsys, command, DATA / f"{name}.txt")
        assert code == 0
        assert out == (DATA / f"{name}.{command}.out").read_text()

    def test_verify_headline(self, capsys):
        code, out, _ = run(capsys, "verify", DATA / "ring3.txt")
        assert "EQUAL: yes, max_deg(J)=2" in out.splitlines()

    def test_inferred_q_matches_explicit(self, capsys):
        _, a, _ = run(capsys, "verify", DATA / "ring3.txt")
        _, b, _ = run(capsys, "verify", DATA / "ring3_noq.txt")
        assert a.replace("ring3", "") == b.replace("ring3_noq", "")

    def test_boundary_touch_exit_2(self, capsys):
        code, out, err = run(capsys, "verify", DATA / "touch.txt")
        assert code == 2 and out == "" and "out of scope" in err

    def test_simple_mode(self, capsys):
        code, out, _ = run(capsys, "verify", "--simple", DATA / "touch.txt")
        assert code == 0 and "EQUAL: yes" in out

    def test_simple_flag_on_hole(self, capsys):
        code, _, _ = run(capsys, "verify", "--simple", DATA / "ring3.txt")
        assert code == 2

    def test_budget_exit_3(self, capsys):
        code, _, err = run(capsys, "verify", "--budget", 1, DATA / "ring3.txt")
        assert code == 3 and "budget" in err

    def test_budget_env(self, capsys, monkeypatch):
        monkeypatch.setenv("POLYID_BUDGET", "1")
        code, _, _ = run(capsys, "markov", DATA / "ring3.txt")
        assert code == 3

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "classify", DATA / "nope.txt")
        assert code == 1 and "cannot read" in err

    def test_no_files(self, capsys):
        code, _, _ = run(capsys, "verify")
        assert code == 1

    def test_timings_flag(self, capsys):
        _, out, err = run(capsys, "verify", "--timings", DATA / "ring3.txt")
        assert out.splitlines()[-1].startswith("seconds: ")
        assert "total seconds" in err

    def test_jobs_matches_sequential(self, capsys):
        files = [DATA / n for n in ("ring3.txt", "touch.txt", "ring3_noq.txt")]
        seq = run(capsys, "verify", *files)
        par = run(capsys, "verify", "--jobs", 3, *files)
        assert seq == par
        assert seq[0] == 2
        assert seq[1].count("EQUAL: yes") == 2

    def test_output_file(self, capsys, tmp_path):
        out = tmp_path / "r.txt"
        code, stdout, _ = run(capsys, "classify", DATA / "ring3.txt", "-o", out)
        assert code == 0 and stdout == ""
        assert out.read_text() == (DATA / "ring3.classify.out").read_text()

    def test_module_entry_point(self):
        res = subprocess.run(
            [sys.executable, "-m", "polyid", "minors", str(DATA / "single.txt")],
            capture_output=True, text=True, check=True,
        )
        assert res.stdout == (DATA / "single.minors.out").read_text()


class TestRender:
    def test_single_cell(self, capsys):
        code, out, _ = run(capsys, "render", DATA / "single.txt")
        assert code == 0
        assert out.count('class="cell"') == 1
        assert out.startswith("<?xml")

    def test_ring_overlays(self, capsys):
        _, out, _ = run(capsys, "render", DATA / "ring3.txt")
        assert out.count('class="cell"') == 8
        assert out.count("data-lambda=") == 9
        assert out.count('class="special"') == 1

    def test_byte_stable(self, capsys):
        a = run(capsys, "render", DATA / "ring5.txt")
        b = run(capsys, "render", DATA / "ring5.txt")
        assert a == b

    def test_valid_xml(self, capsys):
        import xml.etree.ElementTree as ET

        _, out, _ = run(capsys, "render", DATA / "ring5.txt")
        root = ET.fromstring(out.encode())
        assert root.tag.endswith("svg")

    def test_bad_output_path(self, capsys, tmp_path):
        code, _, err = run(capsys, "render", DATA / "single.txt", "-o", tmp_path / "missing" / "x.svg")
        assert code == 1 and "cannot write" in err

    def test_io_failure_is_oserror(self):
        assert issubclass(IoFailure, OSError)
