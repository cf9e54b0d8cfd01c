import json

import pytest

from trirelay.cli import main
from trirelay.fadespace import enumerate_classes


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


REMOVABLE_ID = next(c.id for c in enumerate_classes() if c.removable)
NON_REMOVABLE_ID = next(c.id for c in enumerate_classes() if not c.removable)


class TestEnumerate:
    def test_census_line(self, capsys):
        code, out, _ = run_cli(capsys, "enumerate")
        assert code == 0
        assert out.splitlines()[0] == "case1=3 case2=36 case3=112 total=151"

    def test_json_output(self, capsys):
        code, out, _ = run_cli(capsys, "enumerate", "--json")
        assert code == 0
        counts = json.loads(out)
        assert counts["total"] == 151
        assert counts["case3_adjacent3"] == 16

    def test_dump_schema(self, capsys, tmp_path):
        dump = tmp_path / "classes.json"
        code, _, _ = run_cli(capsys, "enumerate", "--dump", str(dump))
        assert code == 0
        payload = json.loads(dump.read_text())
        assert len(payload) == 151
        entry = payload[0]
        assert set(entry) == {"id", "case", "removable", "members"}
        assert all(len(member) == 3 for member in entry["members"])
        assert all(len(pair) == 2 for member in entry["members"] for pair in member)


class TestBuildValidate:
    def test_round_trip(self, capsys, tmp_path):
        path = tmp_path / "map.json"
        code, _, _ = run_cli(capsys, "build-map", "--class-id", str(REMOVABLE_ID), "--out", str(path))
        assert code == 0
        code, out, _ = run_cli(capsys, "validate", str(path))
        assert code == 0
        assert out.startswith("OK t=")

    def test_build_map_stdout(self, capsys):
        code, out, _ = run_cli(capsys, "build-map", "--class-id", str(REMOVABLE_ID))
        assert code == 0
        data = json.loads(out)
        assert data["class_id"] == REMOVABLE_ID
        assert len(data["cells"]) == 4

    def test_non_removable_rejected(self, capsys):
        code, _, err = run_cli(capsys, "build-map", "--class-id", str(NON_REMOVABLE_ID))
        assert code == 1
        assert "non-removable" in err

    def test_unknown_class_id(self, capsys):
        code, _, err = run_cli(capsys, "build-map", "--class-id", "999")
        assert code == 1
        assert "999" in err

    def test_validate_malformed_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run_cli(capsys, "validate", str(bad))
        assert code == 1
        assert "not valid JSON" in err

    def test_validate_law_violation(self, capsys, tmp_path):
        bad = tmp_path / "violates.json"
        cells = [[[(r * 4 + c) % 16 for c in range(4)] for r in range(4)] for _ in range(4)]
        cells[0][0][0] = cells[0][0][1]  # duplicate inside a slice
        # keep the label range contiguous
        cells[3][3][3] = 0
        bad.write_text(json.dumps({"t": 16, "cells": cells, "class_id": None, "canonical": None}))
        code, _, err = run_cli(capsys, "validate", str(bad))
        assert code == 1

    def test_build_all_round_trip(self, capsys, tmp_path):
        out_dir = tmp_path / "maps"
        code, out, _ = run_cli(capsys, "build-all", "--out", str(out_dir))
        assert code == 0
        files = sorted(out_dir.glob("map_*.json"))
        assert len(files) == 112
        for path in files:
            code, out, _ = run_cli(capsys, "validate", str(path))
            assert code == 0, path
            assert out.startswith("OK t=")

    def test_rebuild_is_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run_cli(capsys, "build-map", "--class-id", str(REMOVABLE_ID), "--out", str(a))
        run_cli(capsys, "build-map", "--class-id", str(REMOVABLE_ID), "--out", str(b))
        assert a.read_bytes() == b.read_bytes()


class TestDistanceCommands:
    def test_dmin(self, capsys, tmp_path):
        path = tmp_path / "map.json"
        run_cli(capsys, "build-map", "--class-id", str(REMOVABLE_ID), "--out", str(path))
        code, out, _ = run_cli(capsys, "dmin", "--map", str(path), "--h", "1,0 10,0 100,0")
        assert code == 0
        assert float(out) > 0

    def test_classify_fade_none(self, capsys):
        code, out, _ = run_cli(capsys, "classify-fade", "--h", "1,0 10,0 100,0")
        assert code == 0
        assert out.strip() == "none"

    def test_classify_fade_hit(self, capsys):
        # orthogonal to [1+j, 1+j, 0]: h = (-1-j, 1+j, 0) works
        code, out, _ = run_cli(capsys, "classify-fade", "--h", "-1,-1 1,1 0,0", "--json")
        assert code == 0
        assert json.loads(out)["class_id"] is not None

    def test_bad_fade_format(self, capsys):
        code, _, err = run_cli(capsys, "classify-fade", "--h", "1,0 2,0")
        assert code == 1
        assert "error" in err


class TestSimulate:
    def test_csv_output_and_determinism(self, capsys, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        args = [
            "simulate", "--scheme", "fixed", "--rician-k", "10", "--snr", "6,12",
            "--frames", "4", "--frame-bits", "64", "--seed", "5",
        ]
        assert run_cli(capsys, *args, "--out", str(out1))[0] == 0
        assert run_cli(capsys, *args, "--out", str(out2))[0] == 0
        assert out1.read_bytes() == out2.read_bytes()
        lines = out1.read_text().splitlines()
        assert lines[0] == "scheme,rician_k_db,snr_db,node,bit_errors,bits_total,ber"
        assert len(lines) == 1 + 2 * 3
        first = lines[1].split(",")
        assert first[0] == "fixed" and first[3] == "A"

    def test_snr_range_syntax(self, capsys, tmp_path):
        out = tmp_path / "r.csv"
        code, _, _ = run_cli(
            capsys, "simulate", "--scheme", "adaptive", "--rician-k", "5",
            "--snr", "0:10:20", "--frames", "2", "--frame-bits", "32",
            "--seed", "1", "--out", str(out),
        )
        assert code == 0
        snrs = {line.split(",")[2] for line in out.read_text().splitlines()[1:]}
        assert snrs == {"0", "10", "20"}

    def test_invalid_frame_bits(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "simulate", "--scheme", "fixed", "--snr", "0",
            "--frames", "1", "--frame-bits", "7", "--seed", "1",
            "--out", str(tmp_path / "x.csv"),
        )
        assert code == 1
        assert "frame_len_bits" in err
