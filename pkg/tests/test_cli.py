import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from segskel.cli import RunConfig, dump_segments, main, normalize_segments, parse_segments, run
from segskel.geom import InvalidInputError, Segment
from segskel.neighborhoods import BetaSpec
from segskel.oracle import oracle_skeleton, point_delaunay_oracle

from make_golden import CASES, HERE, run_case


def write(tmp_path, text, name="scene.txt"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_parse_text(tmp_path):
    S = parse_segments(write(tmp_path, "0 0 1 0\n0 2 1 2\n"))
    assert len(S) == 2 and S[1] == Segment.from_coords(0, 2, 1, 2)


def test_parse_text_comments_and_blank_lines(tmp_path):
    S = parse_segments(write(tmp_path, "# scene\n\n0 0 1 0  # first\n0,2,1,2\n"))
    assert len(S) == 2


def test_json_round_trip(tmp_path):
    coords = [[0.1, 1 / 3, 0.7, 2.0 / 7], [1e-3, 0.9, 0.123456789012345678, 0.95]]
    p = write(tmp_path, json.dumps({"segments": coords}), "scene.json")
    S = parse_segments(p)
    again = parse_segments(write(tmp_path, dump_segments(S), "again.json"))
    assert [list(s.coords()) for s in again] == coords


@pytest.mark.parametrize(
    "text,needle",
    [("0 0 1 0\n0 1 x 1\n", "line 2"), ("0 0 1\n", "line 1"), ('{"segments": [[0, 0, 1]]}', "segment 0"), ("{bad", "line 1")],
)
def test_malformed_input(tmp_path, capsys, text, needle):
    rc = run(RunConfig(str(write(tmp_path, text)), beta=1.0))
    assert rc == 2
    assert needle in capsys.readouterr().err


def test_crossing_segments_exit_2(tmp_path, capsys):
    p = write(tmp_path, "0 0 1 1\n0 1 1 0\n")
    with pytest.raises(InvalidInputError):
        parse_segments(p)
    assert main(["--input", str(p), "--beta", "1"]) == 2
    assert "disjointness" in capsys.readouterr().err


def test_usage_errors_exit_1(tmp_path):
    p = str(write(tmp_path, "0 0 1 0\n0 2 1 2\n"))
    for argv in (["--input", p, "--bogus"], ["--input", p], ["--input", p, "--graph", "dt", "--beta", "2"],
                 ["--input", p, "--beta", "1", "--epsilon", "0.7"], ["--input", p, "--graph", "dt", "--oracle"]):
        with pytest.raises(SystemExit) as e:
            main(argv)
        assert e.value.code == 1


def test_missing_file_exit_2(tmp_path):
    assert main(["--input", str(tmp_path / "nope.txt"), "--beta", "1"]) == 2


def test_normalize():
    segs = normalize_segments([Segment.from_coords(10, 20, 14, 20), Segment.from_coords(10, 22, 12, 21)])
    assert segs[0] == Segment.from_coords(0, 0, 1, 0)
    assert segs[1] == Segment.from_coords(0, 0.5, 0.5, 0.25)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_files(name):
    assert run_case(name) == (HERE / f"{name}.out.json").read_text()


def test_golden_edges_match_oracles():
    stacked = parse_segments(HERE / "stacked.json")
    square = parse_segments(HERE / "square.json")

    def edges(name):
        return {(e["i"], e["j"]) for e in json.loads((HERE / f"{name}.out.json").read_text())["edges"]}

    assert edges("stacked_beta1") == oracle_skeleton(stacked, BetaSpec(1.0)).edge_set() == {(0, 1), (1, 2)}
    assert edges("stacked_dt") == {(0, 1), (1, 2)}
    corners = [s.a for s in square]
    assert edges("square_dt") == point_delaunay_oracle(corners)
    assert len(edges("square_dt")) == 5
    assert edges("square_gg") == oracle_skeleton(square, BetaSpec(1.0)).edge_set()
    assert edges("square_rng") == oracle_skeleton(square, BetaSpec(2.0, closure="open")).edge_set()
    assert edges("square_gg") == edges("square_rng") == {(0, 1), (1, 2), (2, 3), (0, 3)}


def test_oracle_mode(capsys):
    assert main(["--input", str(HERE / "stacked.json"), "--beta", "1", "--oracle", "--grid", "32"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["oracle"] is True and doc["format"] == 1
    assert [(e["i"], e["j"]) for e in doc["edges"]] == [(0, 1), (1, 2)]


def test_output_file_and_svg(tmp_path):
    out, svg = tmp_path / "g.json", tmp_path / "g.svg"
    argv = ["--input", str(HERE / "square.json"), "--beta", "2", "--variant", "circle", "--closure", "closed",
            "--output", str(out), "--svg", str(svg)]
    assert main(argv) == 0
    doc = json.loads(out.read_text())
    assert doc["variant"] == "circle" and doc["closure"] == "closed"
    root = ET.fromstring(svg.read_text())
    strokes = [el.get("stroke") for el in root.iter() if el.get("stroke")]
    assert strokes.count("black") == 4
    assert strokes.count("blue") == len(doc["edges"]) == strokes.count("gray")


def test_svg_lens_outline_passes_through_circle_crossings(tmp_path):
    svg = tmp_path / "g.svg"
    assert main(["--input", str(HERE / "stacked.json"), "--beta", "1.5", "--svg", str(svg)]) == 0
    paths = [el.get("d") for el in ET.fromstring(svg.read_text()).iter() if el.tag.endswith("path")]
    assert paths and all(d.startswith("M ") and d.endswith("Z") for d in paths)
    assert all(d.count(" A ") == 2 for d in paths)


def test_deterministic_across_processes():
    argv = [sys.executable, "-m", "segskel", "--input", str(HERE / "square.json"), "--beta", "0.8"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["n"] == 4
