"""Testing for the input format, the JSON reports and the command line."""

__copyright__ = "Copyright (C) 2024 chirality contributors"

__license__ = """
Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in
all copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
THE SOFTWARE.
"""
import json
import logging
from fractions import Fraction

import pytest

from chirality import (
    ExactArithmeticContext, set_arithmetic_context, verify_chiral)
from chirality.cli import EXIT_ERROR, EXIT_NO, EXIT_UNKNOWN, EXIT_YES, main
from chirality.serialization import (
    InputError, encode_array, encode_pair_set, encode_reconstruction,
    encode_scalar, load_input, load_reconstruction)

from testlib import (
    CHIRAL_V, CURVED_U, CURVED_V, MORE_SCENE_POINTS, NONCHIRAL_V, SCENE_POINTS,
    SQUARE_U, synthetic_scene)


logger = logging.getLogger(__name__)


def _input_doc(u, v, mode="exact"):
    return {"mode": mode,
            "pairs": [{"u": list(a), "v": list(b)} for a, b in zip(u, v)]}


@pytest.fixture
def write_input(tmp_path):
    def write(u, v, name="pairs.json", mode="exact"):
        path = tmp_path / name
        path.write_text(json.dumps(_input_doc(u, v, mode)))
        return str(path)

    return write


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


# {{{ test_scalars

def test_scalars():
    assert encode_scalar(Fraction(6, 3)) == 2
    assert encode_scalar(Fraction(-7, 4)) == "-7/4"
    assert encode_scalar(0.5) == 0.5
    assert encode_array([[Fraction(1, 2), 3]]) == [["1/2", 3]]

# }}}


# {{{ test_load_input

def test_load_input():
    text = json.dumps({"mode": "exact", "pairs": [
        {"u": [0, 1], "v": [3, 0]},
        {"u": ["1/2", 0.25], "v": [5, 0]},
        ]})
    P = load_input(text)
    assert P.k == 2
    assert P.actx.exact
    assert P.u[1][0] == Fraction(1, 2)
    assert P.u[1][1] == Fraction(1, 4)

    assert not load_input(text, mode="float").actx.exact

    with pytest.raises(InputError) as excinfo:
        load_input('{"pairs": [\n  {"u": [0, 1],, "v": [3, 0]}]}')
    assert excinfo.value.line == 2

    bad_docs = [
            [],
            {"pairs": []},
            {"pairs": [{"u": [0, 1]}]},
            {"pairs": [{"u": [0], "v": [3, 0]}]},
            {"pairs": [{"u": [0, "one"], "v": [3, 0]}]},
            {"pairs": [{"u": [0, True], "v": [3, 0]}]},
            {"mode": "interval", "pairs": [{"u": [0, 1], "v": [3, 0]}]},
            {"pairs": [{"u": [0, 1], "v": [3, 0]}, {"u": [0, 1], "v": [1, 1]}]},
            ]
    for doc in bad_docs:
        with pytest.raises(InputError):
            load_input(json.dumps(doc))

# }}}


# {{{ test_reconstruction_format

def test_reconstruction_format():
    actx = ExactArithmeticContext()
    R = synthetic_scene(actx, SCENE_POINTS)

    text = json.dumps(encode_reconstruction(R))
    loaded = load_reconstruction(text)
    assert loaded.k == R.k
    assert actx.is_zero(loaded.Q - R.Q)
    assert verify_chiral(loaded).strict

    wrapped = json.dumps({"reconstruction": encode_reconstruction(R)})
    assert load_reconstruction(wrapped).reprojects(R.pairs())

    doc = encode_reconstruction(R)
    del doc["w2"]
    with pytest.raises(InputError):
        load_reconstruction(json.dumps(doc))

    doc = encode_reconstruction(R)
    doc["Q"] = doc["Q"][:2]
    with pytest.raises(InputError):
        load_reconstruction(json.dumps(doc))

# }}}


# {{{ test_cli_decide

def test_cli_decide(capsys, write_input, tmp_path):
    path = write_input(SQUARE_U, NONCHIRAL_V)
    code, doc = _run(capsys, ["decide", "--input", path])
    assert code == EXIT_NO
    assert doc["command"] == "decide"
    assert doc["decision"]["status"] == "no"
    assert doc["decision"]["certificate"]["kind"] == "corners"
    assert doc["decision"]["certificate"]["passing"] == []
    assert "timing" in doc

    path = write_input(SQUARE_U, CHIRAL_V, name="chiral.json")
    code, doc = _run(capsys, ["decide", "-i", path, "--witness"])
    assert code == EXIT_YES
    assert doc["decision"]["status"] == "yes"
    passing = {tuple(c) for c in doc["decision"]["certificate"]["passing"]}
    assert passing == {(2, 3), (2, 4), (3, 1), (3, 4), (4, 1), (4, 3)}

    # the emitted witness verifies on its own
    recon = tmp_path / "witness.json"
    recon.write_text(json.dumps(doc["decision"]["witness"]))
    code, doc = _run(capsys, ["verify", "-r", str(recon), "-i", path])
    assert code == 0
    assert doc["passed"]
    assert doc["reprojects"]


def test_cli_verify_tampered(capsys, tmp_path):
    actx = ExactArithmeticContext()
    doc = encode_reconstruction(synthetic_scene(actx, SCENE_POINTS))
    doc["Q"][1][3] = -1

    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc))
    code, report = _run(capsys, ["verify", "-r", str(path)])
    assert code == 1
    assert not report["passed"]
    assert {"point": 2, "product": "inf*n1"} \
            in report["certificate"]["violations"]


def test_cli_decide_unknown(capsys, write_input):
    path = write_input([(0, 0), (0, 4), (4, 0), (2, 1), (2, 0)],
            [(2, 1), (2, 3), (4, 0), (0, 4), (1, 1)])
    code, doc = _run(capsys, ["decide", "-i", path, "--mode", "float"])
    assert code == EXIT_UNKNOWN
    assert doc["decision"]["reason"] == "non-generic"
    assert doc["input"]["mode"] == "float"


def test_cli_decide_seven_pairs(capsys, tmp_path):
    actx = ExactArithmeticContext()
    P = synthetic_scene(actx, SCENE_POINTS + MORE_SCENE_POINTS).pairs()
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(encode_pair_set(P)))

    # the witness search runs with or without --witness
    code, doc = _run(capsys, ["decide", "-i", str(path)])
    assert code == EXIT_YES
    assert doc["decision"]["status"] == "yes"
    assert "witness" not in doc["decision"]

    code, doc = _run(capsys, ["decide", "-i", str(path), "--witness"])
    assert code == EXIT_YES
    assert doc["decision"]["witness"]["reconstruction"]["mode"] == "exact"


def test_cli_errors(capsys, tmp_path, write_input):
    bad = tmp_path / "bad.json"
    bad.write_text('{"pairs": [')
    assert main(["decide", "-i", str(bad)]) == EXIT_ERROR
    assert "input error" in capsys.readouterr().err

    assert main(["decide", "-i", str(tmp_path / "missing.json")]) == EXIT_ERROR

    # corner tests need five pairs
    path = write_input([(0, 0), (1, 0), (0, 1)], [(0, 0), (2, 0), (0, 3)])
    assert main(["corners", "-i", path]) == EXIT_ERROR
    assert "corners failed" in capsys.readouterr().err

# }}}


# {{{ test_cli_surface

def test_cli_corners(capsys, write_input):
    path = write_input(SQUARE_U, CHIRAL_V)
    code, doc = _run(capsys, ["corners", "-i", path])
    assert code == 0
    assert len(doc["corners"]) == 20
    assert [2, 3] in doc["passing"]
    assert [3, 2] not in doc["passing"]

    first = doc["corners"][0]
    assert first["corner"] == [1, 2]
    assert first["labels"] == [[3, 4], [3, 5], [4, 5]]


def test_cli_sixth(capsys, write_input, tmp_path):
    path = write_input(CURVED_U, CURVED_V)
    out = tmp_path / "sixth.json"
    code, _ = _run(capsys, ["sixth", "-i", path, "-o", str(out)])
    assert code == 0

    doc = json.loads(out.read_text())
    assert doc["command"] == "sixth"
    assert doc["u0"] == [18, 11, 17]
    assert doc["v0"] == [-3, -12, 5]
    assert doc["u0_affine"] == ["18/17", "11/17", 1]


def test_cli_region(capsys, write_input, tmp_path):
    path = write_input(SQUARE_U, CHIRAL_V)
    code, doc = _run(capsys, ["region", "-i", path])
    assert code == 0
    assert not doc["empty"]
    assert doc["image1"]["u2"] == ["C_3", "C_4"]

    pytest.importorskip("matplotlib")
    svg = tmp_path / "region.svg"
    code, _ = _run(capsys, ["region", "-i", path, "--svg", str(svg)])
    assert code == 0
    assert svg.read_text().lstrip().startswith("<?xml")

# }}}


# {{{ test_cli_census

def test_cli_census(capsys, tmp_path):
    table = tmp_path / "census.csv"
    code, doc = _run(capsys, ["census", "--n", "5", "--seed", "3",
        "--csv", str(table)])
    assert code == 0
    assert doc["config"]["n"] == 5
    assert sum(doc["counts"].values()) == 5

    rows = table.read_text().splitlines()
    assert rows[0] == "index,outcome"
    assert len(rows) == 6


def test_cli_census_mode(capsys, monkeypatch):
    monkeypatch.setenv("CHIRALITY_ARITHMETIC", "float")
    prev = set_arithmetic_context(None)
    try:
        code, doc = _run(capsys, ["census", "--n", "2", "--seed", "1"])
        assert code == 0
        assert doc["mode"] == "float"

        code, doc = _run(capsys, ["census", "--n", "2", "--mode", "exact"])
        assert code == 0
        assert doc["mode"] == "exact"
    finally:
        set_arithmetic_context(prev)


def test_cli_perturb(capsys, write_input):
    path = write_input(SQUARE_U, NONCHIRAL_V)
    code, doc = _run(capsys, ["perturb", "-i", path, "--radius", "1/500",
        "--trials", "3"])
    assert code == 0
    assert doc["baseline"] == "no"
    assert doc["radius"] == "1/500"
    assert doc["trials"] == 3

    assert main(["perturb", "-i", path, "--radius", "x"]) == EXIT_ERROR

# }}}


if __name__ == "__main__":
    import sys
    if len(sys.argv) > 1:
        exec(sys.argv[1])
    else:
        pytest.main([__file__])

# vim: fdm=marker
