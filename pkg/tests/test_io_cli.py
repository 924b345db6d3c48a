import json
import subprocess
import sys

import pytest

from lofs import cli
from lofs.downset import downset_monad
from lofs.errors import ParseError, StructureMismatch
from lofs.io import dump_map, dump_monad, dump_poset, dump_square, load_map, load_monad, load_poset, load_square
from lofs.monad import validate_monad
from lofs.poset import MonotoneMap, antichain, chain, monotone_maps, posets_up_to, terminal, to_terminal

BOTTOM = {"dom": "terminal", "cod": "chain:2", "table": [0]}
NOT_LARI = {"dom": "chain:2", "cod": "chain:2", "table": [1, 1]}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(argv):
    report, code, _ = cli.run(argv)
    return report, code


# --- loading


def test_poset_formats():
    leq = load_poset({"elements": ["a", "b"], "leq": [[True, True], [False, True]]})
    covers = load_poset({"elements": ["a", "b"], "covers": [["a", "b"]]})
    assert leq == covers == chain(2)
    assert covers.labels == ("a", "b")
    assert load_poset("antichain:3") == antichain(3)
    space = load_poset({"points": ["p", "q"], "opens": [[], ["p"], ["p", "q"]]})
    assert space == chain(2)


@pytest.mark.parametrize(
    "doc",
    [
        {"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]},
        {"elements": ["a", "a"]},
        {"elements": ["a"], "covers": [["a", "z"]]},
        {"points": ["p", "q"], "opens": [[], ["p", "q"]]},
        {"points": ["p", "q"], "opens": [["p"], ["p", "q"]]},
        "chain:x",
        [],
    ],
)
def test_bad_posets(doc):
    with pytest.raises(ParseError):
        load_poset(doc)


def test_map_formats_and_errors():
    f = load_map({"dom": {"elements": ["a", "b"]}, "cod": "chain:2", "map": {"a": 0, "b": 1}})
    assert f.table == (0, 1)
    with pytest.raises(ParseError):
        load_map({"dom": "chain:2", "cod": "chain:2", "table": [1, 0]})
    with pytest.raises(ParseError):
        load_map({"dom": "chain:2", "cod": "chain:2", "map": {"0": 0}})
    with pytest.raises(ParseError):
        load_map({"dom": "chain:2", "cod": "chain:2", "table": [0, 5]})


def test_round_trips():
    for X in posets_up_to(3):
        assert load_poset(dump_poset(X)) == X
        for f in monotone_maps(X, chain(2)):
            assert load_map(dump_map(f)) == f
    sq = {"left": BOTTOM, "right": {"dom": "chain:2", "cod": "chain:2", "table": [0, 1]},
          "top": BOTTOM, "bottom": {"dom": "chain:2", "cod": "chain:2", "table": [0, 1]}}
    loaded = load_square(sq)
    assert load_square(dump_square(loaded)) == loaded
    with pytest.raises(ParseError):
        load_square({**sq, "top": {"dom": "terminal", "cod": "chain:2", "table": [1]}})


def test_tabulated_monad_round_trip():
    objects = posets_up_to(2)
    maps = [f for X in objects for Y in objects for f in monotone_maps(X, Y)]
    doc = json.loads(json.dumps(dump_monad(downset_monad(objects), objects, maps)))
    M, objs, ms = load_monad(doc, validate=True)
    assert len(objs) == len(objects) and len(ms) == len(maps)
    assert validate_monad(M, objs, ms).ok


def test_corrupted_tabulated_monad_rejected():
    objects = [chain(2)]
    doc = json.loads(json.dumps(dump_monad(downset_monad(objects), objects, [])))
    key = next(iter(doc["mult"]))
    swapped = json.loads(json.dumps(doc))
    table = swapped["mult"][key]
    table[0], table[-1] = table[-1], table[0]
    with pytest.raises(ParseError) as info:
        load_monad(swapped)
    assert "not monotone" in str(info.value) and info.value.witness["x"] == 0
    flat = json.loads(json.dumps(doc))
    flat["mult"][key] = [0] * len(flat["mult"][key])
    with pytest.raises(StructureMismatch) as info:
        load_monad(flat, validate=True)
    assert "right unit law mu.eta_T = 1" in info.value.witness["laws"]


# --- commands


def test_factorize_identity_monad(tmp_path):
    report, code = run(["factorize", "--monad", "Id", "--map", write(tmp_path, "f.json", BOTTOM)])
    assert code == 0
    fac = report["result"]["factorization"]
    assert len(fac["K"]["elements"]) == 2 and fac["L"] == [0] and fac["R"] == [0, 1]


def test_factorize_P_and_F(tmp_path):
    report, code = run(["factorize", "--monad", "P", "--map", write(tmp_path, "f.json", BOTTOM)])
    assert code == 0 and len(report["result"]["factorization"]["K"]["elements"]) == 4
    sier = {"dom": "sierpinski", "cod": "sierpinski", "table": [0, 1]}
    report, code = run(["factorize", "--monad", "F", "--map", write(tmp_path, "s.json", sier)])
    fac = report["result"]["factorization"]
    assert code == 0 and len(fac["q_cod"]["elements"]) == 3


def test_check_simple_passes():
    report, code = run(["check", "simple", "--monad", "P", "--max-size", "3"])
    assert code == 0 and report["result"]["ok"]


def test_check_embedding_matches_topology(tmp_path):
    for table, expected in (([0], True), ([1], True)):
        f = {"dom": "terminal", "cod": "sierpinski", "table": table}
        report, code = run(["check", "embedding", "--monad", "F", "--map", write(tmp_path, "e.json", f)])
        assert (code == 0) == expected
    f = {"dom": "antichain:2", "cod": "sierpinski", "table": [0, 1]}
    report, code = run(["check", "embedding", "--monad", "F", "--map", write(tmp_path, "n.json", f)])
    assert code == 1 and report["result"]["details"]["map"]["topological embedding"] is False
    report, code = run(["check", "embedding", "--monad", "F1", "--max-size", "2"])
    assert code == 0 and report["result"]["details"]["compared_with"] == "dense embedding"


def test_check_lari_failure_witness(tmp_path):
    report, code = run(["check", "lari", "--map", write(tmp_path, "notlari.json", NOT_LARI)])
    assert code == 1
    assert report["result"]["witness"]["reason"] == "no right adjoint"


def test_check_opfibration(tmp_path):
    report, code = run(["check", "opfibration", "--map", write(tmp_path, "b.json", BOTTOM)])
    assert code == 1 and report["result"]["witness"]["y"] == 1


def test_awfs_checks():
    for what in ("cancellative", "reflective", "lofs", "distributivity"):
        report, code = run(["check", what, "--monad", "M_opfib", "--max-size", "2"])
        assert code == 0, (what, report)
    report, code = run(["check", "reflective", "--monad", "trivial", "--max-size", "2"])
    assert code == 1 and report["result"]["witness"]["lari"] is True


def test_diagonal_modes(tmp_path):
    ident = {"dom": "chain:2", "cod": "chain:2", "table": [0, 1]}
    sq = {"left": BOTTOM, "right": ident, "top": BOTTOM, "bottom": ident}
    path = write(tmp_path, "sq.json", sq)
    report, code = run(["diagonal", "--square", path])
    assert code == 0 and report["result"]["algebraic"] == report["result"]["oracle"] == [0, 1]
    # opfibration 2 -> 1 against 0: 1 -> 2
    opf = {"dom": "chain:2", "cod": "terminal", "table": [0, 0]}
    sq = {"left": BOTTOM, "right": opf, "top": {"dom": "terminal", "cod": "chain:2", "table": [1]},
          "bottom": {"dom": "chain:2", "cod": "terminal", "table": [0, 0]}}
    report, code = run(["diagonal", "--square", write(tmp_path, "o.json", sq), "--mode", "oracle"])
    assert code == 0 and report["result"]["oracle"] == [1, 1]
    nomin = {
        "left": {"dom": "empty", "cod": "terminal", "table": []},
        "right": {"dom": "antichain:2", "cod": "terminal", "table": [0, 0]},
        "top": {"dom": "empty", "cod": "antichain:2", "table": []},
        "bottom": {"dom": "terminal", "cod": "terminal", "table": [0]},
    }
    report, code = run(["diagonal", "--square", write(tmp_path, "m.json", nomin), "--mode", "oracle"])
    assert code == 1 and report["result"]["oracle"]["absent"] == "no minimum"


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["check", "lari", "--map", str(bad)])[1] == 2
    assert run(["check", "lari", "--map", write(tmp_path, "m.json", {"dom": "chain:2", "cod": "chain:2", "table": [1, 0]})])[1] == 2
    assert run(["factorize", "--monad", "P", "--cap-opens", "2", "--map", write(tmp_path, "f.json", BOTTOM)])[1] == 3
    assert run(["check", "simple", "--monad", "M_opfib", "--max-size", "1"])[1] == 2


def test_monad_file_option(tmp_path):
    objects = posets_up_to(2)
    maps = [f for X in objects for Y in objects for f in monotone_maps(X, Y)]
    path = write(tmp_path, "P.json", dump_monad(downset_monad(objects), objects, maps))
    for what in ("monad-laws", "lax-idempotent", "simple"):
        report, code = run(["check", what, "--monad-file", path])
        assert code == 0, (what, report)


def test_sampling_is_seeded():
    a, _ = run(["check", "simple", "--monad", "P", "--max-size", "3", "--sample", "20", "--seed", "4"])
    b, _ = run(["check", "simple", "--monad", "P", "--max-size", "3", "--sample", "20", "--seed", "4"])
    assert a == b and a["result"]["details"]["maps"] == 20


def test_output_is_byte_identical(tmp_path):
    argv = [sys.executable, "-m", "lofs.cli", "check", "lari", "--map", write(tmp_path, "n.json", NOT_LARI)]
    first = subprocess.run(argv, capture_output=True, text=True)
    second = subprocess.run(argv, capture_output=True, text=True)
    assert first.returncode == second.returncode == 1
    assert first.stdout == second.stdout and first.stdout


def test_text_format(tmp_path, capsys):
    code = cli.main(["check", "lari", "--map", write(tmp_path, "n.json", NOT_LARI), "--format", "text", "--timing"])
    out = capsys.readouterr().out
    assert code == 1 and out.startswith("lari: FAIL") and "seconds:" in out


def test_witness_reloads_to_same_verdict(tmp_path):
    report, code = run(["check", "reflective", "--monad", "trivial", "--max-size", "2"])
    witness_map = report["result"]["witness"]["map"]
    path = write(tmp_path, "w.json", witness_map)
    again, code2 = run(["check", "reflective", "--monad", "trivial", "--map", path])
    assert code == code2 == 1
    assert again["result"]["witness"]["map"] == witness_map
    report, code = run(["check", "opfibration", "--map", write(tmp_path, "b.json", BOTTOM)])
    rerun, _ = run(["check", "opfibration", "--map", write(tmp_path, "b2.json", report["result"]["witness"]["map"])])
    assert rerun["result"] == report["result"]
