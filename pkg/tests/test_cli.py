import json
import subprocess
import sys

import pytest

from ppjoin import io
from ppjoin.classify import SpaceMeta
from ppjoin.cli import main
from ppjoin.complexes import build_complex, cycle, simplex
from ppjoin.polyjoin import ComplexPair, PolyJoinSpec


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)

    edge, a = simplex(["a", "b"]), build_complex(["a", "b"], [["a"]])
    spec = PolyJoinSpec(build_complex(["1", "2"], [["1"], ["2"]]), (ComplexPair(edge, a), ComplexPair(edge, a)))
    x = SpaceMeta.sphere(3, "*").replace(dimension=4, connectivity=1)
    return {
        "c4": put("c4.json", io.dumps_complex(cycle(4))),
        "c5": put("c5.json", io.dumps_complex(cycle(5))),
        "ghost": put("ghost.json", io.dumps_complex(build_complex(["1", "2"], [["1"]]))),
        "spec": put("spec.json", io.dumps_spec(spec)),
        "meta": put("meta.json", io.dumps_metas({"*": x})),
        "bad": put("bad.json", '{"vertices": ["1"], "maximal_faces": [[1]]}'),
        "garbage": put("garbage.json", "{"),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    payload = json.loads(out)
    io.check_schema(payload, f"out-{argv[0]}")
    return payload["result"]


def test_mmf_text(capsys, files):
    code, out, _ = run(capsys, "mmf", "--input", files["c5"])
    assert code == 0
    assert out.splitlines()[0] == "5 minimal missing faces, disjoint=false"


def test_classify_mac_text(capsys, files):
    code, out, _ = run(capsys, "classify-mac", "--input", files["c4"])
    assert code == 0
    assert out.splitlines()[0] == "Elliptic — Theorem [moment-angle]; finite exponent at every prime"


def test_growth_text(capsys, files):
    code, out, _ = run(capsys, "growth", "--dims", "3,3", "--max-degree", "10")
    ranks = [int(line.split("\t")[1]) for line in out.splitlines()]
    assert code == 0 and ranks[1::2] == [2, 1, 2, 3, 6]


@pytest.mark.parametrize("argv", [
    ("validate", "--input", "c4"), ("validate", "--input", "spec"), ("mmf", "--input", "c5"),
    ("decompose", "--input", "c4"), ("classify-mac", "--input", "c5", "--dims", "3"),
    ("classify-cone", "--input", "c5", "--meta", "meta"),
    ("classify-general", "--input", "c4", "--meta", "meta", "--ambient-elliptic", "true,true,false,true"),
    ("polyjoin", "--input", "spec"), ("polyjoin-classify", "--input", "spec", "--meta", "meta"),
    ("loops", "--input", "c4"), ("loops", "--input", "spec", "--variant", "polyjoin"),
    ("loops", "--variant", "null-inclusion"), ("loops", "--expr", "Susp^1(Om(S^3))", "--max-degree", "9"),
    ("growth", "--dims", "2,3,3"),
])
def test_json_output_matches_schema(capsys, files, argv):
    argv = [files.get(a, a) for a in argv]
    run_json(capsys, *argv)


def test_json_verdict_has_citations(capsys, files):
    result = run_json(capsys, "classify-mac", "--input", files["c4"])
    assert result["citations"] == ["moment-angle"]
    assert result["claims"][0]["citations"] == ["moment-angle"]


def test_text_and_json_agree(capsys, files):
    from ppjoin.classify import Claim, ClaimKind, MooreStatus, PrimeScope, RationalType, ScopeKind, Verdict
    result = run_json(capsys, "classify-cone", "--input", files["c5"], "--meta", files["meta"])
    _, text, _ = run(capsys, "classify-cone", "--input", files["c5"], "--meta", files["meta"])
    v = Verdict(RationalType(result["rational_type"]),
                tuple(Claim(ClaimKind(c["kind"]), PrimeScope(ScopeKind(c["scope"]["kind"]),
                                                              tuple(c["scope"].get("exceptions", ()))),
                            tuple(c["citations"])) for c in result["claims"]),
                MooreStatus(result["moore_status"]), tuple(result["citations"]), tuple(result["notes"]))
    assert v.to_text() + "\n" == text


def test_loops_json_content(capsys, files):
    result = run_json(capsys, "loops", "--input", files["c4"])
    assert result["normal_form"] == "P(Om(S^3),Om(S^3))" and not result["partial"]
    result = run_json(capsys, "loops", "--expr", "Susp^1(Om(S^3))", "--max-degree", "9")
    assert result["partial"] and "james" in result["rules"]


def test_out_flag(capsys, files):
    target = str(files["dir"] / "out.json")
    code, out, _ = run(capsys, "mmf", "--input", files["c4"], "--format", "json", "--out", target)
    assert code == 0 and out == ""
    assert json.loads(open(target).read())["result"]["disjoint"] is True


@pytest.mark.parametrize("argv, code", [
    (("mmf", "--input", "missing"), 2),
    (("mmf", "--input", "garbage"), 2),
    (("mmf", "--input", "bad"), 2),
    (("mmf",), 2),
    (("classify-mac", "--input", "ghost"), 2),
    (("classify-mac", "--input", "c4", "--dims", "2,2"), 2),
    (("decompose", "--input", "c5"), 2),
    (("mmf", "--input", "spec"), 2),
    (("classify-cone", "--input", "c4"), 2),
    (("growth", "--dims", "3,3", "--max-degree", "65"), 3),
    (("growth", "--dims", "1"), 2),
    (("loops", "--expr", "Q(S^1)"), 2),
])
def test_exit_codes(capsys, files, argv, code):
    argv = [files[a] if a in files else (str(files["dir"] / "nope.json") if a == "missing" else a) for a in argv]
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == "" and err


def test_schema_error_reports_pointer(capsys, files):
    _, _, err = run(capsys, "mmf", "--input", files["bad"])
    assert "/maximal_faces/0/0" in err


def test_unknown_command_prints_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code != 0
    assert "usage" in capsys.readouterr().err


def test_guard_exit_on_degree_cap(capsys):
    code, out, err = run(capsys, "loops", "--expr", "S^1", "--max-degree", "100")
    assert code == 3 and out == "" and "guard" in err


def test_oracle_lines(capsys):
    code, out, err = run(capsys, "oracle", "--count", "12", "--seed", "3")
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    assert lines and all(rec["passed"] for rec in lines)
    for rec in lines:
        io.check_schema(rec, "oracle-line")
    again = run(capsys, "oracle", "--count", "12", "--seed", "3")[1]
    assert again == out


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "ppjoin", "mmf", "--input", files["c4"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("2 minimal missing faces, disjoint=true")
