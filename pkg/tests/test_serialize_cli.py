import json
import random
import subprocess
import sys

import pytest

from hgc.category import Arrow
from hgc.cli import format_norm, main
from hgc.examples import SHIPPED, build_named, load_fixture
from hgc.randomized import random_arrow, random_instance
from hgc.serialize import (
    ParseError,
    Workspace,
    arrow_to_json,
    dumps,
    groupoid_from_json,
    groupoid_to_json,
    load,
    space_from_json,
    space_to_json,
)
from hgc.groupoid import ValidationError


def write(path, obj):
    path.write_text(dumps(obj), encoding="utf-8")
    return path


@pytest.fixture
def s3_dir(tmp_path):
    assert main(["example", "s3-dcoset", "--out", str(tmp_path)]) == 0
    alpha = build_named("s3-dcoset").space
    for name, pair in [("fa.json", ("(12)", "(123)")), ("fe.json", ("(12)", "(12)"))]:
        f = Arrow.delta(alpha, alpha, pair)
        write(tmp_path / name, arrow_to_json(f, "groupoid.json", "space.json", "space.json"))
    return tmp_path


@pytest.mark.parametrize("seed", range(10))
def test_round_trips(seed):
    rng = random.Random(seed)
    g, (a, b, _) = random_instance(rng)
    assert groupoid_from_json(json.loads(dumps(groupoid_to_json(g)))) == g
    assert space_from_json(json.loads(dumps(space_to_json(a))), g) == a
    f = random_arrow(rng, a, b)
    back = Workspace().function_from_json(json.loads(dumps(arrow_to_json(f))))
    assert back == f


def test_load_shipped_files(s3_dir):
    g = load(s3_dir / "groupoid.json")
    X = load(s3_dir / "space.json", groupoid=g)
    assert X == build_named("s3-dcoset").space
    f = load(s3_dir / "fa.json")
    assert f.dst is f.src


def test_unknown_key(tmp_path):
    obj = groupoid_to_json(build_named("point").groupoid)
    obj["colour"] = "blue"
    with pytest.raises(ParseError, match="unknown keys"):
        load(write(tmp_path / "g.json", obj))


def test_missing_inverse_names_arrow(tmp_path):
    obj = groupoid_to_json(build_named("z2-free").groupoid)
    del obj["inverse"]["1"]
    with pytest.raises(ValidationError) as err:
        load(write(tmp_path / "g.json", obj))
    assert ("missing inverse", ("1",)) in err.value.report.violations


def test_syntax_error_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "arrows": [,]\n}\n')
    with pytest.raises(ParseError, match="line 2 column"):
        load(p)


def test_bad_rational(tmp_path):
    alpha = build_named("point").space
    obj = arrow_to_json(Arrow.delta(alpha, alpha, ("0", "0")))
    obj["values"]["0|0"] = ["0.5", "0"]
    with pytest.raises(ParseError):
        Workspace().function_from_json(obj)


def test_dumps_layout():
    assert dumps({"a": [1, 2], "b": {"c": "d"}}) == '{\n  "a": [1, 2],\n  "b": {\n    "c": "d"\n  }\n}\n'


def test_format_norm():
    assert format_norm(2.0) == "2.000000000"
    assert format_norm(1.9999999999999996) == "2.000000000"
    assert format_norm(0.0) == "0.000000000"
    assert format_norm(-0.0) == "0.000000000"
    assert format_norm(1.0000000004) == "1.000000000"
    assert format_norm(1.0000000006) == "1.000000001"


# command line


def test_example_then_hyper_matches_fixture(s3_dir, capsys):
    out = s3_dir / "sc.json"
    code = main(["hyper", "--groupoid", str(s3_dir / "groupoid.json"),
                 "--space", str(s3_dir / "space.json"), "--out", str(out)])
    assert code == 0
    assert json.loads(out.read_text()) == load_fixture("s3-dcoset")
    assert out.read_text() == (s3_dir / "constants.json").read_text()
    summary = capsys.readouterr().out
    assert "groupoid-like: no" in summary and "hypergroup (transitive): yes" in summary


@pytest.mark.parametrize("kind", ["reduced", "i"])
def test_norm_command(s3_dir, capsys, kind):
    assert main(["norm", "--kind", kind, "--function", str(s3_dir / "fa.json")]) == 0
    assert capsys.readouterr().out == "2.000000000\n"


def test_conv_command(s3_dir, capsys):
    assert main(["conv", "--left", str(s3_dir / "fa.json"), "--right", str(s3_dir / "fa.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["values"] == {"(12)|(12)": ["2", "0"], "(12)|(123)": ["1", "0"]}


def test_unit_command(s3_dir, capsys):
    args = ["--groupoid", str(s3_dir / "groupoid.json"), "--space", str(s3_dir / "space.json")]
    assert main(["unit", *args]) == 0
    assert json.loads(capsys.readouterr().out)["values"] == {"(12)|(12)": ["1", "0"]}


def test_rep_command(s3_dir, capsys):
    assert main(["rep", "--matrix", "--function", str(s3_dir / "fa.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["rows"] == out["cols"] == ["(12)", "(123)", "(132)"]
    assert len(out["entries"]) == 6
    assert all(r != c and re == "1" and im == "0" for r, c, re, im in out["entries"])


def test_orbits_validate_module_commands(s3_dir, capsys):
    args = ["--groupoid", str(s3_dir / "groupoid.json"), "--space", str(s3_dir / "space.json")]
    assert main(["orbits", *args]) == 0
    orbits = json.loads(capsys.readouterr().out)["orbits"]
    assert [o["rep"] for o in orbits] == ["(12)|(12)", "(12)|(123)"]
    assert main(["validate", *args]) == 0
    assert "space ok: 3 points" in capsys.readouterr().out
    assert main(["module", *args]) == 0
    out = capsys.readouterr().out
    assert "2 / 2 (full)" in out and "ideal: yes" in out


def test_axioms_zero_trials(capsys):
    assert main(["axioms", "--trials", "0", "--seed", "1"]) == 0
    assert capsys.readouterr().out == "0 checks, 0 failed (trials=0, seed=1)\n"


def test_axioms_on_given_space(s3_dir, capsys):
    args = ["--groupoid", str(s3_dir / "groupoid.json"), "--space", str(s3_dir / "space.json")]
    assert main(["axioms", "--trials", "3", "--seed", "7", *args]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "30 checks, 0 failed (trials=3, seed=7)"


def test_exit_codes(s3_dir, tmp_path, capsys):
    assert main(["validate", "--groupoid", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["validate", "--groupoid", str(bad)]) == 2
    fe = s3_dir / "fe.json"
    other = build_named("z2-free").space
    mism = arrow_to_json(Arrow.delta(other, other, ("0", "0")))
    write(tmp_path / "z.json", mism)
    assert main(["conv", "--left", str(fe), "--right", str(tmp_path / "z.json")]) == 2
    for argv in (["bogus"], [], ["norm", "--kind", "x", "--function", "f"],
                 ["axioms", "--trials", "-1", "--seed", "0"],
                 ["axioms", "--trials", "1", "--seed", str(2**64)]):
        with pytest.raises(SystemExit) as err:
            main(argv)
        assert err.value.code == 64
    assert main(["axioms", "--trials", "1", "--seed", "0", "--groupoid", "g.json"]) == 64
    with pytest.raises(SystemExit) as err:
        main(["example", "nope", "--out", str(tmp_path)])
    assert err.value.code == 64


def test_example_command_writes_all_shipped(tmp_path, capsys):
    for name in SHIPPED:
        assert main(["example", name, "--out", str(tmp_path / name)]) == 0
        g = load(tmp_path / name / "groupoid.json")
        assert load(tmp_path / name / "space.json", groupoid=g) == build_named(name).space


def test_module_entry_point(s3_dir):
    run = subprocess.run(
        [sys.executable, "-m", "hgc", "norm", "--kind", "reduced", "--function", str(s3_dir / "fa.json")],
        capture_output=True, text=True, env={"HGC_NO_COLOR": "1", "PATH": ""},
    )
    assert run.returncode == 0 and run.stdout == "2.000000000\n"
    run = subprocess.run([sys.executable, "-m", "hgc", "frobnicate"], capture_output=True, text=True)
    assert run.returncode == 64
