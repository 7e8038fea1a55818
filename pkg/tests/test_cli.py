import json
import subprocess
import sys

import pytest

from dcx import io
from dcx.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, data, name="in.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(p)


def test_classify_text(tmp_path, capsys):
    code, out, _ = run(["example", "--id", "fig1a"], capsys)
    assert code == 0
    path = write(tmp_path, json.loads(out))
    code, out, _ = run(["classify", "--in", path, "--format", "text"], capsys)
    assert code == 0
    status = dict(line.split()[:2] for line in out.splitlines())
    assert status["Mnat"] == "Yes" and status["mm"] == "Yes" and status["sep"] == "No"


def test_classify_json(tmp_path, capsys):
    path = write(tmp_path, {"dim": 2, "points": [[1, 0], [0, 1]]})
    code, out, _ = run(["classify", "--in", path], capsys)
    rows = {r["class"]: r for r in json.loads(out)}
    assert code == 0 and rows["Mnat"]["status"] == "Yes" and rows["L2nat"]["status"] == "No"


@pytest.mark.parametrize("text,code", [
    ('{"dim": 2, "points": []}', 2),
    ('{"dim": 2, "points": [[0, 0]', 2),
    ('{"dim": 9, "points": [[0,0,0,0,0,0,0,0,0]]}', 3),
])
def test_classify_exit_codes(tmp_path, capsys, text, code):
    got, _, err = run(["classify", "--in", write(tmp_path, text)], capsys)
    assert got == code and err


def test_missing_file(capsys):
    code, _, err = run(["classify", "--in", "/nonexistent/x.json"], capsys)
    assert code == 2 and "cannot read" in err


def test_max_dim_flag(tmp_path, capsys):
    path = write(tmp_path, {"dim": 3, "points": [[0, 0, 0]]})
    assert run(["--max-dim", "2", "classify", "--in", path], capsys)[0] == 3


def test_describe_and_build(tmp_path, capsys):
    code, out, _ = run(["example", "--id", "fig1a"], capsys)
    obj = json.loads(out)["object"]
    path = write(tmp_path, obj)
    for kind in ("rank", "mm"):
        code, desc, _ = run(["describe", "--in", path, "--as", kind], capsys)
        assert code == 0
        dpath = write(tmp_path, desc, f"{kind}.json")
        code, built, _ = run(["describe", "--in", dpath, "--as", kind, "--build"], capsys)
        assert code == 0 and io.object_from_json(json.loads(built)) == io.object_from_json(obj)
    code, hull, _ = run(["describe", "--in", path, "--as", "hull"], capsys)
    assert code == 0 and len(json.loads(hull)["facets"]) == 9


def test_describe_lnat_rejects_non_lnat(tmp_path, capsys):
    code, out, _ = run(["example", "--id", "fig1b"], capsys)
    path = write(tmp_path, json.loads(out)["object"])
    code, _, err = run(["describe", "--in", path, "--as", "lnat"], capsys)
    assert code == 2 and err


def test_generate_is_deterministic(capsys):
    a = run(["generate", "--class", "lnat", "--dim", "3", "--radius", "3", "--seed", "7"], capsys)
    b = run(["generate", "--class", "Lnat", "--dim", "3", "--radius", "3", "--seed", "7"], capsys)
    assert a[0] == 0 and a[1] == b[1]


def test_generate_errors(capsys):
    assert run(["generate", "--class", "nope", "--dim", "2"], capsys)[0] == 2
    assert run(["generate", "--class", "lnat", "--dim", "12"], capsys)[0] == 3


def test_example_list_and_unknown(capsys):
    code, out, _ = run(["example", "--list"], capsys)
    assert code == 0 and "fig1a\t" in out
    assert run(["example", "--id", "missing"], capsys)[0] == 2


def test_suite_text(capsys):
    code, out, _ = run(["suite", "--name", "argmin", "--trials", "5", "--format", "text"], capsys)
    assert code == 0 and out.startswith("suite argmin: PASS")


def test_table_exit_zero(capsys):
    code, out, _ = run(["table"], capsys)
    from dcx.relations import golden_table

    assert code == 0 and out == golden_table()


def test_generate_pipes_into_classify():
    gen = subprocess.run([sys.executable, "-m", "dcx.cli", "generate", "--class", "mnat", "--dim", "3",
                          "--seed", "2"], capture_output=True, text=True, check=True)
    cls = subprocess.run([sys.executable, "-m", "dcx.cli", "classify", "--in", "-"], input=gen.stdout,
                         capture_output=True, text=True)
    assert cls.returncode == 0
    rows = {r["class"]: r["status"] for r in json.loads(cls.stdout)}
    assert rows["Mnat"] == "Yes"
