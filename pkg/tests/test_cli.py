import csv
import json
import subprocess
import sys

import pytest

from pinnacles.cache import CACHE_ENV_VAR, SNAPSHOT_HEADER
from pinnacles.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


@pytest.mark.parametrize("argv, expected", [
    (["pinnacles", "315264"], "Des {1,3,5}\nPk  {3,5}\nPin {5,6}"),
    (["pinnacles", "1"], "Des {}\nPk  {}\nPin {}"),
    (["admissible", "check", "{3,5,6}"], "inadmissible (s_3 = 6 ≤ 6)"),
    (["admissible", "check", "{4,7,9}"], "admissible"),
    (["admissible", "count", "9"], "35"),
    (["admissible", "count", "12", "5"], "90"),
    (["admissible", "list", "5", "2"], "{3,5} {4,5}"),
    (["count", "{3,5}", "7"], "16"),
    (["count", "{6,7}", "7", "--method", "quadratic"], "1200"),
    (["count", "{3,5,6}", "8"], "0"),
    (["count", "4, 7, 9", "9", "--method", "brute"], "4128"),
    (["bijection", "path-to-set", "DUUUDU"], "{6,8}"),
    (["bijection", "path-to-perm", "DUUUDU"], "16283457"),
    (["bijection", "path-to-perm", "[-1,-1,1,1,1,-1,1]"], "142739568"),
    (["bijection", "path-to-subset", "DDUDUUDUUUDDDUUUUDD"], "{4,6,12,13,19,20}"),
    (["bijection", "subset-to-path", "{4,6,12,13,19,20}", "--n", "20"], "DDUDUUDUUUDDDUUUUDD"),
])
def test_examples(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected


def test_pinnacles_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "pinnacles", "13247586")
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["command"] == ["--format", "json", "pinnacles", "13247586"]
    assert report["results"]["Pin"] == [3, 7, 8]
    assert set(report) == {"schema_version", "command", "elapsed_seconds", "cache", "results"}


def test_format_after_subcommand(capsys):
    _, out, _ = run(capsys, "count", "{3,5}", "7", "--format", "csv")
    assert list(csv.reader(out.splitlines())) == [["S", "n", "method", "count"], ["{3,5}", "7", "auto", "16"]]


def test_set_to_path_trace(capsys):
    code, out, _ = run(capsys, "bijection", "set-to-path", "{4,7,9}")
    lines = out.splitlines()
    assert lines[0] == "DDUUUDU"
    assert lines[-1].split() == ["{}", "(0,0)"]
    _, out, _ = run(capsys, "--format", "json", "bijection", "set-to-path", "{4,7,9}")
    trace = json.loads(out)["results"]["trace"]
    assert [t["point"] for t in trace] == [[7, 1], [6, 0], [5, 1], [4, 0], [3, -1], [2, -2], [1, -1], [0, 0]]
    assert trace[2]["S"] == [4, 7]


def test_tables(capsys):
    _, out, _ = run(capsys, "--format", "json", "tables", "pS7")
    rows = json.loads(out)["results"]["rows"]
    assert [r[2] for r in rows] == [64, 32, 96, 224, 480, 992, 16, 48, 48, 144, 288, 112, 336, 688, 1200,
                                    8, 24, 24, 72, 144]
    _, out, _ = run(capsys, "--format", "csv", "tables", "dmax", "--to", "22")
    assert [int(l.split(",")[1]) for l in out.splitlines()[1:]] == [1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 4,
                                                                    5, 5, 5, 6, 6, 6]
    _, out, _ = run(capsys, "--format", "csv", "tables", "plateaus", "--to", "200")
    assert out.splitlines()[1:] == ["13,4", "38,12", "63,20", "85,27", "110,35", "135,43", "160,51", "185,59"]
    code, out, _ = run(capsys, "tables", "pmd", "--max-m", "12")
    assert code == 0 and "210" in out.splitlines()[-1]
    code, out, _ = run(capsys, "admissible", "table", "--max-m", "9")
    assert out.splitlines()[-1].split()[-2:] == ["35", "35"]
    code, out, _ = run(capsys, "--format", "csv", "tables", "pinsets", "--max-m", "5")
    assert list(csv.reader(out.splitlines()))[-1] == ["5", "2", "{3,5} {4,5}"]


def test_json_deterministic_apart_from_timing(capsys):
    reports = []
    for _ in range(2):
        _, out, _ = run(capsys, "--format", "json", "tables", "pS7")
        report = json.loads(out)
        report.pop("elapsed_seconds")
        reports.append(report)
    assert reports[0] == reports[1]


@pytest.mark.parametrize("argv, code", [
    (["pinnacles", "1123"], 2),
    (["admissible", "check", "{3,x}"], 2),
    (["count", "{3,5}", "-1"], 2),
    (["count", "{4,7,9}", "9", "--method", "closed"], 2),
    (["count", "{3}", "14", "--method", "brute"], 3),
    (["bijection", "path-to-set", "UD"], 2),
    (["bijection", "set-to-path", "{3,4}"], 2),
    (["verify", "--suite", "engines", "--n-max", "12"], 3),
    (["--jobs", "0", "pinnacles", "12"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count", "{3}", "5", "--method", "magic"])
    assert exc.value.code == 2


def test_cache_file_flag_and_env(capsys, tmp_path, monkeypatch):
    path = tmp_path / "cache.txt"
    code, out, _ = run(capsys, "count", "{4,7,9}", "9", "--method", "linear", "--cache-file", str(path))
    assert out == "4128" and path.read_text().startswith(SNAPSHOT_HEADER)
    monkeypatch.setenv(CACHE_ENV_VAR, str(path))
    _, out, _ = run(capsys, "--format", "json", "count", "{4,7,9}", "10", "--method", "linear")
    report = json.loads(out)
    assert report["results"]["count"] == "8256" and report["cache"]["hits"] >= 1
    path.write_text("garbage\n")
    code, _, err = run(capsys, "count", "{3}", "5")
    assert code == 2 and "header" in err


def test_verify_exit_status(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "--suite", "engines", "--n-max", "6")
    assert code == 0 and out.endswith("checks passed")
    from pinnacles import counting
    real = counting.quadratic_count
    monkeypatch.setattr(counting, "quadratic_count", lambda S, n, cache=None: real(S, n, cache) + (n == 5))
    code, out, _ = run(capsys, "--format", "json", "verify", "--suite", "engines", "--n-max", "6")
    report = json.loads(out)
    assert code == 1 and report["results"]["passed"] is False
    assert any("n=5" in c["witness"] for c in report["results"]["checks"])


def test_verify_parallel(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "sums", "--suite", "lifting", "--n-max", "8", "--jobs", "2")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pinnacles", "count", "{3,5}", "7"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "16"
