import subprocess
import sys

import pytest

from oneshot.channel import check_unambiguous
from oneshot.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, main
from oneshot.constructions import family_e_construct
from oneshot.io import read_inner, read_network, read_outer
from oneshot.netmodel import family_e


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr().out
    kv = dict(line.split("=", 1) for line in out.splitlines() if "=" in line and not line.startswith(" "))
    return rc, kv, out


def test_bound_diamond(capsys):
    rc, kv, _ = run(capsys, "bound", "--family", "diamond", "--q", "3")
    assert rc == EXIT_OK and kv["singleton_bound"] == "1" and kv["mu"] == "2"


def test_bound_reads_bundled_fig1(capsys):
    from importlib import resources

    path = resources.files("oneshot") / "data" / "fig1.net"
    rc, kv, _ = run(capsys, "bound", "--network", str(path))
    assert rc == EXIT_OK and kv["mu"] == "2" and kv["singleton_bound"] == "0"


def test_bound_family_capacity(capsys):
    rc, kv, _ = run(capsys, "bound", "--family", "E:2", "--q", "5")
    assert rc == EXIT_OK and kv["capacity.size"] == "2"


@pytest.mark.parametrize("family,q", [("E:2", 5), ("E:1", 3), ("S:2,1,1", 3), ("S:1,2,1", 2)])
def test_construct_then_verify_round_trip(capsys, tmp_path, family, q):
    rc, kv, _ = run(capsys, "construct", "--family", family, "--q", str(q), "--out-dir", str(tmp_path))
    assert rc == EXIT_OK and kv["unambiguous"] == "true"
    rc2, kv2, _ = run(capsys, "verify", "--network", kv["file.net"], "--outer", kv["file.outer"],
                      "--inner", kv["file.inner"])
    assert rc2 == EXIT_OK and kv2["unambiguous"] == "true" and kv2["size"] == kv["size"]
    # same verdict as the in-process check on the parsed files
    net = read_network(kv["file.net"])
    outer, code = read_outer(kv["file.outer"], q), read_inner(kv["file.inner"], net, q)
    assert check_unambiguous(net, code, outer) is True


def test_verify_reports_collision(capsys, tmp_path):
    plan = family_e_construct(2, 5)
    net = family_e(2, 5)
    from oneshot.io import format_inner, format_network

    (tmp_path / "n.net").write_text(format_network(net))
    (tmp_path / "c.code").write_text("0,0,0,0,0\n0,0,0,0,1\n")
    (tmp_path / "i.inner").write_text(format_inner(net, plan.code))
    rc, kv, _ = run(capsys, "verify", "--network", str(tmp_path / "n.net"), "--outer", str(tmp_path / "c.code"),
                    "--inner", str(tmp_path / "i.inner"))
    assert rc == EXIT_OK and kv["unambiguous"] == "false" and "witness.terminal" in kv


@pytest.mark.parametrize("cid,want", [("B2-q4-10", "true"), ("B2-q5-16", "false")])
def test_verify_embedded(capsys, cid, want):
    rc, kv, _ = run(capsys, "verify", "--embedded", cid)
    assert rc == EXIT_OK and kv["unambiguous"] == want


def test_search_writes_pair(capsys, tmp_path):
    rc, kv, _ = run(capsys, "search", "--family", "diamond", "--q", "3", "--target", "2",
                    "--method", "dfs", "--out-dir", str(tmp_path))
    assert rc == EXIT_OK and kv["status"] == "feasible" and kv["unambiguous"] == "true"
    rc2, kv2, _ = run(capsys, "verify", "--network", kv["file.net"], "--outer", kv["file.outer"],
                      "--inner", kv["file.inner"])
    assert rc2 == EXIT_OK and kv2["unambiguous"] == "true"


def test_search_infeasible_and_budget(capsys):
    rc, kv, _ = run(capsys, "search", "--family", "diamond", "--q", "3", "--target", "3")
    assert rc == EXIT_OK and kv["status"] == "infeasible"
    rc, kv, _ = run(capsys, "search", "--family", "S:3,1,2", "--q", "2", "--target", "7",
                    "--method", "cnf", "--budget", "0.5")
    assert rc == EXIT_BUDGET and kv["status"] == "unknown"


def test_export_cnf(capsys, tmp_path):
    out = tmp_path / "d.cnf"
    rc, kv, _ = run(capsys, "export-cnf", "--family", "diamond", "--q", "2", "--size", "2", "--out", str(out))
    assert rc == EXIT_OK
    header = out.read_text().splitlines()
    p = next(line for line in header if line.startswith("p cnf")).split()
    assert int(p[2]) == int(kv["variables"]) and int(p[3]) == int(kv["clauses"])


def test_separability_restr(capsys):
    rc, kv, out = run(capsys, "separability", "--case", "restr", "--q", "2", "--cap", "3")
    assert rc == EXIT_OK and kv["verdict"] == "not_separable"
    assert out.count("F[0.T.") == 3


def test_separability_rank_certificate(capsys):
    rc, kv, _ = run(capsys, "separability", "--case", "restr", "--metric", "rank:2,3", "--q", "8")
    assert rc == EXIT_OK and kv["verdict"] == "not_separable" and "certificate.w" in kv


@pytest.mark.parametrize("argv", [
    [],
    ["bound"],
    ["bound", "--family", "nosuch"],
    ["bound", "--network", "/nonexistent.net"],
    ["construct", "--family", "S:1,1,2", "--q", "5"],
    ["construct", "--family", "X:1", "--q", "2"],
    ["verify"],
    ["--threads", "0", "bound", "--family", "diamond"],
    ["verify", "--embedded", "B2-q4-10", "--outer", "x"],
    ["separability", "--case", "custom"],
    ["separability", "--case", "restr", "--metric", "rank:2,2", "--q", "8"],
    ["search", "--family", "fig1", "--q", "3", "--target", "2"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE
    capsys.readouterr()


def test_reproduce_prints_criterion_line(capsys):
    rc, kv, out = run(capsys, "reproduce", "2")
    assert rc == EXIT_OK and kv["pass"] == "true"
    assert out.splitlines()[0].startswith("criterion 2 PASS")


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "oneshot.cli", "bound", "--family", "E:1", "--q", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "capacity.size=2" in res.stdout
