"""End-to-end runs of the llg command line."""
import pytest
from click.testing import CliRunner

from llgames.builders import build_kuhn
from llgames.cli import main
from llgames.gameio import load_game, save_game


@pytest.fixture
def runner():
    return CliRunner()


def run_ok(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result.output


def test_game_stats(runner):
    out = run_ok(runner, ["game", "stats", "kuhn"])
    assert "nodes: 55" in out
    assert "sequences[r]: 13" in out


def test_game_validate(runner, tmp_path):
    assert run_ok(runner, ["game", "validate", "kj"]).strip() == "ok"
    bad = tmp_path / "bad.game"
    bad.write_text("node 0 parent=- owner=c infoset=-\n"
                   "leaf 1 parent=0 ur=0 ul=0\n"
                   "leaf 2 parent=0 ur=1 ul=1\n"
                   "action 0 a child=1 prob=0.4\n"
                   "action 0 b child=2 prob=0.4\n")
    result = runner.invoke(main, ["game", "validate", str(bad)])
    assert result.exit_code != 0


def test_game_file_round_trip(runner, tmp_path):
    path = tmp_path / "kuhn.game"
    path.write_text(save_game(build_kuhn()))
    out = run_ok(runner, ["game", "stats", str(path)])
    assert "nodes: 55" in out


def test_equilibrium_output(runner):
    out = run_ok(runner, ["equilibrium", "kuhn"])
    assert out.splitlines()[0].startswith("# game value (player r): ")
    value = float(out.splitlines()[0].split(": ")[1])
    assert value == pytest.approx(-1.0 / 18.0, abs=1e-9)
    assert "player,seq,infoset,action,value" in out


def test_heuristic_dump_and_reuse(runner, tmp_path):
    out = run_ok(runner, ["heuristic", "kuhn", "--model", "ind",
                          "--gamma", "0.5", "--seed", "3"])
    path = tmp_path / "h.csv"
    path.write_text(out)
    # Feed the dump back through lookahead inspection.
    out2 = run_ok(runner, ["lookahead", "inspect", "kuhn", "--k", "1",
                           "--heuristic-file", str(path)])
    assert out2.startswith("infoset,action,label,frontier_value,optimal")


def test_commit_and_plan_reuse(runner, tmp_path):
    out = run_ok(runner, ["commit", "kuhn", "--tie", "adv", "--k", "1"])
    assert out.splitlines()[0].startswith("# value (player r): ")
    value = float(out.splitlines()[0].split(": ")[1])
    assert value == pytest.approx(1.0 / 3.0, abs=1e-5)
    plan = tmp_path / "plan.csv"
    plan.write_text("\n".join(l for l in out.splitlines()
                              if not l.startswith("#")) + "\n")
    out2 = run_ok(runner, ["lookahead", "inspect", "kuhn", "--k", "1",
                           "--plan-file", str(plan)])
    assert "unreachable" in out2 or "infoset" in out2


def test_commit_oracle_agrees(runner):
    out_mip = run_ok(runner, ["commit", "kuhn", "--tie", "adv", "--k", "1"])
    out_orc = run_ok(runner, ["commit", "kuhn", "--tie", "adv", "--k", "1",
                              "--oracle"])
    v1 = float(out_mip.splitlines()[0].split(": ")[1])
    v2 = float(out_orc.splitlines()[0].split(": ")[1])
    assert v1 == pytest.approx(v2, abs=1e-5)


def test_commit_export_lp_solves(runner, tmp_path):
    lp = tmp_path / "model.lp"
    run_ok(runner, ["commit", "kuhn", "--tie", "adv", "--k", "1",
                    "--export-lp", str(lp)])
    assert lp.exists()
    out = run_ok(runner, ["opt", "solve", str(lp)])
    assert "status: Optimal" in out


def test_gen_reduction_round_trip(runner, tmp_path):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 3 2\n1 2 3 0\n-1 -2 0\n")
    for theorem in ("1", "2", "3"):
        out_path = tmp_path / f"t{theorem}.game"
        out = run_ok(runner, ["gen", "reduction", "--theorem", theorem,
                              "--cnf", str(cnf), "--out", str(out_path)])
        assert "wrote" in out
        g = load_game(out_path.read_text())
        assert len(g) > 1
        assert run_ok(runner, ["game", "validate",
                               str(out_path)]).strip() == "ok"


def test_gen_reduction_rejects_bad_cnf(runner, tmp_path):
    cnf = tmp_path / "bad.cnf"
    cnf.write_text("p cnf 2 1\n1 2 1 0\n")  # repeated variable
    result = runner.invoke(main, ["gen", "reduction", "--theorem", "3",
                                  "--cnf", str(cnf), "--out",
                                  str(tmp_path / "x.game")])
    assert result.exit_code != 0


def test_experiment_run_and_summarize(runner, tmp_path):
    config = tmp_path / "sweep.cfg"
    config.write_text("game = kuhn\nks = 1\nmodels = independent\n"
                      "gammas = 0,0.5\nseeds = 3\n")
    rows = tmp_path / "rows.csv"
    run_ok(runner, ["experiment", "run", "--config", str(config),
                    "--out", str(rows)])
    lines = rows.read_text().splitlines()
    assert lines[0] == "game,rational,k,model,gamma,seed,value,status,ms"
    assert len(lines) == 7  # header + 2 gammas x 3 seeds
    summary = tmp_path / "summary.csv"
    run_ok(runner, ["experiment", "summarize", str(rows),
                    "--out", str(summary)])
    slines = summary.read_text().splitlines()
    assert slines[0] == "game,rational,k,model,gamma,mean,std,stderr,count"
    assert len(slines) == 3


def test_experiment_bad_config(runner, tmp_path):
    config = tmp_path / "bad.cfg"
    config.write_text("nonsense = 1\n")
    result = runner.invoke(main, ["experiment", "run", "--config",
                                  str(config), "--out",
                                  str(tmp_path / "r.csv")])
    assert result.exit_code != 0
    assert "bad config" in result.output


def test_missing_game_file(runner):
    result = runner.invoke(main, ["game", "stats", "/no/such/file.game"])
    assert result.exit_code != 0
