from selunify.format import parse_problem
from selunify.home import home
from selunify.difftest import DiffRunner
from selunify.selective import Algorithm
from selunify.solvers import (
    OracleSolver,
    SULinSolver,
    SUSolver,
    SUStarSolver,
    default_algorithm,
    get_solver,
)
import pytest
import yaml
import os

INTRO = "atom p(N). pos p(s(a)). pos p(s(W)). neg p(f(X)). ground N."


def _test_bound():
    problem = parse_problem(INTRO)
    solver = SUSolver()
    assert solver.bound(problem) == 3
    solver.depth_slack = 2
    assert solver.bound(problem) == 5
    solver.max_depth = 1
    assert solver.bound(problem) == 1
    assert SUSolver().bound(parse_problem(INTRO + " depth 7.")) == 7


def _test_enumerator():
    problem = parse_problem(INTRO)
    cfg = SUStarSolver().enumerator(problem)
    assert cfg.max_depth == 3
    assert cfg.priority_non_u
    assert not SUSolver().enumerator(problem).priority_non_u


def _test_get_solver():
    assert isinstance(get_solver("su"), SUSolver)
    assert isinstance(get_solver(Algorithm.SU_STAR), SUStarSolver)
    assert isinstance(get_solver("su-lin"), SULinSolver)
    assert isinstance(get_solver("oracle"), OracleSolver)
    with pytest.raises(ValueError):
        get_solver("unify")


def _test_default_algorithm():
    assert default_algorithm(parse_problem(INTRO)) is Algorithm.SU_LIN
    assert default_algorithm(parse_problem("atom p(X,Y). pos p(Z,Z).")) is Algorithm.SU_STAR


def _test_solve():
    problem = parse_problem(INTRO)
    for algorithm in Algorithm:
        assert str(get_solver(algorithm).solve(problem)) == "{N/s(a)}"
    solutions = SUSolver().solve_all(problem)
    assert [str(s) for s in solutions] == ["{N/s(a)}"]


def _test_profiles(tmp_path):
    configfile = str(tmp_path / "selunify.yml")
    with open(configfile, "w") as f:
        yaml.dump({"su_lin": {"default": {"depth_slack": 1}, "deep": {"max_depth": 6}}}, f)

    solver = SULinSolver(_configfile=configfile, _profile="deep")
    assert solver.depth_slack == 1
    assert solver.max_depth == 6

    solver = SULinSolver(_configfile=configfile)
    assert solver.max_depth is None
    assert solver.bound(parse_problem(INTRO)) == 4

    with pytest.raises(RuntimeError):
        SULinSolver(_configfile=configfile, _profile="missing")


def _test_bundled_config():
    configfile = os.path.join(home(), "config_solver.yml")
    with open(configfile, "r") as f:
        configuration = yaml.load(f, Loader=yaml.FullLoader)

    for algorithm, section in (
        (Algorithm.SU, "su"),
        (Algorithm.SU_STAR, "su_star"),
        (Algorithm.SU_LIN, "su_lin"),
        (Algorithm.ORACLE, "oracle"),
    ):
        for profile in configuration[section]:
            get_solver(algorithm, configfile, profile)

    for profile in configuration["diff"]:
        runner = DiffRunner(configfile, profile)
        assert runner.trials > 0

    assert get_solver("su", configfile, "quick").max_depth == 2
    assert DiffRunner(configfile, "quick").trials == 20
