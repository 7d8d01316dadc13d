from selunify.errors import PreconditionError
from selunify.format import parse_atom, parse_problem
from selunify.home import home
from selunify.selective import (
    Algorithm,
    EnumeratorConfig,
    Failure,
    Problem,
    Solution,
    SolveStatus,
    check_solution,
    fair_eta_stream,
    solve,
    solve_all,
    su,
    su_lin,
    su_star,
    _partitions,
)
from selunify.subst import IDENTITY, Substitution, apply
from selunify.terms import Func, Namespace, Symbol, Variable, canonical_key, fresh_var, variables
import pytest
import os


def _bundled(name):
    with open(os.path.join(home(dataDir="problems"), name), "r") as f:
        return parse_problem(f.read())


INTRO = "atom p(N). pos p(s(a)). pos p(s(W)). neg p(f(X)). ground N."


def _test_problem_validation():
    scope = {}
    atom = parse_atom("p(X)", scope)
    with pytest.raises(PreconditionError):
        Problem(atom, [parse_atom("p(a)")], ground=[fresh_var()])
    with pytest.raises(PreconditionError):
        Problem(atom, [parse_atom("p(b)", scope)], hneg=[parse_atom("p(X)", scope)])
    with pytest.raises(PreconditionError):
        Problem(parse_atom("p(a)"), [parse_atom("p(b)")])
    with pytest.raises(PreconditionError):
        Problem(atom, [parse_atom("p(a)")], depth=-1)


def _test_default_bound():
    assert Problem(parse_atom("p(a)"), []).default_bound() == 2
    assert Problem(parse_atom("p(X)"), []).default_bound() == 1
    assert _bundled("posneg.sun").default_bound() == 4
    assert parse_problem(INTRO).default_bound() == 3


def _test_signature():
    problem = parse_problem(INTRO)
    names = [s.name for s in problem.signature]
    assert names == ["a", "s", "f", "c", "h"]
    assert problem.is_augmented

    problem = parse_problem(INTRO, augment=False)
    assert [s.name for s in problem.signature] == ["a", "s", "f"]
    assert not problem.conclusive(10)


def _test_intro():
    problem = parse_problem(INTRO)
    for algorithm in Algorithm:
        result = solve(problem, algorithm)
        assert result.status == SolveStatus.SOLVED
        assert str(result) == "{N/s(a)}", algorithm


def _test_intro_first_only():
    problem = _bundled("intro_first_only.sun")
    result = su(problem)
    assert not result
    assert result.status == SolveStatus.FAIL
    assert str(result) == "fail (bound=3, conclusive)"
    assert result.sigma is None


def _test_posneg():
    problem = _bundled("posneg.sun")
    result = su_lin(problem)
    assert str(result) == "{X1/f(g(b)), X2/_0}"
    assert result.depth_bound == 4
    assert result.stats.branches == 1
    assert result.stats.candidates_tested >= 1
    assert check_solution(result.sigma, problem)


def _test_nonlinear_only():
    problem = _bundled("nonlinear_only.sun")
    failure = su(problem)
    assert isinstance(failure, Failure)
    assert str(failure) == "fail (bound=2, conclusive)"
    assert not su_lin(problem)

    found = solve(problem, Algorithm.ORACLE)
    assert str(found) == "{X1/_0, X2/_0}"
    assert not found.sigma.is_linear()


def _test_most_general_classes():
    problem = _bundled("most_general.sun")
    found = solve_all(problem, Algorithm.SU)
    assert {str(s) for s in found} == {"{X/a, Y/_0}", "{X/_0, Y/b}"}
    with pytest.raises(PreconditionError):
        su_lin(problem)


def _test_u_binding():
    problem = _bundled("u_binding.sun")
    assert str(su(problem)) == "{X1/b, X2/_0}"

    su_classes = {str(s) for s in solve_all(problem, Algorithm.SU)}
    star_classes = {str(s) for s in solve_all(problem, Algorithm.SU_STAR)}
    assert "{X1/g(a), X2/_0}" in su_classes
    assert "{X1/g(a), X2/g(_0)}" not in su_classes
    assert "{X1/g(a), X2/g(_0)}" in star_classes
    assert su_classes <= star_classes


def _test_su_star_binds_u():
    scope = {}
    problem = Problem(parse_atom("p(X)", scope), [parse_atom("p(f(Y))")], [parse_atom("p(f(a))")])
    result = su_star(problem)
    assert result
    assert check_solution(result.sigma, problem)


def _test_linear_solution_set():
    problem = _bundled("posneg_unbound.sun")
    lin_classes = {canonical_key(apply(s.sigma, problem.atom)) for s in solve_all(problem, Algorithm.SU_LIN)}
    oracle = solve_all(problem, Algorithm.ORACLE, EnumeratorConfig(max_depth=problem.bound(), linear_only=True))
    oracle_classes = {canonical_key(apply(s.sigma, problem.atom)) for s in oracle}
    x1, x2 = variables(problem.atom)
    unbound = canonical_key(apply(Substitution({x1: Func("f", (fresh_var(),)), x2: fresh_var()}), problem.atom))
    assert unbound in oracle_classes
    assert unbound not in lin_classes
    assert lin_classes


def _test_check_solution():
    problem = parse_problem(INTRO)
    (n,) = variables(problem.atom)
    assert check_solution(Substitution({n: Func("s", (Func("a"),))}), problem)
    assert not check_solution(IDENTITY, problem)
    assert not check_solution(Substitution({n: Func("s", (fresh_var(),))}), problem)

    problem = _bundled("nonlinear_only.sun")
    x1, x2 = variables(problem.atom)
    z = fresh_var()
    assert check_solution(Substitution({x1: z, x2: z}), problem)


def _test_solve_all_unsat():
    problem = parse_problem("atom p(N). pos p(s(a)). neg p(s(W)). neg p(f(X)). ground N.")
    for algorithm in Algorithm:
        assert solve_all(problem, algorithm) == []


def _test_solve_all_single():
    problem = parse_problem("atom p(X). pos p(a). ground X.")
    for algorithm in (Algorithm.SU, Algorithm.SU_LIN, Algorithm.ORACLE):
        assert [str(s) for s in solve_all(problem, algorithm)] == ["{X/a}"]


def _test_depth_directive():
    problem = parse_problem(INTRO + " depth 1.")
    assert problem.bound() == 1
    result = solve(problem, Algorithm.ORACLE)
    assert str(result) == "fail (bound=1, inconclusive)"
    # the positive result is already ground, so the bound does not matter
    assert str(su(problem)) == "{N/s(a)}"


def _test_results():
    solution = Solution(IDENTITY, Algorithm.SU)
    assert solution and solution.conclusive and str(solution) == "id"
    failure = Failure(Algorithm.SU, 3, False)
    assert not failure
    assert str(failure) == "fail (bound=3, inconclusive)"
    assert str(SolveStatus.INPUT_ERROR) == "Input error"
    assert str(Algorithm.SU_STAR) == "su-star"


def _test_partitions():
    assert _partitions(0, False) == ((),)
    assert _partitions(3, True) == ((0, 1, 2),)
    parts = _partitions(3, False)
    assert parts[0] == (0, 1, 2)
    assert len(parts) == 5
    assert len(_partitions(4, False)) == 15


def _sig_problem(*symbols):
    return Problem(parse_atom("p(X)"), [], signature=list(symbols), augment=False)


def _test_eta_stream():
    problem = _sig_problem(Symbol("a", 0))
    stream = fair_eta_stream(variables(problem.atom), EnumeratorConfig(max_depth=0), problem)
    assert list(stream) == [IDENTITY]

    problem = _sig_problem(Symbol("a", 0), Symbol("f", 1))
    (x,) = variables(problem.atom)
    stream = fair_eta_stream([x], EnumeratorConfig(max_depth=1), problem)
    images = [apply(eta, x) for eta in stream]
    assert len(images) == 3
    assert Func("a") in images
    assert any(isinstance(t, Func) and t.name == "f" and isinstance(t.args[0], Variable) for t in images)
    assert stream.emitted == {0: 1, 1: 2}


def _test_eta_stream_ground():
    problem = _sig_problem(Symbol("a", 0), Symbol("f", 1))
    (x,) = variables(problem.atom)
    stream = fair_eta_stream([x], EnumeratorConfig(max_depth=2), problem, ground=[x])
    assert [str(apply(eta, x)) for eta in stream] == ["a", "f(a)"]

    blocked = fair_eta_stream([x], EnumeratorConfig(max_depth=2), problem, ground=[fresh_var()])
    assert list(blocked) == []


def _test_eta_stream_nonlinear():
    problem = Problem(parse_atom("p(X,Y)"), [], signature=[Symbol("a", 0)], augment=False)
    vars_ = variables(problem.atom)
    linear = list(fair_eta_stream(vars_, EnumeratorConfig(max_depth=0, linear_only=True), problem))
    shared = list(fair_eta_stream(vars_, EnumeratorConfig(max_depth=0), problem))
    assert linear == [IDENTITY]
    assert len(shared) == 2
    assert shared[0] == IDENTITY
    assert apply(shared[1], vars_[0]) == apply(shared[1], vars_[1])


def _test_eta_stream_priority():
    problem = _sig_problem(Symbol("a", 0))
    x = fresh_var(hint="X")
    u = fresh_var(Namespace.U, "U")
    cfg = EnumeratorConfig(max_depth=1, allow_u_bindings=True, priority_non_u=True)
    stream = fair_eta_stream([x, u], cfg, problem)
    seen = []
    for eta in stream:
        seen.append((stream.depth, any(v.is_u for v in eta.domain())))
    depths = [d for d, _ in seen]
    assert depths == sorted(depths)
    for d in set(depths):
        flags = [touches for layer, touches in seen if layer == d]
        assert flags == sorted(flags)
    assert any(touches for _, touches in seen)

    stream = fair_eta_stream([x, u], EnumeratorConfig(max_depth=1), problem)
    assert all(u not in eta.domain() for eta in stream)


def _test_eta_stream_seed():
    problem = _sig_problem(Symbol("a", 0), Symbol("f", 1), Symbol("g", 2))
    vars_ = variables(problem.atom)

    def keys(seed):
        stream = fair_eta_stream(vars_, EnumeratorConfig(max_depth=2, seed=seed), problem)
        return [canonical_key([apply(eta, v) for v in vars_]) for eta in stream]

    assert keys(7) == keys(7)
    assert set(keys(7)) == set(keys(None))
    assert len(set(keys(None))) == len(keys(None))


def _test_eta_stream_leaves_u_unbound():
    problem = _sig_problem(Symbol("a", 0), Symbol("f", 1))
    x = fresh_var(hint="X")
    u = fresh_var(Namespace.U, "U")
    assert list(fair_eta_stream([x, u], EnumeratorConfig(max_depth=0), problem)) == [IDENTITY]

    for linear_only in (False, True):
        cfg = EnumeratorConfig(max_depth=2, linear_only=linear_only)
        for eta in fair_eta_stream([x, u], cfg, problem):
            assert u not in eta.domain()
            assert u not in eta.range_vars()

    shared = list(fair_eta_stream([x, u], EnumeratorConfig(max_depth=0, allow_u_bindings=True), problem))
    assert len(shared) == 2
    assert apply(shared[1], x) == apply(shared[1], u)

    blocked = fair_eta_stream([x, u], EnumeratorConfig(max_depth=2), problem, ground=[u])
    assert list(blocked) == []
