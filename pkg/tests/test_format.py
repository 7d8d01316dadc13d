from hypothesis import given, settings, strategies as st
from selunify.errors import ProblemInputError, ProblemSyntaxError, SelUnifyError
from selunify.format import (
    parse_atom,
    parse_heads,
    parse_problem,
    parse_term,
    print_problem,
    print_solution,
)
from selunify.generate import ProblemGenerator
from selunify.selective import Algorithm, Failure, Solution
from selunify.subst import IDENTITY
from selunify.terms import Symbol, canonical_key, vars_of
import pytest
import json


POSNEG = """
% positive and negative atoms
atom p(X1,X2).
pos  p(f(Y),a).
pos  p(f(g(Z)),b).
neg  p(f(g(a)),c).   % must not unify
ground X1.
"""


def _input_error(text):
    with pytest.raises(ProblemInputError) as excinfo:
        parse_problem(text)
    return excinfo.value


def _test_parse_problem():
    problem = parse_problem(POSNEG)
    assert str(problem.atom) == "p(X1,X2)"
    assert [str(h) for h in problem.hpos] == ["p(f(Y),a)", "p(f(g(Z)),b)"]
    assert [str(h) for h in problem.hneg] == ["p(f(g(a)),c)"]
    assert [str(v) for v in problem.ground] == ["X1"]
    assert problem.depth is None
    assert problem.extra_symbols == ()


def _test_optional_directives():
    problem = parse_problem("atom p(X). pos p(a).")
    assert problem.hneg == ()
    assert problem.ground == ()

    problem = parse_problem("atom p(X). pos p(a). sig k/2, b/0. depth 5.")
    assert problem.extra_symbols == (Symbol("k", 2), Symbol("b", 0))
    assert problem.depth == 5
    assert problem.bound() == 5


def _test_variable_scopes():
    problem = parse_problem("atom p(X). pos p(X). neg p(f(X)).")
    assert not vars_of(problem.atom) & vars_of(problem.hpos[0])
    assert not vars_of(problem.hpos[0]) & vars_of(problem.hneg[0])

    problem = parse_problem("atom p(_,_). pos p(a,b).")
    assert len(vars_of(problem.atom)) == 2

    problem = parse_problem("atom p(X,X). pos p(a,Y).")
    assert len(vars_of(problem.atom)) == 1


def _test_input_errors():
    assert _input_error("pos p(a).").kind == "missing-atom"
    assert _input_error("atom p(X). atom p(Y). pos p(a).").kind == "duplicate-atom"
    assert _input_error("atom p(X). neg p(a).").kind == "missing-pos"
    assert _input_error("atom p(X). pos p(a). ground Y.").kind == "ground-var-not-in-atom"
    assert _input_error("atom p(f(X)). pos p(f(a,b)).").kind == "arity-clash"
    assert _input_error("atom p(X). pos p(a,b).").kind == "arity-clash"
    assert _input_error("atom p(X). pos p(a). sig a/1.").kind == "arity-clash"
    assert _input_error("atom p(X). pos p(a). depth -1.").kind == "bad-depth"
    assert _input_error("atom p(X). pos p(a). depth 1. depth 2.").kind == "bad-depth"


def _test_input_error_position():
    error = _input_error("atom p(X).\npos p(a).\nground Y.\n")
    assert error.line == 3
    assert "ground-var-not-in-atom" in str(error)


def _test_syntax_errors():
    with pytest.raises(ProblemSyntaxError) as excinfo:
        parse_problem("atom p(X).\npos p(a)#.\n")
    assert excinfo.value.line == 2

    for text in ("atom p(X", "atom p(X). pos p(a)", "atom P(X). pos p(a).", "atom p(X) pos p(a)."):
        with pytest.raises(ProblemSyntaxError):
            parse_problem(text)

    with pytest.raises(ProblemSyntaxError):
        parse_problem("atom p(X). pos p(a). head l1: p(b).")


def _nested(n):
    return "f(" * n + "X" + ")" * n


def _test_deep_nesting():
    problem = parse_problem(f"atom p({_nested(100)}). pos p(Y).")
    assert str(problem.atom).count("f(") == 100

    for parse in (
        lambda: parse_problem(f"atom p({_nested(5000)}). pos p(Y)."),
        lambda: parse_heads(f"atom p(Y). head l1: p({_nested(5000)})."),
        lambda: parse_term(_nested(5000)),
    ):
        with pytest.raises(ProblemSyntaxError):
            parse()


def _test_parse_term():
    scope = {}
    t = parse_term("f(X,g(X,a))", scope)
    assert str(t) == "f(X,g(X,a))"
    assert parse_term("X", scope) is scope["X"]
    with pytest.raises(ProblemSyntaxError):
        parse_term("a,b")
    assert str(parse_atom("q")) == "q"


def _test_print_problem():
    problem = parse_problem(POSNEG + "sig k/2.\ndepth 3.\n")
    text = print_problem(problem)
    assert text.splitlines() == [
        "atom p(X1,X2).",
        "pos p(f(Y),a).",
        "pos p(f(g(Z)),b).",
        "neg p(f(g(a)),c).",
        "ground X1.",
        "sig k/2.",
        "depth 3.",
    ]


def _test_roundtrip_generated():
    for seed in range(30):
        problem = ProblemGenerator(seed, linear=seed % 2 == 0).problem()
        again = parse_problem(print_problem(problem))
        atoms = [problem.atom, *problem.hpos, *problem.hneg]
        parsed = [again.atom, *again.hpos, *again.hneg]
        assert canonical_key(atoms) == canonical_key(parsed)
        assert canonical_key([problem.atom, list(problem.ground)]) == canonical_key(
            [again.atom, list(again.ground)]
        )
        assert problem.signature == again.signature


def _test_parse_heads():
    atom, heads, ground, signature, depth = parse_heads(
        "atom p(N). head l1: p(s(a)). head l2: p(s(W)). head l3: p(f(X)). ground N."
    )
    assert str(atom) == "p(N)"
    assert [label for label, _ in heads] == ["l1", "l2", "l3"]
    assert [str(v) for v in ground] == ["N"]
    assert signature == [] and depth is None

    with pytest.raises(ProblemSyntaxError):
        parse_heads("atom p(N). head l1: p(a). head l1: p(b).")
    with pytest.raises(ProblemSyntaxError):
        parse_heads("atom p(N). pos p(a).")


def _test_print_solution():
    assert print_solution(Solution(IDENTITY, Algorithm.SU)) == "id"
    failure = Failure(Algorithm.SU_LIN, 3, True)
    assert print_solution(failure) == "fail (bound=3, conclusive)"

    out = json.loads(print_solution(failure, structured=True))
    assert out == {
        "status": "fail",
        "substitution": None,
        "algorithm": "su-lin",
        "depth_bound": 3,
        "conclusive": True,
        "stats": {"candidates_tested": 0, "branches": 0},
    }
    out = json.loads(print_solution(Solution(IDENTITY, Algorithm.SU, depth_bound=2), structured=True))
    assert out["status"] == "solved"
    assert out["substitution"] == {}


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="atompsgndhepX(),._:%/ \n0123-", max_size=60))
def _test_fuzz(text):
    try:
        parse_problem(text)
    except SelUnifyError:
        pass
