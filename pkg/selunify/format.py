"""Reading and writing selective unification problems.

A problem file is a sequence of directives, each ending with a period::

    % Ex. posneg
    atom p(X1,X2).
    pos  p(f(Y),a).
    pos  p(f(g(Z)),b).
    neg  p(f(g(a)),c).
    ground X1.

``sig`` adds symbols to the enumeration alphabet (``sig b/0, k/2.``) and
``depth`` fixes the depth bound. Variables start with an uppercase letter or
an underscore and are local to the atom they appear in; ``_`` is a new
variable at each occurrence. ``%`` starts a comment that runs to the end of
the line.
"""
from collections import namedtuple
from functools import wraps
from lark import Lark, Transformer, v_args
from lark.exceptions import LarkError, UnexpectedEOF, UnexpectedInput, VisitError
from selunify.errors import ProblemInputError, ProblemSyntaxError
from selunify.terms import Atom, Func, Symbol, fresh_var
import json
import logging

logger = logging.getLogger(__name__)


_grammar = r"""
    start      : directive*
    ?directive : atom_d | pos_d | neg_d | ground_d | sig_d | depth_d | head_d

    atom_d     : "atom" atom "."
    pos_d      : "pos" atom "."
    neg_d      : "neg" atom "."
    ground_d   : "ground" VAR ("," VAR)* "."
    sig_d      : "sig" symspec ("," symspec)* "."
    depth_d    : "depth" SIGNED_INT "."
    head_d     : "head" NAME ":" atom "."

    symspec    : NAME "/" INT
    atom       : NAME ("(" term ("," term)* ")")?
    ?term      : VAR -> var
               | NAME ("(" term ("," term)* ")")? -> func

    NAME       : /[a-z][A-Za-z0-9_]*/
    VAR        : /[A-Z_][A-Za-z0-9_]*/
    COMMENT    : /%[^\n]*/

    %import common.INT
    %import common.SIGNED_INT
    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_parser = Lark(_grammar, parser="lalr", lexer="contextual", propagate_positions=True)

_Ref = namedtuple("_Ref", ["name"])
_Directive = namedtuple("_Directive", ["kind", "payload", "line", "column"])


def _args(children):
    return tuple(c for c in children if c is not None)


class _ProblemTransformer(Transformer):
    def var(self, children):
        return _Ref(str(children[0]))

    def func(self, children):
        return Func(str(children[0]), _args(children[1:]))

    def atom(self, children):
        return Atom(str(children[0]), _args(children[1:]))

    def symspec(self, children):
        return Symbol(str(children[0]), int(children[1]))

    @v_args(meta=True)
    def atom_d(self, meta, children):
        return _Directive("atom", children[0], meta.line, meta.column)

    @v_args(meta=True)
    def pos_d(self, meta, children):
        return _Directive("pos", children[0], meta.line, meta.column)

    @v_args(meta=True)
    def neg_d(self, meta, children):
        return _Directive("neg", children[0], meta.line, meta.column)

    @v_args(meta=True)
    def ground_d(self, meta, children):
        return _Directive("ground", [str(c) for c in children], meta.line, meta.column)

    @v_args(meta=True)
    def sig_d(self, meta, children):
        return _Directive("sig", list(children), meta.line, meta.column)

    @v_args(meta=True)
    def depth_d(self, meta, children):
        return _Directive("depth", int(children[0]), meta.line, meta.column)

    @v_args(meta=True)
    def head_d(self, meta, children):
        return _Directive("head", (str(children[0]), children[1]), meta.line, meta.column)

    def start(self, children):
        return list(children)


def _scoped(o, scope):
    """Replace the variable names of ``o`` by variables, sharing those of ``scope``."""
    if isinstance(o, _Ref):
        if o.name == "_":
            return fresh_var(hint="_")
        if o.name not in scope:
            scope[o.name] = fresh_var(hint=o.name)
        return scope[o.name]
    if not o.args:
        return o
    return type(o)(o.name, tuple(_scoped(a, scope) for a in o.args))


def _read(text):
    try:
        tree = _parser.parse(text)
    except UnexpectedEOF as e:
        lines = text.splitlines() or [""]
        raise ProblemSyntaxError(
            f"unexpected end of input, expected one of {sorted(e.expected)}",
            len(lines),
            len(lines[-1]) + 1,
        ) from e
    except UnexpectedInput as e:
        raise ProblemSyntaxError(_describe(e), e.line, e.column) from e
    except LarkError as e:
        raise ProblemSyntaxError(str(e)) from e
    try:
        return _ProblemTransformer().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, RecursionError):
            raise e.orig_exc
        raise


def _describe(e):
    token = getattr(e, "token", None)
    if token is not None:
        return f"unexpected {token.type} {str(token)!r}"
    char = getattr(e, "char", None)
    if char is not None:
        return f"unexpected character {char!r}"
    return "invalid input"


def _check_arities(directives):
    seen = {}
    for d in directives:
        if d.kind == "sig":
            found = [("function", s) for s in d.payload]
        elif d.kind in ("atom", "pos", "neg", "head"):
            atom = d.payload[1] if d.kind == "head" else d.payload
            found = [("predicate", Symbol(atom.name, len(atom.args)))]
            found += [("function", s) for s in _function_symbols(atom)]
        else:
            continue
        for role, sym in found:
            key = (role, sym.name)
            if key in seen and seen[key] != sym.arity:
                low, high = sorted((seen[key], sym.arity))
                raise ProblemInputError(
                    "arity-clash",
                    f"{role} {sym.name} is used with arities {low} and {high}",
                    d.line,
                    d.column,
                )
            seen[key] = sym.arity


def _function_symbols(o):
    found = []
    for a in o.args:
        if isinstance(a, Func):
            found.append(Symbol(a.name, len(a.args)))
            found.extend(_function_symbols(a))
    return found


def _common(directives):
    """Atom, ground variables, extra symbols and depth shared by problem and case files."""
    _check_arities(directives)
    atoms = [d for d in directives if d.kind == "atom"]
    if not atoms:
        raise ProblemInputError("missing-atom", "no atom directive")
    if len(atoms) > 1:
        raise ProblemInputError(
            "duplicate-atom", "more than one atom directive", atoms[1].line, atoms[1].column
        )
    scope = {}
    atom = _scoped(atoms[0].payload, scope)

    ground = []
    for d in directives:
        if d.kind != "ground":
            continue
        for name in d.payload:
            if name not in scope:
                raise ProblemInputError(
                    "ground-var-not-in-atom",
                    f"{name} does not occur in {atom}",
                    d.line,
                    d.column,
                )
            ground.append(scope[name])

    signature = [s for d in directives if d.kind == "sig" for s in d.payload]

    depths = [d for d in directives if d.kind == "depth"]
    depth = None
    if depths:
        if len(depths) > 1:
            raise ProblemInputError(
                "bad-depth", "more than one depth directive", depths[1].line, depths[1].column
            )
        if depths[0].payload < 0:
            raise ProblemInputError(
                "bad-depth",
                f"depth must not be negative, got {depths[0].payload}",
                depths[0].line,
                depths[0].column,
            )
        depth = depths[0].payload
    return atom, ground, signature, depth


def _nesting_guard(func):
    """Report terms nested deeper than the interpreter can recurse as syntax errors."""

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RecursionError as e:
            raise ProblemSyntaxError("terms are nested too deeply") from e

    return wrapper


@_nesting_guard
def parse_problem(text, augment=True):
    """Parse a problem file.

    Parameters
    ----------
    text : str
        The content of the problem file
    augment : bool
        Add the fresh constant and unary symbol to the enumeration signature

    Returns
    -------
    problem : Problem
        The parsed problem with every atom renamed apart

    Raises
    ------
    ProblemSyntaxError
        When the text is not a sequence of directives. ``ProblemInputError`` is
        raised for well-formed files that do not describe a valid problem.
    """
    from selunify.selective import Problem

    directives = _read(text)
    heads = [d for d in directives if d.kind == "head"]
    if heads:
        raise ProblemSyntaxError("head directives belong to case files", heads[0].line, heads[0].column)
    atom, ground, signature, depth = _common(directives)
    hpos = [_scoped(d.payload, {}) for d in directives if d.kind == "pos"]
    hneg = [_scoped(d.payload, {}) for d in directives if d.kind == "neg"]
    if not hpos:
        raise ProblemInputError("missing-pos", "no pos directive")
    return Problem(atom, hpos, hneg, ground, signature=signature, augment=augment, depth=depth)


@_nesting_guard
def parse_heads(text):
    """Parse a case file: an atom, labelled clause heads and the usual ground, sig and depth directives.

    Returns
    -------
    atom : Atom
    heads : list of (str, Atom)
    ground : list of Variable
    signature : list of Symbol
    depth : int or None
    """
    directives = _read(text)
    for d in directives:
        if d.kind in ("pos", "neg"):
            raise ProblemSyntaxError(f"{d.kind} directives belong to problem files", d.line, d.column)
    atom, ground, signature, depth = _common(directives)
    heads = []
    labels = set()
    for d in directives:
        if d.kind != "head":
            continue
        label, head = d.payload
        if label in labels:
            raise ProblemSyntaxError(f"head label {label} is used twice", d.line, d.column)
        labels.add(label)
        heads.append((label, _scoped(head, {})))
    return atom, heads, ground, signature, depth


@_nesting_guard
def parse_term(text, scope=None):
    """Parse a single term, sharing variable names through the ``scope`` dict.

    Examples
    --------
    >>> str(parse_term("f(X,g(a))"))
    'f(X,g(a))'
    """
    wrapper = _single(f"w({text})")
    if len(wrapper.args) != 1:
        raise ProblemSyntaxError(f"{text!r} is not a single term")
    return _scoped(wrapper, {} if scope is None else scope).args[0]


@_nesting_guard
def parse_atom(text, scope=None):
    """Parse a single atom, sharing variable names through the ``scope`` dict."""
    return _scoped(_single(text), {} if scope is None else scope)


def _single(text):
    directives = _read(f"atom {text}.")
    if len(directives) != 1 or directives[0].kind != "atom":
        raise ProblemSyntaxError(f"{text!r} is not a single atom")
    return directives[0].payload


def print_problem(problem):
    """Write ``problem`` in the file format, omitting the augmentation symbols."""
    lines = [f"atom {problem.atom}."]
    lines += [f"pos {h}." for h in problem.hpos]
    lines += [f"neg {h}." for h in problem.hneg]
    if problem.ground:
        lines.append("ground " + ", ".join(str(v) for v in problem.ground) + ".")
    if problem.extra_symbols:
        lines.append("sig " + ", ".join(str(s) for s in problem.extra_symbols) + ".")
    if problem.depth is not None:
        lines.append(f"depth {problem.depth}.")
    return "\n".join(lines) + "\n"


def solution_to_dict(result):
    sigma = result.sigma
    return {
        "status": "solved" if result else "fail",
        "substitution": None if sigma is None else {str(v): str(t) for v, t in sigma.items()},
        "algorithm": str(result.algorithm),
        "depth_bound": result.depth_bound,
        "conclusive": result.conclusive,
        "stats": result.stats.to_dict(),
    }


def print_solution(result, structured=False):
    """Render a ``Solution`` or ``Failure``.

    With ``structured`` the same content is written as a JSON object with the
    fields ``status``, ``substitution``, ``algorithm``, ``depth_bound``,
    ``conclusive`` and ``stats``.
    """
    if structured:
        return json.dumps(solution_to_dict(result), sort_keys=True)
    return str(result)
