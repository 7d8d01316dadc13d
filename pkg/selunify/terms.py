"""First-order terms and atoms over a signature with two variable namespaces.

Variables are identified by a session-wide counter, never by name. The source
name of a variable is kept only as a display hint. Ordinary variables live in
``Namespace.V``; the special variables introduced by positive unification live
in ``Namespace.U``.

Depth follows the usual recursive definition: a variable has depth 0 and
``f(t1,...,tn)`` has depth ``1 + max(depth(ti))`` with the max of an empty set
taken as 0, so constants have depth 1. The depth of an atom is the maximum
depth of its arguments.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Tuple
from selunify.errors import InvalidPositionError
import itertools
import threading
import logging
import enum

logger = logging.getLogger(__name__)


@enum.unique
class Namespace(enum.Enum):
    V = "V"
    U = "U"


_ids = itertools.count()
_idlock = threading.Lock()


@dataclass(frozen=True)
class Variable:
    id: int
    namespace: Namespace = field(default=Namespace.V, compare=False)
    hint: Optional[str] = field(default=None, compare=False)

    @property
    def is_u(self):
        return self.namespace is Namespace.U

    def __str__(self):
        if self.hint is not None:
            return self.hint
        return f"_{'U' if self.is_u else 'G'}{self.id}"


def fresh_var(namespace=Namespace.V, hint=None):
    """Return a new variable that is distinct from every variable created so far."""
    with _idlock:
        vid = next(_ids)
    return Variable(vid, namespace, hint)


# Placeholder leaf of term skeletons. Never returned by fresh_var.
HOLE = Variable(-1, Namespace.V, "_")


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int

    def __str__(self):
        return f"{self.name}/{self.arity}"


def _render(name, args):
    if not args:
        return name
    return f"{name}({','.join(str(a) for a in args)})"


@dataclass(frozen=True)
class Func:
    name: str
    args: Tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    @property
    def symbol(self):
        return Symbol(self.name, len(self.args))

    def __str__(self):
        return _render(self.name, self.args)


@dataclass(frozen=True)
class Atom:
    name: str
    args: Tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    @property
    def predicate(self):
        return Symbol(self.name, len(self.args))

    def __str__(self):
        return _render(self.name, self.args)


def depth(t):
    if isinstance(t, Variable):
        return 0
    inner = max((depth(a) for a in t.args), default=0)
    if isinstance(t, Atom):
        return inner
    return 1 + inner


def subterm_at(t, p):
    """Return the subterm of ``t`` at position ``p`` (a tuple of 1-based child indices)."""
    current = t
    for i in p:
        if isinstance(current, Variable) or not 1 <= i <= len(current.args):
            raise InvalidPositionError(f"position {list(p)} is not valid in {t}")
        current = current.args[i - 1]
    return current


def replace_at(t, p, s):
    if len(p) == 0:
        return s
    i = p[0]
    if isinstance(t, Variable) or not 1 <= i <= len(t.args):
        raise InvalidPositionError(f"position {list(p)} is not valid in {t}")
    args = list(t.args)
    args[i - 1] = replace_at(args[i - 1], p[1:], s)
    return type(t)(t.name, tuple(args))


def positions(t, _prefix=()):
    """Yield ``(position, subterm)`` pairs of ``t`` in pre-order, root first."""
    yield _prefix, t
    if not isinstance(t, Variable):
        for i, a in enumerate(t.args, start=1):
            yield from positions(a, _prefix + (i,))


def _occurrences(o):
    if isinstance(o, Variable):
        yield o
    elif isinstance(o, (Func, Atom)):
        for a in o.args:
            yield from _occurrences(a)
    else:
        for item in o:
            yield from _occurrences(item)


def variables(o):
    """Variables of a term, atom or collection in left-to-right first-occurrence order."""
    return list(dict.fromkeys(_occurrences(o)))


def vars_of(o):
    return set(_occurrences(o))


def occurs(v, t):
    return any(x == v for x in _occurrences(t))


def is_linear(o):
    seen = set()
    for v in _occurrences(o):
        if v in seen:
            return False
        seen.add(v)
    return True


def is_ground(o):
    return next(_occurrences(o), None) is None


def map_variables(o, mapping):
    """Replace every variable ``v`` of ``o`` found in ``mapping`` by ``mapping[v]``."""
    if isinstance(o, Variable):
        return mapping.get(o, o)
    if not o.args:
        return o
    return type(o)(o.name, tuple(map_variables(a, mapping) for a in o.args))


def variable_nesting(o):
    """Map each variable of ``o`` to the largest number of function symbols above it.

    Arguments of an atom sit at nesting 0, as does a bare term's root.
    """
    nesting = {}

    def walk(t, level):
        if isinstance(t, Variable):
            nesting[t] = max(nesting.get(t, 0), level)
            return
        inner = level if isinstance(t, Atom) else level + 1
        for a in t.args:
            walk(a, inner)

    walk(o, 0)
    return nesting


def canonical_key(o):
    """Hashable key that is equal for two objects iff they are variants.

    Variables are numbered by first occurrence and tagged with their namespace,
    so a renaming must map U variables to U variables.
    """
    numbering = {}

    def encode(x):
        if isinstance(x, Variable):
            if x not in numbering:
                numbering[x] = len(numbering)
            return ("v", x.namespace.value, numbering[x])
        if isinstance(x, Func):
            return ("f", x.name, tuple(encode(a) for a in x.args))
        if isinstance(x, Atom):
            return ("p", x.name, tuple(encode(a) for a in x.args))
        return ("s", tuple(encode(item) for item in x))

    return encode(o)


def variant_eq(a, b):
    return canonical_key(a) == canonical_key(b)


def rename_apart(atoms, fresh_from=Namespace.V):
    """Return variants of ``atoms`` that share no variable with each other or with anything else."""
    renamed = []
    for atom in atoms:
        mapping = {v: fresh_var(fresh_from, v.hint) for v in variables(atom)}
        renamed.append(map_variables(atom, mapping))
    return renamed


def symbols_of(o):
    """Function symbols of ``o`` (predicates excluded) in first-occurrence order."""
    found = {}

    def walk(t):
        if isinstance(t, Variable):
            return
        if isinstance(t, Func):
            found.setdefault(t.symbol, None)
        elif not isinstance(t, Atom):
            for item in t:
                walk(item)
            return
        for a in t.args:
            walk(a)

    walk(o)
    return list(found)


def order_signature(symbols):
    """Constants first, then increasing arity; first-occurrence order within an arity."""
    unique = list(dict.fromkeys(symbols))
    return tuple(sorted(unique, key=lambda s: s.arity))


def _unused_name(base, taken):
    if base not in taken:
        return base
    for n in itertools.count(1):
        if f"{base}{n}" not in taken:
            return f"{base}{n}"


def augment_signature(symbols):
    """Append one fresh constant and one fresh unary symbol to ``symbols``.

    Returns
    -------
    signature : tuple of Symbol
        The ordered input symbols followed by the two fresh ones
    extra : tuple of Symbol
        The fresh symbols alone
    """
    ordered = order_signature(symbols)
    taken = {s.name for s in ordered}
    constant = Symbol(_unused_name("c", taken), 0)
    taken.add(constant.name)
    unary = Symbol(_unused_name("h", taken), 1)
    extra = (constant, unary)
    return ordered + extra, extra


@lru_cache(maxsize=None)
def _layer(signature, d):
    if d == 0:
        return ((HOLE, 0),)
    below = [entry for k in range(d) for entry in _layer(signature, k)]
    out = []
    for sym in signature:
        if sym.arity == 0:
            if d == 1:
                out.append((Func(sym.name), 1))
            continue
        for children in itertools.product(below, repeat=sym.arity):
            if max(c[1] for c in children) == d - 1:
                out.append((Func(sym.name, tuple(c[0] for c in children)), d))
    return tuple(out)


def term_skeletons(signature, d):
    """All terms of depth exactly ``d`` over ``signature`` whose variable leaves are ``HOLE``.

    Layer 0 is ``HOLE`` alone. Within a layer, terms follow the signature order.
    """
    return [t for t, _ in _layer(tuple(signature), d)]


def count_holes(t):
    return sum(1 for v in _occurrences(t) if v == HOLE)


def fill_holes(t, fillers):
    """Replace the holes of skeleton ``t`` left to right by the terms drawn from ``fillers``."""
    if isinstance(t, Variable):
        return next(fillers) if t == HOLE else t
    if not t.args:
        return t
    return Func(t.name, tuple(fill_holes(a, fillers) for a in t.args))
