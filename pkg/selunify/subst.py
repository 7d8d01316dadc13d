"""Substitutions, their algebra and syntactic unification.

``mgu`` returns ``None`` when the equations have no unifier. The occurs check is
always on.
"""
from collections import deque
from collections.abc import Mapping
from selunify.errors import PreconditionError
from selunify.terms import (
    Atom,
    Func,
    Variable,
    fresh_var,
    is_linear,
    map_variables,
    occurs,
    variables,
)
import logging

logger = logging.getLogger(__name__)


class Substitution(Mapping):
    """A finite map from variables to terms without identity bindings.

    Bindings keep their insertion order, which is also the display order.

    Examples
    --------
    >>> str(Substitution())
    'id'
    """

    __slots__ = ("_bindings",)

    def __init__(self, bindings=()):
        items = bindings.items() if isinstance(bindings, Mapping) else bindings
        clean = {}
        for var, term in items:
            if not isinstance(var, Variable):
                raise TypeError(f"Cannot bind non-variable {var}")
            if term != var:
                clean[var] = term
        self._bindings = clean

    def __getitem__(self, var):
        return self._bindings[var]

    def __iter__(self):
        return iter(self._bindings)

    def __len__(self):
        return len(self._bindings)

    def __hash__(self):
        return hash(frozenset(self._bindings.items()))

    def domain(self):
        return list(self._bindings)

    def range_vars(self):
        return variables(list(self._bindings.values()))

    def is_linear(self):
        """True iff every range term is linear and no two range terms share a variable."""
        return is_linear(list(self._bindings.values()))

    def __str__(self):
        if not self._bindings:
            return "id"
        return "{" + ", ".join(f"{v}/{t}" for v, t in self._bindings.items()) + "}"

    def __repr__(self):
        return f"Substitution({self})"


IDENTITY = Substitution()


class EquationSet:
    """A conjunction of term equations ``lhs = rhs``."""

    def __init__(self, equations=()):
        self.equations = tuple((lhs, rhs) for lhs, rhs in equations)

    def __iter__(self):
        return iter(self.equations)

    def __len__(self):
        return len(self.equations)

    def __and__(self, other):
        return EquationSet(self.equations + tuple(other))

    def __eq__(self, other):
        return isinstance(other, EquationSet) and self.equations == other.equations

    def __hash__(self):
        return hash(self.equations)

    def __str__(self):
        if not self.equations:
            return "true"
        return " ∧ ".join(f"{lhs} = {rhs}" for lhs, rhs in self.equations)


def apply(sigma, o):
    if not sigma:
        return o
    return map_variables(o, sigma)


def apply_all(sigma, objects):
    return [apply(sigma, o) for o in objects]


def compose(sigma, theta):
    """Return the substitution ``x -> (x sigma) theta``."""
    bindings = {v: apply(theta, t) for v, t in sigma.items()}
    for v, t in theta.items():
        if v not in sigma:
            bindings[v] = t
    return Substitution(bindings)


def restrict(theta, variables_):
    keep = set(variables_)
    return Substitution({v: t for v, t in theta.items() if v in keep})


def is_idempotent(theta):
    return not (set(theta.domain()) & set(theta.range_vars()))


def equational_repr(theta):
    return EquationSet(theta.items())


def _compatible(s, t):
    if isinstance(s, Func) and isinstance(t, Func):
        return s.name == t.name and len(s.args) == len(t.args)
    if isinstance(s, Atom) and isinstance(t, Atom):
        return s.name == t.name and len(s.args) == len(t.args)
    return False


def mgu(eqs):
    """Most general unifier of an equation set, or None.

    Equations are solved left to right, decomposing depth-first, so the result
    is deterministic for a given input order. The returned substitution is
    idempotent.
    """
    solved = {}
    work = deque(eqs)
    while work:
        s, t = work.popleft()
        s = map_variables(s, solved)
        t = map_variables(t, solved)
        if s == t:
            continue
        if isinstance(t, Variable) and not isinstance(s, Variable):
            s, t = t, s
        if isinstance(s, Variable):
            if occurs(s, t):
                return None
            step = {s: t}
            solved = {v: map_variables(term, step) for v, term in solved.items()}
            solved[s] = t
            continue
        if not _compatible(s, t):
            return None
        work.extendleft(reversed(list(zip(s.args, t.args))))
    return Substitution(solved)


def unifiable(a, b):
    return mgu([(a, b)]) is not None


def parallel_compose(theta1, theta2):
    """Parallel composition: the mgu of both equational representations, or None."""
    for theta in (theta1, theta2):
        if not is_idempotent(theta):
            raise PreconditionError(f"parallel composition needs idempotent substitutions, got {theta}")
    return mgu(equational_repr(theta1) & equational_repr(theta2))


def match(pattern, target):
    """One-sided matching: a substitution ``m`` with ``apply(m, pattern) == target``, or None.

    Variables of ``target`` are treated as constants.
    """
    bindings = {}
    work = [(pattern, target)]
    while work:
        p, t = work.pop()
        if isinstance(p, Variable):
            if p in bindings:
                if bindings[p] != t:
                    return None
            else:
                bindings[p] = t
            continue
        if isinstance(t, Variable) or not _compatible(p, t):
            return None
        work.extend(zip(p.args, t.args))
    return Substitution(bindings)


def fresh_renaming(vars_, namespace=None):
    """Bijective renaming of ``vars_`` to fresh variables, keeping each namespace unless one is given."""
    return Substitution(
        {v: fresh_var(namespace or v.namespace, v.hint) for v in vars_}
    )
