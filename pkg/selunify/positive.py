"""Positive unification: instances of an atom that keep unifying with a set of atoms.

``su_plus`` explores every don't-know choice, ``su_plus_lin`` follows the first
simple pair only and is meant for linear inputs, where its single result is the
maximal solution. ``check_maximal`` verifies maximality up to a depth bound.
"""
from dataclasses import dataclass
from typing import Tuple
from selunify.disagree import (
    WorkingSet,
    determined_binding,
    disagreement_pairs,
    is_simple,
)
from selunify.errors import PreconditionError
from selunify.subst import (
    Substitution,
    apply,
    compose,
    fresh_renaming,
    match,
    restrict,
    unifiable,
)
from selunify.terms import (
    Func,
    Namespace,
    Variable,
    augment_signature,
    canonical_key,
    depth,
    fill_holes,
    fresh_var,
    is_linear,
    positions,
    rename_apart,
    replace_at,
    symbols_of,
    term_skeletons,
    variables,
    vars_of,
)
import logging

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PositiveResult:
    theta: Substitution
    branch_trace: Tuple[Substitution, ...] = ()

    def __str__(self):
        return str(self.theta)


def _check_inputs(A, Hpos, linear=False):
    seen = set()
    for atom in (A, *Hpos):
        current = vars_of(atom)
        if current & seen:
            raise PreconditionError(f"{atom} shares variables with another input atom")
        seen |= current
        if linear and not is_linear(atom):
            raise PreconditionError(f"{atom} is not linear")
    for H in Hpos:
        if not unifiable(A, H):
            raise PreconditionError(f"{A} does not unify with {H}")


def _choices(B, branching, reverse):
    bindings = [determined_binding(d) for d in disagreement_pairs(B) if is_simple(d)]
    if not bindings:
        return []
    first = bindings[-1] if reverse else bindings[0]
    if not branching:
        return [first]
    var = first.domain()[0]
    options = []
    for binding in bindings:
        if binding.domain()[0] == var and binding not in options:
            options.append(binding)
    return options


def _generalize(B):
    measure = B.measure()
    while len(B) > 1:
        pair = disagreement_pairs(B)[0]
        B = B.replace(pair, fresh_var(Namespace.U, "U"))
        following = B.measure()
        if following >= measure:
            raise RuntimeError(f"Generalization of {B} did not make progress")
        measure = following
    return B[0]


def _finish(A, Hpos, B, trace):
    final = _generalize(B)
    matched = match(A, final)
    if matched is None:
        logger.debug(f"Discarding branch: {final} is not an instance of {A}")
        return None

    image = apply(matched, A)
    gamma = fresh_renaming([v for v in variables(image) if not v.is_u])
    theta = Substitution({x: apply(gamma, apply(matched, x)) for x in variables(A)})
    image = apply(theta, A)
    for H in Hpos:
        if not unifiable(image, H):
            logger.warning(f"Discarding branch: {image} does not unify with {H}")
            return None
    return PositiveResult(theta, tuple(trace))


def _all_u(A):
    return PositiveResult(fresh_renaming(variables(A), Namespace.U))


def _explore(A, Hpos, branching, reverse):
    results = []
    classes = set()
    visited = set()
    stack = [(WorkingSet((A, *Hpos)), ())]
    while stack:
        B, trace = stack.pop()
        key = canonical_key(B.atoms)
        if key in visited:
            continue
        visited.add(key)

        options = _choices(B, branching, reverse)
        if not options:
            result = _finish(A, Hpos, B, trace)
            if result is None:
                continue
            cls = canonical_key(apply(result.theta, A))
            if cls not in classes:
                classes.add(cls)
                results.append(result)
            continue
        for binding in reversed(options):
            stack.append((B.apply(binding), trace + (binding,)))

    logger.debug(f"Explored {len(visited)} working sets, {len(results)} result classes")
    if not results:
        logger.warning(f"No branch yields an instance of {A}; falling back to the all-U renaming")
        results.append(_all_u(A))
    return results


def su_plus(A, Hpos, reverse=False):
    """All positive-unification outcomes of ``A`` against ``Hpos``, one per variant class.

    Parameters
    ----------
    A : Atom
        The atom to instantiate
    Hpos : list of Atom
        Atoms that every instance must still unify with. They must be variable
        disjoint from ``A`` and from each other, and each must unify with ``A``.
    reverse : bool
        Resolve the don't-care choice with the last simple pair instead of the first

    Returns
    -------
    results : list of PositiveResult
        Results in discovery order
    """
    Hpos = tuple(Hpos)
    _check_inputs(A, Hpos)
    return _explore(A, Hpos, branching=True, reverse=reverse)


def su_plus_lin(A, Hpos):
    """The maximal positive solution of linear ``A`` and ``Hpos``."""
    Hpos = tuple(Hpos)
    _check_inputs(A, Hpos, linear=True)
    return _explore(A, Hpos, branching=False, reverse=False)[0]


def _positive_linear_member(sigma, A, Hpos):
    image = apply(sigma, A)
    return is_linear(image) and all(unifiable(image, H) for H in Hpos)


def _instances(signature, bound):
    for d in range(1, bound + 1):
        for skeleton in term_skeletons(signature, d):
            yield fill_holes(skeleton, iter(fresh_var, None))


def check_maximal(theta, A, Hpos, bound=None, signature=None):
    """Bounded check that ``theta`` is a maximal positive linear solution.

    Parameters
    ----------
    theta : Substitution
        Candidate, with U variables marking positions that must stay unbound
    A : Atom
        Linear atom
    Hpos : list of Atom
        Linear atoms
    bound : int
        Depth of the terms tried as bindings and replacements. Defaults to one
        more than the deepest atom of ``Hpos``.
    signature : list of Symbol
        Alphabet of those terms. Defaults to the symbols of the inputs plus one
        fresh constant and one fresh unary symbol.
    """
    Hpos = rename_apart(Hpos)
    if bound is None:
        bound = max((depth(H) for H in Hpos), default=0) + 1
    if signature is None:
        signature, _ = augment_signature(symbols_of([A, *Hpos, *theta.values()]))
    signature = tuple(signature)
    domain = variables(A)

    def member(sigma):
        return _positive_linear_member(restrict(sigma, domain), A, Hpos)

    if not member(theta):
        logger.debug(f"{theta} is not a positive linear solution")
        return False

    image = apply(theta, A)
    for v in variables(image):
        for t in _instances(signature, bound):
            bound_v = member(compose(theta, Substitution({v: t})))
            if not v.is_u and not bound_v:
                logger.debug(f"Binding {v}/{t} leaves the solution set")
                return False
            if v.is_u and bound_v:
                logger.debug(f"Binding {v}/{t} keeps a solution")
                return False

    for x in domain:
        t = theta.get(x, x)
        for pos, sub in positions(t):
            if isinstance(sub, Variable):
                continue
            for sym in signature:
                if sym == sub.symbol:
                    continue
                other = Func(sym.name, tuple(fresh_var() for _ in range(sym.arity)))
                mutated = dict(theta.items())
                mutated[x] = replace_at(t, pos, other)
                if member(Substitution(mutated)):
                    logger.debug(f"Replacing {sub} in {x}/{t} by {other} keeps a solution")
                    return False
    return True
