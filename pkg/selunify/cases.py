"""Which subsets of clause heads can a call select?

Given the selected atom of a goal and the labelled heads of the clauses of its
predicate, a subset ``L`` of the heads is feasible when some instance of the
atom unifies with every head in ``L`` and with no other head, while keeping
the ground variables ground. Each subset is a selective unification problem.
"""
from dataclasses import dataclass
from typing import Tuple
from selunify.selective import Problem
from selunify.solvers import default_algorithm, get_solver
from selunify.subst import unifiable
from selunify.terms import rename_apart
import itertools
import logging

logger = logging.getLogger(__name__)


@dataclass
class Case:
    labels: Tuple[str, ...]
    verdict: object

    @property
    def feasible(self):
        return bool(self.verdict)

    def __str__(self):
        return "{" + ", ".join(self.labels) + "}: " + str(self.verdict)


def feasible_cases(atom, heads, ground=(), algorithm=None, signature=None, depth=None, solver=None):
    """Solve the problem of every subset of the heads that unify with ``atom``.

    Parameters
    ----------
    atom : Atom
        The selected atom
    heads : list of (str, Atom)
        Labelled clause heads
    ground : list of Variable
        Variables of ``atom`` that every instance must make ground
    algorithm : Algorithm
        Solver to use. Each subset picks su-lin or su-star when None.
    signature : list of Symbol
        Extra symbols for the enumerators
    depth : int
        Depth bound of every subset problem
    solver : Solver
        Configured solver, overriding ``algorithm``

    Returns
    -------
    cases : list of Case
        One case per subset of the reachable labels, by increasing size
    unreachable : list of str
        Labels whose head does not unify with ``atom``
    """
    renamed = rename_apart([h for _, h in heads])
    labelled = [(label, h) for (label, _), h in zip(heads, renamed)]
    reachable = [(label, h) for label, h in labelled if unifiable(atom, h)]
    unreachable = [label for label, h in labelled if not unifiable(atom, h)]
    if unreachable:
        logger.info(f"Heads {', '.join(unreachable)} never unify with {atom}")

    cases = []
    for size in range(len(reachable) + 1):
        for chosen in itertools.combinations(range(len(reachable)), size):
            hpos = [reachable[i][1] for i in chosen]
            hneg = [h for i, (_, h) in enumerate(reachable) if i not in chosen]
            problem = Problem(atom, hpos, hneg, ground, signature=signature, depth=depth)
            current = solver
            if current is None:
                current = get_solver(algorithm or default_algorithm(problem), _logger=False)
            labels = tuple(reachable[i][0] for i in chosen)
            verdict = current.solve(problem)
            logger.debug(f"Case {labels}: {verdict}")
            cases.append(Case(labels, verdict))
    return cases, unreachable
