"""Depth-bounded generate-and-test reference solver.

The candidate space holds the substitutions on the variables of the problem
atom whose instance of the atom is at most ``depth_bound`` deep, one per
variant class. Candidates are emitted by increasing depth, so the first
solution found is also a shallowest one.
"""
from selunify.selective import (
    Algorithm,
    EnumeratorConfig,
    EtaStream,
    Failure,
    SolveStats,
    Solution,
    canonical_solution,
    check_solution,
)
from selunify.terms import depth, variable_nesting, variables
import logging

logger = logging.getLogger(__name__)


class CandidateSpace:
    """Iterable over the depth-bounded substitutions of a problem atom.

    Parameters
    ----------
    problem : Problem
        The problem whose atom is instantiated
    depth_bound : int
        Largest depth of an instance of the atom
    linear_only : bool
        Only emit substitutions whose range terms are linear and pairwise variable disjoint
    prune_ground : bool
        Skip substitutions that leave a ground-required variable non-ground
    seed : int
        Shuffle the order within each depth layer
    """

    def __init__(self, problem, depth_bound, linear_only=False, prune_ground=False, seed=None):
        self.problem = problem
        self.depth_bound = depth_bound
        self.emitted = 0
        atom = problem.atom
        domain = variables(atom)
        nesting = variable_nesting(atom)
        cfg = EnumeratorConfig(max_depth=depth_bound, linear_only=linear_only, seed=seed)
        caps = {v: max(0, depth_bound - nesting[v]) for v in domain}
        ground = problem.ground if prune_ground else ()
        self._stream = EtaStream(domain, cfg, problem, ground=ground, caps=caps)
        self._empty = depth(atom) > depth_bound

    def __iter__(self):
        if self._empty:
            logger.info(f"{self.problem.atom} is deeper than the bound {self.depth_bound}")
            return
        for theta in self._stream:
            self.emitted += 1
            yield theta
        logger.info(f"Enumerated {self.emitted} candidates up to depth {self.depth_bound}")

    def __len__(self):
        if self._empty:
            return 0
        return sum(1 for _ in CandidateSpace(
            self.problem,
            self.depth_bound,
            self._stream.cfg.linear_only,
            bool(self._stream.ground),
            self._stream.cfg.seed,
        ))


def default_bound(problem):
    return problem.default_bound()


def enumerate_theta(problem, depth_bound):
    """Every substitution class of the candidate space, ground-required variables included unpruned."""
    return CandidateSpace(problem, depth_bound)


def naive_solve(problem, depth_bound=None, linear_only=False, seed=None):
    """First candidate that solves ``problem``, or a ``Failure`` for the bound."""
    bound = problem.bound() if depth_bound is None else depth_bound
    stats = SolveStats(branches=1)
    for theta in CandidateSpace(problem, bound, linear_only=linear_only, prune_ground=True, seed=seed):
        stats.candidates_tested += 1
        if check_solution(theta, problem):
            return Solution(canonical_solution(theta, problem.atom), Algorithm.ORACLE, None, bound, stats)
    return Failure(Algorithm.ORACLE, bound, problem.conclusive(bound), stats)


def naive_solve_all(problem, depth_bound=None, linear_only=False, seed=None):
    bound = problem.bound() if depth_bound is None else depth_bound
    stats = SolveStats(branches=1)
    found = []
    for theta in CandidateSpace(problem, bound, linear_only=linear_only, prune_ground=True, seed=seed):
        stats.candidates_tested += 1
        if check_solution(theta, problem):
            found.append(
                Solution(canonical_solution(theta, problem.atom), Algorithm.ORACLE, None, bound, stats)
            )
    return found
