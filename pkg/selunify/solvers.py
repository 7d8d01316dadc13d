from abc import ABC, abstractmethod
from protocolinterface import ProtocolInterface, val
from selunify.config import loadConfig
from selunify.selective import Algorithm, EnumeratorConfig, solve, solve_all
import logging

logger = logging.getLogger(__name__)


class Solver(ABC, ProtocolInterface):
    """Base class of the solver front-ends.

    Parameters
    ----------
    max_depth : int, default=None
        Depth bound of the search. If None, the bound of the problem file or the default horizon is used.
    depth_slack : int, default=0
        Extra depth added to the default horizon
    linear_only : bool, default=False
        Only accept linear solutions
    seed : int, default=None
        Shuffle the enumeration order within each depth layer with this seed
    """

    _section = None

    def __init__(self, _configfile=None, _profile=None, _logger=True):
        super().__init__()
        self._arg(
            "max_depth",
            "int",
            "Depth bound of the search. If None, the bound of the problem file or the default "
            "horizon is used.",
            None,
            val.Number(int, "0POS"),
        )
        self._arg(
            "depth_slack",
            "int",
            "Extra depth added to the default horizon",
            0,
            val.Number(int, "0POS"),
        )
        self._arg(
            "linear_only",
            "bool",
            "Only accept linear solutions",
            False,
            val.Boolean(),
        )
        self._arg(
            "seed",
            "int",
            "Shuffle the enumeration order within each depth layer with this seed",
            None,
            val.Number(int, "0POS"),
        )
        loadConfig(self, self._section, _configfile, _profile, _logger)

    @property
    @abstractmethod
    def algorithm(self):
        pass

    def bound(self, problem):
        if self.max_depth is not None:
            return self.max_depth
        if problem.depth is not None:
            return problem.depth
        return problem.default_bound() + self.depth_slack

    def enumerator(self, problem):
        return EnumeratorConfig(
            max_depth=self.bound(problem),
            linear_only=self.linear_only,
            priority_non_u=self.algorithm is Algorithm.SU_STAR,
            seed=self.seed,
        )

    def solve(self, problem):
        """First solution of ``problem``, or a ``Failure``."""
        cfg = self.enumerator(problem)
        logger.debug(f"Solving with {self.algorithm.describe()} up to depth {cfg.max_depth}")
        return solve(problem, self.algorithm, cfg)

    def solve_all(self, problem):
        return solve_all(problem, self.algorithm, self.enumerator(problem))


class SUSolver(Solver):
    _section = "su"

    @property
    def algorithm(self):
        return Algorithm.SU


class SUStarSolver(Solver):
    _section = "su_star"

    @property
    def algorithm(self):
        return Algorithm.SU_STAR


class SULinSolver(Solver):
    """Solver for problems whose atom and positive atoms are linear."""

    _section = "su_lin"

    @property
    def algorithm(self):
        return Algorithm.SU_LIN


class OracleSolver(Solver):
    """Brute-force reference solver. Exponential in the depth bound."""

    _section = "oracle"

    @property
    def algorithm(self):
        return Algorithm.ORACLE


_solvers = {
    Algorithm.SU: SUSolver,
    Algorithm.SU_STAR: SUStarSolver,
    Algorithm.SU_LIN: SULinSolver,
    Algorithm.ORACLE: OracleSolver,
}


def get_solver(algorithm, _configfile=None, _profile=None, _logger=True):
    return _solvers[Algorithm(algorithm)](_configfile, _profile, _logger)


def default_algorithm(problem):
    """su-lin for linear problems, su-star otherwise."""
    algorithm = Algorithm.SU_LIN if problem.is_linear() else Algorithm.SU_STAR
    logger.info(f"No algorithm given, using {algorithm}")
    return algorithm
