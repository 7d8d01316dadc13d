"""Differential testing of the solvers against each other and against the oracle.

On random problems every trial checks that:

* every solution passes ``check_solution`` and su-lin solutions are linear,
* on linear problems su-lin succeeds iff the oracle finds a linear solution,
* su succeeding implies su-star succeeding.

It also compares the positive results under both don't-care orders. Those
mismatches are reported but do not fail the run.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional
from protocolinterface import ProtocolInterface, val
from selunify.config import loadConfig, template_env
from selunify.errors import PreconditionError
from selunify.format import print_problem
from selunify.generate import ProblemGenerator
from selunify.oracle import naive_solve
from selunify.positive import su_plus
from selunify.selective import Algorithm, check_solution
from selunify.solvers import get_solver
from selunify.subst import apply
from selunify.terms import canonical_key
from selunify.util import _getCPUcount
import threading
import queue
import logging

logger = logging.getLogger(__name__)


@dataclass
class TrialResult:
    index: int
    problem: str
    verdicts: Dict[str, str] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)
    agree: Optional[bool] = None
    order_agree: Optional[bool] = None

    @property
    def ok(self):
        return not self.violations

    def row(self, algorithms):
        cells = [f"{self.index:4d}"]
        cells += [f"{a}: {self.verdicts.get(a, '-')}" for a in algorithms]
        if self.agree is not None:
            cells.append("agree" if self.agree else "DISAGREE")
        if self.order_agree is False:
            cells.append("order differs")
        if self.violations:
            cells.append(f"VIOLATION {', '.join(self.violations)} in {self.problem}")
        return " | ".join(cells)


@dataclass
class DiffReport:
    algorithms: List[str]
    trials: List[TrialResult]
    seed: int

    @property
    def unsound(self):
        return [t for t in self.trials if any(v.startswith("unsound") for v in t.violations)]

    @property
    def compared(self):
        return [t for t in self.trials if t.agree is not None]

    @property
    def agreeing(self):
        return [t for t in self.compared if t.agree]

    @property
    def inclusion_failures(self):
        return [t for t in self.trials if "inclusion" in t.violations]

    @property
    def order_mismatches(self):
        return [t for t in self.trials if t.order_agree is False]

    @property
    def ok(self):
        return all(t.ok for t in self.trials)

    def render(self):
        return template_env.get_template("diff_report.txt.j2").render(report=self)


@dataclass
class Miss:
    missing_in: str
    found_by: str
    solution: str


@dataclass
class FileReport:
    problem: str
    classes: Dict[str, List[str]]
    misses: List[Miss]
    violations: List[str] = field(default_factory=list)
    agree: Optional[bool] = None

    @property
    def ok(self):
        return not self.violations

    def render(self):
        return template_env.get_template("file_diff_report.txt.j2").render(report=self)


class DiffRunner(ProtocolInterface):
    """Run the solvers side by side.

    Parameters
    ----------
    algorithms : list, default=('su', 'su-star', 'su-lin', 'oracle')
        Algorithms to compare
    trials : int, default=200
        Number of random problems
    seed : int, default=0
        Seed of the problem generator
    linear : bool, default=True
        Generate problems whose atom and positive atoms are linear
    max_arity : int, default=2
        Largest arity of a generated function symbol
    max_term_depth : int, default=2
        Largest depth of a generated positive or negative atom
    workers : int, default=psutil.cpu_count()
        Number of worker threads

    Examples
    --------
    >>> runner = DiffRunner()
    >>> runner.trials = 10
    >>> report = runner.run()
    >>> report.ok
    True
    """

    def __init__(self, _configfile=None, _profile=None, _logger=True):
        super().__init__()
        self._arg(
            "algorithms",
            "list",
            "Algorithms to compare",
            ("su", "su-star", "su-lin", "oracle"),
            val.String(),
            nargs="*",
        )
        self._arg("trials", "int", "Number of random problems", 200, val.Number(int, "POS"))
        self._arg("seed", "int", "Seed of the problem generator", 0, val.Number(int, "0POS"))
        self._arg(
            "linear",
            "bool",
            "Generate problems whose atom and positive atoms are linear",
            True,
            val.Boolean(),
        )
        self._arg(
            "max_arity",
            "int",
            "Largest arity of a generated function symbol",
            2,
            val.Number(int, "POS"),
        )
        self._arg(
            "max_term_depth",
            "int",
            "Largest depth of a generated positive or negative atom",
            2,
            val.Number(int, "POS"),
        )
        self._arg(
            "workers",
            "int",
            "Number of worker threads",
            _getCPUcount(),
            val.Number(int, "POS"),
        )
        self._configfile = _configfile
        self._profile = _profile
        loadConfig(self, "diff", _configfile, _profile, _logger)

    def _algorithms(self):
        return [Algorithm(a) for a in self.algorithms]

    def _solver(self, algorithm):
        return get_solver(algorithm, self._configfile, self._profile, _logger=False)

    def trial(self, index):
        generator = ProblemGenerator(
            f"{self.seed}:{index}",
            linear=self.linear,
            max_arity=self.max_arity,
            max_term_depth=self.max_term_depth,
        )
        problem = generator.problem()
        result = TrialResult(index, print_problem(problem).strip().replace("\n", " "))

        verdicts = {}
        for algorithm in self._algorithms():
            if algorithm is Algorithm.SU_LIN and not problem.is_linear():
                result.verdicts[str(algorithm)] = "n/a"
                continue
            try:
                verdict = self._solver(algorithm).solve(problem)
            except PreconditionError as e:
                result.verdicts[str(algorithm)] = "n/a"
                logger.debug(f"Trial {index}: {algorithm} not applicable: {e}")
                continue
            verdicts[algorithm] = verdict
            result.verdicts[str(algorithm)] = str(verdict)
            if verdict and not check_solution(verdict.sigma, problem):
                result.violations.append(f"unsound {algorithm}")
            if verdict and algorithm is Algorithm.SU_LIN and not verdict.sigma.is_linear():
                result.violations.append("unsound su-lin (non-linear)")

        if Algorithm.SU_LIN in verdicts and Algorithm.ORACLE in self._algorithms():
            bound = verdicts[Algorithm.SU_LIN].depth_bound
            reference = naive_solve(problem, bound, linear_only=True)
            result.agree = bool(reference) == bool(verdicts[Algorithm.SU_LIN])
            if not result.agree:
                result.violations.append("disagreement")

        if verdicts.get(Algorithm.SU) and Algorithm.SU_STAR in verdicts:
            if not verdicts[Algorithm.SU_STAR]:
                result.violations.append("inclusion")

        forward = {canonical_key(apply(r.theta, problem.atom)) for r in su_plus(problem.atom, problem.hpos)}
        backward = {
            canonical_key(apply(r.theta, problem.atom))
            for r in su_plus(problem.atom, problem.hpos, reverse=True)
        }
        result.order_agree = forward == backward
        return result

    def run(self):
        """Run ``trials`` random trials on ``workers`` threads and collect them in index order."""
        jobs = queue.Queue()
        results = {}
        lock = threading.Lock()
        for i in range(self.trials):
            jobs.put(i)

        def worker():
            while True:
                try:
                    index = jobs.get_nowait()
                except queue.Empty:
                    return
                try:
                    outcome = self.trial(index)
                except Exception as e:
                    logger.error(f"Error in trial {index}. {e}")
                    outcome = TrialResult(index, "?", violations=[f"error {e}"])
                with lock:
                    results[index] = outcome
                jobs.task_done()

        threads = []
        for _ in range(min(self.workers, self.trials)):
            t = threading.Thread(target=worker)
            t.daemon = True
            t.start()
            threads.append(t)
        for t in threads:
            t.join()

        logger.info(f"Completed {len(results)} trials")
        return DiffReport([str(a) for a in self._algorithms()], [results[i] for i in sorted(results)], self.seed)

    def compare(self, problem):
        """Solution classes of each algorithm on ``problem`` and the classes each one misses.

        Every solution is checked against the problem. On linear problems the
        satisfiability verdict of su-lin is compared with a linear-only oracle
        run at the same bound. Misses alone do not make the report fail.
        """
        found = {}
        violations = []
        for algorithm in self._algorithms():
            try:
                solutions = self._solver(algorithm).solve_all(problem)
            except PreconditionError as e:
                logger.info(f"Skipping {algorithm}: {e}")
                continue
            for s in solutions:
                if not check_solution(s.sigma, problem):
                    violations.append(f"unsound {algorithm}: {s}")
                if algorithm is Algorithm.SU_LIN and not s.sigma.is_linear():
                    violations.append(f"unsound su-lin (non-linear): {s}")
            found[str(algorithm)] = {
                canonical_key(apply(s.sigma, problem.atom)): str(s) for s in solutions
            }

        agree = None
        if str(Algorithm.SU_LIN) in found and Algorithm.ORACLE in self._algorithms():
            bound = self._solver(Algorithm.SU_LIN).bound(problem)
            reference = naive_solve(problem, bound, linear_only=True)
            agree = bool(reference) == bool(found[str(Algorithm.SU_LIN)])
            if not agree:
                violations.append(f"disagreement: su-lin and the linear oracle differ at depth {bound}")

        misses = []
        for found_by, by_key in found.items():
            for missing_in, other in found.items():
                if missing_in in (found_by, str(Algorithm.ORACLE)):
                    continue
                for key, text in by_key.items():
                    if key not in other:
                        misses.append(Miss(missing_in, found_by, text))
        classes = {name: list(by_key.values()) for name, by_key in found.items()}
        return FileReport(print_problem(problem), classes, misses, violations, agree)
