"""Command-line front end.

``selunify solve FILE`` prints the first solution of a problem file or a fail
verdict and exits with 0 (solved), 1 (fail) or 2 (input error). ``diff``
compares the algorithms on random problems or on one file, ``regress`` runs
the bundled example problems and ``cases`` lists the feasible clause subsets
of a case file.
"""
from argparse import ArgumentParser
from selunify.cases import feasible_cases
from selunify.config import template_env
from selunify.difftest import DiffRunner
from selunify.errors import PreconditionError, SelUnifyError
from selunify.format import parse_heads, parse_problem, print_solution, solution_to_dict
from selunify.home import home
from selunify.selective import Algorithm, Failure, SolveStatus
from selunify.solvers import default_algorithm, get_solver
import selunify
import logging
import json
import glob
import yaml
import sys
import os

logger = logging.getLogger(__name__)

_algorithms = [str(a) for a in Algorithm]


def get_parser():
    parser = ArgumentParser(
        prog="selunify",
        description="Selective unification: find instances of an atom that unify with some atoms and not with others",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {selunify.__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug messages")
    parser.add_argument("--config", default=None, help="YAML file with solver and diff profiles")
    parser.add_argument("--profile", default=None, help="Profile of the YAML file to apply")
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve = subparsers.add_parser("solve", help="Solve a problem file")
    solve.add_argument("file", help="Problem file")
    solve.add_argument(
        "--algorithm",
        choices=_algorithms,
        default=None,
        help="Solver to use. Defaults to su-lin for linear problems and su-star otherwise.",
    )
    solve.add_argument("--max-depth", type=int, default=None, help="Depth bound of the search")
    solve.add_argument("--all", action="store_true", help="Print every solution class within the bound")
    solve.add_argument("--linear-only", action="store_true", help="Only accept linear solutions")
    solve.add_argument("--seed", type=int, default=None, help="Shuffle the enumeration order with this seed")
    solve.add_argument("--json", action="store_true", help="Write the result as JSON")
    solve.set_defaults(func=run_solve)

    diff = subparsers.add_parser("diff", help="Compare the algorithms on random problems or on one file")
    diff.add_argument("file", nargs="?", default=None, help="Problem file. Random problems are used without it.")
    diff.add_argument("--algorithms", nargs="*", choices=_algorithms, default=None, help="Algorithms to compare")
    diff.add_argument("--trials", type=int, default=None, help="Number of random problems")
    diff.add_argument("--seed", type=int, default=None, help="Seed of the problem generator")
    diff.add_argument("--nonlinear", action="store_true", help="Also generate non-linear problems")
    diff.add_argument("--workers", type=int, default=None, help="Number of worker threads")
    diff.set_defaults(func=run_diff)

    regress = subparsers.add_parser("regress", help="Solve the bundled example problems")
    regress.add_argument("--json", action="store_true", help="Write the results as JSON")
    regress.set_defaults(func=run_regress)

    cases = subparsers.add_parser("cases", help="List the feasible subsets of clause heads of a case file")
    cases.add_argument("file", help="Case file")
    cases.add_argument("--algorithm", choices=_algorithms, default=None, help="Solver to use")
    cases.add_argument("--json", action="store_true", help="Write the results as JSON")
    cases.set_defaults(func=run_cases)
    return parser


def _configfile(args):
    if args.config is None and args.profile is not None and not os.getenv("SELUNIFY_CONFIG"):
        return os.path.join(home(), "config_solver.yml")
    return args.config


def _read(path):
    with open(path, "r") as f:
        return f.read()


def run_solve(args):
    problem = parse_problem(_read(args.file))
    algorithm = Algorithm(args.algorithm) if args.algorithm else default_algorithm(problem)
    solver = get_solver(algorithm, _configfile(args), args.profile)
    if args.max_depth is not None:
        solver.max_depth = args.max_depth
    if args.linear_only:
        solver.linear_only = True
    if args.seed is not None:
        solver.seed = args.seed

    if not args.all:
        result = solver.solve(problem)
        print(print_solution(result, structured=args.json))
        return result.status

    found = solver.solve_all(problem)
    if not found:
        bound = solver.bound(problem)
        result = Failure(algorithm, bound, problem.conclusive(bound))
        print(print_solution(result, structured=args.json))
        return result.status
    if args.json:
        print(json.dumps([solution_to_dict(s) for s in found], sort_keys=True))
    else:
        for s in found:
            print(print_solution(s))
    return SolveStatus.SOLVED


def run_diff(args):
    runner = DiffRunner(_configfile(args), args.profile)
    if args.algorithms:
        runner.algorithms = args.algorithms
    if args.trials is not None:
        runner.trials = args.trials
    if args.seed is not None:
        runner.seed = args.seed
    if args.nonlinear:
        runner.linear = False
    if args.workers is not None:
        runner.workers = args.workers

    if args.file is not None:
        report = runner.compare(parse_problem(_read(args.file)))
    else:
        report = runner.run()
    sys.stdout.write(report.render())
    return SolveStatus.SOLVED if report.ok else SolveStatus.FAIL


def _status_name(status):
    return status.name.lower().replace("_", "-")


def run_regress(args):
    problems = home(dataDir="problems")
    with open(os.path.join(problems, "expected.yml"), "r") as f:
        expected = yaml.load(f, Loader=yaml.FullLoader)

    rows = []
    for path in sorted(glob.glob(os.path.join(problems, "*.sun"))):
        name = os.path.basename(path)
        if name not in expected:
            logger.warning(f"No expected results for {name}")
            continue
        problem = parse_problem(_read(path))
        for algorithm in _algorithms:
            if algorithm not in expected[name]:
                continue
            try:
                result = get_solver(algorithm, _logger=False).solve(problem)
                status, output = result.status, str(result)
            except PreconditionError as e:
                status, output = SolveStatus.INPUT_ERROR, str(e)
            rows.append(
                {
                    "file": name,
                    "algorithm": algorithm,
                    "expected": expected[name][algorithm],
                    "status": _status_name(status),
                    "output": output,
                    "ok": expected[name][algorithm] == _status_name(status),
                }
            )

    if args.json:
        print(json.dumps(rows, sort_keys=True))
    else:
        sys.stdout.write(template_env.get_template("regress_report.txt.j2").render(rows=rows))
    return SolveStatus.SOLVED if all(r["ok"] for r in rows) else SolveStatus.FAIL


def run_cases(args):
    atom, heads, ground, signature, depth = parse_heads(_read(args.file))
    algorithm = Algorithm(args.algorithm) if args.algorithm else None
    cases, unreachable = feasible_cases(atom, heads, ground, algorithm, signature, depth)
    if args.json:
        out = {
            "unreachable": unreachable,
            "cases": [
                {"labels": list(c.labels), "feasible": c.feasible, "result": solution_to_dict(c.verdict)}
                for c in cases
            ],
        }
        print(json.dumps(out, sort_keys=True))
    else:
        sys.stdout.write(
            template_env.get_template("cases_report.txt.j2").render(cases=cases, unreachable=unreachable)
        )
    return SolveStatus.SOLVED


def main(argv=None):
    args = get_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger("selunify").setLevel(logging.DEBUG)
    try:
        return int(args.func(args))
    except (SelUnifyError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return int(SolveStatus.INPUT_ERROR)


if __name__ == "__main__":
    sys.exit(main())
