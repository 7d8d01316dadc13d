"""Selective unification: instances of an atom that unify with some atoms and not with others.

A problem is a tuple of an atom ``A``, atoms ``hpos`` that every instance must
unify with, atoms ``hneg`` that no instance may unify with, and variables of
``A`` that every instance must make ground. Solutions are searched for up to a
depth bound, so a ``Failure`` is a verdict about that bound. It is conclusive
when the atom and the positive atoms are linear, the bound reaches the default
horizon and the signature carries the fresh augmentation symbols; in that case
no linear solution exists at all.
"""
from collections import Counter
from protocolinterface import ProtocolInterface, val
from selunify.errors import PreconditionError
from selunify.positive import su_plus, su_plus_lin
from selunify.subst import (
    Substitution,
    apply,
    compose,
    restrict,
    unifiable,
)
from selunify.terms import (
    HOLE,
    augment_signature,
    canonical_key,
    count_holes,
    depth,
    fill_holes,
    fresh_var,
    is_ground,
    is_linear,
    order_signature,
    rename_apart,
    symbols_of,
    term_skeletons,
    variable_nesting,
    variables,
    vars_of,
)
from functools import lru_cache
import itertools
import logging
import random
import enum

logger = logging.getLogger(__name__)


@enum.unique
class SolveStatus(enum.IntEnum):
    """Outcome codes, also used as process exit codes"""

    SOLVED = 0
    FAIL = 1
    INPUT_ERROR = 2

    def describe(self):
        codes = {0: "Solved", 1: "Fail", 2: "Input error"}
        return codes[self.value]

    def __str__(self):
        return self.describe()


@enum.unique
class Algorithm(enum.Enum):
    SU = "su"
    SU_STAR = "su-star"
    SU_LIN = "su-lin"
    ORACLE = "oracle"

    def describe(self):
        names = {
            "su": "selective unification",
            "su-star": "extended selective unification",
            "su-lin": "linear selective unification",
            "oracle": "depth-bounded generate and test",
        }
        return names[self.value]

    def __str__(self):
        return self.value


class Problem:
    """A selective unification problem.

    Parameters
    ----------
    atom : Atom
        The atom to instantiate
    hpos : list of Atom
        Atoms every instance must unify with
    hneg : list of Atom
        Atoms no instance may unify with
    ground : list of Variable
        Variables of ``atom`` that every instance must make ground
    signature : list of Symbol
        Symbols available to the enumerators in addition to the ones occurring in the atoms
    augment : bool
        Add one fresh constant and one fresh unary symbol to the signature
    depth : int
        Depth bound to use instead of the default horizon

    Examples
    --------
    >>> from selunify.format import parse_problem
    >>> problem = parse_problem("atom p(N). pos p(s(a)). pos p(s(W)). neg p(f(X)). ground N.")
    >>> problem.default_bound()
    3
    """

    def __init__(self, atom, hpos, hneg=(), ground=(), signature=None, augment=True, depth=None):
        self.atom = atom
        self.hpos = tuple(hpos)
        self.hneg = tuple(hneg)
        self.ground = tuple(dict.fromkeys(ground))
        self.depth = depth

        occurring = symbols_of([atom, *self.hpos, *self.hneg])
        extra = [s for s in (signature or ()) if s not in occurring]
        self.extra_symbols = tuple(extra)
        symbols = order_signature(occurring + extra)
        if augment:
            self.signature, self.augmentation = augment_signature(symbols)
        else:
            self.signature, self.augmentation = symbols, ()
        self._validate()

    def _validate(self):
        atom_vars = vars_of(self.atom)
        for v in self.ground:
            if v not in atom_vars:
                raise PreconditionError(f"ground variable {v} does not occur in {self.atom}")
        seen = set()
        for a in (self.atom, *self.hpos, *self.hneg):
            current = vars_of(a)
            if current & seen:
                raise PreconditionError(f"{a} shares variables with another atom of the problem")
            seen |= current
        for h in self.hpos + self.hneg:
            if not unifiable(self.atom, h):
                raise PreconditionError(f"{self.atom} does not unify with {h}")
        if self.depth is not None and self.depth < 0:
            raise PreconditionError(f"depth bound must not be negative, got {self.depth}")

    @property
    def is_augmented(self):
        return bool(self.augmentation)

    def is_linear(self):
        return is_linear(self.atom) and all(is_linear(h) for h in self.hpos)

    def max_atom_depth(self):
        return max(depth(a) for a in (self.atom, *self.hpos, *self.hneg))

    def default_bound(self):
        return self.max_atom_depth() + 1

    def bound(self):
        """The depth bound of the problem file if it has one, the default horizon otherwise."""
        return self.depth if self.depth is not None else self.default_bound()

    def conclusive(self, bound):
        return self.is_linear() and self.is_augmented and bound >= self.default_bound()


class SolveStats:
    def __init__(self, branches=0):
        self.candidates_tested = 0
        self.branches = branches

    def to_dict(self):
        return {"candidates_tested": self.candidates_tested, "branches": self.branches}


class Solution:
    """A solution ``sigma`` on the variables of the problem atom, canonically renamed."""

    status = SolveStatus.SOLVED

    def __init__(self, sigma, algorithm, theta_branch=None, depth_bound=None, stats=None):
        self.sigma = sigma
        self.algorithm = algorithm
        self.theta_branch = theta_branch
        self.depth_bound = depth_bound
        self.stats = stats if stats is not None else SolveStats()

    @property
    def conclusive(self):
        return True

    def __bool__(self):
        return True

    def __str__(self):
        return str(self.sigma)

    def __repr__(self):
        return f"Solution({self.sigma}, {self.algorithm})"


class Failure:
    """No solution within ``depth_bound``."""

    status = SolveStatus.FAIL
    sigma = None

    def __init__(self, algorithm, depth_bound, conclusive, stats=None):
        self.algorithm = algorithm
        self.depth_bound = depth_bound
        self.conclusive = conclusive
        self.stats = stats if stats is not None else SolveStats()

    def __bool__(self):
        return False

    def __str__(self):
        kind = "conclusive" if self.conclusive else "inconclusive"
        return f"fail (bound={self.depth_bound}, {kind})"

    def __repr__(self):
        return f"Failure({self}, {self.algorithm})"


class EnumeratorConfig(ProtocolInterface):
    """Options of the substitution enumerator.

    Parameters
    ----------
    max_depth : int, default=0
        Largest term depth enumerated
    allow_u_bindings : bool, default=False
        Allow binding variables of the U namespace
    linear_only : bool, default=False
        Only enumerate linear substitutions
    priority_non_u : bool, default=False
        Within a depth layer, emit substitutions that leave U variables unbound first
    seed : int, default=None
        Shuffle the order within each layer with this seed
    """

    def __init__(self, **options):
        super().__init__()
        self._arg(
            "max_depth",
            "int",
            "Largest term depth enumerated",
            0,
            val.Number(int, "0POS"),
        )
        self._arg(
            "allow_u_bindings",
            "bool",
            "Allow binding variables of the U namespace",
            False,
            val.Boolean(),
        )
        self._arg(
            "linear_only",
            "bool",
            "Only enumerate linear substitutions",
            False,
            val.Boolean(),
        )
        self._arg(
            "priority_non_u",
            "bool",
            "Within a depth layer, emit substitutions that leave U variables unbound first",
            False,
            val.Boolean(),
        )
        self._arg(
            "seed",
            "int",
            "Shuffle the order within each layer with this seed",
            None,
            val.Number(int, "0POS"),
        )
        for key, value in options.items():
            if value is not None:
                setattr(self, key, value)

    def derive(self, **overrides):
        options = {
            "max_depth": self.max_depth,
            "allow_u_bindings": self.allow_u_bindings,
            "linear_only": self.linear_only,
            "priority_non_u": self.priority_non_u,
            "seed": self.seed,
        }
        options.update(overrides)
        return EnumeratorConfig(**options)


@lru_cache(maxsize=None)
def _partitions(n, linear):
    """Set partitions of ``n`` holes as block labels, the all-distinct one first."""
    distinct = tuple(range(n))
    if linear or n < 2:
        return (distinct,)
    out = []

    def grow(prefix, top):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for label in range(top + 2):
            grow(prefix + [label], max(top, label))

    grow([0], 0)
    out.remove(distinct)
    return tuple([distinct] + out)


class EtaStream:
    """Depth-layered, duplicate-free stream of substitutions over ``variables``.

    Layer ``d`` holds the substitutions whose deepest binding has depth ``d``.
    Every range variable is fresh. Variables in ``ground`` only receive ground
    terms; when one of them is not in ``variables`` the stream is empty.
    """

    def __init__(self, variables_, cfg, problem, ground=(), caps=None):
        # U variables stay unbound unless U bindings are allowed
        self.variables = [v for v in variables_ if cfg.allow_u_bindings or not v.is_u]
        self.cfg = cfg
        self.signature = tuple(problem.signature)
        self.ground = set(ground)
        self.caps = caps if caps is not None else {}
        self.depth = None
        self.emitted = Counter()
        self._seen = set()
        self._rng = random.Random(cfg.seed) if cfg.seed is not None else None
        self._blocked = not self.ground <= set(self.variables)

    def _options(self, v, d):
        limit = min(d, self.caps.get(v, self.cfg.max_depth))
        options = []
        for k in range(limit + 1):
            for skeleton in term_skeletons(self.signature, k):
                if v in self.ground and count_holes(skeleton):
                    continue
                options.append((skeleton, k))
        if self._rng is not None:
            self._rng.shuffle(options)
        return options

    def _build(self, combo, partition):
        sizes = Counter(partition)
        blocks = {}
        bindings = {}
        touches_u = False
        start = 0
        for v, (skeleton, _) in zip(self.variables, combo):
            n = count_holes(skeleton)
            labels = partition[start : start + n]
            start += n
            if skeleton == HOLE and sizes[labels[0]] == 1:
                continue
            fillers = []
            for label in labels:
                if label not in blocks:
                    blocks[label] = fresh_var()
                fillers.append(blocks[label])
            bindings[v] = fill_holes(skeleton, iter(fillers))
            touches_u = touches_u or v.is_u
        return Substitution(bindings), touches_u

    def _candidates(self, d):
        options = [self._options(v, d) for v in self.variables]
        for combo in itertools.product(*options):
            if max((c[1] for c in combo), default=0) != d:
                continue
            holes = sum(count_holes(c[0]) for c in combo)
            for partition in _partitions(holes, self.cfg.linear_only):
                yield self._build(combo, partition)

    def layer(self, d):
        if self._blocked or d > self.cfg.max_depth:
            return
        self.depth = d
        passes = (False, True) if self.cfg.priority_non_u else (None,)
        for wanted in passes:
            for eta, touches_u in self._candidates(d):
                if wanted is not None and touches_u != wanted:
                    continue
                key = canonical_key([apply(eta, v) for v in self.variables])
                if key in self._seen:
                    continue
                self._seen.add(key)
                self.emitted[d] += 1
                yield eta

    def __iter__(self):
        for d in range(self.cfg.max_depth + 1):
            yield from self.layer(d)


def fair_eta_stream(variables_, cfg, problem, ground=(), caps=None):
    return EtaStream(variables_, cfg, problem, ground=ground, caps=caps)


def check_solution(sigma, problem):
    image = apply(sigma, problem.atom)
    if not all(is_ground(apply(sigma, x)) for x in problem.ground):
        return False
    if not all(unifiable(image, h) for h in rename_apart(problem.hpos)):
        return False
    return not any(unifiable(image, h) for h in rename_apart(problem.hneg))


def canonical_solution(sigma, atom):
    """Restrict ``sigma`` to the atom's variables and rename its range to ``_0, _1, ...``."""
    domain = variables(atom)
    image = apply(sigma, atom)
    renaming = {v: fresh_var(hint=f"_{i}") for i, v in enumerate(variables(image))}
    return Substitution(
        {x: apply(Substitution(renaming), apply(sigma, x)) for x in domain}
    )


def default_config(problem, algorithm):
    return EnumeratorConfig(
        max_depth=problem.bound(),
        priority_non_u=algorithm is Algorithm.SU_STAR,
    )


def _branches(problem, algorithm):
    if algorithm is Algorithm.SU_LIN:
        if not problem.is_linear():
            raise PreconditionError("su-lin needs a linear atom and linear positive atoms")
        return [su_plus_lin(problem.atom, problem.hpos)]
    return su_plus(problem.atom, problem.hpos)


def _search(problem, algorithm, cfg, first):
    if algorithm is Algorithm.SU_LIN:
        cfg = cfg.derive(linear_only=True, allow_u_bindings=False)
    elif algorithm is Algorithm.SU_STAR:
        cfg = cfg.derive(allow_u_bindings=True)
    else:
        cfg = cfg.derive(allow_u_bindings=False)
    if not problem.is_linear():
        logger.warning(
            f"Non-linear input: depth bound {cfg.max_depth} may be too small to find every solution"
        )

    branches = _branches(problem, algorithm)
    stats = SolveStats(branches=len(branches))
    atom = problem.atom
    domain = variables(atom)
    streams = []
    for branch in branches:
        image = apply(branch.theta, atom)
        candidates = [v for v in variables(image) if cfg.allow_u_bindings or not v.is_u]
        must_ground = variables([apply(branch.theta, x) for x in problem.ground])
        nesting = variable_nesting(image)
        caps = {v: max(0, cfg.max_depth - nesting[v]) for v in candidates}
        streams.append(EtaStream(candidates, cfg, problem, ground=must_ground, caps=caps))

    found = []
    classes = set()
    for d in range(cfg.max_depth + 1):
        logger.debug(f"{algorithm}: depth layer {d}, {stats.candidates_tested} candidates so far")
        for branch, stream in zip(branches, streams):
            for eta in stream.layer(d):
                stats.candidates_tested += 1
                sigma = restrict(compose(branch.theta, eta), domain)
                if cfg.linear_only and not sigma.is_linear():
                    continue
                if not check_solution(sigma, problem):
                    continue
                solution = Solution(
                    canonical_solution(sigma, atom), algorithm, branch, cfg.max_depth, stats
                )
                if first:
                    return [solution], cfg, stats
                cls = canonical_key(apply(solution.sigma, atom))
                if cls not in classes:
                    classes.add(cls)
                    found.append(solution)
    return found, cfg, stats


def _first(problem, algorithm, cfg):
    if cfg is None:
        cfg = default_config(problem, algorithm)
    found, cfg, stats = _search(problem, algorithm, cfg, first=True)
    if found:
        return found[0]
    return Failure(algorithm, cfg.max_depth, problem.conclusive(cfg.max_depth), stats)


def su(problem, cfg=None):
    """First solution found by pairing positive-unification results with substitutions on their non-U variables."""
    return _first(problem, Algorithm.SU, cfg)


def su_star(problem, cfg=None):
    """Like ``su``, but U variables may be bound too, after the non-U ones of the same depth."""
    return _first(problem, Algorithm.SU_STAR, cfg)


def su_lin(problem, cfg=None):
    """First solution of a linear problem, from the maximal positive solution and linear substitutions."""
    return _first(problem, Algorithm.SU_LIN, cfg)


def solve(problem, algorithm, cfg=None):
    algorithm = Algorithm(algorithm)
    if algorithm is Algorithm.ORACLE:
        from selunify.oracle import naive_solve

        bound = cfg.max_depth if cfg is not None else problem.bound()
        linear_only = cfg.linear_only if cfg is not None else False
        seed = cfg.seed if cfg is not None else None
        return naive_solve(problem, bound, linear_only, seed)
    return _first(problem, algorithm, cfg)


def solve_all(problem, algorithm, cfg=None):
    """Every solution class within the depth bound, in discovery order."""
    algorithm = Algorithm(algorithm)
    if algorithm is Algorithm.ORACLE:
        from selunify.oracle import naive_solve_all

        bound = cfg.max_depth if cfg is not None else problem.bound()
        linear_only = cfg.linear_only if cfg is not None else False
        seed = cfg.seed if cfg is not None else None
        return naive_solve_all(problem, bound, linear_only, seed)
    if cfg is None:
        cfg = default_config(problem, algorithm)
    found, _, _ = _search(problem, algorithm, cfg, first=False)
    return found
