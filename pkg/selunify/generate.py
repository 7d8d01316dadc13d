"""Seeded random terms, problems and substitutions for property suites and the diff harness.

Problems are kept small: at most three symbols, atoms of depth one for the
selected atom and up to ``max_term_depth`` for the others. When the signature
has a binary symbol the predicate is unary.
"""
from selunify.errors import PreconditionError
from selunify.selective import Problem
from selunify.subst import Substitution, unifiable
from selunify.terms import Atom, Func, Symbol, fresh_var, variables
import random
import logging

logger = logging.getLogger(__name__)

_constants = ("a", "b", "d")
_functions = ("f", "g", "k")


class ProblemGenerator:
    """Random problem source.

    Parameters
    ----------
    seed : int or str
        Seed of the generator. Equal seeds give equal sequences.
    linear : bool
        Make the atom and the positive atoms linear
    max_arity : int
        Largest arity of a function symbol
    max_term_depth : int
        Largest depth of a positive or negative atom
    """

    def __init__(self, seed=0, linear=True, max_arity=2, max_term_depth=2):
        self._rng = random.Random(seed)
        self.linear = linear
        self.max_arity = max_arity
        self.max_term_depth = max_term_depth

    def signature(self):
        rng = self._rng
        if self.max_arity >= 2 and rng.random() < 0.5:
            symbols = [Symbol(_constants[0], 0), Symbol(_constants[1], 0), Symbol(_functions[0], 2)]
        else:
            nconst = rng.choice((1, 2))
            symbols = [Symbol(name, 0) for name in _constants[:nconst]]
            symbols += [Symbol(name, 1) for name in _functions[1 : 1 + 3 - nconst]]
        return symbols

    def term(self, symbols, limit, pool, linear=True):
        """Random term of depth at most ``limit``. Variables are drawn from and added to ``pool``."""
        rng = self._rng
        if limit == 0 or rng.random() < 0.35:
            if not linear and pool and rng.random() < 0.4:
                return rng.choice(pool)
            v = fresh_var(hint=f"{pool.prefix}{len(pool) + 1}")
            pool.append(v)
            return v
        choices = [s for s in symbols if s.arity == 0 or limit > 1]
        sym = rng.choice(choices)
        return Func(sym.name, tuple(self.term(symbols, limit - 1, pool, linear) for _ in range(sym.arity)))

    def atom(self, predicate, symbols, limit, prefix, linear=True):
        pool = _Pool(prefix)
        return Atom(predicate.name, tuple(self.term(symbols, limit, pool, linear) for _ in range(predicate.arity)))

    def _predicate(self, symbols):
        arity = 1 if any(s.arity >= 2 for s in symbols) else self._rng.choice((1, 2))
        return Symbol("p", arity)

    def _related(self, atom, predicate, symbols, prefix, linear, attempts=20):
        for _ in range(attempts):
            h = self.atom(predicate, symbols, self.max_term_depth, prefix, linear)
            if unifiable(atom, h):
                return h
        return None

    def positive_input(self):
        """Return ``(atom, hpos, symbols)`` with every positive atom unifying with ``atom``."""
        while True:
            symbols = self.signature()
            predicate = self._predicate(symbols)
            atom = self.atom(predicate, symbols, 1, "X", self.linear)
            hpos = []
            for i in range(self._rng.choice((1, 2))):
                h = self._related(atom, predicate, symbols, _prefixes[i], self.linear)
                if h is not None:
                    hpos.append(h)
            if hpos:
                return atom, hpos, symbols

    def problem(self):
        """Random valid problem, with at least one positive atom."""
        rng = self._rng
        while True:
            atom, hpos, symbols = self.positive_input()
            predicate = atom.predicate
            hneg = []
            for i in range(rng.choice((0, 1, 2))):
                linear = self.linear or rng.random() < 0.5
                h = self._related(atom, predicate, symbols, _prefixes[2 + i], linear)
                if h is not None:
                    hneg.append(h)
            ground = [v for v in variables(atom) if rng.random() < 0.3]
            try:
                return Problem(atom, hpos, hneg, ground, signature=symbols)
            except PreconditionError as e:
                logger.debug(f"Rejected generated problem: {e}")

    def eta(self, variables_, symbols, limit=1):
        """Random substitution binding some of ``variables_`` to terms over fresh variables."""
        bindings = {}
        used = _Pool("E")
        for v in variables_:
            if self._rng.random() < 0.5:
                bindings[v] = self.term(symbols, limit, used)
        return Substitution(bindings)


_prefixes = ("Y", "Z", "W", "V")


class _Pool(list):
    """Variables created for one atom, named ``prefix1``, ``prefix2``, ..."""

    def __init__(self, prefix):
        super().__init__()
        self.prefix = prefix


def random_linear_input(seed, max_arity=2, max_term_depth=2):
    generator = ProblemGenerator(seed, linear=True, max_arity=max_arity, max_term_depth=max_term_depth)
    atom, hpos, _ = generator.positive_input()
    return atom, hpos
