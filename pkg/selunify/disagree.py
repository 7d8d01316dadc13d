from dataclasses import dataclass
from typing import Tuple
from selunify.errors import MixedPredicateError, NotSimpleError
from selunify.subst import Substitution, apply
from selunify.terms import Variable, occurs, replace_at
import logging

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DisagreementPair:
    position: Tuple[int, ...]
    left: object
    right: object
    left_atom: int
    right_atom: int

    def __str__(self):
        return f"{self.left}, {self.right} at {list(self.position)}"


class WorkingSet:
    """An ordered set of atoms sharing one predicate, deduplicated syntactically."""

    def __init__(self, atoms):
        atoms = tuple(dict.fromkeys(atoms))
        if atoms:
            predicate = atoms[0].predicate
            for atom in atoms[1:]:
                if atom.predicate != predicate:
                    raise MixedPredicateError(
                        f"{atom} does not share the predicate {predicate} of {atoms[0]}"
                    )
        self.atoms = atoms

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __getitem__(self, i):
        return self.atoms[i]

    def apply(self, sigma):
        return WorkingSet(apply(sigma, atom) for atom in self.atoms)

    def replace(self, pair, term):
        """Put ``term`` at the position of ``pair`` in its two atoms only."""
        replaced = list(self.atoms)
        for i in (pair.left_atom, pair.right_atom):
            replaced[i] = replace_at(replaced[i], pair.position, term)
        return WorkingSet(replaced)

    def measure(self):
        """Number of atoms and of disagreement pairs between the first two, compared lexicographically."""
        if len(self.atoms) < 2:
            return (len(self.atoms), 0)
        pairs = []
        _outermost(self.atoms[0], self.atoms[1], (), 0, 1, pairs)
        return (len(self.atoms), len(pairs))

    def __str__(self):
        return "{" + ", ".join(str(a) for a in self.atoms) + "}"


def _outermost(s, t, position, i, j, out):
    if s == t:
        return
    same_root = (
        not isinstance(s, Variable)
        and not isinstance(t, Variable)
        and s.name == t.name
        and len(s.args) == len(t.args)
    )
    if not same_root:
        out.append(DisagreementPair(position, s, t, i, j))
        return
    for k, (a, b) in enumerate(zip(s.args, t.args), start=1):
        _outermost(a, b, position + (k,), i, j, out)


def disagreement_pairs(B):
    """Outermost disagreement pairs between every two atoms of ``B``.

    Pairs are ordered by the indices of the two atoms and then by position.
    """
    if not isinstance(B, WorkingSet):
        B = WorkingSet(B)
    pairs = []
    for i in range(len(B)):
        for j in range(i + 1, len(B)):
            _outermost(B[i], B[j], (), i, j, pairs)
    return pairs


def _has_u(t):
    if isinstance(t, Variable):
        return t.is_u
    return any(_has_u(a) for a in t.args)


def is_simple(d):
    if _has_u(d.left) or _has_u(d.right):
        return False
    if isinstance(d.left, Variable) and not occurs(d.left, d.right):
        return True
    return isinstance(d.right, Variable) and not occurs(d.right, d.left)


def determined_binding(d):
    if not is_simple(d):
        raise NotSimpleError(f"disagreement pair {d} is not simple")
    if isinstance(d.left, Variable) and not occurs(d.left, d.right):
        return Substitution({d.left: d.right})
    return Substitution({d.right: d.left})
