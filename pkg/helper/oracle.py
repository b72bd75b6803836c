"""
Brute-force references: canonical forms by trying every labeling,
automorphism groups by trying every permutation, element-wise coset
intersection and setwise stabilizers. Small inputs only.
"""

import logging
import itertools
from dataclasses import dataclass, field

from config import Config
from helper.perm import PermutationGroup, Permutation, ordered_ground, id_perm, inv_perm, mult_perm
from helper.coset import Labeling, LabelingCoset
from helper.objects import NodeStore, ObjectDag, image_node, ordered_compare


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_factorial_base: int = field(default_factory=lambda: Config.ORACLE_MAX_DEGREE)
    max_group: int = field(default_factory=lambda: Config.ORACLE_MAX_GROUP)

    def check_degree(self, n):
        if n > self.max_factorial_base:
            raise BudgetExceeded(f"{n}! labelings is beyond the oracle budget ({self.max_factorial_base}!)")

    def check_order(self, order):
        if order > self.max_group:
            raise BudgetExceeded(f"enumerating {order} elements is beyond the oracle budget ({self.max_group})")


def _labelings(n, coset, budget):
    if coset is None:
        budget.check_degree(n)
        return itertools.permutations(range(n))
    budget.check_order(coset.order())
    return coset.elements()


def _minimizers(dag, coset, budget):
    """The minimal ordered image of dag and every labeling attaining it."""
    n = len(dag.ground)
    store = NodeStore(ordered_ground(n))
    best, winners = None, []
    for lam in _labelings(n, coset, budget):
        lam = tuple(lam)
        node = image_node(dag.root, lam, store)
        c = -1 if best is None else ordered_compare(node, best)
        if c < 0:
            best, winners = node, [lam]
        elif c == 0:
            winners.append(lam)
    return ObjectDag(store, best), winners


def brute_canonical_form(dag, coset=None, budget=None):
    """The least ordered image of dag over all labelings (or over those in coset)."""
    form, _ = _minimizers(dag, coset, budget or OracleBudget())
    return form


def brute_canonical_labeling(dag, coset=None, budget=None):
    """All labelings attaining the least image, as a labeling coset Aut·lambda."""
    n = len(dag.ground)
    _, winners = _minimizers(dag, coset, budget or OracleBudget())
    first = winners[0]
    inv = inv_perm(first)
    group = PermutationGroup.from_generators(
        ordered_ground(n), [mult_perm(inv, lam) for lam in winners[1:]])
    logging.debug(f"oracle: {len(winners)} minimal labelings on {n} points")
    return LabelingCoset(dag.ground, first, group)


def brute_aut(dag, budget=None):
    """{sigma in Sym(V) : dag^sigma = dag}."""
    budget = budget or OracleBudget()
    n = len(dag.ground)
    budget.check_degree(n)
    store = dag.store
    memo_root = dag.root
    gens = []
    for sigma in itertools.permutations(range(n)):
        if sigma == id_perm(n):
            continue
        if image_node(memo_root, sigma, store) is memo_root:
            gens.append(sigma)
    return PermutationGroup.from_generators(dag.ground, gens)


def brute_coset_intersection(t, c, budget=None):
    """T ∩ C as a set of label tuples, enumerating the smaller coset."""
    budget = budget or OracleBudget()
    small, big = (t, c) if t.order() <= c.order() else (c, t)
    budget.check_order(small.order())
    return {lam for lam in small.elements() if big.contains(lam)}


def brute_setwise_stab(group, subset, budget=None):
    """{g in G : g(A) = A} as a set of Permutations."""
    budget = budget or OracleBudget()
    budget.check_order(group.order())
    positions = frozenset(group.domain.positions(subset))
    return {Permutation(group.domain, g) for g in group.elements()
            if frozenset(g[p] for p in positions) == positions}


def brute_isomorphic(x, y, budget=None):
    if len(x.ground) != len(y.ground):
        return False
    return brute_canonical_form(x, budget=budget).equals(brute_canonical_form(y, budget=budget))


def as_labelings(ground, label_tuples):
    return {Labeling(ground, lam) for lam in label_tuples}
