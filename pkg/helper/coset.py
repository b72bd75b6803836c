"""
Labeling cosets.

A labeling coset over V is stored as a representative labeling tau together
with the group Gamma = tau^-1 Delta tau acting on the labels 0..n-1, so the
coset is {tau·gamma : gamma in Gamma} = Delta·tau. Keeping the group on the
label side makes images under bijections free (only the representative
moves); the source-side group Delta is derived on demand for the operations
that need a chain over V (lex-min elements, the order on cosets).

Labels are 0-based internally; Labeling reports them as 1..n.
"""

import logging
from dataclasses import dataclass

from helper.perm import (
    DomainMismatch, NotInvariant, PermutationGroup, Permutation, GroundSet,
    ordered_ground, id_perm, inv_perm, mult_perm, is_id_perm, direct_product,
)


class UnorderedGround(ValueError):
    pass


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class Labeling:
    source: GroundSet
    images: tuple

    def __call__(self, v):
        return self.images[self.source.position(v)] + 1

    def to_mapping(self):
        return {v: self.images[i] + 1 for i, v in enumerate(self.source.elements)}


class LabelingCoset:
    __slots__ = ("ground", "rep", "label_group", "_group", "_lexmin")

    def __init__(self, ground, rep, label_group):
        rep = tuple(rep)
        if len(rep) != len(ground) or label_group.degree != len(ground):
            raise DomainMismatch("representative and group do not match the ground set")
        self.ground = ground
        self.rep = rep
        self.label_group = label_group
        self._group = None
        self._lexmin = None

    @classmethod
    def from_group(cls, group, rep):
        """Coset Delta·rep from the source-side group Delta."""
        rep = tuple(rep)
        coset = cls(group.domain, rep, group.conjugate(rep, ordered_ground(len(rep))))
        coset._group = group
        return coset

    @classmethod
    def singleton(cls, ground, rep):
        return cls(ground, rep, PermutationGroup.trivial(ordered_ground(len(ground))))

    def __repr__(self):
        return f"<LabelingCoset n={self.degree} order={self.order()} rep={self.labeling().to_mapping()}>"

    @property
    def degree(self):
        return len(self.ground)

    @property
    def group(self):
        if self._group is None:
            self._group = self.label_group.conjugate(inv_perm(self.rep), self.ground)
        return self._group

    def order(self):
        return self.label_group.order()

    def labeling(self):
        return Labeling(self.ground, self.rep)

    def elements(self):
        for g in self.label_group.elements():
            yield mult_perm(self.rep, g)

    def contains(self, labeling):
        if isinstance(labeling, Labeling):
            labeling = labeling.images
        return self.label_group.contains(mult_perm(inv_perm(self.rep), tuple(labeling)))

    __contains__ = contains

    def __eq__(self, other):
        if not isinstance(other, LabelingCoset) or self.ground != other.ground:
            return False
        if self is other:
            return True
        if self.order() != other.order():
            return False
        return other.issuperset(self)

    __hash__ = None

    def issuperset(self, other):
        if not other.label_group.raw_generators and not self.label_group.raw_generators:
            return self.rep == other.rep
        return (self.label_group.contains(mult_perm(inv_perm(self.rep), other.rep))
                and self.label_group.contains_group(other.label_group))

    def issubset(self, other):
        return other.issuperset(self)

    # transport

    def apply_map(self, mu, target=None):
        """mu^-1·Delta·rho for mu a bijection (positions) from V onto target."""
        target = self.ground if target is None else target
        if isinstance(mu, Permutation):
            mu = mu.images
        return LabelingCoset(target, mult_perm(inv_perm(tuple(mu)), self.rep), self.label_group)

    def rebased(self, g):
        """Same coset written with representative rep·g, g in the label group."""
        if is_id_perm(g):
            return self
        return LabelingCoset(self.ground, mult_perm(self.rep, g), self.label_group.conjugate(g))

    # subsets of V

    def image(self, positions):
        return frozenset(self.rep[p] for p in positions)

    def image_key(self, positions):
        labels = sorted(self.rep[p] for p in positions)
        return len(labels), tuple(labels)

    def orbits(self, positions):
        """Orbits of Delta on an invariant set of positions."""
        inv = inv_perm(self.rep)
        return [frozenset(inv[l] for l in orb)
                for orb in self.label_group.orbits(self.image(positions))]

    def is_transitive_on(self, positions):
        positions = list(positions)
        if len(positions) <= 1:
            return True
        orb = self.label_group.orbit(self.rep[positions[0]])
        return len(orb) == len(positions)

    def restrict(self, positions):
        return CosetRestriction(self, positions)

    def induce(self, positions):
        positions = sorted(positions)
        labels = sorted(self.rep[p] for p in positions)
        kappa = {l: i for i, l in enumerate(labels)}
        k = len(positions)
        group = self.label_group.restricted(labels, ordered_ground(k))
        return LabelingCoset(self.ground.subset(positions),
                             [kappa[self.rep[p]] for p in positions], group)

    # ordered ground sets

    def _require_ordered(self):
        if not self.ground.ordered:
            raise UnorderedGround("the order on cosets is only defined over {1..n}")

    def lexmin(self):
        """Lex-min element as a tuple; over an unordered ground set this uses positions."""
        if self._lexmin is None:
            self._lexmin = self.group.chain.lexmin(self.rep)
        return self._lexmin

    def fingerprint(self):
        """Hash bucket key; equal cosets have equal fingerprints."""
        return self.order(), self.lexmin()

    def canonical_generators(self):
        self._require_ordered()
        return self.group.canonical_generators(), self.lexmin()


class CosetRestriction:
    """The set {lambda|_A : lambda in C} for A invariant under C's group."""

    __slots__ = ("coset", "positions", "labels", "_induced")

    def __init__(self, coset, positions):
        self.coset = coset
        self.positions = tuple(sorted(positions))
        self.labels = coset.image(self.positions)
        if not coset.label_group.is_invariant(self.labels):
            raise NotInvariant("restriction to a set that is not invariant")
        self._induced = None

    @property
    def induced(self):
        if self._induced is None:
            self._induced = self.coset.induce(self.positions)
        return self._induced

    def __eq__(self, other):
        if not isinstance(other, CosetRestriction):
            return False
        return (self.coset.ground == other.coset.ground and self.positions == other.positions
                and self.labels == other.labels and self.induced == other.induced)

    __hash__ = None

    def maps(self):
        """Enumerate the partial maps as tuples of labels, one per position."""
        seen = set()
        for g in self.coset.elements():
            m = tuple(g[p] for p in self.positions)
            if m not in seen:
                seen.add(m)
                yield m

    def lift(self):
        """{gamma in Label(V) : gamma|_A in this restriction}."""
        coset = self.coset
        n = coset.degree
        inside = sorted(self.labels)
        rest = [l for l in range(n) if l not in self.labels]
        rep = list(coset.rep)
        others = iter(rest)
        pos_set = set(self.positions)
        for p in range(n):
            if p not in pos_set:
                rep[p] = next(others)
        label_domain = ordered_ground(n)
        group = direct_product(label_domain, [
            (coset.label_group.restricted(inside, ordered_ground(len(inside))), inside),
            (PermutationGroup.symmetric(ordered_ground(len(rest))), rest),
        ])
        return LabelingCoset(coset.ground, rep, group)


# constructors

def full_label_coset(ground):
    n = len(ground)
    return LabelingCoset(ground, id_perm(n), PermutationGroup.symmetric(ordered_ground(n)))


def color_coset(ground, colors):
    """Labelings sending color class i below class j whenever i < j."""
    colors = [list(c) for c in colors]
    flat = [v for c in colors for v in c]
    if len(flat) != len(set(flat)) or set(flat) != set(ground.elements):
        raise ColoringError("colors do not partition the ground set")
    rep = [0] * len(ground)
    blocks = []
    label = 0
    for c in colors:
        members = sorted(ground.position(v) for v in c)
        block = []
        for p in members:
            rep[p] = label
            block.append(label)
            label += 1
        blocks.append(block)
    return LabelingCoset(ground, rep, PermutationGroup.young(ordered_ground(len(ground)), blocks))


def lift(coset, ground):
    """{gamma in Label(V) : gamma|_A in coset} for coset over A, A a subset of V."""
    sub = coset.ground
    if any(v not in ground for v in sub.elements):
        raise DomainMismatch("lift target does not contain the coset's ground set")
    k, n = len(sub), len(ground)
    a_positions = [ground.position(v) for v in sub.elements]
    in_a = set(a_positions)
    rep = [0] * n
    for i, p in enumerate(a_positions):
        rep[p] = coset.rep[i]
    label = k
    for p in range(n):
        if p not in in_a:
            rep[p] = label
            label += 1
    group = direct_product(ordered_ground(n), [
        (coset.label_group, list(range(k))),
        (PermutationGroup.symmetric(ordered_ground(n - k)), list(range(k, n))),
    ])
    return LabelingCoset(ground, rep, group)


def lift_subset(ground, positions):
    """Label(A) lifted to V for A given by positions: labelings sending A onto 0..|A|-1."""
    positions = set(positions)
    n = len(ground)
    inside = [p for p in range(n) if p in positions]
    outside = [p for p in range(n) if p not in positions]
    rep = [0] * n
    for label, p in enumerate(inside + outside):
        rep[p] = label
    k = len(inside)
    group = PermutationGroup.young(ordered_ground(n), [range(k), range(k, n)])
    return LabelingCoset(ground, rep, group)


def span(cosets):
    """Smallest coset containing all the given cosets."""
    cosets = list(cosets)
    if not cosets:
        raise ValueError("span of an empty family")
    first = cosets[0]
    if any(c.ground != first.ground for c in cosets):
        raise DomainMismatch("cosets over different ground sets")
    if len(cosets) == 1:
        return first
    inv = inv_perm(first.rep)
    gens = list(first.label_group.raw_generators)
    for c in cosets[1:]:
        gens.extend(c.label_group.raw_generators)
        gens.append(mult_perm(inv, c.rep))
    group = PermutationGroup.from_generators(first.label_group.domain, gens)
    logging.debug(f"span of {len(cosets)} cosets: order {group.order()}")
    return LabelingCoset(first.ground, first.rep, group)


# the order on cosets over {1..n}

def _min_difference(c1, c2):
    """The lex-min element of c1 outside c2 (c1 not contained in c2)."""
    ch1, ch2 = c1.group.chain, c2.group.chain
    ok = ch1.tails_within(ch2)
    n = c1.degree

    def descend(p, x1, x2):
        if p == n:
            return x1
        trans1 = ch1.levels[p].transversal
        trans2 = ch2.levels[p].transversal
        x2inv = inv_perm(x2)
        for c in sorted(trans1, key=x1.__getitem__):
            y1 = x1 if c == p else mult_perm(trans1[c], x1)
            c2 = x2inv[x1[c]]
            if c2 not in trans2:
                return ch1.lexmin(y1, p + 1)
            y2 = x2 if c2 == p else mult_perm(trans2[c2], x2)
            if ok[p + 1] and ch2.contains(mult_perm(y1, inv_perm(y2)), p + 1):
                continue
            return descend(p + 1, y1, y2)
        raise AssertionError("first coset is contained in the second")

    return descend(0, c1.rep, c2.rep)


def compare(c1, c2):
    """-1, 0 or 1 as c1 precedes, equals or follows c2."""
    c1._require_ordered()
    c2._require_ordered()
    if c1.ground != c2.ground:
        raise DomainMismatch("cosets over different ground sets")
    o1, o2 = c1.order(), c2.order()
    if o1 != o2:
        return -1 if o1 < o2 else 1
    if c1 == c2:
        return 0
    m1 = _min_difference(c1, c2)
    m2 = _min_difference(c2, c1)
    return -1 if m1 < m2 else 1


def lexmin_element(coset):
    coset._require_ordered()
    return Labeling(coset.ground, coset.lexmin())


def canonical_generators(coset):
    sgs, rep = coset.canonical_generators()
    domain = coset.ground
    return [Permutation(domain, g) for g in sgs], Labeling(domain, rep)


def restrict(coset, subset):
    return coset.restrict(coset.ground.positions(subset))


def induce(coset, subset):
    return coset.induce(coset.ground.positions(subset))


def apply_map(coset, mu, target=None):
    return coset.apply_map(mu, target)
