"""
Permutations on indexed ground sets and permutation groups.

Permutations compose from left to right, (pq)(v) = q(p(v)). Internally a
permutation is a tuple of positions: images[i] is the position of the image of
the i-th element of the ground set. Groups keep their generators and build a
stabilizer chain over the fixed base 0, 1, ..., n-1 when first needed, so the
chain (orbits, canonical transversals, order) depends only on the group.
"""

import itertools
import logging
import math
from collections import deque
from functools import lru_cache


class DomainMismatch(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


class NotInvariant(ValueError):
    pass


# raw tuple permutations

def id_perm(n):
    return tuple(range(n))


def is_id_perm(p):
    return all(i == j for i, j in enumerate(p))


def mult_perm(p, q):
    """Product p then q."""
    return tuple(q[i] for i in p)


def inv_perm(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def conj_perm(g, x):
    """Transport g along x, i.e. x^-1 g x.

    x may map between two ground sets of equal size; if g sends a to b then
    the result sends x(a) to x(b).
    """
    xi = inv_perm(x)
    return tuple(x[g[xi[i]]] for i in range(len(g)))


def transposition(n, a, b):
    p = list(range(n))
    p[a], p[b] = b, a
    return tuple(p)


def cycle_perm(n, cycle):
    p = list(range(n))
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        p[a] = b
    return tuple(p)


def check_perm(p, n=None):
    if n is not None and len(p) != n:
        raise DomainMismatch(f"expected {n} images, got {len(p)}")
    if set(p) != set(range(len(p))):
        raise DomainMismatch("not a bijection")


def perm_cycles(p):
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cycle = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            seen.add(j)
            cycle.append(j)
            j = p[j]
        out.append(cycle)
    return out


class GroundSet:
    """An indexed vertex universe.

    The ordered ground set {1..n} is the one canonical forms live on; its
    elements are exactly the integers 1..n and position i holds i + 1.
    """

    __slots__ = ("elements", "index", "ordered", "_hash")

    def __init__(self, elements, ordered=False):
        self.elements = tuple(elements)
        self.index = {v: i for i, v in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise DomainMismatch("ground set elements are not distinct")
        if ordered and self.elements != tuple(range(1, len(self.elements) + 1)):
            raise DomainMismatch("an ordered ground set must be 1..n")
        self.ordered = ordered
        self._hash = hash((self.elements, ordered))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, v):
        return v in self.index

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, GroundSet) and self.ordered == other.ordered
                and self.elements == other.elements)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        kind = "ordered" if self.ordered else "ground"
        return f"<{kind} {list(self.elements)!r}>"

    def position(self, v):
        try:
            return self.index[v]
        except (KeyError, TypeError):
            raise DomainMismatch(f"{v!r} is not in the ground set") from None

    def positions(self, vs):
        return [self.position(v) for v in vs]

    def element(self, i):
        return self.elements[i]

    def subset(self, positions):
        """Sub-ground-set in this set's stored order."""
        return GroundSet(self.elements[i] for i in sorted(positions))


@lru_cache(maxsize=None)
def ordered_ground(n):
    return GroundSet(range(1, n + 1), ordered=True)


class Permutation:
    __slots__ = ("domain", "images")

    def __init__(self, domain, images):
        images = tuple(images)
        check_perm(images, len(domain))
        self.domain = domain
        self.images = images

    @classmethod
    def from_mapping(cls, domain, mapping):
        images = list(range(len(domain)))
        for v, w in mapping.items():
            images[domain.position(v)] = domain.position(w)
        return cls(domain, images)

    @classmethod
    def from_cycles(cls, domain, *cycles):
        p = id_perm(len(domain))
        for cycle in cycles:
            p = mult_perm(p, cycle_perm(len(domain), domain.positions(cycle)))
        return cls(domain, p)

    def __call__(self, v):
        return self.domain.elements[self.images[self.domain.position(v)]]

    def __mul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        return (isinstance(other, Permutation) and self.domain == other.domain
                and self.images == other.images)

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        els = self.domain.elements
        cycles = ["(" + " ".join(str(els[i]) for i in c) + ")" for c in perm_cycles(self.images)]
        return "".join(cycles) or "()"

    def inverse(self):
        return Permutation(self.domain, inv_perm(self.images))

    def is_identity(self):
        return is_id_perm(self.images)

    def to_mapping(self):
        els = self.domain.elements
        return {els[i]: els[j] for i, j in enumerate(self.images)}


def identity(domain):
    return Permutation(domain, id_perm(len(domain)))


def compose(p, q):
    if p.domain != q.domain:
        raise DomainMismatch("cannot compose permutations over different ground sets")
    return Permutation(p.domain, mult_perm(p.images, q.images))


def inverse(p):
    return p.inverse()


class _Level:
    __slots__ = ("point", "transversal", "inverses", "gens", "canonical")

    def __init__(self, point, n):
        e = id_perm(n)
        self.point = point
        self.transversal = {point: e}
        self.inverses = {point: e}
        self.gens = []
        self.canonical = None


class StabilizerChain:
    """Stabilizer chain over the base 0..n-1.

    Level i belongs to the pointwise stabilizer of 0..i-1; its transversal maps
    the orbit point c to an element sending i to c. Generators are added
    incrementally and every new Schreier generator is sifted once, so after
    each addition the chain is complete.
    """

    def __init__(self, degree):
        self.degree = degree
        self.levels = [_Level(i, degree) for i in range(degree)]

    @classmethod
    def from_generators(cls, degree, gens):
        chain = cls(degree)
        kept = []
        for g in gens:
            residue, level = chain.sift(g)
            if residue is None:
                continue
            kept.append(g)
            chain._add(residue, 0, level)
        return chain, kept

    @classmethod
    def young(cls, degree, blocks):
        chain = cls(degree)
        for block in blocks:
            block = sorted(block)
            for k, i in enumerate(block):
                level = chain.levels[i]
                for c in block[k + 1:]:
                    t = transposition(degree, i, c)
                    level.transversal[c] = t
                    level.inverses[c] = t
        return chain

    def _add(self, g, lo, hi):
        for l in range(hi, lo - 1, -1):
            self._extend_level(l, g)

    def _extend_level(self, l, g):
        level = self.levels[l]
        level.gens.append(g)
        queue = deque()
        for b, u in list(level.transversal.items()):
            self._schreier(l, b, u, g, queue)
        while queue:
            b = queue.popleft()
            u = level.transversal[b]
            for h in level.gens:
                self._schreier(l, b, u, h, queue)

    def _schreier(self, l, b, u, h, queue):
        level = self.levels[l]
        c = h[b]
        w = mult_perm(u, h)
        if c not in level.transversal:
            level.transversal[c] = w
            level.inverses[c] = inv_perm(w)
            queue.append(c)
            return
        residue, k = self.sift(mult_perm(w, level.inverses[c]), l + 1)
        if residue is not None:
            self._add(residue, l + 1, k)

    def sift(self, g, start=0):
        """Strip g through the levels from start on.

        Returns (None, degree) for members, else the residue and the level
        where it left the chain.
        """
        for i in range(start, self.degree):
            b = g[i]
            if b == i:
                continue
            inv = self.levels[i].inverses.get(b)
            if inv is None:
                return g, i
            g = tuple(inv[x] for x in g)
        return None, self.degree

    def contains(self, g, start=0):
        return self.sift(g, start)[0] is None

    @property
    def order(self):
        return math.prod(len(level.transversal) for level in self.levels)

    def lexmin(self, x, start=0):
        """Lex-min element of the coset G^(start)·x, x any map into positions."""
        for p in range(start, self.degree):
            trans = self.levels[p].transversal
            if len(trans) == 1:
                continue
            best = min(trans, key=x.__getitem__)
            if best != p:
                x = mult_perm(trans[best], x)
        return x

    def canonical_transversal(self, i):
        level = self.levels[i]
        if level.canonical is None:
            level.canonical = {c: (u if c == i else self.lexmin(u, i + 1))
                               for c, u in level.transversal.items()}
        return level.canonical

    def canonical_sgs(self):
        out = []
        for level in self.levels:
            if len(level.transversal) == 1:
                continue
            canon = self.canonical_transversal(level.point)
            out.extend(canon[c] for c in sorted(canon) if c != level.point)
        return out

    def fingerprint(self):
        return tuple(
            (level.point, tuple(sorted(level.transversal)),
             tuple(self.canonical_transversal(level.point)[c] for c in sorted(level.transversal)))
            for level in self.levels
        )

    def tail_generators(self, start):
        """Transversal elements of levels >= start; they generate G^(start)."""
        for level in self.levels[start:]:
            for c, u in level.transversal.items():
                if c != level.point:
                    yield u

    def tails_within(self, other):
        """ok[p] is True iff G^(p) <= other^(p), for p in 0..n."""
        ok = [True] * (self.degree + 1)
        for p in range(self.degree - 1, -1, -1):
            level = self.levels[p]
            ok[p] = ok[p + 1] and all(
                other.contains(u) for c, u in level.transversal.items() if c != level.point)
        return ok


class PermutationGroup:
    """A permutation group on a ground set, held as generators plus a lazy chain.

    Direct products of symmetric groups on blocks ("Young subgroups") remember
    their blocks; their chains, stabilizers, restrictions and conjugates are
    built directly.
    """

    def __init__(self, domain, generators=(), *, blocks=None, chain=None):
        n = len(domain)
        self.domain = domain
        self._gens = tuple(g for g in generators if not is_id_perm(g))
        for g in self._gens:
            check_perm(g, n)
        self._blocks = None if blocks is None else tuple(
            tuple(sorted(b)) for b in blocks if len(b) > 1)
        self._chain = chain

    @classmethod
    def young(cls, domain, blocks):
        n = len(domain)
        blocks = [sorted(b) for b in blocks if len(b) > 1]
        gens = []
        for b in blocks:
            gens.append(transposition(n, b[0], b[1]))
            if len(b) > 2:
                gens.append(cycle_perm(n, b))
        return cls(domain, gens, blocks=blocks)

    @classmethod
    def symmetric(cls, domain):
        return cls.young(domain, [range(len(domain))])

    @classmethod
    def trivial(cls, domain):
        return cls(domain, (), blocks=())

    @classmethod
    def from_generators(cls, domain, gens):
        """Build the chain now and keep only generators that enlarged the group."""
        gens = [g for g in dict.fromkeys(gens) if not is_id_perm(g)]
        chain, kept = StabilizerChain.from_generators(len(domain), gens)
        return cls(domain, kept, chain=chain)

    def __repr__(self):
        return f"<PermutationGroup degree={len(self.domain)} order={self.order()}>"

    @property
    def degree(self):
        return len(self.domain)

    @property
    def raw_generators(self):
        return self._gens

    @property
    def generators(self):
        return [Permutation(self.domain, g) for g in self._gens]

    @property
    def blocks(self):
        return self._blocks

    @property
    def chain(self):
        if self._chain is None:
            if self._blocks is not None:
                self._chain = StabilizerChain.young(self.degree, self._blocks)
            else:
                chain, kept = StabilizerChain.from_generators(self.degree, self._gens)
                self._gens = tuple(kept)
                self._chain = chain
        return self._chain

    def order(self):
        if self._blocks is not None:
            return math.prod(math.factorial(len(b)) for b in self._blocks)
        return self.chain.order

    def is_trivial(self):
        return not self._gens

    def _raw(self, p):
        if isinstance(p, Permutation):
            if p.domain != self.domain:
                raise DomainMismatch("permutation and group live on different ground sets")
            return p.images
        return tuple(p)

    def contains(self, p):
        return self.chain.contains(self._raw(p))

    __contains__ = contains

    def contains_group(self, other):
        return all(self.chain.contains(g) for g in other._gens)

    def __eq__(self, other):
        if not isinstance(other, PermutationGroup) or self.domain != other.domain:
            return False
        return self.order() == other.order() and other.contains_group(self)

    __hash__ = None

    def elements(self):
        trans = [list(level.transversal.values())
                 for level in reversed(self.chain.levels) if len(level.transversal) > 1]
        e = id_perm(self.degree)
        for combo in itertools.product(*trans):
            g = e
            for u in combo:
                g = mult_perm(g, u)
            yield g

    def canonical_generators(self):
        return self.chain.canonical_sgs()

    def lexmin(self, x, start=0):
        return self.chain.lexmin(tuple(x), start)

    # orbits

    def orbit_transversal(self, point):
        """Orbit of point with, for each c, an element sending point to c."""
        trans = {point: id_perm(self.degree)}
        queue = deque([point])
        while queue:
            b = queue.popleft()
            u = trans[b]
            for g in self._gens:
                c = g[b]
                if c not in trans:
                    trans[c] = mult_perm(u, g)
                    queue.append(c)
        return trans

    def orbit(self, point):
        seen = {point}
        queue = deque([point])
        while queue:
            b = queue.popleft()
            for g in self._gens:
                c = g[b]
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        return seen

    def orbits(self, subset=None):
        """Orbits on subset (positions); raises NotInvariant if it is not a union of orbits."""
        todo = set(range(self.degree)) if subset is None else set(subset)
        out = []
        for p in sorted(todo):
            if p not in todo:
                continue
            orb = self.orbit(p)
            if not orb <= todo:
                raise NotInvariant("subset is not invariant under the group")
            todo -= orb
            out.append(frozenset(orb))
        return out

    def is_invariant(self, subset):
        subset = set(subset)
        return all(g[p] in subset for g in self._gens for p in subset)

    # stabilizers

    def pointwise_stabilizer(self, point):
        n = self.degree
        if self._blocks is not None:
            return PermutationGroup.young(
                self.domain, [[b for b in block if b != point] for block in self._blocks])
        trans = self.orbit_transversal(point)
        if len(trans) == 1:
            return self
        chain = self._chain
        if chain is not None and all(len(chain.levels[i].transversal) == 1 for i in range(point)):
            return self._tail_group(point + 1)
        inverses = {c: inv_perm(u) for c, u in trans.items()}
        schreier = []
        for c, u in trans.items():
            for g in self._gens:
                s = mult_perm(mult_perm(u, g), inverses[g[c]])
                if not is_id_perm(s):
                    schreier.append(s)
        logging.debug(f"pointwise stabilizer: orbit {len(trans)}, {len(schreier)} schreier generators on {n} points")
        return PermutationGroup.from_generators(self.domain, schreier)

    def _tail_group(self, start):
        """G^(start) sharing this group's chain levels."""
        chain = self.chain
        tail = StabilizerChain(self.degree)
        for level in chain.levels[start:]:
            tail.levels[level.point] = level
        gens = list(chain.tail_generators(start))
        return PermutationGroup(self.domain, gens, chain=tail)

    def stabilizer_cosets(self, subset):
        """Setwise stabilizer Psi of subset together with left coset representatives.

        The representatives theta satisfy G = union of theta·Psi; the coset of
        theta consists of the elements sending theta^-1(subset) onto subset.
        """
        n = self.degree
        a = frozenset(subset)
        trans = {a: id_perm(n)}
        queue = deque([a])
        schreier = []
        while queue:
            b = queue.popleft()
            u = trans[b]
            for g in self._gens:
                c = frozenset(g[x] for x in b)
                w = mult_perm(u, g)
                if c not in trans:
                    trans[c] = w
                    queue.append(c)
                elif self._blocks is None:
                    s = mult_perm(w, inv_perm(trans[c]))
                    if not is_id_perm(s):
                        schreier.append(s)
        if self._blocks is not None:
            split = []
            for block in self._blocks:
                split.append([x for x in block if x in a])
                split.append([x for x in block if x not in a])
            stab = PermutationGroup.young(self.domain, split)
        elif len(trans) == 1:
            stab = self
        else:
            stab = PermutationGroup.from_generators(self.domain, schreier)
        reps = [inv_perm(u) for u in trans.values()]
        return stab, reps

    def setwise_stabilizer(self, *subsets):
        group = self
        for s in subsets:
            group = group.stabilizer_cosets(s)[0]
        return group

    def left_cosets(self, sub):
        """Lex-min representatives of the left cosets g·sub, sorted."""
        if sub.domain != self.domain or not self.contains_group(sub):
            raise NotASubgroup("not a subgroup of the group")
        e = id_perm(self.degree)
        reps = [e]
        queue = deque([e])
        while queue:
            g = queue.popleft()
            for x in self._gens:
                c = mult_perm(x, g)
                ci = inv_perm(c)
                if any(sub.contains(mult_perm(ci, r)) for r in reps):
                    continue
                reps.append(c)
                queue.append(c)
        out = []
        for g in reps:
            shifted = sub.conjugate(inv_perm(g))
            out.append(shifted.lexmin(g))
        return sorted(out)

    # transport

    def conjugate(self, x, domain=None):
        """x^-1 G x, for x a bijection from this ground set onto domain."""
        domain = self.domain if domain is None else domain
        if is_id_perm(x) and domain == self.domain:
            return self
        gens = [conj_perm(g, x) for g in self._gens]
        blocks = None if self._blocks is None else [[x[b] for b in block] for block in self._blocks]
        return PermutationGroup(domain, gens, blocks=blocks)

    def restricted(self, positions, domain=None):
        """Action on an invariant subset, renumbered in increasing position order."""
        positions = sorted(positions)
        idx = {p: i for i, p in enumerate(positions)}
        domain = domain if domain is not None else self.domain.subset(positions)
        try:
            gens = [tuple(idx[g[p]] for p in positions) for g in self._gens]
        except KeyError:
            raise NotInvariant("subset is not invariant under the group") from None
        blocks = None
        if self._blocks is not None:
            blocks = [[idx[b] for b in block if b in idx] for block in self._blocks]
        return PermutationGroup(domain, gens, blocks=blocks)


def embed_perm(p, positions, n):
    """Extend p (on len(positions) points) to n points, identity off positions."""
    out = list(range(n))
    for i, j in enumerate(p):
        out[positions[i]] = positions[j]
    return tuple(out)


def direct_product(domain, parts):
    """Group on domain generated by groups acting on disjoint position lists.

    parts is a list of (group, positions) with positions[i] the target of the
    group's i-th point; points outside every part are fixed.
    """
    n = len(domain)
    gens = []
    blocks = []
    young = True
    for group, positions in parts:
        gens.extend(embed_perm(g, positions, n) for g in group.raw_generators)
        if group.blocks is None:
            young = False
        else:
            blocks.extend([positions[b] for b in block] for block in group.blocks)
    return PermutationGroup(domain, gens, blocks=blocks if young else None)


# module level operations

def group_from_generators(gens, domain=None):
    gens = list(gens)
    if domain is None:
        if not gens:
            raise DomainMismatch("an empty generator list needs an explicit domain")
        domain = gens[0].domain
    if any(g.domain != domain for g in gens):
        raise DomainMismatch("generators live on different ground sets")
    return PermutationGroup.from_generators(domain, [g.images for g in gens])


def contains(group, p):
    return group.contains(p)


def orbit_partition(group, subset):
    pos = group.domain.positions(subset)
    els = group.domain.elements
    return [frozenset(els[i] for i in orb) for orb in group.orbits(pos)]


def pointwise_stabilizer(group, v):
    return group.pointwise_stabilizer(group.domain.position(v))


def setwise_stabilizer(group, *subsets):
    return group.setwise_stabilizer(*(group.domain.positions(s) for s in subsets))


def left_cosets(group, sub):
    return [Permutation(group.domain, g) for g in group.left_cosets(sub)]
