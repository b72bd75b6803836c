"""
Canonical labelings of points, matchings and coset intersections, and the
iterated-instance combinator the higher canonizers are built from.

Every canonizer takes a labeling coset C = Delta·rho and returns a subcoset
Aut(X)∩Delta · pi. Internally the canonizers work on LabelingCoset values;
the public functions wrap the outcome into a CanonResult.
"""

import logging
import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field

from config import Config
from helper.perm import DomainMismatch, GroundSet, direct_product, ordered_ground, mult_perm
from helper.coset import LabelingCoset, span


class InstanceError(ValueError):
    pass


class InvariantViolation(AssertionError):
    pass


class RecursionLimitExceeded(RuntimeError):
    pass


# run context

_local = threading.local()


@dataclass
class CanonContext:
    """Per-run settings, call counters and the optional worker pool."""

    threads: int = field(default_factory=lambda: Config.THREADS)
    debug: bool = field(default_factory=lambda: Config.DEBUG_CHECKS)
    max_depth: int = field(default_factory=lambda: Config.MAX_DEPTH)
    stats: Counter = field(default_factory=Counter)

    def __post_init__(self):
        self._pool = None
        self._lock = threading.Lock()

    @contextmanager
    def guard(self, name):
        depth = getattr(_local, "depth", 0) + 1
        if depth > self.max_depth:
            raise RecursionLimitExceeded(f"{name}: recursion depth above {self.max_depth}")
        with self._lock:
            self.stats[name] += 1
        _local.depth = depth
        try:
            yield
        finally:
            _local.depth = depth - 1

    def map(self, fn, items):
        """list(map(fn, items)), on the worker pool at the outermost parallel level."""
        items = list(items)
        if self.threads <= 1 or len(items) <= 1 or getattr(_local, "worker", False):
            return [fn(x) for x in items]
        if self._pool is None:
            self._pool = ThreadPoolExecutor(max_workers=self.threads, thread_name_prefix="canon")
        depth = getattr(_local, "depth", 0)

        def run(x):
            _local.worker = True
            _local.depth = depth
            return fn(x)

        return list(self._pool.map(run, items))

    def check(self, condition, message):
        if self.debug and not condition:
            raise InvariantViolation(message)

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def context(ctx=None):
    return ctx if ctx is not None else CanonContext()


# results

@dataclass(frozen=True)
class CanonResult:
    coset: LabelingCoset

    @property
    def ground(self):
        return self.coset.ground

    @property
    def aut(self):
        """The automorphism part Aut(X)∩Delta acting on the ground set."""
        return self.coset.group

    def order(self):
        return self.coset.order()

    def labeling(self):
        return self.coset.labeling()

    def __contains__(self, labeling):
        return self.coset.contains(labeling)

    def __eq__(self, other):
        return isinstance(other, CanonResult) and self.coset == other.coset

    __hash__ = None


def as_coset(c):
    return c.coset if isinstance(c, CanonResult) else c


@dataclass(frozen=True)
class Matching:
    """Pairs (v1, v2) with v1 in left and v2 in right, no coordinate used twice."""

    pairs: frozenset
    left: frozenset
    right: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        object.__setattr__(self, "left", frozenset(self.left))
        object.__setattr__(self, "right", frozenset(self.right))
        if self.left & self.right:
            raise InstanceError("the two sides of a matching must be disjoint")
        firsts = [a for a, _ in self.pairs]
        seconds = [b for _, b in self.pairs]
        if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
            raise InstanceError("a vertex occurs in two pairs of the matching")
        if not set(firsts) <= self.left or not set(seconds) <= self.right:
            raise InstanceError("matching pair outside the two sides")


# canonizers on positions

def _cl_point(p, coset, ctx):
    with ctx.guard("cl_point"):
        a = coset.rep[p]
        trans = coset.label_group.orbit_transversal(a)
        m = min(trans)
        stab = coset.label_group.pointwise_stabilizer(m)
        return LabelingCoset(coset.ground, mult_perm(coset.rep, trans[m]), stab)


def _pairs_key(pairs, rep):
    labels = sorted((rep[a], rep[b]) for a, b in pairs)
    return len(labels), labels


def _cl_match(pairs, area, coset, ctx):
    """(Aut(M)∩Delta)·pi for pairs from V1 x area, Delta stabilizing V1 and area."""
    with ctx.guard("cl_match"):
        while True:
            if not pairs:
                return coset
            if len(area) == 1:
                (a, _), = pairs
                return _cl_point(a, coset, ctx)
            orbits = coset.orbits(area)
            if len(orbits) == 1:
                return _cl_match_transitive(pairs, area, coset, ctx)
            first = min(orbits, key=coset.image_key)
            inside = [(a, b) for a, b in pairs if b in first]
            coset = _cl_match(inside, first, coset, ctx)
            pairs = [(a, b) for a, b in pairs if b not in first]
            area = area - first


def _cl_match_transitive(pairs, area, coset, ctx):
    labels = sorted(coset.image(area))
    half = labels[:len(labels) // 2]
    psi, reps = coset.label_group.stabilizer_cosets(half)
    logging.debug(f"cl_match: transitive on {len(area)} points, {len(reps)} branches")
    branches = [LabelingCoset(coset.ground, mult_perm(coset.rep, theta), psi) for theta in reps]
    results = ctx.map(lambda b: _cl_match(pairs, area, b, ctx), branches)
    return _keep_minimal(results, lambda r: _pairs_key(pairs, r.rep), ctx)


def _keep_minimal(results, key, ctx):
    keys = [key(r) for r in results]
    best = min(keys)
    kept = [r for r, k in zip(results, keys) if k == best]
    if ctx.debug:
        for i, r in enumerate(kept):
            for s in kept[i + 1:]:
                ctx.check(not (r == s), "two branches produced the same subcoset")
    return span(kept)


def _intersection_ground(n):
    return GroundSet(range(2 * n))


def _cl_int(t, c, ctx):
    """Canonical subcoset of C with group Theta∩Delta; T itself when T lies in C."""
    with ctx.guard("cl_int"):
        if t.ground != c.ground:
            raise DomainMismatch("cosets over different ground sets")
        if c.issuperset(t):
            return t
        if t.issuperset(c):
            return c
        n = c.degree
        rep = tuple(c.rep) + tuple(l + n for l in t.rep)
        group = direct_product(ordered_ground(2 * n), [
            (c.label_group, list(range(n))),
            (t.label_group, list(range(n, 2 * n))),
        ])
        # positions n..2n-1 carry the copy of V labelled by T
        joint = LabelingCoset(_intersection_ground(n), rep, group)
        pairs = [(n + i, i) for i in range(n)]
        res = _cl_match(pairs, frozenset(range(n)), joint, ctx)
        out = LabelingCoset(c.ground, res.rep[:n],
                            res.label_group.restricted(range(n), ordered_ground(n)))
        if ctx.debug:
            ctx.check(c.issuperset(out), "cl_int result is not inside C")
        return out


# public api

def cl_point(v, C, ctx=None):
    coset = as_coset(C)
    return CanonResult(_cl_point(coset.ground.position(v), coset, context(ctx)))


def cl_match(M, C, ctx=None):
    coset = as_coset(C)
    ctx = context(ctx)
    ground = coset.ground
    left = coset.image(ground.positions(M.left))
    right = ground.positions(M.right)
    if not coset.label_group.is_invariant(left) or not coset.label_group.is_invariant(coset.image(right)):
        raise InstanceError("the coset's group does not stabilize the two sides of the matching")
    pairs = [(ground.position(a), ground.position(b)) for a, b in M.pairs]
    return CanonResult(_cl_match(pairs, frozenset(right), coset, ctx))


def cl_int(T, C, ctx=None):
    return CanonResult(_cl_int(as_coset(T), as_coset(C), context(ctx)))


def cl_iterated(items, C, ctx=None):
    """Thread C through the tasks: CL(X1..Xt; C) = CL(X2..Xt; CL(X1, C)).

    items are (canonizer, object) pairs; a canonizer is called as
    canonizer(object, coset, ctx) and returns a CanonResult or a coset.
    """
    ctx = context(ctx)
    coset = as_coset(C)
    for canonizer, obj in items:
        coset = as_coset(canonizer(obj, coset, ctx))
    return CanonResult(coset)
