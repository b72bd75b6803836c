"""
Canonical labelings of generalized hypergraphs: sets of pairs (coset, edge)
with pairwise distinct edges, canonized against an ambient coset.

Edges are position bitmasks. The recursion keeps a focus set A, invariant
under the ambient group, on which all edges still differ.
"""

import logging
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import groupby

from helper.perm import GroundSet, ordered_ground, mult_perm
from helper.coset import LabelingCoset, full_label_coset, color_coset, lift_subset
from helper.objects import NodeStore, ordered_compare
from helper.utils import to_mask, from_mask, map_mask
from plugins.canon_base import (
    CanonResult, InstanceError, InvariantViolation, as_coset, context, _cl_int, _keep_minimal,
)


@dataclass(frozen=True)
class HyperPair:
    coset: LabelingCoset
    edge: frozenset

    def __post_init__(self):
        object.__setattr__(self, "edge", frozenset(self.edge))


# ordered images used as sort and branch keys

def hyper_image(pairs, labeling, store):
    """{(D^lambda, S^lambda)} as a node of store (over {1..n})."""
    target = store.ground
    members = []
    for coset, mask in pairs:
        atom = store.coset(coset.apply_map(labeling, target))
        edge = store.set([store.vertex_at(l) for l in from_mask(map_mask(mask, labeling))])
        members.append(store.tuple([atom, edge]))
    return store.set(members)


def _check_edges_differ(pairs, area, ctx):
    if ctx.debug:
        seen = {mask & area for _, mask in pairs}
        ctx.check(len(seen) == len(pairs), "edges agree on the focus set")


def _iterate_int(cosets, coset, ctx):
    for t in cosets:
        coset = _cl_int(t, coset, ctx)
    return coset


def _cl_hyper(pairs, area, coset, ctx):
    """Canonize pairs (coset, edge mask) with focus area (a mask) inside coset."""
    with ctx.guard("cl_hyper"):
        ground = coset.ground
        while True:
            _check_edges_differ(pairs, area, ctx)
            if not pairs:
                return coset
            size = bin(area).count("1")
            if size <= 1:
                if len(pairs) > 2:
                    raise InvariantViolation("more than two edges on a focus set of size one")
                if len(pairs) == 2 and pairs[0][1] & area:
                    pairs = [pairs[1], pairs[0]]
                tasks = []
                for d, mask in pairs:
                    tasks += [d, lift_subset(ground, from_mask(mask))]
                return _iterate_int(tasks, coset, ctx)
            orbits = coset.orbits(from_mask(area))
            if len(orbits) == 1:
                return _cl_hyper_transitive(pairs, area, coset, ctx)
            first = min(orbits, key=coset.image_key)
            first_mask = to_mask(first)
            rest_mask = area & ~first_mask
            bundles = {}
            for d, mask in pairs:
                bundles.setdefault(mask & first_mask, []).append((d, mask))
            s = len(bundles)
            if s == len(pairs):
                area = first_mask
            elif s == 1:
                area = rest_mask
            else:
                return _cl_hyper_bundles(list(bundles.items()), first_mask, rest_mask, coset, ctx)


def _cl_hyper_bundles(bundles, first_mask, rest_mask, coset, ctx):
    results = ctx.map(lambda b: _cl_hyper(b[1], rest_mask, coset, ctx), bundles)
    store = NodeStore(ordered_ground(coset.degree))
    keyed = []
    for (r, members), res in zip(bundles, results):
        keyed.append((hyper_image(members, res.rep, store), res, r))
    keyed.sort(key=cmp_to_key(lambda x, y: ordered_compare(x[0], y[0])))
    parts = [[(res, r) for _, res, r in grp]
             for _, grp in groupby(keyed, key=lambda k: k[0].uid)]
    logging.debug(f"cl_hyper: {len(bundles)} bundles in {len(parts)} classes")
    for part in parts:
        coset = _cl_hyper(part, first_mask, coset, ctx)
    return coset


def _cl_hyper_transitive(pairs, area, coset, ctx):
    labels = sorted(coset.image(from_mask(area)))
    half = labels[:len(labels) // 2]
    psi, reps = coset.label_group.stabilizer_cosets(half)
    logging.debug(f"cl_hyper: transitive on {len(labels)} points, {len(reps)} branches")
    branches = [LabelingCoset(coset.ground, mult_perm(coset.rep, theta), psi) for theta in reps]
    results = ctx.map(lambda b: _cl_hyper(pairs, area, b, ctx), branches)
    store = NodeStore(ordered_ground(coset.degree))
    key = cmp_to_key(ordered_compare)
    return _keep_minimal(results, lambda r: key(hyper_image(pairs, r.rep, store)), ctx)


def _as_pairs(K, ground):
    pairs = []
    seen = set()
    for hp in K:
        if hp.coset.ground != ground:
            raise InstanceError("hyperedge coset over a different ground set")
        mask = to_mask(ground.positions(hp.edge))
        if mask in seen:
            raise InstanceError("repeated hyperedge")
        seen.add(mask)
        pairs.append((hp.coset, mask))
    return pairs


def cl_hyper(K, C, ctx=None):
    coset = as_coset(C)
    pairs = _as_pairs(K, coset.ground)
    return CanonResult(_cl_hyper(pairs, (1 << coset.degree) - 1, coset, context(ctx)))


def cl_hypergraph(ground, edges, C=None, ctx=None):
    """Plain hypergraph: every edge carries Label(V)."""
    full = full_label_coset(ground)
    C = full if C is None else C
    return cl_hyper([HyperPair(full, e) for e in edges], C, ctx)


def cl_colored_hypergraph(edges, colors, ground=None, ctx=None):
    """Hypergraph with an ordered vertex coloring; colors list the classes in order."""
    if ground is None:
        ground = GroundSet(v for c in colors for v in c)
    return cl_hypergraph(ground, edges, color_coset(ground, colors), ctx)
