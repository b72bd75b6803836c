"""
Canonical labelings of sets of labeling cosets.

The recursion runs on pairs (payload, guide): the payloads are the cosets
being canonized, the guides are cosets whose groups stabilize the focus set A
and the fixed set C. All guides agree on C and pairwise differ on A ∪ C.
"""

import logging
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import groupby

from helper.perm import ordered_ground, id_perm, mult_perm
from helper.coset import LabelingCoset, CosetRestriction, lift_subset
from helper.objects import NodeStore, ordered_compare
from helper.utils import to_mask
from plugins.canon_base import (
    CanonResult, InstanceError, as_coset, context, _cl_int, _keep_minimal,
)
from plugins.canon_hyper import _cl_hyper


@dataclass(frozen=True)
class SetPair:
    payload: LabelingCoset
    guide: LabelingCoset


# keys

def set_image(pairs, labeling, store):
    """{(payload^lambda, guide^lambda)} as a node of store."""
    target = store.ground
    return store.set([
        store.tuple([store.coset(p.apply_map(labeling, target)), store.coset(g.apply_map(labeling, target))])
        for p, g in pairs
    ])


def _label_set(store, labels):
    return store.set([store.vertex_at(l) for l in labels])


def _triple(guide, area, fixed, store):
    """(A^tau, C^tau, Theta^Can) for the guide Theta·tau."""
    n = guide.degree
    group = LabelingCoset(store.ground, id_perm(n), guide.label_group)
    return store.tuple([_label_set(store, guide.image(area)), _label_set(store, guide.image(fixed)),
                        store.coset(group)])


def _ordered_parts(items, key_node):
    """Split items into classes of equal key, classes in increasing key order."""
    keyed = sorted(((key_node(x), x) for x in items),
                   key=cmp_to_key(lambda a, b: ordered_compare(a[0], b[0])))
    return [[x for _, x in grp] for _, grp in groupby(keyed, key=lambda k: k[0].uid)]


def _bundle(items, key):
    """Unordered partition by equality of key(item); keys need only support ==."""
    bundles = []
    for x in items:
        k = key(x)
        for b in bundles:
            if b[0] == k:
                b[1].append(x)
                break
        else:
            bundles.append((k, [x]))
    return bundles


def _check_guides(pairs, area, fixed, ctx):
    if not ctx.debug or len(pairs) < 2:
        return
    first = CosetRestriction(pairs[0][1], fixed)
    for _, g in pairs[1:]:
        ctx.check(CosetRestriction(g, fixed) == first, "guides disagree on the fixed set")
    both = area | fixed
    rs = [CosetRestriction(g, both) for _, g in pairs]
    for i in range(len(rs)):
        for j in range(i + 1, len(rs)):
            ctx.check(not (rs[i] == rs[j]), "two guides agree on the focus and fixed sets")


# recursion

def _iterate_int(cosets, coset, ctx):
    for t in cosets:
        coset = _cl_int(t, coset, ctx)
    return coset


def _cl_set(pairs, area, fixed, coset, ctx):
    """pairs: list of (payload, guide); area and fixed: disjoint frozensets of positions."""
    with ctx.guard("cl_set"):
        while True:
            _check_guides(pairs, area, fixed, ctx)
            ground = coset.ground
            if not pairs:
                return _iterate_int([lift_subset(ground, area), lift_subset(ground, fixed)], coset, ctx)
            if len(area) <= 1:
                ordered = sorted(pairs, key=lambda pg: pg[1].image_key(area))
                if ctx.debug:
                    keys = [pg[1].image_key(area) for pg in ordered]
                    ctx.check(len(set(keys)) == len(keys), "guides do not order strictly on the focus set")
                return _iterate_int([p for p, _ in ordered] + [g for _, g in ordered], coset, ctx)

            store = NodeStore(ordered_ground(coset.degree))
            parts = _ordered_parts(pairs, lambda pg: _triple(pg[1], area, fixed, store))
            if len(parts) > 1:
                logging.debug(f"cl_set: {len(pairs)} pairs split into {len(parts)} types")
                for part in parts:
                    coset = _cl_set(part, area, fixed, coset, ctx)
                return coset

            guide = pairs[0][1]
            if len(guide.orbits(area)) == 1:
                return _cl_set_transitive(pairs, area, fixed, coset, ctx)

            firsts = [min(g.orbits(area), key=g.image_key) for _, g in pairs]
            if len(set(firsts)) > 1:
                return _cl_set_hyper(pairs, firsts, area, fixed, coset, ctx)

            first = firsts[0]
            rest = area - first
            wider = fixed | first
            bundles = _bundle(pairs, lambda pg: CosetRestriction(pg[1], wider))
            s = len(bundles)
            if s == len(pairs):
                area = first
            elif s == 1:
                area, fixed = rest, wider
            else:
                return _cl_set_bundles(bundles, first, rest, fixed, coset, ctx)


def _cl_set_bundles(bundles, first, rest, fixed, coset, ctx):
    wider = fixed | first
    results = ctx.map(lambda b: _cl_set(b[1], rest, wider, coset, ctx), bundles)
    store = NodeStore(ordered_ground(coset.degree))
    replaced = []
    for (restriction, members), res in zip(bundles, results):
        replaced.append((set_image(members, res.rep, store), (res, restriction.lift())))
    replaced.sort(key=cmp_to_key(lambda a, b: ordered_compare(a[0], b[0])))
    parts = [[x for _, x in grp] for _, grp in groupby(replaced, key=lambda k: k[0].uid)]
    logging.debug(f"cl_set: {len(bundles)} bundles in {len(parts)} classes")
    for part in parts:
        coset = _cl_set(part, first, fixed, coset, ctx)
    return coset


def _cl_set_hyper(pairs, firsts, area, fixed, coset, ctx):
    bundles = {}
    for pg, f in zip(pairs, firsts):
        bundles.setdefault(f, []).append(pg)
    bundles = list(bundles.items())
    results = ctx.map(lambda b: _cl_set(b[1], area, fixed, coset, ctx), bundles)
    store = NodeStore(ordered_ground(coset.degree))
    keyed = []
    for (edge, members), res in zip(bundles, results):
        keyed.append((set_image(members, res.rep, store), (res, to_mask(edge))))
    keyed.sort(key=cmp_to_key(lambda a, b: ordered_compare(a[0], b[0])))
    parts = [[x for _, x in grp] for _, grp in groupby(keyed, key=lambda k: k[0].uid)]
    logging.debug(f"cl_set: {len(bundles)} orbit bundles handed to cl_hyper in {len(parts)} classes")
    everything = (1 << coset.degree) - 1
    for part in parts:
        coset = _cl_hyper(part, everything, coset, ctx)
    return coset


def _cl_set_transitive(pairs, area, fixed, coset, ctx):
    guide = pairs[0][1]
    labels = sorted(guide.image(area))
    half = labels[:len(labels) // 2]
    psi, thetas = guide.label_group.stabilizer_cosets(half)
    refined = [(p, LabelingCoset(g.ground, mult_perm(g.rep, theta), psi))
               for p, g in pairs for theta in thetas]
    groups = _bundle(refined, lambda pg: CosetRestriction(pg[1], fixed))
    logging.debug(f"cl_set: transitive on {len(area)} points, {len(refined)} refined pairs in {len(groups)} groups")
    results = ctx.map(lambda grp: _cl_set(grp[1], area, fixed, coset, ctx), groups)
    store = NodeStore(ordered_ground(coset.degree))
    key = cmp_to_key(ordered_compare)
    return _keep_minimal(results, lambda r: key(set_image(pairs, r.rep, store)), ctx)


# public api

def _distinct(cosets):
    out = []
    for c in cosets:
        if not any(c == d for d in out):
            out.append(c)
    return out


def _cl_set_family(members, coset, ctx):
    """Preprocess a set of distinct cosets against the ambient coset, then canonize it."""
    with ctx.guard("cl_set"):
        reduced = ctx.map(lambda d: _cl_int(d, coset, ctx), members)
        store = NodeStore(ordered_ground(coset.degree))
        images = [store.coset(d.apply_map(r.rep, store.ground)) for d, r in zip(members, reduced)]
        parts = _ordered_parts(range(len(members)), images.__getitem__)
        everything = frozenset(range(coset.degree))
        for part in parts:
            coset = _cl_set([(reduced[i], reduced[i]) for i in part], everything, frozenset(), coset, ctx)
        return coset


def cl_set(J, C, ctx=None):
    """{delta in Delta : delta^-1 permutes J}·pi for a set J of labeling cosets."""
    coset = as_coset(C)
    members = _distinct(as_coset(c) for c in J)
    if any(c.ground != coset.ground for c in members):
        raise InstanceError("coset in the set lives on a different ground set")
    return CanonResult(_cl_set_family(members, coset, context(ctx)))


def cl_set_pairs(L, A, C_fixed, C, ctx=None):
    """The generalized instance: SetPairs with focus A and fixed set C_fixed (vertex sets)."""
    coset = as_coset(C)
    ground = coset.ground
    area = frozenset(ground.positions(A))
    fixed = frozenset(ground.positions(C_fixed))
    if area & fixed:
        raise InstanceError("focus and fixed sets must be disjoint")
    for sp in L:
        g = sp.guide.label_group
        if not (g.is_invariant(sp.guide.image(area)) and g.is_invariant(sp.guide.image(fixed))):
            raise InstanceError("a guide group does not stabilize the focus and fixed sets")
    pairs = [(sp.payload, sp.guide) for sp in L]
    return CanonResult(_cl_set(pairs, area, fixed, coset, context(ctx)))
