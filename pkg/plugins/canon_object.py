"""
Canonical labelings and canonical forms of hereditarily finite objects,
with the colored-object, code, permutation-group and partitioned-graph
applications built on top.
"""

import logging
import threading
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import groupby

from config import Config
from helper.perm import GroundSet, mult_perm, ordered_ground
from helper.coset import full_label_coset, color_coset
from helper.objects import (
    NodeStore, ObjectDag, image_node, ordered_compare, relabel_to_ordered, VERTEX, COSET, TUPLE,
)
from helper.encoding import encode
from helper.oracle import BudgetExceeded
from plugins.canon_base import CanonResult, InstanceError, as_coset, context, _cl_point, _cl_int
from plugins.canon_set import _cl_set_family


class CanonTable:
    """Results per node for one ambient coset; each node is computed once."""

    def __init__(self, enabled=True):
        self.enabled = enabled
        self._results = {}
        self._pending = {}
        self._lock = threading.Lock()
        self.hits = 0

    def __len__(self):
        return len(self._results)

    def get(self, node, compute):
        if not self.enabled:
            return compute()
        with self._lock:
            if node.uid in self._results:
                self.hits += 1
                return self._results[node.uid]
            event = self._pending.get(node.uid)
            owner = event is None
            if owner:
                event = self._pending[node.uid] = threading.Event()
        if not owner:
            event.wait()
            out = self._results[node.uid]
            if isinstance(out, BaseException):
                raise out
            return out
        try:
            out = compute()
        except BaseException as e:
            with self._lock:
                self._results[node.uid] = e
            raise
        finally:
            with self._lock:
                self._pending.pop(node.uid, None)
            event.set()
        with self._lock:
            self._results[node.uid] = out
        return out


class _ObjectRun:
    def __init__(self, dag, coset, ctx, memo):
        self.dag = dag
        self.coset = coset
        self.ctx = ctx
        self.table = CanonTable(enabled=memo)
        self.keys = NodeStore(ordered_ground(len(dag.ground)))

    def canon(self, node):
        return self.table.get(node, lambda: self._compute(node))

    def _compute(self, node):
        ctx, coset = self.ctx, self.coset
        with ctx.guard("cl_object"):
            if node.kind == VERTEX:
                return _cl_point(node.value, coset, ctx)
            if node.kind == COSET:
                return _cl_int(node.value, coset, ctx)
            results = ctx.map(self.canon, node.children)
            if node.kind == TUPLE:
                out = coset
                for r in results:
                    out = _cl_int(r, out, ctx)
                return out
            return self._canon_set(node, results)

    def _canon_set(self, node, results):
        ctx = self.ctx
        keyed = []
        for child, res in zip(node.children, results):
            key = image_node(child, res.rep, self.keys)
            if ctx.debug and res.label_group.raw_generators:
                other = mult_perm(res.rep, res.label_group.raw_generators[0])
                ctx.check(image_node(child, other, self.keys) is key,
                          "child image depends on the chosen labeling")
            keyed.append((key, res))
        keyed.sort(key=cmp_to_key(lambda a, b: ordered_compare(a[0], b[0])))
        parts = [[res for _, res in grp] for _, grp in groupby(keyed, key=lambda k: k[0].uid)]
        logging.debug(f"cl_object: set of {len(results)} children in {len(parts)} classes")
        out = self.coset
        for part in parts:
            out = _cl_set_family(part, out, ctx)
        return out


def cl_object(X, C=None, ctx=None, memo=True):
    """Aut((X, C))·pi for an object over an unordered ground set."""
    if X.ground.ordered:
        raise InstanceError("canonical labelings are defined for objects over unordered ground sets")
    coset = full_label_coset(X.ground) if C is None else as_coset(C)
    if coset.ground != X.ground:
        raise InstanceError("object and coset live on different ground sets")
    ctx = context(ctx)
    run = _ObjectRun(X, coset, ctx, memo)
    out = run.canon(X.root)
    logging.debug(f"cl_object: {len(run.table)} nodes canonized, {run.table.hits} table hits")
    return CanonResult(out)


def canonical_form(X, ctx=None, result=None):
    """X^lambda for lambda in CL(X); the same ordered object for every choice of lambda."""
    if result is None:
        result = cl_object(X, ctx=ctx)
    return relabel_to_ordered(X, result.coset.rep)


def canonical_encoding(X, ctx=None):
    return encode(canonical_form(X, ctx))


def is_isomorphic(X, Y, ctx=None):
    if len(X.ground) != len(Y.ground):
        return False
    return canonical_encoding(X, ctx) == canonical_encoding(Y, ctx)


def cl_colored_object(X, colors, ctx=None):
    return cl_object(X, color_coset(X.ground, colors), ctx)


# codes

@dataclass(frozen=True)
class Code:
    positions: GroundSet
    alphabet: tuple
    words: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        words = tuple(dict(w) if isinstance(w, dict) else dict(zip(self.positions, w)) for w in self.words)
        object.__setattr__(self, "words", words)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InstanceError("repeated alphabet symbol")
        symbols = set(self.alphabet)
        for w in words:
            if set(w) != set(self.positions.elements):
                raise InstanceError("a code word is not defined on every position")
            if not set(w.values()) <= symbols:
                raise InstanceError("a code word uses a symbol outside the alphabet")


def code_object(code):
    """Symbols become towers of singletons over the empty set, words sets of (position, symbol)."""
    store = NodeStore(code.positions)
    towers = [store.set([])]
    for _ in code.alphabet[1:]:
        towers.append(store.set([towers[-1]]))
    tower = dict(zip(code.alphabet, towers))
    words = [store.set([store.tuple([store.vertex(v), tower[s]]) for v, s in w.items()]) for w in code.words]
    return ObjectDag(store, store.set(words))


def cl_code(code, ctx=None):
    return cl_object(code_object(code), ctx=ctx)


# permutation groups

def permgroup_object(G, cap=None):
    cap = Config.PERMGROUP_ENUM_CAP if cap is None else cap
    order = G.order()
    if order > cap:
        raise BudgetExceeded(f"group of order {order} is above the enumeration cap {cap}")
    ground = GroundSet(G.domain.elements)
    store = NodeStore(ground)
    maps = [store.set([store.tuple([store.vertex_at(p), store.vertex_at(g[p])]) for p in range(len(ground))])
            for g in G.elements()]
    return ObjectDag(store, store.set(maps))


def cl_permgroup(G, ctx=None, cap=None):
    """Canonical labeling of {M(delta) : delta in G} with M(delta) = {(v, delta(v))}."""
    return cl_object(permgroup_object(G, cap), ctx=ctx)


# graphs with partitioned edge sets

def cl_partitioned_graph(ground, parts, ordered=True, ctx=None):
    """Graph whose edge set is split into parts, ordered or unordered.

    Each part is canonized on its own; the parts' canonical labelings are
    then combined by iterated intersection (ordered) or, class by class of
    isomorphic parts, as a set (unordered).
    """
    ctx = context(ctx)
    full = full_label_coset(ground)
    graphs = [ObjectDag.graph(ground, edges) for edges in parts]
    labelings = [cl_object(g, full, ctx).coset for g in graphs]
    if ordered:
        out = full
        for lam in labelings:
            out = _cl_int(lam, out, ctx)
        return CanonResult(out)
    keys = NodeStore(ordered_ground(len(ground)))
    keyed = [(image_node(g.root, lam.rep, keys), lam) for g, lam in zip(graphs, labelings)]
    keyed.sort(key=cmp_to_key(lambda a, b: ordered_compare(a[0], b[0])))
    out = full
    for _, grp in groupby(keyed, key=lambda k: k[0].uid):
        distinct = []
        for _, lam in grp:
            if not any(lam == d for d in distinct):
                distinct.append(lam)
        out = _cl_set_family(distinct, out, ctx)
    return CanonResult(out)
