"""
Hereditarily finite objects over a ground set.

An object is built from atoms (vertices and labeling cosets) by forming
tuples and sets. Nodes are hash-consed in a NodeStore, so equal subobjects
are one node and equality inside a store is identity. Over the ordered ground
set {1..n} set children are kept sorted by the order on objects; over other
ground sets they are kept in node-id order, which is deterministic but not
isomorphism-invariant.
"""

import threading
from functools import cmp_to_key

from helper.perm import DomainMismatch, Permutation, ordered_ground
from helper.coset import Labeling, LabelingCoset, UnorderedGround, compare as compare_cosets

VERTEX, COSET, TUPLE, SET = 0, 1, 2, 3
KIND_NAMES = {VERTEX: "vertex", COSET: "coset", TUPLE: "tuple", SET: "set"}


class ObjectNode:
    __slots__ = ("store", "kind", "value", "children", "uid")

    def __init__(self, store, kind, value, children, uid):
        self.store = store
        self.kind = kind
        self.value = value
        self.children = children
        self.uid = uid

    def __repr__(self):
        if self.kind == VERTEX:
            return repr(self.store.ground.elements[self.value])
        if self.kind == COSET:
            return f"coset(order={self.value.order()})"
        inner = ", ".join(map(repr, self.children))
        return f"({inner})" if self.kind == TUPLE else "{" + inner + "}"

    @property
    def element(self):
        return self.store.ground.elements[self.value]


class NodeStore:
    """Node table for one ground set."""

    def __init__(self, ground):
        self.ground = ground
        self._table = {}
        self._cosets = {}
        self._nodes = []
        self._compare_cache = {}
        self._lock = threading.RLock()

    def __len__(self):
        return len(self._nodes)

    def _intern(self, key, kind, value, children):
        with self._lock:
            node = self._table.get(key)
            if node is None:
                node = ObjectNode(self, kind, value, children, len(self._nodes))
                self._nodes.append(node)
                self._table[key] = node
            return node

    def vertex(self, v):
        return self.vertex_at(self.ground.position(v))

    def vertex_at(self, p):
        return self._intern((VERTEX, p), VERTEX, p, ())

    def coset(self, coset):
        if coset.ground != self.ground:
            raise DomainMismatch("coset atom over a different ground set")
        with self._lock:
            bucket = self._cosets.setdefault(coset.fingerprint(), [])
            for node in bucket:
                if node.value == coset:
                    return node
            node = ObjectNode(self, COSET, coset, (), len(self._nodes))
            self._nodes.append(node)
            bucket.append(node)
            return node

    def tuple(self, children):
        children = tuple(self.adopt(c) for c in children)
        return self._intern((TUPLE,) + tuple(c.uid for c in children), TUPLE, None, children)

    def set(self, children):
        members = {}
        for c in children:
            c = self.adopt(c)
            members[c.uid] = c
        key = (SET,) + tuple(sorted(members))
        with self._lock:
            node = self._table.get(key)
            if node is not None:
                return node
        ordered = list(members.values())
        if self.ground.ordered:
            ordered.sort(key=cmp_to_key(ordered_compare))
        else:
            ordered.sort(key=lambda c: c.uid)
        return self._intern(key, SET, None, tuple(ordered))

    def adopt(self, node):
        """The node of this store equal to node (which may come from another store)."""
        if node.store is self:
            return node
        if node.store.ground != self.ground:
            raise DomainMismatch("node over a different ground set")
        if node.kind == VERTEX:
            return self.vertex_at(node.value)
        if node.kind == COSET:
            return self.coset(node.value)
        if node.kind == TUPLE:
            return self.tuple(node.children)
        return self.set(node.children)

    def build(self, value):
        """Node from nested Python values.

        tuples become tuple nodes, sets and frozensets set nodes, LabelingCoset
        instances coset atoms, ObjectNode instances are adopted, anything else
        is a vertex of the ground set.
        """
        if isinstance(value, ObjectNode):
            return self.adopt(value)
        if isinstance(value, LabelingCoset):
            return self.coset(value)
        if isinstance(value, tuple):
            return self.tuple([self.build(v) for v in value])
        if isinstance(value, (set, frozenset)):
            return self.set([self.build(v) for v in value])
        return self.vertex(value)


class ObjectDag:
    """An object together with the store holding its nodes."""

    __slots__ = ("store", "root")

    def __init__(self, store, root):
        if root.store is not store:
            root = store.adopt(root)
        self.store = store
        self.root = root

    def __repr__(self):
        return f"<ObjectDag over {len(self.ground)} points: {self.root!r}>"

    @property
    def ground(self):
        return self.store.ground

    @classmethod
    def from_python(cls, ground, value):
        store = NodeStore(ground)
        return cls(store, store.build(value))

    @classmethod
    def hypergraph(cls, ground, edges):
        store = NodeStore(ground)
        return cls(store, store.set([store.set([store.vertex(v) for v in e]) for e in edges]))

    graph = hypergraph

    @classmethod
    def relational_structure(cls, ground, relations):
        """Tuple of relations, each a set of tuples of vertices."""
        store = NodeStore(ground)
        rels = [store.set([store.tuple([store.vertex(v) for v in t]) for t in rel]) for rel in relations]
        return cls(store, store.tuple(rels))

    @classmethod
    def function(cls, ground, mapping):
        """Set of pairs (x, f(x))."""
        store = NodeStore(ground)
        pairs = [store.tuple([store.vertex(x), store.vertex(y)]) for x, y in mapping.items()]
        return cls(store, store.set(pairs))

    def tclosure(self):
        return tclosure(self.root)

    def apply_map(self, mu, target=None):
        return apply_map(self, mu, target)

    def to_python(self):
        return to_python(self.root)

    def equals(self, other):
        if self.ground != other.ground:
            return False
        if self.store is other.store:
            return self.root is other.root
        if self.ground.ordered:
            return ordered_compare(self.root, other.root) == 0
        scratch = NodeStore(self.ground)
        return scratch.adopt(self.root) is scratch.adopt(other.root)


def tclosure(root):
    """All nodes reachable from root, children before parents."""
    seen = set()
    out = []
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            out.append(node)
            continue
        if node.uid in seen:
            continue
        seen.add(node.uid)
        stack.append((node, True))
        for c in reversed(node.children):
            if c.uid not in seen:
                stack.append((c, False))
    return out


def to_python(node):
    if node.kind == VERTEX:
        return node.element
    if node.kind == COSET:
        return node.value
    if node.kind == TUPLE:
        return tuple(to_python(c) for c in node.children)
    return frozenset(to_python(c) for c in node.children)


def _as_images(mu):
    if isinstance(mu, (Labeling, Permutation)):
        return tuple(mu.images)
    return tuple(mu)


def image_node(node, mu, store, memo=None):
    """Image of node under the position bijection mu, built in store."""
    memo = {} if memo is None else memo
    for n in tclosure(node):
        if n.uid in memo:
            continue
        if n.kind == VERTEX:
            memo[n.uid] = store.vertex_at(mu[n.value])
        elif n.kind == COSET:
            memo[n.uid] = store.coset(n.value.apply_map(mu, store.ground))
        elif n.kind == TUPLE:
            memo[n.uid] = store.tuple([memo[c.uid] for c in n.children])
        else:
            memo[n.uid] = store.set([memo[c.uid] for c in n.children])
    return memo[node.uid]


def apply_map(dag, mu, target=None):
    """Image of an object under a bijection.

    mu is a Labeling (the target is then {1..n}), a Permutation of the ground
    set, or a tuple of positions together with the target ground set.
    """
    if target is None:
        target = ordered_ground(len(dag.ground)) if isinstance(mu, Labeling) else dag.ground
    if len(target) != len(dag.ground):
        raise DomainMismatch("bijection between ground sets of different size")
    images = _as_images(mu)
    if sorted(images) != list(range(len(images))):
        raise DomainMismatch("map is not a bijection")
    store = NodeStore(target)
    return ObjectDag(store, image_node(dag.root, images, store))


def ordered_compare(x, y):
    """-1, 0 or 1 as object x precedes, equals or follows y."""
    if isinstance(x, ObjectDag):
        x = x.root
    if isinstance(y, ObjectDag):
        y = y.root
    if x is y:
        return 0
    ground = x.store.ground
    if ground != y.store.ground:
        raise DomainMismatch("objects over different ground sets")
    if not ground.ordered:
        raise UnorderedGround("the order on objects is only defined over {1..n}")
    return _compare(x, y)


def _compare(x, y):
    if x is y:
        return 0
    same_store = x.store is y.store
    if same_store:
        key = (x.uid, y.uid)
        cached = x.store._compare_cache.get(key)
        if cached is not None:
            return cached
    if x.kind != y.kind:
        out = -1 if x.kind < y.kind else 1
    elif x.kind == VERTEX:
        out = (x.value > y.value) - (x.value < y.value)
    elif x.kind == COSET:
        out = compare_cosets(x.value, y.value)
    elif len(x.children) != len(y.children):
        out = -1 if len(x.children) < len(y.children) else 1
    else:
        out = 0
        for a, b in zip(x.children, y.children):
            out = _compare(a, b)
            if out:
                break
    if same_store:
        x.store._compare_cache[(x.uid, y.uid)] = out
        x.store._compare_cache[(y.uid, x.uid)] = -out
    return out


object_key = cmp_to_key(ordered_compare)


def relabel_to_ordered(dag, labeling):
    """dag^labeling as an ordered object, for a labeling given as label tuple."""
    n = len(dag.ground)
    store = NodeStore(ordered_ground(n))
    return ObjectDag(store, image_node(dag.root, tuple(labeling), store))
