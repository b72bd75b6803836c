import itertools
import random

import pytest

from helper.perm import DomainMismatch, GroundSet, Permutation, PermutationGroup, ordered_ground, transposition
from helper.coset import Labeling, LabelingCoset, UnorderedGround, full_label_coset
from helper.objects import (
    NodeStore, ObjectDag, apply_map, object_key, ordered_compare, relabel_to_ordered, tclosure,
)


def _ordered(value, n=4):
    return ObjectDag.from_python(ordered_ground(n), value)


def test_tclosure_of_atom_and_nested_set():
    V = GroundSet("vw")
    atom = ObjectDag.from_python(V, "v")
    assert [n.element for n in atom.tclosure()] == ["v"]
    X = ObjectDag.from_python(V, frozenset({"v", ("v", "w")}))
    closure = X.tclosure()
    assert len(closure) == 4
    assert closure[-1] is X.root
    assert {repr(n) for n in closure if n.kind == 0} == {"'v'", "'w'"}


def test_shared_subobjects_are_stored_once():
    V = GroundSet("abc")
    store = NodeStore(V)
    e1 = store.set([store.vertex("a"), store.vertex("b")])
    e2 = store.set([store.vertex("b"), store.vertex("a")])
    assert e1 is e2
    graph = store.set([e1, e2, store.set([store.vertex("c")])])
    assert len(graph.children) == 2
    assert len(tclosure(graph)) <= len(store)


def test_set_normalization_is_idempotent():
    store = NodeStore(ordered_ground(3))
    s = store.set([store.vertex(3), store.vertex(1), store.vertex(2)])
    assert [c.value for c in s.children] == [0, 1, 2]
    assert store.set(s.children) is s


def test_apply_map_on_graph_edges():
    V = GroundSet("abcd")
    G = ObjectDag.graph(V, [{"a", "b"}, {"b", "c"}])
    mu = Permutation.from_cycles(V, ["a", "d"])
    image = G.apply_map(mu)
    assert image.to_python() == frozenset({frozenset({"d", "b"}), frozenset({"b", "c"})})
    assert apply_map(image, mu.inverse()).equals(G)
    assert G.apply_map(Permutation(V, range(4))).equals(G)


def test_apply_map_preserves_closure_size():
    rng = random.Random(5)
    V = GroundSet("abcde")
    edges = [frozenset(rng.sample("abcde", 2)) for _ in range(6)]
    X = ObjectDag.hypergraph(V, set(edges))
    images = list(range(5))
    rng.shuffle(images)
    assert len(apply_map(X, Permutation(V, images)).tclosure()) == len(X.tclosure())


def test_apply_map_labeling_targets_ordered_ground():
    V = GroundSet("xy")
    X = ObjectDag.from_python(V, ("x", "y"))
    out = apply_map(X, Labeling(V, (1, 0)))
    assert out.ground.ordered
    assert out.to_python() == (2, 1)
    with pytest.raises(DomainMismatch):
        apply_map(X, (0, 0))


def test_apply_map_moves_coset_atoms():
    V = ordered_ground(3)
    C = LabelingCoset.singleton(V, (0, 1, 2))
    X = ObjectDag.from_python(V, C)
    mu = (1, 2, 0)
    out = apply_map(X, mu)
    assert out.root.value.rep == (2, 0, 1)


def test_order_on_small_objects():
    assert ordered_compare(_ordered(frozenset({1, 2})), _ordered(frozenset({1, 3}))) == -1
    assert ordered_compare(_ordered((1, 2)), _ordered((1, 2, 3))) == -1
    assert ordered_compare(_ordered(3), _ordered(frozenset())) == -1
    assert ordered_compare(_ordered(frozenset({4})), _ordered(3)) == 1
    assert ordered_compare(_ordered(frozenset({1, 4})), _ordered(frozenset({2, 3}))) == -1
    assert ordered_compare(_ordered((2, 1)), _ordered((2, 1))) == 0


def test_cross_kind_order():
    V = ordered_ground(2)
    store = NodeStore(V)
    vertex = store.vertex(2)
    coset = store.coset(full_label_coset(V))
    tup = store.tuple([])
    st = store.set([])
    chain = [vertex, coset, tup, st]
    for a, b in itertools.combinations(chain, 2):
        assert ordered_compare(a, b) == -1
        assert ordered_compare(b, a) == 1


def test_order_needs_ordered_ground_and_one_ground():
    with pytest.raises(UnorderedGround):
        ordered_compare(ObjectDag.from_python(GroundSet("ab"), "a"), ObjectDag.from_python(GroundSet("ab"), "b"))
    with pytest.raises(DomainMismatch):
        ordered_compare(_ordered(1, 2), _ordered(1, 3))


def _all_small_objects():
    """Every object over {1, 2} of nesting depth at most two, without cosets."""
    atoms = [1, 2]
    level1 = atoms + [frozenset(s) for k in range(3) for s in itertools.combinations(atoms, k)]
    level1 += [t for k in range(3) for t in itertools.product(atoms, repeat=k)]
    return level1 + [frozenset({a, b}) for a, b in itertools.combinations(level1[:5], 2)]


def test_order_is_total_and_transitive_on_small_universe():
    store = NodeStore(ordered_ground(2))
    nodes = list({store.build(x).uid: store.build(x) for x in _all_small_objects()}.values())
    for a in nodes:
        for b in nodes:
            c = ordered_compare(a, b)
            assert (c == 0) == (a is b)
            assert ordered_compare(b, a) == -c
    ranked = sorted(nodes, key=object_key)
    for a, b, c in itertools.combinations(ranked, 3):
        assert ordered_compare(a, b) <= 0 and ordered_compare(b, c) <= 0 and ordered_compare(a, c) <= 0


def test_set_order_is_size_then_least_difference():
    rng = random.Random(9)
    store = NodeStore(ordered_ground(6))
    for _ in range(200):
        a = frozenset(rng.sample(range(1, 7), rng.randint(0, 4)))
        b = frozenset(rng.sample(range(1, 7), rng.randint(0, 4)))
        got = ordered_compare(store.build(a), store.build(b))
        if len(a) != len(b):
            assert got == (-1 if len(a) < len(b) else 1)
        elif a == b:
            assert got == 0
        else:
            assert got == (-1 if min(a ^ b) in a else 1)


def test_coset_atoms_compare_by_coset_order():
    V = ordered_ground(3)
    store = NodeStore(V)
    small = store.coset(LabelingCoset.singleton(V, (0, 1, 2)))
    big = store.coset(LabelingCoset(V, (0, 1, 2), PermutationGroup.from_generators(V, [transposition(3, 0, 1)])))
    assert ordered_compare(small, big) == -1


def test_relabel_to_ordered_and_equals():
    V = GroundSet("pqr")
    X = ObjectDag.graph(V, [{"p", "q"}])
    out = relabel_to_ordered(X, (2, 0, 1))
    assert out.to_python() == frozenset({frozenset({3, 1})})
    same = ObjectDag.graph(V, [{"q", "p"}])
    assert X.equals(same)
    assert not X.equals(ObjectDag.graph(V, [{"p", "r"}]))


def test_structure_builders():
    V = GroundSet("ab")
    rel = ObjectDag.relational_structure(V, [[("a", "b")], [("b",)]])
    assert rel.to_python() == (frozenset({("a", "b")}), frozenset({("b",)}))
    f = ObjectDag.function(V, {"a": "b", "b": "b"})
    assert f.to_python() == frozenset({("a", "b"), ("b", "b")})
