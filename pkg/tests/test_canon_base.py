import math
import random

import pytest

from helper.perm import GroundSet, Permutation, PermutationGroup, id_perm, ordered_ground
from helper.coset import LabelingCoset, color_coset, full_label_coset
from plugins.canon_base import (
    CanonContext, InstanceError, Matching, RecursionLimitExceeded, cl_int, cl_iterated, cl_match, cl_point,
)


def _random_perm(rng, n):
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


def _random_coset(rng, ground, max_gens=2):
    n = len(ground)
    gens = [_random_perm(rng, n) for _ in range(rng.randint(0, max_gens))]
    group = PermutationGroup.from_generators(ground, gens)
    return LabelingCoset.from_group(group, _random_perm(rng, n))


def test_point_example_picks_least_image():
    V = GroundSet("abc")
    delta = PermutationGroup.from_generators(V, [Permutation.from_cycles(V, ["a", "b"]).images])
    C = LabelingCoset.from_group(delta, id_perm(3))
    res = cl_point("b", C)
    assert res.order() == 1
    assert res.labeling().to_mapping() == {"b": 1, "a": 2, "c": 3}


def test_point_in_full_coset():
    V = GroundSet("abcd")
    res = cl_point("c", full_label_coset(V))
    assert res.order() == math.factorial(3)
    assert all(lam[2] == 0 for lam in res.coset.elements())
    assert all(g("c") == "c" for g in res.aut.generators)


def test_point_in_singleton_coset():
    V = GroundSet("abc")
    C = LabelingCoset.singleton(V, (2, 0, 1))
    assert cl_point("a", C).coset == C


def test_empty_matching_returns_coset(ctx):
    V = GroundSet("abcd")
    C = color_coset(V, [["a", "b"], ["c", "d"]])
    M = Matching(frozenset(), {"a", "b"}, {"c", "d"})
    assert cl_match(M, C, ctx).coset == C


def test_matching_checks_its_input():
    with pytest.raises(InstanceError):
        Matching({("a", "c"), ("b", "c")}, {"a", "b"}, {"c", "d"})
    with pytest.raises(InstanceError):
        Matching({("a", "b")}, {"a", "b"}, {"b"})
    V = GroundSet("abcd")
    M = Matching({("a", "c")}, {"a", "b"}, {"c", "d"})
    with pytest.raises(InstanceError):
        cl_match(M, full_label_coset(V))


def _sides_coset(rng, n):
    """Random subcoset whose group stabilizes the first and second half of range(2n)."""
    V = GroundSet(range(2 * n))
    gens = []
    for _ in range(rng.randint(1, 3)):
        left, right = _random_perm(rng, n), _random_perm(rng, n)
        gens.append(left + tuple(n + x for x in right))
    group = PermutationGroup.from_generators(V, gens)
    return V, LabelingCoset.from_group(group, _random_perm(rng, 2 * n))


@pytest.mark.parametrize("seed", range(12))
def test_matching_group_part_and_canonicity(seed, ctx):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    V, C = _sides_coset(rng, n)
    left, right = set(range(n)), set(range(n, 2 * n))
    size = rng.randint(1, n)
    pairs = set(zip(rng.sample(sorted(left), size), rng.sample(sorted(right), size)))
    res = cl_match(Matching(pairs, left, right), C, ctx)

    expected = [d for d in C.group.elements() if {(d[a], d[b]) for a, b in pairs} == pairs]
    assert res.order() == len(expected)
    assert C.issuperset(res.coset)
    assert all({(g(a), g(b)) for a, b in pairs} == pairs for g in res.aut.generators)

    phi = _random_perm(rng, 2 * n)
    moved = {(phi[a], phi[b]) for a, b in pairs}
    other = cl_match(Matching(moved, {phi[a] for a in left}, {phi[b] for b in right}), C.apply_map(phi), ctx)
    assert other.coset == res.coset.apply_map(phi)


def test_self_intersection_and_full_coset(ctx):
    rng = random.Random(1)
    V = GroundSet("abcde")
    C = _random_coset(rng, V)
    assert cl_int(C, C, ctx).coset == C
    assert cl_int(full_label_coset(V), C, ctx).coset == C


@pytest.mark.parametrize("seed", range(12))
def test_intersection_group_and_canonicity(seed, ctx):
    rng = random.Random(50 + seed)
    V = GroundSet(range(rng.randint(2, 5)))
    n = len(V)
    T, C = _random_coset(rng, V), _random_coset(rng, V)
    res = cl_int(T, C, ctx)
    both = {tuple(g) for g in T.group.elements()} & {tuple(g) for g in C.group.elements()}
    assert res.order() == len(both)
    assert C.issuperset(res.coset)
    phi = _random_perm(rng, n)
    assert cl_int(T.apply_map(phi), C.apply_map(phi), ctx).coset == res.coset.apply_map(phi)


def test_intersection_lies_in_the_intersection_when_it_meets_it(ctx):
    V = ordered_ground(3)
    swap = PermutationGroup.from_generators(V, [(1, 0, 2)])
    T = LabelingCoset.from_group(swap, (0, 1, 2))
    C = full_label_coset(V)
    assert cl_int(T, C, ctx).coset == T


def test_iterated_points(ctx):
    V = GroundSet("abcde")
    res = cl_iterated([(cl_point, "a"), (cl_point, "d")], full_label_coset(V), ctx)
    assert res.order() == math.factorial(3)
    assert all(g("a") == "a" and g("d") == "d" for g in res.aut.generators)
    assert cl_iterated([], full_label_coset(V), ctx).coset == full_label_coset(V)
    single = cl_iterated([(cl_point, "b")], full_label_coset(V), ctx)
    assert single == cl_point("b", full_label_coset(V), ctx)


def test_depth_guard_trips():
    V = GroundSet("ab")
    with CanonContext(max_depth=0) as tight:
        with pytest.raises(RecursionLimitExceeded):
            cl_point("a", full_label_coset(V), tight)


def test_threaded_context_gives_the_same_result():
    rng = random.Random(4)
    V = GroundSet(range(5))
    T, C = _random_coset(rng, V), _random_coset(rng, V)
    with CanonContext(threads=4) as pooled, CanonContext(threads=1) as plain:
        assert cl_int(T, C, pooled) == cl_int(T, C, plain)


@pytest.mark.parametrize("seed", range(6))
def test_matching_call_count_stays_bounded(seed):
    rng = random.Random(700 + seed)
    n = rng.randint(2, 4)
    V, C = _sides_coset(rng, n)
    left, right = set(range(n)), set(range(n, 2 * n))
    size = rng.randint(1, n)
    pairs = set(zip(rng.sample(sorted(left), size), rng.sample(sorted(right), size)))
    with CanonContext(threads=1) as counted:
        cl_match(Matching(pairs, left, right), C, counted)
    k = max(len(orbit) for orbit in C.group.orbits())
    assert 1 <= counted.stats["cl_match"] <= 2 ** (6 * k) * len(V) * len(pairs) ** 2
