import random

import pytest
from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics.perm_groups import PermutationGroup as SymGroup

from helper.perm import (
    DomainMismatch, GroundSet, NotInvariant, Permutation, PermutationGroup,
    conj_perm, cycle_perm, direct_product, id_perm, inv_perm, mult_perm, ordered_ground,
    orbit_partition, setwise_stabilizer, transposition,
)
from helper.oracle import brute_setwise_stab


def _random_group(rng, n, k):
    dom = ordered_ground(n)
    gens = []
    for _ in range(k):
        p = list(range(n))
        rng.shuffle(p)
        gens.append(tuple(p))
    return PermutationGroup.from_generators(dom, gens), gens


def test_product_applies_left_factor_first():
    p = cycle_perm(3, [0, 1])
    q = cycle_perm(3, [1, 2])
    # 0 -> 1 -> 2
    assert mult_perm(p, q)[0] == 2
    sp, sq = SymPermutation(list(p)), SymPermutation(list(q))
    assert list(mult_perm(p, q)) == (sp * sq).array_form
    assert mult_perm(p, inv_perm(p)) == id_perm(3)


def test_conjugation_transports_cycles():
    g = cycle_perm(4, [0, 1])
    x = (2, 3, 0, 1)
    # g swaps 0 and 1, so the conjugate swaps x(0)=2 and x(1)=3
    assert conj_perm(g, x) == transposition(4, 2, 3)


def test_ground_set_positions():
    V = GroundSet("abc")
    assert V.position("b") == 1
    assert V.element(2) == "c"
    with pytest.raises(DomainMismatch):
        V.position("z")
    with pytest.raises(DomainMismatch):
        GroundSet("aa")


def test_permutation_mapping_and_cycles():
    V = GroundSet("abcd")
    p = Permutation.from_cycles(V, ["a", "b", "c"])
    assert p("a") == "b" and p("c") == "a" and p("d") == "d"
    assert Permutation.from_mapping(V, p.to_mapping()) == p
    assert (p * p.inverse()).is_identity()


def test_named_group_orders():
    dom = ordered_ground(6)
    rotation = tuple((i + 1) % 6 for i in range(6))
    reflection = tuple((-i) % 6 for i in range(6))
    assert PermutationGroup.from_generators(dom, [rotation, reflection]).order() == 12
    a5 = PermutationGroup.from_generators(ordered_ground(5), [cycle_perm(5, [0, 1, 2]), cycle_perm(5, [0, 1, 2, 3, 4])])
    assert a5.order() == 60
    assert PermutationGroup.symmetric(ordered_ground(7)).order() == 5040
    assert PermutationGroup.trivial(ordered_ground(4)).order() == 1


@pytest.mark.parametrize("seed", range(8))
def test_order_and_membership_match_sympy(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    G, gens = _random_group(rng, n, rng.randint(1, 3))
    ref = SymGroup([SymPermutation(list(g)) for g in gens])
    assert G.order() == ref.order()
    for _ in range(20):
        p = list(range(n))
        rng.shuffle(p)
        assert G.contains(tuple(p)) == ref.contains(SymPermutation(p))


def test_young_group_fast_path_agrees_with_chain():
    dom = ordered_ground(5)
    young = PermutationGroup.young(dom, [[0, 2], [1, 3, 4]])
    general = PermutationGroup.from_generators(dom, young.raw_generators)
    assert young.order() == general.order() == 12
    assert young == general
    assert young.pointwise_stabilizer(3).order() == 4


def test_orbits_and_invariance():
    G = PermutationGroup.from_generators(ordered_ground(5), [cycle_perm(5, [0, 1]), cycle_perm(5, [2, 3, 4])])
    assert G.orbits() == [frozenset({0, 1}), frozenset({2, 3, 4})]
    assert G.is_invariant({0, 1})
    assert not G.is_invariant({0, 2})
    with pytest.raises(NotInvariant):
        G.orbits({0, 2})
    trans = G.orbit_transversal(2)
    assert set(trans) == {2, 3, 4}
    assert all(u[2] == c for c, u in trans.items())


def test_orbit_partition_on_names():
    V = GroundSet("abcd")
    G = PermutationGroup.from_generators(V, [Permutation.from_cycles(V, ["a", "c"]).images])
    assert sorted(map(sorted, orbit_partition(G, "abcd"))) == [["a", "c"], ["b"], ["d"]]


@pytest.mark.parametrize("seed", range(6))
def test_pointwise_stabilizer_fixes_point(seed):
    rng = random.Random(100 + seed)
    G, _ = _random_group(rng, 6, 2)
    point = rng.randrange(6)
    stab = G.pointwise_stabilizer(point)
    assert stab.order() * len(G.orbit(point)) == G.order()
    assert all(g[point] == point for g in stab.raw_generators)


@pytest.mark.parametrize("seed", range(6))
def test_stabilizer_cosets_partition_group(seed):
    rng = random.Random(200 + seed)
    G, _ = _random_group(rng, 6, 2)
    subset = frozenset(rng.sample(range(6), 3))
    psi, reps = G.stabilizer_cosets(subset)
    brute = {g.images for g in brute_setwise_stab(G, [G.domain.element(p) for p in subset])}
    assert {tuple(g) for g in psi.elements()} == brute
    assert len(reps) * psi.order() == G.order()
    for i, a in enumerate(reps):
        assert G.contains(a)
        for b in reps[i + 1:]:
            assert not psi.contains(mult_perm(inv_perm(a), b))


def test_setwise_stabilizer_of_symmetric_group():
    V = GroundSet("abcde")
    S = PermutationGroup.symmetric(V)
    assert setwise_stabilizer(S, "ab").order() == 2 * 6


def test_left_cosets_are_sorted_lexmin_representatives():
    dom = ordered_ground(3)
    S3 = PermutationGroup.symmetric(dom)
    H = PermutationGroup.from_generators(dom, [transposition(3, 0, 1)])
    reps = S3.left_cosets(H)
    assert len(reps) == 3
    assert reps == sorted(reps)
    assert reps[0] == id_perm(3)


def test_direct_product_and_restriction():
    dom = ordered_ground(5)
    c3 = PermutationGroup.from_generators(ordered_ground(3), [cycle_perm(3, [0, 1, 2])])
    s2 = PermutationGroup.symmetric(ordered_ground(2))
    G = direct_product(dom, [(c3, [4, 2, 0]), (s2, [1, 3])])
    assert G.order() == 6
    assert G.orbits() == [frozenset({0, 2, 4}), frozenset({1, 3})]
    assert G.restricted([1, 3], ordered_ground(2)).order() == 2
    with pytest.raises(NotInvariant):
        G.restricted([0, 1], ordered_ground(2))


def test_conjugate_group_moves_orbits():
    dom = ordered_ground(4)
    G = PermutationGroup.from_generators(dom, [transposition(4, 0, 1)])
    x = (3, 2, 1, 0)
    H = G.conjugate(x)
    assert H.orbits() == [frozenset({0}), frozenset({1}), frozenset({2, 3})]
    assert H.order() == 2


def test_canonical_generators_independent_of_generating_set():
    dom = ordered_ground(4)
    a = PermutationGroup.from_generators(dom, [cycle_perm(4, [0, 1, 2, 3])])
    b = PermutationGroup.from_generators(dom, [cycle_perm(4, [0, 3, 2, 1])])
    assert a == b
    assert a.canonical_generators() == b.canonical_generators()
