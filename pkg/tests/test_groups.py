import numpy as np
import pytest

from eqobs.errors import BoundExceeded, GroupError
from eqobs.groups import (FiniteGSet, PermGroup, coset_gset, generate_group, orbit_decompose, subgroup_classes,
                          table_of_marks, A4_DESCRIPTION, BUILTIN_GROUPS)

from oracles import (all_subgroups, closure_by_words, comp, conjugacy_classes_of_subgroups, fixed_cosets,
                     normalizer_order, orbits_with_stabilizer_orders)


def test_generate_builtin_orders():
    assert generate_group("cyclic:6").order == 6
    assert generate_group("dihedral:4").order == 8
    assert generate_group("symmetric:4").order == 24
    assert generate_group(A4_DESCRIPTION).order == 12


def test_generators_closure_matches_word_oracle():
    gens = [(1, 0, 2), (1, 2, 0)]
    G = generate_group(gens)
    expected = closure_by_words(gens)
    assert len(expected) == 6
    assert set(G.elements) == expected


def test_group_is_closed_and_has_inverses():
    G = generate_group("dihedral:5")
    S = set(G.elements)
    assert G.identity == tuple(range(5))
    for a in G.elements:
        assert any(comp(a, b) == G.identity for b in G.elements)
        for b in G.elements:
            assert comp(a, b) in S


@pytest.mark.parametrize("bad, err", [
    ("perm:[[0,0,1]]", GroupError),
    ("perm:[[1,0],[0,2,1]]", GroupError),
    ("cyclic:x", GroupError),
    ("symmetric:7", GroupError),
    ("perm:[[1,0", GroupError),
])
def test_malformed_descriptions(bad, err):
    with pytest.raises(err):
        generate_group(bad)


def test_order_bound():
    with pytest.raises(BoundExceeded):
        generate_group("symmetric:5", max_order=100)
    with pytest.raises(BoundExceeded):
        generate_group("cyclic:3000")


def test_subgroup_bound():
    G = PermGroup.from_generators([(1, 2, 3, 4, 0, 5), (1, 0, 2, 3, 4, 5)])
    assert G.order == 120
    with pytest.raises(BoundExceeded):
        subgroup_classes(G, max_order=100)


@pytest.mark.parametrize("desc, n_classes, n_subgroups", [
    ("cyclic:6", 4, 4),
    ("symmetric:3", 4, 6),
    ("dihedral:4", 8, 10),
    (A4_DESCRIPTION, 5, 10),
])
def test_subgroup_classes_against_subset_oracle(desc, n_classes, n_subgroups):
    G = generate_group(desc)
    subs = all_subgroups(G.elements)
    classes = conjugacy_classes_of_subgroups(G.elements, subs)
    assert (len(classes), len(subs)) == (n_classes, n_subgroups)
    table = G.classes
    assert len(table) == n_classes
    assert {frozenset(H.perms) for H in table.all_subgroups()} == set(subs)
    assert sorted(len(next(iter(c))) for c in classes) == [H.order for H in table.classes]


def test_class_names_and_order():
    T = generate_group("symmetric:3").classes
    assert T.names == ("H1_0", "H2_0", "H3_0", "H6_0")
    T = generate_group("dihedral:4").classes
    assert [H.order for H in T.classes] == sorted(H.order for H in T.classes)
    assert T.names[0] == "H1_0" and T.names[-1] == "H8_0"


@pytest.mark.parametrize("n", [1, 2, 4, 6, 8, 12])
def test_cyclic_class_count_is_divisor_count(n):
    assert len(generate_group(f"cyclic:{n}").classes) == sum(1 for d in range(1, n + 1) if n % d == 0)


def test_conjugation_preserves_class_id():
    G = generate_group("symmetric:4")
    T = G.classes
    for H in T.all_subgroups():
        c = T.class_of(H)
        for g in range(G.order):
            assert T.class_of(H.conjugate(g)) == c


def test_table_of_marks_small():
    assert table_of_marks(generate_group("cyclic:1")) == [[1]]
    assert table_of_marks(generate_group("cyclic:2")) == [[2, 0], [1, 1]]
    M = table_of_marks(generate_group("symmetric:3"))
    assert [M[i][i] for i in range(4)] == [6, 1, 2, 1]
    assert all(M[i][j] == 0 for i in range(4) for j in range(i + 1, 4))


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "S4", "C6"])
def test_table_of_marks_against_fixed_coset_oracle(name):
    G = generate_group(BUILTIN_GROUPS[name])
    T = G.classes
    M = table_of_marks(G)
    reps = [set(H.perms) for H in T.classes]
    for a, H in enumerate(reps):
        assert M[a][a] == normalizer_order(G.elements, H) // len(H)
        for b, K in enumerate(reps):
            assert M[a][b] == fixed_cosets(G.elements, H, K)
            if b > a:
                assert M[a][b] == 0


def test_orbit_decompose_trivial_and_free():
    C2 = generate_group("cyclic:2")
    trivial = FiniteGSet(C2, [[0], [0]])
    assert orbit_decompose(trivial) == [((0,), 1)]
    free = FiniteGSet(C2, [[0, 1], [1, 0]])
    assert orbit_decompose(free) == [((0, 1), 0)]


def test_orbit_decompose_s3_on_pairs_of_cosets():
    G = generate_group("symmetric:3")
    C2 = G.classes.classes[1]
    cosets = coset_gset(C2)
    pairs = [(a, b) for a in range(3) for b in range(3) if a != b]
    action = [[pairs.index((cosets.action[g, a], cosets.action[g, b])) for a, b in pairs]
              for g in range(G.order)]
    X = FiniteGSet(G, action)
    # independent check on the same action
    expected = orbits_with_stabilizer_orders(range(G.order), range(6), lambda g, x: action[g][x])
    assert expected == [(6, 1)]
    assert orbit_decompose(X) == [(tuple(range(6)), 0)]


def test_action_axioms_are_checked():
    C2 = generate_group("cyclic:2")
    with pytest.raises(GroupError):
        FiniteGSet(C2, [[1, 0], [1, 0]])
    C3 = generate_group("cyclic:3")
    with pytest.raises(GroupError):
        FiniteGSet(C3, [[0, 1], [1, 0], [1, 0]])


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "C6"])
def test_coset_set_decomposes_to_its_class(name):
    G = generate_group(BUILTIN_GROUPS[name])
    T = G.classes
    for H in T.all_subgroups():
        orbits = orbit_decompose(coset_gset(H))
        assert len(orbits) == 1
        assert orbits[0][1] == T.class_of(H)
        assert len(orbits[0][0]) == G.order // H.order


def test_mult_table_matches_composition():
    G = generate_group("dihedral:6")
    T = G.mult_table
    rng = np.random.default_rng(0)
    for i, j in rng.integers(0, G.order, size=(50, 2)):
        assert G.elements[T[i, j]] == comp(G.elements[i], G.elements[j])
