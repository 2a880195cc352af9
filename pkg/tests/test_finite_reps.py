import itertools

import pytest

from twistalex.catalog import CATALOG
from twistalex.finite_reps import (
    HomAssignment,
    Representation,
    _perm_matrix,
    closure,
    conj,
    cycle_type,
    dedupe,
    enumerate_homs,
    image_subgroup,
    inv,
    mul,
    quotient_key,
    regular_representation,
    satisfies,
    trivial_representation,
)
from twistalex.errors import InputError
from twistalex.presentation import FreeWord, Presentation

x, y = FreeWord.gen(0), FreeWord.gen(1)
TREFOIL = Presentation(("x", "y"), (x * y * x * y.inverse() * x.inverse() * y.inverse(),), (1, 1))
FREE2 = Presentation(("x", "y"), (), (1, 1))


def brute_force_homs(P, n):
    return sorted(
        imgs
        for imgs in itertools.product(itertools.permutations(range(n)), repeat=P.num_generators)
        if satisfies(P, imgs)
    )


def brute_force_orbits(images_list, n):
    """Orbit count under simultaneous conjugation by union-find."""
    parent = {imgs: imgs for imgs in images_list}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for imgs in images_list:
        for s in itertools.permutations(range(n)):
            other = tuple(conj(s, p) for p in imgs)
            parent[find(other)] = find(imgs)
    return len({find(a) for a in images_list})


# -- permutations ----------------------------------------------------------------------


def test_composition_convention():
    a, b = (1, 0, 2), (0, 2, 1)
    # apply b first, then a
    assert mul(a, b) == tuple(a[b[i]] for i in range(3))
    assert mul(a, inv(a)) == (0, 1, 2)
    assert cycle_type((1, 2, 0, 3)) == (3, 1)


def test_trefoil_braid_relation_in_s3():
    a, b = (1, 0, 2), (0, 2, 1)
    assert mul(mul(a, b), a) == mul(mul(b, a), b) == (2, 1, 0)


# -- enumeration -------------------------------------------------------------------------


def test_trefoil_to_s3_contains_transpositions():
    homs = enumerate_homs(TREFOIL, 3)
    assert ((1, 0, 2), (0, 2, 1)) in [h.images for h in homs]


def test_everything_to_s1():
    for P in (TREFOIL, FREE2, CATALOG["4_1"].presentation()):
        homs = enumerate_homs(P, 1)
        assert len(homs) == 1 and homs[0].image_order == 1


def test_free_group_to_s2():
    assert len(enumerate_homs(FREE2, 2)) == 4


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "hopf"])
@pytest.mark.parametrize("n", [2, 3])
def test_enumeration_matches_brute_force(name, n):
    P = CATALOG[name].presentation()
    assert [h.images for h in enumerate_homs(P, n)] == brute_force_homs(P, n)


def test_trefoil_hom_count_matches_exhaustive_filter():
    assert len(enumerate_homs(TREFOIL, 3)) == len(brute_force_homs(TREFOIL, 3)) == 12


def test_every_result_satisfies_relators():
    P = CATALOG["4_1"].presentation()
    for h in enumerate_homs(P, 4, meridional=True):
        assert satisfies(P, h.images)


def test_image_orders():
    homs = {h.images: h.image_order for h in enumerate_homs(TREFOIL, 3)}
    assert homs[((1, 0, 2), (0, 2, 1))] == 6
    assert homs[((0, 1, 2), (0, 1, 2))] == 1
    assert homs[((1, 0, 2), (1, 0, 2))] == 2


def _up_to_conjugacy(images_list, n):
    perms = list(itertools.permutations(range(n)))
    return {min(tuple(conj(s, p) for p in imgs) for s in perms) for imgs in images_list}


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_1", "5_2", "6_1", "hopf"])
@pytest.mark.parametrize("n", [2, 3])
def test_meridional_pruning(name, n):
    P = CATALOG[name].presentation()
    full = [h.images for h in enumerate_homs(P, n)]
    pruned = [h.images for h in enumerate_homs(P, n, meridional=True)]
    assert set(pruned) <= set(full)
    # hopf components carry different meridians, which are not conjugate in the group
    assert _up_to_conjugacy(pruned, n) == _up_to_conjugacy(full, n)


def test_budget_is_honoured():
    from twistalex.errors import BudgetExhausted
    from twistalex.finite_reps import Budget

    with pytest.raises(BudgetExhausted):
        enumerate_homs(FREE2, 5, budget=Budget(0.0))


def test_hom_json_shape():
    h = enumerate_homs(TREFOIL, 3)[-1]
    d = h.to_json()
    assert set(d) == {"degree", "images", "imageOrder"}
    assert HomAssignment.from_json(d, TREFOIL.generators) == h
    with pytest.raises(InputError):
        HomAssignment.from_json({"degree": 3, "images": {"x": [0, 0, 1], "y": [0, 1, 2]}}, TREFOIL.generators)


# -- image groups and regular representations ------------------------------------------------


def test_image_subgroup_examples():
    assert image_subgroup(HomAssignment(3, ((0, 1, 2), (0, 1, 2)), ("x", "y"))).order == 1
    assert image_subgroup(HomAssignment(2, ((1, 0), (1, 0)), ("x", "y"))).order == 2
    assert image_subgroup(HomAssignment(3, ((1, 0, 2), (0, 2, 1)), ("x", "y"))).order == 6


def test_regular_of_trivial_group_is_trivial():
    h = HomAssignment(3, ((0, 1, 2), (0, 1, 2)), ("x", "y"))
    rep = regular_representation(image_subgroup(h), h)
    assert rep.dimension == 1 and rep.matrices == (((1,),), ((1,),))
    assert rep.provenance == "trivial"


def test_regular_of_z2():
    h = HomAssignment(2, ((1, 0),), ("x",))
    rep = regular_representation(image_subgroup(h), h)
    assert rep.matrices == (((0, 1), (1, 0)),)


def test_regular_of_s3_matches_cayley_table():
    G = closure([(1, 0, 2), (0, 2, 1)], 3)
    assert G.order == 6
    mats = {g: _perm_matrix(G.left_action(g)) for g in G.elements}
    for g in G.elements:
        for h in G.elements:
            prod = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in zip(*mats[h])) for row in mats[g])
            assert prod == mats[mul(g, h)]
        # permutation matrices: inverse is the transpose
        assert mats[inv(g)] == tuple(zip(*mats[g]))
    assert len(set(mats.values())) == 6


def test_regular_representation_satisfies_relators():
    for h in enumerate_homs(TREFOIL, 3):
        rep = regular_representation(image_subgroup(h), h)
        assert rep.check(TREFOIL) == []


def test_trivial_representation():
    rep = trivial_representation(TREFOIL)
    assert rep.dimension == 1 and rep.check(TREFOIL) == []


def test_user_representation_validation():
    ok = {"matrices": {"x": [[0, 1], [1, 0]], "y": [[0, 1], [1, 0]]}}
    assert Representation.from_json(ok, TREFOIL).dimension == 2
    with pytest.raises(InputError):
        Representation.from_json({"matrices": {"x": [[2]], "y": [[1]]}}, TREFOIL)
    with pytest.raises(InputError):
        Representation.from_json({"matrices": {"x": [[0, 1], [1, 0]], "y": [[1, 0], [0, 1]]}}, TREFOIL)


# -- dedupe ----------------------------------------------------------------------------------


def test_dedupe_examples():
    h = HomAssignment(3, ((1, 0, 2),), ("x",))
    assert dedupe([h]) == [h]
    g = HomAssignment(3, ((0, 2, 1),), ("x",))
    assert len(dedupe([h, g])) == 1


@pytest.mark.parametrize("name", ["3_1", "4_1", "hopf"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_dedupe_matches_brute_force_orbits(name, n):
    P = CATALOG[name].presentation()
    homs = enumerate_homs(P, n)
    assert len(dedupe(homs)) == brute_force_orbits([h.images for h in homs], n)


def test_quotient_key_ignores_conjugation_and_degree():
    h3 = HomAssignment(3, ((1, 0, 2), (0, 2, 1)), ("x", "y"))
    s = (2, 0, 1)
    h3c = HomAssignment(3, tuple(conj(s, p) for p in h3.images), ("x", "y"))
    # the same S3 quotient realised inside S4 (fixing the extra point)
    h4 = HomAssignment(4, ((1, 0, 2, 3), (0, 2, 1, 3)), ("x", "y"))
    assert quotient_key(h3) == quotient_key(h3c) == quotient_key(h4)
