"""
플래그 그래프 검증, 원소 계산, 자기동형/쌍대 탐색 테스트
"""
import numpy as np
import pytest

from flagmap import (
    Disconnected,
    FixedPointPresent,
    NotInvolution,
    SizeMismatch,
    Zero2NotCommuting,
    color_automorphisms,
    element_orbit_counts,
    elements,
    face_orbit_classes,
    flag_orbits,
    is_chiral,
    isomorphic,
    k_face_of,
    map_dualities,
    map_symbol,
    validate,
)
from formats import cube, from_face_walks, octahedron, tetrahedron, torus44
from transforms import medial_flag, petrie_flag
from typegraph import components, quotient

# 다리 길이 1, 2, 3 인 평면 나무: 대칭이 없는 지도
ASYMMETRIC_TREE = ((0, 1, 0, 2, 3, 2, 0, 4, 5, 6, 5, 4),)

# (이름, 생성 함수, |V|, |E|, |F|, χ, 가향, Schläfli)
SKELETONS = [
    ("tetrahedron", tetrahedron, 4, 6, 4, 2, True, (3, 3)),
    ("cube", cube, 8, 12, 6, 2, True, (4, 3)),
    ("octahedron", octahedron, 6, 12, 8, 2, True, (3, 4)),
    ("torus33", lambda: torus44(3, 0, 0, 3), 9, 18, 9, 0, True, (4, 4)),
    ("torus21", lambda: torus44(2, 1, -1, 2), 5, 10, 5, 0, True, (4, 4)),
]


@pytest.fixture(scope="module")
def builtins():
    return {name: make() for name, make, *_ in SKELETONS}


@pytest.mark.parametrize("name, make, v, e, f, euler, orientable, schlafli", SKELETONS)
def test_elements_of_builtins(name, make, v, e, f, euler, orientable, schlafli):
    skeleton = elements(make())
    assert (skeleton.num_vertices, skeleton.num_edges, skeleton.num_faces) == (v, e, f)
    assert skeleton.euler == euler
    assert skeleton.orientable is orientable
    assert skeleton.schlafli == schlafli


def test_every_edge_has_four_flags(builtins):
    for g in builtins.values():
        assert all(len(edge) == 4 for edge in elements(g).edge_orbits)


def test_orientable_maps_have_even_euler_characteristic(builtins):
    for g in list(builtins.values()) + [petrie_flag(g) for g in builtins.values()]:
        skeleton = elements(g)
        if skeleton.orientable:
            assert skeleton.euler % 2 == 0


def test_petrie_polygons_and_genus():
    skeleton = elements(tetrahedron())
    assert skeleton.num_petrie_polygons == 3
    assert skeleton.genus == 0

    projective = elements(petrie_flag(tetrahedron()))
    assert projective.euler == 1
    assert not projective.orientable
    assert projective.signed_genus == -1


def test_validate_rejects_coincident_involutions():
    swap = [1, 0, 3, 2]
    with pytest.raises(FixedPointPresent) as info:
        validate(swap, swap, swap)
    assert info.value.witness == ("s0s2", 0)


def test_validate_reports_first_witness():
    with pytest.raises(NotInvolution) as info:
        validate([1, 2, 0, 3], [1, 0, 3, 2], [2, 3, 0, 1])
    assert info.value.witness == (0, 0)

    with pytest.raises(FixedPointPresent):
        validate([0, 2, 1, 3], [1, 0, 3, 2], [2, 3, 0, 1])


def test_validate_rejects_non_commuting_zero_two():
    # s0 = (0 1)(2 3)(4 5)(6 7), s2 = (0 2)(1 4)(3 6)(5 7)
    s0 = [1, 0, 3, 2, 5, 4, 7, 6]
    s2 = [2, 4, 0, 6, 1, 7, 3, 5]
    s1 = [1, 0, 3, 2, 5, 4, 7, 6]
    with pytest.raises(Zero2NotCommuting):
        validate(s0, s1, s2)


def test_validate_rejects_two_disjoint_squares():
    square = ((0, 1, 2, 3), (3, 2, 1, 0))
    single = from_face_walks(square)
    n = single.n
    doubled = [np.concatenate([s, s + n]) for s in single.involutions()]
    with pytest.raises(Disconnected) as info:
        validate(*doubled)
    assert info.value.witness == [n, n]


def test_k_face_of():
    g = tetrahedron()
    assert len(k_face_of(g, 0, 2)) == 6
    for x in range(g.n):
        expected = {x, int(g.s0[x]), int(g.s2[x]), int(g.s0[g.s2[x]])}
        assert k_face_of(g, x, 1) == expected

    c = cube()
    for x in range(c.n):
        vertex = k_face_of(c, x, 0)
        assert len(vertex) == 6
        assert vertex == k_face_of(c, int(c.s1[x]), 0)


def test_automorphisms_of_regular_maps():
    assert len(color_automorphisms(tetrahedron())) == 24
    assert len(color_automorphisms(cube())) == 48


def test_automorphisms_commute_with_generators(builtins):
    for g in builtins.values():
        for gamma in color_automorphisms(g):
            assert gamma.respects_colors()


def test_semiregularity(builtins):
    for g in builtins.values():
        automorphisms = color_automorphisms(g)
        orbits = flag_orbits(g, automorphisms)
        assert len(automorphisms) * orbits.count == g.n
        assert {len(block) for block in orbits.blocks} == {g.n // orbits.count}


def test_cuboctahedron_orbits():
    cuboctahedron = medial_flag(cube())
    assert cuboctahedron.n == 96
    assert len(color_automorphisms(cuboctahedron)) == 48
    assert flag_orbits(cuboctahedron).count == 2
    assert flag_orbits(medial_flag(cuboctahedron)).count == 4


def test_asymmetric_tree_has_trivial_group():
    g = from_face_walks(ASYMMETRIC_TREE)
    assert g.n == 24
    automorphisms = color_automorphisms(g)
    assert len(automorphisms) == 1
    assert automorphisms[0].image == tuple(range(24))
    assert flag_orbits(g).count == 24
    assert elements(g).euler == 2


def test_orbit_numbering_follows_least_flag():
    orbits = flag_orbits(medial_flag(cube()))
    assert orbits.labels[0] == 0
    assert [block[0] for block in orbits.blocks] == sorted(block[0] for block in orbits.blocks)


def test_map_dualities():
    dualities = map_dualities(tetrahedron())
    assert dualities
    assert any(d.proper for d in dualities)
    assert map_dualities(cube()) == []
    assert map_dualities(torus44(3, 0, 0, 3))


def test_dualities_compose_to_automorphisms():
    g = tetrahedron()
    dualities = [d.bijection for d in map_dualities(g)]
    automorphisms = {a.image for a in color_automorphisms(g)}
    for first in dualities:
        assert first.respects_colors()
        for second in dualities:
            product = first.then(second)
            assert product.color_action == (0, 1, 2)
            assert product.image in automorphisms


def test_duality_classification_is_uniform(builtins):
    for g in builtins.values():
        statuses = {d.proper for d in map_dualities(g)}
        assert len(statuses) <= 1


def test_isomorphic():
    g = cube()
    witness = isomorphic(g, g)
    assert witness is not None
    assert isomorphic(medial_flag(cube()), medial_flag(octahedron())) is not None
    assert isomorphic(medial_flag(tetrahedron()), octahedron()) is not None
    with pytest.raises(SizeMismatch):
        isomorphic(tetrahedron(), cube())


def test_face_orbit_classes_match_type_graph_components(builtins):
    maps = list(builtins.values()) + [medial_flag(cube())]
    for g in maps:
        orbits = flag_orbits(g)
        t = quotient(g)
        for k, colors in ((0, (1, 2)), (1, (0, 2)), (2, (0, 1))):
            classes = face_orbit_classes(g, k).tolist()
            comp = components(t.k, [t.tables[c] for c in colors])
            on_flags = [comp[orbits.labels[x]] for x in range(g.n)]
            pairs = set(zip(classes, on_flags))
            assert len(pairs) == len(set(classes)) == len(set(on_flags))


def test_element_orbit_counts():
    assert element_orbit_counts(tetrahedron()) == (1, 1, 1)
    # 정육팔면체: 꼭짓점과 변은 하나의 궤도, 면은 삼각형/사각형 두 궤도
    assert element_orbit_counts(medial_flag(cube())) == (1, 1, 2)


def test_map_symbol():
    assert str(map_symbol(tetrahedron())) == "<3; 3; 4>"
    symbol = map_symbol(medial_flag(cube()))
    assert symbol.valencies == (4,)
    assert symbol.face_sizes == (3, 4)


def test_chirality():
    assert not is_chiral(tetrahedron())
    assert not is_chiral(medial_flag(cube()))
