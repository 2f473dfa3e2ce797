"""
대칭 타입 그래프: 몫, 검증, 궤도 수, 쌍대/polarity, 확장, 정규 코드 테스트
"""
import random

import pytest

from aliases import pinned_code, pinned_type
from enumeration import enumerate_types, types
from flagmap import (
    Disconnected,
    NotInvolution,
    element_orbit_counts,
    flag_orbits,
    map_dualities,
    orbit_labels,
    project_to_orbits,
)
from formats import cube, octahedron, tetrahedron, torus44
from transforms import dual_type, medial_flag, medial_type_double
from typegraph import (
    Q2A,
    Q4,
    BadZeroTwoComponent,
    CanonicalCode,
    NotDuality,
    NotPolarity,
    admits_proper,
    canonical_code,
    component_count,
    components,
    duality_classes,
    extend,
    face_orbit_counts,
    is_chiral_type,
    is_edge_transitive_type,
    is_polarity,
    is_proper,
    polarities,
    quotient,
    relabel,
    type_automorphisms,
    type_dualities,
    validate_type,
)

TYPE_1 = ((0,), (0,), (0,))
TYPE_3_02 = ((1, 0, 2), (2, 1, 0), (1, 0, 2))
# Q4 골격: t0 = (0 1)(2 3), t2 = (0 3)(1 2)
Q4_T0 = (1, 0, 3, 2)
Q4_T2 = (3, 2, 1, 0)

BUILTINS = [tetrahedron, cube, octahedron, lambda: torus44(3, 0, 0, 3), lambda: torus44(2, 1, -1, 2)]


def test_quotient_of_regular_map_is_type_1():
    t = quotient(tetrahedron())
    assert t.k == 1
    assert t.tables == TYPE_1


def test_quotient_of_cuboctahedron_is_2_01():
    cuboctahedron = medial_flag(cube())
    t = quotient(cuboctahedron)
    assert t.k == 2
    assert t.t0 == (0, 1) and t.t1 == (0, 1) and t.t2 == (1, 0)
    assert canonical_code(t) == pinned_code("2_01")

    double = quotient(medial_flag(cuboctahedron))
    assert canonical_code(double) == canonical_code(medial_type_double(pinned_type("2_01")))


@pytest.mark.parametrize("make", BUILTINS)
def test_quotient_has_one_vertex_per_flag_orbit(make):
    g = make()
    assert quotient(g).k == flag_orbits(g).count


def test_validate_type_accepts_known_types():
    assert validate_type(*TYPE_1).k == 1
    assert validate_type(*TYPE_3_02).k == 3


def test_validate_type_rejects_bad_zero_two_component():
    # 0-2 성분이 꼭짓점 세 개의 경로
    with pytest.raises(BadZeroTwoComponent) as info:
        validate_type((1, 0, 2), (0, 1, 2), (0, 2, 1))
    assert info.value.witness == (0, 1, 2)


def test_validate_type_other_errors():
    with pytest.raises(NotInvolution):
        validate_type((1, 2, 0), (0, 1, 2), (0, 1, 2))
    with pytest.raises(Disconnected):
        validate_type((0, 1), (0, 1), (0, 1))


def test_face_orbit_counts():
    assert face_orbit_counts(validate_type(*TYPE_1)) == (1, 1, 1)
    for t in types(3):
        assert face_orbit_counts(t)[1] == 2


@pytest.mark.parametrize("make", BUILTINS + [lambda: medial_flag(cube())])
def test_face_orbit_counts_match_direct_counting(make):
    g = make()
    c12, c02, c01 = face_orbit_counts(quotient(g))
    assert element_orbit_counts(g) == (c12, c02, c01)


def test_edge_transitive_types():
    assert is_edge_transitive_type(validate_type(*TYPE_1))
    assert not is_edge_transitive_type(pinned_type("2_02"))
    counts = [sum(1 for t in types(k) if is_edge_transitive_type(t)) for k in (1, 2, 3, 4)]
    assert counts == [1, 6, 0, 7]


def test_type_dualities():
    assert type_dualities(validate_type(*TYPE_1)) == [(0,)]

    chiral = pinned_type("2")
    assert is_chiral_type(chiral)
    assert type_dualities(chiral) == [(0, 1), (1, 0)]
    assert all(is_polarity(phi) for phi in type_dualities(chiral))

    assert polarities(validate_type(*TYPE_3_02)) == [(0, 1, 2)]


def test_dualities_are_bounded_and_polarities_close_up():
    for k in range(1, 6):
        for t in types(k):
            dualities = type_dualities(t)
            assert len(dualities) <= k
            t0, t1, t2 = t.tables
            for d in polarities(t, dualities):
                assert all(t1[d[t1[d[v]]]] == v for v in range(k))
                assert all(d[t2[d[t0[v]]]] == v for v in range(k))


def test_self_dual_iff_code_of_dual_matches():
    for k in range(1, 6):
        for t in types(k):
            assert bool(type_dualities(t)) == (canonical_code(dual_type(t)) == canonical_code(t))


@pytest.mark.parametrize("make", [tetrahedron, lambda: torus44(3, 0, 0, 3), lambda: torus44(2, 1, -1, 2)])
def test_map_dualities_project_to_polarities(make):
    g = make()
    orbits = flag_orbits(g)
    t = quotient(g)
    allowed = set(polarities(t))
    for duality in map_dualities(g, orbits):
        d = project_to_orbits(duality.bijection, orbits)
        assert d in allowed
        assert is_proper(d) == duality.proper


def test_admits_proper():
    q4 = validate_type(Q4_T0, (0, 1, 2, 3), Q4_T2)
    check = admits_proper(q4)
    assert not check.admits
    assert check.witness[0] == Q4

    semi = admits_proper(pinned_type("3^0"))
    assert not semi.admits and semi.witness[0] == Q2A

    assert admits_proper(pinned_type("2_02")).admits
    assert admits_proper(validate_type(*TYPE_1)).admits


def test_proper_admitting_types_per_k():
    counts = [sum(1 for t in types(k) if admits_proper(t).admits) for k in range(1, 7)]
    assert counts == [1, 3, 1, 3, 1, 3]


def test_extend():
    x = extend(validate_type(*TYPE_1), (0,))
    assert x.proper
    assert x.tables == ((0,), (0,), (0,), (0,))

    improper = extend(pinned_type("2"), (1, 0))
    assert not improper.proper

    with pytest.raises(NotDuality):
        extend(pinned_type("2_0"), (0, 1))

    q4 = validate_type(Q4_T0, (0, 1, 2, 3), Q4_T2)
    with pytest.raises(NotPolarity):
        extend(q4, (1, 2, 3, 0))


def test_duality_classes_at_four_vertices():
    multiset = sorted(
        (len(duality_classes(t, polarities(t))) for t in types(4) if type_dualities(t)),
        reverse=True,
    )
    assert multiset == [4, 2, 2, 2, 2, 1, 1, 1]


def test_canonical_code_is_relabelling_invariant():
    rng = random.Random(20240611)
    for t in types(5):
        code = canonical_code(t)
        for _ in range(20):
            perm = list(range(t.k))
            rng.shuffle(perm)
            assert canonical_code(relabel(t, perm)) == code


def test_canonical_code_separates_and_decodes():
    assert pinned_code("2_01") != pinned_code("2_12")
    code = canonical_code(validate_type(*TYPE_3_02))
    assert CanonicalCode.from_hex(code.hex()) == code
    assert canonical_code(code.to_type_graph()) == code
    assert code.k == 3 and not code.extended

    x = extend(validate_type(*TYPE_3_02), (0, 1, 2))
    extended = canonical_code(x)
    assert extended.extended
    assert canonical_code(extended.to_extended()) == extended


def test_type_automorphisms_of_type_2():
    assert type_automorphisms(pinned_type("2")) == [(0, 1), (1, 0)]
    assert type_automorphisms(pinned_type("2_02")) == [(0, 1), (1, 0)]
    assert type_automorphisms(validate_type(*TYPE_3_02)) == [(0, 1, 2)]


def test_enumerated_codes_are_sorted():
    codes = enumerate_types(4)
    assert list(codes) == sorted(codes)


def test_components_follow_least_vertex_numbering():
    assert components(4, (Q4_T0, Q4_T2)) == [0, 0, 0, 0]
    assert components(3, ((1, 0, 2), (1, 0, 2))) == [0, 0, 1]
    assert components(4, ((0, 1, 2, 3),)) == [0, 1, 2, 3]
    assert component_count(4, ((2, 3, 0, 1),)) == 2


def test_components_match_flag_orbit_labels():
    for k in range(1, 6):
        for t in types(k):
            for colors in ((0, 2), (1, 2), (0, 1)):
                tables = [t.tables[c] for c in colors]
                assert components(k, tables) == orbit_labels(k, tables).tolist()
