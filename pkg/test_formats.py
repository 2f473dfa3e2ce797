"""
FLG / STG / XSTG / MAP 형식, 내장 지도, DOT 출력 테스트
"""
import re

import pytest

from aliases import pinned_type
from enumeration import extended_type_graphs, types
from flagmap import elements, isomorphic, map_dualities
from formats import (
    AmbiguousPairing,
    DegenerateLattice,
    EdgeOccurrenceCount,
    FormatSyntaxError,
    SemanticError,
    cube,
    face_walks,
    from_face_walks,
    get_builtin_map,
    load_map,
    octahedron,
    parse_document,
    parse_flg,
    parse_map,
    parse_map_walks,
    parse_stg,
    parse_xstg,
    read_document,
    serialize_document,
    serialize_flg,
    serialize_map,
    serialize_stg,
    serialize_xstg,
    tetrahedron,
    to_dot,
    torus44,
    write_text,
)
from transforms import medial_flag
from typegraph import NotPolarity, extend, validate_type

KLEIN_BOTTLE = """map 1
# 3x3 grid, top row glued to the bottom row reversed
0 1 4 3
1 2 5 4
2 0 3 5
3 4 7 6
4 5 8 7
5 3 6 8
6 7 2 0
7 8 1 2
8 6 0 1
"""

TYPE_1_STG = """stg 1
n 1
t0 0
t1 0
t2 0
"""


BUILTIN_MAKERS = {
    "tetrahedron": tetrahedron,
    "cube": cube,
    "octahedron": octahedron,
    "torus33": lambda: torus44(3, 0, 0, 3),
    "torus21": lambda: torus44(2, 1, -1, 2),
}


@pytest.mark.parametrize("name", sorted(BUILTIN_MAKERS))
@pytest.mark.parametrize("with_medial", [False, True])
def test_flg_round_trip(name, with_medial):
    g = BUILTIN_MAKERS[name]()
    if with_medial:
        g = medial_flag(g)
    assert parse_flg(serialize_flg(g)) == g


def test_stg_round_trip():
    for k in range(1, 8):
        for t in types(k):
            assert parse_stg(serialize_stg(t)) == t


def test_type_1_stg_text():
    t = parse_stg(TYPE_1_STG)
    assert t.tables == ((0,), (0,), (0,))
    assert serialize_stg(t) == TYPE_1_STG


def test_xstg_with_identity_polarity():
    x = extend(pinned_type("2_02"), (0, 1))
    text = serialize_xstg(x)
    assert text.splitlines()[-1] == "d 0 1"
    parsed = parse_xstg(text)
    assert parsed == x
    assert parsed.proper


@pytest.mark.parametrize("k", range(1, 8))
def test_xstg_round_trip(k):
    for x in extended_type_graphs(k):
        assert parse_xstg(serialize_xstg(x)) == x


def test_xstg_rejects_order_four_d():
    text = "xstg 1\nn 4\nt0 1 0 3 2\nt1 0 1 2 3\nt2 3 2 1 0\nd 1 2 3 0\n"
    with pytest.raises(SemanticError) as info:
        parse_xstg(text)
    assert isinstance(info.value.__cause__, NotPolarity)


def test_table_length_mismatch():
    text = "flg 1\nn 4\ns0 1 0 3\ns1 1 0 3 2\ns2 2 3 0 1\n"
    with pytest.raises(FormatSyntaxError) as info:
        parse_flg(text)
    assert info.value.line == 3


def test_bad_integer_reports_column():
    text = "stg 1\nn 1\nt0 x\nt1 0\nt2 0\n"
    with pytest.raises(FormatSyntaxError) as info:
        parse_stg(text)
    assert (info.value.line, info.value.column) == (3, 4)


def test_wrong_header():
    with pytest.raises(FormatSyntaxError):
        parse_stg("stg 2\nn 1\nt0 0\nt1 0\nt2 0\n")
    with pytest.raises(FormatSyntaxError):
        parse_document("graph 1\n")


def test_invalid_flag_graph_is_a_semantic_error():
    text = "flg 1\nn 4\ns0 1 0 3 2\ns1 1 0 3 2\ns2 1 0 3 2\n"
    with pytest.raises(SemanticError):
        parse_flg(text)


def test_klein_bottle():
    g = parse_map(KLEIN_BOTTLE)
    skeleton = elements(g)
    assert (skeleton.num_vertices, skeleton.num_edges, skeleton.num_faces) == (9, 18, 9)
    assert skeleton.euler == 0
    assert not skeleton.orientable


def test_map_walks_round_trip():
    walks = parse_map_walks(KLEIN_BOTTLE)
    assert len(walks) == 9
    assert parse_map_walks(serialize_map(walks)) == walks


def test_edge_occurrence_count():
    with pytest.raises(EdgeOccurrenceCount) as info:
        from_face_walks(((0, 1, 2),))
    assert info.value.edge == (0, 1)
    assert info.value.count == 1


def test_loops_are_ambiguous():
    with pytest.raises(AmbiguousPairing):
        torus44(1, 0, 0, 1)


def test_parallel_edge_lattice_is_rejected():
    # 2x2 torus: each pair of adjacent vertices is joined by two edges
    with pytest.raises(EdgeOccurrenceCount) as info:
        torus44(2, 0, 0, 2)
    assert info.value.count == 4


def test_degenerate_lattice():
    with pytest.raises(DegenerateLattice):
        torus44(1, 2, 2, 4)


def test_torus44():
    g = torus44(3, 0, 0, 3)
    assert g.n == 72
    assert elements(g).schlafli == (4, 4)
    assert map_dualities(g)

    k5 = torus44(2, 1, -1, 2)
    assert k5.n == 40
    assert elements(k5).num_vertices == 5


def test_builtin_factory():
    assert get_builtin_map("cube") == cube()
    assert get_builtin_map("torus44", (3, 0, 0, 3)) == torus44(3, 0, 0, 3)
    with pytest.raises(ValueError):
        get_builtin_map("dodecahedron")


def test_octahedron_is_medial_of_tetrahedron():
    assert isomorphic(octahedron(), medial_flag(tetrahedron())) is not None


@pytest.mark.parametrize("make", [tetrahedron, cube, octahedron, lambda: torus44(3, 0, 0, 3)])
def test_face_walks_rebuild_the_map(make):
    g = make()
    rebuilt = from_face_walks(face_walks(g))
    assert rebuilt.n == g.n
    assert elements(rebuilt).schlafli == elements(g).schlafli
    assert isomorphic(rebuilt, g) is not None


def test_documents(tmp_path):
    path = tmp_path / "maps" / "klein.map"
    write_text(path, KLEIN_BOTTLE)
    g = load_map(path)
    assert g.n == 72

    document = parse_document(TYPE_1_STG)
    assert document.kind == "stg"
    assert serialize_document(document) == TYPE_1_STG


def test_non_ascii_byte_position(tmp_path):
    path = tmp_path / "type1.stg"
    path.write_bytes(b"stg 1\nn 1\nt0 0 \xc3\xa9\nt1 0\nt2 0\n")
    with pytest.raises(FormatSyntaxError) as info:
        read_document(path)
    assert (info.value.line, info.value.column) == (3, 6)
    assert isinstance(info.value.__cause__, UnicodeDecodeError)


def _dot_endpoints(dot: str) -> int:
    count = 0
    for line in dot.splitlines():
        if " -- " in line:
            ends = line.split("[", 1)[0].replace("--", " ").split()
            count += sum(1 for end in ends if re.fullmatch(r"v\d+", end))
    return count


def test_dot_type_1():
    dot = to_dot(validate_type((0,), (0,), (0,)))
    assert dot.startswith("graph G {\n")
    assert dot.count("  v0;") == 1
    assert dot.count("[shape=point]") == 3
    assert 'color_id="1", style=dashed' in dot


def test_dot_incidences_and_determinism():
    t = types(5)[0]
    dot = to_dot(t)
    assert _dot_endpoints(dot) == 15
    assert to_dot(t) == dot


def test_dot_extended_uses_bold_d():
    dot = to_dot(extend(pinned_type("2_02"), (0, 1)))
    assert 'color_id="D", style=bold' in dot
    assert _dot_endpoints(dot) == 8
