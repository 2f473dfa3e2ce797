"""
파일 형식 모듈: FLG / STG / XSTG / MAP 파서와 직렬화, 내장 지도 생성기, DOT 출력

문법 (줄 단위, '#' 주석, ASCII, 0-based):
    flg 1            stg 1            xstg 1           map 1
    n <N>            n <K>            n <K>            <면 하나의 꼭짓점 순환열>
    s0 <N 개 정수>     t0 ...           t0 ...           ...
    s1 ...           t1 ...           t1 ...
    s2 ...           t2 ...           t2 ...
                                      d  ...
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from flagmap import FlagGraph, StructureError, elements, validate
from typegraph import ExtendedTypeGraph, TypeGraph, extend, validate_type

FORMAT_VERSION = 1
KINDS = ("flg", "stg", "xstg", "map")
TABLE_LABELS = {
    "flg": ("s0", "s1", "s2"),
    "stg": ("t0", "t1", "t2"),
    "xstg": ("t0", "t1", "t2", "d"),
}
DOT_STYLES = {"0": "solid", "1": "dashed", "2": "dotted", "D": "bold"}


# ============================================================
# Exceptions
# ============================================================

class FormatError(ValueError):
    """파일 형식 오류의 기본 예외"""


class FormatSyntaxError(FormatError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SemanticError(FormatError):
    """문법은 맞지만 구조 검증에 실패 (__cause__ 에 원래 StructureError)"""


class EdgeOccurrenceCount(FormatError):
    def __init__(self, edge: Tuple[int, int], count: int):
        super().__init__(f"edge {edge[0]}-{edge[1]} occurs {count} times in the face walks, expected 2")
        self.edge = edge
        self.count = count


class AmbiguousPairing(FormatError):
    def __init__(self, edge: Tuple[int, int]):
        super().__init__(f"edge {edge[0]}-{edge[1]} is a loop; its occurrences cannot be paired by vertex")
        self.edge = edge


class DegenerateLattice(FormatError):
    """torus44 격자의 행렬식이 0"""


@dataclass(frozen=True)
class Document:
    kind: str
    version: int
    payload: object


# ============================================================
# Line reader
# ============================================================

def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            lines.append((lineno, line))
    return lines


def _column_of(line: str, token_index: int) -> int:
    position = 0
    for i, token in enumerate(line.split()):
        position = line.index(token, position)
        if i == token_index:
            return position + 1
        position += len(token)
    return len(line) + 1


def _parse_ints(line: str, lineno: int, start: int) -> List[int]:
    values = []
    for i, token in enumerate(line.split()[start:], start=start):
        try:
            values.append(int(token))
        except ValueError:
            raise FormatSyntaxError(f"expected an integer, got {token!r}", lineno, _column_of(line, i)) from None
    return values


def _parse_header(lines: List[Tuple[int, str]], kind: str) -> None:
    if not lines:
        raise FormatSyntaxError(f"empty document, expected '{kind} {FORMAT_VERSION}'", 1)
    lineno, line = lines[0]
    tokens = line.split()
    if tokens != [kind, str(FORMAT_VERSION)]:
        raise FormatSyntaxError(f"expected header '{kind} {FORMAT_VERSION}', got {line.strip()!r}", lineno)


def _parse_tables(text: str, kind: str) -> List[List[int]]:
    lines = _content_lines(text)
    _parse_header(lines, kind)
    labels = TABLE_LABELS[kind]
    if len(lines) < 2:
        raise FormatSyntaxError("missing 'n <N>' line", lines[0][0] + 1)

    lineno, line = lines[1]
    tokens = line.split()
    if len(tokens) != 2 or tokens[0] != "n":
        raise FormatSyntaxError(f"expected 'n <N>', got {line.strip()!r}", lineno)
    n = _parse_ints(line, lineno, 1)[0]
    if n < 1:
        raise FormatSyntaxError(f"n must be positive, got {n}", lineno, _column_of(line, 1))

    tables = []
    for label, (lineno, line) in zip(labels, lines[2:]):
        tokens = line.split()
        if tokens[0] != label:
            raise FormatSyntaxError(f"expected line '{label}', got {tokens[0]!r}", lineno)
        values = _parse_ints(line, lineno, 1)
        if len(values) != n:
            raise FormatSyntaxError(f"'{label}' has {len(values)} entries, expected n = {n}", lineno,
                                    _column_of(line, min(len(tokens) - 1, n + 1)))
        tables.append(values)
    if len(tables) < len(labels):
        last = lines[-1][0]
        raise FormatSyntaxError(f"missing line '{labels[len(tables)]}'", last + 1)
    if len(lines) > 2 + len(labels):
        lineno, _ = lines[2 + len(labels)]
        raise FormatSyntaxError("unexpected content after the last table", lineno)
    return tables


def _serialize_tables(kind: str, tables: Sequence[Sequence[int]]) -> str:
    out = [f"{kind} {FORMAT_VERSION}", f"n {len(tables[0])}"]
    for label, table in zip(TABLE_LABELS[kind], tables):
        out.append(" ".join([label] + [str(int(v)) for v in table]))
    return "\n".join(out) + "\n"


# ============================================================
# FLG / STG / XSTG
# ============================================================

def parse_flg(text: str) -> FlagGraph:
    tables = _parse_tables(text, "flg")
    try:
        return validate(*tables)
    except StructureError as e:
        raise SemanticError(f"{type(e).__name__}: {e}") from e


def serialize_flg(g: FlagGraph) -> str:
    return _serialize_tables("flg", g.involutions())


def parse_stg(text: str) -> TypeGraph:
    tables = _parse_tables(text, "stg")
    try:
        return validate_type(*tables)
    except StructureError as e:
        raise SemanticError(f"{type(e).__name__}: {e}") from e


def serialize_stg(t: TypeGraph) -> str:
    return _serialize_tables("stg", t.tables)


def parse_xstg(text: str) -> ExtendedTypeGraph:
    t0, t1, t2, d = _parse_tables(text, "xstg")
    try:
        return extend(validate_type(t0, t1, t2), d)
    except StructureError as e:
        raise SemanticError(f"{type(e).__name__}: {e}") from e


def serialize_xstg(x: ExtendedTypeGraph) -> str:
    return _serialize_tables("xstg", x.tables)


# ============================================================
# MAP (face walks)
# ============================================================

Walks = Tuple[Tuple[int, ...], ...]


def parse_map_walks(text: str) -> Walks:
    lines = _content_lines(text)
    _parse_header(lines, "map")
    walks = []
    for lineno, line in lines[1:]:
        walk = _parse_ints(line, lineno, 0)
        if any(v < 0 for v in walk):
            raise FormatSyntaxError("vertex ids must be non-negative", lineno)
        walks.append(tuple(walk))
    if not walks:
        raise FormatSyntaxError("map has no faces", lines[0][0] + 1)
    return tuple(walks)


def serialize_map(walks: Walks) -> str:
    out = [f"map {FORMAT_VERSION}"]
    out.extend(" ".join(str(v) for v in walk) for walk in walks)
    return "\n".join(out) + "\n"


def from_face_walks(walks: Sequence[Sequence[int]]) -> FlagGraph:
    """면 순환열에서 플래그 그래프를 만듭니다.

    플래그 (f, i, e): 면 f 의 i 번째 변 (v_i, v_i+1) 의 e 쪽 끝 모서리.
    s0 는 같은 변에서 끝을 바꾸고, s1 은 (f,i,1) 과 (f,i+1,0) 을 잇고,
    s2 는 같은 변의 두 등장 위치를 꼭짓점이 맞도록 짝짓습니다.
    """
    offsets = []
    total = 0
    for walk in walks:
        offsets.append(total)
        total += 2 * len(walk)

    def flag(f: int, i: int, end: int) -> int:
        return offsets[f] + 2 * i + end

    s0 = np.empty(total, dtype=np.int64)
    s1 = np.empty(total, dtype=np.int64)
    s2 = np.full(total, -1, dtype=np.int64)
    occurrences: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for f, walk in enumerate(walks):
        size = len(walk)
        for i in range(size):
            u, v = walk[i], walk[(i + 1) % size]
            occurrences.setdefault((min(u, v), max(u, v)), []).append((f, i))
            s0[flag(f, i, 0)], s0[flag(f, i, 1)] = flag(f, i, 1), flag(f, i, 0)
            s1[flag(f, i, 1)], s1[flag(f, (i + 1) % size, 0)] = flag(f, (i + 1) % size, 0), flag(f, i, 1)

    for edge in sorted(occurrences):
        places = occurrences[edge]
        if edge[0] == edge[1]:
            raise AmbiguousPairing(edge)
        if len(places) != 2:
            raise EdgeOccurrenceCount(edge, len(places))
        (f, i), (g, j) = places
        same_direction = walks[f][i] == walks[g][j]
        for end in (0, 1):
            other = end if same_direction else 1 - end
            s2[flag(f, i, end)] = flag(g, j, other)
            s2[flag(g, j, other)] = flag(f, i, end)

    try:
        return validate(s0, s1, s2)
    except StructureError as e:
        raise SemanticError(f"{type(e).__name__}: {e}") from e


def parse_map(text: str) -> FlagGraph:
    return from_face_walks(parse_map_walks(text))


def face_walks(g: FlagGraph) -> Walks:
    """플래그 그래프의 각 면을 꼭짓점 번호(꼭짓점 궤도 순서) 순환열로"""
    skeleton = elements(g)
    vertex_of = np.empty(g.n, dtype=np.int64)
    for v, orbit in enumerate(skeleton.vertex_orbits):
        vertex_of[list(orbit)] = v
    s0, s1 = g.s0.tolist(), g.s1.tolist()
    walks = []
    for face in skeleton.face_orbits:
        start = face[0]
        walk = []
        x = start
        while True:
            walk.append(int(vertex_of[x]))
            x = s1[s0[x]]
            if x == start:
                break
        walks.append(tuple(walk))
    return tuple(walks)


# ============================================================
# Builtin maps
# ============================================================

TETRAHEDRON_FACES = ((0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2))
CUBE_FACES = ((0, 1, 2, 3), (4, 7, 6, 5), (0, 4, 5, 1), (1, 5, 6, 2), (2, 6, 7, 3), (3, 7, 4, 0))
OCTAHEDRON_FACES = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1),
    (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4),
)


def tetrahedron() -> FlagGraph:
    return from_face_walks(TETRAHEDRON_FACES)


def cube() -> FlagGraph:
    return from_face_walks(CUBE_FACES)


def octahedron() -> FlagGraph:
    return from_face_walks(OCTAHEDRON_FACES)


def torus44_walks(a: int, b: int, c: int, d: int) -> Walks:
    """Z^2 / <(a,b), (c,d)> 위의 단위 정사각형 면 순환열"""
    det = a * d - b * c
    if det == 0:
        raise DegenerateLattice(f"lattice vectors ({a},{b}) and ({c},{d}) are linearly dependent")
    size = abs(det)

    def key(x: int, y: int) -> Tuple[int, int]:
        # (x, y) 가 격자에 속할 조건: adj(M) (x, y) 가 det 의 배수
        return ((d * x - c * y) % size, (a * y - b * x) % size)

    ids: Dict[Tuple[int, int], int] = {}
    corners: List[Tuple[int, int]] = []
    frontier = [(0, 0)]
    ids[key(0, 0)] = 0
    corners.append((0, 0))
    while frontier:
        x, y = frontier.pop(0)
        for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1)):
            p = (x + dx, y + dy)
            if key(*p) not in ids:
                ids[key(*p)] = len(corners)
                corners.append(p)
                frontier.append(p)
    assert len(corners) == size

    walks = []
    for x, y in corners:
        square = ((x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1))
        walks.append(tuple(ids[key(*p)] for p in square))
    return tuple(walks)


def torus44(a: int, b: int, c: int, d: int) -> FlagGraph:
    """격자 (a,b), (c,d) 로 나눈 토러스 위의 {4,4} 지도 (플래그 8|ad-bc| 개)

    면 순환열은 꼭짓점 번호만으로 변을 짝짓기 때문에 몫 그래프가 단순해야 합니다.
    - 고리(loop)가 생기는 격자, 예: (1,0,0,1) -> AmbiguousPairing
    - 평행 변이 생기는 격자, 예: (2,0,0,2) -> EdgeOccurrenceCount
    두 경우 모두 {4,4} 지도로는 존재하지만 이 생성기로는 만들 수 없습니다.
    """
    return from_face_walks(torus44_walks(a, b, c, d))


def get_builtin_map(name: str, lattice: Sequence[int] = (3, 0, 0, 3)) -> FlagGraph:
    """
    내장 지도 팩토리 함수

    Args:
        name: "tetrahedron", "cube", "octahedron", "torus44"
        lattice: torus44 의 (a, b, c, d)

    Returns:
        FlagGraph
    """
    if name == "tetrahedron":
        return tetrahedron()
    elif name == "cube":
        return cube()
    elif name == "octahedron":
        return octahedron()
    elif name == "torus44":
        return torus44(*lattice)
    else:
        raise ValueError(f"Unknown builtin map: {name}. Choose 'tetrahedron', 'cube', 'octahedron' or 'torus44'")


BUILTIN_NAMES = ("tetrahedron", "cube", "octahedron", "torus44")


# ============================================================
# Documents
# ============================================================

def parse_document(text: str) -> Document:
    """헤더를 보고 네 형식 중 하나로 파싱합니다."""
    lines = _content_lines(text)
    if not lines:
        raise FormatSyntaxError("empty document", 1)
    lineno, line = lines[0]
    kind = line.split()[0]
    parsers = {"flg": parse_flg, "stg": parse_stg, "xstg": parse_xstg, "map": parse_map_walks}
    if kind not in parsers:
        raise FormatSyntaxError(f"unknown document kind {kind!r}, expected one of {', '.join(KINDS)}", lineno)
    return Document(kind, FORMAT_VERSION, parsers[kind](text))


def serialize_document(document: Document) -> str:
    serializers = {"flg": serialize_flg, "stg": serialize_stg, "xstg": serialize_xstg, "map": serialize_map}
    return serializers[document.kind](document.payload)


def read_document(path: Union[str, Path]) -> Document:
    with open(path, "rb") as f:
        data = f.read()
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as e:
        line_start = data.rfind(b"\n", 0, e.start) + 1
        raise FormatSyntaxError(
            f"non-ASCII byte 0x{data[e.start]:02x}",
            data.count(b"\n", 0, e.start) + 1,
            e.start - line_start + 1,
        ) from e
    return parse_document(text)


def write_text(path: Union[str, Path], text: str) -> None:
    path = Path(path)
    if path.parent != Path("."):
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(text)


def load_map(path: Union[str, Path]) -> FlagGraph:
    """FLG 또는 MAP 파일에서 지도를 읽습니다."""
    document = read_document(path)
    if document.kind == "flg":
        return document.payload
    if document.kind == "map":
        return from_face_walks(document.payload)
    raise FormatError(f"{path}: expected a flg or map document, got {document.kind}")


# ============================================================
# DOT
# ============================================================

def _colored_tables(obj) -> List[Tuple[str, Sequence[int]]]:
    if isinstance(obj, ExtendedTypeGraph):
        return [("0", obj.base.t0), ("1", obj.base.t1), ("2", obj.base.t2), ("D", obj.d)]
    if isinstance(obj, TypeGraph):
        return [("0", obj.t0), ("1", obj.t1), ("2", obj.t2)]
    if isinstance(obj, FlagGraph):
        return [(str(i), s.tolist()) for i, s in enumerate(obj.involutions())]
    raise TypeError(f"cannot render {type(obj).__name__} as DOT")


def to_dot(obj: Union[TypeGraph, ExtendedTypeGraph, FlagGraph], name: str = "G") -> str:
    """색 pregraph 를 DOT 으로 (semi-edge 는 v<i>_s<색> 점 노드로 가는 변)"""
    colored = _colored_tables(obj)
    size = len(colored[0][1])
    lines = [f"graph {name} {{"]
    for v in range(size):
        lines.append(f"  v{v};")
    for color, table in colored:
        attributes = f'[color_id="{color}", style={DOT_STYLES[color]}]'
        for v in range(size):
            w = int(table[v])
            if w == v:
                stub = f"v{v}_s{color}"
                lines.append(f"  {stub} [shape=point];")
                lines.append(f"  v{v} -- {stub} {attributes};")
            elif v < w:
                lines.append(f"  v{v} -- v{w} {attributes};")
    lines.append("}")
    return "\n".join(lines) + "\n"
