"""
대칭 타입 그래프(symmetry type graph) 모듈

플래그 그래프를 Γ(M) 궤도로 나눈 몫 pregraph 와 그 위의 쌍대(duality),
polarity, 확장 타입 그래프(extended symmetry type graph), 정규 코드를 다룹니다.
세 involution t0, t1, t2 의 고정점은 해당 색의 semi-edge 입니다.
"""

from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from flagmap import (
    DUAL_COLORS,
    IDENTITY_COLORS,
    Disconnected,
    FlagGraph,
    NotInvolution,
    StructureError,
    flag_orbits,
    orbit_labels,
    propagate,
)

# 0-2 성분의 다섯 가지 모양 (0-2 교대 4-cycle 의 몫)
Q4 = "Q4"
Q2A = "Q2a"  # 색 0 변 + 양 끝 색 2 semi-edge
Q2B = "Q2b"  # 색 2 변 + 양 끝 색 0 semi-edge
Q2C = "Q2c"  # 색 0, 2 이중 변
Q1 = "Q1"
SHAPE_ORDER = (Q4, Q2A, Q2B, Q2C, Q1)
SHAPE_SIZES = {Q4: 4, Q2A: 2, Q2B: 2, Q2C: 2, Q1: 1}

PLAIN_KIND = 0
EXTENDED_KIND = 1
CODE_DTYPE = ">u2"


class BadZeroTwoComponent(StructureError):
    """{t0, t2} 성분이 다섯 모양 중 어느 것도 아님"""


class NotPolarity(StructureError):
    """d 의 차수가 2 를 넘음"""


class NotDuality(StructureError):
    """d 가 색 0 과 2 를 맞바꾸며 색 1 을 보존하지 않음"""


Table = Tuple[int, ...]


@dataclass(frozen=True)
class TypeGraph:
    t0: Table
    t1: Table
    t2: Table

    @property
    def k(self) -> int:
        return len(self.t0)

    @property
    def tables(self) -> Tuple[Table, Table, Table]:
        return (self.t0, self.t1, self.t2)


@dataclass(frozen=True)
class ExtendedTypeGraph:
    """타입 그래프 + 색 D 의 polarity d"""

    base: TypeGraph
    d: Table

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def tables(self) -> Tuple[Table, Table, Table, Table]:
        return self.base.tables + (self.d,)

    @property
    def proper(self) -> bool:
        return is_proper(self.d)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """재라벨링에 불변인 타입 그래프의 바이트 키

    바이트 구성: [종류 1바이트(0 일반, 1 확장), k, 재라벨링된 상 테이블들...]
    k 와 테이블 값은 2바이트 big-endian 이므로 바이트 순서가 곧 수의 사전순입니다.
    """

    code: bytes

    @property
    def extended(self) -> bool:
        return self.code[0] == EXTENDED_KIND

    @property
    def k(self) -> int:
        return int.from_bytes(self.code[1:3], "big")

    def hex(self) -> str:
        return self.code.hex()

    @classmethod
    def from_hex(cls, text: str) -> "CanonicalCode":
        return cls(bytes.fromhex(text.strip()))

    def tables(self) -> Tuple[Table, ...]:
        k = self.k
        body = np.frombuffer(self.code[3:], dtype=CODE_DTYPE).tolist()
        return tuple(tuple(body[i * k:(i + 1) * k]) for i in range(len(body) // k))

    def to_type_graph(self) -> TypeGraph:
        if self.extended:
            raise ValueError("extended code has no plain type graph; use to_extended()")
        return TypeGraph(*self.tables())

    def to_extended(self) -> ExtendedTypeGraph:
        if not self.extended:
            raise ValueError("plain code has no D colour; use to_type_graph()")
        t0, t1, t2, d = self.tables()
        return ExtendedTypeGraph(TypeGraph(t0, t1, t2), d)

    def __str__(self) -> str:
        return self.hex()


class ProperCheck(NamedTuple):
    admits: bool
    witness: Optional[Tuple[str, Tuple[int, ...]]]


# ============================================================
# Small pregraph helpers
# ============================================================

def components(k: int, tables: Sequence[Sequence[int]]) -> List[int]:
    """주어진 색들의 부분그래프 성분 라벨 (최소 꼭짓점 순 번호, scipy csgraph)"""
    return orbit_labels(k, [np.asarray(table, dtype=np.int64) for table in tables]).tolist()


def component_count(k: int, tables: Sequence[Sequence[int]]) -> int:
    return max(components(k, tables)) + 1 if k else 0


def zero_two_shape(t0: Sequence[int], t2: Sequence[int], vertices: Sequence[int]) -> Optional[str]:
    """한 {t0, t2} 성분의 모양, 다섯 모양이 아니면 None"""
    size = len(vertices)
    fixed0 = sum(1 for v in vertices if t0[v] == v)
    fixed2 = sum(1 for v in vertices if t2[v] == v)
    commuting = all(t0[t2[v]] == t2[t0[v]] for v in vertices)
    if not commuting:
        return None
    if size == 1:
        return Q1
    if size == 2:
        if fixed0 == 0 and fixed2 == 2:
            return Q2A
        if fixed0 == 2 and fixed2 == 0:
            return Q2B
        if fixed0 == 0 and fixed2 == 0:
            return Q2C
        return None
    if size == 4 and fixed0 == 0 and fixed2 == 0:
        return Q4
    return None


def zero_two_components(t: TypeGraph) -> List[Tuple[str, Tuple[int, ...]]]:
    """각 {t0, t2} 성분의 (모양, 꼭짓점들)"""
    label = components(t.k, (t.t0, t.t2))
    groups: Dict[int, List[int]] = {}
    for v, c in enumerate(label):
        groups.setdefault(c, []).append(v)
    result = []
    for c in sorted(groups):
        vertices = tuple(groups[c])
        result.append((zero_two_shape(t.t0, t.t2, vertices), vertices))
    return result


def _check_involution(table: Sequence[int], k: int, name: str) -> None:
    for v, w in enumerate(table):
        if not 0 <= w < k:
            raise NotInvolution(f"{name}[{v}] = {w} is out of range", witness=(name, v))
        if table[w] != v:
            raise NotInvolution(f"{name} is not an involution at vertex {v}", witness=(name, v))


# ============================================================
# Construction and validation
# ============================================================

def validate_type(t0, t1, t2) -> TypeGraph:
    """원시 pregraph 데이터를 검증해 TypeGraph 를 만듭니다.

    Raises:
        NotInvolution, Disconnected, BadZeroTwoComponent
    """
    tables = tuple(tuple(int(x) for x in t) for t in (t0, t1, t2))
    k = len(tables[0])
    if k < 1 or any(len(t) != k for t in tables):
        raise StructureError(f"expected three tables of equal length k >= 1, got {[len(t) for t in tables]}")
    for color, table in enumerate(tables):
        _check_involution(table, k, f"t{color}")

    label = components(k, tables)
    count = max(label) + 1
    if count > 1:
        sizes = [label.count(c) for c in range(count)]
        raise Disconnected(f"type graph has {count} components of sizes {sizes}", witness=sizes)

    t = TypeGraph(*tables)
    for shape, vertices in zero_two_components(t):
        if shape is None:
            raise BadZeroTwoComponent(
                f"0-2 component on vertices {list(vertices)} is not a quotient of a 0-2 4-cycle",
                witness=vertices,
            )
    return t


def quotient(g: FlagGraph) -> TypeGraph:
    """플래그 그래프를 Γ(M) 궤도로 나눈 대칭 타입 그래프"""
    orbits = flag_orbits(g)
    labels = np.asarray(orbits.labels)
    tables = []
    for s in g.involutions():
        table = np.empty(orbits.count, dtype=np.int64)
        table[labels] = labels[s]
        assert np.array_equal(table[labels], labels[s]), "orbit quotient is not well defined"
        tables.append(table.tolist())
    return validate_type(*tables)


def face_orbit_counts(t: TypeGraph) -> Tuple[int, int, int]:
    """(c12, c02, c01): 꼭짓점, 변, 면 궤도 수 (2-factor 성분 수)"""
    t0, t1, t2 = t.tables
    return (
        component_count(t.k, (t1, t2)),
        component_count(t.k, (t0, t2)),
        component_count(t.k, (t0, t1)),
    )


def is_edge_transitive_type(t: TypeGraph) -> bool:
    transitive = component_count(t.k, (t.t0, t.t2)) == 1
    assert not transitive or t.k in (1, 2, 4)
    return transitive


def is_chiral_type(t: TypeGraph) -> bool:
    """semi-edge 가 없는 두 꼭짓점 타입 (type 2)"""
    return t.k == 2 and all(table[0] == 1 for table in t.tables)


# ============================================================
# Automorphisms, dualities, polarities
# ============================================================

def _search_vertex_maps(t: TypeGraph, color_action) -> List[Table]:
    found = []
    for y in range(t.k):
        image = propagate(t.tables, t.tables, 0, y, color_action)
        if image is not None:
            found.append(tuple(image))
    return found


def type_automorphisms(t: TypeGraph) -> List[Table]:
    return _search_vertex_maps(t, IDENTITY_COLORS)


def type_dualities(t: TypeGraph) -> List[Table]:
    """φ t1 = t1 φ, φ t0 = t2 φ 를 만족하는 꼭짓점 순열 전체 (최대 k 개)"""
    return _search_vertex_maps(t, DUAL_COLORS)


def is_polarity(phi: Sequence[int]) -> bool:
    return all(phi[phi[v]] == v for v in range(len(phi)))


def is_proper(phi: Sequence[int]) -> bool:
    return all(phi[v] == v for v in range(len(phi)))


def polarities(t: TypeGraph, dualities: Optional[List[Table]] = None) -> List[Table]:
    if dualities is None:
        dualities = type_dualities(t)
    return [phi for phi in dualities if is_polarity(phi)]


def is_self_dual_type(t: TypeGraph) -> bool:
    return bool(type_dualities(t))


def duality_classes(
    t: TypeGraph,
    dualities: Optional[List[Table]] = None,
    automorphisms: Optional[List[Table]] = None,
) -> List[Table]:
    """자기동형군의 켤레(conjugation)로 본 쌍대의 대표들 (대표 = 켤레류의 사전순 최소)"""
    if dualities is None:
        dualities = type_dualities(t)
    if automorphisms is None:
        automorphisms = type_automorphisms(t)
    inverses = []
    for alpha in automorphisms:
        inverse = [0] * t.k
        for v, w in enumerate(alpha):
            inverse[w] = v
        inverses.append(inverse)

    representatives = set()
    for phi in dualities:
        conjugates = (
            tuple(alpha[phi[inverse[v]]] for v in range(t.k))
            for alpha, inverse in zip(automorphisms, inverses)
        )
        representatives.add(min(conjugates))
    return sorted(representatives)


def admits_proper(t: TypeGraph) -> ProperCheck:
    """proper polarity(모든 꼭짓점을 고정하는 쌍대)를 가질 수 있는지

    Q4, Q2a, Q2b 성분이 있으면 불가능하며 그 성분을 witness 로 돌려줍니다.
    """
    for shape, vertices in zero_two_components(t):
        if shape in (Q4, Q2A, Q2B):
            return ProperCheck(False, (shape, vertices))
    identity = tuple(range(t.k))
    return ProperCheck(identity in type_dualities(t), None)


def extend(t: TypeGraph, d: Sequence[int]) -> ExtendedTypeGraph:
    """타입 그래프에 polarity d 를 색 D 로 붙입니다.

    Raises:
        NotPolarity: d 가 순열이 아니거나 d^2 != id
        NotDuality: d t1 != t1 d 이거나 d t0 d != t2
    """
    d = tuple(int(x) for x in d)
    k = t.k
    if len(d) != k or sorted(d) != list(range(k)):
        raise NotPolarity(f"d must be a permutation of 0..{k - 1}, got {list(d)}", witness=d)
    for v in range(k):
        if d[d[v]] != v:
            raise NotPolarity(f"d has order greater than 2 (d(d({v})) = {d[d[v]]})", witness=v)
    t0, t1, t2 = t.tables
    for v in range(k):
        if d[t1[v]] != t1[d[v]]:
            raise NotDuality(f"d does not commute with t1 at vertex {v}", witness=v)
        if d[t0[d[v]]] != t2[v]:
            raise NotDuality(f"d t0 d != t2 at vertex {v}", witness=v)
    x = ExtendedTypeGraph(t, d)
    for v in range(k):
        assert d[t2[d[v]]] == t0[v]
        assert t1[d[t1[d[v]]]] == v
    return x


# ============================================================
# Canonical codes
# ============================================================

def _relabelled_from(tables: Sequence[Sequence[int]], start: int) -> Tuple[int, ...]:
    k = len(tables[0])
    label = [-1] * k
    label[start] = 0
    order = [start]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for table in tables:
            w = table[v]
            if label[w] < 0:
                label[w] = len(order)
                order.append(w)
    return tuple(label[table[v]] for table in tables for v in order)


def canonical_tables_code(tables: Sequence[Sequence[int]], kind: int = PLAIN_KIND) -> CanonicalCode:
    """연결된 색 pregraph 의 정규 코드 (모든 시작점 중 사전순 최소 재라벨링)"""
    k = len(tables[0])
    best = min(_relabelled_from(tables, start) for start in range(k))
    header = bytes((kind,)) + k.to_bytes(2, "big")
    return CanonicalCode(header + np.asarray(best, dtype=CODE_DTYPE).tobytes())


def canonical_code(t: Union[TypeGraph, ExtendedTypeGraph]) -> CanonicalCode:
    kind = EXTENDED_KIND if isinstance(t, ExtendedTypeGraph) else PLAIN_KIND
    return canonical_tables_code(t.tables, kind)


def relabel(t: TypeGraph, perm: Sequence[int]) -> TypeGraph:
    """꼭짓점 v 를 perm[v] 로 옮긴 같은 타입 그래프"""
    tables = []
    for table in t.tables:
        image = [0] * t.k
        for v, w in enumerate(table):
            image[perm[v]] = perm[w]
        tables.append(tuple(image))
    return TypeGraph(*tables)
