"""
플래그 그래프(flag graph)로 표현한 지도(map) 핵심 모듈

세 개의 고정점 없는 involution s0, s1, s2 로 지도를 표현합니다.
검증, 꼭짓점/변/면 계산, 자기동형(automorphism) 탐색, 플래그 궤도,
지도 수준의 쌍대(duality) 탐색을 제공합니다.
"""

from dataclasses import dataclass
from typing import FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

# 색 작용: 자기동형은 항등, 쌍대는 0 <-> 2 교환
IDENTITY_COLORS: Tuple[int, int, int] = (0, 1, 2)
DUAL_COLORS: Tuple[int, int, int] = (2, 1, 0)

# k-face 를 만드는 두 생성원의 색 (k 를 제외한 나머지 두 색)
FACE_GENERATORS = {0: (1, 2), 1: (0, 2), 2: (0, 1)}


# ============================================================
# Exceptions
# ============================================================

class StructureError(ValueError):
    """플래그 그래프/타입 그래프 구조 검증 실패의 기본 예외

    witness 에는 위반을 보여주는 플래그(또는 꼭짓점), 색, 성분 크기 등이 담깁니다.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInvolution(StructureError):
    """s_i 가 involution(순열이면서 제곱이 항등)이 아님"""


class FixedPointPresent(StructureError):
    """s_i 또는 s0s2 에 고정점이 있음"""


class Zero2NotCommuting(StructureError):
    """s0 와 s2 가 교환하지 않음"""


class Disconnected(StructureError):
    """세 색을 합친 그래프가 연결되어 있지 않음 (witness = 성분 크기 목록)"""


class SizeMismatch(StructureError):
    """두 플래그 그래프의 플래그 수가 다름"""


# ============================================================
# Core Classes
# ============================================================

def _as_table(values) -> np.ndarray:
    table = np.array(values, dtype=np.int64)
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class FlagGraph:
    """검증을 통과한 플래그 그래프 (validate() 로만 생성하는 것을 권장)

    Attributes:
        s0, s1, s2: 길이 n 의 읽기 전용 numpy 배열 (각 involution 의 상 테이블)
    """

    s0: np.ndarray
    s1: np.ndarray
    s2: np.ndarray

    @property
    def n(self) -> int:
        return len(self.s0)

    def involutions(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.s0, self.s1, self.s2)

    def tables(self) -> Tuple[List[int], List[int], List[int]]:
        """전파(propagation) 루프용 파이썬 리스트 테이블"""
        return tuple(s.tolist() for s in self.involutions())

    def __eq__(self, other) -> bool:
        if not isinstance(other, FlagGraph):
            return NotImplemented
        return all(np.array_equal(a, b) for a, b in zip(self.involutions(), other.involutions()))

    def __hash__(self) -> int:
        return hash(tuple(s.tobytes() for s in self.involutions()))

    def __repr__(self) -> str:
        return f"FlagGraph(n={self.n})"


@dataclass(frozen=True, eq=False)
class FlagBijection:
    """두 플래그 그래프 사이의 색 작용을 따르는 전단사

    image[s_i[x]] = target.s_{σ(i)}[image[x]] 를 만족합니다 (σ = color_action).
    """

    source: FlagGraph
    target: FlagGraph
    image: Tuple[int, ...]
    color_action: Tuple[int, int, int] = IDENTITY_COLORS

    def __call__(self, flag: int) -> int:
        return self.image[flag]

    def then(self, other: "FlagBijection") -> "FlagBijection":
        """self 를 먼저, other 를 나중에 적용한 합성"""
        image = tuple(other.image[y] for y in self.image)
        colors = tuple(other.color_action[self.color_action[i]] for i in range(3))
        return FlagBijection(self.source, other.target, image, colors)

    def respects_colors(self) -> bool:
        image = np.asarray(self.image)
        targets = self.target.involutions()
        return all(
            np.array_equal(image[s], targets[self.color_action[i]][image])
            for i, s in enumerate(self.source.involutions())
        )


class ClassifiedDuality(NamedTuple):
    bijection: FlagBijection
    proper: bool


class FlagOrbits(NamedTuple):
    """Γ(M) 궤도 분할. labels[x] 는 플래그 x 의 궤도 번호 (최소 플래그 순)"""

    labels: Tuple[int, ...]
    count: int
    blocks: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class MapSkeleton:
    """플래그 궤도로 얻은 지도의 꼭짓점/변/면 (+ Petrie 다각형)"""

    vertex_orbits: Tuple[Tuple[int, ...], ...]
    edge_orbits: Tuple[Tuple[int, ...], ...]
    face_orbits: Tuple[Tuple[int, ...], ...]
    petrie_orbits: Tuple[Tuple[int, ...], ...]
    euler: int
    orientable: bool
    schlafli: Optional[Tuple[int, int]]

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_orbits)

    @property
    def num_edges(self) -> int:
        return len(self.edge_orbits)

    @property
    def num_faces(self) -> int:
        return len(self.face_orbits)

    @property
    def num_petrie_polygons(self) -> int:
        return len(self.petrie_orbits)

    @property
    def genus(self) -> int:
        """곡면의 종수 (가향이면 (2-χ)/2, 비가향이면 2-χ)"""
        return (2 - self.euler) // 2 if self.orientable else 2 - self.euler

    @property
    def signed_genus(self) -> int:
        """가향 종수는 양수, 비가향 종수는 음수로 표기"""
        return self.genus if self.orientable else -self.genus


class MapSymbol(NamedTuple):
    """Γ-궤도별 꼭짓점 차수, 면 크기, Petrie 다각형 길이"""

    valencies: Tuple[int, ...]
    face_sizes: Tuple[int, ...]
    petrie_lengths: Tuple[int, ...]

    def __str__(self) -> str:
        def join(values):
            return ",".join(str(v) for v in values)

        return f"<{join(self.valencies)}; {join(self.face_sizes)}; {join(self.petrie_lengths)}>"


# ============================================================
# Orbit helpers
# ============================================================

def orbit_labels(n: int, generators: Sequence[np.ndarray]) -> np.ndarray:
    """생성원들이 만드는 궤도 라벨 (최소 원소가 작은 궤도부터 0, 1, 2, ...)

    Args:
        n: 점의 수
        generators: 각 생성원의 상 테이블 목록

    Returns:
        길이 n 의 궤도 번호 배열
    """
    rows = np.concatenate([np.arange(n)] * len(generators))
    cols = np.concatenate([np.asarray(g) for g in generators])
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    count, labels = connected_components(graph, directed=False)
    return _renumber_by_least(labels, count)


def _renumber_by_least(labels: np.ndarray, count: int) -> np.ndarray:
    _, first = np.unique(labels, return_index=True)
    relabel = np.empty(count, dtype=np.int64)
    relabel[np.argsort(first)] = np.arange(count)
    return relabel[labels]


def _blocks(labels: np.ndarray) -> Tuple[Tuple[int, ...], ...]:
    order = np.argsort(labels, kind="stable")
    counts = np.bincount(labels)
    return tuple(tuple(block.tolist()) for block in np.split(order, np.cumsum(counts)[:-1]))


def _first_violation(mask: np.ndarray) -> int:
    return int(np.flatnonzero(mask)[0])


# ============================================================
# Validation
# ============================================================

def validate(s0, s1, s2) -> FlagGraph:
    """원시 플래그 데이터를 검증해 FlagGraph 를 만듭니다.

    검사 순서: 길이 → involution → 고정점 → s0s2 교환 → s0s2 고정점 → 연결성

    Args:
        s0, s1, s2: 0-based 상 테이블 (리스트 또는 numpy 배열)

    Returns:
        FlagGraph

    Raises:
        StructureError 와 그 하위 예외 (첫 위반 플래그를 witness 로 보고)
    """
    tables = [_as_table(s) for s in (s0, s1, s2)]
    n = len(tables[0])
    if any(t.ndim != 1 or len(t) != n for t in tables) or n < 4:
        raise StructureError(f"expected three arrays of equal length n >= 4, got lengths {[t.size for t in tables]}")

    identity = np.arange(n)
    for color, table in enumerate(tables):
        out_of_range = (table < 0) | (table >= n)
        if out_of_range.any():
            x = _first_violation(out_of_range)
            raise NotInvolution(f"s{color}[{x}] = {table[x]} is out of range", witness=(color, x))
        broken = table[table] != identity
        if broken.any():
            x = _first_violation(broken)
            raise NotInvolution(f"s{color} is not an involution at flag {x}", witness=(color, x))
    for color, table in enumerate(tables):
        fixed = table == identity
        if fixed.any():
            x = _first_violation(fixed)
            raise FixedPointPresent(f"s{color} fixes flag {x}", witness=(f"s{color}", x))

    t0, _, t2 = tables
    composite = t0[t2]
    not_commuting = composite != t2[t0]
    if not_commuting.any():
        x = _first_violation(not_commuting)
        raise Zero2NotCommuting(f"s0 s2 != s2 s0 at flag {x}", witness=x)
    fixed = composite == identity
    if fixed.any():
        x = _first_violation(fixed)
        raise FixedPointPresent(f"s0 s2 fixes flag {x}", witness=("s0s2", x))

    labels = orbit_labels(n, tables)
    sizes = np.bincount(labels)
    if len(sizes) > 1:
        raise Disconnected(
            f"flag graph has {len(sizes)} components of sizes {sizes.tolist()}", witness=sizes.tolist()
        )
    return FlagGraph(*tables)


# ============================================================
# Derived elements
# ============================================================

def _is_bipartite(g: FlagGraph) -> bool:
    # 부호 있는 이중 덮개: 연결 그래프가 이분 그래프이면 덮개가 정확히 두 조각
    n = g.n
    lifted = [np.concatenate([s + n, s]) for s in g.involutions()]
    labels = orbit_labels(2 * n, lifted)
    return int(labels.max()) == 1


def elements(g: FlagGraph) -> MapSkeleton:
    """꼭짓점, 변, 면, Petrie 다각형 궤도와 χ, 가향성, Schläfli 기호를 계산합니다.

    Args:
        g: 검증된 플래그 그래프

    Returns:
        MapSkeleton
    """
    s0, s1, s2 = g.involutions()
    vertex_labels = orbit_labels(g.n, (s1, s2))
    edge_labels = orbit_labels(g.n, (s0, s2))
    face_labels = orbit_labels(g.n, (s0, s1))
    petrie_labels = orbit_labels(g.n, (s0[s2], s1))

    vertex_orbits = _blocks(vertex_labels)
    edge_orbits = _blocks(edge_labels)
    face_orbits = _blocks(face_labels)
    assert len(edge_orbits) * 4 == g.n

    euler = len(vertex_orbits) - len(edge_orbits) + len(face_orbits)
    face_sizes = {len(f) // 2 for f in face_orbits}
    valencies = {len(v) // 2 for v in vertex_orbits}
    schlafli = None
    if len(face_sizes) == 1 and len(valencies) == 1:
        schlafli = (face_sizes.pop(), valencies.pop())

    return MapSkeleton(
        vertex_orbits=vertex_orbits,
        edge_orbits=edge_orbits,
        face_orbits=face_orbits,
        petrie_orbits=_blocks(petrie_labels),
        euler=euler,
        orientable=_is_bipartite(g),
        schlafli=schlafli,
    )


def k_face_of(g: FlagGraph, flag: int, k: int) -> FrozenSet[int]:
    """플래그가 속한 k-face (k 를 제외한 두 색이 만드는 궤도)"""
    if k not in FACE_GENERATORS:
        raise ValueError(f"k must be 0, 1 or 2, got {k}")
    if not 0 <= flag < g.n:
        raise IndexError(f"flag {flag} out of range 0..{g.n - 1}")
    involutions = g.involutions()
    labels = orbit_labels(g.n, [involutions[c] for c in FACE_GENERATORS[k]])
    return frozenset(np.flatnonzero(labels == labels[flag]).tolist())


# ============================================================
# Propagation search (automorphisms, dualities, isomorphisms)
# ============================================================

def propagate(
    source: Sequence[Sequence[int]],
    target: Sequence[Sequence[int]],
    base: int,
    image_of_base: int,
    color_action: Sequence[int] = IDENTITY_COLORS,
) -> Optional[List[int]]:
    """base -> image_of_base 에서 시작해 색 작용을 따라 전단사를 확장합니다.

    연결된 그래프에서는 한 점의 상이 전체 사상을 결정합니다 (semiregularity).
    플래그 그래프와 타입 그래프(고정점 = semi-edge) 모두에 사용합니다.

    Args:
        source: 원본 상 테이블들
        target: 대상 상 테이블들
        base: 시작점
        image_of_base: 시작점의 상
        color_action: source 색 i 가 target 색 color_action[i] 로 가는 규칙

    Returns:
        일관된 전단사의 상 리스트, 모순이면 None
    """
    size = len(source[0])
    image = [-1] * size
    used = [False] * size
    image[base] = image_of_base
    used[image_of_base] = True
    stack = [base]
    pairs = [(s, target[color_action[i]]) for i, s in enumerate(source)]
    while stack:
        x = stack.pop()
        y = image[x]
        for s, t in pairs:
            x2 = s[x]
            y2 = t[y]
            known = image[x2]
            if known < 0:
                if used[y2]:
                    return None
                image[x2] = y2
                used[y2] = True
                stack.append(x2)
            elif known != y2:
                return None
    if -1 in image:
        return None
    return image


def _search(g: FlagGraph, h: FlagGraph, color_action, first_only: bool = False) -> List[FlagBijection]:
    source, target = g.tables(), h.tables()
    found = []
    for y in range(h.n):
        image = propagate(source, target, 0, y, color_action)
        if image is None:
            continue
        found.append(FlagBijection(g, h, tuple(image), tuple(color_action)))
        if first_only:
            break
    return found


def color_automorphisms(g: FlagGraph) -> List[FlagBijection]:
    """색을 보존하는 자기동형 전체 Γ(M) (플래그 0 의 상 순서로 정렬)"""
    return _search(g, g, IDENTITY_COLORS)


def flag_orbits(g: FlagGraph, automorphisms: Optional[List[FlagBijection]] = None) -> FlagOrbits:
    """Γ(M) 의 플래그 궤도 (최소 플래그 번호 순으로 번호 매김)"""
    if automorphisms is None:
        automorphisms = color_automorphisms(g)
    images = np.array([a.image for a in automorphisms], dtype=np.int64)
    least = images.min(axis=0)
    _, labels = np.unique(least, return_inverse=True)
    labels = labels.reshape(-1)
    return FlagOrbits(labels=tuple(labels.tolist()), count=int(labels.max()) + 1, blocks=_blocks(labels))


def map_dualities(g: FlagGraph, orbits: Optional[FlagOrbits] = None) -> List[ClassifiedDuality]:
    """지도의 자기쌍대 사상 전체와 proper/improper 분류

    proper: 모든 플래그 궤도를 보존, improper: 어떤 궤도를 옮김
    """
    dualities = _search(g, g, DUAL_COLORS)
    if not dualities:
        return []
    if orbits is None:
        orbits = flag_orbits(g)
    labels = np.asarray(orbits.labels)
    classified = []
    for duality in dualities:
        proper = bool(np.array_equal(labels[np.asarray(duality.image)], labels))
        classified.append(ClassifiedDuality(duality, proper))
    return classified


def project_to_orbits(bijection: FlagBijection, orbits: FlagOrbits) -> Tuple[int, ...]:
    """플래그 전단사가 궤도 위에 유도하는 순열"""
    labels = np.asarray(orbits.labels)
    moved = labels[np.asarray(bijection.image)]
    induced = np.full(orbits.count, -1, dtype=np.int64)
    induced[labels] = moved
    assert np.array_equal(induced[labels], moved), "bijection does not respect flag orbits"
    return tuple(induced.tolist())


def isomorphic(g: FlagGraph, h: FlagGraph, color_perm: Sequence[int] = IDENTITY_COLORS) -> Optional[FlagBijection]:
    """색 순열 color_perm 을 따르는 g -> h 동형 사상 (없으면 None)

    Raises:
        SizeMismatch: 플래그 수가 다를 때
    """
    if g.n != h.n:
        raise SizeMismatch(f"flag counts differ: {g.n} != {h.n}", witness=(g.n, h.n))
    found = _search(g, h, tuple(color_perm), first_only=True)
    return found[0] if found else None


# ============================================================
# Orbit-level invariants
# ============================================================

def face_orbit_classes(g: FlagGraph, k: int, automorphisms: Optional[List[FlagBijection]] = None) -> np.ndarray:
    """플래그마다 그 k-face 의 Γ-궤도를 나타내는 대표값

    같은 Γ-궤도의 k-face 에 놓인 두 플래그는 같은 값을 가집니다.
    """
    if automorphisms is None:
        automorphisms = color_automorphisms(g)
    involutions = g.involutions()
    labels = orbit_labels(g.n, [involutions[c] for c in FACE_GENERATORS[k]])
    images = np.array([a.image for a in automorphisms], dtype=np.int64)
    return labels[images].min(axis=0)


def element_orbit_counts(g: FlagGraph) -> Tuple[int, int, int]:
    """Γ 작용에 대한 꼭짓점, 변, 면 궤도 수"""
    automorphisms = color_automorphisms(g)
    return tuple(len(np.unique(face_orbit_classes(g, k, automorphisms))) for k in (0, 1, 2))


def map_symbol(g: FlagGraph) -> MapSymbol:
    """Γ-궤도별 꼭짓점 차수, 면 크기, Petrie 다각형 길이"""
    automorphisms = color_automorphisms(g)
    images = np.array([a.image for a in automorphisms], dtype=np.int64)
    s0, s1, s2 = g.involutions()

    def sizes(generators) -> Tuple[int, ...]:
        labels = orbit_labels(g.n, generators)
        classes = labels[images].min(axis=0)
        lengths = np.bincount(labels) // 2
        _, representatives = np.unique(classes, return_index=True)
        return tuple(sorted(int(lengths[labels[x]]) for x in representatives))

    return MapSymbol(
        valencies=sizes((s1, s2)),
        face_sizes=sizes((s0, s1)),
        petrie_lengths=sizes((s0[s2], s1)),
    )


def is_chiral(g: FlagGraph, orbits: Optional[FlagOrbits] = None) -> bool:
    """두 궤도이면서 인접한 플래그가 항상 다른 궤도에 있는 지도"""
    if orbits is None:
        orbits = flag_orbits(g)
    if orbits.count != 2:
        return False
    labels = np.asarray(orbits.labels)
    return all(bool(np.all(labels[s] != labels)) for s in g.involutions())
