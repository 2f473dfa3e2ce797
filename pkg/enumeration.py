"""
대칭 타입 그래프 전수 생성과 집계(census)

1. 0-2 골격(skeleton): 성분 모양 {Q4, Q2a, Q2b, Q2c, Q1} 의 중복집합마다 대표 하나
2. 골격마다 t1 involution 전체(전화번호 T(k) 개)를 훑어 연결된 것만 정규 코드로 모음
3. 자기쌍대/자기극(self-polar) 타입, 쌍대 수, polarity 수, medial 타입 수 집계
"""

from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

from tqdm import tqdm

from aliases import AliasRegistry, systematic_name
from transforms import medial_type_double, medial_type_extended, petrie_type
from typegraph import (
    Q1,
    Q2A,
    Q2B,
    Q2C,
    Q4,
    CanonicalCode,
    ExtendedTypeGraph,
    StructureError,
    TypeGraph,
    canonical_code,
    canonical_tables_code,
    components,
    duality_classes,
    extend,
    face_orbit_counts,
    is_polarity,
    is_proper,
    type_dualities,
    validate_type,
)

# 집계표의 참값 (k = 1..10): a 타입, b 자기쌍대, c 자기극, d 쌍대, e polarity, f/g medial
REFERENCE_CENSUS: Dict[int, Tuple[int, int, int, int, int, int, int]] = {
    1: (1, 1, 1, 1, 1, 1, 1),
    2: (7, 3, 3, 6, 6, 6, 7),
    3: (3, 1, 1, 1, 1, 1, 1),
    4: (22, 8, 8, 21, 17, 15, 20),
    5: (13, 3, 3, 3, 3, 3, 3),
    6: (70, 12, 12, 23, 21, 19, 21),
    7: (67, 7, 7, 7, 7, 7, 7),
    8: (315, 45, 44, 101, 83, 73, 88),
    9: (393, 25, 25, 25, 25, 25, 25),
    10: (1577, 91, 91, 128, 124, 120, 128),
}
CENSUS_COLUMNS = ("a", "b", "c", "d", "e", "f", "g")

RECORD_FLAGS = ("self_dual", "self_petrie", "edge_transitive", "medial", "polar")

DEFAULT_DUALITY_MODE = "raw"
DUALITY_MODES = ("raw", "conjugacy")


class Skeleton(NamedTuple):
    """정규 블록 순서로 배치한 0-2 골격"""

    shapes: Tuple[str, ...]
    t0: Tuple[int, ...]
    t2: Tuple[int, ...]


@dataclass(frozen=True)
class CensusRow:
    k: int
    a: int
    b: int
    c: int
    d: int
    e: int
    f: Optional[int] = None
    g: Optional[int] = None
    proper: int = 0
    self_petrie: int = 0
    duality_mode: str = DEFAULT_DUALITY_MODE

    def values(self) -> Tuple[Optional[int], ...]:
        return tuple(getattr(self, column) for column in CENSUS_COLUMNS)

    def matches_reference(self) -> Optional[bool]:
        """참값과 비교 (참값이 없으면 None, f/g 가 없으면 a..e 만 비교)"""
        reference = REFERENCE_CENSUS.get(self.k)
        if reference is None:
            return None
        return all(v is None or v == r for v, r in zip(self.values(), reference))


class MedialCensus(NamedTuple):
    m: int
    f: int
    g: int
    codes: Tuple[CanonicalCode, ...]
    formula_holds: bool
    overlaps: Tuple[CanonicalCode, ...]


class TypeRecord(NamedTuple):
    index: int
    code: CanonicalCode
    k: int
    self_dual: bool
    self_petrie: bool
    edge_transitive: bool
    medial: bool
    polar: bool
    polarity_count: int
    name: str

    def to_line(self) -> str:
        """code=<hex> k=<k> self_dual=0|1 ... polarities=<n> name=<alias>"""
        fields = [("code", self.code.hex()), ("k", self.k)]
        fields += [(key, int(getattr(self, key))) for key in RECORD_FLAGS]
        fields += [("polarities", self.polarity_count), ("name", self.name)]
        return " ".join(f"{key}={value}" for key, value in fields)


class EdgeTransitiveReport(NamedTuple):
    provenance: Dict[CanonicalCode, Tuple[Tuple[CanonicalCode, str], ...]]
    missing: Tuple[CanonicalCode, ...]

    @property
    def all_present(self) -> bool:
        return not self.missing


class CalibrationResult(NamedTuple):
    mode: str
    matches: Dict[str, bool]


# ============================================================
# Duality counting strategies
# ============================================================

class DualityCounter(ABC):
    """타입 하나의 쌍대(또는 polarity) 개수를 세는 방식"""

    name: str = ""

    @abstractmethod
    def count(self, t: TypeGraph, dualities: List[Tuple[int, ...]]) -> int:
        pass


class RawDualityCounter(DualityCounter):
    """순열 φ 를 그대로 셈"""

    name = "raw"

    def count(self, t: TypeGraph, dualities: List[Tuple[int, ...]]) -> int:
        return len(dualities)


class ConjugacyDualityCounter(DualityCounter):
    """색 보존 자기동형군의 켤레류 단위로 셈"""

    name = "conjugacy"

    def count(self, t: TypeGraph, dualities: List[Tuple[int, ...]]) -> int:
        return len(duality_classes(t, dualities))


def get_duality_counter(mode: str = DEFAULT_DUALITY_MODE) -> DualityCounter:
    """
    쌍대 집계 방식 팩토리 함수

    Args:
        mode: "raw" 또는 "conjugacy"

    Returns:
        DualityCounter 인스턴스
    """
    if mode == "raw":
        return RawDualityCounter()
    elif mode == "conjugacy":
        return ConjugacyDualityCounter()
    else:
        raise ValueError(f"Unknown duality mode: {mode}. Choose 'raw' or 'conjugacy'")


# ============================================================
# Skeletons and involutions
# ============================================================

def _layout(shapes: Sequence[str]) -> Skeleton:
    k = sum({Q4: 4, Q1: 1}.get(shape, 2) for shape in shapes)
    t0 = list(range(k))
    t2 = list(range(k))
    v = 0
    for shape in shapes:
        if shape == Q4:
            t0[v], t0[v + 1], t0[v + 2], t0[v + 3] = v + 1, v, v + 3, v + 2
            t2[v], t2[v + 1], t2[v + 2], t2[v + 3] = v + 3, v + 2, v + 1, v
            v += 4
        elif shape == Q1:
            v += 1
        else:
            if shape in (Q2A, Q2C):
                t0[v], t0[v + 1] = v + 1, v
            if shape in (Q2B, Q2C):
                t2[v], t2[v + 1] = v + 1, v
            v += 2
    return Skeleton(tuple(shapes), tuple(t0), tuple(t2))


def enumerate_zero_two_skeletons(k: int) -> List[Skeleton]:
    """꼭짓점 k 개의 0-2 골격 (동형류마다 하나, 블록 순서 Q4, Q2a, Q2b, Q2c, Q1)"""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    skeletons = []
    for quads in range(k // 4 + 1):
        rest = k - 4 * quads
        for pairs in range(rest // 2 + 1):
            singles = rest - 2 * pairs
            for combo in combinations_with_replacement((Q2A, Q2B, Q2C), pairs):
                skeletons.append(_layout((Q4,) * quads + combo + (Q1,) * singles))
    return skeletons


def _involution_pairs(points: Tuple[int, ...]) -> Iterator[Tuple[Tuple[int, int], ...]]:
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for tail in _involution_pairs(rest):
        yield ((first, first),) + tail
    for i, partner in enumerate(rest):
        for tail in _involution_pairs(rest[:i] + rest[i + 1:]):
            yield ((first, partner),) + tail


@lru_cache(maxsize=None)
def involutions(k: int) -> Tuple[Tuple[int, ...], ...]:
    """k 점 위의 involution 전체 (고정점 허용), 개수는 전화번호 T(k)"""
    result = []
    for pairs in _involution_pairs(tuple(range(k))):
        image = list(range(k))
        for a, b in pairs:
            image[a], image[b] = b, a
        result.append(tuple(image))
    return tuple(result)


def _connects(block: Sequence[int], blocks: int, t1: Sequence[int]) -> bool:
    # t1 후보마다 호출되는 안쪽 루프, 0-2 블록 위의 union-find
    parent = list(range(blocks))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    joins = 0
    for v, w in enumerate(t1):
        if w > v:
            a, b = find(block[v]), find(block[w])
            if a != b:
                parent[a] = b
                joins += 1
    return joins == blocks - 1


def _skeleton_codes(skeleton: Skeleton) -> Set[CanonicalCode]:
    k = len(skeleton.t0)
    block = components(k, (skeleton.t0, skeleton.t2))
    blocks = max(block) + 1
    codes = set()
    for t1 in involutions(k):
        if _connects(block, blocks, t1):
            codes.add(canonical_tables_code((skeleton.t0, t1, skeleton.t2)))
    return codes


_TYPE_CACHE: Dict[int, Tuple[CanonicalCode, ...]] = {}


def generate_types(k: int, jobs: int = 1, show_progress: bool = False) -> Tuple[CanonicalCode, ...]:
    """골격 우선 생성 후 정규 코드로 중복 제거한 k-꼭짓점 타입 전체 (정렬됨)"""
    skeletons = enumerate_zero_two_skeletons(k)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(tqdm(pool.map(_skeleton_codes, skeletons), total=len(skeletons),
                                desc=f"k={k} 골격", disable=not show_progress))
    else:
        results = [_skeleton_codes(s) for s in tqdm(skeletons, desc=f"k={k} 골격", disable=not show_progress)]
    codes: Set[CanonicalCode] = set()
    for found in results:
        codes |= found
    return tuple(sorted(codes))


def enumerate_types(k: int, jobs: int = 1, show_progress: bool = False) -> Tuple[CanonicalCode, ...]:
    if k not in _TYPE_CACHE:
        _TYPE_CACHE[k] = generate_types(k, jobs=jobs, show_progress=show_progress)
    return _TYPE_CACHE[k]


def enumerate_types_naive(k: int) -> Tuple[CanonicalCode, ...]:
    """involution 세 쌍 전체를 검증해 모으는 느린 기준 구현"""
    codes = set()
    for t0, t1, t2 in product(involutions(k), repeat=3):
        try:
            t = validate_type(t0, t1, t2)
        except StructureError:
            continue
        codes.add(canonical_code(t))
    return tuple(sorted(codes))


def types(k: int) -> List[TypeGraph]:
    return [code.to_type_graph() for code in enumerate_types(k)]


# ============================================================
# Censuses
# ============================================================

def extended_type_graphs(m: int) -> List[ExtendedTypeGraph]:
    """m-꼭짓점 자기쌍대 타입과 그 polarity 의 모든 쌍"""
    extended = []
    for t in types(m):
        for d in type_dualities(t):
            if is_polarity(d):
                extended.append(extend(t, d))
    return extended


def count_self_dual(k: int) -> int:
    return sum(1 for t in types(k) if type_dualities(t))


def medial_census(m: int) -> MedialCensus:
    """m-꼭짓점 medial 타입: f = 확장 그래프의 medial, g = 여기에 m/2 타입의 이중화를 더한 것"""
    from_extended = {canonical_code(medial_type_extended(x)) for x in extended_type_graphs(m)}
    from_doubling: Set[CanonicalCode] = set()
    if m % 2 == 0:
        from_doubling = {canonical_code(medial_type_double(t)) for t in types(m // 2)}
    union = from_extended | from_doubling
    f, g = len(from_extended), len(union)
    if m % 2 == 0:
        half = len(enumerate_types(m // 2))
        formula_holds = 2 * g == 2 * f + count_self_dual(m // 2) + half
    else:
        formula_holds = g == f
    return MedialCensus(m, f, g, tuple(sorted(union)), formula_holds, tuple(sorted(from_extended & from_doubling)))


def census(k: int, duality_mode: str = DEFAULT_DUALITY_MODE, with_medial: bool = True,
           jobs: int = 1, show_progress: bool = False) -> CensusRow:
    counter = get_duality_counter(duality_mode)
    codes = enumerate_types(k, jobs=jobs, show_progress=show_progress)
    b = c = d = e = proper = self_petrie = 0
    for code in codes:
        t = code.to_type_graph()
        if canonical_code(petrie_type(t)) == code:
            self_petrie += 1
        dualities = type_dualities(t)
        if not dualities:
            continue
        b += 1
        pols = [phi for phi in dualities if is_polarity(phi)]
        if pols:
            c += 1
        if any(is_proper(phi) for phi in pols):
            proper += 1
        d += counter.count(t, dualities)
        e += counter.count(t, pols)

    f = g = None
    if with_medial:
        medial = medial_census(k)
        f, g = medial.f, medial.g
    return CensusRow(k, len(codes), b, c, d, e, f, g, proper, self_petrie, counter.name)


def calibrate_duality_mode(max_k: int = 4) -> CalibrationResult:
    """참값의 d, e 행과 맞는 쌍대 집계 방식을 고릅니다 (k <= max_k)"""
    matches = {}
    for mode in DUALITY_MODES:
        rows = [census(k, duality_mode=mode, with_medial=False) for k in range(1, max_k + 1)]
        matches[mode] = all((row.d, row.e) == REFERENCE_CENSUS[row.k][3:5] for row in rows)
    chosen = next((mode for mode in DUALITY_MODES if matches[mode]), DEFAULT_DUALITY_MODE)
    return CalibrationResult(chosen, matches)


def self_dual_without_polarity(k: int) -> List[CanonicalCode]:
    """자기쌍대이지만 polarity 가 하나도 없는 타입들"""
    found = []
    for code in enumerate_types(k):
        dualities = type_dualities(code.to_type_graph())
        if dualities and not any(is_polarity(phi) for phi in dualities):
            found.append(code)
    return found


def edge_transitive_types() -> List[CanonicalCode]:
    return [code for k in (1, 2, 4) for code in enumerate_types(k)
            if face_orbit_counts(code.to_type_graph())[1] == 1]


def edge_transitive_medial_check() -> EdgeTransitiveReport:
    """변 추이적 타입 14개가 모두 medial 타입인지와 각각의 출처"""
    sources: Dict[CanonicalCode, Set[Tuple[CanonicalCode, str]]] = {}

    def record(result: TypeGraph, source: TypeGraph, how: str) -> None:
        if face_orbit_counts(result)[1] == 1:
            sources.setdefault(canonical_code(result), set()).add((canonical_code(source), how))

    for m in (1, 2, 4):
        for x in extended_type_graphs(m):
            record(medial_type_extended(x), x.base, "proper" if x.proper else "improper")
        if m % 2 == 0:
            for t in types(m // 2):
                record(medial_type_double(t), t, "none")

    targets = edge_transitive_types()
    provenance = {code: tuple(sorted(sources.get(code, ()))) for code in targets}
    missing = tuple(code for code in targets if not provenance[code])
    return EdgeTransitiveReport(provenance, missing)


def type_records(k: int, registry: Optional[AliasRegistry] = None) -> List[TypeRecord]:
    """한 줄 레코드 형식용 타입별 속성"""
    if registry is None:
        registry = AliasRegistry()
    medial_codes = set(medial_census(k).codes)
    records = []
    for index, code in enumerate(enumerate_types(k)):
        t = code.to_type_graph()
        dualities = type_dualities(t)
        pols = [phi for phi in dualities if is_polarity(phi)]
        records.append(TypeRecord(
            index=index,
            code=code,
            k=k,
            self_dual=bool(dualities),
            self_petrie=canonical_code(petrie_type(t)) == code,
            edge_transitive=face_orbit_counts(t)[1] == 1,
            medial=code in medial_codes,
            polar=bool(pols),
            polarity_count=len(pols),
            name=registry.name_of(code) or systematic_name(k, index),
        ))
    return records
