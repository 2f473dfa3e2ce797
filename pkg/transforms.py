"""
지도와 타입 그래프에 대한 연산자 모음

쌍대(dual), Petrie 쌍대, opposite, medial(플래그 / 이중화 / 확장 타입 수준),
그리고 medial 지도를 원래의 쌍대 쌍으로 되돌리는 de-medialization 을 제공합니다.

medial 플래그 번호: (x, 0) -> x (꼭짓점 쪽 사본), (x, 2) -> x + n (면 쪽 사본)
"""

from typing import NamedTuple, Optional, Tuple

import numpy as np

from flagmap import (
    FlagGraph,
    StructureError,
    elements,
    flag_orbits,
    isomorphic,
    orbit_labels,
    validate,
)
from typegraph import ExtendedTypeGraph, TypeGraph, validate_type


class NotAMedial(StructureError):
    """medial 지도가 아님 (check 에 실패한 검사 이름)"""

    def __init__(self, message: str, check: str, witness=None):
        super().__init__(message, witness)
        self.check = check


class DoubleMedialReport(NamedTuple):
    orbits: int
    medial_orbits: int
    double_medial_orbits: int
    equal: bool
    schlafli: Optional[Tuple[int, int]]


# ============================================================
# Dual / Petrie / opposite
# ============================================================

def dual_flag(g: FlagGraph) -> FlagGraph:
    return FlagGraph(g.s2, g.s1, g.s0)


def dual_type(t: TypeGraph) -> TypeGraph:
    return TypeGraph(t.t2, t.t1, t.t0)


def petrie_flag(g: FlagGraph) -> FlagGraph:
    """s0 를 s0 s2 로 바꾼 Petrie 쌍대"""
    return validate(g.s0[g.s2], g.s1, g.s2)


def petrie_type(t: TypeGraph) -> TypeGraph:
    t0 = tuple(t.t0[t.t2[v]] for v in range(t.k))
    return validate_type(t0, t.t1, t.t2)


def opposite(g: FlagGraph) -> FlagGraph:
    """dual(petrie(dual(g))), 즉 (s0, s1, s2 s0)"""
    result = dual_flag(petrie_flag(dual_flag(g)))
    assert result == petrie_flag(dual_flag(petrie_flag(g)))
    return result


# ============================================================
# Medial
# ============================================================

def medial_flag(g: FlagGraph) -> FlagGraph:
    """2n 플래그의 medial 지도

    S0: (x,c) -> (s1 x, c)
    S1: (x,0) -> (s2 x, 0), (x,2) -> (s0 x, 2)
    S2: (x,0) <-> (x,2)
    """
    n = g.n
    s0, s1, s2 = g.involutions()
    copies = np.arange(n)
    return validate(
        np.concatenate([s1, s1 + n]),
        np.concatenate([s2, s0 + n]),
        np.concatenate([copies + n, copies]),
    )


def medial_type_double(t: TypeGraph) -> TypeGraph:
    """자기쌍대가 아닌 지도의 medial 타입: 꼭짓점 두 벌 (v,0)=v, (v,2)=v+k"""
    k = t.k
    t0, t1, t2 = t.tables
    color0 = t1 + tuple(w + k for w in t1)
    color1 = t2 + tuple(w + k for w in t0)
    color2 = tuple(range(k, 2 * k)) + tuple(range(k))
    return validate_type(color0, color1, color2)


def medial_type_extended(x: ExtendedTypeGraph) -> TypeGraph:
    """자기쌍대 지도의 medial 타입: 색 0 = t1, 색 1 = t2, 색 2 = d"""
    t0, t1, t2 = x.base.tables
    d = x.d
    # 면 쪽 사본 (d v, 2) 에서 읽은 색 1 은 t0 이며 d 로 옮기면 t2 와 일치
    assert all(d[t0[d[v]]] == t2[v] for v in range(x.k))
    return validate_type(t1, t2, d)


# ============================================================
# De-medialization
# ============================================================

def demedialize(g: FlagGraph) -> Tuple[FlagGraph, FlagGraph]:
    """medial 지도를 쌍대 관계인 두 지도로 되돌립니다.

    첫 번째는 플래그 0 이 속한 블록에서 얻은 지도이며 medial_flag(첫 번째) ≅ g 입니다.

    Raises:
        NotAMedial: check 는 "valency-4", "two-orbits", "block", "round-trip" 중 하나
    """
    n = g.n
    s0, s1, s2 = g.involutions()
    identity = np.arange(n)
    s12 = s1[s2]
    if not np.array_equal(s12[s12[s12[s12]]], identity):
        x = int(np.flatnonzero(s12[s12[s12[s12]]] != identity)[0])
        raise NotAMedial(f"(s1 s2)^4 is not the identity at flag {x}", check="valency-4", witness=x)

    conjugate = s2[s1[s2]]
    labels = orbit_labels(n, (s1, s0, conjugate))
    sizes = np.bincount(labels)
    if len(sizes) != 2 or sizes[0] != n // 2:
        raise NotAMedial(
            f"<s1, s0, s2 s1 s2> has orbit sizes {sizes.tolist()}, expected two of size {n // 2}",
            check="two-orbits",
            witness=sizes.tolist(),
        )

    maps = []
    for block in (0, 1):
        flags = np.flatnonzero(labels == block)
        local = np.full(n, -1, dtype=np.int64)
        local[flags] = np.arange(len(flags))
        try:
            maps.append(validate(local[s1[flags]], local[s0[flags]], local[conjugate[flags]]))
        except StructureError as e:
            raise NotAMedial(f"block {block} is not a map: {e}", check="block", witness=block) from e

    if isomorphic(medial_flag(maps[0]), g) is None:
        raise NotAMedial("medial of the recovered map is not isomorphic to the input", check="round-trip")
    return maps[0], maps[1]


def is_medial(g: FlagGraph) -> bool:
    try:
        demedialize(g)
    except NotAMedial:
        return False
    return True


# ============================================================
# Double medial
# ============================================================

def schlafli_gate_for_double_medial(g: FlagGraph) -> DoubleMedialReport:
    """M, Me(M), Me(Me(M)) 의 궤도 수 비교

    M 과 Me(Me(M)) 의 궤도 수가 같으면 M 은 반드시 Schläfli {4,4} 입니다.
    """
    medial = medial_flag(g)
    double = medial_flag(medial)
    counts = [flag_orbits(m).count for m in (g, medial, double)]
    schlafli = elements(g).schlafli
    equal = counts[0] == counts[2]
    if equal and schlafli != (4, 4):
        raise AssertionError(f"double medial keeps {counts[0]} orbits but Schläfli type is {schlafli}")
    return DoubleMedialReport(counts[0], counts[1], counts[2], equal, schlafli)
