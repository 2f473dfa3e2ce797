"""
수용 기준 점검 스크립트

집계표 a..g 행, proper 쌍대 개수, 변 추이적 타입의 medial 출처, 고정 이름 medial 표,
내장 지도 위의 플래그/타입 교환 관계, de-medialization, medial 수치, 전수 생성 교차 검증,
이중 medial 검사를 차례로 확인하고 기준마다 ✅/❌ 를 출력합니다.
"""

import time
from typing import Callable, List, Optional, Tuple

from tqdm import tqdm

from aliases import pinned_code, pinned_type
from enumeration import (
    REFERENCE_CENSUS,
    calibrate_duality_mode,
    census,
    edge_transitive_medial_check,
    enumerate_types,
    enumerate_types_naive,
    medial_census,
    self_dual_without_polarity,
)
from flagmap import elements, flag_orbits, isomorphic, map_dualities, project_to_orbits
from formats import cube, octahedron, tetrahedron, torus44
from transforms import (
    NotAMedial,
    demedialize,
    dual_flag,
    dual_type,
    medial_flag,
    medial_type_double,
    medial_type_extended,
    petrie_flag,
    petrie_type,
)
from typegraph import canonical_code, extend, is_proper, polarities, quotient

# ok 가 None 이면 건너뛴 기준
Check = Tuple[Optional[bool], str]


def builtin_maps() -> List[Tuple[str, object]]:
    """교환 관계 점검에 쓰는 내장 지도와 그 medial"""
    base = [
        ("tetrahedron", tetrahedron()),
        ("cube", cube()),
        ("octahedron", octahedron()),
        ("torus44(3,0,0,3)", torus44(3, 0, 0, 3)),
        ("torus44(2,1,-1,2)", torus44(2, 1, -1, 2)),
    ]
    return base + [(f"medial({name})", medial_flag(g)) for name, g in base]


def expected_medial_type(g):
    """플래그 수준 쌍대가 있으면 확장 경로, 없으면 이중화 경로의 medial 타입"""
    t = quotient(g)
    dualities = map_dualities(g)
    if not dualities:
        return medial_type_double(t)
    d = project_to_orbits(dualities[0].bijection, flag_orbits(g))
    return medial_type_extended(extend(t, d))


# ============================================================
# Criteria
# ============================================================

def check_census_rows(max_k: int, jobs: int) -> Check:
    start_time = time.time()
    wrong = []
    for k in tqdm(range(1, max_k + 1), desc="집계"):
        enumerate_types(k, jobs=jobs)
        row = census(k)
        if row.values() != REFERENCE_CENSUS[k]:
            wrong.append(f"k={k}: {row.values()}")
    elapsed = time.time() - start_time
    if wrong:
        return False, "; ".join(wrong)
    return True, f"a..g 행 k=1..{max_k} 일치 ({elapsed:.1f}초)"


def check_polarity_gap(max_k: int) -> Check:
    if max_k < 8:
        return None, f"max_k={max_k} < 8 이라 건너뜀"
    witnesses = self_dual_without_polarity(8)
    return len(witnesses) == 1, f"polarity 없는 자기쌍대 8-꼭짓점 타입 {len(witnesses)}개"


def check_calibration() -> Check:
    result = calibrate_duality_mode()
    return result.mode == "raw" and result.matches["raw"], f"보정 결과 {result.mode} {result.matches}"


def check_medial_formula(max_k: int) -> Check:
    failing = [m for m in range(1, max_k + 1) if not medial_census(m).formula_holds]
    return not failing, f"g 공식 실패 k={failing}" if failing else "g 공식 성립"


def check_proper_corollary(max_k: int) -> Check:
    wrong = [k for k in range(1, max_k + 1) if census(k, with_medial=False).proper != (3 if k % 2 == 0 else 1)]
    return not wrong, f"불일치 k={wrong}" if wrong else "짝수 k 3개, 홀수 k 1개"


def check_edge_transitive() -> Check:
    report = edge_transitive_medial_check()
    counts = [sum(1 for code in report.provenance if code.k == k) for k in (1, 2, 4)]
    produced = {
        (source, how): {code for code, sources in report.provenance.items() if (source, how) in sources}
        for sources in report.provenance.values()
        for source, how in sources
    }

    def products(name: str) -> set:
        code = pinned_code(name)
        return set().union(*(v for (source, _), v in produced.items() if source == code))

    pattern = (
        products("1") == {pinned_code("2_01"), pinned_code("1")}
        and products("2_02") == {pinned_code(n) for n in ("2_12", "2_1", "4_F")}
        and products("2") == {pinned_code(n) for n in ("2_2", "2", "4_G")}
        and pinned_code("4_H") in products("2_0") & products("2_2")
    )
    ok = report.all_present and counts == [1, 6, 7] and pattern
    return ok, f"변 추이적 타입 {counts} (누락 {len(report.missing)}개)"


TABLE_ROWS = [
    # (원본, polarity 종류 또는 None, 결과)
    ("1", "proper", "1"),
    ("1", None, "2_01"),
    ("2_02", "proper", "2_12"),
    ("2_02", "improper", "2_1"),
    ("2_1", "improper", "2_0"),
    ("2", "proper", "2_2"),
    ("2", "improper", "2"),
    ("3^02", "proper", "3^0"),
    ("3^0", None, "6_D"),
    ("3^2", None, "6_D"),
    ("3^02", None, "6_M"),
    ("2_0", None, "4_H"),
    ("2_2", None, "4_H"),
    ("2_01", None, "4_A"),
    ("2_12", None, "4_A"),
    ("2_1", None, "4_C"),
    ("2_02", None, "4_F"),
    ("2", None, "4_G"),
]


def medial_of_named(source: str, kind) -> set:
    """이름 붙은 타입의 medial 타입 코드들 (kind 가 None 이면 이중화)"""
    t = pinned_type(source)
    if kind is None:
        return {canonical_code(medial_type_double(t))}
    proper = kind == "proper"
    return {
        canonical_code(medial_type_extended(extend(t, d)))
        for d in polarities(t)
        if is_proper(d) == proper
    }


def check_table_rows() -> Check:
    wrong = [f"{s}/{kind}" for s, kind, result in TABLE_ROWS if medial_of_named(s, kind) != {pinned_code(result)}]
    return not wrong, f"불일치 {wrong}" if wrong else f"{len(TABLE_ROWS)}개 행 일치"


def check_commutation() -> Check:
    wrong = []
    for name, g in tqdm(builtin_maps(), desc="교환 관계"):
        t = quotient(g)
        if canonical_code(quotient(dual_flag(g))) != canonical_code(dual_type(t)):
            wrong.append(f"{name}: dual")
        if canonical_code(quotient(petrie_flag(g))) != canonical_code(petrie_type(t)):
            wrong.append(f"{name}: petrie")
        if canonical_code(quotient(medial_flag(g))) != canonical_code(expected_medial_type(g)):
            wrong.append(f"{name}: medial")
    return not wrong, f"불일치 {wrong}" if wrong else "모든 내장 지도에서 성립"


def check_demedialize() -> Check:
    wrong = []
    for name, g in builtin_maps()[:5]:
        medial = medial_flag(g)
        first, second = demedialize(medial)
        if isomorphic(medial_flag(first), medial) is None or isomorphic(first, dual_flag(second)) is None:
            wrong.append(name)
    try:
        demedialize(tetrahedron())
        wrong.append("tetrahedron accepted")
    except NotAMedial:
        pass
    return not wrong, f"실패 {wrong}" if wrong else "왕복 복원 및 사면체 거부"


def check_medial_numerology() -> Check:
    wrong = []
    for name, g in builtin_maps()[:5]:
        m, me = elements(g), elements(medial_flag(g))
        ok = (
            me.num_vertices == m.num_edges
            and me.num_edges == 2 * m.num_edges
            and me.num_faces == m.num_vertices + m.num_faces
            and me.euler == m.euler
            and medial_flag(g).n == 2 * g.n
        )
        if not ok:
            wrong.append(name)
    return not wrong, f"실패 {wrong}" if wrong else "|V|, |E|, |F|, χ, 플래그 수 일치"


def check_brute_force() -> Check:
    start_time = time.time()
    wrong = [k for k in range(1, 5) if enumerate_types_naive(k) != enumerate_types(k)]
    elapsed = time.time() - start_time
    return not wrong, f"불일치 k={wrong}" if wrong else f"k<=4 코드 일치 ({elapsed:.1f}초)"


def check_double_medial() -> Check:
    torus = torus44(3, 0, 0, 3)
    torus_counts = [flag_orbits(x).count for x in (torus, medial_flag(medial_flag(torus)))]
    cube_counts = [flag_orbits(x).count for x in (cube(), medial_flag(medial_flag(cube())))]
    ok = torus_counts[0] == torus_counts[1] and cube_counts == [1, 4]
    return ok, f"torus {torus_counts}, cube {cube_counts}"


def run_selftest(max_k: int = 10, jobs: int = 1) -> bool:
    """
    수용 기준을 모두 점검합니다.

    Args:
        max_k: 집계를 확인할 최대 꼭짓점 수 (1..10)
        jobs: 전수 생성 프로세스 수

    Returns:
        모든 기준을 통과하면 True
    """
    max_k = min(max_k, max(REFERENCE_CENSUS))
    criteria: List[Tuple[str, Callable[[], Check]]] = [
        ("집계표 a..g 행", lambda: check_census_rows(max_k, jobs)),
        ("k=8 polarity 없는 자기쌍대 타입", lambda: check_polarity_gap(max_k)),
        ("쌍대 집계 방식 보정", check_calibration),
        ("medial g 공식", lambda: check_medial_formula(max_k)),
        ("proper polarity 개수", lambda: check_proper_corollary(max_k)),
        ("변 추이적 타입의 medial 출처", check_edge_transitive),
        ("medial 표 고정 행", check_table_rows),
        ("플래그/타입 교환 관계", check_commutation),
        ("de-medialization 왕복", check_demedialize),
        ("medial 수치", check_medial_numerology),
        ("전수 생성 교차 검증", check_brute_force),
        ("이중 medial 궤도 수", check_double_medial),
    ]

    print("=" * 60)
    print("대칭 타입 그래프 수용 기준 점검")
    print("=" * 60)
    failed = []
    skipped = []
    for i, (title, check) in enumerate(criteria, 1):
        try:
            ok, detail = check()
        except Exception as e:
            ok, detail = False, f"{type(e).__name__}: {e}"
        if ok is None:
            print(f"⏭️ {i:2d}. {title}: {detail}")
            skipped.append(title)
            continue
        print(f"{'✅' if ok else '❌'} {i:2d}. {title}: {detail}")
        if not ok:
            failed.append(title)

    print("=" * 60)
    checked = len(criteria) - len(skipped)
    print(f"통과 {checked - len(failed)}/{checked} (건너뜀 {len(skipped)})")
    if failed:
        print("💡 실패한 기준: " + ", ".join(failed))
    print("=" * 60)
    return not failed


if __name__ == "__main__":
    run_selftest(max_k=10)
