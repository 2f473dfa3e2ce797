"""
타입 그래프 이름 등록소

이름은 정규 코드(CanonicalCode)에 붙는 별칭일 뿐입니다.
- 고정 이름: 1, 2_I (I 는 semi-edge 색 집합), 2, 3^02, 3^0, 3^2, 이중화 이름 4_*, 6_*
- 그 밖의 타입: 정규 코드 순서의 체계적 이름 "k:index"
- 사람이 편집하는 별칭 파일 (한 줄에 "이름 16진코드")
"""

import os
import sys
from functools import lru_cache
from pathlib import Path
from typing import Dict, Optional

from transforms import dual_type, medial_type_double, medial_type_extended
from typegraph import CanonicalCode, TypeGraph, canonical_code, extend, validate_type

ALIAS_ENV_VAR = "STG_ALIAS_FILE"
DEFAULT_ALIAS_FILE = "data/aliases.txt"

TWO_ORBIT_SEMI_EDGES = ("0", "1", "2", "01", "02", "12")


def two_orbit_type(semi_edges: str) -> TypeGraph:
    """각 꼭짓점의 semi-edge 색이 정확히 semi_edges 인 2-꼭짓점 타입 (빈 문자열 = type 2)"""
    colors = {int(c) for c in semi_edges}
    tables = [(0, 1) if c in colors else (1, 0) for c in range(3)]
    return validate_type(*tables)


def _pinned_types() -> Dict[str, TypeGraph]:
    named = {"1": validate_type((0,), (0,), (0,)), "2": two_orbit_type("")}
    for semi_edges in TWO_ORBIT_SEMI_EDGES:
        named[f"2_{semi_edges}"] = two_orbit_type(semi_edges)

    # 유일한 자기쌍대 3-꼭짓점 타입 (Q2c + Q1)
    named["3^02"] = validate_type((1, 0, 2), (2, 1, 0), (1, 0, 2))
    named["3^0"] = medial_type_extended(extend(named["3^02"], (0, 1, 2)))
    named["3^2"] = dual_type(named["3^0"])

    doubled = {"4_G": "2", "4_H": "2_0", "4_A": "2_01", "4_C": "2_1", "4_F": "2_02", "6_D": "3^0", "6_M": "3^02"}
    for name, source in doubled.items():
        named[name] = medial_type_double(named[source])
    return named


class AliasRegistry:
    """정규 코드 <-> 이름 양방향 조회"""

    def __init__(self, path: Optional[str] = None, load_file: bool = True):
        self._by_name: Dict[str, CanonicalCode] = {}
        self._by_code: Dict[CanonicalCode, str] = {}
        for name, t in _pinned_types().items():
            self.register(name, canonical_code(t))
        if load_file:
            self.load(path or os.getenv(ALIAS_ENV_VAR, DEFAULT_ALIAS_FILE))

    def register(self, name: str, code: CanonicalCode) -> None:
        # 같은 코드에 이름이 여럿이면 먼저 등록된 이름이 대표
        self._by_name[name] = code
        self._by_code.setdefault(code, name)

    def load(self, path: str) -> int:
        """별칭 파일을 읽어 등록하고 등록한 개수를 돌려줍니다 (파일이 없으면 0)"""
        file_path = Path(path)
        if not file_path.exists():
            return 0
        loaded = 0
        with open(file_path, "r", encoding="utf-8") as f:
            for lineno, raw in enumerate(f, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                try:
                    name, code_hex = line.split()
                    self.register(name, CanonicalCode.from_hex(code_hex))
                    loaded += 1
                except ValueError as e:
                    print(f"⚠️ {file_path}:{lineno} 별칭을 건너뜁니다: {e}", file=sys.stderr)
        return loaded

    def name_of(self, code: CanonicalCode) -> Optional[str]:
        return self._by_code.get(code)

    def code_of(self, name: str) -> CanonicalCode:
        return self._by_name[name]

    def type_of(self, name: str) -> TypeGraph:
        return self.code_of(name).to_type_graph()

    def names(self):
        return list(self._by_name)


@lru_cache(maxsize=1)
def pinned_registry() -> AliasRegistry:
    """별칭 파일 없이 고정 이름만 가진 등록소"""
    return AliasRegistry(load_file=False)


def pinned_type(name: str) -> TypeGraph:
    return pinned_registry().type_of(name)


def pinned_code(name: str) -> CanonicalCode:
    return pinned_registry().code_of(name)


def systematic_name(k: int, index: int) -> str:
    return f"{k}:{index}"
