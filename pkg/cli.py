"""
지도/대칭 타입 그래프 명령줄 도구

사용 예:
    python cli.py analyze data/cube.flg
    python cli.py transform --op medial data/cube.flg -o data/cuboctahedron.flg
    python cli.py enumerate --k 5 --census --medial
    python cli.py selftest

표준출력은 데이터, 표준에러는 진행 상황과 진단 메시지입니다.
종료 코드: 0 성공, 1 검증 실패, 2 사용법 오류
"""

import argparse
import re
import sys
from pathlib import Path
from typing import List, Optional

from aliases import AliasRegistry, systematic_name
from enumeration import (
    DEFAULT_DUALITY_MODE,
    DUALITY_MODES,
    calibrate_duality_mode,
    census,
    enumerate_types,
    medial_census,
    type_records,
)
from flagmap import (
    StructureError,
    color_automorphisms,
    elements,
    flag_orbits,
    is_chiral,
    isomorphic,
    map_dualities,
    map_symbol,
)
from formats import (
    BUILTIN_NAMES,
    FormatError,
    face_walks,
    get_builtin_map,
    load_map,
    read_document,
    serialize_flg,
    serialize_map,
    from_face_walks,
    serialize_stg,
    serialize_xstg,
    to_dot,
    write_text,
)
from transforms import demedialize, dual_flag, is_medial, medial_flag, opposite, petrie_flag
from typegraph import canonical_code, quotient

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2

TRANSFORM_OPS = {
    "dual": dual_flag,
    "petrie": petrie_flag,
    "opposite": opposite,
    "medial": medial_flag,
}

RECORD_HELP = """\
records 형식 (한 줄에 타입 하나):
  code=<hex> k=<k> self_dual=0|1 self_petrie=0|1 edge_transitive=0|1 medial=0|1 polar=0|1 polarities=<n> name=<alias>
--census 와 함께 쓰면 마지막 줄에 집계 레코드가 붙습니다:
  census k=<k> a=.. b=.. c=.. d=.. e=.. [f=.. g=..] proper=.. self_petrie=.. duality_mode=<mode>
name 은 등록된 별칭(STG_ALIAS_FILE, 기본 data/aliases.txt) 또는 "k:index" 입니다.
"""


def _status(message: str) -> None:
    print(message, file=sys.stderr)


def _yes(value: bool) -> str:
    return "yes" if value else "no"


def _write_or_print(text: str, out: Optional[str]) -> None:
    if out:
        write_text(out, text)
        _status(f"✅ {out} 저장 완료")
    else:
        sys.stdout.write(text)


# ============================================================
# Subcommands
# ============================================================

def cmd_validate(args) -> int:
    document = read_document(args.file)
    if document.kind == "map":
        g = from_face_walks(document.payload)
        print(f"ok: map n={g.n}")
    else:
        size = document.payload.n if document.kind == "flg" else document.payload.k
        print(f"ok: {document.kind} n={size}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = load_map(args.file)
    skeleton = elements(g)
    automorphisms = color_automorphisms(g)
    orbits = flag_orbits(g, automorphisms)
    t = quotient(g)
    code = canonical_code(t)
    registry = AliasRegistry()
    dualities = map_dualities(g, orbits)
    if not dualities:
        self_dual = "no"
    else:
        self_dual = "proper" if any(d.proper for d in dualities) else "improper"
    schlafli = "{%d,%d}" % skeleton.schlafli if skeleton.schlafli else "none"

    report = [
        ("flags", g.n),
        ("vertices", skeleton.num_vertices),
        ("edges", skeleton.num_edges),
        ("faces", skeleton.num_faces),
        ("petrie_polygons", skeleton.num_petrie_polygons),
        ("euler", skeleton.euler),
        ("orientable", _yes(skeleton.orientable)),
        ("genus", skeleton.signed_genus),
        ("schlafli", schlafli),
        ("symbol", map_symbol(g)),
        ("automorphisms", len(automorphisms)),
        ("orbits", orbits.count),
        ("type_code", code.hex()),
        ("type_name", registry.name_of(code) or "-"),
        ("chiral", _yes(is_chiral(g, orbits))),
        ("self_dual", self_dual),
        ("self_petrie", _yes(isomorphic(g, petrie_flag(g)) is not None)),
        ("medial", _yes(is_medial(g))),
    ]
    for key, value in report:
        print(f"{key}: {value}")
    return EXIT_OK


def cmd_transform(args) -> int:
    g = load_map(args.file)
    if args.op == "demedialize":
        first, second = demedialize(g)
        base = args.out or args.file
        for suffix, result in (("a", first), ("b", second)):
            write_text(f"{base}.{suffix}", serialize_flg(result))
            _status(f"✅ {base}.{suffix} 저장 완료 (flags={result.n})")
        return EXIT_OK
    _write_or_print(serialize_flg(TRANSFORM_OPS[args.op](g)), args.out)
    return EXIT_OK


def cmd_typegraph(args) -> int:
    document = read_document(args.file)
    if document.kind in ("stg", "xstg"):
        graph = document.payload
    else:
        graph = quotient(load_map(args.file))
    if args.out and args.out.endswith(".dot"):
        text = to_dot(graph)
    elif document.kind == "xstg":
        text = serialize_xstg(graph)
    else:
        text = serialize_stg(graph)
    _write_or_print(text, args.out)
    return EXIT_OK


def _census_line(row) -> str:
    fields = [("k", row.k)] + [(c, v) for c, v in zip("abcdefg", row.values()) if v is not None]
    fields += [("proper", row.proper), ("self_petrie", row.self_petrie), ("duality_mode", row.duality_mode)]
    return "census " + " ".join(f"{key}={value}" for key, value in fields)


def _print_census_table(row, medial) -> None:
    columns = ["k", "a", "b", "c", "d", "e"] + (["f", "g"] if medial else [])
    values = [row.k, row.a, row.b, row.c, row.d, row.e] + ([row.f, row.g] if medial else [])
    print(" ".join(f"{c:>6}" for c in columns))
    print(" ".join(f"{v:>6}" for v in values))


def cmd_enumerate(args) -> int:
    k = args.k
    codes = enumerate_types(k, jobs=args.jobs, show_progress=args.progress)
    _status(f"✅ k={k}: 타입 {len(codes)}개")

    row = None
    if args.census or args.medial:
        row = census(k, duality_mode=args.duality_mode, with_medial=args.medial)

    if args.format == "dot-dir":
        out_dir = Path(args.out_dir or f"data/dot/k{k}")
        registry = AliasRegistry()
        for index, code in enumerate(codes):
            name = registry.name_of(code) or systematic_name(k, index)
            safe = re.sub(r"[^0-9A-Za-z_]+", "_", name)
            write_text(out_dir / f"{index:04d}_{safe}.dot", to_dot(code.to_type_graph(), name=f"T{index}"))
        _status(f"✅ {out_dir} 에 DOT 파일 {len(codes)}개 저장")
    elif args.format == "records":
        for record in type_records(k):
            print(record.to_line())
        if row is not None:
            print(_census_line(row))
    elif row is None:
        print(f"{'index':>5} {'name':>8} {'sd':>2} {'sp':>2} {'et':>2} {'md':>2} {'pl':>2} {'pol':>3}  code")
        for r in type_records(k):
            marks = " ".join(f"{int(v):>2}" for v in (r.self_dual, r.self_petrie, r.edge_transitive, r.medial, r.polar))
            print(f"{r.index:>5} {r.name:>8} {marks} {r.polarity_count:>3}  {r.code.hex()}")
    else:
        _print_census_table(row, args.medial)

    if row is not None and args.format != "dot-dir":
        calibration = calibrate_duality_mode()
        outcome = " ".join(f"{mode}={'match' if ok else 'mismatch'}" for mode, ok in calibration.matches.items())
        print(f"# duality_mode={row.duality_mode} calibrated={calibration.mode} ({outcome})")
        print(f"# proper_polarity_types={row.proper} self_petrie={row.self_petrie} (experimental)")
        reference = row.matches_reference()
        if reference is not None:
            print(f"# reference_match={_yes(reference)}")
        if args.medial:
            medial = medial_census(k)
            print(f"# medial_formula={'holds' if medial.formula_holds else 'fails'} overlaps={len(medial.overlaps)}")
            print("# medial types are defined by code membership; no realizability claim")
    return EXIT_OK


def cmd_builtin(args) -> int:
    g = get_builtin_map(args.name, lattice=args.lattice)
    text = serialize_map(face_walks(g)) if args.format == "map" else serialize_flg(g)
    _write_or_print(text, args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from selftest import run_selftest

    return EXIT_OK if run_selftest(max_k=args.max_k, jobs=args.jobs) else EXIT_INVALID


# ============================================================
# Parser
# ============================================================

def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cli.py", description="지도와 대칭 타입 그래프 분석 도구")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="FLG/STG/XSTG/MAP 파일 검증")
    p.add_argument("file")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("analyze", help="지도 분석 보고서")
    p.add_argument("file")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("transform", help="지도 연산 (결과는 FLG)")
    p.add_argument("--op", required=True, choices=sorted(TRANSFORM_OPS) + ["demedialize"])
    p.add_argument("file")
    p.add_argument("-o", "--out")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("typegraph", help="대칭 타입 그래프 출력 (.stg 또는 .dot)")
    p.add_argument("file")
    p.add_argument("-o", "--out")
    p.set_defaults(handler=cmd_typegraph)

    p = sub.add_parser("enumerate", help="k-꼭짓점 타입 전수 생성과 집계",
                       epilog=RECORD_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--census", action="store_true")
    p.add_argument("--medial", action="store_true", help="medial 열 f, g 추가 (--census 포함)")
    p.add_argument("--duality-mode", choices=DUALITY_MODES, default=DEFAULT_DUALITY_MODE)
    p.add_argument("--format", choices=("table", "records", "dot-dir"), default="table")
    p.add_argument("--out-dir")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--progress", action="store_true", help="tqdm 진행 막대 표시")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("builtin", help="내장 지도를 FLG/MAP 로 내보내기")
    p.add_argument("name", choices=BUILTIN_NAMES)
    p.add_argument("--lattice", type=int, nargs=4, default=(3, 0, 0, 3), metavar=("A", "B", "C", "D"))
    p.add_argument("--format", choices=("flg", "map"), default="flg")
    p.add_argument("-o", "--out")
    p.set_defaults(handler=cmd_builtin)

    p = sub.add_parser("selftest", help="수용 기준 점검")
    p.add_argument("--max-k", type=_positive, default=10)
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (StructureError, FormatError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
