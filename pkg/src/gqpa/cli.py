"""Command-line interface.

Exit codes: 0 success, 1 well-formed negative verdict, 2 input error,
3 budget exceeded or unsupported parameters.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .classify import check_condition_two, classify
from .qtilde import BudgetExceeded, brute_force_indec, build_qtilde, count_level, roots_within_caps
from .quiver import QuiverError, normalize, parse_quiver
from .reduce import ReductionError, match_core_shape, reduce_to_core
from .repcat.families import UnsupportedParameters, family
from .repcat.field import ExactField
from .repcat.homological import check_pre_smc, hom_ext_dims, hom_graded
from .repcat.rep import RepError, load_rep

OK, NEGATIVE, INPUT_ERROR, UNSUPPORTED = 0, 1, 2, 3


class CommandError(Exception):
    def __init__(self, message: str, code: int = INPUT_ERROR):
        super().__init__(message)
        self.code = code


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _read_quiver(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CommandError(f"cannot read {path}: {e.strerror or e}") from None
    return parse_quiver(text)


def _int_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise CommandError(f"expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> tuple[int, str]:
    q = _read_quiver(args.file)
    if args.check_depth is not None:
        report = check_condition_two(q, args.check_depth)
        verdict = report.verdict
    else:
        report, verdict = None, classify(q)
    code = OK if verdict.discrete else NEGATIVE
    if args.json:
        payload = verdict.to_json()
        if report is not None:
            payload["levels"] = [lv.to_json() for lv in report.levels]
            payload["consistent"] = report.consistent
        return code, _dump(payload)
    lines = [
        f"verdict: {'discrete' if verdict.discrete else 'non-discrete'}",
        f"reason: {verdict.reason}",
        f"graph type: {verdict.graph_type.label}",
    ]
    if verdict.totals is not None:
        lines.append(f"cycle totals: ({verdict.totals[0]}, {verdict.totals[1]})")
    lines.append("normalized quiver:")
    lines.extend("  " + ln for ln in str(verdict.normalized_quiver).splitlines())
    if report is not None:
        for lv in report.levels:
            state = f"Dynkin union, {lv.total} indecomposables" if lv.dynkin_union else "not Dynkin"
            lines.append(f"level n={lv.n}: {state}")
        if report.consistent is False:
            lines.append("warning: level check contradicts the verdict")
    return code, "\n".join(lines)


def cmd_reduce(args) -> tuple[int, str]:
    q = _read_quiver(args.file)
    try:
        trace = reduce_to_core(q, search_depth=args.search_depth)
    except ReductionError as e:
        if "silting-discrete" in str(e):
            raise CommandError(str(e), NEGATIVE) from None
        raise
    code = OK if trace.terminal.tag is not None else UNSUPPORTED
    if args.json:
        return code, _dump(trace.to_json())
    lines = []
    for k, step in enumerate(trace.steps, 1):
        lines.append(f"{k}. {step.describe()}")
        if args.trace:
            lines.extend("     " + ln for ln in str(step.after).splitlines())
    if not trace.steps:
        lines.append("(no operations needed)")
    t = trace.terminal
    if t.tag is None:
        lines.append("search exhausted: no core shape reached")
    else:
        params = ",".join(str(p) for p in t.params)
        lines.append(f"terminal: {t.tag}({params}), the resulting quiver is {t.label}")
        if not t.witness_available:
            lines.append("note: witness construction unavailable at these parameters")
    if args.trace:
        lines.extend(f"note: {n}" for n in trace.notes)
    return code, "\n".join(lines)


def _parse_caps(text: str | None, vertices: Sequence[str]) -> dict[str, int]:
    if not text:
        return {v: 1 for v in vertices}
    caps: dict[str, int] = {}
    default = 0
    for item in text.replace(" ", "").split(","):
        if not item:
            continue
        try:
            if "=" in item:
                v, k = item.split("=", 1)
                if v not in vertices:
                    raise CommandError(f"unknown level vertex {v!r} in --caps")
                caps[v] = int(k)
            else:
                default = int(item)
        except ValueError:
            raise CommandError(f"malformed --caps entry {item!r}") from None
    return {v: caps.get(v, default) for v in vertices}


def cmd_qtilde(args) -> tuple[int, str]:
    q = _read_quiver(args.file)
    if args.n < 0:
        raise CommandError("-n must be non-negative")
    nq, _, _ = normalize(q)
    L = build_qtilde(nq, args.n)
    count = count_level(L)
    code = OK
    oracle = None
    if args.oracle:
        F = ExactField.parse(args.oracle)
        if F.p is None:
            raise CommandError("the oracle needs a prime field, e.g. fp:2")
        if not count.finite:
            raise CommandError("the oracle only runs on Dynkin level quivers", UNSUPPORTED)
        caps = _parse_caps(args.caps, L.quiver.vertices)
        try:
            brute = brute_force_indec(L, F, caps)
        except BudgetExceeded as e:
            raise CommandError(str(e), UNSUPPORTED) from None
        predicted = roots_within_caps(L, caps)
        oracle = {"field": str(F), "caps": caps, "brute_force": brute, "root_prediction": predicted,
                  "agree": brute == predicted}
        if brute != predicted:
            code = NEGATIVE
    comps = [(c.vertices, c.type.label) for c in count.components]
    if args.json:
        from .qtilde import positive_root_count

        payload = {
            "n": args.n,
            "vertices": list(L.quiver.vertices),
            "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in L.quiver.arrows],
            "components": [
                {"vertices": list(c.vertices), "type": c.type.label,
                 "roots": positive_root_count(c.type) if c.is_dynkin else None}
                for c in count.components
            ],
            "total": count.count,
        }
        if oracle is not None:
            payload["oracle"] = oracle
        return code, _dump(payload)
    lines = [f"level quiver n={args.n}: {len(L.quiver.vertices)} vertices, {len(L.quiver.arrows)} arrows"]
    lines.append("vertices: " + " ".join(L.quiver.vertices))
    lines.extend(f"arrow {a.name}: {a.source} -> {a.target}" for a in L.quiver.arrows)
    lines.append("components:")
    lines.extend(f"  {t}: {' '.join(vs)}" for vs, t in comps)
    lines.append(f"Dynkin union: {'yes' if count.finite else 'no'}")
    if args.count:
        if count.finite:
            lines.append(f"indecomposables: {count.count}")
        else:
            lines.append(f"indecomposables: infinite (non-Dynkin component {' '.join(count.witness_component)})")
    if oracle is not None:
        lines.append(f"oracle over {oracle['field']}: brute force {oracle['brute_force']}, "
                     f"root prediction {oracle['root_prediction']}, "
                     f"{'match' if oracle['agree'] else 'MISMATCH'}")
    return code, "\n".join(lines)


_CASE_TAGS = {"a": "CaseA", "b": "CaseB", "c": "CaseC", "special": "CaseC", "deg0": "KroneckerDegZero"}


def _parse_lambdas(text: str, F: ExactField) -> list:
    raw = [x for x in text.replace(" ", "").split(",") if x]
    if not raw:
        raise CommandError("empty parameter sample")
    try:
        values = [F(Fraction(x)) for x in raw]
    except (ValueError, ZeroDivisionError):
        raise CommandError(f"malformed parameter sample {text!r}") from None
    if any(not v for v in values):
        raise CommandError("parameters must be nonzero in the chosen field")
    return values


def cmd_verify_psmc(args) -> tuple[int, str]:
    try:
        F = ExactField.parse(args.field)
    except ValueError as e:
        raise CommandError(str(e)) from None
    lambdas = _parse_lambdas(args.lambdas, F)
    params = _int_list(args.params)
    case = args.case
    unsupported = "no construction is available at these parameters"
    if args.file:
        q = _read_quiver(args.file)
        shape = match_core_shape(q)
        if shape.tag is None:
            raise CommandError("quiver does not match a core shape; run `reduce` first")
        if case == "auto":
            case = {"CaseA": "a", "CaseB": "b", "KroneckerDegZero": "deg0"}.get(shape.tag)
            if case is None:
                case = "c" if shape.params[0] == 3 else "special"
        elif _CASE_TAGS[case] != shape.tag or (case == "c" and shape.params[0] != 3):
            raise CommandError(f"quiver matches {shape.label}, not case {case}")
        shape_params = list(shape.params[1:] if shape.tag == "CaseC" else shape.params)
        if params and params != shape_params:
            raise CommandError(f"quiver has parameters {shape_params}, not {params}")
        params = shape_params
        if not shape.witness_available:
            raise CommandError(f"{unsupported} ({shape.tag} {params})", UNSUPPORTED)
        reps = shape.witness_family(lambdas, F)
    else:
        if case == "auto":
            raise CommandError("--case auto needs a quiver file")
        try:
            reps = family(case, params, lambdas, F)
        except UnsupportedParameters as e:
            raise CommandError(f"{unsupported}: {e}", UNSUPPORTED) from None
        except (ValueError, TypeError) as e:
            raise CommandError(f"bad parameters for case {case}: {e}") from None
    report = check_pre_smc(reps)
    code = OK if report.passed else NEGATIVE
    v = report.violation
    if args.json:
        return code, _dump({
            "case": case,
            "params": params,
            "field": str(F),
            "lambdas": [F.encode(x) if F.p is None else str(x) for x in lambdas],
            "passed": report.passed,
            "table": report.rows(),
            "violation": None if v is None else {
                "i": v.i, "j": v.j, "condition": v.condition, "degree": v.degree, "dim": v.dim},
        })
    lines = [f"case {case} params {params or 'default'} over {F}, {len(reps)} members"]
    lines.append("   i   j  hom0  hom<0            ext1<0")
    for row in report.rows():
        hn = ",".join(f"{h}:{n}" for h, n in row["hom_neg"].items()) or "0"
        en = ",".join(f"{h}:{n}" for h, n in row["ext1_neg"].items()) or "0"
        lines.append(f"{row['i']:>4}{row['j']:>4}{row['hom0']:>6}  {hn:<16} {en}")
    lines.append("verdict: pass" if report.passed else f"verdict: FAIL, {v}")
    return code, "\n".join(lines)


def cmd_hom(args) -> tuple[int, str]:
    q = _read_quiver(args.quiver)
    try:
        M = load_rep(args.rep_m, q)
        N = load_rep(args.rep_n, q)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        raise CommandError(f"cannot load representation: {e}") from None
    if M.field != N.field:
        raise CommandError(f"representations live over different fields ({M.field} vs {N.field})")
    if args.ext:
        hom, ext = hom_ext_dims(M, N)
    else:
        hom, ext = hom_graded(M, N, basis=False).dims, None
    basis = hom_graded(M, N).bases if args.basis else None
    if args.json:
        payload = {"hom": {str(h): n for h, n in sorted(hom.items())}}
        if ext is not None:
            payload["ext1"] = {str(h): n for h, n in sorted(ext.items())}
        if basis is not None:
            F = M.field
            payload["basis"] = {
                str(h): [{f"{v}@{d}": [[F.encode(x) for x in row] for row in blk]
                          for (v, d), blk in sorted(f.items())} for f in fs]
                for h, fs in sorted(basis.items())
            }
        return OK, _dump(payload)
    degrees = sorted(set(hom) | set(ext or {}))
    lines = ["degree  hom" + ("  ext1" if ext is not None else "")]
    for h in degrees:
        row = f"{h:>6}  {hom.get(h, 0):>3}"
        if ext is not None:
            row += f"  {ext.get(h, 0):>4}"
        lines.append(row)
    if not degrees:
        lines.append("(all zero)")
    if basis is not None:
        for h, fs in sorted(basis.items()):
            for k, f in enumerate(fs):
                parts = "; ".join(f"{v}@{d}={blk}" for (v, d), blk in sorted(f.items()))
                lines.append(f"basis h={h} #{k}: {parts}")
    return OK, "\n".join(lines)


def cmd_normalize(args) -> tuple[int, str]:
    q = _read_quiver(args.file)
    nq, g, ok = normalize(q)
    if args.json:
        return OK, _dump({"quiver": str(nq), "potential": dict(sorted(g.items())), "zero_part_connected": ok})
    lines = [str(nq).rstrip("\n"), "potential: " + " ".join(f"{v}:{x}" for v, x in sorted(g.items())),
             f"degree-0 part connected: {'yes' if ok else 'no'}"]
    return OK, "\n".join(lines)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="accepted for reproducible scripted runs; no command is random")

    p = argparse.ArgumentParser(prog="gqpa", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="decide silting-discreteness")
    c.add_argument("file")
    c.add_argument("--check-depth", type=int, default=None, metavar="N",
                   help="also check truncation levels 0..N")
    c.set_defaults(func=cmd_classify)

    r = sub.add_parser("reduce", parents=[common], help="reduce a non-discrete quiver to a core shape")
    r.add_argument("file")
    r.add_argument("--trace", action="store_true", help="print every intermediate quiver")
    r.add_argument("--search-depth", type=int, default=32)
    r.set_defaults(func=cmd_reduce)

    t = sub.add_parser("qtilde", parents=[common], help="build and analyse a truncation level quiver")
    t.add_argument("file")
    t.add_argument("-n", type=int, required=True)
    t.add_argument("--count", action="store_true")
    t.add_argument("--oracle", metavar="fp:P", help="cross-check with brute-force enumeration")
    t.add_argument("--caps", help="dimension caps: an integer, and/or vertex=cap pairs")
    t.set_defaults(func=cmd_qtilde)

    v = sub.add_parser("verify-psmc", parents=[common], help="verify a brick family on a core shape")
    v.add_argument("file", nargs="?")
    v.add_argument("--case", choices=["auto", "a", "b", "c", "special", "deg0"], default="auto")
    v.add_argument("--params", help="comma-separated integers, e.g. 2,3")
    v.add_argument("--lambdas", default="1,2,3,4,5")
    v.add_argument("--field", default="Q", help="Q or fp:<prime>")
    v.set_defaults(func=cmd_verify_psmc)

    h = sub.add_parser("hom", parents=[common], help="graded Hom (and Ext^1) dimensions")
    h.add_argument("quiver")
    h.add_argument("rep_m")
    h.add_argument("rep_n")
    h.add_argument("--ext", action="store_true")
    h.add_argument("--basis", action="store_true")
    h.set_defaults(func=cmd_hom)

    n = sub.add_parser("normalize", parents=[common], help="shift to non-positive degrees")
    n.add_argument("file")
    n.set_defaults(func=cmd_normalize)
    return p


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (INPUT_ERROR if e.code else OK), ""
    args.json = getattr(args, "json", False)
    try:
        return args.func(args)
    except CommandError as e:
        code, msg = e.code, str(e)
    except (QuiverError, RepError, ReductionError, ValueError) as e:
        code, msg = INPUT_ERROR, str(e)
    except BudgetExceeded as e:
        code, msg = UNSUPPORTED, str(e)
    if args.json:
        return code, _dump({"error": msg, "exit_code": code})
    return code, f"error: {msg}"


def main(argv: Sequence[str] | None = None) -> int:
    code, out = run(argv)
    if out:
        stream = sys.stdout if code in (OK, NEGATIVE) or out.startswith("{") else sys.stderr
        print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
