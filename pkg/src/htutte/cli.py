"""Command-line frontend: file parsing, dispatch, and canonical rendering.

All file inputs are the JSON schemas owned by the corresponding modules;
all output is either canonical text (sorted term order, stable across
platforms) or JSON with sorted keys, so reruns with the same seed are
byte-identical.  Exit status is 0 only when every exact check passed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import demimatroid as dm_mod
from . import harmonic as harm_mod
from .code import code_from_json, code_to_json, dual as code_dual
from .demimatroid import check_axioms, from_code
from .enumerators import (
    harmonic_coboundary,
    harmonic_tutte,
    verify_all,
    verify_dualities,
    verify_greene,
    verify_macwilliams,
    weight_enum,
    z_coboundary,
    z_poly,
)
from .errors import HtutteError
from .harmonic import harm_basis
from .invariants import build_group, character_diagnosis, molien_series
from .poly import format_rational
from .subsets import elements_of
from .suite import SuiteConfig, run_suite


def _emit(payload, as_json: bool, text: str | None = None) -> None:
    if as_json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text if text is not None else json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_code(path: str):
    return code_from_json(_load_json(path))


def _load_harmonic(path: str, allow_nonharmonic: bool = False):
    return harm_mod.from_json(_load_json(path), allow_nonharmonic=allow_nonharmonic)


def _checks_text(checks) -> str:
    lines = []
    for c in checks:
        status = "ok" if c.ok else f"FAIL ({c.witness or 'mismatch'})"
        suffix = f"  [{c.detail}]" if c.detail else ""
        lines.append(f"{c.name}: {status}{suffix}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def cmd_harm_basis(args) -> int:
    basis = harm_basis(args.n, args.d)
    payload = [harm_mod.to_json(f) for f in basis]
    if args.json:
        _emit(payload, True)
    else:
        lines = [f"dim Harm_{args.d}({args.n}) = {len(basis)}"]
        for i, f in enumerate(basis, 1):
            body = " + ".join(
                f"({format_rational(v)})*{{{','.join(map(str, elements_of(mask)))}}}"
                for mask, v in sorted(f.values.items(), key=lambda kv: elements_of(kv[0]))
            )
            lines.append(f"b{i} = {body or '0'}")
        _emit(payload, False, "\n".join(lines) + "\n")
    return 0


def cmd_code_enumerate(args) -> int:
    code = _load_code(args.file)
    payload = {
        "ring": code.ring.name,
        "n": code.n,
        "size": code.size,
        "codewords": code.words_as_tuples(),
    }
    if args.json:
        _emit(payload, True)
    else:
        lines = [f"{code.ring.name} code of length {code.n}, {code.size} codewords"]
        lines += [" ".join(map(str, w)) for w in code.words_as_tuples()]
        _emit(payload, False, "\n".join(lines) + "\n")
    return 0


def cmd_code_dual(args) -> int:
    code = _load_code(args.file)
    dual_code = code_dual(code, conjugate=args.conjugate)
    payload = code_to_json(dual_code)
    payload["size"] = dual_code.size
    if args.json:
        _emit(payload, True)
    else:
        lines = [
            f"dual has {dual_code.size} codewords "
            f"(|C| * |C^perp| = {code.size * dual_code.size} = |R|^n = {code.ring.order ** code.n})"
        ]
        lines += [" ".join(map(str, w)) for w in dual_code.words_as_tuples()]
        _emit(payload, False, "\n".join(lines) + "\n")
    return 0


def cmd_dm_check(args) -> int:
    dm = dm_mod.from_json(_load_json(args.file))
    report = check_axioms(dm)
    _emit(report.to_json(), args.json, ("PASS\n" if report.ok else f"FAIL {report.to_json()}\n"))
    return 0 if report.ok else 1


def cmd_dm_from_code(args) -> int:
    code = _load_code(args.codefile)
    dm = from_code(code, args.flavor)
    _emit(dm_mod.to_json(dm), True)
    return 0


def cmd_wenum(args) -> int:
    code = _load_code(args.code)
    results = []
    if args.basis_d is not None:
        basis = harm_basis(code.n, args.basis_d)
        results = [(f"b{i + 1}", f) for i, f in enumerate(basis)]
    else:
        results = [("f", _load_harmonic(args.f, args.allow_nonharmonic))]
    payload = {}
    lines = []
    for label, f in results:
        w = weight_enum(code, f, args.m)
        z = w.divide_by_monomial(f.d, f.d)
        payload[label] = {"w": w.to_json(), "z": z.to_json()}
        lines.append(f"{label}: W = {w.text()}")
        lines.append(f"{label}: Z = {z.text()}")
    if args.basis_d is not None and len(results) > 1:
        lines.append(
            "general solution: W = sum of c_i * (W of b_i) over rational c_i (linearity in f)"
        )
    _emit(payload, args.json, "\n".join(lines) + "\n")
    return 0


def cmd_tutte(args) -> int:
    dm = dm_mod.from_json(_load_json(args.dm))
    f = _load_harmonic(args.f, args.allow_nonharmonic)
    form = harmonic_tutte(dm, f)
    _emit({"tutte": form.to_json()}, args.json, f"T = {form.text()}\n")
    return 0


def cmd_coboundary(args) -> int:
    dm = dm_mod.from_json(_load_json(args.dm))
    f = _load_harmonic(args.f, args.allow_nonharmonic)
    w = harmonic_coboundary(dm, f)
    z = z_coboundary(dm, f)
    payload = {"w": w.to_json(), "z": z.to_json()}
    _emit(payload, args.json, f"W = {w.text()}\nZ = {z.text()}\n")
    return 0


def cmd_verify(args) -> int:
    if args.what == "suite":
        cfg = SuiteConfig(
            max_n=args.max_n,
            max_d=args.max_d,
            max_m=args.max_m,
            cases=args.cases,
            seed=args.seed,
        )
        report = run_suite(cfg)
        _emit(report.to_json(), args.json, report.to_text())
        return 0 if report.ok else 1
    code = _load_code(args.code)
    f = _load_harmonic(args.f, args.allow_nonharmonic)
    if args.what == "greene":
        report = verify_greene(code, f, args.m, seed=args.seed)
    elif args.what == "macwilliams":
        report = verify_macwilliams(code, f, args.m)
    elif args.what == "dualities":
        report = verify_dualities(from_code(code), f, seed=args.seed)
    else:
        report = verify_all(code, f, args.m, seed=args.seed)
    _emit(report.to_json(), args.json, _checks_text(report.checks))
    return 0 if report.ok else 1


def cmd_molien(args) -> int:
    group = build_group(args.type, args.m)
    result = molien_series(group, args.d, args.K)
    if args.plot:
        _plot_molien(result, args.plot)
    if args.json:
        _emit(result.to_json(), True)
    else:
        lines = [
            f"type {result.type_label}, m={result.m}, d={result.d}, group order {result.group_order}",
            "degree coefficients 0..%d: %s" % (result.truncation, " ".join(map(str, result.coeffs))),
        ]
        if result.closed_form is not None:
            verdict = "matches" if result.matches_closed_form else "DIFFERS FROM"
            role = "gate" if result.closed_form_is_gate else "informational"
            lines.append(f"{verdict} closed form {result.closed_form} ({role})")
        if args.plot:
            lines.append(f"figure written to {args.plot}")
        _emit(result.to_json(), False, "\n".join(lines) + "\n")
    if result.closed_form_is_gate and result.matches_closed_form is False:
        return 1
    return 0


def _plot_molien(result, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 3.2))
    ax.bar(range(len(result.coeffs)), result.coeffs, color="#335588")
    ax.set_xlabel("degree")
    ax.set_ylabel("dimension")
    ax.set_title(
        f"relative invariants, type {result.type_label}, m={result.m}, d={result.d}"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def cmd_invariance(args) -> int:
    code = _load_code(args.code)
    f = _load_harmonic(args.f, args.allow_nonharmonic)
    z = z_poly(code, f, args.m)
    degree = code.n - 2 * f.d
    report = character_diagnosis(z, args.type, args.m, f.d, degree=degree)
    report["z"] = z.to_json()
    if args.json:
        _emit(report, True)
    else:
        lines = [f"Z = {z.text()}", f"type {args.type}, m={args.m}, d={f.d}, degree {degree}"]
        for name, entry in report["generators"].items():
            lines.append(f"generator {name}:")
            for key, value in sorted(entry.items()):
                lines.append(f"  {key}: {value}")
        _emit(report, False, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="htutte",
        description=(
            "Exact harmonic weight enumerators of codes over finite rings, "
            "demi-matroid Tutte/coboundary polynomials, identity verification, "
            "and Molien series of the self-dual invariant spaces."
        ),
    )
    parser.add_argument("--version", action="version", version=f"htutte {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("harm", help="harmonic function utilities")
    harm_sub = p.add_subparsers(dest="harm_command", required=True)
    pb = harm_sub.add_parser("basis", help="canonical basis of Harm_d(n)")
    pb.add_argument("n", type=int)
    pb.add_argument("d", type=int)
    pb.add_argument("--json", action="store_true")
    pb.set_defaults(func=cmd_harm_basis)

    p = sub.add_parser("code", help="linear code utilities")
    code_sub = p.add_subparsers(dest="code_command", required=True)
    pe = code_sub.add_parser("enumerate", help="list all codewords")
    pe.add_argument("file")
    pe.add_argument("--json", action="store_true")
    pe.set_defaults(func=cmd_code_enumerate)
    pd = code_sub.add_parser("dual", help="brute-force dual code")
    pd.add_argument("file")
    pd.add_argument("--conjugate", action="store_true", help="conjugate inner product")
    pd.add_argument("--json", action="store_true")
    pd.set_defaults(func=cmd_code_dual)

    p = sub.add_parser("dm", help="demi-matroid utilities")
    dm_sub = p.add_subparsers(dest="dm_command", required=True)
    pc = dm_sub.add_parser("check", help="verify the rank axioms")
    pc.add_argument("file")
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=cmd_dm_check)
    pf = dm_sub.add_parser("from-code", help="rank tables of a code")
    pf.add_argument("codefile")
    pf.add_argument("--flavor", choices=["alpha-beta", "gamma-delta"], default="alpha-beta")
    pf.set_defaults(func=cmd_dm_from_code)

    p = sub.add_parser("wenum", help="harmonic m-tuple weight enumerator")
    p.add_argument("code")
    p.add_argument("f", nargs="?", help="harmonic function JSON file")
    p.add_argument("-m", type=int, default=1)
    p.add_argument("--basis-d", type=int, default=None, help="use every basis direction of this degree")
    p.add_argument("--allow-nonharmonic", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_wenum)

    p = sub.add_parser("tutte", help="harmonic Tutte form of a demi-matroid")
    p.add_argument("dm")
    p.add_argument("f")
    p.add_argument("--allow-nonharmonic", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tutte)

    p = sub.add_parser("coboundary", help="harmonic coboundary polynomial")
    p.add_argument("dm")
    p.add_argument("f")
    p.add_argument("--allow-nonharmonic", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_coboundary)

    p = sub.add_parser("verify", help="exact identity verification")
    p.add_argument("what", choices=["greene", "macwilliams", "dualities", "all", "suite"])
    p.add_argument("code", nargs="?")
    p.add_argument("f", nargs="?")
    p.add_argument("-m", type=int, default=1)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--max-d", type=int, default=2)
    p.add_argument("--max-m", type=int, default=2)
    p.add_argument("--allow-nonharmonic", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("molien", help="Molien series of a relative invariant space")
    p.add_argument("--type", choices=["I", "II", "III", "IV"], required=True)
    p.add_argument("-m", type=int, default=1)
    p.add_argument("-d", type=int, default=0)
    p.add_argument("-K", type=int, default=32, help="truncation degree")
    p.add_argument("--plot", metavar="FILE", help="write a coefficient bar chart")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_molien)

    p = sub.add_parser("invariance", help="transformation behavior of a reduced enumerator")
    p.add_argument("code")
    p.add_argument("f")
    p.add_argument("-m", type=int, default=1)
    p.add_argument("--type", choices=["I", "II", "III", "IV"], required=True)
    p.add_argument("--allow-nonharmonic", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_invariance)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "what", None) not in (None, "suite"):
        if args.code is None or args.f is None:
            parser.error("verify needs CODE and F files (except 'verify suite')")
    if getattr(args, "command", None) == "wenum" and args.f is None and args.basis_d is None:
        parser.error("wenum needs a harmonic function file or --basis-d")
    try:
        return args.func(args)
    except HtutteError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
