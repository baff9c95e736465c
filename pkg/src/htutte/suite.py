"""Seeded randomized verification suite driving every identity checker.

Cases are random generator matrices over a configurable ring list, with a
random harmonic basis direction and tuple length.  Degenerate inputs (zero
rows, k = 0) are allowed deliberately; the identities hold for all codes
and degenerate ones are where implementations break.  A handful of pinned
regression cases run first, including the Z4 example whose polynomials are
frozen byte-for-byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import demimatroid as dm_mod
from .code import LinearCode, dual as code_dual, shorten, span, subset_counts
from .demimatroid import DemiMatroid, check_axioms, from_code
from .enumerators import (
    EnumeratorReport,
    IdentityCheck,
    verify_dualities,
    verify_greene,
    verify_macwilliams,
    verify_rank_forms,
    weight_enum,
)
from .harmonic import SubsetFn, harm_basis
from .ring import make_ring
from .subsets import popcount

DEFAULT_RINGS = (
    {"kind": "GF", "p": 2, "k": 1},
    {"kind": "GF", "p": 3, "k": 1},
    {"kind": "GF", "p": 2, "k": 2},
    {"kind": "Zm", "m": 4},
    {"kind": "Zm", "m": 8},
    {"kind": "Zm", "m": 9},
)


@dataclass
class SuiteConfig:
    rings: tuple = DEFAULT_RINGS
    max_n: int = 7
    max_d: int = 2
    max_m: int = 2
    cases: int = 200
    seed: int = 42
    include_pinned: bool = True

    def __post_init__(self):
        if not 0 <= self.max_n <= 16:
            raise ValueError("max_n must lie in 0..16")

    def to_json(self) -> dict:
        return {
            "rings": list(self.rings),
            "max_n": self.max_n,
            "max_d": self.max_d,
            "max_m": self.max_m,
            "cases": self.cases,
            "seed": self.seed,
            "include_pinned": self.include_pinned,
        }


# Regression codes with frozen expectations; polynomials are rendered from
# the first harmonic basis direction of the stated degree.
PINNED_CASES = (
    {
        "name": "z4-worked-example",
        "ring": {"kind": "Zm", "m": 4},
        "n": 3,
        "generators": [[1, 1, 0], [0, 0, 3]],
        "d": 1,
        "expected": {
            "w": "-3*x^2*y + 3*x*y^2",
            "z": "-3*x + 3*y",
            "tutte": "(x-1)*(y-1) - 1",
            "z_coboundary": "-x*lambda + x + y*lambda - y",
        },
    },
    {
        "name": "extended-hamming-8-4",
        "ring": {"kind": "GF", "p": 2, "k": 1},
        "n": 8,
        "generators": [
            [1, 0, 0, 0, 0, 1, 1, 1],
            [0, 1, 0, 0, 1, 0, 1, 1],
            [0, 0, 1, 0, 1, 1, 0, 1],
            [0, 0, 0, 1, 1, 1, 1, 0],
        ],
        "d": 1,
        "expected": {"self_dual": True},
    },
    {
        "name": "tetracode-4-2",
        "ring": {"kind": "GF", "p": 3, "k": 1},
        "n": 4,
        "generators": [[1, 0, 1, 1], [0, 1, 1, 2]],
        "d": 1,
        "expected": {"self_dual": True},
    },
    {
        "name": "gf4-hermitian-2-1",
        "ring": {"kind": "GF", "p": 2, "k": 2},
        "n": 2,
        "generators": [[1, 1]],
        "d": 1,
        "expected": {"hermitian_self_dual": True},
    },
    {
        "name": "f2-repetition-2-1",
        "ring": {"kind": "GF", "p": 2, "k": 1},
        "n": 2,
        "generators": [[1, 1]],
        "d": 1,
        "expected": {"self_dual": True},
    },
)


@dataclass
class SuiteCase:
    index: int
    label: str
    ring: str
    n: int
    generators: list
    d: int
    m: int
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "label": self.label,
            "ring": self.ring,
            "n": self.n,
            "generators": self.generators,
            "d": self.d,
            "m": self.m,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }


@dataclass
class SuiteReport:
    config: SuiteConfig
    cases: list[SuiteCase] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def first_failure(self) -> IdentityCheck | None:
        for case in self.cases:
            for check in case.checks:
                if not check.ok:
                    return check
        return None

    def to_json(self) -> dict:
        passed = sum(1 for c in self.cases if c.ok)
        return {
            "config": self.config.to_json(),
            "ok": self.ok,
            "counts": {"pass": passed, "fail": len(self.cases) - passed},
            "cases": [c.to_json() for c in self.cases],
        }

    def to_text(self) -> str:
        lines = [f"suite seed={self.config.seed} cases={len(self.cases)}"]
        for case in self.cases:
            status = "ok" if case.ok else "FAIL"
            lines.append(
                f"case {case.index:03d} [{case.label}] ring={case.ring} n={case.n} "
                f"d={case.d} m={case.m} checks={len(case.checks)} {status}"
            )
            for check in case.checks:
                if not check.ok:
                    lines.append(f"    {check.name}: {check.witness or 'mismatch'}")
        passed = sum(1 for c in self.cases if c.ok)
        lines.append(f"pass {passed}/{len(self.cases)}")
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines) + "\n"


def _minor_checks(case: SuiteCase, code: LinearCode, dm: DemiMatroid) -> None:
    """Deletion/contraction identities, exhaustive over all T.

    The table identities are cheap and always run over every T; the
    code-contraction comparison needs a brute-force dual of each shortened
    code, so it runs exhaustively up to n = 6 and over nonempty T beyond.
    """
    ok_prop = True
    ok_code = True
    witness_prop = witness_code = None
    for t_mask in range(1 << dm.n):
        # (D* \ T)* = D/T = supplement(supplement(D) \ T)
        contracted = dm_mod.contract(dm, t_mask)
        via_dual = dm_mod.dual(dm_mod.delete(dm_mod.dual(dm), t_mask))
        via_supp = dm_mod.supplement(dm_mod.delete(dm_mod.supplement(dm), t_mask))
        if contracted != via_dual or contracted != via_supp:
            ok_prop = False
            witness_prop = f"T={t_mask:b}"
            break
        # contraction of the code's demi-matroid is the shortened code's
        if ok_code and (dm.n <= 6 or t_mask):
            shortened = code if t_mask == 0 else shorten(code, t_mask)
            if from_code(shortened) != contracted:
                ok_code = False
                witness_code = f"T={t_mask:b}"
    case.checks.append(IdentityCheck("minor-duality", ok_prop, witness_prop))
    case.checks.append(IdentityCheck("code-contraction", ok_code, witness_code))


def _frobenius_check(case: SuiteCase, code: LinearCode) -> None:
    """Size duality |C\\(E-X)| * |C_dual/(E-X)| = |R|^|X| over every subset."""
    n = code.n
    full = (1 << n) - 1
    counts = subset_counts(code)
    dual_counts = subset_counts(code_dual(code))
    ok = True
    witness = None
    for x in range(1 << n):
        lhs = (code.size // counts[full ^ x]) * dual_counts[x]
        if lhs != code.ring.order ** popcount(x):
            ok = False
            witness = f"X={x:b}"
            break
    case.checks.append(IdentityCheck("frobenius-size-duality", ok, witness))


def _merge(case: SuiteCase, report: EnumeratorReport) -> None:
    case.checks.extend(report.checks)


def run_case(case: SuiteCase, code: LinearCode, f: SubsetFn, m: int, seed: int) -> None:
    w = weight_enum(code, f, m)
    deg = w.homogeneous_degree()
    case.checks.append(
        IdentityCheck(
            "weight-enum-homogeneous",
            w.is_zero or deg == code.n,
            None if w.is_zero or deg == code.n else f"degree {deg}",
        )
    )
    _merge(case, verify_greene(code, f, m, seed=seed))
    _merge(case, verify_macwilliams(code, f, m))
    _merge(case, verify_rank_forms(code, f, m))
    dm = from_code(code)
    ax = check_axioms(dm)
    case.checks.append(
        IdentityCheck("axioms-alpha-beta", ax.ok, None if ax.ok else str(ax.to_json()))
    )
    ax_supp = check_axioms(dm_mod.supplement(dm))
    case.checks.append(
        IdentityCheck(
            "axioms-gamma-delta", ax_supp.ok, None if ax_supp.ok else str(ax_supp.to_json())
        )
    )
    gd = from_code(code, "gamma-delta")
    case.checks.append(
        IdentityCheck("gamma-delta-is-supplement", gd == dm_mod.supplement(dm))
    )
    _merge(case, verify_dualities(dm, f, seed=seed))
    _minor_checks(case, code, dm)
    _frobenius_check(case, code)


def _pinned_suite_cases(seed: int) -> list[SuiteCase]:
    cases = []
    for spec in PINNED_CASES:
        ring = make_ring(spec["ring"])
        code = span(ring, spec["n"], spec["generators"])
        d = spec["d"]
        basis = harm_basis(spec["n"], d)
        case = SuiteCase(
            index=len(cases),
            label=spec["name"],
            ring=ring.name,
            n=spec["n"],
            generators=spec["generators"],
            d=d,
            m=1,
        )
        f = basis[0]
        expected = spec.get("expected", {})
        if "w" in expected:
            from .enumerators import harmonic_tutte, z_coboundary, z_poly

            case.checks.append(
                IdentityCheck("pinned-w", weight_enum(code, f).text() == expected["w"])
            )
            case.checks.append(
                IdentityCheck("pinned-z", z_poly(code, f).text() == expected["z"])
            )
            dmx = from_code(code)
            case.checks.append(
                IdentityCheck(
                    "pinned-tutte", harmonic_tutte(dmx, f).text() == expected["tutte"]
                )
            )
            case.checks.append(
                IdentityCheck(
                    "pinned-coboundary",
                    z_coboundary(dmx, f).text() == expected["z_coboundary"],
                )
            )
        if expected.get("self_dual"):
            case.checks.append(IdentityCheck("pinned-self-dual", code == code_dual(code)))
        if expected.get("hermitian_self_dual"):
            case.checks.append(
                IdentityCheck(
                    "pinned-hermitian-self-dual",
                    code == code_dual(code, conjugate=True),
                )
            )
            rep = verify_macwilliams(code, f, 1, field_scaled=True, conjugate=True)
            _merge(case, rep)
        run_case(case, code, f, 1, seed)
        cases.append(case)
    return cases


def random_cases(cfg: SuiteConfig, count: int):
    """Deterministic random case parameters: (code, f, m, case_seed) tuples."""
    rng = random.Random(cfg.seed)
    rings = [make_ring(spec) for spec in cfg.rings]
    out = []
    for _ in range(count):
        ring = rings[rng.randrange(len(rings))]
        n = rng.randint(1, cfg.max_n)
        k = rng.randint(0, n)
        gens = [[rng.randrange(ring.order) for _ in range(n)] for _ in range(k)]
        d_max = min(cfg.max_d, n // 2)
        d = rng.randint(0, d_max)
        basis = harm_basis(n, d)
        f = basis[rng.randrange(len(basis))]
        m = rng.randint(1, cfg.max_m)
        code = span(ring, n, gens)
        out.append((code, f, m, rng.randrange(1 << 30)))
    return out


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    report = SuiteReport(cfg)
    if cfg.max_n == 0 or cfg.cases == 0:
        return report
    if cfg.include_pinned:
        report.cases.extend(_pinned_suite_cases(cfg.seed))
    start = len(report.cases)
    for offset, (code, f, m, case_seed) in enumerate(
        random_cases(cfg, max(0, cfg.cases - start))
    ):
        case = SuiteCase(
            index=start + offset,
            label="random",
            ring=code.ring.name,
            n=code.n,
            generators=[list(g) for g in code.generators],
            d=f.d,
            m=m,
        )
        run_case(case, code, f, m, seed=case_seed)
        report.cases.append(case)
    return report
