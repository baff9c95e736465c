"""Demi-matroids as explicit rank tables over all subsets.

A demi-matroid is a pair of monotone rank functions (s, t) on 2^E tied by
the complementary-rank relation |E-X| - s(E-X) = t(E) - t(X).  Codes over a
finite Frobenius ring induce one via logarithmic cardinalities of punctured
and shortened subcodes; over Z_{p^e} those logs are rationals with
denominator dividing e, so tables hold Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .code import LinearCode, dual as code_dual, subset_counts
from .poly import ExpPoly, format_rational, parse_rational
from .subsets import elements_of, expand_mask, mask_of, popcount


@dataclass(frozen=True)
class DemiMatroid:
    n: int
    s: tuple[Fraction, ...]
    t: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.s) != 1 << self.n or len(self.t) != 1 << self.n:
            raise ValueError("rank tables must cover all 2^n subsets")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1


@dataclass
class AxiomReport:
    ok: bool
    axiom: str | None = None
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        if self.ok:
            return {"ok": True}
        return {"ok": False, "axiom": self.axiom, "witness": self.witness}


def check_axioms(dm: DemiMatroid) -> AxiomReport:
    """Verify (D1), (D2) and (D3); reports the first violation with witnesses.

    (D1) is checked over covering pairs, which suffices by transitivity.
    """
    full = dm.full
    for label, table in (("s", dm.s), ("t", dm.t)):
        if table[0] != 0:
            return AxiomReport(False, "D1", {"table": label, "subset": [], "value": format_rational(table[0])})
        for x in range(1 << dm.n):
            if table[x] < 0:
                return AxiomReport(False, "D1", {"table": label, "subset": list(elements_of(x))})
            for i in range(dm.n):
                bit = 1 << i
                if x & bit:
                    continue
                y = x | bit
                if not (table[x] <= table[y] <= popcount(y)):
                    return AxiomReport(
                        False,
                        "D1",
                        {
                            "table": label,
                            "subset": list(elements_of(x)),
                            "superset": list(elements_of(y)),
                            "values": [format_rational(table[x]), format_rational(table[y])],
                        },
                    )
    for x in range(1 << dm.n):
        comp = full ^ x
        if popcount(comp) - dm.s[comp] != dm.t[full] - dm.t[x]:
            return AxiomReport(False, "D2", {"subset": list(elements_of(x))})
        if popcount(comp) - dm.t[comp] != dm.s[full] - dm.s[x]:
            return AxiomReport(False, "D3", {"subset": list(elements_of(x))})
    return AxiomReport(True)


def _log_rank(card: int, ring) -> Fraction:
    """log base |R| of a subcode cardinality, as an exact rational."""
    v = 0
    c = card
    while c % ring.p == 0:
        c //= ring.p
        v += 1
    if c != 1:
        raise ValueError(f"cardinality {card} is not a power of {ring.p}")
    return Fraction(v, ring.exponent)


def from_code(code: LinearCode, flavor: str = "alpha-beta") -> DemiMatroid:
    """Rank tables of a code: punctured-size logs, or the shortened-size supplement.

    alpha-beta uses s(X) = log |C \\ (E-X)| and t from the dual code;
    gamma-delta uses the shortened sizes log |C / (E-X)| instead.
    """
    if flavor not in ("alpha-beta", "gamma-delta"):
        raise ValueError(f"unknown flavor {flavor!r}")
    n = code.n
    full = (1 << n) - 1
    counts = subset_counts(code)
    dual_counts = subset_counts(code_dual(code))
    size = code.size
    dual_size = dual_counts[full]
    s = []
    t = []
    for x in range(1 << n):
        comp = full ^ x
        if flavor == "alpha-beta":
            # |C \ (E-X)| = |C| / |C/X| and |C/X| counts words supported in E-X
            s.append(_log_rank(size // counts[comp], code.ring))
            t.append(_log_rank(dual_size // dual_counts[comp], code.ring))
        else:
            s.append(_log_rank(counts[x], code.ring))
            t.append(_log_rank(dual_counts[x], code.ring))
    return DemiMatroid(n, tuple(s), tuple(t))


def dual(dm: DemiMatroid) -> DemiMatroid:
    return DemiMatroid(dm.n, dm.t, dm.s)


def supplement(dm: DemiMatroid) -> DemiMatroid:
    full = dm.full
    s = tuple(dm.s[full] - dm.s[full ^ x] for x in range(1 << dm.n))
    t = tuple(dm.t[full] - dm.t[full ^ x] for x in range(1 << dm.n))
    return DemiMatroid(dm.n, s, t)


def delete(dm: DemiMatroid, t_mask: int) -> DemiMatroid:
    """Deletion to E-T: the first rank restricts, the second contracts.

    Restricting both tables would break (D2) on the smaller ground set;
    the dual rank of a deletion is the contraction of the dual rank,
    exactly as for matroids.
    """
    keep = dm.full ^ t_mask
    k = popcount(keep)
    s = tuple(dm.s[expand_mask(x, keep)] for x in range(1 << k))
    t = tuple(
        dm.t[expand_mask(x, keep) | t_mask] - dm.t[t_mask] for x in range(1 << k)
    )
    return DemiMatroid(k, s, t)


def contract(dm: DemiMatroid, t_mask: int) -> DemiMatroid:
    """Contraction to E-T: s(X | T) - s(T) paired with the restriction of t."""
    keep = dm.full ^ t_mask
    k = popcount(keep)
    s = tuple(
        dm.s[expand_mask(x, keep) | t_mask] - dm.s[t_mask] for x in range(1 << k)
    )
    t = tuple(dm.t[expand_mask(x, keep)] for x in range(1 << k))
    return DemiMatroid(k, s, t)


def characteristic_poly(dm: DemiMatroid) -> ExpPoly:
    """Alternating subset sum of lambda^(s(E) - s(X))."""
    top = dm.s[dm.full]
    out = ExpPoly.zero()
    for x in range(1 << dm.n):
        sign = -1 if popcount(x) & 1 else 1
        out = out + ExpPoly.term(sign, lam=top - dm.s[x])
    return out


def free_pair(n: int) -> DemiMatroid:
    """The free matroid with its dual rank: s = cardinality, t = 0."""
    s = tuple(Fraction(popcount(x)) for x in range(1 << n))
    t = tuple(Fraction(0) for _ in range(1 << n))
    return DemiMatroid(n, s, t)


def _sorted_masks(n: int) -> list[int]:
    return sorted(range(1 << n), key=lambda m: (popcount(m), elements_of(m)))


def to_json(dm: DemiMatroid) -> dict:
    return {
        "n": dm.n,
        "s": [[list(elements_of(m)), format_rational(dm.s[m])] for m in _sorted_masks(dm.n)],
        "t": [[list(elements_of(m)), format_rational(dm.t[m])] for m in _sorted_masks(dm.n)],
    }


def _parse_subset(raw) -> int:
    if isinstance(raw, str):
        raw = [int(tok) for tok in raw.replace(",", " ").split()]
    return mask_of(int(e) for e in raw)


def from_json(obj: dict) -> DemiMatroid:
    n = int(obj["n"])
    tables = []
    for key in ("s", "t"):
        table = [None] * (1 << n)
        for raw_subset, raw_rank in obj[key]:
            table[_parse_subset(raw_subset)] = parse_rational(raw_rank)
        missing = [i for i, v in enumerate(table) if v is None]
        if missing:
            raise ValueError(
                f"table {key!r} is missing subset {list(elements_of(missing[0]))}"
            )
        tables.append(tuple(table))
    return DemiMatroid(n, tables[0], tables[1])
