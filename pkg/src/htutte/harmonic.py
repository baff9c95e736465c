"""Discrete harmonic functions on d-subsets of {1..n}.

A degree-d function assigns a rational to every d-subset.  The
differentiation operator sends it to the degree d-1 function whose value
at Y is the sum over all d-supersets of Y; harmonic means that image is
zero.  The extension f~ of f to an arbitrary subset X sums f over the
d-subsets contained in X.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import DegreeZero
from .poly import format_rational, parse_rational
from .subsets import elements_of, lex_masks, mask_of, popcount, zeta_transform


class SubsetFn:
    """Rational-valued function on the d-subsets of {1..n}, stored sparsely."""

    __slots__ = ("n", "d", "values")

    def __init__(self, n: int, d: int, values=None):
        if not 0 <= d <= n <= 16:
            raise ValueError(f"need 0 <= d <= n <= 16, got n={n}, d={d}")
        self.n = n
        self.d = d
        data: dict[int, Fraction] = {}
        if values:
            items = values.items() if isinstance(values, dict) else values
            for mask, v in items:
                v = Fraction(v)
                if popcount(mask) != d:
                    raise ValueError(f"subset {elements_of(mask)} is not a {d}-set")
                if mask >= 1 << n:
                    raise ValueError(f"subset {elements_of(mask)} exceeds ground set")
                if v == 0:
                    continue
                data[mask] = data.get(mask, Fraction(0)) + v
                if data[mask] == 0:
                    del data[mask]
        self.values = data

    @property
    def is_zero(self) -> bool:
        return not self.values

    def __call__(self, mask: int) -> Fraction:
        return self.values.get(mask, Fraction(0))

    def __add__(self, other: "SubsetFn") -> "SubsetFn":
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError("mismatched ground set or degree")
        data = dict(self.values)
        for m, v in other.values.items():
            s = data.get(m, Fraction(0)) + v
            if s == 0:
                data.pop(m, None)
            else:
                data[m] = s
        out = SubsetFn(self.n, self.d)
        out.values = data
        return out

    def scale(self, c) -> "SubsetFn":
        c = Fraction(c)
        out = SubsetFn(self.n, self.d)
        if c != 0:
            out.values = {m: v * c for m, v in self.values.items()}
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubsetFn):
            return NotImplemented
        return (self.n, self.d, self.values) == (other.n, other.d, other.values)

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(
            f"{format_rational(v)}*{set(elements_of(m)) or '{}'}"
            for m, v in sorted(self.values.items())
        )
        return f"SubsetFn(n={self.n}, d={self.d}, {body or '0'})"


def gamma_apply(f: SubsetFn) -> SubsetFn:
    """Differentiate: value at each (d-1)-set Y is the sum of f over d-supersets of Y."""
    if f.d == 0:
        raise DegreeZero("cannot differentiate a degree-0 function")
    out: dict[int, Fraction] = {}
    for z, v in f.values.items():
        m = z
        while m:
            bit = m & -m
            y = z ^ bit
            out[y] = out.get(y, Fraction(0)) + v
            m ^= bit
    return SubsetFn(f.n, f.d - 1, out)


def is_harmonic(f: SubsetFn) -> bool:
    if f.d == 0:
        return True
    return gamma_apply(f).is_zero


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot column indices)."""
    rows = [list(map(Fraction, r)) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def harm_basis(n: int, d: int) -> list[SubsetFn]:
    """Canonical basis of the space of degree-d harmonic functions.

    The kernel of the differentiation operator is put into reduced row
    echelon form with columns ordered by lexicographic subset order, so the
    output is deterministic.  Size is C(n,d) - C(n,d-1) when nonnegative.
    """
    cols = lex_masks(n, d)
    if d == 0:
        return [SubsetFn(n, 0, {0: Fraction(1)})]
    if not cols:
        return []
    rows_idx = lex_masks(n, d - 1)
    col_pos = {m: i for i, m in enumerate(cols)}
    matrix = []
    for y in rows_idx:
        row = [Fraction(0)] * len(cols)
        rest = ((1 << n) - 1) ^ y
        m = rest
        while m:
            bit = m & -m
            row[col_pos[y | bit]] = Fraction(1)
            m ^= bit
        matrix.append(row)
    reduced, pivots = _rref(matrix)
    pivot_set = set(pivots)
    free_cols = [j for j in range(len(cols)) if j not in pivot_set]
    kernel = []
    for j in free_cols:
        vec = [Fraction(0)] * len(cols)
        vec[j] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][j]
        kernel.append(vec)
    if not kernel:
        return []
    canonical, _ = _rref(kernel)
    return [
        SubsetFn(n, d, {cols[j]: v for j, v in enumerate(vec) if v != 0})
        for vec in canonical
    ]


def harm_dimension(n: int, d: int) -> int:
    """dim of the degree-d harmonic space: C(n,d) - C(n,d-1), floored at 0."""
    low = comb(n, d - 1) if d >= 1 else 0
    return max(0, comb(n, d) - low)


def tilde_eval(f: SubsetFn, x_mask: int) -> Fraction:
    """Extension value at an arbitrary subset: sum of f over contained d-sets."""
    total = Fraction(0)
    for z, v in f.values.items():
        if z & x_mask == z:
            total += v
    return total


def tilde_table(f: SubsetFn) -> list[Fraction]:
    """Extension values for all 2^n subsets via the subset-sum transform."""
    arr = [Fraction(0)] * (1 << f.n)
    for z, v in f.values.items():
        arr[z] = v
    return zeta_transform(arr, f.n)


def level_sum(f: SubsetFn, j_mask: int, i: int) -> Fraction:
    """Sum of f over d-sets meeting the given subset in exactly i elements."""
    if not 0 <= i <= f.d:
        raise ValueError(f"level {i} outside 0..{f.d}")
    total = Fraction(0)
    for z, v in f.values.items():
        if popcount(z & j_mask) == i:
            total += v
    return total


def to_json(f: SubsetFn) -> dict:
    return {
        "n": f.n,
        "d": f.d,
        "coeffs": [
            {"subset": list(elements_of(m)), "value": format_rational(v)}
            for m, v in sorted(f.values.items(), key=lambda kv: elements_of(kv[0]))
        ],
    }


def from_json(obj: dict, allow_nonharmonic: bool = False) -> SubsetFn:
    n = int(obj["n"])
    d = int(obj["d"])
    values = {}
    for item in obj.get("coeffs", []):
        mask = mask_of(item["subset"])
        values[mask] = values.get(mask, Fraction(0)) + parse_rational(item["value"])
    f = SubsetFn(n, d, values)
    if not allow_nonharmonic and not is_harmonic(f):
        raise ValueError(
            "input function is not harmonic; pass --allow-nonharmonic to accept it"
        )
    return f
