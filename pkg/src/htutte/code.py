"""Linear codes over a finite ring, stored fully enumerated.

Every quantity computed downstream is a sum over codewords or subsets, so
codes keep their complete codeword list as a (|C|, n) matrix of element
indices, sorted by the base-|R| packing of each row.  Duals are found by
brute force over R^n (checking orthogonality against a spanning set), which
is exact and fast enough at the enumeration caps used here.
"""

from __future__ import annotations

import os
from itertools import product

import numpy as np

from .errors import EnumerationTooLarge
from .ring import FiniteRing, make_ring, ring_descriptor
from .subsets import mobius_transform, zeta_transform

DEFAULT_SPAN_CAP = 1 << 24
DEFAULT_DUAL_CAP = 1 << 24
DEFAULT_TUPLE_CAP = 1 << 22
_CHUNK = 1 << 20


def _cap(default: int) -> int:
    override = os.environ.get("HTUTTE_MAX_ENUM")
    if override:
        return int(override)
    return default


class LinearCode:
    """A module of vectors over a FiniteRing, with its full codeword list."""

    __slots__ = ("ring", "n", "generators", "words", "_packed", "_dual", "_counts", "_spanning")

    def __init__(self, ring: FiniteRing, n: int, words: np.ndarray, generators=None):
        if n > 16:
            raise ValueError(f"length {n} exceeds the supported maximum of 16")
        self.ring = ring
        self.n = n
        self.generators = None if generators is None else tuple(map(tuple, generators))
        words = np.asarray(words, dtype=np.uint8)
        if words.ndim != 2:
            words = words.reshape(-1, n)  # n = 0 never reaches here: callers pass 2-D
        packed = _pack(words, ring.order)
        order_idx = np.argsort(packed)
        self.words = words[order_idx]
        self._packed = packed[order_idx]
        self._dual = {}
        self._counts = None
        self._spanning = None

    @property
    def size(self) -> int:
        return self.words.shape[0]

    def words_as_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in row) for row in self.words]

    def contains(self, vector) -> bool:
        v = np.asarray(vector, dtype=np.int64)
        key = int((v * self.ring.order ** np.arange(self.n, dtype=np.int64)).sum())
        i = np.searchsorted(self._packed, key)
        return i < self._packed.size and self._packed[i] == key

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.n == other.n
            and np.array_equal(self._packed, other._packed)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"LinearCode({self.ring.name}, n={self.n}, size={self.size})"


def _pack(words: np.ndarray, order: int) -> np.ndarray:
    if words.shape[1] == 0:
        return np.zeros(words.shape[0], dtype=np.int64)
    powers = order ** np.arange(words.shape[1], dtype=np.int64)
    return words.astype(np.int64) @ powers


def _unique(words: np.ndarray, order: int) -> np.ndarray:
    packed = _pack(words, order)
    _, idx = np.unique(packed, return_index=True)
    return words[idx]


def span(ring: FiniteRing, n: int, generators, cap: int | None = None) -> LinearCode:
    """All linear combinations of the generator rows, deduplicated.

    Grows one generator at a time: the span so far is closed under
    addition, so adjoining g just unions the translates S + a*g over all
    scalars a, processed per scalar to bound memory.
    """
    cap = _cap(DEFAULT_SPAN_CAP) if cap is None else cap
    gens = [tuple(int(v) for v in g) for g in generators]
    for g in gens:
        if len(g) != n:
            raise ValueError(f"generator {g} has length {len(g)}, expected {n}")
        if any(not 0 <= v < ring.order for v in g):
            raise ValueError(f"generator {g} has entries outside the ring")
    add_t = np.asarray(ring.add, dtype=np.uint8)
    mul_t = np.asarray(ring.mul, dtype=np.uint8)
    words = np.zeros((1, n), dtype=np.uint8)
    for g in gens:
        g_idx = np.asarray(g, dtype=np.intp)
        blocks = [words]
        seen = _pack(words, ring.order)
        for a in range(1, ring.order):
            shifted = add_t[words, mul_t[a, g_idx][None, :]]
            packed = _pack(shifted, ring.order)
            fresh = ~np.isin(packed, seen)
            if fresh.any():
                blocks.append(shifted[fresh])
                seen = np.concatenate([seen, np.unique(packed[fresh])])
                if seen.size > cap:
                    raise EnumerationTooLarge(
                        f"span would exceed the enumeration cap of {cap} words"
                    )
        words = np.concatenate(blocks) if len(blocks) > 1 else words
    return LinearCode(ring, n, words, generators=gens)


def spanning_set(code: LinearCode) -> list[tuple[int, ...]]:
    """A small generating set, recovered greedily from the codeword list."""
    if code.generators is not None:
        return [tuple(g) for g in code.generators]
    if code._spanning is not None:
        return list(code._spanning)
    gens: list[tuple[int, ...]] = []
    spanned = {0}
    packed_rows = code._packed.tolist()
    for row, key in zip(code.words, packed_rows):
        if key in spanned:
            continue
        gens.append(tuple(int(v) for v in row))
        current = span(code.ring, code.n, gens)
        spanned = set(current._packed.tolist())
        if len(spanned) == code.size:
            break
    code._spanning = tuple(gens)
    return gens


def dual(code: LinearCode, conjugate: bool = False, cap: int | None = None) -> LinearCode:
    """Brute-force dual: all v in R^n orthogonal to every codeword.

    With ``conjugate`` the inner product pairs u with the coordinate-wise
    conjugate of v (square-order fields only).  Orthogonality is checked
    against a spanning set, which suffices by linearity.
    """
    key = bool(conjugate)
    if key in code._dual:
        return code._dual[key]
    cap = _cap(DEFAULT_DUAL_CAP) if cap is None else cap
    ring, n = code.ring, code.n
    total = ring.order ** n
    if total > cap:
        raise EnumerationTooLarge(
            f"dual enumeration of {ring.name}^{n} exceeds the cap of {cap}"
        )
    if conjugate:
        conj_t = np.asarray([ring.conjugate(v) for v in range(ring.order)], dtype=np.uint8)
    gens = spanning_set(code)
    add_t = np.asarray(ring.add, dtype=np.uint8)
    mul_t = np.asarray(ring.mul, dtype=np.uint8)
    kept = []
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        vals = np.arange(start, stop, dtype=np.int64)
        block = np.empty((stop - start, n), dtype=np.uint8)
        for i in range(n):
            block[:, i] = (vals // ring.order ** i) % ring.order
        paired = conj_t[block] if conjugate else block
        ok = np.ones(stop - start, dtype=bool)
        for g in gens:
            acc = np.zeros(stop - start, dtype=np.uint8)
            for i, gi in enumerate(g):
                if gi == 0:
                    continue
                acc = add_t[acc, mul_t[gi, paired[:, i]]]
            ok &= acc == 0
        kept.append(block[ok])
    words = np.concatenate(kept) if kept else np.zeros((1, n), dtype=np.uint8)
    result = LinearCode(ring, n, words)
    code._dual[key] = result
    return result


def _mask_cols(n: int, x_mask: int) -> list[int]:
    return [i for i in range(n) if (x_mask >> i) & 1]


def puncture(code: LinearCode, x_mask: int) -> LinearCode:
    """Delete the coordinates in X from every codeword, deduplicating."""
    drop = set(_mask_cols(code.n, x_mask))
    keep = [i for i in range(code.n) if i not in drop]
    words = _unique(code.words[:, keep], code.ring.order)
    gens = None
    if code.generators is not None:
        gens = [tuple(g[i] for i in keep) for g in code.generators]
    return LinearCode(code.ring, len(keep), words, generators=gens)


def shorten(code: LinearCode, x_mask: int) -> LinearCode:
    """Keep codewords vanishing on X, then delete the coordinates in X."""
    cols = _mask_cols(code.n, x_mask)
    keep = [i for i in range(code.n) if i not in set(cols)]
    rows = code.words
    if cols:
        rows = rows[(rows[:, cols] == 0).all(axis=1)]
    return LinearCode(code.ring, len(keep), _unique(rows[:, keep], code.ring.order))


def restrict(code: LinearCode, x_mask: int) -> LinearCode:
    """Keep codewords supported inside X; the length is unchanged."""
    outside = [i for i in range(code.n) if not (x_mask >> i) & 1]
    rows = code.words
    if outside:
        rows = rows[(rows[:, outside] == 0).all(axis=1)]
    return LinearCode(code.ring, code.n, rows)


def support_masks(code: LinearCode) -> np.ndarray:
    bits = 1 << np.arange(code.n, dtype=np.int64)
    if code.n == 0:
        return np.zeros(code.size, dtype=np.int64)
    return (code.words != 0).astype(np.int64) @ bits


def support_counts(code: LinearCode) -> list[int]:
    """count[X] = number of codewords whose support is exactly X."""
    masks = support_masks(code)
    return np.bincount(masks, minlength=1 << code.n).tolist()


def subset_counts(code: LinearCode) -> list[int]:
    """count[X] = number of codewords whose support is contained in X."""
    if code._counts is None:
        code._counts = zeta_transform(support_counts(code), code.n)
    return code._counts


def support_counters(code: LinearCode, m: int) -> tuple[list[int], list[int]]:
    """Joint-support counters for m-tuples of codewords.

    B[X] counts tuples whose union of supports lies inside X, which equals
    (number of codewords supported in X)^m; A recovers exact-union counts
    by Moebius inversion over the subset lattice.
    """
    if m < 1:
        raise ValueError("tuple length m must be at least 1")
    inside = subset_counts(code)
    b = [c ** m for c in inside]
    a = mobius_transform(b, code.n)
    return a, b


def support_counters_direct(code: LinearCode, m: int, cap: int | None = None) -> list[int]:
    """Exact-union counts by direct enumeration of C^m (cross-check oracle)."""
    cap = _cap(DEFAULT_TUPLE_CAP) if cap is None else cap
    if code.size ** m > cap:
        raise EnumerationTooLarge(
            f"direct {m}-tuple enumeration of {code.size}^{m} words exceeds {cap}"
        )
    masks = [int(v) for v in support_masks(code)]
    out = [0] * (1 << code.n)
    for combo in product(masks, repeat=m):
        u = 0
        for s in combo:
            u |= s
        out[u] += 1
    return out


def check_linear(code: LinearCode, cap: int | None = None) -> bool:
    """Exhaustively verify closure under addition and scalar multiplication."""
    cap = _cap(DEFAULT_TUPLE_CAP) if cap is None else cap
    if code.size * max(code.size, code.ring.order) > cap:
        raise EnumerationTooLarge("closure check exceeds the enumeration cap")
    add_t = np.asarray(code.ring.add, dtype=np.uint8)
    mul_t = np.asarray(code.ring.mul, dtype=np.uint8)
    packed_set = set(code._packed.tolist())
    if 0 not in packed_set:
        return False
    sums = add_t[code.words[:, None, :], code.words[None, :, :]].reshape(-1, code.n)
    if not set(_pack(sums, code.ring.order).tolist()) <= packed_set:
        return False
    for a in range(code.ring.order):
        scaled = mul_t[a, code.words]
        if not set(_pack(scaled, code.ring.order).tolist()) <= packed_set:
            return False
    return True


def code_to_json(code: LinearCode) -> dict:
    gens = code.generators
    if gens is None:
        gens = spanning_set(code)
    return {
        "ring": ring_descriptor(code.ring),
        "n": code.n,
        "generators": [list(g) for g in gens],
    }


def code_from_json(obj: dict) -> LinearCode:
    ring = make_ring(obj["ring"])
    n = int(obj["n"])
    return span(ring, n, obj.get("generators", []))
