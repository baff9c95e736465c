"""Bitmask subsets of the ground set {1, .., n}.

Element i of the ground set is bit i-1 of the mask, so masks run over
range(1 << n) and popcounts, unions and complements are plain integer
operations.
"""

from __future__ import annotations

from itertools import combinations


def mask_of(elements) -> int:
    """Mask for an iterable of 1-based elements."""
    m = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"elements are 1-based, got {e}")
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    """Sorted 1-based elements of a mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return mask.bit_count()


def lex_masks(n: int, d: int) -> list[int]:
    """All d-subsets of {1..n} as masks, in lexicographic element order."""
    return [mask_of(c) for c in combinations(range(1, n + 1), d)]


def submasks(mask: int):
    """All subsets of a mask, including 0 and the mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def zeta_transform(values, n: int) -> list:
    """Subset sums: out[X] = sum of values[Y] over Y a subset of X."""
    out = list(values)
    for i in range(n):
        bit = 1 << i
        for x in range(1 << n):
            if x & bit:
                out[x] = out[x] + out[x ^ bit]
    return out


def mobius_transform(values, n: int) -> list:
    """Inverse of zeta_transform: out[X] = sum_{Y subset X} (-1)^{|X-Y|} values[Y]."""
    out = list(values)
    for i in range(n):
        bit = 1 << i
        for x in range(1 << n):
            if x & bit:
                out[x] = out[x] - out[x ^ bit]
    return out


def compress_mask(mask: int, keep: int) -> int:
    """Re-index the bits of ``mask`` that lie inside ``keep`` as a dense mask.

    The j-th lowest bit of ``keep`` becomes bit j of the result; bits of
    ``mask`` outside ``keep`` are discarded.
    """
    out = 0
    j = 0
    i = 0
    while keep >> i:
        if (keep >> i) & 1:
            if (mask >> i) & 1:
                out |= 1 << j
            j += 1
        i += 1
    return out


def expand_mask(mask: int, keep: int) -> int:
    """Inverse of compress_mask: place bit j of ``mask`` at the j-th bit of ``keep``."""
    out = 0
    j = 0
    i = 0
    while keep >> i:
        if (keep >> i) & 1:
            if (mask >> j) & 1:
                out |= 1 << i
            j += 1
        i += 1
    return out
