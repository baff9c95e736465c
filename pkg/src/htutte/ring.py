"""Finite commutative rings of prime power order with explicit operation tables.

Supported rings are Z_{p^e} and GF(p^k); both are Frobenius and commutative,
and every subcode cardinality is a power of p, which keeps the rank
functions used elsewhere exactly rational.  Elements are indices in
[0, |R|): the residue itself for Z_{p^e}, and for GF(p^k) the residue
polynomial evaluated at p (base-p digit packing).
"""

from __future__ import annotations

from .errors import CompositeNonPrimePower, ConjugationUnsupported, ReducibleModulus

# Default irreducible moduli, coefficients low-degree first, monic.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),        # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),     # x^3 + x + 1
    (3, 2): (1, 0, 1),        # x^2 + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
}


def factor_prime_power(m: int) -> tuple[int, int]:
    """Write m = p^e with p prime, or raise CompositeNonPrimePower."""
    if m < 2:
        raise CompositeNonPrimePower(f"{m} is not a prime power")
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            q = m
            while q % p == 0:
                q //= p
                e += 1
            if q != 1:
                raise CompositeNonPrimePower(f"{m} is not a prime power")
            return p, e
        p += 1
    return m, 1


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    """Division of coefficient lists (low-degree first) over Z_p; den is monic."""
    num = [c % p for c in num]
    dd = len(den) - 1
    quot = [0] * max(1, len(num) - dd)
    while len(num) > dd and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) <= dd:
            break
        shift = len(num) - 1 - dd
        factor = num[-1]
        quot[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * c) % p
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2 over Z_p."""
    k = len(modulus) - 1
    for deg in range(1, k // 2 + 1):
        for low in range(p ** deg):
            digits = []
            v = low
            for _ in range(deg):
                digits.append(v % p)
                v //= p
            candidate = digits + [1]
            _, rem = _poly_divmod(list(modulus), candidate, p)
            if not rem:
                return False
    return True


class FiniteRing:
    """Immutable ring handle carrying full addition/multiplication tables."""

    __slots__ = ("kind", "p", "exponent", "order", "modulus", "name", "add", "mul", "neg")

    def __init__(self, kind: str, p: int, exponent: int, modulus=None):
        self.kind = kind
        self.p = p
        self.exponent = exponent
        self.order = p ** exponent
        if kind == "Zm":
            self.modulus = None
            self.name = f"Z{self.order}"
            m = self.order
            self.add = tuple(tuple((a + b) % m for b in range(m)) for a in range(m))
            self.mul = tuple(tuple((a * b) % m for b in range(m)) for a in range(m))
            self.neg = tuple((-a) % m for a in range(m))
        elif kind == "GF":
            if modulus is None:
                modulus = DEFAULT_MODULI.get((p, exponent))
                if modulus is None and exponent == 1:
                    modulus = (0, 1)  # placeholder, unused for prime fields
                if modulus is None:
                    raise ValueError(
                        f"no built-in modulus for GF({p}^{exponent}); supply one"
                    )
            modulus = tuple(int(c) % p for c in modulus[:-1]) + (int(modulus[-1]),)
            if exponent >= 2:
                if len(modulus) != exponent + 1:
                    raise ValueError(
                        f"modulus must have degree {exponent}, got {len(modulus) - 1}"
                    )
                if modulus[-1] != 1:
                    raise ValueError("modulus must be monic")
                if not _is_irreducible(modulus, p):
                    raise ReducibleModulus(
                        f"modulus {list(modulus)} is reducible over Z_{p}"
                    )
            self.modulus = modulus if exponent >= 2 else None
            self.name = f"GF{self.order}"
            self.add, self.mul = self._field_tables()
            self.neg = tuple(self.mul[a][self._index([(p - 1) % p])] for a in range(self.order))
        else:
            raise ValueError(f"unknown ring kind {kind!r}")

    # -- GF construction helpers ---------------------------------------

    def _digits(self, index: int) -> list[int]:
        out = []
        for _ in range(self.exponent):
            out.append(index % self.p)
            index //= self.p
        return out

    def _index(self, digits) -> int:
        out = 0
        for i, c in enumerate(digits):
            out += (c % self.p) * self.p ** i
        return out

    def _field_tables(self):
        p, k, q = self.p, self.exponent, self.order
        add = tuple(
            tuple(
                self._index([(a + b) % p for a, b in zip(self._digits(i), self._digits(j))])
                for j in range(q)
            )
            for i in range(q)
        )
        mul_rows = []
        for i in range(q):
            di = self._digits(i)
            row = []
            for j in range(q):
                dj = self._digits(j)
                conv = [0] * (2 * k - 1)
                for a, ca in enumerate(di):
                    if ca == 0:
                        continue
                    for b, cb in enumerate(dj):
                        conv[a + b] = (conv[a + b] + ca * cb) % p
                if k >= 2:
                    _, rem = _poly_divmod(conv, list(self.modulus), p)
                else:
                    rem = [conv[0] % p]
                rem += [0] * (k - len(rem))
                row.append(self._index(rem))
            mul_rows.append(tuple(row))
        return add, tuple(mul_rows)

    # -- element operations ----------------------------------------------

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def pow_element(self, a: int, n: int) -> int:
        result = 1
        base = a
        while n:
            if n & 1:
                result = self.mul[result][base]
            base = self.mul[base][base]
            n >>= 1
        return result

    @property
    def has_conjugation(self) -> bool:
        return self.kind == "GF" and self.exponent % 2 == 0

    def conjugate(self, v: int) -> int:
        """v raised to the power sqrt(|R|); an involution fixing the prime subfield."""
        if not self.has_conjugation:
            raise ConjugationUnsupported(
                f"{self.name} has no square-order conjugation"
            )
        return self.pow_element(v, self.p ** (self.exponent // 2))

    def element_str(self, v: int) -> str:
        if self.kind == "Zm" or self.exponent == 1:
            return str(v)
        digits = self._digits(v)
        parts = []
        for i in range(self.exponent - 1, -1, -1):
            c = digits[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "a" if i == 1 else f"a^{i}"
                parts.append(var if c == 1 else f"{c}*{var}")
        return "+".join(parts) if parts else "0"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return (self.kind, self.p, self.exponent, self.modulus) == (
            other.kind,
            other.p,
            other.exponent,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.p, self.exponent, self.modulus))

    def __repr__(self) -> str:
        return f"FiniteRing({self.name})"


def Zm(m: int) -> FiniteRing:
    p, e = factor_prime_power(m)
    return FiniteRing("Zm", p, e)


def GF(p: int, k: int, modulus=None) -> FiniteRing:
    pp, ee = factor_prime_power(p)
    if ee != 1:
        raise CompositeNonPrimePower(f"{p} is not prime")
    return FiniteRing("GF", p, k, modulus)


def make_ring(spec: dict) -> FiniteRing:
    """Build a ring from its JSON descriptor.

    {"kind": "Zm", "m": 4} or {"kind": "GF", "p": 2, "k": 2, "modulus": [1, 1, 1]}
    """
    kind = spec.get("kind")
    if kind == "Zm":
        return Zm(int(spec["m"]))
    if kind == "GF":
        return GF(int(spec["p"]), int(spec["k"]), spec.get("modulus"))
    raise ValueError(f"unknown ring kind {kind!r}")


def ring_descriptor(ring: FiniteRing) -> dict:
    if ring.kind == "Zm":
        return {"kind": "Zm", "m": ring.order}
    out = {"kind": "GF", "p": ring.p, "k": ring.exponent}
    if ring.modulus is not None:
        out["modulus"] = list(ring.modulus)
    return out
