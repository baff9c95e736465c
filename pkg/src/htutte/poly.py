"""Exact polynomial algebra over the rationals.

Two representations are used throughout the package:

* :class:`ExpPoly`, polynomials in the fixed variable universe
  ``(x, y, lambda)`` whose exponents are nonnegative rationals.  Fractional
  exponents occur because ranks of modules over Z_{p^e} take values in
  (1/e)Z; they are resolved at evaluation time only when the base is an
  exact rational power.
* :class:`TutteForm`, formal combinations of (x-1)^a (y-1)^b kept in that
  basis because fractional exponents forbid binomial expansion.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IrrationalPower, NonIntegralExponent, NotDivisible

VARS = ("x", "y", "lambda")


def parse_rational(value) -> Fraction:
    """Parse an int, Fraction, or "a/b" string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def integer_nth_root(a: int, n: int):
    """Exact n-th root of a nonnegative integer, or None if not a perfect power."""
    if a < 0:
        raise ValueError("negative radicand")
    if n < 1:
        raise ValueError("root index must be positive")
    if a in (0, 1) or n == 1:
        return a
    x = 1 << -(-a.bit_length() // n)  # upper bound on the root
    while True:
        y = ((n - 1) * x + a // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    return x if x ** n == a else None


def rational_power(base, exp) -> Fraction:
    """Exact base**exp for rational base and exponent.

    Raises IrrationalPower when exp is fractional and base is not an exact
    rational power with the required root.
    """
    base = Fraction(base)
    exp = Fraction(exp)
    if exp.denominator == 1:
        return base ** exp.numerator  # Fraction handles negative exponents
    if base == 0:
        if exp > 0:
            return Fraction(0)
        raise ZeroDivisionError("0 raised to a nonpositive fractional power")
    den = exp.denominator
    sign = 1
    if base < 0:
        if den % 2 == 0:
            raise IrrationalPower(f"no rational {den}-th root of {base}")
        sign = -1
        base = -base
    rnum = integer_nth_root(base.numerator, den)
    rden = integer_nth_root(base.denominator, den)
    if rnum is None or rden is None:
        raise IrrationalPower(f"no rational {den}-th root of {sign * base}")
    return Fraction(sign * rnum, rden) ** exp.numerator


def _key(exps) -> tuple[Fraction, Fraction, Fraction]:
    ex, ey, el = (Fraction(e) for e in exps)
    for e in (ex, ey, el):
        if e < 0:
            raise ValueError(f"negative exponent {e}")
    return (ex, ey, el)


class ExpPoly:
    """Polynomial sum of c * x^a * y^b * lambda^c with Fraction coefficients.

    Terms with zero coefficient are pruned, so equality is structural.
    Instances are treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data: dict[tuple[Fraction, Fraction, Fraction], Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exps, coeff in items:
                c = Fraction(coeff)
                if c == 0:
                    continue
                k = _key(exps)
                c = data.get(k, Fraction(0)) + c
                if c == 0:
                    data.pop(k, None)
                else:
                    data[k] = c
        self.terms = data

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "ExpPoly":
        return cls()

    @classmethod
    def const(cls, value) -> "ExpPoly":
        return cls({(0, 0, 0): Fraction(value)})

    @classmethod
    def term(cls, coeff, x=0, y=0, lam=0) -> "ExpPoly":
        return cls({(x, y, lam): Fraction(coeff)})

    @classmethod
    def var(cls, name: str) -> "ExpPoly":
        if name not in VARS:
            raise ValueError(f"unknown variable {name!r}")
        exps = [0, 0, 0]
        exps[VARS.index(name)] = 1
        return cls({tuple(exps): Fraction(1)})

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def variables(self) -> frozenset[str]:
        used = set()
        for exps in self.terms:
            for name, e in zip(VARS, exps):
                if e != 0:
                    used.add(name)
        return frozenset(used)

    def coefficient(self, x=0, y=0, lam=0) -> Fraction:
        return self.terms.get(_key((x, y, lam)), Fraction(0))

    def homogeneous_degree(self, variables=("x", "y")):
        """Common total degree in the given variables, or None if mixed/zero."""
        idx = [VARS.index(v) for v in variables]
        degrees = {sum(exps[i] for i in idx) for exps in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        data = dict(self.terms)
        for k, c in other.terms.items():
            s = data.get(k, Fraction(0)) + c
            if s == 0:
                data.pop(k, None)
            else:
                data[k] = s
        out = ExpPoly()
        out.terms = data
        return out

    def __neg__(self) -> "ExpPoly":
        out = ExpPoly()
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other: "ExpPoly") -> "ExpPoly":
        return self + (-other)

    def __mul__(self, other: "ExpPoly") -> "ExpPoly":
        data: dict[tuple[Fraction, Fraction, Fraction], Fraction] = {}
        for (ax, ay, al), ac in self.terms.items():
            for (bx, by, bl), bc in other.terms.items():
                k = (ax + bx, ay + by, al + bl)
                s = data.get(k, Fraction(0)) + ac * bc
                if s == 0:
                    data.pop(k, None)
                else:
                    data[k] = s
        out = ExpPoly()
        out.terms = data
        return out

    def __pow__(self, n: int) -> "ExpPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = ExpPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, value) -> "ExpPoly":
        c = Fraction(value)
        if c == 0:
            return ExpPoly.zero()
        out = ExpPoly()
        out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return f"ExpPoly({self.text()})"

    # -- structural operations ------------------------------------------

    def substitute(self, mapping: dict[str, "ExpPoly"]) -> "ExpPoly":
        """Replace variables by polynomials.

        Every substituted variable must carry integer exponents (the
        replacement is raised to that power), so e.g. the MacWilliams map
        x -> x + (q-1)y, y -> x - y expands exactly.
        """
        positions = {VARS.index(name): p for name, p in mapping.items()}
        power_cache: dict[tuple[int, int], ExpPoly] = {}

        def cached_power(i: int, e: int) -> ExpPoly:
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = positions[i] ** e
            return power_cache[key]

        out = ExpPoly.zero()
        for exps, coeff in self.terms.items():
            residual = [Fraction(0)] * 3
            factor = ExpPoly.const(coeff)
            for i, e in enumerate(exps):
                if i in positions:
                    if e.denominator != 1:
                        raise NonIntegralExponent(
                            f"{VARS[i]} carries exponent {e} under substitution"
                        )
                    if e:
                        factor = factor * cached_power(i, int(e))
                else:
                    residual[i] = e
            if any(residual):
                factor = factor * ExpPoly({tuple(residual): Fraction(1)})
            out = out + factor
        return out

    def divide_by_monomial(self, xexp, yexp) -> "ExpPoly":
        """Exact division by x^xexp * y^yexp; NotDivisible if any term fails."""
        dx, dy = Fraction(xexp), Fraction(yexp)
        data = {}
        for (ex, ey, el), c in self.terms.items():
            if ex < dx or ey < dy:
                raise NotDivisible(
                    f"term {format_rational(c)}*x^{ex}*y^{ey} not divisible by x^{dx}*y^{dy}"
                )
            data[(ex - dx, ey - dy, el)] = c
        out = ExpPoly()
        out.terms = data
        return out

    def evaluate(self, point: dict[str, object]) -> Fraction:
        """Exact value at rational coordinates; IrrationalPower may propagate."""
        values = {name: Fraction(v) for name, v in point.items()}
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            prod = coeff
            for name, e in zip(VARS, exps):
                if e == 0:
                    continue
                if name not in values:
                    raise ValueError(f"no value supplied for {name}")
                prod *= rational_power(values[name], e)
            total += prod
        return total

    def subs_lambda(self, value) -> "ExpPoly":
        """Resolve lambda exactly at a rational value, keeping x and y formal."""
        v = Fraction(value)
        out = ExpPoly.zero()
        for (ex, ey, el), c in self.terms.items():
            out = out + ExpPoly({(ex, ey, Fraction(0)): c * rational_power(v, el)})
        return out

    # -- rendering -------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(_format_factor(name, e) for name, e in zip(VARS, exps) if e != 0)
            parts.append(_signed_part(coeff, mono, first=not parts))
        return "".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {
                "coeff": format_rational(coeff),
                "exps": {
                    "x": format_rational(exps[0]),
                    "y": format_rational(exps[1]),
                    "lambda": format_rational(exps[2]),
                },
            }
            for exps, coeff in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, items) -> "ExpPoly":
        terms = []
        for item in items:
            exps = item.get("exps", {})
            terms.append(
                (
                    (
                        parse_rational(exps.get("x", 0)),
                        parse_rational(exps.get("y", 0)),
                        parse_rational(exps.get("lambda", 0)),
                    ),
                    parse_rational(item["coeff"]),
                )
            )
        return cls(terms)


def _format_factor(name: str, e: Fraction) -> str:
    if e == 1:
        return name
    if e.denominator == 1:
        return f"{name}^{e.numerator}"
    return f"{name}^({format_rational(e)})"


def _signed_part(coeff: Fraction, mono: str, first: bool) -> str:
    negative = coeff < 0
    mag = -coeff if negative else coeff
    if mono:
        body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
    else:
        body = format_rational(mag)
    if first:
        return f"-{body}" if negative else body
    return f" - {body}" if negative else f" + {body}"


class TutteForm:
    """Formal combination of (x-1)^a (y-1)^b terms with Fraction coefficients.

    The basis is kept unexpanded because the exponents may be fractional;
    identities on these forms are checked by exact evaluation.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data: dict[tuple[Fraction, Fraction], Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for (e1, e2), coeff in items:
                c = Fraction(coeff)
                if c == 0:
                    continue
                k = (Fraction(e1), Fraction(e2))
                c = data.get(k, Fraction(0)) + c
                if c == 0:
                    data.pop(k, None)
                else:
                    data[k] = c
        self.terms = data

    def add_term(self, e1, e2, coeff) -> None:
        # construction-time mutation only; instances are frozen once shared
        k = (Fraction(e1), Fraction(e2))
        c = self.terms.get(k, Fraction(0)) + Fraction(coeff)
        if c == 0:
            self.terms.pop(k, None)
        else:
            self.terms[k] = c

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, value) -> "TutteForm":
        c = Fraction(value)
        if c == 0:
            return TutteForm()
        out = TutteForm()
        out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    def swapped(self) -> "TutteForm":
        """Exchange the roles of x and y, i.e. map (x-1)^a (y-1)^b to (x-1)^b (y-1)^a."""
        out = TutteForm()
        out.terms = {(e2, e1): c for (e1, e2), c in self.terms.items()}
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TutteForm):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return f"TutteForm({self.text()})"

    def evaluate(self, x, y) -> Fraction:
        xb = Fraction(x) - 1
        yb = Fraction(y) - 1
        total = Fraction(0)
        for (e1, e2), c in self.terms.items():
            total += c * rational_power(xb, e1) * rational_power(yb, e2)
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (e1, e2), coeff in self.sorted_terms():
            factors = []
            if e1 != 0:
                factors.append(_format_factor("(x-1)", e1))
            if e2 != 0:
                factors.append(_format_factor("(y-1)", e2))
            mono = "*".join(factors)
            parts.append(_signed_part(coeff, mono, first=not parts))
        return "".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {
                "coeff": format_rational(coeff),
                "exps": {"x-1": format_rational(e1), "y-1": format_rational(e2)},
            }
            for (e1, e2), coeff in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, items) -> "TutteForm":
        terms = []
        for item in items:
            exps = item.get("exps", {})
            terms.append(
                (
                    (parse_rational(exps.get("x-1", 0)), parse_rational(exps.get("y-1", 0))),
                    parse_rational(item["coeff"]),
                )
            )
        return cls(terms)
