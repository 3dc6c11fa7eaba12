"""Prime-field arithmetic and univariate polynomials over GF(p).

Field elements are small immutable wrappers around an integer residue.
Polynomials are stored as a tuple of integer coefficients, lowest degree
first, with the leading coefficient nonzero (the empty tuple is the zero
polynomial).  Factorization uses square-free decomposition, distinct-degree
splitting and Cantor-Zassenhaus equal-degree splitting; it is meant for
small degrees and small primes.
"""

from __future__ import annotations

import functools
import math
import random
import re
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    ConstantPolynomial,
    DivisionByZero,
    InvalidModulus,
    ModulusMismatch,
    NotCoprimeToX,
    ParseError,
    ZeroPolynomial,
)


@functools.lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    r = 3
    while r * r <= p:
        if p % r == 0:
            return False
        r += 2
    return True


def check_modulus(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidModulus(f"modulus must be a prime integer, got {p!r}")
    return p


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise ValueError("factor_int expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factor_int(n).items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    f = factor_int(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


# ---------------------------------------------------------------------------
# field elements


@dataclass(frozen=True)
class FieldElement:
    value: int
    p: int

    def __post_init__(self):
        check_modulus(self.p)
        object.__setattr__(self, "value", int(self.value) % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ModulusMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value + b) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value - b) % self.p, self.p)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement((b - self.value) % self.p, self.p)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value * b % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.p, self.p)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise DivisionByZero(f"zero has no inverse in GF({self.p})")
        return FieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * FieldElement(b, self.p).inverse()

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(b, self.p) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return FieldElement(pow(self.value, k, self.p), self.p)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GF({self.p})({self.value})"

    def __str__(self):
        return str(self.value)


def field_ops(a: FieldElement, b: FieldElement | int, op: str) -> FieldElement:
    """Apply ``op`` in {add, sub, mul, div, pow}; ``pow`` takes an int exponent."""
    if op == "pow":
        return a ** int(b)
    if isinstance(b, FieldElement) and b.p != a.p:
        raise ModulusMismatch(f"GF({a.p}) vs GF({b.p})")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# univariate polynomials


def _trim(coeffs: Iterable[int], p: int) -> tuple[int, ...]:
    c = [int(v) % p for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class UPoly:
    """Polynomial over GF(p); ``coeffs[k]`` is the coefficient of x^k."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        check_modulus(p)
        self.p = p
        self.coeffs = _trim(coeffs, p)

    @classmethod
    def x(cls, p: int) -> UPoly:
        return cls(p, (0, 1))

    @classmethod
    def const(cls, p: int, c: int) -> UPoly:
        return cls(p, (c,))

    @classmethod
    def monomial(cls, p: int, k: int, c: int = 1) -> UPoly:
        return cls(p, (0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def coefficient(self, k: int) -> FieldElement:
        return FieldElement(self.coeffs[k] if k < len(self.coeffs) else 0, self.p)

    def _other(self, other) -> UPoly:
        if isinstance(other, UPoly):
            if other.p != self.p:
                raise ModulusMismatch(f"GF({self.p})[x] vs GF({other.p})[x]")
            return other
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ModulusMismatch(f"GF({self.p})[x] vs GF({other.p})")
            return UPoly(self.p, (other.value,))
        if isinstance(other, int):
            return UPoly(self.p, (other,))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UPoly(self.p, [x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return UPoly(self.p)
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UPoly(self.p, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result, base = UPoly(self.p, (1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        return upoly_divmod(self, self._other(other))

    def __floordiv__(self, other):
        return upoly_divmod(self, self._other(other))[0]

    def __mod__(self, other):
        return upoly_divmod(self, self._other(other))[1]

    def __eq__(self, other):
        if isinstance(other, int):
            other = UPoly(self.p, (other,))
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def monic(self) -> UPoly:
        if not self.coeffs:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        inv = pow(self.lead, -1, self.p)
        return UPoly(self.p, [c * inv for c in self.coeffs])

    def derivative(self) -> UPoly:
        return UPoly(self.p, [k * c for k, c in enumerate(self.coeffs)][1:])

    def sort_key(self) -> tuple:
        return (self.degree, tuple(reversed(self.coeffs)))

    def __lt__(self, other: UPoly) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"UPoly(GF({self.p}), {self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
                continue
            mono = "x" if k == 1 else f"x^{k}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def upoly_divmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if a.p != b.p:
        raise ModulusMismatch(f"GF({a.p})[x] vs GF({b.p})[x]")
    if b.is_zero():
        raise DivisionByZero("polynomial division by zero")
    p = a.p
    rem = list(a.coeffs)
    db = b.degree
    if len(rem) <= db:
        return UPoly(p), a
    inv = pow(b.lead, -1, p)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] * inv % p
        if c:
            quot[k - db] = c
            for j, bj in enumerate(b.coeffs):
                rem[k - db + j] = (rem[k - db + j] - c * bj) % p
    return UPoly(p, quot), UPoly(p, rem[:db])


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def powmod(base: UPoly, k: int, mod: UPoly) -> UPoly:
    result = UPoly(base.p, (1,)) % mod
    base = base % mod
    while k:
        if k & 1:
            result = result * base % mod
        base = base * base % mod
        k >>= 1
    return result


_TERM = re.compile(r"^(?:(\d+)\*?)?(x)(?:\^(\d+))?$|^(\d+)$")


def parse_upoly(text: str, p: int) -> UPoly:
    """Parse text such as ``x^3 + 2*x + 1``; coefficients are reduced mod p."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    s = s.replace("-", "+-")
    coeffs: dict[int, int] = {}
    for raw in s.split("+"):
        if not raw:
            continue
        sign = 1
        while raw.startswith("-"):
            sign, raw = -sign, raw[1:]
        m = _TERM.match(raw)
        if not m:
            raise ParseError(f"cannot parse term {raw!r}")
        if m.group(4) is not None:
            k, c = 0, int(m.group(4))
        else:
            c = int(m.group(1)) if m.group(1) else 1
            k = int(m.group(3)) if m.group(3) else 1
        coeffs[k] = coeffs.get(k, 0) + sign * c
    top = max(coeffs, default=0)
    return UPoly(p, [coeffs.get(k, 0) for k in range(top + 1)])


# ---------------------------------------------------------------------------
# factorization


def _pth_root(f: UPoly) -> UPoly:
    # over a prime field a^(1/p) = a, so only the exponents shrink
    p = f.p
    return UPoly(p, f.coeffs[::p])


def squarefree_decomposition(f: UPoly) -> list[tuple[UPoly, int]]:
    """Return pairs (g, m) of square-free, pairwise coprime g with f = prod g^m."""
    f = f.monic()
    p = f.p
    out: list[tuple[UPoly, int]] = []
    if f.degree < 1:
        return out
    fd = f.derivative()
    if fd.is_zero():
        return [(g, m * p) for g, m in squarefree_decomposition(_pth_root(f))]
    c = upoly_gcd(f, fd)
    w = f // c
    i = 1
    while not w.is_one():
        y = upoly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if not c.is_one():
        out.extend((g, m * p) for g, m in squarefree_decomposition(_pth_root(c)))
    return out


def distinct_degree_factorization(f: UPoly) -> list[tuple[UPoly, int]]:
    """Split a monic square-free f into products of irreducibles of equal degree."""
    p = f.p
    x = UPoly.x(p)
    out = []
    rest = f
    h = x % rest
    d = 1
    while rest.degree >= 2 * d:
        h = powmod(h, p, rest)
        g = upoly_gcd(rest, h - x)
        if not g.is_one():
            out.append((g, d))
            rest = rest // g
            h = h % rest
        d += 1
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def equal_degree_factorization(f: UPoly, d: int, rng: random.Random | None = None) -> list[UPoly]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-d irreducibles."""
    if f.degree == d:
        return [f]
    p = f.p
    rng = rng or random.Random(0x5EED)
    while True:
        a = UPoly(p, [rng.randrange(p) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        if p == 2:
            # trace map GF(2^d) -> GF(2)
            t = a % f
            acc = t
            for _ in range(d - 1):
                t = t * t % f
                acc = acc + t
            b = acc
        else:
            b = powmod(a, (p**d - 1) // 2, f) - 1
        g = upoly_gcd(f, b)
        if 0 < g.degree < f.degree:
            return equal_degree_factorization(g, d, rng) + equal_degree_factorization(f // g, d, rng)


def is_irreducible(f: UPoly) -> bool:
    """Rabin's test."""
    n = f.degree
    if n < 1:
        return False
    f = f.monic()
    p = f.p
    x = UPoly.x(p)
    if not ((powmod(x, p**n, f) - x) % f).is_zero():
        return False
    for r in factor_int(n):
        h = (powmod(x, p ** (n // r), f) - x) % f
        if not upoly_gcd(f, h).is_one():
            return False
    return True


def upoly_factor(a: UPoly) -> list[tuple[UPoly, int]]:
    """Factor into monic irreducibles with multiplicities, sorted canonically.

    Non-monic input is normalized first; the unit factor is dropped.
    """
    if a.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    a = a.monic()
    counts: dict[UPoly, int] = {}
    for g, m in squarefree_decomposition(a):
        for h, d in distinct_degree_factorization(g):
            for irr in equal_degree_factorization(h, d):
                counts[irr] = counts.get(irr, 0) + m
    factors = sorted(counts.items(), key=lambda fm: fm[0].sort_key())
    for f, _ in factors:
        assert is_irreducible(f), f"factor {f} failed irreducibility check"
    return factors


# ---------------------------------------------------------------------------
# multiplicative order


def _irreducible_order(f: UPoly) -> int:
    p = f.p
    x = UPoly.x(p)
    e = p**f.degree - 1
    for r in factor_int(e):
        while e % r == 0 and powmod(x, e // r, f).is_one():
            e //= r
    return e


def upoly_order(a: UPoly) -> int:
    """Least s >= 1 such that a divides x^s - 1."""
    if a.is_zero():
        raise ZeroPolynomial("the zero polynomial has no order")
    if a.degree < 1:
        raise ConstantPolynomial("order is defined for polynomials of degree >= 1")
    if a.coeffs[0] == 0:
        raise NotCoprimeToX(f"{a} is divisible by x")
    p = a.p
    e = 1
    top = 1
    for f, m in upoly_factor(a):
        e = math.lcm(e, _irreducible_order(f))
        top = max(top, m)
    t = 0
    while p**t < top:
        t += 1
    return e * p**t

