"""Reduced multivariate polynomials over GF(p).

Every function GF(p)^n -> GF(p) has exactly one polynomial representative
in which each exponent is below p.  :class:`MPoly` always stores that
representative, so equality of polynomials is equality of functions and the
variables occurring in the stored terms are exactly the variables the
function depends on.

Variables are numbered from 1 (``x1 .. xn``) everywhere in this package;
exponent tuples are 0-based positions, ``exps[i - 1]`` belonging to ``xi``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ArityMismatch, IncompleteTable, ParseError, WrongCharacteristic
from .gf import FieldElement, check_modulus

Exps = tuple[int, ...]


def _reduce_exponent(e: int, p: int) -> int:
    # x^p = x on GF(p); x^0 stays the constant 1
    if e < p:
        return e
    return (e - 1) % (p - 1) + 1


def mp_reduce(p: int, n: int, raw: Iterable[tuple[Sequence[int], int]] | Mapping) -> dict[Exps, int]:
    """Fermat-reduce a raw term list into a canonical term map.

    ``raw`` may repeat exponent tuples and carry exponents >= p or
    coefficients outside [0, p); the result has neither.
    """
    if isinstance(raw, Mapping):
        raw = raw.items()
    terms: dict[Exps, int] = {}
    for exps, c in raw:
        if len(exps) != n:
            raise ArityMismatch(f"exponent tuple {tuple(exps)} has length {len(exps)}, expected {n}")
        key = tuple(_reduce_exponent(int(e), p) for e in exps)
        terms[key] = (terms.get(key, 0) + int(c)) % p
    return {k: v for k, v in terms.items() if v}


def _term_key(exps: Exps) -> tuple:
    # graded lexicographic, largest first
    return (-sum(exps), tuple(-e for e in exps))


class MPoly:
    """A reduced polynomial in ``n`` variables over GF(p)."""

    __slots__ = ("p", "n", "_terms", "_hash")

    def __init__(self, p: int, n: int, terms: Iterable | Mapping = ()):
        check_modulus(p)
        if n < 0:
            raise ArityMismatch("variable count must be nonnegative")
        self.p = p
        self.n = n
        reduced = mp_reduce(p, n, terms)
        self._terms = {k: reduced[k] for k in sorted(reduced, key=_term_key)}
        self._hash = None

    # constructors ---------------------------------------------------------

    @classmethod
    def const(cls, p: int, n: int, c: int) -> MPoly:
        return cls(p, n, [((0,) * n, c)])

    @classmethod
    def var(cls, p: int, n: int, i: int) -> MPoly:
        if not 1 <= i <= n:
            raise ArityMismatch(f"variable x{i} out of range for n = {n}")
        exps = [0] * n
        exps[i - 1] = 1
        return cls(p, n, [(tuple(exps), 1)])

    @classmethod
    def zero(cls, p: int, n: int) -> MPoly:
        return cls(p, n)

    # basic queries --------------------------------------------------------

    @property
    def terms(self) -> dict[Exps, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.n, 0)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def support(self) -> frozenset[int]:
        return mp_support(self)

    def __len__(self):
        return len(self._terms)

    # arithmetic -----------------------------------------------------------

    def _other(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.p != self.p or other.n != self.n:
                raise ArityMismatch(
                    f"GF({self.p}) in {self.n} vars vs GF({other.p}) in {other.n} vars"
                )
            return other
        if isinstance(other, FieldElement):
            other = other.value
        if isinstance(other, int):
            return MPoly.const(self.p, self.n, other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return MPoly(self.p, self.n, itertools.chain(self._terms.items(), o._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.p, self.n, [(e, -c) for e, c in self._terms.items()])

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
        raw = [
            (tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
            for e1, c1 in self._terms.items()
            for e2, c2 in o._terms.items()
        ]
        return MPoly(self.p, self.n, raw)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.p, self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.p == other.p and self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.n, frozenset(self._terms.items())))
        return self._hash

    def __call__(self, *point) -> int:
        if len(point) == 1 and isinstance(point[0], (tuple, list, np.ndarray)):
            point = point[0]
        return mp_eval(self, point)

    def __repr__(self):
        return f"MPoly(GF({self.p}), n={self.n}, {self})"

    def __str__(self):
        return format_mpoly(self)


# ---------------------------------------------------------------------------
# evaluation


def mp_eval(f: MPoly, point: Sequence) -> int:
    if len(point) != f.n:
        raise ArityMismatch(f"point has {len(point)} coordinates, polynomial has {f.n} variables")
    p = f.p
    xs = [int(v) % p for v in point]
    acc = 0
    for exps, c in f._terms.items():
        t = c
        for x, e in zip(xs, exps):
            if e:
                t = t * pow(x, e, p) % p
                if not t:
                    break
        acc += t
    return acc % p


def mp_eval_many(f: MPoly, states: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` at every row of an integer array of shape (N, n)."""
    states = np.asarray(states, dtype=np.int64)
    if states.ndim != 2 or states.shape[1] != f.n:
        raise ArityMismatch(f"state array shape {states.shape} incompatible with {f.n} variables")
    p = f.p
    out = np.zeros(states.shape[0], dtype=np.int64)
    powers: dict[tuple[int, int], np.ndarray] = {}
    for exps, c in f._terms.items():
        t = np.full(states.shape[0], c, dtype=np.int64)
        for i, e in enumerate(exps):
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = np.ones_like(out)
                    for _ in range(e):
                        powers[key] = powers[key] * states[:, i] % p
                t = t * powers[key] % p
        out = (out + t) % p
    return out


def mp_support(f: MPoly) -> frozenset[int]:
    """1-based indices of the variables occurring in the reduced form."""
    return frozenset(i + 1 for exps in f._terms for i, e in enumerate(exps) if e)


# ---------------------------------------------------------------------------
# interpolation


def all_points(p: int, n: int) -> Iterable[tuple[int, ...]]:
    """All of GF(p)^n in little-endian order (x1 varies fastest)."""
    for rev in itertools.product(range(p), repeat=n):
        yield rev[::-1]


def _indicator_coeffs(p: int, c: int) -> np.ndarray:
    """Coefficients of 1 - (x - c)^(p-1), lowest degree first."""
    out = np.zeros(p, dtype=np.int64)
    for k in range(p):
        out[k] = math.comb(p - 1, k) * pow(-c, p - 1 - k, p) % p
    out = (-out) % p
    out[0] = (out[0] + 1) % p
    return out


def mp_interpolate(p: int, n: int, table: Mapping[tuple, int] | Sequence[int], method: str = "sum") -> MPoly:
    """Reduced polynomial agreeing with ``table`` on all of GF(p)^n.

    ``table`` is either a mapping from points to values or a flat sequence of
    p^n values in little-endian enumeration order.

    ``method="sum"`` builds sum_c g(c) * prod_i (1 - (x_i - c_i)^(p-1)) term by
    term.  ``method="axis"`` evaluates the same sum one coordinate at a time,
    which is needed once p^n reaches the thousands.
    """
    check_modulus(p)
    size = p**n
    if isinstance(table, Mapping):
        values = np.zeros(size, dtype=np.int64)
        missing = 0
        for idx, pt in enumerate(all_points(p, n)):
            v = table.get(pt)
            if v is None:
                v = table.get(tuple(FieldElement(x, p) for x in pt))
            if v is None:
                missing += 1
                continue
            values[idx] = int(v) % p
        if missing:
            raise IncompleteTable(f"table is missing {missing} of {size} points")
    else:
        values = np.asarray([int(v) for v in table], dtype=np.int64) % p
        if values.shape[0] != size:
            raise IncompleteTable(f"table has {values.shape[0]} entries, expected {size}")

    if method == "sum":
        coeffs = np.zeros((p,) * n, dtype=np.int64)
        ind = [_indicator_coeffs(p, c) for c in range(p)]
        for idx, pt in enumerate(all_points(p, n)):
            g = values[idx]
            if not g:
                continue
            prod = np.array(g, dtype=np.int64)
            for c in pt:
                prod = np.multiply.outer(prod, ind[c]) % p
            coeffs = (coeffs + prod) % p
    elif method == "axis":
        # values indexed [c1, ..., cn]; little-endian order means reversed C order
        grid = values.reshape((p,) * n).transpose(tuple(range(n - 1, -1, -1)))
        u = np.stack([_indicator_coeffs(p, c) for c in range(p)], axis=1)  # u[k, c]
        coeffs = grid
        for axis in range(n):
            coeffs = np.moveaxis(np.tensordot(u, coeffs, axes=([1], [axis])) % p, 0, axis)
    else:
        raise ValueError(f"unknown interpolation method {method!r}")

    nz = np.argwhere(coeffs)
    return MPoly(p, n, [(tuple(int(e) for e in ex), int(coeffs[tuple(ex)])) for ex in nz])


def mp_table(f: MPoly) -> np.ndarray:
    """Values of ``f`` on GF(p)^n in little-endian order."""
    pts = np.array(list(all_points(f.p, f.n)), dtype=np.int64).reshape(f.p**f.n, f.n)
    return mp_eval_many(f, pts)


# ---------------------------------------------------------------------------
# Boolean expressions


class BoolExpr:
    """Node of a Boolean expression tree; calling it evaluates with Python bools."""

    def __call__(self, point: Sequence) -> bool:
        raise NotImplementedError

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __xor__(self, other):
        return Xor(self, other)

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class Var(BoolExpr):
    index: int

    def __call__(self, point):
        return bool(point[self.index - 1])


@dataclass(frozen=True)
class Const(BoolExpr):
    value: bool

    def __call__(self, point):
        return bool(self.value)


@dataclass(frozen=True)
class Not(BoolExpr):
    arg: BoolExpr

    def __call__(self, point):
        return not self.arg(point)


@dataclass(frozen=True)
class And(BoolExpr):
    left: BoolExpr
    right: BoolExpr

    def __call__(self, point):
        return self.left(point) and self.right(point)


@dataclass(frozen=True)
class Or(BoolExpr):
    left: BoolExpr
    right: BoolExpr

    def __call__(self, point):
        return self.left(point) or self.right(point)


@dataclass(frozen=True)
class Xor(BoolExpr):
    left: BoolExpr
    right: BoolExpr

    def __call__(self, point):
        return self.left(point) != self.right(point)


def bool_to_poly(expr: BoolExpr, n: int, p: int = 2) -> MPoly:
    """Translate a Boolean expression: NOT x = x + 1, AND = product,
    XOR = sum, OR = x + y + xy."""
    if p != 2:
        raise WrongCharacteristic(f"Boolean translation needs GF(2), got GF({p})")

    def go(e: BoolExpr) -> MPoly:
        if isinstance(e, Var):
            return MPoly.var(2, n, e.index)
        if isinstance(e, Const):
            return MPoly.const(2, n, int(e.value))
        if isinstance(e, Not):
            return go(e.arg) + 1
        if isinstance(e, And):
            return go(e.left) * go(e.right)
        if isinstance(e, Xor):
            return go(e.left) + go(e.right)
        if isinstance(e, Or):
            a, b = go(e.left), go(e.right)
            return a + b + a * b
        raise TypeError(f"not a Boolean expression: {e!r}")

    return go(expr)


# ---------------------------------------------------------------------------
# text grammar

_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(\S))")


def _tokenize(text: str) -> list[tuple[str, object]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            toks.append(("var", int(m.group(2))))
        else:
            toks.append(("op", m.group(3)))
        pos = m.end()
    toks.append(("end", None))
    return toks


class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n
        self.text = text

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op: str):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def check_var(self, i: int):
        if not 1 <= i <= self.n:
            raise ParseError(f"variable x{i} out of range 1..{self.n}")

    def finish(self):
        if self.peek()[0] != "end":
            raise ParseError(f"unexpected {self.peek()[1]!r} in {self.text!r}")


class _PolyParser(_Parser):
    def __init__(self, text, n, p):
        super().__init__(text, n)
        self.p = p

    def expr(self) -> MPoly:
        # summands are collected and reduced once; repeated + would be quadratic
        parts = [self.term()]
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            parts.append(t if op == "+" else -t)
        if len(parts) == 1:
            return parts[0]
        return MPoly(self.p, self.n, itertools.chain.from_iterable(t._terms.items() for t in parts))

    def term(self) -> MPoly:
        factors = [self.factor()]
        while self.peek() == ("op", "*"):
            self.take()
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        if all(len(f) == 1 for f in factors):
            # product of monomials: add exponents directly
            exps = [0] * self.n
            coeff = 1
            for f in factors:
                (e, c), = f.items()
                coeff *= c
                exps = [a + b for a, b in zip(exps, e)]
            return MPoly(self.p, self.n, [(exps, coeff)])
        acc = factors[0]
        for f in factors[1:]:
            acc = acc * f
        return acc

    def factor(self) -> MPoly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, k = self.take()
            if kind != "int":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            if len(base) == 1:
                (e, c), = base.items()
                return MPoly(self.p, self.n, [([a * k for a in e], pow(c, k, self.p))]) if k else MPoly.const(self.p, self.n, 1)
            base = base**k
        return base

    def atom(self) -> MPoly:
        kind, val = self.take()
        if kind == "int":
            return MPoly.const(self.p, self.n, val)
        if kind == "var":
            self.check_var(val)
            return MPoly.var(self.p, self.n, val)
        if (kind, val) == ("op", "("):
            e = self.expr()
            self.expect(")")
            return e
        what = "end of input" if val is None else repr(val)
        raise ParseError(f"unexpected {what} in {self.text!r}")


class _BoolParser(_Parser):
    # precedence: | lowest, then ^, then &, then unary !
    def expr(self) -> BoolExpr:
        acc = self.xor()
        while self.peek() == ("op", "|"):
            self.take()
            acc = Or(acc, self.xor())
        return acc

    def xor(self) -> BoolExpr:
        acc = self.conj()
        while self.peek() == ("op", "^"):
            self.take()
            acc = Xor(acc, self.conj())
        return acc

    def conj(self) -> BoolExpr:
        acc = self.unary()
        while self.peek() == ("op", "&"):
            self.take()
            acc = And(acc, self.unary())
        return acc

    def unary(self) -> BoolExpr:
        if self.peek() == ("op", "!"):
            self.take()
            return Not(self.unary())
        kind, val = self.take()
        if kind == "int":
            if val not in (0, 1):
                raise ParseError(f"Boolean constant must be 0 or 1, got {val}")
            return Const(bool(val))
        if kind == "var":
            self.check_var(val)
            return Var(val)
        if (kind, val) == ("op", "("):
            e = self.expr()
            self.expect(")")
            return e
        what = "end of input" if val is None else repr(val)
        raise ParseError(f"unexpected {what} in {self.text!r}")


def parse_poly(text: str, p: int, n: int) -> MPoly:
    """Parse ``x1*x2^2 + 2*x3 - 1`` style text into a reduced polynomial."""
    parser = _PolyParser(text, n, p)
    out = parser.expr()
    parser.finish()
    return out


def parse_bool(text: str, n: int) -> BoolExpr:
    """Parse ``x1 & !(x2 | x3) ^ x4`` style text."""
    parser = _BoolParser(text, n)
    out = parser.expr()
    parser.finish()
    return out


def format_mpoly(f: MPoly) -> str:
    if not f._terms:
        return "0"
    parts = []
    for exps, c in f._terms.items():
        factors = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exps) if e]
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)
