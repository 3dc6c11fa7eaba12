"""Line-oriented text format for systems.

Blank lines and ``#`` comments are ignored.  Directives::

    field 2
    vars 4
    names a b c d                    # optional labels
    local 1 = x2 + x3 + x4           # polynomial
    local 2 = bool x1 & !x2          # Boolean expression (field 2 only)
    local 3 = table 0 1 1 0 ...      # p^n values, x1 varying fastest
    mode parallel | mode word (2,1,3,4)
    init (1,0,0,0)                   # optional start configuration

    stochastic sfds                  # random update mode each step
    member 1/2 word (2,1,3,4)
    member 1/2 parallel

    stochastic pfds                  # random local function per variable
    choice 1 3/4 = x1 + x2
    choice 1 1/4 = x1

Probabilities accept ``1/2`` or ``0.5``.  In a pfds block a variable is
described either by one ``local`` line (probability 1) or by ``choice`` lines.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import FDSError, InvalidModulus, ParseError, SpecSemanticError, SpecSyntaxError
from .gf import check_modulus
from .multipoly import MPoly, bool_to_poly, format_mpoly, mp_interpolate, parse_bool, parse_poly
from .stochastic import PFDS, SFDS
from .system import Mode, System, build_system, check_word, is_parallel


@dataclass(frozen=True)
class SpecFile:
    """Parsed model description.

    ``kind`` is ``"system"``, ``"sfds"`` or ``"pfds"``.  Deterministic and
    sfds specs keep their locals in ``locals``; pfds specs keep per-variable
    (function, probability) lists in ``choices`` and leave ``locals`` empty.
    """

    p: int
    n: int
    kind: str = "system"
    locals: tuple[MPoly, ...] = ()
    mode: Mode = "parallel"
    members: tuple[tuple[Mode, Fraction], ...] = ()
    choices: tuple[tuple[tuple[MPoly, Fraction], ...], ...] = ()
    init: tuple[int, ...] | None = None
    names: tuple[str, ...] | None = None

    def system(self) -> System:
        if self.kind == "pfds":
            raise SpecSemanticError("a pfds spec has no single deterministic system")
        return build_system(self.p, self.locals)

    def build(self) -> System | SFDS | PFDS:
        """The model: a System (use ``mode`` to iterate it), an SFDS or a PFDS."""
        if self.kind == "system":
            return self.system()
        if self.kind == "sfds":
            S = self.system()
            return SFDS(tuple((S, m, q) for m, q in self.members))
        return PFDS(self.p, self.n, self.choices, self.mode)

    def label(self, i: int) -> str:
        return self.names[i - 1] if self.names else f"x{i}"


def _fmt_mode(mode: Mode) -> str:
    return "parallel" if is_parallel(mode) else "word (" + ",".join(map(str, mode)) + ")"


def _fmt_prob(q: Fraction) -> str:
    return str(Fraction(q))


def format_spec(spec: SpecFile) -> str:
    """Canonical text; every local is written as a reduced polynomial."""
    out = [f"field {spec.p}", f"vars {spec.n}"]
    if spec.names:
        out.append("names " + " ".join(spec.names))
    for i, f in enumerate(spec.locals, start=1):
        out.append(f"local {i} = {format_mpoly(f)}")
    out.append("mode " + _fmt_mode(spec.mode))
    if spec.init is not None:
        out.append("init (" + ",".join(map(str, spec.init)) + ")")
    if spec.kind == "sfds":
        out.append("stochastic sfds")
        out += [f"member {_fmt_prob(q)} {_fmt_mode(m)}" for m, q in spec.members]
    elif spec.kind == "pfds":
        out.append("stochastic pfds")
        for i, opts in enumerate(spec.choices, start=1):
            out += [f"choice {i} {_fmt_prob(q)} = {format_mpoly(f)}" for f, q in opts]
    return "\n".join(out) + "\n"


_TUPLE = re.compile(r"^\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)$")


def parse_tuple(text: str) -> tuple[int, ...]:
    """``"(2,1,3,4)"`` -> ``(2, 1, 3, 4)``; parentheses optional."""
    t = text.strip()
    if not t.startswith("("):
        t = "(" + t + ")"
    m = _TUPLE.match(t)
    if not m:
        raise ValueError(f"expected a tuple like (1,0,1), got {text!r}")
    return tuple(int(v) for v in m.group(1).split(","))


def parse_mode(text: str) -> Mode:
    t = text.strip()
    if t == "parallel":
        return "parallel"
    if t.startswith("word"):
        return parse_tuple(t[4:])
    raise ValueError(f"expected 'parallel' or 'word (...)', got {text!r}")


def _parse_prob(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad probability {text!r}") from None


class _Reader:
    def __init__(self):
        self.p: int | None = None
        self.n: int | None = None

    def need_header(self, line: int):
        if self.p is None or self.n is None:
            raise SpecSyntaxError(line, "'field' and 'vars' must come before functions")

    def function(self, rhs: str, line: int) -> MPoly:
        self.need_header(line)
        rhs = rhs.strip()
        try:
            if rhs.startswith("bool ") or rhs == "bool":
                if self.p != 2:
                    raise SpecSemanticError(f"line {line}: Boolean expressions need field 2")
                return bool_to_poly(parse_bool(rhs[4:], self.n), self.n, 2)
            if rhs.startswith("table ") or rhs == "table":
                values = rhs[5:].split()
                if not all(v.isdigit() for v in values):
                    raise SpecSyntaxError(line, "table entries must be nonnegative integers")
                if len(values) != self.p**self.n:
                    raise SpecSyntaxError(line, f"table has {len(values)} entries, expected {self.p ** self.n}")
                if any(int(v) >= self.p for v in values):
                    raise SpecSemanticError(f"line {line}: table entries must lie in 0..{self.p - 1}")
                return mp_interpolate(self.p, self.n, [int(v) for v in values])
            return parse_poly(rhs, self.p, self.n)
        except ParseError as e:
            raise SpecSyntaxError(line, str(e)) from None

    def index(self, text: str, line: int) -> int:
        if not text.isdigit():
            raise SpecSyntaxError(line, f"expected a variable index, got {text!r}")
        i = int(text)
        if not 1 <= i <= self.n:
            raise SpecSemanticError(f"line {line}: variable index {i} outside 1..{self.n}")
        return i


_DIRECTIVE = re.compile(r"^(\w+)\s*(.*)$")
_LOCAL = re.compile(r"^(\S+)\s*=\s*(.*)$")
_CHOICE = re.compile(r"^(\S+)\s+(\S+)\s*=\s*(.*)$")
_MEMBER = re.compile(r"^(\S+)\s+(.*)$")


def parse_spec(text: str) -> SpecFile:
    """Parse and validate a spec; see the module docstring for the grammar."""
    r = _Reader()
    kind = "system"
    names = None
    mode: Mode = "parallel"
    init = None
    locals_: dict[int, MPoly] = {}
    members: list[tuple[Mode, Fraction]] = []
    choices: dict[int, list[tuple[MPoly, Fraction]]] = {}
    seen: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        m = _DIRECTIVE.match(body)
        if not m:
            raise SpecSyntaxError(lineno, f"cannot read {body!r}")
        key, rest = m.group(1), m.group(2).strip()

        if key in ("field", "vars", "names", "mode", "init", "stochastic"):
            if key in seen:
                raise SpecSemanticError(f"line {lineno}: duplicate '{key}' directive")
            seen.add(key)

        if key == "field":
            if not rest.isdigit():
                raise SpecSyntaxError(lineno, f"field needs an integer, got {rest!r}")
            try:
                r.p = check_modulus(int(rest))
            except InvalidModulus as e:
                raise SpecSemanticError(f"line {lineno}: {e}") from None
        elif key == "vars":
            if not rest.isdigit() or int(rest) < 1:
                raise SpecSyntaxError(lineno, f"vars needs a positive integer, got {rest!r}")
            r.n = int(rest)
        elif key == "names":
            r.need_header(lineno)
            names = tuple(rest.split())
            if len(names) != r.n or len(set(names)) != r.n:
                raise SpecSemanticError(f"line {lineno}: need {r.n} distinct names")
        elif key == "local":
            r.need_header(lineno)
            lm = _LOCAL.match(rest)
            if not lm:
                raise SpecSyntaxError(lineno, "expected 'local i = ...'")
            i = r.index(lm.group(1), lineno)
            if i in locals_:
                raise SpecSemanticError(f"line {lineno}: local {i} defined twice")
            locals_[i] = r.function(lm.group(2), lineno)
        elif key == "mode":
            try:
                mode = parse_mode(rest)
            except ValueError as e:
                raise SpecSyntaxError(lineno, str(e)) from None
        elif key == "init":
            try:
                init = parse_tuple(rest)
            except ValueError as e:
                raise SpecSyntaxError(lineno, str(e)) from None
        elif key == "stochastic":
            if rest not in ("sfds", "pfds"):
                raise SpecSyntaxError(lineno, f"expected 'sfds' or 'pfds', got {rest!r}")
            kind = rest
        elif key == "member":
            if kind != "sfds":
                raise SpecSyntaxError(lineno, "'member' only allowed after 'stochastic sfds'")
            mm = _MEMBER.match(rest)
            try:
                if not mm:
                    raise ValueError("expected 'member <prob> parallel|word (...)'")
                members.append((parse_mode(mm.group(2)), _parse_prob(mm.group(1))))
            except ValueError as e:
                raise SpecSyntaxError(lineno, str(e)) from None
        elif key == "choice":
            if kind != "pfds":
                raise SpecSyntaxError(lineno, "'choice' only allowed after 'stochastic pfds'")
            r.need_header(lineno)
            cm = _CHOICE.match(rest)
            if not cm:
                raise SpecSyntaxError(lineno, "expected 'choice i <prob> = ...'")
            i = r.index(cm.group(1), lineno)
            try:
                q = _parse_prob(cm.group(2))
            except ValueError as e:
                raise SpecSyntaxError(lineno, str(e)) from None
            choices.setdefault(i, []).append((r.function(cm.group(3), lineno), q))
        else:
            raise SpecSyntaxError(lineno, f"unknown directive {key!r}")

    if r.p is None or r.n is None:
        raise SpecSemanticError("spec needs 'field' and 'vars'")
    p, n = r.p, r.n

    try:
        if not is_parallel(mode):
            mode = check_word(mode, n)
        for m_, _ in members:
            if not is_parallel(m_):
                check_word(m_, n)
    except FDSError as e:
        raise SpecSemanticError(str(e)) from None
    if init is not None and (len(init) != n or any(c >= p for c in init)):
        raise SpecSemanticError(f"init {init} is not a configuration of GF({p})^{n}")

    if kind == "pfds":
        both = sorted(set(locals_) & set(choices))
        if both:
            raise SpecSemanticError(f"variable {both[0]} has both a local and choices")
        missing = [i for i in range(1, n + 1) if i not in locals_ and i not in choices]
        if missing:
            raise SpecSemanticError(f"no local function for variable {missing[0]}")
        table = tuple(
            tuple(choices[i]) if i in choices else ((locals_[i], Fraction(1)),) for i in range(1, n + 1)
        )
        spec = SpecFile(p, n, "pfds", (), mode, (), table, init, names)
    else:
        missing = [i for i in range(1, n + 1) if i not in locals_]
        if missing:
            raise SpecSemanticError(f"no local function for variable {missing[0]}")
        if kind == "sfds" and not members:
            raise SpecSemanticError("sfds block has no members")
        spec = SpecFile(p, n, kind, tuple(locals_[i] for i in range(1, n + 1)), mode, tuple(members), (), init, names)
    spec.build()  # probability sums and arities
    return spec


def load_model(text: str):
    """Parse ``text`` and return the System, SFDS or PFDS it describes."""
    return parse_spec(text).build()


def spec_from_system(S: System, mode: Mode = "parallel", init: Sequence[int] | None = None, names=None) -> SpecFile:
    return SpecFile(S.p, S.n, "system", S.locals, mode, init=None if init is None else tuple(init), names=names)
