"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents.  Instances are hash-consed, so two equal
ordinals built anywhere in the process are the same object; this keeps
comparisons of long walk traces cheap.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Ordinal", "OrdinalInterval", "OrdinalSyntaxError", "ZERO", "ONE", "OMEGA",
    "parse", "format_ordinal", "compare", "add", "classify", "fund_seq",
    "ladder_index", "omega_power", "left_subtract", "nat", "as_ordinal",
    "MAX_DEPTH",
]

MAX_DEPTH = 32

OrdLike = Union["Ordinal", int, str]


class OrdinalSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        self.text = text
        self.pos = pos
        super().__init__(f"{msg} at position {pos} in {text!r}")


class Ordinal:
    __slots__ = ("terms", "_nat", "_hash", "_depth", "__weakref__")

    _interned: dict = {}

    terms: tuple
    _nat: int | None

    def __new__(cls, terms=()):
        terms = tuple(terms)
        hit = cls._interned.get(terms)
        if hit is not None:
            return hit
        self = object.__new__(cls)
        self.terms = terms
        if not terms:
            self._nat = 0
        elif len(terms) == 1 and not terms[0][0].terms:
            self._nat = terms[0][1]
        else:
            self._nat = None
        self._hash = hash(terms)
        self._depth = 1 + max((e._depth for e, _ in terms), default=-1)
        return cls._interned.setdefault(terms, self)

    # -- basic predicates -------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return self._nat is not None

    @property
    def natural(self) -> int:
        if self._nat is None:
            raise ValueError(f"{self} is not a natural number")
        return self._nat

    @property
    def depth(self) -> int:
        return self._depth

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    @property
    def leading_exponent(self) -> "Ordinal":
        return self.terms[0][0] if self.terms else ZERO

    # -- ordering -----------------------------------------------------------
    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if isinstance(other, int) and not isinstance(other, bool):
            return self._nat == other
        return False  # interning: equal Ordinals are identical

    def __ne__(self, other):
        return not self.__eq__(other)

    def __lt__(self, other):
        return compare(self, as_ordinal(other)) < 0

    def __le__(self, other):
        return compare(self, as_ordinal(other)) <= 0

    def __gt__(self, other):
        return compare(self, as_ordinal(other)) > 0

    def __ge__(self, other):
        return compare(self, as_ordinal(other)) >= 0

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        return add(self, as_ordinal(other))

    def __radd__(self, other):
        return add(as_ordinal(other), self)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self):
        return format_ordinal(self)

    def __reduce__(self):
        return (parse, (format_ordinal(self),))


ZERO = Ordinal(())
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def nat(n: int) -> Ordinal:
    if n < 0:
        raise ValueError("ordinals are non-negative")
    return Ordinal(((ZERO, n),)) if n else ZERO


def as_ordinal(x: OrdLike) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return nat(x)
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"cannot interpret {x!r} as an ordinal")


def omega_power(exponent: OrdLike, coefficient: int = 1) -> Ordinal:
    """``omega**exponent * coefficient``."""
    if coefficient < 0:
        raise ValueError("negative coefficient")
    if coefficient == 0:
        return ZERO
    return Ordinal(((as_ordinal(exponent), coefficient),))


def _from_terms(terms) -> Ordinal:
    o = Ordinal(tuple(terms))
    if o.depth > MAX_DEPTH:
        raise ValueError(f"ordinal nesting depth {o.depth} exceeds {MAX_DEPTH}")
    return o


def compare(a: Ordinal, b: Ordinal) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if a is b:
        return 0
    if a._nat is not None and b._nat is not None:
        return (a._nat > b._nat) - (a._nat < b._nat)
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if ea is not eb:
            return compare(ea, eb)
        if ca != cb:
            return 1 if ca > cb else -1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero:
        return a
    if a.is_zero:
        return b
    if a._nat is not None and b._nat is not None:
        return nat(a._nat + b._nat)
    lead, coeff = b.terms[0]
    kept = []
    for e, c in a.terms:
        cmp = compare(e, lead)
        if cmp > 0:
            kept.append((e, c))
        elif cmp == 0:
            coeff += c
            break
        else:
            break
    return _from_terms(kept + [(lead, coeff)] + list(b.terms[1:]))


def left_subtract(b: Ordinal, a: Ordinal) -> Ordinal:
    """The unique ``c`` with ``a + c == b``; requires ``a <= b``."""
    if compare(a, b) > 0:
        raise ValueError(f"{a} > {b}")
    if a.is_zero:
        return b
    if a._nat is not None and b._nat is not None:
        return nat(b._nat - a._nat)
    # strip the common prefix; at the first difference b's term dominates
    i = 0
    while i < len(a.terms) and i < len(b.terms) and a.terms[i] == b.terms[i]:
        i += 1
    if i == len(b.terms):
        return ZERO
    if i == len(a.terms):
        # a is a proper prefix of b
        return _from_terms(b.terms[i:])
    eb, cb = b.terms[i]
    ea, ca = a.terms[i]
    if ea is eb:
        # same exponent, larger coefficient in b; the leftover of a is absorbed
        return _from_terms([(eb, cb - ca)] + list(b.terms[i + 1:]))
    return _from_terms(b.terms[i:])


def classify(a: Ordinal):
    """Return ``("zero", None)``, ``("successor", pred)`` or ``("limit", None)``."""
    if a.is_zero:
        return ("zero", None)
    if a.is_successor:
        return ("successor", predecessor(a))
    return ("limit", None)


@functools.lru_cache(maxsize=1 << 16)
def predecessor(a: Ordinal) -> Ordinal:
    if not a.is_successor:
        raise ValueError(f"{a} is not a successor")
    *head, (e, c) = a.terms
    if c > 1:
        head.append((e, c - 1))
    return Ordinal(tuple(head))


def _split_last(b: Ordinal):
    """Split ``b`` as ``rest + omega**e`` where ``e`` is the last exponent."""
    *head, (e, c) = b.terms
    if c > 1:
        head.append((e, c - 1))
    return Ordinal(tuple(head)), e


@functools.lru_cache(maxsize=1 << 16)
def fund_seq(b: Ordinal, n: int) -> Ordinal:
    """The ``n``-th element of the canonical fundamental sequence of limit ``b``.

    ``(c + w^(g+1))[n] = c + w^g * n`` and ``(c + w^L)[n] = c + w^(L[n])``.
    """
    if not b.is_limit:
        raise ValueError(f"fundamental sequences need a limit ordinal, got {b}")
    if n < 0:
        raise ValueError("negative index")
    rest, e = _split_last(b)
    if e.is_successor:
        return add(rest, omega_power(predecessor(e), n))
    return add(rest, omega_power(fund_seq(e, n)))


@functools.lru_cache(maxsize=1 << 16)
def ladder_index(b: Ordinal, a: Ordinal) -> int:
    """Least ``n`` with ``fund_seq(b, n) >= a``, for ``a < b``.

    Equivalently the number of canonical ladder points of ``b`` lying below
    ``a``.  Computed in closed form rather than by search.
    """
    if not b.is_limit:
        raise ValueError(f"{b} is not a limit")
    if compare(a, b) >= 0:
        raise ValueError(f"{a} is not below {b}")
    rest, e = _split_last(b)
    if compare(a, rest) <= 0:
        return 0
    r = left_subtract(a, rest)  # 0 < r < w^e
    er, cr = r.terms[0]
    if e.is_successor:
        g = predecessor(e)
        if er is g:
            return cr if len(r.terms) == 1 else cr + 1
        return 1  # r < w^g, so w^g * 1 already covers it
    # e is a limit: need w^(e[n]) >= r
    n0 = ladder_index(e, er)
    if fund_seq(e, n0) is er and not (cr == 1 and len(r.terms) == 1):
        return n0 + 1
    return n0


@dataclass(frozen=True)
class OrdinalInterval:
    """Half-open interval ``[lo, hi)``."""

    lo: Ordinal
    hi: Ordinal

    def __post_init__(self):
        if compare(self.lo, self.hi) > 0:
            raise ValueError(f"empty-reversed interval [{self.lo}, {self.hi})")

    @property
    def is_empty(self) -> bool:
        return self.lo is self.hi

    @property
    def is_infinite(self) -> bool:
        return compare(self.hi, add(self.lo, OMEGA)) >= 0

    def __contains__(self, x) -> bool:
        x = as_ordinal(x)
        return compare(self.lo, x) <= 0 and compare(x, self.hi) < 0

    def __str__(self):
        return f"[{self.lo}, {self.hi})"


def interval_is_infinite(lo: Ordinal, hi: Ordinal) -> bool:
    return compare(hi, add(lo, OMEGA)) >= 0


# ---------------------------------------------------------------------------
# notation

_TOKEN = re.compile(r"\s*(?:(\d+)|(w)|(\^)|(\*)|(\+)|(\()|(\)))")


def _tokenize(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise OrdinalSyntaxError(text, pos, f"unexpected character {text[pos]!r}")
        start = m.start(m.lastindex)
        kind = ("num", "w", "^", "*", "+", "(", ")")[m.lastindex - 1]
        yield kind, m.group(m.lastindex), start
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = list(_tokenize(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def take(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise OrdinalSyntaxError(self.text, tok[2], f"expected {kind!r}, found {what}")
        self.i += 1
        return tok

    def ord(self, depth=0) -> Ordinal:
        if depth > MAX_DEPTH:
            raise OrdinalSyntaxError(self.text, self.peek()[2], "nesting too deep")
        total = self.term(depth)
        while self.peek()[0] == "+":
            self.i += 1
            total = add(total, self.term(depth))
        return total

    def term(self, depth) -> Ordinal:
        kind, val, _ = self.peek()
        if kind == "num":
            self.i += 1
            return nat(int(val))
        self.take("w")
        exponent = ONE
        if self.peek()[0] == "^":
            self.i += 1
            if self.peek()[0] == "(":
                self.i += 1
                exponent = self.ord(depth + 1)
                self.take(")")
            else:
                exponent = nat(int(self.take("num")[1]))
        coeff = 1
        if self.peek()[0] == "*":
            self.i += 1
            coeff = int(self.take("num")[1])
        return omega_power(exponent, coeff)


def parse(text: str) -> Ordinal:
    """Parse ordinal notation such as ``"w^(w+1)*2+w^3+7"``.

    Sums are evaluated with ordinal addition, so non-canonical input like
    ``"3+w"`` normalizes to ``w``.
    """
    p = _Parser(text)
    if p.peek()[0] == "eof":
        raise OrdinalSyntaxError(text, 0, "empty ordinal")
    result = p.ord()
    tok = p.peek()
    if tok[0] != "eof":
        raise OrdinalSyntaxError(text, tok[2], f"trailing input {tok[1]!r}")
    if result.depth > MAX_DEPTH:
        raise OrdinalSyntaxError(text, 0, "nesting too deep")
    return result


def format_ordinal(a: Ordinal) -> str:
    if a._nat is not None:
        return str(a._nat)
    parts = []
    for e, c in a.terms:
        if e.is_zero:
            parts.append(str(c))
            continue
        if e is ONE:
            s = "w"
        elif e._nat is not None:
            s = f"w^{e._nat}"
        else:
            s = f"w^({format_ordinal(e)})"
        if c != 1:
            s += f"*{c}"
        parts.append(s)
    return "+".join(parts)
