"""C-sequences: a cofinal set ``C_b`` attached to every ordinal ``b``.

Three rules are supported:

``canonical``
    ``C_b`` is the canonical fundamental sequence of a limit ``b``.
``full``
    ``C_b = b``; every walk is a single step.
``table``
    canonical, except at finitely many ordinals whose set is given
    explicitly.  For a limit ``b`` the listed points form an initial run and
    the canonical ladder above the largest listed point completes it, so the
    set stays cofinal.  The override ``"full"`` makes ``C_b = b`` at that
    single ordinal.

Successors always get ``C_(a+1) = {a}`` unless a table entry says otherwise.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Mapping

from .ordcore import (
    ZERO, Ordinal, as_ordinal, compare, fund_seq, ladder_index, predecessor,
    format_ordinal,
)

__all__ = ["CSystem", "CANONICAL", "FULL", "Ladder", "Whole"]


@dataclass(frozen=True)
class Ladder:
    """``C_b`` as an increasing omega-sequence (or a finite set for successors).

    ``head`` is an explicit finite increasing prefix; when ``tail_of`` is set
    the canonical ladder of that ordinal continues above ``head``.
    """

    head: tuple = ()
    tail_of: Ordinal | None = None
    tail_start: int = 0

    def point(self, j: int) -> Ordinal:
        if j < len(self.head):
            return self.head[j]
        if self.tail_of is None:
            raise IndexError(j)
        return fund_seq(self.tail_of, self.tail_start + j - len(self.head))

    def count_below(self, a: Ordinal) -> int:
        """Number of points below ``a`` (finite for ladders)."""
        k = 0
        while k < len(self.head) and compare(self.head[k], a) < 0:
            k += 1
        if k < len(self.head) or self.tail_of is None:
            return k
        if compare(a, self.tail_of) >= 0:
            raise ValueError("ladder is cofinal in its ordinal; query beyond it")
        return len(self.head) + max(0, ladder_index(self.tail_of, a) - self.tail_start)

    @property
    def finite(self) -> bool:
        return self.tail_of is None


@dataclass(frozen=True)
class Whole:
    """``C_b = b``."""

    of: Ordinal


@dataclass(frozen=True)
class CSystem:
    variant: str = "canonical"
    overrides: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.variant not in ("canonical", "full", "table"):
            raise ValueError(f"unknown C-system variant {self.variant!r}")
        if self.variant != "table" and self.overrides:
            raise ValueError("overrides are only allowed for the table variant")
        clean = {}
        for key, pts in dict(self.overrides).items():
            b = as_ordinal(key)
            if pts == "full":
                if b.is_zero:
                    raise ValueError("C_0 must be empty")
                clean[b] = "full"
                continue
            pts = tuple(as_ordinal(p) for p in pts)
            for x, y in zip(pts, pts[1:]):
                if compare(x, y) >= 0:
                    raise ValueError(f"override for {b} is not strictly increasing")
            if pts and compare(pts[-1], b) >= 0:
                raise ValueError(f"override for {b} contains a point >= {b}")
            if b.is_zero:
                if pts:
                    raise ValueError("C_0 must be empty")
            elif b.is_successor and (not pts or pts[-1] is not predecessor(b)):
                raise ValueError(f"override for successor {b} must contain its predecessor")
            clean[b] = pts
        object.__setattr__(self, "overrides", clean)

    def __hash__(self):
        return hash((self.variant, tuple(sorted((format_ordinal(k), str(v)) for k, v in self.overrides.items()))))

    # -- the set C_b ------------------------------------------------------
    def ladder(self, b: Ordinal):
        """The set ``C_b`` as a :class:`Ladder` or :class:`Whole`."""
        if self.variant == "full":
            return Whole(b)
        ov = self.overrides.get(b) if self.overrides else None
        if ov == "full":
            return Whole(b)
        if ov is not None:
            if not b.is_limit:
                return Ladder(head=ov)
            return Ladder(head=ov, tail_of=b, tail_start=_first_above(b, ov[-1]) if ov else 0)
        if b.is_zero:
            return Ladder()
        if b.is_successor:
            return Ladder(head=(predecessor(b),))
        return Ladder(tail_of=b)

    def is_whole(self, b: Ordinal) -> bool:
        return isinstance(self.ladder(b), Whole)

    # -- queries used by walks ------------------------------------------------
    def min_above(self, b, a) -> Ordinal:
        """``min(C_b \\ a)`` for ``a < b``."""
        b, a = as_ordinal(b), as_ordinal(a)
        if compare(a, b) >= 0:
            raise ValueError(f"min_above needs a < b, got a={a}, b={b}")
        lad = self.ladder(b)
        if isinstance(lad, Whole):
            return a
        return lad.point(lad.count_below(a))

    def otp_below(self, b, a):
        """Order type of ``C_b ∩ a``: an ``int`` for ladders, an Ordinal otherwise."""
        b, a = as_ordinal(b), as_ordinal(a)
        if compare(a, b) > 0:
            raise ValueError(f"otp_below needs a <= b, got a={a}, b={b}")
        lad = self.ladder(b)
        if isinstance(lad, Whole):
            return a.natural if a.is_finite else a
        if a is b:
            if lad.finite:
                return len(lad.head)
            raise ValueError(f"C_{b} has order type omega")
        return lad.count_below(a)

    def max_below(self, b, a) -> Ordinal:
        """``max(C_b ∩ a)`` with ``max(∅) = 0``."""
        b, a = as_ordinal(b), as_ordinal(a)
        if compare(a, b) > 0:
            raise ValueError(f"max_below needs a <= b, got a={a}, b={b}")
        lad = self.ladder(b)
        if isinstance(lad, Whole):
            if a.is_zero:
                return ZERO
            if a.is_limit:
                raise ValueError(f"C_{b} ∩ {a} has no maximum")
            return predecessor(a)
        if a is b and not lad.finite:
            raise ValueError(f"C_{b} has no maximum")
        k = len(lad.head) if a is b else lad.count_below(a)
        return lad.point(k - 1) if k else ZERO

    def sup_below_is(self, b, a) -> bool:
        """Whether ``sup(C_b ∩ a) == a`` for nonzero ``a``: the ladder accumulates at ``a``."""
        b, a = as_ordinal(b), as_ordinal(a)
        if a.is_zero:
            return False
        lad = self.ladder(b)
        return isinstance(lad, Whole) and a.is_limit

    def to_json(self):
        out = {"variant": self.variant}
        if self.variant == "table":
            out["overrides"] = {
                format_ordinal(k): (v if v == "full" else [format_ordinal(p) for p in v])
                for k, v in sorted(self.overrides.items(), key=lambda kv: functools.cmp_to_key(compare)(kv[0]))
            }
        return out

    @classmethod
    def from_json(cls, data) -> "CSystem":
        if isinstance(data, str):
            if data in ("canonical", "full"):
                return cls(data)
            raise ValueError(f"unknown C-system {data!r}")
        return cls(data.get("variant", "canonical"), data.get("overrides", {}) or {})


def _first_above(b: Ordinal, x: Ordinal) -> int:
    """Least ``n`` with ``fund_seq(b, n) > x``."""
    n = ladder_index(b, x)
    if fund_seq(b, n) is x:
        n += 1
    return n


CANONICAL = CSystem("canonical")
FULL = CSystem("full")
