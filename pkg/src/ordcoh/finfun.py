"""Finitely presented functions from an ordinal into a f.g. abelian group.

A function is stored in one of four body forms:

* :class:`Piecewise` -- constant on consecutive half-open pieces;
* :class:`FiniteSupport` -- zero outside finitely many points;
* :class:`RhoRule` -- ``embed(rho_kind(xi, top)) + offset + patch(xi)``;
* :class:`LazySum` -- an integer combination of rho terms plus a piecewise rest.

Sums try to stay in closed form.  Comparisons are exact whenever the
difference reduces to a piecewise body, which for rho rules happens through
the exact walk profiles of :mod:`ordcoh.walks`.  Anything else is answered
by probing, and a probe can only ever refute, never certify.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .csystem import CSystem
from .groupsalg import FgAbelianGroup
from .ordcore import (
    ONE, OMEGA, ZERO, Ordinal, OrdinalInterval, add, as_ordinal, compare,
    format_ordinal, interval_is_infinite, left_subtract, predecessor,
)
from .sampling import ord_key, probe_points
from . import walks

__all__ = [
    "OrdinalFunction", "Piecewise", "FiniteSupport", "RhoRule", "LazySum", "Embed",
    "Verdict", "compare_functions", "transform", "zero_function", "constant",
    "piecewise", "finite_support", "rho_function", "MODES", "Unsupported", "window",
]

MODES = ("exact", "modFinite", "modLocallyConstant", "modBounded")


class Unsupported(ValueError):
    """The operation is not defined for this body form or group."""


def _succ(x: Ordinal) -> Ordinal:
    return add(x, ONE)


# ---------------------------------------------------------------------------
# bodies


@dataclass(frozen=True)
class Piecewise:
    """``pieces[i] = (hi_i, v_i)``: value ``v_i`` on ``[hi_(i-1), hi_i)``."""

    pieces: tuple

    def starts(self):
        lo = ZERO
        for hi, v in self.pieces:
            yield lo, hi, v
            lo = hi


@dataclass(frozen=True)
class FiniteSupport:
    support: tuple  # ((point, value), ...) sorted by point, values nonzero


@dataclass(frozen=True)
class Embed:
    """A map from walk values to the group with ``embed(0) = 0``.

    Either linear (``n -> n * unit``) or a finite table (unlisted values map
    to zero).
    """

    unit: tuple | None = None
    table: tuple = ()  # ((n, element), ...)

    def __call__(self, group: FgAbelianGroup, n) -> tuple:
        if not isinstance(n, int):
            raise Unsupported(f"cannot embed the ordinal value {n}")
        if self.unit is not None:
            return group.scale(n, self.unit)
        for k, v in self.table:
            if k == n:
                return v
        return group.zero()

    @property
    def linear(self) -> bool:
        return self.unit is not None

    def scaled(self, group: FgAbelianGroup, k: int) -> "Embed":
        if self.unit is not None:
            return Embed(unit=group.scale(k, self.unit))
        return Embed(table=_clean_table(group, ((n, group.scale(k, v)) for n, v in self.table)))

    def plus(self, group: FgAbelianGroup, other: "Embed") -> "Embed":
        if self.linear != other.linear:
            raise Unsupported("cannot add a linear embed to a table embed")
        if self.unit is not None:
            return Embed(unit=group.add(self.unit, other.unit))
        acc = dict(self.table)
        for n, v in other.table:
            acc[n] = group.add(acc.get(n, group.zero()), v)
        return Embed(table=_clean_table(group, acc.items()))

    def is_zero(self, group: FgAbelianGroup) -> bool:
        if self.unit is not None:
            return not any(self.unit)
        return not self.table

    def to_json(self):
        if self.unit is not None:
            return {"unit": list(self.unit)}
        return {"table": {str(n): list(v) for n, v in self.table}}

    @classmethod
    def from_json(cls, group: FgAbelianGroup, data) -> "Embed":
        if "unit" in data:
            return cls(unit=group.element(data["unit"]))
        tab = ((int(k), group.element(v)) for k, v in data["table"].items())
        out = cls(table=_clean_table(group, tab))
        if any(k == 0 for k, _ in out.table):
            raise ValueError("embed must send 0 to 0")
        return out


def _clean_table(group, items) -> tuple:
    return tuple(sorted((int(n), group.reduce(v)) for n, v in items if any(group.reduce(v))))


@dataclass(frozen=True)
class RhoTerm:
    kind: int
    C: CSystem
    top: Ordinal
    embed: Embed


@dataclass(frozen=True)
class RhoRule:
    term: RhoTerm
    offset: tuple
    patch: tuple = ()  # additive finite-support correction, ((point, value), ...)


@dataclass(frozen=True)
class LazySum:
    terms: tuple  # (RhoTerm, ...) with distinct (kind, C, top, linearity)
    rest: Piecewise


@dataclass(frozen=True)
class Verdict:
    status: str  # "yes", "no" or "unknown"
    witness: object = None
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.status != "unknown"

    @property
    def holds(self) -> bool:
        return self.status == "yes"

    def witness_json(self):
        w = self.witness
        if isinstance(w, OrdinalInterval):
            return {"interval": [format_ordinal(w.lo), format_ordinal(w.hi)]}
        if isinstance(w, Ordinal):
            return {"point": format_ordinal(w)}
        return w


# ---------------------------------------------------------------------------
# piecewise helpers


def _merge(group: FgAbelianGroup, pieces) -> tuple:
    out = []
    for hi, v in pieces:
        if out and out[-1][1] == v:
            out[-1] = (hi, v)
        else:
            out.append((hi, v))
    return tuple(out)


def _pw_value(pw: Piecewise, xi: Ordinal):
    return pw.pieces[_first_above([hi for hi, _ in pw.pieces], xi)][1]


def _first_above(his, xi) -> int:
    lo, hi = 0, len(his)
    while lo < hi:
        mid = (lo + hi) // 2
        if compare(his[mid], xi) <= 0:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _fs_to_pw(group, domain, support) -> Piecewise:
    zero = group.zero()
    out = []
    for p, v in support:
        if not p.is_zero:
            out.append((p, zero))
        out.append((_succ(p), v))
    if not out or out[-1][0] is not domain:
        out.append((domain, zero))
    return Piecewise(_merge(group, out))


def _pw_combine(group, domain, a: Piecewise, b: Piecewise, op) -> Piecewise:
    bps = sorted({hi for hi, _ in a.pieces} | {hi for hi, _ in b.pieces}, key=ord_key)
    out = []
    for hi in bps:
        if compare(hi, domain) > 0:
            break
        out.append((hi, op(_value_before(a, hi), _value_before(b, hi))))
        if hi is domain:
            break
    return Piecewise(_merge(group, out))


def _value_before(pw: Piecewise, hi: Ordinal):
    """Value on the piece ending at ``hi`` (the first piece reaching ``hi``)."""
    for h, v in pw.pieces:
        if compare(h, hi) >= 0:
            return v
    raise ValueError("breakpoint beyond domain")


def _pw_restrict(group, pw: Piecewise, beta: Ordinal) -> Piecewise:
    out = []
    for hi, v in pw.pieces:
        if compare(hi, beta) >= 0:
            if not beta.is_zero and (not out or compare(out[-1][0], beta) < 0):
                out.append((beta, v))
            break
        out.append((hi, v))
    return Piecewise(_merge(group, out))


def _pw_finite_support(group, pw: Piecewise, limit: int = 10_000):
    """Support list if every nonzero piece is finite, else ``None``."""
    zero = group.zero()
    out = []
    for lo, hi, v in pw.starts():
        if v == zero:
            continue
        if interval_is_infinite(lo, hi):
            return None
        k = left_subtract(hi, lo).natural
        if k > limit:
            return None
        x = lo
        for _ in range(k):
            out.append((x, v))
            x = _succ(x)
    return tuple(out)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrdinalFunction:
    domain: Ordinal
    group: FgAbelianGroup
    body: object

    # -- evaluation ----------------------------------------------------------
    def __call__(self, xi):
        xi = as_ordinal(xi)
        if compare(xi, self.domain) >= 0:
            raise ValueError(f"{xi} is outside the domain {self.domain}")
        return self._eval(xi)

    def _eval(self, xi):
        b, g = self.body, self.group
        if isinstance(b, Piecewise):
            return _pw_value(b, xi)
        if isinstance(b, FiniteSupport):
            for p, v in b.support:
                if p is xi:
                    return v
            return g.zero()
        if isinstance(b, RhoRule):
            out = g.add(_term_value(g, b.term, xi), b.offset)
            for p, v in b.patch:
                if p is xi:
                    out = g.add(out, v)
            return out
        out = _pw_value(b.rest, xi)
        for t in b.terms:
            out = g.add(out, _term_value(g, t, xi))
        return out

    eval = __call__

    # -- linear structure --------------------------------------------------
    def linear_form(self):
        """``(terms, rest)`` with ``self = sum(terms) + rest``."""
        b, g = self.body, self.group
        if isinstance(b, Piecewise):
            return (), b
        if isinstance(b, FiniteSupport):
            return (), _fs_to_pw(g, self.domain, b.support)
        if isinstance(b, RhoRule):
            rest = Piecewise(((self.domain, b.offset),)) if not self.domain.is_zero else Piecewise(())
            if b.patch:
                rest = _pw_combine(g, self.domain, rest, _fs_to_pw(g, self.domain, b.patch), g.add)
            return (b.term,), rest
        return b.terms, b.rest

    def __add__(self, other: "OrdinalFunction") -> "OrdinalFunction":
        return combine("sum", self, other)

    def __neg__(self) -> "OrdinalFunction":
        return combine("negate", self)

    def __sub__(self, other: "OrdinalFunction") -> "OrdinalFunction":
        return combine("sum", self, combine("negate", other))

    def scale(self, k: int) -> "OrdinalFunction":
        g = self.group
        terms, rest = self.linear_form()
        terms = tuple(RhoTerm(t.kind, t.C, t.top, t.embed.scaled(g, k)) for t in terms)
        rest = Piecewise(_merge(g, ((hi, g.scale(k, v)) for hi, v in rest.pieces)))
        if isinstance(self.body, FiniteSupport):
            return OrdinalFunction(self.domain, g, FiniteSupport(
                tuple((p, g.scale(k, v)) for p, v in self.body.support if any(g.scale(k, v)))))
        return _from_linear(self.domain, g, terms, rest)

    def restrict(self, beta) -> "OrdinalFunction":
        return combine("restrict", self, beta)

    # -- shape queries ------------------------------------------------------
    @property
    def is_finite_support(self) -> bool:
        return self.support() is not None

    def support(self):
        """The finite support as ``((point, value), ...)`` if representable."""
        b = self.body
        if isinstance(b, FiniteSupport):
            return b.support
        if isinstance(b, Piecewise):
            return _pw_finite_support(self.group, b)
        return None

    def closed_form(self, fuel: int = walks.DEFAULT_PROFILE_FUEL):
        """A :class:`Piecewise` equal to ``self`` or ``None`` when no exact
        reduction is known (or the walk profiles ran out of fuel)."""
        return _closed(self, fuel)

    def breakpoints(self):
        b = self.body
        if isinstance(b, Piecewise):
            return [lo for lo, _, _ in b.starts()]
        if isinstance(b, FiniteSupport):
            return [p for p, _ in b.support]
        return [lo for lo, _, _ in self.linear_form()[1].starts()]

    # -- serialization ---------------------------------------------------------
    def to_json(self):
        return {"domain": format_ordinal(self.domain), "group": self.group.to_json(),
                "body": _body_to_json(self.body)}

    @classmethod
    def from_json(cls, data) -> "OrdinalFunction":
        group = FgAbelianGroup.from_json(data.get("group", {"rank": 1}))
        domain = as_ordinal(data["domain"])
        # the body may be given inline next to domain and group
        return _body_from_json(domain, group, data.get("body", data))


def _term_value(g: FgAbelianGroup, t: RhoTerm, xi: Ordinal):
    return t.embed(g, walks.rho(t.kind, t.C, xi, t.top))


def _from_linear(domain, group, terms, rest: Piecewise) -> OrdinalFunction:
    """Canonical body for ``sum(terms) + rest``."""
    merged = {}
    order = []
    for t in terms:
        key = (t.kind, t.C, t.top, t.embed.linear)
        if key in merged:
            merged[key] = merged[key].plus(group, t.embed)
        else:
            merged[key] = t.embed
            order.append(key)
    kept = tuple(RhoTerm(k[0], k[1], k[2], merged[k]) for k in order if not merged[k].is_zero(group))
    if not kept:
        return OrdinalFunction(domain, group, rest)
    if len(kept) == 1:
        off = rest.pieces[-1][1] if rest.pieces else group.zero()
        shifted = Piecewise(_merge(group, ((hi, group.add(v, group.neg(off))) for hi, v in rest.pieces)))
        patch = _pw_finite_support(group, shifted)
        if patch is not None:
            return OrdinalFunction(domain, group, RhoRule(kept[0], off, patch))
    return OrdinalFunction(domain, group, LazySum(kept, rest))


def combine(op: str, f: OrdinalFunction, other=None) -> OrdinalFunction:
    """``sum``, ``negate`` or ``restrict`` with closed forms where possible."""
    g = f.group
    if op == "negate":
        return f.scale(-1)
    if op == "restrict":
        beta = as_ordinal(other)
        if compare(beta, f.domain) > 0:
            raise ValueError(f"cannot restrict a function on {f.domain} to {beta}")
        b = f.body
        if isinstance(b, Piecewise):
            return OrdinalFunction(beta, g, _pw_restrict(g, b, beta))
        if isinstance(b, FiniteSupport):
            return OrdinalFunction(beta, g, FiniteSupport(tuple((p, v) for p, v in b.support if compare(p, beta) < 0)))
        if isinstance(b, RhoRule):
            return OrdinalFunction(beta, g, RhoRule(b.term, b.offset, tuple((p, v) for p, v in b.patch if compare(p, beta) < 0)))
        return OrdinalFunction(beta, g, LazySum(b.terms, _pw_restrict(g, b.rest, beta)))
    if op != "sum":
        raise ValueError(f"unknown combine op {op!r}")
    if other.group != g:
        raise ValueError(f"group mismatch: {g} vs {other.group}")
    dom = f.domain if compare(f.domain, other.domain) <= 0 else other.domain
    if f.domain is not dom:
        f = f.restrict(dom)
    if other.domain is not dom:
        other = other.restrict(dom)
    if isinstance(f.body, FiniteSupport) and isinstance(other.body, FiniteSupport):
        acc = {}
        for p, v in f.body.support + other.body.support:
            acc[p] = g.add(acc.get(p, g.zero()), v)
        pts = sorted((p for p, v in acc.items() if any(v)), key=ord_key)
        return OrdinalFunction(dom, g, FiniteSupport(tuple((p, acc[p]) for p in pts)))
    t1, r1 = f.linear_form()
    t2, r2 = other.linear_form()
    rest = _pw_combine(g, dom, r1, r2, g.add) if not dom.is_zero else Piecewise(())
    return _from_linear(dom, g, t1 + t2, rest)


def window(f: OrdinalFunction, lo, hi, domain=None) -> OrdinalFunction:
    """``f`` on ``[lo, hi)`` and zero elsewhere on ``domain``; needs a closed form."""
    g = f.group
    domain = f.domain if domain is None else as_ordinal(domain)
    lo, hi = as_ordinal(lo), as_ordinal(hi)
    if compare(hi, f.domain) > 0 or compare(hi, domain) > 0:
        raise ValueError("window reaches past the domain")
    pw = f.closed_form()
    if pw is None:
        raise Unsupported("window needs a function with a piecewise closed form")
    zero = g.zero()
    out = []
    if not lo.is_zero:
        out.append((lo, zero))
    for plo, phi, v in pw.starts():
        if compare(phi, lo) <= 0:
            continue
        if compare(plo, hi) >= 0:
            break
        out.append((phi if compare(phi, hi) < 0 else hi, v))
    if compare(hi, domain) < 0:
        out.append((domain, zero))
    out = [(h, v) for h, v in out if not h.is_zero]
    return OrdinalFunction(domain, g, Piecewise(_merge(g, out)))


# ---------------------------------------------------------------------------
# constructors


def zero_function(domain, group: FgAbelianGroup) -> OrdinalFunction:
    return OrdinalFunction(as_ordinal(domain), group, FiniteSupport(()))


def constant(domain, group: FgAbelianGroup, value) -> OrdinalFunction:
    domain = as_ordinal(domain)
    v = group.element(value)
    return OrdinalFunction(domain, group, Piecewise(((domain, v),) if not domain.is_zero else ()))


def piecewise(domain, group: FgAbelianGroup, pieces: Sequence) -> OrdinalFunction:
    """``pieces`` is a list of ``(upper breakpoint, value)``; the last one must be ``domain``."""
    domain = as_ordinal(domain)
    ps = [(as_ordinal(hi), group.element(v)) for hi, v in pieces]
    prev = ZERO
    for hi, _ in ps:
        if compare(hi, prev) <= 0:
            raise ValueError("piecewise breakpoints must be strictly increasing and positive")
        prev = hi
    if domain.is_zero:
        if ps:
            raise ValueError("a function on 0 has no pieces")
    elif not ps or ps[-1][0] is not domain:
        raise ValueError(f"last breakpoint must equal the domain {domain}")
    return OrdinalFunction(domain, group, Piecewise(_merge(group, ps)))


def finite_support(domain, group: FgAbelianGroup, points) -> OrdinalFunction:
    domain = as_ordinal(domain)
    items = points.items() if hasattr(points, "items") else points
    acc = {}
    for p, v in items:
        p = as_ordinal(p)
        if compare(p, domain) >= 0:
            raise ValueError(f"support point {p} is outside the domain {domain}")
        acc[p] = group.add(acc.get(p, group.zero()), group.element(v))
    pts = sorted((p for p, v in acc.items() if any(v)), key=ord_key)
    return OrdinalFunction(domain, group, FiniteSupport(tuple((p, acc[p]) for p in pts)))


def rho_function(kind: int, C: CSystem, top, domain=None, group: FgAbelianGroup | None = None,
                 embed: Embed | None = None, offset=None, patch=()) -> OrdinalFunction:
    top = as_ordinal(top)
    domain = top if domain is None else as_ordinal(domain)
    group = group or FgAbelianGroup(1)
    if compare(domain, top) > 0:
        raise ValueError("a rho rule's top must be at least its domain")
    if kind not in (1, 2, 3):
        raise ValueError(f"rho kind must be 1, 2 or 3, got {kind}")
    embed = embed or Embed(unit=group.element((1,) + (0,) * (group.ngens - 1)))
    offset = group.zero() if offset is None else group.element(offset)
    fs = finite_support(domain, group, patch).body.support
    return OrdinalFunction(domain, group, RhoRule(RhoTerm(kind, C, top, embed), offset, fs))


# ---------------------------------------------------------------------------
# exact reduction of rho combinations


def _rho3_trivial(C: CSystem) -> bool:
    """Whether ``rho3`` is identically zero under ``C``: no whole ladders."""
    if C.variant == "canonical":
        return True
    return C.variant == "table" and all(v != "full" for v in C.overrides.values())


class _Fuel(Exception):
    pass


def _closed(f: OrdinalFunction, fuel: int):
    terms, rest = f.linear_form()
    if not terms:
        return rest
    g, dom = f.group, f.domain
    acc = rest
    groups = {}
    for t in terms:
        groups.setdefault((t.kind, t.C), []).append(t)
    try:
        for (kind, C), ts in groups.items():
            part = _closed_group(g, dom, kind, C, ts, fuel)
            if part is None:
                return None
            acc = _pw_combine(g, dom, acc, part, g.add)
    except _Fuel:
        return None
    return acc


def _closed_group(g, dom, kind, C, ts, fuel):
    zero = g.zero()
    if dom.is_zero:
        return Piecewise(())
    if kind == 3:
        return Piecewise(((dom, zero),)) if _rho3_trivial(C) else None
    total = ts[0].embed
    for t in ts[1:]:
        try:
            total = total.plus(g, t.embed)
        except Unsupported:
            if kind == 2:
                return None
            total = None
            break
    if kind == 2:
        if not all(t.embed.linear for t in ts) or not total.is_zero(g):
            return None
        if C.variant == "full":
            return Piecewise(((dom, zero),))  # every rho2 value is 2 (or 1 on the diagonal)
        ref = ts[0].top
        acc = Piecewise(((dom, zero),))
        for t in ts[1:]:
            prof = walks.profile_on(2, C, ref, t.top, dom, fuel)
            if not prof.closed:
                raise _Fuel()
            pw = Piecewise(_merge(g, ((hi, g.scale(v, t.embed.unit)) for lo, hi, v in prof.outcome.pieces)))
            acc = _pw_combine(g, dom, acc, pw, g.add)
        return acc
    # kind 1: cancelling embeds make the sum zero wherever all walks agree
    if total is None:
        lin = [t.embed for t in ts if t.embed.linear]
        tab = [t.embed for t in ts if not t.embed.linear]
        ok = all(_sum_embeds(g, grp).is_zero(g) for grp in (lin, tab) if grp)
        if not ok:
            return None
    elif not total.is_zero(g):
        return None
    if any(C.is_whole(t.top) for t in ts):
        return None
    ref = ts[0].top
    bad = set()
    for t in ts[1:]:
        prof = walks.profile_on(1, C, ref, t.top, dom, fuel)
        if not prof.closed:
            raise _Fuel()
        bad.update(prof.outcome.points)
    support = []
    for p in sorted(bad, key=ord_key):
        v = zero
        for t in ts:
            v = g.add(v, _term_value(g, t, p))
        if any(v):
            support.append((p, v))
    return _fs_to_pw(g, dom, tuple(support))


def _sum_embeds(g, embeds):
    total = embeds[0]
    for e in embeds[1:]:
        total = total.plus(g, e)
    return total


# ---------------------------------------------------------------------------
# comparison


def _decide(mode: str, g: FgAbelianGroup, pw: Piecewise) -> Verdict:
    zero = g.zero()
    if mode == "exact":
        for lo, hi, v in pw.starts():
            if v != zero:
                return Verdict("no", lo, "functions differ at this point")
        return Verdict("yes")
    if mode == "modFinite":
        for lo, hi, v in pw.starts():
            if v != zero and interval_is_infinite(lo, hi):
                return Verdict("no", OrdinalInterval(lo, hi), "difference is nonzero on an infinite interval")
        return Verdict("yes")
    if mode == "modLocallyConstant":
        prev = None
        for lo, hi, v in pw.starts():
            if prev is not None and lo.is_limit and v != prev:
                return Verdict("no", lo, "difference jumps at a limit")
            prev = v
        return Verdict("yes")
    if mode == "modBounded":
        return Verdict("yes", None, "piecewise differences take finitely many values")
    raise ValueError(f"unknown comparison mode {mode!r}")


def compare_functions(mode: str, f: OrdinalFunction, g: OrdinalFunction,
                      fuel: int = walks.DEFAULT_PROFILE_FUEL, probes: int = 64,
                      seed: int = 0) -> Verdict:
    """Compare ``f`` and ``g`` on the smaller of their domains.

    ``exact`` is pointwise equality; ``modFinite`` allows a finite set of
    differences; ``modLocallyConstant`` allows a locally constant difference;
    ``modBounded`` allows a bounded difference and needs an integer group.
    """
    if mode not in MODES:
        raise ValueError(f"unknown comparison mode {mode!r}")
    if f.group != g.group:
        raise ValueError(f"group mismatch: {f.group} vs {g.group}")
    if mode == "modBounded" and not f.group.integer_embedded:
        raise Unsupported(f"bounded comparison needs an integer group, not {f.group}")
    diff = f - g
    pw = diff.closed_form(fuel)
    if pw is not None:
        return _decide(mode, f.group, pw)
    # no exact reduction: probes may refute exact equality, nothing more
    if mode == "exact":
        zero = f.group.zero()
        for xi in probe_points(diff.domain, probes, seed, diff.breakpoints()):
            if diff(xi) != zero:
                return Verdict("no", xi, "probe found a pointwise difference")
    return Verdict("unknown", None, "no exact reduction for this pair")


# ---------------------------------------------------------------------------
# transforms between locally constant and finitely supported functions


def _as_piecewise(f: OrdinalFunction) -> Piecewise:
    b = f.body
    if isinstance(b, Piecewise):
        return b
    if isinstance(b, FiniteSupport):
        return _fs_to_pw(f.group, f.domain, b.support)
    raise Unsupported("this transform needs a piecewise or finite-support body")


def _support_of(f: OrdinalFunction):
    s = f.support()
    if s is None:
        raise Unsupported("this transform needs a finitely supported function")
    return s


def transform(direction: str, f: OrdinalFunction) -> OrdinalFunction:
    """``del``, ``del_inv``, ``shift_r`` or ``shift_r_inv``.

    ``del``: ``f(b) - e(b)`` with ``e`` the eventual value below ``b`` and
    ``e(0) = 0``.  ``del_inv``: running sum over ``a <= b``.  ``shift_r``:
    identity below ``w``, zero at limits, ``f(a)`` at ``a+1 > w``.
    ``shift_r_inv``: identity below ``w``, ``f(b+1)`` elsewhere.
    """
    g, dom = f.group, f.domain
    zero = g.zero()
    if direction == "del":
        pw = _as_piecewise(f)
        out, prev = [], zero
        for lo, hi, v in pw.starts():
            jump = g.add(v, g.neg(prev))
            if any(jump):
                out.append((lo, jump))
            prev = v
        return OrdinalFunction(dom, g, FiniteSupport(tuple(out)))
    if direction == "del_inv":
        supp = _support_of(f)
        pieces, run = [], zero
        for p, v in supp:
            if not p.is_zero:
                pieces.append((p, run))
            run = g.add(run, v)
        if not dom.is_zero:
            pieces.append((dom, run))
        return OrdinalFunction(dom, g, Piecewise(_merge(g, pieces)))
    if direction == "shift_r":
        out = []
        for p, v in _support_of(f):
            if p.is_finite:
                out.append((p, v))
            else:
                q = _succ(p)
                if compare(q, dom) < 0:
                    out.append((q, v))
        return OrdinalFunction(dom, g, FiniteSupport(tuple(out)))
    if direction == "shift_r_inv":
        if isinstance(f.body, FiniteSupport):
            out = []
            for p, v in f.body.support:
                if p.is_finite:
                    out.append((p, v))
                elif p.is_successor and compare(p, _succ(OMEGA)) >= 0:
                    out.append((predecessor(p), v))
            return OrdinalFunction(dom, g, FiniteSupport(tuple(out)))
        pw = _as_piecewise(f)
        # above w, value at b is f(b+1): a breakpoint s+1 moves to s, a limit stays put
        out = []
        for hi, v in pw.pieces:
            if compare(hi, OMEGA) > 0 and hi.is_successor and compare(hi, dom) < 0:
                hi2 = predecessor(hi)
                if compare(hi2, OMEGA) < 0:
                    hi2 = OMEGA
            else:
                hi2 = hi
            out.append((hi2, v))
        if not dom.is_limit and compare(dom, OMEGA) > 0:
            raise Unsupported("shift_r_inv needs a limit (or finite) domain")
        # a piece collapsed onto w by the shift is dropped
        cleaned = []
        for hi, v in out:
            if cleaned and compare(hi, cleaned[-1][0]) <= 0:
                continue
            cleaned.append((hi, v))
        return OrdinalFunction(dom, g, Piecewise(_merge(g, cleaned)))
    raise ValueError(f"unknown transform {direction!r}")


# ---------------------------------------------------------------------------
# JSON


def _elem_json(v):
    return v[0] if len(v) == 1 else list(v)


def _body_to_json(b):
    if isinstance(b, Piecewise):
        return {"type": "piecewise", "pieces": [[format_ordinal(hi), _elem_json(v)] for hi, v in b.pieces]}
    if isinstance(b, FiniteSupport):
        return {"type": "finsupp", "support": {format_ordinal(p): _elem_json(v) for p, v in b.support}}
    if isinstance(b, RhoRule):
        t = b.term
        return {"type": "rho", "kind": t.kind, "csystem": t.C.to_json(), "top": format_ordinal(t.top),
                "embed": t.embed.to_json(), "offset": _elem_json(b.offset),
                "patch": {format_ordinal(p): _elem_json(v) for p, v in b.patch}}
    return {"type": "lazy", "rest": _body_to_json(b.rest),
            "terms": [{"kind": t.kind, "csystem": t.C.to_json(), "top": format_ordinal(t.top),
                       "embed": t.embed.to_json()} for t in b.terms]}


def _body_from_json(domain, group, body) -> OrdinalFunction:
    kind = body.get("type")
    if kind == "piecewise":
        return piecewise(domain, group, body["pieces"])
    if kind == "finsupp":
        return finite_support(domain, group, body.get("support", {}))
    if kind == "rho":
        C = CSystem.from_json(body.get("csystem", "canonical"))
        embed = Embed.from_json(group, body["embed"]) if "embed" in body else None
        return rho_function(int(body["kind"]), C, body["top"], domain, group, embed,
                            body.get("offset"), body.get("patch", {}))
    if kind == "lazy":
        rest = _body_from_json(domain, group, body["rest"])
        terms = tuple(RhoTerm(int(t["kind"]), CSystem.from_json(t.get("csystem", "canonical")),
                              as_ordinal(t["top"]), Embed.from_json(group, t["embed"]))
                      for t in body["terms"])
        _, r = rest.linear_form()
        return _from_linear(domain, group, terms, r)
    raise ValueError(f"unknown function body type {kind!r}")
