"""Indexed families of ordinal functions and the coherence calculus.

An ``n``-family over a finite index set ``D`` assigns to every increasing
``n``-tuple ``a`` from ``D`` a function with domain ``a[0]``.  A 0-family is a
single function of a stated ``height``; it is what trivializes a 1-family.

``d`` sends an ``n``-family to the ``(n+1)``-family of alternating sums

    (dF)(a) = sum_i (-1)^i F(a without a_i) restricted to a[0],

and for a 0-family ``(dF)(b) = F restricted to b``.  Restrictions commute, so
``d(dF) = 0`` holds exactly, not just modulo finite sets.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping

from .csystem import CSystem
from .finfun import (
    Embed, OrdinalFunction, Verdict, Unsupported, compare_functions,
    finite_support, piecewise, rho_function, window, zero_function,
)
from .groupsalg import FgAbelianGroup
from .ordcore import (
    ZERO, Ordinal, as_ordinal, compare, format_ordinal, fund_seq, omega_power,
)
from .sampling import ord_key, random_below, sort_ordinals
from . import walks

__all__ = [
    "IndexedFamily", "FamilyVerdict", "IncoherentError", "d_operator", "is_coherent",
    "is_trivialization", "trivialize_with_top", "extend_trivialization", "extend_exact",
    "ClubRule", "stretch", "rho_family", "verify_cocycle", "GameHistory",
    "even_strategy_move", "odd_move", "play_game", "dagger_holds", "tree_report",
    "random_family", "random_piecewise", "zero_family",
]


def _tuples(indices, k):
    return itertools.combinations(indices, k)


def _key(t) -> str:
    return "|".join(format_ordinal(x) for x in t)


@dataclass(frozen=True)
class IndexedFamily:
    n: int
    indices: tuple
    group: FgAbelianGroup
    entries: Mapping = field(hash=False)
    height: Ordinal | None = None  # only for n == 0

    def __post_init__(self):
        idx = tuple(sort_ordinals(as_ordinal(x) for x in self.indices))
        object.__setattr__(self, "indices", idx)
        if self.n < 0:
            raise ValueError("family order must be nonnegative")
        ents = dict(self.entries)
        if self.n == 0:
            h = as_ordinal(self.height if self.height is not None else (idx[-1] if idx else ZERO))
            object.__setattr__(self, "height", h)
            if idx and compare(idx[-1], h) > 0:
                raise ValueError("a 0-family's height must reach its largest index")
            f = ents.get(())
            if f is None:
                f = zero_function(h, self.group)
            if f.domain is not h:
                raise ValueError(f"0-family entry has domain {f.domain}, expected {h}")
            ents = {(): f}
        else:
            for t in _tuples(idx, self.n):
                f = ents.get(t)
                if f is None:
                    raise ValueError(f"missing entry for {_key(t)}")
                if f.domain is not t[0]:
                    raise ValueError(f"entry {_key(t)} has domain {f.domain}, expected {t[0]}")
                if f.group != self.group:
                    raise ValueError(f"entry {_key(t)} has group {f.group}, expected {self.group}")
            extra = set(ents) - set(_tuples(idx, self.n))
            if extra:
                raise ValueError(f"unexpected entries {sorted(_key(t) for t in extra)}")
        object.__setattr__(self, "entries", ents)

    def __getitem__(self, t) -> OrdinalFunction:
        return self.entries[tuple(t)]

    def tuples(self):
        return list(_tuples(self.indices, self.n))

    @property
    def function(self) -> OrdinalFunction:
        """The single function of a 0-family."""
        if self.n != 0:
            raise ValueError("only 0-families have a single function")
        return self.entries[()]

    # -- linear structure --------------------------------------------------
    def _zip(self, other: "IndexedFamily", op) -> "IndexedFamily":
        if (self.n, self.indices, self.group) != (other.n, other.indices, other.group):
            raise ValueError("families differ in order, index set or group")
        if self.n == 0:
            f = op(self.function, other.function)
            return IndexedFamily(0, self.indices, self.group, {(): f}, f.domain)
        return IndexedFamily(self.n, self.indices, self.group,
                             {t: op(self.entries[t], other.entries[t]) for t in self.entries})

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def scale(self, k: int) -> "IndexedFamily":
        return IndexedFamily(self.n, self.indices, self.group,
                             {t: f.scale(k) for t, f in self.entries.items()}, self.height)

    def __neg__(self):
        return self.scale(-1)

    def restrict_to(self, sub) -> "IndexedFamily":
        """The subfamily indexed by tuples from ``sub``."""
        sub = tuple(sort_ordinals(as_ordinal(x) for x in sub))
        if not set(sub) <= set(self.indices):
            raise ValueError("restriction to indices outside the family")
        if self.n == 0:
            h = sub[-1] if sub else ZERO
            return IndexedFamily(0, sub, self.group, {(): self.function.restrict(h)}, h)
        return IndexedFamily(self.n, sub, self.group, {t: self.entries[t] for t in _tuples(sub, self.n)})

    def below(self, xi) -> "IndexedFamily":
        xi = as_ordinal(xi)
        return self.restrict_to([x for x in self.indices if compare(x, xi) < 0])

    # -- serialization ---------------------------------------------------------
    def to_json(self):
        out = {"n": self.n, "indices": [format_ordinal(x) for x in self.indices],
               "group": self.group.to_json(),
               "entries": {_key(t): f.to_json() for t, f in sorted(self.entries.items(), key=lambda kv: [ord_key(x) for x in kv[0]])}}
        if self.n == 0:
            out["height"] = format_ordinal(self.height)
        return out

    @classmethod
    def from_json(cls, data) -> "IndexedFamily":
        group = FgAbelianGroup.from_json(data.get("group", {"rank": 1}))
        n = int(data["n"])
        indices = [as_ordinal(x) for x in data["indices"]]
        entries = {}
        for k, fj in data.get("entries", {}).items():
            t = tuple(as_ordinal(x) for x in k.split("|")) if k else ()
            fj = dict(fj)
            fj.setdefault("group", group.to_json())
            if "domain" not in fj:
                fj["domain"] = format_ordinal(t[0]) if t else data.get("height")
            entries[t] = OrdinalFunction.from_json(fj)
        return cls(n, indices, group, entries, as_ordinal(data["height"]) if "height" in data else None)


def zero_family(n: int, indices, group: FgAbelianGroup, height=None) -> IndexedFamily:
    indices = sort_ordinals(as_ordinal(x) for x in indices)
    if n == 0:
        h = as_ordinal(height) if height is not None else (indices[-1] if indices else ZERO)
        return IndexedFamily(0, indices, group, {(): zero_function(h, group)}, h)
    return IndexedFamily(n, indices, group, {t: zero_function(t[0], group) for t in _tuples(indices, n)})


# ---------------------------------------------------------------------------
# d, coherence, triviality


def _alt_sum(fam: IndexedFamily, t) -> OrdinalFunction:
    acc = None
    for i in range(len(t)):
        f = fam.entries[t[:i] + t[i + 1:]].restrict(t[0])
        f = f if i % 2 == 0 else -f
        acc = f if acc is None else acc + f
    return acc


def d_operator(fam: IndexedFamily, only_with=None) -> IndexedFamily:
    """``dF``; with ``only_with`` set, only tuples containing that index are
    built and the result is returned as a plain dict."""
    if fam.n == 0:
        ents = {(b,): fam.function.restrict(b) for b in fam.indices}
        return IndexedFamily(1, fam.indices, fam.group, ents)
    tups = _tuples(fam.indices, fam.n + 1)
    if only_with is not None:
        return {t: _alt_sum(fam, t) for t in tups if only_with in t}
    return IndexedFamily(fam.n + 1, fam.indices, fam.group, {t: _alt_sum(fam, t) for t in tups})


@dataclass(frozen=True)
class FamilyVerdict:
    status: str  # "yes", "no" or "unknown"
    witness: tuple | None = None
    detail: Verdict | None = None

    @property
    def holds(self) -> bool:
        return self.status == "yes"

    def to_json(self):
        out = {"status": self.status}
        if self.witness is not None:
            out["tuple"] = [format_ordinal(x) for x in self.witness]
        if self.detail is not None and self.detail.witness is not None:
            out["where"] = self.detail.witness_json()
        return out


def _check_zero(entries: Mapping, group: FgAbelianGroup, mode: str, fuel: int) -> FamilyVerdict:
    unknown = None
    for t in sorted(entries, key=lambda t: [ord_key(x) for x in t]):
        f = entries[t]
        v = compare_functions(mode, f, zero_function(f.domain, group), fuel)
        if v.status == "no":
            return FamilyVerdict("no", t, v)
        if v.status == "unknown" and unknown is None:
            unknown = FamilyVerdict("unknown", t, v)
    return unknown or FamilyVerdict("yes")


def is_coherent(fam: IndexedFamily, mode: str = "modFinite",
                fuel: int = walks.DEFAULT_PROFILE_FUEL) -> FamilyVerdict:
    """``dF = 0`` (``exact``) or ``dF =* 0`` (``modFinite``); the witness is the
    lexicographically least failing tuple."""
    return _check_zero(d_operator(fam).entries, fam.group, mode, fuel)


def is_trivialization(psi: IndexedFamily, phi: IndexedFamily, mode: str = "modFinite",
                      fuel: int = walks.DEFAULT_PROFILE_FUEL) -> FamilyVerdict:
    """Whether ``d psi`` equals ``phi`` (exactly or modulo finite sets)."""
    if psi.n + 1 != phi.n:
        raise ValueError(f"a {psi.n}-family cannot trivialize a {phi.n}-family")
    if psi.n > 0 and psi.indices != phi.indices:
        raise ValueError("index sets differ")
    if psi.n == 0 and any(compare(x, psi.height) > 0 for x in phi.indices):
        raise ValueError("the 0-family is shorter than the indices it trivializes")
    if psi.n == 0:
        dpsi = {(b,): psi.function.restrict(b) for b in phi.indices}
    else:
        dpsi = d_operator(psi).entries
    diff = {t: dpsi[t] - phi.entries[t] for t in phi.entries}
    return _check_zero(diff, phi.group, mode, fuel)


class IncoherentError(ValueError):
    def __init__(self, verdict: FamilyVerdict):
        self.verdict = verdict
        w = _key(verdict.witness) if verdict.witness else "?"
        super().__init__(f"family is not coherent at {w}")


def trivialize_with_top(fam: IndexedFamily, check: str | None = "modFinite") -> IndexedFamily:
    """A trivialization built from the entries at the largest index ``g``.

    ``psi(b) = (-1)^(n-1) phi(b + g)`` for tuples ``b`` avoiding ``g`` and zero
    for tuples containing ``g``; for ``n = 1`` it is ``phi_g`` itself.  The
    result is exact when ``fam`` is exactly coherent.
    """
    if fam.n < 1:
        raise ValueError("trivialization needs n >= 1")
    if check is not None:
        v = is_coherent(fam, check)
        if v.status != "yes":
            raise IncoherentError(v)
    g = fam.group
    if not fam.indices:
        return zero_family(fam.n - 1, (), g)
    top = fam.indices[-1]
    if fam.n == 1:
        return IndexedFamily(0, fam.indices, g, {(): fam.entries[(top,)]}, top)
    sign = -1 if (fam.n - 1) % 2 else 1
    ents = {}
    for t in _tuples(fam.indices, fam.n - 1):
        if top in t:
            ents[t] = zero_function(t[0], g)
        else:
            ents[t] = fam.entries[t + (top,)].scale(sign)
    return IndexedFamily(fam.n - 1, fam.indices, g, ents)


def _extend_by_zero(theta: IndexedFamily, indices, height=None) -> IndexedFamily:
    g = theta.group
    if theta.n == 0:
        h = as_ordinal(height)
        f = theta.function
        if compare(f.domain, h) < 0:
            f = _pad(f, h)
        return IndexedFamily(0, indices, g, {(): f}, h)
    ents = {}
    for t in _tuples(sort_ordinals(indices), theta.n):
        ents[t] = theta.entries.get(t) or zero_function(t[0], g)
    return IndexedFamily(theta.n, indices, g, ents)


def _pad(f: OrdinalFunction, h: Ordinal) -> OrdinalFunction:
    """``f`` followed by zeros up to ``h``."""
    pw = f.closed_form()
    if pw is None:
        raise Unsupported("extending by zero needs a piecewise closed form")
    pieces = list(pw.pieces)
    if compare(f.domain, h) < 0:
        pieces.append((h, f.group.zero()))
    return piecewise(h, f.group, pieces)


def extend_trivialization(phi: IndexedFamily, psi: IndexedFamily, xi,
                          mode: str = "modFinite") -> IndexedFamily:
    """Extend ``psi``, a trivialization of ``phi`` below ``xi``, to all of ``phi``."""
    xi = as_ordinal(xi)
    low = [x for x in phi.indices if compare(x, xi) < 0]
    ups = trivialize_with_top(phi, check=mode)
    if not low:
        return ups
    v = is_trivialization(psi.restrict_to(low) if psi.n else psi, phi.restrict_to(low), mode)
    if v.status != "yes":
        raise ValueError(f"supplied family does not trivialize the part below {xi}: {v.to_json()}")
    g = phi.group
    if phi.n == 1:
        m = low[-1]
        f = psi.function.restrict(m)
        top = phi.indices[-1]
        glued = _pad(f, top) + window(phi.entries[(top,)], m, top)
        return IndexedFamily(0, phi.indices, g, {(): glued}, top)
    delta = ups.restrict_to(low) - psi.restrict_to(low)
    theta = trivialize_with_top(delta, check=mode)
    theta_bar = _extend_by_zero(theta, phi.indices, phi.indices[-1])
    out = ups - _d_as(theta_bar, phi.indices)
    ents = dict(out.entries)
    for t in _tuples(low, phi.n - 1):
        ents[t] = psi.entries[t]
    return IndexedFamily(phi.n - 1, phi.indices, g, ents)


def _d_as(theta: IndexedFamily, indices) -> IndexedFamily:
    if theta.n == 0:
        return IndexedFamily(1, indices, theta.group,
                             {(b,): theta.function.restrict(b) for b in indices})
    return d_operator(theta)


def extend_exact(target: IndexedFamily, sub, chi0: Mapping) -> IndexedFamily:
    """An exact trivialization ``chi`` of the exactly coherent ``target`` with
    ``chi = chi0`` on tuples from ``sub``.

    ``chi0`` must itself trivialize ``target`` restricted to ``sub`` exactly.
    Needs ``target.n >= 2``.
    """
    if target.n < 2:
        raise ValueError("extend_exact needs n >= 2")
    sub = sort_ordinals(sub)
    g = target.group
    ups = trivialize_with_top(target, check=None)
    if not sub:
        return ups
    delta_ents = {t: ups.entries[t] - chi0[t] for t in _tuples(sub, target.n - 1)}
    delta = IndexedFamily(target.n - 1, sub, g, delta_ents)
    theta = trivialize_with_top(delta, check=None)
    theta_bar = _extend_by_zero(theta, target.indices, target.indices[-1])
    out = ups - _d_as(theta_bar, target.indices)
    ents = dict(out.entries)
    for t in _tuples(sub, target.n - 1):
        ents[t] = chi0[t]
    return IndexedFamily(target.n - 1, target.indices, g, ents)


# ---------------------------------------------------------------------------
# stretching along a club


@dataclass(frozen=True)
class ClubRule:
    """A strictly increasing map on ordinals: a finite ``table`` plus, for
    naturals not in the table, ``k -> fund_seq(ladder_of, k)``."""

    table: tuple = ()  # ((ordinal, image), ...)
    ladder_of: Ordinal | None = None
    identity: bool = False

    def __call__(self, x) -> Ordinal:
        x = as_ordinal(x)
        if self.identity:
            return x
        for a, b in self.table:
            if a is x:
                return b
        if self.ladder_of is not None and x.is_finite:
            return fund_seq(self.ladder_of, x.natural)
        raise ValueError(f"club rule is undefined at {x}")

    @classmethod
    def ident(cls) -> "ClubRule":
        return cls(identity=True)

    @classmethod
    def ladder(cls, lam, table=()) -> "ClubRule":
        return cls(tuple((as_ordinal(a), as_ordinal(b)) for a, b in table), as_ordinal(lam))


def stretch(fam: IndexedFamily, rule: ClubRule, delta=None) -> IndexedFamily:
    """Carry ``fam`` along ``rule``: ``new(c(a))(c(x)) = fam(a)(x)`` and zero off
    the image of ``c``.  Entries must be finitely supported."""
    if rule.identity:
        return fam
    g = fam.group
    pts = set(fam.indices)
    for f in fam.entries.values():
        s = f.support()
        if s is None:
            raise Unsupported("stretching needs finitely supported entries")
        pts.update(p for p, _ in s)
    pts = sort_ordinals(pts)
    images = [rule(p) for p in pts]
    for a, b in zip(images, images[1:]):
        if compare(a, b) >= 0:
            raise ValueError("club rule is not strictly increasing")
    if delta is not None:
        delta = as_ordinal(delta)
        if images and compare(images[-1], delta) >= 0:
            raise ValueError(f"club rule leaves {delta}")
    new_idx = [rule(x) for x in fam.indices]
    ents = {}
    if fam.n == 0:
        h = rule(fam.height) if not fam.height.is_zero else ZERO
        f = fam.function
        return IndexedFamily(0, new_idx, g, {(): finite_support(h, g, [(rule(p), v) for p, v in f.support()])}, h)
    for t, f in fam.entries.items():
        nt = tuple(rule(x) for x in t)
        ents[nt] = finite_support(nt[0], g, [(rule(p), v) for p, v in f.support()])
    return IndexedFamily(fam.n, new_idx, g, ents)


# ---------------------------------------------------------------------------
# rho-generated families


def rho_family(kind: int, C: CSystem, indices, group: FgAbelianGroup | None = None,
               embed: Embed | None = None) -> IndexedFamily:
    group = group or FgAbelianGroup(1)
    indices = sort_ordinals(as_ordinal(x) for x in indices)
    ents = {(b,): rho_function(kind, C, b, b, group, embed) for b in indices}
    return IndexedFamily(1, indices, group, ents)


def verify_cocycle(fam: IndexedFamily, fuel: int = walks.DEFAULT_PROFILE_FUEL) -> FamilyVerdict:
    """``d`` of the cocycle ``(a, b) -> phi_b|a - phi_a`` vanishes exactly."""
    return _check_zero(d_operator(d_operator(fam)).entries, fam.group, "exact", fuel)


# ---------------------------------------------------------------------------
# the trivialization game


@dataclass
class GameHistory:
    """Conditions played so far; condition ``i`` is a family on the first
    ``i + 1`` stage tops."""

    n: int
    group: FgAbelianGroup
    tops: list = field(default_factory=list)
    conditions: list = field(default_factory=list)

    @property
    def stage(self) -> int:
        return len(self.conditions)

    @property
    def current(self) -> IndexedFamily:
        return self.conditions[-1]

    def ev(self) -> list:
        """Tops of the conditions played at even stages."""
        return [self.tops[i] for i in range(0, len(self.tops), 2)]

    def next_top(self) -> Ordinal:
        return omega_power(1, len(self.tops) + 1)


def start_game(n: int, group: FgAbelianGroup) -> GameHistory:
    h = GameHistory(n, group)
    top = h.next_top()
    h.tops.append(top)
    h.conditions.append(zero_family(n, [top], group))
    return h


def dagger_holds(h: GameHistory) -> FamilyVerdict:
    """Alternating sums over ``(n+1)``-tuples of even-stage tops vanish exactly."""
    fam = h.current.restrict_to(h.ev())
    return is_coherent(fam, "exact")


def _ev_splice(h: GameHistory, beta: tuple) -> OrdinalFunction:
    """Even's prescribed entry at ``beta + (new top)`` for ``beta`` inside Ev."""
    cur, g = h.current, h.group
    sign = -1 if (h.n - 1) % 2 else 1
    b0 = beta[0]
    acc = zero_function(b0, g)
    lo = ZERO
    for e in h.ev():
        if compare(e, b0) >= 0:
            break  # from here alpha_xi = b0 and the tuple repeats
        f = cur.entries[(e,) + beta]
        acc = acc + window(f, lo, e, b0).scale(sign)
        lo = e
    return acc


def even_strategy_move(h: GameHistory, check: bool = True) -> IndexedFamily:
    """Even's move: splice the prescribed entries on Ev-tuples, complete the
    rest exactly, and append the new condition to ``h``."""
    if h.stage % 2:
        raise ValueError("it is Odd's turn")
    if h.n < 2:
        raise ValueError("the strategy is implemented for n >= 2")
    if check:
        v = dagger_holds(h)
        if v.status != "yes":
            raise IncoherentError(v)
    cur, n = h.current, h.n
    sign = -1 if (n - 1) % 2 else 1
    target = cur.scale(sign)
    ev = h.ev()
    chi0 = {beta: _ev_splice(h, beta) for beta in _tuples(ev, n - 1)}
    chi = extend_exact(target, ev, chi0)
    return _append(h, chi)


def _append(h: GameHistory, chi: IndexedFamily) -> IndexedFamily:
    cur, n = h.current, h.n
    top = h.next_top()
    ents = dict(cur.entries)
    for t, f in chi.entries.items():
        ents[t + (top,)] = f
    new = IndexedFamily(n, cur.indices + (top,), h.group, ents)
    h.tops.append(top)
    h.conditions.append(new)
    return new


def random_piecewise(domain, group: FgAbelianGroup, rng: random.Random, pieces: int = 3,
                     vmax: int = 3) -> OrdinalFunction:
    domain = as_ordinal(domain)
    if domain.is_zero:
        return zero_function(domain, group)
    bps = sort_ordinals(random_below(domain, rng) for _ in range(pieces - 1))
    bps = [b for b in bps if not b.is_zero] + [domain]
    vals = [tuple(rng.randint(-vmax, vmax) for _ in range(group.ngens)) for _ in bps]
    return piecewise(domain, group, list(zip(bps, vals)))


def random_family(n: int, indices, group: FgAbelianGroup, rng: random.Random, pieces: int = 3,
                  height=None) -> IndexedFamily:
    indices = sort_ordinals(as_ordinal(x) for x in indices)
    if n == 0:
        h = as_ordinal(height) if height is not None else (indices[-1] if indices else ZERO)
        return IndexedFamily(0, indices, group, {(): random_piecewise(h, group, rng, pieces)}, h)
    return IndexedFamily(n, indices, group,
                         {t: random_piecewise(t[0], group, rng, pieces) for t in _tuples(indices, n)})


def odd_move(h: GameHistory, rng: random.Random) -> IndexedFamily:
    """A random exactly coherent extension: a top trivialization plus ``dR``."""
    if h.stage % 2 == 0:
        raise ValueError("it is Even's turn")
    cur, n = h.current, h.n
    sign = -1 if (n - 1) % 2 else 1
    chi = trivialize_with_top(cur.scale(sign), check=None)
    if n >= 2:
        noise = random_family(n - 2, cur.indices, h.group, rng, pieces=2)
        chi = chi + _d_as(noise, cur.indices)
    return _append(h, chi)


def play_game(n: int, stages: int, seed: int, group: FgAbelianGroup | None = None,
              verify: bool = True):
    """Play ``stages`` moves after the zero start; return the history and a
    list of per-stage check results ``(stage, dagger, exact coherence)``."""
    rng = random.Random(seed)
    h = start_game(n, group or FgAbelianGroup(1))
    log = []
    while h.stage <= stages:
        even = h.stage % 2 == 0
        if even:
            even_strategy_move(h, check=False)
        else:
            odd_move(h, rng)
        if verify:
            new_top = h.tops[-1]
            inc = _check_zero(d_operator(h.current, only_with=new_top), h.group, "exact", 0)
            dag = dagger_holds(h) if even else None
            log.append((h.stage - 1, dag, inc))
    return h, log


# ---------------------------------------------------------------------------
# trees of restrictions


@dataclass(frozen=True)
class TreeLevel:
    level: Ordinal
    nodes: int

    def to_json(self):
        return {"level": format_ordinal(self.level), "nodes": self.nodes}


def tree_report(fam: IndexedFamily, probes) -> list:
    """Number of distinct restrictions ``phi_b | a`` (``b >= a``) at each level
    ``a``, telling nodes apart only by their values at the probes below ``a``."""
    if fam.n != 1:
        raise ValueError("tree reports need a 1-family")
    probes = sort_ordinals(as_ordinal(p) for p in probes)
    out = []
    for a in fam.indices:
        pts = [p for p in probes if compare(p, a) < 0]
        seen = set()
        for b in fam.indices:
            if compare(b, a) < 0:
                continue
            f = fam.entries[(b,)]
            seen.add(tuple(f(p) for p in pts))
        out.append(TreeLevel(a, len(seen)))
    return out
