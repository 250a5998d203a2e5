"""Minimal walks and their characteristics.

Conventions
-----------
* ``rho2(a, b) = len(trace(a, b))``: the number of ordinals visited,
  *including* both endpoints.  The older convention counts steps and is one
  less.
* ``rho1(a, a) = 0`` and ``rho2(a, a) = 1``.
* ``rho3(a, b) = 1`` iff the last ladder used by the walk accumulates at
  ``a``.  Canonical ladders never do, so ``rho3`` is identically ``0`` there;
  table overrides of the form ``"full"`` make it nontrivial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .csystem import CSystem, Whole
from .ordcore import (
    ZERO, Ordinal, OrdinalInterval, add, as_ordinal, compare, interval_is_infinite,
    ONE,
)

__all__ = [
    "WalkTrace", "FuelExhaustedError", "trace", "rho", "rho1", "rho2", "rho3",
    "max_l", "coherence_profile", "CoherenceProfile", "FiniteDiff",
    "PiecewiseDiff", "InfiniteWitness", "FuelExhausted", "profile_on",
    "DEFAULT_TRACE_FUEL", "DEFAULT_PROFILE_FUEL",
]

DEFAULT_TRACE_FUEL = 100_000
DEFAULT_PROFILE_FUEL = 100_000


class FuelExhaustedError(RuntimeError):
    """A walk or recursion ran past its step bound."""


@dataclass(frozen=True)
class WalkTrace:
    steps: tuple

    def __post_init__(self):
        if not self.steps:
            raise ValueError("a trace is never empty")

    @property
    def top(self) -> Ordinal:
        return self.steps[0]

    @property
    def bottom(self) -> Ordinal:
        return self.steps[-1]

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def as_strings(self):
        return [str(s) for s in self.steps]


def trace(C: CSystem, alpha, beta, fuel: int = DEFAULT_TRACE_FUEL) -> WalkTrace:
    alpha, beta = as_ordinal(alpha), as_ordinal(beta)
    if compare(alpha, beta) > 0:
        raise ValueError(f"trace needs alpha <= beta, got {alpha} > {beta}")
    steps = [beta]
    cur = beta
    while cur is not alpha:
        if len(steps) > fuel:
            raise FuelExhaustedError(f"walk from {beta} to {alpha} exceeded {fuel} steps")
        nxt = C.min_above(cur, alpha)
        if compare(nxt, cur) >= 0:
            raise FuelExhaustedError(f"C-system does not decrease at {cur}")
        steps.append(nxt)
        cur = nxt
    return WalkTrace(tuple(steps))


def _omax(a, b):
    """Max of two naturals-or-ordinals."""
    if isinstance(a, int) and isinstance(b, int):
        return a if a >= b else b
    return a if compare(as_ordinal(a), as_ordinal(b)) >= 0 else b


def rho1(C: CSystem, alpha, beta):
    alpha = as_ordinal(alpha)
    best = 0
    for xi in trace(C, alpha, beta).steps[:-1]:
        best = _omax(best, C.otp_below(xi, alpha))
    return best


def rho2(C: CSystem, alpha, beta) -> int:
    return len(trace(C, alpha, beta))


def rho3(C: CSystem, alpha, beta) -> int:
    alpha = as_ordinal(alpha)
    steps = trace(C, alpha, beta).steps
    if len(steps) < 2:
        return 0
    return int(C.sup_below_is(steps[-2], alpha))


def rho(kind: int, C: CSystem, alpha, beta):
    if kind == 1:
        return rho1(C, alpha, beta)
    if kind == 2:
        return rho2(C, alpha, beta)
    if kind == 3:
        return rho3(C, alpha, beta)
    raise ValueError(f"rho kind must be 1, 2 or 3, got {kind}")


def max_l(C: CSystem, alpha, beta) -> Ordinal:
    """Maximum over the walk's steps of ``max(C_xi ∩ alpha)``."""
    alpha, beta = as_ordinal(alpha), as_ordinal(beta)
    if compare(alpha, beta) >= 0:
        raise ValueError(f"max_l needs alpha < beta, got {alpha}, {beta}")
    best = ZERO
    for xi in trace(C, alpha, beta).steps[:-1]:
        m = C.max_below(xi, alpha)
        if compare(m, best) > 0:
            best = m
    return best


# ---------------------------------------------------------------------------
# coherence profiles


@dataclass(frozen=True)
class FiniteDiff:
    points: tuple  # sorted ordinals where the two functions differ


@dataclass(frozen=True)
class PiecewiseDiff:
    pieces: tuple  # ((lo, hi, value), ...) partitioning [0, beta)

    def value_at(self, xi: Ordinal) -> int:
        for lo, hi, v in self.pieces:
            if compare(lo, xi) <= 0 and compare(xi, hi) < 0:
                return v
        raise ValueError(f"{xi} outside the profile")


@dataclass(frozen=True)
class InfiniteWitness:
    interval: OrdinalInterval
    value: int = 0


@dataclass(frozen=True)
class FuelExhausted:
    cells: int
    partial: tuple = ()


Outcome = Union[FiniteDiff, PiecewiseDiff, InfiniteWitness, FuelExhausted]


@dataclass(frozen=True)
class CoherenceProfile:
    kind: int
    pair: tuple
    outcome: Outcome
    cells: int = 0

    @property
    def closed(self) -> bool:
        return isinstance(self.outcome, (FiniteDiff, PiecewiseDiff))


class _OutOfFuel(Exception):
    pass


def _succ(x: Ordinal) -> Ordinal:
    return add(x, ONE)


def _omin(a, b):
    return a if compare(a, b) <= 0 else b


def _omaxo(a, b):
    return a if compare(a, b) >= 0 else b


@dataclass
class _Engine:
    """Symbolic comparison of two walk functions on an interval.

    A *state* ``(node, adj)`` stands for the function ``xi -> F(rho(xi, node), adj)``
    with ``F(x, k) = max(x, k)`` for rho1 and ``F(x, k) = x + k`` for rho2.
    On ``[lo, hi)`` with ``hi <= node`` the walk from ``node`` takes its first
    step to the ladder point ``c_j`` for every ``xi`` in ``(c_(j-1), c_j]``, so
    the larger node is unfolded one ladder at a time until both states share
    a node.  Each unfolding is one *cell* of fuel.
    """

    kind: int
    C: CSystem
    fuel: int
    cells: int = 0
    memo: dict = field(default_factory=dict)
    out: list = field(default_factory=list)

    def tick(self):
        self.cells += 1
        if self.cells > self.fuel:
            raise _OutOfFuel()

    def direct(self, xi: Ordinal, node: Ordinal, adj):
        if node is None:  # constant state (full ladder, rho2 only)
            return adj
        if self.kind == 1:
            return _omax(rho1(self.C, xi, node), adj)
        return rho2(self.C, xi, node) + adj

    def pieces_of(self, node: Ordinal, lo: Ordinal, hi: Ordinal):
        """Yield ``("run", lo', hi', c, j)`` and ``("point", c, j)`` for the
        first step from ``node`` over ``[lo, hi)``."""
        lad = self.C.ladder(node)
        if isinstance(lad, Whole):
            raise TypeError("whole")
        j = lad.count_below(lo)
        start = lo
        while True:
            try:
                c = lad.point(j)
            except IndexError:
                return
            top = _omin(c, hi)
            if compare(start, top) < 0:
                yield ("run", start, top, c, j)
            if compare(c, hi) >= 0:
                return
            if compare(c, lo) >= 0:
                yield ("point", c, j)
            start = _succ(c)
            j += 1

    # -- rho2 ---------------------------------------------------------------
    def diff2(self, a, b, lo, hi):
        """Pieces of ``G_b - G_a`` on ``[lo, hi)``, appended to ``self.out``."""
        if compare(lo, hi) >= 0:
            return
        (na, oa), (nb, ob) = a, b
        if na is nb:
            self.out.append((lo, hi, ob - oa))
            return
        key = (na, oa, nb, ob, lo, hi)
        if key in self.memo:
            self.out.extend(self.memo[key])
            return
        self.tick()
        mark = len(self.out)
        # unfold the larger node; a constant state never needs unfolding
        swap = nb is None or (na is not None and compare(na, nb) > 0)
        if swap:
            (na, oa), (nb, ob) = (nb, ob), (na, oa)
        sign = -1 if swap else 1
        lad = self.C.ladder(nb)
        if isinstance(lad, Whole):
            st = ((na, oa), (None, ob + 2))
            self._diff2_signed(st, sign, lo, hi)
        else:
            for piece in self.pieces_of(nb, lo, hi):
                if piece[0] == "run":
                    _, l2, h2, c, _j = piece
                    self._diff2_signed(((na, oa), (c, ob + 1)), sign, l2, h2)
                else:
                    _, c, _j = piece
                    v = (2 + ob) - self.direct(c, na, oa)
                    self.out.append((c, _succ(c), sign * v))
        self.memo[key] = tuple(self.out[mark:])

    def _diff2_signed(self, pair, sign, lo, hi):
        a, b = pair
        if sign == 1:
            self.diff2(a, b, lo, hi)
        else:
            self.diff2(b, a, lo, hi)

    # -- rho1 ---------------------------------------------------------------
    def lows(self, node, k, lo, hi):
        """Points of ``[lo, hi)`` with ``rho1(xi, node) < k``."""
        if k <= 0 or compare(lo, hi) >= 0:
            return ()
        key = ("lows", node, k, lo, hi)
        if key in self.memo:
            return self.memo[key]
        self.tick()
        found = []
        for piece in self.pieces_of(node, lo, hi):
            if piece[0] == "run":
                _, l2, h2, c, j = piece
                if j >= k:
                    break
                found.extend(self.lows(c, k, l2, h2))
            else:
                _, c, j = piece
                if j >= k:
                    break
                found.append(c)
        res = tuple(found)
        self.memo[key] = res
        return res

    def diff1(self, a, b, lo, hi):
        if compare(lo, hi) >= 0:
            return ()
        (na, fa), (nb, fb) = a, b
        if na is nb:
            if fa == fb:
                return ()
            return self.lows(na, max(fa, fb), lo, hi)
        if compare(na, nb) > 0:
            (na, fa), (nb, fb) = (nb, fb), (na, fa)
        key = ("d1", na, fa, nb, fb, lo, hi)
        if key in self.memo:
            return self.memo[key]
        self.tick()
        found = []
        for piece in self.pieces_of(nb, lo, hi):
            if piece[0] == "run":
                _, l2, h2, c, j = piece
                found.extend(self.diff1((na, fa), (c, max(fb, j)), l2, h2))
            else:
                _, c, j = piece
                if max(fb, j) != self.direct(c, na, fa):
                    found.append(c)
        res = tuple(found)
        self.memo[key] = res
        return res


def _coalesce(pieces):
    out = []
    for lo, hi, v in pieces:
        if out and out[-1][2] == v and out[-1][1] is lo:
            out[-1] = (out[-1][0], hi, v)
        else:
            out.append((lo, hi, v))
    return tuple(out)


def profile_on(kind: int, C: CSystem, lower_top, upper_top, domain,
               fuel: int = DEFAULT_PROFILE_FUEL, offsets=(0, 0)) -> CoherenceProfile:
    """Compare ``rho(., lower_top)`` with ``rho(., upper_top)`` on ``[0, domain)``.

    ``domain`` may be any ordinal not above either top.  For kind 2 the
    outcome describes ``rho2(., upper_top) - rho2(., lower_top)``.
    """
    lower_top, upper_top, domain = as_ordinal(lower_top), as_ordinal(upper_top), as_ordinal(domain)
    if compare(domain, lower_top) > 0 or compare(domain, upper_top) > 0:
        raise ValueError("domain must not exceed either top")
    if kind == 1 and (C.is_whole(lower_top) or C.is_whole(upper_top)):
        raise ValueError("coherence profiles need ladder C-sequences (no 'full' ladders for rho1)")
    eng = _Engine(kind, C, fuel)
    pair = (lower_top, upper_top)
    try:
        if kind == 2:
            eng.diff2((lower_top, offsets[0]), (upper_top, offsets[1]), ZERO, domain)
            pieces = _coalesce(sorted(eng.out, key=_lo_key))
            return CoherenceProfile(2, pair, PiecewiseDiff(pieces), eng.cells)
        if kind == 1:
            pts = eng.diff1((lower_top, 0), (upper_top, 0), ZERO, domain)
            return CoherenceProfile(1, pair, FiniteDiff(_sorted_unique(pts)), eng.cells)
    except _OutOfFuel:
        return CoherenceProfile(kind, pair, FuelExhausted(eng.cells, tuple(eng.out)), eng.cells)
    raise ValueError(f"coherence profiles exist for rho1 and rho2, not kind {kind}")


def coherence_profile(kind: int, C: CSystem, beta, gamma,
                      fuel: int = DEFAULT_PROFILE_FUEL) -> CoherenceProfile:
    """Exact comparison of ``rho(., gamma)`` restricted to ``beta`` with ``rho(., beta)``.

    Kind 1 yields :class:`FiniteDiff` (the set where they differ); kind 2
    yields :class:`PiecewiseDiff` for ``rho2(., gamma) - rho2(., beta)``.  Fuel
    exhaustion is reported as :class:`FuelExhausted`, never as a verdict.
    """
    beta, gamma = as_ordinal(beta), as_ordinal(gamma)
    if compare(beta, gamma) >= 0:
        raise ValueError(f"coherence_profile needs beta < gamma, got {beta}, {gamma}")
    if C.variant == "full":
        raise ValueError("coherence profiles need a canonical or table C-system")
    return profile_on(kind, C, beta, gamma, beta, fuel)


def infinite_nonzero_piece(profile: PiecewiseDiff):
    """First piece on an infinite interval with nonzero value, or ``None``."""
    for lo, hi, v in profile.pieces:
        if v != 0 and interval_is_infinite(lo, hi):
            return InfiniteWitness(OrdinalInterval(lo, hi), v)
    return None


def _lo_key(piece):
    import functools
    return functools.cmp_to_key(compare)(piece[0])


def _sorted_unique(pts):
    import functools
    uniq = {p: None for p in pts}
    return tuple(sorted(uniq, key=functools.cmp_to_key(compare)))
