"""Čech cochain complexes of finite cover models.

A :class:`CoverModel` names finitely many open sets and knows the label of
every intersection; a presheaf model assigns a group (as a tuple of
generator orders) to each label and a homomorphism to each inclusion.
``L^j`` is the direct sum over increasing ``(j+1)``-tuples of indices, and

    (d^j f)(a) = sum_i (-1)^i p(f(a without a_i)).

Cohomology, refinement maps and the connecting map of a short exact
sequence of coefficients are all computed with integer lattices through the
Smith normal form, so every answer is exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .finfun import finite_support
from .groupsalg import (
    FgAbelianGroup, GroupHom, homology_at, kernel_basis, kernel_lattice, relations,
    same_lattice, solve_int, zeros,
)
from .ordcore import OMEGA, add, as_ordinal, compare, format_ordinal
from .sampling import random_below, sort_ordinals

__all__ = [
    "CoverModel", "PresheafModel", "PointPresheaf", "TablePresheaf", "CochainComplexModel",
    "FunctorialityError", "build_complex", "cohomology", "refinement_map", "RefinementMap",
    "les_segment", "LesReport", "homotopy_check", "HomotopyReport", "cover_from_json",
    "random_cover", "random_cochain", "successor_map", "check_functoriality", "dd_violation",
]

EMPTY = frozenset()


def _sign(i: int) -> int:
    return -1 if i % 2 else 1


class FunctorialityError(ValueError):
    def __init__(self, triple, msg="restriction maps do not compose"):
        self.triple = triple
        super().__init__(f"{msg}: {triple}")


# ---------------------------------------------------------------------------
# covers


@dataclass(frozen=True)
class CoverModel:
    """Open sets named by ``indices``.

    Point-set covers store ``sets`` (index -> frozenset of points) and use
    frozensets as labels.  Explicit covers store an ``intersections`` table
    from sorted index tuples to labels and a ``subsets`` relation of
    ``(finer, coarser)`` label pairs.
    """

    indices: tuple
    sets: Mapping | None = field(default=None, hash=False)
    intersections: Mapping | None = field(default=None, hash=False)
    subsets: frozenset = frozenset()
    empty: object = EMPTY

    @classmethod
    def from_sets(cls, sets: Mapping) -> "CoverModel":
        return cls(tuple(sets), {k: frozenset(v) for k, v in sets.items()})

    def position(self, i) -> int:
        return self.indices.index(i)

    def label(self, tup: Sequence):
        tup = tuple(tup)
        if self.sets is not None:
            out = None
            for i in tup:
                out = self.sets[i] if out is None else out & self.sets[i]
            return out if out else EMPTY
        key = tuple(sorted(tup, key=self.position))
        if key in self.intersections:
            return self.intersections[key]
        # an unlisted tuple is empty if some listed sub-tuple already is
        for k in range(len(key) - 1, 0, -1):
            for sub in itertools.combinations(key, k):
                lab = self.intersections.get(sub)
                if lab == self.empty:
                    return self.empty
        raise ValueError(f"no label for the intersection {key}")

    def is_empty(self, lab) -> bool:
        return lab == self.empty

    def is_subset(self, finer, coarser) -> bool:
        if finer == coarser or finer == self.empty:
            return True
        if self.sets is not None or isinstance(finer, frozenset):
            return frozenset(finer) <= frozenset(coarser)
        return (finer, coarser) in self.subsets

    def labels(self, max_len: int | None = None) -> list:
        out = []
        top = len(self.indices) if max_len is None else min(max_len, len(self.indices))
        for k in range(1, top + 1):
            for t in itertools.combinations(self.indices, k):
                lab = self.label(t)
                if lab not in out:
                    out.append(lab)
        return out

    def to_json(self):
        if self.sets is not None:
            return {"sets": {k: sorted(v) for k, v in self.sets.items()}}
        return {"indices": list(self.indices), "empty": self.empty,
                "intersections": {"|".join(k): v for k, v in self.intersections.items()},
                "subsets": sorted([list(p) for p in self.subsets])}


def _closure(pairs) -> frozenset:
    rel = set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return frozenset(rel)


# ---------------------------------------------------------------------------
# presheaves


class PresheafModel:
    """Interface: ``section(label)`` gives generator orders, ``restriction``
    the map from a coarser to a finer label."""

    def section(self, lab) -> tuple:
        raise NotImplementedError

    def restriction(self, coarser, finer) -> GroupHom:
        raise NotImplementedError


@dataclass(frozen=True)
class PointPresheaf(PresheafModel):
    """``constant``: ``A`` on every nonempty set; ``functions``: ``⊕_U A``
    over the points of ``U`` with restriction by projection.

    ``coeff`` is a group or a tuple of generator orders (kept in order).
    """

    kind: str
    coeff: FgAbelianGroup | tuple

    def __post_init__(self):
        if self.kind not in ("constant", "functions"):
            raise ValueError(f"unknown presheaf type {self.kind!r}")

    @property
    def gens(self) -> tuple:
        c = self.coeff
        return c.orders if isinstance(c, FgAbelianGroup) else tuple(c)

    def _points(self, lab):
        return sorted(lab, key=repr)

    def section(self, lab) -> tuple:
        if not lab:
            return ()
        if self.kind == "constant":
            return self.gens
        return self.gens * len(lab)

    def restriction(self, coarser, finer) -> GroupHom:
        src, dst = self.section(coarser), self.section(finer)
        if not finer:
            return GroupHom.zero(src, dst)
        if not frozenset(finer) <= frozenset(coarser):
            raise ValueError(f"{sorted(finer)} is not inside {sorted(coarser)}")
        if self.kind == "constant":
            return GroupHom.identity(src)
        k = len(self.gens)
        pts_c, pts_f = self._points(coarser), self._points(finer)
        M = zeros(len(dst), len(src))
        for fi, p in enumerate(pts_f):
            ci = pts_c.index(p)
            for g in range(k):
                M[fi * k + g][ci * k + g] = 1
        return GroupHom(src, dst, M)

    def hom_from_coeff(self, coeff_hom: GroupHom, lab, target: "PointPresheaf") -> GroupHom:
        """The map ``self(lab) -> target(lab)`` induced by a coefficient map."""
        src, dst = self.section(lab), target.section(lab)
        if not lab:
            return GroupHom.zero(src, dst)
        copies = 1 if self.kind == "constant" else len(lab)
        r, c = len(coeff_hom.dst), len(coeff_hom.src)
        M = zeros(len(dst), len(src))
        for b in range(copies):
            for i in range(r):
                for j in range(c):
                    M[b * r + i][b * c + j] = coeff_hom.matrix[i][j]
        return GroupHom(src, dst, M)


@dataclass(frozen=True)
class TablePresheaf(PresheafModel):
    sections: Mapping = field(hash=False)
    maps: Mapping = field(hash=False)  # (coarser, finer) -> GroupHom
    empty: object = "0"

    def section(self, lab) -> tuple:
        if lab == self.empty:
            return ()
        return tuple(self.sections[lab])

    def restriction(self, coarser, finer) -> GroupHom:
        src, dst = self.section(coarser), self.section(finer)
        if finer == self.empty:
            return GroupHom.zero(src, dst)
        if coarser == finer and (coarser, finer) not in self.maps:
            return GroupHom.identity(src)
        try:
            return self.maps[(coarser, finer)]
        except KeyError:
            raise ValueError(f"no restriction map from {coarser} to {finer}") from None


def check_functoriality(cover: CoverModel, P: PresheafModel, labels=None):
    """Raise :class:`FunctorialityError` on the first failing triple."""
    labels = labels if labels is not None else cover.labels()
    labels = [x for x in labels if not cover.is_empty(x)]
    for u in labels:
        ident = P.restriction(u, u)
        if ident != GroupHom.identity(P.section(u)):
            raise FunctorialityError((u, u), "restriction to the same set is not the identity")
    for u, v, w in itertools.product(labels, repeat=3):
        if u == v or v == w:
            continue
        if cover.is_subset(v, u) and cover.is_subset(w, v):
            lhs = P.restriction(v, w).compose(P.restriction(u, v))
            if lhs != P.restriction(u, w):
                raise FunctorialityError((u, v, w))


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class CochainComplexModel:
    orders: tuple  # per degree: generator orders of L^j
    blocks: tuple  # per degree: ((tuple, offset, size), ...)
    differentials: tuple  # d^0 .. d^(J-1)

    def group(self, j: int) -> FgAbelianGroup:
        return FgAbelianGroup.from_orders(self.orders[j])

    @property
    def top(self) -> int:
        return len(self.orders) - 1

    def d(self, j: int) -> GroupHom:
        if j < 0:
            return GroupHom.zero((), self.orders[0])
        return self.differentials[j]

    def locate(self, j: int, row: int):
        for t, off, size in self.blocks[j]:
            if off <= row < off + size:
                return t
        return None


def _blocks(cover: CoverModel, P: PresheafModel, j: int):
    out, off, orders = [], 0, ()
    for t in itertools.combinations(cover.indices, j + 1):
        lab = cover.label(t)
        sec = P.section(lab) if not cover.is_empty(lab) else ()
        if sec:
            out.append((t, off, len(sec)))
            off += len(sec)
            orders += sec
    return tuple(out), orders


def build_complex(cover: CoverModel, P: PresheafModel, max_degree: int = 4,
                  check: bool = True) -> CochainComplexModel:
    """``L^0 .. L^max_degree`` with the alternating differentials.

    ``d^(j+1) d^j = 0`` is verified when ``check`` is set; a failure raises
    with the first offending block.
    """
    if check:
        check_functoriality(cover, P, cover.labels(max_degree + 1))
    blocks, orders = [], []
    for j in range(max_degree + 1):
        b, o = _blocks(cover, P, j)
        blocks.append(b)
        orders.append(o)
    diffs = []
    for j in range(max_degree):
        rows, cols = len(orders[j + 1]), len(orders[j])
        M = zeros(rows, cols)
        where = {t: (off, size) for t, off, size in blocks[j]}
        for t, roff, rsize in blocks[j + 1]:
            lab = cover.label(t)
            for i in range(len(t)):
                face = t[:i] + t[i + 1:]
                if face not in where:
                    continue
                coff, csize = where[face]
                p = P.restriction(cover.label(face), lab)
                s = _sign(i)
                for r in range(rsize):
                    for c in range(csize):
                        M[roff + r][coff + c] += s * p.matrix[r][c]
        diffs.append(GroupHom(orders[j], orders[j + 1], M))
    cx = CochainComplexModel(tuple(orders), tuple(blocks), tuple(diffs))
    if check:
        bad = dd_violation(cx)
        if bad is not None:
            raise ValueError(f"d^{bad[0] + 1} d^{bad[0]} is nonzero at block {bad[1]} <- {bad[2]}")
    return cx


def dd_violation(cx: CochainComplexModel):
    """``(j, target tuple, source tuple)`` of the first nonzero entry of
    ``d^(j+1) d^j``, or ``None``."""
    for j in range(len(cx.differentials) - 1):
        comp = cx.differentials[j + 1].compose(cx.differentials[j])
        for r, row in enumerate(comp.matrix):
            for c, v in enumerate(row):
                if v:
                    return (j, cx.locate(j + 2, r), cx.locate(j, c))
    return None


def cohomology(cx: CochainComplexModel, n: int) -> FgAbelianGroup:
    if not 0 <= n < cx.top:
        raise ValueError(f"degree {n} is out of range 0..{cx.top - 1}")
    return homology_at(cx.d(n - 1), cx.d(n))


# -- lattice views of cocycles and coboundaries ---------------------------------


def _cols(h: GroupHom) -> list:
    return [[h.matrix[i][j] for i in range(len(h.dst))] for j in range(len(h.src))]


def cocycles(cx: CochainComplexModel, n: int) -> list:
    return kernel_lattice(cx.d(n))


def coboundaries(cx: CochainComplexModel, n: int) -> list:
    return _cols(cx.d(n - 1)) + relations(cx.orders[n])


def _apply(h: GroupHom, v) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in h.matrix]


def _preimage(images: list, target: list, dim_out: int) -> list:
    """Coefficient vectors ``c`` with ``sum c_k images_k`` in the span of ``target``."""
    k = len(images)
    if k == 0:
        return []
    A = [[images[j][i] for j in range(k)] + [-t[i] for t in target] for i in range(dim_out)]
    if dim_out == 0:
        return [[int(i == j) for i in range(k)] for j in range(k)]
    return [v[:k] for v in kernel_basis(A, k + len(target))]


def _combine(basis: list, coeffs: list, dim: int) -> list:
    return [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(dim)]


# ---------------------------------------------------------------------------
# refinement


@dataclass
class RefinementMap:
    source: CochainComplexModel
    target: CochainComplexModel
    maps: list  # per degree, GroupHom L^j(V) -> L^j(W)
    commutes: bool

    def induced_equal(self, other: "RefinementMap", n: int) -> bool:
        """Whether both chain maps induce the same map on ``H^n``."""
        B = coboundaries(self.target, n)
        dim = len(self.target.orders[n])
        for z in cocycles(self.source, n):
            diff = [a - b for a, b in zip(_apply(self.maps[n], z), _apply(other.maps[n], z))]
            if solve_int(B, diff, dim) is None:
                return False
        return True

    def is_isomorphism(self, n: int) -> bool:
        Zv, Bv = cocycles(self.source, n), coboundaries(self.source, n)
        Zw, Bw = cocycles(self.target, n), coboundaries(self.target, n)
        dw, dv = len(self.target.orders[n]), len(self.source.orders[n])
        images = [_apply(self.maps[n], z) for z in Zv]
        onto = same_lattice(images + Bw, Zw, dw)
        coeffs = _preimage(images, Bw, dw)
        kernel = [_combine(Zv, c, dv) for c in coeffs]
        into = same_lattice(kernel + Bv, Bv, dv)
        return onto and into

    def induced_group_map(self, n: int):
        return cohomology(self.source, n), cohomology(self.target, n)


def _perm_sign(seq) -> int:
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def refinement_map(V: CoverModel, W: CoverModel, r: Mapping, P: PresheafModel,
                   max_degree: int = 3) -> RefinementMap:
    """Chain map ``L(V) -> L(W)`` for ``W`` refining ``V`` along ``r``."""
    for w in W.indices:
        if w not in r:
            raise ValueError(f"refinement map misses {w}")
        if not W.is_subset(W.label((w,)), V.label((r[w],))):
            raise ValueError(f"{w} is not inside {r[w]}")
    cv = build_complex(V, P, max_degree)
    cw = build_complex(W, P, max_degree)
    maps = []
    for j in range(max_degree + 1):
        M = zeros(len(cw.orders[j]), len(cv.orders[j]))
        where = {t: (off, size) for t, off, size in cv.blocks[j]}
        for t, roff, rsize in cw.blocks[j]:
            img = [r[w] for w in t]
            if len(set(img)) < len(img):
                continue
            pos = [V.position(x) for x in img]
            sgn = _perm_sign(pos)
            src = tuple(sorted(img, key=V.position))
            if src not in where:
                continue
            coff, csize = where[src]
            p = P.restriction(V.label(src), W.label(t))
            for a in range(rsize):
                for b in range(csize):
                    M[roff + a][coff + b] += sgn * p.matrix[a][b]
        maps.append(GroupHom(cv.orders[j], cw.orders[j], M))
    commutes = all(
        cw.d(j).compose(maps[j]) == maps[j + 1].compose(cv.d(j)) for j in range(max_degree)
    )
    return RefinementMap(cv, cw, maps, commutes)


# ---------------------------------------------------------------------------
# long exact sequence


@dataclass
class LesReport:
    degree: int
    exact_at_HnE: bool
    exact_at_HnF: bool
    exact_at_Hn1P: bool
    connecting_zero: bool
    groups: dict

    @property
    def exact(self) -> bool:
        return self.exact_at_HnE and self.exact_at_HnF and self.exact_at_Hn1P

    def to_json(self):
        return {"degree": self.degree, "exact_at_HnE": self.exact_at_HnE,
                "exact_at_HnF": self.exact_at_HnF, "exact_at_Hn1P": self.exact_at_Hn1P,
                "connecting_zero": self.connecting_zero,
                "groups": {k: str(v) for k, v in self.groups.items()}}


def _block_map(cover, cx_a, cx_b, per_label, j) -> GroupHom:
    M = zeros(len(cx_b.orders[j]), len(cx_a.orders[j]))
    where = {t: (off, size) for t, off, size in cx_a.blocks[j]}
    for t, roff, rsize in cx_b.blocks[j]:
        if t not in where:
            continue
        coff, csize = where[t]
        h = per_label(cover.label(t))
        for a in range(rsize):
            for b in range(csize):
                M[roff + a][coff + b] = h.matrix[a][b]
    return GroupHom(cx_a.orders[j], cx_b.orders[j], M)


def check_short_exact(src: tuple, mid: tuple, dst: tuple, inj: GroupHom, surj: GroupHom):
    """``0 -> src -> mid -> dst -> 0`` exact?  Returns a failure message or ``None``."""
    if not surj.compose(inj).is_zero():
        return "surj . inj is not zero"
    if not same_lattice(kernel_lattice(inj), relations(src), len(src)):
        return "inj is not injective"
    if not same_lattice(_cols(surj) + relations(dst), [[int(i == j) for i in range(len(dst))] for j in range(len(dst))], len(dst)):
        return "surj is not surjective"
    if not same_lattice(kernel_lattice(surj), _cols(inj) + relations(mid), len(mid)):
        return "image of inj differs from the kernel of surj"
    return None


def les_segment(cover: CoverModel, P: PresheafModel, E: PresheafModel, F: PresheafModel,
                inj, surj, n: int = 0) -> LesReport:
    """Connecting map ``H^n(F) -> H^(n+1)(P)`` and exactness around it.

    ``inj`` and ``surj`` map a label to the component homomorphism.
    """
    labels = cover.labels(n + 3)
    for lab in labels:
        if cover.is_empty(lab):
            continue
        msg = check_short_exact(P.section(lab), E.section(lab), F.section(lab), inj(lab), surj(lab))
        if msg:
            raise ValueError(f"coefficients are not short exact at {lab}: {msg}")
    top = n + 2
    cP, cE, cF = (build_complex(cover, X, top) for X in (P, E, F))
    I = [_block_map(cover, cP, cE, inj, j) for j in range(top + 1)]
    S = [_block_map(cover, cE, cF, surj, j) for j in range(top + 1)]
    dimE, dimF = len(cE.orders[n]), len(cF.orders[n])
    dimP1, dimE1 = len(cP.orders[n + 1]), len(cE.orders[n + 1])

    # exactness at H^n(E)
    ZP, ZE, ZF = cocycles(cP, n), cocycles(cE, n), cocycles(cF, n)
    BE, BF = coboundaries(cE, n), coboundaries(cF, n)
    im_I = [_apply(I[n], z) for z in ZP] + BE
    imgs = [_apply(S[n], z) for z in ZE]
    ker_S = [_combine(ZE, c, dimE) for c in _preimage(imgs, BF, dimF)] + BE
    at_E = same_lattice(im_I, ker_S, dimE)

    # connecting map on a basis of Z^n(F)
    lift_gens = _cols(S[n]) + relations(cF.orders[n])
    pull_gens = _cols(I[n + 1]) + relations(cE.orders[n + 1])
    delta = []
    for z in ZF:
        c = solve_int(lift_gens, z, dimF)
        if c is None:
            raise ValueError("cocycle does not lift; coefficients are not exact")
        e = c[:dimE]  # coefficients on the standard basis of L^n(E)
        y = _apply(cE.d(n), e)
        p = solve_int(pull_gens, y, dimE1)
        if p is None:
            raise ValueError("differential of the lift is not in the image of inj")
        delta.append(p[:dimP1])

    BP1 = coboundaries(cP, n + 1)
    im_S = imgs + BF
    ker_delta = [_combine(ZF, c, dimF) for c in _preimage(delta, BP1, dimP1)] + BF
    at_F = same_lattice(im_S, ker_delta, dimF)

    ZP1, BE1 = cocycles(cP, n + 1), coboundaries(cE, n + 1)
    im_delta = delta + BP1
    imgs1 = [_apply(I[n + 1], z) for z in ZP1]
    ker_I1 = [_combine(ZP1, c, dimP1) for c in _preimage(imgs1, BE1, dimE1)] + BP1
    at_P1 = same_lattice(im_delta, ker_I1, dimP1)

    connecting_zero = all(solve_int(BP1, v, dimP1) is not None for v in delta)
    groups = {f"H{n}(P)": cohomology(cP, n), f"H{n}(E)": cohomology(cE, n),
              f"H{n}(F)": cohomology(cF, n), f"H{n + 1}(P)": cohomology(cP, n + 1)}
    return LesReport(n, at_E, at_F, at_P1, connecting_zero, groups)


# ---------------------------------------------------------------------------
# the prism homotopy on covers by initial segments


@dataclass
class HomotopyReport:
    k: int
    checked: int
    holds: bool
    first_failure: tuple | None = None
    identity: str = "im - id = ds + sd"

    def to_json(self):
        out = {"identity": self.identity, "k": self.k, "tuples_checked": self.checked,
               "holds": self.holds}
        if self.first_failure is not None:
            out["first_failure"] = [format_ordinal(x) for x in self.first_failure]
        return out


def successor_map(C) -> dict:
    """``c_i -> c_(i+1)``, with the last point sent to itself plus ``w``."""
    C = sort_ordinals(as_ordinal(c) for c in C)
    out = {a: b for a, b in zip(C, C[1:])}
    if C:
        out[C[-1]] = add(C[-1], OMEGA)
    return out


def _check_mbar(C, mbar):
    for a in C:
        if a not in mbar:
            raise ValueError(f"m is undefined at {a}")
        if compare(a, mbar[a]) >= 0:
            raise ValueError(f"m({a}) = {mbar[a]} is not above {a}")
    for a, b in zip(C, C[1:]):
        if compare(mbar[a], mbar[b]) >= 0:
            raise ValueError(f"m is not increasing at {a} < {b}")


class _Cochain:
    """A cochain as a lazily filled map from increasing tuples to functions."""

    def __init__(self, fn, group):
        self.fn, self.group, self.cache = fn, group, {}

    def __call__(self, t):
        t = tuple(t)
        if t not in self.cache:
            self.cache[t] = self.fn(t)
        return self.cache[t]


def _d(f: _Cochain) -> _Cochain:
    def val(t):
        acc = None
        for i in range(len(t)):
            g = f(t[:i] + t[i + 1:]).restrict(t[0]).scale(_sign(i))
            acc = g if acc is None else acc + g
        return acc
    return _Cochain(val, f.group)


def _s(f: _Cochain, mbar) -> _Cochain:
    """``s(f)(a_0..a_(k-1)) = sum_j (-1)^j f(a_0..a_j, m a_j, .., m a_(k-1))``."""
    def val(t):
        acc = None
        for j in range(len(t)):
            hyb = t[:j + 1] + tuple(mbar[a] for a in t[j:])
            g = f(hyb).restrict(t[0]).scale(_sign(j))
            acc = g if acc is None else acc + g
        return acc
    return _Cochain(val, f.group)


_IDENTITIES = {"im": "im - id = ds + sd", "mi": "mi - id = dt + td"}


def homotopy_check(C, mbar: Mapping, f: Mapping, k: int, group: FgAbelianGroup | None = None,
                   identity: str = "im") -> HomotopyReport:
    """Verify ``f(m a)|a_0 - f(a) = (d s f)(a) + (s d f)(a)`` for every
    increasing ``(k+1)``-tuple ``a`` from ``C``.

    ``f`` maps increasing tuples of ``C ∪ m[C]`` to finitely supported
    functions with domain the tuple's least element.  ``identity`` only
    names the report: the inclusion into the sheafified complex and the
    plain complex share this formula.
    """
    if identity not in _IDENTITIES:
        raise ValueError(f"identity must be one of {sorted(_IDENTITIES)}")
    name = _IDENTITIES[identity]
    C = sort_ordinals(as_ordinal(c) for c in C)
    mbar = {as_ordinal(a): as_ordinal(b) for a, b in mbar.items()}
    _check_mbar(C, mbar)
    group = group or FgAbelianGroup(1)

    def base(t):
        if t in f:
            return f[t]
        return finite_support(t[0], group, {})
    F = _Cochain(base, group)
    dF = _d(F)
    checked = 0
    for t in itertools.combinations(C, k + 1):
        lhs = F(tuple(mbar[a] for a in t)).restrict(t[0]) - F(t)
        rhs = _d(_s(F, mbar))(t) if k >= 1 else None
        sd = _s(dF, mbar)(t)
        rhs = sd if rhs is None else rhs + sd
        checked += 1
        diff = lhs - rhs
        if diff.support() != ():
            return HomotopyReport(k, checked, False, t, name)
    return HomotopyReport(k, checked, True, None, name)


def random_cochain(C, mbar, k: int, rng: random.Random, group: FgAbelianGroup | None = None,
                   points: int = 3, vmax: int = 4) -> dict:
    """A random finitely supported ``k``-cochain on ``C ∪ m[C]``."""
    group = group or FgAbelianGroup(1)
    U = sort_ordinals(list(C) + list(mbar.values()))
    out = {}
    for t in itertools.combinations(U, k + 1):
        pts = {random_below(t[0], rng): tuple(rng.randint(-vmax, vmax) for _ in range(group.ngens))
               for _ in range(rng.randint(0, points))}
        out[t] = finite_support(t[0], group, pts)
    return out


# ---------------------------------------------------------------------------
# random and JSON covers


def random_cover(rng: random.Random, max_sets: int = 6, points: int = 6) -> CoverModel:
    universe = [f"p{i}" for i in range(points)]
    k = rng.randint(1, max_sets)
    sets = {}
    for i in range(k):
        s = [p for p in universe if rng.random() < 0.5] or [rng.choice(universe)]
        sets[f"U{i}"] = s
    return CoverModel.from_sets(sets)


def _orders_of(data) -> tuple:
    if isinstance(data, dict):
        return FgAbelianGroup.from_json(data).orders
    return tuple(int(x) for x in data)


def cover_from_json(data):
    """``(cover, presheaf)`` from either the point-set or the explicit schema."""
    if "sets" in data:
        cover = CoverModel.from_sets(data["sets"])
        ps = data.get("presheaf", {"type": "constant"})
        group = FgAbelianGroup.from_json(ps.get("group", {"rank": 1}))
        return cover, PointPresheaf(ps.get("type", "constant"), group)
    empty = data.get("empty", "0")
    inter = {tuple(k.split("|")): v for k, v in data["intersections"].items()}
    cover = CoverModel(tuple(data["indices"]), None, inter,
                       _closure(tuple(p) for p in data.get("subsets", [])), empty)
    sections = {k: _orders_of(v) for k, v in data["sections"].items()}
    maps = {}
    for key, M in data.get("restrictions", {}).items():
        a, b = key.split(">")
        src = () if a == empty else sections[a]
        dst = () if b == empty else sections[b]
        maps[(a, b)] = GroupHom(src, dst, M)
    return cover, TablePresheaf(sections, maps, empty)
