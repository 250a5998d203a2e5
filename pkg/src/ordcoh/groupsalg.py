"""Finitely generated abelian groups over the integers.

Matrices are lists of rows of Python ints, so arithmetic never overflows.
A group element is a tuple of ints, one per generator; generator ``i`` has
order ``orders[i]`` where ``0`` means infinite order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "Matrix", "identity", "zeros", "matmul", "transpose", "smith_normal_form",
    "FgAbelianGroup", "GroupHom", "homology_at", "kernel_basis", "solve_int",
    "in_lattice", "same_lattice", "determinant", "is_unimodular",
    "NotAComplexError",
]

Matrix = list


class NotAComplexError(ValueError):
    """``g ∘ f`` is not zero."""


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def shape(M: Matrix, cols: int | None = None):
    return len(M), (len(M[0]) if M else (cols or 0))


def matmul(A: Matrix, B: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    """``A @ B``; ``cols`` gives the column count when ``B`` has no rows."""
    if not B:
        return zeros(len(A), cols or 0)
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(M: Matrix, cols: int = 0) -> Matrix:
    if not M:
        return [[] for _ in range(cols)]
    return [list(c) for c in zip(*M)]


def smith_normal_form(M: Matrix, cols: int | None = None):
    """Return ``(U, D, V)`` with ``D = U M V`` in Smith normal form.

    Pivots are chosen by least absolute value, ties to the lowest (row, col)
    index.  ``cols`` is needed only when ``M`` has no rows.
    """
    m, n = shape(M, cols)
    D = [list(r) for r in M]
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(D[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if not dirty:
                # the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % p), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # a remainder is smaller than the pivot: move it into place
            best = None
            for i in range(t, m):
                v = abs(D[i][t])
                if v and (best is None or v < best[0]):
                    best = (v, i, t)
            for j in range(t, n):
                v = abs(D[t][j])
                if v and v < best[0]:
                    best = (v, t, j)
            swap_rows(t, best[1])
            swap_cols(t, best[2])
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, D, V


def diagonal(D: Matrix) -> list:
    return [D[i][i] for i in range(min(shape(D)))]


def determinant(M: Matrix) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k]), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _rank_mod(M: Matrix, p: int) -> int:
    A = [[x % p for x in r] for r in M]
    rank, rows = 0, len(A)
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for r in range(rows):
            if r != rank and A[r][c]:
                k = A[r][c]
                A[r] = [(x - k * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def is_unimodular(M: Matrix) -> bool:
    """Exact determinant up to size 8; invertibility mod several primes above."""
    n = len(M)
    if any(len(r) != n for r in M):
        return False
    if n <= 8:
        return abs(determinant(M)) == 1
    return all(_rank_mod(M, p) == n for p in (2, 3, 5, 7, 1_000_003, 998_244_353))


# ---------------------------------------------------------------------------
# lattices in Z^n; vectors are lists, bases are lists of column vectors


def kernel_basis(M: Matrix, cols: int) -> list:
    """A basis of ``{x in Z^cols : M x = 0}`` as a list of vectors."""
    _, D, V = smith_normal_form(M, cols)
    r = sum(1 for d in diagonal(D) if d)
    return [[V[i][j] for i in range(cols)] for j in range(r, cols)]


def solve_int(gens: list, target: Sequence[int], dim: int):
    """Integer ``c`` with ``sum c_j gens_j = target``, or ``None``."""
    k = len(gens)
    if k == 0:
        return [] if not any(target) else None
    if dim == 0:
        return [0] * k
    A = transpose(gens)  # dim x k
    U, D, V = smith_normal_form(A, k)
    b = [sum(u * t for u, t in zip(row, target)) for row in U]
    y = [0] * k
    for i in range(dim):
        d = D[i][i] if i < k else 0
        if d == 0:
            if b[i]:
                return None
        else:
            if b[i] % d:
                return None
            y[i] = b[i] // d
    return [sum(V[i][j] * y[j] for j in range(k)) for i in range(k)]


def in_lattice(gens: list, v: Sequence[int], dim: int) -> bool:
    return solve_int(gens, v, dim) is not None


def same_lattice(a: list, b: list, dim: int) -> bool:
    return all(in_lattice(a, v, dim) for v in b) and all(in_lattice(b, v, dim) for v in a)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`` with ``t_i | t_(i+1)``."""

    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        tor = tuple(int(t) for t in self.torsion)
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if any(t < 2 for t in tor):
            raise ValueError(f"torsion entries must be >= 2, got {tor}")
        if any(b % a for a, b in zip(tor, tor[1:])):
            raise ValueError(f"torsion must be divisibility-ordered, got {tor}")
        object.__setattr__(self, "torsion", tor)

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FgAbelianGroup":
        """Invariant-factor form of ``⊕ Z/o`` (``o = 0`` for ``Z``, ``1`` dropped)."""
        M = [[0] * len(orders) for _ in orders]
        for i, o in enumerate(orders):
            M[i][i] = o
        return cls.cokernel(M, len(orders))

    @classmethod
    def cokernel(cls, relations: Matrix, dim: int) -> "FgAbelianGroup":
        """``Z^dim`` modulo the column span of ``relations`` (``dim`` rows)."""
        ncols = len(relations[0]) if relations else 0
        if dim == 0:
            return cls()
        if ncols == 0:
            return cls(dim)
        _, D, _ = smith_normal_form(relations)
        d = [abs(x) for x in diagonal(D)] + [0] * (dim - min(dim, ncols))
        return cls(sum(1 for x in d if x == 0), tuple(x for x in d if x > 1))

    @property
    def orders(self) -> tuple:
        return (0,) * self.rank + self.torsion

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def integer_embedded(self) -> bool:
        return self.rank == 1 and not self.torsion

    def zero(self) -> tuple:
        return (0,) * self.ngens

    def reduce(self, x: Sequence[int]) -> tuple:
        if len(x) != self.ngens:
            raise ValueError(f"element {tuple(x)} has wrong length for {self}")
        return tuple(v % o if o else v for v, o in zip(x, self.orders))

    def add(self, x, y) -> tuple:
        return self.reduce([a + b for a, b in zip(x, y)])

    def neg(self, x) -> tuple:
        return self.reduce([-a for a in x])

    def scale(self, k: int, x) -> tuple:
        return self.reduce([k * a for a in x])

    def element(self, value) -> tuple:
        if isinstance(value, int):
            if self.ngens != 1:
                raise ValueError(f"integer element needs a cyclic group, not {self}")
            value = (value,)
        return self.reduce(list(value))

    def __str__(self):
        parts = (["Z"] if self.rank == 1 else [f"Z^{self.rank}"] if self.rank else [])
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data) -> "FgAbelianGroup":
        return cls(int(data.get("rank", 0)), tuple(data.get("torsion", ())))


def direct_sum(groups: Sequence[FgAbelianGroup]) -> tuple:
    """Generator orders of the external direct sum (not reduced to invariant factors)."""
    out = ()
    for g in groups:
        out += g.orders
    return out


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism between groups given by generator orders.

    ``src`` and ``dst`` are tuples of generator orders (``0`` = infinite), so
    direct sums of invariant-factor groups are representable without
    re-diagonalizing.  ``matrix`` is ``len(dst) x len(src)``.
    """

    src: tuple
    dst: tuple
    matrix: tuple

    def __post_init__(self):
        src, dst = tuple(self.src), tuple(self.dst)
        rows = [list(r) for r in self.matrix]
        if len(rows) != len(dst) or any(len(r) != len(src) for r in rows):
            raise ValueError(f"matrix shape does not match {len(dst)}x{len(src)}")
        for i, o in enumerate(dst):
            if o:
                rows[i] = [v % o for v in rows[i]]
        # a generator of order k must map to an element killed by k
        for j, k in enumerate(src):
            if k and any((k * rows[i][j]) % o if o else k * rows[i][j] for i, o in enumerate(dst)):
                raise ValueError(f"generator {j} of order {k} has an image of larger order")
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in rows))

    @classmethod
    def between(cls, a: FgAbelianGroup, b: FgAbelianGroup, matrix) -> "GroupHom":
        return cls(a.orders, b.orders, matrix)

    @classmethod
    def zero(cls, src: tuple, dst: tuple) -> "GroupHom":
        return cls(tuple(src), tuple(dst), tuple((0,) * len(src) for _ in dst))

    @classmethod
    def identity(cls, orders: tuple) -> "GroupHom":
        return cls(tuple(orders), tuple(orders), tuple(map(tuple, identity(len(orders)))))

    def rows(self) -> Matrix:
        return [list(r) for r in self.matrix]

    def __call__(self, x: Sequence[int]) -> tuple:
        y = [sum(a * b for a, b in zip(r, x)) for r in self.matrix]
        return tuple(v % o if o else v for v, o in zip(y, self.dst))

    def compose(self, first: "GroupHom") -> "GroupHom":
        """``self ∘ first``."""
        if first.dst != self.src:
            raise ValueError("cannot compose: codomain/domain mismatch")
        return GroupHom(first.src, self.dst, matmul(self.rows(), first.rows(), cols=len(first.src)))

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.matrix for v in r)

    def __add__(self, other: "GroupHom") -> "GroupHom":
        if (self.src, self.dst) != (other.src, other.dst):
            raise ValueError("cannot add homs with different shapes")
        return GroupHom(self.src, self.dst, [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)])

    def __neg__(self) -> "GroupHom":
        return GroupHom(self.src, self.dst, [[-a for a in r] for r in self.matrix])

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        return self + (-other)


def relations(orders: Sequence[int]) -> list:
    """Columns ``o_i e_i`` presenting ``⊕ Z/o_i`` as a quotient of ``Z^n``."""
    n = len(orders)
    return [[o if i == j else 0 for i in range(n)] for j, o in enumerate(orders) if o]


def kernel_lattice(g: GroupHom) -> list:
    """Lattice in ``Z^len(src)`` whose image mod relations is ``ker g``."""
    n = len(g.src)
    rel_c = relations(g.dst)
    # [G | R_C] (x, y) = 0  ->  project to x
    big = [list(row) + [col[i] for col in rel_c] for i, row in enumerate(g.matrix)]
    if not g.dst:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    ker = kernel_basis(big, n + len(rel_c))
    return [v[:n] for v in ker]


def subgroup_quotient(sub_gens: list, big_gens: list, dim: int) -> FgAbelianGroup:
    """``<big_gens> / <sub_gens>`` for lattices in ``Z^dim`` with ``sub ⊆ big``."""
    basis = _lattice_basis(big_gens, dim)
    if not basis:
        return FgAbelianGroup()
    coords = []
    for v in sub_gens:
        c = solve_int(basis, v, dim)
        if c is None:
            raise ValueError("subgroup generator lies outside the ambient lattice")
        coords.append(c)
    rel = transpose(coords, len(basis)) if coords else []
    if not coords:
        return FgAbelianGroup(len(basis))
    return FgAbelianGroup.cokernel(rel, len(basis))


def _lattice_basis(gens: list, dim: int) -> list:
    """A basis (linearly independent generators) of the span of ``gens``."""
    if not gens or dim == 0:
        return []
    A = transpose(gens)  # dim x k
    U, D, V = smith_normal_form(A)
    r = sum(1 for d in diagonal(D) if d)
    # column span of A = U^-1 D V^-1 ... use A V: its first r columns span the image
    AV = matmul(A, V)
    return [[AV[i][j] for i in range(dim)] for j in range(r)]


def homology_at(f: GroupHom, g: GroupHom) -> FgAbelianGroup:
    """``ker g / im f`` for ``A --f--> B --g--> C`` with ``g ∘ f = 0``."""
    if f.dst != g.src:
        raise ValueError("homology_at: codomain of f differs from domain of g")
    if not g.compose(f).is_zero():
        raise NotAComplexError("g ∘ f is not zero")
    n = len(f.dst)
    ker = kernel_lattice(g)
    im = [[f.matrix[i][j] for i in range(n)] for j in range(len(f.src))] + relations(f.dst)
    return subgroup_quotient(im, ker, n)
