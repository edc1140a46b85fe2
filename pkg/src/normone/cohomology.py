"""Tate cohomology of a cyclic group acting on Z^m, by exact integer elimination."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError

Matrix = list  # list of rows of Python ints


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    if not cols:
        return [[] for _ in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def matsub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


@dataclass(frozen=True)
class SmithForm:
    """D = U * M * V with U, V unimodular and D diagonal, d_i | d_(i+1)."""

    D: Matrix
    U: Matrix
    V: Matrix
    V_inv: Matrix

    @property
    def diagonal(self) -> list:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> list:
        return [d for d in self.diagonal if d > 1]


def smith_normal_form(M: Matrix) -> SmithForm:
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V, Vi = identity(m), identity(n), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        piv = A[t][t]
        clean = True
        for i in range(t + 1, m):
            if A[i][t]:
                add_row(i, t, -(A[i][t] // piv))
                clean = clean and A[i][t] == 0
        for j in range(t + 1, n):
            if A[t][j]:
                add_col(j, t, -(A[t][j] // piv))
                clean = clean and A[t][j] == 0
        if not clean:
            continue
        bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv), None)
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if piv < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return SmithForm(A, U, V, Vi)


def _kernel_basis(M: Matrix, dim: int):
    """Integer basis of ker(M) on Z^dim, with the coordinate map onto it."""
    snf = smith_normal_form(M) if M else None
    if snf is None:
        return identity(dim), identity(dim), 0
    r = snf.rank
    basis = [row[r:] for row in snf.V]  # columns r.. of V
    return basis, snf.V_inv, r


def _quotient_factors(kernel_of: Matrix, image_of: Matrix, dim: int) -> list:
    """Invariant factors of ker(kernel_of) / im(image_of), given im within ker."""
    _, v_inv, r = _kernel_basis(kernel_of, dim)
    coords = matmul(v_inv, image_of)
    if any(any(row) for row in coords[:r]):
        raise ParameterError("image is not contained in the kernel")
    sub = coords[r:]
    if not sub:
        return []
    snf = smith_normal_form(sub)
    factors = snf.invariant_factors
    free = len(sub) - snf.rank
    return factors + [0] * free


@dataclass(frozen=True)
class LatticeAction:
    """A generator T of a Z/r action on Z^m (T^r = I)."""

    T: tuple
    r: int

    def __init__(self, T, r: int):
        T = tuple(tuple(int(a) for a in row) for row in T)
        dim = len(T)
        if any(len(row) != dim for row in T):
            raise ParameterError("action matrix must be square")
        if r < 1:
            raise ParameterError("order must be >= 1")
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "r", r)
        P = identity(dim)
        for _ in range(r):
            P = matmul(P, self.matrix)
        if P != identity(dim):
            raise ParameterError(f"T^{r} is not the identity")
        if dim and (smith_normal_form(self.matrix).rank != dim
                    or smith_normal_form(self.matrix).invariant_factors):
            raise ParameterError("T is not unimodular")

    @property
    def dim(self) -> int:
        return len(self.T)

    @property
    def matrix(self) -> Matrix:
        return [list(row) for row in self.T]

    def norm_matrix(self) -> Matrix:
        N = [[0] * self.dim for _ in range(self.dim)]
        P = identity(self.dim)
        for _ in range(self.r):
            N = [[a + b for a, b in zip(rn, rp)] for rn, rp in zip(N, P)]
            P = matmul(P, self.matrix)
        return N

    def minus_identity(self) -> Matrix:
        return matsub(self.matrix, identity(self.dim))


def tate_h1(A: LatticeAction) -> list:
    """ker(N) / im(T - I); an empty list means the group vanishes."""
    return _quotient_factors(A.norm_matrix(), A.minus_identity(), A.dim)


def tate_h2(A: LatticeAction) -> list:
    """ker(T - I) / im(N): fixed lattice modulo norms."""
    return _quotient_factors(A.minus_identity(), A.norm_matrix(), A.dim)


def regular_action(order: int, step: int = 1) -> LatticeAction:
    """Cyclic shift by ``step`` on Z^order, i.e. the subgroup generated by shift^step."""
    T = [[0] * order for _ in range(order)]
    for i in range(order):
        T[(i + step) % order][i] = 1
    return LatticeAction(T, order // math.gcd(order, step))


def trivial_action(r: int, dim: int = 1) -> LatticeAction:
    return LatticeAction(identity(dim), r)


def direct_sum(A: LatticeAction, B: LatticeAction) -> LatticeAction:
    dim = A.dim + B.dim
    T = [[0] * dim for _ in range(dim)]
    for i, row in enumerate(A.T):
        T[i][: A.dim] = row
    for i, row in enumerate(B.T):
        T[A.dim + i][A.dim:] = row
    return LatticeAction(T, math.lcm(A.r, B.r))
