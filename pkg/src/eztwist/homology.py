"""Integer homology via Smith normal form."""

from __future__ import annotations

from typing import NamedTuple


class RankOverflow(ValueError):
    """A chain group exceeds the configured rank limit."""


class HomologyGroup(NamedTuple):
    k: int
    betti: int
    torsion: tuple

    def to_json(self):
        return {"k": self.k, "betti": self.betti, "torsion": list(self.torsion)}

    def __str__(self):
        parts = ["Z"] * self.betti + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def identity_matrix(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def smith_normal_form(M):
    """(D, U, V) with U M V = D diagonal, d_i | d_{i+1}, U and V unimodular.

    Pivots on the smallest nonzero absolute value in the active block.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    D = [list(row) for row in M]
    U = identity_matrix(m)
    V = identity_matrix(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row dst += k * row src
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
                v = D[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    if D[t][j]:
                        done = False
            if not done:
                # move the smallest remainder in row/column t to the pivot
                cands = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
                cands += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return D, U, V


def is_unimodular(A):
    return abs(_det(A)) == 1


def _det(A):
    """Exact determinant by fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def certify_snf(M, D, U, V):
    """Diagonality, divisibility, U M V = D and unimodularity of U, V."""
    m = len(M)
    n = len(M[0]) if m else 0
    if matmul(matmul(U, M), V) != D:
        return False
    diag = []
    for i in range(m):
        for j in range(n):
            if i != j and D[i][j]:
                return False
        if i < n:
            diag.append(D[i][i])
    nz = [d for d in diag if d]
    if any(d < 0 for d in nz) or any(b % a for a, b in zip(nz, nz[1:])):
        return False
    if any(diag[k] == 0 and any(diag[k + 1:]) for k in range(len(diag))):
        return False
    return is_unimodular(U) and is_unimodular(V)


def invariant_factors(M):
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def boundary_matrix(C, k, rows=None, cols=None):
    """Matrix of d: C_k -> C_{k-1}; rows index basis(k-1), columns basis(k)."""
    rows = C.basis(k - 1) if rows is None else rows
    cols = C.basis(k) if cols is None else cols
    index = {b: i for i, b in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, b in enumerate(cols):
        for f, c in C.boundary(b).items():
            try:
                M[index[f]][j] += c
            except KeyError:
                raise ValueError(f"{C.name}: boundary term {f!r} not in basis of degree {k - 1}") from None
    return M


def homology(C, degrees, max_rank=4000):
    """H_k(C) for k in ``degrees`` via SNF of the neighbouring differentials."""
    degrees = list(degrees)
    if not degrees:
        return []
    lo, hi = min(degrees), max(degrees)
    bases = {}
    for k in range(max(lo - 1, 0), hi + 2):
        bases[k] = C.basis(k) if k >= 0 else []
        if len(bases[k]) > max_rank:
            raise RankOverflow(f"{C.name}: rank {len(bases[k])} in degree {k} exceeds {max_rank}")
    factors = {}

    def facs(k):
        if k not in factors:
            if k <= 0 or not bases.get(k) or not bases.get(k - 1):
                factors[k] = []
            else:
                factors[k] = invariant_factors(boundary_matrix(C, k, bases[k - 1], bases[k]))
        return factors[k]

    out = []
    for k in degrees:
        rank_k = len(facs(k))
        above = facs(k + 1)
        betti = len(bases[k]) - rank_k - len(above)
        out.append(HomologyGroup(k, betti, tuple(d for d in above if d > 1)))
    return out


def kunneth_check(X, Y, degrees):
    """H(C(X x Y)) versus H(C(X) (x) C(Y)) over the given degrees."""
    from .chains import TensorComplex
    from .simplicial import ProductSpace

    a = homology(ProductSpace(X, Y), degrees)
    b = homology(TensorComplex(X, Y), degrees)
    return {"product": [h.to_json() for h in a], "tensor": [h.to_json() for h in b], "ok": a == b}
