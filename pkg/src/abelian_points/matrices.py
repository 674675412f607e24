"""Exact integer and integer-polynomial matrix algebra: SNF, HNF, determinants.

Matrices are immutable tuples of row tuples.  Everything is exact; unimodular
transforms are accumulated over the integers, so Smith normal forms are stated
up to sign and the divisibility chain, never up to floating error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInvariantError, InvalidInputError
from .numeric import valuation
from .polynomial import IntPolynomial

IntMatrix = tuple[tuple[int, ...], ...]
PolyMatrix = tuple[tuple[IntPolynomial, ...], ...]


def as_matrix(rows) -> IntMatrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise InvalidInputError("ragged matrix")
    return m


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def scalar_matrix(c: int, n: int) -> IntMatrix:
    return tuple(tuple(c if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_sub(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c: int, a: IntMatrix) -> IntMatrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_vec(a: IntMatrix, v) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    n = sum(len(b) for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for row in b:
            rows.append((0,) * offset + tuple(row) + (0,) * (n - offset - len(row)))
        offset += len(b)
    return tuple(rows)


def is_scalar_matrix(m: IntMatrix) -> bool:
    n = len(m)
    return all(m[i][j] == (m[0][0] if i == j else 0) for i in range(n) for j in range(n))


def _det_rows(rows: list[list], zero, one):
    """Laplace expansion over an arbitrary commutative ring; fine for n <= 4."""
    n = len(rows)
    if n == 0:
        return one
    if n == 1:
        return rows[0][0]
    total = zero
    for j, c in enumerate(rows[0]):
        if c == zero:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = c * _det_rows(minor, zero, one)
        total = total + term if j % 2 == 0 else total - term
    return total


def det(m: IntMatrix) -> int:
    return _det_rows([list(r) for r in m], 0, 1)


def adjugate(m: IntMatrix) -> IntMatrix:
    """adj(m) with adj(m) * m = det(m) * identity."""
    n = len(m)
    if n == 1:
        return ((1,),)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [m[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            cof = _det_rows(minor, 0, 1)
            out[j][i] = cof if (i + j) % 2 == 0 else -cof
    return tuple(tuple(r) for r in out)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    """U * M * V = diag(invariants), U and V unimodular, s_1 | s_2 | ..."""

    invariants: tuple[int, ...]
    u: IntMatrix
    v: IntMatrix


def snf(m: IntMatrix) -> SnfResult:
    """Smith normal form by smallest-pivot reduction; singular input allowed."""
    n = len(m)
    a = [list(r) for r in m]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        for k in range(n):
            a[i][k] -= q * a[j][k]
            u[i][k] -= q * u[j][k]

    def col_op(i, j, q):  # col_i -= q * col_j
        for k in range(n):
            a[k][i] -= q * a[k][j]
            v[k][i] -= q * v[k][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for k in range(n):
            a[k][i], a[k][j] = a[k][j], a[k][i]
            v[k][i], v[k][j] = v[k][j], v[k][i]

    for k in range(n):
        pivot = None
        best = None
        for i in range(k, n):
            for j in range(k, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    pivot, best = (i, j), abs(x)
        if pivot is None:
            break
        if pivot[0] != k:
            swap_rows(pivot[0], k)
        if pivot[1] != k:
            swap_cols(pivot[1], k)
        while True:
            i = next((i for i in range(k + 1, n) if a[i][k]), None)
            if i is not None:
                q = a[i][k] // a[k][k]
                row_op(i, k, q)
                if a[i][k]:
                    swap_rows(i, k)
                continue
            j = next((j for j in range(k + 1, n) if a[k][j]), None)
            if j is not None:
                q = a[k][j] // a[k][k]
                col_op(j, k, q)
                if a[k][j]:
                    swap_cols(j, k)
                continue
            bad = next(
                (
                    (i, j)
                    for i in range(k + 1, n)
                    for j in range(k + 1, n)
                    if a[i][j] % a[k][k]
                ),
                None,
            )
            if bad is None:
                break
            row_op(k, bad[0], -1)
    for k in range(n):
        if a[k][k] < 0:
            for j in range(n):
                a[k][j] = -a[k][j]
                u[k][j] = -u[k][j]
    return SnfResult(
        invariants=tuple(a[k][k] for k in range(n)),
        u=tuple(tuple(r) for r in u),
        v=tuple(tuple(r) for r in v),
    )


def cokernel_exponents(m: IntMatrix, ell: int) -> tuple[int, ...]:
    """Sorted ord_l of the invariant factors of a nonsingular integer matrix."""
    if det(m) == 0:
        raise InvalidInputError("cokernel exponents need a nonsingular matrix")
    return tuple(valuation(ell, s) for s in snf(m).invariants)


# ---------------------------------------------------------------------------
# Hermite normal form for column-generated sublattices


def hnf_from_columns(cols) -> IntMatrix:
    """Canonical upper-triangular column basis of a full-rank sublattice.

    Input columns may be redundant.  The result has positive diagonal and
    0 <= h[i][j] < h[i][i] for j > i, which makes it a unique key per lattice.
    """
    work = [list(c) for c in cols]
    n = len(work[0])
    placed: list[list[int]] = []
    for i in range(n - 1, -1, -1):
        while True:
            nz = [c for c in work if c[i]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(c[i]))
            piv = nz[0]
            for c in nz[1:]:
                q = c[i] // piv[i]
                for k in range(n):
                    c[k] -= q * piv[k]
        pivot_col = next((c for c in work if c[i]), None)
        if pivot_col is None:
            raise InternalInvariantError("columns do not span a full-rank lattice")
        work.remove(pivot_col)
        placed.append(pivot_col)
    placed.reverse()
    for j in range(n):
        if placed[j][j] < 0:
            placed[j] = [-x for x in placed[j]]
    for j in range(1, n):
        for i in range(j - 1, -1, -1):
            q = placed[j][i] // placed[i][i]
            if q:
                for k in range(n):
                    placed[j][k] -= q * placed[i][k]
    return tuple(tuple(placed[j][i] for j in range(n)) for i in range(n))


def solve_upper_triangular(h: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """Integer X with h * X = b for upper-triangular h, or None if none exists."""
    n = len(h)
    cols = []
    for c in range(len(b[0])):
        t = [b[r][c] for r in range(n)]
        x = [0] * n
        for j in range(n - 1, -1, -1):
            q, r = divmod(t[j], h[j][j])
            if r:
                return None
            x[j] = q
            for i in range(j):
                t[i] -= q * h[i][j]
        cols.append(x)
    return tuple(tuple(cols[c][r] for c in range(len(cols))) for r in range(n))


# ---------------------------------------------------------------------------
# Polynomial matrices

_PZERO = IntPolynomial(())
_PONE = IntPolynomial((1,))


def poly_matrix(rows) -> PolyMatrix:
    return tuple(
        tuple(x if isinstance(x, IntPolynomial) else IntPolynomial((int(x),)) for x in row)
        for row in rows
    )


def pm_from_int(m: IntMatrix) -> PolyMatrix:
    return tuple(tuple(IntPolynomial((x,)) for x in row) for row in m)


def pm_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    bt = tuple(zip(*b))
    out = []
    for row in a:
        out.append(
            tuple(
                sum((x * y for x, y in zip(row, col)), _PZERO) for col in bt
            )
        )
    return tuple(out)


def pm_eval_at_zero(pm: PolyMatrix) -> IntMatrix:
    return tuple(tuple(p.coefficient(0) for p in row) for row in pm)


def pm_det(pm: PolyMatrix) -> IntPolynomial:
    return _det_rows([list(r) for r in pm], _PZERO, _PONE)


def t_identity_minus(m: IntMatrix) -> PolyMatrix:
    """t * I - M as a polynomial matrix."""
    n = len(m)
    t = IntPolynomial((0, 1))
    return tuple(
        tuple((t - m[i][j]) if i == j else IntPolynomial((-m[i][j],)) for j in range(n))
        for i in range(n)
    )


def charpoly(m: IntMatrix) -> IntPolynomial:
    """det(t * I - M), monic of degree n."""
    return pm_det(t_identity_minus(m))


def matrix_poly_eval(f: IntPolynomial, m: IntMatrix) -> IntMatrix:
    """f(M) by Horner's scheme."""
    n = len(m)
    out = scalar_matrix(0, n)
    for c in reversed(f.coeffs):
        out = mat_mul(out, m)
        out = tuple(
            tuple(out[i][j] + (c if i == j else 0) for j in range(n)) for i in range(n)
        )
    return out


def companion_matrix(f: IntPolynomial) -> IntMatrix:
    """Companion matrix of a monic polynomial; charpoly(C) == f."""
    if not f.is_monic or f.degree < 1:
        raise InvalidInputError("companion matrix needs a monic polynomial of degree >= 1")
    d = f.degree
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        rows[i][d - 1] = -f.coeffs[i]
    for i in range(d - 1):
        rows[i + 1][i] += 1
    return tuple(tuple(r) for r in rows)
