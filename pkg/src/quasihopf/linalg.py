"""Dense exact linear algebra over the cyclotomic field (small systems only)."""

from __future__ import annotations

from quasihopf.scalar import Cyclo, ONE, ZERO

Matrix = list[list[Cyclo]]
Vector = list[Cyclo]


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form, returning (matrix, pivot column list)."""
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        sel = None
        for i in range(r, rows):
            if not m[i][c].is_zero():
                sel = i
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = m[r][c].inv()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def nullspace(a: Matrix, cols: int | None = None) -> list[Vector]:
    """Basis of the right nullspace of a (rows may be empty)."""
    if not a:
        n = cols or 0
        return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    n = len(a[0])
    m, pivots = rref(a)
    basis: list[Vector] = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        v = [ZERO] * n
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Vector) -> Vector | None:
    """One solution of a x = b, or None if inconsistent."""
    n = len(a[0]) if a else 0
    aug = [row[:] + [b[i]] for i, row in enumerate(a)]
    m, pivots = rref(aug)
    for r in range(len(m)):
        if all(m[r][c].is_zero() for c in range(n)) and not m[r][n].is_zero():
            return None
    x = [ZERO] * n
    for r, pc in enumerate(pivots):
        if pc == n:
            return None
        x[pc] = m[r][n]
    return x


def matrix_inverse(a: Matrix) -> Matrix | None:
    n = len(a)
    aug = [a[i][:] + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [m[i][n:] for i in range(n)]


def rank(a: Matrix) -> int:
    _, pivots = rref(a)
    return len(pivots)


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return [sum((ai * vi for ai, vi in zip(row, v) if not vi.is_zero()), ZERO)
            for row in a]


def span_equal(basis_a: list[Vector], basis_b: list[Vector]) -> bool:
    """Do two lists of vectors span the same subspace?"""
    if not basis_a and not basis_b:
        return True
    if bool(basis_a) != bool(basis_b):
        return False
    ra = rank(basis_a)
    rb = rank(basis_b)
    rab = rank(basis_a + basis_b)
    return ra == rb == rab
