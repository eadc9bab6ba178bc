"""Exact linear algebra over a :class:`~cliffex.field.FieldSpec`.

Dense routines (determinant, solve, inverse) work on lists of lists of
field elements.  Determinants use fraction-free Bareiss elimination; over
the rationals each row is first scaled to integers so the elimination runs
on plain ints, which is much faster than Fraction arithmetic and exact by
construction.

Sparse routines work on rows stored as ``{column: value}`` dicts.  The
linear systems built downstream (centralizer conditions, bilinear-form
axioms) have one or two nonzeros per row, so the sparse reduction never
fills in and handles thousands of columns comfortably.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .errors import DimensionMismatch
from .field import FieldElement, FieldSpec

Matrix = list  # list[list[FieldElement]] by convention


def identity_matrix(dim: int, field: FieldSpec) -> Matrix:
    z, o = field.zero, field.one
    return [[o if i == j else z for j in range(dim)] for i in range(dim)]


def mat_mul(a: Matrix, b: Matrix, field: FieldSpec) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    z = field.zero
    cols = len(b[0])
    out = []
    for row in a:
        acc = [z] * cols
        for k, aik in enumerate(row):
            if not aik:
                continue
            brow = b[k]
            for j in range(cols):
                if brow[j]:
                    acc[j] = acc[j] + aik * brow[j]
        out.append(acc)
    return out


def mat_vec(a: Matrix, v: Sequence[FieldElement], field: FieldSpec) -> list:
    if len(a[0]) != len(v):
        raise DimensionMismatch(f"{len(a)}x{len(a[0])} matrix times length-{len(v)} vector")
    z = field.zero
    out = []
    for row in a:
        s = z
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def _int_bareiss(rows: list) -> int:
    """Determinant of an integer matrix by fraction-free elimination.

    Every interior division is exact (a classical property of the Bareiss
    recurrence), so the computation stays in plain ints throughout.
    """
    n = len(rows)
    a = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            rowi = a[i]
            rowk = a[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pivot - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def determinant(rows: Matrix, field: FieldSpec) -> FieldElement:
    """Exact determinant of a square matrix over ``field``."""
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise DimensionMismatch("determinant needs a square matrix")
    if n == 0:
        return field.one
    if field.is_rational:
        # Scale each row to integers, run the integer elimination, undo.
        scaled = []
        denom = Fraction(1)
        for row in rows:
            mult = lcm(*(c.denominator for c in row)) if n > 1 else row[0].denominator
            scaled.append([int(c * mult) for c in row])
            denom *= mult
        return Fraction(_int_bareiss(scaled)) / denom
    a = [row[:] for row in rows]
    sign = 1
    prev = field.one
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return field.zero
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - aik * a[k][j]) / prev
            a[i][k] = field.zero
        prev = pivot
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def solve_dense(a: Matrix, b: Sequence[FieldElement], field: FieldSpec) -> Optional[list]:
    """Solve ``a x = b`` by Gaussian elimination; None when singular."""
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise DimensionMismatch("solve needs a square system")
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = field.inv(m[col][col])
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n] for row in m]


def invert_matrix(a: Matrix, field: FieldSpec) -> Optional[Matrix]:
    """Inverse by Gauss-Jordan; None when singular."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise DimensionMismatch("inverse needs a square matrix")
    m = [list(row) + ident_row for row, ident_row in zip(a, identity_matrix(n, field))]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = field.inv(m[col][col])
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


# -- sparse reduction ----------------------------------------------------


def _sparse_rref(rows: list, field: FieldSpec, rhs: Optional[list] = None):
    """Reduce sparse rows to reduced row echelon form.

    ``rows`` is a list of ``{col: value}`` dicts; ``rhs`` an optional list
    of right-hand sides carried through the elimination.  Returns
    ``(pivot_rows, pivot_rhs, inconsistent)`` where ``pivot_rows`` maps a
    pivot column to its fully reduced row (pivot entry 1) and
    ``inconsistent`` flags a 0 = nonzero row.
    """
    pivot_rows: dict = {}
    pivot_rhs: dict = {}
    inconsistent = False
    use_rhs = rhs is not None
    for idx, raw in enumerate(rows):
        row = {c: v for c, v in raw.items() if v}
        r = field.element(rhs[idx]) if use_rhs else None
        # Eliminate every known pivot column from the row, not only the
        # leading one; a row whose minimum is fresh can still carry larger
        # columns that are already pivots, and storing it like that would
        # break the reduced form the solution readers depend on.
        while True:
            hits = row.keys() & pivot_rows.keys()
            if not hits:
                break
            c0 = min(hits)
            f = row.pop(c0)
            for c, v in pivot_rows[c0].items():
                if c == c0:
                    continue
                nv = row.get(c, field.zero) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            if use_rhs:
                r = r - f * pivot_rhs[c0]
        if not row:
            if use_rhs and r:
                inconsistent = True
            continue
        lead = min(row)
        inv = field.inv(row[lead])
        row = {c: v * inv for c, v in row.items()}
        if use_rhs:
            r = r * inv
        # Knock the new pivot column out of every stored row.
        for pc, prow in pivot_rows.items():
            if lead in prow:
                f = prow.pop(lead)
                for c, v in row.items():
                    if c == lead:
                        continue
                    nv = prow.get(c, field.zero) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
                if use_rhs:
                    pivot_rhs[pc] = pivot_rhs[pc] - f * r
        pivot_rows[lead] = row
        if use_rhs:
            pivot_rhs[lead] = r
    return pivot_rows, pivot_rhs, inconsistent


def kernel_basis(rows: list, ncols: int, field: FieldSpec) -> list:
    """Basis of the null space of a sparse homogeneous system.

    Returns one dense coefficient vector per free column, in ascending
    column order, each with a 1 in its free slot.
    """
    pivot_rows, _, _ = _sparse_rref(rows, field)
    z, o = field.zero, field.one
    basis = []
    for free in range(ncols):
        if free in pivot_rows:
            continue
        vec = [z] * ncols
        vec[free] = o
        for pc, prow in pivot_rows.items():
            coef = prow.get(free)
            if coef:
                vec[pc] = -coef
        basis.append(vec)
    return basis


def affine_solve(rows: list, rhs: list, ncols: int, field: FieldSpec):
    """Solve a sparse inhomogeneous system ``A x = b``.

    Returns ``(solution, nullity, consistent)``; the solution (free
    variables set to 0) is None when the system is inconsistent.
    """
    pivot_rows, pivot_rhs, inconsistent = _sparse_rref(rows, field, rhs)
    nullity = ncols - len(pivot_rows)
    if inconsistent:
        return None, nullity, False
    z = field.zero
    vec = [z] * ncols
    for pc in pivot_rows:
        vec[pc] = pivot_rhs[pc]
    return vec, nullity, True


def rank_sparse(rows: list, field: FieldSpec) -> int:
    pivot_rows, _, _ = _sparse_rref(rows, field)
    return len(pivot_rows)


def in_span(vectors: list, target: Sequence[FieldElement], field: FieldSpec) -> bool:
    """True when ``target`` is a linear combination of ``vectors``.

    Treats each vector as a column of a (dense coordinates, sparse storage)
    system and solves for the combination exactly.
    """
    if not any(target):
        return True
    if not vectors:
        return False
    length = len(target)
    rows = []
    rhs = []
    for i in range(length):
        row = {j: vec[i] for j, vec in enumerate(vectors) if vec[i]}
        rows.append(row)
        rhs.append(target[i])
    _, _, inconsistent = _sparse_rref(rows, field, rhs)
    return not inconsistent
