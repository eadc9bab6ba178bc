"""Operators attached to algebra elements.

Left and right translation by a fixed element are linear maps on the
underlying 2^n-dimensional coefficient space; their exact determinants
decide zero-divisorhood and invertibility.  This module also builds the
algebra isomorphism induced by a linear change of generators that carries
one diagonal form to another, and runs the linear-system solver probing
how far the axioms of the canonical pairing pin it down in low dimension.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from . import linalg
from .core import Multivector, QuadraticForm, conjugate_sign, involute_sign
from .errors import (
    CapExceeded,
    DimensionMismatch,
    InternalInconsistency,
    MismatchedForm,
    NotEquivalent,
    NotInvertible,
    SingularTransformation,
    ZeroElement,
)
from .field import FieldElement


def left_matrix(a: Multivector) -> list:
    """Matrix of y -> a * y in the blade basis (columns index the input)."""
    form = a.form
    dim = form.dim
    zero = form.field.zero
    rows = [[zero] * dim for _ in range(dim)]
    for mi, ci in a.terms():
        for mj in range(dim):
            coef, mk = form.blade_product(mi, mj)
            rows[mk][mj] = rows[mk][mj] + ci * coef
    return rows


def right_matrix(a: Multivector) -> list:
    """Matrix of y -> y * a in the blade basis."""
    form = a.form
    dim = form.dim
    zero = form.field.zero
    rows = [[zero] * dim for _ in range(dim)]
    for mi, ci in a.terms():
        for mj in range(dim):
            coef, mk = form.blade_product(mj, mi)
            rows[mk][mj] = rows[mk][mj] + ci * coef
    return rows


def translation_determinants(a: Multivector) -> tuple:
    """Exact determinants (left, right) of the two translations by ``a``."""
    f = a.form.field
    return (
        linalg.determinant(left_matrix(a), f),
        linalg.determinant(right_matrix(a), f),
    )


def is_zero_divisor(a: Multivector) -> bool:
    """True when a nonzero ``a`` kills some nonzero element on either side."""
    if a.is_zero():
        raise ZeroElement("zero-divisor test needs a nonzero element")
    dl, dr = translation_determinants(a)
    return (not dl) or (not dr)


def is_invertible(a: Multivector) -> bool:
    if a.is_zero():
        raise ZeroElement("invertibility test needs a nonzero element")
    return not is_zero_divisor(a)


def inverse(a: Multivector) -> Multivector:
    """Two-sided inverse of ``a``; raises :class:`NotInvertible` otherwise."""
    if a.is_zero():
        raise ZeroElement("the zero element has no inverse")
    form = a.form
    one_vec = [form.field.zero] * form.dim
    one_vec[0] = form.field.one
    sol = linalg.solve_dense(left_matrix(a), one_vec, form.field)
    if sol is None:
        raise NotInvertible("zero divisor")
    inv = form.multivector(sol)
    if a * inv != form.one() or inv * a != form.one():
        raise InternalInconsistency("one-sided inverse failed the two-sided check")
    return inv


def pairing_adjoint(rows: list, form: QuadraticForm) -> list:
    """Adjoint of a matrix with respect to the canonical diagonal pairing."""
    gram = form.gram_diagonal()
    dim = form.dim
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise DimensionMismatch("adjoint needs a dim x dim matrix")
    f = form.field
    return [
        [f.inv(gram[a]) * rows[b][a] * gram[b] for b in range(dim)]
        for a in range(dim)
    ]


# -- equivalence of forms ------------------------------------------------


@dataclass
class AlgebraMap:
    """Algebra homomorphism induced by a generator substitution.

    ``blade_images[I]`` is the image of basis blade I; applying the map is
    plain linear extension.  Construction verifies multiplicativity on all
    blade pairs up to the stated cap.
    """

    source: QuadraticForm
    target: QuadraticForm
    vector_matrix: list
    blade_images: list = dc_field(repr=False)

    def apply(self, x: Multivector) -> Multivector:
        if x.form != self.source:
            raise MismatchedForm("element does not live over the map's source form")
        acc = self.target.zero()
        for mask, c in x.terms():
            acc = acc + self.blade_images[mask] * c
        return acc

    def matrix(self) -> list:
        """Dense dim x dim matrix of the map (columns index source blades)."""
        dim = self.source.dim
        zero = self.target.field.zero
        rows = [[zero] * dim for _ in range(dim)]
        for j in range(dim):
            img = self.blade_images[j]
            for i in range(dim):
                rows[i][j] = img.coeffs[i]
        return rows

    def inverse(self) -> "AlgebraMap":
        inv = linalg.invert_matrix(self.vector_matrix, self.source.field)
        if inv is None:
            raise SingularTransformation("generator matrix is singular")
        return equivalence_isomorphism(inv, self.target, self.source)

    def verify_multiplicative(self) -> bool:
        """Check map(x*y) = map(x)*map(y) on every pair of basis blades."""
        src = self.source
        for a in range(src.dim):
            img_a = self.blade_images[a]
            for b in range(src.dim):
                coef, k = src.blade_product(a, b)
                if img_a * self.blade_images[b] != self.blade_images[k] * coef:
                    return False
        return True


_MULTIPLICATIVITY_CAP = 6


def equivalence_isomorphism(
    t: list, source: QuadraticForm, target: QuadraticForm
) -> AlgebraMap:
    """Algebra isomorphism from the substitution e_j -> sum_i t[i][j] e_i.

    ``t`` must be an invertible n x n matrix whose substitution pulls the
    target's form back to the source's, i.e. transpose(t) G_target t =
    G_source on the generators; otherwise :class:`NotEquivalent`.  The
    resulting map sends a source blade to the ordered product of its
    generators' images and is multiplicative; construction checks that on
    all blade pairs when n <= 6.
    """
    if source.field != target.field or source.n != target.n:
        raise MismatchedForm("equivalence needs two forms of equal rank over one field")
    f = source.field
    n = source.n
    if len(t) != n or any(len(row) != n for row in t):
        raise DimensionMismatch(f"substitution matrix must be {n} x {n}")
    rows = [[f.element(v) for v in row] for row in t]
    if not linalg.determinant(rows, f):
        raise SingularTransformation("substitution matrix is singular")

    # Pullback condition on generators: images must be orthogonal with the
    # source's squared lengths.
    for a in range(n):
        for b in range(a, n):
            acc = f.zero
            for i in range(n):
                if rows[i][a] and rows[i][b]:
                    acc = acc + rows[i][a] * target.diag[i] * rows[i][b]
            want = source.diag[a] if a == b else f.zero
            if acc != want:
                raise NotEquivalent(
                    f"substitution does not carry the form: generator pair ({a + 1}, {b + 1})"
                )

    gen_images = [target.vector([rows[i][j] for i in range(n)]) for j in range(n)]
    blade_images: list = [target.one()]
    for mask in range(1, source.dim):
        low = mask & -mask
        rest = mask ^ low
        img = gen_images[low.bit_length() - 1]
        blade_images.append(img * blade_images[rest] if rest else img)
    amap = AlgebraMap(source, target, rows, blade_images)
    if n <= _MULTIPLICATIVITY_CAP and not amap.verify_multiplicative():
        raise InternalInconsistency("constructed map failed multiplicativity")
    return amap


# -- uniqueness of the canonical pairing ---------------------------------


@dataclass(frozen=True)
class UniquenessReport:
    """Outcome of solving the pairing axioms as a linear system.

    ``kernel`` holds one symmetric matrix per free direction of the solution
    set (empty when the solution is unique).  ``kernel_is_volume_twist`` is
    set when the nullity is exactly one: it records whether that free
    direction is spanned by the volume-twisted pairing
    ``D(x, y) = B(x, omega * y)``, the only way the axioms below fail to
    pin the pairing down (this happens precisely when n = 3 mod 4, where
    the volume blade is central and fixed by conjugation).
    """

    n: int
    unknowns: int
    rank: int
    nullity: int
    consistent: bool
    unique: bool
    matches_canonical: bool
    solution: Optional[tuple]
    kernel: tuple = ()
    kernel_is_volume_twist: Optional[bool] = None


_UNIQUENESS_CAP = 3


def pairing_uniqueness_report(
    form: QuadraticForm,
    cap: int = _UNIQUENESS_CAP,
    require_parity_invariance: bool = False,
) -> UniquenessReport:
    """Set up the axioms of the canonical pairing as linear equations.

    Unknowns are the values B(e_A, e_B) on unordered pairs of basis blades
    (symmetry built in).  Equations: B(1, 1) = 1; B restricted to grade one
    equals the quadratic form; and both adjointness laws
    B(x y, z) = B(y, c(x) z) and B(y x, z) = B(y, z c(x)) on all basis
    triples.  The report records whether the system has exactly one
    solution and whether it is the canonical pairing.

    That axiom list does not always force uniqueness.  When n = 3 mod 4
    the volume blade omega is central and conjugation fixes it, so
    B(x, omega * y) is itself symmetric, vanishes on scalars and on grade
    one, and satisfies both adjointness laws; adding any multiple of it to
    the canonical pairing produces another solution.  Passing
    ``require_parity_invariance=True`` additionally imposes
    B(alpha(x), alpha(y)) = B(x, y) for the parity involution alpha, which
    kills the twisted family and restores a unique solution.
    """
    if form.n > cap:
        raise CapExceeded(f"uniqueness solve is capped at n = {cap}")
    f = form.field
    dim = form.dim

    def unknown(a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        # Index into the packed upper triangle, row-major.
        return a * dim - a * (a - 1) // 2 + (b - a)

    unknowns = dim * (dim + 1) // 2
    rows: list = []
    rhs: list = []

    rows.append({unknown(0, 0): f.one})
    rhs.append(f.one)

    for i in range(form.n):
        for j in range(i, form.n):
            rows.append({unknown(1 << i, 1 << j): f.one})
            rhs.append(form.diag[i] if i == j else f.zero)

    if require_parity_invariance:
        # B(alpha(e_a), alpha(e_b)) = B(e_a, e_b) forces the entry to zero
        # whenever the two parity signs disagree.
        for a in range(dim):
            for b in range(a, dim):
                if involute_sign(a) * involute_sign(b) < 0:
                    rows.append({unknown(a, b): f.one})
                    rhs.append(f.zero)

    csign = [conjugate_sign(m) for m in range(dim)]
    for a in range(dim):
        for b in range(dim):
            lam, m_ab = form.blade_product(a, b)
            for c in range(dim):
                mu, m_ac = form.blade_product(a, c)
                if csign[a] < 0:
                    mu = -mu
                row: dict = {unknown(m_ab, c): lam}
                key = unknown(b, m_ac)
                row[key] = row.get(key, f.zero) - mu
                if any(row.values()):
                    rows.append({k: v for k, v in row.items() if v})
                    rhs.append(f.zero)
                # Right-translation law: B(y x, z) = B(y, z c(x)).
                lam2, m_ba = form.blade_product(b, a)
                mu2, m_ca = form.blade_product(c, a)
                if csign[a] < 0:
                    mu2 = -mu2
                row2: dict = {unknown(m_ba, c): lam2}
                key2 = unknown(b, m_ca)
                row2[key2] = row2.get(key2, f.zero) - mu2
                if any(row2.values()):
                    rows.append({k: v for k, v in row2.items() if v})
                    rhs.append(f.zero)

    solution, nullity, consistent = linalg.affine_solve(rows, rhs, unknowns, f)
    rank = unknowns - nullity
    unique = consistent and nullity == 0

    def unpack(vec: tuple) -> tuple:
        return tuple(
            tuple(vec[unknown(a, b)] for b in range(dim)) for a in range(dim)
        )

    basis = [form.basis_blade(m) for m in range(dim)]
    matches = False
    matrix = None
    if solution is not None:
        matrix = unpack(solution)
        matches = all(
            matrix[a][b] == basis[a].pair(basis[b])
            for a in range(dim)
            for b in range(dim)
        )

    kernel = tuple(unpack(tuple(vec)) for vec in linalg.kernel_basis(rows, unknowns, f))

    twist = None
    if nullity == 1 and kernel:
        omega = form.volume_element()
        twist_matrix = [
            [basis[a].pair(omega * basis[b]) for b in range(dim)] for a in range(dim)
        ]
        gen = kernel[0]
        # Proportionality: find a nonzero anchor entry and compare ratios.
        ratio = None
        twist = True
        for a in range(dim):
            for b in range(dim):
                lhs, rhs_val = gen[a][b], twist_matrix[a][b]
                if (lhs == f.zero) != (rhs_val == f.zero):
                    twist = False
                elif lhs != f.zero and ratio is None:
                    ratio = f.div(lhs, rhs_val)
                elif lhs != f.zero and lhs != f.mul(ratio, rhs_val):
                    twist = False
        if ratio is None:
            twist = False

    return UniquenessReport(
        n=form.n,
        unknowns=unknowns,
        rank=rank,
        nullity=nullity,
        consistent=consistent,
        unique=unique,
        matches_canonical=matches,
        solution=matrix,
        kernel=kernel,
        kernel_is_volume_twist=twist,
    )
