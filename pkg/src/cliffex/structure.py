"""Structure theory: isometry Lie algebra, centers, Killing form.

The composite involution c (involution then reversal) is a linear map with
eigenvalues ±1; its (-1)-eigenspace is spanned by the blades of grade 1 or
2 mod 4 and is closed under commutators.  That space is the Lie algebra of
infinitesimal isometries of the canonical pairing, and everything in this
module works in its blade basis:

* centers of the full algebra and of the Lie algebra, both by a closed
  form and by solving the centralizer equations exactly;
* the Killing form, diagonal in the blade basis, each entry 4 m s where s
  is the blade's scalar square and m counts anticommuting basis blades of
  the Lie algebra;
* the splitting into the span of the top blade (when central) and the
  complementary ideal on which the Killing form stays nondegenerate;
* sign facts over ordered fields and the isometry test for group elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from . import linalg
from .core import (
    Multivector,
    QuadraticForm,
    anticommute_parity,
    format_blade,
)
from .errors import (
    CapExceeded,
    NotDefiniteForm,
    NotInLieAlgebra,
    NotInvariantSubspace,
    UnorderedField,
    ZeroElement,
)
from .field import FieldElement

SOLVE_CAP = 10
ORACLE_CAP = 8


def is_lie_blade(mask: int) -> bool:
    """Blades of grade 1 or 2 mod 4 are the (-1)-eigenvectors of c."""
    return mask.bit_count() % 4 in (1, 2)


def lie_blades(form: QuadraticForm) -> tuple:
    return tuple(m for m in range(form.dim) if is_lie_blade(m))


def lie_dimension(n: int) -> int:
    """Closed-form dimension: sum of C(n, k) over k = 1, 2 mod 4."""
    return sum(comb(n, k) for k in range(n + 1) if k % 4 in (1, 2))


def lie_algebra_basis(form: QuadraticForm) -> list:
    return [form.basis_blade(m) for m in lie_blades(form)]


def in_lie_algebra(x: Multivector) -> bool:
    """Membership in the (-1)-eigenspace of the composite involution."""
    return x.conjugate() == -x


# -- centers -------------------------------------------------------------


@dataclass(frozen=True)
class CenterDescription:
    """A center computed either by closed form or by exact solve."""

    space: str  # "algebra" or "lie"
    method: str  # "closed_form" or "solve"
    dimension: int
    basis: tuple
    contains_volume: bool


def _centralizer_kernel(form: QuadraticForm, masks: Sequence[int]) -> list:
    """Elements of span{e_I : I in masks} commuting with every generator.

    Commuting with the n generators is enough: they generate the algebra,
    so the kernel of these equations is the centralizer of the whole
    algebra intersected with the span.
    """
    f = form.field
    col_of = {m: i for i, m in enumerate(masks)}
    rows: dict = {}
    for k in range(form.n):
        gen_mask = 1 << k
        for m in masks:
            if anticommute_parity(m, gen_mask):
                coef, out_mask = form.blade_product(m, gen_mask)
                row = rows.setdefault((k, out_mask), {})
                col = col_of[m]
                row[col] = row.get(col, f.zero) + (coef + coef)
    kernel = linalg.kernel_basis(list(rows.values()), len(masks), f)
    out = []
    for vec in kernel:
        out.append(form.multivector({m: vec[i] for i, m in enumerate(masks) if vec[i]}))
    return out


def center(form: QuadraticForm, method: str = "closed_form", solve_cap: int = SOLVE_CAP) -> CenterDescription:
    """Center of the full algebra: scalars, plus the top blade when n is odd."""
    if method == "closed_form":
        basis = [form.one()]
        if form.n % 2 == 1:
            basis.append(form.volume_element())
    elif method == "solve":
        if form.n > solve_cap:
            raise CapExceeded(f"center solve capped at n = {solve_cap}")
        basis = _centralizer_kernel(form, range(form.dim))
    else:
        raise ValueError(f"unknown method {method!r}")
    contains_volume = any(b.coeffs[form.full_mask] for b in basis)
    return CenterDescription("algebra", method, len(basis), tuple(basis), contains_volume)


def lie_center(form: QuadraticForm, method: str = "closed_form", solve_cap: int = SOLVE_CAP) -> CenterDescription:
    """Center of the Lie algebra: the top-blade line iff n = 1 mod 4.

    For Lie-algebra elements, commuting with every generator (as an
    associative commutator) is again the right system: brackets against
    grade-1 elements generate all the constraints that matter, because the
    generators generate the algebra and the bracket is a derivation in
    each slot.
    """
    if method == "closed_form":
        basis = [form.volume_element()] if form.n % 4 == 1 else []
    elif method == "solve":
        if form.n > solve_cap:
            raise CapExceeded(f"center solve capped at n = {solve_cap}")
        basis = _centralizer_kernel(form, lie_blades(form))
    else:
        raise ValueError(f"unknown method {method!r}")
    contains_volume = any(b.coeffs[form.full_mask] for b in basis)
    return CenterDescription("lie", method, len(basis), tuple(basis), contains_volume)


# -- Killing form --------------------------------------------------------


@dataclass(frozen=True)
class KillingRecord:
    """One diagonal entry of the Killing form in the blade basis."""

    mask: int
    blade: str
    anticommuting: int
    square: FieldElement
    value: FieldElement


def killing_count(form: QuadraticForm, mask: int) -> int:
    """Number of Lie-algebra basis blades anticommuting with ``mask``."""
    form.check_mask(mask)
    return sum(1 for k in lie_blades(form) if anticommute_parity(mask, k))


def killing_entry(form: QuadraticForm, a: int, b: int) -> FieldElement:
    """Killing form of two basis blades of the Lie algebra.

    Off-diagonal pairs pair to zero; a diagonal entry is 4 m s with m the
    anticommuting count and s the blade's scalar square.
    """
    if not (is_lie_blade(a) and is_lie_blade(b)):
        raise NotInLieAlgebra("Killing form is defined on Lie-algebra blades")
    if a != b:
        return form.field.zero
    m = killing_count(form, a)
    four = form.field.element(4)
    return four * form.field.element(m) * form.blade_square(a)


def killing_form(form: QuadraticForm, method: str = "count", oracle_cap: int = ORACLE_CAP) -> list:
    """All diagonal Killing entries, ascending by blade mask.

    ``method="count"`` uses the anticommutation-count closed form;
    ``method="trace"`` recomputes each entry as trace(ad x ad x) from
    dense adjoint matrices, which is the definition and serves as the
    cross-check (capped, it scales as the cube of the Lie dimension).
    """
    records = []
    if method == "count":
        for mask in lie_blades(form):
            m = killing_count(form, mask)
            sq = form.blade_square(mask)
            value = form.field.element(4 * m) * sq
            records.append(KillingRecord(mask, format_blade(mask, form.n), m, sq, value))
    elif method == "trace":
        if form.n > oracle_cap:
            raise CapExceeded(f"trace route capped at n = {oracle_cap}")
        basis = lie_algebra_basis(form)
        for mask in lie_blades(form):
            ad = ad_matrix(form.basis_blade(mask), basis)
            value = _trace_square(ad, form.field)
            m = killing_count(form, mask)
            sq = form.blade_square(mask)
            records.append(KillingRecord(mask, format_blade(mask, form.n), m, sq, value))
    else:
        raise ValueError(f"unknown method {method!r}")
    return records


def _trace_square(rows: list, f) -> FieldElement:
    total = f.zero
    n = len(rows)
    for i in range(n):
        for j in range(n):
            if rows[i][j] and rows[j][i]:
                total = total + rows[i][j] * rows[j][i]
    return total


def ad_matrix(xi: Multivector, basis: Optional[Sequence[Multivector]] = None) -> list:
    """Matrix of bracketing with ``xi`` on the span of ``basis``.

    Defaults to the Lie algebra's blade basis.  Raises
    :class:`NotInLieAlgebra` when ``xi`` is outside the Lie algebra and
    :class:`NotInvariantSubspace` when some bracket leaves the span.
    """
    form = xi.form
    if not in_lie_algebra(xi):
        raise NotInLieAlgebra("ad is defined for Lie-algebra elements")
    if basis is None:
        basis = lie_algebra_basis(form)
    basis = list(basis)
    size = len(basis)
    f = form.field

    unit_masks = []
    for b in basis:
        support = b.support()
        if len(support) == 1 and b.coeffs[support[0]] == f.one:
            unit_masks.append(support[0])
        else:
            unit_masks = None
            break

    rows = [[f.zero] * size for _ in range(size)]
    if unit_masks is not None:
        pos = {m: i for i, m in enumerate(unit_masks)}
        for c, b in enumerate(basis):
            out = xi.commutator(b)
            for mask, val in out.terms():
                r = pos.get(mask)
                if r is None:
                    raise NotInvariantSubspace(
                        f"bracket leaves the span at blade {format_blade(mask, form.n)}"
                    )
                rows[r][c] = val
        return rows

    # General spanning sets: solve for coordinates exactly.
    sys_rows = []
    for i in range(form.dim):
        row = {j: basis[j].coeffs[i] for j in range(size) if basis[j].coeffs[i]}
        sys_rows.append(row)
    for c, b in enumerate(basis):
        out = xi.commutator(b)
        coords, _, consistent = linalg.affine_solve(
            sys_rows, list(out.coeffs), size, f
        )
        if not consistent:
            raise NotInvariantSubspace("bracket leaves the span of the given basis")
        for r in range(size):
            rows[r][c] = coords[r]
    return rows


# -- decomposition -------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """Splitting of the Lie algebra into its center and a Killing-regular ideal."""

    lie_dim: int
    center_basis: tuple
    ideal_masks: tuple
    ideal_basis: tuple
    codim: int
    bracket_closed: bool
    killing_nondegenerate_on_ideal: bool


def decompose(form: QuadraticForm) -> Decomposition:
    """Split the Lie algebra as center plus the ideal of non-top blades.

    When n = 1 mod 4 the top blade is central and the ideal has
    codimension one; otherwise the center is zero and the ideal is
    everything.  The returned flags certify, by direct enumeration, that
    the ideal is closed under brackets from the whole Lie algebra and that
    the Killing form has no kernel vector among its blades.
    """
    gbl = lie_blades(form)
    central = form.n % 4 == 1
    top = form.full_mask
    ideal = tuple(m for m in gbl if not (central and m == top))
    center_basis = (form.volume_element(),) if central else ()
    ideal_set = set(ideal)

    closed = True
    for a in gbl:
        for b in ideal:
            if anticommute_parity(a, b) and (a ^ b) not in ideal_set:
                closed = False
                break
        if not closed:
            break

    nondeg = all(killing_count(form, m) > 0 for m in ideal)

    return Decomposition(
        lie_dim=len(gbl),
        center_basis=center_basis,
        ideal_masks=ideal,
        ideal_basis=tuple(form.basis_blade(m) for m in ideal),
        codim=len(gbl) - len(ideal),
        bracket_closed=closed,
        killing_nondegenerate_on_ideal=nondeg,
    )


# -- definiteness over ordered fields ------------------------------------


@dataclass(frozen=True)
class DefinitenessReport:
    """Sign behaviour of the Killing form and pairing on the regular ideal."""

    n: int
    ideal_dim: int
    killing_negative: bool
    pairing_positive: bool
    killing_signs: tuple  # (negative, zero, positive) counts
    pairing_signs: tuple


def definiteness_report(form: QuadraticForm) -> DefinitenessReport:
    """For a positive definite form over an ordered field: B < 0, pairing > 0.

    Checks every blade of the Killing-regular ideal.  Requires the
    rationals (sign queries) and a positive definite diagonal.
    """
    f = form.field
    if not f.is_rational:
        raise UnorderedField("definiteness needs an ordered coefficient field")
    if any(f.sign_of(q) <= 0 for q in form.diag):
        raise NotDefiniteForm("definiteness results need a positive definite form")
    dec = decompose(form)
    gram = form.gram_diagonal()
    k_neg = k_zero = k_pos = 0
    p_neg = p_zero = p_pos = 0
    for m in dec.ideal_masks:
        s = f.sign_of(killing_entry(form, m, m))
        if s < 0:
            k_neg += 1
        elif s == 0:
            k_zero += 1
        else:
            k_pos += 1
        s = f.sign_of(gram[m])
        if s < 0:
            p_neg += 1
        elif s == 0:
            p_zero += 1
        else:
            p_pos += 1
    total = len(dec.ideal_masks)
    return DefinitenessReport(
        n=form.n,
        ideal_dim=total,
        killing_negative=(k_neg == total),
        pairing_positive=(p_pos == total),
        killing_signs=(k_neg, k_zero, k_pos),
        pairing_signs=(p_neg, p_zero, p_pos),
    )


# -- isometries of the pairing -------------------------------------------


@dataclass(frozen=True)
class IsometryEvidence:
    """Why an element is (or is not) an isometry of the canonical pairing."""

    isometry: bool
    left_unit: bool
    right_unit: bool
    left_gram_preserved: Optional[bool]
    right_gram_preserved: Optional[bool]
    consistent: bool


def is_isometry(g: Multivector) -> bool:
    """True when g times its conjugate is 1 on both sides."""
    if g.is_zero():
        raise ZeroElement("the zero element cannot be an isometry")
    one = g.form.one()
    c = g.conjugate()
    return g * c == one and c * g == one


def isometry_evidence(g: Multivector, gram_cap: int = ORACLE_CAP) -> IsometryEvidence:
    """Unit condition plus (capped) exact Gram preservation of translations.

    For an isometry, both translations preserve the canonical pairing's
    Gram matrix; the matrix check costs dim^3 and is skipped (None) above
    the cap.
    """
    from .operators import left_matrix, right_matrix

    if g.is_zero():
        raise ZeroElement("the zero element cannot be an isometry")
    form = g.form
    one = form.one()
    c = g.conjugate()
    left_unit = g * c == one
    right_unit = c * g == one

    left_gram = right_gram = None
    if form.n <= gram_cap:
        gram = form.gram_diagonal()
        left_gram = _preserves_gram(left_matrix(g), gram, form)
        right_gram = _preserves_gram(right_matrix(g), gram, form)

    isometry = left_unit and right_unit
    consistent = True
    if left_gram is not None:
        consistent = (left_gram == isometry) and (right_gram == isometry)
    return IsometryEvidence(isometry, left_unit, right_unit, left_gram, right_gram, consistent)


def _preserves_gram(rows: list, gram: tuple, form: QuadraticForm) -> bool:
    """Exact check that transpose(M) G M = G for diagonal G."""
    dim = form.dim
    f = form.field
    for a in range(dim):
        col_a = [rows[i][a] for i in range(dim)]
        for b in range(a, dim):
            acc = f.zero
            for i in range(dim):
                if col_a[i] and rows[i][b]:
                    acc = acc + col_a[i] * gram[i] * rows[i][b]
            want = gram[a] if a == b else f.zero
            if acc != want:
                return False
    return True
