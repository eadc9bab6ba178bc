"""The isometry Lie algebra: membership, centers, Killing form, splitting."""
import random
from fractions import Fraction

import pytest

from cliffex import (
    FieldSpec,
    QuadraticForm,
    ad_matrix,
    center,
    decompose,
    definiteness_report,
    in_lie_algebra,
    is_isometry,
    is_lie_blade,
    isometry_evidence,
    killing_count,
    killing_entry,
    killing_form,
    lie_algebra_basis,
    lie_blades,
    lie_center,
    lie_dimension,
    linalg,
    volume_commutation_report,
)
from cliffex.errors import (
    NotDefiniteForm,
    NotInLieAlgebra,
    OddDimension,
    UnorderedField,
    ZeroElement,
)
from cliffex.reference import plane_rotor, random_isometry, random_multivector

SEED = 31415
F7 = FieldSpec.prime(7)

# Dimension of the Lie algebra for n = 1..10, frozen from an
# independent count of blades of grade 1 or 2 mod 4.
LIE_DIMS = [1, 3, 6, 10, 16, 28, 56, 120, 256, 528]


def _lie_sample(rng, form, terms=4):
    """Random element supported on Lie-algebra blades."""
    blades = lie_blades(form)
    picks = rng.sample(blades, min(terms, len(blades)))
    data = {}
    for m in picks:
        data[m] = form.field.element(rng.randint(-5, 5))
    return form.multivector(data)


# -- membership ----------------------------------------------------------


def test_lie_blades_are_grades_one_and_two_mod_four():
    for n in range(1, 8):
        form = QuadraticForm([1] * n)
        masks = lie_blades(form)
        for mask in range(form.dim):
            k = bin(mask).count("1")
            want = k % 4 in (1, 2)
            assert (mask in masks) == want == is_lie_blade(mask)


def test_lie_dimension_table():
    for n, want in enumerate(LIE_DIMS, start=1):
        assert lie_dimension(n) == want
        form = QuadraticForm([1] * n)
        assert len(lie_blades(form)) == want
    assert len(lie_algebra_basis(QuadraticForm([1] * 5))) == LIE_DIMS[4]


def test_membership_is_the_negated_conjugation_eigenspace():
    rng = random.Random(SEED)
    form = QuadraticForm([1, -1, 2])
    for _ in range(40):
        x = random_multivector(rng, form, terms=5)
        assert in_lie_algebra(x) == (x.conjugate() == -x)
    assert in_lie_algebra(form.zero())
    assert not in_lie_algebra(form.one())


def test_bracket_closure_and_jacobi():
    rng = random.Random(SEED + 1)
    for field in (None, F7):
        form = QuadraticForm([1, 1, -1, 2], field)
        for _ in range(20):
            x = _lie_sample(rng, form)
            y = _lie_sample(rng, form)
            z = _lie_sample(rng, form)
            assert in_lie_algebra(x.commutator(y))
            jac = (
                x.commutator(y).commutator(z)
                + y.commutator(z).commutator(x)
                + z.commutator(x).commutator(y)
            )
            assert jac.is_zero()


# -- centers -------------------------------------------------------------


def test_algebra_center_closed_form():
    for n in range(1, 7):
        form = QuadraticForm([(-1) ** i * (i + 1) for i in range(n)])
        desc = center(form)
        if n % 2:
            assert desc.dimension == 2
            assert desc.contains_volume
        else:
            assert desc.dimension == 1
            assert not desc.contains_volume
        # The scalar blade is always there.
        assert any(b == form.one() for b in desc.basis)


def test_lie_center_closed_form():
    for n in range(1, 9):
        form = QuadraticForm([1] * n)
        desc = lie_center(form)
        if n % 4 == 1:
            assert desc.dimension == 1
            assert desc.basis[0] == form.volume_element()
        else:
            assert desc.dimension == 0


def test_solved_centers_agree_with_closed_form():
    for field in (None, F7):
        for n in range(1, 7):
            form = QuadraticForm([(-1) ** i * (i + 1) for i in range(n)], field)
            for fn in (center, lie_center):
                closed = fn(form, method="closed_form")
                solved = fn(form, method="solve")
                assert closed.dimension == solved.dimension
                # Same subspace, not just the same dimension.
                coords = [list(b.coeffs) for b in closed.basis]
                for b in solved.basis:
                    assert linalg.in_span(coords, list(b.coeffs), form.field)


def test_central_elements_actually_commute():
    rng = random.Random(SEED + 2)
    form = QuadraticForm([1, 1, -1])  # odd rank, center includes the volume
    desc = center(form, method="solve")
    for b in desc.basis:
        for _ in range(10):
            x = random_multivector(rng, form)
            assert b * x == x * b


# -- Killing form --------------------------------------------------------


def test_ad_matrix_encodes_the_bracket():
    rng = random.Random(SEED + 3)
    form = QuadraticForm([1, 1, -1])
    basis = lie_algebra_basis(form)
    for _ in range(10):
        xi = _lie_sample(rng, form)
        m = ad_matrix(xi)
        for j, ej in enumerate(basis):
            want = xi.commutator(ej)
            got = {basis[i]: col for i, col in enumerate(r[j] for r in m)}
            acc = form.zero()
            for i, e in enumerate(basis):
                acc = acc + e * m[i][j]
            assert acc == want


def test_ad_matrix_rejects_non_members():
    form = QuadraticForm([1, 1])
    with pytest.raises(NotInLieAlgebra):
        ad_matrix(form.one())


def test_killing_diagonal_closed_form():
    """B(e_I, e_I) = 4 m_I e_I^2 with m_I the anticommuting blade count."""
    for field in (None, F7):
        for n in range(1, 7):
            form = QuadraticForm([(-1) ** i * (i + 1) for i in range(n)], field)
            for rec in killing_form(form, method="count"):
                m = killing_count(form, rec.mask)
                assert rec.anticommuting == m
                sq = form.blade_square(rec.mask)
                assert rec.square == sq
                assert rec.value == form.field.element(4 * m) * sq


def test_killing_trace_oracle_agrees_with_count():
    for field in (None, F7):
        for n in range(1, 6):
            form = QuadraticForm([1] * n, field)
            by_count = killing_form(form, method="count")
            by_trace = killing_form(form, method="trace")
            assert [r.value for r in by_count] == [r.value for r in by_trace]


def test_killing_off_diagonal_vanishes():
    for n in range(1, 6):
        form = QuadraticForm([(-1) ** i for i in range(n)])
        masks = lie_blades(form)
        for a in masks:
            for b in masks:
                if a != b:
                    assert killing_entry(form, a, b) == form.field.zero


def test_first_known_killing_value():
    # Rank 2, unit diagonal: every generator blade has m = 2 and square -1.
    form = QuadraticForm([1, 1])
    assert killing_entry(form, 0b01, 0b01) == Fraction(-8)


def test_killing_vanishes_exactly_on_the_volume_when_rank_is_one_mod_four():
    for n in range(1, 9):
        form = QuadraticForm([1] * n)
        full = form.full_mask
        for rec in killing_form(form, method="count"):
            if n % 4 == 1 and rec.mask == full:
                assert rec.value == form.field.zero
            else:
                assert rec.value != form.field.zero


# -- decomposition -------------------------------------------------------


def test_decomposition_shape():
    for n in range(1, 8):
        form = QuadraticForm([1] * n)
        dec = decompose(form)
        assert dec.lie_dim == lie_dimension(n)
        want_codim = 1 if n % 4 == 1 else 0
        assert dec.codim == want_codim
        assert len(dec.center_basis) == want_codim
        assert len(dec.ideal_masks) == dec.lie_dim - want_codim
        assert dec.bracket_closed
        assert dec.killing_nondegenerate_on_ideal


def test_decomposition_splits_the_volume_out():
    form = QuadraticForm([1] * 5)
    dec = decompose(form)
    assert dec.center_basis[0] == form.volume_element()
    assert form.full_mask not in dec.ideal_masks


def test_ideal_is_a_bracket_ideal():
    rng = random.Random(SEED + 4)
    form = QuadraticForm([1] * 5)
    dec = decompose(form)
    ideal = set(dec.ideal_masks)
    for _ in range(20):
        x = _lie_sample(rng, form)
        h = form.basis_blade(rng.choice(dec.ideal_masks))
        br = x.commutator(h)
        assert set(br.support()) <= ideal


# -- definiteness over ordered scalars -----------------------------------


def test_definiteness_for_positive_forms():
    for n in range(1, 7):
        form = QuadraticForm([1] * n)
        rep = definiteness_report(form)
        assert rep.killing_negative
        assert rep.pairing_positive
        # Sign triples count (negative, zero, positive) entries.
        assert rep.killing_signs == (rep.ideal_dim, 0, 0)
        assert rep.pairing_signs == (0, 0, rep.ideal_dim)


def test_definiteness_needs_a_definite_ordered_form():
    with pytest.raises(NotDefiniteForm):
        definiteness_report(QuadraticForm([1, -1]))
    with pytest.raises(UnorderedField):
        definiteness_report(QuadraticForm([1, 1], F7))


# -- isometries ----------------------------------------------------------


def test_plane_rotors_are_isometries():
    form = QuadraticForm([1, 1, 1])
    for t in (Fraction(1, 2), Fraction(2), Fraction(-3, 7)):
        g = plane_rotor(form, 1, 2, t)
        assert g is not None
        assert is_isometry(g)
        ev = isometry_evidence(g)
        assert ev.isometry and ev.left_unit and ev.right_unit
        assert ev.left_gram_preserved and ev.right_gram_preserved
        assert ev.consistent


def test_isometry_means_unit_against_conjugation():
    rng = random.Random(SEED + 5)
    for field in (None, F7):
        form = QuadraticForm([1, 1, -1], field)
        one = form.one()
        for _ in range(10):
            g = random_isometry(rng, form)
            assert g * g.conjugate() == one
            assert g.conjugate() * g == one
            assert is_isometry(g)


def test_non_isometries_are_rejected():
    form = QuadraticForm([1, 1])
    assert not is_isometry(form.scalar(2))
    with pytest.raises(ZeroElement):
        is_isometry(form.zero())
    assert is_isometry(-form.one())


def test_isometries_preserve_the_pairing():
    rng = random.Random(SEED + 6)
    form = QuadraticForm([1, 1, 1])
    for _ in range(5):
        g = random_isometry(rng, form)
        for _ in range(5):
            x = random_multivector(rng, form, terms=4)
            y = random_multivector(rng, form, terms=4)
            assert (g * x).pair(g * y) == x.pair(y)
            assert (x * g).pair(y * g) == x.pair(y)


# -- volume twisted commutation ------------------------------------------


def test_volume_commutation_even_rank():
    for n in (2, 4):
        form = QuadraticForm([(-1) ** i for i in range(n)])
        assert volume_commutation_report(form) == form.dim
    with pytest.raises(OddDimension):
        volume_commutation_report(QuadraticForm([1, 1, 1]))
