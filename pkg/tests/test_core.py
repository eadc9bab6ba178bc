"""Blade arithmetic, multivectors, involutions, the canonical pairing.

Products are cross-checked against an oracle that multiplies generator
words by literal bubble sorting, with none of the bitmask shortcuts the
production path uses.
"""
import random
from fractions import Fraction

import pytest

from cliffex import (
    RATIONAL,
    FieldSpec,
    QuadraticForm,
    anticommute_parity,
    blade_product,
    format_blade,
    format_multivector,
    pairing,
    parse_blade,
    parse_multivector,
    reorder_sign,
)
from cliffex.core import conjugate_sign, grade_of, involute_sign, reverse_sign
from cliffex.errors import (
    DegenerateForm,
    IndexOutOfRange,
    MismatchedForm,
    ParseError,
)
from cliffex.reference import (
    blade_word_product,
    closed_pairing,
    mask_to_word,
    random_multivector,
    random_vector,
)

SEED = 9001
F13 = FieldSpec.prime(13)


def _forms_for(n, field=None):
    """A positive definite and a mixed-sign diagonal of rank n."""
    out = [QuadraticForm([1] * n, field)]
    if n >= 2:
        diag = [(-1) ** i * (i + 1) for i in range(n)]
        out.append(QuadraticForm(diag, field))
    return out


# -- form construction ---------------------------------------------------


def test_degenerate_diagonal_is_rejected():
    with pytest.raises(DegenerateForm):
        QuadraticForm([1, 0, 2])
    with pytest.raises(DegenerateForm):
        QuadraticForm([13], F13)  # 13 = 0 mod 13


def test_form_text_round_trip():
    form = QuadraticForm([1, 1, -1])
    assert QuadraticForm.from_text(form.to_text()) == form
    sig = QuadraticForm.from_signature(2, 1)
    assert sig.diag == (Fraction(1), Fraction(1), Fraction(-1))
    assert QuadraticForm.from_text("sig:2,1") == sig


def test_form_dimensions():
    for n in (1, 3, 7):
        form = QuadraticForm([1] * n)
        assert form.n == n
        assert form.dim == 2**n
        assert form.full_mask == 2**n - 1


# -- sign bookkeeping ----------------------------------------------------


def test_grade_and_sign_tables():
    assert [grade_of(m) for m in range(8)] == [0, 1, 1, 2, 1, 2, 2, 3]
    # Grade automorphism flips odd grades, reversal flips grades 2,3 mod 4,
    # conjugation flips grades 1,2 mod 4.
    for m in range(1 << 6):
        k = grade_of(m)
        assert involute_sign(m) == (-1) ** k
        assert reverse_sign(m) == (-1) ** (k * (k - 1) // 2)
        assert conjugate_sign(m) == (-1) ** (k * (k + 1) // 2)
        assert conjugate_sign(m) == involute_sign(m) * reverse_sign(m)


def test_reorder_sign_against_word_oracle():
    form = QuadraticForm([1] * 6)
    for a in range(64):
        for b in range(64):
            if a & b:
                continue  # oracle squares handled separately below
            coef, mask = blade_word_product(mask_to_word(a), mask_to_word(b), form)
            assert mask == a ^ b
            assert coef == form.field.element(reorder_sign(a, b))


def test_anticommute_parity_by_explicit_product():
    rng = random.Random(SEED)
    form = QuadraticForm([1] * 5)
    for _ in range(300):
        a = rng.randrange(32)
        b = rng.randrange(32)
        ca, _ = form.blade_product(a, b)
        cb, _ = form.blade_product(b, a)
        flips = anticommute_parity(a, b)
        assert (ca == -cb) == bool(flips)
        assert (ca == cb) == (not flips)


# -- blade products ------------------------------------------------------


def test_generator_squares():
    form = QuadraticForm([2, -3])
    c0, m0 = form.blade_product(0b01, 0b01)
    assert (c0, m0) == (Fraction(-2), 0)
    c1, m1 = form.blade_product(0b10, 0b10)
    assert (c1, m1) == (Fraction(3), 0)


def test_orthogonal_generators_anticommute():
    form = QuadraticForm([1, 1])
    assert form.blade_product(0b01, 0b10) == (Fraction(1), 0b11)
    assert form.blade_product(0b10, 0b01) == (Fraction(-1), 0b11)


def test_mixed_signature_contraction():
    # Over diag(1,1,-1): e13 . e3 contracts the shared generator with
    # -q_3 = 1 and leaves e1.
    form = QuadraticForm.from_signature(2, 1)
    coef, mask = form.blade_product(0b101, 0b100)
    assert (coef, mask) == (Fraction(1), 0b001)


def test_blade_product_never_vanishes_and_xors():
    rng = random.Random(SEED + 1)
    for field in (None, F13):
        for form in _forms_for(5, field):
            for _ in range(400):
                a = rng.randrange(form.dim)
                b = rng.randrange(form.dim)
                coef, mask = form.blade_product(a, b)
                assert mask == a ^ b
                assert coef != form.field.zero


def test_blade_product_against_word_oracle():
    rng = random.Random(SEED + 2)
    for field in (None, F13):
        for form in _forms_for(5, field):
            for _ in range(250):
                a = rng.randrange(form.dim)
                b = rng.randrange(form.dim)
                coef, mask = form.blade_product(a, b)
                ocoef, omask = blade_word_product(
                    mask_to_word(a), mask_to_word(b), form
                )
                assert (coef, mask) == (ocoef, omask)


def test_blade_product_top_level_wrapper():
    form = QuadraticForm([1, 1, -1])
    assert blade_product(form, 0b101, 0b100) == form.blade_product(0b101, 0b100)


# -- multivector ring ----------------------------------------------------


def test_ring_axioms_sampled():
    rng = random.Random(SEED + 3)
    for field in (None, F13):
        for form in _forms_for(4, field):
            one = form.one()
            for _ in range(40):
                x = random_multivector(rng, form, terms=5)
                y = random_multivector(rng, form, terms=5)
                z = random_multivector(rng, form, terms=5)
                assert (x * y) * z == x * (y * z)
                assert x * (y + z) == x * y + x * z
                assert (y + z) * x == y * x + z * x
                assert one * x == x * one == x
                assert x - x == form.zero()


def test_scalar_promotion_in_dunders():
    form = QuadraticForm([1, 1])
    e1 = form.generator(1)
    assert 2 * e1 == e1 + e1
    assert e1 * 2 == e1 + e1
    assert e1 + 1 == form.one() + e1
    assert 1 - e1 == -(e1 - 1)
    assert (e1 * Fraction(1, 2)) * 2 == e1


def test_vector_square_rule():
    """v . v = -Q(v,v) and the polarized anticommutation identity."""
    rng = random.Random(SEED + 4)
    for field in (None, F13):
        for form in _forms_for(5, field):
            for _ in range(60):
                v = random_vector(rng, form)
                w = random_vector(rng, form)
                q_vv = form.field.neg((v * v).scalar_part())
                assert v * v == form.scalar(q_vv) * -1 or (v * v).grades() <= {0}
                # 2 Q(v,w) 1 = -(vw + wv)
                lhs = v * w + w * v
                assert lhs.grades() <= {0}
                assert pairing(v, w) + pairing(w, v) == form.field.neg(
                    lhs.scalar_part()
                )


def test_commutator_and_power():
    form = QuadraticForm([1, 1, 1])
    e1, e2 = form.generator(1), form.generator(2)
    assert e1.commutator(e2) == e1 * e2 - e2 * e1
    assert (e1 + e2) ** 0 == form.one()
    assert (e1 + e2) ** 3 == (e1 + e2) * (e1 + e2) * (e1 + e2)
    with pytest.raises(TypeError):
        (e1 + e2) ** -1


def test_cross_form_arithmetic_is_refused():
    a = QuadraticForm([1, 1]).one()
    b = QuadraticForm([1, -1]).one()
    with pytest.raises(MismatchedForm):
        a * b
    with pytest.raises(MismatchedForm):
        a + b


def test_multivectors_are_immutable():
    x = QuadraticForm([1]).one()
    with pytest.raises(AttributeError):
        x.coeffs = ()


# -- involutions ---------------------------------------------------------


def test_involutions_are_involutive_and_compose():
    rng = random.Random(SEED + 5)
    for field in (None, F13):
        for form in _forms_for(5, field):
            for _ in range(50):
                x = random_multivector(rng, form, terms=6)
                assert x.involute().involute() == x
                assert x.reverse().reverse() == x
                assert x.conjugate().conjugate() == x
                assert x.conjugate() == x.reverse().involute() == x.involute().reverse()


def test_involution_morphism_laws():
    rng = random.Random(SEED + 6)
    form = QuadraticForm([1, -1, 2, -3])
    for _ in range(50):
        x = random_multivector(rng, form, terms=5)
        y = random_multivector(rng, form, terms=5)
        assert (x * y).involute() == x.involute() * y.involute()
        assert (x * y).reverse() == y.reverse() * x.reverse()
        assert (x * y).conjugate() == y.conjugate() * x.conjugate()


def test_conjugation_negates_vectors():
    form = QuadraticForm([1, 1, -1])
    for i in (1, 2, 3):
        v = form.generator(i)
        assert v.conjugate() == -v
        assert v.reverse() == v
        assert v.involute() == -v


def test_involution_kind_dispatch():
    x = QuadraticForm([1, 1]).parse("1 + e1 + e12")
    assert x.involution("grade") == x.involute()
    assert x.involution("reverse") == x.reverse()
    assert x.involution("conj") == x.conjugate()
    with pytest.raises(ParseError):
        x.involution("dual")


# -- the canonical pairing -----------------------------------------------


def test_pairing_normalization_and_restriction():
    for field in (None, F13):
        for form in _forms_for(4, field):
            one = form.one()
            assert pairing(one, one) == form.field.one
            for i in range(1, form.n + 1):
                for j in range(1, form.n + 1):
                    got = pairing(form.generator(i), form.generator(j))
                    want = form.diag[i - 1] if i == j else form.field.zero
                    assert got == want


def test_pairing_is_symmetric_and_blade_diagonal():
    form = QuadraticForm([1, -1, 2])
    for a in range(form.dim):
        for b in range(form.dim):
            ea, eb = form.basis_blade(a), form.basis_blade(b)
            assert pairing(ea, eb) == pairing(eb, ea)
            if a != b:
                assert pairing(ea, eb) == form.field.zero


def test_gram_diagonal_closed_form():
    """Diagonal Gram entry of a blade is the product of its q_i."""
    for field in (None, F13):
        form = QuadraticForm([1, -1, 2, -3], field)
        gram = form.gram_diagonal()
        for mask in range(form.dim):
            prod = form.field.one
            for i in range(form.n):
                if mask >> i & 1:
                    prod = form.field.mul(prod, form.diag[i])
            assert gram[mask] == prod
            e = form.basis_blade(mask)
            assert pairing(e, e) == prod


def test_pairing_matches_scalar_projection_oracle():
    rng = random.Random(SEED + 7)
    for field in (None, F13):
        for form in _forms_for(4, field):
            for _ in range(60):
                x = random_multivector(rng, form, terms=6)
                y = random_multivector(rng, form, terms=6)
                assert pairing(x, y) == closed_pairing(x, y)
                assert pairing(x, y) == (x * y.conjugate()).scalar_part()


def test_pairing_adjointness_laws():
    rng = random.Random(SEED + 8)
    for field in (None, F13):
        for form in _forms_for(4, field):
            for _ in range(40):
                x = random_multivector(rng, form, terms=4)
                y = random_multivector(rng, form, terms=4)
                z = random_multivector(rng, form, terms=4)
                assert pairing(x * y, z) == pairing(y, x.conjugate() * z)
                assert pairing(y * x, z) == pairing(y, z * x.conjugate())


def test_pairing_involution_invariance():
    rng = random.Random(SEED + 9)
    form = QuadraticForm([1, 1, -1])
    for _ in range(50):
        x = random_multivector(rng, form)
        y = random_multivector(rng, form)
        assert pairing(x.involute(), y.involute()) == pairing(x, y)
        assert pairing(x.conjugate(), y.conjugate()) == pairing(x, y)


def test_scalar_trace_symmetry():
    """p(xy) = p(yx), the cyclic identity behind the adjoint laws."""
    rng = random.Random(SEED + 10)
    form = QuadraticForm([1, -1, 2])
    for _ in range(60):
        x = random_multivector(rng, form)
        y = random_multivector(rng, form)
        assert (x * y).scalar_part() == (y * x).scalar_part()


# -- volume element ------------------------------------------------------


def test_volume_square_closed_form():
    for diag in ([1], [1, 1], [1, 1, -1], [2, -3, 5, 7], [1, 1, 1, 1, 1]):
        form = QuadraticForm(diag)
        n = form.n
        prod = Fraction(1)
        for q in form.diag:
            prod *= -q
        want = Fraction((-1) ** (n * (n - 1) // 2)) * prod
        assert form.volume_square() == want
        omega = form.volume_element()
        assert omega * omega == form.scalar(want)


def test_volume_commutes_exactly_when_odd():
    rng = random.Random(SEED + 11)
    for n in range(1, 6):
        form = QuadraticForm([1] * n)
        omega = form.volume_element()
        x = random_multivector(rng, form)
        if n % 2:
            assert omega * x == x * omega
        else:
            # Even rank: omega x = alpha(x) omega instead.
            assert omega * x == x.involute() * omega


# -- text grammar --------------------------------------------------------


def test_blade_literal_round_trip():
    assert parse_blade("1", 3) == 0
    assert parse_blade("e13", 3) == 0b101
    assert parse_blade("e{1,3}", 3) == 0b101
    assert format_blade(0b101, 3) == "e13"
    for mask in range(16):
        assert parse_blade(format_blade(mask, 4), 4) == mask


def test_blade_literal_wide_rank_uses_braces():
    n = 11
    mask = (1 << 0) | (1 << 9) | (1 << 10)
    text = format_blade(mask, n)
    assert text == "e{1,10,11}"
    assert parse_blade(text, n) == mask


def test_blade_literal_errors():
    with pytest.raises(ParseError):
        parse_blade("e", 3)
    with pytest.raises(ParseError):
        parse_blade("e21", 3)  # not increasing
    with pytest.raises(ParseError):
        parse_blade("xyz", 3)
    with pytest.raises(IndexOutOfRange):
        parse_blade("e4", 3)


def test_multivector_parse_examples():
    form = QuadraticForm([1, 1, -1])
    x = form.parse("1 + 2*e1 - e23")
    assert x.coeff(0) == Fraction(1)
    assert x.coeff(0b001) == Fraction(2)
    assert x.coeff(0b110) == Fraction(-1)
    assert form.parse("-e1") == -form.generator(1)
    assert form.parse("3/2*e12") == form.basis_blade(0b011) * Fraction(3, 2)


def test_multivector_format_parse_round_trip():
    rng = random.Random(SEED + 12)
    for field in (None, F13):
        for form in _forms_for(4, field):
            for _ in range(60):
                x = random_multivector(rng, form, terms=rng.randint(0, 6))
                assert parse_multivector(format_multivector(x), form) == x
    assert format_multivector(QuadraticForm([1]).zero()) == "0"


def test_multivector_parse_errors():
    form = QuadraticForm([1, 1])
    for bad in ("", "e1 +", "+ + e1", "e1 ++ e2", "2*", "*e1"):
        with pytest.raises(ParseError):
            form.parse(bad)


def test_str_uses_the_grammar():
    form = QuadraticForm([1, 1])
    x = form.parse("1 - e2")
    assert str(x) == "1 - e2"
