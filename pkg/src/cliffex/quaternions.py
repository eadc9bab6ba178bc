"""Exact quaternions, quaternionic matrices, and the rank-2 bridge.

Scalars act on column vectors from the LEFT and matrices act through

    A(x)_i = sum_k x_k A[i][k]

with the coordinate written before the entry; composition then forces the
matrix product rule

    (A . B)[i][j] = sum_k B[k][j] A[i][k]

which differs from the conventional entrywise rule precisely because the
entries do not commute.  The Hermitian pairing is sum_i x_i conj(y_i),
left-linear in its first slot.  With these choices adjoint(A) is the
conjugate transpose and all the expected identities hold exactly:
(A . B)(x) = A(B(x)), pairing(A x, y) = pairing(x, adjoint(A) y), and
adjoint(A . B) = adjoint(B) . adjoint(A).

The bridge at the bottom identifies the rank-2 algebra of the form
diag(1, 1) over the rationals with the quaternions via e1 -> i, e2 -> j,
e12 -> k; the composite involution goes over to quaternion conjugation.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .core import Multivector, QuadraticForm
from .errors import (
    DimensionMismatch,
    InversionOfZero,
    ParseError,
    SingularBasis,
    WrongForm,
)
from .field import RATIONAL


class Quaternion:
    """A quaternion with exact rational components."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.d = Fraction(d)

    @staticmethod
    def zero() -> "Quaternion":
        return Quaternion()

    @staticmethod
    def one() -> "Quaternion":
        return Quaternion(1)

    @staticmethod
    def i() -> "Quaternion":
        return Quaternion(0, 1)

    @staticmethod
    def j() -> "Quaternion":
        return Quaternion(0, 0, 1)

    @staticmethod
    def k() -> "Quaternion":
        return Quaternion(0, 0, 0, 1)

    def components(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def _coerce(self, other):
        if isinstance(other, Quaternion):
            return other
        if isinstance(other, (int, Fraction)):
            return Quaternion(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm_squared(self) -> Fraction:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def inverse(self) -> "Quaternion":
        n = self.norm_squared()
        if not n:
            raise InversionOfZero("zero quaternion has no inverse")
        inv = Fraction(1) / n
        con = self.conjugate()
        return Quaternion(con.a * inv, con.b * inv, con.c * inv, con.d * inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.components() == o.components()

    def __hash__(self):
        return hash(self.components())

    def __bool__(self):
        return any(self.components())

    def scalar_part(self) -> Fraction:
        return self.a

    def __repr__(self):
        return f"Quaternion({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self):
        return format_quaternion(self)


_UNIT_ORDER = ("", "i", "j", "k")


def format_quaternion(q: Quaternion) -> str:
    """Render as ``a + bi + cj + dk`` dropping zero components."""
    parts = []
    for comp, unit in zip(q.components(), _UNIT_ORDER):
        if not comp:
            continue
        neg = comp < 0
        mag = -comp if neg else comp
        if unit and mag == 1:
            body = unit
        elif unit:
            body = f"{mag}{unit}"
        else:
            body = str(mag)
        parts.append((neg, body))
    if not parts:
        return "0"
    neg, body = parts[0]
    out = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


_QTERM = re.compile(r"^([+-]?\d+(?:/\d+)?)?\s*\*?\s*([ijk]?)$")


def parse_quaternion(text: str) -> Quaternion:
    """Parse ``a + bi + cj + dk`` with rational components."""
    s = text.strip()
    if not s:
        raise ParseError("empty quaternion literal")
    chunks = []
    start = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        start = 1
    cur: list = []
    for ch in s[start:]:
        if ch in "+-":
            chunk = "".join(cur).strip()
            if not chunk:
                raise ParseError(f"empty term in {text!r}")
            chunks.append((sign, chunk))
            sign = -1 if ch == "-" else 1
            cur = []
        else:
            cur.append(ch)
    chunk = "".join(cur).strip()
    if not chunk:
        raise ParseError(f"empty term in {text!r}")
    chunks.append((sign, chunk))

    comps = {unit: Fraction(0) for unit in _UNIT_ORDER}
    for sgn, chunk in chunks:
        m = _QTERM.match(chunk)
        if not m or (m.group(1) is None and not m.group(2)):
            raise ParseError(f"bad quaternion term {chunk!r}")
        coef = Fraction(m.group(1)) if m.group(1) is not None else Fraction(1)
        unit = m.group(2)
        comps[unit] += sgn * coef
    return Quaternion(comps[""], comps["i"], comps["j"], comps["k"])


class HMatrix:
    """A square quaternionic matrix under the left-coefficient conventions.

    All products and the adjoint follow the module docstring; rows are
    stored as tuples and the object is immutable.
    """

    __slots__ = ("entries", "size")

    def __init__(self, entries: Iterable):
        rows = []
        for row in entries:
            rows.append(tuple(self._as_quat(v) for v in row))
        size = len(rows)
        if size == 0 or any(len(r) != size for r in rows):
            raise DimensionMismatch("need a nonempty square matrix")
        object.__setattr__(self, "entries", tuple(rows))
        object.__setattr__(self, "size", size)

    def __setattr__(self, name, value):
        raise AttributeError("HMatrix is immutable")

    @staticmethod
    def _as_quat(v) -> Quaternion:
        if isinstance(v, Quaternion):
            return v
        if isinstance(v, (int, Fraction)):
            return Quaternion(v)
        raise DimensionMismatch(f"entry {v!r} is not a quaternion")

    @staticmethod
    def identity(size: int) -> "HMatrix":
        return HMatrix(
            [[Quaternion(1) if i == j else Quaternion() for j in range(size)] for i in range(size)]
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def action(self, vec: Sequence) -> tuple:
        """Apply to a column vector: result_i = sum_k x_k A[i][k]."""
        xs = [self._as_quat(v) for v in vec]
        if len(xs) != self.size:
            raise DimensionMismatch(f"vector length {len(xs)} != size {self.size}")
        out = []
        for i in range(self.size):
            acc = Quaternion()
            row = self.entries[i]
            for k in range(self.size):
                if xs[k] and row[k]:
                    acc = acc + xs[k] * row[k]
            out.append(acc)
        return tuple(out)

    def compose(self, other: "HMatrix") -> "HMatrix":
        """The product matching action composition: self after other.

        Entrywise: result[i][j] = sum_k other[k][j] self[i][k].
        """
        if not isinstance(other, HMatrix) or other.size != self.size:
            raise DimensionMismatch("compose needs matching square matrices")
        m = self.size
        out = []
        for i in range(m):
            row = []
            for j in range(m):
                acc = Quaternion()
                for k in range(m):
                    if other.entries[k][j] and self.entries[i][k]:
                        acc = acc + other.entries[k][j] * self.entries[i][k]
                row.append(acc)
            out.append(row)
        return HMatrix(out)

    def adjoint(self) -> "HMatrix":
        """Conjugate transpose."""
        m = self.size
        return HMatrix(
            [[self.entries[j][i].conjugate() for j in range(m)] for i in range(m)]
        )

    def __eq__(self, other):
        if not isinstance(other, HMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        rows = "; ".join(
            ", ".join(str(v) for v in row) for row in self.entries
        )
        return f"HMatrix[{rows}]"


def hermitian_pairing(x: Sequence, y: Sequence) -> Quaternion:
    """sum_i x_i conj(y_i); left-linear in x, conjugate-linear in y."""
    if len(x) != len(y):
        raise DimensionMismatch("pairing needs equal-length vectors")
    acc = Quaternion()
    for xv, yv in zip(x, y):
        xq = HMatrix._as_quat(xv)
        yq = HMatrix._as_quat(yv)
        if xq and yq:
            acc = acc + xq * yq.conjugate()
    return acc


def _left_inverse(rows: list) -> list:
    """X with X U = I under the CONVENTIONAL product, by left row ops.

    Row operations multiply from the left, so they assemble X on the
    identity half of the augmented matrix.  Works over the quaternions
    because every nonzero entry is invertible; a one-sided inverse over a
    division ring is automatically two-sided.
    """
    m = len(rows)
    aug = [list(rows[i]) + [Quaternion(1) if j == i else Quaternion() for j in range(m)] for i in range(m)]
    for col in range(m):
        piv = None
        for r in range(col, m):
            if aug[r][col]:
                piv = r
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [inv * v for v in aug[col]]
        for r in range(m):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[m:] for row in aug]


def coordinates_in_basis(vec: Sequence, basis: Sequence) -> tuple:
    """Left coordinates of ``vec``: vec = sum_r c_r basis[r]."""
    m = len(basis)
    if any(len(b) != m for b in basis) or len(vec) != m:
        raise DimensionMismatch("need m vectors of length m and a matching target")
    u_rows = [[HMatrix._as_quat(v) for v in b] for b in basis]
    x = _left_inverse(u_rows)
    if x is None:
        raise SingularBasis("the given vectors are linearly dependent")
    w = [HMatrix._as_quat(v) for v in vec]
    out = []
    for r in range(m):
        acc = Quaternion()
        for j in range(m):
            if w[j] and x[j][r]:
                acc = acc + w[j] * x[j][r]
        out.append(acc)
    return tuple(out)


def basis_change(a: HMatrix, basis: Sequence) -> HMatrix:
    """Matrix of the same operator in a new basis.

    Column i holds the left coordinates of a(basis[i]) in ``basis``:
    a(basis[i]) = sum_r result[r][i] basis[r].  Multiplicative for the
    composition product and sends the identity to the identity.
    """
    m = a.size
    if len(basis) != m:
        raise DimensionMismatch(f"expected {m} basis vectors, got {len(basis)}")
    u_rows = [[HMatrix._as_quat(v) for v in b] for b in basis]
    if any(len(r) != m for r in u_rows):
        raise DimensionMismatch("basis vectors must have the matrix's size")
    x = _left_inverse(u_rows)
    if x is None:
        raise SingularBasis("the given vectors are linearly dependent")
    cols = []
    for i in range(m):
        w = a.action(basis[i])
        coord = []
        for r in range(m):
            acc = Quaternion()
            for j in range(m):
                if w[j] and x[j][r]:
                    acc = acc + w[j] * x[j][r]
            coord.append(acc)
        cols.append(coord)
    return HMatrix([[cols[i][r] for i in range(m)] for r in range(m)])


# -- bridge to the rank-2 algebra ----------------------------------------

_BRIDGE_DIAG = (Fraction(1), Fraction(1))


def _check_bridge_form(form: QuadraticForm):
    if form.n != 2 or not form.field.is_rational or form.diag != _BRIDGE_DIAG:
        raise WrongForm(
            "the quaternion bridge needs the rank-2 rational form with unit diagonal"
        )


def to_quaternion(x: Multivector) -> Quaternion:
    """Identify the rank-2 unit-diagonal algebra with the quaternions.

    Sends 1, e1, e2, e12 to 1, i, j, k.  Multiplicative, and intertwines
    the composite involution with quaternion conjugation.
    """
    _check_bridge_form(x.form)
    return Quaternion(*x.coeffs)

def from_quaternion(q: Quaternion, form: QuadraticForm = None) -> Multivector:
    """Inverse of :func:`to_quaternion`."""
    if form is None:
        form = QuadraticForm(_BRIDGE_DIAG, RATIONAL)
    _check_bridge_form(form)
    return form.multivector(list(q.components()))
