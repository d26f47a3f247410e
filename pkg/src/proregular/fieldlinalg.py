"""Exact linear algebra over the rationals and prime fields.

A field is a small arithmetic object (``RationalField`` or ``PrimeField``);
matrices are the shared ``Mat`` container with entries owned by the field
(``Fraction`` for Q, ints in ``[0, p)`` for F_p).
"""

from __future__ import annotations

from fractions import Fraction

from .intlinalg import Mat, mat_from_cols


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class RationalField:
    """The field Q; elements are ``Fraction`` values (always lowest terms)."""

    tag = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def to_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field F_p for a prime p; elements are ints reduced mod p."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"modulus must be prime, got {p}")
        self.p = p
        self.tag = f"F{p}"

    def zero(self):
        return 0

    def one(self):
        return 1

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by p")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def eq(self, a, b) -> bool:
        return (a - b) % self.p == 0

    def to_str(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F{self.p}"


def rref(field, m: Mat):
    """Reduced row echelon form; returns ``(R, pivots)``."""
    a = [[field.coerce(x) for x in r] for r in m.rows]
    pivots = []
    prow = 0
    for col in range(m.ncols):
        if prow >= m.nrows:
            break
        r0 = next((r for r in range(prow, m.nrows) if not field.is_zero(a[r][col])), None)
        if r0 is None:
            continue
        a[prow], a[r0] = a[r0], a[prow]
        inv = field.inv(a[prow][col])
        a[prow] = [field.mul(inv, x) for x in a[prow]]
        for r in range(m.nrows):
            if r != prow and not field.is_zero(a[r][col]):
                f = a[r][col]
                a[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(a[r], a[prow])]
        pivots.append(col)
        prow += 1
    return Mat.from_rows(a) if a else m, pivots


def rank(field, m: Mat) -> int:
    return len(rref(field, m)[1])


def kernel(field, m: Mat) -> Mat:
    """Basis of the right kernel as matrix columns (one per free column)."""
    r, pivots = rref(field, m)
    free = [j for j in range(m.ncols) if j not in pivots]
    cols = []
    for f in free:
        v = [field.zero()] * m.ncols
        v[f] = field.one()
        for prow, pcol in enumerate(pivots):
            v[pcol] = field.neg(r.entry(prow, f))
        cols.append(tuple(v))
    return mat_from_cols(cols, m.ncols)


def solve(field, m: Mat, b: Mat):
    """Solve ``M X = B``; return one solution ``X`` or ``None``."""
    if b.nrows != m.nrows:
        raise ValueError("shape mismatch in solve")
    aug = Mat.from_rows([tuple(m.rows[i]) + tuple(b.rows[i]) for i in range(m.nrows)]) \
        if m.nrows else Mat(0, m.ncols + b.ncols, ())
    r, pivots = rref(field, aug)
    if any(p >= m.ncols for p in pivots):
        return None
    xcols = []
    for jb in range(b.ncols):
        v = [field.zero()] * m.ncols
        for prow, pcol in enumerate(pivots):
            v[pcol] = r.entry(prow, m.ncols + jb)
        xcols.append(tuple(v))
    return mat_from_cols(xcols, m.ncols)
