"""Backend rings: the integers, polynomial rings over Q/F_p, and quotients.

A ring descriptor bundles element arithmetic with the four matrix services
every module computation reduces to:

* ``span_oracle(cols, nrows)`` -- membership / exact solving / syzygies for
  the column span of a matrix (Hermite form over Z, Groebner graph bases
  over polynomial backends),
* ``kernel_of_columns`` -- generators of ``{v : sum v_j col_j = 0}``,
* ``canonical_columns`` -- a canonical generating set of the column span
  (column HNF over Z, reduced module Groebner basis over polynomials),
* ``ideal_relation_columns`` -- for quotient rings ``A/I``, the columns
  ``q * e_k`` that every presentation silently carries.

Quotient rings ``A/I`` reuse the polynomial engine: elements are stored as
normal forms modulo a cached Groebner basis of ``I``, and all matrix
services augment with the ideal block.
"""

from __future__ import annotations

from .fieldlinalg import PrimeField, RationalField
from .groebner import (GraphBasis, GroebnerBasis, TopOrder, groebner_basis,
                       normal_form, reduced_module_groebner,
                       columns_to_vectors, vectors_to_columns)
from .intlinalg import (Mat, canonical_column_form, kernel_basis,
                        column_style_hermite, mat_from_cols, solve_columns)
from .poly import MonomialOrder, Poly, PolyRing


class RingError(ValueError):
    pass


class _ZSpanOracle:
    """Column-span services over Z, backed by one column HNF."""

    def __init__(self, cols, nrows):
        self.nrows = nrows
        self.m = mat_from_cols([tuple(c) for c in cols], nrows)

    def member(self, target) -> bool:
        return solve_columns(self.m, mat_from_cols([tuple(target)], self.nrows)) is not None

    def solve(self, target):
        x = solve_columns(self.m, mat_from_cols([tuple(target)], self.nrows))
        return None if x is None else list(x.col(0))

    def syzygy_columns(self):
        k = kernel_basis(self.m)
        return [list(k.col(j)) for j in range(k.ncols)]


class _PolySpanOracle:
    """Column-span services over a polynomial or quotient backend."""

    def __init__(self, ring, cols, nrows, extra_cols):
        self.base = ring
        self.nrows = nrows
        self.ncols = len(cols)
        self.graph = GraphBasis(ring, [list(c) for c in cols] + [list(c) for c in extra_cols], nrows)

    def member(self, target) -> bool:
        return self.graph.member(list(target))

    def solve(self, target):
        x = self.graph.solve(list(target))
        return None if x is None else x[: self.ncols]

    def syzygy_columns(self):
        full = self.graph.syzygy_columns()
        seen = []
        for col in full:
            proj = col[: self.ncols]
            if any(not p.is_zero() for p in proj) and proj not in seen:
                seen.append(proj)
        return seen


class IntegerRing:
    """The ring of integers; elements are Python ints."""

    kind = "integers"

    def zero(self):
        return 0

    def one(self):
        return 1

    def coerce(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, str):
            return self.parse(x)
        raise RingError(f"cannot coerce {x!r} into Z")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def pow(self, a, k):
        return a ** k

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def unit_inv(self, a):
        if not self.is_unit(a):
            raise RingError(f"{a} is not a unit in Z")
        return a

    def normalize(self, a):
        return a

    def parse(self, text: str):
        try:
            return int(text.strip())
        except ValueError:
            raise RingError(f"bad integer literal {text!r}") from None

    def to_str(self, a) -> str:
        return str(a)

    def generator_sort(self, elems):
        return sorted(elems, key=lambda e: (abs(e), e))

    def ideal_relation_columns(self, ngens):
        return []

    def span_oracle(self, cols, nrows):
        return _ZSpanOracle(cols, nrows)

    def kernel_of_columns(self, cols, nrows):
        return _ZSpanOracle(cols, nrows).syzygy_columns()

    def canonical_columns(self, cols, nrows):
        h = canonical_column_form(mat_from_cols([tuple(c) for c in cols], nrows))
        return [list(h.col(j)) for j in range(h.ncols)]

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")

    def __repr__(self):
        return "Z"


class PolynomialRing:
    """Polynomial backend; delegates element arithmetic to ``PolyRing``."""

    kind = "polynomial"

    def __init__(self, field, variables, order="grevlex"):
        self.poly_ring = PolyRing(field, variables, order)

    @property
    def field(self):
        return self.poly_ring.field

    @property
    def variables(self):
        return self.poly_ring.variables

    @property
    def order(self):
        return self.poly_ring.order

    def zero(self):
        return self.poly_ring.zero()

    def one(self):
        return self.poly_ring.one()

    def coerce(self, x):
        return self.poly_ring.coerce(x)

    def add(self, a, b):
        return self.poly_ring.add(a, b)

    def sub(self, a, b):
        return self.poly_ring.sub(a, b)

    def mul(self, a, b):
        return self.poly_ring.mul(a, b)

    def neg(self, a):
        return self.poly_ring.neg(a)

    def pow(self, a, k):
        return self.poly_ring.pow(a, k)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def eq(self, a, b) -> bool:
        return a == b

    def is_unit(self, a) -> bool:
        return self.poly_ring.is_unit(a)

    def unit_inv(self, a):
        if not self.is_unit(a):
            raise RingError(f"{a!r} is not a recognized unit")
        c = a.constant_value()
        return self.poly_ring.from_terms([((0,) * self.poly_ring.nvars, self.field.inv(c))])

    def normalize(self, a):
        return a

    def parse(self, text: str):
        return self.poly_ring.parse(text)

    def to_str(self, a) -> str:
        return self.poly_ring.to_str(a)

    def generator_sort(self, elems):
        return sorted(elems,
                      key=lambda p: tuple(self.order.key(e) for e, _ in p.terms),
                      reverse=True)

    def ideal_relation_columns(self, ngens):
        return []

    def span_oracle(self, cols, nrows):
        return _PolySpanOracle(self.poly_ring, cols, nrows, [])

    def kernel_of_columns(self, cols, nrows):
        return self.span_oracle(cols, nrows).syzygy_columns()

    def canonical_columns(self, cols, nrows):
        vecs = columns_to_vectors(self.poly_ring, [list(c) for c in cols])
        vecs = [v for v in vecs if v]
        if not vecs:
            return []
        gb = reduced_module_groebner(self.poly_ring, vecs, TopOrder(self.order))
        return vectors_to_columns(self.poly_ring, gb, nrows)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and not isinstance(other, QuotientRing) \
            and other.poly_ring == self.poly_ring

    def __hash__(self):
        return hash(("poly", self.poly_ring))

    def __repr__(self):
        return repr(self.poly_ring)


class QuotientRing(PolynomialRing):
    """Quotient ``A/I`` of a polynomial ring by a finitely generated ideal.

    Elements are stored as normal forms modulo the reduced Groebner basis
    of ``I``; every presentation matrix implicitly gains the columns
    ``q * e_k`` for the generators ``q`` of ``I``.
    """

    kind = "quotient"

    def __init__(self, field, variables, ideal_generators, order="grevlex"):
        super().__init__(field, variables, order)
        gens = [self.poly_ring.coerce(g) for g in ideal_generators]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise RingError("quotient requires at least one nonzero ideal generator")
        self.ideal_generators = tuple(gens)
        self.ideal_gb = groebner_basis(list(gens))

    def normalize(self, a):
        return normal_form(a, self.ideal_gb)

    def coerce(self, x):
        return self.normalize(self.poly_ring.coerce(x))

    def add(self, a, b):
        return self.normalize(self.poly_ring.add(a, b))

    def sub(self, a, b):
        return self.normalize(self.poly_ring.sub(a, b))

    def mul(self, a, b):
        return self.normalize(self.poly_ring.mul(a, b))

    def neg(self, a):
        return self.normalize(self.poly_ring.neg(a))

    def pow(self, a, k):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def is_zero(self, a) -> bool:
        return self.normalize(a).is_zero()

    def eq(self, a, b) -> bool:
        return self.is_zero(self.poly_ring.sub(a, b))

    def is_unit(self, a) -> bool:
        # sound but partial: recognizes nonzero constants in normal form
        return self.poly_ring.is_unit(self.normalize(a))

    def parse(self, text: str):
        return self.normalize(self.poly_ring.parse(text))

    def ideal_relation_columns(self, ngens):
        cols = []
        zero = self.poly_ring.zero()
        for k in range(ngens):
            for q in self.ideal_generators:
                col = [zero] * ngens
                col[k] = q
                cols.append(col)
        return cols

    def _augmented(self, nrows):
        return self.ideal_relation_columns(nrows)

    def span_oracle(self, cols, nrows):
        return _PolySpanOracle(self.poly_ring, cols, nrows, self._augmented(nrows))

    def kernel_of_columns(self, cols, nrows):
        return self.span_oracle(cols, nrows).syzygy_columns()

    def canonical_columns(self, cols, nrows):
        allc = [list(c) for c in cols] + self._augmented(nrows)
        vecs = columns_to_vectors(self.poly_ring, allc)
        vecs = [v for v in vecs if v]
        if not vecs:
            return []
        gb = reduced_module_groebner(self.poly_ring, vecs, TopOrder(self.order))
        return vectors_to_columns(self.poly_ring, gb, nrows)

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and other.poly_ring == self.poly_ring \
            and other.ideal_generators == self.ideal_generators

    def __hash__(self):
        return hash(("quot", self.poly_ring, self.ideal_generators))

    def __repr__(self):
        gens = ", ".join(self.poly_ring.to_str(g) for g in self.ideal_generators)
        return f"{self.poly_ring} / ({gens})"


# ---------------------------------------------------------------------------
# constructors and matrix helpers


def integers() -> IntegerRing:
    return IntegerRing()


def rational_poly_ring(variables, order="grevlex") -> PolynomialRing:
    return PolynomialRing(RationalField(), variables, order)


def prime_poly_ring(p, variables, order="grevlex") -> PolynomialRing:
    return PolynomialRing(PrimeField(p), variables, order)


def quotient_ring(base: PolynomialRing, ideal_generators) -> QuotientRing:
    return QuotientRing(base.field, base.variables, ideal_generators, base.order)


def ring_matmul(ring, a: Mat, b: Mat) -> Mat:
    if a.ncols != b.nrows:
        raise RingError("shape mismatch in ring matmul")
    rows = []
    for i in range(a.nrows):
        row = []
        for j in range(b.ncols):
            acc = ring.zero()
            for k in range(a.ncols):
                acc = ring.add(acc, ring.mul(a.entry(i, k), b.entry(k, j)))
            row.append(acc)
        rows.append(tuple(row))
    return Mat(a.nrows, b.ncols, tuple(rows))


def ring_mat_from_rows(ring, rows) -> Mat:
    out = tuple(tuple(ring.coerce(x) for x in r) for r in rows)
    ncols = len(out[0]) if out else 0
    return Mat(len(out), ncols, out)


def ring_identity(ring, n: int) -> Mat:
    one, zero = ring.one(), ring.zero()
    return Mat(n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))


def ring_zero_mat(ring, nrows: int, ncols: int) -> Mat:
    z = ring.zero()
    return Mat(nrows, ncols, tuple(tuple(z for _ in range(ncols)) for _ in range(nrows)))


def ring_mat_eq(ring, a: Mat, b: Mat) -> bool:
    if a.nrows != b.nrows or a.ncols != b.ncols:
        return False
    return all(ring.eq(a.entry(i, j), b.entry(i, j))
               for i in range(a.nrows) for j in range(a.ncols))
