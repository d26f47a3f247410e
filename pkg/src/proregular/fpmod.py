"""Finitely presented modules and their morphisms over any backend ring.

A module is the cokernel of a presentation matrix (generators x relations);
a morphism is a matrix on generators whose well-definedness is certified by
span membership of the pushed-forward relations.  Kernels, images and
cokernels come with their canonical inclusion/projection morphisms, and all
subquotient constructions are minimized (unit-pivot pruning) so tower-level
objects stay small.

Over a quotient backend ``A/I`` every presentation silently carries the
relation columns ``q * e_k`` for generators ``q`` of ``I``; the ring's span
oracle takes care of that, so all formulas below are backend-agnostic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intlinalg import Mat, mat_from_cols
from .rings import (RingError, ring_identity, ring_mat_eq, ring_mat_from_rows,
                    ring_matmul, ring_zero_mat)


class ModuleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class IdealSpec:
    """A finitely generated ideal, caught as an ordered generator sequence."""

    ring: object
    generators: tuple
    dropped_zero: bool = False
    name: str | None = None

    @staticmethod
    def make(ring, gens, name=None) -> "IdealSpec":
        coerced = [ring.coerce(g) for g in gens]
        kept = tuple(g for g in coerced if not ring.is_zero(g))
        return IdealSpec(ring, kept, dropped_zero=len(kept) < len(coerced), name=name)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        gens = ", ".join(self.ring.to_str(g) for g in self.generators)
        return f"({gens})"


def power_sequence(a: IdealSpec, i: int) -> IdealSpec:
    """Elementwise powers ``(a_1^i, ..., a_n^i)`` (same length as ``a``)."""
    if i < 1:
        raise ModuleError("power must be >= 1")
    return IdealSpec(a.ring, tuple(a.ring.pow(g, i) for g in a.generators))


def ideal_power(a: IdealSpec, i: int) -> IdealSpec:
    """All degree-``i`` products of the generators (deduplicated, sorted)."""
    if i < 1:
        raise ModuleError("power must be >= 1")
    ring = a.ring
    prods = [ring.one()]
    for _ in range(i):
        prods = [ring.mul(p, g) for p in prods for g in a.generators]
    out = []
    for p in prods:
        if ring.is_zero(p):
            continue
        if not any(ring.eq(p, q) for q in out):
            out.append(p)
    return IdealSpec(ring, tuple(ring.generator_sort(out)))


# ---------------------------------------------------------------------------
# modules


class FpModule:
    """Cokernel of a presentation matrix over a backend ring."""

    __slots__ = ("ring", "ngens", "relations", "name", "free_rank", "_oracle")

    def __init__(self, ring, ngens: int, relation_columns, name=None,
                 canonical: bool = True, free_rank=None):
        self.ring = ring
        self.ngens = ngens
        cols = [[ring.normalize(ring.coerce(x)) for x in col] for col in relation_columns]
        for col in cols:
            if len(col) != ngens:
                raise ModuleError("relation column length must equal generator count")
        cols = [c for c in cols if any(not ring.is_zero(x) for x in c)]
        if free_rank is None and not cols:
            free_rank = ngens
        cols += [list(c) for c in ring.ideal_relation_columns(ngens)]
        if canonical:
            cols = ring.canonical_columns(cols, ngens)
        self.relations = mat_from_cols([tuple(c) for c in cols], ngens)
        self.name = name
        self.free_rank = free_rank
        self._oracle = None

    # -- plumbing -----------------------------------------------------------

    def relation_oracle(self):
        if self._oracle is None:
            self._oracle = self.ring.span_oracle(
                [list(self.relations.col(j)) for j in range(self.relations.ncols)],
                self.ngens)
        return self._oracle

    def is_zero(self) -> bool:
        if self.ngens == 0:
            return True
        oracle = self.relation_oracle()
        one, zero = self.ring.one(), self.ring.zero()
        for k in range(self.ngens):
            e = [one if t == k else zero for t in range(self.ngens)]
            if not oracle.member(e):
                return False
        return True

    def element_is_zero(self, col) -> bool:
        """Does the generator combination ``col`` vanish in the module?"""
        return self.relation_oracle().member([self.ring.coerce(x) for x in col])

    def __repr__(self):
        label = self.name or "FpModule"
        return f"{label}(gens={self.ngens}, rels={self.relations.ncols} over {self.ring!r})"

    # -- canonical invariants ------------------------------------------------

    def abelian_invariants(self):
        """Over Z: (free_rank, [d1, d2, ...]) with 1 < d1 | d2 | ...."""
        from .intlinalg import smith_normal_form
        if self.ring.kind != "integers":
            raise ModuleError("abelian invariants only defined over Z")
        snf = smith_normal_form(self.relations)
        diag = snf.diagonal()
        tors = [d for d in diag if d not in (0, 1)]
        rank = self.ngens - sum(1 for d in diag if d != 0)
        return rank, tors

    def order(self):
        """Number of elements (None if infinite); Z backend only."""
        rank, tors = self.abelian_invariants()
        if rank > 0:
            return None
        out = 1
        for d in tors:
            out *= d
        return out


def free_module(ring, r: int, name=None) -> FpModule:
    return FpModule(ring, r, [], name=name, free_rank=r)


def zero_module(ring) -> FpModule:
    return FpModule(ring, 0, [], name="0", free_rank=0)


def is_zero(m: FpModule) -> bool:
    return m.is_zero()


# ---------------------------------------------------------------------------
# morphisms


class ModuleMorphism:
    """Matrix on generators, checked against the presentations."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FpModule, target: FpModule, matrix: Mat, check=True):
        if source.ring != target.ring:
            raise ModuleError("morphism between modules over different rings")
        if matrix.nrows != target.ngens or matrix.ncols != source.ngens:
            raise ModuleError(
                f"morphism matrix must be {target.ngens}x{source.ngens}, "
                f"got {matrix.nrows}x{matrix.ncols}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not self._well_defined():
            raise ModuleError("matrix does not define a morphism (relations not preserved)")

    def _well_defined(self) -> bool:
        if self.source.relations.ncols == 0 or self.target.ngens == 0:
            return True
        pushed = ring_matmul(self.source.ring, self.matrix, self.source.relations)
        oracle = self.target.relation_oracle()
        return all(oracle.member(list(pushed.col(j))) for j in range(pushed.ncols))

    def is_zero_morphism(self) -> bool:
        if self.target.ngens == 0 or self.source.ngens == 0:
            return True
        oracle = self.target.relation_oracle()
        return all(oracle.member(list(self.matrix.col(j))) for j in range(self.matrix.ncols))

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """self o other (apply ``other`` first)."""
        if other.target.ngens != self.source.ngens:
            raise ModuleError("composition mismatch")
        return ModuleMorphism(other.source, self.target,
                              ring_matmul(self.source.ring, self.matrix, other.matrix),
                              check=False)

    def add(self, other: "ModuleMorphism") -> "ModuleMorphism":
        ring = self.source.ring
        rows = tuple(tuple(ring.add(self.matrix.entry(i, j), other.matrix.entry(i, j))
                           for j in range(self.matrix.ncols))
                     for i in range(self.matrix.nrows))
        return ModuleMorphism(self.source, self.target,
                              Mat(self.matrix.nrows, self.matrix.ncols, rows), check=False)

    def negate(self) -> "ModuleMorphism":
        ring = self.source.ring
        rows = tuple(tuple(ring.neg(x) for x in r) for r in self.matrix.rows)
        return ModuleMorphism(self.source, self.target,
                              Mat(self.matrix.nrows, self.matrix.ncols, rows), check=False)

    def sub(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return self.add(other.negate())

    def equals(self, other: "ModuleMorphism") -> bool:
        return self.sub(other).is_zero_morphism()

    def scale(self, scalar) -> "ModuleMorphism":
        ring = self.source.ring
        s = ring.coerce(scalar)
        rows = tuple(tuple(ring.mul(s, x) for x in r) for r in self.matrix.rows)
        return ModuleMorphism(self.source, self.target,
                              Mat(self.matrix.nrows, self.matrix.ncols, rows), check=False)

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r})"


def identity_morphism(m: FpModule) -> ModuleMorphism:
    return ModuleMorphism(m, m, ring_identity(m.ring, m.ngens), check=False)


def zero_morphism(source: FpModule, target: FpModule) -> ModuleMorphism:
    return ModuleMorphism(source, target,
                          ring_zero_mat(source.ring, target.ngens, source.ngens),
                          check=False)


def multiplication_morphism(m: FpModule, scalar) -> ModuleMorphism:
    """Multiplication by a ring element as an endomorphism."""
    ring = m.ring
    s = ring.coerce(scalar)
    rows = tuple(tuple(s if i == j else ring.zero() for j in range(m.ngens))
                 for i in range(m.ngens))
    return ModuleMorphism(m, m, Mat(m.ngens, m.ngens, rows), check=False)


# ---------------------------------------------------------------------------
# minimization


def minimized(m: FpModule):
    """Prune unit-pivot generators.

    Returns ``(small, to_small, from_small)`` where ``to_small: m -> small``
    and ``from_small: small -> m`` are mutually inverse isomorphisms.
    """
    ring = m.ring
    cur = m
    to_small = identity_morphism(m)
    from_small = identity_morphism(m)
    while True:
        rel = cur.relations
        pivot = None
        for j in range(rel.ncols):
            for i in range(rel.nrows):
                if ring.is_unit(rel.entry(i, j)):
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        u_inv = ring.unit_inv(rel.entry(i, j))
        keep = [k for k in range(cur.ngens) if k != i]
        # substitute e_i = -u^{-1} * sum_{k != i} rel[k][j] e_k
        new_cols = []
        for c in range(rel.ncols):
            if c == j:
                continue
            f = ring.mul(rel.entry(i, c), u_inv)
            col = [ring.sub(rel.entry(k, c), ring.mul(f, rel.entry(k, j))) for k in keep]
            new_cols.append(col)
        nxt = FpModule(ring, len(keep), new_cols)
        # projection cur -> nxt
        proj_rows = []
        for r, k in enumerate(keep):
            row = []
            for s in range(cur.ngens):
                if s == k:
                    row.append(ring.one())
                elif s == i:
                    row.append(ring.neg(ring.mul(u_inv, rel.entry(k, j))))
                else:
                    row.append(ring.zero())
            proj_rows.append(tuple(row))
        proj = ModuleMorphism(cur, nxt, Mat(len(keep), cur.ngens, tuple(proj_rows)), check=False)
        # inclusion nxt -> cur (choose representatives e_k)
        incl_rows = []
        for s in range(cur.ngens):
            row = [ring.one() if s == k else ring.zero() for k in keep]
            incl_rows.append(tuple(row))
        incl = ModuleMorphism(nxt, cur, Mat(cur.ngens, len(keep), tuple(incl_rows)), check=False)
        to_small = proj.compose(to_small)
        from_small = from_small.compose(incl)
        cur = nxt
    return cur, to_small, from_small


# ---------------------------------------------------------------------------
# kernel / image / cokernel


def _preimage_columns(phi: ModuleMorphism):
    """Generators of ``{m in A^{g_src} : phi(m) in im(target relations)}``."""
    ring = phi.source.ring
    g_src = phi.source.ngens
    if phi.target.ngens == 0:
        return [[ring.one() if t == k else ring.zero() for t in range(g_src)]
                for k in range(g_src)]
    cols = [list(phi.matrix.col(j)) for j in range(phi.matrix.ncols)]
    rel_t = phi.target.relations
    allc = cols + [list(rel_t.col(j)) for j in range(rel_t.ncols)]
    out = []
    for v in ring.kernel_of_columns(allc, phi.target.ngens):
        head = v[:g_src]
        if any(not ring.is_zero(x) for x in head):
            out.append(head)
    return out


def kernel(phi: ModuleMorphism):
    """``(K, incl)`` with ``incl : K -> source`` the canonical inclusion."""
    ring = phi.source.ring
    gens = _preimage_columns(phi)
    lmat = mat_from_cols([tuple(c) for c in gens], phi.source.ngens)
    rel_s = phi.source.relations
    allc = [list(lmat.col(j)) for j in range(lmat.ncols)] + \
        [list(rel_s.col(j)) for j in range(rel_s.ncols)]
    rels = []
    if lmat.ncols:
        syz = ring.kernel_of_columns(allc, phi.source.ngens)
        for v in syz:
            head = v[:lmat.ncols]
            if any(not ring.is_zero(x) for x in head):
                rels.append(head)
    raw = FpModule(ring, lmat.ncols, rels)
    small, _, from_small = minimized(raw)
    incl_matrix = ring_matmul(ring, lmat, from_small.matrix) if lmat.ncols else \
        ring_zero_mat(ring, phi.source.ngens, 0)
    incl = ModuleMorphism(small, phi.source, incl_matrix, check=False)
    return small, incl


def cokernel_with_section(phi: ModuleMorphism):
    """``(C, proj, section)``: ``proj : target -> C`` and a representative
    matrix ``section`` (target generators for each generator of ``C``)."""
    ring = phi.source.ring
    rel_t = phi.target.relations
    cols = [list(phi.matrix.col(j)) for j in range(phi.matrix.ncols)] + \
        [list(rel_t.col(j)) for j in range(rel_t.ncols)]
    raw = FpModule(ring, phi.target.ngens, cols)
    small, to_small, from_small = minimized(raw)
    proj = ModuleMorphism(phi.target, small, to_small.matrix, check=False)
    return small, proj, from_small.matrix


def cokernel(phi: ModuleMorphism):
    c, proj, _ = cokernel_with_section(phi)
    return c, proj


def image(phi: ModuleMorphism):
    """``(I, incl)`` with ``incl : I -> target``; generators are the images
    of the source generators."""
    ring = phi.source.ring
    rels = _preimage_columns(phi)
    raw = FpModule(ring, phi.source.ngens, rels)
    small, _, from_small = minimized(raw)
    incl = ModuleMorphism(small, phi.target,
                          ring_matmul(ring, phi.matrix, from_small.matrix), check=False)
    return small, incl


def submodule(parent: FpModule, generator_columns):
    """Submodule spanned by the given generator columns; ``(S, incl)``."""
    ring = parent.ring
    cols = [[ring.coerce(x) for x in c] for c in generator_columns]
    lmat = mat_from_cols([tuple(c) for c in cols], parent.ngens)
    rel = parent.relations
    allc = cols + [list(rel.col(j)) for j in range(rel.ncols)]
    rels = []
    if cols:
        for v in ring.kernel_of_columns(allc, parent.ngens):
            head = v[:len(cols)]
            if any(not ring.is_zero(x) for x in head):
                rels.append(head)
    raw = FpModule(ring, len(cols), rels)
    small, _, from_small = minimized(raw)
    incl_matrix = ring_matmul(ring, lmat, from_small.matrix) if cols else \
        ring_zero_mat(ring, parent.ngens, 0)
    return small, ModuleMorphism(small, parent, incl_matrix, check=False)


def submodules_equal(parent: FpModule, cols_a, cols_b) -> bool:
    """Equality of the two spans as submodules of ``parent``."""
    ring = parent.ring
    rel = parent.relations
    rel_cols = [list(rel.col(j)) for j in range(rel.ncols)]
    oracle_a = ring.span_oracle([list(c) for c in cols_a] + rel_cols, parent.ngens)
    oracle_b = ring.span_oracle([list(c) for c in cols_b] + rel_cols, parent.ngens)
    return all(oracle_b.member(list(c)) for c in cols_a) and \
        all(oracle_a.member(list(c)) for c in cols_b)


# ---------------------------------------------------------------------------
# hom / tensor / direct sum


def direct_sum(modules, name=None):
    """``(S, inclusions, projections)`` in the given order."""
    if not modules:
        raise ModuleError("direct sum of nothing; use zero_module")
    ring = modules[0].ring
    for m in modules:
        if m.ring != ring:
            raise ModuleError("mixed rings in direct sum")
    offsets = []
    total = 0
    for m in modules:
        offsets.append(total)
        total += m.ngens
    cols = []
    for idx, m in enumerate(modules):
        for j in range(m.relations.ncols):
            col = [ring.zero()] * total
            for i in range(m.ngens):
                col[offsets[idx] + i] = m.relations.entry(i, j)
            cols.append(col)
    free_rank = total if all(m.free_rank is not None for m in modules) else None
    s = FpModule(ring, total, cols, name=name, free_rank=free_rank)
    inclusions, projections = [], []
    for idx, m in enumerate(modules):
        iin = ring_zero_mat(ring, total, m.ngens)
        rows = [list(r) for r in iin.rows]
        for i in range(m.ngens):
            rows[offsets[idx] + i][i] = ring.one()
        inclusions.append(ModuleMorphism(m, s, Mat(total, m.ngens, tuple(tuple(r) for r in rows)),
                                         check=False))
        pr = ring_zero_mat(ring, m.ngens, total)
        rows = [list(r) for r in pr.rows]
        for i in range(m.ngens):
            rows[i][offsets[idx] + i] = ring.one()
        projections.append(ModuleMorphism(s, m, Mat(m.ngens, total, tuple(tuple(r) for r in rows)),
                                          check=False))
    return s, inclusions, projections


def tensor_module(m: FpModule, n: FpModule, name=None) -> FpModule:
    """Standard block presentation; generator ``(a, b)`` sits at ``a*gN + b``."""
    if m.ring != n.ring:
        raise ModuleError("mixed rings in tensor")
    ring = m.ring
    g = m.ngens * n.ngens
    cols = []
    for j in range(m.relations.ncols):
        for b in range(n.ngens):
            col = [ring.zero()] * g
            for a in range(m.ngens):
                col[a * n.ngens + b] = m.relations.entry(a, j)
            cols.append(col)
    for j in range(n.relations.ncols):
        for a in range(m.ngens):
            col = [ring.zero()] * g
            for b in range(n.ngens):
                col[a * n.ngens + b] = n.relations.entry(b, j)
            cols.append(col)
    free_rank = g if (m.free_rank is not None and n.free_rank is not None) else None
    return FpModule(ring, g, cols, name=name, free_rank=free_rank)


def tensor_morphism(phi: ModuleMorphism, psi: ModuleMorphism,
                    source: FpModule, target: FpModule) -> ModuleMorphism:
    """Kronecker product ``phi (x) psi`` between prebuilt tensor modules."""
    ring = phi.source.ring
    gm, gn = phi.source.ngens, psi.source.ngens
    tm, tn = phi.target.ngens, psi.target.ngens
    rows = []
    for a2 in range(tm):
        for b2 in range(tn):
            row = []
            for a in range(gm):
                for b in range(gn):
                    row.append(ring.mul(phi.matrix.entry(a2, a), psi.matrix.entry(b2, b)))
            rows.append(tuple(row))
    return ModuleMorphism(source, target, Mat(tm * tn, gm * gn, tuple(rows)), check=False)


def hom_module(m: FpModule, n: FpModule):
    """``(H, morphisms)``: the module ``Hom(m, n)`` and, for each of its
    generators, the corresponding concrete morphism ``m -> n``."""
    if m.ring != n.ring:
        raise ModuleError("mixed rings in hom")
    ring = m.ring
    if m.ngens == 0 or n.ngens == 0:
        z = zero_module(ring)
        return z, []
    p, _, _ = direct_sum([n] * m.ngens)
    s_rel = m.relations
    if s_rel.ncols == 0:
        h = p
        incl = identity_morphism(p)
    else:
        q, _, _ = direct_sum([n] * s_rel.ncols)
        rows = []
        for j in range(s_rel.ncols):
            for b2 in range(n.ngens):
                row = []
                for k in range(m.ngens):
                    for b in range(n.ngens):
                        row.append(s_rel.entry(k, j) if b == b2 else ring.zero())
                rows.append(tuple(row))
        phi = ModuleMorphism(p, q, Mat(q.ngens, p.ngens, tuple(rows)), check=False)
        h, incl = kernel(phi)
    gens_as_morphisms = []
    for t in range(h.ngens):
        col = incl.matrix.col(t)
        mat_rows = []
        for b in range(n.ngens):
            mat_rows.append(tuple(col[k * n.ngens + b] for k in range(m.ngens)))
        gens_as_morphisms.append(ModuleMorphism(m, n, Mat(n.ngens, m.ngens, tuple(mat_rows)),
                                                check=False))
    return h, gens_as_morphisms


# ---------------------------------------------------------------------------
# ideal-linked module constructions


def quotient_module(a: IdealSpec, i: int = 1, name=None) -> FpModule:
    """Cyclic module ``A / a^i`` presented by the ideal power generators."""
    gens = ideal_power(a, i).generators if i >= 1 else ()
    return FpModule(a.ring, 1, [[g] for g in gens], name=name)


def quotient_by_sequence(a: IdealSpec, i: int = 1, name=None) -> FpModule:
    """Cyclic module ``A / (a_1^i, ..., a_n^i)``."""
    gens = power_sequence(a, i).generators
    return FpModule(a.ring, 1, [[g] for g in gens], name=name)


def annihilator_submodule(m: FpModule, a: IdealSpec, i: int = 1):
    """``{x in m : a^i x = 0}`` with its inclusion; uses ideal powers."""
    gens = ideal_power(a, i).generators
    if not gens:
        return m, identity_morphism(m)
    target, _, _ = direct_sum([m] * len(gens))
    ring = m.ring
    rows = []
    for g in gens:
        for r in range(m.ngens):
            row = [g if c == r else ring.zero() for c in range(m.ngens)]
            rows.append(tuple(row))
    phi = ModuleMorphism(m, target, Mat(target.ngens, m.ngens, tuple(rows)), check=False)
    return kernel(phi)


def annihilated_by_elements(m: FpModule, elements):
    """``{x in m : g x = 0 for all given g}`` with inclusion."""
    ring = m.ring
    elems = [ring.coerce(g) for g in elements]
    elems = [g for g in elems if not ring.is_zero(g)]
    if not elems:
        return m, identity_morphism(m)
    target, _, _ = direct_sum([m] * len(elems))
    rows = []
    for g in elems:
        for r in range(m.ngens):
            row = [g if c == r else ring.zero() for c in range(m.ngens)]
            rows.append(tuple(row))
    phi = ModuleMorphism(m, target, Mat(target.ngens, m.ngens, tuple(rows)), check=False)
    return kernel(phi)
