"""Free resolutions and Ext modules.

Over Z the column Hermite form of the presentation already has independent
columns, so every module resolves in length at most one.  Over a polynomial
ring the differentials are module Groebner bases and each syzygy step is
computed from the S-pair reductions of the previous one; the orders are the
induced Schreyer orders, which is what bounds the length by the number of
variables.  Over a quotient ring resolutions can be infinite, so a budget
is enforced and exceeding it raises ``BudgetExceededError`` (unless a
truncated resolution was requested, which is all Ext in a fixed degree
needs).
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (BoundedComplex, ComplexMorphism, cohomology,
                        hom_complex, module_complex)
from .fpmod import FpModule, ModuleMorphism, free_module
from .groebner import (SchreyerOrder, TopOrder, columns_to_vectors,
                       module_groebner, vec_lead, vectors_to_columns)
from .intlinalg import Mat, mat_from_cols
from .rings import ring_matmul, ring_zero_mat


class BudgetExceededError(RuntimeError):
    pass


@dataclass
class FreeResolution:
    """``... -> F_2 -> F_1 -> F_0 -> M -> 0`` with ``F_q`` free in degree
    ``-q``; ``augmentation : F_0 -> M``."""

    complex: BoundedComplex
    augmentation: ModuleMorphism
    length: int
    truncated: bool

    @property
    def module(self) -> FpModule:
        return self.augmentation.target

    def ranks(self):
        return [self.complex.module(-q).free_rank for q in range(self.length + 1)]


def _resolution_over_z(m: FpModule):
    ring = m.ring
    rel = m.relations  # canonical column HNF: columns independent
    f0 = free_module(ring, m.ngens)
    mods = [f0]
    diffs = []
    if rel.ncols:
        f1 = free_module(ring, rel.ncols)
        mods.insert(0, f1)
        diffs.append(ModuleMorphism(f1, f0, rel, check=False))
    comp = BoundedComplex(ring, -len(diffs), mods, diffs, check=False)
    from .rings import ring_identity
    aug = ModuleMorphism(f0, m, ring_identity(ring, m.ngens), check=False)
    return FreeResolution(comp, aug, len(diffs), truncated=False)


def _schreyer_arrange(order, vecs):
    """Sort by lead position, then lex-descending leading monomial.

    This arrangement is what makes the leading terms of each syzygy step
    drop one more variable, bounding the resolution length by the number
    of variables.
    """
    def key(v):
        pos, exp = vec_lead(order, v)
        return (pos, tuple(-e for e in exp))
    return sorted(vecs, key=key)


def _resolution_over_poly(m: FpModule, max_length, truncate_at):
    base = m.ring.poly_ring
    ring = m.ring
    f0 = free_module(ring, m.ngens)
    mods = [f0]
    diffs_cols = []  # list of (ncols_source, columns) per step
    order = TopOrder(base.order)
    rel_cols = [list(m.relations.col(j)) for j in range(m.relations.ncols)]
    vecs = [v for v in columns_to_vectors(base, rel_cols) if v]
    if vecs:
        gb, _ = module_groebner(base, vecs, order)
        vecs = _schreyer_arrange(order, gb)
    step = 0
    cur_vecs, cur_order, cur_rows = vecs, order, m.ngens
    while cur_vecs:
        step += 1
        if truncate_at is not None and step > truncate_at:
            return _assemble_poly_resolution(m, mods, diffs_cols, truncated=True)
        if truncate_at is None and step > max_length:
            raise BudgetExceededError(
                f"resolution exceeded budget of {max_length} steps")
        cols = vectors_to_columns(base, cur_vecs, cur_rows)
        fk = free_module(ring, len(cols))
        mods.insert(0, fk)
        diffs_cols.append((cur_rows, cols))
        # syzygies of the current basis, Groebner for the Schreyer order
        anchors = [vec_lead(cur_order, v) for v in cur_vecs]
        _, syz = module_groebner(base, cur_vecs, cur_order,
                                 want_syzygies=True, preserve_order=True)
        nxt_order = SchreyerOrder(cur_order, anchors)
        syz = [v for v in syz if v]
        cur_vecs = _schreyer_arrange(nxt_order, syz)
        cur_order, cur_rows = nxt_order, len(cols)
    return _assemble_poly_resolution(m, mods, diffs_cols, truncated=False)


def _assemble_poly_resolution(m: FpModule, mods, diffs_cols, truncated):
    ring = m.ring
    diffs = []
    n = len(diffs_cols)
    for k in range(n, 0, -1):
        nrows, cols = diffs_cols[k - 1]
        mat = mat_from_cols([tuple(c) for c in cols], nrows)
        src = mods[n - k]
        tgt = mods[n - k + 1]
        diffs.append(ModuleMorphism(src, tgt, mat, check=False))
    comp = BoundedComplex(ring, -n, mods, diffs, check=False)
    from .rings import ring_identity
    aug = ModuleMorphism(mods[-1], m, ring_identity(ring, m.ngens), check=False)
    return FreeResolution(comp, aug, n, truncated=truncated)


def _resolution_over_quotient(m: FpModule, max_length, truncate_at):
    ring = m.ring
    f0 = free_module(ring, m.ngens)
    mods = [f0]
    diffs_cols = []
    # relation generators that are nonzero in A/I
    cur_cols = []
    for j in range(m.relations.ncols):
        col = [ring.normalize(x) for x in m.relations.col(j)]
        if any(not ring.is_zero(x) for x in col):
            cur_cols.append(col)
    cur_rows = m.ngens
    step = 0
    while cur_cols:
        step += 1
        if truncate_at is not None and step > truncate_at:
            return _assemble_poly_resolution(m, mods, diffs_cols, truncated=True)
        if truncate_at is None and step > max_length:
            raise BudgetExceededError(
                f"resolution exceeded budget of {max_length} steps over quotient ring")
        fk = free_module(ring, len(cur_cols))
        mods.insert(0, fk)
        diffs_cols.append((cur_rows, [list(c) for c in cur_cols]))
        syz = ring.kernel_of_columns(cur_cols, cur_rows)
        nxt = []
        for v in syz:
            col = [ring.normalize(x) for x in v]
            if any(not ring.is_zero(x) for x in col):
                nxt.append(col)
        cur_cols, cur_rows = nxt, len(cur_cols)
    return _assemble_poly_resolution(m, mods, diffs_cols, truncated=False)


def free_resolution(m: FpModule, max_length: int | None = None,
                    truncate_at: int | None = None) -> FreeResolution:
    """Free resolution of ``m``.

    ``max_length`` bounds the number of syzygy steps (default: 1 over Z,
    number of variables over a polynomial ring, 8 over a quotient ring);
    exceeding it raises ``BudgetExceededError``.  With ``truncate_at`` the
    resolution is cut there instead and flagged ``truncated``.
    """
    if m.ring.kind == "integers":
        return _resolution_over_z(m)
    if m.ring.kind == "polynomial":
        bound = max(1, m.ring.poly_ring.nvars)
        cap = max(max_length, bound) if max_length is not None else bound
        return _resolution_over_poly(m, cap, truncate_at)
    cap = max_length if max_length is not None else 8
    return _resolution_over_quotient(m, cap, truncate_at)


def ext_module(m: FpModule, n: FpModule, p: int,
               max_length: int | None = None) -> FpModule:
    """``Ext^p(m, n)`` computed from a free resolution of ``m``."""
    if p < 0:
        raise ValueError("ext degree must be >= 0")
    res = free_resolution(m, max_length=max_length, truncate_at=p + 1)
    h = hom_complex(res.complex, module_complex(n))
    return cohomology(h, p)


# ---------------------------------------------------------------------------
# comparison lifts


def lift_through_resolution(phi: ModuleMorphism, res_src: FreeResolution,
                            res_tgt: FreeResolution) -> ComplexMorphism:
    """Chain map ``F(phi.source) -> F(phi.target)`` over ``phi``.

    Built degree by degree with span solving; the usual comparison
    construction for projective resolutions.
    """
    ring = phi.source.ring
    maps = {}
    # degree 0: lift phi o aug_src through aug_tgt
    f0s = res_src.complex.module(0)
    f0t = res_tgt.complex.module(0)
    tgt_mod = res_tgt.module
    target_cols = ring_matmul(ring, phi.matrix, res_src.augmentation.matrix)
    oracle = ring.span_oracle(
        [list(res_tgt.augmentation.matrix.col(j)) for j in range(f0t.ngens)] +
        [list(tgt_mod.relations.col(j)) for j in range(tgt_mod.relations.ncols)],
        tgt_mod.ngens)
    cols = []
    for j in range(target_cols.ncols):
        sol = oracle.solve(list(target_cols.col(j)))
        if sol is None:
            raise ValueError("cannot lift morphism through resolutions")
        cols.append(sol[: f0t.ngens])
    maps[0] = ModuleMorphism(f0s, f0t, mat_from_cols([tuple(c) for c in cols], f0t.ngens),
                             check=False)
    # higher degrees
    depth = min(res_src.length, res_tgt.length)
    for q in range(1, depth + 1):
        fs = res_src.complex.module(-q)
        ft = res_tgt.complex.module(-q)
        if fs.ngens == 0 or ft.ngens == 0:
            maps[-q] = ModuleMorphism(fs, ft, ring_zero_mat(ring, ft.ngens, fs.ngens),
                                      check=False)
            continue
        d_t = res_tgt.complex.diff(-q)  # F_q^t -> F_{q-1}^t
        d_s = res_src.complex.diff(-q)
        want = ring_matmul(ring, maps[-(q - 1)].matrix, d_s.matrix)
        f_prev_t = res_tgt.complex.module(-(q - 1))
        oracle = ring.span_oracle(
            [list(d_t.matrix.col(j)) for j in range(ft.ngens)] +
            [list(f_prev_t.relations.col(j)) for j in range(f_prev_t.relations.ncols)],
            f_prev_t.ngens)
        cols = []
        for j in range(want.ncols):
            sol = oracle.solve(list(want.col(j)))
            if sol is None:
                raise ValueError("comparison lift failed; resolution not exact?")
            cols.append(sol[: ft.ngens])
        maps[-q] = ModuleMorphism(fs, ft, mat_from_cols([tuple(c) for c in cols], ft.ngens),
                                  check=False)
    return ComplexMorphism(res_src.complex, res_tgt.complex, maps, check=False)
