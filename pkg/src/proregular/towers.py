"""Truncated pro- and ind-systems of modules and their finite-depth verdicts.

A depth-``N`` system holds objects ``X_1 .. X_N`` and adjacent transition
maps (downward ``X_{i+1} -> X_i`` for pro-systems, upward ``X_i -> X_{i+1}``
for ind-systems).  The central predicate is *vanishing*: a pro-system is
pro-zero when every level is eventually killed by a long enough transition
composite, and dually for ind-systems.

A truncation can only ever certify success, so the verdict type is
``pass`` / ``undetermined`` -- never "fail".  Certificates are required only
for levels with doubling headroom before the truncation edge (level ``i``
needs ``2 i + w <= N``, and level 1 is always required): in adic situations
the certificate gap grows linearly with the level, so levels too close to
the edge would produce spurious ``undetermined`` verdicts at any depth.
Every reported certificate is re-verifiable: it names the least ``j`` whose
composite with level ``i`` is the zero morphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fpmod import FpModule, ModuleMorphism, identity_morphism, kernel, \
    cokernel, zero_morphism
from .intlinalg import mat_from_cols
from .rings import ring_matmul


class TowerError(ValueError):
    pass


class _System:
    """Shared container: objects ``X_1..X_N`` plus adjacent maps."""

    direction = None  # "pro" or "ind"

    def __init__(self, objects, transitions, check: bool = True):
        self.objects = list(objects)
        self.transitions = list(transitions)
        if len(self.objects) < 1:
            raise TowerError("a system needs at least one object")
        if len(self.transitions) != len(self.objects) - 1:
            raise TowerError("need exactly one transition per adjacent pair")
        if check:
            for t, tr in enumerate(self.transitions):
                src, tgt = self._endpoints(t)
                if tr.source.ngens != src.ngens or tr.target.ngens != tgt.ngens:
                    raise TowerError(f"transition {t + 1} has wrong endpoints")

    @property
    def depth(self) -> int:
        return len(self.objects)

    def object(self, i: int) -> FpModule:
        """1-based level access."""
        return self.objects[i - 1]

    def _endpoints(self, t: int):
        raise NotImplementedError

    def composite(self, i: int, j: int) -> ModuleMorphism:
        raise NotImplementedError


class ProSystem(_System):
    """Transitions run downward: ``transitions[t] : X_{t+2} -> X_{t+1}``."""

    direction = "pro"

    def _endpoints(self, t: int):
        return self.objects[t + 1], self.objects[t]

    def composite(self, j: int, i: int) -> ModuleMorphism:
        """The map ``X_j -> X_i`` for ``j >= i`` (identity when equal)."""
        if not 1 <= i <= j <= self.depth:
            raise TowerError(f"bad composite indices {j} -> {i}")
        out = identity_morphism(self.object(j))
        for t in range(j - 1, i - 1, -1):
            out = self.transitions[t - 1].compose(out)
        return out


class IndSystem(_System):
    """Transitions run upward: ``transitions[t] : X_{t+1} -> X_{t+2}``."""

    direction = "ind"

    def _endpoints(self, t: int):
        return self.objects[t], self.objects[t + 1]

    def composite(self, i: int, j: int) -> ModuleMorphism:
        """The map ``X_i -> X_j`` for ``i <= j`` (identity when equal)."""
        if not 1 <= i <= j <= self.depth:
            raise TowerError(f"bad composite indices {i} -> {j}")
        out = identity_morphism(self.object(i))
        for t in range(i, j):
            out = self.transitions[t - 1].compose(out)
        return out


@dataclass
class VanishingVerdict:
    """Outcome of the finite-depth vanishing check.

    ``certificates[i]`` is the least partner level whose composite with
    level ``i`` is zero (``None`` when none exists up to the depth).  On
    ``undetermined`` the first failing required level is the witness and
    ``nonzero_partners`` lists every level it was tested against.
    """

    status: str  # "pass" | "undetermined"
    depth: int
    window: int
    required_levels: list
    certificates: dict
    witness_level: int | None = None
    nonzero_partners: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def required_levels(depth: int, window: int) -> list:
    """Levels that must certify: ``{1} union {i : 2 i + w <= N}``."""
    if not 1 <= window < depth:
        raise TowerError("window must satisfy 1 <= w < depth")
    out = {1}
    out.update(i for i in range(1, depth + 1) if 2 * i + window <= depth)
    return sorted(out)


def vanishing_check(system: _System, window: int = 1) -> VanishingVerdict:
    """Is the system pro-zero (pro) / vanishing in the colimit (ind)?

    For every level ``i`` the partner levels are all ``j`` with
    ``i < j <= N``; a certificate is a zero composite between them.
    """
    n = system.depth
    req = required_levels(n, window)
    certificates = {}
    for i in range(1, n):
        least = None
        for j in range(i + 1, n + 1):
            comp = system.composite(j, i) if system.direction == "pro" \
                else system.composite(i, j)
            if comp.is_zero_morphism():
                least = j
                break
        certificates[i] = least
    for i in req:
        if certificates.get(i) is None:
            return VanishingVerdict(
                status="undetermined", depth=n, window=window,
                required_levels=req, certificates=certificates,
                witness_level=i,
                nonzero_partners=list(range(i + 1, n + 1)))
    return VanishingVerdict(status="pass", depth=n, window=window,
                            required_levels=req, certificates=certificates)


def is_pro_zero(system: ProSystem, window: int = 1) -> VanishingVerdict:
    if system.direction != "pro":
        raise TowerError("is_pro_zero expects a pro-system")
    return vanishing_check(system, window)


# ---------------------------------------------------------------------------
# levelwise maps of systems and tower equivalence


class SystemMap:
    """Levelwise maps ``f_i : X_i -> Y_i`` commuting with transitions."""

    def __init__(self, source: _System, target: _System, maps, check: bool = True):
        if source.direction != target.direction:
            raise TowerError("system map between opposite variances")
        if source.depth != target.depth:
            raise TowerError("system map requires equal depths")
        self.source = source
        self.target = target
        self.maps = list(maps)
        if len(self.maps) != source.depth:
            raise TowerError("need one map per level")
        if check:
            for t in range(source.depth - 1):
                if source.direction == "ind":
                    left = self.maps[t + 1].compose(source.transitions[t])
                    right = target.transitions[t].compose(self.maps[t])
                else:
                    left = self.maps[t].compose(source.transitions[t])
                    right = target.transitions[t].compose(self.maps[t + 1])
                if not left.sub(right).is_zero_morphism():
                    raise TowerError(f"system map does not commute at step {t + 1}")

    @property
    def depth(self):
        return self.source.depth

    def kernel_system(self) -> _System:
        """Kernels with the induced transitions."""
        kers = []
        incls = []
        for f in self.maps:
            k, incl = kernel(f)
            kers.append(k)
            incls.append(incl)
        ring = self.source.objects[0].ring
        trans = []
        for t in range(self.depth - 1):
            if self.source.direction == "ind":
                amb = self.source.transitions[t].compose(incls[t])
                trans.append(_lift_into_submodule(amb, incls[t + 1]))
            else:
                amb = self.source.transitions[t].compose(incls[t + 1])
                trans.append(_lift_into_submodule(amb, incls[t]))
        cls = IndSystem if self.source.direction == "ind" else ProSystem
        return cls(kers, trans, check=False)

    def cokernel_system(self) -> _System:
        """Cokernels with the induced transitions."""
        coks = []
        projs = []
        for f in self.maps:
            c, proj = cokernel(f)
            coks.append(c)
            projs.append(proj)
        trans = []
        for t in range(self.depth - 1):
            if self.target.direction == "ind":
                comp = projs[t + 1].compose(self.target.transitions[t])
                trans.append(_descend_through_projection(comp, projs[t]))
            else:
                comp = projs[t].compose(self.target.transitions[t])
                trans.append(_descend_through_projection(comp, projs[t + 1]))
        cls = IndSystem if self.target.direction == "ind" else ProSystem
        return cls(coks, trans, check=False)


def _lift_into_submodule(ambient_map: ModuleMorphism,
                         incl: ModuleMorphism) -> ModuleMorphism:
    """Factor ``ambient_map`` through the submodule inclusion ``incl``."""
    ring = ambient_map.source.ring
    parent = incl.target
    oracle = ring.span_oracle(
        [list(incl.matrix.col(j)) for j in range(incl.matrix.ncols)] +
        [list(parent.relations.col(j)) for j in range(parent.relations.ncols)],
        parent.ngens)
    cols = []
    for j in range(ambient_map.matrix.ncols):
        sol = oracle.solve(list(ambient_map.matrix.col(j)))
        if sol is None:
            raise TowerError("map does not factor through the submodule")
        cols.append(sol[: incl.source.ngens])
    return ModuleMorphism(ambient_map.source, incl.source,
                          mat_from_cols([tuple(c) for c in cols], incl.source.ngens),
                          check=False)


def _descend_through_projection(comp: ModuleMorphism,
                                proj: ModuleMorphism) -> ModuleMorphism:
    """Factor ``comp : X -> C2`` through the surjection ``proj : X -> C1``.

    The projections produced by ``cokernel`` carry generator sections, so a
    matrix on generators is obtained by evaluating on any preimages.
    """
    ring = comp.source.ring
    c1 = proj.target
    oracle = ring.span_oracle(
        [list(proj.matrix.col(j)) for j in range(proj.matrix.ncols)] +
        [list(c1.relations.col(j)) for j in range(c1.relations.ncols)], c1.ngens)
    cols = []
    one, zero = ring.one(), ring.zero()
    for k in range(c1.ngens):
        e = [one if t == k else zero for t in range(c1.ngens)]
        sol = oracle.solve(e)
        if sol is None:
            raise TowerError("projection is not surjective on generators")
        # image under comp of the chosen preimage
        pre = sol[: proj.matrix.ncols]
        col = [zero] * comp.target.ngens
        for j, coeff in enumerate(pre):
            if ring.is_zero(coeff):
                continue
            for r in range(comp.target.ngens):
                col[r] = ring.add(col[r], ring.mul(coeff, comp.matrix.entry(r, j)))
        cols.append(col)
    return ModuleMorphism(c1, comp.target,
                          mat_from_cols([tuple(c) for c in cols], comp.target.ngens),
                          check=False)


@dataclass
class TowerEquivalenceVerdict:
    status: str  # "pass" | "undetermined"
    kernel_verdict: VanishingVerdict
    cokernel_verdict: VanishingVerdict

    @property
    def passed(self):
        return self.status == "pass"


def tower_equivalence(f: SystemMap, window: int = 1) -> TowerEquivalenceVerdict:
    """Finite-depth proxy for "isomorphism of (pro/ind) systems".

    Passes when the kernel and cokernel systems of ``f`` both vanish within
    the window in the sense of ``vanishing_check``.
    """
    kv = vanishing_check(f.kernel_system(), window)
    cv = vanishing_check(f.cokernel_system(), window)
    status = "pass" if (kv.passed and cv.passed) else "undetermined"
    return TowerEquivalenceVerdict(status=status, kernel_verdict=kv,
                                   cokernel_verdict=cv)
