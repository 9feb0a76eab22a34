"""Iota-complexes: filtered complexes with a skew homotopy-involution.

The involution iota squares to id + Phi o Psi, where Phi and Psi are the
formal derivatives of the differential with respect to U and V. This
module builds those derivatives, verifies the six axioms, forms the two
connected-sum products, duals, trace/cotrace inverse witnesses, and
decides local equivalence at small scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from . import gf2
from .complexes import (
    EQUIVARIANT,
    SKEW,
    BasisElement,
    Entries,
    FreeComplex,
    Morphism,
    compose,
    dual,
    dual_morphism,
    forced_monomial,
    homology_class_map,
    homology_is_r,
    homotopy_solve,
    identity_morphism,
    is_chain_map,
    morphism_is_homogeneous,
    tensor,
    tensor_morphism,
    verify_complex,
    zero_morphism,
)
from .ring import ONE, LaurentPoly, monomial


@dataclass(frozen=True)
class IotaComplex:
    """A filtered free complex together with its skew involution."""

    complex: FreeComplex
    iota: Morphism

    def __post_init__(self):
        if self.iota.source != self.complex or self.iota.target != self.complex:
            raise ValueError("iota must be an endomorphism of the underlying complex")
        if self.iota.variance != SKEW or self.iota.bidegree != (0, 0):
            raise ValueError("iota must be skew of bidegree (0, 0)")


def _underlying(c: Union[IotaComplex, FreeComplex]) -> FreeComplex:
    return c.complex if isinstance(c, IotaComplex) else c


def identity_complex() -> IotaComplex:
    """The unit: one generator in bigrading (0, 0), zero differential,
    iota fixing the generator."""
    c = FreeComplex([BasisElement("e", 0, 0)], {}, filtered=True)
    return IotaComplex(c, Morphism(c, c, {0: {0: ONE}}, SKEW, (0, 0)))


def build_phi(c: Union[IotaComplex, FreeComplex]) -> Morphism:
    """Entrywise d/dU of the differential matrix; equivariant, bidegree (1, -1)."""
    cx = _underlying(c)
    entries: Entries = {
        i: {j: p.derivative("U") for j, p in row.items()} for i, row in cx.diff.items()
    }
    return Morphism(cx, cx, entries, EQUIVARIANT, (1, -1))


def build_psi(c: Union[IotaComplex, FreeComplex]) -> Morphism:
    """Entrywise d/dV of the differential matrix; equivariant, bidegree (-1, 1)."""
    cx = _underlying(c)
    entries: Entries = {
        i: {j: p.derivative("V") for j, p in row.items()} for i, row in cx.diff.items()
    }
    return Morphism(cx, cx, entries, EQUIVARIANT, (-1, 1))


def phi_squared_homotopy(c: Union[IotaComplex, FreeComplex]) -> Morphism:
    """The explicit homotopy H with Phi^2 = dH + Hd.

    Writing the differential as a sum of matrices P_n U^n, the homotopy
    keeps the terms with n(n-1)/2 odd and lowers the U-exponent by two.
    It is filtered whenever the differential is.
    """
    cx = _underlying(c)
    entries: Entries = {}
    for i, row in cx.diff.items():
        for j, p in row.items():
            h = LaurentPoly((a - 2, b) for (a, b) in p.terms if (a * (a - 1) // 2) % 2)
            if h:
                entries.setdefault(i, {})[j] = h
    return Morphism(cx, cx, entries, EQUIVARIANT, (3, -1))


@dataclass
class IotaReport:
    """Outcome of the six axioms, in the order of the definition.

    (1) d^2 = 0, (2) d filtered, (3) gradings homogeneous, (4) homology
    is the ring, (5) iota skew-graded/skew-filtered chain map, (6)
    iota^2 homotopic to id + Phi Psi through a filtered equivariant
    homotopy. involution_homotopy stores the witness for (6).
    """

    d_squared_zero: bool
    filtered_ok: bool
    homogeneous: bool
    homology_r: bool
    homology_dims: Tuple[int, int]
    iota_ok: bool
    involution_ok: bool
    offenders: Tuple[str, ...]
    involution_homotopy: Optional[Morphism] = None

    @property
    def conditions(self) -> Dict[int, bool]:
        return {
            1: self.d_squared_zero,
            2: self.filtered_ok,
            3: self.homogeneous,
            4: self.homology_r,
            5: self.iota_ok,
            6: self.involution_ok,
        }

    @property
    def passed(self) -> bool:
        return all(self.conditions.values())

    @property
    def first_failure(self) -> Optional[int]:
        for k, ok in sorted(self.conditions.items()):
            if not ok:
                return k
        return None


def verify_iota_complex(ic: IotaComplex, check_involution: bool = True) -> IotaReport:
    """Check all six axioms; failures are reported with witnesses.

    check_involution=False skips the homotopy solve for axiom (6); the
    structural axioms (1)-(5) are always checked.
    """
    cx = ic.complex
    offenders: List[str] = []
    base = verify_complex(cx)
    offenders.extend(base.offenders)

    hom = homology_is_r(cx) if base.passed else None
    homology_r_ok = bool(hom and hom.holds)
    dims = hom.dims if hom else (-1, -1)
    if hom and not hom.holds:
        offenders.append(f"slice homology dims {hom.dims} != (1, 0)")

    iota_ok = True
    if not morphism_is_homogeneous(ic.iota):
        iota_ok = False
        offenders.append("iota is not skew-graded of bidegree (0, 0)")
    if not ic.iota.is_filtered():
        iota_ok = False
        offenders.append("iota is not skew-filtered")
    if iota_ok and base.passed and not is_chain_map(ic.iota):
        iota_ok = False
        offenders.append("iota is not a chain map")

    involution_ok = False
    witness = None
    if check_involution and base.passed and homology_r_ok and iota_ok:
        lhs = compose(ic.iota, ic.iota)
        rhs = identity_morphism(cx) + compose(build_phi(cx), build_psi(cx))
        witness = homotopy_solve(lhs, rhs, EQUIVARIANT, filtered=True)
        involution_ok = witness is not None
        if not involution_ok:
            offenders.append("no filtered equivariant homotopy from iota^2 to id + Phi Psi")
    elif not check_involution:
        involution_ok = True

    return IotaReport(
        d_squared_zero=base.d_squared_zero,
        filtered_ok=base.filtered_ok,
        homogeneous=base.homogeneous,
        homology_r=homology_r_ok,
        homology_dims=dims,
        iota_ok=iota_ok,
        involution_ok=involution_ok,
        offenders=tuple(offenders),
        involution_homotopy=witness,
    )


def _product_iota(c1: FreeComplex, iota1: Morphism, c2: FreeComplex, iota2: Morphism,
                  variant: int, prod: FreeComplex) -> Morphism:
    if variant == 1:
        left, right = compose(build_phi(c1), iota1), compose(build_psi(c2), iota2)
    elif variant == 2:
        left, right = compose(build_psi(c1), iota1), compose(build_phi(c2), iota2)
    else:
        raise ValueError("variant must be 1 or 2")
    plain = tensor_morphism(iota1, iota2, prod, prod)
    correction = tensor_morphism(left, right, prod, prod)
    return plain + correction


def product(ic1: IotaComplex, ic2: IotaComplex, variant: int = 1,
            verify: bool = True) -> IotaComplex:
    """Connected-sum product: tensor complex with the involution
    iota1|iota2 + Phi1 iota1|Psi2 iota2 (variant 1) or the Psi/Phi
    variant 2. Inputs failing verification are rejected."""
    if verify:
        for k, ic in ((1, ic1), (2, ic2)):
            report = verify_iota_complex(ic)
            if not report.passed:
                raise ValueError(
                    f"product input {k} fails axiom ({report.first_failure}): "
                    + "; ".join(report.offenders))
    prod = tensor(ic1.complex, ic2.complex)
    iota = _product_iota(ic1.complex, ic1.iota, ic2.complex, ic2.iota, variant, prod)
    return IotaComplex(prod, iota)


def dual_iota(ic: IotaComplex) -> IotaComplex:
    """The inverse: dual complex with the dualized involution."""
    dc = dual(ic.complex)
    return IotaComplex(dc, dual_morphism(ic.iota, dc, dc))


# ---------------------------------------------------------------------------
# trace / cotrace inverse witnesses

@dataclass
class InverseWitnessReport:
    cotrace: Morphism
    trace: Morphism
    checks: Tuple[Tuple[str, bool], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    @property
    def first_failure(self) -> Optional[str]:
        for name, ok in self.checks:
            if not ok:
                return name
        return None


def inverse_witnesses(ic: IotaComplex) -> InverseWitnessReport:
    """Construct and verify the local equivalence C x C^dual ~ identity.

    The cotrace sends 1 to the sum of x tensor x^dual; the trace sends
    x tensor y^dual to y^dual(x). Their composite is the mod-2 Euler
    characteristic times the identity, which is the identity since the
    homology is the ring.
    """
    ce = identity_complex()
    dic = dual_iota(ic)
    prod = tensor(ic.complex, dic.complex)
    iota_prod = _product_iota(ic.complex, ic.iota, dic.complex, dic.iota, 1, prod)

    n = len(ic.complex)
    cotrace = Morphism(ce.complex, prod, {0: {i * n + i: ONE for i in range(n)}},
                       EQUIVARIANT, (0, 0))
    trace = Morphism(prod, ce.complex, {i * n + i: {0: ONE} for i in range(n)},
                     EQUIVARIANT, (0, 0))

    checks: List[Tuple[str, bool]] = []
    checks.append(("cotrace homogeneous", morphism_is_homogeneous(cotrace)))
    checks.append(("trace homogeneous", morphism_is_homogeneous(trace)))
    checks.append(("cotrace filtered", cotrace.is_filtered()))
    checks.append(("trace filtered", trace.is_filtered()))
    checks.append(("cotrace chain map", is_chain_map(cotrace)))
    checks.append(("trace chain map", is_chain_map(trace)))
    checks.append(("trace o cotrace = id", compose(trace, cotrace) == identity_morphism(ce.complex)))
    checks.append(("cotrace nonzero on homology", homology_class_map(cotrace)))
    checks.append(("trace nonzero on homology", homology_class_map(trace)))
    h_f = homotopy_solve(compose(cotrace, ce.iota), compose(iota_prod, cotrace), SKEW, filtered=True)
    checks.append(("cotrace intertwines involutions", h_f is not None))
    h_g = homotopy_solve(compose(trace, iota_prod), compose(ce.iota, trace), SKEW, filtered=True)
    checks.append(("trace intertwines involutions", h_g is not None))
    return InverseWitnessReport(cotrace, trace, tuple(checks))


# ---------------------------------------------------------------------------
# local equivalence

@dataclass
class LocalEquivReport:
    checks: Tuple[Tuple[str, bool], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    @property
    def first_failure(self) -> Optional[str]:
        for name, ok in self.checks:
            if not ok:
                return name
        return None


def verify_local_equivalence(ic1: IotaComplex, ic2: IotaComplex,
                             f: Morphism, g: Morphism) -> LocalEquivReport:
    """Check that (f, g) witnesses a local equivalence ic1 ~ ic2."""
    if f.source != ic1.complex or f.target != ic2.complex:
        raise ValueError("f must map ic1 to ic2")
    if g.source != ic2.complex or g.target != ic1.complex:
        raise ValueError("g must map ic2 to ic1")
    for name, m in (("f", f), ("g", g)):
        if m.variance != EQUIVARIANT or m.bidegree != (0, 0):
            raise ValueError(f"{name} must be equivariant of bidegree (0, 0)")

    checks: List[Tuple[str, bool]] = []
    for name, m in (("f", f), ("g", g)):
        checks.append((f"{name} homogeneous", morphism_is_homogeneous(m)))
        checks.append((f"{name} filtered", m.is_filtered()))
        checks.append((f"{name} chain map", is_chain_map(m)))
    if not all(ok for _, ok in checks):
        return LocalEquivReport(tuple(checks))

    checks.append(("f isomorphism on homology", homology_class_map(f)))
    checks.append(("g isomorphism on homology", homology_class_map(g)))
    h1 = homotopy_solve(compose(ic2.iota, f), compose(f, ic1.iota), SKEW, filtered=True)
    checks.append(("iota2 f ~ f iota1", h1 is not None))
    h2 = homotopy_solve(compose(ic1.iota, g), compose(g, ic2.iota), SKEW, filtered=True)
    checks.append(("iota1 g ~ g iota2", h2 is not None))
    return LocalEquivReport(tuple(checks))


class CapExceededError(Exception):
    def __init__(self, dimension: int, cap: int):
        super().__init__(f"chain-map solution space has dimension {dimension} > cap {cap}")
        self.dimension = dimension
        self.cap = cap


def _chain_map_space(src: FreeComplex, tgt: FreeComplex):
    """Unknowns and F2 equations for filtered grading-preserving
    equivariant chain maps src -> tgt."""
    unknowns: List[Tuple[int, int]] = []
    monos = []
    by_source: Dict[int, List[Tuple[int, int]]] = {}
    for i, x in enumerate(src.basis):
        for j, y in enumerate(tgt.basis):
            m = forced_monomial(x, y, EQUIVARIANT, (0, 0))
            if m is None or m[0] < 0 or m[1] < 0:
                continue
            var = len(unknowns)
            unknowns.append((i, j))
            monos.append(m)
            by_source.setdefault(i, []).append((j, var))
    equations: Dict[Tuple[int, int], int] = {}
    for var, (i, j) in enumerate(unknowns):
        for k in tgt.diff.get(j, {}):
            key = (i, k)
            equations[key] = equations.get(key, 0) ^ (1 << var)
    for i, row in src.diff.items():
        for j in row:
            for k, var in by_source.get(j, ()):
                key = (i, k)
                equations[key] = equations.get(key, 0) ^ (1 << var)
    return unknowns, monos, [equations[k] for k in sorted(equations)]


def _search_direction(src_ic: IotaComplex, tgt_ic: IotaComplex, cap: int) -> Optional[Morphism]:
    src, tgt = src_ic.complex, tgt_ic.complex
    unknowns, monos, rows = _chain_map_space(src, tgt)
    basis = gf2.nullspace(rows, len(unknowns))
    if len(basis) > cap:
        raise CapExceededError(len(basis), cap)
    for combo in range(1, 1 << len(basis)):
        vec = 0
        k = combo
        idx = 0
        while k:
            if k & 1:
                vec ^= basis[idx]
            k >>= 1
            idx += 1
        entries: Entries = {}
        for var, (i, j) in enumerate(unknowns):
            if (vec >> var) & 1:
                entries.setdefault(i, {})[j] = monomial(*monos[var])
        cand = Morphism(src, tgt, entries, EQUIVARIANT, (0, 0))
        if not homology_class_map(cand):
            continue
        if homotopy_solve(compose(tgt_ic.iota, cand), compose(cand, src_ic.iota),
                          SKEW, filtered=True) is not None:
            return cand
    return None


def search_local_equivalence(ic1: IotaComplex, ic2: IotaComplex,
                             cap: int = 24) -> Optional[Tuple[Morphism, Morphism]]:
    """Exhaustive search for a local equivalence witness pair.

    The candidates in each direction form the affine F2 solution space
    of grading-forced filtered chain maps; intertwining with the
    involutions is checked per candidate. A completed search without a
    witness is a proof of non-equivalence. Raises CapExceededError when
    a solution space is larger than 2^cap.
    """
    f = _search_direction(ic1, ic2, cap)
    if f is None:
        return None
    g = _search_direction(ic2, ic1, cap)
    if g is None:
        return None
    return (f, g)
