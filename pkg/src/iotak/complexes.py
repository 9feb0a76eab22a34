"""Free bigraded chain complexes over F2[U,V,U^-1,V^-1] and their morphisms.

A complex is a finite ordered basis with two integer gradings plus a
sparse differential matrix of Laurent polynomials. Morphisms carry a
variance flag: equivariant maps commute with U and V, skew maps exchange
them (F(U.x) = V.F(x)). Skew maps are stored as plain matrices; the U/V
swap is applied to scalars during composition and grading checks.

Everything here is exact. Homogeneity forces each matrix entry of a
graded map to a single monomial, which is what makes chain-homotopy
existence a finite F2 linear problem (see homotopy_solve).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import gf2
from .ring import ZERO, LaurentPoly, Monomial, monomial

EQUIVARIANT = "equivariant"
SKEW = "skew"

# sparse matrix layout: {source index: {target index: entry}}
Entries = Dict[int, Dict[int, LaurentPoly]]


@dataclass(frozen=True)
class BasisElement:
    name: str
    gr_u: int
    gr_v: int

    @property
    def alexander(self) -> int:
        return (self.gr_u - self.gr_v) // 2


def _normalize(entries: Entries) -> Entries:
    out: Entries = {}
    for i, row in entries.items():
        kept = {j: p for j, p in row.items() if p}
        if kept:
            out[i] = kept
    return out


class FreeComplex:
    """A free chain complex over the Laurent ring, with chosen basis.

    The filtered flag records whether the differential is required to
    stay in F2[U, V] (nonnegative exponents). Instances are treated as
    immutable after construction.
    """

    def __init__(self, basis, diff: Entries, filtered: bool = True):
        self.basis: Tuple[BasisElement, ...] = tuple(basis)
        self.diff: Entries = _normalize(diff)
        self.filtered = filtered
        names = [b.name for b in self.basis]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        n = len(names)
        if any(not (0 <= i < n and 0 <= j < n) for i, row in self.diff.items() for j in row):
            raise ValueError("differential entry index out of range")
        self.index: Dict[str, int] = {n: k for k, n in enumerate(names)}

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.diff.get(i, {}).get(j, ZERO)

    def __len__(self) -> int:
        return len(self.basis)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FreeComplex)
            and self.basis == other.basis
            and self.diff == other.diff
            and self.filtered == other.filtered
        )

    def __repr__(self) -> str:
        return f"FreeComplex({len(self.basis)} generators, filtered={self.filtered})"


class Morphism:
    """A matrix of Laurent polynomials with variance and bidegree.

    bidegree (a, b) means gr_u(F x) = gr_u(x) + a for equivariant maps
    and gr_u(F x) = gr_v(x) + a for skew maps (and symmetrically for
    gr_v). The matrix is stored {source: {target: entry}}.
    """

    def __init__(self, source: FreeComplex, target: FreeComplex, entries: Entries,
                 variance: str, bidegree: Tuple[int, int]):
        if variance not in (EQUIVARIANT, SKEW):
            raise ValueError(f"bad variance {variance!r}")
        self.source = source
        self.target = target
        self.entries = _normalize(entries)
        self.variance = variance
        self.bidegree = (int(bidegree[0]), int(bidegree[1]))

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.entries.get(i, {}).get(j, ZERO)

    def is_zero(self) -> bool:
        return not self.entries

    def is_filtered(self) -> bool:
        return all(p.is_filtered() for row in self.entries.values() for p in row.values())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Morphism)
            and self.entries == other.entries
            and self.variance == other.variance
            and self.bidegree == other.bidegree
            and self.source == other.source
            and self.target == other.target
        )

    def __add__(self, other: "Morphism") -> "Morphism":
        if self.variance != other.variance or self.bidegree != other.bidegree:
            raise ValueError("cannot add morphisms of different variance or bidegree")
        if self.source != other.source or self.target != other.target:
            raise ValueError("cannot add morphisms with different endpoints")
        out: Entries = {i: dict(row) for i, row in self.entries.items()}
        for i, row in other.entries.items():
            dst = out.setdefault(i, {})
            for j, p in row.items():
                dst[j] = dst.get(j, ZERO) + p
        return Morphism(self.source, self.target, out, self.variance, self.bidegree)

    def __repr__(self) -> str:
        nnz = sum(len(r) for r in self.entries.values())
        return f"Morphism({self.variance}, bidegree={self.bidegree}, {nnz} entries)"


def zero_morphism(source, target, variance, bidegree) -> Morphism:
    return Morphism(source, target, {}, variance, bidegree)


def identity_morphism(c: FreeComplex) -> Morphism:
    from .ring import ONE

    return Morphism(c, c, {i: {i: ONE} for i in range(len(c))}, EQUIVARIANT, (0, 0))


def compose(f: Morphism, g: Morphism) -> Morphism:
    """The composite f o g (g applied first).

    When f is skew, scalars crossing it get the U/V swap, so the matrix
    of the composite is f applied to the swapped matrix of g.
    """
    if g.target != f.source:
        raise ValueError("composition endpoint mismatch")
    skew_f = f.variance == SKEW
    variance = SKEW if (f.variance == SKEW) != (g.variance == SKEW) else EQUIVARIANT
    ga, gb = g.bidegree
    if skew_f:
        ga, gb = gb, ga
    bidegree = (f.bidegree[0] + ga, f.bidegree[1] + gb)
    out: Entries = {}
    for i, row_g in g.entries.items():
        acc: Dict[int, LaurentPoly] = {}
        for j, p in row_g.items():
            fr = f.entries.get(j)
            if not fr:
                continue
            scalar = p.swap_uv() if skew_f else p
            for k, q in fr.items():
                prod = scalar * q
                if prod:
                    acc[k] = acc.get(k, ZERO) + prod
        if acc:
            out[i] = acc
    return Morphism(g.source, f.target, out, variance, bidegree)


def forced_monomial(x: BasisElement, y: BasisElement, variance: str,
                    bidegree: Tuple[int, int]) -> Optional[Monomial]:
    """The unique exponent pair a homogeneous entry from x to y may carry.

    Returns None when the grading equations have no integer solution,
    in which case the entry is forced to vanish.
    """
    a, b = bidegree
    if variance == EQUIVARIANT:
        du = y.gr_u - x.gr_u - a
        dv = y.gr_v - x.gr_v - b
    else:
        du = y.gr_u - x.gr_v - a
        dv = y.gr_v - x.gr_u - b
    if du % 2 or dv % 2:
        return None
    return (du // 2, dv // 2)


def morphism_is_homogeneous(f: Morphism) -> bool:
    for i, row in f.entries.items():
        x = f.source.basis[i]
        for j, p in row.items():
            m = forced_monomial(x, f.target.basis[j], f.variance, f.bidegree)
            if m is None or p.terms != (m,):
                return False
    return True


def is_chain_map(f: Morphism) -> bool:
    """Exact check of d_target o f = f o d_source."""
    d_src = Morphism(f.source, f.source, f.source.diff, EQUIVARIANT, (-1, -1))
    d_tgt = Morphism(f.target, f.target, f.target.diff, EQUIVARIANT, (-1, -1))
    return compose(d_tgt, f).entries == compose(f, d_src).entries


def differential_morphism(c: FreeComplex) -> Morphism:
    return Morphism(c, c, c.diff, EQUIVARIANT, (-1, -1))


@dataclass
class ComplexReport:
    homogeneous: bool
    d_squared_zero: bool
    filtered_ok: bool
    offenders: Tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.homogeneous and self.d_squared_zero and self.filtered_ok


def verify_complex(c: FreeComplex) -> ComplexReport:
    """Check gradings, homogeneity of the differential, d^2 = 0, filtration.

    Failures are reported, not raised; offending entries are listed by
    generator name.
    """
    offenders: List[str] = []
    homogeneous = True
    for x in c.basis:
        if (x.gr_u - x.gr_v) % 2:
            homogeneous = False
            offenders.append(f"generator {x.name}: gr_u and gr_v have different parity")
    for i, row in c.diff.items():
        x = c.basis[i]
        for j, p in row.items():
            y = c.basis[j]
            m = forced_monomial(x, y, EQUIVARIANT, (-1, -1))
            if m is None or p.terms != (m,):
                homogeneous = False
                offenders.append(f"entry {x.name} -> {y.name}: {p!r} is not homogeneous of bidegree (-1,-1)")

    d = differential_morphism(c)
    d2 = compose(d, d)
    d_squared_zero = d2.is_zero()
    if not d_squared_zero:
        for i, row in d2.entries.items():
            for j in row:
                offenders.append(f"d^2 nonzero: {c.basis[i].name} -> {c.basis[j].name}")

    filtered_ok = True
    if c.filtered:
        for i, row in c.diff.items():
            for j, p in row.items():
                if not p.is_filtered():
                    filtered_ok = False
                    offenders.append(
                        f"entry {c.basis[i].name} -> {c.basis[j].name}: negative exponent in filtered complex")
    return ComplexReport(homogeneous, d_squared_zero, filtered_ok, tuple(offenders))


# ---------------------------------------------------------------------------
# constructions


def tensor(c1: FreeComplex, c2: FreeComplex) -> FreeComplex:
    """Tensor product over the Laurent ring, Leibniz differential."""
    n2 = len(c2)
    basis = [
        BasisElement(f"{x.name}|{y.name}", x.gr_u + y.gr_u, x.gr_v + y.gr_v)
        for x in c1.basis
        for y in c2.basis
    ]
    diff: Entries = {}
    for i1 in range(len(c1)):
        row1 = c1.diff.get(i1, {})
        for i2 in range(len(c2)):
            src = i1 * n2 + i2
            acc: Dict[int, LaurentPoly] = {}
            for j1, p in row1.items():
                tgt = j1 * n2 + i2
                acc[tgt] = acc.get(tgt, ZERO) + p
            for j2, q in c2.diff.get(i2, {}).items():
                tgt = i1 * n2 + j2
                acc[tgt] = acc.get(tgt, ZERO) + q
            if acc:
                diff[src] = acc
    return FreeComplex(basis, diff, filtered=c1.filtered and c2.filtered)


def tensor_morphism(f: Morphism, g: Morphism, source: FreeComplex, target: FreeComplex) -> Morphism:
    """(f|g)(x tensor y) = f(x) tensor g(y), for maps of equal variance.

    Mixed variances are rejected: the tensor of an equivariant map with
    a skew map is not well defined over the ring.
    """
    if f.variance != g.variance:
        raise ValueError("tensor of morphisms needs equal variances")
    n2s = len(g.source)
    n2t = len(g.target)
    out: Entries = {}
    for i1, row_f in f.entries.items():
        for i2, row_g in g.entries.items():
            src = i1 * n2s + i2
            acc: Dict[int, LaurentPoly] = {}
            for j1, p in row_f.items():
                for j2, q in row_g.items():
                    prod = p * q
                    if prod:
                        tgt = j1 * n2t + j2
                        acc[tgt] = acc.get(tgt, ZERO) + prod
            if acc:
                out[src] = acc
    bidegree = (f.bidegree[0] + g.bidegree[0], f.bidegree[1] + g.bidegree[1])
    return Morphism(source, target, out, f.variance, bidegree)


def dual(c: FreeComplex) -> FreeComplex:
    """Dual complex: negated gradings, transposed differential."""
    basis = [BasisElement(f"{x.name}^", -x.gr_u, -x.gr_v) for x in c.basis]
    diff: Entries = {}
    for i, row in c.diff.items():
        for j, p in row.items():
            diff.setdefault(j, {})[i] = p
    return FreeComplex(basis, diff, filtered=c.filtered)


def dual_morphism(f: Morphism, dual_target_of_f_source: FreeComplex,
                  dual_source_of_f_target: FreeComplex) -> Morphism:
    """Dual of an endpoint map: transpose, with entries swapped for skew f.

    For skew f the functional phi maps to swap o phi o f, which is what
    keeps the dual skew-graded for the negated gradings.
    """
    out: Entries = {}
    for i, row in f.entries.items():
        for j, p in row.items():
            out.setdefault(j, {})[i] = p.swap_uv() if f.variance == SKEW else p
    return Morphism(dual_source_of_f_target, dual_target_of_f_source, out, f.variance, f.bidegree)


def skew(c: FreeComplex) -> FreeComplex:
    """Same underlying complex with the roles of U and V exchanged."""
    basis = [BasisElement(x.name, x.gr_v, x.gr_u) for x in c.basis]
    diff: Entries = {
        i: {j: p.swap_uv() for j, p in row.items()} for i, row in c.diff.items()
    }
    return FreeComplex(basis, diff, filtered=c.filtered)


# ---------------------------------------------------------------------------
# finite slices and homology

def slice_members(c: FreeComplex, alex: int, gr: int) -> List[Tuple[int, Monomial]]:
    """Basis of the finite F2 slice at Alexander grading alex, gr_u = gr.

    Each complex generator x contributes the unique monomial U^i V^j x
    in the slice, when the parity of gr_u(x) - gr allows one.
    """
    out = []
    for idx, x in enumerate(c.basis):
        if (x.gr_u - gr) % 2:
            continue
        i = (x.gr_u - gr) // 2
        j = i - (x.alexander - alex)
        out.append((idx, (i, j)))
    return out


def _slice_lookup(members: List[Tuple[int, Monomial]]) -> Dict[Tuple[int, Monomial], int]:
    return {key: pos for pos, key in enumerate(members)}


def slice_map_rows(entries: Entries, src_members, tgt_members) -> List[int]:
    """F2 rows of a graded map between two slices, from the actual monomials.

    Row k is the image of the k-th source slice generator, as a bitmask
    over target slice generators. Raises if a term lands outside the
    target slice, which cannot happen for a homogeneous map of matching
    bidegree.
    """
    lookup = _slice_lookup(tgt_members)
    rows = []
    for idx, (i, j) in src_members:
        row = 0
        for tgt, p in entries.get(idx, {}).items():
            for (a, b) in p.terms:
                pos = lookup.get((tgt, (i + a, j + b)))
                if pos is None:
                    raise ValueError("slice map image left the target slice; map is not homogeneous")
                row ^= 1 << pos
        rows.append(row)
    return rows


def _diff_slice_rows(c: FreeComplex, alex: int, gr: int) -> List[int]:
    src = slice_members(c, alex, gr)
    tgt = slice_members(c, alex, gr - 1)
    return slice_map_rows(c.diff, src, tgt)


def slice_homology_dim(c: FreeComplex, alex: int, gr: int) -> int:
    n = len(slice_members(c, alex, gr))
    rank_out = gf2.rank(_diff_slice_rows(c, alex, gr))
    rank_in = gf2.rank(_diff_slice_rows(c, alex, gr + 1))
    return n - rank_out - rank_in


@dataclass
class SliceHomologyReport:
    holds: bool
    dims: Tuple[int, int]


def homology_is_r(c: FreeComplex) -> SliceHomologyReport:
    """Decide H_*(C) = R by the two finite slices (A=0, gr_u in {0, 1}).

    U and V are invertible, so translation by V and by UV identifies all
    slices with these two; homology R with generator in even bigrading
    is exactly slice dimensions (1, 0).
    """
    dims = (slice_homology_dim(c, 0, 0), slice_homology_dim(c, 0, 1))
    return SliceHomologyReport(dims == (1, 0), dims)


def homology_class_map(f: Morphism) -> bool:
    """Whether a degree-(0,0) equivariant chain map is nonzero on the
    rank-one slice homology, i.e. an isomorphism on homology for this class."""
    if f.variance != EQUIVARIANT or f.bidegree != (0, 0):
        raise ValueError("homology_class_map needs an equivariant bidegree-(0,0) map")
    if not is_chain_map(f):
        raise ValueError("homology_class_map rejects non-chain-maps")
    src, tgt = f.source, f.target
    members1 = slice_members(src, 0, 0)
    out_rows = slice_map_rows(src.diff, members1, slice_members(src, 0, -1))
    cycle_eqs = gf2.transpose(out_rows, len(slice_members(src, 0, -1)))
    cycles = gf2.nullspace(cycle_eqs, len(members1))
    boundaries = gf2.RowBasis(slice_map_rows(src.diff, slice_members(src, 0, 1), members1))
    gen = next((z for z in cycles if not boundaries.contains(z)), None)
    if gen is None:
        raise ValueError("source slice homology has no generator class")
    members2 = slice_members(tgt, 0, 0)
    f_rows = slice_map_rows(f.entries, members1, members2)
    image = gf2.apply_rows(f_rows, gen)
    boundaries2 = gf2.RowBasis(slice_map_rows(tgt.diff, slice_members(tgt, 0, 1), members2))
    return not boundaries2.contains(image)


# ---------------------------------------------------------------------------
# the chain-homotopy solver

def homotopy_solve(f: Morphism, g: Morphism, variance: str, filtered: bool) -> Optional[Morphism]:
    """Find H with dH + Hd = f + g, or report infeasibility.

    Candidate entries of H are grading-forced single monomials, so the
    unknowns are one F2 bit per admissible basis pair; when filtered is
    requested, pairs whose forced monomial has a negative exponent are
    dropped. Returns None exactly when the F2 system is infeasible.
    """
    if f.source != g.source or f.target != g.target:
        raise ValueError("homotopy_solve needs maps with equal endpoints")
    if f.bidegree != g.bidegree or f.variance != g.variance:
        raise ValueError("homotopy_solve needs maps of equal bidegree and variance")
    if f.variance != variance:
        raise ValueError("requested homotopy variance must match the maps")
    if not (is_chain_map(f) and is_chain_map(g)):
        raise ValueError("homotopy_solve requires chain maps")
    src, tgt = f.source, f.target
    a, b = f.bidegree
    hdeg = (a + 1, b + 1)

    target_entries = (f + g).entries
    if not target_entries:
        return zero_morphism(src, tgt, variance, hdeg)

    unknowns: Dict[Tuple[int, int], int] = {}
    monos: List[Monomial] = []
    by_source: Dict[int, List[Tuple[int, int]]] = {}
    for i, x in enumerate(src.basis):
        for j, y in enumerate(tgt.basis):
            m = forced_monomial(x, y, variance, hdeg)
            if m is None:
                continue
            if filtered and (m[0] < 0 or m[1] < 0):
                continue
            var = len(monos)
            unknowns[(i, j)] = var
            monos.append(m)
            by_source.setdefault(i, []).append((j, var))

    equations: Dict[Tuple[int, int], int] = {}
    # d_target o H
    for (i, j), var in unknowns.items():
        for k, p in tgt.diff.get(j, {}).items():
            if not p.is_monomial():
                raise ValueError("target differential is not homogeneous")
            key = (i, k)
            equations[key] = equations.get(key, 0) ^ (1 << var)
    # H o d_source
    for i, row in src.diff.items():
        for j, p in row.items():
            if not p.is_monomial():
                raise ValueError("source differential is not homogeneous")
            for k, var in by_source.get(j, ()):
                key = (i, k)
                equations[key] = equations.get(key, 0) ^ (1 << var)

    rhs_keys = set()
    for i, row in target_entries.items():
        for j, p in row.items():
            if not p.is_monomial():
                raise ValueError("f + g is not homogeneous")
            rhs_keys.add((i, j))

    keys = sorted(set(equations) | rhs_keys)
    rows = [equations.get(k, 0) for k in keys]
    rhs = [1 if k in rhs_keys else 0 for k in keys]
    sol = gf2.solve(rows, rhs, len(monos))
    if sol is None:
        return None

    entries: Entries = {}
    for (i, j), var in unknowns.items():
        if (sol >> var) & 1:
            entries.setdefault(i, {})[j] = monomial(*monos[var])
    h = Morphism(src, tgt, entries, variance, hdeg)

    d_src = differential_morphism(src)
    d_tgt = differential_morphism(tgt)
    check = compose(d_tgt, h) + compose(h, d_src)
    if check.entries != target_entries:
        raise AssertionError("homotopy solver produced an invalid solution")
    return h
