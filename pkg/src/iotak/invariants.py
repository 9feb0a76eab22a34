"""Large-surgery correction terms from the Alexander-grading-zero tower.

The subcomplex of monomials U^i V^j x with i, j >= 0 sitting in Alexander
grading zero is free over F2[W] for W = UV, with the involution restricting
to a grading-preserving endomorphism. Its homology (graded Smith normal
form), the involutive mapping cone, and an independent max-grading
oracle yield
d, d-bar, d-under and the V-invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import gf2
from .iota import IotaComplex, verify_iota_complex

# sparse F2[W] matrix: {source index: {target index: exponent of W}}
TowerEntries = Dict[int, Dict[int, int]]


class InvariantError(ValueError):
    """Structural assumption violated (odd d, missing free summand, ...)."""


class UTowerComplex:
    """A graded free F2[W]-complex, optionally with an endomorphism.

    Entries are single powers W^k, k >= 0; an entry from x to y forces
    gr(y) - 2k = gr(x) - 1 (and gr(y) - 2k = gr(x) for the endomorphism).
    """

    def __init__(self, basis: List[Tuple[str, int]], diff: TowerEntries,
                 endo: Optional[TowerEntries] = None):
        self.basis: Tuple[Tuple[str, int], ...] = tuple((str(n), int(g)) for n, g in basis)
        self.diff = {i: dict(row) for i, row in diff.items() if row}
        self.endo = None if endo is None else {i: dict(row) for i, row in endo.items() if row}
        self._validate()

    def grading(self, i: int) -> int:
        return self.basis[i][1]

    def __len__(self) -> int:
        return len(self.basis)

    def _validate(self) -> None:
        for mats, shift in ((self.diff, 1), (self.endo or {}, 0)):
            for i, row in mats.items():
                for j, k in row.items():
                    if k < 0:
                        raise InvariantError("negative exponent in tower matrix")
                    if self.grading(j) - 2 * k != self.grading(i) - shift:
                        raise InvariantError(
                            f"inhomogeneous tower entry {self.basis[i][0]} -> {self.basis[j][0]}")
        # d^2 = 0: homogeneity pins every path's exponent, so only parity matters
        for i, row in self.diff.items():
            acc: Dict[int, int] = {}
            for j in row:
                for k in self.diff.get(j, {}):
                    acc[k] = acc.get(k, 0) ^ 1
            if any(acc.values()):
                raise InvariantError(f"d^2 != 0 at generator {self.basis[i][0]}")


def a_zero_minus(ic: IotaComplex, verify: bool = True) -> UTowerComplex:
    """Extract the tower subcomplex and the restricted involution.

    The generator over F2[W] for a basis element x of Alexander grading
    A is U^max(A,0) V^max(-A,0) x, at grading gr_u(x) - 2 max(A, 0).
    verify=True checks the structural axioms (1)-(5) of the input first;
    the homotopy axiom (6) is the caller's responsibility (see the check
    subcommand).
    """
    if verify:
        report = verify_iota_complex(ic, check_involution=False)
        if not report.passed:
            raise ValueError(
                f"a_zero_minus input fails axiom ({report.first_failure}): "
                + "; ".join(report.offenders))
    cx = ic.complex
    shifts = []
    basis = []
    for x in cx.basis:
        a = x.alexander
        i0, j0 = max(a, 0), max(-a, 0)
        shifts.append((i0, j0))
        basis.append((x.name, x.gr_u - 2 * i0))

    def restrict(entries, skew: bool) -> TowerEntries:
        out: TowerEntries = {}
        for i, row in entries.items():
            i0, j0 = shifts[i]
            if skew:
                i0, j0 = j0, i0
            acc: Dict[int, int] = {}
            for j, poly in row.items():
                ti, tj = shifts[j]
                for (p, q) in poly.terms:
                    k = i0 + p - ti
                    if k != j0 + q - tj or k < 0:
                        raise InvariantError("entry does not restrict to the tower subcomplex")
                    if j in acc:
                        if acc[j] != k:
                            raise InvariantError("inhomogeneous entry in tower restriction")
                        del acc[j]
                    else:
                        acc[j] = k
            if acc:
                out[i] = acc
        return out

    diff = restrict(cx.diff, skew=False)
    endo = restrict(ic.iota.entries, skew=True)
    return UTowerComplex(basis, diff, endo)


@dataclass(frozen=True)
class HomologyDecomp:
    """Free summand gradings and torsion towers (grading, order)."""

    free: Tuple[int, ...]
    torsion: Tuple[Tuple[int, int], ...]

    def slice_dim(self, r: int) -> int:
        """F2 dimension of the homology in grading r, from the decomposition."""
        n = sum(1 for g in self.free if g >= r and (g - r) % 2 == 0)
        n += sum(1 for (g, k) in self.torsion if g >= r > g - 2 * k and (g - r) % 2 == 0)
        return n


def homology_snf(t: UTowerComplex) -> HomologyDecomp:
    """Graded Smith normal form by cancellation on minimal-exponent pivots.

    W^0 pivots are plain F2 cancellations; a W^k pivot with k > 0 splits
    off a torsion tower F2[W]/W^k at the target's grading. Survivors are
    free summands. Minimality of the pivot keeps all quotients in the
    ring, and ties break by basis order for determinism.
    """
    cols: TowerEntries = {i: dict(row) for i, row in t.diff.items()}
    rows: TowerEntries = {}
    for i, row in cols.items():
        for j, k in row.items():
            rows.setdefault(j, {})[i] = k
    alive = set(range(len(t)))
    torsion: List[Tuple[int, int]] = []

    def drop(i: int, j: int) -> None:
        del cols[i][j]
        if not cols[i]:
            del cols[i]
        del rows[j][i]
        if not rows[j]:
            del rows[j]

    def put(i: int, j: int, k: int) -> None:
        cols.setdefault(i, {})[j] = k
        rows.setdefault(j, {})[i] = k

    while cols:
        k, x, y = min((k, i, j) for i, row in cols.items() for j, k in row.items())
        if k > 0:
            torsion.append((t.grading(y), k))
        sources = [(w, kw) for w, kw in rows[y].items() if w != x]
        targets = [(z, kz) for z, kz in cols[x].items() if z != y]
        for w, kw in sources:
            for z, kz in targets:
                new = (kw - k) + kz
                if z in cols.get(w, {}):
                    if cols[w][z] != new:
                        raise InvariantError("inhomogeneous collision during reduction")
                    drop(w, z)
                else:
                    put(w, z, new)
        for w, kw in list(rows.get(y, {}).items()):
            drop(w, y)
        for z, kz in list(cols.get(x, {}).items()):
            drop(x, z)
        for z, kz in list(cols.get(y, {}).items()):
            drop(y, z)
        for w, kw in list(rows.get(x, {}).items()):
            drop(w, x)
        alive.discard(x)
        alive.discard(y)

    free = tuple(sorted(t.grading(i) for i in alive))
    return HomologyDecomp(free, tuple(sorted(torsion)))


def involutive_cone(t: UTowerComplex) -> UTowerComplex:
    """Mapping cone of (1 + iota) into a fresh copy, domain grading
    shifted up by one."""
    if t.endo is None:
        raise InvariantError("involutive cone needs the endomorphism")
    n = len(t)
    basis = [(f"{name}.dom", g + 1) for name, g in t.basis]
    basis += [(f"{name}.q", g) for name, g in t.basis]
    diff: TowerEntries = {}
    for i in range(n):
        acc: Dict[int, int] = {}
        for j, k in t.diff.get(i, {}).items():
            acc[j] = k
        one_plus_iota: Dict[int, int] = {i + n: 0}
        for j, k in t.endo.get(i, {}).items():
            key = j + n
            if key in one_plus_iota and one_plus_iota[key] == k:
                del one_plus_iota[key]
            elif key in one_plus_iota:
                raise InvariantError("endomorphism entry collides inhomogeneously")
            else:
                one_plus_iota[key] = k
        acc.update(one_plus_iota)
        if acc:
            diff[i] = acc
        q_row = {j + n: k for j, k in t.diff.get(i, {}).items()}
        if q_row:
            diff[i + n] = q_row
    return UTowerComplex(basis, diff, endo=None)


@dataclass(frozen=True)
class InvariantReport:
    d: int
    d_bar: int
    d_under: int
    V0: int
    V0_bar: int
    V0_under: int

    def __post_init__(self):
        for name, val in (("d", self.d), ("d_bar", self.d_bar), ("d_under", self.d_under)):
            if val % 2:
                raise InvariantError(f"{name} = {val} is odd; V-invariants would not be integers")
        if (self.d_bar - self.d) % 2 or (self.d_under - self.d) % 2:
            raise InvariantError("parity mismatch between d, d_bar, d_under")
        if (self.V0, self.V0_bar, self.V0_under) != (-self.d // 2, -self.d_bar // 2, -self.d_under // 2):
            raise InvariantError("V-values do not halve the d-values")

    @classmethod
    def from_d(cls, d: int, d_bar: int, d_under: int) -> "InvariantReport":
        return cls(d, d_bar, d_under, -d // 2, -d_bar // 2, -d_under // 2)

    def triple(self) -> Tuple[int, int, int]:
        """(V0_bar, V0, V0_under), the table's column order."""
        return (self.V0_bar, self.V0, self.V0_under)

    def to_dict(self) -> Dict[str, int]:
        return {
            "d": self.d,
            "d_bar": self.d_bar,
            "d_under": self.d_under,
            "V0": self.V0,
            "V0_bar": self.V0_bar,
            "V0_under": self.V0_under,
        }


def involutive_invariants(t: UTowerComplex) -> InvariantReport:
    """d from the tower homology, d-bar/d-under from the cone.

    A class survives localization at W exactly when it generates a free
    summand, so the maximal gradings are read off the decomposition: the
    cone's free gradings in d's parity give d-bar, those in the opposite
    parity give d-under + 1.
    """
    decomp = homology_snf(t)
    if not decomp.free:
        raise InvariantError("tower homology has no free summand")
    d = max(decomp.free)
    cone = homology_snf(involutive_cone(t))
    same = [g for g in cone.free if (g - d) % 2 == 0]
    opp = [g for g in cone.free if (g - d) % 2 == 1]
    if not same or not opp:
        raise InvariantError("cone homology is missing a free summand in one parity class")
    return InvariantReport.from_d(d, max(same), max(opp) - 1)


# ---------------------------------------------------------------------------
# independent oracle via maximum-grading criteria

def _tower_slice(t: UTowerComplex, r: int) -> List[Tuple[int, int]]:
    out = []
    for idx in range(len(t)):
        g = t.grading(idx)
        if g >= r and (g - r) % 2 == 0:
            out.append((idx, (g - r) // 2))
    return out


def _tower_map_rows(mat: TowerEntries, src_slice, tgt_lookup) -> List[int]:
    rows = []
    for idx, k0 in src_slice:
        row = 0
        for j, k in mat.get(idx, {}).items():
            pos = tgt_lookup.get((j, k0 + k))
            if pos is None:
                raise InvariantError("tower slice image out of range")
            row ^= 1 << pos
        rows.append(row)
    return rows


class _TowerSlices:
    """Cached slice data for one tower complex."""

    def __init__(self, t: UTowerComplex):
        self.t = t
        self._members: Dict[int, List[Tuple[int, int]]] = {}
        self._lookup: Dict[int, Dict[Tuple[int, int], int]] = {}

    def members(self, r: int) -> List[Tuple[int, int]]:
        if r not in self._members:
            mem = _tower_slice(self.t, r)
            self._members[r] = mem
            self._lookup[r] = {key: pos for pos, key in enumerate(mem)}
        return self._members[r]

    def lookup(self, r: int) -> Dict[Tuple[int, int], int]:
        self.members(r)
        return self._lookup[r]

    def diff_rows(self, r: int) -> List[int]:
        return _tower_map_rows(self.t.diff, self.members(r), self.lookup(r - 1))

    def one_plus_iota_rows(self, r: int) -> List[int]:
        assert self.t.endo is not None
        rows = _tower_map_rows(self.t.endo, self.members(r), self.lookup(r))
        for pos in range(len(rows)):
            rows[pos] ^= 1 << pos
        return rows

    def power_rows(self, r: int, m: int) -> List[int]:
        """Multiplication by W^m from slice r to slice r - 2m."""
        look = self.lookup(r - 2 * m)
        return [1 << look[(idx, k0 + m)] for idx, k0 in self.members(r)]

    def cycle_basis(self, r: int) -> List[int]:
        rows = self.diff_rows(r)
        eqs = gf2.transpose(rows, len(self.members(r - 1)))
        return gf2.nullspace(eqs, len(self.members(r)))

    def boundary_basis(self, r: int) -> gf2.RowBasis:
        return gf2.RowBasis(self.diff_rows(r + 1))


def _spans_nontorsion(slices: _TowerSlices, r: int, vectors: List[int], n_power: int) -> bool:
    """Whether some F2 combination of the given grading-r cycles has
    W^n_power times it outside the boundaries, i.e. a nontorsion class."""
    if not vectors:
        return False
    power = slices.power_rows(r, n_power)
    low = slices.boundary_basis(r - 2 * n_power)
    return any(low.add(gf2.apply_rows(power, v)) for v in vectors)


def lemma_criteria_oracle(t: UTowerComplex, m_cap: Optional[int] = None) -> Tuple[int, int]:
    """(d_bar, d_under) by the maximum-grading criteria, independently of
    the cone construction.

    d_under: the top grading of a cycle v with nontorsion class such that
    (1 + iota)v is a boundary. d_bar: the top value over (a) gr(x) + 1
    for solutions of dy = (1+iota)x, dz = W^m x with x != 0 and
    W^m y + (1+iota)z nontorsion, and (b) gr(y) for cycle pairs y != 0, z
    with W^m y + (1+iota)z nontorsion. Raises when raising m_cap by one
    changes the answer.
    """
    if t.endo is None:
        raise InvariantError("oracle needs the endomorphism")
    if not len(t):
        raise InvariantError("oracle needs a nonempty complex")
    gradings = [g for _, g in t.basis]
    max_gr, min_gr = max(gradings), min(gradings)
    n_power = (max_gr - min_gr) // 2 + 1
    if m_cap is None:
        m_cap = n_power
    slices = _TowerSlices(t)

    # a witness W^N v for a free class v can sit as far as 2 n_power
    # below the lowest generator grading
    d_under = None
    for r in range(max_gr, min_gr - 2 * n_power - 1, -1):
        cycles = slices.cycle_basis(r)
        if not cycles:
            continue
        bnd = slices.boundary_basis(r)
        one_plus = slices.one_plus_iota_rows(r)
        residues = [bnd.reduce(gf2.apply_rows(one_plus, z)) for z in cycles]
        eqs = gf2.transpose(residues, len(slices.members(r)))
        combos = gf2.nullspace(eqs, len(cycles))
        candidates = [gf2.apply_rows(cycles, combo) for combo in combos]
        if _spans_nontorsion(slices, r, candidates, n_power):
            d_under = r
            break
    if d_under is None:
        raise InvariantError("no d_under witness in the grading range")

    def case_triples(r: int, m: int) -> bool:
        """dy = (1+iota)x, dz = W^m x solvable with x != 0 and the class
        of W^m y + (1+iota)z nontorsion."""
        xs = slices.members(r)
        if not xs:
            return False
        ys = slices.members(r + 1)
        zs = slices.members(r - 2 * m + 1)
        nx, ny, nz = len(xs), len(ys), len(zs)
        x_rows = slices.one_plus_iota_rows(r)
        y_rows = slices.diff_rows(r + 1)
        zero = [0]
        images1 = x_rows + y_rows + zero * nz
        eqs = gf2.transpose(images1, len(slices.members(r)))
        xm_rows = slices.power_rows(r, m)
        z_rows = slices.diff_rows(r - 2 * m + 1)
        images2 = xm_rows + zero * ny + z_rows
        eqs += gf2.transpose(images2, len(slices.members(r - 2 * m)))
        sols = gf2.nullspace(eqs, nx + ny + nz)
        if not sols:
            return False
        x_mask = (1 << nx) - 1
        if not any(v & x_mask for v in sols):
            return False
        ym_rows = slices.power_rows(r + 1, m)
        zi_rows = slices.one_plus_iota_rows(r - 2 * m + 1)
        l_rows = zero * nx + ym_rows + zi_rows
        images = [gf2.apply_rows(l_rows, v) for v in sols]
        return _spans_nontorsion(slices, r + 1 - 2 * m, images, n_power)

    def case_pairs(c: int, m: int) -> bool:
        """Cycles y != 0 at grading c, z at c - 2m, with W^m y + (1+iota)z
        nontorsion."""
        y_cycles = slices.cycle_basis(c)
        if not y_cycles:
            return False
        z_cycles = slices.cycle_basis(c - 2 * m)
        ym_rows = slices.power_rows(c, m)
        zi_rows = slices.one_plus_iota_rows(c - 2 * m)
        images = [gf2.apply_rows(ym_rows, y) for y in y_cycles]
        images += [gf2.apply_rows(zi_rows, z) for z in z_cycles]
        return _spans_nontorsion(slices, c - 2 * m, images, n_power)

    d_bar = None
    for c in range(max_gr + 1, min_gr - 1, -1):
        hit_small = False
        hit_extended = False
        for m in range(0, m_cap + 2):
            if case_triples(c - 1, m) or case_pairs(c, m):
                if m <= m_cap:
                    hit_small = True
                else:
                    hit_extended = True
                break
        if hit_small:
            d_bar = c
            break
        if hit_extended:
            raise InvariantError(
                f"m_cap={m_cap} too small: raising it changes d_bar")
    if d_bar is None:
        raise InvariantError("no d_bar witness in the grading range")
    return (d_bar, d_under)


@dataclass(frozen=True)
class ObstructionReport:
    pattern1: bool
    pattern2: bool

    @property
    def consistent_with_thin_or_lspace(self) -> bool:
        return self.pattern1 or self.pattern2

    def to_dict(self) -> Dict[str, bool]:
        return {
            "pattern1": self.pattern1,
            "pattern2": self.pattern2,
            "consistent_with_thin_or_lspace": self.consistent_with_thin_or_lspace,
        }


def obstruction_pattern(r: InvariantReport) -> ObstructionReport:
    """The two value patterns of thin knots, L-space knots and their
    mirrors; a knot matching neither is concordant to none of them."""
    vb, v0, vu = r.V0_bar, r.V0, r.V0_under
    pattern1 = vb >= 0 and v0 >= 0 and vu >= 0 and 0 <= vu - vb <= 1
    pattern2 = vb <= 0 and v0 == 0 and vu == 0
    return ObstructionReport(pattern1, pattern2)
