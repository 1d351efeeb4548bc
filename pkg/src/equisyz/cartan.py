"""Cartan models for finite-dimensional complexes with torus contractions.

A GStarModule is a finite graded complex with a degree +1 differential and
one degree -1 contraction per torus coordinate, all Lie derivatives zero
(the invariant model).  Tensoring with the torus ring and twisting the
differential by the contractions gives a complex of graded free modules
whose cohomology is the equivariant cohomology; running the same
construction on the dual complex gives equivariant homology.
"""

from fractions import Fraction

from .polyring import _fr
from .gradmod import (
    FreeModule, ModuleMap, FPModule, minimal_generating_indices,
    _degrees_of, _kernel_submodule, cohen_macaulay, ext_module,
    iso_surrogate_equal,
)

__all__ = [
    "GStarModule", "CartanComplex", "build_cartan", "cartan_cohomology",
    "dualize_gstar", "equivariant_homology", "uct_collapse_check",
    "point_model", "circle_model", "formal_model",
]


def _matrix(rows, n):
    out = [[_fr(x) for x in row] for row in rows]
    if len(out) != n or any(len(r) != n for r in out):
        raise ValueError("operator matrices must be square of the basis size")
    return tuple(tuple(r) for r in out)


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                       for j in range(n)) for i in range(n))


def _mat_add(a, b):
    n = len(a)
    return tuple(tuple(a[i][j] + b[i][j] for j in range(n)) for i in range(n))


def _is_zero_mat(a):
    return all(not x for row in a for x in row)


class GStarModule:
    """Finite complex with differential and anticommuting contractions.

    Relations enforced on construction: d^2 = 0, iota_k iota_l + iota_l
    iota_k = 0 (so each iota squares to zero), d iota_k + iota_k d = 0.
    Lie derivatives are identically zero in this model.
    """

    def __init__(self, degrees, d, iotas):
        self.degrees = tuple(int(x) for x in degrees)
        n = len(self.degrees)
        self.d = _matrix(d, n)
        self.iotas = [_matrix(m, n) for m in iotas]
        self._validate()

    @property
    def dim(self):
        return len(self.degrees)

    @property
    def num_contractions(self):
        return len(self.iotas)

    def _validate(self):
        n = self.dim
        degs = self.degrees
        for name, mat, shift in ([("d", self.d, 1)]
                                 + [("iota_%d" % (k + 1), m, -1)
                                    for k, m in enumerate(self.iotas)]):
            for i in range(n):
                for j in range(n):
                    if mat[i][j] and degs[i] != degs[j] + shift:
                        raise ValueError("%s has an entry of the wrong degree" % name)
        if not _is_zero_mat(_mat_mul(self.d, self.d)):
            raise ValueError("differential does not square to zero")
        for k, ik in enumerate(self.iotas):
            for l, il in enumerate(self.iotas):
                if not _is_zero_mat(_mat_add(_mat_mul(ik, il), _mat_mul(il, ik))):
                    raise ValueError("contractions %d, %d do not anticommute"
                                     % (k + 1, l + 1))
            anti = _mat_add(_mat_mul(self.d, ik), _mat_mul(ik, self.d))
            if not _is_zero_mat(anti):
                raise ValueError("contraction %d does not anticommute with d"
                                 % (k + 1))

    def poincare_polynomial(self):
        """Dimensions of the cohomology of (A, d) by degree."""
        # rank computations over Q: dim H^n = dim ker d^n - rank d^{n-1}
        degs = sorted(set(self.degrees))
        out = {}
        for ddeg in degs:
            idx = [i for i, x in enumerate(self.degrees) if x == ddeg]
            nxt = [i for i, x in enumerate(self.degrees) if x == ddeg + 1]
            prv = [i for i, x in enumerate(self.degrees) if x == ddeg - 1]
            d_here = [[self.d[i][j] for j in idx] for i in nxt]
            d_prev = [[self.d[i][j] for j in prv] for i in idx]
            dim_ker = len(idx) - _rank(d_here)
            h = dim_ker - _rank(d_prev)
            if h:
                out[ddeg] = h
        return out

    def to_json(self):
        return {
            "degrees": list(self.degrees),
            "d": _cols_json(self.d),
            "iota": [_cols_json(m) for m in self.iotas],
        }

    @classmethod
    def from_json(cls, obj):
        degrees = obj["degrees"]
        n = len(degrees)
        return cls(degrees, _cols_parse(obj["d"], n),
                   [_cols_parse(m, n) for m in obj["iota"]])

    def __repr__(self):
        return "GStarModule(degrees=%s, r=%d)" % (list(self.degrees),
                                                  self.num_contractions)


def _cols_json(mat):
    # column-major serialization
    n = len(mat)
    return [[str(mat[i][j]) for i in range(n)] for j in range(n)]


def _cols_parse(cols, n):
    return [[_fr(cols[j][i]) for j in range(n)] for i in range(n)]


def _rank(rows):
    if not rows or not rows[0]:
        return 0
    m = [list(r) for r in rows]
    nr, nc = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(nc):
        piv = None
        for i in range(row, nr):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        for i in range(nr):
            if i != row and m[i][col]:
                f = m[i][col] / pv
                for j in range(col, nc):
                    m[i][j] -= f * m[row][j]
        rank += 1
        row += 1
        if row == nr:
            break
    return rank


class CartanComplex:
    """R_T tensor A with twisted differential D = 1(x)d - sum x_k (x) iota_k."""

    def __init__(self, ring, gstar):
        if ring.num_vars != gstar.num_contractions:
            raise ValueError("ring rank must match the number of contractions")
        self.ring = ring
        self.gstar = gstar
        n = gstar.dim
        ent = []
        for i in range(n):
            row = []
            for j in range(n):
                p = ring.constant(gstar.d[i][j])
                for k in range(ring.num_vars):
                    c = gstar.iotas[k][i][j]
                    if c:
                        p = p - ring.var(k).scale(c)
                row.append(p)
            ent.append(row)
        source = FreeModule(ring, gstar.degrees)
        target = FreeModule(ring, tuple(d - 1 for d in gstar.degrees))
        self.differential = ModuleMap(source, target, ent)
        if not self._squares_to_zero():
            raise ValueError("twisted differential does not square to zero")

    def _squares_to_zero(self):
        ent = self.differential.entries
        n = len(ent)
        for i in range(n):
            for j in range(n):
                acc = self.ring.zero()
                for k in range(n):
                    if not ent[i][k].is_zero() and not ent[k][j].is_zero():
                        acc = acc + ent[i][k] * ent[k][j]
                if not acc.is_zero():
                    return False
        return True

    def specialized_at_zero(self):
        """The matrix of D with all ring variables set to zero (i.e. d)."""
        n = self.gstar.dim
        return [[self.differential.entries[i][j].constant_term()
                 for j in range(n)] for i in range(n)]


def build_cartan(gstar, ring):
    """Cartan complex of an invariant model over the torus ring."""
    return CartanComplex(ring, gstar)


def cartan_cohomology(complex_):
    """ker D / im D, presented as a finitely presented graded module."""
    ring = complex_.ring
    degrees = complex_.gstar.degrees
    cols = complex_.differential.columns()
    kernel = _kernel_submodule(ring, len(degrees), cols, [])
    keep = minimal_generating_indices(kernel, degrees)
    kernel = [kernel[i] for i in keep]
    rels = _kernel_submodule(ring, len(degrees), kernel, cols)
    mod = FPModule.from_columns(ring, _degrees_of(kernel, degrees), rels)
    return mod.minimized()


def dualize_gstar(gstar):
    """Dual complex with negated degrees and the contraction sign rule.

    The pairing signs follow <X phi, a> = -(-1)^{|phi|} <phi, X a> for both
    the differential and the contractions; basis vectors of negative degree
    carry a parity normalization making double dualization restore the
    original matrices exactly.
    """
    degs = gstar.degrees

    def tau(d):
        return 1 if d >= 0 or d % 2 == 0 else -1

    def dual_mat(mat):
        n = len(degs)
        out = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):      # dual basis vector of e_j
            sign = -(-1) ** (degs[j] % 2)
            for k in range(n):
                if mat[j][k]:
                    out[k][j] = Fraction(sign * tau(degs[j]) * tau(degs[k])) * mat[j][k]
        return out

    return GStarModule(tuple(-d for d in degs), dual_mat(gstar.d),
                       [dual_mat(m) for m in gstar.iotas])


def equivariant_homology(gstar, ring):
    """Cohomology of the Cartan complex of the dual model (negative grading)."""
    return cartan_cohomology(build_cartan(dualize_gstar(gstar), ring))


class UCTReport:
    def __init__(self, applicable, status, shift=None, cohomology=None,
                 homology=None, expected=None):
        self.applicable = applicable
        self.status = status      # "pass" | "fail" | "not applicable"
        self.shift = shift
        self.cohomology = cohomology
        self.homology = homology
        self.expected = expected

    @property
    def passed(self):
        return self.status == "pass"

    def __repr__(self):
        return "UCTReport(%s, shift=%s)" % (self.status, self.shift)


def uct_collapse_check(gstar, ring, nmax=40):
    """When H_G(A) is Cohen-Macaulay the universal-coefficient spectral
    sequence collapses: equivariant homology of A must match
    Ext^{r-d}(H_G(A), R) with generator degrees raised by r-d (for free
    modules this is the plain dual).  Betti tables plus Hilbert series are
    compared; if H_G(A) is not Cohen-Macaulay the check reports
    "not applicable" and makes no claim.
    """
    r = ring.num_vars
    coh = cartan_cohomology(build_cartan(gstar, ring))
    hom = equivariant_homology(gstar, ring)
    if coh.is_zero():
        ok = hom.is_zero()
        return UCTReport(True, "pass" if ok else "fail", 0, coh, hom, None)
    cm = cohen_macaulay(coh)
    if not cm.is_cm:
        return UCTReport(False, "not applicable", None, coh, hom, None)
    shift = r - cm.dim
    expected = ext_module(coh, shift).shifted(shift)
    ok = iso_surrogate_equal(hom, expected, nmax)
    return UCTReport(True, "pass" if ok else "fail", shift, coh, hom, expected)


def point_model():
    """The one-dimensional trivial model."""
    return GStarModule((0,), [[0]], [[[0]]])


def circle_model():
    """Free circle: basis 1, theta with iota(theta) = 1 and zero differential."""
    return GStarModule((0, 1), [[0, 0], [0, 0]], [[[0, 1], [0, 0]]])


def formal_model(degrees, rank):
    """All operators zero: the cohomology of a formal space, e.g. spheres."""
    n = len(degrees)
    zero = [[0] * n for _ in range(n)]
    return GStarModule(tuple(degrees), zero, [zero for _ in range(rank)])
