"""GKM graphs, Chang-Skjelbred and Atiyah-Bredon complexes, and the
equivalence theorems relating their exactness to syzygy orders.

A GKM graph encodes fixed points and one-dimensional orbit strata by
vertices and weighted edges; the edge-difference map gives the first two
terms of the Atiyah-Bredon complex, and its kernel plays the role of
equivariant cohomology.  Longer filtrations are supplied as explicit data
(modules plus connecting maps).  The checks implemented here:

* Cohen-Macaulay filtration (piece i is zero or CM of dimension r-i);
* Ext-duality (complex cohomology against Ext of the homology module);
* partial exactness versus syzygy order of the augmentation;
* the syzygy gap bound for Poincare-duality data;
* descent of invariants to the non-abelian ring and syzygy invariance;
* fixed-point integration and the perfection of the Poincare pairing.
"""

from math import gcd

from .polyring import (
    GradedPolynomialRing, Vector, SubmoduleGB, divide,
)
from .gradmod import (
    FreeModule, FPModule, FPMap, fp_kernel, fp_cokernel, fp_homology,
    cohen_macaulay, ext_module, syzygy_order, biduality, base_change,
    iso_surrogate_equal,
)
from .weyl import WEquivariantFreeModule, group_from_json

__all__ = [
    "GKMGraph", "FiltrationDatum", "DatumError", "chang_skjelbred",
    "gkm_cohomology", "ab_cohomology", "cm_filtration_check",
    "verify_ext_duality", "partial_exactness_vs_syzygy", "descend_invariants",
    "integrate", "pairing_perfection", "syzygy_gap_check",
    "truncation_additivity_check",
]


class DatumError(ValueError):
    """Raised when the input data violates its structural contracts."""


class GKMGraph:
    """Moment graph: vertices, edges with primitive integer weights,
    optional per-vertex Euler data and a reflection-group symmetry."""

    def __init__(self, ring, vertices, edges, euler=None, symmetry=None):
        self.ring = ring
        self.rank = ring.num_vars
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise DatumError("vertex names must be distinct")
        self.edges = []
        index = {v: i for i, v in enumerate(self.vertices)}
        for (v, w, weight) in edges:
            if v not in index or w not in index or v == w:
                raise DatumError("edge endpoints must be distinct known vertices")
            weight = tuple(int(x) for x in weight)
            if len(weight) != self.rank or not any(weight):
                raise DatumError("edge weight must be a nonzero vector of length %d"
                                 % self.rank)
            g = 0
            for x in weight:
                g = gcd(g, abs(x))
            if g != 1:
                raise DatumError("edge weight must be primitive")
            self.edges.append((str(v), str(w), weight))
        self.euler = None
        if euler is not None:
            self.euler = {str(v): [tuple(int(x) for x in vec) for vec in vecs]
                          for v, vecs in euler.items()}
        # symmetry: (ReflectionGroup, [vertex permutation per group generator])
        self.symmetry = symmetry
        if symmetry is not None:
            self._check_symmetry()

    def _index(self, v):
        return self.vertices.index(v)

    def weight_form(self, weight):
        p = self.ring.zero()
        for i, a in enumerate(weight):
            if a:
                p = p + self.ring.var(i).scale(a)
        return p

    def _check_symmetry(self):
        group, perms = self.symmetry
        if group.ring != self.ring:
            raise DatumError("symmetry group must act on the graph's ring")
        if len(perms) != len(group.generators):
            raise DatumError("need one vertex permutation per group generator")
        edge_set = set()
        for (v, w, a) in self.edges:
            edge_set.add((v, w, a))
            edge_set.add((w, v, tuple(-x for x in a)))
        for mat, perm in zip(group.generators, perms):
            if set(perm) != set(self.vertices):
                raise DatumError("vertex permutation must cover all vertices")
            for (v, w, a) in self.edges:
                img = tuple(sum(mat[i][j] * a[j] for j in range(self.rank))
                            for i in range(self.rank))
                img = tuple(int(x) for x in img)
                if ((perm[v], perm[w], img) not in edge_set
                        and (perm[v], perm[w], tuple(-x for x in img)) not in edge_set):
                    raise DatumError("vertex permutation does not respect the weights")

    def euler_class(self, v):
        """Signed product of the weights at a vertex (supplied or derived)."""
        if self.euler is not None and v in self.euler:
            vecs = self.euler[v]
        else:
            vecs = []
            for (a, b, w) in self.edges:
                if a == v:
                    vecs.append(w)
                elif b == v:
                    vecs.append(tuple(-x for x in w))
            if not vecs:
                raise DatumError("vertex %s has no incident edges and no Euler data" % v)
        e = self.ring.one()
        for w in vecs:
            e = e * self.weight_form(w)
        return e

    def to_json(self):
        out = {
            "rank": self.rank,
            "vars": list(self.ring.names),
            "vertices": list(self.vertices),
            "edges": [{"v": v, "w": w, "weight": list(a)} for (v, w, a) in self.edges],
        }
        if self.euler is not None:
            out["euler"] = {v: [list(x) for x in vecs] for v, vecs in self.euler.items()}
        if self.symmetry is not None:
            group, perms = self.symmetry
            out["symmetry"] = {
                "group": {
                    "rank": group.rank,
                    "vars": list(group.ring.names),
                    "generators": [[[str(x) for x in row] for row in g]
                                   for g in group.generators],
                    "invariants": [str(p) for p in group.invariants],
                },
                "vertex_maps": [dict(p) for p in perms],
            }
        return out

    @classmethod
    def from_json(cls, obj):
        rank = int(obj["rank"])
        names = obj.get("vars") or ["t%d" % (i + 1) for i in range(rank)]
        ring = GradedPolynomialRing(names, (2,) * rank)
        edges = [(e["v"], e["w"], e["weight"]) for e in obj["edges"]]
        symmetry = None
        if obj.get("symmetry"):
            sym = obj["symmetry"]
            gobj = dict(sym["group"])
            gobj.setdefault("vars", list(names))
            group = group_from_json(gobj)
            symmetry = (group, [dict(p) for p in sym["vertex_maps"]])
        return cls(ring, obj["vertices"], edges, euler=obj.get("euler"),
                   symmetry=symmetry)


def chang_skjelbred(graph):
    """First two Atiyah-Bredon terms of a GKM graph.

    AB^0 is free on the vertices; AB^1 is the sum over edges of R/(weight)
    with the relative degree shift already absorbed (edge generators sit in
    internal degree 0); the connecting map sends f to f_v - f_w mod the
    edge weight, the first listed vertex carrying the plus sign.
    """
    ring = graph.ring
    nv = len(graph.vertices)
    ab0 = FPModule.free(ring, (0,) * nv)
    ne = len(graph.edges)
    rel_cols = []
    for k, (_, _, weight) in enumerate(graph.edges):
        alpha = graph.weight_form(weight)
        rel_cols.append(Vector(ring, ne,
                               {(k, e): c for e, c in alpha.terms.items()}))
    ab1 = FPModule.from_columns(ring, (0,) * ne, rel_cols)
    entries = [[ring.zero() for _ in range(nv)] for _ in range(ne)]
    for k, (v, w, _) in enumerate(graph.edges):
        entries[k][graph._index(v)] = ring.one()
        entries[k][graph._index(w)] = -ring.one()
    delta0 = FPMap(ab0, ab1, entries)
    return ab0, ab1, delta0


class KernelResult:
    """Kernel of the edge-difference map with its inclusion vectors."""

    def __init__(self, module, generators, ambient):
        self.module = module
        self.generators = generators
        self.ambient = ambient

    def membership_gb(self):
        return SubmoduleGB(self.module.ring, self.ambient.rank, self.generators)


def gkm_cohomology(graph):
    """Kernel of the Chang-Skjelbred map: tuples agreeing mod edge weights."""
    ab0, ab1, delta0 = chang_skjelbred(graph)
    module, gens = fp_kernel(delta0)
    ambient = FreeModule(graph.ring, ab0.gens_degrees)
    return KernelResult(module, gens, ambient)


class FiltrationDatum:
    """Explicit Atiyah-Bredon complex AB^0 -> ... -> AB^r with options.

    Optional pieces: an augmentation (a module with a map into AB^0), the
    homology-side module the Ext-duality theorem refers to, short-exact
    truncation data, and a Poincare-duality flag.  Structural contracts
    (consecutive composites vanish) are enforced on construction.
    """

    def __init__(self, ring, modules, maps, augmentation=None,
                 homology_module=None, poincare_duality=False,
                 truncations=None, assumptions=None):
        self.ring = ring
        self.rank = ring.num_vars
        if len(modules) != self.rank + 1:
            raise DatumError("need modules AB^0..AB^r (r = %d)" % self.rank)
        self.modules = list(modules)
        if len(maps) != self.rank:
            raise DatumError("need maps delta_0..delta_{r-1}")
        self.maps = list(maps)
        for i, m in enumerate(self.maps):
            if m.source is not self.modules[i] or m.target is not self.modules[i + 1]:
                if (m.source.gens_degrees != self.modules[i].gens_degrees
                        or m.target.gens_degrees != self.modules[i + 1].gens_degrees):
                    raise DatumError("map %d does not connect AB^%d to AB^%d"
                                     % (i, i, i + 1))
        for i in range(self.rank - 1):
            if not self.maps[i + 1].compose(self.maps[i]).is_zero_map():
                raise DatumError("delta_%d after delta_%d is nonzero" % (i + 1, i))
        self.augmentation = augmentation
        if augmentation is not None:
            if self.maps and not self.maps[0].compose(augmentation).is_zero_map():
                raise DatumError("delta_0 after the augmentation is nonzero")
        self.homology_module = homology_module
        self.poincare_duality = bool(poincare_duality)
        self.truncations = truncations or []
        self.assumptions = assumptions or [
            "finitely many infinitesimal orbit types",
            "finite-dimensional total cohomology",
        ]

    def base_changed(self, ring_map):
        """Extend every piece and map along a graded ring inclusion."""
        mods = [base_change(m, ring_map) for m in self.modules]
        maps = []
        for i, f in enumerate(self.maps):
            ent = [[ring_map(e) for e in row] for row in f.entries]
            maps.append(FPMap(mods[i], mods[i + 1], ent, check=False))
        aug = None
        if self.augmentation is not None:
            h = base_change(self.augmentation.source, ring_map)
            ent = [[ring_map(e) for e in row] for row in self.augmentation.entries]
            aug = FPMap(h, mods[0], ent, check=False)
        hom = (base_change(self.homology_module, ring_map)
               if self.homology_module is not None else None)
        return FiltrationDatum(ring_map.target, mods, maps, augmentation=aug,
                               homology_module=hom,
                               poincare_duality=self.poincare_duality,
                               assumptions=self.assumptions)

    def to_json(self):
        def mod_json(m):
            j = m.to_json()
            del j["ring"]
            return j

        out = {
            "ring": self.ring.descriptor(),
            "modules": [mod_json(m) for m in self.modules],
            "maps": [[[str(e) for e in row] for row in f.entries] for f in self.maps],
            "poincare_duality": self.poincare_duality,
        }
        if self.augmentation is not None:
            out["augmentation"] = {
                "module": mod_json(self.augmentation.source),
                "map": [[str(e) for e in row] for row in self.augmentation.entries],
            }
        if self.homology_module is not None:
            out["homology_module"] = mod_json(self.homology_module)
        if self.truncations:
            out["truncations"] = [
                {"index": i, "sub": mod_json(a), "quotient": mod_json(b)}
                for (i, a, b) in self.truncations]
        return out

    @classmethod
    def from_json(cls, obj):
        ring = GradedPolynomialRing.from_descriptor(obj["ring"])

        def mod(j):
            return FPModule.from_json(j, ring=ring)

        modules = [mod(j) for j in obj["modules"]]
        maps = []
        for i, mat in enumerate(obj["maps"]):
            ent = [[ring.poly_from_json(e) for e in row] for row in mat]
            maps.append(FPMap(modules[i], modules[i + 1], ent))
        aug = None
        if obj.get("augmentation"):
            h = mod(obj["augmentation"]["module"])
            ent = [[ring.poly_from_json(e) for e in row]
                   for row in obj["augmentation"]["map"]]
            aug = FPMap(h, modules[0], ent)
        hom = mod(obj["homology_module"]) if obj.get("homology_module") else None
        trunc = [(t["index"], mod(t["sub"]), mod(t["quotient"]))
                 for t in obj.get("truncations", [])]
        return cls(ring, modules, maps, augmentation=aug, homology_module=hom,
                   poincare_duality=bool(obj.get("poincare_duality")),
                   truncations=trunc)


def ab_cohomology(datum):
    """Cohomology of the complex at every position, H^{-1} = ker(iota*)
    included when the datum is augmented."""
    out = {}
    r = datum.rank
    if datum.augmentation is not None:
        out[-1] = fp_kernel(datum.augmentation)[0].minimized()
    for i in range(r + 1):
        incoming = datum.maps[i - 1] if i >= 1 else (
            datum.augmentation if datum.augmentation is not None else None)
        outgoing = datum.maps[i] if i < r else None
        if outgoing is None:
            if incoming is None:
                out[i] = datum.modules[i].minimized()
            else:
                out[i] = fp_cokernel(incoming)
        elif incoming is None:
            out[i] = fp_kernel(outgoing)[0].minimized()
        else:
            out[i] = fp_homology(incoming, outgoing)
    return out


def plain_ab_cohomology(datum):
    """Cohomology of the non-augmented complex (H^0 is the full kernel)."""
    stripped = FiltrationDatum(datum.ring, datum.modules, datum.maps,
                               homology_module=datum.homology_module,
                               poincare_duality=datum.poincare_duality,
                               assumptions=datum.assumptions)
    return ab_cohomology(stripped)


class CheckReport:
    def __init__(self, name, verdict, details=None):
        self.name = name
        self.verdict = verdict            # "pass" | "fail" | "not applicable"
        self.details = details or {}

    @property
    def passed(self):
        return self.verdict != "fail"

    def __repr__(self):
        return "CheckReport(%s: %s)" % (self.name, self.verdict)


def cm_filtration_check(datum):
    """Each piece must be zero or Cohen-Macaulay of dimension r - i."""
    rows = []
    ok = True
    for i, m in enumerate(datum.modules):
        cm = cohen_macaulay(m)
        if cm.status == "zero":
            rows.append({"position": i, "status": "zero", "ok": True})
            continue
        good = cm.is_cm and cm.dim == datum.rank - i
        ok = ok and good and cm.tests_agree
        rows.append({"position": i, "status": cm.status, "dim": cm.dim,
                     "depth": cm.depth, "expected_dim": datum.rank - i,
                     "ok": good})
    return CheckReport("cohen-macaulay-filtration",
                       "pass" if ok else "fail", {"pieces": rows})


def verify_ext_duality(datum, nmax=40):
    """Compare H^j of the complex with Ext^j(homology module, R) for all j."""
    if datum.homology_module is None:
        raise DatumError("the Ext-duality check needs the homology-side module")
    hs = plain_ab_cohomology(datum)
    rows = []
    ok = True
    for j in range(datum.rank + 1):
        ext = ext_module(datum.homology_module, j).minimized()
        good = iso_surrogate_equal(hs[j], ext, nmax)
        ok = ok and good
        rows.append({"position": j,
                     "complex_betti": _betti_json(hs[j]),
                     "ext_betti": _betti_json(ext),
                     "ok": good})
    return CheckReport("ext-duality", "pass" if ok else "fail",
                       {"positions": rows})


def _betti_json(module):
    from .gradmod import betti_table
    table = betti_table(module)
    return sorted([[k, d, n] for (k, d), n in table.items()])


def partial_exactness_vs_syzygy(datum):
    """Largest exact initial part of the augmented complex against the
    syzygy order of the augmentation module; the two must agree."""
    if datum.augmentation is None:
        raise DatumError("the partial-exactness check needs an augmentation")
    hs = ab_cohomology(datum)
    r = datum.rank
    j_exact = 0
    for j in range(1, r + 1):
        if all(hs[i].is_zero() for i in range(-1, j - 1)):
            j_exact = j
        else:
            break
    syz = syzygy_order(datum.augmentation.source)
    verdict = "pass" if j_exact == syz.order else "fail"
    return CheckReport("partial-exactness-vs-syzygy-order", verdict, {
        "j_exact": j_exact,
        "j_syzygy": syz.order,
        "syzygy_kind": syz.kind,
        "witness_verified": syz.witness_verified,
        "homology_vanishing": {str(i): hs[i].is_zero() for i in sorted(hs)},
        "assumptions": datum.assumptions,
    })


def syzygy_gap_check(datum):
    """For Poincare-duality data, order >= r/2 forces freeness (order r)."""
    if datum.augmentation is None:
        raise DatumError("the gap check needs an augmentation")
    if not datum.poincare_duality:
        return CheckReport("syzygy-gap-bound", "not applicable", {})
    r = datum.rank
    syz = syzygy_order(datum.augmentation.source)
    threshold = (r + 1) // 2
    if syz.order >= threshold:
        verdict = "pass" if syz.order == r else "fail"
    else:
        verdict = "pass"
    return CheckReport("syzygy-gap-bound", verdict,
                       {"order": syz.order, "threshold": threshold, "rank": r})


def truncation_additivity_check(datum, nmax=40):
    """Short-exact truncations: Hilb(sub) + Hilb(quotient) = Hilb(total)."""
    if datum.homology_module is None or not datum.truncations:
        return CheckReport("homology-truncation-additivity", "not applicable", {})
    total = datum.homology_module.hilbert().coefficients(nmax)
    rows = []
    ok = True
    for (i, sub, quot) in datum.truncations:
        a = sub.hilbert().coefficients(nmax)
        b = quot.hilbert().coefficients(nmax)
        summed = dict(a)
        for k, v in b.items():
            summed[k] = summed.get(k, 0) + v
        summed = {k: v for k, v in summed.items() if v}
        good = summed == total
        ok = ok and good
        rows.append({"index": i, "ok": good})
    return CheckReport("homology-truncation-additivity",
                       "pass" if ok else "fail", {"truncations": rows})


class DescentResult:
    def __init__(self, module, generators, checks):
        self.module = module          # invariants over the invariant ring
        self.generators = generators  # invariant tuples over R_T
        self.checks = checks

    @property
    def passed(self):
        return all(c.passed for c in self.checks)


def descend_invariants(graph, group=None, nmax=40):
    """Invariant part of the GKM kernel over the invariant subring.

    Returns the module of Weyl-invariant tuples together with two verdicts:
    the syzygy orders over both rings agree, and extending scalars back
    recovers the kernel's Hilbert series.
    """
    if group is None:
        if graph.symmetry is None:
            raise DatumError("graph carries no symmetry data")
        group, perms = graph.symmetry
    else:
        if graph.symmetry is None or graph.symmetry[0] is not group:
            raise DatumError("graph symmetry does not match the given group")
        perms = graph.symmetry[1]
    kernel = gkm_cohomology(graph)
    module = WEquivariantFreeModule(group, graph.vertices, perms)
    inv = module.invariants(submodule_gens=kernel.generators)
    hg = inv.module
    ord_g = syzygy_order(hg)
    ord_t = syzygy_order(kernel.module)
    checks = [CheckReport(
        "descent-syzygy-invariance",
        "pass" if ord_g.order == ord_t.order else "fail",
        {"order_invariant_ring": ord_g.order, "order_torus_ring": ord_t.order})]
    back = base_change(hg, group.embedding())
    same = back.hilbert().series_equal(kernel.module.hilbert(), nmax)
    checks.append(CheckReport("descent-base-change-hilbert",
                              "pass" if same else "fail", {}))
    return DescentResult(hg, inv.generators, checks)


def integrate(graph, klass, kernel=None):
    """Fixed-point localization: sum of f_v over the vertex Euler classes.

    The class must lie in the kernel of the edge-difference map, and the
    localized sum must simplify to a polynomial; either failure raises.
    """
    ring = graph.ring
    nv = len(graph.vertices)
    if isinstance(klass, (list, tuple)):
        klass = Vector.from_polys(list(klass), nv)
    if kernel is None:
        kernel = gkm_cohomology(graph)
    if not kernel.membership_gb().contains(klass):
        raise DatumError("class is not in the kernel of the edge-difference map")
    eulers = [graph.euler_class(v) for v in graph.vertices]
    total_num = ring.zero()
    for i in range(nv):
        f = klass.component(i)
        if f.is_zero():
            continue
        prod = f
        for j in range(nv):
            if j != i:
                prod = prod * eulers[j]
        total_num = total_num + prod
    denom = ring.one()
    for e in eulers:
        denom = denom * e
    if total_num.is_zero():
        return ring.zero()
    quot, ok = _exact_divide(total_num, denom)
    if not ok:
        raise DatumError("localized sum is not a polynomial; "
                         "class or Euler data invalid")
    return quot


def _exact_divide(f, g):
    q, rem = divide(Vector.from_polys([f], 1), [Vector.from_polys([g], 1)])
    if rem.is_zero():
        return q[0], True
    return None, False


def pairing_perfection(graph, kernel=None):
    """Gram matrix of the localized pairing on a free kernel basis.

    Perfect iff the determinant is a nonzero scalar; the verdict is
    cross-checked against reflexivity of the kernel module.
    """
    if kernel is None:
        kernel = gkm_cohomology(graph)
    if kernel.module.num_rels != 0:
        return CheckReport("poincare-pairing-perfection", "not applicable",
                           {"reason": "kernel is not free; use the syzygy test"})
    basis = kernel.generators
    n = len(basis)
    gram = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = Vector.from_polys(
                [basis[i].component(k) * basis[j].component(k)
                 for k in range(basis[i].rank)])
            row.append(integrate(graph, prod, kernel=kernel))
        gram.append(row)
    det = _poly_matrix_det(gram, graph.ring)
    unit = (not det.is_zero()) and set(det.terms) == {graph.ring.zero_exps}
    refl = biduality(kernel.module).reflexive
    verdict = "pass" if unit == refl else "fail"
    return CheckReport("poincare-pairing-perfection", verdict, {
        "gram": [[str(e) for e in row] for row in gram],
        "determinant": str(det),
        "perfect": unit,
        "kernel_reflexive": refl,
    })


def _poly_matrix_det(matrix, ring):
    n = len(matrix)
    if n == 0:
        return ring.one()
    if n == 1:
        return matrix[0][0]
    acc = ring.zero()
    for i in range(n):
        if matrix[i][0].is_zero():
            continue
        minor = [[matrix[r][c] for c in range(1, n)] for r in range(n) if r != i]
        term = matrix[i][0] * _poly_matrix_det(minor, ring)
        acc = acc - term if i % 2 else acc + term
    return acc
