"""Shipped desk-scale data: rotation spheres, their product, the free
circle, and the rank-one non-abelian descent datum.

Everything here is constructed, not hard-coded, wherever the library can
build it (kernels come from the edge-difference map, homology modules from
the Cartan model of the dual), so the examples double as cross-module
consistency tests.
"""

from .polyring import GradedPolynomialRing, Vector
from .gradmod import FPModule, FPMap
from .weyl import cyclic_sign_group
from .cartan import formal_model, circle_model, equivariant_homology
from .equivtop import GKMGraph, FiltrationDatum, chang_skjelbred, gkm_cohomology

__all__ = [
    "s2_graph", "s2xs2_graph", "s2_filtration", "s2xs2_filtration",
    "free_circle_filtration", "su2_sphere_graph", "su2_g_filtration",
    "koszul_syzygy_module", "residue_field_module",
]


def s2_graph(with_symmetry=True):
    """Rotation sphere: two fixed points, one edge of weight t."""
    ring = GradedPolynomialRing(["t"])
    symmetry = None
    if with_symmetry:
        group = cyclic_sign_group(names=["t"])
        symmetry = (group, [{"N": "S", "S": "N"}])
    return GKMGraph(ring, ["N", "S"], [("N", "S", (1,))],
                    euler={"N": [(1,)], "S": [(-1,)]}, symmetry=symmetry)


def s2xs2_graph():
    """Product of two rotation spheres under the 2-torus."""
    ring = GradedPolynomialRing(["t1", "t2"])
    vertices = ["NN", "NS", "SN", "SS"]
    edges = [
        ("NN", "SN", (1, 0)), ("NS", "SS", (1, 0)),
        ("NN", "NS", (0, 1)), ("SN", "SS", (0, 1)),
    ]
    euler = {
        "NN": [(1, 0), (0, 1)], "NS": [(1, 0), (0, -1)],
        "SN": [(-1, 0), (0, 1)], "SS": [(-1, 0), (0, -1)],
    }
    return GKMGraph(ring, vertices, edges, euler=euler)


def _augmented(graph):
    ab0, ab1, delta0 = chang_skjelbred(graph)
    kernel = gkm_cohomology(graph)
    h = kernel.module
    entries = [[kernel.generators[j].component(i)
                for j in range(len(kernel.generators))]
               for i in range(ab0.num_gens)]
    iota = FPMap(h, ab0, entries)
    return ab0, ab1, delta0, kernel, iota


def s2_filtration():
    """Orbit filtration of the rotation sphere, with homology module and
    short-exact truncation data."""
    graph = s2_graph(with_symmetry=False)
    ring = graph.ring
    ab0, ab1, delta0, kernel, iota = _augmented(graph)
    homology = equivariant_homology(formal_model((0, 2), 1), ring)
    # truncation at the fixed stratum: homology of two points, then the
    # one-dimensional relative class in degree -2
    t = ring.var(0)
    relative = FPModule.quotient_by_ideal(ring, [t], gen_degree=-2)
    truncations = [(0, FPModule.free(ring, (0, 0)), relative)]
    return FiltrationDatum(ring, [ab0, ab1], [delta0], augmentation=iota,
                           homology_module=homology, poincare_duality=True,
                           truncations=truncations)


def s2xs2_filtration():
    """Orbit filtration of the product of two spheres.

    AB^2 is the one-dimensional top piece; the connecting map adds the edge
    classes with alternating signs around the four-cycle, which is the
    unique choice (up to sign) killing the image of the edge-difference map.
    """
    graph = s2xs2_graph()
    ring = graph.ring
    ab0, ab1, delta0, kernel, iota = _augmented(graph)
    t1, t2 = ring.vars()
    ab2 = FPModule.quotient_by_ideal(ring, [t1, t2], gen_degree=0)
    signs = {("NN", "SN"): 1, ("NS", "SS"): -1, ("NN", "NS"): -1, ("SN", "SS"): 1}
    entries = [[ring.constant(signs[(v, w)]) for (v, w, _) in graph.edges]]
    delta1 = FPMap(ab1, ab2, entries)
    homology = equivariant_homology(formal_model((0, 2, 2, 4), 2), ring)
    return FiltrationDatum(ring, [ab0, ab1, ab2], [delta0, delta1],
                           augmentation=iota, homology_module=homology,
                           poincare_duality=True)


def free_circle_filtration():
    """Rotating circle: no fixed points, so the complex starts at zero.

    The one-dimensional stratum contributes the torsion module R/(t) with
    its relative degree shift (generator in internal degree -1); the
    homology module is computed from the Cartan model of the dual circle.
    """
    ring = GradedPolynomialRing(["t"])
    t = ring.var(0)
    ab0 = FPModule.zero(ring)
    ab1 = FPModule.quotient_by_ideal(ring, [t], gen_degree=-1)
    delta0 = FPMap.zero(ab0, ab1)
    h = FPModule.quotient_by_ideal(ring, [t], gen_degree=0)
    iota = FPMap.zero(h, ab0)
    homology = equivariant_homology(circle_model(), ring)
    return FiltrationDatum(ring, [ab0, ab1], [delta0], augmentation=iota,
                           homology_module=homology, poincare_duality=True)


def su2_sphere_graph():
    """The rotation sphere with its Weyl symmetry (vertex swap, t -> -t)."""
    return s2_graph(with_symmetry=True)


def su2_g_filtration():
    """Non-abelian orbit filtration of the sphere over the invariant ring.

    Every isotropy group has full rank, so the whole space is the zeroth
    stratum: AB^0 is the full equivariant cohomology (free of rank two over
    the invariant ring, generators in degrees 0 and 2) and AB^1 vanishes.
    """
    group = cyclic_sign_group(names=["t"])
    rg = group.invariant_ring
    ab0 = FPModule.free(rg, (0, 2))
    ab1 = FPModule.zero(rg)
    delta0 = FPMap.zero(ab0, ab1)
    h = FPModule.free(rg, (0, 2))
    one = rg.one()
    zero = rg.zero()
    iota = FPMap(h, ab0, [[one, zero], [zero, one]])
    homology = FPModule.free(rg, (0, -2))
    return FiltrationDatum(rg, [ab0, ab1], [delta0], augmentation=iota,
                           homology_module=homology, poincare_duality=True)


def koszul_syzygy_module(ring, j):
    """j-th syzygy module of the residue field via the Koszul complex."""
    from itertools import combinations
    vs = ring.vars()
    r = ring.num_vars
    subsets = [list(combinations(range(r), k)) for k in range(r + 1)]

    def koszul_map(k):
        # d: Lambda^k -> Lambda^{k-1}
        rows = {s: i for i, s in enumerate(subsets[k - 1])}
        cols = subsets[k]
        entries = [[ring.zero() for _ in cols] for _ in rows]
        for cj, s in enumerate(cols):
            for pos, var in enumerate(s):
                rest = tuple(x for x in s if x != var)
                sign = (-1) ** pos
                entries[rows[rest]][cj] = vs[var].scale(sign)
        return entries

    if not 1 <= j <= r:
        raise ValueError("syzygy index out of range")
    gens_degrees = tuple(2 * j for _ in subsets[j])
    if j == r:
        return FPModule.free(ring, gens_degrees)
    rel = koszul_map(j + 1)
    cols = []
    for cj in range(len(subsets[j + 1])):
        cols.append(Vector.from_polys([rel[i][cj] for i in range(len(subsets[j]))]))
    return FPModule.from_columns(ring, gens_degrees, cols)


def residue_field_module(ring):
    """The residue field as a module: R modulo all the variables."""
    return FPModule.quotient_by_ideal(ring, ring.vars())
