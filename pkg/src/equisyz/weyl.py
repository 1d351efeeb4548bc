"""Finite reflection group actions on the torus polynomial ring.

A group is given by rational matrices acting on the degree-2 variables.
Supplies the closure enumeration, verification of candidate fundamental
invariants (Molien series, order product), Kostant's coinvariant basis as
Groebner standard monomials, the Reynolds projector, rewriting of R_T
modules over the invariant subring, and invariants of equivariant free
modules.  Built-in constructors cover the symmetric groups on up to four
letters (acting on the sum-zero coordinates), the order-8 rank-2 group of
signed permutations, sign flips in rank one, and direct products.
"""

from fractions import Fraction

from .polyring import (
    GradedPolynomialRing, Polynomial, Vector, SubmoduleGB, buchberger,
    normal_form, syzygy_basis, HilbertSeries, qpoly_add, qpoly_mul,
    qpoly_inverse_series, _fr,
)
from .gradmod import (
    FreeModule, ModuleMap, FPModule, minimal_generating_indices, _degrees_of,
)

__all__ = [
    "ReflectionGroup", "WEquivariantFreeModule", "GroupClosureError",
    "cyclic_sign_group", "symmetric_group_on_sum_zero", "signed_permutation_rank2",
    "product_group",
]


class GroupClosureError(ValueError):
    pass


def _mat(rows):
    return tuple(tuple(_fr(x) for x in row) for row in rows)


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                       for j in range(n)) for i in range(n))


def _identity(n):
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n))
                 for i in range(n))


class ReflectionGroup:
    """Finite matrix group on the rank-r torus ring with chosen invariants."""

    def __init__(self, generators, invariants, ring=None, names=None,
                 invariant_names=None, max_order=10080):
        gens = [_mat(g) for g in generators]
        rank = len(gens[0]) if gens else 0
        for g in gens:
            if len(g) != rank or any(len(row) != rank for row in g):
                raise ValueError("generators must be square matrices of equal size")
        if ring is None:
            names = names or ["t%d" % (i + 1) for i in range(rank)]
            ring = GradedPolynomialRing(names, (2,) * rank)
        if ring.num_vars != rank:
            raise ValueError("ring rank does not match the matrices")
        self.ring = ring
        self.rank = rank
        self.generators = gens
        self.elements, self._words = self._closure(gens, max_order)
        self.invariants = [ring.parse(p) if isinstance(p, str) else p
                           for p in invariants]
        if any(p.ring != ring for p in self.invariants):
            raise ValueError("invariants must live in the torus ring")
        if len(self.invariants) != rank:
            raise ValueError("need exactly rank-many fundamental invariants")
        self.invariant_degrees = tuple(p.homogeneous_degree() for p in self.invariants)
        if any(d is None or d <= 0 or d % 2 for d in self.invariant_degrees):
            raise ValueError("invariants must be homogeneous of positive even degree")
        inv_names = invariant_names or ["p%d" % (i + 1) for i in range(rank)]
        self.invariant_ring = GradedPolynomialRing(inv_names, self.invariant_degrees)
        self._images = {}
        self._coinvariants = None
        self._inv_gb = None
        self._expand_cache = {}

    @staticmethod
    def _closure(gens, max_order):
        n = len(gens[0]) if gens else 0
        ident = _identity(n)
        elements = [ident]
        words = {ident: ()}
        queue = [ident]
        while queue:
            w = queue.pop(0)
            for gi, g in enumerate(gens):
                prod = _mat_mul(g, w)
                if prod not in words:
                    words[prod] = (gi,) + words[w]
                    elements.append(prod)
                    queue.append(prod)
                    if len(elements) > max_order:
                        raise GroupClosureError(
                            "group closure exceeds the bound %d" % max_order)
        return elements, words

    @property
    def order(self):
        return len(self.elements)

    def act(self, matrix, poly):
        """Substitute variable j by the column-j linear form of the matrix."""
        key = matrix
        if key not in self._images:
            images = []
            for j in range(self.rank):
                img = self.ring.zero()
                for i in range(self.rank):
                    if matrix[i][j]:
                        img = img + self.ring.var(i).scale(matrix[i][j])
                images.append(img)
            self._images[key] = images
        return poly.substitute(self.ring, self._images[key])

    def act_vector(self, matrix, vector):
        polys = [self.act(matrix, p) for p in vector.to_polys()]
        return Vector.from_polys(polys, vector.rank)

    def reynolds(self, poly):
        """Average over the group; a projector onto the invariants."""
        acc = self.ring.zero()
        for w in self.elements:
            acc = acc + self.act(w, poly)
        return acc.scale(Fraction(1, self.order))

    def molien_series(self, nmax):
        """Average of 1/det(1 - q^2 w); the Hilbert series of the invariants."""
        total = {}
        for w in self.elements:
            det = _char_det(w)
            total = qpoly_add(total, qpoly_inverse_series(det, nmax))
        return {k: v / self.order for k, v in total.items() if v}

    def invariant_ring_series(self, nmax):
        h = HilbertSeries({0: 1}, self.invariant_degrees)
        return {k: Fraction(v) for k, v in h.coefficients(nmax).items()}

    def verify(self, nmax=40):
        """Check invariance, the order product and the Molien identity."""
        checks = []
        for k, p in enumerate(self.invariants):
            ok = all(self.act(g, p) == p for g in self.generators)
            checks.append(("invariance of candidate %d" % (k + 1), ok))
        exps = [d // 2 for d in self.invariant_degrees]
        prod = 1
        for e in exps:
            prod *= e
        checks.append(("product of half-degrees equals the group order",
                       prod == self.order))
        checks.append(("Molien series matches the invariant degrees",
                       self.molien_series(nmax) == self.invariant_ring_series(nmax)))
        try:
            basis = self.coinvariant_basis()
            checks.append(("coinvariant count equals the group order",
                           len(basis) == self.order))
            checks.append(("Kostant freeness identity", self._kostant_identity()))
        except ValueError:
            checks.append(("coinvariant basis is finite and of the right size", False))
        return VerificationReport(checks)

    def verify_or_raise(self, nmax=40):
        report = self.verify(nmax)
        if not report.ok:
            raise ValueError("invariant datum rejected: %s" % report.failures())
        return report

    def _invariant_gb(self):
        if self._inv_gb is None:
            cols = [Vector.from_polys([p], 1) for p in self.invariants]
            self._inv_gb = SubmoduleGB(self.ring, 1, cols)
        return self._inv_gb

    def coinvariant_basis(self):
        """Standard monomials modulo the invariant ideal (Kostant basis)."""
        if self._coinvariants is not None:
            return self._coinvariants
        leads = [v.lead()[0][1] for v in self._invariant_gb().gb]
        bounds = []
        for i in range(self.rank):
            pure = [e[i] for e in leads
                    if all(e[j] == 0 for j in range(self.rank) if j != i) and e[i] > 0]
            if not pure:
                raise ValueError(
                    "invariant ideal is not zero-dimensional; datum inconsistent")
            bounds.append(min(pure))
        basis = []
        stack = [()]
        for i in range(self.rank):
            stack = [s + (e,) for s in stack for e in range(bounds[i])]
        for exps in stack:
            if not any(all(l[j] <= exps[j] for j in range(self.rank)) for l in leads):
                basis.append(exps)
        basis.sort(key=lambda e: (self.ring.weighted_degree(e), e))
        if len(basis) != self.order:
            raise ValueError("coinvariant count %d differs from group order %d"
                             % (len(basis), self.order))
        self._coinvariants = basis
        return basis

    def poincare_polynomial(self):
        """Degree generating polynomial of the coinvariant basis."""
        out = {}
        for exps in self.coinvariant_basis():
            d = self.ring.weighted_degree(exps)
            out[d] = out.get(d, 0) + 1
        return out

    def _kostant_identity(self):
        # P_W(q) * prod(1-q^2) == prod(1 - q^(2 d_i)), exactly
        lhs = dict(self.poincare_polynomial())
        for d in self.ring.degrees:
            lhs = qpoly_mul(lhs, {0: 1, d: -1})
        rhs = {0: 1}
        for d in self.invariant_degrees:
            rhs = qpoly_mul(rhs, {0: 1, d: -1})
        return lhs == rhs

    def embedding(self):
        """Ring map from the invariant ring into R_T."""
        from .polyring import RingMap
        return RingMap(self.invariant_ring, self.ring, self.invariants)

    def expand(self, poly):
        """Write poly as sum of coinvariant basis monomials with invariant
        coefficients: returns {basis exps: Polynomial over the invariant ring}."""
        basis = set(self.coinvariant_basis())
        out = {}
        for exps, coeff in sorted(poly.terms.items()):
            for b, c in self._expand_monomial(exps).items():
                acc = out.get(b, self.invariant_ring.zero()) + c.scale(coeff)
                if acc.is_zero():
                    out.pop(b, None)
                else:
                    out[b] = acc
        assert all(b in basis for b in out)
        return out

    def _expand_monomial(self, exps):
        if exps in self._expand_cache:
            return self._expand_cache[exps]
        gb = self._invariant_gb()
        mono = Vector(self.ring, 1, {(0, exps): Fraction(1)})
        nf, coeffs = gb.reduce_with_certificate(mono)
        out = {}
        for (_, e), c in nf.data.items():
            out[e] = self.invariant_ring.constant(c)
        # mono = sum coeffs_i * invariant_i + nf; recurse into the cofactors
        for i, h in enumerate(coeffs):
            if h.is_zero():
                continue
            yi = self.invariant_ring.var(i)
            for he, hc in h.terms.items():
                sub = self._expand_monomial(he)
                for b, c in sub.items():
                    add = (yi * c).scale(hc)
                    acc = out.get(b, self.invariant_ring.zero()) + add
                    if acc.is_zero():
                        out.pop(b, None)
                    else:
                        out[b] = acc
        self._expand_cache[exps] = out
        return out

    def restrict_scalars(self, module):
        """Rewrite an R_T module presentation over the invariant ring.

        Generators are (module generator) x (coinvariant basis monomial);
        relations are the basis multiples of the original relations, expanded
        through the unique invariant-linear decomposition.  Hilbert series is
        preserved.
        """
        if module.ring != self.ring:
            raise ValueError("module does not live over the torus ring")
        if not self._kostant_identity():
            raise ValueError("datum rejected: coinvariant basis is not free")
        basis = self.coinvariant_basis()
        rg = self.invariant_ring
        gdeg = module.gens_degrees
        new_gens = [(k, b) for k in range(len(gdeg)) for b in basis]
        gen_index = {g: i for i, g in enumerate(new_gens)}
        new_gdeg = [gdeg[k] + self.ring.weighted_degree(b) for (k, b) in new_gens]
        cols = []
        for rel in module.relation_columns():
            for b in basis:
                bpoly = self.ring.monomial(b)
                data = {}
                for k in range(len(gdeg)):
                    comp = rel.component(k)
                    if comp.is_zero():
                        continue
                    for b2, c in self.expand(bpoly * comp).items():
                        idx = gen_index[(k, b2)]
                        for e, cf in c.terms.items():
                            key = (idx, e)
                            s = data.get(key, Fraction(0)) + cf
                            if s:
                                data[key] = s
                            else:
                                data.pop(key, None)
                v = Vector(rg, len(new_gens), data)
                if not v.is_zero():
                    cols.append(v)
        return FPModule.from_columns(rg, new_gdeg, cols)

    def expand_vector(self, vector, ambient_rank):
        """Coordinates of an R_T vector in the free invariant-ring module
        indexed by (ambient coordinate, coinvariant basis monomial)."""
        basis = self.coinvariant_basis()
        index = {(v, b): i for i, (v, b) in enumerate(
            (v, b) for v in range(ambient_rank) for b in basis)}
        data = {}
        for v in range(ambient_rank):
            comp = vector.component(v)
            if comp.is_zero():
                continue
            for b, c in self.expand(comp).items():
                idx = index[(v, b)]
                for e, cf in c.terms.items():
                    data[(idx, e)] = cf
        return Vector(self.invariant_ring, ambient_rank * len(basis), data)

    def invariant_module_layout(self, ambient_rank):
        basis = self.coinvariant_basis()
        degrees = []
        for v in range(ambient_rank):
            for b in basis:
                degrees.append(self.ring.weighted_degree(b))
        return degrees


class VerificationReport:
    def __init__(self, checks):
        self.checks = checks

    @property
    def ok(self):
        return all(ok for _, ok in self.checks)

    def failures(self):
        return [name for name, ok in self.checks if not ok]

    def __repr__(self):
        return "VerificationReport(ok=%s)" % self.ok


def _char_det(matrix):
    """det(1 - q^2 M) as a q-polynomial with Fraction coefficients."""
    n = len(matrix)
    # entries are univariate polynomials in q, stored {deg: Fraction}
    ent = [[{0: Fraction(1 if i == j else 0)} for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if matrix[i][j]:
                ent[i][j] = qpoly_add(ent[i][j], {2: -matrix[i][j]})
    return _poly_det(ent)


def _poly_det(ent):
    n = len(ent)
    if n == 0:
        return {0: Fraction(1)}
    if n == 1:
        return ent[0][0]
    out = {}
    for i in range(n):
        if not ent[i][0]:
            continue
        minor = [[ent[r][c] for c in range(1, n)] for r in range(n) if r != i]
        term = qpoly_mul(ent[i][0], _poly_det(minor))
        if i % 2:
            term = {k: -v for k, v in term.items()}
        out = qpoly_add(out, term)
    return out


class WEquivariantFreeModule:
    """Free R_T module on a finite index set with a compatible group action.

    The action pairs each group generator with a permutation of the index
    set; coefficients transform through the generator matrices.  Consistency
    (the action being a homomorphism) is checked while replaying the group
    closure.
    """

    def __init__(self, group, index_names, generator_permutations,
                 generator_matrices=None):
        self.group = group
        self.names = tuple(index_names)
        if len(generator_permutations) != len(group.generators):
            raise ValueError("need one permutation per group generator")
        self.gen_perms = []
        for perm in generator_permutations:
            if set(perm) != set(self.names) or set(perm.values()) != set(self.names):
                raise ValueError("permutation must be a bijection of the index set")
            self.gen_perms.append(dict(perm))
        # coefficient action defaults to the group's defining matrices; a
        # non-faithful action (e.g. all identity) is allowed as long as the
        # assignment extends to a homomorphism on the closure
        if generator_matrices is None:
            self.gen_mats = list(group.generators)
        else:
            self.gen_mats = [_mat(m) for m in generator_matrices]
        self._action_of = self._replay_closure()

    def _replay_closure(self):
        # walk the closure graph and check that elements with two different
        # generator words receive the same action (homomorphism check)
        ident = _identity(self.group.rank)
        actions = {ident: ({n: n for n in self.names}, ident)}
        for w in self.group.elements:
            for gi, g in enumerate(self.group.generators):
                prod = _mat_mul(g, w)
                perm_w, mat_w = actions[w]
                gperm = self.gen_perms[gi]
                composed = ({n: gperm[perm_w[n]] for n in self.names},
                            _mat_mul(self.gen_mats[gi], mat_w))
                if prod in actions:
                    if actions[prod] != composed:
                        raise ValueError("action is inconsistent with the group law")
                else:
                    actions[prod] = composed
        return actions

    @property
    def rank(self):
        return len(self.names)

    def act_tuple(self, w, vector):
        """(w.f)_v = w.(f at the preimage of v)."""
        perm, mat = self._action_of[w]
        inv = {perm[n]: n for n in self.names}
        idx = {n: i for i, n in enumerate(self.names)}
        comps = [None] * len(self.names)
        for v in self.names:
            src = vector.component(idx[inv[v]])
            comps[idx[v]] = self.group.act(mat, src)
        return Vector.from_polys(comps, len(self.names))

    def reynolds_tuple(self, vector):
        acc = Vector(self.group.ring, len(self.names), {})
        for w in self.group.elements:
            acc = acc + self.act_tuple(w, vector)
        return acc.scale(Fraction(1, self.group.order))

    def fixed_counts(self):
        return {w: sum(1 for n in self.names if self._action_of[w][0][n] == n)
                for w in self.group.elements}

    def invariants(self, submodule_gens=None, check_hilbert=True, nmax=40):
        """Invariant tuples as a module over the invariant ring.

        Generators: Reynolds images of (coinvariant basis) x (generators);
        relations by syzygies over the invariant ring.  When the full free
        module is taken (no submodule generators), the Hilbert series is
        compared against the Molien-weighted fixed-point count.
        """
        group = self.group
        ring = group.ring
        basis = group.coinvariant_basis()
        if submodule_gens is None:
            gens0 = [Vector.unit(ring, self.rank, i) for i in range(self.rank)]
        else:
            gens0 = list(submodule_gens)
        candidates = []
        for g in gens0:
            for b in basis:
                v = self.reynolds_tuple(g.poly_mul(ring.monomial(b)))
                if not v.is_zero():
                    candidates.append(v)
        coords = [group.expand_vector(v, self.rank) for v in candidates]
        amb_degrees = group.invariant_module_layout(self.rank)
        keep = minimal_generating_indices(coords, amb_degrees)
        candidates = [candidates[i] for i in keep]
        coords = [coords[i] for i in keep]
        rels = syzygy_basis(group.invariant_ring, self.rank * len(basis), coords)
        gdegs = _degrees_of(coords, amb_degrees)
        module = FPModule.from_columns(group.invariant_ring, gdegs, rels)
        result = InvariantsResult(module, candidates)
        if submodule_gens is None and check_hilbert:
            fixed = self.fixed_counts()
            total = {}
            for w in group.elements:
                if fixed[w]:
                    inv = qpoly_inverse_series(_char_det(self._action_of[w][1]), nmax)
                    total = qpoly_add(total, {k: v * fixed[w] for k, v in inv.items()})
            expected = {k: v / group.order for k, v in total.items() if v}
            got = {k: Fraction(v) for k, v in module.hilbert().coefficients(nmax).items()}
            result.molien_consistent = expected == got
        return result


class InvariantsResult:
    def __init__(self, module, generators):
        self.module = module
        self.generators = generators  # vectors over R_T
        self.molien_consistent = None


def cyclic_sign_group(names=None):
    """Order-2 group t -> -t in rank one, with invariant t^2."""
    ring = GradedPolynomialRing(names or ["t"], (2,))
    t = ring.var(0)
    return ReflectionGroup([[[-1]]], [t * t], ring=ring)


def symmetric_group_on_sum_zero(n, names=None):
    """S_n acting on coordinates x_1..x_{n-1} with x_n = -(x_1+...+x_{n-1}).

    Fundamental invariants are the restricted elementary symmetric
    polynomials e_2, ..., e_n.
    """
    if not 2 <= n <= 4:
        raise ValueError("only symmetric groups on 2..4 letters are built in")
    rank = n - 1
    ring = GradedPolynomialRing(names or ["x%d" % (i + 1) for i in range(rank)],
                                (2,) * rank)
    xs = ring.vars()
    last = ring.zero()
    for v in xs:
        last = last - v
    coords = xs + [last]
    gens = []
    # adjacent transpositions s_i: swap coords i, i+1
    for i in range(n - 1):
        images = list(coords)
        images[i], images[i + 1] = images[i + 1], images[i]
        # matrix columns: image of variable j expressed in the variables
        mat = [[Fraction(0)] * rank for _ in range(rank)]
        for j in range(rank):
            for exps, c in images[j].terms.items():
                var = exps.index(1)
                mat[var][j] = c
        gens.append(mat)
    invariants = []
    for k in range(2, n + 1):
        invariants.append(_elementary_symmetric(ring, coords, k))
    return ReflectionGroup(gens, invariants, ring=ring)


def _elementary_symmetric(ring, polys, k):
    from itertools import combinations
    acc = ring.zero()
    for combo in combinations(range(len(polys)), k):
        prod = ring.one()
        for i in combo:
            prod = prod * polys[i]
        acc = acc + prod
    return acc


def signed_permutation_rank2(names=None):
    """Order-8 rank-2 group generated by the swap and one sign flip."""
    ring = GradedPolynomialRing(names or ["x", "y"], (2, 2))
    x, y = ring.vars()
    swap = [[0, 1], [1, 0]]
    flip = [[1, 0], [0, -1]]
    return ReflectionGroup([swap, flip], [x * x + y * y, x * x * y * y], ring=ring)


def product_group(g1, g2):
    """Direct product acting blockwise, invariants lifted from the factors."""
    names = [n + "_1" for n in g1.ring.names] + [n + "_2" for n in g2.ring.names]
    ring = GradedPolynomialRing(names, g1.ring.degrees + g2.ring.degrees)
    r1, r2 = g1.rank, g2.rank

    def blow(mat, offset, size):
        full = [[Fraction(1 if i == j else 0) for j in range(r1 + r2)]
                for i in range(r1 + r2)]
        for i in range(size):
            for j in range(size):
                full[offset + i][offset + j] = mat[i][j]
        return full

    gens = [blow(g, 0, r1) for g in g1.generators]
    gens += [blow(g, r1, r2) for g in g2.generators]

    def lift(poly, offset):
        out = ring.zero()
        for exps, c in poly.terms.items():
            full = [0] * (r1 + r2)
            for i, e in enumerate(exps):
                full[offset + i] = e
            out = out + ring.monomial(full, c)
        return out

    invs = [lift(p, 0) for p in g1.invariants] + [lift(p, r1) for p in g2.invariants]
    return ReflectionGroup(gens, invs, ring=ring)


def group_from_json(obj):
    """Group JSON: {"rank": r, "generators": [...], "invariants": [...]}."""
    rank = int(obj["rank"])
    names = obj.get("vars") or ["t%d" % (i + 1) for i in range(rank)]
    ring = GradedPolynomialRing(names, (2,) * rank)
    gens = obj["generators"]
    invs = [ring.parse(s) for s in obj["invariants"]]
    return ReflectionGroup(gens, invs, ring=ring,
                           max_order=int(obj.get("max_order", 10080)))
