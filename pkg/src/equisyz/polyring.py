"""Exact graded polynomial arithmetic over Q.

Weighted polynomial rings with positive even variable degrees,
degree-reverse-lexicographic monomial order (position-over-term for free
modules, earlier columns greater), Buchberger's algorithm for submodules of
graded free modules, normal forms, syzygies via block elimination, and
Hilbert series from staircase counts.  Coefficients are exact rationals
throughout; nothing here ever touches a float.
"""

import re
from fractions import Fraction

__all__ = [
    "GradedPolynomialRing", "Polynomial", "Vector", "RingMap", "HilbertSeries",
    "buchberger", "groebner_basis", "normal_form", "divide", "s_vector",
    "SubmoduleGB", "syzygy_basis", "quotient_hilbert_series", "qpoly_mul",
    "qpoly_inverse_series",
]


def _fr(x):
    """Coerce ints, strings like '3/2' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("not an exact rational: %r" % (x,))


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


_TERM_SPLIT = re.compile(r"[+-]?[^+-]+")
_RATIONAL = re.compile(r"^\d+(/\d+)?$")
_VARPOW = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


class GradedPolynomialRing:
    """Polynomial ring over Q whose variables carry positive even weights."""

    def __init__(self, names, degrees=None):
        names = tuple(str(n) for n in names)
        if degrees is None:
            degrees = (2,) * len(names)
        degrees = tuple(int(d) for d in degrees)
        if len(degrees) != len(names):
            raise ValueError("need one degree per variable")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be pairwise distinct")
        for d in degrees:
            if d <= 0 or d % 2 != 0:
                raise ValueError("variable degrees must be positive even integers")
        self.names = names
        self.degrees = degrees
        self.num_vars = len(names)
        self.zero_exps = (0,) * self.num_vars

    def __eq__(self, other):
        return (isinstance(other, GradedPolynomialRing)
                and self.names == other.names and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __repr__(self):
        return "GradedPolynomialRing(%s, degrees=%s)" % (list(self.names), list(self.degrees))

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {self.zero_exps: Fraction(1)})

    def constant(self, c):
        c = _fr(c)
        return Polynomial(self, {self.zero_exps: c} if c else {})

    def var(self, i):
        exps = tuple(1 if j == i else 0 for j in range(self.num_vars))
        return Polynomial(self, {exps: Fraction(1)})

    def vars(self):
        return [self.var(i) for i in range(self.num_vars)]

    def monomial(self, exps, coeff=1):
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.num_vars or any(e < 0 for e in exps):
            raise ValueError("bad exponent vector %r" % (exps,))
        coeff = _fr(coeff)
        return Polynomial(self, {exps: coeff} if coeff else {})

    def from_terms(self, terms):
        out = {}
        for exps, coeff in terms:
            exps = tuple(int(e) for e in exps)
            c = out.get(exps, Fraction(0)) + _fr(coeff)
            if c:
                out[exps] = c
            else:
                out.pop(exps, None)
        return Polynomial(self, out)

    def weighted_degree(self, exps):
        return sum(e * d for e, d in zip(exps, self.degrees))

    def monomial_key(self, exps):
        # degrevlex refined by weighted degree: larger key = larger monomial
        return (self.weighted_degree(exps), tuple(-e for e in reversed(exps)))

    def vector_key(self, col_exps):
        # position over term, earlier columns greater
        col, exps = col_exps
        return (-col,) + self.monomial_key(exps)

    def parse(self, text):
        """Parse polynomial text like ``3/2*x^2*y - y^3``."""
        s = str(text).replace(" ", "")
        if s in ("", "0"):
            return self.zero()
        index = {n: i for i, n in enumerate(self.names)}
        terms = []
        for chunk in _TERM_SPLIT.findall(s):
            sign = Fraction(1)
            if chunk[0] == "+":
                chunk = chunk[1:]
            elif chunk[0] == "-":
                sign = Fraction(-1)
                chunk = chunk[1:]
            if not chunk:
                raise ValueError("empty term in %r" % text)
            coeff = sign
            exps = [0] * self.num_vars
            for factor in chunk.split("*"):
                if _RATIONAL.match(factor):
                    coeff *= Fraction(factor)
                    continue
                m = _VARPOW.match(factor)
                if not m or m.group(1) not in index:
                    raise ValueError("bad factor %r in %r" % (factor, text))
                exps[index[m.group(1)]] += int(m.group(2) or 1)
            terms.append((tuple(exps), coeff))
        return self.from_terms(terms)

    def poly_from_json(self, obj):
        """Polynomial from text or a list of ``{"coeff": "3/2", "exps": [...]}``."""
        if isinstance(obj, str):
            return self.parse(obj)
        if isinstance(obj, (int,)):
            return self.constant(obj)
        if isinstance(obj, list):
            return self.from_terms((tuple(t["exps"]), _fr(t["coeff"])) for t in obj)
        raise ValueError("unrecognized polynomial JSON: %r" % (obj,))

    def descriptor(self):
        return {"vars": list(self.names), "degrees": list(self.degrees)}

    @classmethod
    def from_descriptor(cls, obj):
        return cls(obj["vars"], obj.get("degrees"))


class Polynomial:
    """Immutable sparse polynomial: exponent vector -> nonzero rational."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _mono_mul(e1, e2)
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        c = _fr(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def homogeneous_degree(self):
        """Common weighted degree, None for 0; raises if inhomogeneous."""
        if not self.terms:
            return None
        degs = {self.ring.weighted_degree(e) for e in self.terms}
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous: %s" % self)
        return degs.pop()

    def is_homogeneous(self):
        try:
            self.homogeneous_degree()
            return True
        except ValueError:
            return False

    def leading_term(self):
        e = max(self.terms, key=self.ring.monomial_key)
        return e, self.terms[e]

    def monic(self):
        if not self.terms:
            return self
        _, c = self.leading_term()
        return self.scale(1 / c)

    def constant_term(self):
        return self.terms.get(self.ring.zero_exps, Fraction(0))

    def substitute(self, target_ring, images):
        """Apply the ring map sending variable i to images[i]."""
        if len(images) != self.ring.num_vars:
            raise ValueError("need one image per variable")
        out = target_ring.zero()
        cache = {}
        for exps, coeff in sorted(self.terms.items()):
            m = target_ring.one()
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    m = m * cache[key]
            out = out + m.scale(coeff)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: self.ring.monomial_key(t[0]),
                       reverse=True)
        pieces = []
        for exps, coeff in items:
            factors = []
            for name, e in zip(self.ring.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            mono = "*".join(factors)
            a = abs(coeff)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = "%s*%s" % (a, mono)
            pieces.append(("- " if coeff < 0 else "+ ") + body)
        text = " ".join(pieces)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    __repr__ = __str__

    def to_json(self):
        items = sorted(self.terms.items(), key=lambda t: self.ring.monomial_key(t[0]),
                       reverse=True)
        return [{"coeff": str(c), "exps": list(e)} for e, c in items]


class RingMap:
    """Graded ring homomorphism determined by homogeneous variable images."""

    def __init__(self, source, target, images):
        if len(images) != source.num_vars:
            raise ValueError("need one image per source variable")
        for i, img in enumerate(images):
            if img.ring != target:
                raise ValueError("image %d lives in the wrong ring" % i)
            d = img.homogeneous_degree()
            if d is None or d != source.degrees[i]:
                raise ValueError("image of variable %d has degree %s, expected %d"
                                 % (i, d, source.degrees[i]))
        self.source = source
        self.target = target
        self.images = tuple(images)

    def __call__(self, poly):
        if poly.ring != self.source:
            raise ValueError("ring mismatch")
        return poly.substitute(self.target, self.images)


class Vector:
    """Element of a free module R^rank, stored as {(col, exps): coeff}."""

    __slots__ = ("ring", "rank", "data")

    def __init__(self, ring, rank, data):
        self.ring = ring
        self.rank = rank
        self.data = {k: c for k, c in data.items() if c}

    @classmethod
    def from_polys(cls, polys, rank=None):
        rank = len(polys) if rank is None else rank
        ring = polys[0].ring
        data = {}
        for i, p in enumerate(polys):
            for e, c in p.terms.items():
                data[(i, e)] = c
        return cls(ring, rank, data)

    @classmethod
    def unit(cls, ring, rank, col):
        return cls(ring, rank, {(col, ring.zero_exps): Fraction(1)})

    def is_zero(self):
        return not self.data

    def component(self, i):
        return Polynomial(self.ring, {e: c for (col, e), c in self.data.items() if col == i})

    def to_polys(self):
        return [self.component(i) for i in range(self.rank)]

    def __add__(self, other):
        out = dict(self.data)
        for k, c in other.data.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Vector(self.ring, self.rank, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = _fr(c)
        if not c:
            return Vector(self.ring, self.rank, {})
        return Vector(self.ring, self.rank, {k: c * v for k, v in self.data.items()})

    def mono_mul(self, exps, coeff=1):
        coeff = _fr(coeff)
        if not coeff:
            return Vector(self.ring, self.rank, {})
        return Vector(self.ring, self.rank,
                      {(col, _mono_mul(e, exps)): coeff * c
                       for (col, e), c in self.data.items()})

    def poly_mul(self, poly):
        out = Vector(self.ring, self.rank, {})
        for e, c in poly.terms.items():
            out = out + self.mono_mul(e, c)
        return out

    def lead(self):
        k = max(self.data, key=self.ring.vector_key)
        return k, self.data[k]

    def monic(self):
        if not self.data:
            return self
        _, c = self.lead()
        return self.scale(1 / c)

    def homogeneous_degree(self, col_degrees):
        """Common degree with generator shifts, None for 0; raises if mixed."""
        if not self.data:
            return None
        degs = {self.ring.weighted_degree(e) + col_degrees[col]
                for (col, e) in self.data}
        if len(degs) > 1:
            raise ValueError("vector is not homogeneous")
        return degs.pop()

    def __eq__(self, other):
        return (isinstance(other, Vector) and self.ring == other.ring
                and self.rank == other.rank and self.data == other.data)

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.to_polys()) + ")"

    __repr__ = __str__


def s_vector(f, g):
    """S-vector of two monic vectors whose leads sit in the same column."""
    (cf, ef), _ = f.lead()
    (cg, eg), _ = g.lead()
    assert cf == cg
    m = _mono_lcm(ef, eg)
    return f.mono_mul(_mono_div(m, ef)) - g.mono_mul(_mono_div(m, eg))


def divide(f, divisors):
    """Full division: f = sum(q_i * divisors[i]) + remainder.

    No remainder term is divisible by any divisor's lead.  Returns
    (quotients as Polynomials, remainder Vector).
    """
    ring = f.ring
    leads = [g.lead() for g in divisors]
    quots = [{} for _ in divisors]
    rem = {}
    p = dict(f.data)
    while p:
        key = max(p, key=ring.vector_key)
        coeff = p[key]
        col, exps = key
        for i, ((gc, ge), glc) in enumerate(leads):
            if gc == col and _mono_divides(ge, exps):
                q = _mono_div(exps, ge)
                factor = coeff / glc
                quots[i][q] = quots[i].get(q, Fraction(0)) + factor
                for (c2, e2), v2 in divisors[i].data.items():
                    k2 = (c2, _mono_mul(e2, q))
                    s = p.get(k2, Fraction(0)) - factor * v2
                    if s:
                        p[k2] = s
                    else:
                        p.pop(k2, None)
                break
        else:
            rem[key] = coeff
            del p[key]
    return ([Polynomial(ring, q) for q in quots],
            Vector(ring, f.rank, rem))


def normal_form(f, basis):
    """Remainder of f under full division by basis (a Groebner basis)."""
    if isinstance(f, Polynomial):
        v = Vector.from_polys([f], rank=1)
        b = [g if isinstance(g, Vector) else Vector.from_polys([g], rank=1) for g in basis]
        b = [g for g in b if not g.is_zero()]
        if not b:
            return f
        return divide(v, b)[1].component(0)
    basis = [g for g in basis if not g.is_zero()]
    if not basis:
        return f
    return divide(f, basis)[1]


def _single_column(v):
    cols = {col for (col, _) in v.data}
    return len(cols) == 1


def _update_pairs(basis, pairs, leads, new, ring):
    """Gebauer-Moeller style pair update, restricted to same-column pairs."""
    tnew = leads[new]

    def lcm_key(i, j):
        return _mono_lcm(leads[i][1], leads[j][1])

    kept = set()
    for (i, j) in pairs:
        lij = lcm_key(i, j)
        if (leads[i][0] == tnew[0]
                and _mono_divides(tnew[1], lij)
                and lij != _mono_lcm(leads[i][1], tnew[1])
                and lij != _mono_lcm(leads[j][1], tnew[1])):
            continue  # chain criterion: (i,new) and (j,new) cover (i,j)
        kept.add((i, j))

    cands = [i for i in range(new) if leads[i][0] == tnew[0]]
    buckets = {}
    for i in cands:
        buckets.setdefault(_mono_lcm(leads[i][1], tnew[1]), []).append(i)
    minimal = []
    for m in sorted(buckets, key=ring.monomial_key):
        if all(not _mono_divides(m2, m) or m2 == m for m2 in minimal):
            minimal.append(m)
    for m in minimal:
        bucket = buckets[m]
        coprime = any(
            _mono_lcm(leads[i][1], tnew[1]) == _mono_mul(leads[i][1], tnew[1])
            and _single_column(basis[i]) and _single_column(basis[new])
            for i in bucket)
        if coprime:
            continue  # product criterion (effectively the ideal case)
        kept.add((min(bucket), new))
    return kept


def buchberger(vectors, reduce_output=True, select="normal"):
    """Reduced Groebner basis of the submodule generated by the vectors.

    Pair selection is by smallest lcm in the module order ("normal") or by
    smallest sugar degree first ("sugar"; identical behaviour on homogeneous
    input, where the sugar of a pair is its lcm degree).  Chain elimination
    is always on; the product criterion is applied only to single-column
    (ideal-like) elements.  Deterministic for a fixed input order.
    """
    if select not in ("normal", "sugar"):
        raise ValueError("unknown selection strategy %r" % select)
    vectors = [v.monic() for v in vectors if not v.is_zero()]
    if not vectors:
        return []
    ring = vectors[0].ring

    def pair_key(p):
        lcm = (leads[p[0]][0], _mono_lcm(leads[p[0]][1], leads[p[1]][1]))
        if select == "sugar":
            return (ring.weighted_degree(lcm[1]), ring.vector_key(lcm), p)
        return (ring.vector_key(lcm), p)

    basis = []
    leads = []
    pairs = set()
    for v in vectors:
        basis.append(v)
        leads.append(v.lead()[0])
        pairs = _update_pairs(basis, pairs, leads, len(basis) - 1, ring)
    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        s = s_vector(basis[i], basis[j])
        r = normal_form(s, basis)
        if r.is_zero():
            continue
        basis.append(r.monic())
        leads.append(r.lead()[0])
        pairs = _update_pairs(basis, pairs, leads, len(basis) - 1, ring)
    if not reduce_output:
        return basis
    # minimalize: drop elements whose lead is divisible by another lead
    keep = []
    for i, v in enumerate(basis):
        (ci, ei) = leads[i]
        ok = True
        for j in range(len(basis)):
            if j == i:
                continue
            cj, ej = leads[j]
            if cj == ci and _mono_divides(ej, ei) and (ej != ei or j < i):
                ok = False
                break
        if ok:
            keep.append(v)
    # interreduce tails
    out = []
    for i, v in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        out.append(normal_form(v, others).monic() if others else v)
    out.sort(key=lambda v: ring.vector_key(v.lead()[0]))
    return out


class SubmoduleGB:
    """Groebner data for a submodule of R^rank, with lifts and syzygies.

    Built from generators g_i via the block construction g_i + e_i in
    R^rank + R^s under position-over-term; the aux block is smaller than
    every ambient position, so reduced elements supported purely in the aux
    block are exactly the syzygies, and reducing (v, 0) yields both the
    normal form of v and division certificates against the original g_i.
    """

    def __init__(self, ring, rank, gens):
        self.ring = ring
        self.rank = rank
        self.gens = list(gens)
        s = len(self.gens)
        ext = []
        for i, g in enumerate(self.gens):
            data = dict(g.data)
            data[(rank + i, ring.zero_exps)] = Fraction(1)
            ext.append(Vector(ring, rank + s, data))
        self._ext_gb = buchberger(ext)
        self.gb = []
        self._syz = []
        for v in self._ext_gb:
            (col, _), _ = v.lead()
            if col < rank:
                amb = {(c, e): cv for (c, e), cv in v.data.items() if c < rank}
                self.gb.append(Vector(ring, rank, amb).monic())
            else:
                shifted = {(c - rank, e): cv for (c, e), cv in v.data.items()}
                self._syz.append(Vector(ring, s, shifted).monic())

    def normal_form(self, v):
        if not self.gb:
            return v
        return divide(v, self.gb)[1]

    def contains(self, v):
        return self.normal_form(v).is_zero()

    def reduce_with_certificate(self, v):
        """(normal form of v, coefficients q) with v = sum(q_i gens[i]) + nf."""
        s = len(self.gens)
        ext = Vector(self.ring, self.rank + s,
                     {(c, e): cv for (c, e), cv in v.data.items()})
        if not self._ext_gb:
            return v, [self.ring.zero()] * s
        rem = divide(ext, self._ext_gb)[1]
        nf = Vector(self.ring, self.rank,
                    {(c, e): cv for (c, e), cv in rem.data.items() if c < self.rank})
        coeffs = [self.ring.zero()] * s
        for (c, e), cv in rem.data.items():
            if c >= self.rank:
                coeffs[c - self.rank] = coeffs[c - self.rank] + Polynomial(
                    self.ring, {e: -cv})
        return nf, coeffs

    def lift(self, v):
        """Coefficients q with v = sum(q_i * gens[i]), or None if not a member."""
        nf, coeffs = self.reduce_with_certificate(v)
        return coeffs if nf.is_zero() else None

    def syzygies(self):
        """Generators of the syzygy module of the original generators."""
        return list(self._syz)


def syzygy_basis(ring, rank, gens):
    """Generators of {c in R^s : sum c_i gens[i] = 0}."""
    if not gens:
        return []
    return SubmoduleGB(ring, rank, gens).syzygies()


def groebner_basis(generators, col_degrees=None, select="normal"):
    """Reduced Groebner basis of polynomials or free-module vectors.

    Inhomogeneous input is rejected: polynomials must be homogeneous, and
    vectors are checked against col_degrees when given.
    """
    vecs = []
    for g in generators:
        if isinstance(g, Polynomial):
            if not g.is_zero() and not g.is_homogeneous():
                raise ValueError("inhomogeneous generator: %s" % g)
            vecs.append(Vector.from_polys([g], 1))
        else:
            if col_degrees is not None and not g.is_zero():
                g.homogeneous_degree(col_degrees)
            vecs.append(g)
    return buchberger(vecs, select=select)


# ---------------------------------------------------------------------------
# Hilbert series

_staircase_memo = {}


def _staircase_numerator(ring, gens):
    """Numerator of Hilb(R/I) over prod(1-q^d_i) for a monomial ideal I."""
    gens = _minimal_monomials(gens)
    key = (ring, gens)
    if key in _staircase_memo:
        return _staircase_memo[key]
    if any(all(e == 0 for e in g) for g in gens):
        out = {}
    elif not gens:
        out = {0: 1}
    else:
        occur = [0] * ring.num_vars
        for g in gens:
            for i, e in enumerate(g):
                if e:
                    occur[i] += 1
        best = max(range(ring.num_vars), key=lambda i: occur[i])
        if occur[best] <= 1:
            # pairwise coprime: product formula
            out = {0: 1}
            for g in gens:
                out = qpoly_mul(out, {0: 1, ring.weighted_degree(g): -1})
        else:
            pivot = tuple(1 if i == best else 0 for i in range(ring.num_vars))
            plus = [g for g in gens if g[best] == 0] + [pivot]
            colon = [tuple(e - 1 if i == best and e > 0 else e
                           for i, e in enumerate(g)) for g in gens]
            out = qpoly_add(
                _staircase_numerator(ring, plus),
                qpoly_shift(_staircase_numerator(ring, colon),
                            ring.degrees[best]))
    _staircase_memo[key] = out
    return out


def _minimal_monomials(gens):
    gens = sorted(set(gens))
    out = []
    for g in gens:
        if not any(_mono_divides(h, g) for h in out if h != g):
            out = [h for h in out if not _mono_divides(g, h)]
            out.append(g)
    return tuple(sorted(out))


def qpoly_add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def qpoly_shift(a, d):
    return {k + d: v for k, v in a.items()}


def qpoly_mul(a, b):
    out = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = k1 + k2
            s = out.get(k, 0) + v1 * v2
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def qpoly_inverse_series(p, nmax):
    """Power-series inverse of p (constant term 1) through degree nmax."""
    assert p.get(0) == 1
    inv = {0: Fraction(1)}
    for n in range(1, nmax + 1):
        acc = Fraction(0)
        for k, v in p.items():
            if 0 < k <= n:
                acc += _fr(v) * inv.get(n - k, Fraction(0))
        if acc:
            inv[n] = -acc
    return inv


class HilbertSeries:
    """Laurent numerator over prod(1 - q^d) for the ring's variable degrees."""

    def __init__(self, numerator, denominator_degrees):
        self.numerator = {int(k): int(v) for k, v in numerator.items() if v}
        self.denominator_degrees = tuple(sorted(int(d) for d in denominator_degrees))

    def is_zero(self):
        return not self.numerator

    def min_degree(self):
        return min(self.numerator) if self.numerator else None

    def coefficients(self, nmax):
        """Dict degree -> coefficient for all degrees <= nmax."""
        if not self.numerator:
            return {}
        lo = min(self.numerator)
        span = nmax - lo
        if span < 0:
            return {}
        dp = [0] * (span + 1)
        dp[0] = 1
        for d in self.denominator_degrees:
            for k in range(d, span + 1):
                dp[k] += dp[k - d]
        out = {}
        for n in range(lo, nmax + 1):
            c = 0
            for m, v in self.numerator.items():
                if 0 <= n - m <= span:
                    c += v * dp[n - m]
            if c:
                out[n] = c
        return out

    def series_equal(self, other, nmax):
        return self.coefficients(nmax) == other.coefficients(nmax)

    def series_leq(self, other, nmax):
        a, b = self.coefficients(nmax), other.coefficients(nmax)
        return all(v <= b.get(k, 0) for k, v in a.items())

    def pole_order(self):
        """Order of the pole at q = 1 (the Krull dimension); None if zero."""
        if not self.numerator:
            return None
        lo = min(self.numerator)
        hi = max(self.numerator)
        coeffs = [self.numerator.get(i, 0) for i in range(lo, hi + 1)]
        mult = 0
        while sum(coeffs) == 0:
            acc = 0
            new = []
            for c in coeffs[:-1]:
                acc += c
                new.append(acc)
            coeffs = new if new else [0]
            mult += 1
            if not any(coeffs):
                break
        return len(self.denominator_degrees) - mult

    def times_qpoly(self, p):
        return HilbertSeries(qpoly_mul(self.numerator, p), self.denominator_degrees)

    def plus(self, other):
        assert self.denominator_degrees == other.denominator_degrees
        return HilbertSeries(qpoly_add(self.numerator, other.numerator),
                             self.denominator_degrees)

    def minus(self, other):
        assert self.denominator_degrees == other.denominator_degrees
        neg = {k: -v for k, v in other.numerator.items()}
        return HilbertSeries(qpoly_add(self.numerator, neg), self.denominator_degrees)

    def __eq__(self, other):
        return (isinstance(other, HilbertSeries)
                and self.numerator == other.numerator
                and self.denominator_degrees == other.denominator_degrees)

    def __str__(self):
        if not self.numerator:
            return "0"
        num = " + ".join("%d*q^%d" % (v, k) if k else str(v)
                         for k, v in sorted(self.numerator.items()))
        den = "*".join("(1-q^%d)" % d for d in self.denominator_degrees)
        return "(%s)/%s" % (num, den) if den else num

    __repr__ = __str__


def quotient_hilbert_series(ring, col_degrees, gb):
    """Hilbert series of F/span(gb) where F has the given generator degrees.

    Only the leading-term staircase of the (Groebner) basis is used.
    """
    per_col = {i: [] for i in range(len(col_degrees))}
    for v in gb:
        (col, exps), _ = v.lead()
        per_col[col].append(exps)
    num = {}
    for i, gdeg in enumerate(col_degrees):
        num = qpoly_add(num, qpoly_shift(_staircase_numerator(
            ring, tuple(per_col[i])), gdeg))
    return HilbertSeries(num, ring.degrees)
