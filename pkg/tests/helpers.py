"""Shared test utilities: random homogeneous polynomials and modules."""

from fractions import Fraction

from equisyz.polyring import Polynomial, Vector
from equisyz.gradmod import FPModule


def monomials_of_degree(ring, degree):
    def rec(prefix, rem, i):
        if i == ring.num_vars - 1:
            d = ring.degrees[i]
            if rem >= 0 and rem % d == 0:
                yield prefix + (rem // d,)
            return
        d = ring.degrees[i]
        for e in range(rem // d + 1):
            yield from rec(prefix + (e,), rem - e * d, i + 1)
    return list(rec((), degree, 0))


def random_homogeneous(ring, degree, rng, density=0.7, bound=3):
    out = {}
    for m in monomials_of_degree(ring, degree):
        if rng.random() < density:
            c = rng.randint(-bound, bound)
            if c:
                out[m] = Fraction(c)
    return Polynomial(ring, out)


def random_module(ring, rng, max_gens=3, max_rels=3):
    ngens = rng.randint(1, max_gens)
    gdegs = sorted(rng.choice([0, 0, 2, 4]) for _ in range(ngens))
    nrels = rng.randint(0, max_rels)
    cols = []
    for _ in range(nrels):
        cdeg = max(gdegs) + rng.choice(ring.degrees) * rng.randint(1, 2)
        polys = [random_homogeneous(ring, cdeg - gd, rng) if cdeg >= gd
                 else ring.zero() for gd in gdegs]
        v = Vector.from_polys(polys, ngens)
        if not v.is_zero():
            cols.append(v)
    return FPModule.from_columns(ring, gdegs, cols)
