"""Exact octonion arithmetic and the 27-dimensional algebra of 3x3 octonion
Hermitian matrices under a*b = ab + ba.

The octonion multiplication table is generated once by three Cayley-Dickson
doublings from the reals with the convention (a,b)(c,d) = (ac - conj(d) b,
d a + b conj(c)); any fixed valid table works for the witness computations,
this one is pinned for determinism.  Coordinates are Python ints or Fractions
throughout, so every zero/nonzero verdict is exact.

The model serves as the numeric oracle: the Jordan and Lie-triple identities
evaluate to zero on every sample, while the degree-8 Glennie polynomial has
nonzero witnesses, separating it from the other two.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .term import COMMUTATIVE, Polynomial
from . import lang

OCT_DIM = 8


def _build_table():
    """(index, sign) for each basis product e_i e_j, via Cayley-Dickson doubling."""

    def mul(level, x, y):
        # x, y: coordinate tuples of length 2^level
        if level == 0:
            return (x[0] * y[0],)
        h = 1 << (level - 1)
        a, b = x[:h], x[h:]
        c, d = y[:h], y[h:]
        ac = mul(level - 1, a, c)
        db = mul(level - 1, conj(level - 1, d), b)
        da = mul(level - 1, d, a)
        bc = mul(level - 1, b, conj(level - 1, c))
        return tuple(p - q for p, q in zip(ac, db)) + tuple(p + q for p, q in zip(da, bc))

    def conj(level, x):
        if level == 0:
            return x
        return (x[0],) + tuple(-v for v in x[1:])

    table = []
    for i in range(OCT_DIM):
        row = []
        ei = tuple(1 if k == i else 0 for k in range(OCT_DIM))
        for j in range(OCT_DIM):
            ej = tuple(1 if k == j else 0 for k in range(OCT_DIM))
            prod = mul(3, ei, ej)
            nz = [(k, v) for k, v in enumerate(prod) if v]
            assert len(nz) == 1 and abs(nz[0][1]) == 1
            row.append(nz[0])
        table.append(tuple(row))
    return tuple(table)


OCT_TABLE = _build_table()


class Octonion:
    """Octonion with 8 exact coordinates on the basis e0..e7 (e0 = unit)."""

    __slots__ = ("co",)

    def __init__(self, co):
        self.co = tuple(co)
        if len(self.co) != OCT_DIM:
            raise ValueError("octonion needs 8 coordinates")

    @staticmethod
    def zero():
        return Octonion((0,) * OCT_DIM)

    @staticmethod
    def unit():
        return Octonion((1,) + (0,) * 7)

    @staticmethod
    def basis(i):
        return Octonion(tuple(1 if k == i else 0 for k in range(OCT_DIM)))

    def __add__(self, other):
        return Octonion(tuple(a + b for a, b in zip(self.co, other.co)))

    def __sub__(self, other):
        return Octonion(tuple(a - b for a, b in zip(self.co, other.co)))

    def __neg__(self):
        return Octonion(tuple(-a for a in self.co))

    def scale(self, c):
        return Octonion(tuple(c * a for a in self.co))

    def __mul__(self, other):
        out = [0] * OCT_DIM
        for i, a in enumerate(self.co):
            if not a:
                continue
            row = OCT_TABLE[i]
            for j, b in enumerate(other.co):
                if not b:
                    continue
                k, s = row[j]
                out[k] += a * b if s > 0 else -(a * b)
        return Octonion(out)

    def conjugate(self):
        return Octonion((self.co[0],) + tuple(-a for a in self.co[1:]))

    def re(self):
        return self.co[0]

    def norm(self):
        return sum(a * a for a in self.co)

    def is_zero(self):
        return all(a == 0 for a in self.co)

    def __eq__(self, other):
        return isinstance(other, Octonion) and all(a == b for a, b in zip(self.co, other.co))

    def __hash__(self):
        return hash(self.co)

    def __repr__(self):
        return "Octonion(%r)" % (self.co,)


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    return x * y


def associator(x, y, z):
    return x * (y * z) - (x * y) * z


@dataclass(frozen=True)
class AlbertElement:
    """Hermitian 3x3 octonion matrix: rational diagonal, octonion upper entries.

    Entry layout: diag (d1, d2, d3); x12, x13, x23 above the diagonal; the
    entries below are the conjugates, implicitly.
    """

    d: tuple           # three scalars
    x: tuple           # three Octonions: x12, x13, x23

    @staticmethod
    def zero():
        return AlbertElement((0, 0, 0), (Octonion.zero(),) * 3)

    @staticmethod
    def identity():
        return AlbertElement((1, 1, 1), (Octonion.zero(),) * 3)

    def matrix(self):
        """Full 3x3 matrix of octonions (scalars become multiples of e0)."""
        def sc(v):
            return Octonion((v,) + (0,) * 7)
        x12, x13, x23 = self.x
        return ((sc(self.d[0]), x12, x13),
                (x12.conjugate(), sc(self.d[1]), x23),
                (x13.conjugate(), x23.conjugate(), sc(self.d[2])))

    @staticmethod
    def from_matrix(m):
        for i in range(3):
            diag = m[i][i]
            if any(c != 0 for c in diag.co[1:]):
                raise ValueError("matrix is not Hermitian: imaginary diagonal")
            if m[i][(i + 1) % 3] != m[(i + 1) % 3][i].conjugate():
                raise ValueError("matrix is not Hermitian: off-diagonal mismatch")
        return AlbertElement((m[0][0].co[0], m[1][1].co[0], m[2][2].co[0]),
                             (m[0][1], m[0][2], m[1][2]))

    def __add__(self, other):
        return AlbertElement(tuple(a + b for a, b in zip(self.d, other.d)),
                             tuple(a + b for a, b in zip(self.x, other.x)))

    def __sub__(self, other):
        return AlbertElement(tuple(a - b for a, b in zip(self.d, other.d)),
                             tuple(a - b for a, b in zip(self.x, other.x)))

    def scale(self, c):
        return AlbertElement(tuple(c * a for a in self.d),
                             tuple(a.scale(c) for a in self.x))

    def is_zero(self):
        return all(a == 0 for a in self.d) and all(o.is_zero() for o in self.x)

    def coords(self):
        """All 27 coordinates: 3 diagonal + 3 x 8 octonion."""
        out = list(self.d)
        for o in self.x:
            out.extend(o.co)
        return out


def _mat_mul(a, b):
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            acc = Octonion.zero()
            for k in range(3):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def albert_star(a: AlbertElement, b: AlbertElement) -> AlbertElement:
    """a*b + b*a; the result is Hermitian (checked exactly)."""
    ma, mb = a.matrix(), b.matrix()
    ab, ba = _mat_mul(ma, mb), _mat_mul(mb, ma)
    s = tuple(tuple(ab[i][j] + ba[i][j] for j in range(3)) for i in range(3))
    return AlbertElement.from_matrix(s)


def evaluate(expr, assignment: dict) -> AlbertElement:
    """Exact evaluation of a commutative/star expression on Albert elements.

    The expression is expanded in commutative flavor (the product standing for
    the algebra's symmetrized product) and each monomial is evaluated with
    albert_star.  Lie brackets are rejected by the commutative expansion.
    """
    if isinstance(expr, (str, tuple)):
        poly = lang.expand(expr, COMMUTATIVE)
    elif isinstance(expr, Polynomial):
        if expr.flavor != COMMUTATIVE:
            raise ValueError("albert evaluation needs a commutative polynomial")
        poly = expr
    else:
        raise TypeError("expr must be DSL text, an expression tree, or a Polynomial")
    cache = {}

    def ev(m):
        got = cache.get(m)
        if got is not None:
            return got
        if m.is_leaf():
            res = assignment[m.enc[0]]
        else:
            l, r = m.children()
            res = albert_star(ev(l), ev(r))
        cache[m] = res
        return res

    acc = AlbertElement.zero()
    for m, c in poly.terms.items():
        fr = poly.field.to_fraction(c)
        acc = acc + ev(m).scale(fr)
    return acc


def random_element(rng: random.Random, bound=3) -> AlbertElement:
    """Deterministic sample with integer coordinates uniform in [-bound, bound]."""
    def r():
        return rng.randint(-bound, bound)
    return AlbertElement((r(), r(), r()),
                         tuple(Octonion(tuple(r() for _ in range(OCT_DIM))) for _ in range(3)))


def sample_report(expr, seed, samples, bound=3, workers=1):
    """Evaluate expr on seeded random element tuples; record the first nonzero witness.

    The sample stream is drawn sequentially from one seeded generator, so the
    report is a function of (expr, seed, samples, bound) alone; a worker pool
    only parallelizes the evaluations, reassembled by sample index.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    if isinstance(expr, str):
        tree = lang.parse(expr)
    else:
        tree = expr
    poly = lang.expand(tree, COMMUTATIVE)
    md = poly.multidegree()
    if md is None:
        nvars = max((v for m in poly.terms for v in m.enc if v), default=0)
    else:
        nvars = len(md)
    rng = random.Random(seed)
    batches = [{k: random_element(rng, bound) for k in range(1, nvars + 1)}
               for _ in range(samples)]
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as ex:
            values = list(ex.map(lambda elems: evaluate(poly, elems), batches))
    else:
        values = [evaluate(poly, elems) for elems in batches]
    def ser(coords):
        return [str(Fraction(x)) for x in coords]

    zero_count = 0
    witness = None
    for idx, (elems, val) in enumerate(zip(batches, values)):
        if val.is_zero():
            zero_count += 1
        elif witness is None:
            witness = {
                "sample_index": idx,
                "arguments": {("t%d" % k): ser(e.coords()) for k, e in sorted(elems.items())},
                "value": ser(val.coords()),
            }
    return {
        "seed": seed,
        "samples": samples,
        "bound": bound,
        "zero_count": zero_count,
        "nonzero_count": samples - zero_count,
        "witness": witness,
    }


def witness_json(report) -> str:
    def default(o):
        if isinstance(o, Fraction):
            return {"n": o.numerator, "d": o.denominator}
        raise TypeError(type(o))
    return json.dumps(report, indent=2, sort_keys=True, default=default)
