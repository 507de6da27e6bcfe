"""Componentwise construction of relatively-free algebras F(vars)/T(identities).

Each multihomogeneous component is built inductively: its coordinate space is
indexed by pairs (u, v) of basis elements of lower components (one block per
multidegree split), and the component is that pair space modulo all blended
substitution instances of the defining identities whose arguments are lower
basis elements.  For multilinear identities these are plain basis tuples; for
multihomogeneous ones each variable receives a multiset of basis elements and
the instance sums over its distinct arrangements, which is the correct
consequence generator in every characteristic.

This keeps the linear algebra tiny compared to free-monomial coordinates
(e.g. 5k pair columns instead of 240 240 monomials in the heaviest degree-8
component) at the price of building all lower components first.

Two implementations share the enumeration:

* ModularQuotient: GF(p) with dense numpy rows.  For p < 2^20 every product
  and accumulated dot fits in the 53-bit float mantissa, so BLAS matmuls are
  exact integer arithmetic and the reduced basis is canonical.
* ExactQuotient: QQ with sparse Fraction rows.  Large components replay only
  the rows that pivoted modulo two independent primes; replayed rows are
  honest T-ideal members, so zero residuals stay proofs.  Any rank mismatch
  falls back to full generation.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .term import (COMMUTATIVE, PLANAR, GF, QQ, Monomial, Polynomial, mdeg,
                   mdeg_add, mdeg_key, mdeg_total, splits2)

SELECTION_PRIMES = (999983, 999979)
FULL_COLS_CAP = 420          # exact components at most this wide skip the modular pre-pass
DEFAULT_DEGREE_CAP = 8
MAX_PAIR_COLUMNS = 100_000
BATCH_ROWS = 256


class BuildError(RuntimeError):
    pass


class DegreeCapExceeded(BuildError):
    pass


class BudgetExceeded(BuildError):
    pass


# ---------------------------------------------------------------------------
# Shared split/enumeration machinery.
# ---------------------------------------------------------------------------

def component_splits(d, flavor):
    """Canonical list of root splits of a component: ordered pairs for planar,
    unordered (d1 <= d2) for commutative."""
    if flavor == PLANAR:
        return splits2(d)
    out = []
    for d1, d2 in splits2(d):
        if mdeg_key(d1) <= mdeg_key(d2):
            out.append((d1, d2))
    return out


def tri_size(n):
    return n * (n + 1) // 2


def tri_index(i, j, n):
    """Index of (i, j), i <= j, in row-major upper-triangular order."""
    return i * n - i * (i - 1) // 2 + (j - i)


def block_size(flavor, d1, d2, n1, n2):
    if flavor == COMMUTATIVE and d1 == d2:
        return tri_size(n1)
    return n1 * n2


def identity_profile(f: Polynomial):
    """[(variable, multiplicity), ...] for a multihomogeneous identity."""
    fd = f.multidegree()
    if fd is None:
        raise BuildError("defining identity is not multihomogeneous: %s" % (f,))
    return [(v + 1, fd[v]) for v in range(len(fd)) if fd[v] > 0]


def _sub_mdegs_upto(d):
    """Nonzero multidegrees <= d componentwise (including d), canonically sorted."""
    ranges = [range(x + 1) for x in d]
    out = []

    def rec(i, acc):
        if i == len(ranges):
            t = mdeg(acc)
            if t:
                out.append(t)
            return
        for v in ranges[i]:
            rec(i + 1, acc + [v])

    rec(0, [])
    out.sort(key=mdeg_key)
    return out


def iter_relation_specs(identities, d, dim_of):
    """Deterministic stream of blended-instance specs at multidegree d.

    Yields (row_index, identity_index, assignment) where assignment maps each
    identity variable to a canonically sorted tuple of (mdeg, basis_index)
    pairs (a multiset over lower-component basis elements).  The enumeration
    order depends only on the identities and the lower component dimensions,
    so a row index addresses the same row in every field.
    """
    total = mdeg_total(d)
    all_sub = _sub_mdegs_upto(d)
    row_index = 0
    for f_idx, f in enumerate(identities):
        profile = identity_profile(f)
        slots = [(v, k) for v, m in profile for k in range(m)]
        nslots = len(slots)
        if nslots > total:
            continue

        # Enumerate per-slot multidegrees: nondecreasing within each variable.
        def mdeg_assignments(slot_i, remaining, acc):
            if slot_i == nslots:
                if mdeg_total(remaining) == 0:
                    yield tuple(acc)
                return
            var, k = slots[slot_i]
            rem_slots = nslots - slot_i
            rem_total = mdeg_total(remaining)
            for e in all_sub:
                if k > 0 and mdeg_key(e) < mdeg_key(acc[-1][1]):
                    continue
                if not _fits(e, remaining):
                    continue
                if mdeg_total(e) > rem_total - (rem_slots - 1):
                    continue
                yield from mdeg_assignments(slot_i + 1, _msub(remaining, e), acc + [(var, e)])

        for mASS in mdeg_assignments(0, d, []):
            # group by variable, then enumerate basis indices canonically
            per_var = {}
            for var, e in mASS:
                per_var.setdefault(var, []).append(e)
            var_names = sorted(per_var)
            index_pools = []
            for var in var_names:
                es = per_var[var]
                groups = [(e, len(list(g))) for e, g in itertools.groupby(es)]
                pools = []
                for e, cnt in groups:
                    pools.append((e, list(itertools.combinations_with_replacement(range(dim_of(e)), cnt))))
                index_pools.append(pools)
            for combo in _product_pools(index_pools):
                assignment = {}
                for var, chosen in zip(var_names, combo):
                    ms = []
                    for e, idxs in chosen:
                        ms.extend((e, i) for i in idxs)
                    assignment[var] = tuple(ms)
                yield row_index, f_idx, assignment
                row_index += 1


def _product_pools(index_pools):
    """Cartesian product over variables of (per-group index choices)."""
    per_var_choices = []
    for pools in index_pools:
        groups = [[(e, idxs) for idxs in choices] for e, choices in pools]
        per_var_choices.append([tuple(sel) for sel in itertools.product(*groups)])
    return itertools.product(*per_var_choices)


def _fits(e, budget):
    if len(e) > len(budget):
        return False
    return all(x <= y for x, y in zip(e, budget + (0,) * len(e)))


def _msub(budget, e):
    n = len(budget)
    e = e + (0,) * (n - len(e))
    return tuple(x - y for x, y in zip(budget, e))


def arrangements_of(multiset):
    """Distinct orderings of a multiset of (mdeg, index) pairs."""
    return sorted(set(itertools.permutations(multiset)))


# ---------------------------------------------------------------------------
# GF(p) quotient with dense numpy elimination (exact in float64 for p < 2^20).
# ---------------------------------------------------------------------------

class DenseModRREF:
    """Reduced row echelon basis over GF(p) kept as a dense float64 matrix."""

    def __init__(self, p, ncols):
        if (p - 1) ** 2 * 2 > 2 ** 53:
            raise BuildError("modulus too large for exact float64 elimination")
        self.p = p
        self.ncols = ncols
        self.chunk = max(1, (2 ** 53) // ((p - 1) ** 2))
        self.rows = np.zeros((0, ncols))
        self.pivcols = np.zeros(0, dtype=np.int64)

    @property
    def rank(self):
        return self.rows.shape[0]

    def _matmul_mod(self, X, B):
        k = B.shape[0]
        if k <= self.chunk:
            return (X @ B) % self.p
        acc = np.zeros((X.shape[0], B.shape[1]))
        for s in range(0, k, self.chunk):
            acc += (X[:, s:s + self.chunk] @ B[s:s + self.chunk]) % self.p
            acc %= self.p
        return acc

    def reduce_batch(self, M):
        """Batch M (k, ncols) -> fully reduced against the current basis."""
        if self.rank and M.size:
            X = M[:, self.pivcols]
            if np.any(X):
                M = (M - self._matmul_mod(X, self.rows)) % self.p
        return M

    def add_batch(self, M):
        """Insert a batch; returns positions within the batch that pivoted.

        Inside the batch, mod-p reduction is deferred: each elimination step
        changes an entry by at most (p-1)^2 and a batch holds fewer than
        2^53/p^2 pivots, so every intermediate value stays an exact float64
        integer and a single final reduction suffices.
        """
        p = self.p
        if M.shape[0] >= self.chunk:
            raise BuildError("batch too large for deferred reduction")
        M = self.reduce_batch(M)
        new = []
        for i in range(M.shape[0]):
            row = np.mod(M[i], p)
            nz = np.nonzero(row)[0]
            if nz.size == 0:
                M[i] = 0.0
                continue
            lead = int(nz[0])
            inv = pow(int(row[lead]), p - 2, p)
            row = (row * inv) % p
            row[lead] = 1.0
            M[i] = row
            col = np.mod(M[:, lead], p)
            col[i] = 0.0
            touched = np.nonzero(col)[0]
            if touched.size:
                M[touched] -= np.outer(col[touched], row)
            new.append((lead, i))
        if new:
            newrows = np.mod(M[[i for (_, i) in new]], p)
            newcols = np.array([c for (c, _) in new], dtype=np.int64)
            if self.rank:
                X = self.rows[:, newcols]
                if np.any(X):
                    self.rows = (self.rows - self._matmul_mod(X, newrows)) % p
            self.rows = np.vstack([self.rows, newrows])
            self.pivcols = np.concatenate([self.pivcols, newcols])
            order = np.argsort(self.pivcols, kind="stable")
            self.pivcols = self.pivcols[order]
            self.rows = self.rows[order]
        return [i for (_, i) in new]

    def reduce_vector(self, v):
        return self.reduce_batch(v.reshape(1, -1))[0]


class _Component:
    __slots__ = ("d", "dim", "splits", "offsets", "sizes", "paircols",
                 "struct", "selected", "rank", "mode")

    def __init__(self, d):
        self.d = d
        self.struct = {}
        self.selected = []
        self.rank = 0
        self.mode = "full"


class ModularQuotient:
    """Relatively-free algebra of a variety over GF(p), built by components."""

    def __init__(self, variety, p, degree_cap=DEFAULT_DEGREE_CAP, batch=BATCH_ROWS):
        self.variety = variety
        self.flavor = variety.flavor
        self.p = p
        self.field = GF(p)
        self.degree_cap = degree_cap
        self.batch = batch
        self.identities = [f.to_field(QQ) for f in variety.identities]
        self.comps: dict[tuple, _Component] = {}
        self.pair_cache: dict[tuple, np.ndarray] = {}
        self.mono_cache: dict[Monomial, np.ndarray] = {}
        self._coeff_cache: dict[Fraction, int] = {}
        self._chunk = (2 ** 53) // ((p - 1) ** 2)

    # -- public api -----------------------------------------------------------

    def dim(self, d):
        return self.component(d).dim

    def component(self, d):
        d = mdeg(d)
        got = self.comps.get(d)
        if got is not None:
            return got
        if mdeg_total(d) > self.degree_cap:
            raise DegreeCapExceeded("component %r exceeds degree cap %d" % (d, self.degree_cap))
        for d1, d2 in component_splits(d, self.flavor):
            self.component(d1)
            self.component(d2)
        comp = self._build(d)
        self.comps[d] = comp
        return comp

    def monomial_image(self, m: Monomial):
        got = self.mono_cache.get(m)
        if got is not None:
            return got
        if m.is_leaf():
            comp = self.component(m.multidegree())
            vec = np.zeros(comp.dim)
            vec[0] = 1.0
            self.mono_cache[m] = vec
            return vec
        l, r = m.children()
        vec = self.product(l.multidegree(), self.monomial_image(l),
                           r.multidegree(), self.monomial_image(r))
        self.mono_cache[m] = vec
        return vec

    def poly_image(self, poly: Polynomial):
        """Image of a multihomogeneous polynomial in its component's coordinates."""
        d = poly.multidegree()
        if d is None:
            raise BuildError("polynomial is not multihomogeneous")
        comp = self.component(d)
        out = np.zeros(comp.dim)
        for m, c in poly.terms.items():
            cm = self._coeff(poly.field.to_fraction(c))
            if cm:
                out += cm * self.monomial_image(m)
        return out % self.p

    def is_zero_image(self, poly):
        return not np.any(self.poly_image(poly))

    # -- internals -------------------------------------------------------------

    def _coeff(self, fr: Fraction):
        got = self._coeff_cache.get(fr)
        if got is None:
            got = self.field.from_fraction(fr)
            self._coeff_cache[fr] = got
        return got

    def product(self, d1, v1, d2, v2):
        """Product Q_{d1} x Q_{d2} -> Q_{d1+d2} on coordinate vectors."""
        if self.flavor == COMMUTATIVE and mdeg_key(d1) > mdeg_key(d2):
            d1, v1, d2, v2 = d2, v2, d1, v1
        dd = mdeg_add(d1, d2)
        comp = self.component(dd)
        S = comp.struct[(d1, d2)]
        n1 = self.comps[d1].dim
        n2 = self.comps[d2].dim
        if self.flavor == COMMUTATIVE and d1 == d2:
            W = np.outer(v1, v2) % self.p
            block = (W + W.T)[np.triu_indices(n1)]
            diag = [tri_index(i, i, n1) for i in range(n1)]
            block[diag] -= W.diagonal()
            block %= self.p
        else:
            block = np.outer(v1, v2).reshape(-1) % self.p
        k = block.shape[0]
        if k > self._chunk:
            out = np.zeros(comp.dim)
            for s in range(0, k, self._chunk):
                out += block[s:s + self._chunk] @ S[s:s + self._chunk]
                out %= self.p
            return out
        return (block @ S) % self.p

    def pair_product(self, d1, i, d2, j):
        """Cached product of two basis elements (struct row lookup)."""
        if self.flavor == COMMUTATIVE and (mdeg_key(d1), i) > (mdeg_key(d2), j):
            d1, i, d2, j = d2, j, d1, i
        key = (d1, i, d2, j)
        got = self.pair_cache.get(key)
        if got is not None:
            return got
        dd = mdeg_add(d1, d2)
        comp = self.component(dd)
        S = comp.struct[(d1, d2)]
        n1, n2 = self.comps[d1].dim, self.comps[d2].dim
        if self.flavor == COMMUTATIVE and d1 == d2:
            idx = tri_index(min(i, j), max(i, j), n1)
        else:
            idx = i * n2 + j
        vec = S[idx].copy()
        self.pair_cache[key] = vec
        return vec

    def _build(self, d):
        comp = _Component(d)
        if mdeg_total(d) == 1:
            comp.dim = 1
            comp.splits = []
            comp.offsets = {}
            comp.sizes = {}
            comp.paircols = 0
            return comp
        splits = component_splits(d, self.flavor)
        offsets, sizes = {}, {}
        off = 0
        for d1, d2 in splits:
            n1, n2 = self.comps[d1].dim, self.comps[d2].dim
            sizes[(d1, d2)] = (n1, n2)
            offsets[(d1, d2)] = off
            off += block_size(self.flavor, d1, d2, n1, n2)
        comp.splits, comp.offsets, comp.sizes, comp.paircols = splits, offsets, sizes, off
        if off > MAX_PAIR_COLUMNS:
            raise BudgetExceeded("component %r needs %d pair columns, over the budget %d"
                                 % (d, off, MAX_PAIR_COLUMNS))

        rre = DenseModRREF(self.p, off)
        batch, meta = [], []
        selected = []

        def flush():
            if not batch:
                return
            M = np.array(batch)
            for pos in rre.add_batch(M):
                selected.append(meta[pos])
            batch.clear()
            meta.clear()

        for row_index, f_idx, assignment in iter_relation_specs(self.identities, d, self.dim):
            row = self._relation_row(comp, f_idx, assignment)
            if row is not None:
                batch.append(row)
                meta.append(row_index)
                if len(batch) >= self.batch:
                    flush()
        flush()

        comp.rank = rre.rank
        comp.dim = comp.paircols - rre.rank
        comp.selected = sorted(selected)
        self._extract_struct(comp, rre)
        return comp

    def _relation_row(self, comp, f_idx, assignment):
        f = self.identities[f_idx]
        row = np.zeros(comp.paircols)
        wrote = False
        arr_per_var = {v: arrangements_of(ms) for v, ms in assignment.items()}
        var_names = sorted(assignment)
        for m, c in f.terms_sorted():
            coeff = self._coeff(Fraction(c))
            if coeff == 0:
                continue
            positions = {v: [i for i, x in enumerate(m.enc) if x == v] for v in var_names}
            for combo in itertools.product(*(arr_per_var[v] for v in var_names)):
                leaf_map = {}
                for v, arrangement in zip(var_names, combo):
                    for pos, elem in zip(positions[v], arrangement):
                        leaf_map[pos] = elem
                self._place_term(row, comp, m.enc, leaf_map, coeff)
                wrote = True
        if not wrote:
            return None
        row %= self.p
        if not np.any(row):
            return None
        return row

    def _eval_tree(self, enc, i, leaf_map):
        """Evaluate the subtree at position i; returns (mdeg, kind, payload, next).

        kind 'b' carries a basis index, kind 'v' a dense coordinate vector.
        """
        if enc[i] != 0:
            e, idx = leaf_map[i]
            return e, "b", idx, i + 1
        d1, k1, p1, j = self._eval_tree(enc, i + 1, leaf_map)
        d2, k2, p2, nxt = self._eval_tree(enc, j, leaf_map)
        if k1 == "b" and k2 == "b":
            vec = self.pair_product(d1, p1, d2, p2)
        else:
            v1 = p1 if k1 == "v" else self._one_hot(d1, p1)
            v2 = p2 if k2 == "v" else self._one_hot(d2, p2)
            vec = self.product(d1, v1, d2, v2)
        return mdeg_add(d1, d2), "v", vec, nxt

    def _one_hot(self, d, i):
        v = np.zeros(self.comps[d].dim)
        v[i] = 1.0
        return v

    def _place_term(self, row, comp, enc, leaf_map, coeff):
        """Accumulate coeff * (term with substituted leaves) into pair coords."""
        if enc[0] != 0:
            raise BuildError("degree-1 relation term cannot live in pair coordinates")
        d1, k1, p1, j = self._eval_tree(enc, 1, leaf_map)
        d2, k2, p2, _ = self._eval_tree(enc, j, leaf_map)
        if self.flavor == COMMUTATIVE and mdeg_key(d1) > mdeg_key(d2):
            d1, k1, p1, d2, k2, p2 = d2, k2, p2, d1, k1, p1
        n1, n2 = comp.sizes[(d1, d2)]
        off = comp.offsets[(d1, d2)]
        sym = self.flavor == COMMUTATIVE and d1 == d2
        if not sym:
            if k1 == "b" and k2 == "b":
                row[off + p1 * n2 + p2] += coeff
            elif k1 == "b":
                base = off + p1 * n2
                row[base:base + n2] += coeff * p2
            elif k2 == "b":
                row[off + p2: off + n1 * n2: n2] += coeff * p1
            else:
                row[off:off + n1 * n2] += coeff * ((np.outer(p1, p2) % self.p).reshape(-1))
            return
        # commutative with equal split: symmetrized upper-triangular block
        if k1 == "b" and k2 == "b":
            i, j2 = min(p1, p2), max(p1, p2)
            row[off + tri_index(i, j2, n1)] += coeff
            return
        v1 = p1 if k1 == "v" else self._one_hot(d1, p1)
        v2 = p2 if k2 == "v" else self._one_hot(d2, p2)
        W = np.outer(v1, v2) % self.p
        block = (W + W.T)[np.triu_indices(n1)]
        diag = [tri_index(i, i, n1) for i in range(n1)]
        block[diag] -= W.diagonal()
        row[off:off + block.shape[0]] += coeff * (block % self.p)

    def _extract_struct(self, comp, rre: DenseModRREF):
        paircols, dim = comp.paircols, comp.dim
        piv = set(int(c) for c in rre.pivcols)
        nonpiv = [c for c in range(paircols) if c not in piv]
        S = np.zeros((paircols, dim))
        for k, c in enumerate(nonpiv):
            S[c, k] = 1.0
        if rre.rank:
            S[rre.pivcols.astype(int)] = (-rre.rows[:, nonpiv]) % self.p
        for split in comp.splits:
            off = comp.offsets[split]
            n1, n2 = comp.sizes[split]
            comp.struct[split] = S[off:off + block_size(self.flavor, split[0], split[1], n1, n2)]


# ---------------------------------------------------------------------------
# Integer-scaled incremental RREF (exact over QQ, no Fraction arithmetic).
# ---------------------------------------------------------------------------

def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _integral(row):
    """Scale a sparse Fraction row to integers (clearing denominators)."""
    den = 1
    for v in row.values():
        d = v.denominator
        if d != 1:
            den = den * d // _gcd(den, d)
    if den == 1:
        return {c: v.numerator for c, v in row.items()}
    return {c: (v * den).numerator for c, v in row.items()}


def _content_normalize(row):
    g = 0
    for v in row.values():
        g = _gcd(g, v if v > 0 else -v)
        if g == 1:
            break
    if g > 1:
        for c in row:
            row[c] //= g
    return row


class IntRREF:
    """Incremental reduced echelon basis over QQ with integer-scaled rows.

    Each stored row is an integer vector of content 1 whose support meets the
    pivot set only in its own pivot; the rational RREF row is row / pivot
    value.  Cross-multiplied merges avoid Fraction arithmetic entirely; a
    guard renormalizes a row whenever its entries grow past 2^96.
    """

    _GUARD = 1 << 96

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []
        self.pivots = []
        self.pos = {}

    @property
    def rank(self):
        return len(self.rows)

    @staticmethod
    def _merge(a_scale, a: dict, b_scale, b: dict) -> dict:
        """a_scale * a - b_scale * b over the union support."""
        out = dict(a)
        if a_scale != 1:
            for c in out:
                out[c] *= a_scale
        for c, x in b.items():
            v = out.get(c, 0) - b_scale * x
            if v:
                out[c] = v
            else:
                out.pop(c, None)
        return out

    def insert(self, row: dict) -> bool:
        """Reduce an integer row against the basis; add it if independent.

        Basis rows meet the pivot set only in their own pivot, so the hit set
        is fixed up front and merges only ever touch non-pivot columns.
        """
        guard = self._GUARD
        for col in sorted(c for c in row if c in self.pos):
            rc = row.get(col)
            if not rc:
                row.pop(col, None)
                continue
            i = self.pos[col]
            pivrow = self.rows[i]
            row = self._merge(pivrow[col], row, rc, pivrow)
            row.pop(col, None)
            if any(v > guard or -v > guard for v in row.values()):
                _content_normalize(row)
        if not row:
            return False
        _content_normalize(row)
        lead = min(row)
        if row[lead] < 0:
            for c in row:
                row[c] = -row[c]
        # restore reducedness: clear the new pivot column from existing rows
        pv = row[lead]
        for i, other in enumerate(self.rows):
            oc = other.get(lead)
            if oc is None:
                continue
            merged = self._merge(pv, other, oc, row)
            _content_normalize(merged)
            if merged[self.pivots[i]] < 0:
                for c2 in merged:
                    merged[c2] = -merged[c2]
            self.rows[i] = merged
        at = 0
        while at < len(self.pivots) and self.pivots[at] < lead:
            at += 1
        self.pivots.insert(at, lead)
        self.rows.insert(at, row)
        self.pos = {c: i for i, c in enumerate(self.pivots)}
        return True


# ---------------------------------------------------------------------------
# Exact rational quotient with modular row selection.
# ---------------------------------------------------------------------------

class ExactQuotient:
    """Relatively-free algebra over QQ.

    Small components generate and reduce every relation row exactly.  Larger
    ones take the pivot-row selection from a GF(p) twin (cross-checked against
    a second prime) and redo only those rows over QQ; a zero image against the
    resulting span is an exact membership proof, and any rank shortfall during
    the replay triggers full generation.
    """

    def __init__(self, variety, degree_cap=DEFAULT_DEGREE_CAP,
                 primes=SELECTION_PRIMES, full_cols_cap=FULL_COLS_CAP):
        self.variety = variety
        self.flavor = variety.flavor
        self.field = QQ
        self.degree_cap = degree_cap
        self.full_cols_cap = full_cols_cap
        self.identities = [f.to_field(QQ) for f in variety.identities]
        self.comps: dict[tuple, _Component] = {}
        self.pair_cache: dict[tuple, dict] = {}
        self.mono_cache: dict[Monomial, dict] = {}
        self._primes = primes
        self._twins = None
        self.twins_consistent = True
        self.warnings: list[str] = []

    # -- public api ------------------------------------------------------------

    def dim(self, d):
        return self.component(d).dim

    def component(self, d):
        d = mdeg(d)
        got = self.comps.get(d)
        if got is not None:
            return got
        if mdeg_total(d) > self.degree_cap:
            raise DegreeCapExceeded("component %r exceeds degree cap %d" % (d, self.degree_cap))
        for d1, d2 in component_splits(d, self.flavor):
            self.component(d1)
            self.component(d2)
        comp = self._build(d)
        self.comps[d] = comp
        return comp

    def monomial_image(self, m: Monomial):
        got = self.mono_cache.get(m)
        if got is not None:
            return got
        if m.is_leaf():
            vec = {0: Fraction(1)}
        else:
            l, r = m.children()
            vec = self.product(l.multidegree(), self.monomial_image(l),
                               r.multidegree(), self.monomial_image(r))
        self.mono_cache[m] = vec
        return vec

    def poly_image(self, poly: Polynomial):
        d = poly.multidegree()
        if d is None:
            raise BuildError("polynomial is not multihomogeneous")
        self.component(d)
        out = {}
        for m, c in poly.terms.items():
            fr = poly.field.to_fraction(c)
            for k, x in self.monomial_image(m).items():
                v = out.get(k, Fraction(0)) + fr * x
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    def is_zero_image(self, poly):
        return not self.poly_image(poly)

    # -- internals ---------------------------------------------------------------

    def _twin(self, k):
        if self._twins is None:
            self._twins = [get_quotient(self.variety, GF(p), self.degree_cap)
                           for p in self._primes]
        return self._twins[k]

    def product(self, d1, v1, d2, v2):
        if self.flavor == COMMUTATIVE and mdeg_key(d1) > mdeg_key(d2):
            d1, v1, d2, v2 = d2, v2, d1, v1
        dd = mdeg_add(d1, d2)
        comp = self.component(dd)
        S = comp.struct[(d1, d2)]
        n1 = self.comps[d1].dim
        out = {}
        sym = self.flavor == COMMUTATIVE and d1 == d2
        for i, a in v1.items():
            for j, b in v2.items():
                if sym:
                    idx = tri_index(min(i, j), max(i, j), n1)
                else:
                    idx = i * self.comps[d2].dim + j
                ab = a * b
                col = S[idx]
                for k, x in col.items():
                    v = out.get(k, Fraction(0)) + ab * x
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def pair_product(self, d1, i, d2, j):
        if self.flavor == COMMUTATIVE and (mdeg_key(d1), i) > (mdeg_key(d2), j):
            d1, i, d2, j = d2, j, d1, i
        key = (d1, i, d2, j)
        got = self.pair_cache.get(key)
        if got is not None:
            return got
        dd = mdeg_add(d1, d2)
        comp = self.component(dd)
        n1, n2 = self.comps[d1].dim, self.comps[d2].dim
        if self.flavor == COMMUTATIVE and d1 == d2:
            idx = tri_index(min(i, j), max(i, j), n1)
        else:
            idx = i * n2 + j
        vec = dict(comp.struct[(d1, d2)][idx])
        self.pair_cache[key] = vec
        return vec

    def _build(self, d):
        comp = _Component(d)
        if mdeg_total(d) == 1:
            comp.dim = 1
            comp.splits, comp.offsets, comp.sizes, comp.paircols = [], {}, {}, 0
            return comp
        splits = component_splits(d, self.flavor)
        offsets, sizes = {}, {}
        off = 0
        for d1, d2 in splits:
            n1, n2 = self.comps[d1].dim, self.comps[d2].dim
            sizes[(d1, d2)] = (n1, n2)
            offsets[(d1, d2)] = off
            off += block_size(self.flavor, d1, d2, n1, n2)
        comp.splits, comp.offsets, comp.sizes, comp.paircols = splits, offsets, sizes, off
        if off > MAX_PAIR_COLUMNS:
            raise BudgetExceeded("component %r needs %d pair columns, over the budget %d"
                                 % (d, off, MAX_PAIR_COLUMNS))

        replay = None
        if off > self.full_cols_cap and self.twins_consistent:
            t0 = self._twin(0).component(d)
            t1 = self._twin(1).component(d)
            if t0.rank == t1.rank and self._twin_dims_match(d):
                replay = set(t0.selected)
            else:
                self.warnings.append("modular twins disagree at %r; full generation" % (d,))
        basis = IntRREF(off)
        comp.mode = "replay" if replay is not None else "full"
        for row_index, f_idx, assignment in iter_relation_specs(self.identities, d, self.dim):
            if replay is not None and row_index not in replay:
                continue
            row = self._relation_row(comp, f_idx, assignment)
            if row:
                basis.insert(_integral(row))
        if replay is not None and basis.rank != len(replay):
            # unlucky primes: redo with every row
            self.warnings.append("replay rank shortfall at %r; full generation" % (d,))
            self.twins_consistent = False
            basis = IntRREF(off)
            comp.mode = "full"
            for row_index, f_idx, assignment in iter_relation_specs(self.identities, d, self.dim):
                row = self._relation_row(comp, f_idx, assignment)
                if row:
                    basis.insert(_integral(row))
        comp.rank = basis.rank
        comp.dim = comp.paircols - basis.rank
        comp.selected = []
        if self._twins is not None and self.twins_consistent:
            t0 = self._twins[0].comps.get(d)
            if t0 is not None and t0.dim != comp.dim:
                self.twins_consistent = False
                self.warnings.append("exact/modular dimension mismatch at %r" % (d,))
        self._extract_struct(comp, basis)
        return comp

    def _twin_dims_match(self, d):
        for e in _sub_mdegs_upto(d):
            if e == d:
                continue
            c = self.comps.get(e)
            if c is None:
                continue
            if self._twin(0).component(e).dim != c.dim or self._twin(1).component(e).dim != c.dim:
                return False
        return True

    def _relation_row(self, comp, f_idx, assignment):
        f = self.identities[f_idx]
        row = {}
        arr_per_var = {v: arrangements_of(ms) for v, ms in assignment.items()}
        var_names = sorted(assignment)
        for m, c in f.terms_sorted():
            coeff = Fraction(c)
            positions = {v: [i for i, x in enumerate(m.enc) if x == v] for v in var_names}
            for combo in itertools.product(*(arr_per_var[v] for v in var_names)):
                leaf_map = {}
                for v, arrangement in zip(var_names, combo):
                    for pos, elem in zip(positions[v], arrangement):
                        leaf_map[pos] = elem
                self._place_term(row, comp, m.enc, leaf_map, coeff)
        return row

    def _eval_tree(self, enc, i, leaf_map):
        if enc[i] != 0:
            e, idx = leaf_map[i]
            return e, "b", idx, i + 1
        d1, k1, p1, j = self._eval_tree(enc, i + 1, leaf_map)
        d2, k2, p2, nxt = self._eval_tree(enc, j, leaf_map)
        if k1 == "b" and k2 == "b":
            vec = self.pair_product(d1, p1, d2, p2)
        else:
            v1 = p1 if k1 == "v" else {p1: Fraction(1)}
            v2 = p2 if k2 == "v" else {p2: Fraction(1)}
            vec = self.product(d1, v1, d2, v2)
        return mdeg_add(d1, d2), "v", vec, nxt

    def _place_term(self, row, comp, enc, leaf_map, coeff):
        if enc[0] != 0:
            raise BuildError("degree-1 relation term cannot live in pair coordinates")
        d1, k1, p1, j = self._eval_tree(enc, 1, leaf_map)
        d2, k2, p2, _ = self._eval_tree(enc, j, leaf_map)
        if self.flavor == COMMUTATIVE and mdeg_key(d1) > mdeg_key(d2):
            d1, k1, p1, d2, k2, p2 = d2, k2, p2, d1, k1, p1
        n1, n2 = comp.sizes[(d1, d2)]
        off = comp.offsets[(d1, d2)]
        sym = self.flavor == COMMUTATIVE and d1 == d2
        v1 = p1 if k1 == "v" else {p1: Fraction(1)}
        v2 = p2 if k2 == "v" else {p2: Fraction(1)}
        for i, a in v1.items():
            for j2, b in v2.items():
                if sym:
                    idx = tri_index(min(i, j2), max(i, j2), n1)
                else:
                    idx = i * n2 + j2
                col = off + idx
                v = row.get(col, Fraction(0)) + coeff * a * b
                if v:
                    row[col] = v
                else:
                    row.pop(col, None)

    def _extract_struct(self, comp, basis: IntRREF):
        piv = {c: i for i, c in enumerate(basis.pivots)}
        nonpiv = [c for c in range(comp.paircols) if c not in piv]
        colmap = {c: k for k, c in enumerate(nonpiv)}
        cols = []
        for c in range(comp.paircols):
            if c in piv:
                r = basis.rows[piv[c]]
                pv = r[c]
                cols.append({colmap[c2]: Fraction(-x, pv) for c2, x in r.items() if c2 != c})
            else:
                cols.append({colmap[c]: Fraction(1)})
        for split in comp.splits:
            off = comp.offsets[split]
            n1, n2 = comp.sizes[split]
            size = block_size(self.flavor, split[0], split[1], n1, n2)
            comp.struct[split] = cols[off:off + size]


# ---------------------------------------------------------------------------
# Shared front door with a per-process cache.
# ---------------------------------------------------------------------------

_CACHE: dict[tuple, object] = {}


def get_quotient(variety, field, degree_cap=DEFAULT_DEGREE_CAP):
    """Cached quotient algebra for (variety, field)."""
    key = (variety.cache_key(), getattr(field, "p", 0), degree_cap)
    qa = _CACHE.get(key)
    if qa is None:
        if field is QQ or getattr(field, "char", None) == 0:
            qa = ExactQuotient(variety, degree_cap)
        else:
            qa = ModularQuotient(variety, field.p, degree_cap)
        _CACHE[key] = qa
    return qa


def clear_cache():
    _CACHE.clear()
