"""Identity DSL: parsing, printing, macro expansion and derived operations.

Grammar (whitespace-insensitive):

    sum      := [sign] term (('+'|'-') term)*
    term     := [rational] product
    product  := factors ('@' factors)*          # '@' is the Jordan star, loosest
    factors  := atom (['*'] atom)*              # juxtaposition / '*': the product
    atom     := var | '(' sum ')' | '[' sum ',' sum ']'
              | 'A' '(' s,s,s ')' | 'J' '(' s,s,s ')'
              | 'q' '{q=' rational '}' '(' s ',' s ')'
              | NAME ['{' NAME '=' rational '}'] '(' args ')'
    var      := 't' digits

Products are left-associative; 'A' is the associator of the ambient product,
'J' the associator of the star.  In commutative flavor the star expands as
2*(product) and a literal Lie bracket expands to zero (with a warning).
"""

from __future__ import annotations

import itertools
import warnings
from fractions import Fraction

from .term import (COMMUTATIVE, PLANAR, FlavorError, Monomial, Polynomial, QQ,
                   poly_substitute)


class ParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__("%s (at position %d)" % (msg, pos))
        self.pos = pos


class MacroError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Tokenizer.
# ---------------------------------------------------------------------------

_SYMBOLS = "()[]{},@*+-=/"


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            toks.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError("unexpected character %r" % ch, i)
    toks.append(("end", None, n))
    return toks


# ---------------------------------------------------------------------------
# Parser producing expression trees (plain nested tuples, hashable).
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ParseError("expected %r, got %r" % (kind, t[1]), t[2])
        return t

    def parse(self):
        e = self.parse_sum()
        t = self.peek()
        if t[0] != "end":
            raise ParseError("trailing input %r" % (t[1],), t[2])
        return e

    def parse_sum(self):
        terms = []
        sign = Fraction(1)
        t = self.peek()
        if t[0] in "+-":
            self.next()
            sign = Fraction(-1) if t[0] == "-" else Fraction(1)
        terms.append(self.parse_term(sign))
        while True:
            t = self.peek()
            if t[0] == "+":
                self.next()
                terms.append(self.parse_term(Fraction(1)))
            elif t[0] == "-":
                self.next()
                terms.append(self.parse_term(Fraction(-1)))
            else:
                break
        if len(terms) == 1:
            return terms[0]
        return ("sum", tuple(terms))

    def parse_rational(self):
        t = self.expect("num")
        num = t[1]
        if self.peek()[0] == "/":
            self.next()
            den = self.expect("num")[1]
            return Fraction(num, den)
        return Fraction(num)

    def parse_term(self, sign):
        coeff = sign
        t = self.peek()
        if t[0] == "num":
            coeff = sign * self.parse_rational()
            # a bare number is only legal as the zero polynomial
            if self.peek()[0] in ("end", "+", "-", ",", ")", "]"):
                if coeff == 0:
                    return ("sum", ())
                raise ParseError("standalone scalar %s (free algebras have no unit)" % coeff, t[2])
        e = self.parse_product()
        if coeff == 1:
            return e
        return ("scale", coeff, e)

    def parse_product(self):
        e = self.parse_factors()
        while self.peek()[0] == "@":
            self.next()
            e = ("star", e, self.parse_factors())
        return e

    def parse_factors(self):
        e = self.parse_atom()
        while True:
            t = self.peek()
            if t[0] == "*":
                self.next()
                e = ("prod", e, self.parse_atom())
            elif t[0] in ("name", "(", "["):
                e = ("prod", e, self.parse_atom())
            else:
                return e

    def parse_args(self, n=None):
        self.expect("(")
        args = [self.parse_sum()]
        while self.peek()[0] == ",":
            self.next()
            args.append(self.parse_sum())
        self.expect(")")
        if n is not None and len(args) != n:
            raise ParseError("expected %d arguments, got %d" % (n, len(args)), self.peek()[2])
        return tuple(args)

    def parse_atom(self):
        t = self.next()
        if t[0] == "(":
            e = self.parse_sum()
            self.expect(")")
            return e
        if t[0] == "[":
            a = self.parse_sum()
            self.expect(",")
            b = self.parse_sum()
            self.expect("]")
            return ("bracket", a, b)
        if t[0] == "name":
            name = t[1]
            if name.startswith("t") and name[1:].isdigit():
                return ("var", int(name[1:]))
            if name == "A":
                return ("assoc",) + self.parse_args(3)
            if name == "J":
                return ("passoc",) + self.parse_args(3)
            params = ()
            if self.peek()[0] == "{":
                self.next()
                pname = self.expect("name")[1]
                self.expect("=")
                neg = False
                if self.peek()[0] == "-":
                    self.next()
                    neg = True
                pval = self.parse_rational()
                if neg:
                    pval = -pval
                self.expect("}")
                params = ((pname, pval),)
            if name == "q":
                if not params or params[0][0] != "q":
                    raise ParseError("q-product needs {q=...}", t[2])
                args = self.parse_args(2)
                return ("qprod", params[0][1], args[0], args[1])
            args = self.parse_args()
            return ("call", name, params, args)
        raise ParseError("unexpected token %r" % (t[1],), t[2])


def parse(text: str):
    """Parse DSL text to an expression tree."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Macro table.
# ---------------------------------------------------------------------------

class MacroDef:
    def __init__(self, arity, body_text=None, builder=None, params=()):
        self.arity = arity
        self.body_text = body_text
        self.builder = builder      # callable(params) -> planar Polynomial in t1..tk
        self.params = params
        self._body = None

    def body(self):
        if self._body is None:
            self._body = parse(self.body_text)
        return self._body


def _sigma_builder(base_text):
    def build(params):
        q = dict(params).get("q")
        if q is None:
            raise MacroError("missing parameter q")
        base = expand(parse(base_text), PLANAR)
        return apply_sigma_q(base, -q)
    return build


MACROS = {
    "lsym": MacroDef(3, "A(t1,t2,t3) - A(t2,t1,t3)"),
    "rsym": MacroDef(3, "A(t1,t2,t3) - A(t1,t3,t2)"),
    "jor": MacroDef(2, "A(t1,t2,t1 t1)"),
    "wjor": MacroDef(4, "A(t2,t1,t3 t4) + A(t3,t1,t4 t2) + A(t4,t1,t2 t3)"),
    "jor1": MacroDef(4, "t1(t2(t3 t4)) - t2(t1(t3 t4)) - t3(t1(t2 t4))"
                        " + t3(t2(t1 t4)) - (t1(t2 t3))t4 + (t2(t1 t3))t4"),
    "jor2": MacroDef(4, "wjor(t1,t2,t3,t4) - wjor(t2,t1,t3,t4)"
                        " + wjor(t3,t1,t2,t4) - wjor(t4,t1,t2,t3)"),
    "lietriple": MacroDef(3, "A(t1, t2 t2, t3) - t2 @ A(t1,t2,t3)"),
    "assder": MacroDef(4, "A(t1, t2 t3, t4) - t2 A(t1,t3,t4) - A(t1,t2,t4) t3"),
    "shest": MacroDef(3, "-3 (J(t1,t3,t2) @ (J(t1,t1, 1/2 (t2 @ t2)) - J(t1,t1,t2) @ t2))"
                         " - 2 J(t1, J(t1, J(t1,t3,t2), t2), t2)"),
    "glen": MacroDef(3, "shest(t1, t2, t3 @ t3) - 2 (t3 @ shest(t1,t2,t3))"),
    "D": MacroDef(3, "[(([t1,t2] @ [t1,t2]) @ [t1,t2]), t3]"),
    "g4_1": MacroDef(1, "A(t1,t1,t1 t1)"),
    "g31_1": MacroDef(2, "A(t1,t2,t1 t1)"),
    "g31_2": MacroDef(2, "t2(t1(t1 t1)) + 2 t1(t1(t1 t2)) - 3 t1(t2(t1 t1))"),
    "g22_1": MacroDef(2, "(t1 t1)(t2 t2) - t1(t1(t2 t2)) - 2 t2(t1(t1 t2)) + 2 (t1 t2)(t1 t2)"),
    "g211_1": MacroDef(3, "A(t1,t1,t2 t3) + A(t2,t1,t3 t1) + A(t3,t1,t1 t2)"),
    "g211_2": MacroDef(3, "2 A(t1,t2,t1 t3) + A(t3,t2,t1 t1)"),
    "g1111_1": MacroDef(4, "wjor(t1,t2,t3,t4)"),
    "h22": MacroDef(2, "g22_1(t2,t1) - g22_1(t1,t2)"),
    "h211_1": MacroDef(3, "g211_1(t1,t2,t3) - g211_2(t1,t2,t3)"),
    "h211_2": MacroDef(3, "g211_2(t1,t2,t3) - g211_2(t1,t3,t2)"),
    "lsym_q": MacroDef(3, builder=_sigma_builder("A(t1,t2,t3) - A(t2,t1,t3)"), params=("q",)),
    "rsym_q": MacroDef(3, builder=_sigma_builder("A(t1,t2,t3) - A(t1,t3,t2)"), params=("q",)),
}


def tree_substitute(tree, mapping):
    """Simultaneously replace ('var', k) leaves by mapping[k] trees."""
    kind = tree[0]
    if kind == "var":
        return mapping.get(tree[1], tree)
    if kind == "sum":
        return ("sum", tuple(tree_substitute(e, mapping) for e in tree[1]))
    if kind == "scale":
        return ("scale", tree[1], tree_substitute(tree[2], mapping))
    if kind == "qprod":
        return ("qprod", tree[1], tree_substitute(tree[2], mapping), tree_substitute(tree[3], mapping))
    if kind == "call":
        return ("call", tree[1], tree[2], tuple(tree_substitute(e, mapping) for e in tree[3]))
    return (kind,) + tuple(tree_substitute(e, mapping) for e in tree[1:])


def tree_variables(tree):
    kind = tree[0]
    if kind == "var":
        return {tree[1]}
    out = set()
    if kind == "sum":
        parts = tree[1]
    elif kind == "scale":
        parts = (tree[2],)
    elif kind == "qprod":
        parts = tree[2:]
    elif kind == "call":
        parts = tree[3]
    else:
        parts = tree[1:]
    for e in parts:
        out |= tree_variables(e)
    return out


# ---------------------------------------------------------------------------
# Expansion to sparse polynomials.
# ---------------------------------------------------------------------------

def expand(e, flavor, field=QQ) -> Polynomial:
    """Fully expand an expression tree (or DSL text) in the given flavor."""
    if isinstance(e, str):
        e = parse(e)
    return _expand(e, flavor, field)


def _expand(e, flavor, field):
    kind = e[0]
    if kind == "var":
        return Polynomial.variable(e[1], flavor, field)
    if kind == "sum":
        acc = Polynomial.zero(flavor, field)
        for part in e[1]:
            acc = acc + _expand(part, flavor, field)
        return acc
    if kind == "scale":
        return _expand(e[2], flavor, field).scale(e[1])
    if kind == "prod":
        return _expand(e[1], flavor, field) * _expand(e[2], flavor, field)
    if kind == "star":
        a, b = _expand(e[1], flavor, field), _expand(e[2], flavor, field)
        if flavor == COMMUTATIVE:
            return (a * b).scale(2)
        return a.star(b)
    if kind == "bracket":
        a, b = _expand(e[1], flavor, field), _expand(e[2], flavor, field)
        if flavor == COMMUTATIVE:
            warnings.warn("Lie bracket expands to zero in commutative flavor")
            return Polynomial.zero(flavor, field)
        return a * b - b * a
    if kind == "qprod":
        q = e[1]
        a, b = _expand(e[2], flavor, field), _expand(e[3], flavor, field)
        if flavor == COMMUTATIVE:
            return (a * b).scale(1 + q)
        return a * b + (b * a).scale(q)
    if kind == "assoc":
        a, b, c = (_expand(x, flavor, field) for x in e[1:])
        return a * (b * c) - (a * b) * c
    if kind == "passoc":
        a, b, c = (_expand(x, flavor, field) for x in e[1:])
        if flavor == COMMUTATIVE:
            return ((a * (b * c)) - ((a * b) * c)).scale(4)
        return a.star(b.star(c)) - (a.star(b)).star(c)
    if kind == "call":
        return _expand_call(e, flavor, field)
    raise MacroError("unknown node kind %r" % (kind,))


def _expand_call(e, flavor, field):
    _, name, params, args = e
    mac = MACROS.get(name)
    if mac is None:
        raise MacroError("unknown macro %r" % (name,))
    if len(args) != mac.arity:
        raise MacroError("macro %s expects %d arguments, got %d" % (name, mac.arity, len(args)))
    if mac.builder is not None:
        base = mac.builder(params)
        if flavor != base.flavor:
            raise FlavorError("macro %s expands only in %s flavor" % (name, base.flavor))
        arg_polys = {i + 1: _expand(a, flavor, field) for i, a in enumerate(args)}
        return poly_substitute(base.to_field(field), arg_polys)
    body = tree_substitute(mac.body(), {i + 1: a for i, a in enumerate(args)})
    return _expand(body, flavor, field)


# ---------------------------------------------------------------------------
# Derived operations.
# ---------------------------------------------------------------------------

def star_expand(p: Polynomial) -> Polynomial:
    """Image of a commutative polynomial under (x.y) -> x*y + y*x into the planar algebra."""
    if p.flavor != COMMUTATIVE:
        raise FlavorError("star_expand takes a commutative polynomial")
    f = p.field
    cache = {}

    def img(m: Monomial) -> Polynomial:
        got = cache.get(m)
        if got is not None:
            return got
        if m.is_leaf():
            res = Polynomial.variable(m.enc[0], PLANAR, f)
        else:
            l, r = m.children()
            res = img(l).star(img(r))
        cache[m] = res
        return res

    acc = Polynomial.zero(PLANAR, f)
    for m, c in p.terms.items():
        acc = acc + img(m).scale(f.to_fraction(c))
    return acc


def apply_sigma_q(p, q) -> Polynomial:
    """Endomorphism replacing every planar product node x.y by x.y + q*(y.x), bottom-up."""
    if isinstance(p, (str, tuple)):
        p = expand(p, PLANAR)
    if p.flavor != PLANAR:
        raise FlavorError("sigma_q acts on planar polynomials")
    q = Fraction(q)
    f = p.field
    qf = f.from_fraction(q)
    cache = {}

    def img(m: Monomial) -> Polynomial:
        got = cache.get(m)
        if got is not None:
            return got
        if m.is_leaf():
            res = Polynomial.unit(m, 1, f)
        else:
            l, r = m.children()
            a, b = img(l), img(r)
            res = a * b + (b * a).scale(f.to_fraction(qf))
        cache[m] = res
        return res

    acc = Polynomial.zero(PLANAR, f)
    for m, c in p.terms.items():
        acc = acc + img(m).scale(f.to_fraction(c))
    return acc


def _leaf_positions(enc, var):
    return [i for i, x in enumerate(enc) if x == var]


def _graft(enc, replacements):
    """Replace leaves at given enc positions by monomial encodings.

    replacements: {position: enc tuple}.  Returns the new encoding.
    """
    out = []
    for i, x in enumerate(enc):
        rep = replacements.get(i)
        if rep is not None:
            out.extend(rep)
        else:
            out.append(x)
    return tuple(out)


def polarize(p: Polynomial, var: int, replacements) -> Polynomial:
    """Full multilinearization of the occurrences of one variable.

    Every term must contain `var` exactly len(replacements) times; the result
    sums over all bijective assignments of the occurrences to the replacement
    variables.
    """
    k = len(replacements)
    f = p.field
    out = Polynomial.zero(p.flavor, f)
    for m, c in p.terms.items():
        pos = _leaf_positions(m.enc, var)
        if len(pos) != k:
            raise ValueError("term %s is not homogeneous of degree %d in t%d"
                             % (m.to_text(), k, var))
        for perm in itertools.permutations(replacements):
            enc = _graft(m.enc, {pos[i]: (perm[i],) for i in range(k)})
            out = out + Polynomial.unit(Monomial.from_enc(p.flavor, enc), 1, f).scale(f.to_fraction(c))
    return out


def blended_instance(p: Polynomial, assignment: dict) -> Polynomial:
    """Substitution instance with multisets: one consequence row of a T-ideal.

    assignment: variable index -> tuple of Monomials, whose length must equal
    the variable's multiplicity in every term of p.  The result sums, for each
    variable, over the distinct arrangements of its multiset across the
    variable's occurrences (so identifying two replacement monomials never
    introduces spurious factorials; over GF(p) this matters).
    """
    f = p.field
    out = Polynomial.zero(p.flavor, f)
    for m, c in p.terms.items():
        pos = {v: _leaf_positions(m.enc, v) for v in assignment}
        for v, ms in assignment.items():
            if len(pos[v]) != len(ms):
                raise ValueError("term %s has %d occurrences of t%d, multiset has %d"
                                 % (m.to_text(), len(pos[v]), v, len(ms)))
        per_var = []
        for v, ms in sorted(assignment.items()):
            arrangements = sorted(set(itertools.permutations(tuple(x.enc for x in ms))))
            per_var.append((pos[v], arrangements))
        for combo in itertools.product(*(arrs for _, arrs in per_var)):
            rep = {}
            for (positions, _), arrangement in zip(per_var, combo):
                for i, sub_enc in enumerate(arrangement):
                    rep[positions[i]] = sub_enc
            enc = _graft(m.enc, rep)
            out = out + Polynomial.unit(Monomial.from_enc(p.flavor, enc), 1, f).scale(f.to_fraction(c))
    return out


def print_polynomial(p: Polynomial) -> str:
    """Deterministic text form; expand(parse(...)) recovers the polynomial."""
    from .term import format_polynomial
    return format_polynomial(p)
