"""Sparse homogeneous forms in the primal ring S = k[x0..xn] and the dual
ring T = k[y0..yn], with the contraction action of T on S.

A monomial is an exponent tuple of length ``num_vars``; a form stores a
map from monomials to nonzero coefficients.  The canonical monomial order
is lexicographic with x0 > x1 > ... > xn inside a fixed total degree, so
the degree-d basis starts at x0^d.  Contraction lets y_j act as the true
partial derivative d/dx_j (falling-factorial multiplicities appear), so
an operator of degree e sends a degree-d form to a degree d-e form and
annihilates everything whenever e exceeds d.

Text grammar (whitespace-insensitive)::

    expr    :=  ['+'|'-'] term { ('+'|'-') term }
    term    :=  factor { '*' factor }
    factor  :=  primary [ '^' integer ]
    primary :=  integer [ '/' integer ] | variable | '(' expr ')'

where a variable is ``x<k>`` or ``y<k>`` (primal/dual may not be mixed).
Arbitrary parenthesized arithmetic is accepted; homogeneity is checked on
the expanded result.  The canonical printed format uses explicit ``*``
and ``^`` with terms in canonical order, e.g. ``x0^3 - x1^2*x2``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

PRIMAL = "x"
DUAL = "y"


@lru_cache(maxsize=None)
def monomial_basis(num_vars: int, degree: int):
    """All exponent tuples of the given total degree, in canonical order."""
    if num_vars < 1:
        raise ValueError("need at least one variable")
    if degree < 0:
        raise ValueError("degree must be nonnegative")

    def gen(k, d):
        if k == 1:
            yield (d,)
            return
        for e in range(d, -1, -1):
            for rest in gen(k - 1, d - e):
                yield (e,) + rest

    return tuple(gen(num_vars, degree))


@lru_cache(maxsize=None)
def basis_index(num_vars: int, degree: int):
    """Monomial -> position map for the canonical basis."""
    return {m: i for i, m in enumerate(monomial_basis(num_vars, degree))}


def multinomial(d: int, exponents) -> int:
    out = math.factorial(d)
    for e in exponents:
        out //= math.factorial(e)
    return out


class Form:
    """A homogeneous form: ring tag, variable count, degree, sparse terms.

    Zero coefficients are never stored; the zero form has an empty term
    map but keeps its declared degree.  Forms are immutable by convention.
    """

    __slots__ = ("ring", "num_vars", "degree", "terms")

    def __init__(self, ring: str, num_vars: int, degree: int, terms: dict):
        if ring not in (PRIMAL, DUAL):
            raise ValueError(f"unknown ring tag {ring!r}")
        if num_vars < 1:
            raise ValueError("need at least one variable")
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        clean = {}
        for mono, c in terms.items():
            if not c:
                continue
            if len(mono) != num_vars or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent tuple {mono} for {num_vars} variables")
            if sum(mono) != degree:
                raise ValueError(
                    f"term {mono} has degree {sum(mono)}, expected {degree}")
            clean[mono] = c
        self.ring = ring
        self.num_vars = num_vars
        self.degree = degree
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring: str, num_vars: int, degree: int = 0) -> "Form":
        return cls(ring, num_vars, degree, {})

    @classmethod
    def monomial(cls, ring: str, exponents, coeff=1) -> "Form":
        exponents = tuple(exponents)
        return cls(ring, len(exponents), sum(exponents), {exponents: coeff})

    @classmethod
    def linear(cls, ring: str, coeffs) -> "Form":
        coeffs = list(coeffs)
        n = len(coeffs)
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[k] = 1
                terms[tuple(e)] = c
        return cls(ring, n, 1, terms)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self.ring == other.ring and self.num_vars == other.num_vars
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check_ring(self, other: "Form"):
        if self.ring != other.ring or self.num_vars != other.num_vars:
            raise ValueError("forms live in different rings")

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check_ring(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise ValueError(
                f"cannot add forms of degrees {self.degree} and {other.degree}")
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return Form(self.ring, self.num_vars, self.degree, terms)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Form(self.ring, self.num_vars, self.degree,
                    {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Form):
            self._check_ring(other)
            deg = self.degree + other.degree
            terms = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    mono = tuple(a + b for a, b in zip(m1, m2))
                    s = terms.get(mono, 0) + c1 * c2
                    if s:
                        terms[mono] = s
                    else:
                        terms.pop(mono, None)
            return Form(self.ring, self.num_vars, deg, terms)
        # scalar scaling
        if not other:
            return Form.zero(self.ring, self.num_vars, self.degree)
        return Form(self.ring, self.num_vars, self.degree,
                    {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out = Form(self.ring, self.num_vars, 0, {(0,) * self.num_vars: 1})
        for _ in range(e):
            out = out * self
        return out

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"Form({format_form(self)!r})"


def coefficient_vector(f: Form, degree: int | None = None):
    """Coordinates of ``f`` over the canonical basis of its degree."""
    d = f.degree if degree is None else degree
    idx = basis_index(f.num_vars, d)
    vec = [0] * len(idx)
    for mono, c in f.terms.items():
        vec[idx[mono]] = c
    return vec


def form_from_vector(ring: str, num_vars: int, degree: int, vec) -> Form:
    basis = monomial_basis(num_vars, degree)
    return Form(ring, num_vars, degree,
                {basis[i]: c for i, c in enumerate(vec) if c})


def evaluate(f: Form, coords):
    """Evaluate a form at affine coordinates (any commutative scalars)."""
    coords = list(coords)
    if len(coords) != f.num_vars:
        raise ValueError("coordinate count does not match variable count")
    total = 0
    for mono, c in f.terms.items():
        term = c
        for b, e in zip(coords, mono):
            for _ in range(e):
                term = term * b
        total = total + term
    return total


def contract(op: Form, f: Form) -> Form:
    """Apply a dual operator to a primal form by iterated differentiation.

    ``y_j^a`` acts as the a-th partial derivative in ``x_j``, so falling
    factorials appear as integer multiplicities.  The result is the zero
    form whenever the operator degree exceeds the form degree.
    """
    if op.ring != DUAL or f.ring != PRIMAL:
        raise ValueError("contraction expects a dual operator and a primal form")
    if op.num_vars != f.num_vars:
        raise ValueError("operator and form have different variable counts")
    e, d = op.degree, f.degree
    if e > d:
        return Form.zero(PRIMAL, f.num_vars, 0)
    out_deg = d - e
    terms = {}
    for beta, c_op in op.terms.items():
        for alpha, c_f in f.terms.items():
            mult = 1
            ok = True
            for a, b in zip(alpha, beta):
                if a < b:
                    ok = False
                    break
                for t in range(a, a - b, -1):  # falling factorial a!/(a-b)!
                    mult *= t
            if not ok:
                continue
            mono = tuple(a - b for a, b in zip(alpha, beta))
            s = terms.get(mono, 0) + c_op * c_f * mult
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
    return Form(PRIMAL, f.num_vars, out_deg, terms)


def linear_power_coefficients(coords, degree: int):
    """Coefficient vector of (c0*x0 + ... + cn*xn)^degree over the basis.

    Multinomial expansion with cached coordinate powers; works over any
    commutative scalars, including jets.
    """
    coords = list(coords)
    n1 = len(coords)
    pows = []
    for b in coords:
        col = [1]
        acc = None
        for _ in range(degree):
            acc = b if acc is None else acc * b
            col.append(acc)
        pows.append(col)
    out = []
    for mono in monomial_basis(n1, degree):
        term = multinomial(degree, mono)
        for j, e in enumerate(mono):
            if e:
                term = term * pows[j][e]
        out.append(term)
    return out


# ---------------------------------------------------------------------------
# parsing and printing


class ParseError(ValueError):
    """Syntax error in the form grammar, with a character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class HomogeneityError(ValueError):
    """Expanded input mixes total degrees; names an offending term."""


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch in (PRIMAL, DUAL):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError(f"variable '{ch}' needs an index", i)
            tokens.append(("var", (ch, int(text[i + 1:j])), i))
            i = j
            continue
        if ch in "+-*^/()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    """Recursive-descent parser producing a raw (possibly inhomogeneous)
    polynomial as {exponent-dict-items: Fraction} plus a ring letter."""

    def __init__(self, text: str, num_vars):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = None
        self.max_index = -1
        self.num_vars = num_vars

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        return tok

    # raw polynomials are dicts {key: coeff} with key = sorted tuple of
    # (var, exp) pairs; the empty tuple is the constant monomial
    @staticmethod
    def _mul_raw(p, q):
        out = {}
        for k1, c1 in p.items():
            d1 = dict(k1)
            for k2, c2 in q.items():
                d = dict(d1)
                for v, e in k2:
                    d[v] = d.get(v, 0) + e
                key = tuple(sorted(d.items()))
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    @staticmethod
    def _add_raw(p, q, sign=1):
        out = dict(p)
        for k, c in q.items():
            s = out.get(k, 0) + sign * c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def parse_expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self._mul_raw({(): Fraction(sign)}, self.parse_term())
        while self.peek()[0] in "+-":
            op = self.take()[0]
            acc = self._add_raw(acc, self.parse_term(), -1 if op == "-" else 1)
        return acc

    def parse_term(self):
        acc = self.parse_factor()
        while self.peek()[0] == "*":
            self.take()
            acc = self._mul_raw(acc, self.parse_factor())
        return acc

    def parse_factor(self):
        base = self.parse_primary()
        if self.peek()[0] == "^":
            self.take()
            tok = self.expect("int")
            out = {(): Fraction(1)}
            for _ in range(tok[1]):
                out = self._mul_raw(out, base)
            return out
        return base

    def parse_primary(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            coeff = Fraction(value)
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.expect("int")
                if den_tok[1] == 0:
                    raise ParseError("zero denominator", den_tok[2])
                coeff = Fraction(value, den_tok[1])
            return {(): coeff}
        if kind == "var":
            letter, index = value
            if self.ring is None:
                self.ring = letter
            elif self.ring != letter:
                raise ParseError(
                    f"cannot mix {self.ring!r} and {letter!r} variables", pos)
            if self.num_vars is not None and index >= self.num_vars:
                raise ParseError(
                    f"variable {letter}{index} exceeds the declared "
                    f"{self.num_vars} variables", pos)
            self.max_index = max(self.max_index, index)
            return {((index, 1),): Fraction(1)}
        if kind == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {kind!r}", pos)


def parse_form(text: str, num_vars: int | None = None, ring: str | None = None) -> Form:
    """Parse the grammar above into a homogeneous form.

    The variable count is inferred from the largest index seen unless
    ``num_vars`` is declared; ``ring`` only matters for constant input.
    Inhomogeneous input raises :class:`HomogeneityError` naming a term.
    """
    parser = _Parser(text, num_vars)
    raw = parser.parse_expr()
    end = parser.expect("end")
    del end
    letter = parser.ring or ring or PRIMAL
    if ring is not None and parser.ring is not None and parser.ring != ring:
        raise ValueError(f"expected {ring!r} variables, found {parser.ring!r}")
    nv = num_vars if num_vars is not None else max(parser.max_index + 1, 1)
    if not raw:
        return Form.zero(letter, nv, 0)
    degrees = {}
    for key in raw:
        degrees.setdefault(sum(e for _, e in key), key)
    if len(degrees) > 1:
        (d1, k1), (d2, k2) = sorted(degrees.items())[:2]
        name1 = _raw_term_str(letter, k1)
        name2 = _raw_term_str(letter, k2)
        raise HomogeneityError(
            f"inhomogeneous input: term {name1} has degree {d1} "
            f"but term {name2} has degree {d2}")
    degree = next(iter(degrees))
    terms = {}
    for key, c in raw.items():
        exps = [0] * nv
        for v, e in key:
            exps[v] = e
        terms[tuple(exps)] = c
    return Form(letter, nv, degree, terms)


def _raw_term_str(letter: str, key) -> str:
    if not key:
        return "1"
    return "*".join(f"{letter}{v}" + (f"^{e}" if e > 1 else "") for v, e in key)


def _coeff_parts(c):
    """(is_negative, magnitude-string or None-if-unit) for a coefficient."""
    if isinstance(c, Fraction) or isinstance(c, int):
        neg = c < 0
        mag = -c if neg else c
        if mag == 1:
            return neg, None
        if isinstance(mag, Fraction) and mag.denominator != 1:
            return neg, f"{mag.numerator}/{mag.denominator}"
        return neg, str(int(mag))
    # prime-field and other nonnegative scalars print as-is
    return False, None if c == 1 else str(c)


def format_form(f: Form) -> str:
    """Canonical text rendering; ``parse_form`` round-trips it exactly."""
    if f.is_zero():
        return "0"
    pieces = []
    for mono, c in f.sorted_terms():
        neg, mag = _coeff_parts(c)
        factors = [f"{f.ring}{k}" + (f"^{e}" if e > 1 else "")
                   for k, e in enumerate(mono) if e]
        if mag is not None:
            factors.insert(0, mag)
        if not factors:
            factors = ["1"]
        pieces.append((neg, "*".join(factors)))
    first_neg, first_txt = pieces[0]
    out = ("-" if first_neg else "") + first_txt
    for neg, txt in pieces[1:]:
        out += (" - " if neg else " + ") + txt
    return out
