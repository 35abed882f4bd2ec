"""Apolar ideal machinery: catalecticant matrices, graded pieces of the
annihilator ideal, membership tests, and Waring coefficient solving.

The annihilator of a degree-d primal form F is the dual ideal of operators
killing F under contraction.  Its degree-i piece is the kernel of the
catalecticant matrix of the contraction map T_i -> S_{d-i}, so every
ideal-theoretic question here is answered degree by degree with exact
linear algebra (no Groebner bases anywhere).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .field import modulus_of, scalar_to_str
from .poly import (DUAL, PRIMAL, Form, coefficient_vector, contract,
                   form_from_vector, linear_power_coefficients,
                   monomial_basis, format_form)


@dataclass
class CatalecticantMatrix:
    """Matrix of contraction against F from source degree i to target d-i.

    The column for a basis operator m holds the coordinates of m applied
    to F, so the kernel consists of the degree-i annihilating operators.
    """

    source_degree: int
    target_degree: int
    entries: list            # rows over the target basis
    row_basis: tuple         # monomials of S_{d-i}
    col_basis: tuple         # monomials of T_i

    def rank(self) -> int:
        return linalg.rank(self.entries)

    def to_json_dict(self) -> dict:
        return {
            "source_degree": self.source_degree,
            "target_degree": self.target_degree,
            "rows": [[scalar_to_str(e) for e in row] for row in self.entries],
            "row_basis": [_mono_str(PRIMAL, m) for m in self.row_basis],
            "col_basis": [_mono_str(DUAL, m) for m in self.col_basis],
        }


def _mono_str(ring: str, mono) -> str:
    return format_form(Form.monomial(ring, mono))


def catalecticant(f: Form, i: int) -> CatalecticantMatrix:
    """Catalecticant of a primal form in source degree i, 0 <= i <= deg F."""
    if f.ring != PRIMAL:
        raise ValueError("catalecticant expects a primal form")
    if f.is_zero():
        raise ValueError("catalecticant of the zero form is not defined")
    if not 0 <= i <= f.degree:
        raise ValueError(f"source degree {i} outside 0..{f.degree}")
    nv = f.num_vars
    col_basis = monomial_basis(nv, i)
    row_basis = monomial_basis(nv, f.degree - i)
    cols = [coefficient_vector(contract(Form.monomial(DUAL, m), f))
            for m in col_basis]
    entries = [[col[r] for col in cols] for r in range(len(row_basis))]
    return CatalecticantMatrix(i, f.degree - i, entries, row_basis, col_basis)


@dataclass
class PerpGradedPiece:
    """A basis (reduced echelon form over the canonical monomial basis) of
    the degree-i piece of the annihilator ideal of a form."""

    degree: int
    basis: list

    @property
    def dimension(self) -> int:
        return len(self.basis)


def perp_piece(f: Form, i: int) -> PerpGradedPiece:
    """Degree-i piece of the annihilator of F; all of T_i once i > deg F."""
    if i < 0:
        raise ValueError("degree must be nonnegative")
    nv = f.num_vars
    if i > f.degree:
        basis = [Form.monomial(DUAL, m) for m in monomial_basis(nv, i)]
        return PerpGradedPiece(i, basis)
    cat = catalecticant(f, i)
    kernel = linalg.kernel_basis(cat.entries, len(cat.col_basis))
    basis = [form_from_vector(DUAL, nv, i, v) for v in kernel]
    return PerpGradedPiece(i, basis)


def annihilates(op: Form, f: Form) -> bool:
    """True iff the dual operator sends F to the zero form."""
    return contract(op, f).is_zero()


@dataclass
class ApolarityCheck:
    """Outcome of a generator containment test, with the first witness of
    failure (the generator and its nonzero contraction) when it fails."""

    contained: bool
    failing_generator: Form | None = None
    residual: Form | None = None

    def __bool__(self) -> bool:
        return self.contained


def is_apolar_ideal_contained(generators, f: Form) -> ApolarityCheck:
    """Do all generators annihilate F?

    Contraction is an action of the dual ring, so this suffices for the
    whole generated ideal to annihilate F.
    """
    for g in generators:
        res = contract(g, f)
        if not res.is_zero():
            return ApolarityCheck(False, g, res)
    return ApolarityCheck(True)


def ideal_piece_dimension(generators, t: int) -> int:
    """Dimension of the degree-t piece of the ideal the generators span.

    Computed as the rank of all (monomial x generator) products of degree
    t, which is exact because contraction-side questions in this package
    are all bounded in degree.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return 0
    nv = gens[0].num_vars
    rows = []
    for g in gens:
        if g.degree > t:
            continue
        for m in monomial_basis(nv, t - g.degree):
            rows.append(coefficient_vector(Form.monomial(g.ring, m) * g))
    if not rows:
        return 0
    p = modulus_of(c for g in gens for c in g.terms.values())
    if p is not None:
        return linalg.rank_mod([[int(e) for e in row] for row in rows], p)
    return linalg.rank(rows)


def verify_perp_generators(f: Form, generators, max_degree: int | None = None) -> bool:
    """Check a claimed generating set of the annihilator of F.

    Verifies (a) containment: every generator annihilates F, and (b) the
    generated ideal matches the annihilator dimension in every degree up
    to deg F + 1 (beyond which both are everything).
    """
    if not is_apolar_ideal_contained(generators, f):
        return False
    top = f.degree + 1 if max_degree is None else max_degree
    for t in range(top + 1):
        if ideal_piece_dimension(generators, t) != perp_piece(f, t).dimension:
            return False
    return True


@dataclass
class WaringDecomposition:
    """An exact expression of F as a weighted sum of d-th powers of the
    supplied pairwise independent linear forms."""

    linear_forms: list
    coefficients: list
    degree: int

    def combination(self) -> Form:
        """Rebuild the weighted power sum by sparse multiplication.

        This is deliberately a different expansion path from the solver's
        multinomial columns, so a zero residual is a real cross-check.
        """
        total = None
        for alpha, lf in zip(self.coefficients, self.linear_forms):
            piece = (lf ** self.degree) * alpha
            total = piece if total is None else total + piece
        return total

    def residual(self, f: Form) -> Form:
        return self.combination() - f

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "linear_forms": [format_form(lf) for lf in self.linear_forms],
            "coefficients": [scalar_to_str(a) for a in self.coefficients],
        }


def _as_coords(item, num_vars: int):
    if isinstance(item, Form):
        if item.ring != PRIMAL or item.degree != 1:
            raise ValueError("expected primal linear forms")
        if item.num_vars != num_vars:
            raise ValueError("point variable count does not match the form")
        vec = [0] * num_vars
        for mono, c in item.terms.items():
            vec[mono.index(1)] = c
        return tuple(vec)
    coords = tuple(item)
    if len(coords) != num_vars:
        raise ValueError("point coordinate count does not match")
    return coords


def _pairwise_independent(coord_list) -> tuple | None:
    for i in range(len(coord_list)):
        for j in range(i + 1, len(coord_list)):
            u, v = coord_list[i], coord_list[j]
            if all(not (u[a] * v[b] - u[b] * v[a])
                   for a in range(len(u)) for b in range(a + 1, len(u))):
                return (i, j)
    return None


def solve_waring(points, f: Form):
    """Solve for weights alpha with  sum alpha_i * L_i^d = F,  exactly.

    ``points`` may be primal linear forms or raw coordinate sequences.
    Returns a :class:`WaringDecomposition`, or None when the linear system
    is inconsistent (F is outside the span of the supplied powers).  The
    system is solved with free variables pinned to zero under the canonical
    column order, so the output is reproducible.
    """
    if f.ring != PRIMAL:
        raise ValueError("Waring decomposition expects a primal form")
    nv, d = f.num_vars, f.degree
    coords = [_as_coords(item, nv) for item in points]
    if not coords:
        return None
    dup = _pairwise_independent(coords)
    if dup is not None:
        raise ValueError(
            f"linear forms {dup[0]} and {dup[1]} are proportional; "
            "the apolarity setup requires pairwise independent points")
    cols = [linear_power_coefficients(c, d) for c in coords]
    rows = [[col[r] for col in cols] for r in range(len(cols[0]))]
    rhs = coefficient_vector(f)
    alphas = linalg.solve_linear(rows, rhs)
    if alphas is None:
        return None
    forms = [Form.linear(PRIMAL, c) for c in coords]
    return WaringDecomposition(forms, alphas, d)
