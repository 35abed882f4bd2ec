"""Acceptance suite: every criterion runs at its stated tolerance (exact
equality unless explicitly probabilistic) and prints one pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they happen.  Criterion 4 has an optional extended range gated behind
STARPOLAR_EXTENDED=1.
"""

import os
import random
import time
from fractions import Fraction
from math import comb

import pytest

from starpolar.apolar import (ideal_piece_dimension, is_apolar_ideal_contained,
                              perp_piece, solve_waring, verify_perp_generators)
from starpolar.existence import (classify, gamma_coefficients, jacobian_matrix,
                                 jacobian_rank_test, parameter_count, rho,
                                 rho_n2, DegenerateParametersError)
from starpolar.field import DEFAULT_PRIME, Fp, random_scalar
from starpolar.poly import (DUAL, Form, coefficient_vector, monomial_basis,
                            parse_form)
from starpolar.starconfig import (HyperplaneSet, build_star_configuration,
                                  hilbert_function, intersection_points,
                                  point_ideal_piece, random_hyperplanes,
                                  star_ideal_dimension_by_intersection,
                                  star_ideal_dimension_by_products,
                                  star_ideal_product_generators)
from starpolar import linalg
from helpers import EpsPoly


def _line(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" [{detail}]" if detail else ""
    print(f"\nACCEPTANCE {num:02d} {status} - {name}{suffix}")


# shared random instances for criteria 6 and 7
SHAPES = [(4, 2), (5, 2), (5, 3), (6, 3), (6, 4)]
INSTANCES_PER_SHAPE = 20


@pytest.fixture(scope="module")
def shape_instances():
    out = {}
    for idx, (r, n) in enumerate(SHAPES):
        rng = random.Random(1000 + idx)
        out[(r, n)] = [random_hyperplanes(n, r, rng)
                       for _ in range(INSTANCES_PER_SHAPE)]
    return out


def test_criterion_01_rho_closed_forms():
    t0 = time.perf_counter()
    ok = True
    for d in range(3, 31):
        for r in range(2, 40):
            ok = ok and rho(d, r, 2) == rho_n2(d, r)
            ok = ok and rho_n2(d, r) == Fraction(r * (r - 1) + 4 * r
                                                 - (d + 2) * (d + 1), 2)
        ok = ok and rho(d, d + 2, 3) == Fraction((d + 2) * (5 - d), 2)
        ok = ok and rho(d, d + 3, 4) == Fraction(((d + 6) * (3 - d) + 4) * (d + 3), 6)
        ok = ok and rho(d, d + 4, 5) == Fraction((d + 4) * (3 - d)
                                                 * (d * d + 9 * d + 38), 24)
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    _line(1, "rho closed forms, exact, d = 3..30", ok, f"{elapsed:.3f}s")
    assert ok


def test_criterion_02_exceptional_triples():
    expected = {(3, 5, 3): 20, (4, 6, 3): 35, (5, 7, 3): 56,
                (3, 6, 4): 35, (3, 7, 5): 56}
    details = []
    ok = True
    for (d, r, n), target in expected.items():
        t0 = time.perf_counter()
        rep = jacobian_rank_test(d, r, n)
        elapsed = time.perf_counter() - t0
        good = (rep.verdict == "RankFull" and rep.rank == target
                and rep.target == target and elapsed < 30.0)
        ok = ok and good
        details.append(f"({d},{r},{n}): {rep.rank}/{target} "
                       f"{rep.verdict} {elapsed:.2f}s")
    _line(2, "exceptional triples reach full rank", ok, "; ".join(details))
    assert ok, (
        "full rank observed on four of the five expected triples; (3,7,5) is "
        "stuck at 55/56 at every prime, seed, and exact integer point tried "
        "(the differential kernel is 8-dimensional: the 7 hyperplane "
        "rescalings plus one extra direction), so its power sums fill only "
        "a hyperplane of the cubics in six variables: " + "; ".join(details))


def test_criterion_03_nonexistence_evidence():
    ok = True
    details = []
    for (d, r, n) in [(3, 4, 3), (4, 5, 3)]:
        assert rho(d, r, n) < 0
        t0 = time.perf_counter()
        ranks = []
        for k in range(3):  # every trial individually deficient
            rep = jacobian_rank_test(d, r, n, seed=1 + k, trials=1)
            ranks.append(rep.rank)
            ok = ok and rep.rank < rep.target and rep.verdict == "RankDeficient"
        elapsed = time.perf_counter() - t0
        ok = ok and elapsed < 30.0
        details.append(f"({d},{r},{n}): ranks {ranks} < {comb(n + d, d)} "
                       f"{elapsed:.2f}s")
    _line(3, "rank deficit in every trial when rho < 0", ok, "; ".join(details))
    assert ok


def test_criterion_04_conjecture_sweep_desk_scale():
    t0 = time.perf_counter()
    ok = True
    details = []
    for d in range(3, 8):
        rep = jacobian_rank_test(d, d + 1, 2)
        ok = ok and rep.verdict == "RankFull" and rep.rank == comb(d + 2, 2)
        details.append(f"d={d}: {rep.rank}")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 300.0
    _line(4, "planar family (d, d+1, 2) full rank for d = 3..7", ok,
          f"{'; '.join(details)}; total {elapsed:.1f}s")
    assert ok


@pytest.mark.skipif(not os.environ.get("STARPOLAR_EXTENDED"),
                    reason="extended range: set STARPOLAR_EXTENDED=1")
def test_criterion_04_extended_conjecture_sweep():
    ok = True
    details = []
    for d in range(8, 14):
        rep = jacobian_rank_test(d, d + 1, 2)
        ok = ok and rep.verdict == "RankFull"
        details.append(f"d={d}: {rep.rank}/{rep.target}")
    _line(4, "extended planar family d = 8..13", ok, "; ".join(details))
    assert ok


def test_criterion_05_quadrics():
    ok = True
    details = []
    for n in (2, 3, 4):
        t0 = time.perf_counter()
        rep = jacobian_rank_test(2, n + 1, n)
        elapsed = time.perf_counter() - t0
        ok = (ok and rep.verdict == "RankFull" and rep.rank == comb(n + 2, 2)
              and elapsed < 30.0)
        details.append(f"n={n}: {rep.rank}/{comb(n + 2, 2)}")
    _line(5, "quadrics at the threshold r = n + 1", ok, "; ".join(details))
    assert ok


def test_criterion_06_hilbert_genericity(shape_instances):
    t0 = time.perf_counter()
    ok = True
    for (r, n), sets in shape_instances.items():
        for hset in sets:
            pts = intersection_points(hset)
            table = hilbert_function(pts, r)
            for t, value in enumerate(table.values):
                ok = ok and value == min(comb(n + t, t), comb(r, n))
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60.0
    _line(6, f"generic Hilbert function on {INSTANCES_PER_SHAPE} random sets "
             f"per shape", ok, f"{elapsed:.1f}s")
    assert ok


def test_criterion_07_ideal_route_cross_check(shape_instances):
    t0 = time.perf_counter()
    ok = True
    for (r, n), sets in shape_instances.items():
        gen_degree = r - n + 1
        for hset in sets:
            for t in range(r + 1):
                a = star_ideal_dimension_by_intersection(hset, t)
                b = star_ideal_dimension_by_products(hset, t)
                ok = ok and a == b
                if t < gen_degree:
                    ok = ok and a == 0
                elif t == gen_degree:
                    ok = ok and a == comb(r, n - 1)
    elapsed = time.perf_counter() - t0
    _line(7, "intersection and product routes agree for all t <= r", ok,
          f"{elapsed:.1f}s")
    assert ok


def test_criterion_08_golden_cuspidal_cubic():
    t0 = time.perf_counter()
    C = parse_form("x0^3 - x1^2*x2")
    gens = [parse_form(s, num_vars=3) for s in
            ["y2^2", "y0*y2", "y0*y1", "y1^3", "y0^3 + 3*y1^2*y2"]]
    piece2 = perp_piece(C, 2)
    ok = piece2.dimension == 3
    ok = ok and [str(b) for b in piece2.basis] == ["y0*y1", "y0*y2", "y2^2"]
    # the five generators span the annihilator exactly in degrees 2 and 3
    ok = ok and ideal_piece_dimension(gens, 2) == 3
    ok = ok and ideal_piece_dimension(gens, 3) == perp_piece(C, 3).dimension == 9
    ok = ok and verify_perp_generators(C, gens)
    # the four lines cut out an apolar star configuration
    lines = [parse_form(s, num_vars=3, ring=DUAL) for s in
             ["y0", "y1", "y1 - y2", "y0 + y1 + y2"]]
    hset = HyperplaneSet.from_forms(lines)
    star_gens = star_ideal_product_generators(hset)
    ok = ok and is_apolar_ideal_contained(star_gens, C).contained
    # and an exact power-sum decomposition over its six points
    pts = intersection_points(hset)
    deco = solve_waring([pt.coords for pt in pts], C)
    ok = ok and deco is not None and deco.residual(C).is_zero()
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    _line(8, "golden cuspidal cubic", ok, f"{elapsed:.3f}s")
    assert ok


def test_criterion_09_golden_conic_plus_tangent():
    t0 = time.perf_counter()
    G = parse_form("x0*(x2^2+x0*x1)")
    lines = [parse_form(s, num_vars=3, ring=DUAL) for s in
             ["y0 + 47/132*y1 - 3*y2",
              "4*y0 - 20/3*y1 - 10*y2",
              "2*y0 + 862/33*y1 + 7*y2",
              "11*y0 - 421/12*y1 + 6*y2"]]
    hset = HyperplaneSet.from_forms(lines)
    check = is_apolar_ideal_contained(star_ideal_product_generators(hset), G)
    ok = check.contained
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    _line(9, "golden conic plus tangent (exact rationals)", ok, f"{elapsed:.3f}s")
    assert ok


def _eps_jacobian(d, r, n, values, p):
    m = len(values)
    rows = []
    for k in range(m):
        params = [EpsPoly([v, Fp(1 if i == k else 0, p)])
                  for i, v in enumerate(values)]
        out = gamma_coefficients(d, r, n, params)
        rows.append([int(c.eps_coefficient()) if isinstance(c, EpsPoly) else 0
                     for c in out])
    return rows


def test_criterion_10_jacobian_oracle_equivalence():
    t0 = time.perf_counter()
    p = DEFAULT_PRIME
    rng = random.Random(314)
    checked = 0
    ok = True
    for n in (1, 2):
        for d in (1, 2, 3):
            for r in range(n, 5):
                m = parameter_count(d, r, n)
                points = 0
                while points < 5:
                    vals = [random_scalar(rng, p) for _ in range(m)]
                    try:
                        jet_rows = jacobian_matrix(d, r, n, vals)
                    except DegenerateParametersError:
                        continue
                    points += 1
                    checked += 1
                    ok = ok and jet_rows == _eps_jacobian(d, r, n, vals, p)
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60.0
    _line(10, "jet Jacobian equals nilpotent-epsilon oracle entrywise", ok,
          f"{checked} matrices, {elapsed:.1f}s")
    assert ok


def test_criterion_11_apolarity_round_trip_100():
    t0 = time.perf_counter()
    p = DEFAULT_PRIME
    rng = random.Random(272)
    ok = True
    cases = 0
    while cases < 100:
        n1 = rng.randrange(2, 4)
        d = rng.randrange(2, 5)
        count = rng.randrange(2, min(comb(n1 - 1 + d, d), 8))
        pts = [tuple(random_scalar(rng, p) for _ in range(n1))
               for _ in range(count)]
        norm = set()
        usable = True
        for pt in pts:
            if not any(pt):
                usable = False
                break
            k = next(i for i, c in enumerate(pt) if c)
            norm.add(tuple(c / pt[k] for c in pt))
        if not usable or len(norm) != count:
            continue
        alphas = [random_scalar(rng, p) for _ in range(count)]
        total = None
        for a, pt in zip(alphas, pts):
            piece = (Form.linear("x", pt) ** d) * a
            total = piece if total is None else total + piece
        if total is None or total.is_zero():
            continue
        cases += 1
        for j in range(1, d + 1):
            for g in point_ideal_piece(pts, j, n1):
                from starpolar.apolar import annihilates
                ok = ok and annihilates(g, total)
        deco = solve_waring(pts, total)
        ok = ok and deco is not None and deco.residual(total).is_zero()
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60.0
    _line(11, "apolarity round trip on 100 random power sums", ok,
          f"{elapsed:.1f}s")
    assert ok
