import math
import random
from dataclasses import replace
from fractions import Fraction

import pytest

from helpers import random_fn, smooth_fn
from monogen import presets
from monogen.algebra_core import AlgElem
from monogen.charsys import LAPLACE, PdeSpec, evaluate_system, symbolic_char_expand
from monogen.gaussian import GaussianRational as G
from monogen.monogenic import HypothesisError, MonogenicFn, Polynomial, eval_monogenic
from monogen.reduction import VarTriple
from monogen.verify import (
    FdConfig, VerificationReport, central_stencil, check_monogenic, fd_mixed, fd_partial,
    fornberg_weights, pde_residual, reduced_functions, sample_points, verify_theorem2,
)

I = G(0, 1)


def test_fd_config_rejects():
    for kwargs in ({"h": 0}, {"tol": -1}, {"order": 3}, {"h": math.nan}):
        with pytest.raises(ValueError):
            FdConfig(**kwargs)


def test_report_invariant():
    r = VerificationReport("x", 1e-3, 1e-5, (1e-6, 2e-6))
    assert r.passed and r.max_residual == 2e-6 and r.points == 2
    assert not replace(r, residuals=(1e-4,)).passed
    assert set(r.to_json()) == {"op", "h", "tol", "max_residual", "pass", "points", "seed"}


def test_fornberg_known_weights():
    assert fornberg_weights(2, (-1, 0, 1)) == (1, -2, 1)
    assert fornberg_weights(1, (-2, -1, 0, 1, 2)) == (
        Fraction(1, 12), Fraction(-2, 3), 0, Fraction(2, 3), Fraction(-1, 12))
    assert [w for _, w in central_stencil(4, 2)] == [1, -4, 6, -4, 1]


def test_stencils_exact_on_low_degree():
    # central stencil of accuracy p is exact on polynomials of degree < d + p
    for d in range(1, 5):
        for acc in (2, 4):
            for deg in range(d + acc):
                s = sum(w * Fraction(o) ** deg for o, w in central_stencil(d, acc))
                assert s == (math.factorial(d) if deg == d else 0)


def test_fd_partial_of_identity_is_unit():
    fn = MonogenicFn(presets.TRIPLE_A32, {1: Polynomial((0, 1)), 2: Polynomial((0, 1))})
    f = lambda p: eval_monogenic(fn, p)
    d = fd_partial(f, (0.3, 0.2, -0.1), 0, FdConfig(1e-3))
    assert (d - AlgElem((1, 1, 0))).max_abs() < 1e-10


def test_fd_partial_of_constant_is_zero():
    f = lambda p: AlgElem((2 + 1j, 3))
    for order in (2, 4):
        assert fd_partial(f, (1, 2, 3), 1, FdConfig(1e-3, order=order)).max_abs() == 0


def test_order4_exact_on_cubic():
    f = lambda p: AlgElem((complex(p[0] ** 3 - 2 * p[0]),))
    d = fd_partial(f, (0.7, 0, 0), 0, FdConfig(1e-2, order=4))
    assert abs(d.coeffs[0] - (3 * 0.49 - 2)) < 1e-11


def test_fd_mixed_matches_product_rule():
    f = lambda p: AlgElem((complex(p[0] ** 2 * p[1] * p[2] ** 3),))
    d = fd_mixed(f, (0.5, 1.5, -1.0), (2, 1, 1), FdConfig(1e-2))
    assert abs(d.coeffs[0] - 2 * 3 * (-1.0) ** 2) < 1e-3


@pytest.mark.parametrize("name", list(presets.TABLES))
def test_monogenic_fd(name):
    triple = presets.triple(name)
    fn = smooth_fn(triple)
    pts = sample_points(15, 2, triple)
    fine = check_monogenic(fn, pts, FdConfig(1e-3, 1e-5))
    coarse = check_monogenic(fn, pts, FdConfig(1e-2, 1e-3))
    assert fine.passed
    assert 50 <= coarse.max_residual / fine.max_residual <= 200


def test_polynomial_data_small_h():
    triple = presets.TRIPLE_A53
    fn = MonogenicFn(triple, {u: Polynomial((1, 1j, 0.5)) for u in (1, 2, 3)}, {4: Polynomial((0, 1))})
    assert check_monogenic(fn, sample_points(10, 0, triple), FdConfig(1e-4, 1e-6)).passed


def test_constant_is_monogenic_exactly():
    fn = MonogenicFn(presets.TRIPLE_A32, {1: Polynomial((3,)), 2: Polynomial((1j,))}, {3: Polynomial((2,))})
    r = check_monogenic(fn, sample_points(5, 0), FdConfig())
    assert r.max_residual < 1e-12


def test_swapped_evaluator_is_caught():
    triple = presets.TRIPLE_A32
    swapped = VarTriple(triple.table, triple.b, triple.a)
    fn = smooth_fn(triple)
    wrong = smooth_fn(swapped)
    r = check_monogenic(fn, sample_points(10, 0, triple), FdConfig(),
                        evaluator=lambda p: eval_monogenic(wrong, p))
    assert r.max_residual > 0.01


@pytest.mark.parametrize("name", list(presets.TABLES))
def test_laplace_residual_on_harmonic_triples(name):
    triple = presets.triple(name)
    cfg = FdConfig(1e-3, 10 * 1e-3 ** 2)
    r = pde_residual(smooth_fn(triple), LAPLACE, sample_points(15, 3, triple), cfg)
    assert r.passed


def test_laplace_of_square_in_b_vanishes():
    fn = MonogenicFn(presets.TRIPLE_B, {1: Polynomial((0, 0, 1))})
    r = pde_residual(fn, LAPLACE, sample_points(10, 0), FdConfig(1e-3, 1e-6), scaled=False)
    assert r.passed


def test_non_harmonic_triple_detected():
    triple = VarTriple(presets.A32, (G(1), G(0), G(0)), (G(0), G(1), G(0)), check=False)
    square = Polynomial((0, 0, 1))
    fn = MonogenicFn(triple, {1: square, 2: square})
    f = lambda p: eval_monogenic(fn, p, check_hypothesis=False)
    r = pde_residual(fn, LAPLACE, sample_points(10, 0), FdConfig(1e-3, 1e-5), evaluator=f, scaled=False)
    # Laplacian of (x + y)^2 and of (x + z)^2 is 4 each
    assert abs(r.max_residual - math.sqrt(32)) < 1e-4


def test_pde_order_guard():
    fn = smooth_fn(presets.TRIPLE_B)
    with pytest.raises(ValueError):
        pde_residual(fn, PdeSpec(5, {(5, 0, 0): 1}), [(0, 0, 0)], FdConfig())
    with pytest.raises(ValueError):
        pde_residual(fn, PdeSpec(4, {(4, 0, 0): 1}), [(0, 0, 0)], FdConfig(1e-4))


def test_third_order_pde():
    # in B with e2 = I3, e3 = i: e2^2 = 0 and 1 + e3^2 = 0
    pde = PdeSpec(3, {(1, 2, 0): 1, (3, 0, 0): 2, (1, 0, 2): 2})
    triple = presets.TRIPLE_B
    assert evaluate_system(symbolic_char_expand(triple.table, pde), triple.assignment()) == [0, 0]
    r = pde_residual(smooth_fn(triple), pde, sample_points(10, 0), FdConfig(1e-2, 1e-2))
    assert r.passed


@pytest.mark.parametrize("name, summands", [("A32", 2), ("A53", 3), ("B", 1), ("A4", 1)])
def test_decomposition(name, summands):
    triple = presets.triple(name)
    fn = random_fn(triple, random.Random(7))
    r = verify_theorem2(fn, sample_points(30, 5, triple))
    assert r.passed and len(r.details["reduced"]) == summands


def test_reduced_functions_example_identifications():
    fn = MonogenicFn(presets.TRIPLE_A53, {1: Polynomial((1,)), 2: Polynomial((2,)), 3: Polynomial((3,))},
                     {4: Polynomial((4,)), 5: Polynomial((5,))})
    pieces = reduced_functions(fn)
    # u=1 keeps G5 (reduced index 3), u=3 keeps G4 (reduced index 2), u=2 keeps none
    assert pieces[0].fn.G[3] == Polynomial((5,)) and pieces[0].fn.G[2].is_zero()
    assert pieces[1].fn.G[2].is_zero() and pieces[1].fn.G[3].is_zero()
    assert pieces[2].fn.G[2] == Polynomial((4,)) and pieces[2].fn.G[3].is_zero()
    assert [p.fn.F[1] for p in pieces] == [Polynomial((k,)) for k in (1, 2, 3)]


def test_decomposition_first_component_of_a32():
    fn = MonogenicFn(presets.TRIPLE_A32, {1: Polynomial((0, 0, 1))})
    p = (0.5, 1.0, -1.0)
    piece = reduced_functions(fn)[0]
    value = eval_monogenic(piece.fn, p)
    # reduced triple for u=1 is scalar: Phi~_1 = F1(xi_1)
    assert abs(value.coeffs[0] - (0.5 + 1j) ** 2) < 1e-14 and value.coeffs[1] == 0


def test_decomposition_hypothesis():
    triple = VarTriple(presets.A32, (G(1), I, G(0)), (G(2), G(0), I))
    with pytest.raises(HypothesisError):
        verify_theorem2(MonogenicFn(triple), [(0, 0, 0)])


def test_sample_points_deterministic_and_in_box():
    a = sample_points(50, 7, presets.TRIPLE_A32)
    assert a == sample_points(50, 7, presets.TRIPLE_A32)
    assert a != sample_points(50, 8, presets.TRIPLE_A32)
    assert all(-2 <= c <= 2 for p in a for c in p)


def test_sample_points_avoid_singular_tube():
    # a huge tube around the z and y axes must still be honoured
    pts = sample_points(40, 0, presets.TRIPLE_A32, tube=0.5)
    assert all(math.hypot(p.x, p.y) > 0.5 and math.hypot(p.x, p.z) > 0.5 for p in pts)


def test_decomposition_detects_wrong_identification(monkeypatch):
    # G4 and G5 swapped onto each other's reduced index
    import monogen.verify as verify_mod

    real = verify_mod.reduced_functions

    def swapped(fn):
        pieces = real(fn)
        G_swapped = {2: fn.G[5], 3: fn.G[4]}
        return [replace(p, fn=MonogenicFn(p.fn.triple, p.fn.F, G_swapped)) for p in pieces]

    monkeypatch.setattr(verify_mod, "reduced_functions", swapped)
    fn = MonogenicFn(presets.TRIPLE_A53, {}, {4: Polynomial((1,)), 5: Polynomial((2,))})
    r = verify_theorem2(fn, sample_points(5, 0, presets.TRIPLE_A53))
    assert r.max_residual > 0.1
