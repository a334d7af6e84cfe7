import random

import pytest

from helpers import random_pde
from monogen import presets
from monogen.algebra_core import AlgElem, AlgebraError, CartanTable, mul, unit
from monogen.charsys import (
    LAPLACE, CharSystem, OrderBoundExceeded, PdeSpec, characteristic_components, characteristic_value,
    evaluate_system, is_reduction, projected_char_system, symbolic_char_expand,
)
from monogen.gaussian import GaussianRational as G
from monogen.poly import SymbolicPoly

S1 = ["1 + a1^2 + b1^2 = 0", "1 + a2^2 + b2^2 = 0", "a2*a3 + b2*b3 = 0"]
A53_SYSTEM = [
    "1 + a1^2 + b1^2 = 0", "1 + a2^2 + b2^2 = 0", "1 + a3^2 + b3^2 = 0",
    "a3*a4 + b3*b4 = 0", "a1*a5 + b1*b5 = 0",
]


def test_a32_laplace_system_exact():
    assert symbolic_char_expand(presets.A32, LAPLACE).lines() == S1


def test_a32_raw_components_before_normalization():
    raw = characteristic_components(presets.A32, LAPLACE)
    assert [str(p) for p in raw] == ["1 + a1^2 + b1^2", "1 + a2^2 + b2^2", "2*a2*a3 + 2*b2*b3"]


def test_a53_laplace_system_exact():
    assert symbolic_char_expand(presets.A53, LAPLACE).lines() == A53_SYSTEM


@pytest.mark.parametrize("u, lines", [
    (1, [S1[0]]),
    (2, S1[1:]),
])
def test_a32_projections(u, lines):
    assert projected_char_system(presets.A32, LAPLACE, u).lines() == lines


@pytest.mark.parametrize("u, picks", [(1, [0, 4]), (2, [1]), (3, [2, 3])])
def test_a53_projections(u, picks):
    assert projected_char_system(presets.A53, LAPLACE, u).lines() == [A53_SYSTEM[i] for i in picks]


def test_biharmonic_algebra_system():
    # B: 1 + e2^2 + e3^2 with e2 = a1 + a2 I3
    assert symbolic_char_expand(presets.B, LAPLACE).lines() == ["1 + a1^2 + b1^2 = 0", "a1*a2 + b1*b2 = 0"]


def test_projection_and_full_agree_for_one_idempotent():
    for table in (presets.B, presets.A4):
        assert projected_char_system(table, LAPLACE, 1).as_set() == symbolic_char_expand(table, LAPLACE).as_set()


def test_random_pdes_project_to_subsystems():
    rng = random.Random(11)
    for _ in range(20):
        pde = random_pde(rng)
        for table in presets.TABLES.values():
            full = symbolic_char_expand(table, pde)
            for u in table.idempotents:
                assert is_reduction(projected_char_system(table, pde, u), full)


def test_symbolic_value_matches_numeric_evaluation():
    # expanding symbolically then substituting == multiplying numbers in the algebra
    rng = random.Random(5)
    for table in presets.TABLES.values():
        pde = random_pde(rng)
        a = tuple(G(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(table.n))
        b = tuple(G(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(table.n))
        direct = characteristic_value(table, pde, unit(table, G(1)), AlgElem(a), AlgElem(b))
        env = {f"a{k}": v for k, v in enumerate(a, 1)} | {f"b{k}": v for k, v in enumerate(b, 1)}
        symbolic = [p.evaluate(env) for p in characteristic_components(table, pde)]
        assert list(direct.coeffs) == symbolic


def test_evaluate_system_on_fixture():
    system = symbolic_char_expand(presets.A32, LAPLACE)
    assert evaluate_system(system, presets.TRIPLE_A32.assignment()) == [0, 0, 0]


def test_order_bound():
    big = PdeSpec(7, {(7, 0, 0): 1})
    with pytest.raises(OrderBoundExceeded):
        symbolic_char_expand(presets.A32, big)
    assert symbolic_char_expand(presets.A32, big, max_order=7).lines()[0] == "1 = 0"


def test_bad_projection_index():
    with pytest.raises(AlgebraError):
        projected_char_system(presets.A32, LAPLACE, 3)


@pytest.mark.parametrize("order, coeffs", [
    (0, {(0, 0, 0): 1}), (2, {(1, 0, 0): 1}), (2, {(2, 0, 0): 0}), (2, {(3, -1, 0): 1}),
])
def test_pde_spec_rejects(order, coeffs):
    with pytest.raises(ValueError):
        PdeSpec(order, coeffs)


def test_pde_json_roundtrip():
    pde = PdeSpec(3, {(1, 1, 1): G(2, -1), (0, 0, 3): 1})
    assert PdeSpec.from_json(pde.to_json()) == pde


def test_char_system_dedups_and_drops_zero():
    p = SymbolicPoly.var("a1") + 1
    sys_ = CharSystem((p, 2 * p, SymbolicPoly()))
    assert sys_.lines() == ["1 + a1 = 0"]
