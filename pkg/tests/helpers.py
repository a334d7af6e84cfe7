"""Shared generators for the test suite."""

from __future__ import annotations

import random
from dataclasses import replace
from fractions import Fraction

from monogen.algebra_core import CartanTable
from monogen.charsys import PdeSpec
from monogen.gaussian import GaussianRational as G
from monogen.monogenic import Exponential, MonogenicFn, Polynomial
from monogen.reduction import VarTriple

I = G(0, 1)


# ---------------------------------------------------------------------------
# invalid single-entry corruptions of a table
# ---------------------------------------------------------------------------


def _with(table: CartanTable, **changes) -> CartanTable:
    # drop labels: they are meaningless once n changes
    return replace(table, labels=None, **changes)


def mutations(table: CartanTable) -> list[tuple[str, CartanTable]]:
    """Single-entry corruptions, each of which breaks a table rule."""
    n, m = table.n, table.m
    act = dict(table.idem_action)
    nil = dict(table.nil_products)
    out = [
        ("m = 0", _with(table, m=0)),
        ("m > n", _with(table, m=n + 1)),
        ("m < 0", _with(table, m=-1)),
        ("n = 0", _with(table, n=0)),
        ("n not an int", _with(table, n=str(n))),
        ("m not an int", _with(table, m=float(m))),
    ]
    for s in table.nilpotents:
        for bad in (0, -1, m + 1, 10 ** 6, True, 1.5, "1"):
            out.append((f"u_{s} = {bad!r}", _with(table, idem_action={**act, s: bad})))
        out.append((f"u_{s} missing", _with(table, idem_action={k: v for k, v in act.items() if k != s})))
    out += [
        ("idem_action key 0", _with(table, idem_action={**act, 0: 1})),
        ("idem_action key is an idempotent", _with(table, idem_action={**act, 1: 1})),
        ("idem_action key n+1", _with(table, idem_action={**act, n + 1: 1})),
        ("nil key with an idempotent", _with(table, nil_products={**nil, (1, n): ()})),
        ("nil key beyond n", _with(table, nil_products={**nil, (n, n + 1): ()})),
        ("nil key malformed", _with(table, nil_products={**nil, f"{n},{n}": ()})),
        ("nil entry not a list", _with(table, nil_products={**nil, (n, n): 5})),
        ("nil term malformed", _with(table, nil_products={**nil, (n, n): ((n,),)})),
    ]
    for r in table.nilpotents:
        for s in range(r, n + 1):
            bound = max(r, s)
            out += [
                (f"I{r}I{s} in I{bound}", _with(table, nil_products={**nil, (r, s): ((bound, 1),)})),
                (f"I{r}I{s} in I{n + 1}", _with(table, nil_products={**nil, (r, s): ((n + 1, 1),)})),
                (f"I{r}I{s} in I0", _with(table, nil_products={**nil, (r, s): ((0, 1),)})),
            ]
            if r < s and s < n:
                # I_r I_s and I_s I_r disagree
                out.append((f"I{r}I{s} != I{s}I{r}", _with(
                    table, nil_products={**nil, (r, s): ((n, 1),), (s, r): ((n, 2),)})))
    # cross-idempotent nilpotent products break associativity
    for r in table.nilpotents:
        for k in range(r + 1, n + 1):
            if act[r] != act[k]:
                out.append((f"I{r}^2 = I{k} across idempotents",
                            _with(table, nil_products={**nil, (r, r): ((k, 1),)})))
    return out


# ---------------------------------------------------------------------------
# exact harmonic triples
# ---------------------------------------------------------------------------


def harmonic_pair(s: Fraction) -> tuple[G, G]:
    """``(a, b)`` with ``1 + a^2 + b^2 = 0`` for any nonzero rational ``s``."""
    return G(0, (s + 1 / s) / 2), G((1 / s - s) / 2)


def _rand_frac(rng: random.Random) -> Fraction:
    while True:
        v = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        if v:
            return v


def random_harmonic_triple(table: CartanTable, rng: random.Random) -> VarTriple:
    """Exact solution of the Laplace characteristic system for nilpotents with zero products.

    Idempotent parts come from ``harmonic_pair``; each nilpotent gets
    ``(a_s, b_s) = lam (b_u, -a_u)`` which solves ``a_u a_s + b_u b_s = 0``.
    """
    if table.nil_products:
        raise ValueError("only tables with vanishing nilpotent products")
    a, b = [None] * table.n, [None] * table.n
    for u in table.idempotents:
        a[u - 1], b[u - 1] = harmonic_pair(_rand_frac(rng))
    for s in table.nilpotents:
        u = table.idem_action[s]
        lam = G(_rand_frac(rng), rng.randint(-3, 3))
        a[s - 1], b[s - 1] = lam * b[u - 1], -lam * a[u - 1]
    return VarTriple(table, tuple(a), tuple(b), check=False)


# ---------------------------------------------------------------------------
# random data
# ---------------------------------------------------------------------------


def random_gaussian_int(rng: random.Random, lo: int = -3, hi: int = 3) -> G:
    return G(rng.randint(lo, hi), rng.randint(lo, hi))


def random_pde(rng: random.Random, max_order: int = 3) -> PdeSpec:
    N = rng.randint(1, max_order)
    idx = [(a, b, N - a - b) for a in range(N + 1) for b in range(N + 1 - a)]
    coeffs = {}
    for k in rng.sample(idx, rng.randint(1, len(idx))):
        c = random_gaussian_int(rng)
        if c:
            coeffs[k] = c
    if not coeffs:
        coeffs[idx[0]] = G(1)
    return PdeSpec(N, coeffs)


_SMALL = [G(0), G(0), G(1), G(-1), I, -I, G(1, 1), G(2), G(0, 2), G(Fraction(1, 2), -1)]


def random_triple(table: CartanTable, rng: random.Random, zero_bias: float = 0.5) -> VarTriple:
    """Exact triple with many zero and real entries, so both independence branches occur."""
    def pick():
        return G(0) if rng.random() < zero_bias else rng.choice(_SMALL)
    a = tuple(pick() for _ in range(table.n))
    b = tuple(pick() for _ in range(table.n))
    return VarTriple(table, a, b, check=False)


def random_poly(rng: random.Random, deg: int = 5, scale: float = 1.0) -> Polynomial:
    return Polynomial(tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) * scale / (j + 1)
                            for j in range(deg + 1)))


def random_exp(rng: random.Random, scale: float = 0.5) -> Exponential:
    return Exponential(complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale)))


def random_fn(triple: VarTriple, rng: random.Random, kind: str = "mixed") -> MonogenicFn:
    table = triple.table

    def pick():
        if kind == "poly" or (kind == "mixed" and rng.random() < 0.5):
            return random_poly(rng, rng.randint(0, 5))
        return random_exp(rng)
    return MonogenicFn(triple, {u: pick() for u in table.idempotents}, {s: pick() for s in table.nilpotents})


def smooth_fn(triple: VarTriple) -> MonogenicFn:
    """Fixed data with nonzero third derivatives and modest growth on [-2, 2]^3."""
    table = triple.table
    F = {u: Exponential(complex(0.4, 0.15 * u)) for u in table.idempotents}
    G_ = {s: Polynomial((1, 0.5j, 0.25, 0.1, 0.02)) for s in table.nilpotents}
    return MonogenicFn(triple, F, G_)
