"""Built-in algebras and harmonic triples.

``A32``  basis I1, I2 (idempotents), I3 with I2 I3 = I3, I3^2 = 0.
``B``    the biharmonic algebra {1, I3}, I3^2 = 0.
``A53``  idempotents I1, I2, I3; I3 I4 = I4, I1 I5 = I5, all nilpotent products 0.
``A4``   {1, I4, I5} with I4, I5 squaring (and multiplying) to 0.
"""

from __future__ import annotations

from .algebra_core import CartanTable
from .charsys import LAPLACE, PdeSpec
from .gaussian import I, GaussianRational
from .reduction import VarTriple

A32 = CartanTable(n=3, m=2, nil_products={}, idem_action={3: 2}, name="A32")
B = CartanTable(n=2, m=1, nil_products={}, idem_action={2: 1}, labels=("1", "I3"), name="B")
A53 = CartanTable(n=5, m=3, nil_products={}, idem_action={4: 3, 5: 1}, name="A53")
A4 = CartanTable(n=3, m=1, nil_products={}, idem_action={2: 1, 3: 1}, labels=("1", "I4", "I5"), name="A4")

# the complex plane itself
C = CartanTable(n=1, m=1, name="C")

TABLES: dict[str, CartanTable] = {"A32": A32, "B": B, "A53": A53, "A4": A4}

_0 = GaussianRational(0)
_1 = GaussianRational(1)

# harmonic: 1 + e2^2 + e3^2 = 0
TRIPLE_A32 = VarTriple(A32, (I, _0, _1), (_0, I, _0))
TRIPLE_A53 = VarTriple(A53, (I, I, I, _0, _0), (_0, _0, _0, _1, _1))
# e2~(2), e3~(2) of TRIPLE_A32
TRIPLE_B = VarTriple(B, (_0, _1), (I, _0))
# e2~(1), e3~(1) of TRIPLE_A53
TRIPLE_A4 = VarTriple(A4, (I, _0, _0), (_0, _0, _1))

TRIPLES: dict[str, VarTriple] = {"A32": TRIPLE_A32, "B": TRIPLE_B, "A53": TRIPLE_A53, "A4": TRIPLE_A4}

PDES: dict[str, PdeSpec] = {"laplace": LAPLACE}


def table(name: str) -> CartanTable:
    try:
        return TABLES[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(TABLES)}") from None


def triple(name: str) -> VarTriple:
    try:
        return TRIPLES[name]
    except KeyError:
        raise KeyError(f"no fixture triple for preset {name!r}") from None


def example_bundle(name: str) -> dict:
    """Bundle used when the CLI gets no ``--bundle``: ``F_u(t) = t^3``, ``G_s(t) = t``."""
    t = table(name)
    cube = {"kind": "poly", "coeffs": [[0, 0], [0, 0], [0, 0], [1, 0]]}
    ident = {"kind": "poly", "coeffs": [[0, 0], [1, 0]]}
    return {"F": {str(u): cube for u in t.idempotents},
            "G": {str(s): ident for s in t.nilpotents}}
