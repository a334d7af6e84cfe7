"""Characteristic equations of constant-coefficient PDEs in an algebra.

For ``L_N = sum C_{abg} d^N / dx^a dy^b dz^g`` and vectors ``e1 = 1, e2, e3``
the characteristic polynomial is ``X(e1, e2, e3) = sum C_{abg} e1^a e2^b e3^g``.
Expanding over the basis with symbolic ``e2 = sum a_r I_r``,
``e3 = sum b_r I_r`` gives the characteristic system ``V_1 = ... = V_n = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .algebra_core import AlgElem, AlgebraError, CartanTable, basis, mul, unit
from .gaussian import GaussianRational, as_gaussian
from .poly import MissingVariable, SymbolicPoly, variables_for

DEFAULT_MAX_ORDER = 6

__all__ = [
    "PdeSpec", "CharSystem", "OrderBoundExceeded", "MissingVariable", "LAPLACE",
    "characteristic_value", "characteristic_components", "symbolic_char_expand",
    "projected_char_system", "is_reduction", "evaluate_system",
]


class OrderBoundExceeded(AlgebraError):
    pass


@dataclass(frozen=True)
class PdeSpec:
    """``{(alpha, beta, gamma): C}`` with ``alpha + beta + gamma == order``."""

    order: int
    coeffs: Mapping[tuple[int, int, int], GaussianRational]

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"PDE order must be a positive integer, got {self.order!r}")
        clean = {}
        for idx, c in self.coeffs.items():
            idx = tuple(int(v) for v in idx)
            if len(idx) != 3 or min(idx) < 0 or sum(idx) != self.order:
                raise ValueError(f"multi-index {idx} does not sum to N={self.order}")
            c = as_gaussian(c)
            if c:
                clean[idx] = clean.get(idx, 0) + c
        if not any(clean.values()):
            raise ValueError("PDE has no nonzero coefficient")
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def from_json(cls, data: dict) -> "PdeSpec":
        coeffs = {}
        for key, quad in data["coeffs"].items():
            idx = tuple(int(v) for v in key.split(","))
            coeffs[idx] = as_gaussian(quad)
        return cls(int(data["N"]), coeffs)

    def to_json(self) -> dict:
        return {
            "N": self.order,
            "coeffs": {",".join(map(str, k)): as_gaussian(v).to_quad()
                       for k, v in sorted(self.coeffs.items())},
        }


LAPLACE = PdeSpec(2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})


def _powers(x: AlgElem, k: int, table: CartanTable, one) -> list[AlgElem]:
    out = [unit(table, one)]
    for _ in range(k):
        out.append(mul(out[-1], x, table))
    return out


def characteristic_value(table: CartanTable, pde: PdeSpec, e1: AlgElem, e2: AlgElem,
                         e3: AlgElem) -> AlgElem:
    """Evaluate ``X(e1, e2, e3)`` in the algebra for any scalar carrier."""
    sample = e2.coeffs[0] if e2.coeffs else 0
    one = sample * 0 + 1
    N = pde.order
    p1 = _powers(e1, N, table, one)
    p2 = _powers(e2, N, table, one)
    p3 = _powers(e3, N, table, one)
    total = None
    for (al, be, ga), c in pde.coeffs.items():
        term = mul(mul(p1[al], p2[be], table), p3[ga], table).scale(c)
        total = term if total is None else total + term
    return total


def characteristic_components(table: CartanTable, pde: PdeSpec,
                              max_order: int = DEFAULT_MAX_ORDER) -> list[SymbolicPoly]:
    """Raw basis coefficients ``V_1..V_n`` of ``X(1, e2, e3)``."""
    if pde.order > max_order:
        raise OrderBoundExceeded(f"PDE order {pde.order} exceeds bound {max_order}")
    a, b = variables_for(table.n)
    one = SymbolicPoly.constant(1)
    e1 = unit(table, one)
    return list(characteristic_value(table, pde, e1, AlgElem(tuple(a)), AlgElem(tuple(b))).coeffs)


@dataclass(frozen=True)
class CharSystem:
    """Polynomial equations ``p = 0``, normalized and free of duplicates."""

    equations: tuple[SymbolicPoly, ...] = field(default_factory=tuple)

    def __post_init__(self):
        seen, eqs = set(), []
        for p in self.equations:
            p = p.normalized()
            if p.is_zero() or p in seen:
                continue
            seen.add(p)
            eqs.append(p)
        object.__setattr__(self, "equations", tuple(eqs))

    def __len__(self):
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)

    def as_set(self) -> frozenset:
        return frozenset(self.equations)

    def variables(self) -> set[str]:
        out: set[str] = set()
        for p in self.equations:
            out |= p.variables()
        return out

    def lines(self) -> list[str]:
        return [f"{p} = 0" for p in self.equations]

    def __str__(self):
        return "\n".join(self.lines())

    @classmethod
    def from_polys(cls, polys: Iterable[SymbolicPoly]) -> "CharSystem":
        return cls(tuple(polys))


def symbolic_char_expand(table: CartanTable, pde: PdeSpec,
                         max_order: int = DEFAULT_MAX_ORDER) -> CharSystem:
    return CharSystem.from_polys(characteristic_components(table, pde, max_order))


def projected_char_system(table: CartanTable, pde: PdeSpec, u: int,
                          max_order: int = DEFAULT_MAX_ORDER) -> CharSystem:
    """System generated by ``X(I_u, e2 I_u, e3 I_u) = 0``, expanded directly."""
    if not 1 <= u <= table.m:
        raise AlgebraError(f"idempotent index {u} outside [1, {table.m}]")
    if pde.order > max_order:
        raise OrderBoundExceeded(f"PDE order {pde.order} exceeds bound {max_order}")
    a, b = variables_for(table.n)
    one = SymbolicPoly.constant(1)
    iu = basis(table, u, one)
    e2 = mul(AlgElem(tuple(a)), iu, table)
    e3 = mul(AlgElem(tuple(b)), iu, table)
    # x^0 is the algebra unit, but alpha + beta + gamma = N >= 1 keeps a
    # factor I_u in every term.
    value = characteristic_value(table, pde, iu, e2, e3)
    return CharSystem.from_polys(value.coeffs)


def is_reduction(sub: CharSystem, full: CharSystem) -> bool:
    """True iff ``sub`` is obtained from ``full`` by discarding equations."""
    return sub.as_set() <= full.as_set()


def evaluate_system(system: CharSystem, assignment: Mapping[str, object]) -> list:
    """Residual of each equation at ``assignment`` (names like ``"a2"``)."""
    return [p.evaluate(assignment) for p in system.equations]


def triple_assignment(a, b) -> dict[str, object]:
    """Variable assignment ``{a1: .., b1: ..}`` from coefficient vectors."""
    out = {f"a{r}": v for r, v in enumerate(a, 1)}
    out.update({f"b{r}": v for r, v in enumerate(b, 1)})
    return out
