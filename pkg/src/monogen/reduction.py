"""Reduced algebra ``1 (+)_s N`` and reduced triples.

For an algebra ``A_n^m = S (+)_s N`` the subalgebra spanned by
``{1, I_{m+1}, ..., I_n}`` has a single idempotent. A triple ``1, e2, e3``
of ``A_n^m`` induces, for every idempotent ``I_u``, the triple

    e2~(u) = a_u + I_u Rad e2,   e3~(u) = b_u + I_u Rad e3

in that subalgebra, which satisfies the same characteristic equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra_core import (
    PIVOT_TOL, AlgElem, AlgebraError, CartanTable, DimensionMismatch, basis, mul,
    rad_project, real_lin_independent, unit,
)
from .charsys import PdeSpec, characteristic_value, symbolic_char_expand, evaluate_system, triple_assignment
from .gaussian import GaussianRational, imag_part, is_exact, real_part

THEOREM1_TOL = 1e-10


class TripleError(AlgebraError):
    pass


@dataclass(frozen=True)
class VarTriple:
    """``e1 = 1``, ``e2 = sum a_r I_r``, ``e3 = sum b_r I_r`` in ``table``.

    Real-linear independence of ``1, e2, e3`` is checked unless
    ``check=False`` (reduced triples are often dependent by design).
    """

    table: CartanTable
    a: tuple
    b: tuple
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        n = self.table.n
        if len(self.a) != n or len(self.b) != n:
            raise DimensionMismatch(
                f"triple coefficients must have length {n}, got {len(self.a)} and {len(self.b)}")
        if self.check and not self.independent():
            raise TripleError("1, e2, e3 are linearly dependent over R")

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.a + self.b)

    def _one(self):
        return GaussianRational(1) if self.exact else 1.0 + 0j

    @property
    def e1(self) -> AlgElem:
        return unit(self.table, self._one())

    @property
    def e2(self) -> AlgElem:
        return AlgElem(self.a)

    @property
    def e3(self) -> AlgElem:
        return AlgElem(self.b)

    def independent(self) -> bool:
        return real_lin_independent([self.e1, self.e2, self.e3])

    def surjective(self, u: int) -> bool:
        """``f_u(E_3) = C``: ``a_u`` or ``b_u`` is not real."""
        return bool(imag_part(self.a[u - 1])) or bool(imag_part(self.b[u - 1]))

    def hypothesis_failures(self) -> list[int]:
        """Idempotent indices where ``f_u(E_3) = C`` fails."""
        return [u for u in self.table.idempotents if not self.surjective(u)]

    def zeta(self, x, y, z) -> AlgElem:
        return self.e1.scale(x) + self.e2.scale(y) + self.e3.scale(z)

    def to_complex(self) -> "VarTriple":
        return VarTriple(self.table, tuple(complex(v) for v in self.a),
                         tuple(complex(v) for v in self.b), check=False)

    def assignment(self) -> dict:
        return triple_assignment(self.a, self.b)


def _scalar_from_json(v):
    if isinstance(v, list) and len(v) == 4 and all(isinstance(t, int) for t in v):
        return GaussianRational.from_quad(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(t, (int, float)) for t in v):
        return complex(float(v[0]), float(v[1]))
    raise TripleError(f"triple entry {v!r} is neither [re, im] nor a four-integer rational")


def triple_from_json(data: dict, table: CartanTable, check: bool = True) -> VarTriple:
    """Parse ``{"a": [...], "b": [...]}``; all-rational input stays exact."""
    try:
        a = [_scalar_from_json(v) for v in data["a"]]
        b = [_scalar_from_json(v) for v in data["b"]]
    except (KeyError, TypeError) as exc:
        raise TripleError(f"triple JSON needs lists 'a' and 'b' ({exc})") from None
    except ZeroDivisionError:
        raise TripleError("zero denominator in triple entry") from None
    if not all(isinstance(v, GaussianRational) for v in a + b):
        a = [complex(v) for v in a]
        b = [complex(v) for v in b]
    return VarTriple(table, tuple(a), tuple(b), check=check)


def _scalar_to_json(v, exact: bool) -> list:
    if exact:
        return GaussianRational(v).to_quad()
    v = complex(v)
    return [v.real, v.imag]


def triple_to_json(triple: VarTriple) -> dict:
    exact = triple.exact
    return {"a": [_scalar_to_json(v, exact) for v in triple.a],
            "b": [_scalar_to_json(v, exact) for v in triple.b]}


@dataclass(frozen=True)
class ReducedAlgebra:
    """``1 (+)_s N`` with ``index_map`` sending parent nilpotent indices to reduced ones."""

    parent: CartanTable
    table: CartanTable
    index_map: dict

    def embed(self, x: AlgElem) -> AlgElem:
        """``x0 + sum x_k I_k`` as the parent element ``x0 (I_1+..+I_m) + sum x_k I_k``."""
        if len(x) != self.table.n:
            raise DimensionMismatch(f"expected a reduced element of dimension {self.table.n}")
        coeffs = [x.coeffs[0]] * self.parent.m + [None] * (self.parent.n - self.parent.m)
        for s, t in self.index_map.items():
            coeffs[s - 1] = x.coeffs[t - 1]
        return AlgElem(tuple(coeffs))

    def transport(self, radical: AlgElem, scalar) -> AlgElem:
        """``scalar + radical`` where ``radical`` lives in the parent radical."""
        coeffs = [scalar] + [None] * (self.table.n - 1)
        for s, t in self.index_map.items():
            coeffs[t - 1] = radical.coeffs[s - 1]
        return AlgElem(tuple(coeffs))


def reduced_algebra(table: CartanTable) -> ReducedAlgebra:
    m = table.m
    index_map = {s: s - m + 1 for s in table.nilpotents}
    nil = {}
    for r in table.nilpotents:
        for s in table.nilpotents:
            if r <= s:
                terms = table.product(r, s)
                if terms:
                    nil[(index_map[r], index_map[s])] = tuple((index_map[k], c) for k, c in terms)
    labels = ("1",) + tuple(table.label(s) for s in table.nilpotents)
    reduced = CartanTable(
        n=table.n - m + 1, m=1, nil_products=nil,
        idem_action={index_map[s]: 1 for s in table.nilpotents},
        labels=labels, name=f"reduced({table.name})" if table.name else None)
    return ReducedAlgebra(table, reduced, index_map)


@dataclass(frozen=True)
class ReducedTriple:
    u: int
    algebra: ReducedAlgebra
    a_tilde: AlgElem
    b_tilde: AlgElem
    rad_a: AlgElem  # I_u Rad e2, in the parent algebra
    rad_b: AlgElem

    def as_triple(self, check: bool = False) -> VarTriple:
        return VarTriple(self.algebra.table, self.a_tilde.coeffs, self.b_tilde.coeffs, check=check)


def _check_u(table: CartanTable, u: int):
    if not isinstance(u, int) or not 1 <= u <= table.m:
        raise AlgebraError(f"idempotent index {u!r} outside [1, {table.m}]")


def reduced_triple(triple: VarTriple, u: int, reduced: ReducedAlgebra | None = None) -> ReducedTriple:
    table = triple.table
    _check_u(table, u)
    reduced = reduced or reduced_algebra(table)
    iu = basis(table, u, triple._one())
    rad_a = mul(iu, rad_project(triple.e2, table), table)
    rad_b = mul(iu, rad_project(triple.e3, table), table)
    return ReducedTriple(
        u=u, algebra=reduced,
        a_tilde=reduced.transport(rad_a, triple.a[u - 1]),
        b_tilde=reduced.transport(rad_b, triple.b[u - 1]),
        rad_a=rad_a, rad_b=rad_b)


@dataclass(frozen=True)
class Theorem1Result:
    u: int
    residual: AlgElem
    residual_norm: float
    passed: bool
    exact: bool
    hypothesis_ok: bool

    def to_json(self) -> dict:
        return {"u": self.u, "residual_norm": self.residual_norm, "pass": self.passed,
                "exact": self.exact, "hypothesis_ok": self.hypothesis_ok}


def full_system_residuals(table: CartanTable, pde: PdeSpec, triple: VarTriple) -> list:
    return evaluate_system(symbolic_char_expand(table, pde), triple.assignment())


def _residual_zero(values, exact: bool, tol: float) -> bool:
    if exact:
        return all(not v for v in values)
    return all(abs(complex(v)) <= tol for v in values)


def verify_theorem1(table: CartanTable, pde: PdeSpec, triple: VarTriple,
                    tol: float = THEOREM1_TOL) -> list[Theorem1Result]:
    """Evaluate ``X(1, e2~(u), e3~(u))`` in the reduced algebra for each ``u``.

    Exact triples are checked exactly. If the triple does not solve the full
    characteristic system, ``hypothesis_ok`` is False on every result.
    """
    exact = triple.exact
    full = characteristic_value(table, pde, triple.e1, triple.e2, triple.e3)
    hypothesis_ok = _residual_zero(full.coeffs, exact, tol)
    reduced = reduced_algebra(table)
    out = []
    for u in table.idempotents:
        rt = reduced_triple(triple, u, reduced)
        one = GaussianRational(1) if exact else 1.0 + 0j
        res = characteristic_value(reduced.table, pde, unit(reduced.table, one), rt.a_tilde, rt.b_tilde)
        ok = _residual_zero(res.coeffs, exact, tol)
        out.append(Theorem1Result(u, res, res.norm(), ok, exact, hypothesis_ok))
    return out


@dataclass(frozen=True)
class Lemma3Result:
    u: int
    independent: bool
    branch: int
    hypothesis_ok: bool
    witness: int | None = None  # nilpotent index satisfying the inequality in branch 2

    def to_json(self) -> dict:
        return {"u": self.u, "independent": self.independent, "branch": self.branch,
                "hypothesis_ok": self.hypothesis_ok, "witness": self.witness}


def _differs(p, q, exact: bool, tol: float) -> bool:
    if exact:
        return p != q
    return abs(p - q) > tol


def lemma3_independence(triple: VarTriple, u: int, tol: float = PIVOT_TOL) -> Lemma3Result:
    """Real independence of ``1, e2~(u), e3~(u)`` by the two-branch criterion.

    Branch 1: ``I_u Rad e2`` and ``I_u Rad e3`` are independent, so the reduced
    triple is. Branch 2: independent iff some nilpotent ``r`` acted on by
    ``I_u`` has ``Im a_u Re b_r != Im b_u Re a_r`` or
    ``Im a_u Im b_r != Im b_u Im a_r``.
    """
    table = triple.table
    _check_u(table, u)
    hypothesis_ok = triple.independent()
    rt = reduced_triple(triple, u)
    if real_lin_independent([rt.rad_a, rt.rad_b], tol):
        return Lemma3Result(u, True, 1, hypothesis_ok)
    exact = triple.exact
    ia, ib = imag_part(triple.a[u - 1]), imag_part(triple.b[u - 1])
    for r in table.nilpotents:
        if table.idem_action[r] != u:
            continue
        ar, br = triple.a[r - 1], triple.b[r - 1]
        if (_differs(ia * real_part(br), ib * real_part(ar), exact, tol)
                or _differs(ia * imag_part(br), ib * imag_part(ar), exact, tol)):
            return Lemma3Result(u, True, 2, hypothesis_ok, witness=r)
    return Lemma3Result(u, False, 2, hypothesis_ok)


def reduced_triple_independent(triple: VarTriple, u: int) -> bool:
    """Brute-force rank of ``{1, e2~(u), e3~(u)}``; the oracle for the two-branch criterion."""
    rt = reduced_triple(triple, u)
    one = GaussianRational(1) if triple.exact else 1.0 + 0j
    return real_lin_independent([unit(rt.algebra.table, one), rt.a_tilde, rt.b_tilde])
