"""Monogenic functions of ``zeta = x + y e2 + z e3`` via the resolvent.

The resolvent is a finite sum of poles at the spectral points
``xi_u = x + y a_u + z b_u``::

    (t - zeta)^{-1} = sum_u I_u / (t - xi_u)
                    + sum_s sum_{k=2}^{s-m+1} Q_{k,s} I_s / (t - xi_{u_s})^k

so every Cauchy integral of an entire function against it is a finite sum of
residues ``H^{(k-1)}(xi_q) / (k-1)!`` times the pole coefficients. No contour
is ever discretized.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence, Union

from .algebra_core import AlgElem, AlgebraError, CartanTable, basis, mul
from .gaussian import imag_part, real_part
from .reduction import VarTriple

POLE_TOL = 1e-14


class PoleError(AlgebraError):
    pass


class HypothesisError(AlgebraError):
    """``f_u(E_3) = C`` fails for some idempotent."""

    def __init__(self, u: int):
        self.u = u
        super().__init__(f"f_{u}(E3) != C: a_{u} and b_{u} are both real")


class PresetMismatch(AlgebraError):
    pass


class Point3(NamedTuple):
    x: float
    y: float
    z: float


# ---------------------------------------------------------------------------
# entire functions and their jets
# ---------------------------------------------------------------------------


def _c(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def _taylor_shift(coeffs: Sequence[complex], shift: complex, order: int) -> list[complex]:
    """Coefficients of ``p(shift + s)`` in powers of ``s``, up to ``s^(order-1)``.

    Repeated synthetic division by ``(t - shift)``.
    """
    work = list(coeffs)
    out = []
    for _ in range(order):
        if not work:
            out.append(0j)
            continue
        # Horner: divide by (t - shift), keep quotient
        acc = 0j
        quotient = [0j] * (len(work) - 1)
        for i in range(len(work) - 1, -1, -1):
            acc = acc * shift + work[i]
            if i > 0:
                quotient[i - 1] = acc
        out.append(acc)
        work = quotient
    return out


@dataclass(frozen=True)
class Polynomial:
    """``t -> sum c_j t^j``."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    def __call__(self, t):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self, t):
        acc = 0j
        for j in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * t + j * self.coeffs[j]
        return acc

    def jet(self, t0, order: int) -> list[complex]:
        return _taylor_shift(self.coeffs, complex(t0), order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> dict:
        return {"kind": "poly", "coeffs": [[c.real, c.imag] for c in self.coeffs]}


@dataclass(frozen=True)
class Exponential:
    """``t -> exp(lam t)``."""

    lam: complex

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))

    def __call__(self, t):
        return cmath.exp(self.lam * t)

    def derivative(self, t):
        return self.lam * cmath.exp(self.lam * t)

    def jet(self, t0, order: int) -> list[complex]:
        base = cmath.exp(self.lam * t0)
        return [self.lam ** j * base / math.factorial(j) for j in range(order)]

    def is_zero(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"kind": "exp", "lambda": [self.lam.real, self.lam.imag]}


@dataclass(frozen=True)
class TaylorTable:
    """Finite Taylor table ``sum c_j (t - center)^j``, taken as that polynomial."""

    center: complex
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    def __call__(self, t):
        return Polynomial(self.coeffs)(t - self.center)

    def derivative(self, t):
        return Polynomial(self.coeffs).derivative(t - self.center)

    def jet(self, t0, order: int) -> list[complex]:
        return _taylor_shift(self.coeffs, complex(t0) - self.center, order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> dict:
        return {"kind": "taylor", "center": [self.center.real, self.center.imag],
                "coeffs": [[c.real, c.imag] for c in self.coeffs]}


HoloFn = Union[Polynomial, Exponential, TaylorTable]
ZERO_FN = Polynomial(())


def jet(h: HoloFn, t0, order: int) -> list[complex]:
    """``[h(t0), h'(t0), h''(t0)/2!, ...]``, ``order`` entries."""
    if order < 1:
        raise ValueError("jet order must be >= 1")
    return h.jet(t0, order)


def holo_from_json(data: dict) -> HoloFn:
    kind = data.get("kind")
    if kind == "poly":
        return Polynomial(tuple(_c(v) for v in data["coeffs"]))
    if kind == "exp":
        return Exponential(_c(data["lambda"]))
    if kind == "taylor":
        return TaylorTable(_c(data["center"]), tuple(_c(v) for v in data["coeffs"]))
    raise ValueError(f"unknown function kind {kind!r}")


# ---------------------------------------------------------------------------
# spectral data
# ---------------------------------------------------------------------------


def xi(triple: VarTriple, p: Sequence[float]) -> tuple[complex, ...]:
    """``xi_u = x + y a_u + z b_u`` for ``u = 1..m``."""
    x, y, z = p
    return tuple(complex(x + y * triple.a[u - 1] + z * triple.b[u - 1])
                 for u in triple.table.idempotents)


@dataclass(frozen=True)
class SingularLine:
    u: int
    point: tuple[float, float, float]
    direction: tuple[float, float, float] | None
    degenerate: bool

    def contains(self, p: Sequence[float], tol: float = 1e-9) -> bool:
        return self.distance(p) <= tol

    def distance(self, p: Sequence[float]) -> float:
        if self.direction is None:
            return math.inf
        d = [pi - qi for pi, qi in zip(p, self.point)]
        t = sum(di * ui for di, ui in zip(d, self.direction))
        return math.sqrt(max(sum(di * di for di in d) - t * t, 0.0))


def singular_lines(triple: VarTriple) -> list[SingularLine]:
    """The lines ``L_u`` where ``xi_u = 0``::

        x + y Re a_u + z Re b_u = 0,   y Im a_u + z Im b_u = 0
    """
    out = []
    for u in triple.table.idempotents:
        ra, rb = float(real_part(triple.a[u - 1])), float(real_part(triple.b[u - 1]))
        ia, ib = float(imag_part(triple.a[u - 1])), float(imag_part(triple.b[u - 1]))
        if ia == 0 and ib == 0:
            out.append(SingularLine(u, (0.0, 0.0, 0.0), None, True))
            continue
        d = (-(ib * ra - ia * rb), ib, -ia)
        norm = math.sqrt(sum(v * v for v in d))
        d = tuple(v / norm for v in d)
        lead = next(v for v in d if abs(v) > 1e-15)
        if lead < 0:
            d = tuple(-v for v in d)
        d = tuple(v + 0.0 for v in d)
        out.append(SingularLine(u, (0.0, 0.0, 0.0), d, False))
    return out


# ---------------------------------------------------------------------------
# resolvent
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResolventExpansion:
    """Pole coefficients ``{(q, k): AlgElem}`` of ``(t - zeta)^{-1}``.

    ``T[s] = y a_s + z b_s``; ``B[(r, s)]`` and ``Q[(k, s)]`` follow the
    recurrence ``Q_{2,s} = T_s``, ``Q_{k,s} = sum_r Q_{k-1,r} B_{r,s}``.
    """

    xi: tuple
    terms: dict
    T: dict = field(repr=False)
    B: dict = field(repr=False)
    Q: dict = field(repr=False)

    def pole_terms(self, q: int) -> list[tuple[int, AlgElem]]:
        return sorted(((k, c) for (qq, k), c in self.terms.items() if qq == q), key=lambda it: it[0])

    def max_order(self, q: int) -> int:
        return max((k for (qq, k) in self.terms if qq == q), default=1)


def resolvent_expansion(triple: VarTriple, p: Sequence[float]) -> ResolventExpansion:
    table = triple.table
    n, m = table.n, table.m
    x, y, z = p
    xis = xi(triple, p)
    T = {s: complex(y * triple.a[s - 1] + z * triple.b[s - 1]) for s in table.nilpotents}

    B = {}
    for r in table.nilpotents:
        for s in range(m + 2, n + 1):
            acc = 0j
            for k in range(m + 1, s):
                c = table.structure_constant(r, k, s)  # coefficient of I_s in I_r I_k
                if c:
                    acc += T[k] * complex(c)
            B[(r, s)] = acc

    Q = {}
    for s in table.nilpotents:
        Q[(2, s)] = T[s]
        for k in range(3, s - m + 2):
            acc = 0j
            for r in range(k + m - 2, s):
                acc += Q.get((k - 1, r), 0j) * B.get((r, s), 0j)
            Q[(k, s)] = acc

    terms: dict = {}
    for u in table.idempotents:
        terms[(u, 1)] = basis(table, u, 1.0 + 0j)
    for (k, s), q in Q.items():
        if k > s - m + 1:
            raise AssertionError(f"Q_{{{k},{s}}} exceeds the order bound")
        if not q:
            continue
        key = (table.idem_action[s], k)
        contrib = basis(table, s, 1.0 + 0j).scale(q)
        terms[key] = contrib if key not in terms else terms[key] + contrib
    return ResolventExpansion(xis, terms, T, B, Q)


def resolvent_eval(t, triple: VarTriple, p: Sequence[float],
                   expansion: ResolventExpansion | None = None) -> AlgElem:
    """``(t e1 - zeta)^{-1}`` by summing the pole expansion."""
    expansion = expansion or resolvent_expansion(triple, p)
    t = complex(t)
    for u, x_u in enumerate(expansion.xi, 1):
        if abs(t - x_u) <= POLE_TOL:
            raise PoleError(f"t coincides with the spectral point xi_{u} = {x_u}")
    total = AlgElem((0j,) * triple.table.n)
    for (q, k), coeff in expansion.terms.items():
        total = total + coeff.scale(1.0 / (t - expansion.xi[q - 1]) ** k)
    return total


# ---------------------------------------------------------------------------
# monogenic functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonogenicFn:
    """``Phi = sum_u I_u R_u[F_u] + sum_s I_s R_{u_s}[G_s]``.

    ``R_q[H]`` is the Cauchy integral of ``H`` against the resolvent around
    ``xi_q``. Missing ``F``/``G`` entries are the zero function.
    """

    triple: VarTriple
    F: Mapping[int, HoloFn] = field(default_factory=dict)
    G: Mapping[int, HoloFn] = field(default_factory=dict)

    def __post_init__(self):
        table = self.triple.table
        for u in self.F:
            if u not in table.idempotents:
                raise AlgebraError(f"F index {u} is not an idempotent index")
        for s in self.G:
            if s not in table.nilpotents:
                raise AlgebraError(f"G index {s} is not a nilpotent index")
        object.__setattr__(self, "F", {u: self.F.get(u, ZERO_FN) for u in table.idempotents})
        object.__setattr__(self, "G", {s: self.G.get(s, ZERO_FN) for s in table.nilpotents})

    @property
    def table(self) -> CartanTable:
        return self.triple.table

    def __call__(self, p: Sequence[float]) -> AlgElem:
        return eval_monogenic(self, p)

    @classmethod
    def from_json(cls, data: dict, triple: VarTriple) -> "MonogenicFn":
        F = {int(k): holo_from_json(v) for k, v in data.get("F", {}).items()}
        G = {int(k): holo_from_json(v) for k, v in data.get("G", {}).items()}
        return cls(triple, F, G)

    def to_json(self) -> dict:
        return {"F": {str(u): h.to_json() for u, h in self.F.items()},
                "G": {str(s): h.to_json() for s, h in self.G.items()}}


def _cauchy(h: HoloFn, q: int, expansion: ResolventExpansion, n: int) -> AlgElem | None:
    if h.is_zero():
        return None
    terms = expansion.pole_terms(q)
    coeffs = jet(h, expansion.xi[q - 1], expansion.max_order(q))
    total = None
    for k, c in terms:
        piece = c.scale(coeffs[k - 1])
        total = piece if total is None else total + piece
    return total


def eval_monogenic(fn: MonogenicFn, p: Sequence[float], check_hypothesis: bool = True) -> AlgElem:
    triple = fn.triple
    table = triple.table
    if check_hypothesis:
        bad = triple.hypothesis_failures()
        if bad:
            raise HypothesisError(bad[0])
    expansion = resolvent_expansion(triple, p)
    total = AlgElem((0j,) * table.n)
    for u, h in fn.F.items():
        r = _cauchy(h, u, expansion, table.n)
        if r is not None:
            total = total + mul(basis(table, u, 1.0 + 0j), r, table)
    for s, h in fn.G.items():
        r = _cauchy(h, table.idem_action[s], expansion, table.n)
        if r is not None:
            total = total + mul(basis(table, s, 1.0 + 0j), r, table)
    return total


def project_component(fn: MonogenicFn, u: int, p: Sequence[float], check_hypothesis: bool = True) -> AlgElem:
    """``Phi_u = I_u Phi``."""
    table = fn.table
    if u not in table.idempotents:
        raise AlgebraError(f"idempotent index {u} outside [1, {table.m}]")
    return mul(basis(table, u, 1.0 + 0j), eval_monogenic(fn, p, check_hypothesis), table)


# ---------------------------------------------------------------------------
# explicit formulas for the built-in algebras
# ---------------------------------------------------------------------------


def eval_closed_form(preset: str, fns, triple: VarTriple, p: Sequence[float]) -> AlgElem:
    """Hand-expanded value at ``p`` for the built-in algebras.

    ``fns`` is a ``MonogenicFn`` or a bundle ``{"F": {u: h}, "G": {s: h}}``.
    Shares nothing with the resolvent machinery; used as its oracle.
    """
    from . import presets

    expected = presets.table(preset)
    if not triple.table.same_structure(expected):
        raise PresetMismatch(f"triple lives in {triple.table.name or 'a custom table'}, not {preset}")
    if isinstance(fns, MonogenicFn):
        F, G = dict(fns.F), dict(fns.G)
    else:
        F, G = dict(fns.get("F", {})), dict(fns.get("G", {}))
    for u in expected.idempotents:
        F.setdefault(u, ZERO_FN)
    for s in expected.nilpotents:
        G.setdefault(s, ZERO_FN)
    x, y, z = p
    a = [complex(v) for v in triple.a]
    b = [complex(v) for v in triple.b]

    def xi_(u):
        return x + a[u - 1] * y + b[u - 1] * z

    def T(s):
        return a[s - 1] * y + b[s - 1] * z

    if preset == "A32":
        x1, x2 = xi_(1), xi_(2)
        vals = [F[1](x1), F[2](x2), T(3) * F[2].derivative(x2) + G[3](x2)]
    elif preset == "B":
        x1 = xi_(1)
        vals = [F[1](x1), T(2) * F[1].derivative(x1) + G[2](x1)]
    elif preset == "A53":
        x1, x2, x3 = xi_(1), xi_(2), xi_(3)
        vals = [F[1](x1), F[2](x2), F[3](x3),
                T(4) * F[3].derivative(x3) + G[4](x3),
                T(5) * F[1].derivative(x1) + G[5](x1)]
    elif preset == "A4":
        x1 = xi_(1)
        d = F[1].derivative(x1)
        vals = [F[1](x1), T(2) * d + G[2](x1), T(3) * d + G[3](x1)]
    else:
        raise PresetMismatch(f"no closed form for {preset!r}")
    return AlgElem(tuple(complex(v) for v in vals))
