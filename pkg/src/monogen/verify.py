"""Finite-difference and identity checks for monogenic functions.

Monogenicity is tested through the conditions

    dPhi/dy = dPhi/dx e2,   dPhi/dz = dPhi/dx e3

with central differences. PDE residuals apply ``L_N`` componentwise by
tensor-product stencils. The decomposition over idempotents is an exact
identity and is checked with the residue evaluator on both sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from scipy.stats import qmc

from .algebra_core import AlgElem, basis, mul
from .charsys import PdeSpec
from .monogenic import (
    HypothesisError, MonogenicFn, Point3, eval_monogenic, project_component, singular_lines, xi,
)
from .reduction import ReducedAlgebra, reduced_algebra, reduced_triple

IDENTITY_TOL = 1e-12
MAX_FD_ORDER = 4
MIN_H_POWER = 1e-12

Evaluator = Callable[[Sequence[float]], AlgElem]


@dataclass(frozen=True)
class FdConfig:
    h: float = 1e-3
    tol: float = 1e-5
    order: int = 2

    def __post_init__(self):
        if not (self.h > 0 and math.isfinite(self.h)):
            raise ValueError(f"step h must be positive, got {self.h!r}")
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise ValueError(f"tolerance must be positive, got {self.tol!r}")
        if self.order not in (2, 4):
            raise ValueError(f"stencil order must be 2 or 4, got {self.order!r}")


@dataclass(frozen=True)
class VerificationReport:
    """Per-point residuals; ``passed`` iff ``max_residual <= tol``."""

    op: str
    h: float | None
    tol: float
    residuals: tuple[float, ...]
    seed: int | None = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol

    @property
    def points(self) -> int:
        return len(self.residuals)

    def to_json(self) -> dict:
        return {"op": self.op, "h": self.h, "tol": self.tol, "max_residual": self.max_residual,
                "pass": self.passed, "points": self.points, "seed": self.seed}


# ---------------------------------------------------------------------------
# stencils
# ---------------------------------------------------------------------------


def _shift(p: Sequence[float], axis: int, d: float) -> tuple[float, float, float]:
    q = list(p)
    q[axis] += d
    return tuple(q)


def fd_partial(f: Evaluator, p: Sequence[float], axis: int, cfg: FdConfig) -> AlgElem:
    """Central-difference partial along ``axis`` (0, 1, 2 for x, y, z)."""
    h = cfg.h
    if cfg.order == 2:
        return (f(_shift(p, axis, h)) - f(_shift(p, axis, -h))).scale(1 / (2 * h))
    d = (f(_shift(p, axis, -2 * h)) - f(_shift(p, axis, 2 * h))
         + (f(_shift(p, axis, h)) - f(_shift(p, axis, -h))).scale(8))
    return d.scale(1 / (12 * h))


@lru_cache(maxsize=None)
def fornberg_weights(deriv: int, nodes: tuple[int, ...]) -> tuple[Fraction, ...]:
    """Exact weights of ``d^deriv/dt^deriv`` at 0 on integer ``nodes`` (unit spacing)."""
    npts = len(nodes)
    c = [[[Fraction(0)] * npts for _ in range(npts)] for _ in range(deriv + 1)]
    c[0][0][0] = Fraction(1)
    c1 = Fraction(1)
    for i in range(1, npts):
        c2 = Fraction(1)
        for j in range(i):
            c3 = Fraction(nodes[i] - nodes[j])
            c2 *= c3
            for k in range(min(i, deriv), -1, -1):
                prev = c[k - 1][i - 1][j] if k else Fraction(0)
                c[k][i][j] = (nodes[i] * c[k][i - 1][j] - k * prev) / c3
        for k in range(min(i, deriv), -1, -1):
            prev = c[k - 1][i - 1][i - 1] if k else Fraction(0)
            c[k][i][i] = c1 / c2 * (k * prev - nodes[i - 1] * c[k][i - 1][i - 1])
        c1 = c2
    return tuple(c[deriv][npts - 1])


def central_stencil(deriv: int, accuracy: int) -> list[tuple[int, Fraction]]:
    """Nonzero ``(offset, weight)`` pairs of the symmetric stencil."""
    if deriv == 0:
        return [(0, Fraction(1))]
    half = (deriv + 1) // 2 + accuracy // 2 - 1
    nodes = tuple(range(-half, half + 1))
    return [(o, w) for o, w in zip(nodes, fornberg_weights(deriv, nodes)) if w]


def fd_mixed(f: Evaluator, p: Sequence[float], orders: tuple[int, int, int], cfg: FdConfig,
             cache: dict | None = None) -> AlgElem:
    """``d^(a+b+g) f / dx^a dy^b dz^g`` by a tensor product of central stencils."""
    cache = {} if cache is None else cache
    h = cfg.h
    stencils = [central_stencil(d, cfg.order) for d in orders]
    total = None
    for ox, wx in stencils[0]:
        for oy, wy in stencils[1]:
            for oz, wz in stencils[2]:
                key = (ox, oy, oz)
                if key not in cache:
                    cache[key] = f((p[0] + ox * h, p[1] + oy * h, p[2] + oz * h))
                term = cache[key].scale(float(wx * wy * wz))
                total = term if total is None else total + term
    return total.scale(1 / h ** sum(orders))


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def _evaluator(fn: MonogenicFn, evaluator: Evaluator | None) -> Evaluator:
    return evaluator or (lambda q: eval_monogenic(fn, q))


def check_monogenic(fn: MonogenicFn, points: Sequence[Sequence[float]], cfg: FdConfig,
                    evaluator: Evaluator | None = None, seed: int | None = None) -> VerificationReport:
    """Residual ``max(|Phi_y - Phi_x e2|, |Phi_z - Phi_x e3|) / max(1, |Phi_x|)`` per point."""
    f = _evaluator(fn, evaluator)
    table = fn.table
    ct = fn.triple.to_complex()
    e2, e3 = ct.e2, ct.e3
    res = []
    for p in points:
        dx = fd_partial(f, p, 0, cfg)
        dy = fd_partial(f, p, 1, cfg)
        dz = fd_partial(f, p, 2, cfg)
        r = max((dy - mul(dx, e2, table)).norm(), (dz - mul(dx, e3, table)).norm())
        res.append(r / max(1.0, dx.norm()))
    return VerificationReport("monogenic", cfg.h, cfg.tol, tuple(res), seed)


def pde_residual(fn: MonogenicFn, pde: PdeSpec, points: Sequence[Sequence[float]], cfg: FdConfig,
                 evaluator: Evaluator | None = None, seed: int | None = None,
                 scaled: bool = True) -> VerificationReport:
    """``|L_N Phi| / max(1, |Phi|)`` per point, ``L_N`` applied to every component.

    ``scaled=False`` reports the bare ``|L_N Phi|``.
    """
    if pde.order > MAX_FD_ORDER:
        raise ValueError(f"finite differences of order {pde.order} exceed the supported {MAX_FD_ORDER}")
    if cfg.h ** pde.order < MIN_H_POWER:
        # N-th differences lose roughly N*log10(1/h) digits
        raise ValueError(f"step h={cfg.h} too small for order-{pde.order} differences")
    f = _evaluator(fn, evaluator)
    res = []
    for p in points:
        cache: dict = {}
        total = None
        for idx, c in pde.coeffs.items():
            term = fd_mixed(f, p, idx, cfg, cache).scale(complex(c))
            total = term if total is None else total + term
        if scaled:
            center = cache[(0, 0, 0)] if (0, 0, 0) in cache else f(p)
            res.append(total.norm() / max(1.0, center.norm()))
        else:
            res.append(total.norm())
    return VerificationReport("pde", cfg.h, cfg.tol, tuple(res), seed)


@dataclass(frozen=True)
class ReducedPiece:
    """The reduced function attached to idempotent ``u``."""

    u: int
    algebra: ReducedAlgebra
    fn: MonogenicFn


def reduced_functions(fn: MonogenicFn) -> list[ReducedPiece]:
    """Reduced functions with ``F~ = F_u`` and ``G~_s = G_s`` for nilpotents acted on by ``I_u``."""
    table = fn.table
    reduced = reduced_algebra(table)
    out = []
    for u in table.idempotents:
        rt = reduced_triple(fn.triple, u, reduced).as_triple()
        G = {reduced.index_map[s]: fn.G[s] for s in table.nilpotents if table.idem_action[s] == u}
        out.append(ReducedPiece(u, reduced, MonogenicFn(rt, {1: fn.F[u]}, G)))
    return out


def verify_theorem2(fn: MonogenicFn, points: Sequence[Sequence[float]], tol: float = IDENTITY_TOL,
                    seed: int | None = None) -> VerificationReport:
    """Check ``I_u Phi = I_u Phi~_u(zeta~(u))``, the sum over ``u``, and ``f(zeta~(u)) = f_u(zeta)``.

    Each residual is the largest componentwise error scaled by ``max(1, max|Phi|)``.
    """
    bad = fn.triple.hypothesis_failures()
    if bad:
        raise HypothesisError(bad[0])
    table = fn.table
    pieces = reduced_functions(fn)
    res = []
    for p in points:
        full = eval_monogenic(fn, p)
        scale = max(1.0, full.max_abs())
        xs = xi(fn.triple, p)
        acc = AlgElem((0j,) * table.n)
        err = 0.0
        for piece in pieces:
            iu = basis(table, piece.u, 1.0 + 0j)
            lhs = project_component(fn, piece.u, p)
            rhs = mul(iu, piece.algebra.embed(eval_monogenic(piece.fn, p)), table)
            err = max(err, (lhs - rhs).max_abs() / scale)
            acc = acc + rhs
            spectral = xi(piece.fn.triple, p)[0]
            err = max(err, abs(spectral - xs[piece.u - 1]) / max(1.0, abs(xs[piece.u - 1])))
        err = max(err, (acc - full).max_abs() / scale)
        res.append(err)
    return VerificationReport("decompose", None, tol, tuple(res), seed,
                              details={"reduced": pieces})


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def sample_points(k: int, seed: int = 0, triple=None, box: float = 2.0,
                  tube: float = 1e-3) -> list[Point3]:
    """``k`` scrambled-Halton points in ``[-box, box]^3``.

    With a triple, points within ``tube`` of a singular line are skipped.
    """
    if k < 0:
        raise ValueError("point count must be non-negative")
    lines = [ln for ln in singular_lines(triple) if not ln.degenerate] if triple is not None else []
    sampler = qmc.Halton(d=3, scramble=True, seed=seed)
    out: list[Point3] = []
    while len(out) < k:
        batch = qmc.scale(sampler.random(max(k - len(out), 8)), [-box] * 3, [box] * 3)
        for row in batch:
            p = Point3(*(float(v) for v in row))
            if all(ln.distance(p) > tube for ln in lines):
                out.append(p)
                if len(out) == k:
                    break
    return out
