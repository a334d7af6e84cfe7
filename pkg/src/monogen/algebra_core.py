"""Commutative associative algebras in Cartan form.

A table has idempotents ``I_1..I_m`` and nilpotents ``I_{m+1}..I_n``::

    I_u I_v = delta_uv I_u                         (u, v <= m)
    I_r I_s = sum_{k > max(r, s)} c_{r,s}^k I_k    (r, s > m)
    I_u I_s = I_s if u == u_s else 0               (u <= m < s)

Elements are coefficient vectors over the basis. The same arithmetic serves
three carriers: Python ``complex`` (evaluation), ``GaussianRational`` (exact
checks) and ``SymbolicPoly`` (characteristic systems).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.linalg

from .gaussian import GaussianRational, format_scalar, imag_part, is_exact, is_negative_monomial, real_part

PIVOT_TOL = 1e-12


class AlgebraError(ValueError):
    pass


class DimensionMismatch(AlgebraError):
    pass


class NotInvertible(AlgebraError):
    """Raised when an element has a vanishing functional ``f_u``."""

    def __init__(self, u: int | None, message: str | None = None):
        self.u = u
        super().__init__(message or f"element is not invertible: f_{u} vanishes")


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CartanTable:
    """Multiplication table of ``A_n^m``.

    ``nil_products[(r, s)]`` lists ``(k, c)`` pairs meaning ``I_r I_s`` contains
    ``c I_k``; only ``r <= s`` needs storing. ``idem_action[s]`` is the unique
    idempotent ``u_s`` with ``I_{u_s} I_s = I_s``. Construction does not
    validate; see :func:`validate_table`.
    """

    n: int
    m: int
    nil_products: Mapping[tuple[int, int], tuple] = field(default_factory=dict)
    idem_action: Mapping[int, int] = field(default_factory=dict)
    labels: tuple[str, ...] | None = field(default=None, compare=False)
    name: str | None = field(default=None, compare=False)

    def label(self, k: int) -> str:
        if self.labels is not None:
            return self.labels[k - 1]
        return f"I{k}"

    @property
    def idempotents(self) -> range:
        return range(1, self.m + 1)

    @property
    def nilpotents(self) -> range:
        return range(self.m + 1, self.n + 1)

    def acting_idempotent(self, s: int) -> int:
        return self.idem_action[s]

    def _nil_lookup(self, r: int, s: int):
        entry = self.nil_products.get((r, s))
        if entry is None:
            entry = self.nil_products.get((s, r), ())
        return entry

    @cached_property
    def _products(self) -> dict:
        prods = {}
        n, m = self.n, self.m
        one = GaussianRational(1)
        for r in range(1, n + 1):
            for s in range(1, n + 1):
                if r <= m and s <= m:
                    terms = ((r, one),) if r == s else ()
                elif r <= m:
                    terms = ((s, one),) if self.idem_action.get(s) == r else ()
                elif s <= m:
                    terms = ((r, one),) if self.idem_action.get(r) == s else ()
                else:
                    acc: dict[int, GaussianRational] = {}
                    for k, c in self._nil_lookup(r, s):
                        acc[k] = acc.get(k, 0) + _exact(c)
                    terms = tuple((k, c) for k, c in sorted(acc.items()) if c)
                prods[(r, s)] = terms
        return prods

    def product(self, r: int, s: int) -> tuple:
        """``I_r I_s`` as ``((k, coefficient), ...)``."""
        return self._products[(r, s)]

    def structure_constant(self, r: int, s: int, k: int):
        for kk, c in self.product(r, s):
            if kk == k:
                return c
        return GaussianRational(0)

    def same_structure(self, other: "CartanTable") -> bool:
        """Equal up to presentation (labels, names, stored orientation)."""
        if (self.n, self.m) != (other.n, other.m):
            return False
        if dict(self.idem_action) != dict(other.idem_action):
            return False
        return all(self.product(r, s) == other.product(r, s)
                   for r in range(1, self.n + 1) for s in range(1, self.n + 1))


class TableParseError(AlgebraError):
    """Algebra JSON that cannot even be read as a table."""


def _int_key(text, what: str) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise TableParseError(f"{what} {text!r} is not a decimal integer") from None


def table_from_json(data: Mapping, name: str | None = None) -> CartanTable:
    """Parse ``{"n", "m", "nil_products": {"r,s": [[k, quad], ...]}, "idem_action": {"s": u}}``.

    Only the shape is checked here; rule violations are left to
    :func:`validate_table`.
    """
    if not isinstance(data, Mapping):
        raise TableParseError("algebra JSON must be an object")
    try:
        n, m = data["n"], data["m"]
    except KeyError as exc:
        raise TableParseError(f"algebra JSON lacks {exc.args[0]!r}") from None
    if not (_is_int(n) and _is_int(m)):
        raise TableParseError(f"n and m must be integers, got {n!r}, {m!r}")
    nil = {}
    for key, entries in dict(data.get("nil_products", {})).items():
        parts = str(key).split(",")
        if len(parts) != 2:
            raise TableParseError(f"nil_products key {key!r} is not 'r,s'")
        r, s = (_int_key(v, "index") for v in parts)
        if not isinstance(entries, list):
            raise TableParseError(f"nil_products[{key!r}] must be a list")
        terms = []
        for item in entries:
            if not (isinstance(item, list) and len(item) == 2 and _is_int(item[0])):
                raise TableParseError(f"bad term {item!r} in nil_products[{key!r}]")
            try:
                terms.append((item[0], GaussianRational.from_quad(item[1])))
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise TableParseError(f"bad coefficient in nil_products[{key!r}]: {exc}") from None
        nil[(r, s)] = tuple(terms)
    action = {}
    for key, u in dict(data.get("idem_action", {})).items():
        if not _is_int(u):
            raise TableParseError(f"idem_action[{key!r}] must be an integer")
        action[_int_key(key, "idem_action key")] = u
    return CartanTable(n=n, m=m, nil_products=nil, idem_action=action, name=name)


def table_to_json(table: CartanTable) -> dict:
    return {
        "n": table.n,
        "m": table.m,
        "nil_products": {f"{r},{s}": [[k, _exact(c).to_quad()] for k, c in terms]
                         for (r, s), terms in sorted(table.nil_products.items())},
        "idem_action": {str(s): u for s, u in sorted(table.idem_action.items())},
    }


def _exact(c):
    if isinstance(c, GaussianRational):
        return c
    return GaussianRational(c)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgElem:
    """A vector of basis coefficients. Carries no table; products take one."""

    coeffs: tuple

    def __post_init__(self):
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int):
        """Coefficient at basis index ``k`` (1-based)."""
        return self.coeffs[k - 1]

    def _check(self, other: "AlgElem"):
        if len(self.coeffs) != len(other.coeffs):
            raise DimensionMismatch(f"dimensions differ: {len(self.coeffs)} vs {len(other.coeffs)}")

    def __add__(self, other):
        if not isinstance(other, AlgElem):
            return NotImplemented
        self._check(other)
        return AlgElem(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, AlgElem):
            return NotImplemented
        self._check(other)
        return AlgElem(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgElem(tuple(-x for x in self.coeffs))

    def scale(self, c) -> "AlgElem":
        return AlgElem(tuple(c * x for x in self.coeffs))

    def __rmul__(self, c):
        if isinstance(c, AlgElem):
            return NotImplemented
        return self.scale(c)

    def to_complex(self) -> "AlgElem":
        return AlgElem(tuple(complex(x) for x in self.coeffs))

    def is_exact(self) -> bool:
        return all(is_exact(x) for x in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def norm(self) -> float:
        return math.sqrt(sum(abs(complex(x)) ** 2 for x in self.coeffs))

    def max_abs(self) -> float:
        return max((abs(complex(x)) for x in self.coeffs), default=0.0)


def basis(table: CartanTable, k: int, one=1) -> AlgElem:
    if not 1 <= k <= table.n:
        raise AlgebraError(f"basis index {k} outside [1, {table.n}]")
    zero = one * 0
    return AlgElem(tuple(one if j == k else zero for j in range(1, table.n + 1)))


def unit(table: CartanTable, one=1) -> AlgElem:
    """``1 = I_1 + ... + I_m``."""
    zero = one * 0
    return AlgElem(tuple(one if j <= table.m else zero for j in range(1, table.n + 1)))


def zero(table: CartanTable, zero_value=0) -> AlgElem:
    return AlgElem((zero_value,) * table.n)


def element(values: Iterable) -> AlgElem:
    return AlgElem(tuple(values))


def _zero_like(x):
    return x * 0


def mul(a: AlgElem, b: AlgElem, table: CartanTable) -> AlgElem:
    if len(a) != table.n or len(b) != table.n:
        raise DimensionMismatch(
            f"expected elements of dimension {table.n}, got {len(a)} and {len(b)}")
    acc = [None] * table.n
    nz_b = [(s, y) for s, y in enumerate(b.coeffs, 1) if y]
    for r, x in enumerate(a.coeffs, 1):
        if not x:
            continue
        for s, y in nz_b:
            terms = table.product(r, s)
            if not terms:
                continue
            xy = x * y
            for k, c in terms:
                v = xy if c == 1 else c * xy
                acc[k - 1] = v if acc[k - 1] is None else acc[k - 1] + v
    z = _zero_like(a.coeffs[0] if a.coeffs else 0)
    if b.coeffs:
        z = z + _zero_like(b.coeffs[0])
    return AlgElem(tuple(z if v is None else v for v in acc))


def power(a: AlgElem, k: int, table: CartanTable) -> AlgElem:
    one = a.coeffs[0] * 0 + 1 if a.coeffs else 1
    result = unit(table, one)
    for _ in range(k):
        result = mul(result, a, table)
    return result


def functional(a: AlgElem, u: int, table: CartanTable | None = None):
    """``f_u(a)``: the ``I_u`` coefficient; multiplicative on ``A_n^m``."""
    m = table.m if table is not None else len(a)
    if not 1 <= u <= m:
        raise AlgebraError(f"functional index {u} outside [1, {m}]")
    return a.coeffs[u - 1]


def rad_project(a: AlgElem, table: CartanTable) -> AlgElem:
    z = _zero_like(a.coeffs[0])
    return AlgElem(tuple(z if k <= table.m else c for k, c in enumerate(a.coeffs, 1)))


def multiplication_matrix(a: AlgElem, table: CartanTable) -> list[list]:
    """Column ``j`` holds ``a I_j``."""
    n = table.n
    cols = [mul(a, basis(table, j, _one_like(a)), table).coeffs for j in range(1, n + 1)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _one_like(a: AlgElem):
    return GaussianRational(1) if a.is_exact() else 1


def invert(a: AlgElem, table: CartanTable) -> AlgElem:
    """Inverse of ``a``; raises :class:`NotInvertible` naming a vanishing ``f_u``."""
    if len(a) != table.n:
        raise DimensionMismatch(f"expected dimension {table.n}, got {len(a)}")
    exact = a.is_exact()
    for u in table.idempotents:
        fu = a.coeffs[u - 1]
        if (not fu) if exact else abs(complex(fu)) <= PIVOT_TOL:
            raise NotInvertible(u)
    M = multiplication_matrix(a, table)
    rhs = unit(table, GaussianRational(1) if exact else 1).coeffs
    if exact:
        x = solve_exact([[_exact(v) for v in row] for row in M], [_exact(v) for v in rhs])
        return AlgElem(tuple(x))
    return AlgElem(tuple(_solve_realified(M, rhs)))


def solve_exact(A: list[list], b: list) -> list:
    """Gaussian elimination over an exact field; raises on singular systems."""
    n = len(A)
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise NotInvertible(None, "singular multiplication operator")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _solve_realified(M: list[list], rhs: Sequence) -> list[complex]:
    C = np.array([[complex(v) for v in row] for row in M], dtype=complex)
    n = C.shape[0]
    R = np.block([[C.real, -C.imag], [C.imag, C.real]])
    rhs_c = np.array([complex(v) for v in rhs])
    rr = np.concatenate([rhs_c.real, rhs_c.imag])
    lu, piv = scipy.linalg.lu_factor(R, check_finite=True)
    if np.min(np.abs(np.diag(lu))) <= PIVOT_TOL:
        raise NotInvertible(None, "multiplication operator is numerically singular")
    sol = scipy.linalg.lu_solve((lu, piv), rr)
    return [complex(sol[i], sol[n + i]) for i in range(n)]


def real_rank(columns: Sequence[Sequence], tol: float = PIVOT_TOL) -> int:
    """Rank of a real matrix given by columns; exact when entries are Fractions."""
    if not columns:
        return 0
    rows = [list(r) for r in zip(*columns)]
    exact = all(isinstance(v, (int, Fraction)) for row in rows for v in row)
    nrows, ncols = len(rows), len(columns)
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        if exact:
            piv = next((r for r in range(rank, nrows) if rows[r][col]), None)
        else:
            best = max(range(rank, nrows), key=lambda r: abs(rows[r][col]))
            piv = best if abs(rows[best][col]) > tol else None
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, nrows):
            if rows[r][col]:
                f = rows[r][col] / p
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def realify(a: AlgElem) -> list:
    """Stack real then imaginary parts; exact parts stay Fractions."""
    return [real_part(c) for c in a.coeffs] + [imag_part(c) for c in a.coeffs]


def real_lin_independent(vectors: Sequence[AlgElem], tol: float = PIVOT_TOL) -> bool:
    """True iff the vectors are linearly independent over R."""
    if not vectors:
        raise AlgebraError("need at least one vector")
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch("vectors of different dimension")
    cols = [realify(v) for v in vectors]
    if not all(v.is_exact() for v in vectors):
        cols = [[float(x) for x in col] for col in cols]
    return real_rank(cols, tol) == len(vectors)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    indices: tuple = ()
    lhs: AlgElem | None = None
    rhs: AlgElem | None = None

    def __str__(self):
        return f"[{self.kind}] {self.message}"


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def validate_table(table: CartanTable) -> list[Violation]:
    """Check rules 1-3 and associativity; an empty list means valid.

    Malformed entries are reported, never raised.
    """
    out: list[Violation] = []
    n, m = table.n, table.m
    if not (_is_int(n) and _is_int(m) and n >= 1 and 1 <= m <= n):
        return [Violation("dimensions", f"need n >= 1 and 1 <= m <= n, got n={n}, m={m}")]

    for s in range(m + 1, n + 1):
        if s not in table.idem_action:
            out.append(Violation("idem_action", f"no acting idempotent for I{s}", (s,)))
    for s, u in table.idem_action.items():
        if not (_is_int(s) and m + 1 <= s <= n):
            out.append(Violation("idem_action", f"key {s!r} is not a nilpotent index in [{m + 1}, {n}]", (s,)))
        if not (_is_int(u) and 1 <= u <= m):
            out.append(Violation("idem_action", f"u_{s} = {u!r} outside [1, {m}]", (s,)))

    for key, entries in table.nil_products.items():
        if not (isinstance(key, tuple) and len(key) == 2 and all(_is_int(v) for v in key)):
            out.append(Violation("nil_products", f"malformed key {key!r}"))
            continue
        r, s = key
        if not (m + 1 <= r <= n and m + 1 <= s <= n):
            out.append(Violation("nil_products", f"key ({r},{s}) not in the nilpotent block", key))
            continue
        try:
            items = list(entries)
        except TypeError:
            out.append(Violation("nil_products", f"entry for ({r},{s}) is not a list", key))
            continue
        for item in items:
            try:
                k, c = item
                _exact(c)
            except (TypeError, ValueError):
                out.append(Violation("nil_products", f"malformed term {item!r} in ({r},{s})", key))
                continue
            if not _is_int(k) or k > n or k < 1:
                out.append(Violation("range", f"I{r}I{s} term index {k!r} outside [1, {n}]", key))
            elif k < max(r, s) + 1:
                out.append(Violation(
                    "index_bound", f"I{r}I{s} has a term in I{k}; rule 2 needs k >= {max(r, s) + 1}", key))

    for key in list(table.nil_products):
        if not (isinstance(key, tuple) and len(key) == 2):
            continue
        r, s = key
        if _is_int(r) and _is_int(s) and r > s and (s, r) in table.nil_products:
            lhs = _normalize_terms(table.nil_products[(r, s)])
            rhs = _normalize_terms(table.nil_products[(s, r)])
            if lhs != rhs:
                out.append(Violation("commutativity", f"I{r}I{s} != I{s}I{r}", (r, s)))

    if out:
        return out

    one = GaussianRational(1)
    basis_elems = [basis(table, k, one) for k in range(1, n + 1)]
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            rs = mul(basis_elems[r - 1], basis_elems[s - 1], table)
            for p in range(1, n + 1):
                lhs = mul(rs, basis_elems[p - 1], table)
                rhs = mul(basis_elems[r - 1], mul(basis_elems[s - 1], basis_elems[p - 1], table), table)
                if lhs != rhs:
                    if r > m and s > m and p > m:
                        kind = "A1"
                    elif r <= m and s > m and p > m:
                        kind = "A2"
                    else:
                        kind = "associativity"
                    out.append(Violation(kind, f"(I{r}I{s})I{p} != I{r}(I{s}I{p})", (r, s, p), lhs, rhs))
    return out


def _normalize_terms(entries) -> dict:
    acc: dict = {}
    for k, c in entries:
        acc[k] = acc.get(k, 0) + _exact(c)
    return {k: c for k, c in acc.items() if c}


# ---------------------------------------------------------------------------
# display
# ---------------------------------------------------------------------------


def format_element(a: AlgElem, table: CartanTable, tol: float = 0.0) -> str:
    """Render like ``2i + (2+2i)·I3``; a basis labelled ``1`` prints bare.

    With ``tol``, float real or imaginary parts at most ``tol`` print as zero.
    """
    parts = []
    for k, c in enumerate(a.coeffs, 1):
        if tol and not is_exact(c):
            c = complex(c)
            c = complex(c.real if abs(c.real) > tol else 0.0, c.imag if abs(c.imag) > tol else 0.0)
        if not c:
            continue
        label = table.label(k)
        neg = is_negative_monomial(c)
        mag = -c if neg else c
        coeff = format_scalar(mag)
        if label == "1":
            text = coeff
        elif _is_one(mag):
            text = label
        else:
            text = f"{coeff}·{label}"
        if not parts:
            parts.append(("-" if neg else "") + text)
        else:
            parts.append((" - " if neg else " + ") + text)
    return "".join(parts) if parts else "0"


def _is_one(c) -> bool:
    return c == 1
