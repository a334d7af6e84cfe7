"""Sparse multivariate polynomials over the Gaussian rationals.

Variables are the unknown coefficients ``a1..an`` and ``b1..bn`` of the
vectors ``e2`` and ``e3``. A monomial is a tuple of ``(variable, exponent)``
pairs sorted by variable order ``a1 < a2 < ... < b1 < b2 < ...``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .gaussian import GaussianRational, ONE, format_scalar, is_exact, is_negative_monomial

Var = tuple  # (letter, index), e.g. ("a", 2)
Monomial = tuple  # ((Var, exponent), ...)

_VAR_RE = re.compile(r"^([ab])(\d+)$")
_LETTER_RANK = {"a": 0, "b": 1}


class MissingVariable(KeyError):
    pass


def parse_var(name: str) -> Var:
    m = _VAR_RE.match(name)
    if not m:
        raise ValueError(f"bad variable name {name!r}; expected a<k> or b<k>")
    return (m.group(1), int(m.group(2)))


def var_name(v: Var) -> str:
    return f"{v[0]}{v[1]}"


def _var_key(v: Var):
    return (_LETTER_RANK[v[0]], v[1])


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda it: _var_key(it[0])))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_order_key(m: Monomial):
    """Display order: by total degree, then monomials in earlier variables first."""
    return (mono_degree(m), tuple((_var_key(v), -e) for v, e in m))


def _scalar(c):
    if isinstance(c, GaussianRational):
        return c
    if isinstance(c, (int, Fraction)):
        return GaussianRational(c)
    raise TypeError(f"SymbolicPoly coefficients must be exact, got {c!r}")


class SymbolicPoly:
    """Immutable sparse polynomial with exact coefficients, zero terms dropped."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = _scalar(c)
                if c:
                    clean[tuple(mono)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "SymbolicPoly":
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def var(cls, name: str) -> "SymbolicPoly":
        return cls._raw({((parse_var(name), 1),): ONE})

    @classmethod
    def constant(cls, c) -> "SymbolicPoly":
        c = _scalar(c)
        return cls._raw({(): c} if c else {})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def variables(self) -> set[str]:
        return {var_name(v) for mono in self._terms for v, _ in mono}

    def degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=0)

    # -- ring operations --------------------------------------------------

    def _lift(self, other):
        if isinstance(other, SymbolicPoly):
            return other
        if is_exact(other):
            return SymbolicPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in o._terms.items():
            s = out.get(mono)
            s = c if s is None else s + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return SymbolicPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, SymbolicPoly):
            if not is_exact(other):
                return NotImplemented
            c = _scalar(other)
            if not c:
                return SymbolicPoly._raw({})
            return SymbolicPoly._raw({m: v * c for m, v in self._terms.items()})
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                s = out.get(mono)
                out[mono] = c1 * c2 if s is None else s + c1 * c2
        return SymbolicPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = SymbolicPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation & canonical forms ------------------------------------

    def evaluate(self, assignment: Mapping[str, object]):
        """Substitute values for variables.

        Exact values give an exact result, floats/complex give ``complex``.
        Raises ``MissingVariable`` naming the first uncovered variable.
        """
        total = 0
        for mono, c in self._terms.items():
            term = c
            for v, e in mono:
                name = var_name(v)
                try:
                    val = assignment[name]
                except KeyError:
                    raise MissingVariable(name) from None
                term = term * val ** e
            total = total + term
        return total

    def sorted_terms(self) -> list[tuple[Monomial, GaussianRational]]:
        return sorted(self._terms.items(), key=lambda it: mono_order_key(it[0]))

    def normalized(self) -> "SymbolicPoly":
        """Scale so that the first monomial in display order has coefficient 1."""
        if not self._terms:
            return self
        _, lead = self.sorted_terms()[0]
        if lead == 1:
            return self
        inv = lead.reciprocal()
        return SymbolicPoly._raw({m: c * inv for m, c in self._terms.items()})

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            body = "*".join(var_name(v) + (f"^{e}" if e > 1 else "") for v, e in mono)
            neg = is_negative_monomial(c)
            mag = -c if neg else c
            if not body:
                text = format_scalar(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{format_scalar(mag)}*{body}"
            if i == 0:
                parts.append(("-" if neg else "") + text)
            else:
                parts.append((" - " if neg else " + ") + text)
        return "".join(parts)

    def __repr__(self):
        return f"SymbolicPoly({self})"


def variables_for(n: int) -> tuple[list[SymbolicPoly], list[SymbolicPoly]]:
    """The unknowns ``a1..an`` and ``b1..bn`` as polynomials."""
    a = [SymbolicPoly.var(f"a{r}") for r in range(1, n + 1)]
    b = [SymbolicPoly.var(f"b{r}") for r in range(1, n + 1)]
    return a, b


def poly_sum(polys: Iterable[SymbolicPoly]) -> SymbolicPoly:
    total = SymbolicPoly()
    for p in polys:
        total = total + p
    return total
