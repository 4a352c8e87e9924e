"""Exact multivariate Laurent polynomial arithmetic over the integers.

A Laurent polynomial in ``n`` variables is stored as a dict mapping exponent
vectors (length-``n`` tuples of ints, negative entries allowed) to nonzero
Python ints:

    x1*x3**-1 + 2  ->  LaurentPoly(3, {(1, 0, -1): 1, (0, 0, 0): 2})

Zero coefficients are never stored; the zero polynomial has an empty term
dict.  Coefficients are arbitrary-precision integers, so equality of
polynomials is decidable and exact.  All operations return new objects;
instances are treated as immutable and are hashable.

Exact division (``lp_exact_div``) decides whether f/g lies in the Laurent
ring: both operands are shifted by monomials until all exponents are
nonnegative, then ordinary multivariate division with the lexicographic
monomial order is run, accepting only a zero remainder.
"""

from __future__ import annotations

import json
from typing import Callable, Iterable, Mapping

Exponent = tuple[int, ...]


class LaurentPoly:
    """An exact Laurent polynomial with integer coefficients."""

    __slots__ = ("num_vars", "terms", "_key")

    def __init__(self, num_vars: int, terms: Mapping[Exponent, int] | None = None):
        if num_vars < 1:
            raise ValueError("num_vars must be positive")
        clean: dict[Exponent, int] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars:
                raise ValueError(f"exponent vector {exps} has wrong length (want {num_vars})")
            coef = int(coef)
            if coef:
                clean[exps] = clean.get(exps, 0) + coef
                if not clean[exps]:
                    del clean[exps]
        self.num_vars = num_vars
        self.terms = clean
        self._key: tuple | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "LaurentPoly":
        return cls(num_vars, {})

    @classmethod
    def one(cls, num_vars: int) -> "LaurentPoly":
        return cls(num_vars, {(0,) * num_vars: 1})

    @classmethod
    def constant(cls, num_vars: int, c: int) -> "LaurentPoly":
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def monomial(cls, exps: Iterable[int], coef: int = 1) -> "LaurentPoly":
        exps = tuple(int(e) for e in exps)
        return cls(len(exps), {exps: coef})

    @classmethod
    def variable(cls, num_vars: int, idx: int) -> "LaurentPoly":
        if not 0 <= idx < num_vars:
            raise ValueError(f"variable index {idx} out of range for {num_vars} variables")
        exps = [0] * num_vars
        exps[idx] = 1
        return cls(num_vars, {tuple(exps): 1})

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.num_vars: 1}

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in canonical (lexicographic by exponent vector) order."""
        return sorted(self.terms.items())

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.num_vars, tuple(self.sorted_terms()))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def _check_compat(self, other: "LaurentPoly") -> None:
        if self.num_vars != other.num_vars:
            raise ValueError(f"mismatched num_vars: {self.num_vars} vs {other.num_vars}")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compat(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.num_vars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compat(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.num_vars, out)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers are not defined for general Laurent polynomials")
        out = LaurentPoly.one(self.num_vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vars": self.num_vars,
            "terms": [{"c": str(c), "e": list(e)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "LaurentPoly":
        return cls(int(data["vars"]), {tuple(t["e"]): int(t["c"]) for t in data["terms"]})

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls.from_json_dict(json.loads(text))

    def to_text(self, names: Callable[[int], str] | None = None) -> str:
        """Human-readable sum of monomials in canonical order."""
        if self.is_zero():
            return "0"
        names = names or (lambda i: f"x{i + 1}")
        parts: list[str] = []
        for e, c in self.sorted_terms():
            factors = [
                names(i) if p == 1 else f"{names(i)}^{p}" for i, p in enumerate(e) if p
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()})"


# -- spec-level operation names ---------------------------------------------


def lp_monomial(exps: Iterable[int]) -> LaurentPoly:
    """The single-term polynomial x^exps with coefficient 1."""
    return LaurentPoly.monomial(exps, 1)


def lp_add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f + g


def lp_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def _nonneg_shift(f: LaurentPoly) -> tuple[dict[Exponent, int], Exponent]:
    """Shift f by a monomial so all exponents are >= 0; return (terms, shift)."""
    n = f.num_vars
    shift = tuple(min(e[i] for e in f.terms) for i in range(n))
    terms = {tuple(a - b for a, b in zip(e, shift)): c for e, c in f.terms.items()}
    return terms, shift


def lp_exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly | None:
    """Return q with f == q*g if q exists in Z[x^&plusmn;], else None.

    Shifts both operands into the polynomial cone, runs single-divisor
    multivariate division with the lex order, and accepts only a zero
    remainder.  A nonzero remainder, or a leading-coefficient division that
    leaves the integers, means f is not divisible by g in the Laurent ring.
    """
    f._check_compat(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return LaurentPoly.zero(f.num_vars)
    rem, f_shift = _nonneg_shift(f)
    gterms, g_shift = _nonneg_shift(g)
    lt_g = max(gterms)
    c_g = gterms[lt_g]
    quot: dict[Exponent, int] = {}
    while rem:
        lt_r = max(rem)
        c_r = rem[lt_r]
        e = tuple(a - b for a, b in zip(lt_r, lt_g))
        if any(x < 0 for x in e) or c_r % c_g:
            return None
        c = c_r // c_g
        quot[e] = quot.get(e, 0) + c
        for eg, cg in gterms.items():
            key = tuple(a + b for a, b in zip(e, eg))
            new = rem.get(key, 0) - c * cg
            if new:
                rem[key] = new
            else:
                rem.pop(key, None)
    unshift = tuple(a - b for a, b in zip(f_shift, g_shift))
    return LaurentPoly(
        f.num_vars,
        {tuple(a + b for a, b in zip(e, unshift)): c for e, c in quot.items()},
    )


def lp_project(f: LaurentPoly, var_map: Iterable[int], new_num_vars: int) -> LaurentPoly:
    """Substitute x_old -> z_{var_map[old]} and collect like terms."""
    var_map = tuple(var_map)
    if len(var_map) != f.num_vars:
        raise ValueError("var_map must be total on the old variables")
    if any(not 0 <= v < new_num_vars for v in var_map):
        raise ValueError("var_map target out of range")
    out: dict[Exponent, int] = {}
    for e, c in f.terms.items():
        ne = [0] * new_num_vars
        for i, p in enumerate(e):
            ne[var_map[i]] += p
        key = tuple(ne)
        out[key] = out.get(key, 0) + c
    return LaurentPoly(new_num_vars, out)


def lp_prod(polys: Iterable[LaurentPoly], num_vars: int) -> LaurentPoly:
    out = LaurentPoly.one(num_vars)
    for p in polys:
        out = out * p
    return out
