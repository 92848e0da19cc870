"""Exact Laurent polynomials and truncated Laurent series in t.

``LaurentPoly`` stores a sparse map from exponent vectors to Fractions
over a fixed, ordered tuple of variable names.  ``TSeries`` is a Laurent
series in t whose coefficients are ``LaurentPoly`` values; it knows its
own precision and never produces coefficients beyond it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class LaurentPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping | None = None):
        self.vars = tuple(variables)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                if c:
                    clean[e] = _frac(c)
        self.terms = clean

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.vars = variables
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c, variables: Iterable[str] = ()) -> "LaurentPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def monomial(cls, variables: Iterable[str], exps: Mapping[str, int], c=1) -> "LaurentPoly":
        variables = tuple(variables)
        e = tuple(exps.get(v, 0) for v in variables)
        unknown = set(exps) - set(variables)
        if unknown:
            raise ValueError(f"unknown variables {unknown}")
        return cls(variables, {e: c})

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                if not other.terms:
                    return LaurentPoly._raw(self.vars, {})
                if not other.vars and set(other.terms) == {()}:
                    return LaurentPoly.const(other.terms[()], self.vars)
                if not self.vars and set(self.terms) <= {()}:
                    raise _Promote
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        return LaurentPoly.const(other, self.vars)

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except _Promote:
            return other + self
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _frac(other)
            if not c:
                return LaurentPoly._raw(self.vars, {})
            return LaurentPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        try:
            o = self._coerce(other)
        except _Promote:
            return other * self
        out: dict = {}
        n = len(self.vars)
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(e1[k] + e2[k] for k in range(n)) if n else ()
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentPoly._raw(self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            if len(other.terms) != 1:
                raise ZeroDivisionError("can only divide by a monomial")
            (e, c), = other.terms.items()
            inv = LaurentPoly._raw(self.vars, {tuple(-k for k in e): 1 / c})
            return self * inv
        return self * (1 / _frac(other))

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers only for monomials")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.vars, {tuple(-k * x for x in e): c ** k})
        result = LaurentPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            if self.vars == other.vars:
                return self.terms == other.terms
            return (self - other).is_zero() if _compatible(self, other) else False
        return self.terms == LaurentPoly.const(other, self.vars).terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- extraction ------------------------------------------------------
    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise KeyError(f"{var!r} is not a variable of {self.vars}") from None

    def coeff(self, exps: Mapping[str, int] | None = None):
        """Coefficient of a full monomial, as a Fraction."""
        exps = exps or {}
        e = tuple(exps.get(v, 0) for v in self.vars)
        return self.terms.get(e, Fraction(0))

    def constant(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def extract(self, var: str, k: int) -> "LaurentPoly":
        """[var^k] self, keeping the variable list (the result has no ``var``)."""
        i = self._index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return LaurentPoly._raw(self.vars, out)

    def nonneg_part(self, var: str) -> "LaurentPoly":
        i = self._index(var)
        return LaurentPoly._raw(self.vars, {e: c for e, c in self.terms.items() if e[i] >= 0})

    def evaluate(self, var: str, value) -> "LaurentPoly":
        i = self._index(var)
        value = _frac(value)
        out: dict = {}
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            v = out.get(ne, 0) + c * value ** e[i]
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return LaurentPoly._raw(self.vars, out)

    def exponent_range(self, var: str) -> tuple[int, int] | None:
        if not self.terms:
            return None
        i = self._index(var)
        ks = [e[i] for e in self.terms]
        return min(ks), max(ks)

    def univariate(self, var: str) -> dict[int, Fraction]:
        """Map exponent of ``var`` to coefficient; other variables must be absent."""
        i = self._index(var)
        out = {}
        for e, c in self.terms.items():
            if any(e[k] for k in range(len(e)) if k != i):
                raise ValueError("polynomial involves other variables")
            out[e[i]] = c
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(f"{v}^{k}" if k != 1 else v for v, k in zip(self.vars, e) if k)
            c = self.terms[e]
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


class _Promote(Exception):
    """Internal: a constant with no variables met a richer polynomial."""


def _compatible(p: LaurentPoly, q: LaurentPoly) -> bool:
    try:
        p._coerce(q)
        return True
    except (ValueError, _Promote):
        return False


class TSeries:
    """Truncated Laurent series sum_{k=min_order}^{N} c_k t^k."""

    __slots__ = ("min_order", "N", "coeffs", "vars")

    def __init__(self, min_order: int, coeffs: list, N: int | None = None,
                 variables: Iterable[str] = ()):
        self.vars = tuple(variables)
        self.min_order = min_order
        cs = [c if isinstance(c, LaurentPoly) else LaurentPoly.const(c, self.vars) for c in coeffs]
        if N is None:
            N = min_order + len(cs) - 1
        if N < min_order - 1:
            raise ValueError("precision below valuation")
        zero = LaurentPoly._raw(self.vars, {})
        cs = cs[: N - min_order + 1]
        cs += [zero] * (N - min_order + 1 - len(cs))
        self.N = N
        self.coeffs = cs

    # -- constructors ----------------------------------------------------
    @classmethod
    def const(cls, c, N: int, variables: Iterable[str] = ()) -> "TSeries":
        return cls(0, [c], N, variables)

    @classmethod
    def t_power(cls, k: int, N: int, variables: Iterable[str] = (), c=1) -> "TSeries":
        return cls(k, [c], N, variables)

    def __getitem__(self, k: int) -> LaurentPoly:
        if k > self.N:
            raise IndexError(f"t^{k} is beyond the truncation order {self.N}")
        if k < self.min_order:
            return LaurentPoly._raw(self.vars, {})
        return self.coeffs[k - self.min_order]

    def _coerce(self, other) -> "TSeries":
        if isinstance(other, TSeries):
            return other
        return TSeries(0, [other], self.N, self.vars)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        lo = min(self.min_order, o.min_order)
        N = min(self.N, o.N)
        return TSeries(lo, [self[k] + o[k] for k in range(lo, N + 1)], N, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return TSeries(self.min_order, [-c for c in self.coeffs], self.N, self.vars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TSeries):
            return TSeries(self.min_order, [c * other for c in self.coeffs], self.N, self.vars)
        lo = self.min_order + other.min_order
        N = min(self.N + other.min_order, other.N + self.min_order)
        out = []
        for k in range(lo, N + 1):
            acc = LaurentPoly._raw(self.vars, {})
            for i in range(self.min_order, k - other.min_order + 1):
                a = self[i]
                if a.terms:
                    b = other[k - i]
                    if b.terms:
                        acc = acc + a * b
            out.append(acc)
        return TSeries(lo, out, N, self.vars)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TSeries":
        """Multiply by t^k."""
        return TSeries(self.min_order + k, list(self.coeffs), self.N + k, self.vars)

    def __pow__(self, k: int) -> "TSeries":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            # exactly 1; never report less precision than self has
            return TSeries(0, [LaurentPoly.const(1, self.vars)], max(self.N, self.N - self.min_order), self.vars)
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def valuation(self) -> int | None:
        for k in range(self.min_order, self.N + 1):
            if self[k].terms:
                return k
        return None

    def inverse(self) -> "TSeries":
        """1/self, for a series whose lowest nonzero coefficient is a monomial."""
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("series is zero to its precision")
        lead = self[v]
        inv_lead = LaurentPoly.const(1, self.vars) / lead
        # self = t^v * lead * (1 - g) with g of positive valuation
        prec = self.N - v
        g = TSeries(0, [-(self[v + k] * inv_lead) for k in range(prec + 1)], prec, self.vars)
        g.coeffs[0] = LaurentPoly._raw(self.vars, {})
        acc = TSeries(0, [LaurentPoly.const(1, self.vars)], prec, self.vars)
        term = acc
        for _ in range(prec):
            term = term * g
            acc = acc + term
        return (acc * inv_lead).shift(-v)

    def truncate(self, N: int) -> "TSeries":
        N = min(N, self.N)
        return TSeries(self.min_order, self.coeffs[: N - self.min_order + 1], N, self.vars)

    def map(self, f: Callable[[LaurentPoly], LaurentPoly]) -> "TSeries":
        out = [f(c) for c in self.coeffs]
        variables = out[0].vars if out else self.vars
        return TSeries(self.min_order, out, self.N, variables)

    def nonneg_part(self, var: str) -> "TSeries":
        return self.map(lambda c: c.nonneg_part(var))

    def extract(self, var: str, k: int) -> "TSeries":
        return self.map(lambda c: c.extract(var, k))

    def evaluate(self, var: str, value) -> "TSeries":
        return self.map(lambda c: c.evaluate(var, value))

    def scalars(self, lo: int | None = None) -> list[Fraction]:
        """Coefficients as Fractions (each must be a constant), from ``lo`` to N."""
        lo = self.min_order if lo is None else lo
        out = []
        for k in range(lo, self.N + 1):
            c = self[k]
            extra = [e for e in c.terms if any(e)]
            if extra:
                raise ValueError(f"coefficient of t^{k} is not constant: {c}")
            out.append(c.constant())
        return out

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        lo = min(self.min_order, other.min_order)
        N = min(self.N, other.N)
        return all(self[k] == other[k] for k in range(lo, N + 1))

    def __repr__(self) -> str:
        parts = [f"({c})*t^{k}" for k, c in zip(range(self.min_order, self.N + 1), self.coeffs) if c.terms]
        return (" + ".join(parts) or "0") + f" + O(t^{self.N + 1})"
