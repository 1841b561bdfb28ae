"""Sparse multivariate polynomials with exact rational coefficients.

Variables are plain strings with a small structured grammar so that one ring
can host the base variables of forms (``x1``, ``x2``, ...), the Laurent
parameter ``t``, slot symbols (``f``, ``g1``), Laurent-tagged slot symbols
(``f[-1]``) and coordinate variables (``f_3``, ``f_3[-1]``)::

    name  = letters digits? ("_" digits)? ("[" signed-int "]")?

Variables are totally ordered by :func:`var_key`; the first variable in that
order is the largest one (so ``x1 > x2 > ...`` and ``f > g > h``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Any, Callable, Iterable, Mapping

from .errors import ParseError, UnboundVariable

Monomial = tuple  # tuple[tuple[str, int], ...], variables sorted by var_key

_VAR_RE = re.compile(r"([A-Za-z]+)(\d*)(?:_(\d+))?(?:\[(-?\d+)\])?\Z")


@lru_cache(maxsize=None)
def var_key(name: str) -> tuple:
    m = _VAR_RE.match(name)
    if m is None:
        raise ParseError(f"bad variable name {name!r}")
    base, idx, coord, tag = m.groups()
    return (
        base,
        int(idx) if idx else -1,
        int(coord) if coord else -1,
        0 if tag is None else 1,
        int(tag) if tag is not None else 0,
    )


def split_var(name: str) -> tuple[str, int | None, int | None]:
    """Return ``(symbol, coordinate, laurent_tag)`` for a variable.

    ``symbol`` keeps the letters and digit index (``g1``)."""
    m = _VAR_RE.match(name)
    if m is None:
        raise ParseError(f"bad variable name {name!r}")
    base, idx, coord, tag = m.groups()
    return (
        base + idx,
        int(coord) if coord else None,
        int(tag) if tag is not None else None,
    )


def base_var(i: int) -> str:
    return f"x{i}"


def laurent_var(name: str, k: int) -> str:
    return f"{name}[{k}]"


def coord_var(name: str, c: int, k: int | None = None) -> str:
    return f"{name}_{c}" if k is None else f"{name}_{c}[{k}]"


def is_base_var(name: str) -> bool:
    m = _VAR_RE.match(name)
    return bool(m) and m.group(1) == "x" and m.group(2) != "" and m.group(3) is None and m.group(4) is None


def base_index(name: str) -> int:
    return int(name[1:])


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")
    return Fraction(c)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif var_key(va) < var_key(vb):
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_from_dict(d: Mapping[str, int]) -> Monomial:
    return tuple(sorted(((v, e) for v, e in d.items() if e), key=lambda ve: var_key(ve[0])))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def grevlex_sort_key(variables: list[str]) -> Callable[[Monomial], tuple]:
    """Sort key (ascending = smaller monomial) for graded reverse lex over ``variables``."""
    pos = {v: i for i, v in enumerate(variables)}
    n = len(variables)

    def key(m: Monomial) -> tuple:
        vec = [0] * n
        for v, e in m:
            vec[pos[v]] = e
        return (sum(vec), tuple(-e for e in reversed(vec)))

    return key


class Poly:
    """Immutable sparse polynomial over Q in canonical form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        # Trusted constructor: callers pass canonical monomials and nonzero Fractions.
        self._terms = dict(terms) if terms else {}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c) -> Poly:
        c = _coerce(c)
        return cls({(): c}) if c else cls()

    @classmethod
    def var(cls, name: str) -> Poly:
        var_key(name)
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Mapping[str, int] | Monomial, Any]]) -> Poly:
        acc: dict = {}
        for mono, c in items:
            m = mono_from_dict(mono) if isinstance(mono, Mapping) else mono_from_dict(dict(mono))
            acc[m] = acc.get(m, 0) + _coerce(c)
        return cls({m: c for m, c in acc.items() if c})

    @classmethod
    def coerce(cls, x) -> Poly:
        return x if isinstance(x, Poly) else cls.const(x)

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((mono_degree(m) for m in self._terms), default=-1)

    def degree_in(self, variables) -> int:
        vs = set(variables)
        return max((sum(e for v, e in m if v in vs) for m in self._terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {mono_degree(m) for m in self._terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def variables(self) -> set[str]:
        return {v for m in self._terms for v, _ in m}

    def sorted_variables(self) -> list[str]:
        return sorted(self.variables(), key=var_key)

    def coefficient(self, mono: Mapping[str, int] | Monomial = ()) -> Fraction:
        m = mono_from_dict(mono) if isinstance(mono, Mapping) else mono
        return self._terms.get(m, Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Poly:
        c = _coerce(c)
        if not c:
            return Poly()
        return Poly({m: c * a for m, a in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        if not self._terms or not other._terms:
            return Poly()
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly({m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, c):
        c = _coerce(c)
        return self.scale(1 / c)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        try:
            return self._terms == Poly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # substitution -------------------------------------------------------
    def evaluate(self, values: Mapping[str, Any], zero: Any = None) -> Any:
        """Evaluate in any commutative ring whose elements support ``+``,
        ``*``, integer powers and left multiplication by a Fraction.

        Missing variables raise :class:`UnboundVariable`.
        """
        powers: dict = {}
        total = zero
        for m, c in self._terms.items():
            term = None
            for v, e in m:
                if v not in values:
                    raise UnboundVariable(v)
                pv = powers.get((v, e))
                if pv is None:
                    pv = values[v] if e == 1 else values[v] ** e
                    powers[(v, e)] = pv
                term = pv if term is None else term * pv
            term = c if term is None else c * term
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def substitute(self, assignment: Mapping[str, Any]) -> Poly:
        """Full substitution; every variable of ``self`` must be assigned."""
        vals = {v: Poly.coerce(p) for v, p in assignment.items()}
        return Poly.coerce(self.evaluate(vals, zero=Poly()))

    def subs(self, assignment: Mapping[str, Any]) -> Poly:
        """Partial substitution; unassigned variables are kept."""
        vals = {v: Poly.coerce(p) for v, p in assignment.items()}
        for v in self.variables():
            vals.setdefault(v, Poly.var(v))
        return Poly.coerce(self.evaluate(vals, zero=Poly()))

    def coefficients_in(self, variables) -> dict[Monomial, Poly]:
        """Split as ``sum_m m * coeff_m`` with ``m`` a monomial in ``variables``."""
        vs = set(variables)
        out: dict = {}
        for m, c in self._terms.items():
            inner = tuple(ve for ve in m if ve[0] in vs)
            rest = tuple(ve for ve in m if ve[0] not in vs)
            out.setdefault(inner, {})[rest] = c
        return {k: Poly(v) for k, v in out.items()}

    def restrict_zero(self, variables) -> Poly:
        """Set every variable in ``variables`` to zero."""
        vs = set(variables)
        return Poly({m: c for m, c in self._terms.items() if not any(v in vs for v, _ in m)})

    def map_coefficients(self, fn: Callable[[Fraction], Fraction]) -> Poly:
        out = {}
        for m, c in self._terms.items():
            c2 = _coerce(fn(c))
            if c2:
                out[m] = c2
        return Poly(out)

    # printing -----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded reverse lex order."""
        key = grevlex_sort_key(self.sorted_variables())
        return sorted(self._terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_monomial(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if m == ():
            body = _format_coeff(a)
        elif a == 1:
            body = format_monomial(m)
        else:
            body = f"{_format_coeff(a)}*{format_monomial(m)}"
        if i == 0:
            parts.append(f"-{body}" if sign == "-" else body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:/\d+)?)"
    r"|(?P<var>[A-Za-z]+\d*(?:_\d+)?(?:\[-?\d+\])?)"
    r"|(?P<op>[-+*^()])"
    r")"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    if "." in text:
        raise ParseError(f"floating-point literals are not allowed: {text!r}")
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _Parser:
    # expr := ["+"|"-"] term (("+"|"-") term)* ; term := factor ("*" factor)*
    # factor := atom ("^" int)? ; atom := num | var | "(" expr ")"
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(f"{msg} in {self.text!r}")

    def expr(self) -> Poly:
        total = Poly()
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        total = self.term().scale(sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                total = total + t if val == "+" else total - t
            else:
                return total

    def term(self) -> Poly:
        p = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Poly:
        p = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                self.fail("exponent must be a nonnegative integer")
            p = p ** int(val)
        return p

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(Fraction(val))
        if kind == "var":
            return Poly.var(val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return p
        if (kind, val) == ("op", "-"):
            return -self.factor()
        self.fail(f"unexpected token {val!r}")

    def parse(self) -> Poly:
        if not self.toks:
            self.fail("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            self.fail(f"trailing input {self.peek()[1]!r}")
        return p


def parse_poly(text: str) -> Poly:
    """Parse the text grammar, e.g. ``"3/2*x1^2*x2 - x3^3"``.

    Parentheses are accepted on input; output of :func:`format_poly` never
    contains them. Floating-point literals are rejected.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected text, got {type(text).__name__}")
    return _Parser(text).parse()


def P(text: str) -> Poly:
    """Shorthand for :func:`parse_poly`."""
    return parse_poly(text)


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_substitute(p: Poly, assignment: Mapping[str, Any]) -> Poly:
    return p.substitute(assignment)
