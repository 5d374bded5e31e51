"""Sparse differential polynomial ring over exact rationals.

A polynomial is a sparse map from monomials to ``Fraction`` coefficients.
Variables come in two flavours:

* differential variables ``x<i>_<j>`` standing for the j-th formal derivative
  of the i-th coordinate (the derivation sends ``x<i>_<j>`` to ``x<i>_<j+1>``);
* auxiliary symbols with their own derivation rules: the constants ``xi<m>``
  and ``al<m>_<i>`` (derivative zero), the exponential markers ``E<m>``
  (derivative ``xi<m>*E<m>``), and the differential indeterminate ``y_<k>``
  (derivative ``y_<k+1>``).

All values are immutable after construction and every operation is a pure
function, so concurrent use is safe.  Coefficients are exact rationals only;
there is no floating-point mode.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

_KIND_RANK = {"x": 0, "xi": 1, "al": 2, "E": 3, "y": 4}


@dataclass(frozen=True, slots=True)
class Variable:
    """A single ring variable.

    ``kind`` is one of ``x``, ``xi``, ``al``, ``E``, ``y``.  For ``x`` the
    fields are (family ``i`` >= 1, derivative order ``j`` >= 0); for ``al``
    they are (group ``i``, coordinate ``j``); for ``xi``/``E`` only ``i`` is
    used; for ``y`` only ``j`` (the derivative order).
    """

    kind: str
    i: int = 0
    j: int = 0

    def sort_key(self) -> tuple[int, int, int, int]:
        # Differential variables first (family-major, order ascending),
        # auxiliaries after, in a fixed kind order.
        rank = _KIND_RANK[self.kind]
        return (0 if rank == 0 else 1, rank, self.i, self.j)

    def token(self) -> str:
        if self.kind == "x":
            return f"x{self.i}_{self.j}"
        if self.kind == "xi":
            return f"xi{self.i}"
        if self.kind == "al":
            return f"al{self.i}_{self.j}"
        if self.kind == "E":
            return f"E{self.i}"
        return f"y_{self.j}"

    def __lt__(self, other: "Variable") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Variable({self.token()!r})"


def x(i: int, j: int = 0) -> Variable:
    """The differential variable x_i^(j)."""
    if i < 1 or j < 0:
        raise ValueError(f"invalid differential variable x{i}_{j}")
    return Variable("x", i, j)


def xi(m: int) -> Variable:
    """The transcendental constant xi_m (derivative zero)."""
    return Variable("xi", m, 0)


def al(m: int, i: int) -> Variable:
    """The transcendental constant al_{m,i} (derivative zero)."""
    return Variable("al", m, i)


def E(m: int) -> Variable:
    """The exponential marker E_m, with derivation E_m' = xi_m * E_m."""
    return Variable("E", m, 0)


def y(k: int) -> Variable:
    """The k-th derivative of the differential indeterminate y."""
    if k < 0:
        raise ValueError(f"invalid derivative order y_{k}")
    return Variable("y", 0, k)


def differential_variables(n: int, max_order: int) -> list[Variable]:
    """All x_i^(j) with 1 <= i <= n and 0 <= j <= max_order, in variable order."""
    return [x(i, j) for i in range(1, n + 1) for j in range(max_order + 1)]


@functools.total_ordering
class Monomial:
    """A power product, stored as a sorted tuple of (variable, exponent) pairs.

    Zero exponents are never stored; the empty product is the monomial 1.
    Ordering is graded lexicographic: higher total degree wins, ties are
    broken by the exponent at the earliest variable where the two differ.
    """

    __slots__ = ("pairs", "degree", "_hash")

    def __init__(self, pairs: Iterable[tuple[Variable, int]]):
        items = [(v, e) for v, e in pairs if e != 0]
        for _, e in items:
            if e < 0:
                raise ValueError("negative exponent in monomial")
        items.sort(key=lambda p: p[0].sort_key())
        self.pairs: tuple[tuple[Variable, int], ...] = tuple(items)
        self.degree: int = sum(e for _, e in items)
        self._hash = hash(self.pairs)

    @classmethod
    def one(cls) -> "Monomial":
        return cls(())

    @classmethod
    def of(cls, v: Variable, e: int = 1) -> "Monomial":
        return cls(((v, e),))

    def exponent(self, v: Variable) -> int:
        for w, e in self.pairs:
            if w == v:
                return e
        return 0

    def variables(self) -> tuple[Variable, ...]:
        return tuple(v for v, _ in self.pairs)

    def mul(self, other: "Monomial") -> "Monomial":
        if not self.pairs:
            return other
        if not other.pairs:
            return self
        merged: dict[Variable, int] = dict(self.pairs)
        for v, e in other.pairs:
            merged[v] = merged.get(v, 0) + e
        return Monomial(merged.items())

    def weight(self) -> int:
        """Sum of derivative orders of the differential variables, with multiplicity."""
        return sum(v.j * e for v, e in self.pairs if v.kind == "x")

    def max_order(self) -> int:
        """Largest derivative order among differential variables; -1 if none."""
        return max((v.j for v, _ in self.pairs if v.kind == "x"), default=-1)

    def has_order_above(self, h: int) -> bool:
        return any(v.kind == "x" and v.j > h for v, _ in self.pairs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        if self.degree != other.degree:
            return self.degree < other.degree
        a, b = self.pairs, other.pairs
        i = j = 0
        while i < len(a) and j < len(b):
            va, ea = a[i]
            vb, eb = b[j]
            ka, kb = va.sort_key(), vb.sort_key()
            if ka == kb:
                if ea != eb:
                    return ea < eb
                i += 1
                j += 1
            elif ka < kb:
                # self has a positive exponent at an earlier variable
                return False
            else:
                return True
        if i < len(a):
            return False
        if j < len(b):
            return True
        return False

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        parts = []
        for v, e in self.pairs:
            parts.append(v.token() if e == 1 else f"{v.token()}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self})"


_Scalar = (int, Fraction)


class Polynomial:
    """Sparse rational-coefficient sum of monomials.

    The term map never stores zero coefficients; the zero polynomial has an
    empty map.  Instances are immutable by convention and hashable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[m] = c
        self.terms: dict[Monomial, Fraction] = clean
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, c: int | Fraction) -> "Polynomial":
        return cls({Monomial.one(): Fraction(c)})

    @classmethod
    def from_variable(cls, v: Variable) -> "Polynomial":
        return cls({Monomial.of(v): Fraction(1)})

    @classmethod
    def from_monomial(cls, m: Monomial, c: int | Fraction = 1) -> "Polynomial":
        return cls({m: Fraction(c)})

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Monomial, Fraction]]) -> "Polynomial":
        acc: dict[Monomial, Fraction] = {}
        for m, c in items:
            acc[m] = acc.get(m, Fraction(0)) + c
        return cls(acc)

    # -- basic queries ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.sorted_terms()]

    def total_degree(self) -> int:
        """Maximal term degree; -1 for the zero polynomial."""
        return max((m.degree for m in self.terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """The common degree of all terms, or None if mixed or zero."""
        degs = {m.degree for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def homogeneous_weight(self) -> int | None:
        """The common differential weight of all terms, or None if mixed or zero."""
        ws = {m.weight() for m in self.terms}
        return ws.pop() if len(ws) == 1 else None

    def max_order(self) -> int:
        """Largest derivative order of any differential variable; -1 if none."""
        return max((m.max_order() for m in self.terms), default=-1)

    def degree_in(self, v: Variable) -> int:
        return max((m.exponent(v) for m in self.terms), default=0)

    def coefficient_of_power(self, v: Variable, e: int) -> "Polynomial":
        """The coefficient of v**e: terms with exponent exactly e, with v removed."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            if m.exponent(v) == e:
                rest = Monomial(tuple((w, k) for w, k in m.pairs if w != v))
                out[rest] = out.get(rest, Fraction(0)) + c
        return Polynomial(out)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(value: "Polynomial | int | Fraction") -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, _Scalar):
            return Polynomial.constant(value)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: "Polynomial | int | Fraction") -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial | int | Fraction") -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "Polynomial | int | Fraction") -> "Polynomial":
        return -(self - other)

    def __mul__(self, other: "Polynomial | int | Fraction") -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial.zero()
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = ma.mul(mb)
                out[m] = out.get(m, Fraction(0)) + ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, _Scalar):
            other = Polynomial.constant(other)
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- derivation and substitution ----------------------------------------

    def derivative(self, times: int = 1) -> "Polynomial":
        """Leibniz extension of the per-variable derivation rules."""
        p = self
        for _ in range(times):
            acc: dict[Monomial, Fraction] = {}
            for m, c in p.terms.items():
                for idx, (v, e) in enumerate(m.pairs):
                    dv = _derive_variable(v)
                    if dv.is_zero:
                        continue
                    rest_pairs = list(m.pairs)
                    if e == 1:
                        del rest_pairs[idx]
                    else:
                        rest_pairs[idx] = (v, e - 1)
                    rest = Monomial(rest_pairs)
                    for dm, dc in dv.terms.items():
                        key = rest.mul(dm)
                        acc[key] = acc.get(key, Fraction(0)) + c * e * dc
            p = Polynomial(acc)
        return p

    def restrict_above(self, h: int) -> "Polynomial":
        """Drop every term containing a differential variable of order > h."""
        return Polynomial(
            {m: c for m, c in self.terms.items() if not m.has_order_above(h)}
        )

    def substitute(self, mapping: Mapping[Variable, "Polynomial"]) -> "Polynomial":
        """Replace each mapped variable by a polynomial, multiplicatively."""
        result = Polynomial.zero()
        for m, c in self.terms.items():
            term = Polynomial.constant(c)
            for v, e in m.pairs:
                repl = mapping.get(v)
                if repl is None:
                    term = term * Polynomial.from_monomial(Monomial.of(v, e))
                else:
                    term = term * repl**e
            result = result + term
        return result

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)})"


def _derive_variable(v: Variable) -> Polynomial:
    if v.kind == "x":
        return Polynomial.from_variable(x(v.i, v.j + 1))
    if v.kind == "y":
        return Polynomial.from_variable(y(v.j + 1))
    if v.kind == "E":
        return Polynomial.from_monomial(Monomial(((xi(v.i), 1), (v, 1))))
    return Polynomial.zero()  # xi, al are constants


# -- parsing and formatting ---------------------------------------------------

ZERO = Polynomial.zero()
ONE = Polynomial.constant(1)


class PolynomialSyntaxError(ValueError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|([+\-*/^]))")

_VAR_PATTERNS = (
    (re.compile(r"^x(\d+)_(\d+)$"), lambda a, b: x(int(a), int(b))),
    (re.compile(r"^xi(\d+)$"), lambda a, b: xi(int(a))),
    (re.compile(r"^al(\d+)_(\d+)$"), lambda a, b: al(int(a), int(b))),
    (re.compile(r"^E(\d+)$"), lambda a, b: E(int(a))),
    (re.compile(r"^y_(\d+)$"), lambda a, b: y(int(a))),
)


def _variable_from_token(tok: str, pos: int) -> Variable:
    for pattern, make in _VAR_PATTERNS:
        m = pattern.match(tok)
        if m:
            groups = m.groups()
            a = groups[0]
            b = groups[1] if len(groups) > 1 else None
            try:
                return make(a, b)
            except ValueError as exc:
                raise PolynomialSyntaxError(str(exc), pos) from None
    raise PolynomialSyntaxError(f"unknown variable name {tok!r}", pos)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []  # (type, value, position)
        pos = 0
        while pos < len(text):
            if text[pos:].isspace():
                break
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                stripped = text[pos:].lstrip()
                at = len(text) - len(stripped)
                raise PolynomialSyntaxError(
                    f"unexpected character {text[at]!r}", at
                )
            num, ident, op = m.groups()
            if num is not None:
                self.items.append(("num", num, m.start(1)))
            elif ident is not None:
                self.items.append(("ident", ident, m.start(2)))
            elif op is not None:
                self.items.append(("op", op, m.start(3)))
            pos = m.end()
        self.index = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.items[self.index] if self.index < len(self.items) else None

    def next(self) -> tuple[str, str, int] | None:
        item = self.peek()
        if item is not None:
            self.index += 1
        return item

    def expect(self, kind: str) -> tuple[str, str, int]:
        item = self.next()
        if item is None:
            raise PolynomialSyntaxError(f"expected {kind}, found end of input", len(self.text))
        if item[0] != kind:
            raise PolynomialSyntaxError(f"expected {kind}, found {item[1]!r}", item[2])
        return item


def parse(text: str) -> Polynomial:
    """Parse polynomial text in the grammar used by :func:`format_polynomial`.

    Terms are separated by ``+``/``-``; each term is a ``*``-separated list of
    an optional rational ``p`` or ``p/q`` and powered variables ``tok^e``.
    Whitespace is ignored.  Raises :class:`PolynomialSyntaxError` on malformed
    input or unknown variable names.
    """
    toks = _Tokens(text)
    if toks.peek() is None:
        raise PolynomialSyntaxError("empty input", 0)
    result = Polynomial.zero()
    sign = 1
    first = True
    while True:
        item = toks.peek()
        if item is None:
            if first:
                raise PolynomialSyntaxError("empty input", 0)
            break
        if item[0] == "op" and item[1] in "+-":
            toks.next()
            sign = 1 if item[1] == "+" else -1
            if toks.peek() is None:
                raise PolynomialSyntaxError("dangling sign", item[2])
        elif not first:
            raise PolynomialSyntaxError(f"expected '+' or '-', found {item[1]!r}", item[2])
        result = result + sign * _parse_term(toks)
        sign = 1
        first = False
    return result


def _parse_term(toks: _Tokens) -> Polynomial:
    coeff = Fraction(1)
    pairs: dict[Variable, int] = {}
    while True:
        item = toks.next()
        if item is None:
            raise PolynomialSyntaxError("expected a factor", len(toks.text))
        kind, value, pos = item
        if kind == "num":
            numer = int(value)
            nxt = toks.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "/":
                toks.next()
                denom_item = toks.expect("num")
                denom = int(denom_item[1])
                if denom == 0:
                    raise PolynomialSyntaxError("zero denominator", denom_item[2])
                coeff *= Fraction(numer, denom)
            else:
                coeff *= numer
        elif kind == "ident":
            v = _variable_from_token(value, pos)
            e = 1
            nxt = toks.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "^":
                toks.next()
                e = int(toks.expect("num")[1])
            pairs[v] = pairs.get(v, 0) + e
        else:
            raise PolynomialSyntaxError(f"unexpected {value!r} in term", pos)
        nxt = toks.peek()
        if nxt is not None and nxt[0] == "op" and nxt[1] == "*":
            toks.next()
            continue
        break
    return Polynomial.from_monomial(Monomial(pairs.items()), coeff)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    """Render a polynomial in the parse grammar, terms in descending order."""
    if p.is_zero:
        return "0"
    chunks: list[str] = []
    for idx, (m, c) in enumerate(p.sorted_terms()):
        mag = abs(c)
        if not m.pairs:
            body = _format_coeff(mag)
        elif mag == 1:
            body = str(m)
        else:
            body = f"{_format_coeff(mag)}*{m}"
        if idx == 0:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f"{' + ' if c > 0 else ' - '}{body}")
    return "".join(chunks)
