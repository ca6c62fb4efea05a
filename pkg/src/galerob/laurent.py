"""Exact Laurent polynomials with integer coefficients.

Also hosts the Gale-Robinson recurrence, seed mutation and the
g-vector recovery ``z = x^g * F(yhat)``.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ArityMismatch, InvalidParams, NotDivisible, NotMonomial
from .quiver import Digraph, GRParams, Quiver, classical_mutation

Exponent = tuple[int, ...]


def _add_exp(e: Exponent, f: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(e, f))


def _sub_exp(e: Exponent, f: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(e, f))


class LaurentPoly:
    """Laurent polynomial in a fixed number of variables.

    Terms map exponent tuples to nonzero Python ints.  Instances are treated
    as immutable values; every operation returns a fresh object.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ArityMismatch(f"exponent {e} has arity {len(e)}, expected {nvars}")
            if c:
                clean[tuple(e)] = int(c)
        self._terms = clean
        self._hash = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: int = 1) -> "LaurentPoly":
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, nvars: int, i: int, power: int = 1) -> "LaurentPoly":
        """The variable with 1-based index ``i`` raised to ``power``."""
        if not 1 <= i <= nvars:
            raise ArityMismatch(f"variable index {i} outside 1..{nvars}")
        e = [0] * nvars
        e[i - 1] = power
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls._raw(len(exponent), {tuple(exponent): coeff} if coeff else {})

    @classmethod
    def generators(cls, nvars: int) -> list["LaurentPoly"]:
        return [cls.variable(nvars, i) for i in range(1, nvars + 1)]

    # -- inspection ----------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, int]]:
        """Terms in canonical (ascending lexicographic) order."""
        return sorted(self._terms.items())

    def monomials(self) -> list[Exponent]:
        return sorted(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, exponent: Sequence[int]) -> int:
        return self._terms.get(tuple(exponent), 0)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.nvars, 0)

    def leading(self) -> tuple[Exponent, int]:
        e = max(self._terms)
        return e, self._terms[e]

    def degree_bounds(self) -> tuple[Exponent, Exponent]:
        """Per-variable minimum and maximum exponent."""
        if not self._terms:
            raise ValueError("zero polynomial has no degree bounds")
        cols = list(zip(*self._terms))
        return tuple(min(c) for c in cols), tuple(max(c) for c in cols)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if other.nvars != self.nvars:
            raise ArityMismatch(f"arity {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return LaurentPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise NotDivisible(f"coefficient {c} is not a unit")
            return LaurentPoly._raw(self.nvars, {tuple(x * k for x in e): c ** (-k)})
        result = LaurentPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return exact_div(self, other)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, values: Sequence) -> int | Fraction:
        """Evaluate at numbers (ints or Fractions; negative powers need nonzero)."""
        if len(values) != self.nvars:
            raise ArityMismatch(f"{len(values)} values for {self.nvars} variables")
        total = 0
        for e, c in self._terms.items():
            term = Fraction(c)
            for v, k in zip(values, e):
                if k:
                    term *= Fraction(v) ** k
            total += term
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    def substitute(self, values: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Compose: replace variable i by ``values[i-1]``.

        Negative powers are allowed only where the substituted value is a
        unit monomial.
        """
        if len(values) != self.nvars:
            raise ArityMismatch(f"{len(values)} substitutions for {self.nvars} variables")
        target = values[0].nvars if values else 0
        powers: dict = {}
        out = LaurentPoly.zero(target)
        for e, c in self._terms.items():
            term = LaurentPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = values[i] ** k
                    term = term * powers[key]
            out = out + term
        return out

    # -- text ----------------------------------------------------------------

    def to_text(self, var: str = "x") -> str:
        if not self._terms:
            return "0"
        pieces = []
        for idx, (e, c) in enumerate(self.items()):
            factors = []
            for i, k in enumerate(e, start=1):
                if k == 1:
                    factors.append(f"{var}{i}")
                elif k:
                    factors.append(f"{var}{i}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if idx == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self.to_text()!r})"

    @classmethod
    def parse(cls, text: str, nvars: int, var: str = "x") -> "LaurentPoly":
        """Inverse of :meth:`to_text`."""
        src = text.replace(" ", "")
        if src == "0":
            return cls.zero(nvars)
        if not src.startswith(("+", "-")):
            src = "+" + src
        out = cls.zero(nvars)
        factor_re = re.compile(rf"^{re.escape(var)}(\d+)(?:\^(-?\d+))?$")
        for chunk in re.split(r"(?<!\^)(?=[+-])", src):
            if not chunk:
                continue
            sign, body = chunk[0], chunk[1:]
            coeff = 1
            exp = [0] * nvars
            for f in body.split("*"):
                if f.isdigit():
                    coeff *= int(f)
                    continue
                m = factor_re.match(f)
                if not m:
                    raise ValueError(f"cannot parse factor {f!r} in {text!r}")
                i = int(m.group(1))
                if not 1 <= i <= nvars:
                    raise ArityMismatch(f"variable {var}{i} outside 1..{nvars}")
                exp[i - 1] += int(m.group(2) or 1)
            out = out + cls.monomial(exp, -coeff if sign == "-" else coeff)
        return out


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    p._check(q)
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    p._check(q)
    return p * q


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``p == q * r`` or raise :class:`NotDivisible`.

    Leading-term elimination under lexicographic order.  Lexicographic order
    is not a well-order on Laurent exponents, so every quotient term is
    checked against the per-variable degree box that an exact quotient must
    live in; leaving the box means the division cannot be exact.
    """
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    n = p.nvars
    if p.is_zero():
        return LaurentPoly.zero(n)
    q_terms = q._terms
    if len(q_terms) == 1:
        (eq, cq), = q_terms.items()
        out = {}
        for e, c in p._terms.items():
            k, rem = divmod(c, cq)
            if rem:
                raise NotDivisible(f"coefficient {c} not divisible by {cq}")
            out[_sub_exp(e, eq)] = k
        return LaurentPoly._raw(n, out)

    p_lo, p_hi = p.degree_bounds()
    q_lo, q_hi = q.degree_bounds()
    box_lo = _sub_exp(p_lo, q_lo)
    box_hi = _sub_exp(p_hi, q_hi)
    if any(lo > hi for lo, hi in zip(box_lo, box_hi)):
        raise NotDivisible("degree ranges are incompatible")

    lead_e, lead_c = q.leading()
    rest = [(_sub_exp(e, lead_e), c) for e, c in q_terms.items() if e != lead_e]
    rem = dict(p._terms)
    # max-heap on exponents via negation; stale entries are skipped lazily
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quotient = {}
    while heap:
        neg = heapq.heappop(heap)
        m = tuple(-x for x in neg)
        c = rem.get(m)
        if not c:
            continue
        k, r = divmod(c, lead_c)
        if r:
            raise NotDivisible(f"coefficient {c} not divisible by leading coefficient {lead_c}")
        t = _sub_exp(m, lead_e)
        if any(x < lo or x > hi for x, lo, hi in zip(t, box_lo, box_hi)):
            raise NotDivisible(f"quotient term {t} leaves the admissible degree box")
        quotient[t] = k
        del rem[m]
        for shift, cq in rest:
            e = tuple(a + b for a, b in zip(m, shift))
            old = rem.get(e, 0)
            new = old - k * cq
            if new:
                if not old:
                    heapq.heappush(heap, tuple(-x for x in e))
                rem[e] = new
            elif old:
                del rem[e]
    return LaurentPoly._raw(n, quotient)


# -- the recurrence ------------------------------------------------------------


def gr_sequence(params: GRParams, lo: int, hi: int) -> dict[int, LaurentPoly]:
    """Laurent polynomials ``x_i`` for ``lo <= i <= hi`` in the generators x_1..x_N.

    Forward: ``x_{i+N} = (x_{i+a} x_{i+N-a} + x_{i+c} x_{i+N-c}) / x_i``;
    backward uses the same relation solved for ``x_i``.
    """
    n, a, c = params.N, params.a, params.c
    if lo > 1 or hi < n:
        raise InvalidParams(f"window [{lo}, {hi}] must contain 1..{n}")
    x = {i: LaurentPoly.variable(n, i) for i in range(1, n + 1)}
    for k in range(n + 1, hi + 1):
        i = k - n
        x[k] = exact_div(x[i + a] * x[i + n - a] + x[i + c] * x[i + n - c], x[i])
    for i in range(0, lo - 1, -1):
        x[i] = exact_div(x[i + a] * x[i + n - a] + x[i + c] * x[i + n - c], x[i + n])
    return {i: x[i] for i in range(lo, hi + 1)}


def gr_integers(params: GRParams, lo: int, hi: int, init: Sequence[int] | None = None) -> dict[int, int]:
    """The recurrence over the integers with x_1..x_N = ``init`` (default all 1)."""
    n, a, c = params.N, params.a, params.c
    init = list(init) if init is not None else [1] * n
    if len(init) != n:
        raise ArityMismatch(f"{len(init)} initial values for N={n}")
    x = {i + 1: v for i, v in enumerate(init)}
    for k in range(n + 1, hi + 1):
        i = k - n
        num = x[i + a] * x[i + n - a] + x[i + c] * x[i + n - c]
        q, r = divmod(num, x[i])
        if r:
            raise NotDivisible(f"x_{k}: {num} not divisible by {x[i]}")
        x[k] = q
    for i in range(0, lo - 1, -1):
        num = x[i + a] * x[i + n - a] + x[i + c] * x[i + n - c]
        q, r = divmod(num, x[i + n])
        if r:
            raise NotDivisible(f"x_{i}: {num} not divisible by {x[i + n]}")
        x[i] = q
    return {i: x[i] for i in range(lo, hi + 1)}


# -- seeds ---------------------------------------------------------------------


@dataclass(frozen=True)
class Seed:
    quiver: Digraph
    cluster: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if len(self.cluster) != self.quiver.n:
            raise ArityMismatch(f"{len(self.cluster)} cluster variables for {self.quiver.n} vertices")
        if any(x.is_zero() for x in self.cluster):
            raise ValueError("cluster variables must be nonzero")

    @classmethod
    def initial(cls, quiver: Quiver | Digraph) -> "Seed":
        g = quiver.to_digraph() if isinstance(quiver, Quiver) else quiver
        return cls(g, tuple(LaurentPoly.generators(g.n)))

    def mutate(self, k: int) -> "Seed":
        return seed_mutate(self, k)


def _product(cluster, exponents: dict, nvars: int) -> LaurentPoly:
    out = LaurentPoly.constant(nvars, 1)
    for i, m in sorted(exponents.items()):
        out = out * cluster[i - 1] ** m
    return out


def seed_mutate(seed: Seed, k: int) -> Seed:
    g = seed.quiver
    new_quiver = classical_mutation(g, k)  # raises on 2-cycles through k
    ins = {i: m for (i, j), m in g.counts.items() if j == k}
    outs = {j: m for (i, j), m in g.counts.items() if i == k}
    nvars = seed.cluster[0].nvars
    numerator = _product(seed.cluster, ins, nvars) + _product(seed.cluster, outs, nvars)
    cluster = list(seed.cluster)
    cluster[k - 1] = exact_div(numerator, seed.cluster[k - 1])
    return Seed(new_quiver, tuple(cluster))


def yhat(quiver: Quiver | Digraph, k: int) -> LaurentPoly:
    """``prod_{k->j} x_j / prod_{i->k} x_i`` with multiplicity."""
    g = quiver.to_digraph() if isinstance(quiver, Quiver) else quiver
    e = [0] * g.n
    for (i, j), m in g.counts.items():
        if i == k:
            e[j - 1] += m
        if j == k:
            e[i - 1] -= m
    return LaurentPoly.monomial(e)


def recover_g_vector(z: LaurentPoly, F: LaurentPoly, quiver: Quiver | Digraph) -> tuple[int, ...]:
    """Exponent vector g with ``z = x^g * F(yhat_1, ..., yhat_N)``.

    Raises :class:`NotMonomial` if the quotient is not a single monomial
    with coefficient 1.
    """
    g = quiver.to_digraph() if isinstance(quiver, Quiver) else quiver
    if F.nvars != g.n or z.nvars != g.n:
        raise ArityMismatch("z, F and the quiver must share the number of variables")
    if F.constant_term() != 1:
        raise ValueError("F must have constant term 1")
    P = F.substitute([yhat(g, k) for k in range(1, g.n + 1)])
    try:
        q = exact_div(z, P)
    except NotDivisible as exc:
        raise NotMonomial(f"z is not divisible by F(yhat): {exc}") from exc
    if not q.is_monomial():
        raise NotMonomial(f"quotient has {len(q)} terms")
    (e, c), = q.items()
    if c != 1:
        raise NotMonomial(f"quotient monomial has coefficient {c}")
    return e


def sequence_csv(values: Mapping[int, int]) -> str:
    lines = ["index,value"]
    lines.extend(f"{i},{values[i]}" for i in sorted(values))
    return "\n".join(lines) + "\n"


def product_of(polys: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    out = LaurentPoly.constant(nvars, 1)
    for p in polys:
        out = out * p
    return out
