"""Sparse polynomials over a field context and the permutation-test engine.

The canonical reduced form works modulo x^Q - x with the exponent
convention e >= 1  ->  ((e-1) mod (Q-1)) + 1, so x^(Q-1) is retained: it
and x^0 induce different functions (they differ at 0), hence collapsing
exponents into [0, Q-2] would be unsound.

Function tables (FnTable) are numpy index arrays over the canonical element
enumeration; bijectivity is decided by exhaustive counting, which at desk
scale doubles as the independent oracle for every algebraic condition in
the family modules.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import BadParams, CtxMismatch, NotPermutation, ParseError
from .fields import FieldCtx, FieldElement


def reduce_exponent(e: int, order: int) -> int:
    """Fold e into [0, order-1] preserving the induced function x -> x^e."""
    if e == 0:
        return 0
    return (e - 1) % (order - 1) + 1


class SparsePoly:
    """A polynomial as a sorted tuple of (exponent, nonzero coefficient index).

    The constructor merges like terms and drops zeros but does not fold
    exponents; `reduce()` returns the canonical representative mod x^Q - x.
    Products (and powers) are always returned reduced.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms=()):
        acc: dict = {}
        for e, c in terms:
            if isinstance(c, FieldElement):
                if c.ctx is not ctx:
                    raise CtxMismatch("coefficient from a different field")
                c = c.idx
            e, c = int(e), int(c)
            if e < 0:
                raise BadParams(f"negative exponent {e}")
            if not 0 <= c < ctx.order:
                raise BadParams(f"coefficient index {c} out of range")
            if c:
                acc[e] = ctx.add(acc.get(e, 0), c)
        self.ctx = ctx
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c))

    # -- classification ---------------------------------------------------

    @property
    def degree(self) -> int:
        return self.terms[-1][0] if self.terms else -1

    @property
    def is_reduced(self) -> bool:
        return all(e <= self.ctx.order - 1 for e, _ in self.terms)

    def reduce(self) -> "SparsePoly":
        q = self.ctx.order
        return SparsePoly(self.ctx, ((reduce_exponent(e, q), c) for e, c in self.terms))

    # -- algebra ------------------------------------------------------------

    def _check(self, other):
        if self.ctx is not other.ctx:
            raise CtxMismatch("polynomials over different fields")

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        return SparsePoly(self.ctx, list(self.terms) + list(other.terms))

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        neg = self.ctx.neg
        return SparsePoly(self.ctx, list(self.terms) + [(e, neg(c)) for e, c in other.terms])

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        """Product, reduced mod x^Q - x (exponents folded during accumulation)."""
        self._check(other)
        ctx, q = self.ctx, self.ctx.order
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = reduce_exponent(e1 + e2, q)
                c = ctx.mul(c1, c2)
                if c:
                    acc[e] = ctx.add(acc.get(e, 0), c)
        return SparsePoly(ctx, acc.items())

    def __pow__(self, k: int) -> "SparsePoly":
        if k < 0:
            raise BadParams("negative polynomial power")
        out = SparsePoly(self.ctx, [(0, 1)])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "SparsePoly":
        c = c.idx if isinstance(c, FieldElement) else int(c)
        mul = self.ctx.mul
        return SparsePoly(self.ctx, ((e, mul(cf, c)) for e, cf in self.terms))

    def frobenius_map(self, j: int = 1) -> "SparsePoly":
        """The polynomial inducing x -> f(x)^(q^j): termwise q^j-powering."""
        ctx, q = self.ctx, self.ctx.order
        return SparsePoly(ctx, ((reduce_exponent(e * ctx.base.order ** j, q),
                                 ctx.frobenius(c, j)) for e, c in self.terms))

    # -- evaluation -----------------------------------------------------------

    def eval(self, x) -> int:
        x = x.idx if isinstance(x, FieldElement) else int(x)
        ctx, acc = self.ctx, 0
        for e, c in self.terms:
            acc = ctx.add(acc, ctx.mul(c, ctx.pow(x, e)))
        return acc

    def eval_elem(self, x: FieldElement) -> FieldElement:
        return FieldElement(self.ctx, self.eval(x))

    def to_table(self) -> "FnTable":
        """Evaluate at every field element, in canonical enumeration order."""
        ctx = self.ctx
        xs = ctx.all_indices()
        acc = np.zeros(ctx.order, dtype=np.int64)
        for e, c in self.terms:
            if e == 0:
                term = np.full(ctx.order, c, dtype=np.int64)
            else:
                term = ctx.arr_scale(ctx.arr_pow(xs, e), c)
            acc = ctx.arr_add(acc, term)
        return FnTable(ctx, acc)

    # -- text / JSON forms -------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            cs = self.ctx.format_idx(c)
            if e == 0:
                parts.append(cs)
            else:
                xs = "x" if e == 1 else f"x^{e}"
                parts.append(xs if c == 1 else f"{cs}*{xs}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SparsePoly({self.ctx}, {self})"

    def __eq__(self, other):
        return (isinstance(other, SparsePoly) and self.ctx is other.ctx
                and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.ctx), self.terms))

    def to_json_terms(self) -> list:
        return [{"e": e, "c": list(self.ctx.decode(c))} for e, c in self.terms]

    @classmethod
    def from_json_terms(cls, ctx: FieldCtx, items) -> "SparsePoly":
        return cls(ctx, ((t["e"], ctx.encode(list(t["c"]))) for t in items))

    @classmethod
    def parse(cls, ctx: FieldCtx, text: str) -> "SparsePoly":
        return parse_poly(ctx, text)


def monomial(ctx: FieldCtx, e: int, c=1) -> SparsePoly:
    return SparsePoly(ctx, [(e, c)])


def compose_univariate(outer: SparsePoly, inner: SparsePoly) -> SparsePoly:
    """outer(inner(x)), reduced; outer may live over the base field of inner's."""
    ctx = inner.ctx
    if outer.ctx is not ctx and outer.ctx is not getattr(ctx, "base", None):
        raise CtxMismatch("outer polynomial is not over the field or its base")
    out = SparsePoly(ctx)
    for k, c in outer.terms:
        out = out + (inner ** k).scale(c)  # base coefficients embed as themselves
    return out


def trace_poly(p: SparsePoly) -> SparsePoly:
    """Polynomial inducing x -> Tr(p(x)) (sum of Frobenius twists), reduced."""
    out = p.reduce()
    for j in range(1, p.ctx.degree):
        out = out + p.frobenius_map(j)
    return out


class FnTable:
    """The induced map of a polynomial (or any self-map), as an index array."""

    __slots__ = ("ctx", "values")

    def __init__(self, ctx: FieldCtx, values):
        values = np.asarray(values, dtype=np.int64)
        if values.shape != (ctx.order,):
            raise BadParams(f"table must have length {ctx.order}")
        self.ctx = ctx
        self.values = values

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "FnTable":
        return cls(ctx, ctx.all_indices())

    @classmethod
    def from_callable(cls, ctx: FieldCtx, fn) -> "FnTable":
        return cls(ctx, [fn(x) for x in range(ctx.order)])

    def __getitem__(self, x: int) -> int:
        return int(self.values[x])

    def __eq__(self, other):
        return (isinstance(other, FnTable) and self.ctx is other.ctx
                and np.array_equal(self.values, other.values))

    def __hash__(self):  # pragma: no cover - tables are not dict keys in practice
        return hash((id(self.ctx), self.values.tobytes()))

    def is_permutation(self) -> bool:
        return int(np.bincount(self.values, minlength=self.ctx.order).max()) == 1

    def first_collision(self):
        """Some pair (x1, x2), x1 != x2, with equal images; None if bijective."""
        order = np.argsort(self.values, kind="stable")
        sv = self.values[order]
        eq = np.nonzero(sv[1:] == sv[:-1])[0]
        if eq.size == 0:
            return None
        i = int(eq[0])
        a, b = int(order[i]), int(order[i + 1])
        return (min(a, b), max(a, b))

    def compose(self, other: "FnTable") -> "FnTable":
        """self after other: x -> self(other(x))."""
        if self.ctx is not other.ctx:
            raise CtxMismatch("tables over different fields")
        return FnTable(self.ctx, self.values[other.values])

    def inverse(self) -> "FnTable":
        """Table of the compositional inverse; requires bijectivity."""
        if not self.is_permutation():
            raise NotPermutation("table is not a bijection")
        inv = np.empty_like(self.values)
        inv[self.values] = self.ctx.all_indices()
        return FnTable(self.ctx, inv)


def is_permutation_poly(p: SparsePoly) -> bool:
    return p.to_table().is_permutation()


def interpolate(table: FnTable) -> SparsePoly:
    """The unique reduced polynomial (degree <= Q-1) inducing `table`.

    Uses Lagrange bases in closed form: with P = x^Q - x one has P'(a) = -1,
    so L_a = -P/(x - a), whose coefficients are plain powers of a.
    """
    ctx = table.ctx
    Q = ctx.order
    t0 = int(table.values[0])
    xs = ctx.all_indices()[1:]
    vals = table.values[1:]
    terms = [(0, t0)] if t0 else []
    for j in range(1, Q):
        s = ctx.arr_sum(ctx.arr_mul(vals, ctx.arr_pow(xs, Q - 1 - j)))
        if j == Q - 1:
            s = ctx.add(s, t0)
        c = ctx.neg(s)
        if c:
            terms.append((j, c))
    return SparsePoly(ctx, terms)


# -- text forms ----------------------------------------------------------------

_TUPLE_RE = re.compile(r"^\((\d+(?:,\d+)*)\)$")
_GEN_RE = re.compile(r"^a(\d+)$")
_X_RE = re.compile(r"^x(?:\^(\d+))?$")


def parse_element(ctx: FieldCtx, text: str) -> int:
    """Element from text: coordinate tuple '(2,3)', integer constant, or 'a<k>'
    for the k-th power of the canonical generator."""
    text = text.strip().replace(" ", "")
    if (text.startswith("(") and text.endswith(")") and "," not in text):
        text = text[1:-1]  # parenthesized single factor, e.g. "(a2)"
    m = _TUPLE_RE.match(text)
    if m:
        coords = [int(c) for c in m.group(1).split(",")]
        if len(coords) != ctx.degree:
            raise ParseError(f"expected {ctx.degree} coordinates, got {len(coords)}")
        base_order = ctx.base.order if ctx.base is not None else ctx.p
        if any(not 0 <= c < base_order for c in coords):
            raise ParseError(f"coordinate out of range in {text!r}")
        return ctx.encode(coords)
    m = _GEN_RE.match(text)
    if m:
        return ctx.pow(ctx.generator, int(m.group(1)))
    neg = text.startswith("-")
    if neg:
        text = text[1:]
    if text.isdigit():
        idx = ctx.from_int(int(text))
        return ctx.neg(idx) if neg else idx
    raise ParseError(f"cannot parse element {text!r}")


def _split_signed_terms(text: str):
    """Split on top-level + and - (parentheses protected)."""
    out, depth, sign, cur = [], 0, 1, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses")
        if depth == 0 and ch in "+-" and cur:
            out.append((sign, "".join(cur)))
            sign, cur = (1 if ch == "+" else -1), []
        elif depth == 0 and ch in "+-" and not cur:
            sign *= 1 if ch == "+" else -1
        else:
            cur.append(ch)
    if depth:
        raise ParseError("unbalanced parentheses")
    if cur:
        out.append((sign, "".join(cur)))
    return out


def parse_poly(ctx: FieldCtx, text: str) -> SparsePoly:
    """Polynomial from '+'/'-'-joined monomials of '*'-joined factors.

    Factors: 'x' or 'x^e', integer constants, coordinate tuples '(c0,c1)',
    and generator powers 'a<k>'.  Example: 'x^3 + 3*(a8)*x^11'.
    """
    text = text.strip().replace(" ", "")
    if not text:
        raise ParseError("empty polynomial")
    if text == "0":
        return SparsePoly(ctx)
    terms = []
    for sign, mono in _split_signed_terms(text):
        if not mono:
            raise ParseError("empty monomial")
        e, c = 0, 1
        for factor in mono.split("*"):
            m = _X_RE.match(factor)
            if m:
                e += int(m.group(1)) if m.group(1) else 1
            else:
                c = ctx.mul(c, parse_element(ctx, factor))
        if sign < 0:
            c = ctx.neg(c)
        terms.append((e, c))
    return SparsePoly(ctx, terms)
