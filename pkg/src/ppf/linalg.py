"""Linear algebra of an extension field over its base field.

An extension of degree n over F_q is an n-dimensional F_q-vector space; this
module provides power-basis coordinates, linear-independence testing, the
trace-form dual basis, and the two structural homomorphisms between the
field and F_q^n: component traces one way, linear combination the other.

Coordinate vectors are plain tuples of base-field indices; a packed integer
form (little-endian base q, matching the field's own element encoding) is
used for table-level work.
"""

from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from .errors import CtxMismatch, DimensionMismatch, NotABasis, SingularGram
from .fields import ExtensionField, FieldCtx, FieldElement

CandidateSet = Sequence[Union[FieldElement, int]]


def _idx(x) -> int:
    return x.idx if isinstance(x, FieldElement) else int(x)


def _indices(ctx: FieldCtx, elems: CandidateSet) -> list:
    out = []
    for x in elems:
        if isinstance(x, FieldElement) and x.ctx is not ctx:
            raise CtxMismatch("element from a different field")
        out.append(_idx(x))
    return out


def coords_of(ctx: ExtensionField, x) -> tuple:
    """Base-field coordinates of x relative to the power basis 1, t, ..., t^(n-1)."""
    return tuple(ctx.decode(_idx(x)))


def from_coords(ctx: ExtensionField, coords) -> int:
    return ctx.encode(list(coords))


def _rank(base: FieldCtx, rows) -> int:
    """Row rank over the base field by Gaussian elimination (exact)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    rank, col = 0, 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = base.inv(rows[rank][col])
        rows[rank] = [base.mul(inv, v) for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [base.sub(rows[r][j], base.mul(f, rows[rank][j]))
                           for j in range(ncols)]
        rank += 1
        col += 1
    return rank


def _solve_all(base: FieldCtx, matrix):
    """Inverse of a square matrix over the base field; None if singular."""
    n = len(matrix)
    aug = [list(matrix[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = base.inv(aug[col][col])
        aug[col] = [base.mul(inv, v) for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [base.sub(aug[r][j], base.mul(f, aug[col][j]))
                          for j in range(2 * n)]
    return [row[n:] for row in aug]


def is_linearly_independent(ctx: ExtensionField, cand: CandidateSet) -> bool:
    """Rank test over the base field; the empty set is independent by convention."""
    elems = _indices(ctx, cand)
    if not elems:
        return True
    if len(elems) > ctx.degree:
        return False
    return _rank(ctx.base, [ctx.decode(x) for x in elems]) == len(elems)


class Basis:
    """An ordered basis of the extension over its base; validated on construction."""

    __slots__ = ("ctx", "elems", "_dual")

    def __init__(self, ctx: ExtensionField, elems: CandidateSet):
        idxs = _indices(ctx, elems)
        if len(idxs) != ctx.degree:
            raise DimensionMismatch(f"need {ctx.degree} elements, got {len(idxs)}")
        if not is_linearly_independent(ctx, idxs):
            raise NotABasis(f"{[ctx.format_idx(i) for i in idxs]} is dependent")
        self.ctx = ctx
        self.elems = tuple(idxs)
        self._dual = None

    def __iter__(self):
        return iter(self.elems)

    def __len__(self):
        return len(self.elems)

    def __getitem__(self, i):
        return self.elems[i]

    def __eq__(self, other):
        return (isinstance(other, Basis) and self.ctx is other.ctx
                and self.elems == other.elems)

    def __hash__(self):
        return hash((id(self.ctx), self.elems))

    def __repr__(self):
        return f"Basis[{', '.join(self.ctx.format_idx(i) for i in self.elems)}]"

    def dual(self) -> "Basis":
        if self._dual is None:
            self._dual = dual_basis(self.ctx, self.elems)
        return self._dual

    def elements(self):
        return [FieldElement(self.ctx, i) for i in self.elems]


def dual_basis(ctx: ExtensionField, v: CandidateSet) -> Basis:
    """The ordered dual {u_j} with Tr(v_i u_j) = delta_ij.

    Solved through the trace Gram matrix against the power basis; a singular
    system means the input was not actually a basis.
    """
    if isinstance(v, Basis):
        v = v.elems
    idxs = _indices(ctx, v)
    n, q = ctx.degree, ctx.base.order
    if len(idxs) != n:
        raise DimensionMismatch(f"need {n} elements, got {len(idxs)}")
    tpow = [q ** k for k in range(n)]  # indices of 1, t, ..., t^(n-1)
    gram = [[ctx.trace(ctx.mul(vi, tk)) for tk in tpow] for vi in idxs]
    inv = _solve_all(ctx.base, gram)
    if inv is None:
        raise SingularGram("trace Gram matrix is singular: not a basis")
    # column j of inv solves G c = e_j; c are power-basis coordinates of u_j
    us = [ctx.encode([inv[k][j] for k in range(n)]) for j in range(n)]
    out = Basis.__new__(Basis)
    out.ctx, out.elems, out._dual = ctx, tuple(us), None
    return out


def rho(ctx: ExtensionField, v: CandidateSet, x) -> tuple:
    """Component traces (Tr(v_1 x), ..., Tr(v_n x)) as a coordinate vector."""
    xi = _idx(x)
    return tuple(ctx.trace(ctx.mul(vi, xi)) for vi in _indices(ctx, v))


def rho_inverse(ctx: ExtensionField, v: CandidateSet, xs) -> int:
    """Inverse of rho for a true basis: the dual-weighted linear combination."""
    u = dual_basis(ctx, v)
    return eta(ctx, u.elems, xs)


def eta(ctx: ExtensionField, a: CandidateSet, xs) -> int:
    """Linear combination a_1 x_1 + ... + a_n x_n of base-field coordinates."""
    ai = _indices(ctx, a)
    if len(ai) != len(xs):
        raise DimensionMismatch(f"{len(ai)} elements vs {len(xs)} coordinates")
    acc = 0
    for c, x in zip(ai, xs):
        acc = ctx.add(acc, ctx.mul(c, ctx.embed(_idx(x))))
    return acc


def eta_inverse(ctx: ExtensionField, a: CandidateSet, x) -> tuple:
    """Inverse of eta for a true basis: traces against the dual basis."""
    b = dual_basis(ctx, a)
    return rho(ctx, b.elems, x)


def kernel_of_trace_maps(ctx: ExtensionField, cand: CandidateSet) -> list:
    """All x with Tr(v x) = 0 for every v in cand, by exhaustive scan."""
    xs = ctx.all_indices()
    keep = np.ones(ctx.order, dtype=bool)
    for v in _indices(ctx, cand):
        keep &= ctx.arr_trace(ctx.arr_scale(xs, v)) == 0
    return [int(i) for i in xs[keep]]


# -- table forms used by the composition machinery ---------------------------

def rho_table(ctx: ExtensionField, v: CandidateSet):
    """rho as an array: element index -> packed coordinate vector."""
    xs = ctx.all_indices()
    q = ctx.base.order
    out = np.zeros(ctx.order, dtype=np.int64)
    for i, vi in enumerate(_indices(ctx, v)):
        out += ctx.arr_trace(ctx.arr_scale(xs, vi)) * (q ** i)
    return out


def eta_table(ctx: ExtensionField, a: CandidateSet):
    """eta as an array: packed coordinate vector -> element index."""
    q, n = ctx.base.order, ctx.degree
    ts = np.arange(q ** n, dtype=np.int64)
    acc = np.zeros(q ** n, dtype=np.int64)
    for i, ai in enumerate(_indices(ctx, a)):
        acc = ctx.arr_add(acc, ctx.arr_scale((ts // q ** i) % q, ai))
    return acc
