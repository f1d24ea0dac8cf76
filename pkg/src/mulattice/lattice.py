"""Finite bounded lattices as dense order / meet / join tables.

Everything downstream (quantales, mu-element analysis, corpus sweeps) reduces
to table lookups, so construction does the heavy lifting once: the n x n
boolean order matrix is validated, meet/join index tables are derived, and all
arrays are frozen. Instances are immutable and safe to share between workers.

Meets and joins of arbitrary subsets are folds over the binary tables with the
usual conventions for the empty subset: meet of nothing is the top, join of
nothing is the bottom.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import IndexOutOfRange, NotALattice, NotAPartialOrder


def _frozen(a):
    a.setflags(write=False)
    return a


class FiniteLattice:
    """Bounded lattice on elements 0..n-1.

    Attributes
    ----------
    n        element count
    labels   display names, index-aligned (semantics are index-based)
    leq      n x n bool, leq[x, y] iff x <= y
    meet     n x n element-index table of greatest lower bounds
    join     n x n element-index table of least upper bounds
    bottom, top   element indices
    """

    def __init__(self, labels, leq, meet, join, bottom, top, name=None):
        self.labels = tuple(str(l) for l in labels)
        self.n = len(self.labels)
        self.leq = _frozen(np.array(leq, dtype=bool))
        self.meet = _frozen(np.array(meet, dtype=np.intp))
        self.join = _frozen(np.array(join, dtype=np.intp))
        self.bottom = int(bottom)
        self.top = int(top)
        self.name = name or f"lattice({self.n})"
        self.elements = _frozen(np.arange(self.n))

    def label(self, x):
        return self.labels[x]

    def __repr__(self):
        return f"<FiniteLattice {self.name!r} n={self.n}>"

    @cached_property
    def covers(self):
        """covers[x, y] iff y covers x (x < y with nothing in between)."""
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        through = (lt.astype(np.uint8) @ lt.astype(np.uint8)) > 0
        return _frozen(lt & ~through)


@dataclass(frozen=True, eq=False)
class SublatticeView:
    """Downset or upset of a parent lattice with its induced bounds.

    Both kinds are closed under the parent's meet and join, so the view simply
    reuses the parent tables. The view's ``bottom`` is the relative "zero"
    that the essential/mu predicates test against: the parent bottom for a
    downset, the anchor itself for an upset.
    """

    parent: FiniteLattice
    kind: str  # "downset" | "upset"
    anchor: int
    elements: np.ndarray  # sorted parent indices
    bottom: int
    top: int

    @property
    def n(self):
        return len(self.elements)

    @property
    def meet(self):
        return self.parent.meet

    @property
    def join(self):
        return self.parent.join

    @property
    def labels(self):
        return self.parent.labels

    def label(self, x):
        return self.parent.labels[x]

    def __contains__(self, x):
        return bool(self.parent.leq[x, self.anchor] if self.kind == "downset"
                    else self.parent.leq[self.anchor, x])

    def __repr__(self):
        return (f"<SublatticeView {self.kind} of {self.parent.name!r} "
                f"at {self.parent.labels[self.anchor]!r} n={self.n}>")


@dataclass(frozen=True)
class LatticeHom:
    """Map between lattices given as an element-index array."""

    source: FiniteLattice
    target: FiniteLattice
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != self.source.n:
            raise IndexOutOfRange(
                f"map has {len(self.map)} entries for a source of size {self.source.n}")
        for v in self.map:
            if not 0 <= v < self.target.n:
                raise IndexOutOfRange(f"map value {v} outside target of size {self.target.n}")


def _coerce_relation(n, leq):
    """Accept an n x n matrix-like or an iterable of (x, y) pairs meaning x <= y.

    A sequence of shape (n, n) is read as the matrix; anything of shape (k, 2)
    with k != n is read as a pair list. The only ambiguous shape, (2, 2) with
    n = 2, is read as a matrix.
    """
    arr = np.asarray(list(leq) if not isinstance(leq, np.ndarray) else leq)
    if arr.size == 0:
        return np.zeros((n, n), dtype=bool)
    if arr.ndim == 2 and arr.shape == (n, n):
        return arr.astype(bool)
    if arr.ndim == 2 and arr.shape[1] == 2:
        mat = np.zeros((n, n), dtype=bool)
        for x, y in arr:
            if not (0 <= x < n and 0 <= y < n):
                raise IndexOutOfRange(f"relation pair ({x}, {y}) outside 0..{n - 1}")
            mat[x, y] = True
        return mat
    raise NotAPartialOrder(
        f"relation must be an {n}x{n} matrix or a list of pairs, got shape {arr.shape}")


def _validate_poset(leq, labels):
    n = leq.shape[0]
    diag = leq.diagonal()
    if not diag.all():
        x = int(np.flatnonzero(~diag)[0])
        raise NotAPartialOrder(f"not reflexive at {labels[x]!r}")
    sym = leq & leq.T & ~np.eye(n, dtype=bool)
    if sym.any():
        x, y = np.argwhere(sym)[0]
        raise NotAPartialOrder(
            f"not antisymmetric: {labels[x]!r} <= {labels[y]!r} and conversely")
    reach = (leq.astype(np.uint8) @ leq.astype(np.uint8)) > 0
    broken = reach & ~leq
    if broken.any():
        x, z = np.argwhere(broken)[0]
        raise NotAPartialOrder(
            f"not transitive: {labels[x]!r} reaches {labels[z]!r} in two steps only")


def _derive_tables(leq, labels):
    """Meet/join tables by dominance check.

    In a lattice the glb of (x, y) is the unique lower bound that dominates all
    lower bounds; it maximizes |down(.)| among them, which gives a candidate to
    verify. Any failed verification names the offending pair.
    """
    n = leq.shape[0]
    ndown = leq.sum(axis=0)
    nup = leq.sum(axis=1)
    meet = np.empty((n, n), dtype=np.intp)
    join = np.empty((n, n), dtype=np.intp)
    for x in range(n):
        lows = leq[:, x, None] & leq
        missing = ~lows.any(axis=0)
        if missing.any():
            y = int(np.flatnonzero(missing)[0])
            raise NotALattice(
                f"no common lower bound for {labels[x]!r} and {labels[y]!r}")
        cand = np.where(lows, ndown[:, None], -1).argmax(axis=0)
        bad = (lows & ~leq[:, cand]).any(axis=0)
        if bad.any():
            y = int(np.flatnonzero(bad)[0])
            raise NotALattice(f"no meet for pair ({labels[x]!r}, {labels[y]!r})")
        meet[x] = cand

        ups = leq[x, :, None] & leq.T
        missing = ~ups.any(axis=0)
        if missing.any():
            y = int(np.flatnonzero(missing)[0])
            raise NotALattice(
                f"no common upper bound for {labels[x]!r} and {labels[y]!r}")
        cand = np.where(ups, nup[:, None], -1).argmax(axis=0)
        bad = (ups.T & ~leq[cand]).any(axis=1)
        if bad.any():
            y = int(np.flatnonzero(bad)[0])
            raise NotALattice(f"no join for pair ({labels[x]!r}, {labels[y]!r})")
        join[x] = cand
    bottom = int(np.flatnonzero(leq.all(axis=1))[0])
    top = int(np.flatnonzero(leq.all(axis=0))[0])
    return meet, join, bottom, top


def build_lattice(labels, leq, name=None):
    """Validate a relation and return the lattice with derived tables.

    ``leq`` is either an n x n boolean matrix or an iterable of (x, y) pairs
    listing the full order relation (including reflexive pairs). Raises
    NotAPartialOrder / NotALattice with the offending elements named.
    """
    labels = tuple(str(l) for l in labels)
    n = len(labels)
    if n == 0:
        raise NotAPartialOrder("element set is empty")
    mat = _coerce_relation(n, leq)
    _validate_poset(mat, labels)
    meet, join, bottom, top = _derive_tables(mat, labels)
    return FiniteLattice(labels, mat, meet, join, bottom, top, name=name)


def _check_element(L, x):
    if not 0 <= x < L.n:
        raise IndexOutOfRange(f"element {x} outside lattice of size {L.n}")


def down_view(L, b):
    """The downset of b with top b: all x with x <= b."""
    _check_element(L, b)
    els = np.flatnonzero(L.leq[:, b])
    return SublatticeView(parent=L, kind="downset", anchor=int(b),
                          elements=_frozen(els), bottom=L.bottom, top=int(b))


def up_view(L, b):
    """The upset of b with bottom b: all x with b <= x."""
    _check_element(L, b)
    els = np.flatnonzero(L.leq[b])
    return SublatticeView(parent=L, kind="upset", anchor=int(b),
                          elements=_frozen(els), bottom=int(b), top=L.top)


def modular_witness(L):
    """First (a, b, x) with a <= b and a v (x ^ b) != (a v x) ^ b, else None."""
    M, J, leq = L.meet, L.join, L.leq
    n = L.n
    for a in range(n):
        bs = np.flatnonzero(leq[a])
        left = J[a][M[:, bs]]
        right = M[J[a][:, None], bs[None, :]]
        bad = left != right
        if bad.any():
            x, bi = np.argwhere(bad)[0]
            return (a, int(bs[bi]), int(x))
    return None


def is_modular(L):
    return modular_witness(L) is None


def distributive_witness(L):
    """First (x, y, z) with x ^ (y v z) != (x ^ y) v (x ^ z), else None."""
    M, J = L.meet, L.join
    for x in range(L.n):
        left = M[x][J]
        right = J[M[x][:, None], M[x][None, :]]
        bad = left != right
        if bad.any():
            y, z = np.argwhere(bad)[0]
            return (x, int(y), int(z))
    return None


def is_distributive(L):
    return distributive_witness(L) is None


def atoms(L):
    """Covers of the bottom element, ascending."""
    return [int(x) for x in np.flatnonzero(L.covers[L.bottom])]


def maximal_elements(L):
    """Proper elements whose only strict upper bound is the top."""
    counts = L.leq.sum(axis=1)
    out = [x for x in range(L.n) if x != L.top and counts[x] == 2 and L.leq[x, L.top]]
    if L.n == 1:
        return []
    return out


def complements_of(L, x):
    """All y with x ^ y = 0 and x v y = 1."""
    _check_element(L, x)
    mask = (L.meet[x] == L.bottom) & (L.join[x] == L.top)
    return [int(y) for y in np.flatnonzero(mask)]


def pseudo_complement(L, x):
    """Greatest y with x ^ y = 0, or None when the disjoint set has no
    greatest element (a maximal-but-not-greatest element never stands in)."""
    _check_element(L, x)
    disjoint = np.flatnonzero(L.meet[x] == L.bottom)
    if len(disjoint) == 0:
        return None
    ndown = L.leq.sum(axis=0)
    cand = int(disjoint[np.argmax(ndown[disjoint])])
    if L.leq[disjoint, cand].all():
        return cand
    return None


def meet_all(view, xs):
    """Fold of binary meets; the empty meet is the (view) top."""
    acc = view.top
    M = view.meet
    for x in xs:
        acc = int(M[acc, x])
    return acc


def join_all(view, xs):
    """Fold of binary joins; the empty join is the (view) bottom."""
    acc = view.bottom
    J = view.join
    for x in xs:
        acc = int(J[acc, x])
    return acc


def is_lattice_hom(h):
    """Exhaustively check binary-join and bottom preservation."""
    arr = np.asarray(h.map, dtype=np.intp)
    lhs = arr[h.source.join]
    rhs = h.target.join[arr[:, None], arr[None, :]]
    return bool((lhs == rhs).all()) and arr[h.source.bottom] == h.target.bottom


def is_injective(h):
    return len(set(h.map)) == len(h.map)
