"""Commutative multiplication over a finite lattice.

A quantale here is a finite lattice plus a commutative, associative
multiplication table whose identity is the top element and which distributes
over joins. Distributivity over arbitrary joins is validated as binary
distributivity plus mult(x, bottom) = bottom, which is equivalent by finite
induction and keeps validation cubic.

Frames are the quantales whose multiplication is meet; in the finite case
these are exactly the distributive lattices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    IdentityViolation,
    IndexOutOfRange,
    NotAssociative,
    NotCommutative,
    NotDistributive,
    NotJoinDistributive,
    SearchBudgetExceeded,
)
from .lattice import (
    FiniteLattice,
    LatticeHom,
    _frozen,
    distributive_witness,
    is_lattice_hom,
    join_all,
)


class Quantale:
    """A validated lattice with a multiplication table. Immutable."""

    def __init__(self, lattice, mult, name=None):
        self.lattice = lattice
        self.mult = _frozen(np.array(mult, dtype=np.intp))
        self.name = name or lattice.name

    @property
    def n(self):
        return self.lattice.n

    @property
    def bottom(self):
        return self.lattice.bottom

    @property
    def top(self):
        return self.lattice.top

    @property
    def labels(self):
        return self.lattice.labels

    def label(self, x):
        return self.lattice.labels[x]

    @property
    def is_frame(self):
        return bool((self.mult == self.lattice.meet).all())

    def __repr__(self):
        return f"<Quantale {self.name!r} n={self.n}>"


def _validate_mult(L, mult):
    n = L.n
    lab = L.labels
    if mult.shape != (n, n):
        raise IndexOutOfRange(f"mult table shape {mult.shape} for lattice of size {n}")
    if mult.min() < 0 or mult.max() >= n:
        raise IndexOutOfRange("mult table entry outside element range")

    bad = mult != mult.T
    if bad.any():
        x, y = np.argwhere(bad)[0]
        raise NotCommutative(f"x*y != y*x for ({lab[x]!r}, {lab[y]!r})")

    ident = mult[:, L.top] != np.arange(n)
    if ident.any():
        x = int(np.flatnonzero(ident)[0])
        raise IdentityViolation(f"x*1 != x for {lab[x]!r}")

    zero = mult[:, L.bottom] != L.bottom
    if zero.any():
        x = int(np.flatnonzero(zero)[0])
        raise NotJoinDistributive(f"x*0 != 0 for {lab[x]!r} (empty-join case)")

    J = L.join
    for x in range(n):
        left = mult[mult[x]]          # (y, z) -> (x*y)*z
        right = mult[x][mult]         # (y, z) -> x*(y*z)
        bad = left != right
        if bad.any():
            y, z = np.argwhere(bad)[0]
            raise NotAssociative(
                f"(x*y)*z != x*(y*z) for ({lab[x]!r}, {lab[y]!r}, {lab[z]!r})")
        left = mult[x][J]             # (y, z) -> x*(y v z)
        right = J[mult[x][:, None], mult[x][None, :]]
        bad = left != right
        if bad.any():
            y, z = np.argwhere(bad)[0]
            raise NotJoinDistributive(
                f"x*(y v z) != x*y v x*z for ({lab[x]!r}, {lab[y]!r}, {lab[z]!r})")


def build_quantale(L, mult, name=None):
    """Validate a multiplication table exhaustively and wrap it."""
    mult = np.array(mult, dtype=np.intp)
    _validate_mult(L, mult)
    return Quantale(L, mult, name=name)


def frame_from(L, name=None):
    """The quantale with multiplication = meet; requires distributivity."""
    w = distributive_witness(L)
    if w is not None:
        x, y, z = w
        raise NotDistributive(
            f"{L.name}: x ^ (y v z) != (x ^ y) v (x ^ z) at "
            f"({L.labels[x]!r}, {L.labels[y]!r}, {L.labels[z]!r})")
    return Quantale(L, L.meet.copy(), name=name or L.name)


def annihilator(Q, a):
    """Join of every x with x * a = 0."""
    mask = Q.mult[:, a] == Q.bottom
    return join_all(Q.lattice, np.flatnonzero(mask))


def is_regular(Q, a):
    """True iff the double annihilator of a is a itself."""
    return annihilator(Q, annihilator(Q, a)) == a


@dataclass(frozen=True)
class QuantaleHom:
    """A lattice hom read against quantale structure on both sides."""

    lattice_hom: LatticeHom
    source: Quantale
    target: Quantale


def quantale_hom(Q1, Q2, mapping):
    return QuantaleHom(LatticeHom(Q1.lattice, Q2.lattice, tuple(mapping)), Q1, Q2)


def is_quantale_hom(h):
    """Joins, bottom, multiplication, and 1 must all be preserved."""
    if not is_lattice_hom(h.lattice_hom):
        return False
    arr = np.asarray(h.lattice_hom.map, dtype=np.intp)
    if arr[h.source.top] != h.target.top:
        return False
    lhs = arr[h.source.mult]
    rhs = h.target.mult[arr[:, None], arr[None, :]]
    return bool((lhs == rhs).all())


def find_injective_homs(Q1, Q2, budget=1_000_000):
    """Exhaustive backtracking enumeration of injective quantale homs.

    Candidates are assigned in element order (bottom and top are forced), with
    partial join/mult consistency pruning; every leaf is re-validated with
    is_quantale_hom before being reported. ``budget`` caps visited nodes.
    """
    n1, n2 = Q1.n, Q2.n
    if n1 > n2:
        return []
    J1, J2 = Q1.lattice.join, Q2.lattice.join
    A1, A2 = Q1.mult, Q2.mult
    img = [-1] * n1
    used = [False] * n2
    found = []
    nodes = 0

    def consistent(x):
        # both tables are commutative, so checking (u, x) covers (x, u)
        for u in range(n1):
            if img[u] < 0:
                continue
            for t1, t2 in ((J1, J2), (A1, A2)):
                r = t1[u, x]
                if img[r] >= 0 and t2[img[u], img[x]] != img[r]:
                    return False
        return True

    def extend(x):
        nonlocal nodes
        if x == n1:
            h = quantale_hom(Q1, Q2, img)
            if is_quantale_hom(h):
                found.append(h)
            return
        if x == Q1.bottom:
            candidates = [Q2.bottom]
        elif x == Q1.top:
            candidates = [Q2.top]
        else:
            candidates = range(n2)
        for c in candidates:
            if used[c]:
                continue
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"visited more than {budget} nodes")
            img[x] = c
            used[c] = True
            if consistent(x):
                extend(x + 1)
            img[x] = -1
            used[c] = False

    extend(0)
    return found
