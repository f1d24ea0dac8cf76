"""Exhaustive generation of small lattices, with isomorphism dedup.

Lattices are produced with indices forming a linear extension: the bottom is
element 0, the top is element n-1, and x <= y implies x <= y as integers.
Every lattice admits such a labeling, so every isomorphism class on at most
``max_size`` elements appears in the stream (possibly through several
labelings); the dedupe flag collapses the stream to one representative per
class via an invariant-vector prefilter followed by exact backtracking
isomorphism confirmation.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import NotALattice, SizeLimitExceeded
from .lattice import build_lattice

MAX_ENUM_SIZE = 8


def _lattices_of_size(n):
    if n == 1:
        yield build_lattice(["x0"], [[True]], name="lattice#1.0")
        return
    labels = [f"x{i}" for i in range(n)]
    k = n - 2
    pairs = list(combinations(range(k), 2))
    count = 0
    for mask in range(1 << len(pairs)):
        rows = [0] * k
        for b, (i, j) in enumerate(pairs):
            if mask >> b & 1:
                rows[i] |= 1 << j
        # transitive closure must already be present
        if any(rows[i] >> j & 1 and rows[j] & ~rows[i]
               for i in range(k) for j in range(k)):
            continue
        leq = np.eye(n, dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        for i in range(k):
            for j in range(k):
                if rows[i] >> j & 1:
                    leq[i + 1, j + 1] = True
        try:
            L = build_lattice(labels, leq, name=f"lattice#{n}.{count}")
        except NotALattice:
            continue
        count += 1
        yield L


def _heights(L):
    """Length of a longest chain from the bottom up to each element."""
    n = L.n
    order = np.argsort(L.leq.sum(axis=0), kind="stable")  # linear extension
    h = np.zeros(n, dtype=np.intp)
    cov = L.covers
    for x in order:
        below = np.flatnonzero(cov[:, x])
        if len(below):
            h[x] = h[below].max() + 1
    return h


def _depths(L):
    n = L.n
    order = np.argsort(L.leq.sum(axis=1), kind="stable")
    d = np.zeros(n, dtype=np.intp)
    cov = L.covers
    for x in order:
        above = np.flatnonzero(cov[x])
        if len(above):
            d[x] = d[above].max() + 1
    return d


def element_invariants(L):
    """Per-element invariant tuples, stable under isomorphism."""
    cov = L.covers
    h = _heights(L)
    d = _depths(L)
    ndown = L.leq.sum(axis=0)
    nup = L.leq.sum(axis=1)
    return [
        (int(ndown[x]), int(nup[x]), int(cov[:, x].sum()), int(cov[x].sum()),
         int(h[x]), int(d[x]))
        for x in range(L.n)
    ]


def lattice_invariant(L):
    """Hashable isomorphism invariant used as a dedup prefilter."""
    return (L.n, tuple(sorted(element_invariants(L))))


def are_isomorphic(L1, L2):
    """Exact order-isomorphism test by backtracking over invariant classes."""
    if L1.n != L2.n:
        return False
    inv1 = element_invariants(L1)
    inv2 = element_invariants(L2)
    if sorted(inv1) != sorted(inv2):
        return False
    n = L1.n
    # most-constrained-first: rarest invariant classes get assigned early
    freq = {}
    for t in inv2:
        freq[t] = freq.get(t, 0) + 1
    order = sorted(range(n), key=lambda x: (freq.get(inv1[x], 0), x))
    candidates = [[y for y in range(n) if inv2[y] == inv1[x]] for x in range(n)]
    img = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        x = order[i]
        for y in candidates[x]:
            if used[y]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if L1.leq[x, u] != L2.leq[y, img[u]] or L1.leq[u, x] != L2.leq[img[u], y]:
                    ok = False
                    break
            if ok:
                img[x] = y
                used[y] = True
                if extend(i + 1):
                    return True
                img[x] = -1
                used[y] = False
        return False

    return extend(0)


def enumerate_lattices(max_size, dedupe=False):
    """Stream every lattice on <= max_size elements (linear-extension labeled).

    With ``dedupe`` the stream carries exactly one representative per
    isomorphism class.
    """
    if not 1 <= max_size <= MAX_ENUM_SIZE:
        raise SizeLimitExceeded(
            f"enumeration guard is 1..{MAX_ENUM_SIZE}, got {max_size}")
    seen = {}
    for n in range(1, max_size + 1):
        for L in _lattices_of_size(n):
            if dedupe:
                key = lattice_invariant(L)
                bucket = seen.setdefault(key, [])
                if any(are_isomorphic(L, M) for M in bucket):
                    continue
                bucket.append(L)
            yield L


def lattice_class_counts(max_size):
    """Isomorphism-class counts per size, 1..max_size."""
    counts = dict.fromkeys(range(1, max_size + 1), 0)
    for L in enumerate_lattices(max_size, dedupe=True):
        counts[L.n] += 1
    return counts
