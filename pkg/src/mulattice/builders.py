"""Constructors for the distinguished quantale families and corpus generators.

* powerset frames (Boolean algebras with multiplication = intersection)
* ideal quantales of Z_n and, more generally, of quotients of a PID by
  p1^m1 * ... * pk^mk, encoded as exponent vectors
* finite topologies, both explicit families of opens and Alexandrov
  topologies generated by a preorder (opens = up-closed sets)
* chains and binary products for corpus variety

Ideals are always represented by exponent vectors, never by ring elements:
the generator of (l) is normalized to gcd(l, n), which the vector encoding
does implicitly. All constructors guard their element counts with explicit
errors instead of truncating.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    NotAPreorder,
    NotATopology,
    SizeLimitExceeded,
)
from .lattice import FiniteLattice, _frozen, build_lattice
from .quantale import Quantale, _validate_mult, build_quantale

MAX_POWERSET_POINTS = 12
MAX_IDEAL_ELEMENTS = 4096
MAX_PREORDER_POINTS = 5
MAX_CHAIN = 4096
MAX_PRODUCT_ELEMENTS = 4096

# full exhaustive validation is skipped above this size; the table formulas
# for the guarded builders are correct by construction
_VALIDATE_LIMIT = 512


@dataclass(frozen=True)
class FactoredModulus:
    """A modulus given by pairwise distinct primes and positive exponents."""

    primes: tuple
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(self.primes))
        object.__setattr__(self, "exponents", tuple(int(m) for m in self.exponents))
        if len(self.primes) == 0 or len(self.primes) != len(self.exponents):
            raise ValueError("need k >= 1 primes with matching exponents")
        if len(set(self.primes)) != len(self.primes):
            raise ValueError("primes must be pairwise distinct")
        if any(m < 1 for m in self.exponents):
            raise ValueError("exponents must be positive")

    @classmethod
    def from_int(cls, n):
        """Factor n >= 2 by trial division."""
        n = int(n)
        if n < 2:
            raise ValueError(f"modulus must be >= 2, got {n}")
        primes, exps = [], []
        rest = n
        p = 2
        while p * p <= rest:
            if rest % p == 0:
                primes.append(p)
                e = 0
                while rest % p == 0:
                    rest //= p
                    e += 1
                exps.append(e)
            p += 1 if p == 2 else 2
        if rest > 1:
            primes.append(rest)
            exps.append(1)
        return cls(tuple(primes), tuple(exps))

    @property
    def k(self):
        return len(self.primes)

    @property
    def element_count(self):
        out = 1
        for m in self.exponents:
            out *= m + 1
        return out

    @property
    def value(self):
        """The modulus as an integer when the primes are integers, else None."""
        if not all(isinstance(p, int) for p in self.primes):
            return None
        out = 1
        for p, m in zip(self.primes, self.exponents):
            out *= p ** m
        return out

    def generator_label(self, vector):
        """Display form of the ideal generated by prod p_i^{v_i}."""
        if all(isinstance(p, int) for p in self.primes):
            g = 1
            for p, v in zip(self.primes, vector):
                g *= p ** v
            return f"({g})"
        parts = []
        for p, v in zip(self.primes, vector):
            base = str(p) if str(p).isalnum() else f"({p})"
            if v == 1:
                parts.append(base)
            elif v > 1:
                parts.append(f"{base}^{v}")
        return "(" + ("1" if not parts else "·".join(parts)) + ")"


class ExponentQuantale(Quantale):
    """Ideal quantale of R/(p1^m1 * ... * pk^mk) as exponent vectors.

    Vectors are ordered by mixed radix (last coordinate fastest), so the
    element index of a vector is its radix code. The ideal order is reverse
    componentwise: (a) is below (b) iff b divides a. Meet (intersection) is
    componentwise max, join (sum) is componentwise min, and multiplication
    (ideal product) is componentwise min(a + b, m).
    """

    def __init__(self, modulus, validate=True):
        self.modulus = modulus
        m = np.array(modulus.exponents, dtype=np.intp)
        count = modulus.element_count
        if count > MAX_IDEAL_ELEMENTS:
            raise SizeLimitExceeded(
                f"{count} ideals exceeds the guard of {MAX_IDEAL_ELEMENTS}")
        vectors = list(itertools.product(*[range(int(e) + 1) for e in m]))
        self.vectors = tuple(vectors)
        V = np.array(vectors, dtype=np.intp)
        weights = np.ones(modulus.k, dtype=np.intp)
        for i in range(modulus.k - 2, -1, -1):
            weights[i] = weights[i + 1] * (m[i + 1] + 1)
        leq = (V[:, None, :] >= V[None, :, :]).all(axis=2)
        meet = np.zeros((count, count), dtype=np.intp)
        join = np.zeros((count, count), dtype=np.intp)
        mult = np.zeros((count, count), dtype=np.intp)
        for i in range(modulus.k):
            col = V[:, i]
            meet += np.maximum.outer(col, col) * weights[i]
            join += np.minimum.outer(col, col) * weights[i]
            mult += np.minimum(np.add.outer(col, col), m[i]) * weights[i]
        labels = [modulus.generator_label(v) for v in vectors]
        value = modulus.value
        name = f"Z_{value} ideals" if value is not None else \
            f"ideal quantale of {'*'.join(map(str, modulus.primes))} type {modulus.exponents}"
        lattice = FiniteLattice(labels, leq, meet, join,
                                bottom=count - 1, top=0, name=name)
        super().__init__(lattice, mult, name=name)
        self._index = {v: i for i, v in enumerate(self.vectors)}
        if validate and count <= _VALIDATE_LIMIT:
            from .lattice import _derive_tables, _validate_poset
            _validate_poset(lattice.leq, lattice.labels)
            dm, dj, db, dt = _derive_tables(lattice.leq, lattice.labels)
            assert (dm == lattice.meet).all() and (dj == lattice.join).all()
            assert db == lattice.bottom and dt == lattice.top
            _validate_mult(lattice, self.mult)

    def index_of_vector(self, vector):
        return self._index[tuple(int(v) for v in vector)]

    def index_of(self, generator):
        """Element index of the ideal (l) = (gcd(l, n)) for integer moduli."""
        g = int(generator)
        vec = []
        for p, m in zip(self.modulus.primes, self.modulus.exponents):
            if g == 0:
                vec.append(m)
                continue
            e = 0
            t = g
            while t % p == 0 and e < m:
                t //= p
                e += 1
            vec.append(e)
        return self._index[tuple(vec)]


def ideal_quantale(modulus, validate=True):
    """Ideal quantale of Z_n (or a PID quotient) from its factored modulus."""
    if isinstance(modulus, int):
        modulus = FactoredModulus.from_int(modulus)
    return ExponentQuantale(modulus, validate=validate)


@dataclass(frozen=True)
class TopologySpec:
    """A finite point set with a family of opens.

    The family must contain the empty set and the full set and be closed
    under pairwise union and intersection (finite, so arbitrary follows).
    Opens are kept sorted by their bitmask over the sorted point tuple, which
    is also the element order of the frame built from the spec.
    """

    points: tuple
    opens: tuple

    def __post_init__(self):
        pts = tuple(self.points)
        if len(set(pts)) != len(pts):
            raise NotATopology("points must be distinct")
        index = {p: i for i, p in enumerate(pts)}
        masks = []
        for U in self.opens:
            U = frozenset(U)
            if not U <= set(pts):
                raise NotATopology(f"open {sorted(U, key=repr)} is not a subset of the points")
            masks.append(sum(1 << index[p] for p in U))
        if len(set(masks)) != len(masks):
            raise NotATopology("duplicate opens")
        order = np.argsort(np.array(masks, dtype=np.int64), kind="stable")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "opens",
                           tuple(frozenset(self.opens[i]) for i in order))

    def validate(self):
        """Raise NotATopology naming the violating pair, if any."""
        family = set(self.opens)
        full = frozenset(self.points)
        if frozenset() not in family:
            raise NotATopology("the empty set is missing")
        if full not in family:
            raise NotATopology("the full point set is missing")
        for U, V in itertools.combinations(self.opens, 2):
            if U | V not in family:
                raise NotATopology(f"union of {_setlabel(U)} and {_setlabel(V)} is not open")
            if U & V not in family:
                raise NotATopology(
                    f"intersection of {_setlabel(U)} and {_setlabel(V)} is not open")

    def mask_of(self, U):
        index = {p: i for i, p in enumerate(self.points)}
        return sum(1 << index[p] for p in frozenset(U))


def _setlabel(s, full=None):
    if not s:
        return "∅"
    if full is not None and set(s) == set(full):
        return "X"
    return "{" + ",".join(str(p) for p in sorted(s, key=repr)) + "}"


def _family_frame(spec, name):
    """Frame of a union/intersection-closed family ordered by inclusion."""
    masks = [spec.mask_of(U) for U in spec.opens]
    idx = {m: i for i, m in enumerate(masks)}
    n = len(masks)
    arr = np.array(masks, dtype=np.int64)
    leq = (arr[:, None] & ~arr[None, :]) == 0
    meet = np.empty((n, n), dtype=np.intp)
    join = np.empty((n, n), dtype=np.intp)
    for i, mi in enumerate(masks):
        for j, mj in enumerate(masks):
            meet[i, j] = idx[mi & mj]
            join[i, j] = idx[mi | mj]
    labels = [_setlabel(U, full=spec.points) for U in spec.opens]
    lattice = FiniteLattice(labels, leq, meet, join,
                            bottom=idx[0], top=idx[max(masks)], name=name)
    Q = Quantale(lattice, meet.copy(), name=name)
    if n <= _VALIDATE_LIMIT:
        _validate_mult(lattice, Q.mult)
    return Q


def powerset_frame(k):
    """Boolean frame on the subsets of {1, .., k}, multiplication = meet."""
    if not 1 <= k <= MAX_POWERSET_POINTS:
        raise SizeLimitExceeded(f"powerset guard is 1..{MAX_POWERSET_POINTS}, got {k}")
    n = 1 << k
    I = np.arange(n)
    leq = (I[:, None] & ~I[None, :]) == 0
    meet = I[:, None] & I[None, :]
    join = I[:, None] | I[None, :]
    labels = []
    for mask in range(n):
        pts = frozenset(i + 1 for i in range(k) if mask >> i & 1)
        labels.append(_setlabel(pts, full=range(1, k + 1)))
    name = f"P({{1..{k}}})"
    lattice = FiniteLattice(labels, leq, meet, join, bottom=0, top=n - 1, name=name)
    Q = Quantale(lattice, meet.copy(), name=name)
    if n <= _VALIDATE_LIMIT:
        _validate_mult(lattice, Q.mult)
    return Q


def discrete_topology(k):
    """TopologySpec of the discrete topology on {1, .., k}."""
    pts = tuple(range(1, k + 1))
    opens = [frozenset(p for i, p in enumerate(pts) if mask >> i & 1)
             for mask in range(1 << k)]
    return TopologySpec(pts, tuple(opens))


def topology_frame(spec):
    """Frame of opens of a validated topology, ordered by inclusion."""
    spec.validate()
    return _family_frame(spec, name=f"Open(X), |X|={len(spec.points)}, "
                                    f"{len(spec.opens)} opens")


def alexandrov_frame(preorder, points=None):
    """Frame of up-closed subsets of a preorder, plus its TopologySpec.

    Every finite topology is of this form. ``preorder`` is a k x k boolean
    matrix that must be reflexive and transitive.
    """
    rel = np.array(preorder, dtype=bool)
    k = rel.shape[0]
    if rel.shape != (k, k):
        raise NotAPreorder(f"preorder matrix must be square, got {rel.shape}")
    if k > MAX_PREORDER_POINTS:
        raise SizeLimitExceeded(f"preorder guard is {MAX_PREORDER_POINTS} points, got {k}")
    if not rel.diagonal().all():
        x = int(np.flatnonzero(~rel.diagonal())[0])
        raise NotAPreorder(f"not reflexive at point {x}")
    reach = (rel.astype(np.uint8) @ rel.astype(np.uint8)) > 0
    if (reach & ~rel).any():
        x, z = np.argwhere(reach & ~rel)[0]
        raise NotAPreorder(f"not transitive: {x} reaches {z} in two steps only")
    pts = tuple(points) if points is not None else tuple(range(k))
    upmask = [sum(1 << j for j in range(k) if rel[i, j]) for i in range(k)]
    opens = []
    for mask in range(1 << k):
        if all(upmask[i] & ~mask == 0 for i in range(k) if mask >> i & 1):
            opens.append(frozenset(pts[i] for i in range(k) if mask >> i & 1))
    spec = TopologySpec(pts, tuple(opens))
    Q = _family_frame(spec, name=f"Alexandrov({k} points, {len(opens)} opens)")
    return Q, spec


def preorders(k):
    """All reflexive-transitive relations on k labeled points, as matrices."""
    if not 1 <= k <= 4:
        raise SizeLimitExceeded(f"exhaustive preorder generation is guarded at 4 points, got {k}")
    offdiag = [(i, j) for i in range(k) for j in range(k) if i != j]
    for assignment in range(1 << len(offdiag)):
        rows = [1 << i for i in range(k)]
        for b, (i, j) in enumerate(offdiag):
            if assignment >> b & 1:
                rows[i] |= 1 << j
        if all(not (rows[i] >> j & 1) or (rows[j] & ~rows[i]) == 0
               for i in range(k) for j in range(k)):
            rel = np.array([[bool(rows[i] >> j & 1) for j in range(k)]
                            for i in range(k)])
            yield rel


def chain(k):
    """Total order on k elements with multiplication = meet."""
    if not 1 <= k <= MAX_CHAIN:
        raise SizeLimitExceeded(f"chain guard is 1..{MAX_CHAIN}, got {k}")
    I = np.arange(k)
    leq = I[:, None] <= I[None, :]
    meet = np.minimum.outer(I, I)
    join = np.maximum.outer(I, I)
    name = f"chain({k})"
    lattice = FiniteLattice([str(i) for i in range(k)], leq, meet, join,
                            bottom=0, top=k - 1, name=name)
    return Quantale(lattice, meet.copy(), name=name)


def product(L1, L2):
    """Componentwise-order product of two lattices."""
    n1, n2 = L1.n, L2.n
    n = n1 * n2
    if n > MAX_PRODUCT_ELEMENTS:
        raise SizeLimitExceeded(f"product would have {n} elements")
    leq = (L1.leq[:, None, :, None] & L2.leq[None, :, None, :]).reshape(n, n)
    meet = (L1.meet[:, None, :, None] * n2 + L2.meet[None, :, None, :]).reshape(n, n)
    join = (L1.join[:, None, :, None] * n2 + L2.join[None, :, None, :]).reshape(n, n)
    labels = [f"({a},{b})" for a in L1.labels for b in L2.labels]
    return FiniteLattice(labels, leq, meet, join,
                         bottom=L1.bottom * n2 + L2.bottom,
                         top=L1.top * n2 + L2.top,
                         name=f"{L1.name} x {L2.name}")


def diamond_m3():
    """The modular, non-distributive five-element diamond."""
    labels = ["0", "a", "b", "c", "1"]
    pairs = [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4),
             (0, 1), (0, 2), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)]
    return build_lattice(labels, pairs, name="M3")


def pentagon_n5():
    """The non-modular five-element pentagon: 0 < a < b < 1 and 0 < c < 1."""
    labels = ["0", "a", "b", "c", "1"]
    pairs = [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4),
             (0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)]
    return build_lattice(labels, pairs, name="N5")
