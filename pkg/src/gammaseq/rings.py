"""Finite rings stored extensionally as addition/multiplication tables.

Tables make axiom checking, invariant extraction and isomorphism testing
straightforward, and every ring this package cares about is tiny.  Rings are
verified exhaustively at construction (the cubic associativity and
distributivity scans are vectorised with numpy); construction refuses orders
above the cap, 512 by default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import abelian
from . import intlinalg as la

DEFAULT_RING_CAP = 512
_CHUNK_ENTRIES = 4_000_000


class RingCapError(RuntimeError):
    """A table construction would exceed the ring order cap."""


class RingAxiomError(ValueError):
    """The supplied tables do not define an associative unital ring."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(math.isqrt(p)) + 1))


@dataclass(frozen=True)
class RingInvariants:
    """Isomorphism-invariant fingerprint of a finite ring.

    unit_count and idempotent_count are None when the ring was too large to
    scan element by element (only the bounded survey produces such values).
    """

    order: int
    characteristic: int
    is_commutative: bool
    unit_count: int | None
    idempotent_count: int | None
    additive_invariant_factors: tuple[int, ...]

    def key(self) -> tuple:
        return (self.order, self.characteristic, self.is_commutative,
                self.unit_count, self.idempotent_count,
                self.additive_invariant_factors)

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "characteristic": self.characteristic,
            "is_commutative": self.is_commutative,
            "unit_count": self.unit_count,
            "idempotent_count": self.idempotent_count,
            "additive_invariant_factors": list(self.additive_invariant_factors),
        }

    def __str__(self) -> str:
        add = "+".join(str(d) for d in self.additive_invariant_factors) or "0"
        comm = "comm" if self.is_commutative else "noncomm"
        return (f"order={self.order} char={self.characteristic} {comm} "
                f"units={self.unit_count} idem={self.idempotent_count} add=({add})")


class FiniteRing:
    """An associative unital ring given by element-indexed tables."""

    __slots__ = ("order", "add_table", "mul_table", "zero_index", "one_index",
                 "labels")

    def __init__(self, order: int,
                 add_table: Sequence[Sequence[int]],
                 mul_table: Sequence[Sequence[int]],
                 zero_index: int, one_index: int,
                 labels: tuple[str, ...] | None = None,
                 cap: int = DEFAULT_RING_CAP):
        if order < 1:
            raise ValueError("a ring has at least the zero element")
        if order > cap:
            raise RingCapError(f"order {order} exceeds the ring cap {cap}")
        self.order = order
        self.add_table = tuple(tuple(row) for row in add_table)
        self.mul_table = tuple(tuple(row) for row in mul_table)
        self.zero_index = zero_index
        self.one_index = one_index
        self.labels = labels
        self._verify()

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.add_table[a].index(self.zero_index)

    def _verify(self) -> None:
        n = self.order
        add = np.array(self.add_table, dtype=np.int32)
        mul = np.array(self.mul_table, dtype=np.int32)
        for name, t in (("addition", add), ("multiplication", mul)):
            if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
                raise RingAxiomError(f"{name} table is not a map into the ring")
        idx = np.arange(n)
        if not np.array_equal(add, add.T):
            raise RingAxiomError("addition is not commutative")
        if not np.array_equal(add[self.zero_index], idx):
            raise RingAxiomError("zero is not an additive identity")
        if not all(self.zero_index in set(row) for row in self.add_table):
            raise RingAxiomError("an element has no additive inverse")
        if not (np.array_equal(mul[self.one_index], idx)
                and np.array_equal(mul[:, self.one_index], idx)):
            raise RingAxiomError("one is not a two-sided identity")
        chunk = max(1, _CHUNK_ENTRIES // (n * n))
        cols = idx[None, None, :]
        for start in range(0, n, chunk):
            a = idx[start:start + chunk]
            add_a = add[a]
            mul_a = mul[a]
            # (a + b) + c == a + (b + c)
            lhs = add[add_a[:, :, None], cols]
            rhs = add_a[:, add.reshape(-1)].reshape(len(a), n, n)
            if not np.array_equal(lhs, rhs):
                raise RingAxiomError("addition is not associative")
            # (a b) c == a (b c)
            lhs = mul[mul_a[:, :, None], cols]
            rhs = mul_a[:, mul.reshape(-1)].reshape(len(a), n, n)
            if not np.array_equal(lhs, rhs):
                raise RingAxiomError("multiplication is not associative")
            # a (b + c) == a b + a c
            lhs = mul_a[:, add.reshape(-1)].reshape(len(a), n, n)
            rhs = add[mul_a[:, :, None], mul_a[:, None, :]]
            if not np.array_equal(lhs, rhs):
                raise RingAxiomError("left distributivity fails")
            # (b + c) a == b a + c a
            lhs = mul[add.reshape(-1)][:, a].reshape(n, n, len(a))
            lhs = np.transpose(lhs, (2, 0, 1))
            mul_cols = mul[:, a].T  # (chunk, n): entry [x, b] = b * a_x
            rhs = add[mul_cols[:, :, None], mul_cols[:, None, :]]
            if not np.array_equal(lhs, rhs):
                raise RingAxiomError("right distributivity fails")

    def additive_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.zero_index:
            x = self.add_table[x][a]
            k += 1
        return k

    def is_unit(self, a: int) -> bool:
        one = self.one_index
        row = self.mul_table[a]
        return any(row[b] == one and self.mul_table[b][a] == one
                   for b in range(self.order))

    def units(self) -> list[int]:
        return [a for a in range(self.order) if self.is_unit(a)]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FiniteRing)
                and self.order == other.order
                and self.add_table == other.add_table
                and self.mul_table == other.mul_table
                and self.zero_index == other.zero_index
                and self.one_index == other.one_index)

    def __hash__(self) -> int:
        return hash((self.order, self.add_table, self.mul_table))

    def __repr__(self) -> str:
        return f"FiniteRing(order={self.order})"


def trivial_ring() -> FiniteRing:
    """The one-element ring; its single element is both 0 and 1."""
    return FiniteRing(1, ((0,),), ((0,),), 0, 0)


def cyclic_ring(n: int) -> FiniteRing:
    """Z/n with its usual multiplication."""
    add = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    mul = tuple(tuple((a * b) % n for b in range(n)) for a in range(n))
    return FiniteRing(n, add, mul, 0, 1 % n)


def prime_field_power(p: int, k: int) -> FiniteRing:
    """The k-fold direct product of the field with p elements."""
    ring = cyclic_ring(p)
    out = ring
    for _ in range(k - 1):
        out = direct_product(out, ring)
    return out if k >= 1 else trivial_ring()


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def invariant_factors_from_orders(orders: Sequence[int]) -> tuple[int, ...]:
    """Additive invariant factors of a finite abelian group from the multiset
    of element orders.

    The counts N_k of elements killed by p^k determine the partition of the
    p-part: log_p N_k is the sum of min(part, k) over the parts.
    """
    n = len(orders)
    if n == 1:
        return ()
    per_prime: dict[int, list[int]] = {}
    for p in _prime_divisors(n):
        s = []
        k = 1
        while True:
            pk = p ** k
            count = sum(1 for o in orders if pk % o == 0)
            s.append(round(math.log(count, p)))
            if len(s) > 1 and s[-1] == s[-2]:
                s.pop()
                break
            k += 1
        growth = [s[0]] + [s[i] - s[i - 1] for i in range(1, len(s))]
        parts = []
        i = 1
        while True:
            size = sum(1 for m in growth if m >= i)
            if size == 0:
                break
            parts.append(size)
            i += 1
        per_prime[p] = sorted(parts, reverse=True)
    width = max(len(v) for v in per_prime.values())
    factors = []
    for slot in range(width):
        f = 1
        for p, parts in per_prime.items():
            if slot < len(parts):
                f *= p ** parts[slot]
        factors.append(f)
    return tuple(sorted(factors))


def ring_invariants(ring: FiniteRing) -> RingInvariants:
    """Exact invariants by exhaustive scan of the tables."""
    n = ring.order
    orders = [ring.additive_order(a) for a in range(n)]
    units = sum(1 for a in range(n) if ring.is_unit(a))
    idem = sum(1 for a in range(n) if ring.mul_table[a][a] == a)
    commutative = all(ring.mul_table[a][b] == ring.mul_table[b][a]
                      for a in range(n) for b in range(a + 1, n))
    return RingInvariants(
        order=n,
        characteristic=orders[ring.one_index],
        is_commutative=commutative,
        unit_count=units,
        idempotent_count=idem,
        additive_invariant_factors=invariant_factors_from_orders(orders),
    )


def is_product_of_prime_fields(ring: FiniteRing, p: int, k: int) -> bool:
    """True iff the ring is isomorphic to a k-fold product of the field with
    p elements.

    The test is elementwise: |R| = p^k, commutativity, p x = 0 and x^p = x
    for every x.  A finite commutative unital ring with x^p = x throughout is
    reduced, hence a finite product of fields each still satisfying x^p = x,
    and the only such field is the prime field with p elements; the four
    conditions are therefore sufficient as well as necessary.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if ring.order != p ** k:
        return False
    n = ring.order
    for a in range(n):
        for b in range(a + 1, n):
            if ring.mul_table[a][b] != ring.mul_table[b][a]:
                return False
    for a in range(n):
        x = ring.zero_index
        for _ in range(p):
            x = ring.add_table[x][a]
        if x != ring.zero_index:
            return False
        y = a
        for _ in range(p - 1):
            y = ring.mul_table[y][a]
        if y != a:
            return False
    return True


def direct_product(r1: FiniteRing, r2: FiniteRing,
                   cap: int = DEFAULT_RING_CAP) -> FiniteRing:
    """Componentwise tables on pairs, indexed as i1 * |R2| + i2."""
    n1, n2 = r1.order, r2.order
    n = n1 * n2
    if n > cap:
        raise RingCapError(f"product order {n} exceeds the ring cap {cap}")

    def pair(i1: int, i2: int) -> int:
        return i1 * n2 + i2

    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for a1 in range(n1):
        for a2 in range(n2):
            a = pair(a1, a2)
            for b1 in range(n1):
                s1 = r1.add_table[a1][b1]
                m1 = r1.mul_table[a1][b1]
                for b2 in range(n2):
                    add[a][pair(b1, b2)] = pair(s1, r2.add_table[a2][b2])
                    mul[a][pair(b1, b2)] = pair(m1, r2.mul_table[a2][b2])
    return FiniteRing(n, add, mul,
                      pair(r1.zero_index, r2.zero_index),
                      pair(r1.one_index, r2.one_index), cap=cap)


@dataclass(frozen=True)
class RingMap:
    """A unital ring homomorphism between table rings, as an index map."""

    source: FiniteRing
    target: FiniteRing
    index_map: tuple[int, ...]

    def __post_init__(self):
        f = self.index_map
        if len(f) != self.source.order:
            raise ValueError("index map must cover the source")
        if any(not 0 <= x < self.target.order for x in f):
            raise ValueError("index map must land in the target")
        if f[self.source.one_index] != self.target.one_index:
            raise ValueError("ring maps are unital")
        s, t = self.source, self.target
        for a in range(s.order):
            for b in range(s.order):
                if f[s.add_table[a][b]] != t.add_table[f[a]][f[b]]:
                    raise ValueError("index map does not respect addition")
                if f[s.mul_table[a][b]] != t.mul_table[f[a]][f[b]]:
                    raise ValueError("index map does not respect multiplication")

    def __call__(self, a: int) -> int:
        return self.index_map[a]


def pullback(r1: FiniteRing, r2: FiniteRing, f1: RingMap, f2: RingMap,
             cap: int = DEFAULT_RING_CAP) -> FiniteRing:
    """The subring {(a, b) : f1(a) = f2(b)} of the direct product."""
    if f1.source != r1:
        raise ValueError("f1 must be defined on r1")
    if f2.source != r2:
        raise ValueError("f2 must be defined on r2")
    if f1.target != f2.target:
        raise ValueError("the two maps must share a codomain")
    pairs = [(a, b) for a in range(r1.order) for b in range(r2.order)
             if f1(a) == f2(b)]
    if len(pairs) > cap:
        raise RingCapError(f"pullback order {len(pairs)} exceeds the cap {cap}")
    index = {ab: i for i, ab in enumerate(pairs)}
    add = [[index[(r1.add_table[a1][b1], r2.add_table[a2][b2])]
            for (b1, b2) in pairs] for (a1, a2) in pairs]
    mul = [[index[(r1.mul_table[a1][b1], r2.mul_table[a2][b2])]
            for (b1, b2) in pairs] for (a1, a2) in pairs]
    return FiniteRing(len(pairs), add, mul,
                      index[(r1.zero_index, r2.zero_index)],
                      index[(r1.one_index, r2.one_index)], cap=cap)


def brute_iso(r1: FiniteRing, r2: FiniteRing,
              max_order: int = 81) -> list[int] | None:
    """Search for a ring isomorphism r1 -> r2 by backtracking.

    Returns the witness bijection as a list (index in r1 -> index in r2) or
    None.  Rings with different invariant fingerprints are rejected without
    searching.  The default order cap of 81 is what the search must handle
    blind; callers with structurally aligned tables may raise it, since the
    aligned candidate is tried first and verified in quadratic time.
    """
    if r1.order != r2.order:
        raise ValueError("brute_iso requires rings of equal order")
    if r1.order > max_order:
        raise RingCapError(f"order {r1.order} exceeds brute_iso cap {max_order}")
    if ring_invariants(r1).key() != ring_invariants(r2).key():
        return None
    n = r1.order
    ord1 = [r1.additive_order(a) for a in range(n)]
    ord2 = [r2.additive_order(a) for a in range(n)]
    idem1 = [r1.mul_table[a][a] == a for a in range(n)]
    idem2 = [r2.mul_table[a][a] == a for a in range(n)]

    def close(fwd, bwd, queue):
        while queue:
            a, b = queue.pop()
            for x in range(n):
                y = fwd[x]
                if y is None:
                    continue
                for ta, tb in (
                    (r1.add_table[a][x], r2.add_table[b][y]),
                    (r1.mul_table[a][x], r2.mul_table[b][y]),
                    (r1.mul_table[x][a], r2.mul_table[y][b]),
                ):
                    cur = fwd[ta]
                    if cur is None:
                        if bwd[tb] is not None:
                            return False
                        fwd[ta] = tb
                        bwd[tb] = ta
                        queue.append((ta, tb))
                    elif cur != tb:
                        return False
        return True

    def extend(fwd, bwd):
        try:
            a = fwd.index(None)
        except ValueError:
            return fwd
        candidates = [b for b in range(n)
                      if bwd[b] is None and ord2[b] == ord1[a]
                      and idem2[b] == idem1[a]]
        if a in candidates:
            candidates.remove(a)
            candidates.insert(0, a)
        for b in candidates:
            f2, b2 = list(fwd), list(bwd)
            f2[a] = b
            b2[b] = a
            if close(f2, b2, [(a, b)]):
                result = extend(f2, b2)
                if result is not None:
                    return result
        return None

    fwd: list[int | None] = [None] * n
    bwd: list[int | None] = [None] * n
    fwd[r1.zero_index] = r2.zero_index
    bwd[r2.zero_index] = r1.zero_index
    if fwd[r1.one_index] is None:
        if bwd[r2.one_index] is not None:
            return None
        fwd[r1.one_index] = r2.one_index
        bwd[r2.one_index] = r1.one_index
    elif fwd[r1.one_index] != r2.one_index:
        return None
    if not close(fwd, bwd, [(r1.zero_index, r2.zero_index),
                            (r1.one_index, r2.one_index)]):
        return None
    result = extend(fwd, bwd)
    return None if result is None else [int(x) for x in result]


@dataclass
class PullbackData:
    """Membership predicates and induced maps for a sequence whose middle
    group vanishes; see `sequence_pullback_data`."""

    image_b: abelian.FgAbGroup
    r1_contains: Callable[[abelian.Homomorphism], bool]
    r2_contains: Callable[[abelian.Homomorphism], bool]
    f1: Callable[[abelian.Homomorphism], abelian.Homomorphism]
    f2: Callable[[abelian.Homomorphism], abelian.Homomorphism]


def sequence_pullback_data(seq) -> PullbackData:
    """Predicates for the two invariance subrings of a sequence with trivial
    middle group, and the induced maps into End(Im b).

    R1 holds the endomorphisms of the top group preserving ker b; R2 holds
    the endomorphisms of the bottom group whose mod-2 reduction preserves
    Im b.  f1 factors a member of R1 through b (first isomorphism theorem),
    f2 restricts the reduced map of a member of R2 to Im b.
    """
    if not seq.h_mid.is_trivial:
        raise ValueError("pullback data requires a trivial middle group")
    b = seq.b
    top = seq.h_top
    bot = seq.h_bot
    tensor_bot = b.target
    ker_lat = abelian.kernel_lattice(b)
    img, img_incl, _ = abelian.factor_through_image(b)
    img_lat = abelian.subgroup_lattice(img_incl)

    basis_cols = ([list(col) for col in la.transpose(img_incl.matrix)]
                  + abelian._relation_columns(tensor_bot))
    basis = la.column_hnf(basis_cols, tensor_bot.num_factors)
    basis_matrix = la.transpose(basis) if basis else []
    rel_in_basis = [la.solve_exact(basis_matrix, col)
                    for col in abelian._relation_columns(tensor_bot)]
    rel_matrix = (la.transpose(rel_in_basis) if rel_in_basis
                  else [[] for _ in range(len(basis))])
    img_grp, img_proj, _ = abelian._quotient_presentation(rel_matrix, len(basis))
    assert img_grp == img

    def coords_in_image(vec) -> tuple[int, ...] | None:
        if not basis:
            return ()
        raw = la.solve_exact(basis_matrix, list(vec))
        if raw is None:
            return None
        return tuple(la.matvec(img_proj, raw))

    def r1_contains(f: abelian.Homomorphism) -> bool:
        if f.source != top or f.target != top:
            raise abelian.SignatureError(
                "R1 members are endomorphisms of the top group")
        return all(ker_lat.contains(la.matvec(f.matrix, col))
                   for col in ker_lat.basis)

    def r2_contains(g: abelian.Homomorphism) -> bool:
        if g.source != bot or g.target != bot:
            raise abelian.SignatureError(
                "R2 members are endomorphisms of the bottom group")
        gt = abelian.tensor_Z2_map(g)
        return all(img_lat.contains(la.matvec(gt.matrix, col))
                   for col in img_lat.basis)

    def _columns_to_hom(cols) -> abelian.Homomorphism:
        matrix = tuple(tuple(col[j] for col in cols)
                       for j in range(img.num_factors))
        return abelian.Homomorphism(img, img, matrix)

    def f1(f: abelian.Homomorphism) -> abelian.Homomorphism:
        cols = []
        for k in range(img.num_factors):
            gen = [img_incl.matrix[r][k] for r in range(tensor_bot.num_factors)]
            pre = la.solve_congruences(b.matrix, gen,
                                       list(tensor_bot.invariant_factors))
            if pre is None:
                raise AssertionError("image generators must lift through b")
            pushed = la.matvec(b.matrix, la.matvec(f.matrix, pre))
            coords = coords_in_image(pushed)
            if coords is None:
                raise ValueError("map does not preserve ker b; not in R1")
            cols.append(coords)
        return _columns_to_hom(cols)

    def f2(g: abelian.Homomorphism) -> abelian.Homomorphism:
        gt = abelian.tensor_Z2_map(g)
        cols = []
        for k in range(img.num_factors):
            gen = [img_incl.matrix[r][k] for r in range(tensor_bot.num_factors)]
            coords = coords_in_image(la.matvec(gt.matrix, gen))
            if coords is None:
                raise ValueError("reduced map does not preserve Im b; not in R2")
            cols.append(coords)
        return _columns_to_hom(cols)

    return PullbackData(image_b=img, r1_contains=r1_contains,
                        r2_contains=r2_contains, f1=f1, f2=f2)
