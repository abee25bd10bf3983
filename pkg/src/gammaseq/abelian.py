"""Finitely generated abelian groups and their homomorphisms.

A group is a tuple of invariant factors (d1, ..., dk): di = 0 is an infinite
cyclic factor, finite factors satisfy d1 | d2 | ... and come first, factors
equal to 1 are dropped.  Two groups are isomorphic iff their factor tuples
are equal, so equality of `FgAbGroup` values is isomorphism.

A homomorphism is an integer matrix, rows indexed by target factors and
columns by source factors, with entries reduced modulo the target factor.
The matrix represents a well-defined map iff entry (j, i) is a multiple of
d'_j / gcd(d_i, d'_j) whenever both factors are finite, and is zero when a
finite factor maps to an infinite one; `validate_hom` checks exactly this.

All values are immutable after construction and safe to share.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import intlinalg as la
from .intlinalg import smith_normal_form  # re-exported: the engine for everything below

DEFAULT_ENUMERATION_CAP = 10**6


class SignatureError(ValueError):
    """Matrix dimensions or group signatures do not match."""


class InfiniteGroupError(ValueError):
    """An operation requiring a finite group met a free factor."""


class EnumerationCapError(RuntimeError):
    """An exhaustive enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class FgAbGroup:
    """A finitely generated abelian group in invariant-factor normal form."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        facs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", facs)
        if any(d < 0 for d in facs):
            raise ValueError("invariant factors must be non-negative")
        if any(d == 1 for d in facs):
            raise ValueError("factors equal to 1 must be dropped")
        finite = [d for d in facs if d > 0]
        free = [d for d in facs if d == 0]
        if facs != tuple(finite) + tuple(free):
            raise ValueError("free factors must come last")
        for a, b in zip(finite, finite[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")

    @classmethod
    def from_factors(cls, factors: Iterable[int]) -> "FgAbGroup":
        """Canonicalize an arbitrary list of cyclic orders (0 = infinite)."""
        facs = [abs(int(d)) for d in factors if abs(int(d)) != 1]
        if not facs:
            return cls(())
        pres = [[facs[i] if i == j else 0 for j in range(len(facs))]
                for i in range(len(facs))]
        return canonicalize(pres)

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls(())

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls((0,) * rank)

    @classmethod
    def cyclic(cls, n: int) -> "FgAbGroup":
        return cls(()) if n == 1 else cls((n,))

    @property
    def num_factors(self) -> int:
        return len(self.invariant_factors)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def is_free(self) -> bool:
        return all(d == 0 for d in self.invariant_factors)

    def order(self) -> int:
        if not self.is_finite:
            raise InfiniteGroupError(f"{self} is infinite")
        return math.prod(self.invariant_factors) if self.invariant_factors else 1

    def exponent(self) -> int:
        if not self.is_finite:
            raise InfiniteGroupError(f"{self} is infinite")
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors if d > 0)
        return " + ".join(parts)


@dataclass(frozen=True)
class GroupElement:
    group: FgAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        facs = self.group.invariant_factors
        if len(self.coords) != len(facs):
            raise SignatureError("coordinate count does not match factor count")
        reduced = tuple(c % d if d else c for c, d in zip(self.coords, facs))
        object.__setattr__(self, "coords", reduced)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise SignatureError("elements of different groups")
        return GroupElement(self.group,
                            tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-c for c in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


def zero_element(group: FgAbGroup) -> GroupElement:
    return GroupElement(group, (0,) * group.num_factors)


def _reduce_matrix(matrix, target: FgAbGroup):
    facs = target.invariant_factors
    return tuple(
        tuple(x % facs[j] if facs[j] else x for x in row)
        for j, row in enumerate(matrix)
    )


@dataclass(frozen=True)
class Homomorphism:
    """An integer matrix between presented groups, reduced modulo the target.

    Construction checks dimensions only; use `validate_hom` for the
    well-definedness certificate.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = len(self.matrix)
        if rows != self.target.num_factors:
            raise SignatureError(
                f"matrix has {rows} rows, target has {self.target.num_factors} factors")
        for row in self.matrix:
            if len(row) != self.source.num_factors:
                raise SignatureError(
                    f"matrix row length {len(row)} does not match "
                    f"{self.source.num_factors} source factors")
        object.__setattr__(self, "matrix", _reduce_matrix(self.matrix, self.target))

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> "Homomorphism":
        return cls(source, target,
                   tuple((0,) * source.num_factors
                         for _ in range(target.num_factors)))

    @classmethod
    def identity(cls, group: FgAbGroup) -> "Homomorphism":
        n = group.num_factors
        return cls(group, group,
                   tuple(tuple(1 if i == j else 0 for j in range(n))
                         for i in range(n)))

    def apply(self, elem: GroupElement) -> GroupElement:
        if elem.group != self.source:
            raise SignatureError("element not in the source group")
        coords = tuple(sum(x * y for x, y in zip(row, elem.coords))
                       for row in self.matrix)
        return GroupElement(self.target, coords)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)

    def is_identity(self) -> bool:
        return self.source == self.target and self == Homomorphism.identity(self.source)

    def __add__(self, other: "Homomorphism") -> "Homomorphism":
        return add(self, other)

    def __neg__(self) -> "Homomorphism":
        return neg(self)

    def __mul__(self, other: "Homomorphism") -> "Homomorphism":
        return compose(self, other)


def validate_hom(h: Homomorphism) -> bool:
    """True iff the matrix defines a map on the presented groups."""
    src = h.source.invariant_factors
    tgt = h.target.invariant_factors
    for i, d in enumerate(src):
        if d == 0:
            continue
        for j, dt in enumerate(tgt):
            entry = h.matrix[j][i]
            if dt == 0:
                if entry != 0:
                    return False
            elif entry % (dt // math.gcd(d, dt)):
                return False
    return True


def compose(g: Homomorphism, f: Homomorphism) -> Homomorphism:
    """The composite g after f."""
    if f.target != g.source:
        raise SignatureError("compose: target of f must equal source of g")
    rows = g.target.num_factors
    inner = g.source.num_factors
    cols = f.source.num_factors
    if inner == 0 or rows == 0 or cols == 0:
        return Homomorphism.zero(f.source, g.target)
    return Homomorphism(f.source, g.target, la.matmul(g.matrix, f.matrix))


def add(f: Homomorphism, g: Homomorphism) -> Homomorphism:
    if f.source != g.source or f.target != g.target:
        raise SignatureError("add: signatures differ")
    return Homomorphism(f.source, f.target, la.matadd(f.matrix, g.matrix))


def neg(f: Homomorphism) -> Homomorphism:
    return Homomorphism(f.source, f.target, la.matneg(f.matrix))


# ---------------------------------------------------------------------------
# Presentations, subgroups and quotients
# ---------------------------------------------------------------------------

def _unimodular_inverse(u):
    """Inverse of a unimodular integer matrix, exactly."""
    from fractions import Fraction

    n = len(u)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(u)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c])
        a[c], a[piv] = a[piv], a[c]
        a[c] = [x / a[c][c] for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = [[x for x in row[n:]] for row in a]
    return [[int(x) for x in row] for row in out]


def _quotient_presentation(relations, ngens):
    """Canonical form of Z^ngens / column-span(relations).

    Returns (group, proj, lift): proj maps old coordinates to canonical
    coordinates (one row per kept factor), lift maps a canonical generator to
    a representative vector in Z^ngens (one column per kept factor).
    """
    if not relations or not relations[0]:
        rel = [[0] for _ in range(ngens)] if ngens else []
    else:
        rel = relations
    u, d, _ = la.smith_normal_form(rel)
    ncols = la.dims(rel)[1]
    diag = [d[i][i] for i in range(min(ngens, ncols))] + [0] * max(0, ngens - ncols)
    uinv = _unimodular_inverse(u)
    kept = [i for i, val in enumerate(diag) if val != 1]
    # Smith ordering (1s, finite ascending, 0s) is already canonical once the
    # 1s are gone.
    group = FgAbGroup(tuple(diag[i] for i in kept))
    proj = [list(u[i]) for i in kept]
    lift = [[uinv[r][i] for i in kept] for r in range(ngens)]
    return group, proj, lift


def canonicalize(presentation) -> FgAbGroup:
    """Cokernel of a relation matrix (columns are relations on the row generators)."""
    ngens = len(presentation)
    group, _, _ = _quotient_presentation(presentation, ngens)
    return group


def _relation_columns(group: FgAbGroup):
    n = group.num_factors
    cols = []
    for i, d in enumerate(group.invariant_factors):
        if d:
            cols.append([d if r == i else 0 for r in range(n)])
    return cols


def _subquotient(ambient: FgAbGroup, lattice_gens):
    """The subgroup (L + relations)/relations of ambient, with its inclusion.

    lattice_gens are vectors in the ambient's generator coordinates.
    """
    n = ambient.num_factors
    gens = [list(g) for g in lattice_gens] + _relation_columns(ambient)
    basis = la.column_hnf(gens, n)
    if not basis:
        triv = FgAbGroup.trivial()
        return triv, Homomorphism.zero(triv, ambient)
    basis_matrix = la.transpose(basis)  # n x r, columns are the basis
    r = len(basis)
    rel_in_basis = []
    for col in _relation_columns(ambient):
        coords = la.solve_exact(basis_matrix, col)
        if coords is None:
            raise AssertionError("ambient relations must lie in the sublattice")
        rel_in_basis.append(coords)
    rel_matrix = la.transpose(rel_in_basis) if rel_in_basis else [[] for _ in range(r)]
    group, _, lift = _quotient_presentation(rel_matrix, r)
    if group.is_trivial:
        return group, Homomorphism.zero(group, ambient)
    incl_cols = la.matmul(basis_matrix, lift)
    matrix = tuple(tuple(row) for row in incl_cols)
    return group, Homomorphism(group, ambient, matrix)


def kernel(h: Homomorphism) -> tuple[FgAbGroup, Homomorphism]:
    """The kernel subgroup with its inclusion into the source."""
    moduli = list(h.target.invariant_factors)
    gens = la.congruence_kernel(h.matrix, moduli, ncols=h.source.num_factors)
    return _subquotient(h.source, gens)


def image(h: Homomorphism) -> tuple[FgAbGroup, Homomorphism]:
    """The image subgroup with its inclusion into the target."""
    cols = la.transpose(h.matrix)
    return _subquotient(h.target, cols)


def cokernel(h: Homomorphism) -> tuple[FgAbGroup, Homomorphism]:
    """The quotient of the target by the image, with the projection map."""
    m = h.target.num_factors
    rel = [list(h.matrix[r]) for r in range(m)]
    for col in _relation_columns(h.target):
        for r in range(m):
            rel[r].append(col[r])
    if m and not rel[0]:
        rel = [[0] for _ in range(m)]
    group, proj, _ = _quotient_presentation(rel, m)
    matrix = tuple(tuple(row) for row in proj)
    return group, Homomorphism(h.target, group, matrix)


def factor_through_image(h: Homomorphism):
    """Split h as inclusion(image) after a surjection onto the image.

    Returns (image_group, inclusion, corestriction) with
    inclusion o corestriction == h.
    """
    img, incl = image(h)
    if img.is_trivial:
        return img, incl, Homomorphism.zero(h.source, img)
    n = h.target.num_factors
    gens = [list(col) for col in la.transpose(h.matrix)] + _relation_columns(h.target)
    basis = la.column_hnf(gens, n)
    basis_matrix = la.transpose(basis)
    rel_in_basis = [la.solve_exact(basis_matrix, col)
                    for col in _relation_columns(h.target)]
    rel_matrix = (la.transpose(rel_in_basis)
                  if rel_in_basis else [[] for _ in range(len(basis))])
    group, proj, _ = _quotient_presentation(rel_matrix, len(basis))
    assert group == img
    cols = []
    for col in la.transpose(h.matrix):
        coords = la.solve_exact(basis_matrix, list(col))
        cols.append(la.matvec(proj, coords))
    matrix = tuple(tuple(cols[i][j] for i in range(len(cols)))
                   for j in range(img.num_factors))
    return img, incl, Homomorphism(h.source, img, matrix)


def subgroup_lattice(h: Homomorphism) -> la.Lattice:
    """The full preimage in Z^n of the image of h, as a lattice."""
    cols = [list(c) for c in la.transpose(h.matrix)]
    cols += _relation_columns(h.target)
    return la.Lattice(cols, h.target.num_factors)


def kernel_lattice(h: Homomorphism) -> la.Lattice:
    """The full preimage in Z^n of the kernel of h, as a lattice."""
    moduli = list(h.target.invariant_factors)
    gens = la.congruence_kernel(h.matrix, moduli, ncols=h.source.num_factors)
    gens += _relation_columns(h.source)
    return la.Lattice(gens, h.source.num_factors)


def is_injective(h: Homomorphism) -> bool:
    ker, _ = kernel(h)
    return ker.is_trivial


def is_surjective(h: Homomorphism) -> bool:
    coker, _ = cokernel(h)
    return coker.is_trivial


def is_isomorphism(h: Homomorphism) -> bool:
    return h.source == h.target and is_injective(h) and is_surjective(h)


# ---------------------------------------------------------------------------
# Tensoring with Z/2
# ---------------------------------------------------------------------------

def tensor_Z2_indices(group: FgAbGroup) -> list[int]:
    """Indices of the factors that survive tensoring with Z/2."""
    return [i for i, d in enumerate(group.invariant_factors) if d % 2 == 0]


def tensor_Z2(group: FgAbGroup) -> FgAbGroup:
    """G tensor Z/2: one Z/2 per even or infinite factor."""
    return FgAbGroup((2,) * len(tensor_Z2_indices(group)))


def tensor_Z2_map(h: Homomorphism) -> Homomorphism:
    """The induced map on the mod-2 reductions; functorial."""
    rows = tensor_Z2_indices(h.target)
    cols = tensor_Z2_indices(h.source)
    matrix = tuple(tuple(h.matrix[j][i] % 2 for i in cols) for j in rows)
    return Homomorphism(tensor_Z2(h.source), tensor_Z2(h.target), matrix)


# ---------------------------------------------------------------------------
# Hom groups and exhaustive enumeration
# ---------------------------------------------------------------------------

def _hom_cyclic_order(d_src: int, d_tgt: int) -> int:
    """Order of Hom(Z/d_src, Z/d_tgt) (0 = infinite, taking Z = Z/0)."""
    if d_src == 0:
        return d_tgt  # Hom(Z, Z/b) = Z/b; Hom(Z, Z) = Z encoded as 0
    if d_tgt == 0:
        return 1  # Hom(Z/a, Z) = 0
    return math.gcd(d_src, d_tgt)


def hom_group(source: FgAbGroup, target: FgAbGroup):
    """The abelian group Hom(source, target) and a generating set.

    Each generator is a homomorphism supported on a single matrix entry; the
    k-th generator has additive order equal to the k-th entry of the
    pre-canonical order list used to build the group.
    """
    src = source.invariant_factors
    tgt = target.invariant_factors
    orders = []
    basis = []
    for i, d in enumerate(src):
        for j, dt in enumerate(tgt):
            o = _hom_cyclic_order(d, dt)
            if o == 1:
                continue
            gen_val = 1 if (d == 0 or dt == 0) else dt // math.gcd(d, dt)
            matrix = [[0] * len(src) for _ in range(len(tgt))]
            matrix[j][i] = gen_val
            orders.append(o)
            basis.append(Homomorphism(source, target, tuple(map(tuple, matrix))))
    return FgAbGroup.from_factors(orders), basis


def hom_count(source: FgAbGroup, target: FgAbGroup) -> int | None:
    """|Hom(source, target)|, or None when it is infinite."""
    total = 1
    for d in source.invariant_factors:
        for dt in target.invariant_factors:
            o = _hom_cyclic_order(d, dt)
            if o == 0:
                return None
            total *= o
    return total


def enumerate_homs(source: FgAbGroup, target: FgAbGroup,
                   cap: int = DEFAULT_ENUMERATION_CAP) -> list[Homomorphism]:
    """Every homomorphism source -> target, duplicate-free, fixed order."""
    count = hom_count(source, target)
    if count is None:
        raise InfiniteGroupError("hom set is infinite")
    if count > cap:
        raise EnumerationCapError(
            f"|Hom| = {count} exceeds the enumeration cap {cap}")
    src = source.invariant_factors
    tgt = target.invariant_factors
    slots = []
    for i, d in enumerate(src):
        for j, dt in enumerate(tgt):
            o = _hom_cyclic_order(d, dt)
            if o <= 1:
                continue
            gen_val = 1 if (d == 0 or dt == 0) else dt // math.gcd(d, dt)
            slots.append((i, j, o, gen_val, dt))
    out = []
    for combo in itertools.product(*(range(o) for (_, _, o, _, _) in slots)):
        matrix = [[0] * len(src) for _ in range(len(tgt))]
        for (i, j, _, gen_val, dt), c in zip(slots, combo):
            matrix[j][i] = (c * gen_val) % dt if dt else c * gen_val
        out.append(Homomorphism(source, target, tuple(map(tuple, matrix))))
    return out


def enumerate_elements(group: FgAbGroup,
                       cap: int = DEFAULT_ENUMERATION_CAP) -> list[GroupElement]:
    """Every element of a finite group, duplicate-free, fixed order."""
    if not group.is_finite:
        raise InfiniteGroupError(f"{group} is infinite")
    if group.order() > cap:
        raise EnumerationCapError(
            f"|G| = {group.order()} exceeds the enumeration cap {cap}")
    return [GroupElement(group, combo)
            for combo in itertools.product(
                *(range(d) for d in group.invariant_factors))]


def end_ring(group: FgAbGroup, cap: int | None = None):
    """The full endomorphism ring of a finite group as explicit tables."""
    from . import rings

    if not group.is_finite:
        raise InfiniteGroupError("infinite endomorphism ring")
    ring_cap = rings.DEFAULT_RING_CAP if cap is None else cap
    count = hom_count(group, group)
    if count > ring_cap:
        raise rings.RingCapError(
            f"|End| = {count} exceeds the ring construction cap {ring_cap}")
    endos = enumerate_homs(group, group, cap=max(count, 1))
    index = {h.matrix: k for k, h in enumerate(endos)}
    n = len(endos)
    add_table = [[index[add(a, b).matrix] for b in endos] for a in endos]
    mul_table = [[index[compose(a, b).matrix] for b in endos] for a in endos]
    zero_index = index[Homomorphism.zero(group, group).matrix]
    one_index = index[Homomorphism.identity(group).matrix]
    return rings.FiniteRing(
        order=n,
        add_table=tuple(map(tuple, add_table)),
        mul_table=tuple(map(tuple, mul_table)),
        zero_index=zero_index,
        one_index=one_index,
        labels=tuple(str(h.matrix) for h in endos),
        cap=ring_cap,
    )


def direct_sum_with_maps(a: FgAbGroup, b: FgAbGroup):
    """Canonical form of a (+) b with injections and projections.

    Returns (total, inj_a, inj_b, proj_a, proj_b).  The canonical form can
    recombine coprime factors, so the maps carry the change of coordinates.
    """
    na, nb = a.num_factors, b.num_factors
    n = na + nb
    facs = list(a.invariant_factors) + list(b.invariant_factors)
    rel = [[facs[i] if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 0:
        triv = FgAbGroup.trivial()
        z = Homomorphism.zero(triv, triv)
        return triv, z, z, z, z
    total, proj, lift = _quotient_presentation(rel, n)
    k = total.num_factors
    inj_a = Homomorphism(a, total,
                         tuple(tuple(proj[r][i] for i in range(na))
                               for r in range(k)))
    inj_b = Homomorphism(b, total,
                         tuple(tuple(proj[r][na + i] for i in range(nb))
                               for r in range(k)))
    proj_a = Homomorphism(total, a,
                          tuple(tuple(lift[i][c] for c in range(k))
                                for i in range(na)))
    proj_b = Homomorphism(total, b,
                          tuple(tuple(lift[na + i][c] for c in range(k))
                                for i in range(nb)))
    return total, inj_a, inj_b, proj_a, proj_b
