"""Four-term exact sequences of abelian groups and their endomorphism rings.

A sequence packages four groups and three maps,

    h_top --b--> (h_bot tensor Z/2) --i--> pi --h--> h_mid --> 0,

with h_top free abelian, exactness at the two interior spots and h
surjective.  A morphism between two sequences is a triple of maps on the
h-groups that admits a witness map omega on pi making the evident ladder
commute; the witness itself is not part of the morphism's identity.

Endomorphism triples of a fixed sequence form a ring under componentwise
addition and composition.  For finite sequences the full ring is assembled
as explicit tables; when the top group is non-trivial (hence the ring
infinite) membership can still be decided pointwise.

Witness existence is a finite system of linear congruences in the entries of
omega, solved exactly through Smith normal form; `omega_solve` returns the
deterministic minimal solution.  `PairSolutionSpace` solves the same system
with the triple entries treated as unknowns too, which yields the lattice of
all morphism triples at once and is what `end_gamma` and the survey build on.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import abelian as ab
from . import intlinalg as la
from . import rings as rg
from .abelian import FgAbGroup, Homomorphism


class BSquareError(ValueError):
    """The given triple fails the square over the tensor part: it is not a
    morphism candidate, as opposed to a candidate with no witness."""


class InfiniteEndRingError(RuntimeError):
    """Raised by ring assembly on sequences with an infinite group."""


@dataclass(frozen=True)
class GammaSequence:
    """The four groups and three maps, with signatures checked on creation."""

    h_top: FgAbGroup
    h_mid: FgAbGroup
    h_bot: FgAbGroup
    pi: FgAbGroup
    b: Homomorphism
    i: Homomorphism
    h: Homomorphism

    def __post_init__(self):
        tensor_bot = ab.tensor_Z2(self.h_bot)
        if self.b.source != self.h_top or self.b.target != tensor_bot:
            raise ab.SignatureError("b must map h_top into h_bot tensor Z/2")
        if self.i.source != tensor_bot or self.i.target != self.pi:
            raise ab.SignatureError("i must map h_bot tensor Z/2 into pi")
        if self.h.source != self.pi or self.h.target != self.h_mid:
            raise ab.SignatureError("h must map pi onto h_mid")

    @property
    def tensor_bot(self) -> FgAbGroup:
        return self.b.target

    def groups_finite(self) -> bool:
        return all(g.is_finite for g in (self.h_top, self.h_mid, self.h_bot, self.pi))

    def describe(self) -> str:
        return (f"[{self.h_top}] -> [{self.tensor_bot}] -> [{self.pi}] "
                f"-> [{self.h_mid}] -> 0  (bottom homology {self.h_bot})")


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    degenerate: bool
    failures: tuple[str, ...]

    def as_dict(self) -> dict:
        return {"valid": self.valid, "degenerate": self.degenerate,
                "failures": list(self.failures)}


def validate_sequence(s: GammaSequence) -> ValidationReport:
    """Check freeness of the top group, both exactness spots and surjectivity.

    Signature mismatches are raised when the sequence is built; this report
    only covers the mathematical invariants.  The all-trivial sequence is
    valid and flagged as degenerate.
    """
    failures = []
    if not s.h_top.is_free:
        failures.append("top group has torsion (must be free abelian)")
    for name, hom in (("b", s.b), ("i", s.i), ("h", s.h)):
        if not ab.validate_hom(hom):
            failures.append(f"map {name} is not well-defined")
    if not failures:
        if ab.subgroup_lattice(s.b).key() != ab.kernel_lattice(s.i).key():
            failures.append("not exact at the tensor spot: image(b) != kernel(i)")
        if ab.subgroup_lattice(s.i).key() != ab.kernel_lattice(s.h).key():
            failures.append("not exact at pi: image(i) != kernel(h)")
        if not ab.is_surjective(s.h):
            failures.append("h is not surjective")
    degenerate = (s.h_top.is_trivial and s.h_mid.is_trivial
                  and s.h_bot.is_trivial and s.pi.is_trivial)
    return ValidationReport(valid=not failures, degenerate=degenerate,
                            failures=tuple(failures))


@dataclass(frozen=True)
class GammaMorphism:
    """A triple of maps on the h-groups, with an optional witness on pi."""

    source: GammaSequence
    target: GammaSequence
    f_top: Homomorphism
    f_mid: Homomorphism
    f_bot: Homomorphism
    omega: Homomorphism | None = None

    def __post_init__(self):
        if (self.f_top.source != self.source.h_top
                or self.f_top.target != self.target.h_top):
            raise ab.SignatureError("f_top signature mismatch")
        if (self.f_mid.source != self.source.h_mid
                or self.f_mid.target != self.target.h_mid):
            raise ab.SignatureError("f_mid signature mismatch")
        if (self.f_bot.source != self.source.h_bot
                or self.f_bot.target != self.target.h_bot):
            raise ab.SignatureError("f_bot signature mismatch")
        if self.omega is not None and (self.omega.source != self.source.pi
                                       or self.omega.target != self.target.pi):
            raise ab.SignatureError("omega signature mismatch")

    def triple_key(self):
        return (self.f_top.matrix, self.f_mid.matrix, self.f_bot.matrix)


def identity_morphism(s: GammaSequence) -> GammaMorphism:
    return GammaMorphism(s, s,
                         Homomorphism.identity(s.h_top),
                         Homomorphism.identity(s.h_mid),
                         Homomorphism.identity(s.h_bot),
                         omega=Homomorphism.identity(s.pi))


def zero_morphism(src: GammaSequence, dst: GammaSequence) -> GammaMorphism:
    return GammaMorphism(src, dst,
                         Homomorphism.zero(src.h_top, dst.h_top),
                         Homomorphism.zero(src.h_mid, dst.h_mid),
                         Homomorphism.zero(src.h_bot, dst.h_bot),
                         omega=Homomorphism.zero(src.pi, dst.pi))


def morphism_add(m1: GammaMorphism, m2: GammaMorphism) -> GammaMorphism:
    if m1.source is not m2.source and m1.source != m2.source:
        raise ab.SignatureError("morphism_add: different sources")
    omega = None
    if m1.omega is not None and m2.omega is not None:
        omega = ab.add(m1.omega, m2.omega)
    return GammaMorphism(m1.source, m1.target,
                         ab.add(m1.f_top, m2.f_top),
                         ab.add(m1.f_mid, m2.f_mid),
                         ab.add(m1.f_bot, m2.f_bot),
                         omega=omega)


def morphism_compose(m2: GammaMorphism, m1: GammaMorphism) -> GammaMorphism:
    """The composite m2 after m1."""
    if m1.target != m2.source:
        raise ab.SignatureError("morphism_compose: signatures do not chain")
    omega = None
    if m1.omega is not None and m2.omega is not None:
        omega = ab.compose(m2.omega, m1.omega)
    return GammaMorphism(m1.source, m2.target,
                         ab.compose(m2.f_top, m1.f_top),
                         ab.compose(m2.f_mid, m1.f_mid),
                         ab.compose(m2.f_bot, m1.f_bot),
                         omega=omega)


def morphism_commutes(m: GammaMorphism) -> bool:
    """Check the full ladder for a morphism carrying its witness."""
    if m.omega is None:
        return False
    src, dst = m.source, m.target
    tf_bot = ab.tensor_Z2_map(m.f_bot)
    b_square = ab.compose(tf_bot, src.b) == ab.compose(dst.b, m.f_top)
    i_square = ab.compose(m.omega, src.i) == ab.compose(dst.i, tf_bot)
    h_square = ab.compose(dst.h, m.omega) == ab.compose(m.f_mid, src.h)
    return b_square and i_square and h_square


# ---------------------------------------------------------------------------
# Witness solving
# ---------------------------------------------------------------------------

def _check_candidate_signatures(src, dst, f_top, f_mid, f_bot):
    if f_top.source != src.h_top or f_top.target != dst.h_top:
        raise ab.SignatureError("f_top signature mismatch")
    if f_mid.source != src.h_mid or f_mid.target != dst.h_mid:
        raise ab.SignatureError("f_mid signature mismatch")
    if f_bot.source != src.h_bot or f_bot.target != dst.h_bot:
        raise ab.SignatureError("f_bot signature mismatch")


def omega_solve(src: GammaSequence, dst: GammaSequence,
                f_top: Homomorphism, f_mid: Homomorphism,
                f_bot: Homomorphism) -> Homomorphism | None:
    """A witness omega for the given triple, or None if none exists.

    The square over the tensor part is checked first; its failure raises
    BSquareError since such a triple is not a morphism candidate at all.
    The unknown matrix of omega is flattened into a vector; well-definedness
    on pi's presentation plus the two commutation constraints form a finite
    system of linear congruences decided through Smith normal form.  The
    returned witness is the deterministic minimal solution.
    """
    _check_candidate_signatures(src, dst, f_top, f_mid, f_bot)
    tf_bot = ab.tensor_Z2_map(f_bot)
    if ab.compose(tf_bot, src.b) != ab.compose(dst.b, f_top):
        raise BSquareError("square over the tensor part does not commute")

    p_src = src.pi.invariant_factors
    p_dst = dst.pi.invariant_factors
    n_src, n_dst = len(p_src), len(p_dst)
    nvars = n_dst * n_src

    def var(j: int, k: int) -> int:
        return j * n_src + k

    rows, rhs, moduli = [], [], []

    # omega must be well-defined on pi's presentation
    for k, d in enumerate(p_src):
        if d == 0:
            continue
        for j, dt in enumerate(p_dst):
            if dt == 0:
                row = [0] * nvars
                row[var(j, k)] = 1
                rows.append(row)
                rhs.append(0)
                moduli.append(0)
            else:
                step = dt // math.gcd(d, dt)
                if step > 1:
                    row = [0] * nvars
                    row[var(j, k)] = 1
                    rows.append(row)
                    rhs.append(0)
                    moduli.append(step)

    # omega o i_src == i_dst o (f_bot tensor Z/2)
    target_i = ab.compose(dst.i, tf_bot)
    n_tensor = src.tensor_bot.num_factors
    for j in range(n_dst):
        for c in range(n_tensor):
            row = [0] * nvars
            for k in range(n_src):
                coeff = src.i.matrix[k][c]
                if coeff:
                    row[var(j, k)] += coeff
            rows.append(row)
            rhs.append(target_i.matrix[j][c])
            moduli.append(p_dst[j])

    # h_dst o omega == f_mid o h_src
    target_h = ab.compose(f_mid, src.h)
    n_mid = dst.h_mid.num_factors
    for r in range(n_mid):
        for c in range(n_src):
            row = [0] * nvars
            for j in range(n_dst):
                coeff = dst.h.matrix[r][j]
                if coeff:
                    row[var(j, c)] += coeff
            rows.append(row)
            rhs.append(target_h.matrix[r][c])
            moduli.append(dst.h_mid.invariant_factors[r])

    sol = la.solve_congruences(rows, rhs, moduli, ncols=nvars)
    if sol is None:
        return None
    matrix = tuple(tuple(sol[var(j, k)] for k in range(n_src))
                   for j in range(n_dst))
    omega = Homomorphism(src.pi, dst.pi, matrix)
    assert ab.validate_hom(omega)
    assert ab.compose(omega, src.i) == target_i
    assert ab.compose(dst.h, omega) == target_h
    return omega


def omega_brute_force(src: GammaSequence, dst: GammaSequence,
                      f_top: Homomorphism, f_mid: Homomorphism,
                      f_bot: Homomorphism,
                      cap: int = ab.DEFAULT_ENUMERATION_CAP) -> Homomorphism | None:
    """Exhaustive witness search over Hom(pi, pi'); the solver's test oracle."""
    _check_candidate_signatures(src, dst, f_top, f_mid, f_bot)
    tf_bot = ab.tensor_Z2_map(f_bot)
    if ab.compose(tf_bot, src.b) != ab.compose(dst.b, f_top):
        raise BSquareError("square over the tensor part does not commute")
    target_i = ab.compose(dst.i, tf_bot)
    target_h = ab.compose(f_mid, src.h)
    for omega in ab.enumerate_homs(src.pi, dst.pi, cap=cap):
        if (ab.compose(omega, src.i) == target_i
                and ab.compose(dst.h, omega) == target_h):
            return omega
    return None


def is_gamma_morphism(src: GammaSequence, dst: GammaSequence,
                      f_top: Homomorphism, f_mid: Homomorphism,
                      f_bot: Homomorphism) -> bool:
    """True iff the square over the tensor part commutes and a witness exists."""
    try:
        return omega_solve(src, dst, f_top, f_mid, f_bot) is not None
    except BSquareError:
        return False


def membership_predicate(s: GammaSequence, f_top: Homomorphism,
                         f_mid: Homomorphism, f_bot: Homomorphism) -> bool:
    """Decide membership of a triple in End of the sequence.

    Identical decision to `is_gamma_morphism(s, s, ...)`; this is the probe
    for sequences whose endomorphism ring is infinite.
    """
    return is_gamma_morphism(s, s, f_top, f_mid, f_bot)


# ---------------------------------------------------------------------------
# The joint solution lattice over (f_top, f_mid, f_bot, omega)
# ---------------------------------------------------------------------------

@dataclass
class _Block:
    name: str
    source: FgAbGroup
    target: FgAbGroup
    offset: int

    @property
    def shape(self) -> tuple[int, int]:
        return (self.target.num_factors, self.source.num_factors)

    @property
    def size(self) -> int:
        r, c = self.shape
        return r * c

    def var(self, j: int, k: int) -> int:
        return self.offset + j * self.source.num_factors + k

    def matrix_from(self, vec) -> tuple[tuple[int, ...], ...]:
        r, c = self.shape
        return tuple(tuple(vec[self.offset + jj * c + kk] for kk in range(c))
                     for jj in range(r))


class PairSolutionSpace:
    """All morphism triples from src to dst, as a lattice in matrix entries.

    The entries of (f_top, f_mid, f_bot, omega) are unknowns of one
    homogeneous system of linear congruences (well-definedness of each block
    plus the three commuting squares).  Its solution lattice, projected onto
    the triple entries, answers membership queries; a basis of the projection
    is kept together with omega lifts so witnesses come for free.
    """

    def __init__(self, src: GammaSequence, dst: GammaSequence):
        self.src = src
        self.dst = dst
        blocks = {}
        offset = 0
        for name, s_grp, t_grp in (
            ("top", src.h_top, dst.h_top),
            ("mid", src.h_mid, dst.h_mid),
            ("bot", src.h_bot, dst.h_bot),
        ):
            blocks[name] = _Block(name, s_grp, t_grp, offset)
            offset += blocks[name].size
        self.triple_dim = offset
        blocks["omega"] = _Block("omega", src.pi, dst.pi, offset)
        offset += blocks["omega"].size
        self.blocks = blocks
        self.total_dim = offset
        rows, moduli = self._assemble()
        kernel = la.congruence_kernel(rows, moduli, ncols=self.total_dim)
        self.basis, self.omega_lifts = self._project(kernel)
        self._lattice = la.Lattice(self.basis, self.triple_dim)

    # -- system assembly --

    def _assemble(self):
        import math

        rows, moduli = [], []
        nvars = self.total_dim

        def well_defined(block: _Block):
            for k, d in enumerate(block.source.invariant_factors):
                if d == 0:
                    continue
                for j, dt in enumerate(block.target.invariant_factors):
                    if dt == 0:
                        row = [0] * nvars
                        row[block.var(j, k)] = 1
                        rows.append(row)
                        moduli.append(0)
                    else:
                        step = dt // math.gcd(d, dt)
                        if step > 1:
                            row = [0] * nvars
                            row[block.var(j, k)] = 1
                            rows.append(row)
                            moduli.append(step)

        for name in ("top", "mid", "bot", "omega"):
            well_defined(self.blocks[name])

        src, dst = self.src, self.dst
        top, mid, bot, omega = (self.blocks[n] for n in ("top", "mid", "bot", "omega"))
        # index maps realising the tensor functor on the bot block
        src_rows = ab.tensor_Z2_indices(src.h_bot)
        dst_rows = ab.tensor_Z2_indices(dst.h_bot)

        # (f_bot tensor Z/2) o b_src == b_dst o f_top, modulo 2 throughout
        for tj, bj in enumerate(dst_rows):
            for c in range(src.h_top.num_factors):
                row = [0] * nvars
                for tk, bk in enumerate(src_rows):
                    coeff = src.b.matrix[tk][c]
                    if coeff:
                        row[bot.var(bj, bk)] += coeff
                for k in range(dst.h_top.num_factors):
                    coeff = dst.b.matrix[tj][k]
                    if coeff:
                        row[top.var(k, c)] -= coeff
                rows.append(row)
                moduli.append(2)

        # omega o i_src == i_dst o (f_bot tensor Z/2), modulo pi_dst factors
        p_dst = dst.pi.invariant_factors
        for j in range(dst.pi.num_factors):
            for tc, bc in enumerate(src_rows):
                row = [0] * nvars
                for k in range(src.pi.num_factors):
                    coeff = src.i.matrix[k][tc]
                    if coeff:
                        row[omega.var(j, k)] += coeff
                for tk, bk in enumerate(dst_rows):
                    coeff = dst.i.matrix[j][tk]
                    if coeff:
                        row[bot.var(bk, bc)] -= coeff
                rows.append(row)
                moduli.append(p_dst[j])

        # h_dst o omega == f_mid o h_src, modulo h_mid_dst factors
        d_mid = dst.h_mid.invariant_factors
        for r in range(dst.h_mid.num_factors):
            for c in range(src.pi.num_factors):
                row = [0] * nvars
                for j in range(dst.pi.num_factors):
                    coeff = dst.h.matrix[r][j]
                    if coeff:
                        row[omega.var(j, c)] += coeff
                for k in range(src.h_mid.num_factors):
                    coeff = src.h.matrix[k][c]
                    if coeff:
                        row[mid.var(r, k)] -= coeff
                rows.append(row)
                moduli.append(d_mid[r])
        return rows, moduli

    def _project(self, kernel):
        """Column-reduce kernel vectors on the triple coordinates, carrying
        the omega parts along; pure-omega solutions are dropped."""
        pairs = [(vec[:self.triple_dim], vec[self.triple_dim:]) for vec in kernel]
        basis, lifts = [], []
        work = [(list(t), list(o)) for t, o in pairs if any(t)]
        for r in range(self.triple_dim):
            active = [(t, o) for t, o in work if t[r] != 0]
            if not active:
                continue
            rest = [(t, o) for t, o in work if t[r] == 0]
            while len(active) > 1:
                active.sort(key=lambda p: abs(p[0][r]))
                bt, bo = active[0]
                new_active = [(bt, bo)]
                for t, o in active[1:]:
                    q = t[r] // bt[r]
                    t2 = [x - q * y for x, y in zip(t, bt)]
                    o2 = [x - q * y for x, y in zip(o, bo)]
                    if t2[r]:
                        new_active.append((t2, o2))
                    elif any(t2):
                        rest.append((t2, o2))
                if len(new_active) == 1:
                    active = new_active
                    break
                active = new_active
            bt, bo = active[0]
            if bt[r] < 0:
                bt = [-x for x in bt]
                bo = [-x for x in bo]
            basis.append(bt)
            lifts.append(bo)
            work = rest
        return basis, lifts

    # -- queries --

    def _flatten(self, f_top, f_mid, f_bot):
        vec = []
        for name, hom in (("top", f_top), ("mid", f_mid), ("bot", f_bot)):
            blk = self.blocks[name]
            if (hom.source != blk.source) or (hom.target != blk.target):
                raise ab.SignatureError(f"f_{name} signature mismatch")
            for row in hom.matrix:
                vec.extend(row)
        return vec

    def accepts(self, f_top: Homomorphism, f_mid: Homomorphism,
                f_bot: Homomorphism) -> bool:
        """Membership of the triple, decided against the projected lattice."""
        return self._lattice.contains(self._flatten(f_top, f_mid, f_bot))

    def triple_relation_columns(self):
        cols = []
        for name in ("top", "mid", "bot"):
            blk = self.blocks[name]
            r, c = blk.shape
            for j, dt in enumerate(blk.target.invariant_factors):
                if dt == 0:
                    continue
                for k in range(c):
                    col = [0] * self.triple_dim
                    col[blk.var(j, k)] = dt
                    cols.append(col)
        return cols

    def quotient_morphisms(self, cap: int) -> list[GammaMorphism]:
        """Enumerate the triples modulo matrix-entry relations, with witnesses.

        Requires the quotient to be finite (no free target coordinate in the
        triple blocks); raises InfiniteEndRingError otherwise.
        """
        for name in ("top", "mid", "bot"):
            if not self.blocks[name].target.is_finite:
                raise InfiniteEndRingError("infinite case: use membership predicate")
        if not self.basis:
            return [self._morphism_from([0] * self.triple_dim,
                                        [0] * (self.total_dim - self.triple_dim))]
        bmat = la.transpose(self.basis)
        rel_coords = []
        for col in self.triple_relation_columns():
            coords = la.solve_exact(bmat, col)
            if coords is None:
                raise AssertionError("relations must lie in the solution lattice")
            rel_coords.append(coords)
        rel_matrix = (la.transpose(rel_coords) if rel_coords
                      else [[] for _ in range(len(self.basis))])
        grp, _, lift = ab._quotient_presentation(rel_matrix, len(self.basis))
        if not grp.is_finite:
            raise InfiniteEndRingError("infinite case: use membership predicate")
        if grp.order() > cap:
            raise rg.RingCapError(
                f"|End| = {grp.order()} exceeds the ring cap {cap}")
        gens = []
        for t in range(grp.num_factors):
            coeffs = [lift[rr][t] for rr in range(len(self.basis))]
            tvec = [sum(c * self.basis[rr][d] for rr, c in enumerate(coeffs))
                    for d in range(self.triple_dim)]
            ovec = [sum(c * self.omega_lifts[rr][d] for rr, c in enumerate(coeffs))
                    for d in range(self.total_dim - self.triple_dim)]
            gens.append((tvec, ovec))
        out = []
        for combo in itertools.product(
                *(range(d) for d in grp.invariant_factors)):
            tvec = [0] * self.triple_dim
            ovec = [0] * (self.total_dim - self.triple_dim)
            for c, (gt, go) in zip(combo, gens):
                if c:
                    for d in range(self.triple_dim):
                        tvec[d] += c * gt[d]
                    for d in range(len(ovec)):
                        ovec[d] += c * go[d]
            out.append(self._morphism_from(tvec, ovec))
        return out

    def _morphism_from(self, tvec, ovec) -> GammaMorphism:
        full = list(tvec) + list(ovec)
        top = self.blocks["top"].matrix_from(full)
        mid = self.blocks["mid"].matrix_from(full)
        bot = self.blocks["bot"].matrix_from(full)
        om = self.blocks["omega"].matrix_from(full)
        return GammaMorphism(
            self.src, self.dst,
            Homomorphism(self.src.h_top, self.dst.h_top, top),
            Homomorphism(self.src.h_mid, self.dst.h_mid, mid),
            Homomorphism(self.src.h_bot, self.dst.h_bot, bot),
            omega=Homomorphism(self.src.pi, self.dst.pi, om),
        )


# ---------------------------------------------------------------------------
# End and Aut of a sequence
# ---------------------------------------------------------------------------

@dataclass
class EndGammaRing:
    """The endomorphism ring of a finite sequence with its element list."""

    sequence: GammaSequence
    ring: rg.FiniteRing
    elements: list[GammaMorphism]

    def index_of(self, f_mid: Homomorphism, f_bot: Homomorphism) -> int:
        f_top = Homomorphism.zero(self.sequence.h_top, self.sequence.h_top)
        key = (f_top.matrix, f_mid.matrix, f_bot.matrix)
        for k, m in enumerate(self.elements):
            if m.triple_key() == key:
                return k
        raise KeyError("triple is not an endomorphism of the sequence")


def end_gamma(s: GammaSequence, cap: int = rg.DEFAULT_RING_CAP) -> EndGammaRing:
    """Assemble the full endomorphism ring of a sequence with finite groups.

    A free top group forces the ring to be infinite, so finiteness of all
    four groups (hence a trivial top) is required; probe infinite cases with
    `membership_predicate` instead.
    """
    if not s.groups_finite():
        raise InfiniteEndRingError("infinite case: use membership predicate")
    space = PairSolutionSpace(s, s)
    elements = space.quotient_morphisms(cap)
    index = {m.triple_key(): k for k, m in enumerate(elements)}
    assert len(index) == len(elements)
    n = len(elements)
    add_rows = []
    mul_rows = []
    for m1 in elements:
        arow = []
        mrow = []
        for m2 in elements:
            arow.append(index[morphism_add(m1, m2).triple_key()])
            mrow.append(index[morphism_compose(m1, m2).triple_key()])
        add_rows.append(tuple(arow))
        mul_rows.append(tuple(mrow))
    zero_idx = index[zero_morphism(s, s).triple_key()]
    one_idx = index[identity_morphism(s).triple_key()]
    ring = rg.FiniteRing(n, tuple(add_rows), tuple(mul_rows), zero_idx, one_idx,
                         labels=tuple(str(m.triple_key()) for m in elements),
                         cap=cap)
    return EndGammaRing(sequence=s, ring=ring, elements=elements)


@dataclass
class GammaAutGroup:
    """The unit group of the endomorphism ring, with its composition table."""

    sequence: GammaSequence
    order: int
    elements: list[GammaMorphism]
    mul_table: tuple[tuple[int, ...], ...]
    identity_index: int

    @property
    def is_trivial(self) -> bool:
        return self.order == 1


def aut_gamma(s: GammaSequence, cap: int = rg.DEFAULT_RING_CAP) -> GammaAutGroup:
    """Units of the endomorphism ring: the group of self-equivalences."""
    end = end_gamma(s, cap=cap)
    ring = end.ring
    unit_indices = ring.units()
    pos = {u: k for k, u in enumerate(unit_indices)}
    table = tuple(
        tuple(pos[ring.mul_table[a][b]] for b in unit_indices)
        for a in unit_indices
    )
    return GammaAutGroup(
        sequence=s,
        order=len(unit_indices),
        elements=[end.elements[u] for u in unit_indices],
        mul_table=table,
        identity_index=pos[ring.one_index],
    )
