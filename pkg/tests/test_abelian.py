import math

import pytest
from hypothesis import given, settings, strategies as st

from gammaseq import abelian as ab
from gammaseq.abelian import FgAbGroup, Homomorphism


def G(*factors):
    return FgAbGroup.from_factors(factors)


small_groups = st.lists(
    st.integers(min_value=0, max_value=12), min_size=0, max_size=3
).map(lambda fs: FgAbGroup.from_factors(fs))

finite_groups = st.lists(
    st.integers(min_value=2, max_value=8), min_size=0, max_size=3
).map(lambda fs: FgAbGroup.from_factors(fs))


def random_hom(source, target, draw_ints):
    """A valid homomorphism built from the hom-group generators."""
    _, basis = ab.hom_group(source, target)
    h = Homomorphism.zero(source, target)
    for gen, c in zip(basis, draw_ints):
        scaled = gen
        for _ in range(c % 5):
            h = ab.add(h, gen)
    return h


hom_coeffs = st.lists(st.integers(min_value=0, max_value=4), min_size=0, max_size=12)


class TestFgAbGroup:
    def test_canonical_validation(self):
        with pytest.raises(ValueError):
            FgAbGroup((1, 2))
        with pytest.raises(ValueError):
            FgAbGroup((4, 2))  # broken divisibility chain
        with pytest.raises(ValueError):
            FgAbGroup((0, 2))  # free factor must come last

    def test_from_factors_canonicalizes(self):
        assert G(6, 4).invariant_factors == (2, 12)
        assert G(2, 3).invariant_factors == (6,)
        assert G(1, 1).is_trivial
        assert G(0, 4, 3, 0).invariant_factors == (12, 0, 0)

    def test_isomorphism_is_equality(self):
        assert G(2, 3) == G(6)
        assert G(2, 4) != G(8)

    def test_order_and_rank(self):
        assert G().order() == 1
        assert G(4, 2).order() == 8
        assert G(0, 2).rank == 1
        with pytest.raises(ab.InfiniteGroupError):
            G(0).order()


class TestCanonicalize:
    def test_diagonal_with_free_generator(self):
        assert ab.canonicalize([[2, 0, 0], [0, 1, 0], [0, 0, 0]]) == G(2, 0)

    def test_2x2(self):
        assert ab.canonicalize([[2, 4], [6, 8]]) == G(2, 4)

    def test_empty_relations(self):
        assert ab.canonicalize([[0], [0]]) == G(0, 0)

    @settings(max_examples=50, deadline=None)
    @given(small_groups)
    def test_idempotent(self, group):
        n = group.num_factors
        pres = [[group.invariant_factors[i] if i == j else 0 for j in range(n)]
                for i in range(n)]
        assert ab.canonicalize(pres) == group


class TestHomomorphism:
    def test_validate(self):
        z2, z4 = G(2), G(4)
        assert ab.validate_hom(Homomorphism(z2, z4, ((1,),))) is False
        assert ab.validate_hom(Homomorphism(z2, z4, ((2,),))) is True
        assert ab.validate_hom(Homomorphism.zero(z4, z2)) is True

    def test_finite_to_free_must_vanish(self):
        assert ab.validate_hom(Homomorphism(G(2), G(0), ((1,),))) is False
        assert ab.validate_hom(Homomorphism(G(2), G(0), ((0,),))) is True

    def test_dimension_mismatch_is_an_error(self):
        with pytest.raises(ab.SignatureError):
            Homomorphism(G(2), G(4), ((1, 1),))

    def test_compose_identity(self):
        z6 = G(6)
        f = Homomorphism(z6, z6, ((4,),))
        assert ab.compose(Homomorphism.identity(z6), f) == f
        assert ab.compose(f, Homomorphism.identity(z6)) == f

    def test_additive_inverse(self):
        f = Homomorphism(G(4), G(4), ((3,),))
        assert ab.add(f, ab.neg(f)).is_zero()

    def test_mult2_squared_on_z4(self):
        f = Homomorphism(G(4), G(4), ((2,),))
        assert ab.compose(f, f).is_zero()

    def test_apply(self):
        f = Homomorphism(G(4), G(2), ((1,),))
        x = ab.GroupElement(G(4), (3,))
        assert f.apply(x).coords == (1,)


class TestSubquotients:
    def test_kernel_of_mult2_on_z4(self):
        f = Homomorphism(G(4), G(4), ((2,),))
        ker, incl = ab.kernel(f)
        assert ker == G(2)
        # the subgroup {0, 2} of Z/4
        assert incl.matrix == ((2,),)
        assert ab.validate_hom(incl)

    def test_image_of_zero_map(self):
        img, _ = ab.image(Homomorphism.zero(G(4), G(6)))
        assert img.is_trivial

    def test_cokernel_of_doubling_on_z(self):
        f = Homomorphism(G(0), G(0), ((2,),))
        cok, proj = ab.cokernel(f)
        assert cok == G(2)
        assert proj.matrix == ((1,),)

    def test_kernel_image_multiplicativity(self):
        f = Homomorphism(G(4, 2), G(4, 2), ((2, 0), (0, 1)))
        ker, _ = ab.kernel(f)
        img, _ = ab.image(f)
        assert ker.order() * img.order() == G(4, 2).order()

    @settings(max_examples=60, deadline=None)
    @given(finite_groups, finite_groups, hom_coeffs)
    def test_order_conservation(self, gsrc, gtgt, coeffs):
        h = random_hom(gsrc, gtgt, coeffs)
        ker, kincl = ab.kernel(h)
        img, iincl = ab.image(h)
        assert ker.order() * img.order() == gsrc.order()
        assert ab.validate_hom(kincl) and ab.validate_hom(iincl)
        # inclusions compose into the ambient correctly
        assert ab.compose(h, kincl).is_zero()

    @settings(max_examples=60, deadline=None)
    @given(finite_groups, finite_groups, hom_coeffs)
    def test_factor_through_image(self, gsrc, gtgt, coeffs):
        h = random_hom(gsrc, gtgt, coeffs)
        img, incl, corest = ab.factor_through_image(h)
        assert ab.compose(incl, corest) == h
        assert ab.is_surjective(corest)


class TestTensorZ2:
    def test_mixed_group(self):
        assert ab.tensor_Z2(G(0, 0, 4, 3)) == G(2, 2, 2)

    def test_odd_group_dies(self):
        assert ab.tensor_Z2(G(3)).is_trivial

    def test_identity_functorial(self):
        group = G(2, 4, 3)
        assert ab.tensor_Z2_map(Homomorphism.identity(group)) == \
            Homomorphism.identity(ab.tensor_Z2(group))

    @settings(max_examples=60, deadline=None)
    @given(finite_groups, finite_groups, finite_groups, hom_coeffs, hom_coeffs)
    def test_functoriality(self, a, b, c, c1, c2):
        f = random_hom(a, b, c1)
        g = random_hom(b, c, c2)
        lhs = ab.tensor_Z2_map(ab.compose(g, f))
        rhs = ab.compose(ab.tensor_Z2_map(g), ab.tensor_Z2_map(f))
        assert lhs == rhs


class TestHomGroups:
    def test_end_of_klein_four_has_16_elements(self):
        grp, _ = ab.hom_group(G(2, 2), G(2, 2))
        assert grp.order() == 16

    def test_hom_z4_z6(self):
        grp, _ = ab.hom_group(G(4), G(6))
        assert grp == G(2)

    def test_enumerate_homs_z2_to_z4(self):
        homs = ab.enumerate_homs(G(2), G(4))
        assert len(homs) == 2
        assert {h.matrix for h in homs} == {((0,),), ((2,),)}

    def test_homs_from_trivial(self):
        homs = ab.enumerate_homs(G(), G(4, 2))
        assert len(homs) == 1
        assert homs[0].is_zero()

    def test_enumerate_elements(self):
        elems = ab.enumerate_elements(G(2, 2))
        assert len(elems) == 4
        assert len({e.coords for e in elems}) == 4

    def test_infinite_enumeration_rejected(self):
        with pytest.raises(ab.InfiniteGroupError):
            ab.enumerate_elements(G(0))
        with pytest.raises(ab.InfiniteGroupError):
            ab.enumerate_homs(G(0), G(0))

    def test_cap(self):
        with pytest.raises(ab.EnumerationCapError):
            ab.enumerate_homs(G(8, 8), G(8, 8), cap=10)

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(st.integers(min_value=2, max_value=32), min_size=0, max_size=2),
        st.lists(st.integers(min_value=2, max_value=32), min_size=0, max_size=2),
    )
    def test_hom_group_order_matches_enumeration(self, fs, gs):
        gsrc, gtgt = G(*fs), G(*gs)
        if gsrc.order() > 32 or gtgt.order() > 32:
            return
        grp, basis = ab.hom_group(gsrc, gtgt)
        homs = ab.enumerate_homs(gsrc, gtgt)
        assert grp.order() == len(homs) == ab.hom_count(gsrc, gtgt)
        assert len({h.matrix for h in homs}) == len(homs)
        assert all(ab.validate_hom(h) for h in homs)


class TestEndRing:
    def test_end_ring_of_cyclic_matches_modular_arithmetic(self):
        from gammaseq import rings

        for n in range(2, 17):
            ring = ab.end_ring(G(n))
            assert ring.order == n
            witness = rings.brute_iso(ring, rings.cyclic_ring(n))
            assert witness is not None

    def test_end_ring_order_of_elementary_square(self):
        assert ab.end_ring(G(2, 2)).order == 16

    def test_end_ring_infinite(self):
        with pytest.raises(ab.InfiniteGroupError):
            ab.end_ring(G(0, 2))


class TestDirectSum:
    @settings(max_examples=50, deadline=None)
    @given(small_groups, small_groups)
    def test_projection_sections(self, a, b):
        total, inj_a, inj_b, proj_a, proj_b = ab.direct_sum_with_maps(a, b)
        assert ab.compose(proj_a, inj_a) == Homomorphism.identity(a)
        assert ab.compose(proj_b, inj_b) == Homomorphism.identity(b)
        assert ab.compose(proj_b, inj_a).is_zero()
        assert ab.compose(proj_a, inj_b).is_zero()
        recomposed = ab.add(ab.compose(inj_a, proj_a), ab.compose(inj_b, proj_b))
        assert recomposed == Homomorphism.identity(total)

    def test_coprime_recombination(self):
        total, inj_a, inj_b, _, _ = ab.direct_sum_with_maps(G(2), G(3))
        assert total == G(6)
        assert ab.validate_hom(inj_a) and ab.validate_hom(inj_b)
