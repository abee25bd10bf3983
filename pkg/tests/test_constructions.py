import pytest

from gammaseq import abelian as ab
from gammaseq import constructions as cons
from gammaseq import gamma as gm
from gammaseq import rings
from gammaseq.abelian import FgAbGroup, Homomorphism


def G(*factors):
    return FgAbGroup.from_factors(factors)


TRIV = FgAbGroup.trivial()


class TestBuilders:
    def test_moore_shape(self):
        s = cons.moore(G(4))
        assert s.h_top.is_trivial and s.h_bot.is_trivial
        assert s.pi == s.h_mid == G(4)
        assert s.h.is_identity()
        assert gm.validate_sequence(s).valid

    def test_moore_trivial_is_degenerate(self):
        report = gm.validate_sequence(cons.moore(TRIV))
        assert report.valid and report.degenerate

    def test_split_seq_shape(self):
        s = cons.split_seq(G(2), G(4))
        assert s.h_bot == G(2) and s.h_mid == G(4)
        assert s.pi == G(2, 4)
        assert gm.validate_sequence(s).valid

    def test_split_with_trivial_bottom_behaves_like_moore(self):
        s = cons.split_seq(TRIV, G(6))
        assert s.pi == G(6)
        end = gm.end_gamma(s)
        model = gm.end_gamma(cons.moore(G(6)))
        assert rings.brute_iso(end.ring, model.ring) is not None

    def test_free_top_shape(self):
        s = cons.free_top(1, G(2))
        assert s.h_top == G(0)
        assert s.pi == G(2) and s.h_mid.is_trivial
        assert s.i.is_identity()
        assert gm.validate_sequence(s).valid

    def test_free_top_rank0_trivial_group_is_degenerate(self):
        report = gm.validate_sequence(cons.free_top(0, TRIV))
        assert report.valid and report.degenerate

    def test_triple_seq_rank0_equals_split_seq(self):
        assert cons.triple_seq(0, G(2), G(3)) == cons.split_seq(G(2), G(3))
        assert cons.triple_seq(0, G(2, 4), G(8)) == cons.split_seq(G(2, 4), G(8))

    def test_z4_sequence(self):
        s = cons.z4_seq()
        assert gm.validate_sequence(s).valid
        assert s.pi == G(4)
        end = gm.end_gamma(s)
        assert end.ring.order == 2
        assert gm.aut_gamma(s).is_trivial

    def test_negative_rank_rejected(self):
        with pytest.raises(ValueError):
            cons.triple_seq(-1, G(2), G(2))


class TestSplitDecomposition:
    def test_coordinate_split_roundtrip(self):
        dec = cons.coordinate_split(G(2, 4), [1])
        assert dec.summand_a == G(4) and dec.summand_c == G(2)

    def test_primary_split(self):
        dec = cons.primary_split(G(12), 3)
        assert dec.summand_a == G(3) and dec.summand_c == G(4)

    def test_odd_part_split(self):
        dec = cons.odd_part_split(G(6, 2))
        assert dec.summand_a == G(3)
        assert dec.summand_c == G(2, 2)

    def test_embed_a(self):
        dec = cons.coordinate_split(G(2, 4), [1])
        f = Homomorphism(G(4), G(4), ((3,),))
        emb = dec.embed_a(f)
        assert ab.compose(dec.proj_a, ab.compose(emb, dec.inj_a)) == f
        assert ab.compose(dec.proj_c, ab.compose(emb, dec.inj_c)).is_zero()

    def test_invalid_decomposition_rejected(self):
        z4 = G(4)
        with pytest.raises(cons.DecompositionError):
            cons.SplitDecomposition(
                ambient=z4, summand_a=G(2), summand_c=G(2),
                inj_a=Homomorphism(G(2), z4, ((2,),)),
                inj_c=Homomorphism(G(2), z4, ((2,),)),
                proj_a=Homomorphism(z4, G(2), ((1,),)),
                proj_c=Homomorphism(z4, G(2), ((1,),)),
            )


class TestVerifySplitend:
    def test_split_seq_whole_middle(self):
        s = cons.split_seq(G(2), G(4))
        dec = cons.coordinate_split(s.h_mid, range(s.h_mid.num_factors))
        sigma = cons.find_section(s, dec)
        assert sigma is not None
        dec_pi = cons.pi_split_from_section(s, dec, sigma)
        assert cons.verify_splitend(s, dec, dec_pi)

    def test_trivial_summand_is_vacuous(self):
        s = cons.z4_seq()
        dec = cons.coordinate_split(s.h_mid, [])
        sigma = cons.find_section(s, dec)
        assert sigma is not None
        dec_pi = cons.pi_split_from_section(s, dec, sigma)
        assert cons.verify_splitend(s, dec, dec_pi)

    def test_z4_whole_middle_has_no_section(self):
        # the extension is non-split so no decomposition realises id (+) g
        s = cons.z4_seq()
        dec = cons.coordinate_split(s.h_mid, [0])
        assert cons.find_section(s, dec) is None

    def test_precondition_violation_raises(self):
        s = cons.split_seq(G(2), G(4))
        dec = cons.coordinate_split(s.h_mid, range(s.h_mid.num_factors))
        bad_pi = cons.coordinate_split(s.pi, [0])  # Z/2 summand, not A
        with pytest.raises(cons.DecompositionError):
            cons.verify_splitend(s, dec, bad_pi)


class TestVerifyOddBottom:
    def test_odd_summand_of_mixed_bottom(self):
        s = cons.split_seq(G(6), G(2))
        dec = cons.odd_part_split(s.h_bot)
        assert dec.summand_a == G(3)
        assert cons.verify_odd_bottom(s, dec)

    def test_trivial_summand_vacuous(self):
        s = cons.split_seq(G(4), G(2))
        dec = cons.odd_part_split(s.h_bot)
        assert dec.summand_a.is_trivial
        assert cons.verify_odd_bottom(s, dec)

    def test_even_summand_rejected(self):
        s = cons.split_seq(G(2), G(2))
        dec = cons.coordinate_split(s.h_bot, [0])
        with pytest.raises(ValueError):
            cons.verify_odd_bottom(s, dec)


class TestVerifyOddMid:
    def test_split_seq_with_p3(self):
        s = cons.split_seq(G(2), G(3))
        dec = cons.primary_split(s.h_mid, 3)
        assert dec.summand_a == G(3)
        assert cons.verify_odd_mid(s, 3, dec)

    def test_moore_z9(self):
        s = cons.moore(G(9))
        dec = cons.primary_split(s.h_mid, 3)
        assert dec.summand_a == G(9)
        assert cons.verify_odd_mid(s, 3, dec)

    def test_trivial_summand_vacuous(self):
        s = cons.split_seq(G(2), G(4))
        dec = cons.primary_split(s.h_mid, 5)
        assert dec.summand_a.is_trivial
        assert cons.verify_odd_mid(s, 5, dec)

    def test_p2_rejected(self):
        s = cons.split_seq(G(2), G(4))
        dec = cons.primary_split(s.h_mid, 2)
        with pytest.raises(ValueError):
            cons.verify_odd_mid(s, 2, dec)

    def test_mixed_middle(self):
        s = cons.split_seq(G(2), G(12))
        dec = cons.primary_split(s.h_mid, 3)
        assert dec.summand_a == G(3)
        assert cons.verify_odd_mid(s, 3, dec)


class TestEndGammaOfBuilders:
    def test_split_realisation_small(self):
        for g1, g2 in [(G(2), G(2)), (G(3), G(5)), (G(2), G(4)), (G(4), G(3))]:
            end = gm.end_gamma(cons.split_seq(g1, g2))
            model = rings.direct_product(ab.end_ring(g1), ab.end_ring(g2))
            assert end.ring.order == model.order
            assert rings.brute_iso(end.ring, model,
                                   max_order=max(81, model.order)) is not None

    def test_split_z3_z5_order(self):
        end = gm.end_gamma(cons.split_seq(G(3), G(5)))
        assert end.ring.order == 15

    def test_moore_realisation_small(self):
        for g in [G(3), G(2, 2), G(8)]:
            end = gm.end_gamma(cons.moore(g))
            assert rings.brute_iso(end.ring, ab.end_ring(g),
                                   max_order=512) is not None

    def test_free_top_rank0_z2(self):
        end = gm.end_gamma(cons.free_top(0, G(2)))
        assert end.ring.order == 2
