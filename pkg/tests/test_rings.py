import pytest

from gammaseq import abelian as ab
from gammaseq import rings
from gammaseq.abelian import FgAbGroup


def G(*factors):
    return FgAbGroup.from_factors(factors)


F2xF2 = rings.direct_product(rings.cyclic_ring(2), rings.cyclic_ring(2))


class TestFiniteRing:
    def test_trivial_ring(self):
        r = rings.trivial_ring()
        assert r.order == 1
        assert r.zero_index == r.one_index == 0

    def test_axioms_rejected(self):
        # a broken multiplication table: 1*1 = 0
        with pytest.raises(rings.RingAxiomError):
            rings.FiniteRing(2, ((0, 1), (1, 0)), ((0, 0), (0, 0)), 0, 1)

    def test_non_associative_rejected(self):
        add = tuple(tuple((a + b) % 3 for b in range(3)) for a in range(3))
        mul = [[(a * b) % 3 for b in range(3)] for a in range(3)]
        mul[2][2] = 2  # breaks associativity / identity structure
        with pytest.raises(rings.RingAxiomError):
            rings.FiniteRing(3, add, tuple(map(tuple, mul)), 0, 1)

    def test_cap(self):
        with pytest.raises(rings.RingCapError):
            rings.FiniteRing(513, ((),), ((),), 0, 0)

    def test_units_of_z4(self):
        r = rings.cyclic_ring(4)
        assert r.units() == [1, 3]


class TestRingInvariants:
    def test_f2xf2(self):
        inv = rings.ring_invariants(F2xF2)
        assert inv.order == 4
        assert inv.characteristic == 2
        assert inv.is_commutative
        assert inv.unit_count == 1  # only (1, 1)
        assert inv.additive_invariant_factors == (2, 2)

    def test_z4(self):
        inv = rings.ring_invariants(rings.cyclic_ring(4))
        assert inv.order == 4
        assert inv.characteristic == 4
        assert inv.unit_count == 2
        assert inv.additive_invariant_factors == (4,)

    def test_matrix_ring_over_f2(self):
        ring = ab.end_ring(G(2, 2))
        inv = rings.ring_invariants(ring)
        assert inv.order == 16
        assert not inv.is_commutative
        assert inv.unit_count == 6  # |GL_2(F_2)|

    def test_invariants_survive_relabelling(self):
        # invariants agree whenever brute_iso finds a witness
        r1 = rings.cyclic_ring(6)
        r2 = rings.direct_product(rings.cyclic_ring(2), rings.cyclic_ring(3))
        assert rings.brute_iso(r1, r2) is not None
        assert rings.ring_invariants(r1).key() == rings.ring_invariants(r2).key()


class TestPrimeFieldRecognition:
    def test_f2xf2_accepted(self):
        assert rings.is_product_of_prime_fields(F2xF2, 2, 2)

    def test_z4_rejected(self):
        assert not rings.is_product_of_prime_fields(rings.cyclic_ring(4), 2, 2)

    def test_noncommutative_rejected(self):
        ring = ab.end_ring(G(2, 2))
        assert not rings.is_product_of_prime_fields(ring, 2, 4)

    def test_non_prime_p(self):
        with pytest.raises(ValueError):
            rings.is_product_of_prime_fields(F2xF2, 4, 1)

    @pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])
    def test_built_products_accepted(self, p, k):
        ring = rings.prime_field_power(p, k)
        assert rings.is_product_of_prime_fields(ring, p, k)

    def test_agrees_with_brute_iso(self):
        for p, k in [(2, 2), (3, 2), (2, 3)]:
            model = rings.prime_field_power(p, k)
            for candidate in [rings.cyclic_ring(p ** k),
                              rings.prime_field_power(p, k)]:
                same = rings.brute_iso(candidate, model) is not None
                assert rings.is_product_of_prime_fields(candidate, p, k) == same


class TestDirectProduct:
    def test_unit_of_product(self):
        r = rings.cyclic_ring(5)
        prod = rings.direct_product(r, rings.trivial_ring())
        assert rings.brute_iso(prod, r) is not None

    def test_crt(self):
        assert rings.brute_iso(
            rings.direct_product(rings.cyclic_ring(2), rings.cyclic_ring(3)),
            rings.cyclic_ring(6),
        ) is not None

    def test_cap(self):
        with pytest.raises(rings.RingCapError):
            rings.direct_product(rings.cyclic_ring(32), rings.cyclic_ring(32))


class TestPullback:
    def test_trivial_codomain_gives_full_product(self):
        r = rings.cyclic_ring(2)
        z = rings.trivial_ring()
        to_z = rings.RingMap(r, z, (0, 0))
        pb = rings.pullback(r, r, to_z, to_z)
        assert pb.order == 4
        assert rings.brute_iso(pb, F2xF2) is not None

    def test_diagonal(self):
        r = rings.cyclic_ring(4)
        ident = rings.RingMap(r, r, tuple(range(4)))
        pb = rings.pullback(r, r, ident, ident)
        assert pb.order == 4
        assert rings.brute_iso(pb, r) is not None

    def test_f2_over_f2(self):
        r = rings.cyclic_ring(2)
        ident = rings.RingMap(r, r, (0, 1))
        pb = rings.pullback(r, r, ident, ident)
        assert pb.order == 2
        assert rings.is_product_of_prime_fields(pb, 2, 1)

    def test_nonhomomorphic_map_rejected(self):
        r = rings.cyclic_ring(4)
        with pytest.raises(ValueError):
            rings.RingMap(r, r, (0, 1, 1, 1))


class TestBruteIso:
    def test_self_iso(self):
        r = rings.cyclic_ring(8)
        witness = rings.brute_iso(r, r)
        assert witness is not None
        assert witness[r.zero_index] == r.zero_index
        assert witness[r.one_index] == r.one_index

    def test_distinct_characteristic(self):
        assert rings.brute_iso(F2xF2, rings.cyclic_ring(4)) is None

    def test_witness_is_a_ring_map(self):
        r1 = rings.cyclic_ring(6)
        r2 = rings.direct_product(rings.cyclic_ring(3), rings.cyclic_ring(2))
        w = rings.brute_iso(r1, r2)
        assert w is not None
        rings.RingMap(r1, r2, tuple(w))  # validates
        assert sorted(w) == list(range(6))

    def test_unequal_order_is_an_error(self):
        with pytest.raises(ValueError):
            rings.brute_iso(rings.cyclic_ring(2), rings.cyclic_ring(3))

    def test_cap(self):
        r = ab.end_ring(G(2, 2))  # order 16
        with pytest.raises(rings.RingCapError):
            rings.brute_iso(r, r, max_order=9)

    def test_aligned_search_at_higher_cap(self):
        ring = ab.end_ring(G(3, 3))  # order 81
        assert rings.brute_iso(ring, ring, max_order=81) is not None
