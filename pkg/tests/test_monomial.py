import itertools

import pytest

from conftest import (
    box_monomials,
    brute_colon_members,
    ideals_equal_upto,
    members_upto,
    ring_q,
)
from golodkit.groebner import IdealGens, buchberger, normal_form
from golodkit.monomial import (
    MonomialIdeal,
    associated_primes,
    integral_closure,
    in_newton_polyhedron,
    maximal_ideal,
    mi_colon,
    mi_intersect,
    mi_power,
    mi_product,
    mi_saturate,
    min_gens,
    monomials_of_degree,
    symbolic_power,
    unit_ideal,
)
from golodkit.randgen import random_monomial_ideal
from golodkit.ring import GREVLEX, mono_mul


def MI(R, *gens):
    return MonomialIdeal.from_gens(R, gens)


class TestMinGens:
    def test_drops_multiples(self):
        R = ring_q(2)
        assert min_gens(R, [(1, 0), (1, 1), (0, 2)]) == MI(R, (1, 0), (0, 2))

    def test_already_minimal(self):
        R = ring_q(2)
        assert min_gens(R, [(2, 0), (1, 1)]) == MI(R, (2, 0), (1, 1))

    def test_duplicates(self):
        R = ring_q(2)
        assert min_gens(R, [(1, 1), (1, 1)]) == MI(R, (1, 1))


class TestProductPower:
    def test_square_of_maximal(self):
        R = ring_q(2)
        assert mi_power(maximal_ideal(R), 2) == MI(R, (2, 0), (1, 1), (0, 2))

    def test_pairwise_products(self):
        R = ring_q(3)
        A = MI(R, (1, 1, 0), (0, 1, 1))
        B = MI(R, (0, 1, 0))
        assert mi_product(A, B) == MI(R, (1, 2, 0), (0, 2, 1))

    def test_power_one_is_identity(self, rng):
        R = ring_q(3)
        for _ in range(10):
            A = random_monomial_ideal(rng, R)
            assert mi_power(A, 1) == A


class TestIntersect:
    def test_principal_pair(self):
        R = ring_q(2)
        assert mi_intersect(MI(R, (1, 0)), MI(R, (0, 1))) == MI(R, (1, 1))

    def test_derived_example_against_membership(self):
        R = ring_q(2)
        A, B = MI(R, (2, 0), (0, 1)), MI(R, (1, 0))
        got = mi_intersect(A, B)
        assert got == MI(R, (2, 0), (1, 1))
        assert members_upto(got, 4) == members_upto(A, 4) & members_upto(B, 4)

    def test_idempotent(self, rng):
        R = ring_q(3)
        for _ in range(10):
            A = random_monomial_ideal(rng, R)
            if A.is_zero:
                continue
            assert mi_intersect(A, A) == A


class TestColon:
    def test_simple(self):
        R = ring_q(2)
        assert mi_colon(MI(R, (1, 1)), MI(R, (1, 0))) == MI(R, (0, 1))

    def test_square_colon_maximal(self):
        R = ring_q(2)
        got = mi_colon(mi_power(maximal_ideal(R), 2), maximal_ideal(R))
        assert got == maximal_ideal(R)
        assert members_upto(got, 3) == brute_colon_members(
            mi_power(maximal_ideal(R), 2), maximal_ideal(R), 3
        )

    def test_self_colon_is_unit(self):
        R = ring_q(2)
        assert mi_colon(MI(R, (1, 0)), MI(R, (1, 0))).is_unit

    def test_against_brute_force(self, rng):
        R = ring_q(3)
        for _ in range(25):
            A = random_monomial_ideal(rng, R, 3, 3)
            B = random_monomial_ideal(rng, R, 2, 2)
            if A.is_zero or B.is_zero:
                continue
            got = mi_colon(A, B)
            assert members_upto(got, 4) == brute_colon_members(A, B, 4)


class TestSaturate:
    def test_reaches_unit(self):
        R = ring_q(2)
        J, t0 = mi_saturate(MI(R, (1, 1), (0, 2)), MI(R, (0, 1)))
        assert J.is_unit and t0 == 2

    def test_single_iteration(self):
        R = ring_q(2)
        J, t0 = mi_saturate(MI(R, (2, 1)), MI(R, (0, 1)))
        assert J == MI(R, (2, 0)) and t0 == 1

    def test_artinian_saturates_to_unit(self, rng):
        R = ring_q(2)
        A = MI(R, (3, 0), (1, 1), (0, 2))
        J, _ = mi_saturate(A, maximal_ideal(R))
        assert J.is_unit

    def test_fixpoint_property(self, rng):
        R = ring_q(3)
        for _ in range(20):
            A = random_monomial_ideal(rng, R, 3, 3)
            B = random_monomial_ideal(rng, R, 2, 2)
            if A.is_zero or B.is_zero or B.is_unit:
                continue
            J, _ = mi_saturate(A, B)
            assert mi_colon(J, B) == J


def brute_associated_primes(A):
    """Oracle: P is associated iff P = A : w for some monomial witness w."""
    R = A.ring
    limits = tuple(x + 1 for x in A.max_exps())
    found = set()
    for w in box_monomials(limits):
        c = mi_colon(A, MonomialIdeal.from_gens(R, [w]))
        gens = c.gens
        if gens and all(sum(g) == 1 for g in gens):
            found.add(tuple(sorted(i + 1 for g in gens for i, x in enumerate(g) if x)))
    return found


class TestAssociatedPrimes:
    def test_squarefree_triangle(self):
        R = ring_q(3)
        A = MI(R, (1, 1, 0), (1, 0, 1), (0, 1, 1))
        got = associated_primes(A)
        assert got == [((1, 2), True), ((1, 3), True), ((2, 3), True)]
        assert {p for p, _ in got} == brute_associated_primes(A)

    def test_pure_power(self):
        R = ring_q(2)
        assert associated_primes(MI(R, (2, 0))) == [((1,), True)]

    def test_embedded_prime(self):
        R = ring_q(2)
        got = associated_primes(MI(R, (1, 1), (0, 2)))
        assert got == [((1, 2), False), ((2,), True)]
        assert {p for p, _ in got} == brute_associated_primes(MI(R, (1, 1), (0, 2)))

    def test_against_witness_oracle_random(self, rng):
        R = ring_q(3)
        for _ in range(15):
            A = random_monomial_ideal(rng, R, 3, 3)
            if A.is_zero or A.is_unit:
                continue
            assert {p for p, _ in associated_primes(A)} == brute_associated_primes(A)


class TestSymbolicPower:
    def test_triangle_square_gains_the_product(self):
        R = ring_q(3)
        A = MI(R, (1, 1, 0), (1, 0, 1), (0, 1, 1))
        got = symbolic_power(A, 2)
        assert got.contains((1, 1, 1))
        # squarefree oracle: intersection of the squared minimal primes
        inter = None
        for p in [(1, 2), (1, 3), (2, 3)]:
            gens = []
            for v in p:
                e = [0, 0, 0]
                e[v - 1] = 1
                gens.append(tuple(e))
            P2 = mi_power(MonomialIdeal.from_gens(R, gens), 2)
            inter = P2 if inter is None else mi_intersect(inter, P2)
        assert got == inter

    def test_prime_needs_no_saturation(self):
        R = ring_q(3)
        P = MI(R, (1, 0, 0), (0, 1, 0))
        for k in (1, 2, 3):
            assert symbolic_power(P, k) == mi_power(P, k)

    def test_principal(self):
        R = ring_q(2)
        assert symbolic_power(MI(R, (1, 0)), 2) == MI(R, (2, 0))

    def test_sandwich_and_first_power(self, rng):
        # k = 1 recovers A only when A has no embedded primes (the symbolic
        # power is a saturation, which strips embedded components)
        R = ring_q(3)
        for _ in range(15):
            A = random_monomial_ideal(rng, R, 3, 3)
            if A.is_zero or A.is_unit:
                continue
            if all(is_min for _, is_min in associated_primes(A)):
                assert symbolic_power(A, 1) == A
            for k in (2, 3):
                sk = symbolic_power(A, k)
                ok, _ = mi_power(A, k).subset_of(sk)
                assert ok

    def test_squarefree_matches_prime_intersection(self, rng):
        R = ring_q(3)
        for _ in range(15):
            A = random_monomial_ideal(rng, R, 3, 1)  # squarefree-ish degree 1..1
            A = MonomialIdeal.from_gens(
                R, [tuple(min(x, 1) for x in g) for g in
                    random_monomial_ideal(rng, R, 3, 3).gens]
            )
            if A.is_zero or A.is_unit:
                continue
            minimal = [p for p, is_min in associated_primes(A) if is_min]
            for k in (2, 3):
                inter = None
                for p in minimal:
                    gens = []
                    for v in p:
                        e = [0] * 3
                        e[v - 1] = 1
                        gens.append(tuple(e))
                    Pk = mi_power(MonomialIdeal.from_gens(R, gens), k)
                    inter = Pk if inter is None else mi_intersect(inter, Pk)
                assert symbolic_power(A, k) == inter


class TestIntegralClosure:
    def test_pure_cubes_close_to_full_power(self):
        R = ring_q(2)
        assert integral_closure(MI(R, (3, 0), (0, 3))) == mi_power(maximal_ideal(R), 3)

    def test_already_closed(self):
        R = ring_q(2)
        A = maximal_ideal(R)
        assert integral_closure(A) == A

    def test_pure_squares(self):
        R = ring_q(2)
        assert integral_closure(MI(R, (2, 0), (0, 2))) == MI(R, (2, 0), (1, 1), (0, 2))

    def test_newton_membership_witnesses(self):
        R = ring_q(2)
        A = MI(R, (2, 0), (0, 2))
        assert in_newton_polyhedron(A, (1, 1))
        assert not in_newton_polyhedron(A, (1, 0))

    def test_power_oracle_agreement(self, rng):
        # u lies in the closure iff u^m lies in A^m for some m; m <= 8 is
        # enough at these sizes
        R = ring_q(3)
        for _ in range(10):
            A = random_monomial_ideal(rng, R, 3, 4)
            if A.is_zero or A.is_unit:
                continue
            closure = integral_closure(A)
            powers = {m: mi_power(A, m) for m in range(1, 9)}
            for e in box_monomials(A.max_exps()):
                by_oracle = any(
                    powers[m].contains(tuple(x * m for x in e)) for m in range(1, 9)
                )
                assert closure.contains(e) == by_oracle, (A, e)

    def test_contains_input_and_idempotent(self, rng):
        R = ring_q(2)
        for _ in range(10):
            A = random_monomial_ideal(rng, R, 3, 4)
            if A.is_zero or A.is_unit:
                continue
            closed = integral_closure(A)
            ok, _ = A.subset_of(closed)
            assert ok
            assert integral_closure(closed) == closed


class TestMembershipAgainstGroebner:
    def test_divisibility_matches_normal_form(self, rng):
        R = ring_q(3)
        for _ in range(10):
            A = random_monomial_ideal(rng, R, 3, 3)
            if A.is_zero or A.is_unit:
                continue
            G = buchberger(IdealGens(R, A.as_polys()), GREVLEX)
            for e in itertools.islice(box_monomials((3, 3, 3)), 0, None, 3):
                f = R.monomial(e)
                assert A.contains(e) == normal_form(f, G).is_zero()


def test_unit_ideal_is_representable_result():
    R = ring_q(2)
    U = unit_ideal(R)
    assert U.is_unit and not U.is_proper
    assert U.contains((0, 0))


def test_monomials_of_degree_count():
    from math import comb

    for n in (1, 2, 3, 4):
        for d in range(5):
            assert len(list(monomials_of_degree(n, d))) == comb(n - 1 + d, d)
