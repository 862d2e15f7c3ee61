import pytest

from conftest import mono_d_rule, ring_p, ring_q
from golodkit.dcalc import Permutation, d_all, d_ideal, d_op, d_sigma_op, relabel
from golodkit.errors import NonProperElementError, PreconditionError
from golodkit.groebner import IdealGens, ideal_subset
from golodkit.monomial import MonomialIdeal
from golodkit.randgen import random_monomial, random_monomial_ideal, random_polynomial


def quartic_example(R):
    x1, x2, x3, x4 = (R.var(i) for i in (1, 2, 3, 4))
    return x1 ** 2 * x3 + x1 * x2 ** 3 + x2 ** 2 * x3 ** 3 + x3 ** 2 * x4


class TestDOperator:
    def test_quartic_example_all_four_values(self):
        R = ring_q(4)
        x1, x2, x3, x4 = (R.var(i) for i in (1, 2, 3, 4))
        f = quartic_example(R)
        assert d_op(f, 1) == x1 * x3 + x2 ** 3
        assert d_op(f, 2) == x2 * x3 ** 3
        assert d_op(f, 3) == x3 * x4
        assert d_op(f, 4).is_zero()

    def test_on_variables(self):
        R = ring_q(3)
        for r in range(1, 4):
            for i in range(1, 4):
                expected = R.one() if i == r else R.zero()
                assert d_op(R.var(i), r) == expected

    def test_monomial_rule_example(self):
        R = ring_q(3)
        u = R.var(2) * R.var(3) ** 2
        assert d_op(u, 2) == R.var(3) ** 2
        assert d_op(u, 1).is_zero() and d_op(u, 3).is_zero()

    def test_monomial_rule_oracle_random(self, rng):
        for R in (ring_q(4), ring_p(4)):
            for _ in range(200):
                e = random_monomial(rng, 4, 5)
                u = R.monomial(e)
                for r in range(1, 5):
                    assert d_op(u, r) == mono_d_rule(R, e, r)

    def test_requires_proper_element(self):
        R = ring_q(2)
        with pytest.raises(NonProperElementError):
            d_op(R.var(1) + 1, 1)

    def test_reconstruction_rule(self, rng):
        for R in (ring_q(4), ring_p(4)):
            for _ in range(100):
                f = random_polynomial(rng, R)
                total = R.zero()
                for r in range(1, 5):
                    total = total + d_op(f, r) * R.var(r)
                assert total == f

    def test_locality_rule(self, rng):
        R = ring_q(4)
        for _ in range(100):
            f = random_polynomial(rng, R)
            for r in range(1, 5):
                for e in d_op(f, r).terms:
                    assert all(x == 0 for x in e[: r - 1])

    def test_linearity(self, rng):
        R = ring_q(3)
        for _ in range(100):
            f = random_polynomial(rng, R)
            g = random_polynomial(rng, R)
            a, b = rng.randint(-5, 5), rng.randint(-5, 5)
            for r in range(1, 4):
                assert d_op(a * f + b * g, r) == a * d_op(f, r) + b * d_op(g, r)

    def test_product_rule(self, rng):
        for R in (ring_q(4), ring_p(4)):
            for _ in range(100):
                f = random_polynomial(rng, R)
                g = random_polynomial(rng, R)
                df, dg = d_all(f), d_all(g)
                fg = f * g
                for r in range(1, 5):
                    rhs = df[r - 1] * dg[r - 1] * R.var(r)
                    for i in range(r + 1, 5):
                        rhs = rhs + (df[r - 1] * dg[i - 1] + dg[r - 1] * df[i - 1]) * R.var(i)
                    assert d_op(fg, r) == rhs


class TestPermutation:
    def test_validation(self):
        with pytest.raises(PreconditionError):
            Permutation([1, 1, 2])

    def test_inverse_and_reversal(self):
        s = Permutation([3, 1, 2])
        assert s.inverse().images == (2, 3, 1)
        assert Permutation.reversal(3).images == (3, 2, 1)

    def test_relabel_round_trip(self, rng):
        R = ring_q(4)
        s = Permutation([2, 4, 1, 3])
        for _ in range(50):
            f = random_polynomial(rng, R)
            assert relabel(relabel(f, s), s.inverse()) == f


class TestDSigma:
    def test_identity_matches_plain(self, rng):
        R = ring_q(3)
        ident = Permutation.identity(3)
        for _ in range(50):
            f = random_polynomial(rng, R)
            for r in range(1, 4):
                assert d_sigma_op(f, r, ident) == d_op(f, r)

    def test_swap_examples(self):
        R = ring_q(2)
        x1, x2 = R.var(1), R.var(2)
        swap = Permutation([2, 1])
        assert d_sigma_op(x1 * x2, 1, swap) == x1
        assert d_sigma_op(x2 ** 2, 1, swap) == x2


class TestDIdeal:
    def test_section2_example(self):
        R = ring_q(2)
        I = MonomialIdeal.from_gens(R, [(1, 1), (0, 2)])
        assert d_ideal(I) == MonomialIdeal.from_gens(R, [(0, 1)])
        assert d_ideal(I, Permutation([2, 1])) == MonomialIdeal.from_gens(
            R, [(1, 0), (0, 1)]
        )

    def test_stretched_fixture_value(self):
        from golodkit.golod import stretched_ideal, stretched_permutation

        for n, s in [(2, 2), (3, 3), (4, 1)]:
            I = stretched_ideal(n, s, True)
            D = d_ideal(I.as_monomial_ideal(), stretched_permutation(n))
            expected = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n - 1)]
            expected.append(tuple(0 if j < n - 1 else s for j in range(n)))
            assert D == MonomialIdeal.from_gens(I.ring, expected)

    def test_contains_input_monomial(self, rng):
        R = ring_q(3)
        for _ in range(50):
            I = random_monomial_ideal(rng, R, 4, 4)
            if not I.is_proper or I.is_zero:
                continue
            for sigma in (Permutation.identity(3), Permutation.reversal(3)):
                ok, _ = ideal_subset(I, d_ideal(I, sigma))
                assert ok

    def test_contains_input_polynomial(self, rng):
        R = ring_q(3)
        for _ in range(10):
            gens = [random_polynomial(rng, R, 3, 3) for _ in range(2)]
            I = IdealGens(R, gens)
            D = d_ideal(I)
            ok, witness = ideal_subset(I, D)
            assert ok, witness

    def test_generator_set_independence_monomial(self, rng):
        R = ring_q(3)
        for _ in range(50):
            I = random_monomial_ideal(rng, R, 3, 3)
            if not I.is_proper or I.is_zero:
                continue
            # pad with redundant multiples of existing generators
            padded = list(I.gens)
            for g in I.gens:
                extra = random_monomial(rng, 3, 2, 1)
                padded.append(tuple(a + b for a, b in zip(g, extra)))
            J = MonomialIdeal.from_gens(R, padded)
            assert J == I
            for sigma in (Permutation.identity(3), Permutation([2, 3, 1])):
                assert d_ideal(J, sigma) == d_ideal(I, sigma)
