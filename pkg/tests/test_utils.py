import random
import unittest

from ideal_duality.algebra import make_ring
from ideal_duality.groebner import ideal_basis, membership
from ideal_duality.utils import (CATEGORIES, MEMBER, RANDOM, generate_trial_polynomials, random_monomial,
                                 random_polynomial)


class TestTrialPolynomials(unittest.TestCase):
    def setUp(self):
        self.ring = make_ring(["x", "y"])
        self.x, self.y = self.ring.gens
        self.members = [self.x ** 2, self.x * self.y]

    def test_same_seed_same_payloads(self):
        first = generate_trial_polynomials(random.Random(7), self.members, [self.x], 40)
        second = generate_trial_polynomials(random.Random(7), self.members, [self.x], 40)
        self.assertEqual(first, second)
        self.assertEqual(len(first), 40)

    def test_categories_cycle(self):
        payloads = generate_trial_polynomials(random.Random(0), self.members, [self.x], 8)
        self.assertEqual([category for category, _ in payloads], list(CATEGORIES) * 2)

    def test_member_category_lies_in_the_ideal(self):
        G = ideal_basis(self.members)
        for category, phi in generate_trial_polynomials(random.Random(3), self.members, [self.x], 60):
            if category == MEMBER:
                self.assertTrue(membership(phi, G))

    def test_without_radical_generators(self):
        payloads = generate_trial_polynomials(random.Random(1), self.members, [], 8)
        self.assertEqual(payloads[2][0], RANDOM)

    def test_random_monomial_has_one_term(self):
        rng = random.Random(5)
        for _ in range(20):
            self.assertEqual(len(random_monomial(rng, self.ring)), 1)
            phi = random_polynomial(rng, self.ring, max_degree=2)
            self.assertTrue(all(sum(monom) <= 2 for monom in phi.itermonoms()))


if __name__ == '__main__':
    unittest.main()
