import random
import unittest

from ideal_duality.algebra import apply_diff, format_polynomial, make_ring
from ideal_duality.exceptions import (NoetherPositionError, NonGraphSectionError, SectionMismatchError,
                                      VariableMismatchError)
from ideal_duality.groebner import ideal_basis, membership
from ideal_duality.noetherian import (RationalSection, VariableSplit, check_noether_position, clear_denominators,
                                      dual_space, intersection_membership, noetherian_membership,
                                      noetherian_operators, verify_section)
from ideal_duality.residue import QuotientAlgebra


class TestFatPointsOnALine(unittest.TestCase):
    def test_powers_of_z(self):
        ring = make_ring(["z"])
        z = ring.gens[0]
        split = VariableSplit((), ("z",))
        for m in (1, 2, 3, 5):
            S = noetherian_operators([z ** m], split)
            self.assertEqual(S.nil_index, m - 1)
            self.assertEqual(len(S.operators), m)
            self.assertEqual([L.order for L in S.operators], list(range(m)))
            for L in S.operators:
                self.assertEqual(len(L.terms), 1)
                self.assertEqual(L.terms[0][1], ring.one)
            G = ideal_basis([z ** m])
            for k in range(2 * m + 1):
                for phi in (z ** k, z ** k + z ** (k + 1), z ** k - 2):
                    self.assertEqual(noetherian_membership(phi, S), membership(phi, G), f"m={m}, phi={phi}")

    def test_order_zero_suffices_only_for_reduced_points(self):
        ring = make_ring(["z"])
        z = ring.gens[0]
        split = VariableSplit((), ("z",))
        self.assertTrue(noetherian_operators([z], split).order_zero_suffices)
        self.assertFalse(noetherian_operators([z ** 2], split).order_zero_suffices)


class TestGraphSections(unittest.TestCase):
    def setUp(self):
        self.ring = make_ring(["x", "y"])
        self.x, self.y = self.ring.gens
        self.split = VariableSplit(("x",), ("y",))
        self.section = RationalSection.of({"y": self.x ** 2})
        self.Q = [(self.y - self.x ** 2) ** 2]

    def test_double_parabola(self):
        S = noetherian_operators(self.Q, self.split, self.section)
        self.assertEqual(S.nil_index, 1)
        self.assertEqual([L.order for L in S.operators], [0, 1])
        self.assertEqual(S.as_json()["variety_ideal"], ["-x^2 + y"])
        self.assertTrue(S.is_sound())
        self.assertTrue(noetherian_membership(self.Q[0] * self.x, S))
        self.assertFalse(noetherian_membership(self.y - self.x ** 2, S))
        self.assertFalse(noetherian_membership((self.y - self.x ** 2) * self.x, S))

    def test_wrong_section(self):
        with self.assertRaises(SectionMismatchError):
            noetherian_operators(self.Q, self.split, RationalSection.of({"y": self.x ** 3}))

    def test_section_for_the_wrong_variable(self):
        split = VariableSplit(("y",), ("x",))
        self.assertTrue(check_noether_position(self.Q, split))
        with self.assertRaises(NonGraphSectionError):
            noetherian_operators(self.Q, split, self.section)

    def test_section_may_not_use_dependent_variables(self):
        with self.assertRaises(NonGraphSectionError):
            verify_section(self.Q, self.split, RationalSection.of({"y": self.y}))

    def test_free_variables_need_a_section(self):
        with self.assertRaises(NonGraphSectionError):
            noetherian_operators(self.Q, self.split)

    def test_split_must_partition_the_variables(self):
        with self.assertRaises(VariableMismatchError):
            VariableSplit(("x",), ("x",)).check_partition(self.ring)

    def test_membership_checks_rings(self):
        S = noetherian_operators(self.Q, self.split, self.section)
        with self.assertRaises(VariableMismatchError):
            noetherian_membership(make_ring(["x", "y", "z"]).gens[0], S)


class TestNoetherPosition(unittest.TestCase):
    def test_fat_point_has_no_free_direction(self):
        ring = make_ring(["x", "y"])
        x, y = ring.gens
        Q = [x ** 2, x * y, y ** 2]
        self.assertFalse(check_noether_position(Q, VariableSplit(("x",), ("y",))))
        with self.assertRaises(NoetherPositionError):
            noetherian_operators(Q, VariableSplit(("x",), ("y",)), RationalSection.of({"y": ring.zero}))
        S = noetherian_operators(Q, VariableSplit((), ("x", "y")))
        self.assertEqual(S.nil_index, 1)
        self.assertEqual(len(S.operators), 3)
        self.assertTrue(noetherian_membership(x * y, S))
        self.assertFalse(noetherian_membership(x + y ** 2, S))


class TestDenominators(unittest.TestCase):
    def setUp(self):
        self.ring = make_ring(["x", "y", "z"])
        self.x, self.y, self.z = self.ring.gens
        self.Q = [self.x - self.z * self.y, self.y ** 2]
        self.split = VariableSplit(("z",), ("x", "y"))
        self.section = RationalSection.of({"x": self.ring.zero, "y": self.ring.zero})

    def test_dual_space_over_rational_functions(self):
        space = dual_space(self.Q, self.split, self.section)
        self.assertEqual(space.dimensions, (1, 2))
        self.assertEqual(space.nil_index, 1)
        first_order = space.operators[1]
        self.assertEqual(first_order.order, 1)
        self.assertEqual(format_polynomial(first_order.coefficient((0, 1))), "1/z")
        self.assertEqual(format_polynomial(first_order.coefficient((1, 0))), "1")

    def test_clearing_denominators(self):
        S = clear_denominators(dual_space(self.Q, self.split, self.section))
        self.assertEqual(S.h, self.z)
        self.assertEqual(S.powers, (0, 1))
        L = S.operators[1]
        self.assertEqual(L.coefficient((1, 0)), self.z)
        self.assertEqual(L.coefficient((0, 1)), self.ring.one)
        self.assertEqual(apply_diff(L, self.x - self.z * self.y), self.ring.zero)
        self.assertTrue(S.is_sound())

    def test_membership_matches_groebner(self):
        S = noetherian_operators(self.Q, self.split, self.section)
        G = ideal_basis(self.Q)
        x, y, z = self.x, self.y, self.z
        for phi in (x ** 2, x * y, y, x, x - z * y, z * x - z ** 2 * y + y ** 2, x * z + y):
            self.assertEqual(noetherian_membership(phi, S), membership(phi, G), str(phi))


class TestIntersections(unittest.TestCase):
    def test_two_components(self):
        ring = make_ring(["x", "y"])
        x, y = ring.gens
        first = noetherian_operators([x ** 2], VariableSplit(("y",), ("x",)), RationalSection.of({"x": ring.zero}))
        second = noetherian_operators([y], VariableSplit(("x",), ("y",)), RationalSection.of({"y": ring.zero}))
        self.assertEqual((first.nil_index, second.nil_index), (1, 0))
        self.assertTrue(intersection_membership(x ** 2 * y, [first, second]))
        self.assertFalse(intersection_membership(x * y, [first, second]))
        self.assertFalse(intersection_membership(x ** 2, [first, second]))


def random_point_ideals(rng, ring, count):
    """Ideals primary to the origin: monomial ones with pure powers, and (x^a - c*y, y^b)."""
    x, y = ring.gens
    for index in range(count):
        if index % 2 == 0:
            a, b = rng.randint(1, 3), rng.randint(1, 3)
            generators = [x ** a, y ** b]
            if a > 1 and b > 1:
                generators.append(x ** rng.randint(1, a - 1) * y ** rng.randint(1, b - 1))
        else:
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            generators = [x ** rng.randint(1, 2) - c * y, y ** rng.randint(1, 2)]
        yield generators


class TestDualSpaceGrowth(unittest.TestCase):
    def test_dimension_equals_multiplicity_and_grows_until_stable(self):
        rng = random.Random(51)
        ring = make_ring(["x", "y"])
        split = VariableSplit((), ("x", "y"))
        origin = RationalSection.origin(ring, ["x", "y"])
        for generators in random_point_ideals(rng, ring, 10):
            with self.subTest([str(g) for g in generators]):
                space = dual_space(generators, split, origin)
                dims = list(space.dimensions)
                self.assertEqual(dims[0], 1)
                self.assertTrue(all(a < b for a, b in zip(dims, dims[1:])), dims)
                self.assertEqual(len(space.operators), dims[-1])
                self.assertEqual(space.nil_index, len(dims) - 1)
                self.assertEqual(len(space.operators), QuotientAlgebra.of(generators).dim)


if __name__ == '__main__':
    unittest.main()
