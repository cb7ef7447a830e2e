import random
import unittest
from itertools import combinations

from ideal_duality.algebra import make_ring
from ideal_duality.exceptions import RingMismatchError
from ideal_duality.groebner import (FreeModuleElement, ModuleOrder, buchberger, codimension, dimension, eliminate,
                                    ideal_basis, ideal_codimension, intersect_ideals, membership, normal_form,
                                    radical_membership, syzygy_module)
from ideal_duality.polymatrix import PolyMatrix, matrix_rank
from ideal_duality.utils import random_polynomial


class TestIdealBasis(unittest.TestCase):
    def setUp(self):
        self.ring = make_ring(["x", "y"])
        self.x, self.y = self.ring.gens

    def test_membership(self):
        G = ideal_basis([self.x - self.y, self.y ** 2])
        self.assertTrue(G.contains(self.x ** 2))
        self.assertTrue(membership(self.x * self.y, G))
        self.assertFalse(G.contains(self.x))
        self.assertTrue(G.satisfies_buchberger_criterion())

    def test_normal_form(self):
        G = ideal_basis([self.x - self.y])
        self.assertEqual(normal_form(self.x ** 2, G), self.y ** 2)

    def test_reduced_basis_is_canonical(self):
        first = ideal_basis([self.x ** 2, self.x * self.y, self.x ** 2 + self.x * self.y])
        second = ideal_basis([self.x * self.y, self.x ** 2])
        self.assertEqual(set(first.polynomials()), set(second.polynomials()))
        self.assertEqual(set(first.polynomials()), {self.x ** 2, self.x * self.y})

    def test_dimension_and_codimension(self):
        G = ideal_basis([self.x ** 2, self.x * self.y])
        self.assertEqual(dimension(G), 1)
        self.assertEqual(codimension(G), 1)
        self.assertEqual(ideal_codimension([self.x, self.y], self.ring), 2)

    def test_unit_ideal(self):
        G = ideal_basis([self.x, self.x + 1])
        self.assertTrue(G.is_unit())
        self.assertEqual(dimension(G), -1)
        self.assertEqual(codimension(G), 3)

    def test_zero_ideal(self):
        G = ideal_basis([], ring=self.ring)
        self.assertTrue(G.is_zero_module())
        self.assertEqual(dimension(G), 2)
        self.assertEqual(codimension(G), 0)

    def test_empty_generators_need_a_ring(self):
        with self.assertRaises(RingMismatchError):
            buchberger([])


class TestModules(unittest.TestCase):
    def setUp(self):
        self.ring = make_ring(["x", "y"])
        self.x, self.y = self.ring.gens

    def test_submodule_membership(self):
        gens = [FreeModuleElement.of(self.x, self.y), FreeModuleElement.of(self.y, self.x)]
        for order in (ModuleOrder.term_over_position(self.ring.order),
                      ModuleOrder.position_over_term(self.ring.order)):
            G = buchberger(gens, order)
            self.assertTrue(G.satisfies_buchberger_criterion())
            self.assertTrue(G.contains(FreeModuleElement.of(self.x + self.y, self.x + self.y)))
            self.assertTrue(G.contains(FreeModuleElement.of(self.x ** 2 - self.y ** 2, self.ring.zero)))
            self.assertFalse(G.contains(FreeModuleElement.of(self.x, self.ring.zero)))

    def test_rank_mismatch(self):
        G = buchberger([FreeModuleElement.of(self.x, self.y)])
        with self.assertRaises(RingMismatchError):
            normal_form(self.x, G)

    def test_koszul_syzygy(self):
        M = PolyMatrix.from_rows(self.ring, [[self.x, self.y]])
        K = syzygy_module(M)
        self.assertEqual(K.shape, (2, 1))
        self.assertIn(K.column(0), [(self.y, -self.x), (-self.y, self.x)])

    def test_syzygies_compose_to_zero(self):
        M = PolyMatrix.from_rows(self.ring, [[self.x ** 2, self.x * self.y, self.y ** 2]])
        K = syzygy_module(M)
        self.assertEqual(K.shape, (3, 2))
        self.assertTrue((M @ K).is_zero())

    def test_unpruned_syzygies_generate_the_same_kernel(self):
        M = PolyMatrix.from_rows(self.ring, [[self.x, self.y, self.x + self.y]])
        pruned, raw = syzygy_module(M), syzygy_module(M, prune=False)
        self.assertTrue((M @ raw).is_zero())
        self.assertLessEqual(pruned.source_rank, raw.source_rank)
        self.assertEqual(pruned.source_rank, 2)


class TestElimination(unittest.TestCase):
    def test_twisted_cubic_projection(self):
        ring = make_ring(["t", "x", "y"])
        t, x, y = ring.gens
        result = eliminate([x - t ** 2, y - t ** 3], ["x", "y"])
        self.assertTrue(result)
        for p in result:
            self.assertEqual(p.degree(t), 0)
        self.assertTrue(ideal_basis(result).contains(x ** 3 - y ** 2))

    def test_radical_membership(self):
        ring = make_ring(["x", "y"])
        x, y = ring.gens
        self.assertTrue(radical_membership(x, [x ** 2]))
        self.assertFalse(ideal_basis([x ** 2]).contains(x))
        self.assertFalse(radical_membership(y, [x ** 2]))
        self.assertTrue(radical_membership(x + y, [x ** 3, y ** 2]))

    def test_intersection(self):
        ring = make_ring(["x", "y"])
        x, y = ring.gens
        self.assertEqual(ideal_basis(intersect_ideals([x], [y])).polynomials(), [x * y])
        meet = ideal_basis(intersect_ideals([x ** 2], [x, y ** 2]))
        self.assertEqual(set(meet.polynomials()), {x ** 2})
        self.assertEqual(intersect_ideals([], [x]), [])

    def test_intersection_with_variable_named_t(self):
        ring = make_ring(["t", "x"])
        t, x = ring.gens
        meet = ideal_basis(intersect_ideals([t], [x]))
        self.assertEqual(meet.polynomials(), [t * x])


def random_ideal(rng, ring, size, max_degree=2):
    generators = []
    while len(generators) < size:
        g = random_polynomial(rng, ring, max_degree=max_degree)
        if g:
            generators.append(g)
    return generators


def brute_force_dimension(polys, names):
    """Largest set S of variables with I ∩ k[S] = 0; -1 when I is the unit ideal."""
    for size in range(len(names), -1, -1):
        for subset in combinations(names, size):
            if not eliminate(polys, subset):
                return size
    return -1


class TestRandomizedIdeals(unittest.TestCase):
    def test_remainder_difference_lies_in_the_ideal(self):
        rng = random.Random(21)
        ring = make_ring(["x", "y", "z"])
        for _ in range(8):
            G = ideal_basis(random_ideal(rng, ring, 2))
            for _ in range(5):
                phi = random_polynomial(rng, ring, max_degree=4, max_terms=5)
                remainder = normal_form(phi, G)
                self.assertTrue(membership(phi - remainder, G))
                self.assertEqual(normal_form(remainder, G), remainder)
                leads = [monom for monom, _, _ in G.leading_terms]
                for monom in remainder.itermonoms():
                    self.assertFalse(any(all(a <= b for a, b in zip(lead, monom)) for lead in leads))

    def test_membership_absorbs_products(self):
        rng = random.Random(22)
        ring = make_ring(["x", "y"])
        for _ in range(8):
            generators = random_ideal(rng, ring, 2)
            G = ideal_basis(generators)
            member = sum((random_polynomial(rng, ring) * g for g in generators), ring.zero)
            self.assertTrue(membership(member, G))
            for _ in range(4):
                self.assertTrue(membership(random_polynomial(rng, ring, max_degree=3) * member, G))

    def test_random_syzygies_are_in_the_kernel(self):
        rng = random.Random(23)
        ring = make_ring(["x", "y"])
        for rows in (1, 2):
            for _ in range(4):
                entries = [[random_polynomial(rng, ring, max_terms=2) for _ in range(3)] for _ in range(rows)]
                M = PolyMatrix.from_rows(ring, entries)
                S = syzygy_module(M)
                self.assertEqual(S.target_rank, 3)
                self.assertTrue((M @ S).is_zero())
                self.assertEqual(matrix_rank(S), 3 - matrix_rank(M))

    def test_dimension_matches_independent_variable_sets(self):
        rng = random.Random(24)
        for names in (["x", "y"], ["x", "y", "z"]):
            ring = make_ring(names)
            for size in (1, 2, 3):
                polys = random_ideal(rng, ring, size)
                self.assertEqual(dimension(ideal_basis(polys)), brute_force_dimension(polys, names),
                                 [str(p) for p in polys])


if __name__ == '__main__':
    unittest.main()
