import logging
import random
from typing import List, Sequence, Tuple

from sympy import QQ
from sympy.polys.rings import PolyElement, PolyRing

logger = logging.getLogger(__name__)

MEMBER = "member"
NEAR_MISS = "near-miss"
RADICAL = "radical"
RANDOM = "random"
CATEGORIES = (MEMBER, NEAR_MISS, RADICAL, RANDOM)


def random_polynomial(rng: random.Random, ring: PolyRing, max_degree: int = 2, max_terms: int = 3,
                      coefficient_bound: int = 3) -> PolyElement:
    """A sparse polynomial with small integer coefficients; may be zero."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        degree = rng.randint(0, max_degree)
        exponents = [0] * ring.ngens
        for _ in range(degree):
            exponents[rng.randrange(ring.ngens)] += 1
        coefficient = rng.randint(-coefficient_bound, coefficient_bound)
        if coefficient:
            terms[tuple(exponents)] = QQ(coefficient)
    return ring.from_dict(terms) if terms else ring.zero


def random_monomial(rng: random.Random, ring: PolyRing, max_degree: int = 2) -> PolyElement:
    exponents = [0] * ring.ngens
    for _ in range(rng.randint(0, max_degree)):
        exponents[rng.randrange(ring.ngens)] += 1
    return ring.from_dict({tuple(exponents): QQ.one})


def generate_trial_polynomials(rng: random.Random, members: Sequence[PolyElement],
                               radical: Sequence[PolyElement], trials: int) -> List[Tuple[str, PolyElement]]:
    """
    Generate ``trials`` labelled polynomials for membership cross-checks.

    Categories cycle through: combinations of ideal generators (members),
    members plus one stray monomial (near misses), products and powers of
    radical generators (in √J, often not in J), and plain random polynomials.
    """
    ring = members[0].ring
    payloads = []
    for index in range(trials):
        category = CATEGORIES[index % len(CATEGORIES)]
        if category == MEMBER:
            phi = ring.zero
            for g in members:
                phi += random_polynomial(rng, ring) * g
        elif category == NEAR_MISS:
            phi = rng.choice(members) * random_polynomial(rng, ring) + random_monomial(rng, ring)
        elif category == RADICAL and radical:
            g = rng.choice(radical)
            phi = g ** rng.randint(1, 3) * random_polynomial(rng, ring, max_degree=1)
        else:
            category = RANDOM
            phi = random_polynomial(rng, ring, max_degree=4, max_terms=4)
        payloads.append((category, phi))

    logger.debug(f"Generated {len(payloads)} trial polynomial(s) over {ring.symbols}.")
    return payloads
