import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from ideal_duality.algebra import format_polynomial
from ideal_duality.config import Config
from ideal_duality.exceptions import IneligibleInputError
from ideal_duality.groebner import ideal_basis, intersect_ideals, membership
from ideal_duality.noetherian import NoetherianSystem, intersection_membership, noetherian_operators
from ideal_duality.problem import Component, ProblemFile
from ideal_duality.utils import CATEGORIES, generate_trial_polynomials

logger = logging.getLogger(__name__)


def synthesize_systems(problem: ProblemFile) -> List[NoetherianSystem]:
    """One operator system per primary component of the problem."""
    systems = []
    for index, component in enumerate(problem.primary_components()):
        split = component.split
        if split is None:
            raise IneligibleInputError(f"Component {index + 1} has no variable split.")
        systems.append(noetherian_operators(list(component.ideal), split, component.section))
    return systems


def groebner_oracle_ideal(components: Sequence[Component]) -> List[PolyElement]:
    """Generators of the intersection of the component ideals."""
    result = list(components[0].ideal)
    for component in components[1:]:
        result = intersect_ideals(result, list(component.ideal))
    return result


@dataclass(frozen=True)
class CrossCheckResult:
    trials: int
    agree: int
    seed: int
    by_category: Tuple[Tuple[str, int, int], ...]
    disagreements: Tuple[Dict[str, object], ...]
    order_zero_suffices: bool
    prime: bool

    @property
    def passed(self) -> bool:
        return self.agree == self.trials

    def as_json(self):
        return {
            "trials": self.trials,
            "agree": self.agree,
            "seed": self.seed,
            "passed": self.passed,
            "by_category": {name: {"trials": total, "members": members}
                            for name, total, members in self.by_category},
            "disagreements": list(self.disagreements),
            "order_zero_suffices": self.order_zero_suffices,
            "prime": self.prime,
        }


class OracleCrossCheck:
    def __init__(self, problem: ProblemFile, trials: Optional[int] = None, seed: Optional[int] = None):
        """
        Compare Noetherian-operator membership with Gröbner membership on
        seeded random polynomials.
        """
        self.problem = problem
        self.trials = Config.DEFAULT_TRIALS if trials is None else trials
        self.seed = Config.DEFAULT_SEED if seed is None else seed
        self.systems: List[NoetherianSystem] = []

    def synthesize(self) -> List[NoetherianSystem]:
        if not self.systems:
            self.systems = synthesize_systems(self.problem)
        return self.systems

    def run(self) -> CrossCheckResult:
        systems = self.synthesize()
        components = self.problem.primary_components()
        oracle = ideal_basis(groebner_oracle_ideal(components))
        radical = [p for S in systems for p in S.variety_ideal]
        rng = random.Random(self.seed)
        payloads = generate_trial_polynomials(rng, oracle.polynomials(), radical, self.trials)

        agree = 0
        counts = {name: [0, 0] for name in CATEGORIES}
        disagreements = []
        for index, (category, phi) in enumerate(payloads):
            by_operators = intersection_membership(phi, systems)
            by_groebner = membership(phi, oracle)
            counts[category][0] += 1
            counts[category][1] += int(by_groebner)
            if by_operators == by_groebner:
                agree += 1
            else:
                witness = {"trial": index, "category": category, "phi": format_polynomial(phi),
                           "operators": by_operators, "groebner": by_groebner}
                disagreements.append(witness)
                logger.error(f"Disagreement on trial {index}: {witness}")

        result = CrossCheckResult(
            trials=len(payloads),
            agree=agree,
            seed=self.seed,
            by_category=tuple((name, total, members) for name, (total, members) in counts.items()),
            disagreements=tuple(disagreements),
            order_zero_suffices=all(S.order_zero_suffices for S in systems),
            prime=all(all(membership(p, ideal_basis(list(S.ideal))) for p in S.variety_ideal) for S in systems),
        )
        logger.info(f"Oracle cross-check: {agree}/{len(payloads)} agree (seed {self.seed}).")
        return result


def oracle_xcheck(problem: ProblemFile, trials: Optional[int] = None, seed: Optional[int] = None) -> CrossCheckResult:
    return OracleCrossCheck(problem, trials, seed).run()
