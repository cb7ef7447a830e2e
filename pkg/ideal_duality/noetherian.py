"""
Noetherian operators for primary ideals whose radical is a graph ω = g(ζ).

After the shear ω -> ω + g(ζ) the variety becomes ω = 0. Over the field
k(ζ) the functionals D = Σ c_β(ζ) ∂^β/∂ω^β evaluated at ω = 0 that kill the
translated ideal form a finite-dimensional space; a basis, cleared of
denominators by a power of h, is a system of Noetherian operators:
φ ∈ Q iff every L_j φ vanishes on V.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, PolyRing

from ideal_duality.algebra import (CoefficientField, DiffOperator, Monomial, apply_diff, elimination_order,
                                   format_polynomial, generator, make_ring, substitute, total_degree,
                                   transfer, variable_index, variable_names)
from ideal_duality.config import Config
from ideal_duality.exceptions import (IneligibleInputError, InternalAlgebraError, NonGraphSectionError,
                                      NoetherPositionError, SectionMismatchError, VariableMismatchError)
from ideal_duality.groebner import eliminate, ideal_basis, membership, radical_membership

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VariableSplit:
    """Free variables ζ (coordinates on V) and dependent variables ω (normal directions)."""
    free: Tuple[str, ...]
    dependent: Tuple[str, ...]

    def check_partition(self, ring: PolyRing):
        names = variable_names(ring)
        together = list(self.free) + list(self.dependent)
        if sorted(together) != sorted(names) or len(set(together)) != len(together):
            raise VariableMismatchError(
                f"Split free={list(self.free)} dependent={list(self.dependent)} does not partition {list(names)}.")

    def as_json(self):
        return {"free": list(self.free), "dependent": list(self.dependent)}


@dataclass(frozen=True)
class RationalSection:
    """ω_i = g_i(ζ); presents the variety ideal P = (ω_i - g_i)."""
    g: Tuple[Tuple[str, PolyElement], ...]

    @classmethod
    def of(cls, mapping: Mapping[str, PolyElement]):
        return cls(tuple(sorted(mapping.items())))

    @classmethod
    def origin(cls, ring: PolyRing, dependent: Sequence[str]):
        return cls.of({name: ring.zero for name in dependent})

    @property
    def mapping(self) -> Dict[str, PolyElement]:
        return dict(self.g)

    def variety_ideal(self, ring: PolyRing) -> List[PolyElement]:
        return [generator(ring, name) - value for name, value in self.g]

    def as_json(self):
        return {name: format_polynomial(value) for name, value in self.g}


@dataclass(frozen=True)
class DualSpace:
    """Basis of the inverse system over k(ζ), in translated coordinates."""
    ring: PolyRing
    ideal: Tuple[PolyElement, ...]
    split: VariableSplit
    section: RationalSection
    operators: Tuple[DiffOperator, ...]
    dimensions: Tuple[int, ...]
    nil_index: int


@dataclass(frozen=True)
class NoetherianSystem:
    """Operators L_1..L_ν with polynomial coefficients, the variety ideal P and the split."""
    ring: PolyRing
    ideal: Tuple[PolyElement, ...]
    operators: Tuple[DiffOperator, ...]
    variety_ideal: Tuple[PolyElement, ...]
    split: VariableSplit
    section: RationalSection
    nil_index: int
    h: PolyElement
    powers: Tuple[int, ...] = field(default=())

    @cached_property
    def variety_basis(self):
        return ideal_basis(list(self.variety_ideal), ring=self.ring)

    def vanishes_on_variety(self, phi: PolyElement) -> bool:
        # P is prime, so vanishing on V is plain membership in P
        return membership(phi, self.variety_basis)

    def is_sound(self) -> bool:
        """Every operator sends every generator of Q into P."""
        return all(self.vanishes_on_variety(apply_diff(L, q)) for L in self.operators for q in self.ideal)

    @property
    def order_zero_suffices(self) -> bool:
        return len(self.operators) == 1 and self.operators[0].order == 0

    def as_json(self):
        return {
            "split": self.split.as_json(),
            "section": self.section.as_json(),
            "variety_ideal": [format_polynomial(p) for p in self.variety_ideal],
            "operators": [L.as_json() for L in self.operators],
            "nil_index": self.nil_index,
            "h": format_polynomial(self.h),
            "powers": list(self.powers),
        }


def _polys_ring(Q: Sequence[PolyElement]) -> PolyRing:
    if not Q:
        raise IneligibleInputError("Noetherian operators need a nonempty list of ideal generators.")
    return Q[0].ring


def check_noether_position(Q: Sequence[PolyElement], split: VariableSplit) -> bool:
    """
    Q ∩ k[ζ] = (0), and in the block order with ω eliminated first every ω_i
    has a pure power among the leading monomials.
    """
    ring = _polys_ring(Q)
    split.check_partition(ring)
    if eliminate(list(Q), split.free):
        logger.info("Noether position fails: Q meets k[free] nontrivially.")
        return False
    names = variable_names(ring)
    block_ring = PolyRing([ring.symbols[names.index(name)] for name in split.dependent + split.free],
                          ring.domain, elimination_order(len(split.dependent)))
    leads = [p.LM for p in ideal_basis([transfer(q, block_ring) for q in Q]).polynomials()]
    for index, name in enumerate(split.dependent):
        pure = any(monom[index] > 0 and not any(e for i, e in enumerate(monom) if i != index) for monom in leads)
        if not pure:
            logger.info(f"Noether position fails: no pure power of {name} among the leading terms.")
            return False
    return True


def verify_section(Q: Sequence[PolyElement], split: VariableSplit, section: RationalSection) -> List[PolyElement]:
    """Check √Q = (ω_i - g_i(ζ)); returns the variety ideal P."""
    ring = _polys_ring(Q)
    mapping = section.mapping
    if sorted(mapping) != sorted(split.dependent):
        raise NonGraphSectionError(f"The section must give every dependent variable {list(split.dependent)}.")
    dependent_indices = [variable_index(ring, name) for name in split.dependent]
    for name, value in mapping.items():
        if value.ring != ring:
            raise SectionMismatchError(f"Section value for '{name}' is not in the ring of Q.")
        if any(monom[i] for monom in value.itermonoms() for i in dependent_indices):
            raise NonGraphSectionError(f"Section value for '{name}' depends on a dependent variable.")
    P = section.variety_ideal(ring)
    if not all(radical_membership(p, list(Q)) for p in P):
        raise SectionMismatchError("Some ω_i - g_i(ζ) does not vanish on V(Q).")
    P_basis = ideal_basis(P, ring=ring)
    if not all(membership(q, P_basis) for q in Q):
        raise SectionMismatchError("Some generator of Q does not vanish on the section.")
    return P


def _multi_indices(count: int, degree: int) -> List[Monomial]:
    """All β with |β| <= degree, highest order first, then by multi-index descending."""
    indices = [beta for beta in product(range(degree + 1), repeat=count) if sum(beta) <= degree]
    indices.sort(key=lambda beta: (total_degree(beta), beta), reverse=True)
    return indices


def _split_terms(p: PolyElement, dependent_idx: Sequence[int], free_idx: Sequence[int],
                 coefficient_ring: Optional[PolyRing]) -> Dict[Monomial, object]:
    """ω-monomial -> coefficient (a polynomial in ζ, or a rational when there is no ζ)."""
    grouped: Dict[Monomial, Dict[Monomial, object]] = {}
    for monom, coeff in p.items():
        omega = tuple(monom[i] for i in dependent_idx)
        zeta = tuple(monom[i] for i in free_idx)
        bucket = grouped.setdefault(omega, {})
        bucket[zeta] = bucket.get(zeta, QQ.zero) + coeff
    if coefficient_ring is None:
        return {omega: bucket.get((), QQ.zero) for omega, bucket in grouped.items()}
    return {omega: coefficient_ring.from_dict(bucket) for omega, bucket in grouped.items()}


def _nullspace_rows(rows: List[List[object]], ncols: int, K) -> List[List[object]]:
    """Canonical basis of the right nullspace: reduced row echelon form of the basis vectors."""
    if rows:
        echelon, pivots = DomainMatrix(rows, (len(rows), ncols), K).rref()
        reduced = echelon.to_list()
    else:
        reduced, pivots = [], ()
    free_columns = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free_columns:
        vector = [K.zero] * ncols
        vector[f] = K.one
        for r, pc in enumerate(pivots):
            vector[pc] = K.zero - reduced[r][f]
        basis.append(vector)
    if not basis:
        return []
    echelon, _ = DomainMatrix(basis, (len(basis), ncols), K).rref()
    return [row for row in echelon.to_list() if any(row)]


def dual_space(Q: Sequence[PolyElement], split: VariableSplit, section: RationalSection) -> DualSpace:
    """
    Inverse system of Q along V over k(ζ), grown degree by degree until the
    dimension stops increasing.
    """
    ring = _polys_ring(Q)
    if not check_noether_position(Q, split):
        raise NoetherPositionError(f"free={list(split.free)} dependent={list(split.dependent)} "
                                   f"is not a Noether position for the ideal.")
    verify_section(Q, split, section)

    shear = {name: generator(ring, name) + value for name, value in section.mapping.items()}
    translated = [substitute(q, shear) for q in Q]

    dependent_idx = [variable_index(ring, name) for name in split.dependent]
    free_idx = [variable_index(ring, name) for name in split.free]
    coefficient_ring = make_ring(split.free) if split.free else None
    operator_ring = make_ring(split.dependent, field=CoefficientField.rational_functions(split.free))
    K = operator_ring.domain
    source_domain = coefficient_ring.to_domain() if coefficient_ring is not None else QQ

    pieces = [_split_terms(q, dependent_idx, free_idx, coefficient_ring) for q in translated]
    count = len(split.dependent)

    dimensions: List[int] = []
    bases: List[Tuple[List[Monomial], List[List[object]]]] = []
    degree = 0
    while True:
        if degree > Config.MAX_DERIVATIVE_ORDER:
            raise IneligibleInputError(
                f"Dual space still growing at derivative order {Config.MAX_DERIVATIVE_ORDER}; is Q primary?")
        columns = _multi_indices(count, degree)
        multipliers = _multi_indices(count, degree)
        rows = []
        for piece in pieces:
            for gamma in multipliers:
                row = []
                for beta in columns:
                    shifted = tuple(b - g for b, g in zip(beta, gamma))
                    if min(shifted, default=0) < 0 or shifted not in piece:
                        row.append(K.zero)
                        continue
                    weight = 1
                    for b in beta:
                        weight *= factorial(b)
                    row.append(K.convert_from(piece[shifted], source_domain) * K.convert(weight))
                if any(row):
                    rows.append(row)
        basis = _nullspace_rows(rows, len(columns), K)
        logger.debug(f"Dual space at derivative order {degree}: dimension {len(basis)}.")
        if degree > 0 and len(basis) == dimensions[-1]:
            break
        dimensions.append(len(basis))
        bases.append((columns, basis))
        degree += 1

    nil_index = degree - 1
    columns, basis = bases[-1]
    operators = []
    for vector in basis:
        terms = {beta: operator_ring.ground_new(value) for beta, value in zip(columns, vector) if value}
        operators.append(DiffOperator.from_terms(operator_ring, split.dependent, terms))
    operators.sort(key=lambda L: (L.order, [(beta, str(c)) for beta, c in L.terms]))
    logger.info(f"Dual space dimensions by order {dimensions}, nil index {nil_index}.")
    return DualSpace(ring, tuple(Q), split, section, tuple(operators), tuple(dimensions), nil_index)


def _denominators(L: DiffOperator) -> List[PolyElement]:
    if not L.ring.domain.is_FractionField:
        return []
    return [c.LC.denom for _, c in L.terms if not c.LC.denom.is_ground]


def clear_denominators(space: DualSpace, h: Optional[PolyElement] = None) -> NoetherianSystem:
    """
    Multiply each operator by the least power h^N making its coefficients
    polynomial (h defaults to the lcm of all denominators) and read it in the
    original coordinates: the shear keeps ∂/∂ω and the coefficients unchanged.
    """
    ring = space.ring
    operators = space.operators
    field_domain = operators[0].ring.domain if operators else QQ
    has_parameters = field_domain.is_FractionField
    if has_parameters:
        field_ring = field_domain.field.ring
        if h is None:
            h_field = field_ring.one
            for L in operators:
                for d in _denominators(L):
                    h_field = h_field.lcm(d)
        else:
            h_field = transfer(h, field_ring)
        h_frac = field_domain.field.field_new(h_field)
        h_original = transfer(h_field, ring)
    else:
        h_frac, h_original = QQ.one, ring.one if h is None else h

    cleared, powers = [], []
    for L in operators:
        power = 0
        while True:
            scale = h_frac ** power if has_parameters else QQ.one
            values = {beta: c.LC * scale for beta, c in L.terms}
            if not has_parameters or all(v.denom.is_ground for v in values.values()):
                break
            power += 1
            if power > Config.MAX_DERIVATIVE_ORDER:
                raise IneligibleInputError("No power of h clears the operator denominators.")
        terms = {}
        for beta, value in values.items():
            if has_parameters:
                numer = value.numer.quo_ground(value.denom.LC)
                terms[beta] = transfer(numer, ring)
            else:
                terms[beta] = ring.ground_new(value)
        cleared.append(DiffOperator.from_terms(ring, space.split.dependent, terms))
        powers.append(power)

    system = NoetherianSystem(ring, space.ideal, tuple(cleared), tuple(space.section.variety_ideal(ring)),
                              space.split, space.section, space.nil_index, h_original, tuple(powers))
    return system


def noetherian_operators(Q: Sequence[PolyElement], split: VariableSplit,
                         section: Optional[RationalSection] = None, h: Optional[PolyElement] = None) -> NoetherianSystem:
    """dual_space + clear_denominators + soundness check."""
    ring = _polys_ring(Q)
    if section is None:
        if split.free:
            raise NonGraphSectionError("A section ω = g(ζ) is required when there are free variables.")
        section = RationalSection.origin(ring, split.dependent)
    system = clear_denominators(dual_space(Q, split, section), h)
    if not system.is_sound():
        raise InternalAlgebraError("An operator maps a generator of Q outside the variety ideal.")
    return system


def noetherian_membership(phi: PolyElement, S: NoetherianSystem) -> bool:
    """φ ∈ Q iff L_j φ ∈ P for every operator."""
    if phi.ring != S.ring:
        raise VariableMismatchError("The polynomial and the operator system live in different rings.")
    return all(S.vanishes_on_variety(apply_diff(L, phi)) for L in S.operators)


def intersection_membership(phi: PolyElement, systems: Sequence[NoetherianSystem]) -> bool:
    """φ ∈ Q_1 ∩ ... ∩ Q_r iff φ passes every component's operators."""
    return all(noetherian_membership(phi, S) for S in systems)
