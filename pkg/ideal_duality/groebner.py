"""
Buchberger engine for ideals and submodules of free modules.

Everything that decides a duality claim is checked against this module:
normal forms, membership, syzygies, elimination, Krull dimension and
radical membership.
"""
import heapq
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, List, Optional, Sequence, Tuple, Union

from sympy.polys.monomials import monomial_div, monomial_divides, monomial_lcm, monomial_mul
from sympy.polys.rings import PolyElement, PolyRing

from ideal_duality.algebra import (Monomial, elimination_order, extend_ring, total_degree,
                                   transfer, variable_names)
from ideal_duality.exceptions import RingMismatchError
from ideal_duality.polymatrix import PolyMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreeModuleElement:
    """A vector of polynomials of one ring; rank 1 elements stand for ideal members."""
    components: Tuple[PolyElement, ...]

    def __post_init__(self):
        if not self.components:
            raise RingMismatchError("A free module element needs at least one component.")
        ring = self.components[0].ring
        if any(c.ring != ring for c in self.components):
            raise RingMismatchError("All components of a free module element must share one ring.")

    @classmethod
    def of(cls, *components: PolyElement):
        return cls(tuple(components))

    @classmethod
    def zero(cls, ring: PolyRing, rank: int):
        return cls((ring.zero,) * rank)

    @classmethod
    def basis_vector(cls, ring: PolyRing, rank: int, index: int):
        return cls(tuple(ring.one if i == index else ring.zero for i in range(rank)))

    @property
    def ring(self) -> PolyRing:
        return self.components[0].ring

    @property
    def rank(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(not c for c in self.components)

    def __add__(self, other):
        self._check(other)
        return FreeModuleElement(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        self._check(other)
        return FreeModuleElement(tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return FreeModuleElement(tuple(-c for c in self.components))

    def times(self, factor: PolyElement) -> "FreeModuleElement":
        return FreeModuleElement(tuple(c * factor for c in self.components))

    def mul_term(self, monom: Monomial, coeff) -> "FreeModuleElement":
        return FreeModuleElement(tuple(c.mul_term((monom, coeff)) if c else c for c in self.components))

    def mul_ground(self, coeff) -> "FreeModuleElement":
        return FreeModuleElement(tuple(c.mul_ground(coeff) for c in self.components))

    def _check(self, other):
        if self.rank != other.rank or self.ring != other.ring:
            raise RingMismatchError(f"Free module elements of rank {self.rank} and {other.rank} do not match.")


Term = Tuple[Monomial, int, object]  # (monomial, position, coefficient)


@dataclass(frozen=True)
class ModuleOrder:
    """
    Monomial order on a free module, extending the ring order ``ring_order``.

    kinds: ``top`` (term over position), ``pot`` (position over term),
    ``schreyer`` (m*e_i compared as m*w_i inside ``base``, ties by position) and
    ``elimination`` (positions below ``split`` dominate; the rest use ``lower``).
    Lower positions are larger in every kind.
    """
    ring_order: Callable
    kind: str = "top"
    base: Optional["ModuleOrder"] = None
    weights: Tuple[Tuple[Monomial, int], ...] = ()
    lower: Optional["ModuleOrder"] = None
    split: int = 0

    @classmethod
    def term_over_position(cls, ring_order):
        return cls(ring_order, "top")

    @classmethod
    def position_over_term(cls, ring_order):
        return cls(ring_order, "pot")

    @classmethod
    def schreyer(cls, base: "ModuleOrder", weights: Sequence[Tuple[Monomial, int]]):
        return cls(base.ring_order, "schreyer", base=base, weights=tuple(weights))

    @classmethod
    def elimination(cls, upper: "ModuleOrder", lower: "ModuleOrder", split: int):
        return cls(upper.ring_order, "elimination", base=upper, lower=lower, split=split)

    def key(self, monom: Monomial, pos: int):
        if self.kind == "top":
            return self.ring_order(monom), -pos
        if self.kind == "pot":
            return -pos, self.ring_order(monom)
        if self.kind == "schreyer":
            shift, shift_pos = self.weights[pos]
            return self.base.key(monomial_mul(monom, shift), shift_pos), -pos
        if self.kind == "elimination":
            if pos < self.split:
                return 1, self.base.key(monom, pos)
            return 0, self.lower.key(monom, pos - self.split)
        raise ValueError(f"Unknown module order kind '{self.kind}'.")


def leading_term(element: FreeModuleElement, order: ModuleOrder) -> Optional[Term]:
    best, best_key = None, None
    for pos, component in enumerate(element.components):
        if not component:
            continue
        monom = max(component.itermonoms(), key=order.ring_order)
        key = order.key(monom, pos)
        if best_key is None or key > best_key:
            best, best_key = (monom, pos, component[monom]), key
    return best


def _monic(element: FreeModuleElement, order: ModuleOrder) -> FreeModuleElement:
    domain = element.ring.domain
    coeff = leading_term(element, order)[2]
    if coeff == domain.one:
        return element
    return element.mul_ground(domain.quo(domain.one, coeff))


@dataclass(frozen=True)
class GroebnerBasis:
    """Gröbner basis of a submodule of ``ring^rank`` with respect to ``order``."""
    generators: Tuple[FreeModuleElement, ...]
    order: ModuleOrder
    ring: PolyRing
    rank: int
    reduced: bool = True

    @property
    def leading_terms(self) -> List[Term]:
        return [leading_term(g, self.order) for g in self.generators]

    def polynomials(self) -> List[PolyElement]:
        if self.rank != 1:
            raise RingMismatchError("Only a rank-1 basis is a list of polynomials.")
        return [g.components[0] for g in self.generators]

    def is_zero_module(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        """For ideals: does the basis generate the whole ring."""
        return self.rank == 1 and any(p.is_ground for p in self.polynomials())

    def normal_form(self, phi):
        return normal_form(phi, self)

    def contains(self, phi) -> bool:
        return membership(phi, self)

    def satisfies_buchberger_criterion(self) -> bool:
        leads = self.leading_terms
        for i, j in combinations(range(len(self.generators)), 2):
            if leads[i][1] != leads[j][1]:
                continue
            s = _s_vector(self.generators[i], leads[i], self.generators[j], leads[j])
            if not _reduce(s, self.generators, leads, self.order).is_zero():
                return False
        return True


def _s_vector(f: FreeModuleElement, lf: Term, g: FreeModuleElement, lg: Term) -> FreeModuleElement:
    lcm = monomial_lcm(lf[0], lg[0])
    domain = f.ring.domain
    return (f.mul_term(monomial_div(lcm, lf[0]), domain.quo(domain.one, lf[2]))
            - g.mul_term(monomial_div(lcm, lg[0]), domain.quo(domain.one, lg[2])))


def _find_reducer(term: Term, leads: Sequence[Term]) -> Optional[int]:
    monom, pos, _ = term
    for index, (lead_monom, lead_pos, _) in enumerate(leads):
        if lead_pos == pos and monomial_divides(lead_monom, monom):
            return index
    return None


def _reduce(element: FreeModuleElement, basis: Sequence[FreeModuleElement], leads: Sequence[Term],
            order: ModuleOrder, full: bool = True) -> FreeModuleElement:
    """Division by ``basis``; with ``full=False`` only the leading term is reduced away."""
    ring, domain = element.ring, element.ring.domain
    remainder = [ring.zero] * element.rank
    current = element
    while not current.is_zero():
        term = leading_term(current, order)
        index = _find_reducer(term, leads)
        if index is not None:
            lead_monom, _, lead_coeff = leads[index]
            current = current - basis[index].mul_term(monomial_div(term[0], lead_monom),
                                                      domain.quo(term[2], lead_coeff))
            continue
        if not full:
            break
        monom, pos, coeff = term
        single = ring.term_new(monom, coeff)
        remainder[pos] += single
        current = FreeModuleElement(tuple(c - single if i == pos else c
                                          for i, c in enumerate(current.components)))
    return FreeModuleElement(tuple(r + c for r, c in zip(remainder, current.components)))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def buchberger(gens: Sequence[FreeModuleElement], order: Optional[ModuleOrder] = None,
               ring: Optional[PolyRing] = None, rank: Optional[int] = None) -> GroebnerBasis:
    """
    Reduced Gröbner basis of the submodule generated by ``gens``.

    Pairs are taken by the normal strategy (least lcm degree, then pair index);
    the product criterion is used for ideals, the chain criterion always.
    """
    if gens:
        ring, rank = gens[0].ring, gens[0].rank
    if ring is None or rank is None:
        raise RingMismatchError("An empty generator list needs an explicit ring and rank.")
    for g in gens:
        if g.rank != rank or g.ring != ring:
            raise RingMismatchError("All generators must live in the same free module.")
    order = order or ModuleOrder.term_over_position(ring.order)

    basis: List[FreeModuleElement] = []
    leads: List[Term] = []
    for g in gens:
        if not g.is_zero():
            basis.append(_monic(g, order))
            leads.append(leading_term(basis[-1], order))

    pending = set()
    queue = []

    def push_pairs(new_index):
        for old_index in range(new_index):
            if leads[old_index][1] != leads[new_index][1]:
                continue
            lcm = monomial_lcm(leads[old_index][0], leads[new_index][0])
            heapq.heappush(queue, (total_degree(lcm), old_index, new_index))
            pending.add((old_index, new_index))

    for index in range(len(basis)):
        push_pairs(index)

    processed = 0
    while queue:
        _, i, j = heapq.heappop(queue)
        pending.discard((i, j))
        lead_i, lead_j = leads[i], leads[j]
        if rank == 1 and _coprime(lead_i[0], lead_j[0]):
            continue
        lcm = monomial_lcm(lead_i[0], lead_j[0])
        if _chain_criterion(i, j, lcm, lead_i[1], leads, pending):
            continue
        processed += 1
        s = _s_vector(basis[i], lead_i, basis[j], lead_j)
        s = _reduce(s, basis, leads, order, full=False)
        if s.is_zero():
            continue
        basis.append(_monic(s, order))
        leads.append(leading_term(basis[-1], order))
        push_pairs(len(basis) - 1)

    logger.debug(f"Buchberger: {processed} S-vector(s) reduced, {len(basis)} element(s) before interreduction.")
    reduced = _interreduce(basis, leads, order)
    return GroebnerBasis(tuple(reduced), order, ring, rank, reduced=True)


def _chain_criterion(i: int, j: int, lcm: Monomial, pos: int, leads: Sequence[Term], pending) -> bool:
    for k, (monom, k_pos, _) in enumerate(leads):
        if k in (i, j) or k_pos != pos or not monomial_divides(monom, lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def _interreduce(basis: List[FreeModuleElement], leads: List[Term], order: ModuleOrder) -> List[FreeModuleElement]:
    keep = []
    for index, (monom, pos, _) in enumerate(leads):
        redundant = False
        for other, (other_monom, other_pos, _) in enumerate(leads):
            if other == index or other_pos != pos or not monomial_divides(other_monom, monom):
                continue
            if other_monom != monom or other < index:
                redundant = True
                break
        if not redundant:
            keep.append(index)
    minimal = [basis[i] for i in keep]
    minimal_leads = [leads[i] for i in keep]
    result = []
    for index, element in enumerate(minimal):
        others = minimal[:index] + minimal[index + 1:]
        other_leads = minimal_leads[:index] + minimal_leads[index + 1:]
        result.append(_monic(_reduce(element, others, other_leads, order), order))
    result.sort(key=lambda g: order.key(*leading_term(g, order)[:2]), reverse=True)
    return result


def ideal_basis(polys: Sequence[PolyElement], ring: Optional[PolyRing] = None, order=None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``polys`` in the ring's own order."""
    if polys:
        ring = polys[0].ring
    module_order = ModuleOrder.term_over_position(order or ring.order)
    return buchberger([FreeModuleElement.of(p) for p in polys], module_order, ring=ring, rank=1)


def _as_element(phi) -> Tuple[FreeModuleElement, bool]:
    if isinstance(phi, FreeModuleElement):
        return phi, False
    return FreeModuleElement.of(phi), True


def normal_form(phi: Union[FreeModuleElement, PolyElement], G: GroebnerBasis):
    """Remainder of ``phi`` with no term divisible by a leading term of ``G``."""
    element, unwrap = _as_element(phi)
    if element.rank != G.rank or element.ring != G.ring:
        raise RingMismatchError(f"Element of rank {element.rank} cannot be reduced by a rank {G.rank} basis.")
    result = _reduce(element, G.generators, G.leading_terms, G.order)
    return result.components[0] if unwrap else result


def membership(phi: Union[FreeModuleElement, PolyElement], G: GroebnerBasis) -> bool:
    element, unwrap = _as_element(phi)
    if unwrap:
        return not normal_form(element.components[0], G)
    return normal_form(element, G).is_zero()


def minimal_generators(columns: Sequence[FreeModuleElement]) -> List[FreeModuleElement]:
    """Drop zero columns and columns that lie in the submodule generated by the remaining ones."""
    kept = [c for c in columns if not c.is_zero()]
    index = len(kept) - 1
    while index >= 0 and len(kept) > 1:
        others = kept[:index] + kept[index + 1:]
        if membership(kept[index], buchberger(others)):
            del kept[index]
        index -= 1
    return kept


def syzygy_module(M: PolyMatrix, prune: bool = True) -> PolyMatrix:
    """
    Columns generating ker(M), as a matrix with ``M.source_rank`` rows.

    Each column m_j is lifted to (m_j, e_j); a Gröbner basis in the order that
    eliminates the first block, with the Schreyer order induced by the leading
    terms of the m_j on the second block, contains a basis of the kernel.
    """
    ring, rows, cols = M.ring, M.target_rank, M.source_rank
    if cols == 0:
        return PolyMatrix.zero(ring, 0, 0)
    top = ModuleOrder.term_over_position(ring.order)
    weights = []
    for column in M.columns():
        lead = leading_term(FreeModuleElement(column), top) if rows else None
        weights.append((lead[0], lead[1]) if lead else ((0,) * ring.ngens, 0))
    order = ModuleOrder.elimination(top, ModuleOrder.schreyer(top, weights), rows)
    lifted = [FreeModuleElement(column + FreeModuleElement.basis_vector(ring, cols, j).components)
              for j, column in enumerate(M.columns())]
    G = buchberger(lifted, order)
    kernel = [FreeModuleElement(g.components[rows:]) for g in G.generators
              if all(not c for c in g.components[:rows])]
    if prune:
        kernel = minimal_generators(kernel)
    logger.debug(f"Syzygies of a {M.shape} matrix: {len(kernel)} generator(s).")
    return PolyMatrix.from_columns(ring, [k.components for k in kernel], cols)


def _ideal_polys(I) -> List[PolyElement]:
    if isinstance(I, GroebnerBasis):
        return I.polynomials()
    return [p for p in I]


def dimension(G: GroebnerBasis) -> int:
    """
    Krull dimension of V(I): the largest set of variables no leading monomial
    of G is supported in. The unit ideal has dimension -1.
    """
    if G.rank != 1:
        raise RingMismatchError("Dimension is computed for ideals (rank 1).")
    if G.is_unit():
        return -1
    n = G.ring.ngens
    supports = [frozenset(i for i, e in enumerate(monom) if e) for monom, _, _ in G.leading_terms]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = set(subset)
            if not any(support <= chosen for support in supports):
                return size
    return -1


def codimension(G: GroebnerBasis) -> int:
    """n - dim; the unit ideal (empty variety) gets the sentinel n + 1."""
    dim = dimension(G)
    n = G.ring.ngens
    return n + 1 if dim < 0 else n - dim


def ideal_codimension(polys: Sequence[PolyElement], ring: PolyRing) -> int:
    return codimension(ideal_basis(list(polys), ring=ring))


def eliminate(I, vars_to_keep: Sequence[str]) -> List[PolyElement]:
    """Generators of I ∩ k[vars_to_keep], returned as elements of the original ring."""
    polys = _ideal_polys(I)
    if not polys:
        return []
    ring = polys[0].ring
    names = variable_names(ring)
    keep = [name for name in names if name in set(vars_to_keep)]
    drop = [name for name in names if name not in set(vars_to_keep)]
    if not drop:
        return ideal_basis(polys).polynomials()
    block_ring = PolyRing([ring.symbols[names.index(name)] for name in drop + keep], ring.domain,
                          elimination_order(len(drop)))
    G = ideal_basis([transfer(p, block_ring) for p in polys])
    result = []
    for p in G.polynomials():
        if not any(p.LM[:len(drop)]):
            result.append(transfer(p, ring))
    logger.debug(f"Elimination of {drop}: {len(result)} generator(s) remain.")
    return result


def _fresh_variable(ring: PolyRing) -> str:
    names = set(variable_names(ring))
    fresh = "t"
    while fresh in names:
        fresh = "_" + fresh
    return fresh


def radical_membership(phi: PolyElement, I) -> bool:
    """φ ∈ √I iff 1 ∈ I + (1 - t·φ) with a fresh variable t."""
    polys = _ideal_polys(I)
    ring = phi.ring
    extended = extend_ring(ring, [_fresh_variable(ring)])
    t = extended.gens[-1]
    generators = [transfer(p, extended) for p in polys] + [extended.one - t * transfer(phi, extended)]
    return ideal_basis(generators).is_unit()


def intersect_ideals(I, K) -> List[PolyElement]:
    """I ∩ K = (t·I + (1 - t)·K) ∩ k[x]; the zero ideal is an empty list."""
    polys_i, polys_k = _ideal_polys(I), _ideal_polys(K)
    if not polys_i or not polys_k:
        return []
    ring = polys_i[0].ring
    extended = extend_ring(ring, [_fresh_variable(ring)], first=True)
    t = extended.gens[0]
    generators = ([t * transfer(p, extended) for p in polys_i]
                  + [(extended.one - t) * transfer(q, extended) for q in polys_k])
    return [transfer(p, ring) for p in eliminate(generators, variable_names(ring))]
