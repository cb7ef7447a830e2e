"""
The absolute case: a zero-dimensional complete intersection J = (f_1..f_n)
in n variables. Hefer matrices and their determinant (the Bezoutian) give
dual bases of k[z]/J, and with them the residue functional and its
non-degenerate pairing (a, b) -> res(a*b).
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.monomials import monomial_divides
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing

from ideal_duality.algebra import (Monomial, extend_ring, format_monomial, format_polynomial, format_rational,
                                   substitute, transfer, variable_index, variable_names)
from ideal_duality.exceptions import (IneligibleInputError, InternalAlgebraError, NotZeroDimensionalError,
                                      VariableMismatchError)
from ideal_duality.groebner import GroebnerBasis, dimension, ideal_basis, membership, normal_form
from ideal_duality.polymatrix import PolyMatrix, determinant

logger = logging.getLogger(__name__)

ZETA_PREFIX = "zeta_"


def standard_monomials(G: GroebnerBasis) -> List[Monomial]:
    """Monomials outside the initial ideal, smallest first; G must be zero-dimensional."""
    ring = G.ring
    leads = [monom for monom, _, _ in G.leading_terms]
    bounds = []
    for i in range(ring.ngens):
        powers = [monom[i] for monom in leads if monom[i] and not any(e for j, e in enumerate(monom) if j != i)]
        if not powers:
            raise NotZeroDimensionalError(f"No pure power of {ring.symbols[i]} among the leading terms.")
        bounds.append(min(powers))
    monomials = [monom for monom in product(*(range(b) for b in bounds))
                 if not any(monomial_divides(lead, monom) for lead in leads)]
    monomials.sort(key=ring.order)
    return monomials


@dataclass(frozen=True)
class QuotientAlgebra:
    """k[z]/J with the standard-monomial basis of the reduced Gröbner basis of J."""
    ring: PolyRing
    ideal: Tuple[PolyElement, ...]
    basis: GroebnerBasis
    monomials: Tuple[Monomial, ...]

    @classmethod
    def of(cls, J: Sequence[PolyElement]):
        if not J:
            raise NotZeroDimensionalError("The zero ideal is not zero-dimensional.")
        G = ideal_basis(list(J))
        dim = dimension(G)
        if dim != 0:
            raise NotZeroDimensionalError(f"The ideal has dimension {dim}, not 0.")
        return cls(G.ring, tuple(J), G, tuple(standard_monomials(G)))

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def monomial(self, index: int) -> PolyElement:
        return self.ring.from_dict({self.monomials[index]: self.ring.domain.one})

    def normal_form(self, phi: PolyElement) -> PolyElement:
        return normal_form(phi, self.basis)

    def contains(self, phi: PolyElement) -> bool:
        return membership(phi, self.basis)

    def coordinates(self, phi: PolyElement) -> List:
        """Coefficients of NF(φ) on the standard monomials."""
        reduced = self.normal_form(phi)
        return [reduced.get(monom, QQ.zero) for monom in self.monomials]

    def element(self, coordinates: Sequence) -> PolyElement:
        return self.ring.from_dict({m: c for m, c in zip(self.monomials, coordinates) if c})

    def multiplication_matrix(self, phi: PolyElement) -> DomainMatrix:
        """Matrix of b -> φ*b on the standard basis; column j holds the coordinates of φ*b_j."""
        columns = [self.coordinates(phi * self.monomial(j)) for j in range(self.dim)]
        rows = [[columns[j][i] for j in range(self.dim)] for i in range(self.dim)]
        return DomainMatrix(rows, (self.dim, self.dim), QQ)

    def trace(self, phi: PolyElement):
        rows = self.multiplication_matrix(phi).to_list()
        return sum((rows[i][i] for i in range(self.dim)), QQ.zero)

    def format_basis(self) -> List[str]:
        names = variable_names(self.ring)
        return [format_monomial(m, names) or "1" for m in self.monomials]


def doubled_ring(ring: PolyRing) -> Tuple[PolyRing, Tuple[str, ...]]:
    """k[z, ζ] with ζ_i named ``zeta_<z_i>``."""
    names = variable_names(ring)
    prefix = ZETA_PREFIX
    while any(prefix + name in names for name in names):
        prefix = "_" + prefix
    zeta_names = tuple(prefix + name for name in names)
    return extend_ring(ring, zeta_names), zeta_names


def to_zeta(p: PolyElement, doubled: PolyRing) -> PolyElement:
    """p(z) -> p(ζ) inside the doubled ring."""
    n = p.ring.ngens
    return doubled.from_dict({(0,) * n + monom: coeff for monom, coeff in p.items()})


@dataclass(frozen=True)
class HeferMatrix:
    """
    Entries h[j][k] (j: variable, k: polynomial) in the doubled ring with
    Σ_j h[j][k] * (ζ_j - z_j) = f_k(z) - f_k(ζ).
    """
    ring: PolyRing
    doubled: PolyRing
    polynomials: Tuple[PolyElement, ...]
    matrix: PolyMatrix
    variable_order: Tuple[str, ...]

    def check_identity(self) -> bool:
        n = self.ring.ngens
        gens = self.doubled.gens
        for k, f in enumerate(self.polynomials):
            total = self.doubled.zero
            for j in range(n):
                total += self.matrix.entry(j, k) * (gens[n + j] - gens[j])
            if total != transfer(f, self.doubled) - to_zeta(f, self.doubled):
                return False
        return True


def _check_square_system(f: Sequence[PolyElement]) -> PolyRing:
    if not f:
        raise IneligibleInputError("Residues need n polynomials in n variables.")
    ring = f[0].ring
    if len(f) != ring.ngens:
        raise IneligibleInputError(f"Residues need n polynomials in n variables; got {len(f)} "
                                   f"in {ring.ngens}.")
    return ring


def hefer_matrix(f: Sequence[PolyElement], variable_order: Optional[Sequence[str]] = None) -> HeferMatrix:
    """
    Telescoping construction: replace z by ζ one variable at a time (in
    ``variable_order``, ascending index by default) and divide each step's
    difference by z_j - ζ_j.
    """
    ring = _check_square_system(f)
    names = variable_names(ring)
    order = tuple(variable_order) if variable_order is not None else names
    if sorted(order) != sorted(names):
        raise VariableMismatchError(f"Variable order {list(order)} is not a permutation of {list(names)}.")
    doubled, _ = doubled_ring(ring)
    n = ring.ngens
    gens = doubled.gens
    entries = [[doubled.zero] * n for _ in range(n)]
    for k, fk in enumerate(f):
        lifted = transfer(fk, doubled)
        previous = lifted
        bindings = {}
        for name in order:
            j = variable_index(ring, name)
            bindings[name] = gens[n + j]
            current = substitute(lifted, bindings)
            try:
                quotient = (previous - current).exquo(gens[j] - gens[n + j])
            except ExactQuotientFailed:
                raise InternalAlgebraError(f"Hefer step for {name} in f_{k + 1} is not divisible.")
            entries[j][k] = -quotient
            previous = current
    hefer = HeferMatrix(ring, doubled, tuple(f), PolyMatrix.from_rows(doubled, entries), order)
    if not hefer.check_identity():
        raise InternalAlgebraError("Hefer identity does not expand correctly.")
    return hefer


def bezoutian_sign(n: int) -> int:
    """det h(z, z) = (-1)^n Jac(f); this sign makes the diagonal restriction the Jacobian."""
    return -1 if n % 2 else 1


def bezoutian(hefer: HeferMatrix) -> PolyElement:
    n = hefer.ring.ngens
    raw = determinant(hefer.matrix.entries, hefer.doubled)
    return raw if bezoutian_sign(n) == 1 else -raw


def jacobian_determinant(f: Sequence[PolyElement]) -> PolyElement:
    ring = _check_square_system(f)
    rows = [[fk.diff(x) for x in ring.gens] for fk in f]
    return determinant(rows, ring)


@dataclass(frozen=True)
class DualBases:
    """Bezoutian ≡ Σ_i a_i(ζ) b_i(z) mod J(ζ) + J(z), with b_i the standard monomials."""
    algebra: QuotientAlgebra
    hefer: HeferMatrix
    bezoutian: PolyElement
    standard: Tuple[PolyElement, ...]
    duals: Tuple[PolyElement, ...]


def _doubled_basis(algebra: QuotientAlgebra, doubled: PolyRing) -> GroebnerBasis:
    gens = algebra.basis.polynomials()
    return ideal_basis([transfer(g, doubled) for g in gens] + [to_zeta(g, doubled) for g in gens])


def dual_bases(f: Sequence[PolyElement], variable_order: Optional[Sequence[str]] = None) -> DualBases:
    _check_square_system(f)
    algebra = QuotientAlgebra.of(f)
    hefer = hefer_matrix(f, variable_order)
    delta = bezoutian(hefer)
    doubled, ring, n = hefer.doubled, algebra.ring, algebra.ring.ngens
    reduced = normal_form(delta, _doubled_basis(algebra, doubled))
    grouped: Dict[Monomial, Dict[Monomial, object]] = {}
    for monom, coeff in reduced.items():
        grouped.setdefault(monom[:n], {})[monom[n:]] = coeff
    standard, duals = [], []
    for index, monom in enumerate(algebra.monomials):
        standard.append(algebra.monomial(index))
        duals.append(ring.from_dict(grouped.get(monom, {})))
    logger.debug(f"Dual bases over {algebra.dim} standard monomial(s).")
    return DualBases(algebra, hefer, delta, tuple(standard), tuple(duals))


@dataclass(frozen=True)
class ResidueFunctional:
    """res on the standard monomials; ``sign`` is the global Bezoutian normalization applied."""
    bases: DualBases
    values: Tuple = field(default=())
    sign: int = 1

    @property
    def algebra(self) -> QuotientAlgebra:
        return self.bases.algebra

    def __call__(self, phi: PolyElement):
        return residue(phi, self)

    @cached_property
    def jacobian(self) -> PolyElement:
        return jacobian_determinant(self.algebra.ideal)

    def as_json(self):
        algebra = self.algebra
        names = variable_names(algebra.ring)
        return {
            "basis": algebra.format_basis(),
            "dim": algebra.dim,
            "residues": {format_monomial(m, names) or "1": format_rational(v)
                         for m, v in zip(algebra.monomials, self.values)},
            "duals": [format_polynomial(a) for a in self.bases.duals],
            "gram": [[format_rational(v) for v in row] for row in pairing_gram(self).to_list()],
            "bezoutian": format_polynomial(self.bases.bezoutian),
            "sign": self.sign,
            "jacobian_residue": format_rational(residue(self.jacobian, self)),
        }


def residue_functional(f: Sequence[PolyElement], variable_order: Optional[Sequence[str]] = None) -> ResidueFunctional:
    """
    Expand 1 = Σ d_i a_i in the dual basis; then res(b_i) = d_i. The trace
    identity res(Jac) = dim anchors the sign.
    """
    bases = dual_bases(f, variable_order)
    algebra = bases.algebra
    dim = algebra.dim
    columns = [algebra.coordinates(a) for a in bases.duals]
    A = DomainMatrix([[columns[j][i] for j in range(dim)] for i in range(dim)], (dim, dim), QQ)
    if A.det() == QQ.zero:
        raise InternalAlgebraError("The Bezoutian does not yield a dual basis.")
    one = DomainMatrix([[c] for c in algebra.coordinates(algebra.ring.one)], (dim, 1), QQ)
    solution = A.lu_solve(one)
    values = tuple(row[0] for row in solution.to_list())
    functional = ResidueFunctional(bases, values, bezoutian_sign(algebra.ring.ngens))
    anchor = residue(functional.jacobian, functional)
    if anchor != dim:
        raise InternalAlgebraError(f"res(Jacobian) = {anchor}, expected {dim}.")
    logger.info(f"Residue functional on a {dim}-dimensional quotient algebra.")
    return functional


def residue(phi: PolyElement, functional: ResidueFunctional):
    """Linear in φ and zero on J."""
    coordinates = functional.algebra.coordinates(phi)
    return sum((c * v for c, v in zip(coordinates, functional.values)), QQ.zero)


def pairing_gram(functional: ResidueFunctional) -> DomainMatrix:
    """Gram matrix res(b_i * b_j) over the standard basis."""
    algebra = functional.algebra
    dim = algebra.dim
    rows = [[residue(algebra.monomial(i) * algebra.monomial(j), functional) for j in range(dim)]
            for i in range(dim)]
    return DomainMatrix(rows, (dim, dim), QQ)


def is_nondegenerate(gram: DomainMatrix) -> bool:
    return gram.shape[0] == 0 or gram.det() != QQ.zero


def pairing_witness(phi: PolyElement, functional: ResidueFunctional) -> Optional[PolyElement]:
    """A standard monomial b with res(φ*b) != 0, or None when φ ∈ J."""
    algebra = functional.algebra
    for index in range(algebra.dim):
        b = algebra.monomial(index)
        if residue(phi * b, functional) != QQ.zero:
            return b
    if not algebra.contains(phi):
        raise InternalAlgebraError("The residue pairing is degenerate on a nonzero class.")
    return None


def dual_pairing_matrix(functional: ResidueFunctional) -> DomainMatrix:
    """res(a_i * b_j); the identity matrix when the dual bases are correct."""
    bases = functional.bases
    dim = len(bases.standard)
    rows = [[residue(bases.duals[i] * bases.standard[j], functional) for j in range(dim)] for i in range(dim)]
    return DomainMatrix(rows, (dim, dim), QQ)


def trace_identity_holds(phi: PolyElement, functional: ResidueFunctional) -> bool:
    """Tr(multiplication by φ) = res(φ * Jac)."""
    return functional.algebra.trace(phi) == residue(phi * functional.jacobian, functional)


def same_bezoutian_class(f: Sequence[PolyElement], first: Sequence[str], second: Sequence[str]) -> bool:
    """The Bezoutians for two telescoping orders agree modulo J(z) + J(ζ)."""
    algebra = QuotientAlgebra.of(f)
    a, b = bezoutian(hefer_matrix(f, first)), bezoutian(hefer_matrix(f, second))
    return not normal_form(a - b, _doubled_basis(algebra, a.ring))
