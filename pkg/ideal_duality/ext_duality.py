"""
Ext^k(F, O) from the dual of a free resolution, the support of each Ext,
and purity / Cohen–Macaulay verdicts by two routes:

* route A: codimensions of the rank loci Z_k of the resolution,
* route B: codimensions of the supports of Ext^k(F, O).
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from sympy.polys.rings import PolyElement

from ideal_duality.algebra import format_polynomial
from ideal_duality.exceptions import (CodimensionZeroError, IneligibleInputError, InternalAlgebraError)
from ideal_duality.groebner import (FreeModuleElement, buchberger, ideal_codimension, membership,
                                    minimal_generators, radical_membership, syzygy_module)
from ideal_duality.polymatrix import PolyMatrix, eliminate_unit_pivots, fitting_ideal
from ideal_duality.resolution import (ChainComplex, FreeResolution, StepVerdict, be_exactness, dualize,
                                      rank_loci)

logger = logging.getLogger(__name__)

PURE = "pure"
IMPURE = "impure"
COHEN_MACAULAY = "cohen-macaulay"


@dataclass(frozen=True)
class ExtModule:
    """
    Ext^k = ker f*_{k+1} / im f*_k, presented as coker(presentation) on the
    columns of ``generators`` (a generating set of ker f*_{k+1} in E_k*).
    """
    k: int
    generators: PolyMatrix
    presentation: PolyMatrix
    minimal_presentation: PolyMatrix
    fitting: Tuple[PolyElement, ...]
    support_codim: int
    vanishes: bool

    def as_json(self):
        return {
            "k": self.k,
            "vanishes": self.vanishes,
            "support_codim": self.support_codim,
            "generators": self.generators.as_strings(),
            "presentation": self.minimal_presentation.as_strings(),
            "fitting_ideal": [format_polynomial(p) for p in self.fitting],
        }


@dataclass(frozen=True)
class ExtEvidence:
    k: int
    codim_Zk: int
    codim_suppExt: int

    def as_json(self):
        return {"k": self.k, "codim_Zk": self.codim_Zk, "codim_suppExt": self.codim_suppExt}


@dataclass(frozen=True)
class PurityReport:
    p: int
    verdict: str
    per_k: Tuple[ExtEvidence, ...]
    routes_agree: bool
    route_a_pure: bool
    route_b_pure: bool
    cohen_macaulay: bool
    resolution_length: int

    def as_json(self):
        return {
            "p": self.p,
            "verdict": self.verdict,
            "per_k": [evidence.as_json() for evidence in self.per_k],
            "routes_agree": self.routes_agree,
            "route_a_pure": self.route_a_pure,
            "route_b_pure": self.route_b_pure,
            "cohen_macaulay": self.cohen_macaulay,
            "resolution_length": self.resolution_length,
        }


@dataclass(frozen=True)
class CohenMacaulayReport:
    p: int
    cohen_macaulay: bool
    resolution_length: int
    dual_steps: Tuple[StepVerdict, ...]

    @property
    def dual_exact(self) -> bool:
        return all(step.exact for step in self.dual_steps)

    def as_json(self):
        return {
            "p": self.p,
            "cohen_macaulay": self.cohen_macaulay,
            "resolution_length": self.resolution_length,
            "dual_exact": self.dual_exact,
            "dual_steps": [step.as_json() for step in self.dual_steps],
        }


def prune_presentation(presentation: PolyMatrix) -> PolyMatrix:
    """Smaller presentation of the same cokernel: unit pivots cancelled, redundant relations dropped."""
    reduced = eliminate_unit_pivots(presentation)
    if reduced.target_rank == 0 or reduced.source_rank == 0:
        return reduced
    kept = minimal_generators([FreeModuleElement(column) for column in reduced.columns()])
    return PolyMatrix.from_columns(reduced.ring, [k.components for k in kept], reduced.target_rank)


def _subquotient_relations(kernel: PolyMatrix, image: PolyMatrix) -> PolyMatrix:
    """Relations a among the kernel columns K with K·a ∈ im(image): top block of syz([K | image])."""
    ring, m = kernel.ring, kernel.source_rank
    if m == 0:
        return PolyMatrix.zero(ring, 0, 0)
    combined = PolyMatrix.from_columns(ring, kernel.columns() + image.columns(), kernel.target_rank)
    syzygies = syzygy_module(combined)
    return PolyMatrix.from_columns(ring, [column[:m] for column in syzygies.columns()], m)


def _submodule_contains(generators: PolyMatrix, vectors: PolyMatrix) -> bool:
    if vectors.source_rank == 0:
        return True
    if generators.source_rank == 0:
        return all(FreeModuleElement(v).is_zero() for v in vectors.columns())
    G = buchberger([FreeModuleElement(c) for c in generators.columns()])
    return all(membership(FreeModuleElement(v), G) for v in vectors.columns())


def ext_module(R: ChainComplex, k: int) -> ExtModule:
    """Ext^k(coker f_1, O) as the k-th cohomology of the dual complex."""
    if not 0 <= k <= R.length:
        raise IneligibleInputError(f"Ext^{k} is outside 0..{R.length} for this resolution.")
    ring, rank_k = R.ring, R.rank(k)
    f_next = R.differential(k + 1)
    if f_next is None:
        kernel = PolyMatrix.identity(ring, rank_k)
    else:
        kernel = syzygy_module(f_next.transpose())
    f_k = R.differential(k)
    image = f_k.transpose() if f_k is not None else PolyMatrix.zero(ring, rank_k, 0)

    if kernel.target_rank and not _submodule_contains(kernel, image):
        raise InternalAlgebraError(f"im f*_{k} does not lift into ker f*_{k + 1}.")

    presentation = _subquotient_relations(kernel, image)
    minimal = prune_presentation(presentation)
    fitting = tuple(fitting_ideal(minimal))
    vanishes = kernel.source_rank == 0 or _submodule_contains(image, kernel)
    codim = ideal_codimension(list(fitting), ring)
    logger.debug(f"Ext^{k}: {kernel.source_rank} generator(s), vanishes={vanishes}, support codim {codim}.")
    return ExtModule(k, kernel, presentation, minimal, fitting, codim, vanishes)


def support_codim(M: ExtModule) -> int:
    """codim V(Fitt_0); the zero module has empty support and gets n + 1."""
    return ideal_codimension(list(fitting_ideal(M.minimal_presentation)), M.generators.ring)


def module_codimension(R: ChainComplex) -> int:
    """codim of F = coker f_1, read off Fitt_0(f_1) which cuts out supp F."""
    return ideal_codimension(fitting_ideal(R.differential(1)), R.ring)


def _checked_codimension(R: ChainComplex) -> int:
    p = module_codimension(R)
    if p == 0:
        raise CodimensionZeroError("The module has codimension 0; purity is only defined for torsion modules.")
    if p > R.ring.ngens:
        raise IneligibleInputError("The presented module is zero.")
    return p


def ext_modules(R: ChainComplex) -> Dict[int, ExtModule]:
    return {k: ext_module(R, k) for k in range(R.length + 1)}


def purity_check(R: FreeResolution) -> PurityReport:
    """
    Route A: codim Z_k >= k + 1 for all k > p. Route B: codim supp Ext^k >= k + 1
    for all k > p. Cohen–Macaulay: Z_k empty for all k > p.
    """
    p = _checked_codimension(R)
    n = R.ring.ngens
    loci = rank_loci(R)
    evidence = []
    route_a = route_b = True
    cohen_macaulay = True
    for data in loci:
        k = data.k
        ext_codim = ext_module(R, k).support_codim
        evidence.append(ExtEvidence(k, data.codim, ext_codim))
        if k > p:
            route_a = route_a and data.codim >= k + 1
            route_b = route_b and ext_codim >= k + 1
            cohen_macaulay = cohen_macaulay and data.codim == n + 1
    if route_a and cohen_macaulay:
        verdict = COHEN_MACAULAY
    elif route_a:
        verdict = PURE
    else:
        verdict = IMPURE
    report = PurityReport(p, verdict, tuple(evidence), route_a == route_b, route_a, route_b,
                          cohen_macaulay, R.length)
    logger.info(f"Purity: p={p}, verdict={verdict}, routes agree={report.routes_agree}.")
    return report


def support_containment(R: ChainComplex) -> Dict[int, bool]:
    """For each k >= 1: supp Ext^k ⊆ Z_k, i.e. every generator of I_{r_k}(f_k) lies in √Fitt_0(Ext^k)."""
    result = {}
    for data in rank_loci(R):
        ext = ext_module(R, data.k)
        fitting = list(ext.fitting)
        result[data.k] = all(radical_membership(g, fitting) for g in data.minors)
    return result


def grade_check(R: ChainComplex) -> bool:
    """Ext^k = 0 for k < p and Ext^p != 0."""
    p = _checked_codimension(R)
    if p > R.length:
        return False
    return all(ext_module(R, k).vanishes for k in range(p)) and not ext_module(R, p).vanishes


def cm_check(R: FreeResolution) -> CohenMacaulayReport:
    """Cohen–Macaulay verdict together with the Buchsbaum–Eisenbud test of the dual complex."""
    report = purity_check(R)
    dual_steps = tuple(be_exactness(dualize(R)))
    return CohenMacaulayReport(report.p, report.cohen_macaulay, R.length, dual_steps)
