"""
Free resolutions 0 -> E_N -> ... -> E_1 -> E_0 and general complexes of free
modules: construction by iterated syzygies, minimalization, dualization,
Betti numbers and the Buchsbaum–Eisenbud exactness test.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from sympy.polys.rings import PolyElement, PolyRing

from ideal_duality.config import Config
from ideal_duality.exceptions import IneligibleInputError, NotAComplexError, ResolutionLengthError
from ideal_duality.groebner import ideal_codimension, syzygy_module
from ideal_duality.polymatrix import PolyMatrix, eliminate_pivot, matrix_rank, minor_ideal

logger = logging.getLogger(__name__)

EXACT = "exact"
FAILS_RANK = "fails-rank"
FAILS_CODIM = "fails-codim"


@dataclass(frozen=True)
class ChainComplex:
    """Differentials f_1..f_N with f_k: E_k -> E_{k-1}."""
    ring: PolyRing
    differentials: Tuple[PolyMatrix, ...]

    @property
    def length(self) -> int:
        return len(self.differentials)

    def differential(self, k: int) -> Optional[PolyMatrix]:
        """f_k for 1 <= k <= N, else None."""
        if 1 <= k <= self.length:
            return self.differentials[k - 1]
        return None

    def rank(self, k: int) -> int:
        """rank E_k."""
        if k == 0:
            return self.differentials[0].target_rank if self.differentials else 0
        f = self.differential(k)
        return f.source_rank if f is not None else 0

    @property
    def ranks(self) -> List[int]:
        return [self.rank(k) for k in range(self.length + 1)]

    def check_complex(self):
        """Raise NotAComplexError(k) unless every f_k * f_{k+1} is defined and zero."""
        for k in range(1, self.length):
            f, g = self.differential(k), self.differential(k + 1)
            if f.source_rank != g.target_rank:
                raise NotAComplexError(k, f"f_{k} has source rank {f.source_rank} but f_{k + 1} "
                                          f"has target rank {g.target_rank}")
            if not (f @ g).is_zero():
                raise NotAComplexError(k)

    def is_complex(self) -> bool:
        try:
            self.check_complex()
        except NotAComplexError:
            return False
        return True

    def as_json(self):
        return {
            "ranks": self.ranks,
            "differentials": [f.as_strings() for f in self.differentials],
        }


@dataclass(frozen=True)
class FreeResolution(ChainComplex):
    minimal: bool = False

    @property
    def betti(self) -> List[int]:
        return self.ranks

    def as_json(self):
        payload = super().as_json()
        payload.update({"betti": self.betti, "length": self.length, "minimal": self.minimal})
        return payload


@dataclass(frozen=True)
class RankData:
    """Expected rank r_k of f_k, the minor ideal I_{r_k}(f_k) cutting Z_k, and codim Z_k."""
    k: int
    expected_rank: int
    minors: Tuple[PolyElement, ...]
    codim: int


@dataclass(frozen=True)
class StepVerdict:
    k: int
    verdict: str
    rank: int
    next_rank: int
    module_rank: int
    codim: int

    @property
    def exact(self) -> bool:
        return self.verdict == EXACT

    def as_json(self):
        return {"k": self.k, "verdict": self.verdict, "rank": self.rank, "next_rank": self.next_rank,
                "module_rank": self.module_rank, "codim": self.codim}


def free_resolution(presentation: PolyMatrix, minimal: bool = True) -> FreeResolution:
    """
    Resolve coker(presentation) by iterated syzygies until the kernel is zero.
    ``minimal=False`` returns the raw iterated-syzygy complex.
    """
    ring = presentation.ring
    if ring.ngens == 0:
        raise IneligibleInputError("Free resolutions need a ring with at least one variable.")
    limit = ring.ngens + 1 + Config.MAX_RESOLUTION_LENGTH_SLACK
    differentials = [presentation]
    while True:
        kernel = syzygy_module(differentials[-1])
        if kernel.source_rank == 0:
            break
        if len(differentials) >= limit:
            raise ResolutionLengthError(
                f"Iterated syzygies did not terminate within {limit} steps over {ring.ngens} variables.")
        differentials.append(kernel)
        logger.debug(f"Resolution step {len(differentials)}: rank {kernel.source_rank}.")
    raw = FreeResolution(ring, tuple(differentials), minimal=False)
    logger.info(f"Raw resolution ranks {raw.ranks}.")
    return minimalize(raw) if minimal else raw


def _first_unit(differentials: List[PolyMatrix]):
    for k, f in enumerate(differentials, start=1):
        pivot = next(f.unit_entries(), None)
        if pivot is not None:
            return k, pivot
    return None


def minimalize(R: ChainComplex) -> FreeResolution:
    """
    Strip split summands O --(unit)--> O until no differential has a nonzero
    constant entry. The result is homotopy equivalent to the input.
    """
    R.check_complex()
    differentials = list(R.differentials)
    while True:
        found = _first_unit(differentials)
        if found is None:
            break
        k, (i, j) = found
        differentials[k - 1] = eliminate_pivot(differentials[k - 1], i, j)
        if k < len(differentials):
            differentials[k] = differentials[k].without(rows=[j])
        if k > 1:
            differentials[k - 2] = differentials[k - 2].without(cols=[i])
    while len(differentials) > 1 and differentials[-1].source_rank == 0:
        differentials.pop()
    result = FreeResolution(R.ring, tuple(differentials), minimal=True)
    logger.info(f"Minimal Betti numbers {result.betti}.")
    return result


def dualize(C: ChainComplex) -> ChainComplex:
    """Hom(E_•, O): transposed differentials in reversed order."""
    return ChainComplex(C.ring, tuple(f.transpose() for f in reversed(C.differentials)))


def be_exactness(C: ChainComplex) -> List[StepVerdict]:
    """
    Buchsbaum–Eisenbud: the complex is exact at every k >= 1 iff
    rank f_k + rank f_{k+1} = rank E_k and codim I_{rank f_k}(f_k) >= k.
    """
    C.check_complex()
    ring = C.ring
    ranks = [matrix_rank(f) for f in C.differentials] + [0]
    verdicts = []
    for k in range(1, C.length + 1):
        f = C.differential(k)
        r, r_next = ranks[k - 1], ranks[k]
        codim = ideal_codimension(minor_ideal(f, r), ring)
        if r + r_next != C.rank(k):
            verdict = FAILS_RANK
        elif codim < k:
            verdict = FAILS_CODIM
        else:
            verdict = EXACT
        verdicts.append(StepVerdict(k, verdict, r, r_next, C.rank(k), codim))
        logger.debug(f"be_exactness step {k}: {verdict} (ranks {r}+{r_next} vs {C.rank(k)}, codim {codim}).")
    return verdicts


def is_resolution(C: ChainComplex) -> bool:
    return all(step.exact for step in be_exactness(C))


def expected_ranks(R: ChainComplex) -> List[int]:
    """r_N = rank E_N, r_k = rank E_k - r_{k+1}; index 0 holds r_1."""
    N = R.length
    expected = [0] * (N + 2)
    for k in range(N, 0, -1):
        expected[k] = R.rank(k) - expected[k + 1]
    return expected[1:N + 1]


def rank_loci(R: ChainComplex) -> List[RankData]:
    """Per step: expected rank, the minor ideal cutting Z_k and codim Z_k (n + 1 when Z_k is empty)."""
    data = []
    for k, r in enumerate(expected_ranks(R), start=1):
        ideal = minor_ideal(R.differential(k), r) if r >= 0 else []
        codim = ideal_codimension(ideal, R.ring)
        data.append(RankData(k, r, tuple(ideal), codim))
    return data
