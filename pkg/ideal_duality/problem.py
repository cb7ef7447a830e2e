"""
Problem files: one declaration per line, ``#`` starts a comment.

    ring x,y,z
    order: grevlex
    ideal: x*z, y*z
    column: x, y                  (repeatable; columns of a presentation matrix)
    differential: x, y            (repeatable; rows split by ';', f_1 first)
    split: free=x dependent=y
    section: y=x^2
    component: y^2 - 2*x^2*y + x^4
    component.split: free=x dependent=y
    component.section: y=x^2
"""
import hashlib
import logging
import re
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement, PolyRing

from ideal_duality.algebra import ORDERS, format_polynomial, make_ring, parse_polynomial, variable_names
from ideal_duality.config import Config
from ideal_duality.exceptions import IneligibleInputError, ProblemParseError, VariableMismatchError
from ideal_duality.noetherian import RationalSection, VariableSplit
from ideal_duality.polymatrix import PolyMatrix
from ideal_duality.resolution import ChainComplex

logger = logging.getLogger(__name__)

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_SPLIT_ALIASES = {"free": "free", "ζ": "free", "dependent": "dependent", "ω": "dependent"}


@dataclass(frozen=True)
class Component:
    """One primary component with its Noether position and section hints."""
    ideal: Tuple[PolyElement, ...]
    split: Optional[VariableSplit] = None
    section: Optional[RationalSection] = None


@dataclass(frozen=True)
class ProblemFile:
    variables: Tuple[str, ...]
    order: str
    ideal: Tuple[PolyElement, ...] = ()
    columns: Tuple[Tuple[PolyElement, ...], ...] = ()
    differentials: Tuple[Tuple[Tuple[PolyElement, ...], ...], ...] = ()
    split: Optional[VariableSplit] = None
    section: Optional[RationalSection] = None
    components: Tuple[Component, ...] = ()

    @property
    def ring(self) -> PolyRing:
        return make_ring(self.variables, self.order)

    def presentation(self) -> PolyMatrix:
        """The module to analyse: the given columns, or O / ideal as a 1 x m matrix."""
        ring = self.ring
        if self.columns:
            return PolyMatrix.from_columns(ring, self.columns, len(self.columns[0]))
        if self.ideal:
            return PolyMatrix.from_rows(ring, [self.ideal])
        if self.components:
            return PolyMatrix.from_rows(ring, [self.components[0].ideal])
        raise IneligibleInputError("The problem declares neither an ideal nor module columns.")

    def chain_complex(self) -> Optional[ChainComplex]:
        if not self.differentials:
            return None
        ring = self.ring
        matrices = []
        for rows in self.differentials:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise ProblemParseError("Rows of a differential have different lengths.")
            matrices.append(PolyMatrix.from_rows(ring, rows))
        return ChainComplex(ring, tuple(matrices))

    def primary_components(self) -> List[Component]:
        if self.components:
            return list(self.components)
        if not self.ideal:
            raise IneligibleInputError("Noetherian operators need an ideal or component blocks.")
        return [Component(self.ideal, self.split, self.section)]

    def with_order(self, order: str) -> "ProblemFile":
        """Same problem with every polynomial re-read in the ring with ``order``."""
        return parse_problem(format_problem(replace(self, order=order)))

    def digest(self) -> str:
        return hashlib.sha256(format_problem(self).encode("utf-8")).hexdigest()


def _split_list(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _parse_polys(text: str, ring: PolyRing, line_no: int) -> Tuple[PolyElement, ...]:
    items = _split_list(text)
    if not items:
        raise ProblemParseError(f"Line {line_no}: expected at least one polynomial.")
    try:
        return tuple(parse_polynomial(item, ring) for item in items)
    except ProblemParseError as e:
        raise ProblemParseError(f"Line {line_no}: {e}")


def parse_split(text: str, ring: PolyRing) -> VariableSplit:
    """``free=a,b dependent=c``; ``ζ=`` and ``ω=`` are accepted as aliases."""
    parts = {"free": [], "dependent": []}
    seen = set()
    for token in text.split():
        if "=" not in token:
            raise ProblemParseError(f"Malformed split token '{token}'; expected key=names.")
        key, _, value = token.partition("=")
        if key not in _SPLIT_ALIASES:
            raise ProblemParseError(f"Unknown split key '{key}'.")
        key = _SPLIT_ALIASES[key]
        seen.add(key)
        parts[key].extend(_split_list(value))
    if "dependent" not in seen:
        raise ProblemParseError("A split must name its dependent variables.")
    names = variable_names(ring)
    if "free" not in seen:
        parts["free"] = [name for name in names if name not in parts["dependent"]]
    for name in parts["free"] + parts["dependent"]:
        if name not in names:
            raise ProblemParseError(f"Split names unknown variable '{name}'.")
    split = VariableSplit(tuple(parts["free"]), tuple(parts["dependent"]))
    try:
        split.check_partition(ring)
    except VariableMismatchError as e:
        raise ProblemParseError(str(e))
    return split


def parse_section(text: str, ring: PolyRing) -> RationalSection:
    mapping = {}
    for item in _split_list(text):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not _NAME.match(name):
            raise ProblemParseError(f"Malformed section entry '{item}'; expected name=polynomial.")
        if name in mapping:
            raise ProblemParseError(f"Section assigns '{name}' twice.")
        mapping[name] = parse_polynomial(value.strip(), ring)
    if not mapping:
        raise ProblemParseError("Empty section.")
    return RationalSection.of(mapping)


def _parse_differential(text: str, ring: PolyRing, line_no: int) -> Tuple[Tuple[PolyElement, ...], ...]:
    return tuple(_parse_polys(row, ring, line_no) for row in text.split(";"))


def parse_problem(text: str) -> ProblemFile:
    lines = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((line_no, line))
    if not lines or not lines[0][1].startswith("ring "):
        raise ProblemParseError("A problem file must start with 'ring <variables>'.")

    variables = tuple(_split_list(lines[0][1][len("ring "):]))
    if not variables or len(set(variables)) != len(variables) or not all(_NAME.match(v) for v in variables):
        raise ProblemParseError(f"Line {lines[0][0]}: invalid ring variables.")

    order = Config.DEFAULT_ORDER
    body = lines[1:]
    if body and body[0][1].startswith("order:"):
        order = body[0][1][len("order:"):].strip()
        body = body[1:]
    if order not in ORDERS:
        raise ProblemParseError(f"Unknown monomial order '{order}'. Expected one of {sorted(ORDERS)}.")
    ring = make_ring(variables, order)

    ideal: Tuple[PolyElement, ...] = ()
    columns, differentials, components = [], [], []
    split = section = None
    for line_no, line in body:
        key, sep, value = line.partition(":")
        if not sep:
            raise ProblemParseError(f"Line {line_no}: expected 'key: value', got '{line}'.")
        key, value = key.strip(), value.strip()
        if key == "ideal":
            if ideal:
                raise ProblemParseError(f"Line {line_no}: the ideal is declared twice.")
            ideal = _parse_polys(value, ring, line_no)
        elif key == "column":
            column = _parse_polys(value, ring, line_no)
            if columns and len(column) != len(columns[0]):
                raise ProblemParseError(f"Line {line_no}: columns have different lengths.")
            columns.append(column)
        elif key == "differential":
            differentials.append(_parse_differential(value, ring, line_no))
        elif key == "split":
            split = parse_split(value, ring)
        elif key == "section":
            section = parse_section(value, ring)
        elif key == "component":
            components.append(Component(_parse_polys(value, ring, line_no)))
        elif key in ("component.split", "component.section"):
            if not components:
                raise ProblemParseError(f"Line {line_no}: '{key}' before any component.")
            last = components[-1]
            if key == "component.split":
                components[-1] = Component(last.ideal, parse_split(value, ring), last.section)
            else:
                components[-1] = Component(last.ideal, last.split, parse_section(value, ring))
        else:
            raise ProblemParseError(f"Line {line_no}: unknown declaration '{key}'.")

    problem = ProblemFile(variables, order, ideal, tuple(columns), tuple(differentials), split, section,
                          tuple(components))
    logger.debug(f"Parsed problem over {list(variables)} with {len(ideal)} ideal generator(s), "
                 f"{len(columns)} column(s), {len(components)} component(s).")
    return problem


def read_problem(path: str) -> Tuple[ProblemFile, str]:
    """Parse a problem file; returns the problem and the raw text."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ProblemParseError(f"Cannot read problem file '{path}': {e}")
    return parse_problem(text), text


def _format_polys(polys: Sequence[PolyElement]) -> str:
    return ", ".join(format_polynomial(p) for p in polys)


def _format_split(split: VariableSplit) -> str:
    return f"free={','.join(split.free)} dependent={','.join(split.dependent)}"


def _format_section(section: RationalSection) -> str:
    return ", ".join(f"{name}={format_polynomial(value)}" for name, value in section.g)


def format_problem(problem: ProblemFile) -> str:
    """Canonical text; parsing it again gives an equal problem."""
    lines = [f"ring {','.join(problem.variables)}", f"order: {problem.order}"]
    if problem.ideal:
        lines.append(f"ideal: {_format_polys(problem.ideal)}")
    for column in problem.columns:
        lines.append(f"column: {_format_polys(column)}")
    for rows in problem.differentials:
        lines.append("differential: " + "; ".join(_format_polys(row) for row in rows))
    if problem.split is not None:
        lines.append(f"split: {_format_split(problem.split)}")
    if problem.section is not None:
        lines.append(f"section: {_format_section(problem.section)}")
    for component in problem.components:
        lines.append(f"component: {_format_polys(component.ideal)}")
        if component.split is not None:
            lines.append(f"component.split: {_format_split(component.split)}")
        if component.section is not None:
            lines.append(f"component.section: {_format_section(component.section)}")
    return "\n".join(lines) + "\n"
