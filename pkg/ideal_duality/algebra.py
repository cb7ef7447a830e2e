"""
Exact polynomial arithmetic on top of SymPy's sparse polynomial rings.

Polynomials are ``sympy.polys.rings.PolyElement`` values: immutable in use,
exact over QQ or over a rational-function field QQ(ζ). This module adds the
pieces the engine needs around them: ring construction with named orders,
the text syntax, simultaneous substitution, moving polynomials between
rings, and differential operators.
"""
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from operator import itemgetter
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from sympy import QQ, Integer, Rational, Symbol
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.orderings import ProductOrder, grevlex, grlex, lex
from sympy.polys.polyerrors import CoercionFailed, PolynomialError
from sympy.polys.rings import PolyElement, PolyRing

from ideal_duality.exceptions import ProblemParseError, RingMismatchError, VariableMismatchError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

ORDERS = {
    "grevlex": grevlex,
    "lex": lex,
    "grlex": grlex,
}

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_ALLOWED_TEXT = re.compile(r"^[A-Za-z0-9_+\-*^/()\s]*$")


@dataclass(frozen=True)
class CoefficientField:
    """QQ, or the rational-function field QQ(parameters)."""
    parameters: Tuple[str, ...] = ()

    @classmethod
    def rationals(cls):
        return cls(())

    @classmethod
    def rational_functions(cls, parameters: Iterable[str]):
        return cls(tuple(parameters))

    @property
    def kind(self) -> str:
        return "rational-functions" if self.parameters else "rationals"

    @property
    def domain(self):
        if not self.parameters:
            return QQ
        return QQ.frac_field(*[Symbol(name) for name in self.parameters])


@lru_cache(maxsize=None)
def elimination_order(block_size: int):
    """Block order: grevlex on the first ``block_size`` variables, ties broken by grevlex on the rest."""
    return ProductOrder(
        (grevlex, itemgetter(slice(0, block_size))),
        (grevlex, itemgetter(slice(block_size, None))),
    )


def resolve_order(order):
    if isinstance(order, str):
        try:
            return ORDERS[order]
        except KeyError:
            raise ProblemParseError(f"Unknown monomial order '{order}'. Expected one of {sorted(ORDERS)}.")
    return order


def make_ring(variables: Sequence[str], order="grevlex", field: CoefficientField = None) -> PolyRing:
    """Build the polynomial ring over ``field`` (QQ by default) in the named variables."""
    field = field or CoefficientField.rationals()
    clash = set(variables) & set(field.parameters)
    if clash:
        raise VariableMismatchError(f"Variables {sorted(clash)} are both ring variables and field parameters.")
    return PolyRing([Symbol(name) for name in variables], field.domain, resolve_order(order))


def variable_names(ring: PolyRing) -> Tuple[str, ...]:
    return tuple(str(symbol) for symbol in ring.symbols)


def variable_index(ring: PolyRing, name: str) -> int:
    names = variable_names(ring)
    if name not in names:
        raise VariableMismatchError(f"Variable '{name}' is not one of the ring variables {list(names)}.")
    return names.index(name)


def generator(ring: PolyRing, name: str) -> PolyElement:
    return ring.gens[variable_index(ring, name)]


def with_order(ring: PolyRing, order) -> PolyRing:
    """Same variables and coefficients, different monomial order."""
    return PolyRing(ring.symbols, ring.domain, resolve_order(order))


def extend_ring(ring: PolyRing, extra: Sequence[str], order=None, first=False) -> PolyRing:
    """Ring with ``extra`` variables added before (``first``) or after the existing ones."""
    symbols = [Symbol(name) for name in extra]
    symbols = symbols + list(ring.symbols) if first else list(ring.symbols) + symbols
    return PolyRing(symbols, ring.domain, resolve_order(order) if order is not None else ring.order)


def _check_same_ring(a: PolyElement, b: PolyElement):
    if a.ring != b.ring:
        raise RingMismatchError(f"Operands live in different rings: {a.ring} and {b.ring}.")


def poly_arith(a: PolyElement, b: PolyElement, op: str) -> PolyElement:
    """Exact add, sub or mul of two polynomials of the same ring."""
    _check_same_ring(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"Unknown polynomial operation '{op}'.")


def transfer(p: PolyElement, target: PolyRing) -> PolyElement:
    """
    Move ``p`` into ``target`` by matching variable names. Variables of the
    source ring missing from the target must not occur in ``p``.
    """
    source = p.ring
    if source == target:
        return p
    target_names = variable_names(target)
    positions = []
    for name in variable_names(source):
        positions.append(target_names.index(name) if name in target_names else None)
    source_names = variable_names(source)
    terms: Dict[Monomial, object] = {}
    for monom, coeff in p.items():
        exponents = [0] * target.ngens
        for index, (exponent, position) in enumerate(zip(monom, positions)):
            if not exponent:
                continue
            if position is None:
                raise VariableMismatchError(f"Variable '{source_names[index]}' does not exist in the target ring.")
            exponents[position] = exponent
        terms[tuple(exponents)] = target.domain.convert_from(coeff, source.domain)
    return target.from_dict(terms)


def substitute(phi: PolyElement, bindings: Mapping[str, PolyElement]) -> PolyElement:
    """Simultaneous substitution ``variable -> polynomial`` inside the ring of ``phi``."""
    ring = phi.ring
    replacements = []
    for name in sorted(bindings, key=lambda n: variable_index(ring, n)):
        value = bindings[name]
        if value.ring != ring:
            raise RingMismatchError(f"Binding for '{name}' is not an element of {ring}.")
        replacements.append((generator(ring, name), value))
    if not replacements:
        return phi
    return phi.compose(replacements)


def parse_polynomial(text: str, ring: PolyRing) -> PolyElement:
    """Parse ``+ - * ^``, integer and ``a/b`` literals and ring variables into an element of ``ring``."""
    if not _ALLOWED_TEXT.match(text or ""):
        raise ProblemParseError(f"Polynomial '{text}' contains characters outside the polynomial syntax.")
    if not text.strip():
        raise ProblemParseError("Empty polynomial text.")
    known = set(variable_names(ring))
    domain = ring.domain
    if domain.is_FractionField:
        known |= {str(symbol) for symbol in domain.symbols}
    for name in _IDENTIFIER.findall(text):
        if name not in known:
            raise ProblemParseError(f"Unknown variable '{name}' in polynomial '{text}'.")
    local_dict = {name: Symbol(name) for name in known}
    global_dict = {"Integer": Integer, "Rational": Rational, "Symbol": Symbol}
    try:
        expr = parse_expr(text, local_dict=local_dict, global_dict=global_dict,
                          transformations=standard_transformations + (convert_xor,))
        return ring.from_expr(expr)
    except (SympifyError, SyntaxError, NameError, TypeError, ValueError, ZeroDivisionError,
            CoercionFailed, PolynomialError) as e:
        raise ProblemParseError(f"Could not parse polynomial '{text}': {e}")


def format_rational(value) -> str:
    numerator, denominator = int(value.numerator), int(value.denominator)
    return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"


def format_monomial(monom: Monomial, names: Sequence[str]) -> str:
    factors = []
    for name, exponent in zip(names, monom):
        if exponent == 1:
            factors.append(name)
        elif exponent > 1:
            factors.append(f"{name}^{exponent}")
    return "*".join(factors)


def _format_coefficient(coeff, domain) -> Tuple[bool, str]:
    """Returns (negative, magnitude text) for a ground element."""
    if domain.is_FractionField:
        numer, denom = coeff.numer, coeff.denom
        negative = len(numer) == 1 and numer.LC < 0
        if negative:
            numer = -numer
        text = format_polynomial(numer)
        if len(numer) > 1:
            text = f"({text})"
        if denom != 1:
            denom_text = format_polynomial(denom)
            text = f"{text}/({denom_text})" if len(denom) > 1 else f"{text}/{denom_text}"
        return negative, text
    negative = coeff < 0
    return negative, format_rational(-coeff if negative else coeff)


def format_polynomial(p: PolyElement) -> str:
    """Canonical text of ``p``: terms in descending ring order, ``^`` for powers."""
    if not p:
        return "0"
    names = variable_names(p.ring)
    pieces = []
    for monom, coeff in p.terms():
        negative, magnitude = _format_coefficient(coeff, p.ring.domain)
        monomial = format_monomial(monom, names)
        if not monomial:
            body = magnitude
        elif magnitude == "1":
            body = monomial
        else:
            body = f"{magnitude}*{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


def total_degree(monom: Monomial) -> int:
    return sum(monom)


@dataclass(frozen=True)
class DiffOperator:
    """
    L = Σ_β c_β ∂^β/∂ω^β with plain partial derivatives (no 1/β! factor).

    ``terms`` is sorted by multi-index, highest derivative order first;
    coefficients are elements of ``ring`` and never zero.
    """
    ring: PolyRing
    dependent: Tuple[str, ...]
    terms: Tuple[Tuple[Monomial, PolyElement], ...]

    @classmethod
    def from_terms(cls, ring: PolyRing, dependent: Sequence[str], terms: Mapping[Monomial, PolyElement]):
        dependent = tuple(dependent)
        for name in dependent:
            variable_index(ring, name)
        cleaned = []
        for beta, coeff in terms.items():
            if len(beta) != len(dependent):
                raise VariableMismatchError(f"Multi-index {beta} does not match dependent variables {dependent}.")
            if coeff.ring != ring:
                raise RingMismatchError("Operator coefficient is not an element of the operator ring.")
            if coeff:
                cleaned.append((tuple(beta), coeff))
        cleaned.sort(key=lambda term: (total_degree(term[0]), term[0]), reverse=True)
        return cls(ring, dependent, tuple(cleaned))

    @classmethod
    def identity(cls, ring: PolyRing, dependent: Sequence[str]):
        return cls.from_terms(ring, dependent, {(0,) * len(dependent): ring.one})

    @classmethod
    def partial(cls, ring: PolyRing, dependent: Sequence[str], beta: Monomial):
        return cls.from_terms(ring, dependent, {tuple(beta): ring.one})

    @property
    def order(self) -> int:
        return max((total_degree(beta) for beta, _ in self.terms), default=0)

    def coefficient(self, beta: Monomial) -> PolyElement:
        for b, c in self.terms:
            if b == tuple(beta):
                return c
        return self.ring.zero

    def scaled(self, factor: PolyElement) -> "DiffOperator":
        return DiffOperator.from_terms(self.ring, self.dependent, {b: c * factor for b, c in self.terms})

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        if self.ring != other.ring or self.dependent != other.dependent:
            raise RingMismatchError("Operators act on different rings or variables.")
        combined = dict(self.terms)
        for beta, coeff in other.terms:
            combined[beta] = combined.get(beta, self.ring.zero) + coeff
        return DiffOperator.from_terms(self.ring, self.dependent, combined)

    def as_json(self):
        return [{"beta": list(beta), "coeff": format_polynomial(coeff)} for beta, coeff in self.terms]


def partial_derivative(phi: PolyElement, beta: Monomial, indices: Sequence[int]) -> PolyElement:
    result = phi
    for index, count in zip(indices, beta):
        x = phi.ring.gens[index]
        for _ in range(count):
            if not result:
                return result
            result = result.diff(x)
    return result


def apply_diff(L: DiffOperator, phi: PolyElement) -> PolyElement:
    """Σ_β c_β ∂^β φ/∂ω^β, exactly."""
    if phi.ring != L.ring:
        raise VariableMismatchError(f"Operator acts on {L.ring}, polynomial lives in {phi.ring}.")
    indices = [variable_index(L.ring, name) for name in L.dependent]
    result = L.ring.zero
    for beta, coeff in L.terms:
        result += coeff * partial_derivative(phi, beta, indices)
    return result
