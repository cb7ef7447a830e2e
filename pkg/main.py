import argparse
import hashlib
import logging
import os
import sys
from dataclasses import replace
from typing import Any, Dict, Optional, Tuple

from ideal_duality.algebra import format_polynomial, format_rational, parse_polynomial
from ideal_duality.config import Config
from ideal_duality.crosscheck import OracleCrossCheck, groebner_oracle_ideal, synthesize_systems
from ideal_duality.exceptions import (AnalysisRejected, IdealDualityException, InternalAlgebraError,
                                      NotAComplexError, ProblemParseError)
from ideal_duality.ext_duality import cm_check, ext_modules, purity_check, support_containment
from ideal_duality.groebner import ideal_basis, membership
from ideal_duality.logger import setup_logger
from ideal_duality.noetherian import intersection_membership
from ideal_duality.problem import ProblemFile, parse_section, parse_split, read_problem
from ideal_duality.reporter import Report
from ideal_duality.residue import (bezoutian, bezoutian_sign, dual_pairing_matrix, hefer_matrix, is_nondegenerate,
                                   pairing_gram, residue_functional, trace_identity_holds)
from ideal_duality.resolution import be_exactness, dualize, free_resolution

COMMANDS = ("resolve", "dualize", "be-check", "ext", "purity", "cm-check", "noetherian", "membership",
            "residue", "bezoutian", "oracle-xcheck")

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_REJECTED = 2
EXIT_INTERNAL = 3


def apply_overrides(problem: ProblemFile, flags: Dict[str, Any]) -> ProblemFile:
    """--order, --split and --section replace what the problem file declares."""
    if flags.get("order") and flags["order"] != problem.order:
        problem = problem.with_order(flags["order"])
    ring = problem.ring
    if flags.get("split"):
        problem = replace(problem, split=parse_split(flags["split"], ring))
    if flags.get("section"):
        problem = replace(problem, section=parse_section(flags["section"], ring))
    return problem


def _resolution(problem: ProblemFile, flags: Dict[str, Any]):
    return free_resolution(problem.presentation(), minimal=not flags.get("raw"))


def _complex(problem: ProblemFile, flags: Dict[str, Any]):
    """The explicit complex of the problem file, or the resolution of its module."""
    explicit = problem.chain_complex()
    return explicit if explicit is not None else _resolution(problem, flags)


def _require_phi(problem: ProblemFile, flags: Dict[str, Any]):
    if not flags.get("phi"):
        raise ProblemParseError("This command needs --phi \"<polynomial>\".")
    return parse_polynomial(flags["phi"], problem.ring)


def _square_system(problem: ProblemFile):
    return list(problem.ideal) if problem.ideal else list(problem.primary_components()[0].ideal)


def cmd_resolve(problem, flags):
    R = _resolution(problem, flags)
    payload = R.as_json()
    payload["exact"] = all(step.exact for step in be_exactness(R))
    return payload


def cmd_dualize(problem, flags):
    C = _complex(problem, flags)
    dual = dualize(C)
    return {"complex": C.as_json(), "dual": dual.as_json(), "dual_is_complex": dual.is_complex()}


def cmd_be_check(problem, flags):
    C = _complex(problem, flags)
    steps = be_exactness(C)
    failures = [step.k for step in steps if not step.exact]
    return {"steps": [step.as_json() for step in steps], "exact": not failures,
            "first_failure": failures[0] if failures else None}


def cmd_ext(problem, flags):
    R = _resolution(problem, flags)
    modules = ext_modules(R)
    return {"betti": R.betti, "modules": [modules[k].as_json() for k in sorted(modules)]}


def cmd_purity(problem, flags):
    R = _resolution(problem, flags)
    payload = purity_check(R).as_json()
    payload["betti"] = R.betti
    payload["support_containment"] = {str(k): v for k, v in sorted(support_containment(R).items())}
    return payload


def cmd_cm_check(problem, flags):
    R = _resolution(problem, flags)
    payload = cm_check(R).as_json()
    payload["betti"] = R.betti
    return payload


def cmd_noetherian(problem, flags):
    systems = synthesize_systems(problem)
    return {"components": [S.as_json() for S in systems],
            "order_zero_suffices": all(S.order_zero_suffices for S in systems)}


def cmd_membership(problem, flags):
    phi = _require_phi(problem, flags)
    systems = synthesize_systems(problem)
    by_operators = intersection_membership(phi, systems)
    by_groebner = membership(phi, ideal_basis(groebner_oracle_ideal(problem.primary_components())))
    if by_operators != by_groebner:
        raise InternalAlgebraError(f"Operators say {by_operators}, Gröbner membership says {by_groebner} "
                                   f"for {format_polynomial(phi)}.")
    return {"phi": format_polynomial(phi), "member": by_operators, "groebner_agrees": True}


def cmd_residue(problem, flags):
    functional = residue_functional(_square_system(problem))
    payload = functional.as_json()
    algebra = functional.algebra
    identity = dual_pairing_matrix(functional).to_list()
    payload["pairing_nondegenerate"] = is_nondegenerate(pairing_gram(functional))
    payload["dual_basis_property"] = all(identity[i][j] == (1 if i == j else 0)
                                         for i in range(algebra.dim) for j in range(algebra.dim))
    payload["trace_identity"] = all(trace_identity_holds(algebra.monomial(i), functional)
                                    for i in range(algebra.dim))
    if flags.get("phi"):
        phi = _require_phi(problem, flags)
        payload["phi"] = {"polynomial": format_polynomial(phi), "residue": format_rational(functional(phi))}
    return payload


def cmd_bezoutian(problem, flags):
    hefer = hefer_matrix(_square_system(problem))
    return {"hefer": hefer.matrix.as_strings(), "bezoutian": format_polynomial(bezoutian(hefer)),
            "sign": bezoutian_sign(hefer.ring.ngens), "variable_order": list(hefer.variable_order),
            "identity_holds": hefer.check_identity()}


def cmd_oracle_xcheck(problem, flags):
    result = OracleCrossCheck(problem, flags.get("trials"), flags.get("seed")).run()
    return result.as_json()


HANDLERS = {
    "resolve": cmd_resolve,
    "dualize": cmd_dualize,
    "be-check": cmd_be_check,
    "ext": cmd_ext,
    "purity": cmd_purity,
    "cm-check": cmd_cm_check,
    "noetherian": cmd_noetherian,
    "membership": cmd_membership,
    "residue": cmd_residue,
    "bezoutian": cmd_bezoutian,
    "oracle-xcheck": cmd_oracle_xcheck,
}


def run(command: str, path: str, flags: Optional[Dict[str, Any]] = None) -> Tuple[int, Report]:
    """Run one command on one problem file; never raises for engine errors."""
    flags = dict(flags or {})
    logger = logging.getLogger("ideal_duality")
    digest = ""
    try:
        if command not in HANDLERS:
            raise ProblemParseError(f"Unknown command '{command}'. Expected one of {list(COMMANDS)}.")
        problem, raw = read_problem(path)
        digest = hashlib.sha256(raw.encode("utf-8")).hexdigest()
        problem = apply_overrides(problem, flags)
        digest = problem.digest()
        logger.info(f"Running {command} on {path}")
        result = HANDLERS[command](problem, flags)
        if command == "oracle-xcheck" and not result["passed"]:
            return EXIT_INTERNAL, Report(command, digest, result, EXIT_INTERNAL)
        return EXIT_OK, Report(command, digest, result)
    except ProblemParseError as e:
        logger.error(f"Parse error: {e}")
        return EXIT_PARSE_ERROR, Report.failure(command, digest, EXIT_PARSE_ERROR, "parse-error", str(e))
    except AnalysisRejected as e:
        logger.warning(f"Rejected ({e.reason}): {e}")
        return EXIT_REJECTED, Report.failure(command, digest, EXIT_REJECTED, e.reason, str(e))
    except NotAComplexError as e:
        logger.warning(f"Not a complex at step {e.step}: {e}")
        return EXIT_REJECTED, Report.failure(command, digest, EXIT_REJECTED, "not-a-complex", str(e))
    except InternalAlgebraError as e:
        logger.error(f"Internal algebra error: {e}")
        return EXIT_INTERNAL, Report.failure(command, digest, EXIT_INTERNAL, "internal-error", str(e))
    except IdealDualityException as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_PARSE_ERROR, Report.failure(command, digest, EXIT_PARSE_ERROR, "invalid-input", str(e))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Exact duality analyses for polynomial ideals and modules.")
    parser.add_argument("command", choices=COMMANDS, help="The analysis to run.")
    parser.add_argument("file", help="Problem file (ring, ideal or module columns, hints).")
    parser.add_argument("--order", choices=("grevlex", "lex", "grlex"), help="Monomial order override.")
    parser.add_argument("--json", dest="json_path", help="Also write the report to this file.")
    parser.add_argument("--seed", type=int, default=Config.DEFAULT_SEED, help="Seed for oracle cross-checks.")
    parser.add_argument("--trials", type=int, default=Config.DEFAULT_TRIALS, help="Number of oracle trials.")
    parser.add_argument("--split", help="Variable split, e.g. 'free=x dependent=y' (ω=/ζ= also accepted).")
    parser.add_argument("--section", help="Section of the radical, e.g. 'y=x^2'.")
    parser.add_argument("--phi", help="Polynomial for membership or residue queries.")
    parser.add_argument("--raw", action="store_true", help="Skip minimalization of resolutions.")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR.")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    setup_logger(f"{args.command}_{os.path.basename(args.file)}", args.log_level)
    exit_code, report = run(args.command, args.file, vars(args))
    sys.stdout.write(report.to_json())
    if args.json_path:
        report.generate_report(args.json_path)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
