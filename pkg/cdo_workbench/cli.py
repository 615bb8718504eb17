"""Command line: every subcommand composes library operations and prints a JSON report."""
import argparse
import hashlib
import json
import logging
import sys
from os import path
from typing import Any, Callable, Optional

from cdo_workbench._errors import InputError, VerificationFailure
from cdo_workbench.algebroid.algebroid import canonical_objects, find_morphism, pi0_report
from cdo_workbench.brst.complex import (
    BrstComplex, CohomologyTable, MismatchError, ModuleKind, ModuleSpec, brst_square, relative_cohomology
)
from cdo_workbench.brst.oracle import dense_cohomology_oracle
from cdo_workbench.cohomology.complexes import ComplexKind, cohomology_dims
from cdo_workbench.flag.chern import ch2_class, invariant_quadratics
from cdo_workbench.flag.classification import ExistenceReport, SpaceKind, existence_report
from cdo_workbench.flag.roots import build_root_system
from cdo_workbench.group.fields import MatrixGroup
from cdo_workbench.group.verification import verify_dual_embedding
from cdo_workbench.helpers.scalars import LEVEL_RING, parse_scalar, rational, render_scalar
from cdo_workbench.lie.algebra import LieAlgebraPresentation, load_presentation
from cdo_workbench.lie.builtins import parent_inclusion, resolve_algebra
from cdo_workbench.lie.forms import (
    BilinearForm, critical_level, dual_level, invariant_form_space, is_nilpotent, is_semisimple, killing_form,
    restrict_form, symbolic_level
)


logger = logging.getLogger(__name__)

SCHEMA = "1"


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _q(value) -> str:
    return render_scalar(LEVEL_RING(value))


def _level(algebra: LieAlgebraPresentation, token: Optional[str]) -> Optional[BilinearForm]:
    """``symbolic`` (None), ``critical``, ``zero`` or a rational multiple of the Killing form.

    ``critical`` on a builtin subalgebra of sl(n) is the critical level of sl(n) restricted to it.
    """
    if token is None or token == "symbolic":
        return None
    if token == "critical":
        sub = parent_inclusion(algebra)
        if sub is not None:
            return restrict_form(sub, critical_level(sub.parent))
        return critical_level(algebra)
    if token == "zero":
        return BilinearForm.zero(algebra.dim)
    factor = parse_scalar(token)
    rational(factor)
    return killing_form(algebra).scale(factor)


def _module(algebra: LieAlgebraPresentation, token: str) -> ModuleSpec:
    """``ghosts``, ``betagamma`` or ``currents:LEVEL`` with LEVEL as in :func:`_level`."""
    kind, _, level = token.partition(":")
    try:
        module_kind = ModuleKind(kind)
    except ValueError:
        raise UsageError(f"Unknown module {token!r}, expected ghosts, betagamma or currents:LEVEL")
    if module_kind is not ModuleKind.CURRENTS:
        return ModuleSpec(module_kind)
    form = _level(algebra, level or "zero")
    if form is None:
        raise UsageError("Cohomology needs a rational level, not the symbolic one")
    return ModuleSpec(module_kind, form)


def _subset(text: Optional[str]) -> Optional[list[int]]:
    if text is None:
        return None
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"Expected comma separated simple root indices, got {text!r}")


def _table(table: CohomologyTable) -> dict[str, Any]:
    return {
        "dims": {str(w): {str(p): d for p, d in row.items()} for w, row in table.dims.items()},
        "chain_dims": {str(w): {str(p): d for p, d in row.items()} for w, row in table.chain_dims.items()},
        "euler": {str(w): e for w, e in table.euler_characteristics().items()},
        "chain_euler": {str(w): e for w, e in table.chain_euler_characteristics().items()},
        "torus_weights": [list(torus) for torus in table.torus_weights],
    }


_CARTAN_NAMES = ("h", "cartan")


def _existence(report: ExistenceReport) -> dict[str, Any]:
    result: dict[str, Any] = {
        "space": str(report.space),
        "algebra": report.algebra,
        "verdict": report.verdict,
        "statement": report.statement,
        "notes": report.notes,
        "corroborated": report.corroborated,
    }
    if report.classes_dimension is not None:
        result["classes_dimension"] = report.classes_dimension
    if report.subset:
        result["parabolic"] = list(report.subset)
    if report.ch2 is not None:
        result["ch2"] = {
            "quadratic": str(report.ch2.quadratic.as_expr()),
            "verdict": report.ch2.verdict,
        }
    if report.levels is not None:
        result["admissible_levels"] = {
            "verdict": str(report.levels.verdict),
            "critical": report.levels.is_critical,
            "level": report.levels.level.rendered_rows() if report.levels.level is not None else None,
        }
    if report.killing_ratio is not None:
        result["killing_restriction_ratio"] = _q(report.killing_ratio)
    return result


def lie_validate(args) -> dict:
    algebra = load_presentation(args.file)
    return {
        "verdict": "valid",
        "algebra": algebra.name,
        "dim": algebra.dim,
        "basis": list(algebra.basis_names),
        "nilpotent": is_nilpotent(algebra),
        "semisimple": bool(algebra.dim) and is_semisimple(algebra),
    }


def lie_killing(args) -> dict:
    algebra = resolve_algebra(args.algebra)
    return {"verdict": "computed", "algebra": algebra.name, "basis": list(algebra.basis_names),
            "killing": killing_form(algebra).rendered_rows()}


def lie_forms(args) -> dict:
    algebra = resolve_algebra(args.algebra)
    forms = invariant_form_space(algebra)
    return {"verdict": "computed", "algebra": algebra.name, "dimension": len(forms),
            "invariant_forms": [f.rendered_rows() for f in forms]}


def lie_levels(args) -> dict:
    algebra = resolve_algebra(args.algebra)
    level = symbolic_level(algebra)
    return {
        "verdict": "computed",
        "algebra": algebra.name,
        "symbolic_level": level.rendered_rows(),
        "dual_level": dual_level(algebra, level).rendered_rows(),
        "critical_level": critical_level(algebra).rendered_rows(),
    }


def cohomology_dims_command(args) -> dict:
    algebra = resolve_algebra(args.algebra)
    kind = ComplexKind.TILDE if args.tilde else ComplexKind.TRIVIAL
    return {"verdict": "computed", "algebra": algebra.name, "complex": str(kind), "dims": cohomology_dims(algebra, kind)}


def algebroid_pi0(args) -> dict:
    report = pi0_report(resolve_algebra(args.algebra))
    return {
        "verdict": "agree" if report.agree else "computed",
        "algebra": report.algebra,
        "h3_dimension": report.h3_dimension,
        "semisimple": report.semisimple,
        "invariant_forms_dimension": report.invariant_forms_dimension,
        "forms_inject": report.forms_inject,
    }


def algebroid_check(args) -> dict:
    algebra = resolve_algebra(args.algebra)
    form = _level(algebra, args.level) or symbolic_level(algebra)
    objects = canonical_objects(algebra, form)
    return {
        "verdict": "verified",
        "algebra": algebra.name,
        "level": form.rendered_rows(),
        "objects": [objects.tilde.name, objects.cocycle.name, objects.currents.name],
        "connecting_morphism": f"{objects.connecting.source.name} -> {objects.connecting.target.name}",
        "connecting_normalization": "h_(,) lands on the cocycle object of c_(,)/2",
        "morphism_to_half_cocycle": find_morphism(objects.tilde, objects.connecting.target) is not None,
        "morphism_to_full_cocycle": find_morphism(objects.tilde, objects.cocycle) is not None,
    }


def group_verify_dual(args) -> dict:
    group = MatrixGroup(args.group)
    level = _level(group.algebra, args.level)
    report = verify_dual_embedding(group, level)
    return {
        "verdict": "verified" if report.passed else "failed",
        "group": report.group,
        "level": report.level,
        "dual_level": report.dual_level,
        "pairing_at_identity": report.pairing_at_identity,
        "checks": [{"name": c.name, "description": c.description, "instances": c.instances} for c in report.checks],
    }


def brst_square_command(args) -> dict:
    if args.algebra and args.algebra_option and args.algebra != args.algebra_option:
        raise UsageError(f"Two algebras given: {args.algebra!r} and {args.algebra_option!r}")
    name = args.algebra_option or args.algebra
    if not name:
        raise UsageError("brst square needs an algebra")
    algebra = resolve_algebra(name)
    report = brst_square(algebra, args.max_weight)
    return {
        "verdict": "d²=0" if report.vanishes else "d²≠0",
        "algebra": algebra.name,
        "max_weight": args.max_weight,
        "blocks": report.blocks,
        "nonzero_blocks": [list(key[:2]) + [list(key[2])] for key in report.nonzero_blocks],
        "matches_killing_operator": True,
    }


def brst_cohomology_command(args) -> dict:
    if args.relative is not None and args.relative.lower() not in _CARTAN_NAMES:
        raise UsageError(f"--relative takes the Cartan subalgebra ('h'), not {args.relative!r}")
    algebra = resolve_algebra(args.algebra)
    complex_ = BrstComplex(algebra, _module(algebra, args.module), args.max_weight, torus_radius=args.torus_radius)
    result: dict[str, Any] = {"algebra": algebra.name, "module": complex_.module.describe(), "max_weight": args.max_weight}
    if complex_.space.has_unbounded_blocks():
        result["torus_radius"] = complex_.torus_radius
    if args.relative is not None:
        table, report = relative_cohomology(complex_)
        result["relative"] = {"basis_size": report.basis_size, "excluded": report.excluded, "stable": report.stable}
    else:
        table = complex_.cohomology()
        if args.oracle:
            oracle = dense_cohomology_oracle(complex_)
            if oracle.dims != table.dims:
                raise MismatchError(f"Sparse ranks {table.dims} and the dense oracle {oracle.dims} disagree")
            result["oracle"] = "agrees"
    result.update(_table(table))
    result["verdict"] = "computed"
    return result


def flag_ch2(args) -> dict:
    rs = build_root_system(args.type, args.rank)
    subset = _subset(args.parabolic) or []
    result = ch2_class(rs, subset)
    return {
        "verdict": result.verdict,
        "root_system": rs.name,
        "parabolic": list(result.subset),
        "quadratic": str(result.quadratic.as_expr()),
        "matrix": [[_q(v) for v in row] for row in result.symmetric_matrix()],
        "invariant_quadratics": len(invariant_quadratics(rs)),
    }


def classify(args) -> dict:
    algebra = resolve_algebra(args.algebra)
    try:
        space = SpaceKind(args.space)
    except ValueError:
        raise UsageError(f"Unknown space {args.space!r}, expected one of {[str(s) for s in SpaceKind]}")
    report = existence_report(space, algebra, _subset(args.parabolic))
    if not report.corroborated:
        raise VerificationFailure(f"The BRST side disagrees with the ch2 verdict for {algebra.name} {space}")
    return _existence(report)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cdo-workbench", description=__doc__)
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    parser.add_argument("--output", help="write the report to a file instead of stdout")
    commands = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def command(subparsers, name: str, handler: Callable[[Any], dict], **kwargs):
        sub = subparsers.add_parser(name, **kwargs)
        sub.set_defaults(handler=handler)
        return sub

    lie = commands.add_parser("lie").add_subparsers(dest="command", required=True, parser_class=_Parser)
    command(lie, "validate", lie_validate).add_argument("file")
    command(lie, "killing", lie_killing).add_argument("algebra")
    command(lie, "forms", lie_forms).add_argument("algebra")
    command(lie, "levels", lie_levels).add_argument("algebra")

    cohomology = commands.add_parser("cohomology").add_subparsers(dest="command", required=True, parser_class=_Parser)
    dims = command(cohomology, "dims", cohomology_dims_command)
    dims.add_argument("algebra")
    dims.add_argument("--tilde", action="store_true")

    algebroid = commands.add_parser("algebroid").add_subparsers(dest="command", required=True, parser_class=_Parser)
    command(algebroid, "pi0", algebroid_pi0).add_argument("algebra")
    check = command(algebroid, "check", algebroid_check)
    check.add_argument("algebra")
    check.add_argument("--level", default="symbolic")

    group = commands.add_parser("group").add_subparsers(dest="command", required=True, parser_class=_Parser)
    verify = command(group, "verify-dual", group_verify_dual)
    verify.add_argument("group")
    verify.add_argument("--level", default="symbolic")

    brst = commands.add_parser("brst").add_subparsers(dest="command", required=True, parser_class=_Parser)
    square = command(brst, "square", brst_square_command)
    square.add_argument("algebra", nargs="?")
    square.add_argument("--algebra", dest="algebra_option", metavar="ALGEBRA")
    square.add_argument("--max-weight", type=int, default=2)
    cohomology_brst = command(brst, "cohomology", brst_cohomology_command)
    cohomology_brst.add_argument("--algebra", required=True)
    cohomology_brst.add_argument("--module", default="ghosts")
    cohomology_brst.add_argument("--max-weight", type=int, default=2)
    cohomology_brst.add_argument("--torus-radius", type=int)
    cohomology_brst.add_argument(
        "--relative", nargs="?", const="h", metavar="CARTAN", help="relative to the Cartan subalgebra"
    )
    cohomology_brst.add_argument("--oracle", action="store_true", help="cross-check with dense ranks")

    flag = commands.add_parser("flag").add_subparsers(dest="command", required=True, parser_class=_Parser)
    ch2 = command(flag, "ch2", flag_ch2)
    ch2.add_argument("--type", required=True)
    ch2.add_argument("--rank", type=int, required=True)
    ch2.add_argument("--parabolic", default="")

    classify_parser = command(commands, "classify", classify)
    classify_parser.add_argument("--space", required=True)
    classify_parser.add_argument("--algebra", required=True)
    classify_parser.add_argument("--parabolic")
    return parser


def inputs_digest(argv: list[str]) -> str:
    """sha256 over the arguments and the content of every argument naming an input file."""
    digest = hashlib.sha256()
    for k, arg in enumerate(argv):
        if arg.startswith("--output") or (k and argv[k - 1] == "--output"):
            continue
        digest.update(arg.encode("utf8") + b"\0")
        if path.isfile(arg):
            with open(arg, "rb") as f:
                digest.update(f.read())
    return digest.hexdigest()


def _configure_logging(verbosity: int):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def _emit(report: dict, output: Optional[str]):
    text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if output:
        with open(output, "w", encoding="utf8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def run(argv: list[str]) -> int:
    """Runs one command; 0 verified, 1 verification failure, 2 bad input."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 2
    _configure_logging(args.verbose)
    report: dict[str, Any] = {"schema": SCHEMA, "command": argv, "inputs_digest": inputs_digest(argv)}
    try:
        report.update(args.handler(args))
    except InputError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 2
    except VerificationFailure as e:
        logger.error(f"{type(e).__name__}: {e}")
        report.update({"verdict": "failed", "error": f"{type(e).__name__}: {e}"})
        _emit(report, args.output)
        return 1
    _emit(report, args.output)
    return 1 if report.get("verdict") == "failed" else 0


def main():
    sys.exit(run(sys.argv[1:]))
