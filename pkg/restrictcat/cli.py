"""
Command-line interface for restrictcat.

Every command reads a category file (or a presheaf file over one), runs one
construction or check and writes a report to standard output. Exit codes:
0 when every check passes or is not applicable, 1 on a failed check or a
broken internal invariant, 2 on bad input or usage.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from restrictcat.__version__ import __version__
from restrictcat.cocheck import (
    check_cocompleteness_conditions,
    check_m_extensive,
    generate_diagrams,
    lemma_suite,
)
from restrictcat.config import WorkbenchConfig
from restrictcat.equiv import cockett_lack_check, verify_equivalence
from restrictcat.exceptions import ConfigurationError, InputError, InvariantViolation
from restrictcat.fincat import check_category
from restrictcat.fixtures import export_fixtures, fixtures_list
from restrictcat.formats import (
    CategoryBundle,
    dump_category,
    load_presheaf_parts,
    read_json,
    resolve_category,
    write_json,
)
from restrictcat.logging_config import configure_logging
from restrictcat.mcat import check_msystem, msystem, mtotal, par, require_valid
from restrictcat.presheaf import (
    check_presheaf,
    check_presheaf_map,
    generated_family,
    load_presheaf,
    load_presheaf_map,
    msub_rep_iso_check,
    presheaf_from_parts,
    sigma_classifier,
)
from restrictcat.report import CheckReport, combine
from restrictcat.restriction import (
    RestrCat,
    check_restriction_structure,
    enumerate_restriction_structures,
    make_restriction_category,
    total_subcategory,
)
from restrictcat.rpsh import (
    RestrictionPresheaf,
    check_restriction_presheaf,
    check_yoneda_r_functor,
    infer_restriction_structure,
)
from restrictcat.splitting import kr

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class Outcome:
    """What a command produced: a report, or a file body, or both."""

    def __init__(self, report: Optional[CheckReport] = None, document: Optional[str] = None):
        self.report = report
        self.document = document

    @property
    def exit_code(self) -> int:
        if self.report is None or self.report.passed:
            return EXIT_PASS
        if self.report.error is not None:
            return EXIT_INPUT
        return EXIT_FAIL


# -- loading helpers -----------------------------------------------------------------


def _restriction_category(bundle: CategoryBundle) -> RestrCat:
    if bundle.restriction is None:
        raise InputError(f"{bundle.name or 'category'} has no restriction structure")
    return make_restriction_category(bundle.category, bundle.restriction, name=bundle.name)


def _members(bundle: CategoryBundle):
    if bundle.msystem is None:
        raise InputError(f"{bundle.name or 'category'} has no M-system")
    M = msystem(bundle.category, bundle.msystem)
    require_valid(M)
    return M


def _emit_category(bundle: CategoryBundle, output: Optional[str]) -> Outcome:
    if output:
        dump_category(bundle, output)
        return Outcome()
    return Outcome(document=dump_category(bundle))


# -- commands ------------------------------------------------------------------------------


def cmd_check(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle = resolve_category(args.path)
    reports = [check_category(bundle.category)]
    if reports[0].passed:
        if bundle.restriction is not None:
            reports.append(check_restriction_structure(bundle.category, bundle.restriction))
        if bundle.msystem is not None:
            reports.append(check_msystem(bundle.category, bundle.msystem))
    report = combine("check", reports)
    report.metadata["category"] = bundle.name
    return Outcome(report)


def cmd_kr(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle = resolve_category(args.path)
    split = kr(_restriction_category(bundle))
    result = CategoryBundle(split.result.cat, restriction=split.result.bar, name=split.result.name)
    return _emit_category(result, args.output)


def cmd_par(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle = resolve_category(args.path)
    P = par(bundle.category, _members(bundle))
    return _emit_category(CategoryBundle(P.cat, restriction=P.bar, name=P.name), args.output)


def cmd_mtotal(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle = resolve_category(args.path)
    total, M = mtotal(_restriction_category(bundle))
    return _emit_category(CategoryBundle(total, msystem=tuple(M.members), name=total.name), args.output)


def cmd_structures(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle = resolve_category(args.path)
    found = enumerate_restriction_structures(bundle.category, config)
    report = CheckReport(check="structures")
    report.metadata["category"] = bundle.name
    report.metadata["count"] = len(found)
    report.metadata["structures"] = found
    return Outcome(report)


def cmd_total(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle = resolve_category(args.path)
    total = total_subcategory(_restriction_category(bundle))
    return _emit_category(CategoryBundle(total, name=total.name), args.output)


def cmd_msystem_check(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle = resolve_category(args.path)
    if bundle.msystem is None:
        raise InputError(f"{bundle.name} has no M-system")
    return Outcome(check_msystem(bundle.category, bundle.msystem))


def cmd_psh_check(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    P, _ = load_presheaf(args.path)
    report = check_presheaf(P)
    if args.map:
        if not args.target:
            raise InputError("--map needs --target")
        Q, _ = load_presheaf(args.target)
        report = combine("psh-check", [report, check_presheaf_map(load_presheaf_map(args.map, P, Q))])
    return Outcome(report)


def cmd_rpsh_check(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle, sets, actions, restriction = load_presheaf_parts(args.path)
    X = _restriction_category(bundle)
    P = presheaf_from_parts(bundle.category, sets, actions, name=Path(args.path).stem)
    if restriction is None:
        structures = infer_restriction_structure(P, X)
        report = CheckReport(check="restriction-presheaf")
        report.metadata["inferred"] = len(structures)
        if not structures:
            report.violate("no-structure", presheaf=P.name)
        return Outcome(report)
    return Outcome(check_restriction_presheaf(RestrictionPresheaf(X, P.sets, P.actions, restriction, name=P.name)))


def cmd_yoneda(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle = resolve_category(args.path)
    reports = []
    if bundle.restriction is not None:
        reports.append(check_yoneda_r_functor(_restriction_category(bundle)))
    if bundle.msystem is not None:
        M = _members(bundle)
        for A in bundle.category.objects:
            sub = msub_rep_iso_check(bundle.category, M, A)
            sub.check = f"msub-rep:{A}"
            reports.append(sub)
    if not reports:
        raise InputError(f"{bundle.name} has neither a restriction structure nor an M-system")
    return Outcome(combine("yoneda", reports))


def cmd_classifier(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle = resolve_category(args.path)
    M = _members(bundle)
    _, _, report = sigma_classifier(bundle.category, M, config=config)
    return Outcome(report)


def cmd_cocheck(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle = resolve_category(args.path)
    C, M = bundle.category, _members(bundle)
    report = check_cocompleteness_conditions(C, M, config)
    verdict = report.metadata["verdict"]
    if args.lemmas:
        diagrams, metadata = generate_diagrams(C, M, config)
        lemmas = lemma_suite(C, M, diagrams)
        lemmas.metadata.update(metadata)
        report = combine("cocheck", [report, lemmas])
        report.metadata["verdict"] = verdict
    return Outcome(report)


def cmd_extensive(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle = resolve_category(args.path)
    return Outcome(check_m_extensive(bundle.category, _members(bundle), config))


def cmd_equiv_verify(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    """Family manifest: ``{"presheaves": [paths relative to the manifest]}``."""
    bundle = resolve_category(args.path)
    C, M = bundle.category, _members(bundle)
    if args.manifest:
        manifest = read_json(args.manifest)
        if not isinstance(manifest, dict) or set(manifest) - {"presheaves"}:
            raise InputError("family manifest takes a single 'presheaves' array")
        root = Path(args.manifest).parent
        presheaves = []
        for entry in manifest.get("presheaves", []):
            P, _ = load_presheaf(root / entry)
            if P.base != C:
                raise InputError(f"{entry} is not over {bundle.name}")
            presheaves.append(P)
    else:
        presheaves = generated_family(C, M, max_summands=config.max_summands).presheaves
    witness = verify_equivalence(C, M, presheaves)
    witness.report.metadata["presheaves"] = len(presheaves)
    return Outcome(witness.report, document=write_json(witness.to_dict()) if config.output_format == "json" else None)


def cmd_cl_check(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    bundle = resolve_category(args.path)
    return Outcome(cockett_lack_check(_restriction_category(bundle)))


def cmd_fixtures(args: argparse.Namespace, config: WorkbenchConfig) -> Outcome:
    if args.export:
        for path in export_fixtures(Path(args.export)):
            logger.info(f"Exported {path}")
    return Outcome(document=write_json(fixtures_list()))


COMMANDS: Dict[str, Callable[[argparse.Namespace, WorkbenchConfig], Outcome]] = {
    "check": cmd_check,
    "kr": cmd_kr,
    "par": cmd_par,
    "mtotal": cmd_mtotal,
    "total": cmd_total,
    "structures": cmd_structures,
    "msystem-check": cmd_msystem_check,
    "psh-check": cmd_psh_check,
    "rpsh-check": cmd_rpsh_check,
    "yoneda": cmd_yoneda,
    "classifier": cmd_classifier,
    "cocheck": cmd_cocheck,
    "extensive": cmd_extensive,
    "equiv-verify": cmd_equiv_verify,
    "cl-check": cmd_cl_check,
    "fixtures": cmd_fixtures,
}

HELP = {
    "check": "category laws, plus R1-R4 and the M-system when present",
    "kr": "split the restriction idempotents (emits a category file)",
    "par": "partial maps of an M-category (emits a category file)",
    "mtotal": "total maps with restriction monics (emits a category file)",
    "total": "total maps only (emits a category file)",
    "structures": "every restriction structure on a small category",
    "msystem-check": "stable system of monics laws",
    "psh-check": "presheaf laws, optionally naturality of a map",
    "rpsh-check": "restriction presheaf axioms, or inference when absent",
    "yoneda": "restriction Yoneda functor and the M-subobject bijection",
    "classifier": "Σ classifies the M-maps of the generated family",
    "cocheck": "cocompleteness conditions at finite scale",
    "extensive": "M-extensivity over coproducts",
    "equiv-verify": "unit and counit of the presheaf equivalence",
    "cl-check": "restriction Yoneda against the partial map embedding",
    "fixtures": "list (or export) the bundled fixtures",
}

_EMITS_FILE = ("kr", "par", "mtotal", "total")
_PRESHEAF_INPUT = ("psh-check", "rpsh-check")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="restrictcat", description="Finite restriction category workbench")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=["json", "text"], default="json",
                        help="Report format (default: json)")
    parser.add_argument("--seed", type=int, default=None,
                        help="Seed for sampled diagram sets")
    parser.add_argument("--shape-bound", type=int, default=None,
                        help="Maximum number of objects in a diagram shape")
    parser.add_argument("--enumeration-limit", type=int, default=None,
                        help="Largest category (in morphisms) the structures command enumerates")
    parser.add_argument("--log-level", type=str, default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help="Set the logging level (default: WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        command = sub.add_parser(name, help=HELP[name])
        if name == "fixtures":
            command.add_argument("--export", metavar="DIR", help="Write every fixture as a category file")
            continue
        command.add_argument("path", help="Presheaf file" if name in _PRESHEAF_INPUT else "Category file")
        if name in _EMITS_FILE:
            command.add_argument("-o", "--output", help="Write the result here instead of standard output")
        if name == "psh-check":
            command.add_argument("--map", help="Presheaf map file to check for naturality")
            command.add_argument("--target", help="Target presheaf file of --map")
        if name == "cocheck":
            command.add_argument("--lemmas", action="store_true", help="Also run the colimit lemma suite")
        if name == "equiv-verify":
            command.add_argument("--manifest", help="Family manifest (defaults to the generated family)")
    return parser


def _config(args: argparse.Namespace) -> WorkbenchConfig:
    values = {"output_format": args.format, "log_level": args.log_level}
    if args.seed is not None:
        values["seed"] = args.seed
    if args.shape_bound is not None:
        values["shape_bound"] = args.shape_bound
    if args.enumeration_limit is not None:
        values["enumeration_limit"] = args.enumeration_limit
    try:
        return WorkbenchConfig.from_dict(values)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc


def _render(report: CheckReport, config: WorkbenchConfig) -> str:
    return report.to_json() + "\n" if config.output_format == "json" else report.to_text() + "\n"


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """Run one command and return its exit code; never raises SystemExit."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS

    try:
        config = _config(args)
    except ConfigurationError as exc:
        stdout.write(_render(CheckReport.input_error(args.command, str(exc)), WorkbenchConfig()))
        return EXIT_INPUT
    configure_logging(config.log_level)

    try:
        outcome = COMMANDS[args.command](args, config)
    except InputError as exc:
        report = CheckReport.input_error(args.command, str(exc))
        if getattr(exc, "witness", None):
            report.metadata["witness"] = exc.witness
        stdout.write(_render(report, config))
        return EXIT_INPUT
    except InvariantViolation as exc:
        logger.error(f"Internal invariant broken: {exc}")
        report = CheckReport(check=args.command)
        report.violate("invariant", message=str(exc), **exc.witness)
        stdout.write(_render(report, config))
        return EXIT_FAIL

    if outcome.document is not None:
        stdout.write(outcome.document)
    elif outcome.report is not None:
        stdout.write(_render(outcome.report, config))
    return outcome.exit_code


def main(argv: Optional[List[str]] = None) -> None:
    """Entry point of the ``restrictcat`` console script."""
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
