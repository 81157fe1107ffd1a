"""Command-line workbench: check suites, construct family instances and print property dossiers."""
import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import instance_file
from .algebra_core import ProductTable
from .antipode import antipode_criteria, antipode_property_suite, check_antipode_conditions, convolution_reconstruction, solve_antipode
from .double_core import (
    DoubleAlgebra, base_maps, check_axioms, check_base_lemmas, forms_nondegenerate, integral_space, nakayama_on_base,
)
from .examples import (
    DoubleCategoryData, FiniteGroup, Groupoid, check_oracles, commutative_double, cyclic_group,
    diagonal_extension, double_category_double, family_oracles, frobenius_extension_double, groupoid_double,
    groupoid_weak_hopf, group_weak_hopf, hopf_group_double, matrix_double, matrix_trace_extension, pair_groupoid,
    subgroup_extension, symmetric_group, trivial_extension, truncated_polynomial, wha_double,
)
from .exact_linalg import Field, Vector
from .frobenius import (
    DUAL_BASIS_NAMES, check_dual_basis, check_galois_identities, comultiplication, frobenius_corners,
    frobenius_index, maschke_report, nakayama, solve_dual_basis,
)
from .instance_file import InstanceFile
from .models import AlgebraError, AxiomViolation, Corner, InstanceFormatError, Report, Suite
from .structure import (
    check_comult_multiplicative, check_distributivity, extract_hopf_algebroids, frobenius_integrals, hgd_round_trip,
    pairings, takeuchi_double,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

SUITE_ORDER = list(Suite)  # axioms, base, frobenius, galois, maschke, antipode, distributive, hopf
FAMILIES = ("commutative", "matrix", "groupoid", "doublecat", "frobext", "hopf-group", "wha", "takeuchi")
EXTENSIONS = ("trace", "diagonal", "trivial", "subgroup")


def format_element(field_: Field, labels: Sequence[str], v: Vector) -> str:
    """Linear combination of basis labels, e.g. "e11 - 1/2*e22" """
    terms = []
    for label, c in zip(labels, v):
        if not c:
            continue
        coefficient = field_.format(c)
        if coefficient == "1":
            terms.append(label)
        elif coefficient == "-1":
            terms.append(f"-{label}")
        else:
            terms.append(f"{coefficient}*{label}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


class Workbench:
    """One instance with its axiom report, running suites and assembling the dossier"""

    def __init__(self, D: DoubleAlgebra, expected: Optional[Dict[str, Any]] = None):
        self.D = D
        self.axioms = check_axioms(D.vertical, D.horizontal, D.basis_labels)
        self.expected = dict(expected or {})
        self._runners: Dict[Suite, Callable[[], Report]] = {
            Suite.AXIOMS: self._axioms,
            Suite.BASE: self._base,
            Suite.FROBENIUS: self._frobenius,
            Suite.GALOIS: self._galois,
            Suite.MASCHKE: lambda: maschke_report(self.D),
            Suite.ANTIPODE: self._antipode,
            Suite.DISTRIBUTIVE: self._distributive,
            Suite.HOPF: self._hopf,
        }

    @classmethod
    def from_instance(cls, instance: InstanceFile, override: Optional[Field] = None) -> "Workbench":
        """Axioms are evaluated by the workbench, so the stored pair is loaded unchecked"""
        return cls(instance.double(override, check=False), instance.expected)

    @property
    def is_double_algebra(self) -> bool:
        return self.axioms.passed

    def axiom_failure(self) -> str:
        first = self.axioms.first_failure()
        return f"{first.name} fails at {first.witness.describe()}" if first is not None else ""

    # Suites

    def run_suite(self, suite: Suite) -> Dict[str, Any]:
        try:
            if suite != Suite.AXIOMS and not self.is_double_algebra:
                raise AxiomViolation(self.axioms)
            report = self._runners[suite]()
            logger.info(f"{self.D.label}: suite {suite.value} {'passed' if report.passed else 'failed'}")
            return {'suite': suite.value, 'status': 'passed' if report.passed else 'failed', 'report': report}
        except ValueError as e:
            logger.error(f"Suite {suite.value} on {self.D.label} failed: {str(e)}")
            return {'suite': suite.value, 'status': 'failed', 'error': str(e)}

    def check(self, suites: Sequence[Suite]) -> List[Dict[str, Any]]:
        selected = set(suites)
        return [self.run_suite(suite) for suite in SUITE_ORDER if suite in selected]

    def _axioms(self) -> Report:
        report = self.axioms.to_report()
        report.data = {'failed axioms': self.axioms.failed_axioms()}
        return report

    def _base(self) -> Report:
        D = self.D
        report = Report(name="base")
        maps = base_maps(D)
        report.extend(maps.report, prefix="base maps: ")
        lemmas = check_base_lemmas(D)
        report.extend(lemmas)
        report.extend(nakayama_on_base(D).report, prefix="nakayama: ")
        for corner in Corner:
            integrals = integral_space(D, corner)
            report.record(f"{corner.value} ⊆ I_{corner.value} ⊆ centralizer", integrals.sandwich)
            if integrals.forms_nondegenerate:
                report.record(f"I_{corner.value} is a base ideal", integrals.equals_base)
        dimensions = dict(maps.report.data)
        stored = self.expected.get('base ideal dimensions')
        if stored is not None:
            report.record("base ideal dimensions match the stored values", stored == dimensions)
        report.data = {'base ideal dimensions': dimensions, **lemmas.data}
        return report

    def _frobenius(self) -> Report:
        D = self.D
        report = Report(name="frobenius")
        corners = frobenius_corners(D)
        nondegenerate = forms_nondegenerate(D)
        for corner in Corner:
            report.record(f"Φ_{corner.value} is a Frobenius homomorphism", corners[corner])
            report.record(f"Φ_{corner.value} form is nondegenerate", nondegenerate[corner], required=False)
        for corner in Corner:
            if not corners[corner]:
                continue
            dual = solve_dual_basis(D, corner)
            report.extend(check_dual_basis(D, corner, dual.pairs), prefix=f"{DUAL_BASIS_NAMES[corner]}: ")
            report.extend(comultiplication(D, corner).report, prefix=f"Δ_{corner.value}: ")
            report.extend(nakayama(D, corner).report, prefix=f"ν_{corner.value}: ")
        report.data = {'corners': {corner.value: ok for corner, ok in corners.items()}}
        return report

    def _galois(self) -> Report:
        D = self.D
        report = Report(name="galois")
        galois = check_galois_identities(D)
        report.extend(galois)
        report.record("Galois identities hold", galois.data['identities'])
        if galois.data['identities']:
            _, index = frobenius_index(D)
            report.extend(index, prefix="index: ")
            report.data = {**galois.data, **index.data}
        else:
            report.data = dict(galois.data)
        return report

    def _antipode(self) -> Report:
        D = self.D
        report = Report(name="antipode")
        report.extend(antipode_criteria(D), prefix="criteria: ")
        report.extend(check_antipode_conditions(D), prefix="conditions: ")
        S = solve_antipode(D)
        report.record("antipode exists", S is not None)
        stored = self.expected.get('antipode')
        if S is None:
            if stored is not None:
                report.record("stored antipode matches the solver", False)
            return report
        report.extend(S.report)
        report.extend(antipode_property_suite(D, S), prefix="properties: ")
        report.extend(convolution_reconstruction(D, S), prefix="reconstruction: ")
        if stored is not None:
            matrix = instance_file.parse_matrix(D.field, stored, D.dimension)
            report.record("stored antipode matches the solver", matrix == S.matrix)
        report.data = {'S': instance_file.matrix_columns(D.field, S.matrix)}
        return report

    def _distributive(self) -> Report:
        D = self.D
        report = Report(name="distributive")
        distributivity = check_distributivity(D)
        report.extend(distributivity.report)
        report.record("distributive", distributivity.distributive)
        multiplicative = check_comult_multiplicative(D)
        report.extend(multiplicative, prefix="multiplicative: ")
        report.data = {'laws': dict(distributivity.laws), **multiplicative.data}
        return report

    def _hopf(self) -> Report:
        D = self.D
        report = Report(name="hopf")
        report.extend(extract_hopf_algebroids(D).report)
        report.extend(hgd_round_trip(D), prefix="round trip: ")
        _, pairing_report = pairings(D)
        report.extend(pairing_report, prefix="pairings: ")
        return report

    # Dossier

    def _line(self, title: str, compute: Callable[[], str]) -> str:
        try:
            return f"{title}: {compute()}"
        except ValueError as e:
            logger.error(f"{title} on {self.D.label} failed: {str(e)}")
            return f"{title}: error ({str(e)})"

    def dossier(self) -> List[str]:
        D = self.D
        field_, labels = D.field, D.basis_labels
        show = lambda v: format_element(field_, labels, v)
        lines = [f"instance: {D.label}", f"field: {field_.descriptor}", f"dimension: {D.dimension}"]
        if not self.is_double_algebra:
            lines.append(f"double algebra: NO ({self.axiom_failure()})")
            return lines
        lines.append("double algebra: yes")

        def ideals() -> str:
            return ", ".join(f"{c.value}={D.ideal(c).dimension}" for c in Corner)

        def connectivity(first: Corner, second: Corner) -> str:
            dimension = D.ideal(first).intersection(D.ideal(second)).dimension
            return f"{_yes(dimension == 1)} (dim {first.value}∩{second.value} = {dimension})"

        def corners() -> str:
            return ", ".join(f"{c.value} {_yes(ok)}" for c, ok in frobenius_corners(D).items())

        lines.append(self._line("base ideals", ideals))
        lines.append(self._line("connected", lambda: connectivity(Corner.B, Corner.T)))
        lines.append(self._line("coconnected", lambda: connectivity(Corner.L, Corner.R)))
        lines.append(self._line("frobenius corners", corners))
        frobenius = all(frobenius_corners(D).values())
        if not frobenius:
            lines.append("frobenius: no (the remaining properties need all four dual bases)")
            return lines

        galois_data = check_galois_identities(D).data
        lines.append(self._line("galois", lambda: _yes(galois_data['identities'])))
        if galois_data['identities']:
            def maschke() -> str:
                data = maschke_report(D).data
                parts = []
                for side in ("V", "H"):
                    part = f"{side} regular {_yes(data[f'{side} regular'])}"
                    if f'{side} j' in data:
                        j = instance_file.parse_vector(field_, data[f'{side} j'])
                        part += f" (j = {show(j)})"
                    parts.append(part)
                return ", ".join(parts)
            lines.append(self._line("maschke", maschke))

        S = solve_antipode(D)
        if S is None:
            lines.append("antipode: no")
        else:
            formula = self.expected.get('antipode formula')
            lines.append(f"antipode: yes ({formula})" if formula else "antipode: yes")
            lines.append("  " + ", ".join(f"S({label}) = {show(S(b))}" for label, b in zip(labels, D.basis())))
        lines.append(self._line("distributive", lambda: _yes(check_distributivity(D).distributive)))

        if galois_data['identities']:
            def indices() -> str:
                values, _ = frobenius_index(D)
                return ", ".join(f"Ind Φ_{c.value} = {show(v)}" for c, v in values.items())
            lines.append(self._line("index", indices))

        def integrals() -> str:
            found = frobenius_integrals(D).invertible
            return "; ".join(f"{c.value}: " + (", ".join(show(x) for x in xs) or "none") for c, xs in found.items())
        lines.append(self._line("frobenius integrals", integrals))
        return lines


# Construction

def _family_double(family: str, args: argparse.Namespace, field_: Field) -> DoubleAlgebra:
    n = 2 if args.n is None else args.n
    if family == "commutative":
        if args.table:
            data = instance_file.load_json(args.table)
            size = int(data['dimension'])
            table = ProductTable.from_dense(field_, size, [field_.parse(c) for c in data['constants']],
                                            tuple(field_.parse(c) for c in data['unit']),
                                            name=str(data.get('name', "A")))
            return commutative_double(table, data.get('basis', ()))
        labels = ["1"] + ["x" if k == 1 else f"x^{k}" for k in range(1, n)]
        return commutative_double(truncated_polynomial(n, field_), labels)
    if family == "matrix":
        return matrix_double(n, field_)
    if family == "groupoid":
        groupoid = Groupoid.from_dict(instance_file.load_json(args.groupoid)) if args.groupoid \
            else pair_groupoid(n)
        return groupoid_double(groupoid, field_)
    if family == "doublecat":
        if not args.data:
            raise InstanceFormatError("doublecat needs --data")
        return double_category_double(DoubleCategoryData.from_dict(instance_file.load_json(args.data)), field_)
    if family == "frobext":
        kind = args.extension or "trace"
        if kind == "trace":
            return frobenius_extension_double(matrix_trace_extension(n, field_))
        if kind == "diagonal":
            return frobenius_extension_double(diagonal_extension(n, field_))
        if kind == "subgroup":
            return frobenius_extension_double(subgroup_extension(symmetric_group(3), ("123", "213"), field_))
        return frobenius_extension_double(trivial_extension(field_))
    if family == "hopf-group":
        group = FiniteGroup.from_dict(instance_file.load_json(args.table)) if args.table else cyclic_group(n)
        return hopf_group_double(group, field_)
    if family == "wha":
        if args.table:
            return wha_double(group_weak_hopf(FiniteGroup.from_dict(instance_file.load_json(args.table)), field_))
        groupoid = Groupoid.from_dict(instance_file.load_json(args.groupoid)) if args.groupoid \
            else pair_groupoid(n)
        return wha_double(groupoid_weak_hopf(groupoid, field_))
    if family == "takeuchi":
        if not args.instance:
            raise InstanceFormatError("takeuchi needs --instance")
        base = instance_file.load(args.instance).double(field_ if args.field else None)
        double, _ = takeuchi_double(base)
        return double
    raise InstanceFormatError(f"Unknown family {family!r}")


def expected_block(D: DoubleAlgebra, family: str) -> Dict[str, Any]:
    """Artifacts frozen at construction time: family, base ideal dimensions, antipode and suite outcomes"""
    block: Dict[str, Any] = {'family': family}
    oracles = family_oracles(D)
    if oracles is not None and oracles.antipode_formula:
        block['antipode formula'] = oracles.antipode_formula
    block['base ideal dimensions'] = {c.value: D.ideal(c).dimension for c in Corner}
    bench = Workbench(D)
    outcomes = bench.check(SUITE_ORDER)
    antipode = next(o for o in outcomes if o['suite'] == Suite.ANTIPODE.value)
    if 'report' in antipode and 'S' in antipode['report'].data:
        block['antipode'] = antipode['report'].data['S']
    block['suites'] = {o['suite']: o['status'] == 'passed' for o in outcomes}
    if oracles is not None:
        block['oracles'] = check_oracles(D).passed
    return block


# Commands

def _parse_suites(names: Sequence[str]) -> List[Suite]:
    if not names or "all" in names:
        return list(SUITE_ORDER)
    return [Suite(name) for name in names]


def _override(args: argparse.Namespace) -> Optional[Field]:
    return Field.parse_descriptor(args.field) if args.field else None


def _print_check(bench: Workbench, outcomes: List[Dict[str, Any]], out) -> None:
    D = bench.D
    print(f"{D.label}: dimension {D.dimension} over {D.field.descriptor}", file=out)
    for outcome in outcomes:
        name = outcome['suite']
        if 'error' in outcome:
            print(f"[{name}] FAILED: {outcome['error']}", file=out)
            continue
        report: Report = outcome['report']
        if report.passed:
            print(f"[{name}] passed ({len(report.checks)} checks)", file=out)
            continue
        print(f"[{name}] FAILED", file=out)
        for check in report.failures():
            where = f" at {check.witness.describe()}" if check.witness is not None else ""
            print(f"  - {check.name}{where}", file=out)


def _outcomes_to_dict(bench: Workbench, outcomes: List[Dict[str, Any]]) -> Dict[str, Any]:
    suites = []
    for outcome in outcomes:
        entry = {key: value for key, value in outcome.items() if key != 'report'}
        if 'report' in outcome:
            entry['report'] = outcome['report'].to_dict()
        suites.append(entry)
    return {
        'label': bench.D.label,
        'field': bench.D.field.descriptor,
        'dimension': bench.D.dimension,
        'passed': all(o['status'] == 'passed' for o in outcomes),
        'suites': suites,
    }


def cmd_check(args: argparse.Namespace, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        bench = Workbench.from_instance(instance_file.load(args.path), _override(args))
        suites = _parse_suites(args.suite)
    except ValueError as e:
        logger.error(f"Cannot check {args.path}: {str(e)}")
        return EXIT_INPUT
    outcomes = bench.check(suites)
    if args.json:
        print(json.dumps(_outcomes_to_dict(bench, outcomes), indent=2, ensure_ascii=False), file=out)
    else:
        _print_check(bench, outcomes, out)
    return EXIT_OK if all(o['status'] == 'passed' for o in outcomes) else EXIT_FAILED


def cmd_construct(args: argparse.Namespace, out=None) -> int:
    out = out if out is not None else sys.stdout
    field_ = Field.parse_descriptor(args.field or instance_file.DEFAULT_FIELD)
    try:
        D = _family_double(args.family, args, field_)
    except AlgebraError as e:
        logger.error(f"Construction of {args.family} failed: {str(e)}")
        print(f"{args.family}: rejected ({str(e)})", file=out)
        return EXIT_FAILED
    except (ValueError, KeyError, TypeError) as e:
        logger.error(f"Invalid parameters for {args.family}: {str(e)}")
        return EXIT_INPUT
    instance = instance_file.from_double(D, expected_block(D, args.family))
    if args.out:
        instance_file.save(instance, args.out)
        print(f"{D.label}: dimension {D.dimension}, written to {args.out}", file=out)
    else:
        out.write(instance_file.dumps(instance))
    return EXIT_OK


def cmd_report(args: argparse.Namespace, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        bench = Workbench.from_instance(instance_file.load(args.path), _override(args))
    except ValueError as e:
        logger.error(f"Cannot report on {args.path}: {str(e)}")
        return EXIT_INPUT
    lines = bench.dossier()
    if args.json:
        print(json.dumps({'label': bench.D.label, 'dossier': lines}, indent=2, ensure_ascii=False), file=out)
    else:
        print("\n".join(lines), file=out)
    return EXIT_OK if bench.is_double_algebra else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="double-algebra", description='Exact workbench for double algebras')
    parser.add_argument('--verbose', action='store_true', help='Log solver details to stderr')
    commands = parser.add_subparsers(dest='command', required=True)

    check = commands.add_parser('check', help='Run check suites on an instance file')
    check.add_argument('path', type=str, help='Instance file')
    check.add_argument('--suite', action='append', choices=[s.value for s in SUITE_ORDER] + ['all'],
                       help='Suite to run (repeatable, default all)')

    construct = commands.add_parser('construct', help='Build a family instance and write its instance file')
    construct.add_argument('family', choices=FAMILIES)
    construct.add_argument('--n', type=int, help='Size parameter of the family')
    construct.add_argument('--table', type=str, help='Group table or commutative algebra (JSON)')
    construct.add_argument('--groupoid', type=str, help='Groupoid data (JSON)')
    construct.add_argument('--data', type=str, help='Double category data (JSON)')
    construct.add_argument('--extension', choices=EXTENSIONS, help='Frobenius extension for frobext')
    construct.add_argument('--instance', type=str, help='Instance file for takeuchi')
    construct.add_argument('--out', type=str, help='Output path (default stdout)')

    report = commands.add_parser('report', help='Print the property dossier of an instance file')
    report.add_argument('path', type=str, help='Instance file')

    for sub in (check, construct, report):
        sub.add_argument('--field', type=str, help='Q or Fp:<p>')
    for sub in (check, report):
        sub.add_argument('--json', action='store_true', help='Machine-readable output')
    return parser


COMMANDS = {'check': cmd_check, 'construct': cmd_construct, 'report': cmd_report}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    if args.field:
        try:
            Field.parse_descriptor(args.field)
        except AlgebraError as e:
            logger.error(str(e))
            return EXIT_INPUT
    return COMMANDS[args.command](args, out=sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
