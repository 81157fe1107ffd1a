from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple


class Corner(Enum):
    L = "L"
    R = "R"
    B = "B"
    T = "T"


class Symmetry(Enum):
    DUAL = "dual"
    OP = "op"
    COOP = "coop"


class RegularAction(Enum):
    T = "T"  # a' -> a' ∘ a
    R = "R"  # a' -> a' ⋆ a
    L = "L"  # a' -> a ⋆ a'
    B = "B"  # a' -> a ∘ a'


class TransposeSide(Enum):
    LEFT = "<"
    RIGHT = ">"


class Suite(Enum):
    AXIOMS = "axioms"
    BASE = "base"
    FROBENIUS = "frobenius"
    GALOIS = "galois"
    MASCHKE = "maschke"
    ANTIPODE = "antipode"
    DISTRIBUTIVE = "distributive"
    HOPF = "hopf"


class AlgebraError(ValueError):
    """Invalid algebraic data or a mismatch between algebras"""


class AxiomViolation(AlgebraError):
    """A pair of product tables failed one of the axioms A1-A8"""

    def __init__(self, report: "AxiomReport", detail: str = ""):
        self.report = report
        self.detail = detail
        first = report.first_failure()
        if first is None:
            message = "double algebra axioms failed"
        else:
            message = f"{first.name} fails at {first.witness.describe()}"
        if detail:
            message = f"{message}; {detail}"
        super().__init__(message)


class PreconditionError(AlgebraError):
    """An operation was called on an instance that lacks the required structure"""


class InstanceFormatError(ValueError):
    """Malformed instance or family data file"""


@dataclass(frozen=True)
class Witness:
    inputs: Tuple[str, ...]
    lhs: Tuple[str, ...] = ()
    rhs: Tuple[str, ...] = ()

    def describe(self) -> str:
        return "(" + ", ".join(self.inputs) + ")"

    def to_dict(self) -> Dict[str, Any]:
        return {'at': list(self.inputs), 'lhs': list(self.lhs), 'rhs': list(self.rhs)}


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: Optional[Witness] = None
    detail: str = ""
    required: bool = True

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {'name': self.name, 'passed': self.passed}
        if not self.required:
            out['required'] = False
        if self.detail:
            out['detail'] = self.detail
        if self.witness is not None:
            out['witness'] = self.witness.to_dict()
        return out


@dataclass
class Report:
    name: str
    checks: List[CheckResult] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """True when every required check passed"""
        return all(check.passed for check in self.checks if check.required)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def record(self, name: str, passed: bool, detail: str = "", required: bool = True) -> CheckResult:
        return self.add(CheckResult(name=name, passed=bool(passed), detail=detail, required=required))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for check in other.checks:
            name = f"{prefix}{check.name}" if prefix else check.name
            self.checks.append(CheckResult(name, check.passed, check.witness, check.detail, check.required))

    def get(self, name: str) -> Optional[CheckResult]:
        for check in self.checks:
            if check.name == name:
                return check
        return None

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if check.required and not check.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'passed': self.passed,
            'checks': [check.to_dict() for check in self.checks],
            'data': self.data,
        }


@dataclass
class AxiomReport:
    results: Dict[int, CheckResult]
    phi_form: Dict[int, bool]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results.values())

    @property
    def forms_agree(self) -> bool:
        """Both spellings of every axiom gave the same verdict"""
        return all(self.results[k].passed == self.phi_form[k] for k in self.results)

    def failed_axioms(self) -> List[int]:
        return sorted(k for k, result in self.results.items() if not result.passed)

    def first_failure(self) -> Optional[CheckResult]:
        for k in sorted(self.results):
            if not self.results[k].passed:
                return self.results[k]
        return None

    def to_report(self) -> Report:
        report = Report(name="axioms")
        for k in sorted(self.results):
            report.add(self.results[k])
        report.record("forms agree", self.forms_agree)
        return report
