"""JSON instance files: a double algebra as two structure-constant tensors and two units.

Scalars are stored as strings ("3/4", "-1", residues for F_p) so that files are
exact and diffable. ``dumps`` writes the canonical form; loading a canonical
file and saving it again reproduces it byte for byte.
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .algebra_core import ProductTable
from .double_core import DoubleAlgebra
from .exact_linalg import Field, LinearMap, Vector, format_vector
from .models import AlgebraError, InstanceFormatError

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1  # bump when the layout changes
DEFAULT_FIELD = "Q"

PathLike = Union[str, Path]


@dataclass
class InstanceFile:
    """A double algebra on disk; constants are c[i][j][k] flattened row-major"""
    descriptor: str
    dimension: int
    vertical: List[str]
    horizontal: List[str]
    e: List[str]
    i: List[str]
    label: str = ""
    basis: List[str] = field(default_factory=list)
    expected: Dict[str, Any] = field(default_factory=dict)
    version: int = FORMAT_VERSION

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.version != FORMAT_VERSION:
            raise InstanceFormatError(f"Unsupported format version {self.version}, expected {FORMAT_VERSION}")
        try:
            ground = Field.parse_descriptor(self.descriptor)
        except AlgebraError as e:
            raise InstanceFormatError(str(e)) from e
        n = self.dimension
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InstanceFormatError(f"Dimension must be a positive integer, got {n!r}")
        for key, expected_length in (("vertical", n ** 3), ("horizontal", n ** 3), ("e", n), ("i", n)):
            values = getattr(self, key)
            if not isinstance(values, list) or len(values) != expected_length:
                found = len(values) if isinstance(values, list) else type(values).__name__
                raise InstanceFormatError(f"'{key}' must hold {expected_length} scalars, found {found}")
            self._parse_all(ground, key, values)
        if self.basis and len(self.basis) != n:
            raise InstanceFormatError(f"'basis' has {len(self.basis)} labels for dimension {n}")

    @staticmethod
    def _parse_all(ground: Field, key: str, values: Sequence[Any]) -> List[Any]:
        parsed = []
        for k, value in enumerate(values):
            if not isinstance(value, str):
                raise InstanceFormatError(f"'{key}'[{k}] must be a string, got {value!r}")
            try:
                parsed.append(ground.parse(value))
            except AlgebraError as e:
                raise InstanceFormatError(f"'{key}'[{k}]: {str(e)}") from e
        return parsed

    def ground_field(self, override: Optional[Field] = None) -> Field:
        return override if override is not None else Field.parse_descriptor(self.descriptor)

    def tables(self, override: Optional[Field] = None) -> Tuple[ProductTable, ProductTable]:
        """The vertical and horizontal algebras, optionally reinterpreting the scalars in another field"""
        ground = self.ground_field(override)
        n = self.dimension
        try:
            vertical = ProductTable.from_dense(ground, n, self._parse_all(ground, "vertical", self.vertical),
                                               tuple(self._parse_all(ground, "e", self.e)), name="V")
            horizontal = ProductTable.from_dense(ground, n, self._parse_all(ground, "horizontal", self.horizontal),
                                                 tuple(self._parse_all(ground, "i", self.i)), name="H")
        except AlgebraError as e:
            raise InstanceFormatError(f"{self.label or 'instance'}: {str(e)}") from e
        return vertical, horizontal

    def double(self, override: Optional[Field] = None, check: bool = True) -> DoubleAlgebra:
        """The stored double algebra; with check=False the axioms are left to the caller"""
        vertical, horizontal = self.tables(override)
        return DoubleAlgebra.build(vertical, horizontal, self.label or "A", self.basis, check=check)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            'version': self.version,
            'label': self.label,
            'field': self.descriptor,
            'dimension': self.dimension,
            'basis': list(self.basis),
            'vertical': list(self.vertical),
            'horizontal': list(self.horizontal),
            'e': list(self.e),
            'i': list(self.i),
        }
        if self.expected:
            out['expected'] = self.expected
        return out

    @classmethod
    def from_dict(cls, data: Any) -> "InstanceFile":
        if not isinstance(data, dict):
            raise InstanceFormatError("Instance file must contain a JSON object")
        missing = [key for key in ('version', 'field', 'dimension', 'vertical', 'horizontal', 'e', 'i')
                   if key not in data]
        if missing:
            raise InstanceFormatError(f"Instance file is missing {', '.join(missing)}")
        return cls(
            descriptor=data['field'],
            dimension=data['dimension'],
            vertical=data['vertical'],
            horizontal=data['horizontal'],
            e=data['e'],
            i=data['i'],
            label=data.get('label', ""),
            basis=list(data.get('basis', [])),
            expected=dict(data.get('expected', {})),
            version=data['version'],
        )


def _flat(field_: Field, table: ProductTable) -> List[str]:
    return list(format_vector(field_, tuple(table.dense_constants())))


def from_double(D: DoubleAlgebra, expected: Optional[Dict[str, Any]] = None) -> InstanceFile:
    field_ = D.field
    return InstanceFile(
        descriptor=field_.descriptor,
        dimension=D.dimension,
        vertical=_flat(field_, D.vertical),
        horizontal=_flat(field_, D.horizontal),
        e=list(format_vector(field_, D.e)),
        i=list(format_vector(field_, D.i)),
        label=D.label,
        basis=list(D.basis_labels),
        expected=dict(expected or {}),
    )


def from_tables(vertical: ProductTable, horizontal: ProductTable, label: str = "",
                basis: Sequence[str] = ()) -> InstanceFile:
    """An instance file for a pair of tables that need not satisfy the axioms"""
    field_ = vertical.field
    return InstanceFile(
        descriptor=field_.descriptor,
        dimension=vertical.dimension,
        vertical=_flat(field_, vertical),
        horizontal=_flat(field_, horizontal),
        e=list(format_vector(field_, vertical.unit)),
        i=list(format_vector(field_, horizontal.unit)),
        label=label,
        basis=list(basis),
    )


def matrix_columns(field_: Field, matrix: LinearMap) -> List[List[str]]:
    return [list(format_vector(field_, column)) for column in matrix.columns]


def parse_matrix(field_: Field, columns: Sequence[Sequence[str]], n: int) -> LinearMap:
    if len(columns) != n or any(len(column) != n for column in columns):
        raise InstanceFormatError(f"Expected an {n}x{n} matrix given by columns")
    try:
        parsed = tuple(tuple(field_.parse(c) for c in column) for column in columns)
    except AlgebraError as e:
        raise InstanceFormatError(str(e)) from e
    return LinearMap(field_, n, n, parsed)


def parse_vector(field_: Field, values: Sequence[str]) -> Vector:
    try:
        return tuple(field_.parse(v) for v in values)
    except AlgebraError as e:
        raise InstanceFormatError(str(e)) from e


def dumps(instance: InstanceFile) -> str:
    return json.dumps(instance.to_dict(), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"Invalid JSON: {str(e)}") from e
    return InstanceFile.from_dict(data)


def load(path: PathLike) -> InstanceFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceFormatError(f"Cannot read {path}: {str(e)}") from e
    instance = loads(text)
    logger.info(f"Loaded {instance.label or path} of dimension {instance.dimension} over {instance.descriptor}")
    return instance


def save(instance: InstanceFile, path: PathLike) -> None:
    Path(path).write_text(dumps(instance), encoding="utf-8")
    logger.info(f"Wrote {instance.label or 'instance'} to {path}")


def load_json(path: PathLike) -> Any:
    """Plain JSON parameter files (group tables, groupoids, double categories, extension data)"""
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise InstanceFormatError(f"Cannot load {path}: {str(e)}") from e
