"""
Barcons serializers

Validation of monoid and ring input documents. A document names its
elements and gives square tables of element indices:

    {"elements": ["0", "1"], "mul": [[0, 0], [0, 1]],
     "add": [[0, 1], [1, 0]], "zero": 0, "one": 1, "commutative": true}

Only ``elements`` and ``mul`` are required; ``add`` makes it a ring.
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from rest_framework import serializers

from barcons import builtins
from barcons.services import FiniteMonoid, FiniteRing
from cyclotrace.errors import AxiomViolation

Structure = Union[FiniteMonoid, FiniteRing]

def table_field(**kwargs) -> serializers.ListField:
    """A square table of element indices."""
    return serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0)),
        **kwargs,
    )


class StructureDocumentSerializer(serializers.Serializer):
    """
    Schema of a monoid or ring input file.
    """

    name = serializers.CharField(required=False, allow_blank=True, default="")
    elements = serializers.ListField(child=serializers.CharField(), min_length=1)
    mul = table_field()
    add = table_field(required=False)
    zero = serializers.IntegerField(required=False, min_value=0)
    one = serializers.IntegerField(required=False, min_value=0)
    commutative = serializers.BooleanField(required=False)

    def validate_elements(self, value: List[str]) -> List[str]:
        seen = {}
        for position, name in enumerate(value):
            if name in seen:
                raise serializers.ValidationError(
                    f"element {name!r} repeats position {seen[name]}"
                )
            seen[name] = position
        return value

    @staticmethod
    def _table_errors(table: List[List[int]], size: int) -> Union[Dict[int, Any], List[str]]:
        if len(table) != size:
            return [f"expected {size} rows, got {len(table)}"]
        errors: Dict[int, Any] = {}
        for i, row in enumerate(table):
            if len(row) != size:
                errors[i] = [f"expected {size} entries, got {len(row)}"]
                continue
            bad = {
                j: [f"{value} is not an element index below {size}"]
                for j, value in enumerate(row)
                if value >= size
            }
            if bad:
                errors[i] = bad
        return errors

    def validate(self, attrs: Dict[str, Any]) -> Dict[str, Any]:
        size = len(attrs["elements"])
        errors: Dict[str, Any] = {}
        for field in ("mul", "add"):
            if field in attrs:
                table_errors = self._table_errors(attrs[field], size)
                if table_errors:
                    errors[field] = table_errors
        for field in ("zero", "one"):
            if field in attrs and attrs[field] >= size:
                errors[field] = [f"{attrs[field]} is not an element index below {size}"]
        if errors:
            raise serializers.ValidationError(errors)
        return attrs


def flatten_errors(detail: Any, prefix: str = "") -> List[str]:
    """
    Turn nested DRF error details into ``field[2][0]: message`` lines.
    """
    if isinstance(detail, dict):
        lines = []
        for key, value in detail.items():
            if isinstance(key, int) or (isinstance(key, str) and key.isdigit()):
                path = f"{prefix}[{key}]"
            elif key == "non_field_errors":
                path = prefix
            else:
                path = f"{prefix}.{key}" if prefix else str(key)
            lines.extend(flatten_errors(value, path))
        return lines
    if isinstance(detail, list):
        if all(not isinstance(item, (dict, list)) for item in detail):
            return [f"{prefix or 'document'}: {item}" for item in detail]
        lines = []
        for index, item in enumerate(detail):
            if item:
                lines.extend(flatten_errors(item, f"{prefix}[{index}]"))
        return lines
    return [f"{prefix or 'document'}: {detail}"]


def validate_document(document: Any) -> Dict[str, Any]:
    serializer = StructureDocumentSerializer(data=document)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data


def _check_declared_commutativity(data: Dict[str, Any], monoid: FiniteMonoid) -> None:
    if data.get("commutative"):
        violation = monoid.commutativity_violation()
        if violation is not None:
            raise AxiomViolation("commutativity", violation)


def build_monoid(document: Any) -> FiniteMonoid:
    """Monoid view of a document: its ``mul`` table."""
    data = validate_document(document)
    monoid = FiniteMonoid(
        data["elements"], data["mul"], unit=data.get("one"), name=data.get("name") or "input"
    )
    _check_declared_commutativity(data, monoid)
    return monoid


def build_ring(document: Any) -> FiniteRing:
    data = validate_document(document)
    if "add" not in data:
        raise serializers.ValidationError({"add": ["an addition table is required for a ring"]})
    ring = FiniteRing(
        data["elements"], data["add"], data["mul"],
        zero=data.get("zero"), one=data.get("one"), name=data.get("name") or "input",
    )
    _check_declared_commutativity(data, ring.multiplicative)
    return ring


def read_document(path: Union[str, Path]) -> Any:
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def load_monoid(source: str) -> Tuple[FiniteMonoid, Dict[str, Any]]:
    """
    A builtin name or a path to a JSON document; returns the monoid and the
    document it came from.
    """
    if source in builtins.MONOIDS:
        return builtins.monoid(source), {"builtin": source}
    document = read_document(source)
    return build_monoid(document), document


def load_ring(source: str) -> Tuple[FiniteRing, Dict[str, Any]]:
    if source in builtins.RINGS:
        return builtins.ring(source), {"builtin": source}
    document = read_document(source)
    return build_ring(document), document
