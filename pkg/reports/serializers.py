"""
Reports serializers

The JSON document written to standard output by every command. The field
order here is the key order of the output.
"""
import hashlib
import json
from typing import Any, Dict, List, Optional

from django.conf import settings
from rest_framework import serializers


class HomologyRowSerializer(serializers.Serializer):
    degree = serializers.IntegerField(min_value=0)
    rank = serializers.IntegerField(min_value=0)
    torsion = serializers.ListField(child=serializers.IntegerField(min_value=2))


class CounterexampleSerializer(serializers.Serializer):
    """The failing instance and the two sides that should have agreed."""

    input = serializers.CharField()
    left = serializers.CharField()
    right = serializers.CharField()


class VerdictSerializer(serializers.Serializer):
    check = serializers.CharField()
    passed = serializers.BooleanField()
    instances = serializers.IntegerField(min_value=0)
    counterexample = CounterexampleSerializer(allow_null=True)
    details = serializers.DictField()

    def validate(self, attrs: Dict[str, Any]) -> Dict[str, Any]:
        if not attrs["passed"] and attrs.get("counterexample") is None:
            raise serializers.ValidationError("a failed verdict carries a counterexample")
        return attrs


class ReportSerializer(serializers.Serializer):
    schema_version = serializers.CharField()
    command = serializers.CharField()
    arguments = serializers.DictField()
    input_digest = serializers.CharField(allow_null=True)
    homology = HomologyRowSerializer(many=True, required=False)
    verdicts = VerdictSerializer(many=True, required=False)
    passed = serializers.BooleanField(allow_null=True)
    timing = serializers.DictField(required=False)


def input_digest(document: Any) -> Optional[str]:
    """sha256 of the canonical JSON form of an input document."""
    if document is None:
        return None
    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def build_report(
    command: str,
    arguments: Dict[str, Any],
    document: Any = None,
    homology: Optional[List[Dict[str, Any]]] = None,
    verdicts: Optional[List[Dict[str, Any]]] = None,
    timing: Optional[Dict[str, float]] = None,
) -> Dict[str, Any]:
    """Validate and order a report; ``passed`` is None for pure computations."""
    payload: Dict[str, Any] = {
        "schema_version": settings.CYCLOTRACE_REPORT_SCHEMA_VERSION,
        "command": command,
        "arguments": arguments,
        "input_digest": input_digest(document),
        "passed": None if verdicts is None else all(v["passed"] for v in verdicts),
    }
    if homology is not None:
        payload["homology"] = homology
    if verdicts is not None:
        payload["verdicts"] = verdicts
    if timing is not None:
        payload["timing"] = timing
    serializer = ReportSerializer(data=payload)
    serializer.is_valid(raise_exception=True)
    return dict(ReportSerializer(payload).data)


def render_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)
