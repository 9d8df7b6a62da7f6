"""
Reports services

Glue between the management commands and the library: loading inputs,
computing homology tables, and translating library errors into command
exit codes.
"""
import json
import logging
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional, Tuple

from django.core.management.base import CommandError
from rest_framework.exceptions import ValidationError

from abelian.services import AbGroup, ChainComplex, homology_table
from barcons.serializers import flatten_errors, load_monoid, load_ring
from barcons.services import bar, cyclic_bar
from cyclotrace.errors import CapacityError, ContractViolation, TruncationError
from operad.services import e_sigma
from simplicial.services import chain_complex
from tracehh.hochschild import HochschildComplex

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_CAPACITY = 3

OBJECTS = ("bar", "cyclicbar", "hochschild", "be-operad")


@contextmanager
def command_errors() -> Iterator[None]:
    """Re-raise library errors as CommandError with the matching exit code."""
    try:
        yield
    except ValidationError as exc:
        lines = flatten_errors(exc.detail)
        logger.error("input rejected: %s", "; ".join(lines))
        raise CommandError("invalid input:\n  " + "\n  ".join(lines), returncode=EXIT_INPUT)
    except (CapacityError, TruncationError) as exc:
        guard = getattr(exc, "guard", "truncation")
        logger.error("guard %s fired: %s", guard, exc)
        raise CommandError(f"capacity guard {guard}: {exc}", returncode=EXIT_CAPACITY)
    except ContractViolation as exc:
        logger.error("refused: %s", exc)
        raise CommandError(str(exc), returncode=EXIT_INPUT)
    except (OSError, json.JSONDecodeError) as exc:
        raise CommandError(f"cannot read input: {exc}", returncode=EXIT_INPUT)


def homology_rows(table: List[AbGroup]) -> List[Dict[str, Any]]:
    return [
        {"degree": degree, "rank": group.rank, "torsion": list(group.torsion)}
        for degree, group in enumerate(table)
    ]


def complex_for(
    kind: str, source: Optional[str], degree: int, moore: bool = False, arity: int = 2
) -> Tuple[ChainComplex, Any]:
    """
    The chain complex requested by ``homology`` and the input document it
    was built from (None for the operad, which takes no input).
    """
    if kind == "be-operad":
        if arity < 0:
            raise ContractViolation(f"negative arity {arity}")
        return chain_complex(e_sigma(arity), degree, normalized=not moore), None
    if kind == "hochschild":
        ring, document = load_ring(source)
        return HochschildComplex(ring).chain_complex(degree), document
    monoid, document = load_monoid(source)
    X = bar(monoid) if kind == "bar" else cyclic_bar(monoid)
    return chain_complex(X, degree, normalized=not moore), document


def compute_homology(
    kind: str, source: Optional[str], degree: int, moore: bool = False, arity: int = 2
) -> Tuple[List[AbGroup], Any, str]:
    if kind not in OBJECTS:
        raise ContractViolation(f"unknown object {kind!r}; expected one of {', '.join(OBJECTS)}")
    if degree < 0:
        raise ContractViolation(f"negative degree {degree}")
    complex_, document = complex_for(kind, source, degree, moore, arity)
    table = homology_table(complex_)
    logger.info("%s: homology through degree %d computed", complex_.name, degree)
    return table, document, complex_.name
