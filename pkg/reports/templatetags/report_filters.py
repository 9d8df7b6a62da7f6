"""
Custom template filters for the report tables.
"""
from math import prod

from django import template

register = template.Library()


@register.filter(name='count')
def count(value, noun=""):
    """
    An instance count with thousands separators and the noun agreeing with it:
    16275|count:"instance" -> 16,275 instances.
    """
    try:
        value = int(value)
    except (ValueError, TypeError):
        return value
    if not noun:
        return f"{value:,}"
    return f"{value:,} {noun}" + ("" if value == 1 else "s")


@register.filter(name='group_order')
def group_order(row):
    """Order of a homology group; blank for infinite or trivial groups."""
    try:
        rank, torsion = int(row["rank"]), row["torsion"]
    except (KeyError, TypeError, ValueError):
        return ""
    if rank or not torsion:
        return ""
    return f"order {prod(int(d) for d in torsion):,}"


@register.filter(name='abelian_group')
def abelian_group(row):
    """
    A homology row {rank, torsion} in the form Z^2 + Z/2 + Z/4; 0 when trivial.
    """
    try:
        rank, torsion = int(row["rank"]), row["torsion"]
    except (KeyError, TypeError, ValueError):
        return row
    parts = []
    if rank == 1:
        parts.append("Z")
    elif rank > 1:
        parts.append(f"Z^{rank}")
    parts.extend(f"Z/{d}" for d in torsion)
    return " + ".join(parts) if parts else "0"


@register.filter(name='verdict')
def verdict(passed):
    return "ok" if passed else "FAIL"
