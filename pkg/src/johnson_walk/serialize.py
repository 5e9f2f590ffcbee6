"""Deterministic JSON / CSV emission for reports.

Every float is rendered with 17 significant digits (enough to
round-trip an IEEE double), so identical runs produce byte-identical
output files that can be diffed as fixtures.
"""
from __future__ import annotations

import json


def format_float(x: float) -> str:
    """17-significant-digit decimal form of a float (round-trip safe)."""
    return format(float(x), ".17g")


def dumps_report(obj, indent: int = 2) -> str:
    """JSON text with fixed key order and 17-digit floats.

    json.dumps always formats floats with repr, so floats are swapped
    for string placeholders and substituted back after encoding.
    """
    slots: list[str] = []

    def render(node):
        if hasattr(node, "to_dict"):
            return render(node.to_dict())
        if isinstance(node, bool) or node is None:
            return node
        if isinstance(node, float):
            slots.append(format_float(node))
            return f"--f17-slot-{len(slots) - 1}--"
        if isinstance(node, dict):
            return {k: render(v) for k, v in node.items()}
        if isinstance(node, (list, tuple)):
            return [render(v) for v in node]
        return node

    text = json.dumps(render(obj), indent=indent)
    for i, rendered in enumerate(slots):
        text = text.replace(f'"--f17-slot-{i}--"', rendered)
    return text


def csv_cell(value) -> str:
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def csv_line(values) -> str:
    return ",".join(csv_cell(v) for v in values)
