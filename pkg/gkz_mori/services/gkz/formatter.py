"""GKZ report formatter extending BaseFormatter.

Renders report dictionaries as deterministic JSON text. Rational numbers
become ``"num/den"`` strings and graded points become objects.
"""

from __future__ import annotations

import json
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

from gkz_mori.graded import GradedPoint
from gkz_mori.services.base import BaseFormatter
from gkz_mori.services.gkz.config import JSON_INDENT


def _plain(value: Any) -> Any:
    match value:
        case bool() | None:
            return value
        case Fraction():
            return f"{value.numerator}/{value.denominator}"
        case Enum():
            return value.value
        case int() | str():
            return value
        case Path():
            return str(value)
        case GradedPoint():
            return {"degree": _plain(value.degree), "point": _plain(value.point)}
        case dict():
            return {str(_plain(k)): _plain(v) for k, v in value.items()}
        case tuple() | list() | frozenset() | set():
            items = sorted(value) if isinstance(value, (set, frozenset)) else value
            return [_plain(v) for v in items]
    raise TypeError(f"cannot render {type(value).__name__} as JSON")


class GkzReportFormatter(BaseFormatter):
    """Renders computation reports as JSON.

    Extends :class:`~gkz_mori.services.base.BaseFormatter`; the output of
    :meth:`format` is byte-identical for equal reports.
    """

    def format(self, data: dict[str, Any], **kwargs: Any) -> str:
        """Format a report dictionary as JSON.

        Args:
            data: A report from :mod:`gkz_mori.services.gkz.jobs`.
            **kwargs: Optional ``indent`` overriding the configured indentation.

        Returns:
            The JSON document, without a trailing newline.
        """
        indent: int = kwargs.get("indent", JSON_INDENT)
        return json.dumps(_plain(data), indent=indent, ensure_ascii=False)
