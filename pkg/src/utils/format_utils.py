"""
Rendering helpers: exact rationals, JSON payloads and pandas tables.

Rationals are always written as strings ("a/b", or "a" when integral) so
JSON output parses back to the same values.
"""

import json
from fractions import Fraction
from typing import Any, Dict, Mapping, Tuple

import pandas as pd
import sympy as sp

from ..core.chern import Partition, chern_label
from ..core.cobordism import CobordismClass
from ..core.dt import QSeries
from ..core.series import MultiSeries, VariableTable


def rational_str(value) -> str:
    return str(Fraction(value))


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def series_to_json(series: MultiSeries) -> Dict[str, Any]:
    """Exponent-vector form of a series; ``series_from_json`` reads it back."""
    table = series.table
    return {
        "variables": list(table.names),
        "weights": list(table.weights),
        "truncation": [name for name in table.names if table.is_truncation(name)],
        "trunc": series.trunc,
        "terms": [{"exponents": list(e), "coefficient": rational_str(c)} for e, c in series.items()],
        "text": str(series),
    }


def series_from_json(payload: Mapping[str, Any]) -> MultiSeries:
    table = VariableTable.build(payload["variables"], payload["weights"], payload["truncation"])
    terms = {tuple(entry["exponents"]): parse_rational(entry["coefficient"]) for entry in payload["terms"]}
    return MultiSeries(table, terms, payload["trunc"])


def qseries_to_json(series: QSeries) -> Dict[str, Any]:
    return {
        "order": series.order,
        "coefficients": [rational_str(c) for c in series.coefficients()],
        "text": str(series),
    }


def cobordism_to_json(cls: CobordismClass) -> Dict[str, Any]:
    return {
        "dim": cls.dim,
        "coefficients": [{"partition": list(lam), "coefficient": rational_str(c)}
                         for lam, c in cls.coefficients.items()],
        "text": str(cls),
    }


def cobordism_from_json(payload: Mapping[str, Any]) -> CobordismClass:
    return CobordismClass(payload["dim"], {tuple(entry["partition"]): parse_rational(entry["coefficient"])
                                           for entry in payload["coefficients"]})


def chern_numbers_to_json(numbers: Mapping[Partition, Fraction]) -> Dict[str, str]:
    return {chern_label(lam): rational_str(c) for lam, c in numbers.items()}


def pretty_polynomial(poly: MultiSeries) -> str:
    """sympy rendering of a coefficient polynomial, e.g. ``p1**2 - p2``."""
    return sp.sstr(sp.expand(poly.to_sympy()))


def coefficient_frame(coeffs: Mapping[Tuple[int, int], MultiSeries], symbol: str = "a") -> pd.DataFrame:
    """One row per (i, j) coefficient with its polynomial in the parameters."""
    rows = [{"coefficient": f"{symbol}_{i},{j}", "i": i, "j": j, "value": pretty_polynomial(c)}
            for (i, j), c in coeffs.items()]
    return pd.DataFrame(rows, columns=["coefficient", "i", "j", "value"])


def coefficient_json(coeffs: Mapping[Tuple[int, int], MultiSeries]) -> list:
    return [{"i": i, "j": j, "value": series_to_json(c)} for (i, j), c in coeffs.items()]


def chern_numbers_frame(table: Mapping[str, Mapping[Partition, Fraction]]) -> pd.DataFrame:
    """Rows: space expressions; columns: Chern-number labels."""
    rows = []
    for name, numbers in table.items():
        row = {"space": name}
        row.update({chern_label(lam): rational_str(c) for lam, c in numbers.items()})
        rows.append(row)
    return pd.DataFrame(rows).set_index("space")


def dump_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def frame_to_text(frame: pd.DataFrame) -> str:
    if frame.empty:
        return "(empty)"
    return frame.to_string()
