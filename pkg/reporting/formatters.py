import dataclasses
import json
import typing
from enum import Enum
from typing import Any, Dict, Sequence

import numpy as np
import pandas as pd

from groups.group_model import CentralClass, CentralLabel, GroupSpec
from cohomology.labels import ClassLabel, CohomologyClass, make_class
from cohomology.point_cohomology import DiscretenessReport
from cohomology.sequence import SequenceReport, TwistBijection, TwistPair
from cohomology.stabilizer import Pi0SmokeReport, RealFormDescriptor
from curves.real_curve import BoundaryCircle, QuotientData, RealCurve
from curves.topological_types import TopologicalType
from census.component_census import CensusResult
from reporting.tables import Discrepancy, Pi0Entry, PointRow, TableReport
from utils.exceptions import UsageError

"""
Output emitters for the CLI. JSON payloads carry a `type` tag per dataclass so that
`decode(encode(x)) == x` for every result type; table and TSV output go through pandas.
"""

_REGISTRY: Dict[str, type] = {}


def register(*types):
    for cls in types:
        _REGISTRY[cls.__name__] = cls


# --- Encoding ---

def encode(value) -> Any:
    if isinstance(value, CentralClass):
        scalar = value.scalar
        return {
            "type": "CentralClass",
            "label": value.label.value,
            "scalar": [scalar.real, scalar.imag],
            "size": int(value.representative.shape[0]),
        }
    if isinstance(value, CohomologyClass):
        return {
            "type": "CohomologyClass",
            "group": encode(value.group),
            "c": encode(value.c),
            "label": encode(value.label),
            "token": value.label.token,
        }
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        payload = {"type": type(value).__name__}
        for f in dataclasses.fields(value):
            payload[f.name] = encode(getattr(value, f.name))
        return payload
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, np.ndarray):
        return {"type": "ndarray", "real": value.real.tolist(), "imag": value.imag.tolist()}
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


# --- Decoding ---

def _coerce(value, hint):
    if value is None:
        return None
    if isinstance(value, dict) and "type" in value:
        return decode(value)

    origin = typing.get_origin(hint)
    args = typing.get_args(hint)
    if origin is typing.Union:
        options = [arg for arg in args if arg is not type(None)]
        return _coerce(value, options[0]) if options else value
    if origin is tuple:
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(_coerce(v, args[0]) for v in value)
        return tuple(_coerce(v, arg) for v, arg in zip(value, args))
    if origin is list:
        inner = args[0] if args else Any
        return [_coerce(v, inner) for v in value]
    if origin is dict:
        inner = args[1] if len(args) == 2 else Any
        return {k: _coerce(v, inner) for k, v in value.items()}
    if isinstance(hint, type) and issubclass(hint, Enum):
        return hint(value)
    return value


def decode(payload) -> Any:
    if isinstance(payload, list):
        return [decode(v) for v in payload]
    if not isinstance(payload, dict) or "type" not in payload:
        return payload

    kind = payload["type"]
    if kind == "CentralClass":
        real, imag = payload["scalar"]
        representative = complex(real, imag) * np.eye(payload["size"], dtype=complex)
        return CentralClass(CentralLabel(payload["label"]), representative)
    if kind == "ndarray":
        return np.array(payload["real"]) + 1j * np.array(payload["imag"])
    if kind == "CohomologyClass":
        group = decode(payload["group"])
        return make_class(group, decode(payload["c"]), decode(payload["label"]))

    cls = _REGISTRY.get(kind)
    if cls is None:
        raise UsageError(f"Unknown payload type '{kind}'.")
    hints = typing.get_type_hints(cls)
    kwargs = {
        f.name: _coerce(payload[f.name], hints.get(f.name, Any))
        for f in dataclasses.fields(cls) if f.name in payload
    }
    return cls(**kwargs)


def to_json(value) -> str:
    return json.dumps(encode(value), indent=2, sort_keys=True)


def from_json(text: str) -> Any:
    return decode(json.loads(text))


# --- Tabular Output ---

def to_frame(records: Sequence[Dict[str, Any]]) -> pd.DataFrame:
    return pd.DataFrame(list(records))


def render(value, records: Sequence[Dict[str, Any]], fmt: str) -> str:
    """JSON from the structured value; table / TSV from the flat records."""
    if fmt == "json":
        return to_json(value)
    frame = to_frame(records)
    if frame.empty:
        return "(none)" if fmt == "table" else ""
    if fmt == "tsv":
        return frame.to_csv(sep="\t", index=False).rstrip("\n")
    if fmt == "table":
        return frame.to_string(index=False)
    raise UsageError(f"Unknown output format '{fmt}'.")


def join_tokens(tokens) -> str:
    if tokens is None:
        return "n/a"
    return "{" + ", ".join(tokens) + "}" if tokens else "{}"


register(
    GroupSpec, ClassLabel, DiscretenessReport, SequenceReport, TwistBijection, TwistPair, Pi0SmokeReport,
    RealFormDescriptor, BoundaryCircle, QuotientData, RealCurve, TopologicalType, CensusResult,
    Discrepancy, Pi0Entry, PointRow, TableReport,
)
