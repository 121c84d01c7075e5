"""
JSON files for products, states, ensembles and reports.

Complex numbers are written as [re, im] pairs; indices are 0-based. Loading
validates every record and names the failing field in the error.
"""

import json
import logging
from dataclasses import asdict, is_dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np

from ..__version__ import __version__
from ..factorizers.base import Certificate, FactorizationReport
from ..mixed.base import Ensemble, EnsembleItem
from ..mixed.witness import WitnessResult
from ..products.base import GeneralProduct, StateVector
from .errors import FileAccessError, InputError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def to_jsonable(value: Any) -> Any:
    """Recursively convert numpy values, complex numbers and enums to JSON types"""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, StateVector):
        return state_to_dict(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()] if np.iscomplexobj(value) else value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if is_dataclass(value) and not isinstance(value, type):
        return to_jsonable(asdict(value))
    return value


def _complex_pair(raw: Any, where: str) -> complex:
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw)
    ):
        raise InputError(f"expected a [re, im] pair of numbers, got {raw!r}", field=where)
    value = complex(float(raw[0]), float(raw[1]))
    if not np.isfinite(value):
        raise InputError("amplitude must be finite", field=where)
    return value


def _require(record: Dict, key: str, kind, where: str):
    if not isinstance(record, dict):
        raise InputError(f"expected an object, got {type(record).__name__}", field=where or None)
    if key not in record:
        raise InputError("missing field", field=f"{where}.{key}" if where else key)
    value = record[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise InputError(f"expected an integer, got {value!r}", field=f"{where}.{key}" if where else key)
    if kind is list and not isinstance(value, list):
        raise InputError(f"expected a list, got {value!r}", field=f"{where}.{key}" if where else key)
    return value


# States

def state_to_dict(state: StateVector) -> Dict[str, Any]:
    record = {
        "dim": state.dim,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
        "basis_labels": state.basis_labels,
    }
    if state.label is not None:
        record["label"] = state.label
    return record


def state_from_dict(record: Dict, where: str = "") -> StateVector:
    dim = _require(record, "dim", int, where)
    raw = _require(record, "amplitudes", list, where)
    prefix = f"{where}." if where else ""
    if len(raw) != dim:
        raise InputError(f"has {len(raw)} entries, dim is {dim}", field=f"{prefix}amplitudes")
    amplitudes = np.array(
        [_complex_pair(a, f"{prefix}amplitudes[{i}]") for i, a in enumerate(raw)],
        dtype=complex,
    )
    labels = record.get("basis_labels")
    basis_start = int(labels[0]) if isinstance(labels, list) and labels else 0
    return StateVector(amplitudes, label=record.get("label"), basis_start=basis_start)


# Products

def product_to_dict(p: GeneralProduct) -> Dict[str, Any]:
    record = {
        "arity": p.arity,
        "input_dims": list(p.input_dims),
        "output_dim": p.output_dim,
        "entries": [
            {"out": k, "in": list(idx), "re": c.real, "im": c.imag}
            for k, idx, c in p.entries
        ],
    }
    if p.name is not None:
        record["name"] = p.name
    return record


def product_from_dict(record: Dict) -> GeneralProduct:
    arity = _require(record, "arity", int, "")
    input_dims = _require(record, "input_dims", list, "")
    output_dim = _require(record, "output_dim", int, "")
    raw_entries = _require(record, "entries", list, "")
    if not all(isinstance(d, int) and not isinstance(d, bool) for d in input_dims):
        raise InputError(f"expected integers, got {input_dims!r}", field="input_dims")

    entries = []
    for position, raw in enumerate(raw_entries):
        where = f"entries[{position}]"
        out = _require(raw, "out", int, where)
        idx = _require(raw, "in", list, where)
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in idx):
            raise InputError(f"expected integer indices, got {idx!r}", field=f"{where}.in")
        parts = []
        for key in ("re", "im"):
            value = raw.get(key, 0.0)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InputError(f"expected a number, got {value!r}", field=f"{where}.{key}")
            parts.append(float(value))
        entries.append((out, tuple(idx), complex(*parts)))

    return GeneralProduct.from_entries(arity, input_dims, output_dim, entries, name=record.get("name"))


# Ensembles

def ensemble_from_dict(record: Dict) -> Ensemble:
    raw_items = _require(record, "items", list, "")
    items = []
    for position, raw in enumerate(raw_items):
        where = f"items[{position}]"
        weight = _require(raw, "p", float, where)
        if isinstance(weight, bool) or not isinstance(weight, (int, float)):
            raise InputError(f"expected a number, got {weight!r}", field=f"{where}.p")
        raw_factors = _require(raw, "factors", list, where)
        factors = tuple(
            state_from_dict(f, f"{where}.factors[{slot}]") for slot, f in enumerate(raw_factors)
        )
        items.append(EnsembleItem(float(weight), factors))
    return Ensemble(tuple(items))


# Reports

def certificate_to_dict(certificate: Certificate) -> Dict[str, Any]:
    return {
        "name": certificate.name,
        "outcome": certificate.outcome.value,
        "evidence": to_jsonable(certificate.evidence),
        "exact_residual": certificate.exact_residual,
        "factors": [state_to_dict(f) for f in certificate.factors] if certificate.factors else None,
    }


def report_to_dict(report: FactorizationReport) -> Dict[str, Any]:
    return {
        "tool_version": __version__,
        "product": report.product,
        "verdict": report.verdict.value,
        "relative_residual": report.relative_residual,
        "factors": [state_to_dict(f) for f in report.factors],
        "certificates": [certificate_to_dict(c) for c in report.certificates],
        "starts_used": report.starts_used,
        "sweeps_used": report.sweeps_used,
        "best_start": report.best_start,
        "residual_history": list(report.residual_history),
        "config": to_jsonable(report.config),
    }


def witness_to_dict(result: WitnessResult) -> Dict[str, Any]:
    return {
        "tool_version": __version__,
        "outcome": result.outcome.value,
        "conclusive": result.conclusive,
        "dims": list(result.dims),
        "range_residual": result.range_residual,
        "min_preimage_eigenvalue": result.min_preimage_eigenvalue,
        "min_pt_eigenvalue": result.min_pt_eigenvalue,
        "reason": result.reason,
    }


# Files

def read_json(path: PathLike) -> Any:
    """
    Load a JSON document.

    Raises:
        InputError: unreadable file or invalid JSON (with line and column)
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FileAccessError(f"cannot read: {e.strerror}", field=str(path)) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}", field=str(path)) from e


def write_json(data: Any, path: PathLike) -> Path:
    """Write with sorted keys and two-space indent so equal inputs give equal bytes"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(to_jsonable(data), sort_keys=True, indent=2, allow_nan=False)
    path.write_text(text + "\n", encoding="utf-8")
    logger.info(f"Saved {path}")
    return path


def load_product(path: PathLike) -> GeneralProduct:
    return product_from_dict(read_json(path))


def load_state(path: PathLike) -> StateVector:
    return state_from_dict(read_json(path))


def load_ensemble(path: PathLike) -> Ensemble:
    return ensemble_from_dict(read_json(path))


def save_product(p: GeneralProduct, path: PathLike) -> Path:
    return write_json(product_to_dict(p), path)


def reports_to_list(reports: Dict[str, FactorizationReport]) -> List[Dict[str, Any]]:
    return [dict(report_to_dict(r), cut=cut) for cut, r in reports.items()]
