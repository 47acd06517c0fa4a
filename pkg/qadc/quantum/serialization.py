# qadc/quantum/serialization.py

"""
JSON codec for states, channels, strategies, models and reports.

Complex matrices are nested row lists whose entries are `[re, im]` pairs; bare real numbers
are accepted on input. Reports are written as canonical JSON (sorted keys, two-space indent,
trailing newline) with every float rounded to 15 significant digits, so identical inputs give
identical bytes.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from collections.abc import Mapping
from typing import Any

import numpy as np

from qadc.core.errors import ModelFileError, RegisterMismatch
from qadc.quantum.channels import KrausChannel
from qadc.quantum.library import classical_channel
from qadc.quantum.linalg_core import DensityMatrix, LabeledOperator, Register
from qadc.quantum.model import ActionModel, Strategy

SIGNIFICANT_DIGITS = 15


def round15(value: Any) -> Any:
    """Recursively convert numpy scalars/arrays and round floats to 15 significant digits."""
    if isinstance(value, Mapping):
        return {str(k): round15(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [round15(v) for v in value]
    if isinstance(value, np.ndarray):
        return round15(value.tolist())
    if isinstance(value, bool | np.bool_):
        return bool(value)
    if isinstance(value, int | np.integer):
        return int(value)
    if isinstance(value, float | np.floating):
        x = float(value)
        if not math.isfinite(x):
            return x
        return float(f"{x:.{SIGNIFICANT_DIGITS}g}")
    return value


def canonical_json(document: Any) -> str:
    """Serialize with sorted keys, two-space indent and a trailing newline."""
    return json.dumps(round15(document), sort_keys=True, indent=2) + "\n"


def digest(document: Any) -> str:
    """SHA-256 hex digest of the canonical JSON form."""
    return hashlib.sha256(canonical_json(document).encode("utf-8")).hexdigest()


def encode_matrix(matrix: np.ndarray) -> list[list[list[float]]]:
    m = np.asarray(matrix, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _entry(value: Any, where: str) -> complex:
    if isinstance(value, bool):
        raise ModelFileError(f"{where}: boolean is not a matrix entry")
    if isinstance(value, int | float):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(x, int | float) and not isinstance(x, bool) for x in value)
    ):
        return complex(value[0], value[1])
    raise ModelFileError(f"{where}: expected a number or an [re, im] pair, got {value!r}")


def decode_matrix(rows: Any, where: str = "matrix") -> np.ndarray:
    """
    Parse a matrix given as a list of rows.

    Raises:
        ModelFileError: If the structure is not a rectangular list of entries.
    """
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ModelFileError(f"{where}: expected a nonempty list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ModelFileError(f"{where}: rows have different lengths")
    return np.array(
        [[_entry(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)],
        dtype=complex,
    )


def encode_register(register: Register) -> list[dict[str, Any]]:
    return [{"name": name, "dim": dim} for name, dim in register]


def decode_register(items: Any, where: str = "register") -> Register:
    if not isinstance(items, list) or not items:
        raise ModelFileError(f"{where}: expected a nonempty list of {{name, dim}} objects")
    pairs = []
    for i, item in enumerate(items):
        if not isinstance(item, dict) or "name" not in item or "dim" not in item:
            raise ModelFileError(f"{where}[{i}]: expected an object with 'name' and 'dim'")
        if not isinstance(item["dim"], int) or isinstance(item["dim"], bool):
            raise ModelFileError(f"{where}[{i}]: 'dim' must be an integer")
        pairs.append((str(item["name"]), item["dim"]))
    return Register(tuple(pairs))


def _require(document: Any, keys: tuple[str, ...], where: str) -> None:
    if not isinstance(document, dict):
        raise ModelFileError(f"{where}: expected a JSON object")
    missing = [k for k in keys if k not in document]
    if missing:
        raise ModelFileError(f"{where}: missing field(s) {', '.join(missing)}")


def state_to_dict(state: DensityMatrix | LabeledOperator) -> dict[str, Any]:
    return {"register": encode_register(state.register), "matrix": encode_matrix(state.matrix)}


def state_from_dict(document: Any, where: str = "state") -> DensityMatrix:
    _require(document, ("register", "matrix"), where)
    register = decode_register(document["register"], f"{where}.register")
    return DensityMatrix.from_matrix(register, decode_matrix(document["matrix"], f"{where}.matrix"))


def channel_to_dict(ch: KrausChannel) -> dict[str, Any]:
    return {
        "input": encode_register(ch.input_register),
        "output": encode_register(ch.output_register),
        "kraus": [encode_matrix(k) for k in ch.kraus],
    }


def channel_from_dict(document: Any, where: str = "channel", checked: bool = True) -> KrausChannel:
    """
    Parse a channel from Kraus operators or a classical `transition` table.

    Args:
        checked: Enforce trace preservation on construction; `validate` passes False to
            report residuals instead of failing on the first one.
    """
    _require(document, ("input", "output"), where)
    input_register = decode_register(document["input"], f"{where}.input")
    output_register = decode_register(document["output"], f"{where}.output")
    if "transition" in document:
        table = decode_matrix(document["transition"], f"{where}.transition")
        if np.any(np.abs(table.imag) > 0):
            raise ModelFileError(f"{where}.transition: entries must be real")
        return classical_channel(table.real, input_register, output_register)
    if "kraus" not in document:
        raise ModelFileError(f"{where}: needs either 'kraus' or 'transition'")
    ops = document["kraus"]
    if not isinstance(ops, list) or not ops:
        raise ModelFileError(f"{where}.kraus: expected a nonempty list of matrices")
    kraus = tuple(decode_matrix(k, f"{where}.kraus[{i}]") for i, k in enumerate(ops))
    return KrausChannel(input_register, output_register, kraus, checked=checked)


def strategy_to_dict(strat: Strategy) -> dict[str, Any]:
    return {
        "p_vu": strat.p_vu.tolist(),
        "action_states": [state_to_dict(s) for s in strat.action_states],
        "encoders": [channel_to_dict(e) for e in strat.encoders],
    }


def strategy_from_dict(document: Any, where: str = "strategy") -> Strategy:
    _require(document, ("p_vu", "action_states", "encoders"), where)
    table = decode_matrix(document["p_vu"], f"{where}.p_vu")
    if np.any(table.imag != 0):
        raise ModelFileError(f"{where}.p_vu: probabilities must be real")
    for key in ("action_states", "encoders"):
        if not isinstance(document[key], list):
            raise ModelFileError(f"{where}.{key}: expected a list")
    return Strategy(
        table.real,
        tuple(
            state_from_dict(s, f"{where}.action_states[{i}]")
            for i, s in enumerate(document["action_states"])
        ),
        tuple(
            channel_from_dict(e, f"{where}.encoders[{i}]")
            for i, e in enumerate(document["encoders"])
        ),
    )


def model_registers(model: ActionModel) -> dict[str, int]:
    return {
        "G": model.g_register.dim,
        "S": model.s_register.dim,
        "S0": model.s0_register.dim,
        "A": model.a_register.dim,
        "B": model.b_register.dim,
    }


def model_to_dict(model: ActionModel) -> dict[str, Any]:
    return {
        "name": model.name,
        "description": model.description,
        "registers": model_registers(model),
        "action_channel": channel_to_dict(model.action_channel),
        "comm_channel": channel_to_dict(model.comm_channel),
    }


def model_from_dict(document: Any, where: str = "model", checked: bool = True) -> ActionModel:
    """
    Parse a model document.

    The optional `registers` object ({name: dim}) is cross-checked against the channels.

    Raises:
        ModelFileError: On structural problems.
        RegisterMismatch: If declared dimensions disagree with the channels.
    """
    _require(document, ("action_channel", "comm_channel"), where)
    model = ActionModel(
        channel_from_dict(document["action_channel"], f"{where}.action_channel", checked),
        channel_from_dict(document["comm_channel"], f"{where}.comm_channel", checked),
        name=str(document.get("name", "model")),
        description=str(document.get("description", "")),
    )
    declared = document.get("registers")
    if declared is not None:
        if not isinstance(declared, dict):
            raise ModelFileError(f"{where}.registers: expected an object of name -> dim")
        actual = model_registers(model)
        for name, dim in declared.items():
            if name not in actual:
                raise ModelFileError(f"{where}.registers: unknown subsystem '{name}'")
            if dim != actual[name]:
                raise RegisterMismatch(
                    f"Declared dimension {dim} for '{name}' but channels use {actual[name]}"
                )
    return model


def load_json(path: str | os.PathLike[str]) -> Any:
    """
    Read a JSON file.

    Raises:
        ModelFileError: If the file is unreadable or not valid JSON (with line and column).
    """
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ModelFileError(f"Cannot read {path}: {e.strerror or e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFileError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from e


def document_kind(document: Any) -> str:
    """Classify a parsed document as model, strategy, state or channel."""
    if isinstance(document, dict):
        if "action_channel" in document or "comm_channel" in document:
            return "model"
        if "p_vu" in document:
            return "strategy"
        if "matrix" in document:
            return "state"
        if "kraus" in document or "transition" in document:
            return "channel"
    raise ModelFileError("Document is not a model, strategy, state or channel")


def load_model(path: str | os.PathLike[str]) -> ActionModel:
    return model_from_dict(load_json(path), where=str(path))


def load_strategy(path: str | os.PathLike[str]) -> Strategy:
    return strategy_from_dict(load_json(path), where=str(path))


def load_state(path: str | os.PathLike[str]) -> DensityMatrix:
    return state_from_dict(load_json(path), where=str(path))


def write_text(path: str | os.PathLike[str], text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise ModelFileError(f"Cannot write {path}: {e.strerror or e}") from e
