from pathlib import Path

import numpy as np
import pytest

import qadc.data
from qadc.core.errors import InvalidState, ModelFileError, RegisterMismatch
from qadc.quantum.library import identity_qubit_model
from qadc.quantum.serialization import (
    canonical_json,
    channel_from_dict,
    decode_matrix,
    digest,
    document_kind,
    load_json,
    load_model,
    load_state,
    load_strategy,
    model_from_dict,
    model_to_dict,
    round15,
    state_from_dict,
    write_text,
)

DATA = Path(qadc.data.__file__).parent


def test_round15_converts_numpy_values():
    """Test that numpy scalars and arrays become plain rounded Python values."""
    value = round15({"a": np.float64(0.1) + np.float64(0.2), "b": np.arange(2), "c": np.bool_(1)})
    assert value == {"a": 0.3, "b": [0, 1], "c": True}
    assert isinstance(value["b"][0], int)


def test_canonical_json_is_sorted_with_newline():
    """Test that keys are sorted and the text ends with one newline."""
    text = canonical_json({"b": 1, "a": [1.0]})
    assert text.index('"a"') < text.index('"b"')
    assert text.endswith("}\n")
    assert digest({"a": [1.0], "b": 1}) == digest({"b": 1, "a": [1.0]})


def test_decode_matrix_accepts_pairs_and_reals():
    """Test that entries may be real numbers or [re, im] pairs."""
    m = decode_matrix([[1, [0.0, 2.0]], [0.5, 0]])
    assert m[0, 1] == 2j
    assert m[1, 0] == 0.5


@pytest.mark.parametrize(
    "rows",
    [[], [[1, 2], [3]], [[True]], [["x"]], "not a list", [[[1.0, 2.0, 3.0]]]],
)
def test_decode_matrix_rejects_malformed(rows):
    """Test that malformed matrices raise ModelFileError."""
    with pytest.raises(ModelFileError):
        decode_matrix(rows)


def test_state_from_dict_validates_density():
    """Test that a parsed matrix with trace two is rejected as a state."""
    document = {"register": [{"name": "A", "dim": 2}], "matrix": [[1, 0], [0, 1]]}
    with pytest.raises(InvalidState):
        state_from_dict(document)


def test_state_from_dict_missing_field():
    """Test that a state without a matrix names the missing field."""
    with pytest.raises(ModelFileError, match="matrix"):
        state_from_dict({"register": [{"name": "A", "dim": 2}]})


def test_channel_needs_kraus_or_transition():
    """Test that a channel document without operators is refused."""
    document = {"input": [{"name": "A", "dim": 2}], "output": [{"name": "B", "dim": 2}]}
    with pytest.raises(ModelFileError, match="kraus"):
        channel_from_dict(document)


def test_transition_form_builds_classical_channel():
    """Test that a transition table maps basis inputs to the given distribution."""
    document = {
        "input": [{"name": "X", "dim": 2}],
        "output": [{"name": "Y", "dim": 2}],
        "transition": [[0.9, 0.2], [0.1, 0.8]],
    }
    ch = channel_from_dict(document)
    total = sum(k.conj().T @ k for k in ch.kraus)
    np.testing.assert_allclose(total, np.eye(2), atol=1e-12)


def test_model_dict_roundtrip_keeps_registers():
    """Test that the serialized library model parses back with the same dimensions."""
    document = model_to_dict(identity_qubit_model())
    model = model_from_dict(document)
    assert model.b_register.dim == 2
    assert document["registers"] == {"G": 2, "S": 2, "S0": 2, "A": 2, "B": 2}


def test_model_declared_registers_must_match():
    """Test that a wrong declared dimension raises RegisterMismatch."""
    document = model_to_dict(identity_qubit_model())
    document["registers"]["B"] = 3
    with pytest.raises(RegisterMismatch):
        model_from_dict(document)


def test_model_declared_registers_unknown_name():
    """Test that an undeclared subsystem name raises ModelFileError."""
    document = model_to_dict(identity_qubit_model())
    document["registers"]["Z"] = 2
    with pytest.raises(ModelFileError):
        model_from_dict(document)


def test_load_json_reports_position(tmp_path):
    """Test that invalid JSON reports its line and column."""
    path = tmp_path / "broken.json"
    path.write_text('{\n  "a": ,\n}\n', encoding="utf-8")
    with pytest.raises(ModelFileError, match="line 2"):
        load_json(path)


def test_load_json_missing_file(tmp_path):
    """Test that an unreadable file raises ModelFileError."""
    with pytest.raises(ModelFileError, match="Cannot read"):
        load_json(tmp_path / "absent.json")


def test_document_kind_classifies_data_files():
    """Test that the shipped data files are classified by their fields."""
    assert document_kind(load_json(DATA / "identity_qubit.json")) == "model"
    assert document_kind(load_json(DATA / "identity_qubit_strategy.json")) == "strategy"
    assert document_kind(load_json(DATA / "bell.json")) == "state"
    with pytest.raises(ModelFileError):
        document_kind([1, 2])


def test_shipped_files_load():
    """Test that the shipped model, strategy and state files parse."""
    model = load_model(DATA / "classical_weissman.json")
    strat = load_strategy(DATA / "classical_weissman_strategy.json")
    bell = load_state(DATA / "bell.json")
    assert model.name == "classical_weissman"
    assert strat.p_vu.shape == (2, 2)
    assert bell.register.names == ("A", "B")


def test_write_text_roundtrip(tmp_path):
    """Test that written canonical JSON reads back to the same document."""
    path = tmp_path / "report.json"
    write_text(path, canonical_json({"x": 1.5}))
    assert load_json(path) == {"x": 1.5}
