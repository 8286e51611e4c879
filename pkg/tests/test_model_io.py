"""Binary model container: round-trips and corruption handling."""

import json

import numpy as np
import pytest

from hextm.machine import ClauseBank, TMConfig
from hextm.model_io import (MODEL_MAGIC, ModelFormatError, load_model,
                            save_model)


@pytest.fixture()
def bank(rng):
    cfg = TMConfig(n_clauses=20, T=16, s=5.0, n_states=63, epochs=1,
                   weighted=True, max_weight=9)
    states = rng.integers(1, 127, size=(20, 144), dtype=np.uint16)
    weights = rng.integers(1, 10, size=20, dtype=np.int32)
    return ClauseBank(cfg, 72, states, weights)


def header_of(blob: bytes) -> tuple[dict, int]:
    body = blob[len(MODEL_MAGIC):]
    end = body.index(b"\n")
    return json.loads(body[:end]), len(MODEL_MAGIC) + end + 1


class TestRoundTrip:
    def test_exact_reconstruction(self, bank, tmp_path):
        path = tmp_path / "m.tm"
        save_model(bank, path)
        loaded = load_model(path)
        assert loaded.config == bank.config
        assert loaded.n_features == bank.n_features
        assert np.array_equal(loaded.states, bank.states)
        assert np.array_equal(loaded.weights, bank.weights)
        x = np.zeros(72, dtype=np.uint8)
        assert loaded.predict(x) == bank.predict(x)

    def test_rewrite_is_byte_identical(self, bank, tmp_path):
        a, b = tmp_path / "a.tm", tmp_path / "b.tm"
        save_model(bank, a)
        save_model(load_model(a), b)
        assert a.read_bytes() == b.read_bytes()

    def test_header_is_one_json_line(self, bank, tmp_path):
        path = tmp_path / "m.tm"
        save_model(bank, path)
        blob = path.read_bytes()
        assert blob.startswith(MODEL_MAGIC)
        header, offset = header_of(blob)
        assert header["n_features"] == 72
        assert header["config"]["n_clauses"] == 20
        assert header["states_dtype"] == "<u2"
        assert header["weights_dtype"] == "<i4"
        payload = len(blob) - offset
        assert payload == 20 * 144 * 2 + 20 * 4


class TestCorruption:
    def write(self, bank, tmp_path):
        path = tmp_path / "m.tm"
        save_model(bank, path)
        return path

    def test_bad_magic(self, bank, tmp_path):
        path = self.write(bank, tmp_path)
        blob = path.read_bytes()
        path.write_bytes(b"hextm-model v9\n" + blob[len(MODEL_MAGIC):])
        with pytest.raises(ModelFormatError, match="magic"):
            load_model(path)

    def test_not_a_model_file(self, tmp_path):
        path = tmp_path / "m.tm"
        path.write_bytes(b"PK\x03\x04 definitely a zip")
        with pytest.raises(ModelFormatError):
            load_model(path)

    def test_corrupt_header_json(self, bank, tmp_path):
        path = self.write(bank, tmp_path)
        blob = path.read_bytes()
        _, offset = header_of(blob)
        broken = MODEL_MAGIC + b'{"config": oops}\n' + blob[offset:]
        path.write_bytes(broken)
        with pytest.raises(ModelFormatError, match="header"):
            load_model(path)

    def test_truncated_states(self, bank, tmp_path):
        path = self.write(bank, tmp_path)
        blob = path.read_bytes()
        path.write_bytes(blob[: len(blob) - 20 * 4 - 100])
        with pytest.raises(ModelFormatError, match="truncated"):
            load_model(path)

    def test_truncated_weights(self, bank, tmp_path):
        path = self.write(bank, tmp_path)
        blob = path.read_bytes()
        path.write_bytes(blob[:-4])
        with pytest.raises(ModelFormatError, match="truncated"):
            load_model(path)

    def test_trailing_garbage(self, bank, tmp_path):
        path = self.write(bank, tmp_path)
        path.write_bytes(path.read_bytes() + b"\x00\x00")
        with pytest.raises(ModelFormatError, match="trailing"):
            load_model(path)

    def test_header_payload_mismatch(self, bank, tmp_path):
        # claim a different clause count than the payload actually holds
        path = self.write(bank, tmp_path)
        blob = path.read_bytes()
        header, offset = header_of(blob)
        header["config"]["n_clauses"] = 18
        line = json.dumps(header, sort_keys=True,
                          separators=(",", ":")).encode() + b"\n"
        path.write_bytes(MODEL_MAGIC + line + blob[offset:])
        with pytest.raises(ModelFormatError):
            load_model(path)

    def test_out_of_range_states_rejected(self, bank, tmp_path):
        path = self.write(bank, tmp_path)
        blob = bytearray(path.read_bytes())
        _, offset = header_of(bytes(blob))
        blob[offset:offset + 2] = (2000).to_bytes(2, "little")  # > 2 * 63
        path.write_bytes(bytes(blob))
        with pytest.raises(ModelFormatError):
            load_model(path)
