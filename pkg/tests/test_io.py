import numpy as np
import pytest

from hyperring.io import (
    read_labels,
    read_pgm,
    read_tensor,
    write_labels,
    write_pgm,
    write_tensor,
)


def test_tensor_roundtrip_bit_exact(tmp_path):
    rng = np.random.default_rng(0)
    x = rng.random((3, 4, 2, 5))
    path = tmp_path / "x.ntf"
    write_tensor(path, x)
    back = read_tensor(path)
    np.testing.assert_array_equal(back, x)
    assert back.dtype == np.float64


def test_tensor_file_layout(tmp_path):
    path = tmp_path / "x.ntf"
    write_tensor(path, np.arange(6.0).reshape(2, 3))
    raw = path.read_bytes()
    assert raw[:4] == b"NTF1"
    assert int.from_bytes(raw[4:8], "little") == 2
    assert int.from_bytes(raw[8:16], "little") == 2
    assert int.from_bytes(raw[16:24], "little") == 3
    assert len(raw) == 24 + 6 * 8
    # row-major payload, last index fastest
    assert np.frombuffer(raw[24:], dtype="<f8")[1] == 1.0


def test_tensor_bad_magic(tmp_path):
    path = tmp_path / "bad.ntf"
    path.write_bytes(b"XXXX" + b"\x00" * 16)
    with pytest.raises(ValueError, match="magic"):
        read_tensor(path)


def test_tensor_truncated_payload(tmp_path):
    path = tmp_path / "short.ntf"
    write_tensor(path, np.ones((2, 2)))
    path.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(ValueError, match="payload"):
        read_tensor(path)


def test_tensor_rejects_non_finite(tmp_path):
    with pytest.raises(ValueError, match="finite"):
        write_tensor(tmp_path / "nan.ntf", np.array([np.nan]))


def test_labels_roundtrip(tmp_path):
    path = tmp_path / "labels.txt"
    write_labels(path, [0, 2, 1, 1, 4])
    np.testing.assert_array_equal(read_labels(path), [0, 2, 1, 1, 4])
    assert path.read_text() == "0\n2\n1\n1\n4\n"


def test_pgm_roundtrip_and_header(tmp_path):
    img = np.array([[0.0, 0.5], [1.0, 0.25], [0.75, 0.1]])
    path = tmp_path / "img.pgm"
    write_pgm(path, img)
    raw = path.read_bytes()
    assert raw.startswith(b"P5\n2 3\n255\n")
    back = read_pgm(path)
    assert back.shape == (3, 2)
    assert back[0, 0] == 0 and back[1, 0] == 255


def test_pgm_constant_image(tmp_path):
    path = tmp_path / "flat.pgm"
    write_pgm(path, np.full((2, 2), 3.5))
    np.testing.assert_array_equal(read_pgm(path), np.zeros((2, 2), dtype=np.uint8))


def test_pgm_rejects_non_2d(tmp_path):
    with pytest.raises(ValueError):
        write_pgm(tmp_path / "bad.pgm", np.zeros((2, 2, 2)))
