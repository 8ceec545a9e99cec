import numpy as np
import pytest

from dashgrid import FormatError, binarize, load_pgm, save_pgm
from dashgrid.pgm import save_pgm_gray


def test_load_p2_example():
    img = load_pgm(b"P2\n2 1\n255\n0 255\n")
    assert img.shape == (1, 2)
    assert img.tolist() == [[0, 255]]


def test_load_p5_example():
    img = load_pgm(b"P5\n2 1\n255\n" + bytes([0, 255]))
    assert img.tolist() == [[0, 255]]


def test_p2_p5_same_image_load_identically():
    p2 = load_pgm(b"P2\n3 2\n255\n0 10 20 128 254 255\n")
    p5 = load_pgm(b"P5\n3 2\n255\n" + bytes([0, 10, 20, 128, 254, 255]))
    assert np.array_equal(p2, p5)


def test_p2_truncated_data():
    with pytest.raises(FormatError, match="offset"):
        load_pgm(b"P2\n2 2\n255\n0 0 0\n")


def test_p5_truncated_data():
    with pytest.raises(FormatError, match="offset"):
        load_pgm(b"P5\n2 2\n255\n" + bytes([0, 0, 0]))


def test_maxval_above_255_rejected():
    with pytest.raises(FormatError, match="maxval"):
        load_pgm(b"P2\n1 1\n65535\n0\n")


def test_bad_magic_rejected():
    with pytest.raises(FormatError, match="offset 0"):
        load_pgm(b"P6\n1 1\n255\n\x00\x00\x00")
    with pytest.raises(FormatError):
        load_pgm(b"hello")


def test_zero_dimension_rejected():
    with pytest.raises(FormatError, match="dimensions"):
        load_pgm(b"P2\n0 1\n255\n\n")


def test_p2_value_above_maxval_rejected():
    with pytest.raises(FormatError, match="range"):
        load_pgm(b"P2\n1 1\n100\n101\n")


def test_header_comments_are_skipped():
    img = load_pgm(b"P2\n# a comment\n2 1 # trailing\n255\n7 9\n")
    assert img.tolist() == [[7, 9]]


def test_save_single_foreground_pixel():
    assert save_pgm(np.array([[True]])) == b"P5\n1 1\n255\n\xff"


def test_save_single_background_pixel():
    assert save_pgm(np.array([[False]])) == b"P5\n1 1\n255\n\x00"


def test_mask_round_trip_is_bit_exact():
    rng = np.random.default_rng(42)
    for _ in range(25):
        h, w = rng.integers(1, 40, size=2)
        mask = rng.random((h, w)) < rng.uniform(0, 1)
        again = binarize(load_pgm(save_pgm(mask)), 128)
        assert np.array_equal(again, mask)


def test_gray_round_trip_is_bit_exact():
    rng = np.random.default_rng(43)
    img = rng.integers(0, 256, size=(17, 23), dtype=np.uint8)
    assert np.array_equal(load_pgm(save_pgm_gray(img)), img)


def test_p2_writer_agrees_with_p5():
    rng = np.random.default_rng(44)
    img = rng.integers(0, 256, size=(5, 9), dtype=np.uint8)
    body = " ".join(str(v) for v in img.flatten())
    p2 = f"P2\n9 5\n255\n{body}\n".encode("ascii")
    assert np.array_equal(load_pgm(p2), load_pgm(save_pgm_gray(img)))
