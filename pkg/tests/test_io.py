import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hmulab.errors import DomainError
from hmulab.io import blocks_from_json, blocks_to_json, read_poly_csv, write_poly_csv
from hmulab.series import TaylorPolynomial, dyadic_blocks

finite = st.floats(-1e6, 1e6, allow_nan=False)


@settings(max_examples=40, deadline=None)
@given(c=arrays(np.float64, st.integers(1, 50), elements=finite), make_complex=st.booleans())
def test_poly_csv_round_trip(tmp_path_factory, c, make_complex):
    path = tmp_path_factory.mktemp("csv") / "f.csv"
    coeffs = c + 1j * c[::-1] if make_complex and np.any(c) else c
    write_poly_csv(coeffs, path)
    back = read_poly_csv(path)
    np.testing.assert_array_equal(back.coeffs, coeffs)
    assert np.iscomplexobj(back.coeffs) == bool(np.any(np.imag(coeffs)))


def test_read_sparse_and_missing_im(tmp_path):
    p = tmp_path / "f.csv"
    p.write_text("index,re\n3,2.5\n0,1\n")
    assert read_poly_csv(p) == TaylorPolynomial([1.0, 0, 0, 2.5])


@pytest.mark.parametrize("text", ["index,re,im\n", "index,re,im\nx,1,0\n", "index,re,im\n-1,1,0\n"])
def test_bad_csv(tmp_path, text):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(DomainError):
        read_poly_csv(p)


def test_blocks_json_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    for c in (rng.standard_normal(37), rng.standard_normal(20) + 1j * rng.standard_normal(20)):
        b = dyadic_blocks(c)
        text = blocks_to_json(b)
        assert blocks_from_json(text).reassemble() == TaylorPolynomial(c)
        p = tmp_path / "b.json"
        blocks_to_json(b, p)
        assert blocks_from_json(p).reassemble() == TaylorPolynomial(c)
