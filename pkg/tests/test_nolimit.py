import pytest

from polycx import no_limit_witness


def test_only_constants_restrict():
    for d in range(1, 7):
        report = no_limit_witness(d)
        assert report["restriction_image_dim"] == 1


def test_coefficient_identities_hold_on_kernel():
    report = no_limit_witness(5)
    assert report["identities_3"]
    assert report["identities_4"]


def test_axis_blocks_only_constant_survives():
    report = no_limit_witness(4)
    # weight-0 block (the constants) contributes; no higher block does
    assert report["axis_blocks"][0] == (0, 1)
    assert all(c == 0 for w, c in report["axis_blocks"][1:])


def test_shear_is_what_kills_the_limit():
    report = no_limit_witness(4, shear=False)
    assert report["restriction_image_dim"] == 5  # all powers of x survive
    assert report["identities_4"] is None


def test_degree_must_be_positive():
    with pytest.raises(ValueError):
        no_limit_witness(0)
