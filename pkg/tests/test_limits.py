from fractions import Fraction as F

import numpy as np
import pytest

from twistlap.limits import (
    crosscheck_cell,
    default_kappa_sequence,
    hermite_limit_probe,
    route_crosscheck,
    weight_limit_check,
)
from twistlap.params import InvalidParamsError, SurfaceMagneticParams


def test_default_sequence():
    seq = default_kappa_sequence(1)
    assert seq[0] == F(-1, 16) and seq[-1] == F(-1, 4096) and len(seq) == 9
    assert default_kappa_sequence(1, sign=1)[0] == F(1, 16)
    with pytest.raises(InvalidParamsError):
        default_kappa_sequence(F(1, 100), kmin=0)


def test_probe_00_is_exact():
    rep = hermite_limit_probe(1, 0, 0, default_kappa_sequence(1))
    assert rep.diffs == [0.0] * 9
    assert rep.order is None and rep.match


def test_probe_11_difference_is_kappa():
    seq = default_kappa_sequence(1)
    rep = hermite_limit_probe(1, 1, 1, seq)
    assert rep.diffs == [abs(float(k)) for k in seq]
    assert rep.order == pytest.approx(1.0, abs=1e-12)
    assert rep.match and rep.monotone


def test_probe_grid_converges():
    seq = default_kappa_sequence(1)
    for m in range(4):
        for n in range(4):
            rep = hermite_limit_probe(1, m, n, seq)
            assert rep.match, (m, n)
            assert rep.order is None or rep.order >= 0.9


def test_probe_rejects_growing_sequence():
    with pytest.raises(ValueError):
        hermite_limit_probe(1, 1, 1, [F(-1, 8), F(-1, 4)])


def test_probe_json():
    doc = hermite_limit_probe(1, 1, 0, default_kappa_sequence(1, 4, 6)).to_json()
    assert doc["points"][0]["kappa"] == "-1/16"
    assert set(doc) == {"m", "n", "nu", "points", "order", "extrapolated_diff", "match"}


def test_weight_limit():
    seq = [F(1, 2**k) for k in range(4, 13)]
    assert weight_limit_check(1, 0, seq, [0j]) == [0.0] * 9
    errors = weight_limit_check(1, 0, seq, [0.5])
    assert all(b < a for a, b in zip(errors, errors[1:]))
    pts = 0.5 * np.exp(1j * np.linspace(0, 6, 5))
    errors = weight_limit_check(2, 1, [-k for k in seq], pts)
    assert all(b < a for a, b in zip(errors, errors[1:]))


def test_crosscheck_disc_grid():
    report = route_crosscheck(SurfaceMagneticParams(-1, 4), 3, 4)
    assert report.passed and report.first_failure() is None
    for e in report.entries:
        assert e.routes_equal and e.mixed_defined
        if e.m <= e.n:
            assert e.jacobi_ratio == 1


@pytest.mark.parametrize("kappa,nu", [(F(-1), F(3)), (F(-1, 2), F(2)), (F(1), F(5, 2))])
def test_crosscheck_ratio_10(kappa, nu):
    entry = crosscheck_cell(SurfaceMagneticParams(kappa, nu), 1, 0)
    assert entry.jacobi_ratio == -1 / (2 * (nu + kappa))


def test_crosscheck_00():
    entry = crosscheck_cell(SurfaceMagneticParams(2, 1), 0, 0)
    assert entry.routes_equal and entry.jacobi_ratio == 1


def test_crosscheck_marks_undefined_mixed_route():
    report = route_crosscheck(SurfaceMagneticParams(1, 1), 1, 8)
    undefined = {(e.m, e.n) for e in report.entries if not e.mixed_defined}
    assert undefined == {(1, 4)}
    assert report.passed
    assert report.to_json()["entries"][0] == {
        "m": 0, "n": 0, "routes_equal": True, "jacobi_ratio": "1", "mixed_defined": True,
    }


def test_crosscheck_needs_curvature():
    with pytest.raises(ValueError):
        route_crosscheck(SurfaceMagneticParams(0, 1), 1, 1)
