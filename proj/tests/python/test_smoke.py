import json
import math
import os

import numpy as np
import pytest

import ecpspline

DATA = os.environ.get(
    "ECP_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data")
)


def data(name):
    return os.path.join(DATA, name)


def cubic(knots=(), interval=(0.0, 1.0)):
    return {
        "interval": list(interval),
        "knots": list(knots),
        "sections": [["1", "x", "x^2", "x^3"]],
    }


def test_example_one_verdicts():
    assert ecpspline.check(data("example1.json"))["suitable"] is True
    rep = ecpspline.check(data("example1b.json"))
    assert rep["suitable"] is False
    f = rep["failure"]
    assert (f["level"], f["interval"], f["function"]) == (1, 2, 2)
    assert f["difference"] < 0


def test_trace_levels():
    rep = ecpspline.check(data("example1.json"), trace=True)
    assert len(rep["levels"]) == 4


def test_spec_forms_agree():
    doc = ecpspline.load(data("example2b.json"))
    a = ecpspline.check(doc)
    b = ecpspline.check(json.dumps(doc))
    c = ecpspline.check(data("example2b.json"))
    assert a == b == c


def test_cubic_basis_is_bernstein():
    out = ecpspline.basis(cubic(), samples=11)
    x = out["x"]
    vals = out["values"]
    assert vals.shape == (11, 4)
    for i in range(4):
        want = math.comb(3, i) * x**i * (1 - x) ** (3 - i)
        np.testing.assert_allclose(vals[:, i], want, atol=1e-12)
    assert out["side"][0] == "+" and out["side"][-1] == "-"


def test_cubic_weights():
    levels = ecpspline.weights(cubic(), samples=7)
    assert [lv["level"] for lv in levels] == [1, 2, 3]
    for lv, want in zip(levels, (3.0, 2.0, 1.0)):
        np.testing.assert_allclose(lv["values"], want, atol=1e-12)
    v = ecpspline.positivity(data("example1b.json"))
    assert v["positive"] is False
    assert v["level_min"][1] < 0


def test_curve_endpoints_and_constant():
    pts = np.array([[0.0, 0.0], [1.0, 2.0], [3.0, 2.0], [4.0, 0.0]])
    c = ecpspline.curve(data("example2a.json"), pts, samples=9)
    np.testing.assert_allclose(c["points"][0], pts[0], atol=1e-12)
    np.testing.assert_allclose(c["points"][-1], pts[-1], atol=1e-12)
    flat = ecpspline.curve(data("example1.json"), np.tile([2.5, -1.0], (4, 1)), samples=9)
    np.testing.assert_allclose(flat["points"], np.tile([2.5, -1.0], (36, 1)), atol=1e-12)


def test_sweep_and_bisect():
    rows = ecpspline.sweep(data("example2a.json"))
    assert len(rows) == 51
    flips = sum(1 for p, q in zip(rows, rows[1:]) if p[1] != q[1])
    assert flips == 1
    b = ecpspline.bisect(data("example2a.json"), -10.0, 0.0, iterations=40, tol=1e-8)
    assert b["found"]
    assert b["lower"] == pytest.approx(-4.0, abs=1e-6)


def test_errors_carry_codes():
    with pytest.raises(ecpspline.EcpError) as e:
        ecpspline.check(cubic(knots=(0.5, 0.5)))
    assert e.value.code == "KnotsNotIncreasing"
    with pytest.raises(ecpspline.EcpError) as e:
        ecpspline.check({"interval": [0, 1], "sections": [["x"]]})
    assert e.value.code == "MissingConstant"
    with pytest.raises(ecpspline.EcpError) as e:
        ecpspline.check("{nope")
    assert e.value.code == "InvalidSpec"
    with pytest.raises(ecpspline.EcpError) as e:
        ecpspline.curve(cubic(), np.zeros((3, 2)))
    assert e.value.code == "SizeMismatch"
