import json

import numpy as np
import pytest

import solitonlab as sl


def test_zoo_names():
    assert "example-3-6" in sl.zoo_names()
    assert "example-4-5" in sl.zoo_names()


def test_example_3_6_geometry():
    m = sl.Manifold.zoo("example-3-6")
    assert m.dim == 3
    assert m.coordinates == ["x", "y", "z"]
    p = [0.2, -0.3, 0.4]
    g = m.metric(p)
    assert g.shape == (3, 3)
    assert g[0, 0] == pytest.approx(0.5 * np.exp(0.8))
    gamma = m.christoffel(p)
    # nabla_dx dz = dx
    assert gamma[0, 0, 2] == pytest.approx(1.0)
    assert m.ricci(p)[2, 2] == pytest.approx(-2.0)
    assert m.scalar_curvature(p) == pytest.approx(-6.0)
    r4 = m.riemann_04(p)
    assert np.allclose(r4, -np.transpose(r4, (1, 0, 2, 3)))


def test_fitted_lambdas():
    a = sl.check_soliton("example-3-6", fit=True, samples=20)
    assert a["passed"]
    assert a["values"]["soliton"]["fit"]["lambda"] == pytest.approx(1.0, abs=1e-8)
    b = sl.check_soliton("example-4-5", fit=True, samples=20)
    assert b["values"]["soliton"]["fit"]["lambda"] == pytest.approx(4.0, abs=1e-8)


def test_negative_control_fails():
    r = sl.check_soliton("example-3-6", lam=0.0, samples=10)
    assert not r["passed"]


def test_structure_and_audit():
    s = sl.check_structure("example-4-5", samples=10)
    assert s["values"]["structure"]["nullity"]["kappa"] == pytest.approx(-2.0, abs=1e-8)
    assert sl.audit("example-3-6", "3.3", samples=10)["passed"]
    with pytest.raises(sl.SolitonlabError):
        sl.audit("example-3-6", "9.9", samples=10)


def test_zoo_run_and_report():
    assert sl.zoo_run("example-4-5", samples=10)["passed"]
    assert sl.report("product-h2xr", samples=10)["passed"]


def test_file_round_trip(tmp_path):
    m = sl.Manifold.zoo("example-4-5")
    path = tmp_path / "e.manifold"
    path.write_text(m.to_text())
    back = sl.Manifold.load(str(path))
    pts = back.sample_points(5, 3)
    assert pts.shape == (5, 3)
    for p in pts:
        assert np.array_equal(back.riemann(list(p)), m.riemann(list(p)))


def test_parse_error_location():
    with pytest.raises(sl.ParseError, match=r"<string>:\d+:\d+"):
        sl.Manifold.parse('[manifold]\ncoordinates = ["x"]\n[metric]\ng.x.x = "1 +"\n[domain]\nx = [0, 1]\n')


def test_cli_in_process():
    code, out, _ = sl.cli(["--format", "json", "zoo", "run", "example-3-6", "--samples", "10"])
    assert code == 0
    assert json.loads(out)["passed"]
    code, _, err = sl.cli(["check", "soliton", "example-3-6", "--lambda", "0", "--samples", "10"])
    assert code == 1
    assert "FAIL" in err
    assert sl.cli(["bogus"])[0] == 2
