import json

import numpy as np
import pytest

from hkl.factor import BlaschkeProduct
from hkl.jsonio import (blaschke_from_json, blaschke_to_json, dumps,
                        grid_from_json, grid_to_json, instance_from_json,
                        instance_to_json, kernel_from_json, kernel_to_json,
                        load_instance, poly_from_json, poly_to_json,
                        trig_from_json, trig_to_json)
from hkl.kernel import KernelElement
from hkl.numeric import Grid
from hkl.polycore import Poly, TrigPoly


def test_poly_round_trip():
    p = Poly((1.5, -2j, 0.25 + 0.5j))
    assert poly_from_json(poly_to_json(p)).coeffs == p.coeffs


def test_trig_round_trip():
    g = TrigPoly(2, (1.0, 0.5 - 0.25j, 0.125j))
    assert trig_from_json(trig_to_json(g)).coeffs == g.coeffs


def test_trig_accepts_consistent_negative_keys():
    d = {"n": 1, "coeffs": {"0": [1.0, 0.0], "1": [0.5, 0.25],
                            "-1": [0.5, -0.25]}}
    g = trig_from_json(d)
    assert g.coeff(1) == 0.5 + 0.25j


def test_trig_rejects_inconsistent_negative_keys():
    d = {"n": 1, "coeffs": {"0": [1.0, 0.0], "1": [0.5, 0.25],
                            "-1": [0.5, 0.25]}}
    with pytest.raises(ValueError):
        trig_from_json(d)


def test_trig_rejects_out_of_band():
    with pytest.raises(ValueError):
        trig_from_json({"n": 1, "coeffs": {"2": [1.0, 0.0]}})


def test_kernel_round_trip():
    x = KernelElement(3, Poly((1, 2, 3)))
    y = kernel_from_json(kernel_to_json(x))
    assert y.n == 3 and y.f.coeffs == x.f.coeffs


def test_grid_round_trip():
    gr = Grid(np.arange(8) + 1j)
    back = grid_from_json(grid_to_json(gr))
    assert np.array_equal(back.values, gr.values)


def test_blaschke_round_trip():
    b = BlaschkeProduct(2, ((0.5 + 0.1j, 2),), 1j)
    back = blaschke_from_json(blaschke_to_json(b))
    assert back.m0 == 2 and back.zeros == b.zeros and back.lam == b.lam


def test_unknown_fields_rejected():
    with pytest.raises(ValueError):
        poly_from_json({"coeffs": [], "extra": 1})
    with pytest.raises(ValueError):
        instance_from_json({"version": "hkl-1", "type": "poly",
                            "payload": {"coeffs": []}, "junk": True})


def test_version_enforced():
    with pytest.raises(ValueError):
        instance_from_json({"version": "hkl-2", "type": "poly",
                            "payload": {"coeffs": []}})


def test_instance_envelope_round_trip():
    for obj in (Poly((1, 2)), TrigPoly(1, (1.0, 0.5)),
                KernelElement(1, Poly((0, 1))), Grid(np.ones(4))):
        back = load_instance(dumps(instance_to_json(obj)))
        assert type(back) is type(obj)


def test_dumps_is_valid_json_with_17_digits():
    text = dumps({"x": 1 / 3, "y": [1, True, None, "s"]})
    assert json.loads(text) == {"x": 1 / 3, "y": [1, True, None, "s"]}
    assert "0.33333333333333331" in text


def test_dumps_rejects_nonfinite():
    with pytest.raises(ValueError):
        dumps({"x": float("inf")})


def test_dumps_deterministic():
    obj = instance_to_json(TrigPoly(2, (1.0, 0.1 + 0.2j, -0.05j)))
    assert dumps(obj) == dumps(obj)
