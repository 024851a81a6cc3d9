import json
import math

import pytest

import pyextball


def make_gauss(values, normalize=True):
    return json.dumps(
        {
            "generator": {"kind": "gauss", "a": 1.0},
            "nodes": {"kind": "integers"},
            "coefficients": {
                "kind": "finite",
                "values": [
                    {"node": n, "re": c.real, "im": c.imag} for n, c in values
                ],
            },
            "normalize": normalize,
        }
    )


def make_sech_single(normalize=True):
    return json.dumps(
        {
            "generator": {"kind": "sech", "a": 1.0},
            "nodes": {"kind": "explicit", "points": [0.0]},
            "coefficients": {
                "kind": "finite",
                "values": [{"node": 0.0, "re": 1.0, "im": 0.0}],
            },
            "normalize": normalize,
        }
    )


def test_classify_not_extreme():
    spec = make_gauss([(-1, complex(-2.0, 0.0)), (1, complex(1.0, 0.0))])
    report = json.loads(pyextball.classify(spec))
    assert report["overall"] == "NotExtreme"
    assert report["witnesses"]
    assert report["conditions"]["paired_zeros"]["status"] == "Fail"


def test_classify_extreme_not_exposed():
    spec = make_gauss([(-1, complex(0.0, -1.0)), (1, complex(1.0, 0.0))])
    report = json.loads(pyextball.classify(spec))
    assert report["overall"] == "ExtremeNotExposed"


def test_classify_exposed_sech():
    report = json.loads(pyextball.classify(make_sech_single()))
    assert report["overall"] == "Exposed"


def test_l1_norm_oracles():
    value, err = pyextball.l1_norm(make_gauss([(0, complex(1.0, 0.0))], False))
    assert abs(value - math.sqrt(math.pi)) <= 1e-10 + err
    value, err = pyextball.l1_norm(make_sech_single(normalize=False))
    assert abs(value - math.pi / 2.0) <= 1e-10 + err


def test_zeros_of_two_translates():
    spec = make_gauss([(-1, complex(-2.0, 0.0)), (1, complex(1.0, 0.0))])
    zeros = json.loads(pyextball.zeros(spec))
    # symbol roots solve w^2 = 2
    mags = sorted(abs(complex(z["w_re"], z["w_im"])) for z in zeros)
    assert all(abs(m - math.sqrt(2.0)) < 1e-9 for m in mags)


def test_recover_round_trip():
    spec = make_gauss([(0, complex(0.5, 0.25)), (2, complex(-1.0, 0.0))], False)
    out = json.loads(pyextball.recover(spec))
    assert out["resynthesis_residual"] <= 1e-10
    got = {c["node"]: complex(c["re"], c["im"]) for c in out["coefficients"]}
    assert abs(got[0] - complex(0.5, 0.25)) <= 1e-9
    assert abs(got[2] - complex(-1.0, 0.0)) <= 1e-9


def test_schema_error_raises():
    with pytest.raises(Exception):
        pyextball.classify("{\"nope\": 1}")
