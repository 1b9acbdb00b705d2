import json

import pytest

from dmorita.algebra import PresentationError, RawAlgebra, linear_quiver, triangular
from dmorita.complex import cohomology_all
from dmorita.derived import projective_resolution
from dmorita.exactlin import QQ, parse_field
from dmorita.module import is_isomorphic, simples, interval_module, projectives
from dmorita.serialize import (
    algebra_from_json, algebra_to_json, complex_from_json, complex_to_json, dumps,
    module_from_json, module_to_json, quiver_from_json, recheck_witness, witness_to_json,
)

F101 = parse_field("fp:101")


@pytest.mark.parametrize("F", [QQ, F101])
def test_algebra_roundtrip(F):
    a = triangular(3, F)
    d = json.loads(dumps(algebra_to_json(a)))
    b = algebra_from_json(d)
    assert b.dim == a.dim and b.field == F
    assert algebra_to_json(RawAlgebra.from_algebra(b))["constants"] == d["constants"]


def test_corrupted_algebra_rejected():
    d = algebra_to_json(triangular(2))
    d["constants"][0][3] = "2"
    with pytest.raises(PresentationError):
        algebra_from_json(d)
    d = algebra_to_json(triangular(2))
    d["constants"].append([0, 0, 99, "1"])
    with pytest.raises(PresentationError):
        algebra_from_json(d)
    with pytest.raises(PresentationError):
        algebra_from_json({"dim": 2})


def test_quiver_json():
    q = linear_quiver(3)
    d = {"vertices": 3, "arrows": [list(x) for x in q.arrows]}
    a = quiver_from_json(d)
    assert a.dim == 6
    with pytest.raises(PresentationError):
        quiver_from_json({"vertices": 2})


def test_module_roundtrip():
    a = triangular(3)
    for m in [interval_module(a, 2, 3), projectives(a)[2], simples(a)[0]]:
        d = json.loads(dumps(module_to_json(m)))
        assert len(d["action"]) == a.dim
        m2 = module_from_json(d, a)
        assert is_isomorphic(m, m2).status == "yes"


def test_module_json_rejects_bad_action():
    a = triangular(2)
    d = module_to_json(projectives(a)[1])
    d["action"] = d["action"][:1]
    with pytest.raises(PresentationError):
        module_from_json(d, a)


def test_complex_roundtrip():
    a = triangular(3)
    c = projective_resolution(interval_module(a, 2, 3))
    d = json.loads(dumps(complex_to_json(c)))
    assert d["lo"] == -1 and d["hi"] == 0
    c2 = complex_from_json(d, a)
    h1, h2 = cohomology_all(c), cohomology_all(c2)
    assert list(h1) == list(h2)
    assert all(is_isomorphic(h1[p], h2[p]).status == "yes" for p in h1)


def test_witness_recheck_and_tamper():
    a = triangular(3)
    m = interval_module(a, 1, 3)
    v = is_isomorphic(m, projectives(a)[2])
    w = json.loads(dumps(witness_to_json(v.witness)))
    assert recheck_witness(w, QQ)
    bad = json.loads(json.dumps(w))
    bad["matrix"][0][0] = QQ.to_str(QQ(bad["matrix"][0][0]) + 1)
    assert not recheck_witness(bad, QQ)
    sing = json.loads(json.dumps(w))
    sing["matrix"] = [["0"] * len(r) for r in w["matrix"]]
    assert not recheck_witness(sing, QQ)


def test_dumps_is_deterministic():
    d = algebra_to_json(triangular(2))
    assert dumps(d) == dumps(json.loads(dumps(d)))
