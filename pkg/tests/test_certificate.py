import copy
import json

import pytest
from hypothesis import given, settings, strategies as st

from monrep.certificate import Certificate, CheckFailed, recheck
from monrep.exactla import GF, QQ
from monrep.instances import TEST_QUIVERS, instance_rng, random_monic, suite_algebras
from monrep.moninj import injective_embedding, strip_filtration
from monrep.quiverrep import m_i

ALGS = suite_algebras()


def test_claim_kinds():
    F = GF(3)
    c = Certificate("demo", F)
    a = F.array([[1, 2], [0, 1]])
    c.products_equal("a a^-1 = I", [a, F.inverse(a)], [F.eye(2)])
    c.invertible("a invertible", a)
    c.injective("column injective", F.array([[1], [1]]))
    c.surjective("row surjective", F.array([[1, 1]]))
    c.exact("exact", F.array([[1], [2]]), F.array([[1, 1]]))
    c.zero("zero", F.zeros(2, 3))
    assert c.check()
    ok, fails = recheck(json.loads(json.dumps(c.to_json())))
    assert ok and not fails


def test_false_claims_are_caught_both_ways():
    F = GF(2)
    c = Certificate("demo", F)
    c.injective("zero column is not injective", F.zeros(2, 1))
    c.exact("not exact", F.array([[1], [0]]), F.array([[1, 1]]))
    assert not c.check()
    assert len(c.failures()) == 2
    with pytest.raises(CheckFailed):
        c.require()
    ok, fails = recheck(c.to_json())
    assert not ok and len(fails) == 2


def test_rational_certificates():
    c = Certificate("q", QQ)
    a = QQ.array([[2, 1], [1, 1]])
    c.products_equal("inverse", [a, QQ.inverse(a)], [QQ.eye(2)])
    assert c.check() and recheck(c.to_json())[0]


def _tamper(data):
    """Flip one entry in the first nonempty matrix of any claim."""
    for claim in data.get("claims", []):
        for m in claim["mats"]:
            if m["rows"] and m["cols"]:
                v = m["data"][0][0]
                m["data"][0][0] = 0 if v else 1
                return True
    return any(_tamper(ch) for ch in data.get("children", []))


def test_recheck_of_embedding(k2, a2):
    A, reg, S = k2
    cert = injective_embedding(m_i(S, 1, a2)).certificate
    data = cert.to_json()
    assert recheck(data)[0]
    assert recheck(json.loads(json.dumps(data)))[0]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**20), st.sampled_from(list(ALGS)), st.sampled_from(list(TEST_QUIVERS)))
def test_tampering_is_detected(seed, an, qn):
    x = random_monic(TEST_QUIVERS[qn], ALGS[an], instance_rng(seed, 51))
    data = injective_embedding(x).certificate.to_json()
    assert recheck(data)[0]
    bad = copy.deepcopy(data)
    mutated = 0
    for claim in bad["claims"]:
        if claim["op"] == "product_equal":
            for m in claim["mats"][:1]:
                if m["rows"] and m["cols"]:
                    m["data"][0][0] = (int(m["data"][0][0]) + 1) % ALGS[an].field.p
                    mutated += 1
    if mutated:
        ok, fails = recheck(bad)
        assert not ok and fails


def test_nested_certificates_recheck(k2):
    A, reg, S = k2
    x = random_monic(TEST_QUIVERS["2->1<-3"], A, instance_rng(0, 52))
    _, cert = strip_filtration(x)
    data = cert.to_json()
    assert data["children"] and recheck(data)[0]


def test_recheck_requires_matrices(k2, a2):
    A, reg, S = k2
    data = injective_embedding(m_i(S, 1, a2)).certificate.to_json(matrices=False)
    with pytest.raises(ValueError):
        recheck(data)
