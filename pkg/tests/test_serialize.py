import json
from pathlib import Path

import numpy as np
import pytest

from monrep.algebra import ValidationError
from monrep.exactla import GF, QQ
from monrep.instances import TEST_QUIVERS, instance_rng, random_module, random_rep, suite_algebras
from monrep.serialize import (
    algebra_id,
    module_from_json,
    module_to_json,
    parse_field,
    rep_from_json,
    rep_to_json,
    resolve_algebra,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def test_parse_field():
    assert parse_field("2") == GF(2) and parse_field("Q") is QQ
    with pytest.raises(ValidationError):
        parse_field("4")
    with pytest.raises(ValidationError):
        parse_field("abc")


def test_stock_algebras_are_shared():
    F = GF(2)
    assert resolve_algebra("truncated:2", F) is resolve_algebra("truncated:2", F)
    assert resolve_algebra("path:2:2-1", F).dim == 3
    assert resolve_algebra("nakayama:2:2", F).dim == 4
    assert algebra_id(resolve_algebra("truncated:2", F)) == "truncated:2"
    with pytest.raises(ValidationError):
        resolve_algebra("mystery:1", F)


@pytest.mark.parametrize("an", list(suite_algebras()))
def test_round_trips(an):
    A = suite_algebras()[an]
    for k in range(5):
        rng = instance_rng(61, k)
        m = random_module(A, rng)
        m2 = module_from_json(json.loads(json.dumps(module_to_json(m))), A.field)
        assert np.array_equal(m.action, m2.action)
        x = random_rep(TEST_QUIVERS["2->1<-3"], A, rng)
        y = rep_from_json(json.loads(json.dumps(rep_to_json(x))), A.field)
        assert y.dim_vector == x.dim_vector
        assert all(np.array_equal(a, b) for a, b in zip(x.maps, y.maps))


@pytest.mark.parametrize("name", ["zero_to_simple", "identity_regular", "zero_map"])
def test_fixtures_load(name):
    x = rep_from_json(json.loads((FIXTURES / f"{name}.json").read_text()), GF(2))
    assert x.quiver.n == 2


def test_malformed_representations():
    data = json.loads((FIXTURES / "zero_to_simple.json").read_text())
    broken = dict(data, arrows=[])
    with pytest.raises(ValidationError):
        rep_from_json(broken, GF(2))
    bad_action = json.loads(json.dumps(data))
    bad_action["vertices"]["1"]["action"][1] = [[1]]  # x acts invertibly on a 1-dim module
    with pytest.raises(ValidationError):
        rep_from_json(bad_action, GF(2))
