import json
from fractions import Fraction

import pytest

from lp_lab.errors import LpLabError
from lp_lab.evidence import Prior, evidence_report
from lp_lab.model import pair_at
from lp_lab.relations import birnbaum_chain
from lp_lab.serialization import (
    load_model,
    load_pair,
    load_prior,
    model_from_dict,
    model_to_dict,
    pair_from_dict,
    pair_to_dict,
    prior_from_dict,
    prior_to_dict,
    render_machine,
    save_model,
    save_pair,
    save_prior,
    to_jsonable,
)


def test_model_round_trip(fa, fb, fc, fd, tmp_path):
    for model in (fa, fb, fc, fd):
        path = tmp_path / "m.model"
        save_model(model, path)
        assert load_model(path) == model


def test_pair_round_trip(fa, tmp_path):
    pair = pair_at(fa, "x2")
    path = tmp_path / "p.pair"
    save_pair(pair, path)
    assert load_pair(path) == pair


def test_prior_round_trip(fe, tmp_path):
    path = tmp_path / "p.prior"
    save_prior(fe, path)
    assert load_prior(path) == fe


def test_dict_round_trip_is_exact(fa):
    assert model_from_dict(model_to_dict(fa)) == fa
    pair = pair_at(fa, "x3")
    assert pair_from_dict(pair_to_dict(pair)) == pair
    prior = Prior.of(["t1", "t2"], ["2/7", "5/7"])
    assert prior_from_dict(prior_to_dict(prior)) == prior


def test_missing_fields_raise(fa):
    data = model_to_dict(fa)
    del data["probs"]
    with pytest.raises(LpLabError):
        model_from_dict(data)
    with pytest.raises(LpLabError):
        pair_from_dict(model_to_dict(fa))


def test_unknown_observed_label_raises(fa):
    data = model_to_dict(fa)
    data["observed"] = "zz"
    with pytest.raises(LpLabError):
        pair_from_dict(data)


def test_rationals_serialized_canonically():
    prior = Prior.of(["t1", "t2"], ["2/4", "1/2"])
    assert prior_to_dict(prior)["weights"] == ["1/2", "1/2"]


def test_chain_serializes_and_rationals_reparse(fb, fc):
    chain = birnbaum_chain(pair_at(fb, "y2"), pair_at(fc, "z1"))
    text = render_machine(chain)
    data = json.loads(text)
    assert len(data["nodes"]) == 4
    first = data["nodes"][0]
    reparsed = pair_from_dict(first)
    assert reparsed == pair_at(fb, "y2")


def test_render_machine_deterministic(fb, fe):
    report = evidence_report(pair_at(fb, "y1"), fe, [["t1"]])
    assert render_machine(report) == render_machine(report)
    assert "0.6" not in render_machine(report)  # no floats anywhere


def test_to_jsonable_rejects_unknown_types():
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_to_jsonable_fraction():
    assert to_jsonable(Fraction(6, 4)) == "3/2"
