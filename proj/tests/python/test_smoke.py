"""Smoke tests for the pylore module: load data, train the built-in
ensemble, explain an instance, run a tiny evaluation."""

import json
import os

import pytest

import pylore

DATA = os.environ["LORE_DATA_DIR"]


@pytest.fixture(scope="module")
def blobs():
    ds = pylore.impute_missing(
        pylore.load_dataset(f"{DATA}/blobs2d.csv", f"{DATA}/blobs2d.schema.json")
    )
    return ds


def test_schema_surface(blobs):
    schema = blobs.schema
    assert schema.arity == 2
    assert schema.feature_names == ["x1", "x2"]
    assert schema.labels == ("purple", "green")


def test_split_and_ensemble(blobs):
    train, test = pylore.train_test_split(blobs, train_frac=0.8, seed=7)
    assert train.size + test.size == blobs.size
    bb = pylore.train_ensemble(train, tree_count=25, seed=7)
    rows = [test.row(i) for i in range(test.size)]
    labels = bb.predict(test, rows)
    assert len(labels) == test.size
    assert set(labels) <= {"purple", "green"}
    accuracy = sum(l == test.label(i) for i, l in enumerate(labels)) / test.size
    assert accuracy > 0.75
    assert bb.query_count == test.size


def test_explain_document(blobs):
    bb = pylore.train_ensemble(blobs, tree_count=20, seed=4)
    doc = json.loads(
        pylore.explain(blobs.row(0), bb, blobs, neighborhood_size=200,
                       generations=5, seed=9)
    )
    assert set(doc) >= {"instance", "blackbox_label", "rule", "counterfactuals",
                        "diagnostics"}
    assert doc["blackbox_label"] in ("purple", "green")
    for cf in doc["counterfactuals"]:
        assert cf["nf"] == doc["counterfactuals"][0]["nf"]

    again = json.loads(
        pylore.explain(blobs.row(0), bb, blobs, neighborhood_size=200,
                       generations=5, seed=9)
    )
    assert doc == again


def test_distance_and_f1(blobs):
    x, z = blobs.row(0), blobs.row(1)
    assert pylore.distance(blobs, "neuclid", x, x) == 0.0
    d = pylore.distance(blobs, "neuclid", x, z)
    assert 0.0 <= d <= 1.0
    assert pylore.f1_score([1, 0, 1], [1, 0, 1]) == 1.0


def test_evaluate_report(blobs):
    bb = pylore.train_ensemble(blobs, tree_count=20, seed=4)
    report = json.loads(
        pylore.evaluate(blobs, [0, 1, 2], bb, neighborhood_size=100,
                        generations=3, seed=12)
    )
    assert report["method"] == "lore"
    assert len(report["records"]) == 3
    assert 0.0 <= report["aggregates"]["fidelity"]["mean"] <= 1.0
