import json

import numpy as np
import pytest

from graphlearn.exceptions import GraphValidationError, SignalFormatError
from graphlearn.generators import generate_graph
from graphlearn.io import (
    graph_from_dict,
    graph_to_dict,
    ingest_signals,
    load_graph,
    load_laplacian_csv,
    save_graph,
    save_laplacian_csv,
    save_signals_csv,
)
from graphlearn.laplacian import laplacian_from_weights


def test_graph_dict_format():
    L = laplacian_from_weights([0.5, 0.0, 2.0])
    assert graph_to_dict(L) == {"n": 3, "edges": [{"i": 0, "j": 1, "w": 0.5},
                                                  {"i": 1, "j": 2, "w": 2.0}]}


@pytest.mark.parametrize("model", ["rbf", "er", "ba"])
def test_graph_round_trip(tmp_path, model):
    L = generate_graph(model, 15, seed=4)
    save_graph(L, tmp_path / "g.json")
    back = load_graph(tmp_path / "g.json")
    off = ~np.eye(15, dtype=bool)
    np.testing.assert_array_equal(back[off], L[off])
    # degrees are re-summed from the stored weights
    np.testing.assert_allclose(np.diag(back), np.diag(L), rtol=1e-14)


@pytest.mark.parametrize("edges", [
    [{"i": 1, "j": 0, "w": 1.0}],
    [{"i": 0, "j": 3, "w": 1.0}],
    [{"i": 0, "j": 1, "w": 0.0}],
    [{"i": 0, "j": 1, "w": -1.0}],
    [{"i": 0, "j": 1, "w": 1.0}, {"i": 0, "j": 1, "w": 2.0}],
])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(GraphValidationError):
        graph_from_dict({"n": 3, "edges": edges})


def test_graph_rejects_malformed():
    with pytest.raises(GraphValidationError):
        graph_from_dict({"edges": []})


def test_laplacian_csv_round_trip(tmp_path):
    L = generate_graph("rbf", 12, seed=1)
    save_laplacian_csv(L, tmp_path / "L.csv")
    np.testing.assert_array_equal(load_laplacian_csv(tmp_path / "L.csv"), L)
    assert len((tmp_path / "L.csv").read_text().splitlines()) == 12


def test_laplacian_csv_rejects_invalid(tmp_path):
    (tmp_path / "L.csv").write_text("1,1\n1,1\n")
    with pytest.raises(GraphValidationError):
        load_laplacian_csv(tmp_path / "L.csv")


class TestIngest:
    def test_basic(self, tmp_path):
        (tmp_path / "x.csv").write_text("1,2\n3,4")
        np.testing.assert_array_equal(ingest_signals(tmp_path / "x.csv"), [[1, 2], [3, 4]])

    def test_header(self, tmp_path):
        (tmp_path / "x.csv").write_text("a,b\n1,2\n3,4\n")
        np.testing.assert_array_equal(ingest_signals(tmp_path / "x.csv", header=True),
                                      [[1, 2], [3, 4]])
        with pytest.raises(SignalFormatError, match="line 1"):
            ingest_signals(tmp_path / "x.csv")

    def test_center(self, tmp_path):
        (tmp_path / "x.csv").write_text("1,3\n10,20\n")
        np.testing.assert_array_equal(ingest_signals(tmp_path / "x.csv", center=True),
                                      [[-1, 1], [-5, 5]])

    def test_ragged(self, tmp_path):
        (tmp_path / "x.csv").write_text("1,2\n3,4\n5\n")
        with pytest.raises(SignalFormatError, match="line 3") as info:
            ingest_signals(tmp_path / "x.csv")
        assert info.value.line == 3

    def test_non_numeric(self, tmp_path):
        (tmp_path / "x.csv").write_text("1,2\n3,oops\n")
        with pytest.raises(SignalFormatError, match="line 2.*oops"):
            ingest_signals(tmp_path / "x.csv")

    def test_empty(self, tmp_path):
        (tmp_path / "x.csv").write_text("")
        with pytest.raises(SignalFormatError, match="no data"):
            ingest_signals(tmp_path / "x.csv")

    def test_nan(self, tmp_path):
        (tmp_path / "x.csv").write_text("1,nan\n")
        with pytest.raises(SignalFormatError):
            ingest_signals(tmp_path / "x.csv")

    def test_signals_round_trip(self, tmp_path):
        X = np.random.default_rng(0).normal(size=(5, 7))
        save_signals_csv(X, tmp_path / "x.csv")
        np.testing.assert_array_equal(ingest_signals(tmp_path / "x.csv"), X)


def test_json_is_plain(tmp_path):
    save_graph(laplacian_from_weights([1.0]), tmp_path / "g.json")
    data = json.loads((tmp_path / "g.json").read_text())
    assert data == {"n": 2, "edges": [{"i": 0, "j": 1, "w": 1.0}]}
