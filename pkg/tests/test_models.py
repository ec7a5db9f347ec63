import json
import math

import numpy as np
import pytest

from config import Config
from src.core.errors import DomainError
from src.domain.mm.spaces import Coupling, FiniteMMSpace, MetricKind
from src.domain.sampling import sample_sphere_uniform
from src.models.dto import CSV_COLUMNS, ResultRow, format_cell
from src.models.mapping import (
    load_coupling_csv,
    load_point_cloud_csv,
    load_space,
    load_space_json,
    save_coupling_csv,
    save_point_cloud_csv,
    save_space_json,
)


class TestResultRow:
    def test_record_follows_the_column_order(self):
        row = ResultRow(experiment="convergence", m=1, n=2, N=10, trial=0, estimate=0.5, converged=True)
        record = row.to_record()
        assert len(record) == len(CSV_COLUMNS)
        as_dict = dict(zip(CSV_COLUMNS, record))
        assert as_dict["schema_version"] == str(Config.CSV_SCHEMA_VERSION)
        assert as_dict["estimate"] == "0.5"
        assert as_dict["converged"] == "true"
        assert as_dict["exact"] == ""

    def test_unknown_fields_are_rejected(self):
        with pytest.raises(ValueError):
            ResultRow(experiment="tables", colour="red")

    def test_sort_key_groups_by_kind(self):
        rows = [
            ResultRow(experiment="x", kind="summary", m=1, n=2, N=10),
            ResultRow(experiment="x", kind="trial", m=1, n=2, N=10, trial=1),
            ResultRow(experiment="x", kind="trial", m=1, n=2, N=10, trial=0),
        ]
        ordered = sorted(rows, key=ResultRow.sort_key)
        assert [(r.kind, r.trial) for r in ordered] == [("trial", 0), ("trial", 1), ("summary", None)]


@pytest.mark.parametrize(
    "value, text",
    [(None, ""), (True, "true"), (math.inf, "inf"), (-math.inf, "-inf"), (0.1, "0.10000000000000001"), (3, "3")],
)
def test_format_cell(value, text):
    assert format_cell(value) == text


def test_format_cell_nan():
    assert format_cell(float("nan")) == "nan"


def test_space_json_round_trip(tmp_path, rectangle):
    path = save_space_json(rectangle, str(tmp_path / "nested" / "rect.json"))
    again = load_space_json(path)
    np.testing.assert_array_equal(again.dist, rectangle.dist)
    np.testing.assert_array_equal(again.weights, rectangle.weights)
    assert again.coords is not None


def test_invalid_space_documents(tmp_path):
    missing_weights = tmp_path / "bad.json"
    missing_weights.write_text(json.dumps({"n": 2, "dist": [[0, 1], [1, 0]]}))
    with pytest.raises(DomainError, match="not a metric-measure space"):
        load_space_json(str(missing_weights))
    asymmetric = tmp_path / "asym.json"
    asymmetric.write_text(json.dumps({"n": 2, "dist": [[0, 1], [2, 0]], "weights": [0.5, 0.5]}))
    with pytest.raises(DomainError):
        load_space_json(str(asymmetric))
    with pytest.raises(DomainError):
        load_space_json(str(tmp_path / "nope.json"))


def test_point_cloud_csv_with_header(tmp_path):
    cloud = sample_sphere_uniform(2, 6, seed=3)
    path = save_point_cloud_csv(cloud, str(tmp_path / "cloud.csv"))
    assert open(path).readline().strip() == "x0,x1,x2"
    np.testing.assert_array_equal(load_point_cloud_csv(path).coords, cloud.coords)
    space = load_space(path, MetricKind.GEODESIC)
    assert space.n_points == 6
    np.testing.assert_allclose(space.weights, np.full(6, 1 / 6))


def test_point_cloud_csv_normalization(tmp_path):
    path = tmp_path / "raw.csv"
    path.write_text("# raw points\n3,4\n0,2\n")
    with pytest.raises(DomainError):
        load_point_cloud_csv(str(path))
    np.testing.assert_allclose(load_point_cloud_csv(str(path), normalize=True).coords, [[0.6, 0.8], [0.0, 1.0]])


def test_coupling_csv(tmp_path, counterexample):
    X, Y, gamma = counterexample
    path = save_coupling_csv(gamma, str(tmp_path / "gamma.csv"))
    loaded = load_coupling_csv(path, X, Y)
    np.testing.assert_array_equal(loaded.gamma, gamma.gamma)
    with pytest.raises(DomainError, match="does not match"):
        load_coupling_csv(path, X, FiniteMMSpace.one_point())


def test_ragged_csv_is_rejected(tmp_path):
    path = tmp_path / "ragged.csv"
    path.write_text("1,0\n0\n")
    with pytest.raises(DomainError, match="different lengths"):
        load_point_cloud_csv(str(path))


def test_product_coupling_file_shape(tmp_path, counterexample):
    X, Y, _ = counterexample
    path = save_coupling_csv(Coupling.product(X.weights, Y.weights), str(tmp_path / "product.csv"))
    assert len(open(path).read().splitlines()) == X.n_points
