import json

import pytest

from diskpower.catalog_io import (CatalogError, ModelVersionError, load_catalog,
                                  load_model, save_catalog, save_model)
from diskpower.model_core import EMPIRICAL, DiskSpec, PowerModel, calibrate

VALID_CSV = """model_id,platters,rpm,diameter_in,capacity_gb,measured_watts
drive-a,2,7200,2.6,1000,6.5
"""


class TestLoadCatalogCsv:
    def test_single_valid_row(self, tmp_path):
        path = tmp_path / "cat.csv"
        path.write_text(VALID_CSV)
        cat = load_catalog(path)
        assert len(cat.records) == 1
        record = cat.records[0]
        assert record == DiskSpec("drive-a", 2, 7200.0, 2.6, 1000.0, 6.5)
        assert cat.format == "csv"

    def test_optional_cells_empty(self, tmp_path):
        path = tmp_path / "cat.csv"
        path.write_text("model_id,platters,rpm,diameter_in,capacity_gb,measured_watts\n"
                        "d,1,7200,2.6,,\n")
        record = load_catalog(path).records[0]
        assert record.capacity_gb is None and record.measured_watts is None

    def test_zero_platters_names_row_and_field(self, tmp_path):
        path = tmp_path / "cat.csv"
        path.write_text("model_id,platters,rpm,diameter_in\nbad-drive,0,7200,2.6\n")
        with pytest.raises(CatalogError) as exc:
            load_catalog(path)
        message = str(exc.value)
        assert "line 2" in message
        assert "platters" in message
        assert "bad-drive" in message

    def test_all_defects_reported_together(self, tmp_path):
        path = tmp_path / "cat.csv"
        path.write_text("model_id,platters,rpm,diameter_in\n"
                        "a,0,7200,2.6\n"
                        "b,1,abc,2.6\n"
                        "c,1,7200,2.6\n"
                        "c,1,5400,2.6\n")
        with pytest.raises(CatalogError) as exc:
            load_catalog(path)
        assert len(exc.value.errors) == 3  # bad platters, bad rpm, duplicate id

    def test_missing_header_columns(self, tmp_path):
        path = tmp_path / "cat.csv"
        path.write_text("model_id,rpm\na,7200\n")
        with pytest.raises(CatalogError) as exc:
            load_catalog(path)
        assert "platters" in str(exc.value)

    def test_bundled_example_catalog(self, example1_catalog_path):
        cat = load_catalog(example1_catalog_path)
        assert len(cat.records) == 3
        assert [r.rpm for r in cat.records] == [15098, 16263, 55819]
        assert all(r.platters == 1 and r.diameter_in == 2.6 for r in cat.records)


class TestLoadCatalogJson:
    def test_round_trip(self, tmp_path):
        records = (DiskSpec("a", 1, 15098.0, 2.6, 73.4, 0.91),
                   DiskSpec("b", 4, 7200.125, 3.5))
        path = tmp_path / "cat.json"
        save_catalog(records, path, "json")
        assert load_catalog(path).records == records

    def test_parse_error_has_position(self, tmp_path):
        path = tmp_path / "cat.json"
        path.write_text("[{]")
        with pytest.raises(CatalogError) as exc:
            load_catalog(path)
        assert "line 1" in str(exc.value)

    def test_non_array_rejected(self, tmp_path):
        path = tmp_path / "cat.json"
        path.write_text('{"model_id": "a"}')
        with pytest.raises(CatalogError):
            load_catalog(path)


class TestCsvRoundTrip:
    def test_records_survive(self, tmp_path):
        records = (DiskSpec("a", 1, 15098.0, 2.6, None, 0.91),
                   DiskSpec("b", 4, 7200.125, 3.5, 2000.5, None))
        path = tmp_path / "cat.csv"
        save_catalog(records, path, "csv")
        assert load_catalog(path).records == records


class TestModelFile:
    def test_default_round_trip(self, tmp_path):
        path = tmp_path / "model.json"
        save_model(EMPIRICAL, path)
        assert load_model(path) == EMPIRICAL

    def test_calibrated_round_trip_exact(self, tmp_path):
        model = calibrate([DiskSpec("a", 1, 15098, 2.6, measured_watts=0.91)])
        path = tmp_path / "model.json"
        save_model(model, path)
        assert load_model(path).constant_k == model.constant_k

    def test_unknown_version_rejected(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text(json.dumps({"version": 99, "platter_exp": 1,
                                    "rpm_exp": 2.8, "diameter_exp": 4.6}))
        with pytest.raises(ModelVersionError) as exc:
            load_model(path)
        assert exc.value.found == 99
        assert exc.value.expected == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_model(tmp_path / "nope.json")
