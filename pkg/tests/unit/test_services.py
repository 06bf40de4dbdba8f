"""Tests for configuration, the projection cache, report writing and the experiment runner."""
import json
import os
import warnings

import numpy as np
import pytest

from src.config import Config
from src.errors import ConfigError, DomainError, TruncationWarning
from src.models.reports import ReportRecord, RunConfig
from src.services.cache_service import InMemoryProjectionCache
from src.services.experiment_service import ExperimentContext, ExperimentService
from src.services.report_service import ReportService, format_cell, read_csv


class TestConfig:
    def test_defaults(self, mocker):
        mocker.patch.dict(os.environ, {}, clear=True)
        cfg = Config.from_env()
        assert cfg.threads == 1
        assert cfg.lambda_max == 128.0
        assert cfg.lambda_step == 0.05
        assert not cfg.use_threads
        assert not cfg.is_production

    def test_environment_overrides(self, mocker):
        mocker.patch.dict(os.environ, {
            "ENVIRONMENT": "production",
            "SPECTRAL_THREADS": "4",
            "SPECTRAL_LAMBDA_MAX": "64",
            "SPECTRAL_OUTPUT_DIR": "/tmp/spectral",
        })
        cfg = Config.from_env()
        assert cfg.threads == 4
        assert cfg.use_threads
        assert cfg.lambda_max == 64.0
        assert cfg.output_dir == "/tmp/spectral"
        assert cfg.is_production

    def test_bad_values_fall_back(self, mocker):
        mocker.patch.dict(os.environ, {"SPECTRAL_THREADS": "many", "SPECTRAL_LAMBDA_STEP": "", "SPECTRAL_CACHE_SIZE": "1e3"})
        cfg = Config.from_env()
        assert cfg.threads == 1
        assert cfg.lambda_step == 0.05
        assert cfg.cache_size == 4096

    def test_threads_at_least_one(self, mocker):
        mocker.patch.dict(os.environ, {"SPECTRAL_THREADS": "0"})
        assert Config.from_env().threads == 1


class TestProjectionCache:
    def test_get_and_set(self):
        cache = InMemoryProjectionCache(max_entries=4)
        cache.set(("a", 1), 2 + 1j)
        assert cache.get(("a", 1)) == 2 + 1j
        assert cache.exists(("a", 1))
        assert cache.get(("b",)) is None

    def test_first_value_wins(self):
        cache = InMemoryProjectionCache(max_entries=4)
        cache.set("key", 1j)
        cache.set("key", 2j)
        assert cache.get("key") == 1j

    def test_eviction_is_oldest_first(self):
        cache = InMemoryProjectionCache(max_entries=2)
        cache.set_many({"a": 1, "b": 2, "c": 3})
        assert len(cache) == 2
        assert not cache.exists("a")
        assert cache.get_many(["a", "b", "c"]) == {"b": 2, "c": 3}

    def test_delete_and_clear(self):
        cache = InMemoryProjectionCache(max_entries=4)
        cache.set_many({"a": 1, "b": 2})
        cache.delete("a")
        cache.delete("missing")
        assert len(cache) == 1
        cache.clear()
        assert len(cache) == 0


class TestReportService:
    @pytest.mark.parametrize("value, expected", [
        (3, "3"),
        (np.int64(-2), "-2"),
        (True, "1"),
        (0.1, "0.10000000000000001"),
        (np.float64(1.5), "1.5"),
    ])
    def test_format_cell(self, value, expected):
        assert format_cell(value) == expected

    def test_csv_schema_header(self, tmp_path):
        reports = ReportService(str(tmp_path))
        path = reports.write_csv("density", "density-disk.csv", ["lambda", "ratio"], [(0.5, 1.25), (1, 2)])
        assert open(path).readline().strip() == "#schema=density.v1"
        schema, columns, rows = read_csv(path)
        assert schema == "density.v1"
        assert columns == ["lambda", "ratio"]
        assert rows == [["0.5", "1.25"], ["1", "2"]]

    def test_row_length_mismatch(self, tmp_path):
        with pytest.raises(ValueError):
            ReportService(str(tmp_path)).write_csv("density", "x.csv", ["a", "b"], [(1,)])

    def test_record_lists_itself(self, tmp_path):
        reports = ReportService(str(tmp_path / "nested"))
        record = ReportRecord("density", metrics={"gap": 1e-15}, tolerances={"gap": 1e-12})
        path = reports.write_record(record, "density-disk")
        assert path in record.artifacts
        data = json.loads(open(path).read())
        assert data["passed"] is True
        assert data["artifacts"] == [path]

    def test_summary(self, tmp_path):
        reports = ReportService(str(tmp_path))
        passing = ReportRecord("density")
        failing = ReportRecord("geometry", metrics={"mobius": 1.0}, tolerances={"mobius": 1e-10})
        path = reports.write_summary([passing, failing])
        summary = json.loads(open(path).read())
        assert summary["passed"] is False
        assert [r["experiment"] for r in summary["records"]] == ["density", "geometry"]
        assert summary["records"][1]["failures"] == ["mobius"]


@pytest.fixture
def service():
    return ExperimentService()


class TestExperimentService:
    def test_rejects_unknown_names(self, service):
        with pytest.raises(ValueError):
            service.register("fourier")
        with pytest.raises(ValueError):
            service.register("verify-all")

    def test_runs_a_handler(self, service, run_config):
        @service.register("density")
        def handler(ctx: ExperimentContext) -> ReportRecord:
            ctx.write_csv(["x"], [(1,)])
            return ctx.record({"gap": 0.5}, {"gap": 1.0})

        records = service.run(run_config("density"))
        assert len(records) == 1
        record = records[0]
        assert record.passed
        assert record.inputs["space"] == "disk"
        assert record.metrics["warnings"] == 0.0
        assert record.artifacts[0].endswith("density-disk.csv")
        assert record.artifacts[-1].endswith("density-disk.json")
        assert record.wall_time >= 0

    def test_numerical_errors_become_failing_records(self, service, run_config):
        @service.register("eigen")
        def handler(ctx):
            raise DomainError("not an eigenfunction")

        record = service.run(run_config("eigen"))[0]
        assert not record.passed
        assert record.error == "DomainError: not an eigenfunction"

    def test_unexpected_errors_become_failing_records(self, service, run_config):
        @service.register("eigen")
        def handler(ctx):
            raise ValueError("operands could not be broadcast together")

        record = service.run(run_config("eigen"))[0]
        assert not record.passed
        assert record.error == "ValueError: operands could not be broadcast together"

    def test_verify_all_continues_after_a_crash(self, service, run_config, tmp_path):
        @service.register("residue-sum", spaces=("disk",))
        def broken(ctx):
            raise IndexError("index 3 is out of bounds")

        @service.register("density", spaces=("disk",))
        def working(ctx):
            return ctx.record({"gap": 0.0}, {"gap": 1.0})

        records = service.run(run_config("verify-all"))
        assert [r.error for r in records] == ["IndexError: index 3 is out of bounds", None]
        assert records[1].passed
        summary = json.loads((tmp_path / "reports" / "summary.json").read_text())
        assert summary["passed"] is False

    def test_warnings_are_counted(self, service, run_config):
        @service.register("roundtrip")
        def handler(ctx):
            warnings.warn("tail too large", TruncationWarning)
            return ctx.record({})

        assert service.run(run_config("roundtrip"))[0].metrics["warnings"] == 1.0

    def test_overrides_replace_declared_bounds(self, service, run_config):
        @service.register("density")
        def handler(ctx):
            return ctx.record({"gap": 0.5}, {"gap": 0.1})

        record = service.run(run_config("density", tolerances={"gap": 1.0, "other": 2.0}))[0]
        assert record.tolerances == {"gap": 1.0}
        assert record.passed

    def test_space_fallback(self, service, run_config):
        @service.register("koornwinder", spaces=("na",))
        def handler(ctx):
            return ctx.record({})

        record = service.run(run_config("koornwinder", space="disk"))[0]
        assert record.inputs["space"] == "na"

    def test_unregistered_experiment(self, service, run_config):
        with pytest.raises(ConfigError):
            service.run(run_config("density"))

    def test_invalid_configuration(self, service, run_config):
        with pytest.raises(ConfigError):
            service.run(run_config("density", threads=0))

    def test_verify_all_runs_every_space(self, service, run_config, tmp_path):
        calls = []

        def handler(ctx):
            calls.append((ctx.name, ctx.space))
            return ctx.record({})

        service.register("density")(handler)
        service.register("residue-sum", spaces=("disk",))(handler)
        records = service.run(run_config("verify-all"))
        assert calls == [("residue-sum", "disk"), ("density", "disk"), ("density", "na")]
        assert len(records) == 3
        assert (tmp_path / "reports" / "summary.json").is_file()


def test_run_config_lambdas():
    cfg = RunConfig("spherical", lambda_min=0.5, lambda_max=1.5, lambda_step=0.5)
    np.testing.assert_array_equal(cfg.lambdas(), [0.5, 1.0, 1.5])
