"""Experiment registry and runner."""
import logging
import time
import warnings
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence, Tuple

from src.errors import ConfigError
from src.models.reports import EXPERIMENTS, SPACES, ReportRecord, RunConfig
from src.services.report_service import ReportService

logger = logging.getLogger(__name__)


@dataclass
class ExperimentContext:
    """What a handler needs: the run configuration, the space it runs in and where to write."""

    config: RunConfig
    space: str
    reports: ReportService
    artifacts: List[str] = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.config.experiment

    @property
    def stem(self) -> str:
        return f"{self.name}-{self.space}"

    @property
    def threads(self) -> int:
        return self.config.threads

    def write_csv(self, columns: Sequence[str], rows, suffix: str = "") -> str:
        """Write ``<experiment>-<space><suffix>.csv`` and remember it as an artifact."""
        path = self.reports.write_csv(self.name, f"{self.stem}{suffix}.csv", columns, rows)
        self.artifacts.append(path)
        return path

    def record(self, metrics: Dict[str, float], tolerances: Dict[str, float] = None,
               minimums: Dict[str, float] = None) -> ReportRecord:
        inputs = self.config.to_dict()
        inputs["space"] = self.space
        return ReportRecord(
            experiment=self.name,
            inputs=inputs,
            metrics=dict(metrics),
            tolerances=dict(tolerances or {}),
            minimums=dict(minimums or {}),
            artifacts=list(self.artifacts),
        )


Handler = Callable[[ExperimentContext], ReportRecord]


@dataclass(frozen=True)
class Experiment:
    name: str
    handler: Handler
    spaces: Tuple[str, ...]


class ExperimentService:
    """Runs registered experiments and collects their records."""

    def __init__(self):
        self.experiments: Dict[str, Experiment] = {}

    def register(self, name: str, spaces: Sequence[str] = SPACES) -> Callable[[Handler], Handler]:
        """Decorator registering a handler under an experiment name."""
        if name not in EXPERIMENTS or name == "verify-all":
            raise ValueError(f"{name!r} is not a registrable experiment name")

        def decorator(handler: Handler) -> Handler:
            self.experiments[name] = Experiment(name, handler, tuple(spaces))
            return handler

        return decorator

    def space_for(self, name: str, requested: str) -> str:
        experiment = self.experiments[name]
        if requested in experiment.spaces:
            return requested
        logger.warning(f"Experiment {name} is not defined on {requested}; running it on {experiment.spaces[0]}")
        return experiment.spaces[0]

    def run_experiment(self, cfg: RunConfig, space: str, reports: ReportService) -> ReportRecord:
        """Run one experiment; any exception raised by the handler becomes a failing record."""
        experiment = self.experiments[cfg.experiment]
        context = ExperimentContext(cfg, space, reports)
        logger.info(f"Running {experiment.name} on {space}")
        start = time.perf_counter()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                record = experiment.handler(context)
            except Exception as e:
                logger.exception(f"Experiment {experiment.name} on {space} failed: {e}")
                record = context.record({})
                record.error = f"{type(e).__name__}: {e}"
        for warning in caught:
            logger.warning(f"{experiment.name} on {space}: {warning.category.__name__}: {warning.message}")
        record.metrics["warnings"] = float(len(caught))
        record.wall_time = time.perf_counter() - start
        record.apply_overrides(cfg.tolerances)
        reports.write_record(record, context.stem)
        status = "passed" if record.passed else f"FAILED ({', '.join(record.failures) or record.error})"
        logger.info(f"Finished {experiment.name} on {space} in {record.wall_time:.2f}s: {status}")
        return record

    def run(self, cfg: RunConfig) -> List[ReportRecord]:
        """Validate the configuration, run the experiment (or all of them) and write the summary.

        Raises:
            ConfigError: Invalid configuration or unregistered experiment.
        """
        cfg.validate()
        reports = ReportService(cfg.out)
        records = []
        if cfg.experiment == "verify-all":
            for name in EXPERIMENTS:
                if name not in self.experiments:
                    continue
                for space in self.experiments[name].spaces:
                    records.append(self.run_experiment(cfg.with_experiment(name), space, reports))
        else:
            if cfg.experiment not in self.experiments:
                raise ConfigError(f"experiment {cfg.experiment!r} is not registered")
            records.append(self.run_experiment(cfg, self.space_for(cfg.experiment, cfg.space), reports))
        reports.write_summary(records)
        return records


# Global experiment service instance
experiment_service = ExperimentService()
