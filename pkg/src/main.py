"""Spectral projection toolkit - Main entry point."""
import logging
import sys
from typing import List, Optional

from src.config import config
from src.cli import handlers  # noqa: F401  (registers the experiments)
from src.cli.arguments import parse_args
from src.errors import ConfigError
from src.services.experiment_service import experiment_service

# Configure logging
logging.basicConfig(
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    level=getattr(logging, config.log_level.upper(), logging.INFO),
    handlers=[
        logging.StreamHandler(sys.stdout),
        logging.FileHandler("spectral_toolkit.log") if config.is_production else logging.NullHandler(),
    ],
)

logger = logging.getLogger(__name__)

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def main(argv: Optional[List[str]] = None) -> int:
    """Run one experiment (or verify-all) and return the process exit code.

    0 when every record passes, 1 when any record fails, 2 on invalid configuration.
    """
    logger.info("Starting spectral projection toolkit...")
    logger.info(f"Environment: {config.environment}")

    try:
        cfg = parse_args(argv)
        logger.info(f"Experiment: {cfg.experiment}, space: {cfg.space}, threads: {cfg.threads}")
        records = experiment_service.run(cfg)
    except ConfigError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_CONFIG

    failed = [r for r in records if not r.passed]
    for record in failed:
        logger.error(f"{record.experiment} failed: {record.error or ', '.join(record.failures)}")
    logger.info(f"{len(records) - len(failed)}/{len(records)} records passed")
    return EXIT_FAILED if failed else EXIT_PASSED


def run() -> None:
    """Console entry point."""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Stopped by user")
        sys.exit(EXIT_FAILED)
    except Exception as e:
        logger.exception(f"Toolkit crashed with error: {e}")
        sys.exit(EXIT_FAILED)


if __name__ == "__main__":
    run()
