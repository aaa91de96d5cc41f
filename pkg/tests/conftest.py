import logging

import numpy as np
import pytest
import structlog

from src.models.graph import Graph


def _configure_structlog():
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        # CLI tests reconfigure structlog, so loggers must not be cached
        cache_logger_on_first_use=False,
    )


@pytest.fixture(autouse=True, scope="session")
def configure_logging():
    # Configure logging for tests to use the console renderer instead of JSON
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    _configure_structlog()

    formatter = structlog.stdlib.ProcessorFormatter(
        processor=structlog.dev.ConsoleRenderer(),
    )
    root_logger = logging.getLogger()
    handler = logging.StreamHandler()
    handler.setFormatter(formatter)
    root_logger.addHandler(handler)


@pytest.fixture(autouse=True)
def restore_logging():
    yield
    _configure_structlog()


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def random_graph(n: int, density: float, rng) -> Graph:
    """G(n, p) sample with a numpy generator"""
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < density]
    return Graph.from_edges(n, edges)


@pytest.fixture
def k4_minus_edge():
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
