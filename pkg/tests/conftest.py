"""Pytest configuration and fixtures."""

from collections.abc import Generator

import pytest

from src.core.config import Settings, get_settings
from src.core.intervals import PrecisionConfig
from src.core.sharding import ShardConfig
from src.services.bennett_service import BennettService
from src.services.cfrac_service import ContinuedFractionService
from src.services.chain_service import ChainEngine
from src.services.scan_service import ScanService


@pytest.fixture(autouse=True)
def clear_settings_cache() -> Generator[None, None, None]:
    """Drop cached settings before and after every test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def test_settings() -> Settings:
    """Provide in-process settings with a single worker.

    Returns:
        Settings: Test configuration settings.
    """
    return Settings(jobs=1, shards_per_job=3)


@pytest.fixture
def precision() -> PrecisionConfig:
    """Precision schedule large enough for every certificate in the tests."""
    return PrecisionConfig(start_bits=128, cap_bits=2048)


@pytest.fixture
def shards() -> ShardConfig:
    """Single-process sharding with several shards, so merge order is exercised."""
    return ShardConfig(jobs=1, shards_per_job=3)


@pytest.fixture
def chain_engine() -> ChainEngine:
    """Chain engine with the default valuation cap."""
    return ChainEngine(valuation_cap=64)


@pytest.fixture
def bennett_service(precision: PrecisionConfig) -> BennettService:
    """Bennett service on the test precision schedule."""
    return BennettService(precision)


@pytest.fixture
def cfrac_service(shards: ShardConfig) -> ContinuedFractionService:
    """Continued-fraction service running in-process."""
    return ContinuedFractionService(shards)


@pytest.fixture
def scan_service(chain_engine: ChainEngine, shards: ShardConfig) -> ScanService:
    """Scan service running in-process."""
    return ScanService(chain_engine, shards, valuation_cap=64)
