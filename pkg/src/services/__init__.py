"""Computation services."""

from src.services.bennett_service import BennettService
from src.services.cfrac_service import ContinuedFractionService
from src.services.chain_service import ChainEngine
from src.services.scan_service import ScanService

__all__ = [
    "BennettService",
    "ChainEngine",
    "ContinuedFractionService",
    "ScanService",
]
