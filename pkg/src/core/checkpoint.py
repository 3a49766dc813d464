"""JSON checkpoint files keyed by a parameter fingerprint."""

import json
import logging
import os
from hashlib import sha256
from pathlib import Path
from typing import Any, Generic, TypeVar

from pydantic import BaseModel, ValidationError

from src.core.errors import InvalidInputError

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


def parameter_fingerprint(parameters: dict[str, Any]) -> str:
    """Generate a deterministic key from scan parameters.

    Args:
        parameters: JSON-serializable parameters.

    Returns:
        A hash string identifying the parameter set.
    """
    json_str = json.dumps(parameters, sort_keys=True)
    return sha256(json_str.encode()).hexdigest()[:16]


class CheckpointStore(Generic[M]):
    """Load and atomically replace one checkpoint file."""

    def __init__(self, path: Path, model: type[M]) -> None:
        """Initialize the store.

        Args:
            path: Checkpoint file location.
            model: Pydantic model the file holds; it must have a `fingerprint` field.
        """
        self.path = path
        self.model = model

    def load(self, fingerprint: str) -> M | None:
        """Load the checkpoint if it exists.

        Returns:
            The stored model, or None when there is no file.

        Raises:
            InvalidInputError: The file is unreadable or belongs to other parameters.
        """
        if not self.path.exists():
            logger.debug("No checkpoint at %s", self.path)
            return None
        try:
            state = self.model.model_validate_json(self.path.read_text())
        except ValidationError as e:
            raise InvalidInputError(f"Unreadable checkpoint {self.path}: {e.error_count()} errors") from e
        stored = getattr(state, "fingerprint", None)
        if stored != fingerprint:
            raise InvalidInputError(
                f"Checkpoint {self.path} was written for other parameters ({stored} != {fingerprint})"
            )
        logger.info("Resuming from checkpoint %s", self.path)
        return state

    def save(self, state: M) -> None:
        """Write the checkpoint through a temporary file and rename it into place."""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(state.model_dump_json())
        os.replace(tmp, self.path)
