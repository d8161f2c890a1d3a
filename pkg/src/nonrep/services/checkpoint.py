"""Append-only checkpoint files for resumable searches."""

import json
import logging
from pathlib import Path
from typing import Any, Generic, TypeVar

from pydantic import BaseModel, ValidationError

from nonrep.utils.errors import CheckpointMismatchError

logger = logging.getLogger(__name__)

FrameT = TypeVar("FrameT", bound=BaseModel)


class CheckpointLog(Generic[FrameT]):
    """
    Newline-delimited JSON log of completed search branches.

    The first line is a header naming the search parameters; every following line
    is one frame. Only the searching process writes to the file.
    """

    def __init__(self, path: Path, header: dict[str, Any], frame_type: type[FrameT]):
        """
        Initialize the CheckpointLog.

        Args:
            path: Location of the checkpoint file.
            header: Search parameters; a resumed file must carry the same header.
            frame_type: Model used to parse frames.
        """
        self.path = Path(path)
        self.header = header
        self.frame_type = frame_type

    def open(self, resume: bool) -> list[FrameT]:
        """
        Prepare the file for appending.

        Args:
            resume: Keep an existing file and return its frames; otherwise start
                a new file containing only the header.

        Returns:
            The frames already recorded (empty unless resuming).

        Raises:
            CheckpointMismatchError: If the existing file belongs to another search.
        """
        if resume and self.path.exists():
            return self._read()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "w") as f:
            f.write(json.dumps(self.header, sort_keys=True) + "\n")
        return []

    def append(self, frame: FrameT) -> None:
        """Write one frame and flush it to disk."""
        with open(self.path, "a") as f:
            f.write(frame.model_dump_json() + "\n")
            f.flush()

    def _read(self) -> list[FrameT]:
        lines = self.path.read_text().splitlines()
        if not lines:
            raise CheckpointMismatchError(f"checkpoint {self.path} is empty")
        try:
            header = json.loads(lines[0])
        except json.JSONDecodeError:
            raise CheckpointMismatchError(f"checkpoint {self.path} has no header") from None
        if header != self.header:
            raise CheckpointMismatchError(
                f"checkpoint {self.path} was written for {header}, not {self.header}"
            )

        frames: list[FrameT] = []
        for number, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            try:
                frames.append(self.frame_type.model_validate_json(line))
            except ValidationError:
                # a crash can leave a torn last line
                logger.warning("skipping unreadable frame on line %d of %s", number, self.path)
        logger.info("resuming from %d recorded branches in %s", len(frames), self.path)
        return frames
