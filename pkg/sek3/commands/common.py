"""Helpers shared by the subcommands: exit codes, JSON-lines input, CSV output."""
import contextlib
import sys
from pathlib import Path
from typing import Iterator, Optional, TextIO, Type, TypeVar

from pydantic import BaseModel, ValidationError

from sek3.core.errors import DimensionMismatchError, MalformedElementError, Sek3Error
from sek3.lie.group import GroupElement
from sek3.schemas.group import GroupElementRecord

EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_USAGE = 2
EXIT_DIMENSION = 3
EXIT_RANK_DEFICIENT = 4
EXIT_NON_DECREASING = 5

Record = TypeVar("Record", bound=BaseModel)


class InputFileError(Sek3Error, ValueError):
    def __init__(self, path, line: Optional[int], message: str):
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


def _decode(raw: bytes, path, line: Optional[int]) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputFileError(path, line, f"not valid UTF-8: byte {exc.start} ({exc.reason})") from exc


def read_jsonl(path, model: Type[Record]) -> list[tuple[int, Record]]:
    """Parse every non-blank line of ``path`` as ``model``; returns ``(line number, record)`` pairs."""
    records = []
    with open(path, "rb") as f:
        for lineno, raw in enumerate(f, start=1):
            line = _decode(raw, path, lineno)
            if not line.strip():
                continue
            try:
                records.append((lineno, model.model_validate_json(line)))
            except ValidationError as exc:
                first = exc.errors()[0]
                loc = ".".join(str(part) for part in first.get("loc", ()))
                detail = f"{loc}: {first['msg']}" if loc else first["msg"]
                raise InputFileError(path, lineno, detail) from exc
    return records


def load_initial(path, k: int) -> GroupElement:
    """``--initial`` file (one GroupElementRecord as JSON), or the identity when ``path`` is None."""
    if path is None:
        return GroupElement.identity(k)
    try:
        record = GroupElementRecord.model_validate_json(_decode(Path(path).read_bytes(), path, None))
    except ValidationError as exc:
        raise InputFileError(path, None, f"not a group element record: {exc.errors()[0]['msg']}") from exc
    if record.k != k:
        raise DimensionMismatchError(f"initial element has K={record.k}, --k is {k}")
    try:
        return record.to_element()
    except MalformedElementError as exc:
        raise InputFileError(path, None, str(exc)) from exc


@contextlib.contextmanager
def open_output(path) -> Iterator[TextIO]:
    if path is None or str(path) == "-":
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        yield f


def fmt(x: float) -> str:
    return format(float(x), ".17g")
