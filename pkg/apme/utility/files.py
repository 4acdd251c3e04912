from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Union
import tempfile
import json
import os

import pandas as pd

from ..exceptions import DataFileError, SchemaError

PathLike = Union[str, "os.PathLike[str]"]


@contextmanager
def atomic_path(path: PathLike) -> Iterator[Path]:
    """
    Yields a temporary sibling path that replaces `path` only when the block exits cleanly.
    """

    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(
            prefix=f".{target.name}.", suffix=".tmp", dir=target.parent
        )
        os.close(fd)
    except OSError as e:
        raise DataFileError(str(path), e.strerror or str(e))

    tmp = Path(tmp_name)
    try:
        yield tmp
        os.replace(tmp, target)
    except OSError as e:
        raise DataFileError(str(path), e.strerror or str(e))
    finally:
        if tmp.exists():
            tmp.unlink()


def write_frame(frame: pd.DataFrame, path: PathLike) -> None:
    with atomic_path(path) as tmp:
        frame.to_csv(tmp, index=False, lineterminator="\n", encoding="utf-8")


def write_json(document: Any, path: PathLike) -> None:
    with atomic_path(path) as tmp:
        tmp.write_text(dumps(document) + "\n", encoding="utf-8")


def dumps(document: Any) -> str:
    return json.dumps(document, indent=2, allow_nan=False)


def read_frame(path: PathLike, **kwargs) -> pd.DataFrame:
    try:
        return pd.read_csv(
            path, dtype=str, keep_default_na=False, encoding="utf-8", **kwargs
        )
    except FileNotFoundError:
        raise DataFileError(str(path), "no such file")
    except pd.errors.EmptyDataError:
        return pd.DataFrame()
    except (OSError, UnicodeDecodeError) as e:
        raise DataFileError(str(path), str(e))


def read_json(path: PathLike) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DataFileError(str(path), "no such file")
    except json.JSONDecodeError as e:
        raise SchemaError(f"'{path}' is not valid JSON: {e.msg} (line {e.lineno})")
    except OSError as e:
        raise DataFileError(str(path), e.strerror or str(e))
