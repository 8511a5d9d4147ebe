"""Atomic text output shared by the CSV/JSON writers."""

import os
import tempfile


def atomic_write_text(path: str, text: str) -> None:
    """Write through a temp file in the target directory, then rename.

    Readers never observe a half-written file; on failure the temp file
    is removed and the old content (if any) stays in place.
    """
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
