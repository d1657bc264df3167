"""Flat-file formats: multiplicity CSV, comparison CSV, residue-error CSV, run manifest.

All CSV files use LF line endings, a fixed header and reals printed with
nine significant digits, so that equal inputs give byte-equal files.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .enumerator import TallyTable
from .errors import ParseError

MULT_HEADER = ("n", "mult", "ball")
COMPARE_HEADER = ("n", "mult", "heuristic", "singular", "ratio")
EQUI_HEADER = ("m", "largest_abs_error", "normalized_error")


def fmt_real(x: float) -> str:
    return f"{x:.9g}"


def atomic_write(path, data: str | bytes) -> Path:
    """Write to a temporary file in the target directory, then rename over ``path``."""
    path = Path(path)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"newline": "", "encoding": "utf-8"})) as fh:
            fh.write(data)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
    return path


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def mult_csv_text(tally: TallyTable) -> str:
    n = np.arange(2, tally.N + 1)
    rows = zip(n.tolist(), tally.mult[2:].tolist(), tally.ball[2:].tolist())
    return _csv_text(MULT_HEADER, rows)


def write_mult_csv(path, tally: TallyTable) -> Path:
    return atomic_write(path, mult_csv_text(tally))


def read_mult_csv(path) -> TallyTable:
    """Parse a multiplicity CSV back into a :class:`TallyTable`.

    Rows must run over ``n = 2, 3, ...`` without gaps and ``ball`` must be
    the running sum of ``mult``; anything else raises :class:`ParseError`
    naming the line.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file, expected header n,mult,ball", path, 1) from None
        if tuple(header) != MULT_HEADER:
            raise ParseError(f"bad header {','.join(header)!r}, expected n,mult,ball", path, 1)
        mult = [0, 0]
        running = 0
        for row in reader:
            line = reader.line_num
            if len(row) != 3:
                raise ParseError(f"expected 3 fields, got {len(row)}", path, line)
            try:
                n, m, b = (int(x) for x in row)
            except ValueError:
                raise ParseError(f"non-integer field in {row!r}", path, line) from None
            if n != len(mult):
                raise ParseError(f"expected n={len(mult)}, got n={n}", path, line)
            if m < 0:
                raise ParseError(f"negative multiplicity {m}", path, line)
            running += m
            if b != running:
                raise ParseError(f"ball {b} != running sum of mult {running}", path, line)
            mult.append(m)
    return TallyTable.from_mult(np.array(mult, dtype=np.int64))


def compare_csv_text(n, mult, heuristic, singular, ratio) -> str:
    rows = (
        (int(k), int(m), fmt_real(h), fmt_real(s), fmt_real(r))
        for k, m, h, s, r in zip(n, mult, heuristic, singular, ratio)
    )
    return _csv_text(COMPARE_HEADER, rows)


def equi_csv_text(table) -> str:
    rows = ((m, fmt_real(err), fmt_real(norm)) for m, err, norm in table)
    return _csv_text(EQUI_HEADER, rows)


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def manifest_path(out) -> Path:
    out = Path(out)
    return out.with_name(out.stem + ".manifest.json")


def write_manifest(path, *, command, alphabet=None, max_n=None, moduli=None,
                   window=None, threads=None, outputs=(), seconds=0.0, extra=None) -> Path:
    doc = {
        "command": command,
        "alphabet": alphabet,
        "max_n": max_n,
        "moduli": moduli,
        "window": window,
        "threads": threads,
        "outputs": [{"path": str(p), "sha256": sha256_file(p)} for p in outputs],
        "seconds": round(seconds, 6),
    }
    if extra:
        doc.update(extra)
    return atomic_write(path, json.dumps(doc, indent=2) + "\n")
