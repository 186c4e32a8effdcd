"""Text formats read and written by the command line.

Distribution inputs (auto-detected, or forced with ``fmt``):

* ``joint``: CSV triplets ``s_label,x_label,prob``; absent pairs are zero.
* ``conditional``: a ``#P_S`` block of ``s_label,prob`` lines, then a
  ``#P_X|S`` block whose first line is ``s,<x labels...>`` followed by one
  row of P_{X|S} per secret value.
* ``records``: CSV pairs ``s_label,x_label``, one per record.

A header row is recognized when its last field is not a number. Lines
starting with ``#`` are comments outside the conditional block markers.
Alphabets keep the order in which labels first appear.

Mechanism files are CSV quadruplets ``s_label,x_in_label,y_label,prob``
preceded by ``# key=value`` metadata lines.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from .dist import Alphabet, JointDistribution, from_conditional, from_joint
from .errors import EmptyInput, ParseError, UnknownLabel
from .nonmarkov import Mechanism
from .sanitize import Record, estimate_joint
from .utility import DistortionMatrix

FORMATS = ("auto", "joint", "conditional", "records")
MECHANISM_HEADER = ["s_label", "x_in_label", "y_label", "prob"]


def file_sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _is_number(field: str) -> bool:
    try:
        float(field)
    except ValueError:
        return False
    return True


def _number(field: str, where: str) -> float:
    try:
        v = float(field)
    except ValueError:
        raise ParseError(f"{where}: {field!r} is not a number") from None
    if not math.isfinite(v):
        raise ParseError(f"{where}: {field!r} is not finite")
    return v


def _rows(text: str) -> list[tuple[int, list[str]]]:
    """Non-blank, non-comment CSV rows with 1-based line numbers."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = [f.strip() for f in next(csv.reader([stripped]))]
        out.append((lineno, fields))
    return out


def _drop_header(rows):
    if rows and not _is_number(rows[0][1][-1]):
        return rows[1:]
    return rows


def _ordered(labels: Iterable[str]) -> list[str]:
    return list(dict.fromkeys(labels))


def detect_format(text: str) -> str:
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.replace(" ", "").upper().startswith("#P_S"):
            return "conditional"
        if stripped.startswith("#"):
            continue
        n = len(next(csv.reader([stripped])))
        if n == 3:
            return "joint"
        if n == 2:
            return "records"
        raise ParseError(f"cannot detect format from a line with {n} fields: {stripped!r}")
    raise ParseError("input is empty")


def parse_joint(text: str) -> JointDistribution:
    rows = _drop_header(_rows(text))
    if not rows:
        raise ParseError("no joint probability rows")
    entries = []
    for lineno, f in rows:
        if len(f) != 3:
            raise ParseError(f"line {lineno}: expected s_label,x_label,prob")
        entries.append((f[0], f[1], _number(f[2], f"line {lineno}")))
    s_labels = _ordered(e[0] for e in entries)
    x_labels = _ordered(e[1] for e in entries)
    s_ix = {v: i for i, v in enumerate(s_labels)}
    x_ix = {v: i for i, v in enumerate(x_labels)}
    p = np.zeros((len(s_labels), len(x_labels)))
    for s, x, v in entries:
        p[s_ix[s], x_ix[x]] += v
    return from_joint(s_labels, x_labels, p)


def parse_conditional(text: str) -> JointDistribution:
    section = None
    p_s: dict[str, float] = {}
    header: list[str] | None = None
    cond_rows: list[tuple[str, list[float]]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped:
            continue
        key = stripped.replace(" ", "").upper()
        if key.startswith("#P_S"):
            section = "p_s"
            continue
        if key.startswith("#P_X|S") or key.startswith("#P_X_S"):
            section = "cond"
            continue
        if stripped.startswith("#"):
            continue
        f = [v.strip() for v in next(csv.reader([stripped]))]
        if section == "p_s":
            if len(f) != 2:
                raise ParseError(f"line {lineno}: P_S lines are s_label,prob")
            p_s[f[0]] = _number(f[1], f"line {lineno}")
        elif section == "cond":
            if header is None and not _is_number(f[-1]):
                header = f[1:]
                continue
            if header is None:
                raise ParseError(f"line {lineno}: P_X|S block needs a header row of X labels")
            if len(f) != len(header) + 1:
                raise ParseError(f"line {lineno}: expected {len(header) + 1} fields")
            cond_rows.append((f[0], [_number(v, f"line {lineno}") for v in f[1:]]))
        else:
            raise ParseError(f"line {lineno}: data before a #P_S or #P_X|S marker")
    if not p_s or not cond_rows:
        raise ParseError("conditional format needs both #P_S and #P_X|S blocks")
    s_labels = [s for s, _ in cond_rows]
    if sorted(s_labels) != sorted(p_s) or len(set(s_labels)) != len(s_labels):
        raise ParseError("P_S labels and P_X|S row labels differ")
    return from_conditional(
        [row for _, row in cond_rows],
        [p_s[s] for s in s_labels],
        s_labels=Alphabet(s_labels),
        x_labels=Alphabet(header),
    )


def parse_records(text: str) -> list[Record]:
    rows = _rows(text)
    if rows and rows[0][1] in (["s", "x"], ["s_label", "x_label"]):
        rows = rows[1:]
    out = []
    for lineno, f in rows:
        if len(f) != 2:
            raise ParseError(f"line {lineno}: expected s_label,x_label")
        out.append(Record(f[0], f[1]))
    return out


def records_joint(records: list[Record]) -> JointDistribution:
    """Empirical joint with alphabets in first-appearance order."""
    if not records:
        raise EmptyInput("no records")
    s = Alphabet(_ordered(r.s for r in records))
    x = Alphabet(_ordered(r.x for r in records))
    return estimate_joint(records, s, x)


def load_joint(path, fmt: str = "auto") -> JointDistribution:
    text = _read_text(path)
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "joint":
        return parse_joint(text)
    if fmt == "conditional":
        return parse_conditional(text)
    if fmt == "records":
        return records_joint(parse_records(text))
    raise ParseError(f"unknown format {fmt!r}")


def read_records(path) -> list[Record]:
    return parse_records(_read_text(path))


def read_distortion(path, x_alphabet: Alphabet) -> DistortionMatrix:
    """Triplets ``x_in,x_out,cost``; diagonal pairs may be omitted."""
    rows = _drop_header(_rows(_read_text(path)))
    n = len(x_alphabet)
    d = np.full((n, n), np.nan)
    np.fill_diagonal(d, 0.0)
    for lineno, f in rows:
        if len(f) != 3:
            raise ParseError(f"line {lineno}: expected x_in,x_out,cost")
        d[x_alphabet.index(f[0]), x_alphabet.index(f[1])] = _number(f[2], f"line {lineno}")
    if np.isnan(d).any():
        i, k = np.argwhere(np.isnan(d))[0]
        raise ParseError(f"distortion missing pair ({x_alphabet[i]}, {x_alphabet[k]})")
    return DistortionMatrix(d)


def write_mechanism(stream: TextIO, m: Mechanism, metadata: dict) -> None:
    for key, value in metadata.items():
        stream.write(f"# {key}={value}\n")
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(MECHANISM_HEADER)
    for s, s_lab in enumerate(m.s_alphabet):
        for xi, x_lab in enumerate(m.x_alphabet):
            for xo, y_lab in enumerate(m.x_alphabet):
                w.writerow([s_lab, x_lab, y_lab, repr(float(m.tensor[s, xi, xo]))])


def format_mechanism(m: Mechanism, metadata: dict) -> str:
    buf = io.StringIO()
    write_mechanism(buf, m, metadata)
    return buf.getvalue()


def parse_mechanism(text: str) -> tuple[Mechanism, dict]:
    meta = {}
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("#") and "=" in stripped:
            key, _, value = stripped[1:].partition("=")
            meta[key.strip()] = value.strip()
    rows = _rows(text)
    if rows and rows[0][1] == MECHANISM_HEADER:
        rows = rows[1:]
    if not rows:
        raise ParseError("mechanism file has no entries")
    entries = []
    for lineno, f in rows:
        if len(f) != 4:
            raise ParseError(f"line {lineno}: expected s_label,x_in_label,y_label,prob")
        entries.append((f[0], f[1], f[2], _number(f[3], f"line {lineno}")))
    s_alph = Alphabet(_ordered(e[0] for e in entries))
    x_alph = Alphabet(_ordered([e[1] for e in entries] + [e[2] for e in entries]))
    tensor = np.zeros((len(s_alph), len(x_alph), len(x_alph)))
    for s, xi, xo, v in entries:
        tensor[s_alph.index(s), x_alph.index(xi), x_alph.index(xo)] = v
    alpha = float(meta["alpha"]) if "alpha" in meta else None
    return Mechanism(s_alph, x_alph, tensor, alpha=alpha, family=meta.get("family")), meta


def read_mechanism(path) -> tuple[Mechanism, dict]:
    return parse_mechanism(_read_text(path))


def check_records(records: list[Record], m: Mechanism) -> None:
    for i, r in enumerate(records, 1):
        for label, alph, name in ((r.s, m.s_alphabet, "S"), (r.x, m.x_alphabet, "X")):
            if label not in alph.labels:
                raise UnknownLabel(f"record {i}: {name} label {label!r} not in mechanism alphabet")
