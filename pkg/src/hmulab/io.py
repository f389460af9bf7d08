"""Polynomial CSV files (``index,re,im``) and block decompositions as JSON."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import DomainError
from .series import BlockDecomposition, PolyLike, TaylorPolynomial, as_poly

__all__ = ["write_poly_csv", "read_poly_csv", "blocks_to_json", "blocks_from_json"]


def write_poly_csv(f: PolyLike, path) -> None:
    f = as_poly(f)
    c = f.coeffs.astype(complex)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "re", "im"])
        for k, a in enumerate(c):
            w.writerow([k, repr(float(a.real)), repr(float(a.imag))])


def read_poly_csv(path) -> TaylorPolynomial:
    """Missing indices are zero; the result is real when every ``im`` is 0."""
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            try:
                rows.append((int(row["index"]), float(row["re"]), float(row.get("im") or 0.0)))
            except (KeyError, TypeError, ValueError) as exc:
                raise DomainError(f"{path}: bad row {row!r}") from exc
    if not rows:
        raise DomainError(f"{path}: no coefficients")
    if min(r[0] for r in rows) < 0:
        raise DomainError(f"{path}: negative index")
    c = np.zeros(max(r[0] for r in rows) + 1, dtype=complex)
    for k, re, im in rows:
        c[k] = complex(re, im)
    return TaylorPolynomial(c.real if not np.any(c.imag) else c)


def _pairs(c: np.ndarray) -> list:
    c = c.astype(complex)
    return [[float(a.real), float(a.imag)] for a in c]


def blocks_to_json(blocks: BlockDecomposition, path=None) -> str:
    """One JSON array per block, each entry ``[re, im]`` at its true index."""
    text = json.dumps([_pairs(b.coeffs) for b in blocks.blocks])
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def blocks_from_json(text_or_path) -> BlockDecomposition:
    p = Path(str(text_or_path))
    text = p.read_text(encoding="utf-8") if not str(text_or_path).lstrip().startswith("[") else text_or_path
    data = json.loads(text)
    blocks = []
    for b in data:
        c = np.array([complex(re, im) for re, im in b]) if b else np.zeros(1, dtype=complex)
        blocks.append(TaylorPolynomial(c.real if not np.any(c.imag) else c))
    return BlockDecomposition(tuple(blocks))
