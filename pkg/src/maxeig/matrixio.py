"""Matrix file format: a small JSON schema for dense, dense-complex and
tridiagonal inputs.

The file is a single UTF-8 JSON object with a ``kind`` discriminator:

- ``{"kind": "dense", "rows": [[...], ...]}`` - real square matrix,
- ``{"kind": "dense_complex", "rows": [[[re, im], ...], ...]}`` - complex
  entries as two-element arrays,
- ``{"kind": "tridiagonal", "a": [...], "b": [...], "c": [...]}`` - the
  coefficient triple of a tridiagonal generator (``c`` optional).

Floats are written by json's round-trip repr, so save/load is bit-exact.
"""

import json

import numpy as np

from .errors import MatrixFileError
from .tridiag import TridiagonalQ

KINDS = ("dense", "dense_complex", "tridiagonal")


def _fail(msg):
    raise MatrixFileError(msg)


def _as_number(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        _fail(f"expected a number at {where}, got {json.dumps(x)}")
    return float(x)


def _as_number_list(obj, where):
    if not isinstance(obj, list) or not obj:
        _fail(f"expected a nonempty array at {where}")
    return [_as_number(x, f"{where}[{i}]") for i, x in enumerate(obj)]


def _parse_dense(doc):
    rows = doc.get("rows")
    if not isinstance(rows, list) or not rows:
        _fail('expected a nonempty "rows" array')
    n = len(rows)
    data = []
    for i, row in enumerate(rows):
        vals = _as_number_list(row, f"rows[{i}]")
        if len(vals) != n:
            _fail(f"rows[{i}] has {len(vals)} entries, expected {n}")
        data.append(vals)
    return np.array(data)


def _parse_dense_complex(doc):
    rows = doc.get("rows")
    if not isinstance(rows, list) or not rows:
        _fail('expected a nonempty "rows" array')
    n = len(rows)
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            _fail(f"rows[{i}] must be an array of {n} [re, im] pairs")
        for j, pair in enumerate(row):
            if not isinstance(pair, list) or len(pair) != 2:
                _fail(f"rows[{i}][{j}] must be an [re, im] pair, got {json.dumps(pair)}")
            re = _as_number(pair[0], f"rows[{i}][{j}][0]")
            im = _as_number(pair[1], f"rows[{i}][{j}][1]")
            out[i, j] = complex(re, im)
    return out


def _parse_tridiagonal(doc):
    a = _as_number_list(doc.get("a"), '"a"')
    b = _as_number_list(doc.get("b"), '"b"')
    c = doc.get("c")
    if c is not None:
        c = _as_number_list(c, '"c"')
    try:
        return TridiagonalQ(a=np.array(a), b=np.array(b), c=None if c is None else np.array(c))
    except ValueError as exc:
        _fail(f"invalid tridiagonal coefficients: {exc}")


def load_matrix(path):
    """Read a matrix file; raises MatrixFileError naming the first bad token."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        bad = text[exc.pos : exc.pos + 12] or "<end of file>"
        _fail(f"invalid JSON at line {exc.lineno} column {exc.colno}: near {bad!r}")
    if not isinstance(doc, dict):
        _fail("top-level value must be an object")
    kind = doc.get("kind")
    if kind not in KINDS:
        _fail(f'"kind" must be one of {"|".join(KINDS)}, got {json.dumps(kind)}')
    if kind == "dense":
        return _parse_dense(doc)
    if kind == "dense_complex":
        return _parse_dense_complex(doc)
    return _parse_tridiagonal(doc)


def save_matrix(obj, path):
    """Write a matrix or TridiagonalQ; the file reloads bit-exactly."""
    if isinstance(obj, TridiagonalQ):
        doc = {
            "kind": "tridiagonal",
            "a": obj.a.tolist(),
            "b": obj.b.tolist(),
            "c": obj.c.tolist(),
        }
    else:
        m = np.asarray(obj)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if np.iscomplexobj(m):
            doc = {
                "kind": "dense_complex",
                "rows": [[[z.real, z.imag] for z in row] for row in m],
            }
        else:
            doc = {"kind": "dense", "rows": m.tolist()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")
