"""JSON encoding and parsing for exact rational-complex data.

Rationals travel as strings "p/q" on the exact path (or IEEE doubles on
the float path), complex scalars as two-element arrays [re, im], and
matrices as row-major nested arrays.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exact import QC, QCMat


class SchemaError(ValueError):
    pass


def rat_to_json(x, exact=True):
    f = Fraction(x)
    if not exact:
        return float(f)
    if f.denominator == 1:
        return int(f.numerator)
    return f"{int(f.numerator)}/{int(f.denominator)}"


def qc_to_json(z: QC, exact=True):
    return [rat_to_json(z.re, exact), rat_to_json(z.im, exact)]


def mat_to_json(m: QCMat, exact=True):
    if m.is_real():
        return [[rat_to_json(m[i, j].re, exact) for j in range(m.cols)]
                for i in range(m.rows)]
    return [[qc_to_json(m[i, j], exact) for j in range(m.cols)]
            for i in range(m.rows)]


def parse_rat(v, path="value") -> Fraction:
    if isinstance(v, bool):
        raise SchemaError(f"{path}: expected a rational, got a boolean")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10 ** 12)
    if isinstance(v, str):
        try:
            if "/" in v:
                num, den = v.split("/")
                return Fraction(int(num), int(den))
            return Fraction(int(v))
        except (ValueError, ZeroDivisionError) as e:
            raise SchemaError(f"{path}: malformed rational {v!r}") from e
    raise SchemaError(f"{path}: cannot read a rational from {v!r}")


def parse_qc(v, path="value") -> QC:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise SchemaError(f"{path}: complex scalar needs [re, im]")
        return QC(parse_rat(v[0], f"{path}[0]"), parse_rat(v[1], f"{path}[1]"))
    return QC(parse_rat(v, path))


def parse_matrix(v, path="matrix") -> QCMat:
    if not isinstance(v, list) or not v or not isinstance(v[0], list):
        raise SchemaError(f"{path}: expected a nested array")
    try:
        return QCMat([[parse_qc(x, f"{path}[{i}][{j}]")
                       for j, x in enumerate(row)]
                      for i, row in enumerate(v)])
    except ValueError as e:
        raise SchemaError(f"{path}: {e}") from e


def parse_int_matrix(v, path="matrix"):
    m = parse_matrix(v, path)
    out = []
    for i in range(m.rows):
        row = []
        for j in range(m.cols):
            e = m[i, j]
            f = Fraction(e.re)
            if e.im != 0 or f.denominator != 1:
                raise SchemaError(f"{path}[{i}][{j}]: expected an integer")
            row.append(int(f.numerator))
        out.append(tuple(row))
    return tuple(out)


def parse_vector(v, n, path="vector"):
    if not isinstance(v, list) or len(v) != n:
        raise SchemaError(f"{path}: expected a length-{n} array")
    return tuple(parse_rat(x, f"{path}[{i}]") for i, x in enumerate(v))


def load_document(source: str):
    """Read a JSON document from a path, or stdin when source is '-'."""
    import sys
    try:
        if source == "-":
            return json.load(sys.stdin)
        with open(source) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from e
    except OSError as e:
        raise SchemaError(f"cannot read {source}: {e}") from e
