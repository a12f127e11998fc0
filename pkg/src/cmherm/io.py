"""Serialisation of polynomial tables: JSON (the standard polynomial format),
CSV coefficient matrices and LaTeX."""
from __future__ import annotations

import csv
import io as _io
import json
import os
import tempfile

from .core import MultiPoly, default_names, grlex_key


def poly_to_json(p: MultiPoly, names=None) -> dict:
    return p.to_json_obj(names)


def poly_from_json(obj: dict) -> MultiPoly:
    return MultiPoly.from_json_obj(obj)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def atomic_write(path: str, text: str) -> None:
    """Write to a temporary file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def latex_poly(p: MultiPoly, names=None) -> str:
    if not p:
        return "0"
    names = names or default_names(p.nvars)
    pieces = []
    for e, c in p.sorted_terms():
        mono = "".join(
            n if k == 1 else f"{n}^{{{k}}}" if k > 9 else f"{n}^{k}"
            for n, k in zip(names, e)
            if k
        )
        mag = abs(c)
        if mono and mag == 1:
            coef = ""
        elif mag.denominator == 1:
            coef = str(mag)
        else:
            coef = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        pieces.append(("-" if c < 0 else "+", coef + mono))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def table_to_csv(rows: list) -> str:
    """rows: list of (label, MultiPoly, names). One row per entry, one column
    per monomial that occurs anywhere in the table."""
    exps = sorted({e for _, p, _ in rows for e in p.terms}, key=grlex_key, reverse=True)
    names = rows[0][2] if rows else []
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["label"] + [
        "*".join(f"{n}^{k}" for n, k in zip(names, e) if k) or "1" for e in exps
    ]
    writer.writerow(header)
    for label, p, _ in rows:
        writer.writerow([label] + [str(p.terms[e]) if e in p.terms else "0" for e in exps])
    return buf.getvalue()


def table_to_latex(rows: list) -> str:
    return ",\n".join(f"{label} = {latex_poly(p, names)}" for label, p, names in rows) + "\n"


def table_to_json(rows: list, extra=None) -> str:
    entries = []
    for i, (label, p, names) in enumerate(rows):
        entry = {"label": label, "poly": poly_to_json(p, names)}
        if extra is not None and extra[i]:
            entry.update(extra[i])
        entries.append(entry)
    return dumps({"entries": entries})
