"""On-disk cache of quasi-invariant bases, Gram matrices and dual bases.

Files are named qbasis_N{N}_m{m}_d{d}.json (a "_dunkl" suffix marks data for the
Dunkl pairing) and written atomically. The location is taken from the
CMHERM_CACHE environment variable, defaulting to ~/.cache/cmherm."""
from __future__ import annotations

import json
import os

from gmpy2 import mpq

from .core import MultiPoly
from .io import atomic_write, dumps

ENV_VAR = "CMHERM_CACHE"


def cache_root() -> str:
    return os.environ.get(ENV_VAR) or os.path.join(os.path.expanduser("~"), ".cache", "cmherm")


def entry_name(N: int, m: int, d: int, form: str = "canonical") -> str:
    suffix = "" if form == "canonical" else f"_{form}"
    return f"qbasis_N{N}_m{m}_d{d}{suffix}.json"


def entry_path(N: int, m: int, d: int, form: str = "canonical", root: str | None = None) -> str:
    return os.path.join(root or cache_root(), entry_name(N, m, d, form))


def encode_degree(N: int, m: int, d: int, phi00, data, form: str = "canonical") -> dict:
    names = [f"x{i + 1}" for i in range(N)]
    return {
        "N": N,
        "m": m,
        "degree": d,
        "form": form,
        "phi00": str(phi00),
        "basis": [q.to_json_obj(names) for q in data.basis],
        "gram": [[str(v) for v in row] for row in data.gram],
        "dual": [q.to_json_obj(names) for q in data.dual],
    }


def decode_degree(obj: dict):
    from .quasinv import DegreeData

    return DegreeData(
        [MultiPoly.from_json_obj(q) for q in obj["basis"]],
        [[mpq(v) for v in row] for row in obj["gram"]],
        [MultiPoly.from_json_obj(q) for q in obj["dual"]],
    )


def load(N: int, m: int, d: int, form: str = "canonical", root: str | None = None):
    path = entry_path(N, m, d, form, root)
    if not os.path.exists(path):
        return None
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    return mpq(obj["phi00"]), decode_degree(obj)


def store(N: int, m: int, d: int, phi00, data, form: str = "canonical", root: str | None = None) -> str:
    path = entry_path(N, m, d, form, root)
    atomic_write(path, dumps(encode_degree(N, m, d, phi00, data, form)))
    return path


def status(root: str | None = None) -> list:
    root = root or cache_root()
    if not os.path.isdir(root):
        return []
    return sorted(f for f in os.listdir(root) if f.startswith("qbasis_") and f.endswith(".json"))


def clear(root: str | None = None) -> int:
    root = root or cache_root()
    removed = 0
    for name in status(root):
        os.unlink(os.path.join(root, name))
        removed += 1
    return removed


def warm(instances, dmax: int, root: str | None = None, form: str = "canonical") -> list:
    """Build and store every (N, m) instance up to degree dmax."""
    from .quasinv import GradedBasis

    written = []
    for N, m in instances:
        gb = GradedBasis.build((N, m), 0, form=form, cache_root=root or cache_root())
        for d in range(dmax + 1):
            gb.ensure(d)
            written.append(entry_name(N, m, d, form))
    return written
