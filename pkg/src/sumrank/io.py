"""Text and JSON formats: fields, codewords, code files, distribution tables, skew polynomials.

Code files are canonical: the basis is stored in RREF and the JSON is
written with sorted keys and fixed separators, so equal codes give
byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from sumrank.code import LinearCode
from sumrank.gf import Field, FieldTower
from sumrank.matspace import AmbientShape, Codeword, SupportElem

FORMAT_VERSION = 1


# ------------------------------------------------------------------ fields


def field_to_dict(F: Field) -> dict:
    return F.describe()


def field_from_dict(d: dict) -> Field:
    p = int(d["p"])
    if "modulus" not in d:
        if int(d.get("order", p)) != p:
            raise ValueError("extension field description needs a modulus")
        return Field(p)
    F = Field(p, Field(p), tuple(d["modulus"]))
    if "order" in d and F.order != int(d["order"]):
        raise ValueError(f"modulus gives GF({F.order}), description says {d['order']}")
    return F


def tower_to_dict(T: FieldTower) -> dict:
    return T.describe()


def tower_from_dict(d: dict) -> FieldTower:
    return FieldTower.from_description(d)


def shape_to_dict(shape: AmbientShape) -> dict:
    return {"m": list(shape.m_list), "n": list(shape.n_list)}


def shape_from_dict(d: dict) -> AmbientShape:
    m, n = d["m"], d["n"]
    return AmbientShape(m, n, strict=all(a >= b for a, b in zip(m, n)) and list(m) == sorted(m, reverse=True))


# --------------------------------------------------------------- codewords


def codeword_to_text(c: Codeword) -> str:
    """'ell;m_1,...;n_1,...;b_1|b_2|...' with each block row-major, codes comma separated."""
    s = c.shape
    blocks = "|".join(",".join(str(int(x)) for x in b.ravel()) for b in c.blocks)
    return f"{s.ell};{','.join(map(str, s.m_list))};{','.join(map(str, s.n_list))};{blocks}"


def codeword_from_text(text: str) -> Codeword:
    parts = text.strip().split(";")
    if len(parts) != 4:
        raise ValueError("codeword text needs four ';'-separated fields")
    ell = int(parts[0])
    m = [int(x) for x in parts[1].split(",")]
    n = [int(x) for x in parts[2].split(",")]
    raw = parts[3].split("|")
    if not (ell == len(m) == len(n) == len(raw)):
        raise ValueError("block count disagrees with the header")
    shape = AmbientShape(m, n, strict=False)
    blocks = []
    for b, mi, ni in zip(raw, m, n):
        vals = [int(x) for x in b.split(",")] if b else []
        if len(vals) != mi * ni:
            raise ValueError(f"block needs {mi * ni} entries, got {len(vals)}")
        blocks.append(np.array(vals, dtype=np.int64).reshape(mi, ni))
    return Codeword(shape, tuple(blocks))


# -------------------------------------------------------------- code files


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def code_to_dict(C: LinearCode, recipe: dict | None = None) -> dict:
    out = {
        "format": FORMAT_VERSION,
        "kind": "fq",
        "field": field_to_dict(C.field),
        "shape": shape_to_dict(C.shape),
        "basis": C.basis.tolist(),
    }
    if recipe is not None:
        out["recipe"] = recipe
    return out


def fqm_to_dict(C, recipe: dict | None = None) -> dict:
    out = {
        "format": FORMAT_VERSION,
        "kind": "fqm",
        "tower": tower_to_dict(C.tower),
        "partition": list(C.partition),
        "generator": C.G.tolist(),
    }
    if recipe is not None:
        out["recipe"] = recipe
    return out


def code_from_dict(d: dict):
    """LinearCode for kind 'fq', FqmCode for kind 'fqm'."""
    from sumrank.code import canonicalize
    from sumrank.fqm import FqmCode

    kind = d.get("kind")
    if kind == "fq":
        F = field_from_dict(d["field"])
        shape = shape_from_dict(d["shape"])
        basis = np.array(d["basis"], dtype=np.int64).reshape(-1, shape.dim)
        if basis.size and (basis.min() < 0 or basis.max() >= F.order):
            raise ValueError("basis entries out of field range")
        return canonicalize(F, shape, basis)
    if kind == "fqm":
        T = tower_from_dict(d["tower"])
        G = np.array(d["generator"], dtype=np.int64).reshape(-1, sum(d["partition"]))
        return FqmCode(T, tuple(d["partition"]), G)
    raise ValueError(f"unknown code kind {kind!r}")


def write_code(path, C, recipe: dict | None = None) -> str:
    from sumrank.fqm import FqmCode

    text = dumps(fqm_to_dict(C, recipe) if isinstance(C, FqmCode) else code_to_dict(C, recipe))
    Path(path).write_text(text)
    return text


def read_code(path):
    return code_from_dict(json.loads(Path(path).read_text()))


def read_recipe(path) -> dict | None:
    return json.loads(Path(path).read_text()).get("recipe")


def file_hash(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# ---------------------------------------------------------- distributions


def rank_list_table(W: dict) -> str:
    """One 'u_1,...,u_ell count' line per rank vector, sorted."""
    return "".join(f"{','.join(map(str, k))} {v}\n" for k, v in sorted(W.items()))


def parse_rank_list_table(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        if line.strip():
            key, val = line.split()
            out[tuple(int(x) for x in key.split(","))] = int(val)
    return out


def support_table(W: dict[SupportElem, int]) -> str:
    return "".join(f"{L.encode()} {c}\n" for L, c in sorted(W.items(), key=lambda kv: kv[0].encode()))


def sum_rank_table(counts: list[int]) -> str:
    return "".join(f"{w} {c}\n" for w, c in enumerate(counts) if c)


# ------------------------------------------------------- skew polynomials


def skew_to_list(f) -> list[int]:
    return list(f.coeffs)


def skew_from_list(tower: FieldTower, coeffs) -> object:
    from sumrank.skew import SkewPoly

    coeffs = [int(c) for c in coeffs]
    if any(not 0 <= c < tower.top.order for c in coeffs):
        raise ValueError("coefficient outside GF(q^m)")
    return SkewPoly(tower, tuple(coeffs))
