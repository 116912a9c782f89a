"""JSON wire format for states, channels and catalysis plans.

Complex entries are ``[re, im]`` pairs (plain numbers are read as real);
matrices are row-major nested lists.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from catrand.bipartite import BipartiteState
from catrand.catalysis import CatalysisPlan
from catrand.channels import QuantumChannel
from catrand.errors import DimensionError, ParseError
from catrand.states import DensityOperator


def encode_complex(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def encode_matrix(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    return [[encode_complex(x) for x in row] for row in m]


def decode_matrix(obj: Any) -> np.ndarray:
    try:
        rows = []
        for row in obj:
            out = []
            for x in row:
                if isinstance(x, (list, tuple)):
                    if len(x) != 2:
                        raise ParseError(f"complex entry must be [re, im], got {x!r}")
                    out.append(complex(float(x[0]), float(x[1])))
                else:
                    out.append(complex(float(x)))
            rows.append(out)
        m = np.array(rows, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix: {exc}") from exc
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParseError(f"matrix must be square, got shape {m.shape}")
    return m


def read_json(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    return doc


def write_json(path, doc: dict):
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")


def _require(doc: dict, key: str, path):
    if key not in doc:
        raise ParseError(f"{path}: missing field {key!r}")
    return doc[key]


def _sectors(v):
    return None if v is None else tuple(int(x) for x in v)


def state_from_doc(doc: dict, path="<state>") -> DensityOperator:
    m = decode_matrix(_require(doc, "matrix", path))
    dim = int(doc.get("dim", m.shape[0]))
    if dim != m.shape[0]:
        raise DimensionError(f"{path}: dim {dim} but matrix is {m.shape[0]} x {m.shape[0]}")
    return DensityOperator(m, _sectors(doc.get("sectors")))


def load_state(path) -> DensityOperator:
    return state_from_doc(read_json(path), path)


def load_bipartite(path, dim_a=None, dim_b=None) -> BipartiteState:
    """State file read as a bipartite state; flags override ``dim_a``/``dim_b`` stored in the file."""
    doc = read_json(path)
    rho = state_from_doc({k: v for k, v in doc.items() if k != "sectors"}, path)
    da = dim_a or doc.get("dim_a")
    db = dim_b or doc.get("dim_b")
    if da is None and db is None:
        raise DimensionError(f"{path}: give --dim-a/--dim-b or dim_a/dim_b in the file")
    if da is None:
        da = rho.dim // int(db)
    if db is None:
        db = rho.dim // int(da)
    return BipartiteState(rho, int(da), int(db), _sectors(doc.get("sectors_a")), _sectors(doc.get("sectors_b")))


def state_doc(rho: DensityOperator, **extra) -> dict:
    doc = {"dim": rho.dim, "matrix": encode_matrix(rho.matrix)}
    if rho.ssr is not None:
        doc["sectors"] = list(rho.ssr.sector_dims)
    doc.update(extra)
    return doc


def load_channel(path) -> QuantumChannel:
    doc = read_json(path)
    d_in = int(_require(doc, "dim_in", path))
    d_out = int(_require(doc, "dim_out", path))
    has_k, has_c = "kraus" in doc, "choi" in doc
    if has_k == has_c:
        raise ParseError(f"{path}: give exactly one of 'kraus' or 'choi'")
    kw = dict(ssr_in=_sectors(doc.get("sectors_in")), ssr_out=_sectors(doc.get("sectors_out")),
              subchannel=bool(doc.get("subchannel", False)))
    if has_k:
        ks = []
        for k in doc["kraus"]:
            try:
                arr = np.array([[complex(*x) if isinstance(x, (list, tuple)) else complex(x) for x in row] for row in k])
            except (TypeError, ValueError) as exc:
                raise ParseError(f"{path}: malformed Kraus operator ({exc})") from exc
            if arr.shape != (d_out, d_in):
                raise DimensionError(f"{path}: Kraus operator of shape {arr.shape}, expected {(d_out, d_in)}")
            ks.append(arr)
        return QuantumChannel(d_in, d_out, tuple(ks), **kw)
    return QuantumChannel(d_in, d_out, None, decode_matrix(doc["choi"]), **kw)


def channel_doc(ch: QuantumChannel, use_choi: bool = False) -> dict:
    doc = {"dim_in": ch.dim_in, "dim_out": ch.dim_out}
    if use_choi or ch.kraus is None:
        doc["choi"] = encode_matrix(ch.choi)
    else:
        doc["kraus"] = [[[encode_complex(x) for x in row] for row in k] for k in ch.kraus]
    if ch.ssr_in is not None:
        doc["sectors_in"] = list(ch.ssr_in.sector_dims)
    if ch.ssr_out is not None:
        doc["sectors_out"] = list(ch.ssr_out.sector_dims)
    if ch.subchannel:
        doc["subchannel"] = True
    return doc


def plan_doc(plan: CatalysisPlan) -> dict:
    a0, b0, a1, b1 = plan.dims
    return {"u0": encode_matrix(plan.u0), "u1": encode_matrix(plan.u1),
            "dims": {"dim_a0": a0, "dim_b0": b0, "dim_a1": a1, "dim_b1": b1},
            "target_prep": plan.target_prep}


def load_plan(path) -> CatalysisPlan:
    doc = read_json(path)
    dims = _require(doc, "dims", path)
    try:
        d = (int(dims["dim_a0"]), int(dims["dim_b0"]), int(dims["dim_a1"]), int(dims["dim_b1"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed dims ({exc})") from exc
    return CatalysisPlan(decode_matrix(_require(doc, "u0", path)), decode_matrix(_require(doc, "u1", path)), d,
                         doc.get("target_prep", "zero"))
