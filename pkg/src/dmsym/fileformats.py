"""JSON encodings for kernels and symmetry generators.

Complex numbers are ``[re, im]`` pairs (a bare real is also accepted).
Matrices are nested row-major lists.

Kernel::

    {"dim": d, "form": "choi" | "transfer" | "kraus", "data": ...}

``data`` is a ``d^2 x d^2`` matrix for choi/transfer and a list of ``d x d``
matrices for kraus.

Generator::

    {"dim": d, "r_dim": r, "T": [r matrices], "structure_constants": r x r x r reals,
     "noise": [[{"delta": real, "u": matrix}, ...] for each unit direction]}
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import channels as ch
from . import generators as gen

KERNEL_FORMS = ("choi", "transfer", "kraus")


class FormatError(ValueError):
    """Input file is unreadable or does not follow the documented layout."""


def _number(x, where: str) -> complex:
    if isinstance(x, bool):
        raise FormatError(f"{where}: expected a number, got a boolean")
    if isinstance(x, (int, float)):
        z = complex(x)
    elif isinstance(x, list) and len(x) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in x
    ):
        z = complex(x[0], x[1])
    else:
        raise FormatError(f"{where}: expected a number or [re, im] pair, got {x!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise FormatError(f"{where}: non-finite value")
    return z


def decode_matrix(data, rows: int, cols: int, where: str = "matrix") -> np.ndarray:
    if not isinstance(data, list) or len(data) != rows:
        raise FormatError(f"{where}: expected {rows} rows")
    out = np.zeros((rows, cols), dtype=complex)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise FormatError(f"{where}: row {i} should have {cols} entries")
        for j, x in enumerate(row):
            out[i, j] = _number(x, f"{where}[{i}][{j}]")
    return out


def encode_matrix(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def _field(obj, name: str, kind):
    if not isinstance(obj, dict):
        raise FormatError("top level must be a JSON object")
    if name not in obj:
        raise FormatError(f"missing field {name!r}")
    val = obj[name]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool) or val < 1):
        raise FormatError(f"field {name!r} must be a positive integer")
    if kind is list and not isinstance(val, list):
        raise FormatError(f"field {name!r} must be a list")
    return val


def _read_json(source):
    if isinstance(source, dict):
        return source
    try:
        text = Path(source).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def kernel_from_dict(obj) -> ch.Kernel:
    d = _field(obj, "dim", int)
    if d > ch.MAX_DIM:
        raise FormatError(f"dim {d} exceeds the supported maximum {ch.MAX_DIM}")
    form = _field(obj, "form", str)
    data = _field(obj, "data", list)
    if form not in KERNEL_FORMS:
        raise FormatError(f"form must be one of {KERNEL_FORMS}, got {form!r}")
    if form == "kraus":
        if not data:
            raise FormatError("kraus data must hold at least one matrix")
        ops = [decode_matrix(m, d, d, f"data[{i}]") for i, m in enumerate(data)]
        return ch.kraus(ops)
    m = decode_matrix(data, d * d, d * d, "data")
    return ch.Kernel(m) if form == "choi" else ch.Kernel.from_transfer(m)


def load_kernel(source) -> tuple[ch.Kernel, ch.ValidationReport]:
    """Read a kernel file (or already-parsed dict) and validate it."""
    k = kernel_from_dict(_read_json(source))
    return k, ch.validate(k)


def kernel_to_dict(k: ch.Kernel, form: str = "choi") -> dict:
    if form == "choi":
        data = encode_matrix(k.choi)
    elif form == "transfer":
        data = encode_matrix(k.transfer)
    elif form == "kraus":
        data = [encode_matrix(a) for a in ch.to_kraus(k)]
    else:
        raise ValueError(f"unknown form {form!r}")
    return {"dim": k.d, "form": form, "data": data}


def generator_from_dict(obj) -> gen.SymmetryGenerator:
    d = _field(obj, "dim", int)
    r = _field(obj, "r_dim", int)
    t_data = _field(obj, "T", list)
    c_data = _field(obj, "structure_constants", list)
    noise_data = _field(obj, "noise", list)
    if d > ch.MAX_DIM:
        raise FormatError(f"dim {d} exceeds the supported maximum {ch.MAX_DIM}")
    if len(t_data) != r or len(noise_data) != r:
        raise FormatError(f"T and noise must each have r_dim = {r} entries")
    T = np.array([decode_matrix(m, d, d, f"T[{i}]") for i, m in enumerate(t_data)])
    try:
        c = np.array(c_data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"structure_constants: {exc}") from exc
    if c.shape != (r, r, r) or not np.all(np.isfinite(c)):
        raise FormatError(f"structure_constants must be a finite {r}x{r}x{r} array")
    unit_noise = []
    for i, terms in enumerate(noise_data):
        if not isinstance(terms, list):
            raise FormatError(f"noise[{i}] must be a list")
        parsed = []
        for j, term in enumerate(terms):
            where = f"noise[{i}][{j}]"
            delta = _number(_field(term, "delta", object), f"{where}.delta")
            if delta.imag != 0:
                raise FormatError(f"{where}.delta must be real")
            parsed.append((delta.real, decode_matrix(_field(term, "u", list), d, d, f"{where}.u")))
        unit_noise.append(parsed)
    try:
        g = gen.SymmetryGenerator.from_unit_noise(T, unit_noise, gen.StructureConstants(c))
        gen.derive_tensors(g)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return g


def load_generator(source) -> gen.SymmetryGenerator:
    return generator_from_dict(_read_json(source))


def generator_to_dict(g: gen.SymmetryGenerator) -> dict:
    eye = np.eye(g.r_dim)
    return {
        "dim": g.d,
        "r_dim": g.r_dim,
        "T": [encode_matrix(t) for t in g.T],
        "structure_constants": g.sc.c.tolist(),
        "noise": [
            [{"delta": float(delta), "u": encode_matrix(u)} for delta, u in g.noise(eye[i])]
            for i in range(g.r_dim)
        ],
    }


def dump(obj: dict, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")
