"""Text formats for matrices, systems and HMMs, plus report serialization.

Matrix files hold one row per line, whitespace-separated tokens, each a
decimal number or ``-inf`` / ``+inf`` / ``inf``.  ``#`` starts a comment and
blank lines are skipped.  Structured inputs (systems, HMMs) are YAML
mappings whose matrix entries are nested lists, a matrix-format block
string, or ``{file: path}`` relative to the config.

Every malformed value raises :class:`~wlattice.errors.ParseError` naming
the file, the line and the carrier the value should belong to.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
from typing import Optional

import numpy as np
import yaml

from .clodum import Clodum, make_clodum
from .errors import CarrierError, ConfigurationError, ParseError, WLatticeError
from .linalg import WMatrix, WVector, _WArray

# ---------------------------------------------------------------- tokens


def format_scalar(v: float) -> str:
    """Shortest round-tripping text; sentinels as ``-inf`` / ``+inf``."""
    v = float(v)
    if v == math.inf:
        return "+inf"
    if v == -math.inf:
        return "-inf"
    if v == 0:
        return "0"   # no "-0.0" in files
    return repr(v)


def _token(tok: str, c: Clodum, path, line) -> float:
    try:
        v = c.parse(tok)
    except (ValueError, CarrierError):
        raise ParseError(path, line, f"bad value {tok!r}", c.carrier) from None
    return v


def parse_matrix_text(text: str, c: Clodum, path="<string>", first_line: int = 1) -> WMatrix:
    rows = []
    for k, raw in enumerate(text.splitlines()):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        lineno = first_line + k
        row = [_token(t, c, path, lineno) for t in body.replace(",", " ").split()]
        if rows and len(row) != len(rows[0][1]):
            raise ParseError(path, lineno, f"row has {len(row)} entries, expected {len(rows[0][1])}")
        rows.append((lineno, row))
    if not rows:
        raise ParseError(path, first_line, "no matrix rows found")
    return WMatrix(np.array([r for _, r in rows], dtype=float), c, validate=False)


def _read(path) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except UnicodeDecodeError:
        raise ParseError(path, 1, "file is not UTF-8 text") from None


def read_matrix(path, clodum) -> WMatrix:
    c = make_clodum(clodum) if isinstance(clodum, str) else clodum
    return parse_matrix_text(_read(path), c, path)


def read_vector(path, clodum) -> WVector:
    """A vector file is a one-row or one-column matrix file."""
    M = read_matrix(path, clodum)
    if M.rows != 1 and M.cols != 1:
        raise ParseError(path, 1, f"expected a single row or column, found {M.rows}x{M.cols}")
    return WVector(M.data.ravel(), M.clodum, validate=False)


def matrix_to_text(M) -> str:
    data = np.atleast_2d(M.data if isinstance(M, _WArray) else np.asarray(M, float))
    return "".join(" ".join(format_scalar(v) for v in row) + "\n" for row in data)


def write_matrix(path, M) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(matrix_to_text(M))


# ---------------------------------------------------------------- YAML


class _Cfg:
    """A YAML mapping that remembers where each value came from."""

    def __init__(self, path, node):
        self.path = path
        if not isinstance(node, yaml.MappingNode):
            raise ParseError(path, node.start_mark.line + 1, "top level must be a mapping")
        self.nodes = {}
        for k, v in node.value:
            self.nodes[k.value] = v

    def __contains__(self, key):
        return key in self.nodes

    def line(self, key) -> int:
        return self.nodes[key].start_mark.line + 1

    def scalar(self, key, default=None):
        if key not in self.nodes:
            return default
        node = self.nodes[key]
        if not isinstance(node, yaml.ScalarNode):
            raise ParseError(self.path, self.line(key), f"{key} must be a scalar")
        return node.value

    def integer(self, key, default=None) -> Optional[int]:
        v = self.scalar(key)
        if v is None:
            return default
        try:
            return int(v)
        except ValueError:
            raise ParseError(self.path, self.line(key), f"{key} must be an integer") from None

    def matrix(self, key, c: Clodum, required=True) -> Optional[WMatrix]:
        if key not in self.nodes:
            if required:
                raise ParseError(self.path, 1, f"missing required key {key!r}", c.carrier)
            return None
        return _node_matrix(self.nodes[key], c, self.path, key)

    def vector(self, key, c: Clodum, required=True) -> Optional[WVector]:
        M = self.matrix(key, c, required)
        if M is None:
            return None
        if M.rows != 1 and M.cols != 1:
            raise ParseError(self.path, self.line(key), f"{key} must be a vector", c.carrier)
        return WVector(M.data.ravel(), c, validate=False)


def _node_matrix(node, c, path, key) -> WMatrix:
    line = node.start_mark.line + 1
    if isinstance(node, yaml.ScalarNode):
        # block string in matrix format; "|" content starts on the next line
        first = line + 1 if node.style in ("|", ">") else line
        return parse_matrix_text(node.value, c, path, first)
    if isinstance(node, yaml.MappingNode):
        sub = {k.value: v for k, v in node.value}
        if set(sub) != {"file"}:
            raise ParseError(path, line, f"{key}: expected a list, a block string or {{file: ...}}")
        ref = os.path.join(os.path.dirname(os.path.abspath(path)), sub["file"].value)
        if not os.path.exists(ref):
            raise ParseError(path, line, f"{key}: referenced file {sub['file'].value!r} not found")
        return read_matrix(ref, c)
    # sequence: a flat list is a column vector, a list of lists a matrix
    items = node.value
    if not items:
        raise ParseError(path, line, f"{key} is empty", c.carrier)
    if all(isinstance(i, yaml.ScalarNode) for i in items):
        rows = [[i] for i in items]
    elif all(isinstance(i, yaml.SequenceNode) for i in items):
        rows = [i.value for i in items]
    else:
        raise ParseError(path, line, f"{key}: mixed scalars and rows")
    data = []
    for r in rows:
        vals = []
        for tok in r:
            if not isinstance(tok, yaml.ScalarNode):
                raise ParseError(path, tok.start_mark.line + 1, f"{key}: nested too deeply")
            vals.append(_token(tok.value, c, path, tok.start_mark.line + 1))
        if data and len(vals) != len(data[0]):
            raise ParseError(path, r[0].start_mark.line + 1 if r else line,
                             f"{key}: ragged rows", c.carrier)
        data.append(vals)
    return WMatrix(np.array(data, dtype=float), c, validate=False)


def load_config(path) -> _Cfg:
    text = _read(path)
    try:
        node = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(path, (mark.line + 1) if mark else 1, f"invalid YAML: {exc}") from None
    if node is None:
        raise ParseError(path, 1, "empty config")
    return _Cfg(path, node)


def _config_clodum(cfg: _Cfg, override, tol, default="max-plus") -> Clodum:
    name = override or cfg.scalar("clodum", default)
    try:
        return make_clodum(name, tol)
    except ConfigurationError as exc:
        raise ParseError(cfg.path, cfg.line("clodum") if "clodum" in cfg else 1, str(exc)) from None


@dataclasses.dataclass(frozen=True, eq=False)
class SystemConfig:
    system: "object"
    x0: Optional[WVector]
    u: Optional[np.ndarray]
    T: Optional[int]


def load_system(path, clodum: Optional[str] = None, tol: float = 1e-9) -> SystemConfig:
    """YAML keys: ``clodum``, ``mode``, ``A``..``D`` and optionally ``x0``,
    ``u`` (rows ``u(1)..u(T)`` or ``u(0)..u(T)``) and ``T``."""
    from .systems import SystemSpec

    cfg = load_config(path)
    c = _config_clodum(cfg, clodum, tol)
    mode = cfg.scalar("mode", "max")
    if mode not in ("max", "min"):
        raise ParseError(path, cfg.line("mode"), f"mode must be 'max' or 'min', got {mode!r}")
    mats = {k: cfg.matrix(k, c) for k in "ABCD"}
    try:
        sys = SystemSpec(mats["A"], mats["B"], mats["C"], mats["D"], c, mode)
    except WLatticeError as exc:
        raise ParseError(path, 1, str(exc)) from None
    x0 = cfg.vector("x0", c, required=False)
    u = cfg.matrix("u", c, required=False)
    if u is not None and u.cols != sys.p and u.rows == sys.p:
        u = u.T
    return SystemConfig(sys, x0, None if u is None else u.data, cfg.integer("T"))


def load_hmm(path, clodum: Optional[str] = None, tol: float = 1e-9):
    """YAML keys: ``trans`` (a_ij), ``initial``, ``likelihoods`` ((T+1) x n)
    and optionally ``control``, ``inputs`` and ``clodum``."""
    from .applications.hmm import HmmSpec

    cfg = load_config(path)
    c = _config_clodum(cfg, clodum, tol, default="product-tnorm")
    parts = {k: cfg.matrix(k, c, required=k in ("trans", "initial", "likelihoods"))
             for k in ("trans", "initial", "likelihoods", "control", "inputs")}
    parts = {k: (None if v is None else v.data) for k, v in parts.items()}
    parts["initial"] = parts["initial"].ravel()
    try:
        return HmmSpec(clodum=c, **parts)
    except WLatticeError as exc:
        raise ParseError(path, 1, str(exc), c.carrier) from None


# ---------------------------------------------------------------- output


def to_jsonable(obj):
    """Plain JSON data; infinities become the strings ``-inf`` / ``+inf``."""
    if isinstance(obj, _WArray):
        return to_jsonable(obj.data)
    if isinstance(obj, Clodum):
        return obj.name
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
                if f.repr}
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return format_scalar(v) if math.isinf(v) else v
    return obj


def dumps_json(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=False) + "\n"


def table_csv(header, rows) -> str:
    out = [",".join(header)]
    for r in rows:
        out.append(",".join(format_scalar(v) if isinstance(v, (float, np.floating)) else str(v)
                            for v in r))
    return "\n".join(out) + "\n"
