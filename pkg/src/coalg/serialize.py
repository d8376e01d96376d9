"""JSON structure files: strict parsing and canonical emission.

File schema: one JSON object per structure with a `kind` of
coalgebra | comodule | bicomodule | focc | map. Tensor data is stored
as sparse entry lists `[index..., value]` with 0-based in-range indices
and values as canonical rational strings ("5", "-1/2"); unlisted
entries are zero and duplicate index tuples are rejected. The counit is
stored dense (one value string per basis vector). Comodule-like kinds
reference their base coalgebra under `over`, either inline or as a
`zoo:<name>` URI.

Emission is canonical: entries sorted by index, keys sorted, two-space
indent. parse(emit(s)) reproduces s exactly for every structure kind.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

import numpy as np

from .coalgebra import Coalgebra, zoo
from .comodule import Bicomodule, LeftComodule, RightComodule
from .errors import ParseError, UsageError
from .focc import Focc
from .linalg import QZERO, tensors_equal, zeros

KINDS = ("coalgebra", "comodule", "bicomodule", "focc", "map")

_ZOO_PLAIN = ("trivial", "primitive2")
_ZOO_PARAM = re.compile(r"^(grouplike|matrix)([1-9][0-9]*)$")


@dataclass(eq=False)
class NamedMap:
    """A plain linear map as a structure file: matrix[i][a] is the
    coefficient of target basis i in the image of source basis a."""

    name: str
    matrix: np.ndarray

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    def __eq__(self, other):
        if not isinstance(other, NamedMap):
            return NotImplemented
        return self.name == other.name and tensors_equal(self.matrix, other.matrix)


Structure = Union[Coalgebra, LeftComodule, RightComodule, Bicomodule, Focc, NamedMap]


def resolve_zoo_uri(uri: str) -> Coalgebra:
    if not uri.startswith("zoo:"):
        raise UsageError(f"not a zoo reference: {uri!r}")
    tail = uri[len("zoo:"):]
    if tail in _ZOO_PLAIN:
        return zoo(tail)
    m = _ZOO_PARAM.match(tail)
    if m:
        return zoo(m.group(1), int(m.group(2)))
    raise UsageError(
        f"unknown zoo reference {uri!r}; try zoo:trivial, zoo:grouplike3, "
        f"zoo:matrix2 or zoo:primitive2")


def zoo_uri_for(c: Coalgebra) -> Optional[str]:
    """The zoo URI naming this exact coalgebra, if there is one."""
    if c.name in _ZOO_PLAIN or _ZOO_PARAM.match(c.name):
        try:
            candidate = resolve_zoo_uri("zoo:" + c.name)
        except UsageError:
            return None
        if candidate == c:
            return "zoo:" + c.name
    return None


def _default_resolver(ref: str) -> Coalgebra:
    if isinstance(ref, str) and ref.startswith("zoo:"):
        return resolve_zoo_uri(ref)
    raise ParseError(f"cannot resolve coalgebra reference {ref!r} here; "
                     f"inline it or use a zoo: URI", "over")


# ---------------------------------------------------------------------------
# Value and entry handling.

def format_rational(x: Fraction) -> str:
    return str(x)


def parse_rational(s, location: str) -> Fraction:
    if not isinstance(s, str):
        raise ParseError(f"rational value must be a string, got {s!r}", location)
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed rational {s!r}: {exc}", location) from None
    if str(value) != s:
        raise ParseError(
            f"non-canonical rational {s!r} (canonical form is {value!s})", location)
    return value


def tensor_entries(t: np.ndarray) -> list:
    """Sparse entry list of a tensor, sorted by index tuple."""
    out = []
    for idx in np.ndindex(t.shape):
        if t[idx] != QZERO:
            out.append([int(i) for i in idx] + [format_rational(t[idx])])
    return out


def dense_values(v: np.ndarray) -> list:
    return [format_rational(x) for x in v]


def _parse_index(value, bound: int, location: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"index must be an integer, got {value!r}", location)
    if not (0 <= value < bound):
        raise ParseError(f"index out of range: {value} (dimension {bound})", location)
    return value


def parse_entries(entries, bounds: tuple, field: str) -> np.ndarray:
    """Sparse entry list -> dense tensor with duplicate/range checking."""
    if not isinstance(entries, list):
        raise ParseError(f"expected a list of entries", field)
    t = zeros(bounds)
    seen = set()
    for pos, entry in enumerate(entries):
        location = f"{field} entry {pos}"
        if not isinstance(entry, list) or len(entry) != len(bounds) + 1:
            raise ParseError(
                f"entry must be [{len(bounds)} indices, value], got {entry!r}",
                location)
        idx = tuple(_parse_index(entry[i], bounds[i], location)
                    for i in range(len(bounds)))
        if idx in seen:
            raise ParseError(f"duplicate entry at index {list(idx)}", location)
        seen.add(idx)
        t[idx] = parse_rational(entry[-1], location)
    return t


def parse_dense(values, length: int, field: str) -> np.ndarray:
    if not isinstance(values, list) or len(values) != length:
        raise ParseError(f"expected a list of {length} values", field)
    v = zeros((length,))
    for pos, s in enumerate(values):
        v[pos] = parse_rational(s, f"{field}[{pos}]")
    return v


# ---------------------------------------------------------------------------
# Emission.

def structure_to_jsonable(s: Structure, name: str = "") -> dict:
    if isinstance(s, Coalgebra):
        return {
            "kind": "coalgebra",
            "name": s.name,
            "dim": s.dim,
            "omega": tensor_entries(s.omega),
            "counit": dense_values(s.counit),
        }
    if isinstance(s, (LeftComodule, RightComodule)):
        side = "left" if isinstance(s, LeftComodule) else "right"
        coaction = s.lc if isinstance(s, LeftComodule) else s.rc
        return {
            "kind": "comodule",
            "name": name,
            "side": side,
            "dim": s.dim,
            "over": _over_to_jsonable(s.over),
            "coaction": tensor_entries(coaction),
        }
    if isinstance(s, Bicomodule):
        return {
            "kind": "bicomodule",
            "name": name,
            "dim": s.dim,
            "over": _over_to_jsonable(s.over),
            "left": tensor_entries(s.lc),
            "right": tensor_entries(s.rc),
        }
    if isinstance(s, Focc):
        return {
            "kind": "focc",
            "name": name,
            "dim": s.carrier.dim,
            "over": _over_to_jsonable(s.carrier.over),
            "left": tensor_entries(s.carrier.lc),
            "right": tensor_entries(s.carrier.rc),
            "differential": tensor_entries(s.d),
        }
    if isinstance(s, NamedMap):
        return {
            "kind": "map",
            "name": s.name,
            "rows": s.rows,
            "cols": s.cols,
            "entries": tensor_entries(s.matrix),
        }
    raise UsageError(f"cannot serialize {type(s).__name__}")


def _over_to_jsonable(c: Coalgebra):
    uri = zoo_uri_for(c)
    return uri if uri is not None else structure_to_jsonable(c)


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def emit_structure(s: Structure, name: str = "") -> str:
    return canonical_json(structure_to_jsonable(s, name))


def structure_hash(s: Structure) -> str:
    return hashlib.sha256(emit_structure(s).encode()).hexdigest()[:12]


# ---------------------------------------------------------------------------
# Parsing.

def parse_structure(source, resolver: Optional[Callable] = None) -> Structure:
    """Parse a structure from JSON text or an already-decoded dict.

    `resolver` maps `over` reference strings to coalgebras; by default
    only zoo: URIs resolve.
    """
    if resolver is None:
        resolver = _default_resolver
    if isinstance(source, (str, bytes)):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc}") from None
    else:
        data = source
    if not isinstance(data, dict):
        raise ParseError("structure file must hold a JSON object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}; expected one of {list(KINDS)}", "kind")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name must be a string", "name")

    if kind == "map":
        rows = _parse_dim(data, "rows", minimum=0)
        cols = _parse_dim(data, "cols", minimum=0)
        matrix = parse_entries(data.get("entries", []), (rows, cols), "entries")
        return NamedMap(name, matrix)

    dim = _parse_dim(data, "dim")
    if kind == "coalgebra":
        omega = parse_entries(data.get("omega", []), (dim, dim, dim), "omega")
        counit = parse_dense(data.get("counit", []), dim, "counit")
        return Coalgebra(name, dim, omega, counit)

    over = _parse_over(data.get("over"), resolver)
    n = over.dim
    if kind == "comodule":
        side = data.get("side")
        coaction = parse_entries(data.get("coaction", []), (dim, dim, n), "coaction")
        if side == "left":
            return LeftComodule(over, dim, coaction)
        if side == "right":
            return RightComodule(over, dim, coaction)
        raise ParseError(f"side must be 'left' or 'right', got {side!r}", "side")
    if kind == "bicomodule":
        lc = parse_entries(data.get("left", []), (dim, dim, n), "left")
        rc = parse_entries(data.get("right", []), (dim, dim, n), "right")
        return Bicomodule(LeftComodule(over, dim, lc), RightComodule(over, dim, rc))
    # focc
    lc = parse_entries(data.get("left", []), (dim, dim, n), "left")
    rc = parse_entries(data.get("right", []), (dim, dim, n), "right")
    d = parse_entries(data.get("differential", []), (dim, n), "differential")
    carrier = Bicomodule(LeftComodule(over, dim, lc), RightComodule(over, dim, rc))
    return Focc(carrier, d)


def _parse_dim(data: dict, key: str, minimum: int = 1) -> int:
    value = data.get(key)
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ParseError(f"{key} must be an integer >= {minimum}, got {value!r}", key)
    return value


def _parse_over(over, resolver) -> Coalgebra:
    if over is None:
        raise ParseError("missing base coalgebra reference", "over")
    if isinstance(over, str):
        return resolver(over)
    if isinstance(over, dict):
        inner = parse_structure(over, resolver)
        if not isinstance(inner, Coalgebra):
            raise ParseError("inline 'over' object must be a coalgebra", "over")
        return inner
    raise ParseError(f"'over' must be a reference string or an inline object", "over")
