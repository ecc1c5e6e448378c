"""Sectioned text format for gerbe, coboundary and bundle data.

A file looks like::

    [ring]
    dim = 2
    vars = x1, x2

    [crossed_module]
    instance = INNER
    size = 2

    [cover]
    N = 3

    [lambda 1 2]
    value = {mat = [[1, x1], [0, 1]], inv = [[1, -x1], [0, 1]]}

    [m 1]
    value = deg=1 side=A {(1): [[0, 1], [0, 0]]}

Cochain sections are named by family and index tuple.  A family that
appears at all must be given on every index tuple of the cover.  Group
entries carry both ``mat`` and ``inv``; ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple

from ._text import Cursor
from .crossed import CrossedModuleInstance, instance_by_name
from .errors import DatasetError, ParseError, RejectedInputError, ShapeError
from .forms import LieForm, format_form, read_form
from .gerbe import (BundleData, CoboundaryData, ConnectionData, Cover, CurvingData,
                    DerivedCurving, GerbeCocycle, GerbeData)
from .groups import GroupMap
from .matrix import Matrix, format_matrix, read_matrix
from .poly import default_names


class Family(NamedTuple):
    arity: int
    side: str
    degree: int  # 0 marks a group-valued family


FAMILIES: dict[str, Family] = {
    "lambda": Family(2, "A", 0),
    "g": Family(3, "H", 0),
    "m": Family(1, "A", 1),
    "gamma": Family(2, "H", 1),
    "B": Family(1, "H", 2),
    "nu": Family(1, "A", 2),
    "delta": Family(2, "H", 2),
    "omega3": Family(1, "H", 3),
    "r": Family(1, "A", 0),
    "theta": Family(2, "H", 0),
    "e": Family(1, "H", 1),
    "n": Family(1, "H", 2),
    "g1": Family(2, "H", 0),
    "omega1": Family(1, "H", 1),
}

HEADERS = ("ring", "crossed_module", "cover")

# families that must come together, and the families each layer needs first
LAYERS = (
    (("lambda", "g"), ()),
    (("m", "gamma"), ("lambda",)),
    (("B",), ("m",)),
    (("nu", "delta", "omega3"), ("m",)),
    (("r", "theta", "e", "n"), ()),
    (("g1", "omega1"), ()),
)


@dataclass
class DatasetFile:
    dim: int
    names: tuple[str, ...]
    instance: str
    size: int
    N: int
    entries: dict[str, dict[tuple[int, ...], GroupMap | LieForm]] = field(default_factory=dict)

    @property
    def cm(self) -> CrossedModuleInstance:
        return instance_by_name(self.instance, self.size)

    def family(self, name: str) -> dict | None:
        return self.entries.get(name)

    def has(self, *names: str) -> bool:
        return all(n in self.entries for n in names)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DatasetFile):
            return NotImplemented
        return ((self.dim, self.names, self.instance, self.size, self.N)
                == (other.dim, other.names, other.instance, other.size, other.N)
                and self.entries == other.entries)


# -- printing -----------------------------------------------------------------

def _section_name(family: str, idx: tuple[int, ...]) -> str:
    return " ".join([family, *map(str, idx)])


def format_group(g: GroupMap, names=None) -> str:
    return f"{{mat = {format_matrix(g.mat, names)}, inv = {format_matrix(g.inv, names)}}}"


def format_dataset(ds: DatasetFile) -> str:
    """Canonical text of a dataset: headers, then families in a fixed order."""
    names = list(ds.names)
    out = [
        "[ring]", f"dim = {ds.dim}", "vars = " + ", ".join(ds.names), "",
        "[crossed_module]", f"instance = {ds.instance}", f"size = {ds.size}", "",
        "[cover]", f"N = {ds.N}", "",
    ]
    for family in FAMILIES:
        values = ds.entries.get(family)
        if values is None:
            continue
        for idx in sorted(values):
            v = values[idx]
            text = format_group(v, names) if isinstance(v, GroupMap) else format_form(v, names)
            out += [f"[{_section_name(family, idx)}]", f"value = {text}", ""]
    return "\n".join(out)


# -- parsing ------------------------------------------------------------------

def _rest_of_line(cur: Cursor) -> str:
    start = cur.pos
    while not cur.eof() and cur.peek() not in "\n#":
        cur.pos += 1
        cur.col += 1
    return cur.text[start:cur.pos].strip()


def _read_group(cur: Cursor, dim: int, names, section: str) -> tuple[Matrix | None, Matrix | None]:
    cur.skip()
    cur.expect("{")
    parts: dict[str, Matrix] = {}
    while True:
        cur.skip()
        line, col = cur.line, cur.col
        key = cur.read_name()
        if key not in ("mat", "inv"):
            raise ParseError(f"unknown group field {key!r}", line, col, ("'mat'", "'inv'"))
        if key in parts:
            raise ParseError(f"duplicate group field {key!r}", line, col)
        cur.skip()
        cur.expect("=")
        parts[key] = read_matrix(cur, dim, names)
        cur.skip()
        if cur.accept(","):
            continue
        cur.expect("}")
        break
    if "mat" not in parts:
        raise DatasetError("group entry has no 'mat'", section)
    if "inv" not in parts:
        raise DatasetError("group entry has no 'inv'; inverses must be stored", section)
    return parts["mat"], parts["inv"]


def _read_header(cur: Cursor) -> tuple[str, tuple[int, ...], int, int]:
    line, col = cur.line, cur.col
    cur.expect("[")
    cur.skip(newlines=False)
    name = cur.read_name()
    idx = []
    while True:
        cur.skip(newlines=False)
        if cur.accept("]"):
            break
        if not cur.peek().isdigit():
            raise cur.error(f"unexpected {cur.peek() or 'end of input'!r}", "index", "']'")
        idx.append(cur.read_int())
    return name, tuple(idx), line, col


def _read_key(cur: Cursor) -> str:
    cur.skip()
    key = cur.read_name()
    cur.skip(newlines=False)
    cur.expect("=")
    cur.skip(newlines=False)
    return key


def _header_int(fields: dict, key: str, section: str) -> int:
    text = fields.get(key)
    if text is None:
        raise DatasetError(f"missing key {key!r}", section)
    if not text.isdigit():
        raise DatasetError(f"{key} must be a positive integer, got {text!r}", section)
    return int(text)


def parse_dataset(text: str) -> DatasetFile:
    """Parse and validate a dataset; errors are :class:`ParseError` or :class:`DatasetError`."""
    cur = Cursor(text)
    try:
        return _parse(cur)
    except RecursionError:
        raise cur.error("literal nested too deeply") from None


def _parse(cur: Cursor) -> DatasetFile:
    headers: dict[str, dict[str, str]] = {}
    cur.skip()
    # header sections, in any order, before the first cochain section
    while not cur.eof():
        save = (cur.pos, cur.line, cur.col)
        name, idx, line, col = _read_header(cur)
        if name not in HEADERS:
            cur.pos, cur.line, cur.col = save
            break
        if idx:
            raise ParseError(f"section [{name}] takes no indices", line, col)
        if name in headers:
            raise DatasetError("duplicate section", name)
        fields: dict[str, str] = {}
        cur.skip()
        while not cur.eof() and not cur.at("["):
            kline, kcol = cur.line, cur.col
            key = _read_key(cur)
            if key in fields:
                raise ParseError(f"duplicate key {key!r}", kline, kcol)
            fields[key] = _rest_of_line(cur)
            cur.skip()
        headers[name] = fields
    for name in HEADERS:
        if name not in headers:
            raise DatasetError("missing section", name)

    ring, cmod, cover = headers["ring"], headers["crossed_module"], headers["cover"]
    dim = _header_int(ring, "dim", "ring")
    if dim < 1:
        raise DatasetError("dim must be positive", "ring")
    if "vars" in ring:
        names = tuple(v.strip() for v in ring["vars"].split(","))
        if len(names) != dim:
            raise DatasetError(f"{len(names)} variable names for dim {dim}", "ring")
        if len(set(names)) != dim or not all(n.isidentifier() for n in names):
            raise DatasetError(f"bad variable names {ring['vars']!r}", "ring")
    else:
        names = tuple(default_names(dim))
    instance = cmod.get("instance", "").upper()
    size = _header_int(cmod, "size", "crossed_module")
    try:
        cm = instance_by_name(instance, size)
    except ValueError as exc:
        raise DatasetError(str(exc), "crossed_module") from None
    N = _header_int(cover, "N", "cover")
    try:
        Cover(N, dim)
    except RejectedInputError as exc:
        raise DatasetError(str(exc), "cover") from None

    sizes = {"H": cm.h_size, "A": cm.a_size}
    entries: dict[str, dict] = {}
    while not cur.eof():
        family, idx, line, col = _read_header(cur)
        section = _section_name(family, idx)
        if family in HEADERS:
            raise DatasetError("header sections must precede cochain sections", family)
        spec = FAMILIES.get(family)
        if spec is None:
            raise DatasetError(f"unknown family {family!r}", section)
        if len(idx) != spec.arity:
            raise DatasetError(f"{family} takes {spec.arity} indices, got {len(idx)}", section)
        if any(not 1 <= a <= N for a in idx):
            raise DatasetError(f"index outside the cover 1..{N}", section)
        bucket = entries.setdefault(family, {})
        if idx in bucket:
            raise DatasetError("duplicate section", section)
        key = _read_key(cur)
        if key != "value":
            raise ParseError(f"unknown key {key!r}", cur.line, cur.col, "'value'")
        bucket[idx] = _read_value(cur, spec, dim, names, sizes, section)
        cur.skip()
        if not cur.eof() and not cur.at("["):
            raise cur.error(f"unexpected {cur.peek()!r}", "'['", "end of input")

    ds = DatasetFile(dim, names, cm.name, size, N, entries)
    validate(ds)
    return ds


def _read_value(cur: Cursor, spec: Family, dim: int, names, sizes: dict, section: str):
    size = sizes[spec.side]
    if spec.degree == 0:
        mat, inv = _read_group(cur, dim, names, section)
        if mat.shape != (size, size) or inv.shape != (size, size):
            raise DatasetError(f"expected {size}x{size} matrices", section)
        try:
            return GroupMap(mat, inv)
        except ShapeError as exc:
            raise DatasetError(str(exc), section) from None
    w = read_form(cur, dim, sizes, names)
    if (w.degree, w.side) != (spec.degree, spec.side):
        raise DatasetError(f"expected a degree {spec.degree} {spec.side}-form, "
                           f"got degree {w.degree} side {w.side}", section)
    return w


def validate(ds: DatasetFile) -> None:
    """Completeness, layer dependencies and normalization on repeated indices."""
    N = ds.N
    for family, values in ds.entries.items():
        spec = FAMILIES[family]
        for idx in product(range(1, N + 1), repeat=spec.arity):
            if idx not in values:
                raise DatasetError("missing section", _section_name(family, idx))
    for group, needs in LAYERS:
        present = [f for f in group if f in ds.entries]
        if not present:
            continue
        if len(present) != len(group):
            missing = next(f for f in group if f not in ds.entries)
            raise DatasetError(f"{present[0]} given without {missing}", missing)
        for need in needs:
            if need not in ds.entries:
                raise DatasetError(f"{group[0]} needs {need}", group[0])
    repeated = {
        "lambda": lambda idx: idx[0] == idx[1],
        "theta": lambda idx: idx[0] == idx[1],
        "g": lambda idx: idx[0] == idx[1] or idx[1] == idx[2],
    }
    for family, is_repeated in repeated.items():
        for idx, value in ds.entries.get(family, {}).items():
            if is_repeated(idx) and not value.is_identity():
                raise DatasetError("normalization requires the identity on repeated indices",
                                   _section_name(family, idx))


# -- conversions ----------------------------------------------------------------

def to_gerbe(ds: DatasetFile) -> GerbeData:
    e = ds.entries
    data = GerbeData(ds.cm, Cover(ds.N, ds.dim))
    if ds.has("lambda"):
        data.cocycle = GerbeCocycle(dict(e["lambda"]), dict(e["g"]))
    if ds.has("m"):
        data.connection = ConnectionData(_unpack(e["m"]), dict(e["gamma"]))
    if ds.has("B"):
        data.curving = CurvingData(_unpack(e["B"]))
    if ds.has("nu"):
        data.derived = DerivedCurving(_unpack(e["nu"]), dict(e["delta"]), _unpack(e["omega3"]))
    return data


def to_coboundary(ds: DatasetFile) -> CoboundaryData:
    if not ds.has("r"):
        raise DatasetError("no coboundary data (r, theta, e, n)", "r")
    e = ds.entries
    return CoboundaryData(_unpack(e["r"]), dict(e["theta"]), _unpack(e["e"]), _unpack(e["n"]))


def to_bundle(ds: DatasetFile) -> BundleData:
    if not ds.has("g1"):
        raise DatasetError("no bundle data (g1, omega1)", "g1")
    return BundleData(dict(ds.entries["g1"]), _unpack(ds.entries["omega1"]))


def _unpack(values: dict) -> dict:
    return {idx[0]: v for idx, v in values.items()}


def _pack(values: dict) -> dict:
    return {(i,): v for i, v in values.items()}


def from_parts(cm: CrossedModuleInstance, N: int, dim: int, gerbe: GerbeData | None = None,
               coboundary: CoboundaryData | None = None, bundle: BundleData | None = None,
               derived: bool = True) -> DatasetFile:
    """Dataset holding whichever layers are given."""
    entries: dict[str, dict] = {}
    if gerbe is not None:
        if gerbe.cocycle is not None:
            entries["lambda"] = dict(gerbe.cocycle.lam)
            entries["g"] = dict(gerbe.cocycle.g)
        if gerbe.connection is not None:
            entries["m"] = _pack(gerbe.connection.m)
            entries["gamma"] = dict(gerbe.connection.gamma)
        if gerbe.curving is not None:
            entries["B"] = _pack(gerbe.curving.B)
        if derived and gerbe.derived is not None:
            entries["nu"] = _pack(gerbe.derived.nu)
            entries["delta"] = dict(gerbe.derived.delta)
            entries["omega3"] = _pack(gerbe.derived.omega3)
    if coboundary is not None:
        entries["r"] = _pack(coboundary.r)
        entries["theta"] = dict(coboundary.theta)
        entries["e"] = _pack(coboundary.e)
        entries["n"] = _pack(coboundary.n)
    if bundle is not None:
        entries["g1"] = dict(bundle.g1)
        entries["omega1"] = _pack(bundle.omega1)
    size = cm.h_size if cm.name != "ABELIAN" else 2
    ds = DatasetFile(dim, tuple(default_names(dim)), cm.name, size, N, entries)
    validate(ds)
    return ds


def load(path: str) -> DatasetFile:
    with open(path, encoding="utf-8") as fh:
        return parse_dataset(fh.read())


def dump(ds: DatasetFile, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_dataset(ds))
