"""JSON ingestion and emission.

Every object is a JSON dict. The ``kind`` key is optional; without it the
kind is inferred from the keys present:

    group           {"name", "order", "table"}
    gamma_group     {"name", "gamma", "group", "action"}
    hom             {"source", "target", "images"}
    crossed_module  {"name", "A", "G", "rho", "action"}
    ses             {"name", "A", "B", "C", "i", "j"}
    cocycle1        {"carrier", "values"}
    cocycle2        {"coefficients", "u", "psi"}

Wherever another object is expected, a string is a reference by name. Names
are looked up among objects listed under a top-level ``definitions`` key of
the loaded file, then among every ``*.json`` file in the same directory and
in any extra search directories.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .cohomology import Cocycle2Crossed
from .crossed import GammaCrossedModule, validate_crossed_module
from .errors import ParseError, ValidationError
from .exactness import ShortExactSequence
from .gamma import Cocycle1, GammaGroup
from .groups import FiniteGroup, GroupHom, make_standard_group

KINDS = ("group", "gamma_group", "hom", "crossed_module", "ses", "cocycle1", "cocycle2")


def infer_kind(obj: dict) -> str:
    if "kind" in obj:
        if obj["kind"] not in KINDS:
            raise ParseError(f"unknown kind {obj['kind']!r}")
        return obj["kind"]
    keys = set(obj)
    if "table" in keys or "standard" in keys:
        return "group"
    if {"i", "j"} <= keys:
        return "ses"
    if "rho" in keys:
        return "crossed_module"
    if {"gamma", "group"} <= keys:
        return "gamma_group"
    if "values" in keys:
        return "cocycle1"
    if "psi" in keys:
        return "cocycle2"
    if "images" in keys:
        return "hom"
    raise ParseError(f"cannot tell what kind of object has keys {sorted(keys)}")


class Loader:
    """Resolves references by name and builds validated objects."""

    def __init__(self, search_dirs=()):
        self.search_dirs = [Path(d) for d in search_dirs]
        self.raw: dict[str, dict] = {}
        self.built: dict[str, Any] = {}
        self._scanned: set[Path] = set()

    def _register(self, obj: dict, origin: str) -> None:
        name = obj.get("name")
        if name is None:
            return
        prev = self.raw.get(name)
        if prev is not None and prev != obj:
            raise ParseError(f"{origin}: name {name!r} is defined twice with different content")
        self.raw[name] = obj

    def _scan(self, directory: Path) -> None:
        directory = directory.resolve()
        if directory in self._scanned:
            return
        self._scanned.add(directory)
        for path in sorted(directory.glob("*.json")):
            data = read_json(path)
            if not isinstance(data, dict):
                continue
            for d in data.get("definitions", []):
                self._register(d, str(path))
            if "name" in data:
                self._register({k: v for k, v in data.items() if k != "definitions"}, str(path))

    def load(self, path) -> Any:
        path = Path(path)
        data = read_json(path)
        if not isinstance(data, dict):
            raise ParseError(f"{path}: top level must be a JSON object")
        for d in data.get("definitions", []):
            self._register(d, str(path))
        if path.parent not in self.search_dirs:
            self.search_dirs.insert(0, path.parent)
        body = {k: v for k, v in data.items() if k != "definitions"}
        return self.build(body, where=str(path))

    def lookup(self, name: str, where: str) -> dict:
        if name not in self.raw:
            for d in self.search_dirs:
                self._scan(d)
        if name not in self.raw:
            raise ParseError(f"{where}: unresolved reference {name!r}")
        return self.raw[name]

    def resolve(self, ref, where: str, expect: str | None = None):
        if isinstance(ref, str):
            if ref in self.built:
                obj = self.built[ref]
            else:
                obj = self.build(self.lookup(ref, where), where=f"{where} -> {ref}")
        elif isinstance(ref, dict):
            obj = self.build(ref, where=where)
        else:
            raise ParseError(f"{where}: expected a name or an object, got {type(ref).__name__}")
        if expect == "group" and isinstance(obj, GammaGroup):
            obj = obj.group
        return obj

    def build(self, obj: dict, where: str = "<input>") -> Any:
        kind = infer_kind(obj)
        name = obj.get("name")
        if name is not None and name in self.built:
            return self.built[name]
        try:
            out = getattr(self, f"_build_{kind}")(obj, where)
        except KeyError as e:
            raise ParseError(f"{where}: {kind} is missing field {e.args[0]!r}") from None
        if name is not None:
            self.built[name] = out
        return out

    def _build_group(self, obj, where):
        if "standard" in obj:
            spec = obj["standard"]
            params = [self.resolve(p, where, "group") if isinstance(p, (str, dict)) else p for p in spec[1:]]
            G = make_standard_group(spec[0], *params)
            G.name = obj.get("name", G.name)
            return G
        table = obj["table"]
        if "order" in obj and obj["order"] != len(table):
            raise ValidationError(f"{where}: order {obj['order']} but table has {len(table)} rows")
        try:
            return FiniteGroup(obj.get("name", "G"), table)
        except ValidationError as e:
            raise type(e)(f"{where}: {e}", e.witness) from None

    def _build_hom(self, obj, where, source=None, target=None):
        src = source if source is not None else self.resolve(obj["source"], where, "group")
        tgt = target if target is not None else self.resolve(obj["target"], where, "group")
        return GroupHom(src, tgt, obj["images"])

    def _hom_between(self, obj, where, source: FiniteGroup, target: FiniteGroup) -> GroupHom:
        if isinstance(obj, list):
            return GroupHom(source, target, obj)
        for key, grp in (("source", source), ("target", target)):
            if key in obj:
                named = self.resolve(obj[key], where, "group")
                if named != grp:
                    raise ValidationError(f"{where}: hom {key} {obj[key]!r} does not match {grp.name}")
        return GroupHom(source, target, obj["images"])

    def _build_gamma_group(self, obj, where):
        gamma = self.resolve(obj["gamma"], where, "group")
        group = self.resolve(obj["group"], where, "group")
        try:
            return GammaGroup(gamma, group, obj["action"], name=obj.get("name"))
        except ValidationError as e:
            raise type(e)(f"{where}: {e}", e.witness) from None

    def _build_crossed_module(self, obj, where):
        A = self.resolve(obj["A"], where)
        G = self.resolve(obj["G"], where)
        rho = self._hom_between(obj["rho"], where, A.group, G.group)
        action = obj["action"]
        perms = action["images"] if isinstance(action, dict) else action
        return validate_crossed_module(A, G, rho, perms, name=obj.get("name"))

    def _build_ses(self, obj, where):
        A = self.resolve(obj["A"], where)
        B = self.resolve(obj["B"], where)
        C = self.resolve(obj["C"], where)
        i = self._hom_between(obj["i"], where, A.group, B.group)
        j = self._hom_between(obj["j"], where, B.group, C.group)
        return ShortExactSequence(A, B, C, i, j, name=obj.get("name"))

    def _build_cocycle1(self, obj, where):
        return Cocycle1(self.resolve(obj["carrier"], where), obj["values"])

    def _build_cocycle2(self, obj, where):
        M = self.resolve(obj["coefficients"], where)
        u = obj["u"]
        if u and isinstance(u[0], list):
            u = [x for row in u for x in row]
        return Cocycle2Crossed(M, u, obj["psi"])


def read_json(path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"{path}: no such file") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e})") from None


def ingest(path, search_dirs=()) -> Any:
    """Load one file into a validated object."""
    return Loader(search_dirs).load(path)


def dumps(obj) -> str:
    """Canonical JSON text used for reports and cache keys."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- writers ------------------------------------------------------------------------------


def group_doc(G: FiniteGroup) -> dict:
    return {"kind": "group", **G.to_json()}


def gamma_group_doc(X: GammaGroup) -> dict:
    return {"kind": "gamma_group", **X.to_json()}


def crossed_module_doc(M: GammaCrossedModule) -> dict:
    return {"kind": "crossed_module", **M.to_json()}


def ses_doc(ses: ShortExactSequence) -> dict:
    return {"kind": "ses", **ses.to_json()}
