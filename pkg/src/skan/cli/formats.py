"""SSX documents: version-tagged JSON for simplicial data.

Every document is an object ``{"format": "ssx/1", "kind": ..., "body": ...}``.
Fields that hold another document accept either an inline document or a
path, resolved against the directory of the referring file. ``serialize``
always inlines, with sorted keys and two-space indentation, so a canonical
document survives ``serialize(parse(...))`` byte for byte.

Group tables are stored by element index; maps send each generator name to
a cell string such as ``"s1 s0 v"``.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from ..bundles.actions import GAction, GBundle, translation_action, trivial_action
from ..bundles.cech import cover
from ..bundles.twisting import TwistingFunction, twisted_product
from ..core.cells import Cell
from ..core.constructions import normalize, parse_cell_string, to_raw
from ..core.maps import SimplicialMap
from ..core.sset import SimplicialSet
from ..errors import (DanglingFace, DegenerateGeneratorListed, InvalidArgument, InvalidGroup,
                      InvalidMap, ParseError, SchemaError, SimplicialIdentityViolation,
                      TwistingIdentityViolation)
from ..groups.finite import FinGroup, named_group
from ..groups.simplicial import SimplicialGroup, const_sgroup

FORMAT = "ssx/1"
KINDS = ("sset", "sgroup", "map", "action", "bundle", "cocycle", "cover", "suite")


class CocycleSpec:
    """A cocycle document: the span extracted from a bundle, built on demand."""

    def __init__(self, bundle: GBundle):
        self.bundle = bundle


class Suite:
    def __init__(self, checks: list[dict], base: Path):
        self.checks = checks
        self.base = base


def digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from None
    if not isinstance(doc, dict):
        raise SchemaError("a document must be an object", field="")
    if doc.get("format") != FORMAT:
        raise SchemaError(f"unsupported format {doc.get('format')!r}", field="format")
    if doc.get("kind") not in KINDS:
        raise SchemaError(f"unknown kind {doc.get('kind')!r}", field="kind")
    if not isinstance(doc.get("body"), dict):
        raise SchemaError("body must be an object", field="body")
    return doc


def parse(path, expect: str | None = None):
    """Load the typed object described by the document at ``path``."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise SchemaError(f"missing file {str(path)!r}", field=str(path)) from None
    return parse_text(text, base=p.parent, expect=expect)


def parse_text(text: str, base=".", expect: str | None = None):
    return from_document(loads(text), Path(base), expect)


def from_document(doc: dict, base: Path, expect: str | None = None):
    kind = doc["kind"]
    if expect is not None and kind != expect:
        raise SchemaError(f"expected a {expect} document, found {kind}", field="kind")
    return _READERS[kind](doc["body"], base)


def _ref(body: dict, name: str, base: Path, expect: str):
    if name not in body:
        raise SchemaError(f"missing field {name!r}", field=name)
    v = body[name]
    try:
        if isinstance(v, str):
            return parse(base / v, expect)
        if isinstance(v, dict):
            return from_document(loads(json.dumps(v)), base, expect)
    except SchemaError as e:
        raise SchemaError(str(e), field=f"{name}.{e.field}" if e.field else name) from None
    raise SchemaError(f"{name!r} must be a path or a document", field=name)


def _field(body: dict, name: str, kind, default=...):
    if name not in body:
        if default is ...:
            raise SchemaError(f"missing field {name!r}", field=name)
        return default
    v = body[name]
    if not isinstance(v, kind):
        raise SchemaError(f"field {name!r} has the wrong type", field=name)
    return v


# -- readers --------------------------------------------------------------------------------

def _read_sset(body: dict, base: Path) -> SimplicialSet:
    gens = _field(body, "generators", list)
    faces = _field(body, "faces", dict, {})
    if any(not isinstance(level, list) for level in gens):
        raise SchemaError("generators must be lists of names", field="generators")
    try:
        X = normalize({"generators": gens, "faces": faces, "label": body.get("label", "")})
    except (DanglingFace, DegenerateGeneratorListed, InvalidArgument) as e:
        raise SchemaError(str(e), field="faces") from None
    except SimplicialIdentityViolation as e:
        raise SchemaError(str(e), field=f"faces.{e.generator}") from None
    bound = _field(body, "bound", int, None)
    if bound is not None:
        X = SimplicialSet(X.names, X.faces, bound=bound, label=X.label)
    return X


def _read_group(body: dict) -> FinGroup:
    if "named" in body:
        try:
            return named_group(body["named"])
        except (InvalidGroup, ValueError) as e:
            raise SchemaError(str(e), field="group.named") from None
    table = _field(body, "table", list)
    names = _field(body, "elements", list, None)
    try:
        return FinGroup.from_table(table, names=names, label=body.get("label", ""))
    except (InvalidGroup, IndexError, TypeError) as e:
        raise SchemaError(f"bad group table: {e}", field="group.table") from None


def _read_sgroup(body: dict, base: Path) -> SimplicialGroup:
    kind = body.get("type", "constant")
    if kind != "constant":
        raise SchemaError(f"unsupported simplicial group type {kind!r}", field="type")
    H = _read_group(_field(body, "group", dict))
    return const_sgroup(H)


def _cell(X: SimplicialSet, text: str, degree: int, where: str) -> Cell:
    try:
        word, name = parse_cell_string(text)
        m = degree - len(word)
        c = X.generator(m, name)
    except (InvalidArgument, KeyError):
        raise SchemaError(f"{text!r} names no {degree}-simplex", field=where) from None
    return Cell(word, m, c.gen)


def _read_map(body: dict, base: Path) -> SimplicialMap:
    src = _ref(body, "source", base, "sset")
    tgt = _ref(body, "target", base, "sset")
    imgs = _field(body, "images", dict)
    images = []
    for d in range(src.dim + 1):
        row = []
        for name in src.names[d]:
            if name not in imgs:
                raise SchemaError(f"no image for {name!r}", field=f"images.{name}")
            row.append(_cell(tgt, imgs[name], d, f"images.{name}"))
        images.append(row)
    try:
        return SimplicialMap(src, tgt, images)
    except InvalidMap as e:
        raise SchemaError(str(e), field="images") from None


def _read_action(body: dict, base: Path) -> GAction:
    G = _ref(body, "group", base, "sgroup")
    rule = _field(body, "rule", str)
    bound = _field(body, "bound", int, 3)
    if rule == "translation":
        a = translation_action(G, bound)
    elif rule == "trivial":
        a = trivial_action(_ref(body, "space", base, "sset"), G, bound)
    else:
        raise SchemaError(f"unknown action rule {rule!r}", field="rule")
    a.spec = {"rule": rule, "bound": bound}
    return a


def _read_bundle(body: dict, base: Path) -> GBundle:
    X = _ref(body, "base", base, "sset")
    G = _ref(body, "group", base, "sgroup")
    raw = _field(body, "twisting", dict, {})
    values = [()]
    for n in range(1, X.dim + 1):
        H = G.group(n - 1)
        row = []
        for name in X.names[n]:
            el = raw.get(name)
            if el is None:
                row.append(H.e)
            elif el in H.names:
                row.append(H.names.index(el))
            else:
                raise SchemaError(f"{el!r} is not a group element", field=f"twisting.{name}")
        values.append(row)
    unknown = set(raw) - {nm for level in X.names[1:] for nm in level}
    if unknown:
        raise SchemaError(f"twisting names unknown simplices {sorted(unknown)}",
                          field=f"twisting.{sorted(unknown)[0]}")
    try:
        tau = TwistingFunction(X, G, values)
    except TwistingIdentityViolation as e:
        raise SchemaError(str(e), field="twisting") from None
    b = twisted_product(X, G, tau)
    b.twisting = tau
    return b


def _read_cocycle(body: dict, base: Path) -> CocycleSpec:
    return CocycleSpec(_ref(body, "bundle", base, "bundle"))


def _read_cover(body: dict, base: Path) -> SimplicialMap:
    X = _ref(body, "space", base, "sset")
    members = _field(body, "members", list)
    for t, m in enumerate(members):
        if not isinstance(m, list):
            raise SchemaError("members are lists of generator names", field=f"members.{t}")
        for name in m:
            if not any(name in level for level in X.names):
                raise SchemaError(f"{name!r} is not a generator", field=f"members.{t}")
    return cover(X, members)


def _read_suite(body: dict, base: Path) -> Suite:
    checks = _field(body, "checks", list)
    for t, c in enumerate(checks):
        if not isinstance(c, dict) or not isinstance(c.get("name"), str) \
                or not isinstance(c.get("argv"), list):
            raise SchemaError("each check needs a name and an argv list", field=f"checks.{t}")
    return Suite(checks, base)


_READERS = {"sset": _read_sset, "sgroup": _read_sgroup, "map": _read_map,
            "action": _read_action, "bundle": _read_bundle, "cocycle": _read_cocycle,
            "cover": _read_cover, "suite": _read_suite}


# -- writers --------------------------------------------------------------------------------

def document(kind: str, body: dict) -> dict:
    return {"format": FORMAT, "kind": kind, "body": body}


def sset_body(X: SimplicialSet) -> dict:
    body = to_raw(X)
    if X.label:
        body["label"] = X.label
    if X.bound is not None:
        body["bound"] = X.bound
    return body


def group_body(H: FinGroup) -> dict:
    n = len(H)
    return {"elements": list(H.names), "table": [[H.mul(a, b) for b in range(n)] for a in range(n)],
            "label": H.label}


def to_document(obj) -> dict:
    if isinstance(obj, SimplicialSet):
        return document("sset", sset_body(obj))
    if isinstance(obj, SimplicialGroup):
        if obj.complete_dim != 0:
            raise InvalidArgument("only constant simplicial groups have a document form")
        return document("sgroup", {"type": "constant", "group": group_body(obj.group(0))})
    if isinstance(obj, GBundle) and getattr(obj, "twisting", None) is not None:
        tau = obj.twisting
        X, G = tau.X, tau.G
        tw = {X.names[n][g]: G.group(n - 1).names[v]
              for n in range(1, X.dim + 1) for g, v in enumerate(tau.values[n])
              if v != G.group(n - 1).e}
        return document("bundle", {"base": to_document(X), "group": to_document(G),
                                   "twisting": tw})
    if isinstance(obj, GAction) and getattr(obj, "spec", None) is not None:
        body = dict(obj.spec, group=to_document(obj.G))
        if obj.spec["rule"] == "trivial":
            body["space"] = to_document(obj.P)
        return document("action", body)
    if isinstance(obj, CocycleSpec):
        return document("cocycle", {"bundle": to_document(obj.bundle)})
    if isinstance(obj, SimplicialMap):
        members = getattr(obj, "members", None)
        X = obj.target
        if members is not None:
            return document("cover", {"space": to_document(X), "members": [
                sorted(X.names[d][g] for d, g in m) for m in members]})
        src, tgt = obj.source, obj.target
        imgs = {src.names[d][g]: tgt.cell_str(tgt.simplices(d)[obj.images[d][g]])
                for d in range(src.dim + 1) for g in range(src.num_generators(d))}
        return document("map", {"source": to_document(src), "target": to_document(tgt),
                                "images": imgs})
    if isinstance(obj, Suite):
        return document("suite", {"checks": obj.checks})
    raise InvalidArgument(f"no document form for {type(obj).__name__}")


def serialize(obj) -> str:
    return dumps(to_document(obj))
