"""Presentation files (JSON) with canonical serialization.

Layout::

    {
      "name": "virasoro",
      "N": 0,
      "generators": [{"id": "ω", "degree": 0, "weight": "2"}],
      "centrals": [{"id": "c", "degree": 0}],
      "differential": {"a": [{"coeff": "1", "dpower": 0, "gen": "b"}]},
      "products": [{"left": "ω", "n": 3, "right": "ω",
                    "result": [{"coeff": "1/2", "central": "c"}]}],
      "form": {"central": "K", "entries": [{"left": "a", "right": "a", "value": "1"}]}
    }

Scalars are strings "p" or "p/q". Unknown keys are rejected everywhere.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .errors import ParseError, UnknownKey
from .graded import format_scalar, parse_scalar
from .vla import (
    CENTRAL,
    GEN,
    BilinearFormData,
    Central,
    Generator,
    UElement,
    VlaPresentation,
    validate_presentation,
)

_TOP = {"name", "N", "generators", "centrals", "differential", "products", "form"}


def _keys(obj: Any, allowed: set[str], required: set[str], where: str) -> dict:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    extra = set(obj) - allowed
    if extra:
        raise UnknownKey(f"{where}: unknown key(s) {', '.join(sorted(extra))}")
    missing = required - set(obj)
    if missing:
        raise ParseError(f"{where}: missing key(s) {', '.join(sorted(missing))}")
    return obj


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _scalar(value: Any, where: str):
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise ParseError(f"{where}: scalars are strings 'p' or 'p/q', got {value!r}")
    try:
        return parse_scalar(value)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _str(value: Any, where: str) -> str:
    if not isinstance(value, str) or not value:
        raise ParseError(f"{where}: expected a non-empty string")
    return value


def parse_element(raw: Any, where: str = "element") -> UElement:
    if not isinstance(raw, list):
        raise ParseError(f"{where}: an element is a list of terms")
    terms: dict = {}
    for i, t in enumerate(raw):
        w = f"{where}[{i}]"
        if isinstance(t, dict) and "central" in t:
            _keys(t, {"coeff", "central"}, {"coeff", "central"}, w)
            key = (CENTRAL, _str(t["central"], w), 0)
        else:
            _keys(t, {"coeff", "dpower", "gen"}, {"coeff", "gen"}, w)
            k = _int(t.get("dpower", 0), w)
            if k < 0:
                raise ParseError(f"{w}: dpower must be >= 0")
            key = (GEN, _str(t["gen"], w), k)
        terms[key] = terms.get(key, 0) + _scalar(t["coeff"], w)
    return UElement(terms)


def element_to_json(u: UElement) -> list:
    out = []
    for (kind, name, k), c in u.items():
        if kind == CENTRAL:
            out.append({"coeff": format_scalar(c), "central": name})
        else:
            out.append({"coeff": format_scalar(c), "dpower": k, "gen": name})
    return out


def presentation_from_dict(raw: Any) -> VlaPresentation:
    _keys(raw, _TOP, {"name", "N", "generators"}, "presentation")
    gens = []
    if not isinstance(raw["generators"], list):
        raise ParseError("generators: expected a list")
    for i, g in enumerate(raw["generators"]):
        w = f"generators[{i}]"
        _keys(g, {"id", "degree", "weight"}, {"id", "degree", "weight"}, w)
        gens.append(Generator(_str(g["id"], w), _int(g["degree"], w), _scalar(g["weight"], w)))
    cents = []
    for i, c in enumerate(raw.get("centrals", [])):
        w = f"centrals[{i}]"
        _keys(c, {"id", "degree"}, {"id"}, w)
        cents.append(Central(_str(c["id"], w), _int(c.get("degree", 0), w)))
    diff = {}
    rawd = raw.get("differential", {})
    if not isinstance(rawd, dict):
        raise ParseError("differential: expected an object")
    for gid, val in rawd.items():
        el = parse_element(val, f"differential[{gid}]")
        if el:
            diff[gid] = el
    products = {}
    rawp = raw.get("products", [])
    if not isinstance(rawp, list):
        raise ParseError("products: expected a list")
    for i, pr in enumerate(rawp):
        w = f"products[{i}]"
        _keys(pr, {"left", "n", "right", "result"}, {"left", "n", "right", "result"}, w)
        key = (_str(pr["left"], w), _int(pr["n"], w), _str(pr["right"], w))
        if key in products:
            raise ParseError(f"{w}: duplicate entry for {key[0]}_({key[1]}){key[2]}")
        el = parse_element(pr["result"], w)
        products[key] = el
    form = None
    if raw.get("form") is not None:
        f = _keys(raw["form"], {"central", "entries"}, {"central", "entries"}, "form")
        entries = {}
        for i, e in enumerate(f["entries"]):
            w = f"form.entries[{i}]"
            _keys(e, {"left", "right", "value"}, {"left", "right", "value"}, w)
            v = _scalar(e["value"], w)
            if v:
                entries[(_str(e["left"], w), _str(e["right"], w))] = v
        form = BilinearFormData(_str(f["central"], "form"), entries)
    p = VlaPresentation(
        name=_str(raw["name"], "name"),
        N=_int(raw["N"], "N"),
        generators=tuple(gens),
        centrals=tuple(cents),
        differential=diff,
        products={k: v for k, v in products.items() if v},
        form=form,
    )
    return validate_presentation(p)


def presentation_to_dict(p: VlaPresentation) -> dict:
    out: dict = {
        "name": p.name,
        "N": p.N,
        "generators": [
            {"id": g.id, "degree": g.degree, "weight": format_scalar(g.weight)} for g in p.generators
        ],
        "centrals": [{"id": c.id, "degree": c.degree} for c in p.centrals],
        "differential": {
            gid: element_to_json(p.differential[gid]) for gid in sorted(p.differential) if p.differential[gid]
        },
        "products": [
            {"left": a, "n": n, "right": b, "result": element_to_json(v)}
            for (a, n, b), v in sorted(p.products.items())
            if v
        ],
    }
    if p.form is not None:
        out["form"] = {
            "central": p.form.central,
            "entries": [
                {"left": a, "right": b, "value": format_scalar(v)}
                for (a, b), v in sorted(p.form.entries.items())
            ],
        }
    return out


def loads(text: str) -> VlaPresentation:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return presentation_from_dict(raw)


def dumps(p: VlaPresentation) -> str:
    return json.dumps(presentation_to_dict(p), ensure_ascii=False, indent=2) + "\n"


def load(path: Union[str, Path]) -> VlaPresentation:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def dump(p: VlaPresentation, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(p), encoding="utf-8")
