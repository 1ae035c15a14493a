"""Line-oriented scenario files.

::

    # comment
    [branch D1]
    d = 3
    m = 1 1 1 3

Headers are ``[kind]`` or ``[kind name]``; each kind has a fixed set of keys
(see ``SCHEMA``).  Values are converted on read, so a malformed value is
reported with its line number.  Keys such as ``param a1 zeros`` or
``count conic`` carry a name after the key word.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from .errors import ScenarioError
from .lattice import DivisorClass


def _int(text: str) -> int:
    if not re.fullmatch(r"[+-]?\d+", text):
        raise ValueError(f"expected an integer, got {text!r}")
    return int(text)


def _intlist(text: str) -> list[int]:
    parts = text.replace(",", " ").split()
    return [_int(p) for p in parts]


def _str(text: str) -> str:
    if not text:
        raise ValueError("empty value")
    return text


def _labels(text: str) -> frozenset[str]:
    parts = [p for p in re.split(r"[,\s]+", text) if p]
    if parts == ["none"]:
        return frozenset()
    if "none" in parts:
        raise ValueError("'none' cannot be combined with labels")
    return frozenset(parts)


def _points(text: str) -> list[tuple[Fraction, ...]]:
    """``0:0:1, 1:1:1``; an empty value means no points."""
    out = []
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        coords = chunk.split(":")
        if len(coords) != 3:
            raise ValueError(f"point {chunk!r} needs three coordinates")
        out.append(tuple(Fraction(c.strip()) for c in coords))
    return out


def _names(text: str) -> list[str]:
    parts = [p for p in re.split(r"[,\s]+", text) if p]
    for p in parts:
        if not re.fullmatch(r"[a-z][a-z0-9_]*", p):
            raise ValueError(f"bad symbol name {p!r}")
    return parts


def _exprs(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


@dataclass(frozen=True)
class KeySpec:
    convert: Callable[[str], Any]
    named: bool = False  # key word followed by a name, e.g. ``param a1 zeros``
    suffix: str = ""
    repeat: bool = False
    allow_empty: bool = False


CLASS_KEYS = {"d": KeySpec(_int), "m": KeySpec(_intlist, allow_empty=True)}

SCHEMA: dict[str, tuple[bool, dict[str, KeySpec]]] = {
    # kind: (takes a name, keys)
    "lattice": (False, {"n": KeySpec(_int)}),
    "branch": (True, CLASS_KEYS),
    "fiber": (False, {**CLASS_KEYS, "branch": KeySpec(_str)}),
    "class": (True, CLASS_KEYS),
    "family": (False, {"count": KeySpec(_int, named=True)}),
    "logform": (True, {
        "poles": KeySpec(_exprs),
        "symbols": KeySpec(_names),
        "template": KeySpec(_str),
        "residue_at": KeySpec(_points, allow_empty=True),
        "vanish_at": KeySpec(_points, allow_empty=True),
        "note": KeySpec(_str),
    }),
    "budget": (False, {"fixture": KeySpec(_int, named=True), "lower_bound": KeySpec(_int)}),
    "conic": (False, {"form": KeySpec(_str), "param": KeySpec(_labels, named=True, suffix="zeros")}),
    "cubic": (False, {"form": KeySpec(_str), "param": KeySpec(_labels, named=True, suffix="zeros")}),
    "action": (False, {"map": KeySpec(_str, named=True)}),
    "bundle": (True, {"summand": KeySpec(_str, repeat=True), "twist": KeySpec(_str)}),
    "expect": (False, {"check": KeySpec(_str, named=True)}),
}


@dataclass
class Entry:
    key: str
    name: str | None
    value: Any
    line: int


@dataclass
class Section:
    kind: str
    name: str | None
    line: int
    entries: list[Entry] = field(default_factory=list)

    @property
    def title(self) -> str:
        return f"{self.kind} {self.name}" if self.name else self.kind

    def get(self, key: str, default=None):
        for e in self.entries:
            if e.key == key and e.name is None:
                return e.value
        return default

    def require(self, key: str):
        for e in self.entries:
            if e.key == key and e.name is None:
                return e.value
        raise ScenarioError(f"section [{self.title}] needs '{key}'", self.line)

    def named(self, key: str) -> list[tuple[str, Any]]:
        return [(e.name, e.value) for e in self.entries if e.key == key and e.name is not None]

    def all(self, key: str) -> list[Any]:
        return [e.value for e in self.entries if e.key == key]

    def divisor_class(self) -> DivisorClass:
        return DivisorClass(self.require("d"), tuple(self.get("m", [])))


@dataclass
class Scenario:
    sections: dict[str, Section] = field(default_factory=dict)
    source: str = "<string>"

    def of_kind(self, kind: str) -> list[Section]:
        return [s for s in self.sections.values() if s.kind == kind]

    def section(self, kind: str, name: str | None = None) -> Section | None:
        return self.sections.get(f"{kind} {name}" if name else kind)

    def __contains__(self, title: str) -> bool:
        return title in self.sections

    def __bool__(self):
        return bool(self.sections)


_HEADER = re.compile(r"^\[\s*([a-z_]+)(?:\s+([A-Za-z0-9_'.-]+))?\s*\]$")
_KEY = re.compile(r"^([a-z_]+)(?:\s+([A-Za-z0-9_'.-]+))?(?:\s+([a-z_]+))?$")


def parse_scenario(text: str, source: str = "<string>", strict: bool = True) -> Scenario:
    scn = Scenario(source=source)
    current: Section | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            m = _HEADER.match(line)
            if not m:
                raise ScenarioError(f"malformed section header {raw.strip()!r}", lineno)
            kind, name = m.groups()
            if kind not in SCHEMA:
                raise ScenarioError(f"unknown section kind {kind!r}", lineno)
            takes_name = SCHEMA[kind][0]
            if takes_name and not name:
                raise ScenarioError(f"section [{kind}] needs a name", lineno)
            if not takes_name and name:
                raise ScenarioError(f"section [{kind}] takes no name", lineno)
            current = Section(kind, name, lineno)
            if current.title in scn.sections:
                raise ScenarioError(f"duplicate section [{current.title}]", lineno)
            scn.sections[current.title] = current
            continue
        key_part, sep, value = line.partition("=")
        if not sep:
            raise ScenarioError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        if current is None:
            raise ScenarioError("entry outside any section", lineno)
        key_part, value = key_part.strip(), value.strip()
        m = _KEY.match(key_part)
        if not m:
            raise ScenarioError(f"malformed key {key_part!r}", lineno)
        word, name, suffix = m.groups()
        spec = SCHEMA[current.kind][1].get(word)
        if spec is None:
            if strict:
                raise ScenarioError(f"unknown key {word!r} in [{current.title}]", lineno)
            continue
        if spec.named != bool(name) or (suffix or "") != spec.suffix:
            form = f"{word} <name>{' ' + spec.suffix if spec.suffix else ''}" if spec.named else word
            raise ScenarioError(f"key must read '{form}', got {key_part!r}", lineno)
        if not value and not spec.allow_empty:
            raise ScenarioError(f"empty value for {key_part!r}", lineno)
        try:
            converted = spec.convert(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ScenarioError(f"bad value for {key_part!r}: {exc}", lineno) from None
        if not spec.repeat and any(e.key == word and e.name == name for e in current.entries):
            raise ScenarioError(f"duplicate key {key_part!r} in [{current.title}]", lineno)
        current.entries.append(Entry(word, name, converted, lineno))
    return scn


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_scenario(text, source=str(path))


def shipped_scenario_names() -> list[str]:
    return sorted(p.name for p in resources.files("surfkit.data").iterdir() if p.name.endswith(".scn"))


def shipped_scenario(name: str) -> Scenario:
    if not name.endswith(".scn"):
        name += ".scn"
    res = resources.files("surfkit.data").joinpath(name)
    if not res.is_file():
        raise ScenarioError(f"no shipped scenario {name!r}")
    return parse_scenario(res.read_text(encoding="utf-8"), source=f"shipped:{name}")


def resolve_scenario(ref: str) -> Scenario:
    """A filesystem path, or ``shipped:<name>`` for bundled scenarios."""
    if ref.startswith("shipped:"):
        return shipped_scenario(ref.split(":", 1)[1])
    return load_scenario(ref)
