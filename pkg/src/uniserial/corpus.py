"""Bundled test-corpus groups and lazily built construction instances."""

from __future__ import annotations

import hashlib
import json
from importlib import resources

from .constructions import wreath_product
from .perm import PermGroup

_CACHE: dict[str, PermGroup] = {}


def data_names() -> list[str]:
    out = []
    for entry in resources.files("uniserial.data").iterdir():
        if entry.name.endswith(".json"):
            out.append(entry.name[:-5])
    return sorted(out)


def verify_checksums() -> bool:
    root = resources.files("uniserial.data")
    manifest = (root / "CHECKSUMS").read_text(encoding="utf-8")
    for line in manifest.strip().splitlines():
        digest, name = line.split()
        text = (root / name).read_text(encoding="utf-8")
        if hashlib.sha256(text.encode()).hexdigest() != digest:
            return False
    return True


def load(name: str) -> PermGroup:
    """A bundled corpus group by name; instances are cached and shared."""
    got = _CACHE.get(name)
    if got is None:
        text = (resources.files("uniserial.data") / f"{name}.json").read_text(
            encoding="utf-8"
        )
        payload = json.loads(text)
        got = PermGroup.from_dict(payload)
        stated = int(payload.get("order", "0"))
        if stated and got.order() != stated:
            raise AssertionError(f"corpus file {name} disagrees with its stated order")
        _CACHE[name] = got
    return got


def wreath_a5_c2() -> PermGroup:
    got = _CACHE.get("a5wrc2")
    if got is None:
        got = wreath_product(load("a5"), PermGroup.cyclic(2))
        _CACHE["a5wrc2"] = got
    return got


def wreath_a5_s3() -> PermGroup:
    got = _CACHE.get("a5wrs3")
    if got is None:
        got = wreath_product(load("a5"), PermGroup.symmetric(3))
        _CACHE["a5wrs3"] = got
    return got


def small_corpus(max_order: int) -> dict[str, PermGroup]:
    """All bundled groups of order at most the bound."""
    out = {}
    for name in data_names():
        group = load(name)
        if group.order() <= max_order:
            out[name] = group
    return out
