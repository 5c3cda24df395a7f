"""Loading framed charts from JSON fixture documents.

Document layout::

    {"name": str, "dim": int, "coords": [str], "eta": [+1|-1],
     "coframe": [[poly-string]], "killing_vectors": {name: [ratfn-string]},
     "notes": str}

``coframe[a][mu]`` is ``E^a_mu`` in ``e^a = E^a_mu dx^mu``.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .exterior import VectorField
from .manifold import Chart, FrameField, is_killing
from .syntax import eval_scalar

BUILTIN = ("euclid2", "euclid3", "euclid4", "mink4", "conf3")


class FixtureError(ValueError):
    pass


def builtin_names() -> tuple:
    return BUILTIN


def _builtin_doc(name: str) -> dict:
    text = resources.files("exactforms.data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def read_document(source: str) -> dict:
    """Fixture document for a builtin name or a JSON file path."""
    if source in BUILTIN:
        return _builtin_doc(source)
    path = Path(source)
    if not path.is_file():
        raise FixtureError(f"unknown fixture {source!r} (builtins: {', '.join(BUILTIN)})")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{source}: invalid JSON: {exc}") from exc


def frame_from_document(doc: dict) -> FrameField:
    try:
        coords = tuple(doc["coords"])
        chart = Chart(coords)
        if int(doc.get("dim", len(coords))) != len(coords):
            raise FixtureError(f"dim {doc['dim']} does not match {len(coords)} coordinates")
        coframe = [[eval_scalar(str(entry), chart) for entry in row] for row in doc["coframe"]]
        frame = FrameField(chart, coframe, doc["eta"], name=doc.get("name", ""),
                           notes=doc.get("notes", ""))
    except KeyError as exc:
        raise FixtureError(f"fixture document lacks field {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, FixtureError):
            raise
        raise FixtureError(f"fixture {doc.get('name', '?')}: {exc}") from exc
    for kname, comps in (doc.get("killing_vectors") or {}).items():
        v = VectorField(frame, [eval_scalar(str(c), chart) for c in comps])
        if not is_killing(v, frame.metric):
            raise FixtureError(f"fixture {frame.name}: declared Killing vector {kname!r} is not Killing")
        frame.killing[kname] = v
    return frame


@lru_cache(maxsize=None)
def load_builtin(name: str) -> FrameField:
    return frame_from_document(_builtin_doc(name))


def load_fixture(source: str) -> FrameField:
    if source in BUILTIN:
        return load_builtin(source)
    return frame_from_document(read_document(source))
