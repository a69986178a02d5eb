"""Shipped example germs and divides."""
from importlib import resources
import json

from ..branches import germ_from_json
from ..divide import divide_from_json

NAMES = ("gl4", "node", "cusp")


def path(name: str, kind: str):
    """Filesystem path of ``<name>_<kind>.json`` (kind: germ | divide)."""
    return resources.files(__name__) / f"{name}_{kind}.json"


def load_json(filename: str):
    return json.loads((resources.files(__name__) / filename).read_text(encoding="utf-8"))


def load(name: str):
    """(germ, divide) for a shipped fixture, the divide carrying its germ."""
    germ = germ_from_json(load_json(f"{name}_germ.json"))
    return germ, divide_from_json(load_json(f"{name}_divide.json"), germ)
