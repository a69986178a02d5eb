import io
import json
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

from divstrata import fixtures  # noqa: E402
from divstrata.cli import main  # noqa: E402
from divstrata.generators import generate_grid_divide, generate_line_arrangement_divide  # noqa: E402

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def cli_json(*argv):
    buf = io.StringIO()
    assert main(list(argv), out=buf) == 0
    return json.loads(buf.getvalue())


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_fixtures_match_schemas(name):
    jsonschema.validate(fixtures.load_json(f"{name}_germ.json"), schema("germ"))
    jsonschema.validate(fixtures.load_json(f"{name}_divide.json"), schema("divide"))


def test_generated_match_schemas():
    for d in (generate_line_arrangement_divide(5), generate_grid_divide(3, 6)):
        jsonschema.validate(d.germ.to_json(), schema("germ"))
        jsonschema.validate(d.to_json(), schema("divide"))


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_reports_match_schemas(name):
    gd = ["--germ", f"fixture:{name}", "--divide", f"fixture:{name}"]
    jsonschema.validate(cli_json("decompose", *gd, "--n", "3"), schema("decomposition"))
    jsonschema.validate(cli_json("limit", *gd, "--max-degree", "6"), schema("limit"))
