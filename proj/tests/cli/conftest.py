import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("PADICDYN_CLI", str(ROOT / "build" / "bin" / "padicdyn"))

    def run(*args, env=None):
        full = dict(os.environ)
        full.update(env or {})
        return subprocess.run([exe, *map(str, args)], capture_output=True, text=True, env=full, timeout=600)

    return run


@pytest.fixture(scope="session")
def schema():
    import jsonschema

    base = pathlib.Path(os.environ.get("PADICDYN_SCHEMAS", ROOT / "schemas"))

    def validate(name, doc):
        s = json.loads((base / f"{name}.json").read_text())
        jsonschema.validate(doc, s)

    return validate
