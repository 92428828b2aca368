"""Validates shipped schemas and CLI output with the jsonschema package."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = {p.name.removesuffix(".schema.json"): json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
for name, s in schemas.items():
    jsonschema.Draft202012Validator.check_schema(s)


def run(*args):
    return subprocess.run([cli, *args], capture_output=True, text=True)


for preset in ["eq21_trig", "eq21_cosh", "exponential", "w_curve", "linear_theta", "hyperbolic_circular"]:
    out = run("analyze", "--preset", preset)
    jsonschema.validate(json.loads(out.stdout), schemas["helix_report"])

with tempfile.TemporaryDirectory() as tmp:
    spec = pathlib.Path(tmp, "spec.json")
    spec.write_text(json.dumps({"eps1": 1, "kind": "eq21", "params": {"C1": 1, "C2": 0}}))
    jsonschema.validate(json.loads(spec.read_text()), schemas["profile_spec"])
    out = run("synthesize", str(spec), str(pathlib.Path(tmp, "c.csv")))
    jsonschema.validate(json.loads(out.stdout), schemas["synthesize_summary"])
    jsonschema.validate({"preset": "w_curve", "params": {"k1": 0.8}, "s_max": 4}, schemas["preset_spec"])

out = run("verify")
jsonschema.validate(json.loads(out.stdout), schemas["verify_summary"])
print(f"validated {len(schemas)} schemas and CLI output")
