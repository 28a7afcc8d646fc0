"""Validates fixtures and CLI output against schemas/, and checks exit codes."""
import json
import subprocess
import sys
from pathlib import Path

import jsonschema

root = Path(sys.argv[1])
cli = sys.argv[2]
algebra_schema = json.loads((root / "schemas/algebra.schema.json").read_text())
result_schema = json.loads((root / "schemas/result.schema.json").read_text())
class_function = {"$ref": "#/$defs/class_function", "$defs": result_schema["$defs"]}

for path in sorted((root / "fixtures").glob("*.json")):
    jsonschema.validate(json.loads(path.read_text()), algebra_schema)
    print("fixture", path.name, "ok")

runs = [
    ["algebra", "--algebra", "q8"],
    ["oracle", "irr", "--algebra", "q8", "--timing"],
    ["char", "super", "--algebra", "ut", "--n", "4", "--q", "2", "--lambda", "e*(1,3)"],
    ["count", "super", "--algebra", "ut", "--n", "4", "--q", "3", "--lambda", "e*(1,4)"],
]
for args in runs:
    proc = subprocess.run([cli, *args], capture_output=True, text=True, check=True)
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, result_schema)
    if args[0] == "char":
        jsonschema.validate(doc["result"]["class_function"], class_function)
    print(" ".join(args), "ok")

# exit codes: 0 ok, 1 violated check, 2 usage or validation, 3 resource
expected = [
    (["oracle", "is-character", "--algebra", "q8", "--of", "super", "--lambda", "0,0,1"], 0),
    (["reproduce", "ut13-98"], 1),
    (["char", "super", "--algebra", "nonsense"], 2),
    (["char", "super", "--algebra", "ut", "--n", "3", "--q", "6"], 2),
    (["orbit", "--algebra", "ut", "--n", "4", "--q", "2", "--lambda", "e*(1,4)", "--kind", "sideways"], 2),
    (["count", "xi", "--algebra", "ut", "--n", "6", "--q", "2", "--lambda", "e*(1,6)", "--guard-bytes", "1"], 3),
]
for args, code in expected:
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode != code:
        sys.exit(f"{' '.join(args)}: exit {proc.returncode}, expected {code}\n{proc.stderr}")
    print(" ".join(args), "exit", code, "ok")

# identical inputs give byte-identical output
a = subprocess.run([cli, "count", "super", "--algebra", "ut5", "--q", "3", "--lambda", "1,0,0,0,0,0,0,0"], capture_output=True, text=True)
b = subprocess.run([cli, "count", "super", "--algebra", "ut5", "--q", "3", "--lambda", "1,0,0,0,0,0,0,0"], capture_output=True, text=True)
if a.returncode != 0 or a.stdout != b.stdout:
    sys.exit("count output is not deterministic")
print("deterministic output ok")
