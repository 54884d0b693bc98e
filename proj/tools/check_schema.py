"""Runs each twoside subcommand with --json and validates the output against the schema."""
import json
import subprocess
import sys
from pathlib import Path

import jsonschema

twoside, root = sys.argv[1], Path(sys.argv[2])
prelude = str(root / "corpus/prelude.2st")
runs = [
    ["eval", prelude, "--expr", "head (map (fun x -> x) [])"],
    ["infer", prelude, "--expr", "fun x -> f x", "--scheme", "f : [] ~> Ok"],
    ["infer", prelude, "--expr", "fun x -> x", "--left"],
    ["verdict", prelude, "--expr", "head (map (fun x -> x) [])", "--validate"],
    ["verdict", prelude, "--expr", "map (fun x -> x) []"],
    ["constraints", str(root / "corpus/constraints/necessity-vs-arrow.cs"), "--entails", "a2 <= a2"],
    ["check", prelude],
    ["fuzz", prelude, "--count", "20", "--seed", "3", "--all"],
    ["kernel", "check", str(root / "corpus/kernel/add.json")],
    ["kernel", "translate", str(root / "corpus/kernel/twice.json")],
    ["kernel", "prove", "--expr", "fun x -> x", "--type", "Nat -> Nat"],
    ["kernel", "prove", "--expr", "0", "--type", "Nat^c", "--depth", "3"],
]
schema = json.loads((root / "schema/twoside.schema.json").read_text())
validator = jsonschema.Draft202012Validator(schema)
failed = 0
for args in runs:
    out = subprocess.run([twoside, *args, "--json"], capture_output=True, text=True)
    try:
        validator.validate(json.loads(out.stdout))
        print("ok  ", " ".join(args[:2]))
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        failed += 1
        print("FAIL", " ".join(args), "-", str(e).splitlines()[0], out.stderr.strip())
for doc in sorted((root / "corpus/kernel").glob("*.json")):
    try:
        validator.validate(json.loads(doc.read_text()))
    except jsonschema.ValidationError as e:
        failed += 1
        print("FAIL", doc.name, "-", str(e).splitlines()[0])
sys.exit(1 if failed else 0)
