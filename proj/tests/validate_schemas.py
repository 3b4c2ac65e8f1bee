"""Validate arbor JSON output against the schemas shipped in schemas/."""

import json
import pathlib
import subprocess
import sys

import jsonschema

RUNS = {
    "classify.schema.json": [
        ["classify", "--c", "-2; -6"],
        ["classify", "--c", "3"],
        ["classify", "--c", "1/2; 3"],
    ],
    "orbit.schema.json": [
        ["orbit", "--c", "-1", "--depth", "4"],
        ["orbit", "--c", "5; 7", "--orbit-cap", "3"],
        ["orbit", "--ring", "qt", "--c", "t; -t", "--depth", "3"],
        ["orbit", "--c", "1/3", "--depth", "3"],
        ["orbit", "--set", "x^2+x; x^2-6x", "--point", "2"],
        ["orbit", "--set", "x^3-x", "--point", "5", "--format", "json"],
    ],
    "certificate.schema.json": [
        ["certify", "--c", "1", "--depth", "5"],
        ["certify", "--c", "3; 1", "--coding", "|1,2", "--depth", "4"],
        ["certify", "--ring", "qt", "--c", "t^4+5t; -(7t^4+3)", "--coding", "1|2", "--depth", "5"],
    ],
    "census.schema.json": [
        ["census", "--d", "2", "--s", "2", "--B", "1,2,4"],
        ["census", "--d", "3", "--s", "2", "--B", "1,3", "--variant", "odd"],
        ["census", "--d", "2", "--s", "3", "--B", "2", "--variant", "monic"],
    ],
    "fpp.schema.json": [["fpp", "--depth", "30"]],
    "process.schema.json": [
        ["simulate", "--depth", "26", "--trials", "2000"],
        ["simulate", "--depth", "6", "--trials", "2000", "--mask", "1010", "--nonmaximal-model", "hold"],
    ],
    "sample.schema.json": [
        ["sample", "--c", "1; 2", "--samples", "50", "--length", "6"],
        ["sample", "--ring", "qt", "--c", "t; 1", "--samples", "20", "--length", "5", "--certify"],
    ],
    "scan.schema.json": [
        ["primes", "--c", "1", "--cutoffs", "100,1000", "--fpp-depth", "14"],
        ["primes", "--c", "0", "--a0", "1/6", "--cutoffs", "1000"],
        ["primes", "--c", "-2; -6", "--coding", "|1,2", "--zero-cap", "1", "--cutoffs", "100"],
    ],
}


def main() -> int:
    arbor, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    load = lambda name: json.loads((schema_dir / name).read_text())
    envelope = load("envelope.schema.json")
    failures = 0
    for schema_name, runs in RUNS.items():
        schema = load(schema_name)
        jsonschema.Draft202012Validator.check_schema(schema)
        for args in runs:
            proc = subprocess.run([arbor, *args], capture_output=True, text=True)
            label = " ".join(args)
            if proc.returncode not in (0, 2):
                print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
                failures += 1
                continue
            doc = json.loads(proc.stdout)
            try:
                jsonschema.validate(doc, envelope)
                jsonschema.validate(doc["report"], schema)
            except jsonschema.ValidationError as e:
                print(f"FAIL {label}: {e.message} at {list(e.absolute_path)}")
                failures += 1
                continue
            print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
