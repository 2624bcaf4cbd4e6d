#!/usr/bin/env python3
"""Run every dalab subcommand and validate its JSON against docs/schemas.

usage: validate_schemas.py <dalab binary> <schema dir>
"""

import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["norm", "--poly", "z1*z2 - 0.5*z2^2"],
    ["gap", "--poly", "(z1*z2)^2", "--samples", "2000"],
    ["cesaro", "--n-list", "1,2,4"],
    ["cesaro", "--n-list", "none"],
    ["weights", "--k-max", "3", "--m-max", "6", "--j-max", "4", "--stirling-k", "8", "--stirling-m", "8"],
    ["peak", "--zeta", "0.6,0:0.8", "--M", "6", "--samples", "500"],
    ["peak", "--circle", "4", "--samples", "500", "--no-norm"],
    ["supk", "--n-max", "4"],
    ["witness", "--n-max", "4"],
    ["witness", "--mode", "henkin", "--n-max", "4"],
    ["expose", "--poly", "1.4142135623730951*z1*z2", "--N", "8"],
    ["expose", "--poly", "z1", "--N", "6"],
    ["valskii", "--N", "6"],
    ["valskii", "--N", "6", "--samples", "2000", "--mc-degree", "2"],
    ["fock-check", "--N", "3", "--cases", "5"],
]


def main() -> int:
    exe, schema_dir = sys.argv[1], sys.argv[2]
    failures = 0
    for args in RUNS:
        with open(f"{schema_dir}/{args[0]}.schema.json") as f:
            schema = json.load(f)
        jsonschema.Draft202012Validator.check_schema(schema)
        proc = subprocess.run([exe, *args], capture_output=True, text=True, check=False)
        label = " ".join(args)
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        report = json.loads(proc.stdout)
        # Round trip through the serializer before validating.
        report = json.loads(json.dumps(report))
        errors = list(jsonschema.Draft202012Validator(schema).iter_errors(report))
        if errors:
            failures += 1
            print(f"FAIL {label}:")
            for e in errors[:5]:
                print(f"  {'/'.join(map(str, e.absolute_path))}: {e.message[:200]}")
        else:
            print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
