"""Runs each subcommand with --format json and validates the output."""
import json
import pathlib
import subprocess
import sys

import jsonschema

CASES = [
    ("fit", ["fit", "--data", "vasoconstriction", "--lambda", "0,0.5,1"]),
    ("fit", ["fit", "--data", "vasoconstriction", "--drop", "4,18", "--lambda", "0,1"]),
    ("test", ["test", "--data", "leukemia", "--hyp", "b1=0,b2=0", "--lambda", "0,1"]),
    ("influence", ["influence", "--beta0", "0,1,1", "--x1", "-2:2:3", "--x2", "-2:2:3"]),
    ("influence", ["influence", "--quantity", "if2", "--beta0", "0,1,1",
                   "--hyp", "b1=1,b2=1", "--x1", "-2:2:3", "--x2", "0:0:1"]),
    ("influence", ["influence", "--quantity", "pif", "--beta0", "0,1,1",
                   "--hyp", "b1=1,b2=1", "--d", "0,1,1", "--x1", "-2:2:3", "--x2", "0:0:1"]),
    ("power", ["power", "--hyp", "b1=1,b2=1",
               "--beta-star", "0,1.2,1.2", "--n", "50,100"]),
    ("power", ["power", "--beta0", "0,1,1", "--hyp", "b1=1,b2=1", "--d", "0,1,1",
               "--epsilon", "0,0.05", "--x-t", "5,5"]),
    ("power", ["power", "--data", "leukemia", "--hyp", "b2=0",
               "--beta-star", "-1.3,0,1", "--n", "40"]),
    ("samplesize", ["samplesize", "--hyp", "b1=1,b2=1",
                    "--beta-star", "0,1.2,1.2"]),
    ("simulate", ["simulate", "--mode", "level", "--n", "30", "--reps", "20"]),
    ("simulate", ["simulate", "--mode", "power", "--n", "30", "--reps", "20",
                  "--contaminate", "0.03"]),
]


def main():
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    failures = 0
    for name, args in CASES:
        schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
        proc = subprocess.run([exe, "--format", "json", *args], capture_output=True, text=True)
        label = " ".join(args)
        # Per-lambda failures still print a report.
        if proc.returncode not in (0, 3):
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        try:
            jsonschema.validate(json.loads(proc.stdout), schema)
            print(f"ok   {label}")
        except (json.JSONDecodeError, jsonschema.ValidationError) as e:
            print(f"FAIL {label}: {e}")
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
