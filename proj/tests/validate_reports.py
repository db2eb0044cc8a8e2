"""Generate CLI reports and validate each against the report schema."""
import json
import os
import subprocess
import sys

import jsonschema


def main():
    schema_path, cli, out_dir, samples = sys.argv[1:5]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    triangle = os.path.join(samples, "triangle.json")
    runs = {
        "demo_mp": ["demo", "mp-example"],
        "demo_localmin": ["demo", "localmin-example", "--e", "0.05"],
        "demo_scalar": ["demo", "mp-example", "--scalar"],
        "constants": ["constants", "--graph", triangle, "--problem", "builtin:mp-example"],
        "check": ["check", "--graph", "p2", "--problem", "builtin:mp-example"],
        "sweep": ["sweep", "--graph", "p2", "--problem", "builtin:mp-example", "--grid", "5"],
        "control": ["control", "--graph", "p2", "--problem", "builtin:control-objective", "--grid", "5"],
        "nonexist": ["nonexist", "--graph", "p2", "--problem", "builtin:nonexist-example"],
        "custom": ["solve", "--graph", triangle, "--problem", os.path.join(samples, "custom_mp.json")],
        "builtin_file": ["solve", "--graph", "path3", "--problem",
                         os.path.join(samples, "builtin_gamma.json")],
        "timed": ["demo", "mp-example"],
    }
    failures = 0
    for name, args in runs.items():
        path = os.path.join(out_dir, f"schema_{name}.json")
        extra = [] if name == "timed" else ["--deterministic"]
        rc = subprocess.run([cli, *args, *extra, "--out", path], capture_output=True).returncode
        if rc not in (0, 2):
            print(f"FAIL {name}: exit {rc}")
            failures += 1
            continue
        with open(path) as f:
            report = json.load(f)
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        if report.get("exit_code") != rc:
            errors.append(f"exit_code {report.get('exit_code')} but process exited {rc}")
        if errors:
            failures += 1
            for e in errors[:5]:
                where = "/".join(map(str, e.path)) if hasattr(e, "path") else ""
                print(f"FAIL {name}: {where}: {getattr(e, 'message', e)}")
        else:
            print(f"ok {name} (exit {rc})")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
