#!/usr/bin/env python3
"""Run each dmu_cli subcommand once and validate its JSON output against schemas/."""
import json
import pathlib
import subprocess
import sys
import tempfile

try:
    import jsonschema
    from referencing import Registry, Resource
except ImportError:
    print("jsonschema not available, skipping")
    sys.exit(77)

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
resources = []
for p in schema_dir.glob("*.schema.json"):
    doc = json.loads(p.read_text())
    resources.append((doc["$id"], Resource.from_contents(doc)))
registry = Registry().with_resources(resources)


def validator(name):
    schema = json.loads((schema_dir / name).read_text())
    return jsonschema.Draft202012Validator(schema, registry=registry)


def run(args):
    r = subprocess.run([cli, *args], capture_output=True, text=True)
    if r.returncode != 0:
        raise SystemExit(f"{' '.join(args)} exited {r.returncode}: {r.stderr}")
    return json.loads(r.stdout)


z3 = "[[0,0],[0,0],[0,0],[1,0]]"
problem = {"measure": "dirichlet", "f": [[[0, 0], [1, 0]], [[1, 0], [-0.5, 0]]], "h": [[1, 0]]}
measure_obj = {"label": "mix", "atoms": [[0.2, 0.1, 0.5]], "circle_density": {"coeffs": [[0, 1, 0]]},
               "disk_density": [{"kind": "alpha", "alpha": 0.5}]}

failures = 0
with tempfile.TemporaryDirectory() as tmp:
    prob_path = pathlib.Path(tmp) / "problem.json"
    prob_path.write_text(json.dumps(problem))
    sol_path = pathlib.Path(tmp) / "solution.json"
    reports = {
        "norm": run(["norm", "--poly", z3]),
        "localdir": run(["localdir", "--poly", z3, "--lambda", "0.3,0.2"]),
        "dual-check": run(["dual-check", "--measure", "hardy", "--poly", z3]),
        "hd-norm": run(["hd-norm", "--trig", "[[-1,0.5,0],[1,0.5,0]]"]),
        "carleson": run(["carleson", "--measure", "dirichlet", "--nu", "hardy", "--degree", "6"]),
        "mult-norm": run(["mult-norm", "--poly", "[[0,0],[1,0]]", "--degree", "6"]),
        "pick": run(["pick", "--poly", "[[0,0],[0.5,0]]", "--points", "[[0,0],[0.3,0.1]]"]),
    }
    subprocess.run([cli, "corona", "solve", "--problem", str(prob_path), "--degree", "16", "--out", str(sol_path)],
                   check=True)
    reports["corona solve"] = json.loads(sol_path.read_text())
    reports["corona verify"] = run(["corona", "verify", "--problem", str(prob_path), "--solution", str(sol_path)])

    checks = [("report.schema.json", name, doc) for name, doc in reports.items()]
    checks.append(("solution.schema.json", "solution", reports["corona solve"]["solution"]))
    checks.append(("problem.schema.json", "problem", problem))
    checks.append(("measure.schema.json", "measure object", measure_obj))
    checks.append(("measure.schema.json", "echoed measure", reports["norm"]["measure"]))
    for schema, name, doc in checks:
        errors = list(validator(schema).iter_errors(doc))
        status = "ok" if not errors else "FAIL"
        print(f"{status:4} {name} against {schema}")
        for e in errors[:5]:
            print("     ", e.message)
        failures += bool(errors)

    # the measure object must also be accepted by the CLI itself
    run(["norm", "--poly", z3, "--measure", json.dumps(measure_obj)])

sys.exit(1 if failures else 0)
