#!/usr/bin/env python3
"""End-to-end checks of the interferlab CLI: schemas, exit codes, determinism, goldens."""

import json
import math
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

BIN, SCHEMAS, GOLDEN = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
failures = []


def run(*args, env=None):
    full_env = {k: v for k, v in os.environ.items() if k != "INTERFERLAB_SEED"}
    full_env.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, env=full_env)


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def validate(command, stdout, what):
    schema = json.loads((SCHEMAS / f"{command}.schema.json").read_text())
    try:
        doc = json.loads(stdout)
        jsonschema.validate(doc, schema)
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        check(False, f"{what}: schema ({str(e).splitlines()[0]})")
        return None
    check(True, f"{what}: schema")
    return doc


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    branches = tmp / "branches.json"
    branches.write_text(json.dumps({"branches": [[[1, 0], [0, 1]], [[1, 0], [0, -1]]], "fixed_state": [0, 1]}))
    cases = [
        ("mz-sweep", ["--points", "5"], 0),
        ("sorkin", ["--order", "3", "--seed", "11", "--trials", "200"], 0),
        ("sorkin", ["--order", "2", "--seed", "11"], 0),
        ("sorkin", ["--order", "2", "--theory", "classical", "--seed", "11"], 0),
        ("kickback", ["--branches", str(branches), "--seed", "2", "--trials", "50"], 0),
        ("deutsch", ["--function", "0,1"], 0),
        ("deutsch", ["--function", "0,1,1,0"], 0),
        ("exchange", ["--state", "antisym"], 0),
        ("exchange", ["--state", "sym"], 0),
        ("exchange", ["--state", "anyon:2.2"], 0),
        ("phase-order", ["--angles=0,0,0", "--seed", "4", "--trials", "100"], 0),
        ("phase-order", ["--angles=0,1.5,0.2,3", "--seed", "4", "--trials", "100"], 0),
        ("phase-order", ["--theory", "classical", "--dim", "4", "--seed", "4"], 0),
    ]
    docs = {}
    for command, args, code in cases:
        what = " ".join([command, *args]).replace(str(tmp) + "/", "")
        first, second = run(command, *args), run(command, *args)
        check(first.returncode == code, f"{what}: exit {first.returncode}")
        check(first.stdout == second.stdout, f"{what}: byte-identical reruns")
        docs[what] = validate(command, first.stdout, what)

    d = docs["deutsch --function 0,1"]
    check(d and d["parity"] == 1 and d["queries"] == 1 and d["prob"] == 1.0, "deutsch (0,1) parity 1 in one query")
    d = docs["exchange --state antisym"]
    check(d and d["class"] == "Fermion" and abs(d["theta"] - math.pi) < 1e-12, "antisymmetric state is a fermion")
    d = docs["exchange --state anyon:2.2"]
    check(d and d["class"] == "Anyon" and abs(d["theta"] - 2.2) < 1e-9, "anyon angle read back")
    d = docs["phase-order --angles=0,0,0 --seed 4 --trials 100"]
    check(d and d["order"] is None, "trivial phase has no detection order")
    d = docs["sorkin --order 2 --seed 11"]
    check(d and abs(d["report"]["minimax"] - 0.5) < 1e-6, "second-order minimax 0.5")
    d = docs["kickback --branches branches.json --seed 2 --trials 50"]
    check(d and abs(d["kickback"]["angles"][1] - math.pi) < 1e-12, "kickback of {I, Z} on |1> is pi")

    # CSV output against goldens.
    for name, args in [("mz_sweep_3.csv", ["mz-sweep", "--points", "3", "--format", "csv"]),
                       ("mz_sweep_1.csv", ["mz-sweep", "--points", "1", "--format", "csv"]),
                       ("sorkin3_seed5.csv", ["sorkin", "--order", "3", "--trials", "5", "--seed", "5", "--format", "csv"])]:
        r = run(*args)
        check(r.returncode == 0 and r.stdout == (GOLDEN / name).read_bytes(), f"golden {name}")
    rows = run("mz-sweep", "--points", "3", "--format", "csv").stdout.decode().splitlines()[1:]
    values = [tuple(map(float, row.split(","))) for row in rows]
    check(all(abs(p - math.cos(x / 2) ** 2) < 1e-12 for x, p in values), "mz-sweep values are cos^2(dphi/2)")
    check(b"\r" not in run("mz-sweep", "--format", "csv").stdout, "CSV uses LF line endings")

    # Exit codes for bad input.
    for args, code in [(["mz-sweep", "--theory", "classical"], 2),
                       (["sorkin", "--order", "3"], 2),
                       (["sorkin", "--order", "4", "--seed", "1"], 2),
                       (["deutsch", "--function", "0,2"], 2),
                       (["exchange", "--state", "boson"], 2),
                       (["kickback", "--seed", "1"], 2),
                       (["mz-sweep", "--dim", "1"], 2),
                       (["nonsense"], 2)]:
        r = run(*args)
        check(r.returncode == code and r.stdout == b"", f"{' '.join(args)}: exit {r.returncode}, expected {code}")
    r = run("mz-sweep", "--theory", "classical")
    check(b"no nontrivial phase group" in r.stderr, "classical mz-sweep names the missing phase group")

    # Moving target state: the branches do not fix it.
    moved = tmp / "moved.json"
    moved.write_text(json.dumps({"branches": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], "fixed_state": [1, 0]}))
    check(run("kickback", "--branches", str(moved), "--seed", "1").returncode == 2, "kickback rejects a moved state")

    # Seed and config precedence: flags > config file > environment > defaults.
    config = tmp / "config.json"
    config.write_text(json.dumps({"seed": 5, "trials": 10, "order": 3}))
    r = run("sorkin", "--config", str(config), "--trials", "20", env={"INTERFERLAB_SEED": "9"})
    cfg = json.loads(r.stdout)["meta"]["config"]
    check(cfg["seed"] == 5 and cfg["trials"] == 20 and cfg["order"] == 3, "flags override the config file")
    r = run("sorkin", "--order", "3", "--trials", "10", env={"INTERFERLAB_SEED": "9"})
    check(r.returncode == 0 and json.loads(r.stdout)["meta"]["config"]["seed"] == 9, "INTERFERLAB_SEED is the seed default")
    check(run("sorkin", "--order", "3", "--trials", "10", env={"INTERFERLAB_SEED": "x"}).returncode == 2,
          "malformed INTERFERLAB_SEED is a usage error")
    a = run("sorkin", "--order", "3", "--trials", "10", "--seed", "9").stdout
    b = run("sorkin", "--order", "3", "--trials", "10", env={"INTERFERLAB_SEED": "9"}).stdout
    check(a == b, "seed from flag and environment give identical output")
    inline = tmp / "inline.json"
    inline.write_text(json.dumps({"seed": 1, "branches": [[[1, 0], [0, 1]], [[1, 0], [0, -1]]]}))
    check(run("kickback", "--config", str(inline)).returncode == 0, "branches inline in the config file")

    out = tmp / "out.json"
    r = run("deutsch", "--function", "1,0", "--out", str(out))
    check(r.returncode == 0 and r.stdout == b"" and json.loads(out.read_text())["parity"] == 1, "--out writes the file")

sys.exit(1 if failures else 0)
