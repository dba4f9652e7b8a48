"""CLI contract: exit codes, output shape, and JSON schema conformance."""

import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

BIN = sys.argv[1]
SCHEMAS = Path(sys.argv[2])
failures = []


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(*args, env=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=env, timeout=600)


def check(cond, what):
    if not cond:
        failures.append(what)
        print("failed:", what)


def valid(doc, name, what):
    try:
        jsonschema.validate(doc, schema(name))
    except jsonschema.ValidationError as e:
        check(False, f"{what}: {e.message}")


def json_lines(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


# analyze: exit codes and report schema
r = run("analyze", "--", "-25355")
check(r.returncode == 0, "analyze -25355 exits 0")
rep = json.loads(r.stdout)
check(rep["verdict"] == "InfiniteProven", "Schmithals verdict")
check(rep["certificate"]["cl2_order"] == 16, "Schmithals |Cl_2(F)|")
valid(rep, "tower_report", "analyze -25355")

r = run("analyze", "--discs=-7,-3,-8,+29,+5")
check(r.returncode == 10, "worked example exits 10")
rep = json.loads(r.stdout)
check(rep["verdict"] == "Open" and rep["case"]["tag"] == "M49", "worked example is open, case 49")
check(any(d["quantity"] == "kl_rank_lower_bound" and d["achieved"] == 7 and d["required"] == 8
          for d in rep["diagnostics"]), "worked example near-miss")
valid(rep, "tower_report", "analyze worked example")

r = run("analyze", "0")
check(r.returncode == 2 and "NotFundamental" in r.stderr, "analyze 0 exits 2 with NotFundamental")
r = run("analyze", "12")
check(r.returncode == 2, "analyze of a real field exits 2")
r = run("analyze", "--discs=-7,-4,-8")
check(r.returncode == 2, "repeated prime rejected")
r = run("analyze", "abc")
check(r.returncode == 2, "non-integer rejected")
r = run("analyze")
check(r.returncode == 2, "missing input rejected")

# batch: order preserved, parallel output identical
batch = ["--", "-25355", "-24360", "-399", "-1023", "-2211", "-740"]
seq = run("analyze", *batch)
par = run("analyze", "-j", "4", *batch)
check(seq.stdout == par.stdout, "parallel batch output matches sequential")
check([d["discriminant"] for d in json_lines(seq.stdout)] == [-25355, -24360, -399, -1023, -2211, -740],
      "batch order")
check(seq.returncode == 10, "batch with an open field exits 10")
for doc in json_lines(seq.stdout):
    valid(doc, "tower_report", f"batch {doc['discriminant']}")
check(run("analyze", *batch).stdout == seq.stdout, "re-run is byte-identical")

r = run("analyze", "--human", "--", "-25355")
check(r.returncode == 0 and "verdict: InfiniteProven" in r.stdout, "human report")

# bound override through the environment
env = dict(os.environ, TWO_TOWER_MAX_DISC="100")
r = run("classgroup", "--", "-399", env=env)
check(r.returncode == 2 and "BoundExceeded" in r.stderr, "TWO_TOWER_MAX_DISC enforced")
r = run("--max-disc", "100", "classgroup", "--", "-399")
check(r.returncode == 2 and "BoundExceeded" in r.stderr, "--max-disc enforced")

# classgroup
r = run("classgroup", "--", "-399")
check(r.returncode == 0 and r.stdout.splitlines()[0] == "C2 x C8 (order 16)", "classgroup -399")
check("d4 = 1" in r.stdout and "d8 = 1" in r.stdout, "classgroup ranks")
check(run("classgroup", "145", "--narrow").stdout.startswith("C4 (order 4)"), "classgroup 145 narrow")
check(run("classgroup", "145", "--wide").stdout.startswith("C4 (order 4)"), "classgroup 145 wide")
check(run("classgroup", "12", "--wide").stdout.startswith("trivial"), "classgroup 12 wide")
check(run("classgroup", "906").returncode == 2, "classgroup 906 rejected")
r = run("classgroup", "2305", "--json")
doc = json.loads(r.stdout)
valid(doc, "classgroup", "classgroup json")
check(doc["group"]["order"] == 16, "classgroup 2305 order")

# search
r = run("search", "complete", "--case", "B", "--partial=-3,-11,_,-7,-31", "--bound", "200")
lines = json_lines(r.stdout)
check(r.returncode == 0 and lines and lines[0]["discs"] == [-3, -11, -107, -7, -31], "complete case B")
for doc in lines:
    valid(doc, "search_result", "complete")
    check(doc["case"] == "B", "complete reclassifies")
r = run("search", "complete", "--case", "B", "--partial=5,_,_,_,_")
check(r.returncode == 2 and "TemplateMismatch" in r.stderr, "complete template mismatch")
r = run("search", "base-fields", "--template", "real-pos-pair", "--min-cl2", "8", "--bound", "3000")
lines = json_lines(r.stdout)
check({904, 2605} <= {d["discriminant"] for d in lines}, "base fields real-pos-pair")
for doc in lines:
    valid(doc, "search_result", "base-fields")
r = run("search", "families", "--family", "lopez", "--n", "2", "--limit", "3")
lines = json_lines(r.stdout)
check(r.returncode == 0 and lines and all(d["verified"] for d in lines), "lopez family")
for doc in lines:
    valid(doc, "family_member", "families")

# verify
r = run("verify", "real-pair", "5", "29", "--bound", "10000")
check(r.returncode == 0 and r.stdout.startswith("checked ") and r.stdout.strip().endswith("0 violations"),
      "verify real-pair text")
r = run("verify", "imag-triple", "7", "19", "3", "--json")
valid(json.loads(r.stdout), "verification_report", "verify imag-triple json")
r = run("verify", "real-pair", "3", "29")
check(r.returncode == 2 and "PreconditionUnmet" in r.stderr, "verify precondition")

# explore
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "summary.json"
    r = run("explore", "--discs=+5,+29,+109,+661", "--bound", "100000", "--summary", str(path))
    rows = [l for l in r.stdout.splitlines() if not l.startswith("#")]
    check(r.returncode == 0 and len(rows) > 9000 and all(len(l.split("\t")) == 5 for l in rows), "explore TSV")
    summary = json.loads(path.read_text())
    valid(summary, "experiment_summary", "explore summary")
    groups = {g["symbols"]: g["order_2parts"] for g in summary["summary"]}
    check(groups.get("+1,-1,-1,+1") == [2, 4], "explore 661 symbol group")
r = run("explore", "--discs=+5,+29,+109,+2609", "--bound", "100000")
last = r.stdout.splitlines()[-1]
check(last.startswith("# summary "), "explore inline summary")
summary = json.loads(last[len("# summary "):])
valid(summary, "experiment_summary", "explore inline summary")
check({g["symbols"]: g["order_2parts"] for g in summary["summary"]}.get("+1,-1,-1,+1") == [8], "explore 2609")

# catalog
r = run("catalog")
check(r.returncode == 0 and "matrix B" in r.stdout and "matrix M49" in r.stdout, "catalog dump")
r = run("catalog", "--json")
valid(json.loads(r.stdout), "catalog", "catalog json")

check(run().returncode == 2, "no subcommand exits 2")
check(run("bogus").returncode == 2, "unknown subcommand exits 2")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
