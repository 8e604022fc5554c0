"""End-to-end checks of the gibbslab executable.

usage: test_cli.py GIBBSLAB_BINARY SOURCE_DIR
"""

import csv
import io
import json
import math
import os
import subprocess
import sys
import tempfile

import jsonschema

BIN, SRC = sys.argv[1], sys.argv[2]
SCHEMA = json.load(open(os.path.join(SRC, "docs", "report.schema.json")))
FAILURES = []


def run(*args, outdir, expect=0):
    env = dict(os.environ, GIBBSLAB_OUTPUT_DIR=outdir)
    p = subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
    if p.returncode != expect:
        FAILURES.append(f"{args}: exit {p.returncode}, expected {expect}\n{p.stdout}{p.stderr}")
    return p.stdout


def check(cond, what):
    if not cond:
        FAILURES.append(what)


def doc(*args, outdir, expect=0):
    out = run(*args, "--format", "json", outdir=outdir, expect=expect)
    d = json.loads(out)
    try:
        jsonschema.validate(d, SCHEMA)
    except jsonschema.ValidationError as e:
        FAILURES.append(f"{args}: schema: {e.message}")
    return d


def write(path, text):
    with open(path, "w") as f:
        f.write(text)
    return path


with tempfile.TemporaryDirectory() as tmp:
    out = os.path.join(tmp, "out")

    # count
    d = doc("count", "--n", "2", "--x", "3", "--convention", "bose", outdir=out)
    check(abs(d["records"][0]["ln_w"] - math.log(6)) < 1e-14, "count bose ln 6")
    d = doc("count", "--n", "2", "--x", "3", "--convention", "fermi", outdir=out)
    check(abs(d["records"][0]["ln_w"] - math.log(3)) < 1e-14, "count fermi ln 3")
    d = doc("count", "--n", "0", "--x", "5", "--convention", "distinguishable", outdir=out)
    check(d["records"][0]["ln_w"] == 0.0, "count N=0")
    check(os.path.exists(os.path.join(out, "manifest.json")), "manifest written to GIBBSLAB_OUTPUT_DIR")
    man = json.load(open(os.path.join(out, "manifest.json")))
    check(man["subcommand"] == "count" and man["parameters"]["n"] == 0, "count manifest parameters")

    # csv
    text = run("count", "--n", "2", "--x", "3", "--convention", "bose", "--format", "csv", outdir=out)
    rows = list(csv.DictReader(io.StringIO(text)))
    check(len(rows) == 1 and rows[0]["units"] == "k", "csv header and row")
    check(abs(float(rows[0]["ln_w"]) - math.log(6)) < 1e-14, "csv ln_w")

    # errors
    d = doc("count", "--n", "3", "--x", "2", "--convention", "fermi", outdir=out, expect=2)
    check(d["error"]["kind"] == "infeasible_state", "fermi error kind")
    d = doc("count", "--n", "3", outdir=out, expect=2)
    check(d["error"]["kind"] == "usage", "usage error")
    bad = write(os.path.join(tmp, "bad.conf"), "left.species = A\nleft.n = lots\n")
    d = doc("mix", bad, outdir=out, expect=2)
    check(d["error"]["kind"] == "config" and d["error"]["line"] == 2 and d["error"]["field"] == "left.n",
          "config error line/field")
    text = run("mix", bad, "--format", "csv", outdir=out, expect=2)
    check(text.startswith("error_kind,error_message,line,field\n"), "csv error record")

    # mix
    n = 10000
    lnc = math.lgamma(2 * n + 1) - 2 * math.lgamma(n + 1)
    r = doc("mix", os.path.join(SRC, "configs", "mix-same.conf"), outdir=out)["records"][0]
    check(r["delta_s_exact"] == 0.0 and r["delta_s_leading"] == 0.0, "same species none -> 0")
    r = doc("mix", os.path.join(SRC, "configs", "mix-different.conf"), outdir=out)["records"][0]
    check(abs(r["delta_s_leading"] - 2 * n * math.log(2)) < 1e-9, "different species leading 2N ln 2")
    check(abs(r["stirling_gap"] - (r["delta_s_leading"] - r["delta_s_exact"])) < 1e-9, "gap reported")
    same_origin = write(os.path.join(tmp, "o.conf"),
                        open(os.path.join(SRC, "configs", "mix-same.conf")).read().replace("policy = none",
                                                                                           "policy = by-origin"))
    r = doc("mix", same_origin, outdir=out)["records"][0]
    check(abs(r["delta_s_exact"] - lnc) < 1e-8, "by-origin exact ln C(2N,N)")

    # thermo, et
    r = doc("thermo", "--n", "1000", outdir=out)["records"][0]
    check(abs(r["mixing_entropy_discriminable"] - 2000 * math.log(2)) < 1e-9, "thermo mixing")
    r = doc("et", "--n", "1000", "--v1", "1", "--v2", "3", outdir=out)["records"][0]
    check(abs(r["normalization"] - 1) < 1e-12 and r["argmax"] == 250, "et distribution")

    # quantum
    r = doc("quantum", "bookkeeping", "--n", "4", "--x", "6", outdir=out)["records"][0]
    check(abs(r["difference"] - math.log(70)) < 1e-12, "bookkeeping ln 70")
    r = doc("quantum", "reduced-dm", outdir=out)["records"][0]
    check(all(abs(e - 0.5) < 1e-12 for e in r["nonzero_eigenvalues"]) and len(r["nonzero_eigenvalues"]) == 2,
          "reduced-dm eigenvalues")
    r = doc("quantum", "orthogonality", "--steps", "1000", outdir=out)["records"][0]
    man = json.load(open(os.path.join(out, "manifest.json")))
    check(r["max_overlap"] < 1e-10, "orthogonality")
    check(isinstance(man["seed"], int), "generated seed echoed in manifest")
    r = doc("quantum", "enumerate", "--n", "2", "--x", "3", "--statistics", "fermi", outdir=out)["records"][0]
    check(r["enumerated"] == 3 and r["match"], "enumerate")

    # demon: N=0, ledger, rerun
    zero = write(os.path.join(tmp, "zero.conf"), "n_per_side = 0\nseed = 1\n")
    r = doc("demon", zero, outdir=out)["records"][0]
    check(r["work_total"] == 0.0, "demon N=0 work 0")
    small = os.path.join(SRC, "configs", "demon-small.conf")
    d1 = run("demon", small, "--format", "csv", "--seed", "42", outdir=out)
    ledger1 = open(os.path.join(out, "ledger.csv")).read()
    check(ledger1.startswith("event_time,event_kind,work_delta,heat_delta,left_count\n"), "ledger header")
    man = json.load(open(os.path.join(out, "manifest.json")))
    check(man["seed"] == 42 and "ledger_checksum" in man, "demon manifest")
    out2 = os.path.join(tmp, "out2")
    d2 = run("rerun", os.path.join(out, "manifest.json"), outdir=out2)
    check(d1 == d2, "rerun output identical")
    check(open(os.path.join(out2, "ledger.csv")).read() == ledger1, "rerun ledger identical")
    tampered = dict(man, output_checksum="0" * 16)
    write(os.path.join(tmp, "t.json"), json.dumps(tampered))
    run("rerun", os.path.join(tmp, "t.json"), outdir=out2, expect=1)
    fast = write(os.path.join(tmp, "fast.conf"), "n_per_side = 10\nmembrane_speed = 0.5\n")
    d = doc("demon", fast, outdir=out, expect=2)
    check(d["error"]["kind"] == "quasi_staticity", "quasi-staticity error")

    # json ledger lines
    run("demon", small, "--seed", "42", outdir=out)
    lines = open(os.path.join(out, "ledger.jsonl")).read().splitlines()
    check(all(set(json.loads(l)) == {"event_time", "event_kind", "work_delta", "heat_delta", "left_count"}
              for l in lines[:50]), "jsonl ledger records")

if FAILURES:
    print("\n".join(FAILURES))
    sys.exit(1)
print("cli: all checks passed")
