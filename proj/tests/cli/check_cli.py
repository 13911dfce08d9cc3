#!/usr/bin/env python3
# Copyright 2026 The plearn Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end CLI check: exit codes, schema validity and byte reproducibility.

Usage: check_cli.py PLEARN_BINARY SCHEMA_DIR WORK_DIR
"""

import json
import shutil
import subprocess
import sys
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

EXIT_OK, EXIT_VALIDATION, EXIT_INFEASIBLE, EXIT_PARSE = 0, 2, 3, 4


class Checker:
    def __init__(self, binary, schema_dir, work):
        self.binary = binary
        self.work = work
        self.failures = []
        resources = []
        self.schemas = {}
        for path in sorted(schema_dir.glob("*.schema.json")):
            schema = json.loads(path.read_text())
            jsonschema.Draft202012Validator.check_schema(schema)
            self.schemas[path.name.removesuffix(".schema.json")] = schema
            resources.append((schema["$id"], Resource.from_contents(schema)))
            resources.append((path.name, Resource.from_contents(schema)))
        self.registry = Registry().with_resources(resources)

    def run(self, *args, expect=EXIT_OK):
        proc = subprocess.run([self.binary, *args], capture_output=True, text=True)
        label = " ".join(args[:1] + tuple(a for a in args[1:3]))
        if proc.returncode != expect:
            self.fail(f"{label}: exit {proc.returncode}, expected {expect}\nstderr: {proc.stderr}")
        return proc

    def validate(self, name, path):
        try:
            doc = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            self.fail(f"{path}: {e}")
            return None
        validator = jsonschema.Draft202012Validator(self.schemas[name], registry=self.registry)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors[:5]:
            self.fail(f"{path} against {name}: {'/'.join(map(str, e.path))}: {e.message}")
        return doc

    def expect(self, cond, message):
        if not cond:
            self.fail(message)

    def fail(self, message):
        self.failures.append(message)
        print("FAIL", message)

    def out(self, name):
        return str(self.work / name)


def main():
    binary, schema_dir, work = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    data_dir = schema_dir.parent / "data"
    shutil.rmtree(work, ignore_errors=True)
    work.mkdir(parents=True)
    c = Checker(binary, schema_dir, work)

    # Sample inputs conform to the input schemas.
    c.validate("gateset", data_dir / "cnot_ring.gateset.json")
    c.validate("noise_model", data_dir / "cnot_ad.noise.json")
    c.validate("gauge", data_dir / "cut.gauge.json")

    # analyze on every preset.
    expected = {"cnot": (16, 2), "swap": (16, 1), "cz": (16, 2), "cnot+swap": (32, 2), "cnot3ring": (192, 6), "circ3": (64, 4)}
    for preset, (edges, udf) in expected.items():
        c.run("analyze", "--gateset", preset, "--out", c.out(f"an_{preset}"))
        rep = c.validate("report", c.out(f"an_{preset}/report.json"))
        if rep:
            c.expect((rep["num_edges"], rep["udf"]) == (edges, udf), f"{preset}: got {(rep['num_edges'], rep['udf'])}")
            c.expect(rep["ldf"] == rep["num_edges"] - rep["udf"], f"{preset}: ldf != edges - udf")
    c.run("analyze", "--gateset", str(data_dir / "cnot_ring.gateset.json"), "--out", c.out("an_file"))
    c.expect(Path(c.out("an_file/report.json")).read_bytes() == Path(c.out("an_cnot3ring/report.json")).read_bytes(),
             "gate-set file and preset disagree")

    # simulate: all suites, reproducible bytes for a fixed seed.
    sim = ("simulate", "--gateset", "cnot", "--noise", str(data_dir / "cnot_ad.noise.json"), "--suite", "both",
           "--depths", "2,4,8,16", "--ls", "0,1,2,4", "--circuits", "6", "--shots", "100", "--seed", "5")
    c.run(*sim, "--out", c.out("sim"))
    c.run(*sim, "--out", c.out("sim_again"))
    for f in ("dataset.json", "dataset.csv"):
        c.expect(Path(c.out(f"sim/{f}")).read_bytes() == Path(c.out(f"sim_again/{f}")).read_bytes(), f"{f} not reproducible")
    c.validate("dataset", c.out("sim/dataset.json"))
    c.run("simulate", "--gateset", "cnot", "--noise", "depol:0.01:0.01:0.01", "--suite", "standard",
          "--depths", "2,4", "--circuits", "2", "--shots", "0", "--out", c.out("sim_std"))
    c.validate("dataset", c.out("sim_std/dataset.json"))

    # fit.
    c.run("fit", "--gateset", "cnot", "--dataset", c.out("sim/dataset.json"), "--out", c.out("fit"))
    c.validate("fits", c.out("fit/fits.json"))
    est = c.validate("estimates", c.out("fit/estimates.json"))
    if est:
        c.expect(est["complete"] and est["rank"] == 13, "fit: expected complete rank-13 coverage")
    icb = c.validate("intercept", c.out("fit/intercept.json"))
    if icb:
        c.expect(len(icb["estimates"]) == 15, "fit: expected 15 intercept estimates")
    c.run("fit", "--gateset", "cnot", "--dataset", c.out("sim/dataset.json"), "--out", c.out("fit_again"))
    for f in ("fits.json", "estimates.json", "intercept.json"):
        c.expect(Path(c.out(f"fit/{f}")).read_bytes() == Path(c.out(f"fit_again/{f}")).read_bytes(), f"{f} not reproducible")

    # feasible.
    c.run("feasible", "--gateset", "cnot", "--dataset", c.out("sim/dataset.json"), "--noise",
          str(data_dir / "cnot_ad.noise.json"), "--grid", "10201", "--out", c.out("feas"))
    reg = c.validate("region", c.out("feas/region.json"))
    if reg:
        c.expect(not reg["empty"], "feasible: region unexpectedly empty")
        c.expect(len(reg.get("mask", "")) == reg.get("points_per_axis", 0) ** 2, "feasible: mask size")
    c.run("feasible", "--gateset", "cnot", "--dataset", c.out("sim_std/dataset.json"), "--out", c.out("feas_std"),
          expect=EXIT_VALIDATION)

    # gauge-check.
    c.run("gauge-check", "--gateset", "cnot", "--noise", "depol:0.01:0.01:0.01", "--gauge",
          str(data_dir / "cut.gauge.json"), "--out", c.out("gc"))
    gc = c.validate("gauge_check", c.out("gc/gauge_check.json"))
    if gc:
        c.expect(gc["indistinguishable"] and gc["max_deviation"] <= 1e-9, "gauge-check: deviation too large")
    c.validate("noise_model", c.out("gc/gauged_model.json"))
    c.run("gauge-check", "--gateset", "cnot", "--noise", "depol:0.01:0.01:0.01", "--noise2", "depol:0.02:0.01:0.01",
          "--out", c.out("gc_diff"), expect=EXIT_VALIDATION)
    c.validate("gauge_check", c.out("gc_diff/gauge_check.json"))

    # report.
    c.run("report", "--gateset", "cnot", "--noise", "depol:0.01:0.01:0.01", "--depths", "2,4,8", "--circuits", "3",
          "--shots", "0", "--out", c.out("report"))
    for name, f in (("report", "report.json"), ("dataset", "dataset.json"), ("fits", "fits.json"),
                    ("estimates", "estimates.json"), ("region", "region.json")):
        c.validate(name, c.out(f"report/{f}"))
    c.expect(Path(c.out("report/summary.md")).is_file(), "report: summary.md missing")

    # Error exits.
    bad = work / "bad.json"
    bad.write_text('{\n  "n": 2,\n  "gates": [\n    {"n": 2,, }\n  ]\n}\n')
    proc = c.run("analyze", "--gateset", str(bad), "--out", c.out("bad"), expect=EXIT_PARSE)
    c.expect(":4:" in proc.stderr, f"parse error should name line 4: {proc.stderr!r}")
    c.run("analyze", "--bogus", expect=EXIT_PARSE)
    c.run("analyze", "--gateset", "nope", expect=EXIT_PARSE)
    c.run("simulate", "--gateset", "cnot", "--noise", "ad:0.05", "--engine", "pauli_fast", "--out", c.out("x"),
          expect=EXIT_VALIDATION)

    print(f"{len(c.failures)} failure(s)")
    return 1 if c.failures else 0


if __name__ == "__main__":
    sys.exit(main())
