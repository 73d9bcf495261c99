"""End-to-end checks of the ruca command-line tool.

Usage: test_cli.py <ruca> <ruca_fixture> <schema.json> <data dir>
"""

import csv
import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

RUCA, FIXTURE, SCHEMA, DATA = sys.argv[1:5]
del sys.argv[1:5]

with open(SCHEMA) as fh:
    VALIDATOR = jsonschema.Draft202012Validator(json.load(fh))


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("RUCA_THREADS", None)
    if env:
        full_env.update(env)
    return subprocess.run([RUCA, *map(str, args)], capture_output=True, text=True, env=full_env)


def load(path):
    with open(path) as fh:
        doc = json.load(fh)
    VALIDATOR.validate(doc)
    return doc


class Cli(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.tmp = tempfile.TemporaryDirectory()
        cls.dir = cls.tmp.name
        for name in ("adder4", "adder8", "mult4"):
            with open(cls.path(name + ".bench"), "w") as fh:
                subprocess.run([FIXTURE, name], stdout=fh, check=True)

    @classmethod
    def tearDownClass(cls):
        cls.tmp.cleanup()

    @classmethod
    def path(cls, name):
        return os.path.join(cls.dir, name)

    def test_factor_full_degree_has_zero_error(self):
        out = self.path("m.json")
        r = run("factor", os.path.join(DATA, "small.matrix"), "--degree", 3, "--out", out)
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = load(out)
        self.assertEqual(doc["err_curve"][-1], 0)
        self.assertEqual(len(doc["pairs"]), 3)

    def test_factor_zero_degree_is_a_constraint_violation(self):
        r = run("factor", os.path.join(DATA, "small.matrix"), "--degree", 0)
        self.assertEqual(r.returncode, 3)

    def test_factor_error_curve_does_not_increase(self):
        csv_path = self.path("curve.csv")
        r = run("factor", self.path("adder4.bench"), "--degree", 4, "--csv", csv_path, "--out", self.path("f.json"))
        self.assertEqual(r.returncode, 0, r.stderr)
        with open(csv_path) as fh:
            rows = list(csv.DictReader(fh))
        self.assertEqual([int(x["degree"]) for x in rows], [1, 2, 3, 4])
        errors = [int(x["error"]) for x in rows]
        self.assertTrue(all(b <= a for a, b in zip(errors, errors[1:])), errors)

    def test_input_errors(self):
        self.assertEqual(run("factor", self.path("missing.bench"), "--degree", 1).returncode, 2)
        r = run("synth", os.path.join(DATA, "undefined_net.bench"), "--thresholds", "0.1")
        self.assertEqual(r.returncode, 2)
        self.assertIn("q", r.stderr)
        self.assertEqual(run("synth", self.path("adder4.bench")).returncode, 2)
        self.assertEqual(run("bogus").returncode, 2)

    def test_constraint_errors(self):
        r = run("synth", self.path("adder4.bench"), "--thresholds", "-0.1")
        self.assertEqual(r.returncode, 3)
        r = run("synth", self.path("adder4.bench"), "--thresholds", "0.1", "--metric", "rmse")
        self.assertEqual(r.returncode, 3)
        r = run("dse", self.path("adder4.bench"), "--thresholds", "0.1", "--max-in", 1)
        self.assertEqual(r.returncode, 3)

    def synth(self, bench, *extra):
        out, rep, csv_path = self.path("s.bench"), self.path("s.json"), self.path("s.csv")
        r = run("synth", self.path(bench), "--out", out, "--report", rep, "--csv", csv_path, *extra)
        self.assertEqual(r.returncode, 0, r.stderr)
        return out, load(rep), csv_path

    def test_synth_report_and_csv_agree(self):
        out, doc, csv_path = self.synth("adder4.bench", "--thresholds", "0.45,0.3")
        self.assertEqual([m["name"] for m in doc["modes"]], ["base", "l2", "full"])
        self.assertEqual(doc["flow"], "direct")
        self.assertTrue(doc["full_exact"])
        with open(csv_path) as fh:
            rows = list(csv.DictReader(fh))
        self.assertEqual([m["name"] for m in doc["modes"]], [x["mode"] for x in rows])
        for m, x in zip(doc["modes"], rows):
            self.assertEqual(float(x["qor"]), m["qor"])
            self.assertLessEqual(m["qor"], m["threshold"] if m["name"] != "full" else 0.0)
        r = run("verify", out, self.path("adder4.bench"), self.path("s.json"), "--out", self.path("v.json"))
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(load(self.path("v.json"))["modes"], doc["modes"])

    def test_verify_flags_an_inexact_full_mode(self):
        out, _, _ = self.synth("adder4.bench", "--thresholds", "0.3")
        with open(self.path("adder4.bench")) as fh:
            text = fh.read()
        swapped = text.replace("OUTPUT(s0)", "OUTPUT(tmp)").replace("OUTPUT(s1)", "OUTPUT(s0)")
        swapped = swapped.replace("OUTPUT(tmp)", "OUTPUT(s1)")
        with open(self.path("swapped.bench"), "w") as fh:
            fh.write(swapped)
        r = run("verify", out, self.path("swapped.bench"), self.path("s.json"))
        self.assertEqual(r.returncode, 4)
        self.assertIn("INEXACT", r.stdout)

    def test_dse_losses_recompute_and_commits_are_strict(self):
        rep = self.path("d.json")
        r = run("dse", self.path("adder8.bench"), "--thresholds", "0.01,0.02", "--max-in", 4, "--max-out", 4,
                "--out", self.path("d.bench"), "--report", rep)
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = load(rep)
        self.assertEqual(doc["flow"], "dse")
        self.assertTrue(doc["full_exact"])
        for it in doc["dse"]["iterations"]:
            losses = [c["loss"] for c in it["candidates"]]
            for c in it["candidates"]:
                self.assertEqual(c["loss"], c["qor"] * (c["p_acc"] + c["p_app"]))
            self.assertEqual(it["selected"], losses.index(min(losses)))
        for c in doc["dse"]["commits"]:
            self.assertLess(c["qor"], c["threshold"])
        r = run("verify", self.path("d.bench"), self.path("adder8.bench"), rep)
        self.assertEqual(r.returncode, 0, r.stderr)

    def test_dse_is_deterministic_and_thread_independent(self):
        args = ["dse", self.path("mult4.bench"), "--thresholds", "0.02,0.005", "--max-in", 5, "--max-out", 4]
        reports = []
        for threads, env in ((1, None), (3, None), (1, {"RUCA_THREADS": "4"})):
            rep, net = self.path(f"t{len(reports)}.json"), self.path(f"t{len(reports)}.bench")
            r = run("--threads", threads, *args, "--report", rep, "--out", net, env=env)
            self.assertEqual(r.returncode, 0, r.stderr)
            with open(rep) as fh, open(net) as nh:
                reports.append((fh.read(), nh.read()))
        self.assertEqual(reports[0], reports[1])
        self.assertEqual(reports[0], reports[2])
        self.assertEqual(run("--threads", 1, *args, env={"RUCA_THREADS": "zero"}).returncode, 3)

    def test_dse_with_partition_file(self):
        with open(os.path.join(DATA, "c17.bench")) as fh:
            gates = [line.split("=")[0].strip() for line in fh if "=" in line]
        part = self.path("c17.part")
        with open(part, "w") as fh:
            for i, g in enumerate(gates):
                fh.write(f"{g} {0 if i < 3 else 1}\n")
        rep = self.path("p.json")
        r = run("dse", os.path.join(DATA, "c17.bench"), "--thresholds", "0.3", "--max-in", 5, "--max-out", 4,
                "--partition-file", part, "--report", rep)
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(len(load(rep)["dse"]["subcircuits"]), 2)
        with open(part, "a") as fh:
            fh.write("nonexistent 0\n")
        r = run("dse", os.path.join(DATA, "c17.bench"), "--thresholds", "0.3", "--partition-file", part)
        self.assertEqual(r.returncode, 2)


if __name__ == "__main__":
    unittest.main(verbosity=2)
