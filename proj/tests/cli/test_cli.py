#!/usr/bin/env python3
"""End-to-end checks for the qmlkit CLI: subcommands, exit codes, and
byte-identical reports."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

BINARY = Path(sys.argv[1])

BASE_CONFIG = {
    "version": 1,
    "seed": 9,
    "dataset": {"synthetic": {"kind": "angular_blobs", "n": 60, "features": 2}},
    "split": {"train": 30, "test": 12},
    "model": {"qsvm": {"feature_map": {"kind": "z", "depth": 1}}},
}

SWEEP_CONFIG = {
    **BASE_CONFIG,
    "model": {"qnn": {"layers": 1, "train": {"epochs": 1, "learning_rate": 0.1}}},
    "sweep": [
        {"model.qnn.layers": 1},
        {"model.qnn.layers": 2},
        {"model.qnn.layers": 3},
    ],
}

failures = []


def check(name, condition, detail=""):
    status = "ok" if condition else "FAIL"
    print(f"  [{status}] {name} {detail}")
    if not condition:
        failures.append(name)


def run(*args, env_extra=None):
    env = None
    if env_extra:
        import os
        env = {**os.environ, **env_extra}
    return subprocess.run([str(BINARY), *args], capture_output=True, text=True, env=env)


def main():
    with tempfile.TemporaryDirectory() as raw:
        tmp = Path(raw)
        config = tmp / "config.json"
        config.write_text(json.dumps(BASE_CONFIG))
        sweep_config = tmp / "sweep.json"
        sweep_config.write_text(json.dumps(SWEEP_CONFIG))

        # evaluate writes a parseable single-row report
        report = tmp / "report.json"
        proc = run("evaluate", "--config", str(config), "--out", str(report))
        check("evaluate exit 0", proc.returncode == 0, proc.stderr.strip()[:200])
        doc = json.loads(report.read_text())
        check("report format", doc.get("format") == "qmlkit-report")
        check("one row", len(doc["rows"]) == 1)
        check("accuracy in range", 0.0 <= doc["rows"][0]["test_accuracy"] <= 1.0)
        check("no wall time in report", "wall_time_s" not in doc["rows"][0])

        # determinism across reruns and thread counts
        report2 = tmp / "report2.json"
        run("evaluate", "--config", str(config), "--out", str(report2))
        check("byte-identical rerun", report.read_bytes() == report2.read_bytes())
        report3 = tmp / "report3.json"
        run("evaluate", "--config", str(config), "--out", str(report3), "--threads", "3")
        check("byte-identical across threads", report.read_bytes() == report3.read_bytes())

        # QMLKIT_THREADS env default is honored and stays deterministic
        report_env = tmp / "report_env.json"
        proc = run("evaluate", "--config", str(config), "--out", str(report_env),
                   env_extra={"QMLKIT_THREADS": "2"})
        check("env threads exit 0", proc.returncode == 0, proc.stderr.strip()[:200])
        check("byte-identical under env threads",
              report.read_bytes() == report_env.read_bytes())

        # seed override changes the fingerprint
        report4 = tmp / "report4.json"
        run("evaluate", "--config", str(config), "--out", str(report4), "--seed", "123")
        doc4 = json.loads(report4.read_text())
        check("seed override", doc4["rows"][0]["fingerprint"] != doc["rows"][0]["fingerprint"])

        # sweep emits one row per point
        sweep_report = tmp / "sweep.csv"
        proc = run("sweep", "--config", str(sweep_config), "--out", str(sweep_report),
                   "--format", "csv")
        check("sweep exit 0", proc.returncode == 0, proc.stderr.strip()[:200])
        lines = sweep_report.read_text().strip().splitlines()
        check("sweep rows", len(lines) == 4)  # header + 3 points
        check("csv header", lines[0].startswith("fingerprint,model,detail,"))

        # kernel dump
        gram = tmp / "gram.csv"
        proc = run("kernel", "--config", str(config), "--out", str(gram))
        check("kernel exit 0", proc.returncode == 0, proc.stderr.strip()[:200])
        gram_lines = gram.read_text().strip().splitlines()
        check("gram header", gram_lines[0].startswith("id,"))
        check("gram is square", len(gram_lines) == 31)  # header + 30 training rows

        # train + model document
        model = tmp / "model.json"
        proc = run("train", "--config", str(config), "--out", str(model))
        check("train exit 0", proc.returncode == 0, proc.stderr.strip()[:200])
        model_doc = json.loads(model.read_text())
        check("model format", model_doc.get("format") == "qmlkit-model")
        check("model family", model_doc.get("family") == "qsvm")

        # preprocess export round-trips through the csv dataset loader
        features = tmp / "features.csv"
        proc = run("preprocess", "--config", str(config), "--out", str(features))
        check("preprocess exit 0", proc.returncode == 0, proc.stderr.strip()[:200])
        header = features.read_text().splitlines()[0]
        check("features header", header == "id,f0,f1,label")

        # report re-emission
        csv_report = tmp / "report.csv"
        proc = run("report", "--in", str(report), "--out", str(csv_report), "--format", "csv")
        check("report exit 0", proc.returncode == 0, proc.stderr.strip()[:200])
        check("report csv header",
              csv_report.read_text().startswith("fingerprint,model,detail,"))

        # validation failures exit 1
        bad = tmp / "bad.json"
        bad.write_text(json.dumps({**BASE_CONFIG, "bogus_key": 1}))
        proc = run("evaluate", "--config", str(bad))
        check("unknown key exits 1", proc.returncode == 1, f"rc={proc.returncode}")
        check("violation named", "bogus_key" in proc.stderr)

        too_big = tmp / "toobig.json"
        too_big.write_text(json.dumps({**BASE_CONFIG, "split": {"train": 500, "test": 10}}))
        proc = run("evaluate", "--config", str(too_big))
        check("oversized split exits 1", proc.returncode == 1, f"rc={proc.returncode}")

        # runtime failures exit 2
        proc = run("evaluate", "--config", str(tmp / "missing.json"))
        check("missing config exits 2", proc.returncode == 2, f"rc={proc.returncode}")

    if failures:
        print(f"{len(failures)} CLI check(s) failed: {failures}")
        return 1
    print("all CLI checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
