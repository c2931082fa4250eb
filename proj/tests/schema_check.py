#!/usr/bin/env python3
"""Run every subcommand once and validate its JSON report against the shipped schemas."""

import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource


def main() -> int:
    exe, schema_dir = str(pathlib.Path(sys.argv[1]).resolve()), pathlib.Path(sys.argv[2])
    resources = []
    for path in sorted(schema_dir.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        Draft202012Validator.check_schema(doc)
        resources.append((doc["$id"], Resource.from_contents(doc)))
    registry = Registry().with_resources(resources)

    def validator(name):
        return Draft202012Validator({"$ref": "urn:pixelate:" + name}, registry=registry)

    failures = 0
    work = pathlib.Path(tempfile.mkdtemp(prefix="pixel_schema_"))

    def run(schema, args, codes=(0,)):
        nonlocal failures
        proc = subprocess.run([exe, *args], cwd=work, capture_output=True)
        label = " ".join(args)
        if proc.returncode not in codes:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.decode().strip()}")
            failures += 1
            return None
        report = json.loads(proc.stdout)
        errors = sorted(validator(schema).iter_errors(report), key=lambda e: list(e.path))
        if errors:
            print(f"FAIL {label}: {errors[0].message} at {list(errors[0].path)}")
            failures += 1
        else:
            print(f"ok   {label}")
        (work / "last.json").write_bytes(proc.stdout)
        return report

    def save(name, args):
        report = run("model", args)
        if report is not None:
            (work / name).write_text(json.dumps(report))

    save("order.json", ["gen", "--kind", "order_function"])
    save("grid.json", ["gen", "--kind", "random_grid", "--seed", "3"])
    save("thr.json", ["gen", "--kind", "threshold", "--param", "level=1"])
    save("dy.json", ["gen", "--kind", "dyadic_alternating", "--param", "depth=3"])
    save("rh.json", ["gen", "--kind", "random_homogeneous", "--param", "l=2", "--param", "d=1", "--seed", "1"])
    save("q.json", ["quantize", "--in", "order.json", "--l", "2"])
    save("tq.json", ["quantize", "--in", "thr.json", "--l", "2"])
    save("dq.json", ["quantize", "--in", "dy.json", "--l", "2"])
    save("flat.json", ["flatten", "--in", "q.json"])
    save("inst.json", ["instantiate", "--in", "q.json", "--t", "2"])

    (work / "s.json").write_text(json.dumps({"format_version": 1, "kind": "discrete", "d": 1, "k": 2, "m": 3, "values": [1, 2, 1]}))
    (work / "r.json").write_text(json.dumps({"format_version": 1, "kind": "discrete", "d": 1, "k": 2, "m": 2, "values": [1, 1]}))
    for name in ("s.json", "r.json"):
        for e in validator("model").iter_errors(json.loads((work / name).read_text())):
            print(f"FAIL input {name}: {e.message}")
            failures += 1

    edges = [[a, b] for a in range(1, 6) for b in range(a + 1, 6)]
    pentagon = {"format_version": 1, "kind": "coloring", "d": 2, "sorts": [[1, 2, 3, 4, 5]],
                "colors": [{"set": e, "color": 1 if (e[1] - e[0]) % 5 in (1, 4) else 2} for e in edges]}
    two_sorts = {"format_version": 1, "kind": "coloring", "d": 1, "sorts": [[1, 2, 3], [4, 5, 6]],
                 "colors": [{"set": [v], "color": 1 + v % 2} for v in range(1, 7)]}
    sized = {"format_version": 1, "kind": "coloring", "d": 2, "sorts": [[1, 2, 3, 4, 5]],
             "colors": [{"set": [v], "color": 1 + v % 2} for v in range(1, 6)] + pentagon["colors"]}
    for name, doc in (("pent.json", pentagon), ("two.json", two_sorts), ("sized.json", sized)):
        for e in validator("coloring").iter_errors(doc):
            print(f"FAIL input {name}: {e.message}")
            failures += 1
        (work / name).write_text(json.dumps(doc))

    run("eval", ["eval", "--in", "order.json", "--point", "1/4,3/4"])
    run("check-homog", ["check-homog", "--in", "inst.json", "--l", "2"])
    run("check-homog", ["check-homog", "--in", "s.json", "--l", "1"], (1,))
    run("compatible", ["compatible", "--in", "inst.json", "--in2", "inst.json", "--l", "2"])
    run("distance", ["distance", "--in", "order.json", "--in2", "q.json"])
    run("distance", ["distance", "--in", "order.json", "--in2", "q.json", "--mc", "--trials", "1000"])
    run("mu", ["mu", "--in", "grid.json", "--n", "2"])
    run("sample", ["sample", "--in", "grid.json", "--n", "2", "--trials", "500"])
    run("substructs", ["substructs", "--in", "q.json", "--n", "2"])
    run("appears", ["appears", "--in", "r.json", "--in2", "s.json"])
    run("appears", ["appears", "--in", "r.json", "--in2", "s.json", "--weak"])
    run("inlay-find", ["inlay-find", "--in", "s.json", "--l", "1", "--s", "2"])
    run("inlay-find", ["inlay-find", "--in", "s.json", "--l", "1", "--s", "3"], (1,))
    run("inlay-sample", ["inlay-sample", "--in", "order.json", "--l", "1", "--s", "2"])
    run("inlay-sample", ["inlay-sample", "--in", "dy.json", "--l", "2", "--s", "2", "--box", "dyadic", "--seed", "4"])
    run("ramsey-find", ["ramsey-find", "--in", "pent.json", "--s", "3"], (1,))
    run("ramsey-find", ["ramsey-find", "--in", "sized.json", "--s", "2", "--kind", "uniform"])
    run("ramsey-find", ["ramsey-find", "--in", "two.json", "--s", "2"])
    for kind, extra in (("R1", ["--d", "1", "--a", "2", "--s", "3"]), ("R2", ["--d", "2", "--a", "2", "--s", "2"]),
                        ("R", ["--l", "1", "--d", "1", "--a", "2", "--s", "2"]),
                        ("r", ["--l", "1", "--s", "2", "--d", "1", "--k", "2"]),
                        ("delta", ["--l", "1", "--s", "2", "--d", "1", "--k", "2"])):
        run("ramsey-bound", ["ramsey-bound", "--kind", kind, *extra])
    run("appclose", ["appclose", "--in", "order.json", "--in2", "q.json", "--s", "2", "--trials", "5"])
    run("appclose", ["appclose", "--in", "dy.json", "--in2", "dq.json", "--s", "2", "--trials", "5", "--box", "dyadic"])
    run("certificate", ["pixelate", "--in", "order.json", "--epsilon", "1/2", "--nmax", "2", "--seed", "7"])
    run("certificate", ["pixelate", "--in", "grid.json", "--epsilon", "3/10", "--nmax", "2"])
    run("certificate", ["pixelate", "--in", "order.json", "--epsilon", "1/2", "--trials", "0"], (1,))
    run("certificate", ["ensure-size", "--in", "dy.json", "--epsilon", "1/2", "--r", "1"])
    run("certify", ["certify", "--in", "order.json", "--in2", "q.json", "--nmax", "2"], (1,))
    run("certify", ["certify", "--in", "order.json", "--in2", "flat.json", "--nmax", "2"], (1,))
    run("certify", ["certify", "--in", "thr.json", "--in2", "tq.json", "--nmax", "2", "--trials", "2000"], (0, 1))

    print("schema check:", "PASS" if failures == 0 else f"FAIL ({failures})")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
