"""Smoke test for the `capinf` extension module.

Build first with `cargo build -p capinf-py` (add `--release` for speed); the
script loads the newest `libcapinf.so` from target/ and, when the `capinf`
binary is built too, compares digests with the CLI.
"""

import glob
import json
import os
import shutil
import subprocess
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_module():
    built = glob.glob(os.path.join(ROOT, "target", "*", "libcapinf.so"))
    if not built:
        sys.exit("libcapinf.so not found; run `cargo build -p capinf-py` first")
    lib = max(built, key=os.path.getmtime)
    tmp = tempfile.mkdtemp()
    shutil.copy(lib, os.path.join(tmp, "capinf.so"))
    sys.path.insert(0, tmp)
    import capinf

    return capinf


def check_values(capinf):
    evens, tail = capinf.NatSet("evens"), capinf.NatSet("tail:3")
    both = evens.intersection(tail)
    assert both.elements_below(10) == [4, 6, 8], both
    assert both == capinf.NatSet("arith:4,2")
    assert not both.is_finite() and both.almost_subset(evens)
    assert capinf.NatSet("finite:1,5").is_finite()
    assert 7 in evens.complement() and 7 not in evens
    assert capinf.NatSet.from_parts("1", "01") == capinf.NatSet("1(01)")

    x = capinf.Point("01(1)")
    assert x.prefix(5) == "01111" and x.bit(0) == 0
    c = capinf.ClopenSet(["01", "1"])
    assert x in c and capinf.Point("(0)") not in c
    assert c.union(c.complement()) == capinf.ClopenSet.full()
    assert capinf.ClopenSet(["0", "1"]) == capinf.ClopenSet.full()

    try:
        capinf.NatSet("arith:x")
    except ValueError:
        pass
    else:
        raise AssertionError("bad literal accepted")


def check_covers(capinf):
    points = [capinf.Point("(0)"), capinf.Point("1(0)")]
    cover = json.dumps({"variant": "anchored", "anchors": ["(0)", "1(0)"]})
    report = capinf.classify(cover, points)
    assert report["is_gamma"] == "true", report
    derived = capinf.a_infinity(cover, json.dumps({"index_sets": {"rule": "tails"}}), points)
    assert derived["report"]["is_gamma"] == "true", derived["report"]
    try:
        capinf.a_infinity(cover, json.dumps({"index_sets": ["evens", "finite:1,2"]}), points)
    except ValueError as e:
        assert "finite" in str(e)
    else:
        raise AssertionError("finite index set accepted")


def command_for(name):
    head = name.split("-")[0]
    return {"classify": "classify", "ainf": "ainf", "select": "select"}.get(head, "oracle-check")


def check_corpus(capinf):
    import jsonschema

    with open(os.path.join(ROOT, "schema", "scenario.schema.json")) as f:
        validator = jsonschema.Draft202012Validator(json.load(f))
    binaries = glob.glob(os.path.join(ROOT, "target", "*", "capinf"))
    cli = max(binaries, key=os.path.getmtime) if binaries else None
    ran = 0
    for path in sorted(glob.glob(os.path.join(ROOT, "scenarios", "*.json"))):
        name = os.path.basename(path)[:-5]
        with open(path) as f:
            validator.validate(json.load(f))
        try:
            report = capinf.run_scenario_file(command_for(name), path)
        except ValueError:
            assert name == "ainf-finite-index", name
            continue
        ran += 1
        again = capinf.run_scenario_file(command_for(name), path)
        assert report["digest"] == again["digest"], name
        if cli:
            out = subprocess.run([cli, command_for(name), "--scenario", path, "--format", "json"], capture_output=True)
            assert json.loads(out.stdout)["digest"] == report["digest"], name
    assert ran > 0
    return ran


def main():
    capinf = load_module()
    check_values(capinf)
    check_covers(capinf)
    ran = check_corpus(capinf)
    print(f"python smoke test ok: {ran} scenarios, {len(capinf.COMBINATORS)} combinators")


if __name__ == "__main__":
    main()
