"""Smoke test for the germforge_py extension.

Build first:
    cargo build -p germforge-py --features extension-module
    cp target/debug/libgermforge_py.so python/germforge_py.so
"""
import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import germforge_py as gf


def main():
    fam = gf.Family.nx_zmod(6)
    assert fam.compose("(2,1)", "(3,2)") == "(6,5)", fam.compose("(2,1)", "(3,2)")
    assert fam.validate_left_cancellative() == "Proven"
    assert fam.is_unit("(1,3)")
    assert not fam.is_unit("(2,0)")

    h = fam.hull("(2,1)inv((4,0))(3,3)")
    print("normal form:", h.normal_form())
    assert h.compose(h.invert()).is_idempotent()

    w = fam.germ("(6,0)(1,1)inv((6,0))", "chi(6,0)")
    u = fam.germ("(1,1)", "chi(6,0)")
    assert w.is_isotropy()
    assert not w.equals(u)
    assert len(fam.isotropy("chi(4,3)")) == 6

    verdict, detail = gf.Family.z_nx().iso_interior(gf.Family.z_nx().germ("(1,1)", "chi(0,2)"))
    assert verdict == "no", (verdict, detail)

    assert gf.equalizer_closed_form(6, 1, 0, 1, 3) == "(2,0)", gf.equalizer_closed_form(6, 1, 0, 1, 3)
    assert gf.right_cancel_failure_witness(1) is None

    doc = json.loads(gf.paper_witness_suite(6, samples=10))
    verdicts = [r["verdict"] for r in doc["reports"]]
    assert len(verdicts) == 6 and all(v == "Pass" for v in verdicts), verdicts

    code, out, err = gf.run_cli(["compose", "(2,1)", "(3,2)", "--no-meta"])
    assert code == 0 and "(6,5)" in out, (code, out, err)
    code, _, _ = gf.run_cli(["compose", "(2,x)", "(1,1)"])
    assert code == 3

    try:
        fam.compose("(2,x)", "(1,1)")
    except ValueError as e:
        print("parse error:", e)
    else:
        raise AssertionError("expected ValueError")

    print("ok")


if __name__ == "__main__":
    main()
