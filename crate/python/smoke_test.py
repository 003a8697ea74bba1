"""Smoke test for the lecycle_py extension module.

Build it first:

    cargo build --release -p lecycle-py --features extension-module

then run `python3 python/smoke_test.py` from the repository root.
"""

import os
import shutil
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    for profile in ("release", "debug"):
        built = os.path.join(ROOT, "target", profile, "liblecycle_py.so")
        if os.path.exists(built):
            break
    else:
        sys.exit("liblecycle_py.so not found; build the lecycle-py crate first")
    tmp = tempfile.mkdtemp()
    shutil.copy(built, os.path.join(tmp, "lecycle_py.so"))
    sys.path.insert(0, tmp)
    import lecycle_py

    return lecycle_py


def main():
    lc = load()

    f = lc.Polynomial("x^4 + y^5")
    assert f.vars == ["x", "y"]
    assert lc.milnor(f) == 12
    assert str(f.partial("x")) == "4*x^3"

    cusp = lc.Polynomial("x^3 + y^2", vars=["t", "x", "y"])
    assert lc.sigma_dim(cusp) == 1
    assert lc.check_equisingular(cusp, seed=1)["verdict"] == "MILNOR_EQUISINGULAR"

    node = lc.Polynomial("y^2 - x^3 - t^2*x^2", vars=["t", "x", "y"])
    rec = lc.le_numbers(node, frame="1,0,0;0,1,0;0,0,1")["record"]
    assert (rec["mu0_f0"], rec["gamma_s_dot_v"], rec["lambda_s"]) == (2, 1, 1)

    report = lc.analyze("x^2*y^2 + w^2", vars=["x", "y", "w"], seed=3)
    assert report["verdict"] == "NOT_EQUISINGULAR"
    assert report["lambda_s_generic"] == 2
    kinds = [s["kind"] for s in report["betti_statements"]]
    assert "STRICT" in kinds and "EQUALITY" not in kinds

    try:
        lc.milnor(lc.Polynomial("x^2*y"))
    except lc.LecycleError as e:
        assert e.args[0] == "NON_ISOLATED"
    else:
        raise AssertionError("expected LecycleError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
