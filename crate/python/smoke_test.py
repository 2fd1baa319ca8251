"""Smoke test for the prooflab_py extension module.

Build it first with

    cargo build -p prooflab-py --features extension-module --release

The script picks up target/{release,debug}/libprooflab_py.so (or a path in
PROOFLAB_PY_LIB) and loads it under the module name prooflab_py.
"""

import importlib.util
import os
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def find_library():
    explicit = os.environ.get("PROOFLAB_PY_LIB")
    if explicit:
        return pathlib.Path(explicit)
    for profile in ("release", "debug"):
        for name in ("libprooflab_py.so", "libprooflab_py.dylib", "prooflab_py.dll"):
            path = ROOT / "target" / profile / name
            if path.exists():
                return path
    sys.exit("prooflab_py library not found; build it with cargo first")


def load():
    entry = importlib.util.spec_from_file_location("prooflab_py", find_library())
    module = importlib.util.module_from_spec(entry)
    entry.loader.exec_module(module)
    return module


def main():
    pl = load()

    assert pl.ord("W + W") == "W*2"
    assert pl.ord("w^(W+1) ? W") == "greater"
    assert pl.ord_cmp("w_2(W)", "W+1") == "less"
    try:
        pl.ord("W +")
    except ValueError:
        pass
    else:
        raise AssertionError("bad ordinal accepted")

    cut = (ROOT / "proofs" / "cut.proof").read_text()
    assert pl.check(cut) == []
    bad = (ROOT / "proofs" / "invalid" / "ref_class.proof").read_text()
    assert any("reflection class violation" in d for d in pl.check(bad))

    d = pl.embed(cut)
    assert (d.rank, d.bound) == (4, "W*4"), repr(d)
    assert d.rule() == "cut"
    assert d.check(depth=3) is None
    free = d.cut_free()
    assert (free.rank, free.bound) == (0, "w^(w^(w^(w^(W*4))))")
    assert free.eval(depth=10) == "verified-true"
    assert free.trace(depth=2, seed=5) == free.trace(depth=2, seed=5)

    found = pl.embed((ROOT / "proofs" / "found1.proof").read_text(), {"x": "{{},{{}}}"})
    assert found.bound == "W*2+6", found.bound
    assert found.check(depth=3, seed=1) is None

    print("prooflab_py smoke test passed")


if __name__ == "__main__":
    main()
