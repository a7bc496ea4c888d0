"""Smoke test for the sepline_py extension module."""

import json
import pathlib
import sys

import sepline_py as sp

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def main() -> int:
    pts4 = sp.Instance.from_json((DATA / "pts4.json").read_text())
    assert len(pts4) == 4

    axis = sp.solve(pts4, "axis")
    assert axis["size"] == axis["kappa"] == 2, axis
    assert sp.oracle(pts4, "axis")["size"] == 2
    assert sp.verify(pts4, json.dumps(axis))
    assert sp.solve(pts4, "general")["size"] == 2
    assert sp.kappa(pts4)["w"] == 4

    assert sp.separate_pq(pts4, 1, 0) is None
    assert len(sp.separate_pq(pts4, 2, 0)) == 2

    inst = sp.Instance.generate(30, seed=7, pattern="random")
    again = sp.Instance.generate(30, seed=7, pattern="random")
    assert inst.digest() == again.digest()
    res = sp.solve(inst)
    assert sp.verify(inst, json.dumps(res["lines"]))

    crbds = (DATA / "crbds_toy.json").read_text()
    red, layout = sp.reduce_crbds(crbds, "sandwich")
    lifted = sp.lift_set(layout, ["u2", "u3"])
    assert sp.verify(red, json.dumps(lifted["lines"]))
    assert sp.extract_set(layout, json.dumps(lifted["lines"])) == ["u2", "u3"]

    empty = sp.Instance.from_json('{"kind": "circle", "points": []}')
    try:
        sp.kappa(empty)
    except ValueError:
        pass
    else:
        raise AssertionError("empty instance decomposed")

    print("smoke test ok:", pts4, "kappa", axis["kappa"], "reduced points", len(red))
    return 0


if __name__ == "__main__":
    sys.exit(main())
