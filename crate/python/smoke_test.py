#!/usr/bin/env python3
"""Builds the c1glue_py extension in place and exercises the Python API."""

import json
import pathlib
import shutil
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
HERE = pathlib.Path(__file__).resolve().parent


def build_extension():
    subprocess.run(["cargo", "build", "-p", "c1glue-py"], cwd=ROOT, check=True)
    built = ROOT / "target" / "debug" / "libc1glue_py.so"
    shutil.copy2(built, HERE / "c1glue_py.so")


def main():
    build_extension()
    sys.path.insert(0, str(HERE))
    import c1glue_py as cg

    names = cg.example_names()
    assert "ex1-generic" in names and len(names) == 10, names

    mesh = cg.example("ex1-generic")
    assert "triangle" in repr(mesh) and "quadrilateral" in repr(mesh)

    # JSON round-trip preserves the mesh exactly
    again = cg.Mesh.from_json(mesh.to_json())
    assert again.to_json() == mesh.to_json()

    space = cg.Space(mesh, 6)
    assert space.case() == "c" and space.branch() == "generic"
    assert space.edge() == "parabola"
    assert space.dimension() == 61
    assert space.interface_dimension() == 11

    report = json.loads(space.analyze_json())
    assert report["dimensions"]["n_mu"] == 2
    assert report["gluing"]["gamma"] == ["1"]

    assert cg.dimension_oracle(mesh, 6) == 61

    basis = space.basis()
    assert len(basis) == 61
    tags = basis.tags()
    assert tags[:2] == ["dof-0", "dof-1"] and "mu-2" in tags
    assert abs(basis.condition_number() - 40.3481) < 1e-3

    net1, net2 = basis.net("dof-0")
    assert len(net1) == 28 and len(net2) == 49  # triangle / square nets at d=6

    verdict = json.loads(basis.verify_json())
    assert verdict["passed"] is True
    assert verdict["identity"]["functions_checked"] == 61
    assert verdict["gradient"]["max_jump"] <= 1e-10

    rows = basis.sample("dof-0", 2)
    assert len(rows) == 6 + 9
    elem, u, v, x, y, value = rows[0]
    assert elem == 1 and u == 0.0 and v == 0.0

    # error mapping: bad inputs raise ValueError
    try:
        cg.example("ex99")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown example must raise ValueError")

    try:
        cg.Space(mesh, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("degree 1 must raise ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
