import dataclasses
import json
import math
from pathlib import Path

import jsonschema
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rossby_exact.errors import BadParameter, DomainError, FieldIOError
from rossby_exact.families import build_solution, zonal_coefficient
from rossby_exact.fieldio import (
    CSV_HEADER,
    GridSpec,
    export_csv,
    export_sweep_csv,
    export_vtk,
    read_csv,
    report_to_dict,
    sample_grid,
    write_report,
)
from rossby_exact.helmholtz import bessel_vortex, plane_wave
from rossby_exact.model import FamilySpec, PhysicalParams, resonance_sweep, validate
from rossby_exact.verify import SamplingPlan, verify_solution

from cases import random_solution
from oracles import besselj_series, bisect

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report-schema.json").read_text())
PHYS = PhysicalParams(beta=1.0, H=1.0, V=0.3)


def family3(amplitude=1.0):
    v = validate(FamilySpec(3, k_z=1.0, K_r=1.0), PHYS)
    return build_solution(v, PHYS, plane_wave(v.kappa, amplitude, 0.2, 0.4))


def small_grid(t=0.0, x_range=(-1.0, 1.0)):
    return GridSpec(2, 2, 2, x_range, (-1.0, 1.0), (0.0, 1.0), t)


def test_zero_mode_corners():
    sol = family3(0.0)
    block = sample_grid(sol, small_grid())
    g = zonal_coefficient(sol.spec, PHYS, block.z)[0]
    np.testing.assert_array_equal(block.p, g * block.y)
    assert block.p.size == 8


def test_family1_drift_shift():
    phys = PhysicalParams(beta=0.7, H=2.0, V=-0.4)
    v = validate(FamilySpec(1, n=1, P=0.3), phys)
    sol = build_solution(v, phys, bessel_vortex(v.kappa, 2, center=(0.1, 0.2)))
    t = 1.7
    a = sample_grid(sol, GridSpec(5, 4, 3, (-2, 2), (-1, 1), (0, 2), t))
    b = sample_grid(sol, GridSpec(5, 4, 3, (-2 - phys.V * t, 2 - phys.V * t), (-1, 1), (0, 2), 0.0))
    for name in ("p", "u", "v", "p_z"):
        np.testing.assert_allclose(getattr(a, name), getattr(b, name), rtol=1e-13, atol=1e-13)


def test_z_range_outside_column():
    with pytest.raises(DomainError):
        sample_grid(family3(), GridSpec(2, 2, 2, (0, 1), (0, 1), (0.0, 1.5)))
    with pytest.raises(DomainError):
        sample_grid(family3(), GridSpec(2, 2, 2, (0, 1), (0, 1), (-0.1, 1.0)))


@pytest.mark.parametrize("kw", [{"nx": 1}, {"ny": 0}, {"x_range": (1.0, 0.0)}, {"z_range": (0.0, math.inf)}])
def test_bad_grid(kw):
    args = dict(nx=2, ny=2, nz=2, x_range=(0, 1), y_range=(0, 1), z_range=(0, 1))
    args.update(kw)
    with pytest.raises(BadParameter):
        GridSpec(**args)


@settings(max_examples=50, deadline=None)
@given(nx=st.integers(2, 6), ny=st.integers(2, 6), nz=st.integers(2, 6))
def test_ordering_contract(nx, ny, nz):
    grid = GridSpec(nx, ny, nz, (0.0, nx - 1.0), (0.0, ny - 1.0), (0.0, nz - 1.0))
    x, y, z = grid.points()
    i, j, k = x.astype(int), y.astype(int), z.astype(int)
    np.testing.assert_array_equal(grid.index(i, j, k), np.arange(grid.size))


def test_csv_layout_and_round_trip(tmp_path):
    block = sample_grid(family3(), small_grid())
    path = tmp_path / "f.csv"
    export_csv(block, path)
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "x,y,z,p,u,v,p_z"
    assert len(lines) == 9
    data = read_csv(path)
    for name in CSV_HEADER:
        assert np.array_equal(data[name], getattr(block, name))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**31), family=st.integers(1, 9))
def test_csv_round_trip_is_bit_exact(tmp_path_factory, seed, family):
    sol = random_solution(family, np.random.default_rng(seed))
    block = sample_grid(sol, GridSpec(3, 3, 3, (-1.3, 2.9), (-0.7, 1.1), (0.0, sol.phys.H), 0.37))
    path = tmp_path_factory.mktemp("csv") / "f.csv"
    export_csv(block, path)
    data = read_csv(path)
    for name in CSV_HEADER:
        assert np.array_equal(data[name], getattr(block, name))


def test_empty_and_unwritable_paths(tmp_path):
    block = sample_grid(family3(), small_grid())
    with pytest.raises(FieldIOError, match="empty"):
        export_csv(block, "")
    target = tmp_path / "missing" / "f.vtk"
    with pytest.raises(FieldIOError, match="missing"):
        export_vtk(block, target)


def test_vtk_header(tmp_path):
    block = sample_grid(family3(), small_grid())
    path = tmp_path / "f.vtk"
    export_vtk(block, path)
    lines = path.read_text().splitlines()
    assert "DIMENSIONS 2 2 2" in lines
    assert "POINT_DATA 8" in lines


def test_vtk_loads_in_reference_reader(tmp_path):
    vtk = pytest.importorskip("vtk")
    from vtk.util.numpy_support import vtk_to_numpy

    sol = build_solution(
        FamilySpec(7, k_z=0.6, K_r=1.4), PHYS, bessel_vortex(1.4, 1, 0.8, 0.3, (0.2, -0.1))
    )
    block = sample_grid(sol, GridSpec(6, 5, 4, (-3, 3), (-2, 2), (0, 1), 0.5))
    path = tmp_path / "v.vtk"
    export_vtk(block, path)
    reader = vtk.vtkRectilinearGridReader()
    reader.SetFileName(str(path))
    reader.ReadAllScalarsOn()
    reader.ReadAllVectorsOn()
    reader.Update()
    out = reader.GetOutput()
    assert out.GetDimensions() == (6, 5, 4)
    pd = out.GetPointData()
    p = vtk_to_numpy(pd.GetArray("p"))
    p_z = vtk_to_numpy(pd.GetArray("p_z"))
    vel = vtk_to_numpy(pd.GetArray("velocity"))
    assert np.max(np.abs(p - block.p)) <= 1e-15 * max(1.0, np.max(np.abs(block.p)))
    assert np.max(np.abs(p_z - block.p_z)) <= 1e-15 * max(1.0, np.max(np.abs(block.p_z)))
    np.testing.assert_array_equal(vel[:, 0], block.u)
    np.testing.assert_array_equal(vel[:, 2], 0.0)
    for n in range(out.GetNumberOfPoints()):
        x, y, z = out.GetPoint(n)
        assert (x, y, z) == (block.x[n], block.y[n], block.z[n])


def test_identical_blocks_give_identical_bytes(tmp_path):
    sol = family3()
    a = sample_grid(sol, small_grid())
    b = sample_grid(sol, small_grid())
    for ext, fn in (("csv", export_csv), ("vtk", export_vtk)):
        fn(a, tmp_path / f"a.{ext}")
        fn(b, tmp_path / f"b.{ext}")
        assert (tmp_path / f"a.{ext}").read_bytes() == (tmp_path / f"b.{ext}").read_bytes()


def test_passing_report(tmp_path):
    report = verify_solution(family3(), SamplingPlan(n_points=100, seed=4))
    path = tmp_path / "r.json"
    write_report(report, path, config={"seed": 4})
    data = json.loads(path.read_text())
    jsonschema.validate(data, SCHEMA)
    assert data["pass"] is True
    assert all(c["pass"] is True for c in data["checks"].values())
    assert data["seed"] == 4 and data["config"] == {"seed": 4}
    again = report_to_dict(verify_solution(family3(), SamplingPlan(n_points=100, seed=4)), {"seed": 4})
    assert again == data


def test_failing_report_is_flagged():
    sol = family3()
    bad = build_solution(dataclasses.replace(sol.spec, M=sol.spec.M * 1.01), sol.phys, sol.mode)
    data = report_to_dict(verify_solution(bad, SamplingPlan(n_points=100)))
    jsonschema.validate(data, SCHEMA)
    assert data["pass"] is False
    assert any(c["pass"] is False for c in data["checks"].values())


def test_sweep_csv(tmp_path):
    values = np.linspace(0.1, 5.0, 200)
    rows, found = resonance_sweep(FamilySpec(3, k_z=1.0, K_r=1.0), PHYS, "K_r", values)
    path = tmp_path / "s.csv"
    export_sweep_csv("K_r", rows, found, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "K_r,M,denominator,resonant"
    assert len(lines) == 201
    assert sum(line.endswith(",1") for line in lines[1:]) == len(found) >= 1


def test_vortex_lobe_radius():
    # m = 0 vortex: the horizontal part peaks at the centre and reaches its
    # most negative value on the ring kappa rho = first zero of J_1
    k_z, K_r = 0.6, 1.4
    phys = PhysicalParams(beta=1.0, H=1.0, V=0.3)
    v = validate(FamilySpec(7, k_z=k_z, K_r=K_r), phys)
    sol = build_solution(v, phys, bessel_vortex(v.kappa, 0))
    L = 4.0
    block = sample_grid(sol, GridSpec(64, 64, 16, (-L, L), (-L, L), (0.0, phys.H)))
    g = zonal_coefficient(v, phys, block.z)[0]
    f = np.cosh(k_z * block.z)
    F = ((block.p - g * block.y) / f).reshape(16, 64, 64)
    j11 = float(bisect(lambda x: besselj_series(1, x), 3, 4.5))
    h = 2 * L / 63
    for layer in F:
        i_max = np.unravel_index(np.argmax(layer), layer.shape)
        i_min = np.unravel_index(np.argmin(layer), layer.shape)
        xs = np.linspace(-L, L, 64)
        assert math.hypot(xs[i_max[1]], xs[i_max[0]]) <= h
        r_min = math.hypot(xs[i_min[1]], xs[i_min[0]])
        assert abs(r_min - j11 / v.kappa) <= h
