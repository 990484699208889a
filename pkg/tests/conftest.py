"""Shared fixtures: heavy computations run once per session, with timings."""

import json
import time
from importlib import resources

import pytest

from tilecohom import abelian as ab
from tilecohom.approximant import (
    build_ap_complex,
    build_symbolic_complex,
    collar,
    hull_cohomology,
    quotient_cohomology,
    rotation_action,
)
from tilecohom.atlas import grow_star_closure
from tilecohom.tiling import load_system
from tilecohom.winding import assign_rho, omega_chain


def system_path(name: str) -> str:
    return str(resources.files("tilecohom") / "systems" / f"{name}.json")


def expected_values(name: str) -> dict:
    path = resources.files("tilecohom") / "systems" / f"{name}.expected.json"
    data = json.loads(path.read_text())
    return {k: v["value"] for k, v in data.items() if isinstance(v, dict)}


def as_group(pair) -> ab.FgAbGroup:
    rank, torsion = pair
    return ab.FgAbGroup(rank, tuple(torsion))


@pytest.fixture(scope="session")
def penrose_system():
    return load_system(system_path("penrose"))


@pytest.fixture(scope="session")
def square_system():
    return load_system(system_path("square"))


@pytest.fixture(scope="session")
def fibonacci_system():
    return load_system(system_path("fibonacci"))


@pytest.fixture(scope="session")
def penrose_atlas(penrose_system):
    t0 = time.time()
    atlas = grow_star_closure(penrose_system)
    atlas.elapsed_seconds = time.time() - t0
    return atlas


@pytest.fixture(scope="session")
def penrose_rho_omega(penrose_atlas):
    rho = assign_rho(penrose_atlas)
    omega = omega_chain(penrose_atlas, rho)
    return rho, omega


@pytest.fixture(scope="session")
def penrose_hull_route(penrose_system):
    """Collar, complex, hull, rotation, quotient; timed for the acceptance gate."""
    t0 = time.time()
    collared = collar(penrose_system)
    cx = build_ap_complex(collared)
    hull = hull_cohomology(cx)
    rot = rotation_action(cx, hull)
    quotient = quotient_cohomology(cx)
    elapsed = time.time() - t0
    return {
        "collared": collared,
        "complex": cx,
        "hull": hull,
        "rotation": rot,
        "quotient": quotient,
        "elapsed_seconds": elapsed,
    }


@pytest.fixture(scope="session")
def square_atlas(square_system):
    return grow_star_closure(square_system)


@pytest.fixture(scope="session")
def square_hull_route(square_system):
    collared = collar(square_system)
    cx = build_ap_complex(collared)
    hull = hull_cohomology(cx)
    rot = rotation_action(cx, hull)
    quotient = quotient_cohomology(cx)
    return {
        "collared": collared,
        "complex": cx,
        "hull": hull,
        "rotation": rot,
        "quotient": quotient,
    }


@pytest.fixture(scope="session")
def fibonacci_complex(fibonacci_system):
    return build_symbolic_complex(fibonacci_system)


@pytest.fixture(scope="session")
def penrose_report():
    from tilecohom.pipeline import RunConfig, run_pipeline

    return run_pipeline(RunConfig(system_path("penrose"), route="both"))


@pytest.fixture(scope="session")
def square_report_acc():
    from tilecohom.pipeline import RunConfig, run_pipeline

    return run_pipeline(RunConfig(system_path("square"), route="both"))
