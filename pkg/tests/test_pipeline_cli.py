"""Batch pipeline, report determinism, SVG rendering, and the CLI surface."""

import json
import os

import pytest

from conftest import system_path
from tilecohom.cli import main
from tilecohom.pipeline import (
    MissingTable,
    RunConfig,
    compare_routes,
    report_to_json,
    run_pipeline,
)


@pytest.fixture(scope="module")
def square_report():
    return run_pipeline(RunConfig(system_path("square"), route="both"))


class TestPipeline:
    def test_square_both_routes(self, square_report):
        report = square_report
        assert report["passed"]
        torus = [[g["rank"], g["torsion"]] for g in report["routes"]["mapping_torus"]["groups"]]
        assert torus == [[1, []], [3, []], [3, []], [1, []]]
        hull = [[g["rank"], g["torsion"]] for g in report["routes"]["mapping_torus"]["hull"]]
        assert hull == [[1, []], [2, []], [1, []]]
        assert report["routes"]["spectral"]["groups"] == report["routes"]["mapping_torus"]["groups"]

    def test_verdicts_present(self, square_report):
        names = {v["name"] for v in square_report["verdicts"]}
        assert {"rational_coboundary", "rational_collapse", "route_agreement"} <= names

    def test_report_is_deterministic(self, square_report):
        again = run_pipeline(RunConfig(system_path("square"), route="both"))
        assert report_to_json(square_report) == report_to_json(again)

    def test_report_deterministic_across_hash_seeds(self, tmp_path):
        import subprocess
        import sys

        outs = []
        for seed in ("0", "314159"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            path = tmp_path / f"r{seed}.json"
            subprocess.run(
                [sys.executable, "-m", "tilecohom.cli", "cohomology",
                 system_path("square"), "--route", "both", "--json", str(path)],
                env=env, check=True, capture_output=True,
            )
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]

    def test_spectral_route_standalone_uses_fixture(self):
        report = run_pipeline(RunConfig(system_path("square"), route="spectral"))
        assert report["passed"]
        assert "mapping_torus" not in report["routes"]

    def test_fibonacci_mapping_torus(self):
        report = run_pipeline(RunConfig(system_path("fibonacci"), route="mapping-torus"))
        hull = [[g["rank"], g["torsion"]] for g in report["routes"]["mapping_torus"]["hull"]]
        assert hull == [[1, []], [2, []]]

    def test_compare_routes_self(self, square_report):
        assert compare_routes(square_report, square_report)["passed"]

    def test_compare_routes_mismatch(self, square_report):
        penrose_table = {
            "routes": {
                "spectral": {
                    "groups": [
                        {"rank": 1, "torsion": []},
                        {"rank": 2, "torsion": []},
                        {"rank": 3, "torsion": []},
                        {"rank": 2, "torsion": []},
                    ]
                }
            }
        }
        verdict = compare_routes(penrose_table, square_report)
        assert not verdict["passed"]
        assert verdict["details"]["first_mismatch_degree"] == 1

    def test_compare_missing_table(self, square_report):
        with pytest.raises(MissingTable):
            compare_routes(square_report, {"routes": {}})


class TestSvg:
    def test_penrose_star_figures(self, penrose_atlas, penrose_rho_omega):
        from tilecohom.svg import render_star_svg
        from tilecohom.winding import dagger_orders

        rho, omega = penrose_rho_omega
        docs = render_star_svg(penrose_atlas, rho=rho, omega=omega)
        vertex_files = [n for n in docs if n.startswith("vertex_star_")]
        assert len(vertex_files) == 7
        assert len([n for n in docs if n.startswith("edge_star_")]) == 7
        orders = dagger_orders(penrose_atlas)
        for i, order in enumerate(orders):
            body = docs[f"vertex_star_{i:02d}.svg"]
            if order == 5:
                assert "winding +1" in body
            assert f"symmetry {order}" in body

    def test_rendering_is_deterministic(self, penrose_atlas, penrose_rho_omega):
        from tilecohom.svg import render_star_svg

        rho, omega = penrose_rho_omega
        a = render_star_svg(penrose_atlas, rho=rho, omega=omega)
        b = render_star_svg(penrose_atlas, rho=rho, omega=omega)
        assert a == b

    def test_empty_atlas_renders_no_files(self, square_system):
        from tilecohom.atlas import StarAtlas
        from tilecohom.svg import render_star_svg
        from tilecohom.tiling import Patch

        empty = StarAtlas(
            system=square_system,
            tile_classes=[],
            edge_classes=[],
            vertex_classes=[],
            audit_patch=Patch(square_system, []),
        )
        assert render_star_svg(empty) == {}


class TestCli:
    def test_atlas_command(self, capsys):
        code = main(["atlas", system_path("square")])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert out["atlas"]["counts"]["edge_star_classes"] == 2

    def test_omega_command(self, capsys):
        code = main(["omega", system_path("square")])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert all(entry["winding"] == 0 for entry in out["omega"])

    def test_cohomology_command_writes_report(self, tmp_path, capsys):
        out_dir = tmp_path / "out"
        code = main([
            "cohomology", system_path("square"), "--route", "both",
            "--out", str(out_dir), "--json", str(tmp_path / "r.json"),
        ])
        assert code == 0
        assert (out_dir / "report.json").exists()
        written = json.loads((tmp_path / "r.json").read_text())
        assert written["passed"]
        capsys.readouterr()

    def test_cohomology_svg_output(self, tmp_path, capsys):
        out_dir = tmp_path / "figs"
        code = main([
            "cohomology", system_path("square"), "--route", "mapping-torus",
            "--out", str(out_dir), "--svg",
        ])
        assert code == 0
        names = sorted(os.listdir(out_dir))
        assert "report.json" in names
        assert any(n.startswith("vertex_star_") for n in names)
        capsys.readouterr()

    def test_render_command(self, tmp_path, capsys):
        code = main(["render", system_path("square"), "--out", str(tmp_path / "svg")])
        assert code == 0
        files = os.listdir(tmp_path / "svg")
        assert len(files) == 1 + 2 + 1  # tile, two edges, one vertex
        capsys.readouterr()

    def test_compare_command(self, tmp_path, capsys):
        report = run_pipeline(RunConfig(system_path("square"), route="both"))
        p1 = tmp_path / "a.json"
        p1.write_text(report_to_json(report))
        code = main(["compare", str(p1), str(p1)])
        assert code == 0
        capsys.readouterr()

    def test_compare_mismatch_exit_code(self, tmp_path, capsys):
        r1 = run_pipeline(RunConfig(system_path("square"), route="both"))
        r2 = run_pipeline(RunConfig(system_path("fibonacci"), route="mapping-torus"))
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        p1.write_text(report_to_json(r1))
        p2.write_text(report_to_json(r2))
        assert main(["compare", str(p1), str(p2)]) == 1
        capsys.readouterr()

    def test_malformed_system_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        assert main(["atlas", str(bad)]) == 2
        capsys.readouterr()

    def test_spectral_route_on_symbolic_system_rejected(self, capsys):
        code = main(["cohomology", system_path("fibonacci"), "--route", "spectral"])
        assert code == 2
        capsys.readouterr()

    def test_fixture_override(self, capsys):
        # overriding h0_T0 with a wrong rank must fail validation (exit 2)
        code = main([
            "cohomology", system_path("square"), "--route", "spectral",
            "--fixture-h0", '{"rank": 3, "torsion": []}',
        ])
        assert code == 2
        capsys.readouterr()
