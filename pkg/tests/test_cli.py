import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from adjugate.cli import main
from adjugate.jsonio import dump, poly_to_json
from adjugate.poly import AFF, parse_poly


@pytest.fixture(scope="module")
def triangle_file(tmp_path_factory):
    d = tmp_path_factory.mktemp("data")
    path = d / "triangle.json"
    tri = {
        "chart": "affine",
        "components": [
            {"degree": 1, "terms": poly_to_json(parse_poly("x", AFF))},
            {"degree": 1, "terms": poly_to_json(parse_poly("y", AFF))},
            {"degree": 1, "terms": poly_to_json(parse_poly("x+y-1", AFF))},
        ],
        "vertices": [
            {"coords": ["0", "0", "1"]},
            {"coords": ["1", "0", "1"]},
            {"coords": ["0", "1", "1"]},
        ],
    }
    dump(tri, str(path))
    return str(path)


@pytest.fixture(scope="module")
def cex_file(tmp_path_factory):
    src = Path(__file__).resolve().parents[1] / "src/adjugate/fixtures/counterexample.json"
    d = tmp_path_factory.mktemp("cex")
    path = d / "cex.json"
    path.write_text(src.read_text())
    return str(path)


def test_verify_counterexample_exit_zero(capsys):
    assert main(["verify-counterexample"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["pass"] is True
    assert out["certificates"]["adjoint"]["pass"]
    assert out["certificates"]["regularity"]["sign-vector"] == [-1, 1, 1]
    assert out["certificates"]["interior-witness"]["pass"]
    # the reference pair evaluates with a positive product and is reported as such
    ref = out["certificates"]["reference-pair"]
    assert ref["pass"] is False
    assert ref["values"] == ["57024", "29664152/125"]


def test_adjoint_triangle(triangle_file, capsys):
    assert main(["adjoint", triangle_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["degree"] == 0
    assert out["terms"] == [{"exponents": [0, 0, 0], "coeff": "1"}]


def test_adjoint_json_out(cex_file, tmp_path, capsys):
    target = tmp_path / "adj.json"
    assert main(["adjoint", cex_file, "--json-out", str(target)]) == 0
    data = json.loads(target.read_text())
    assert data["degree"] == 3
    capsys.readouterr()


def test_reduce_and_contact(cex_file, capsys):
    assert main(["reduce", cex_file, "--component", "0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["validation"]["valid"]
    assert main(["contact", cex_file, "--component", "0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["contact"]["verified"] and out["contact"]["total"] == 6
    assert out["triangulation"]["verified"]


def test_deform_check_fiber(cex_file, capsys):
    assert main(["deform", cex_file, "--gamma", "1/10", "--check-fiber"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["pass"] and out["adjoint-unchanged"]["pass"]
    assert out["preserved-objects"]["pass"]


def test_ldr_roundtrip_via_cli(cex_file, tmp_path, capsys):
    assert main(["ldr", cex_file, "--json-out", str(tmp_path / "ldr.json")]) == 0
    capsys.readouterr()
    ldr = json.loads((tmp_path / "ldr.json").read_text())
    (tmp_path / "sym.json").write_text(json.dumps(ldr["symldr"]))
    assert main(["polycon-from-ldr", str(tmp_path / "sym.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["validation"]["valid"]


def test_render_svg(cex_file, tmp_path, capsys):
    target = tmp_path / "scene.svg"
    assert (
        main(
            [
                "render", cex_file, "--out", str(target),
                "--resolution", "20",
                "--layers", "boundary,adjoint,vertices",
            ]
        )
        == 0
    )
    svg = target.read_text()
    assert svg.startswith("<svg")
    capsys.readouterr()


def test_adjoint_affine_chart(cex_file, capsys):
    assert main(["adjoint", cex_file, "--chart", "affine"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert "terms-affine" in out
    terms = {tuple(t["exponents"]): t["coeff"] for t in out["terms-affine"]}
    assert terms[(3, 0)] == "3440" and terms[(0, 0)] == "342144"


def test_dixon_cli(cex_file, tmp_path, capsys):
    from adjugate.adjoint import common_residual, compute_adjoint
    from adjugate.jsonio import load_polycon, point_to_json, block_to_json
    from adjugate.polycon import reduce_component

    p = load_polycon(cex_file)
    adj = compute_adjoint(p)
    adj2 = compute_adjoint(reduce_component(p, 0))
    (tmp_path / "cubic.json").write_text(json.dumps({"terms": poly_to_json(adj.poly)}))
    (tmp_path / "conic.json").write_text(json.dumps({"terms": poly_to_json(adj2.poly)}))
    pts = []
    for item in common_residual(p, 0):
        if hasattr(item, "coords"):
            pts.append(point_to_json(item))
        else:
            pts.append(block_to_json(item))
    (tmp_path / "pts.json").write_text(json.dumps(pts))
    rc = main([
        "dixon", str(tmp_path / "cubic.json"), str(tmp_path / "conic.json"),
        "--points", str(tmp_path / "pts.json"),
    ])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert "symldr" in out and "adjugate" in out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["adjoint", str(bad)]) == 2
    capsys.readouterr()


def test_structured_error_exit_code(tmp_path, capsys):
    # triangle components cannot be reduced (line component) -> structured error
    tri = tmp_path / "tri.json"
    tri.write_text(
        json.dumps(
            {
                "components": [
                    {"degree": 1, "terms": [{"exponents": [1, 0], "coeff": "1"}]},
                    {"degree": 1, "terms": [{"exponents": [0, 1], "coeff": "1"}]},
                ],
                "vertices": [
                    {"coords": ["0", "0", "1"]},
                    {"coords": ["0", "0", "1"]},
                ],
            }
        )
    )
    rc = main(["reduce", str(tri), "--component", "0"])
    assert rc == 3
    capsys.readouterr()
