import pytest

from diagroups.cli import main
from diagroups.diagram import Diagram
from diagroups.presentation import THOMPSON_F
from diagroups.thompson import f_generator


@pytest.fixture
def x0_file(tmp_path):
    path = tmp_path / "x0.dg"
    path.write_text(f_generator(0).diagram.to_text())
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    run.err = captured.err
    return code, captured.out


def test_reduce(capsys, tmp_path, x0_file):
    unred = f_generator(0).diagram * ~f_generator(0).diagram
    src = tmp_path / "unred.dg"
    src.write_text(unred.to_text())
    dst = tmp_path / "red.dg"
    code, out = run(capsys, "reduce", "--preset", "f", "--in", str(src), "--out", str(dst))
    assert code == 0
    assert out.splitlines()[0] == "top,cells_in,cells_out,code"
    assert ",8,0," in out
    assert Diagram.from_text(THOMPSON_F, dst.read_text()).cell_count == 0


def test_mul_dist_embed(capsys, x0_file):
    code, out = run(capsys, "mul", "--preset", "f", "--in", x0_file, "--in", x0_file)
    assert code == 0
    assert out.splitlines()[1].split(",")[2] == "6"

    code, out = run(capsys, "dist", "--preset", "f", "--in", x0_file, "--in", x0_file)
    assert code == 0
    assert out.strip().splitlines()[1] == "0"

    code, out = run(capsys, "embed", "--preset", "f", "--in", x0_file, "--in", x0_file)
    assert code == 0
    assert out.strip().splitlines()[1] == "4,4,0,0"


def test_export_dot(capsys, tmp_path, x0_file):
    dot = tmp_path / "x0.dot"
    code, _ = run(capsys, "export-dot", "--preset", "f", "--in", x0_file, "--out", str(dot))
    assert code == 0
    assert dot.read_text().startswith("digraph")


def test_preset_is_required_for_kernel_verbs(x0_file):
    with pytest.raises(SystemExit) as exc:
        main(["reduce", "--in", x0_file])
    assert exc.value.code == 2


def test_missing_file_gives_io_exit(capsys):
    code, _ = run(capsys, "dist", "--preset", "f", "--in", "/nonexistent.dg")
    assert code == 4


def test_bad_diagram_gives_usage_exit(capsys, tmp_path):
    bad = tmp_path / "bad.dg"
    bad.write_text("x\n0 9 1\n")
    code, _ = run(capsys, "reduce", "--preset", "f", "--in", str(bad))
    assert code == 2
    assert "factor 0" in run.err


def test_cap_gives_cap_exit(capsys):
    code, _ = run(capsys, "f", "skew", "--n", "8", "--max-ball", "10")
    assert code == 3


def test_f_skew(capsys):
    code, out = run(capsys, "f", "skew", "--n", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "kind,index,sign,cells,expected"
    members = [ln for ln in lines if ln.startswith("member")]
    assert len(members) == 2
    assert all(ln.split(",")[3] == "6" for ln in members)
    product = next(ln for ln in lines if ln.startswith("product"))
    assert product.split(",")[3] == "10"


def test_f_skew_is_deterministic(capsys):
    _, first = run(capsys, "f", "skew", "--n", "2", "--signs", "random", "--seed", "9")
    _, second = run(capsys, "f", "skew", "--n", "2", "--signs", "random", "--seed", "9")
    assert first == second


def test_f_ball(capsys, tmp_path):
    out_path = tmp_path / "ball.csv"
    code, _ = run(capsys, "f", "ball", "--radius", "1", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "code,length,cells"
    assert len(lines) == 6  # header + identity + four generators


def test_u_rewrite(capsys, tmp_path):
    from diagroups.universal import u_word_to_element

    g = u_word_to_element([(4, 1)])
    path = tmp_path / "x4.dg"
    path.write_text(g.diagram.to_text())
    code, out = run(capsys, "u", "rewrite", "--in", str(path))
    assert code == 0
    row = out.strip().splitlines()[1].split(",")
    assert row[3] == "x4"
    assert row[4] == "x0^-2 x2 x0^2"


def test_wreath_len(capsys):
    code, out = run(capsys, "wreath", "len", "--h", "z", "--elem", "b=0; phi=-1:1,2:3")
    assert code == 0
    assert out.strip().splitlines()[1].endswith(",10,10")


def test_wreath_wr2(capsys):
    code, out = run(capsys, "wreath", "wr2", "--h", "z", "--n", "1")
    assert code == 0
    lines = out.strip().splitlines()
    product = next(ln for ln in lines if ln.startswith("product"))
    assert product.split(",")[3] == "11"


def test_growth(capsys):
    code, out = run(capsys, "growth", "--h", "z", "--max", "3")
    assert code == 0
    rows = [ln.split(",") for ln in out.strip().splitlines()[1:]]
    assert [r[1] for r in rows] == ["1", "3", "5", "7"]


def test_zwrz_embed(capsys, tmp_path):
    out_path = tmp_path / "img.dg"
    code, out = run(capsys, "zwrz", "embed", "--elem", "b=1", "--out", str(out_path))
    assert code == 0
    assert out.strip().splitlines()[1] == "1,,2,2"
    assert out_path.exists()


def test_zwrz_propb(capsys):
    code, out = run(capsys, "zwrz", "propb", "--radius", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1].startswith("max,")
    assert len([ln for ln in lines if ln.startswith("elem")]) == 5


def test_custom_presentation_file(capsys, tmp_path):
    pres = tmp_path / "toy.txt"
    pres.write_text("letters: p\nrelations: p p = p\nbase: p\n")
    dg = tmp_path / "one.dg"
    dg.write_text("p p\n0 0 1\n")
    code, out = run(capsys, "reduce", "--pres", str(pres), "--in", str(dg))
    assert code == 0
    assert out.strip().splitlines()[1].startswith("p p,1,1")
