import io
import json

import numpy as np
import pytest

from linsan import example1, tv_optimal_mechanism, verify_realization
from linsan.cli import main
from linsan.errors import ParseError
from linsan.io import (
    detect_format,
    format_mechanism,
    parse_conditional,
    parse_joint,
    parse_mechanism,
    parse_records,
    records_joint,
)
from linsan.sanitize import sample_records

JOINT_CSV = """s_label,x_label,prob
1,a,0.06
1,b,0.03
1,c,0.15
1,d,0.06
2,a,0.35
2,b,0.21
2,c,0.07
2,d,0.07
"""

COND_CSV = """#P_S
1,0.3
2,0.7
#P_X|S
s,a,b,c,d
1,0.2,0.1,0.5,0.2
2,0.5,0.3,0.1,0.1
"""


@pytest.fixture
def files(tmp_path):
    (tmp_path / "joint.csv").write_text(JOINT_CSV)
    (tmp_path / "cond.csv").write_text(COND_CSV)
    recs = sample_records(example1(), 2000, seed=0)
    (tmp_path / "recs.csv").write_text("s,x\n" + "".join(f"{r.s},{r.x}\n" for r in recs))
    return tmp_path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_formats_agree():
    assert detect_format(JOINT_CSV) == "joint"
    assert detect_format(COND_CSV) == "conditional"
    assert detect_format("1,a\n2,b\n") == "records"
    a, b = parse_joint(JOINT_CSV), parse_conditional(COND_CSV)
    np.testing.assert_allclose(a.p, b.p, atol=1e-15)
    assert a.x_alphabet.labels == b.x_alphabet.labels == ("a", "b", "c", "d")


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_joint("1,a,zero\n")
    with pytest.raises(ParseError):
        parse_joint("1,a\n")
    with pytest.raises(ParseError):
        parse_conditional("#P_S\n1,1.0\n")
    with pytest.raises(ParseError):
        detect_format("")
    with pytest.raises(ParseError):
        parse_records("1,a,b\n")


def test_records_joint():
    j = records_joint(parse_records("s,x\n1,a\n2,b\n1,b\n2,b\n"))
    np.testing.assert_allclose(j.p, [[0.25, 0.25], [0.0, 0.5]])


def test_mechanism_round_trip(ex1):
    m = tv_optimal_mechanism(ex1, 0.5)
    text = format_mechanism(m, {"alpha": 0.5, "family": m.family})
    back, meta = parse_mechanism(text)
    assert meta == {"alpha": "0.5", "family": "nonmarkov_tv"}
    assert back.tensor.tobytes() == m.tensor.tobytes()
    assert verify_realization(back, ex1, 0.5).passed
    assert format_mechanism(back, meta) == text


def test_inspect(files, capsys):
    code, out, _ = run(["inspect", files / "cond.csv", "--json"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["ldp"] == pytest.approx(2.321928, abs=1e-6)
    assert rep["loglift_witness"] == {"x": "b", "s": "1"}
    code, out, _ = run(["inspect", files / "joint.csv", "--alpha", "0.5", "--family", "nonmarkov_tv"], capsys)
    assert code == 0
    fields = dict(line.split("\t", 1) for line in out.splitlines())
    assert float(fields["dtv_full"]) == pytest.approx(0.21, abs=1e-9)


def test_inspect_records_input(files, capsys):
    code, out, _ = run(["inspect", files / "recs.csv", "--format", "records", "--json"], capsys)
    assert code == 0 and json.loads(out)["ldp"] > 0


def test_mechanize_and_sanitize(files, capsys):
    mech = files / "mech.csv"
    code, _, _ = run(["mechanize", files / "cond.csv", "--alpha", "0.5", "--family", "nonmarkov_tv", "--out", mech], capsys)
    assert code == 0
    text = mech.read_text()
    assert "# family=nonmarkov_tv" in text and "# rng=numpy.random.PCG64" in text
    out1, out2 = files / "y1.csv", files / "y2.csv"
    for out in (out1, out2):
        code, _, _ = run(["sanitize", files / "recs.csv", "--mechanism", mech, "--seed", "5", "--out", out], capsys)
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0] == "# seed=5" and lines[3] == "y_label"
    assert len(lines) == 4 + 2000


def test_mechanize_distortion_family(files, capsys):
    (files / "d.csv").write_text("".join(f"{a},{b},{abs(i - k)}\n" for i, a in enumerate("abcd") for k, b in enumerate("abcd") if i != k))
    code, out, _ = run(["mechanize", files / "cond.csv", "--alpha", "0.5", "--family", "nonmarkov_distortion", "--distortion", files / "d.csv"], capsys)
    assert code == 0
    m, _ = parse_mechanism(out)
    assert m.tensor[0, 3, 0] == pytest.approx(0.175, abs=1e-12)


def test_sweep_golden_bytes(files, capsys):
    a, b = files / "a.tsv", files / "b.tsv"
    assert run(["sweep", files / "cond.csv", "--out", a], capsys)[0] == 0
    assert run(["sweep", files / "joint.csv", "--out", b], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rows = [ln.split("\t") for ln in a.read_text().splitlines()]
    head = rows[0]
    assert len(rows) == 1 + 40
    byk = {(r[-1], r[0]): dict(zip(head, r)) for r in rows[1:]}
    assert float(byk[("markov", "0.511")]["dtv_full"]) == pytest.approx(0.724598, abs=1e-5)
    assert byk[("markov", "0.011")]["ldp_approx"] == "2.29638689"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["inspect", "{d}/missing.csv"], 2),
        (["inspect", "{d}/bad.csv"], 2),
        (["mechanize", "{d}/cond.csv", "--alpha", "0"], 3),
        (["mechanize", "{d}/cond.csv", "--alpha", "1.5"], 3),
        (["mechanize", "{d}/cond.csv", "--alpha", "0.5", "--family", "nonmarkov_distortion"], 3),
        (["inspect", "{d}/dead.csv"], 3),
        (["sanitize", "{d}/unknown.csv", "--mechanism", "{d}/mech.csv"], 5),
    ],
)
def test_exit_codes(files, capsys, argv, code):
    (files / "bad.csv").write_text("1,a,oops\n")
    (files / "dead.csv").write_text("1,a,0.5\n1,b,0.5\n2,a,0.0\n")
    (files / "unknown.csv").write_text("1,z\n")
    main(["mechanize", str(files / "cond.csv"), "--alpha", "0.5", "--out", str(files / "mech.csv")])
    capsys.readouterr()
    got, _, err = run([a.format(d=files) for a in argv], capsys)
    assert got == code
    assert err.startswith("linsan: error:")


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["inspect"])
    assert exc.value.code == 2


def test_infeasible_exit_code(files, capsys, monkeypatch):
    from linsan import cli
    from linsan.errors import LpInfeasible

    def boom(*a, **k):
        raise LpInfeasible("forced")

    monkeypatch.setattr(cli, "build_mechanism", boom)
    assert run(["mechanize", files / "cond.csv", "--alpha", "0.5"], capsys)[0] == 4
