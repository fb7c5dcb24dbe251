import json

from ultrametric import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def last_json(stdout: str) -> dict:
    return json.loads(stdout.splitlines()[-1])


def test_hensel_example(capsys):
    code, out, _ = run(
        capsys, "hensel", "--prime", "2", "--coeffs", "-17,0,1", "--x0", "1", "--prec", "5"
    )
    assert code == 0
    rep = last_json(out)
    assert rep["root"] == "9 mod 32"
    assert rep["schema"] == "1"


def test_hensel_invalid_prime(capsys):
    code, _, err = run(
        capsys, "hensel", "--prime", "4", "--coeffs", "-17,0,1", "--x0", "1"
    )
    assert code == 2
    assert "4" in err


def test_padic_abs(capsys):
    code, out, _ = run(capsys, "padic", "--prime", "2", "--abs", "12")
    assert code == 0
    assert last_json(out)["abs"] == "1/4"


def test_padic_add_mul(capsys):
    code, out, _ = run(capsys, "padic", "--prime", "3", "--prec", "2", "--add", "4", "7")
    assert code == 0
    assert last_json(out)["sum"] == "2"
    code, out, _ = run(capsys, "padic", "--prime", "3", "--prec", "2", "--mul", "4", "7")
    assert last_json(out)["product"] == str(28 % 9)


def test_padic_no_operation(capsys):
    code, _, err = run(capsys, "padic", "--prime", "3")
    assert code == 2


def test_radic_embed_and_abs(capsys):
    code, out, _ = run(capsys, "radic", "--radix", "2,3,2", "--embed", "7")
    assert code == 0
    assert last_json(out)["sequence"] == ["1", "1", "7"]
    code, out, _ = run(capsys, "radic", "--radix", "2,3,2", "--abs", "6")
    rep = last_json(out)
    assert rep["valuation"] == 2 and rep["abs"] == "1/6"


def test_radic_preceq_and_project(capsys):
    code, out, _ = run(
        capsys, "radic", "--radix", "2,2", "--preceq", "4,4", "--depth", "8"
    )
    assert code == 0 and last_json(out)["holds"]
    code, out, _ = run(
        capsys,
        "radic",
        "--radix",
        "2,2",
        "--project",
        "2,2,2",
        "--residue",
        "5",
        "--depth",
        "8",
    )
    assert code == 0
    assert last_json(out) == {"schema": "1", "residue": "1", "modulus": "4"}


def test_hausdorff_content_and_dimension(capsys):
    code, out, _ = run(
        capsys, "hausdorff", "--factors", "2,2,2", "--scales", "geometric:1/2"
    )
    assert code == 0 and last_json(out)["content"] == "1"
    code, out, _ = run(
        capsys,
        "hausdorff",
        "--factors",
        "2,2,2,2,2,2,2,2,2,2",
        "--scales",
        "geometric:1/2",
        "--dimension",
    )
    lo, hi = (float(x) for x in last_json(out)["dimension_interval"])
    assert lo <= 1.0 <= hi + 1e-6


def test_audit_metric_verdicts(capsys):
    code, out, _ = run(
        capsys, "audit", "--factors", "2,2,2", "--scales", "geometric:1/2"
    )
    assert code == 0 and last_json(out)["verdict"]
    code, out, _ = run(
        capsys,
        "audit",
        "--factors",
        "3,4,5,6",
        "--scales",
        "reciprocal",
        "--candidate",
        "4",
    )
    assert code == 1
    assert not last_json(out)["verdict"]


def test_audit_isometry(capsys):
    code, out, _ = run(capsys, "audit", "--isometry", "2,3")
    assert code == 0
    rep = last_json(out)
    assert rep["isometric"] and rep["pairs_checked"] == 36


def test_audit_measure(capsys):
    code, out, _ = run(
        capsys,
        "audit",
        "--factors",
        "2,2",
        "--scales",
        "geometric:1/2",
        "--measure-weights",
        "1/2,1/2;1/2,1/2",
    )
    assert code == 0
    assert last_json(out)["ratio_c2"] == "2"


def tree_file(tmp_path):
    obj = {
        "spec": {
            "factors": [2, 2, 2],
            "scales": ["1", "1/2", "1/4", "1/8"],
        },
        "mu": ["1/8"] * 8,
        "nu": ["1", "0", "0", "0", "0", "0", "0", "0"],
    }
    path = tmp_path / "tree.json"
    path.write_text(json.dumps(obj))
    return str(path)


def test_maximal_and_weak_type(capsys, tmp_path):
    path = tree_file(tmp_path)
    code, out, _ = run(capsys, "maximal", "--tree", path)
    assert code == 0
    assert last_json(out)["maximal"] == ["8", "4", "2", "2", "1", "1", "1", "1"]
    code, out, _ = run(capsys, "maximal", "--tree", path, "--weak-type", "3")
    assert code == 0 and last_json(out)["holds"] == "True"
    code, out, _ = run(capsys, "maximal", "--tree", path, "--lp", "2", "1/2")
    assert code == 0
    code, out, _ = run(capsys, "maximal", "--tree", path, "--doob", "3")
    assert code == 0 and last_json(out)["holds"]


def test_maximal_missing_file(capsys):
    code, _, err = run(capsys, "maximal", "--tree", "/nonexistent/tree.json")
    assert code == 2


def test_characters_table_and_gram(capsys):
    code, out, _ = run(capsys, "characters", "--gram", "4")
    assert code == 0 and last_json(out)["gram_is_identity"]
    code, out, _ = run(capsys, "characters", "--table", "2")
    rep = last_json(out)
    assert rep["table"] == [["0", "0"], ["0", "1/2"]]


def test_bad_subcommand(capsys):
    assert cli.main(["frobnicate"]) == 2


def test_reports_deterministic(capsys, tmp_path):
    runs = []
    for _ in range(2):
        _, out, _ = run(capsys, "audit", "--isometry", "2,3,2")
        runs.append(out)
    assert runs[0] == runs[1]
