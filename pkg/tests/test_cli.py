import json

import pytest

from grouplab.cli import (
    DirectProduct,
    Named,
    RawPerm,
    build,
    cli_main,
    format_expr,
    load_catalog,
    parse,
)
from grouplab.errors import ParseError, UnknownName


def test_parse_named():
    assert parse("S4") == Named("S", 4)
    assert parse("s4") == Named("S", 4)
    assert parse("C12") == Named("C", 12)
    assert parse("C(12)") == Named("C", 12)
    assert parse("q8") == Named("Q8")
    assert parse("Ex3") == Named("EX3")
    assert parse("AGL1(5)") == Named("AGL1", 5)
    assert parse("agl1( 7 )") == Named("AGL1", 7)


def test_parse_products():
    assert parse("C2 x S3") == DirectProduct(Named("C", 2), Named("S", 3))
    assert parse("C2 x C2 x C2") == DirectProduct(
        DirectProduct(Named("C", 2), Named("C", 2)), Named("C", 2)
    )


def test_parse_raw_perm():
    e = parse("perm(5; (1 2 3 4 5), (2 5)(3 4))")
    assert isinstance(e, RawPerm)
    assert e.degree == 5
    assert len(e.generators) == 2
    assert e.generators[0].cycles() == "(1 2 3 4 5)"
    assert e.generators[1].cycles() == "(2 5)(3 4)"


def test_parse_errors_carry_offsets():
    for text in ("", "Foo4", "C", "C2 y S3", "perm(3; (1 5))", "perm(3; )", "S4 x"):
        with pytest.raises(ParseError) as err:
            parse(text)
        assert err.value.offset >= 0


def test_format_round_trip_catalog():
    for entry in load_catalog("default"):
        e = parse(entry["expr"])
        assert parse(format_expr(e)) == e


def test_build_orders():
    for expr, order in [
        ("C1", 1),
        ("C2", 2),
        ("D4", 8),
        ("D5", 10),
        ("D2", 4),
        ("D1", 2),
        ("S1", 1),
        ("S2", 2),
        ("A3", 3),
        ("A4", 12),
        ("Q8", 8),
        ("AGL1(5)", 20),
        ("AGL1(2)", 2),
        ("C2 x S3", 12),
        ("Ex3", 294),
        ("perm(8; (1 4 7)(2 8 5), (1 6 2 3)(4 7 8 5))", 24),
    ]:
        assert build(expr).order == order, expr


def test_build_unknown_and_bad_args():
    with pytest.raises(UnknownName):
        build(Named("AGL1", 6))  # not a prime
    with pytest.raises(UnknownName):
        build(Named("C", 0))


def test_dihedral_convention_order_2n():
    # D n is the dihedral group of ORDER 2n; catalog label D8 maps to D4
    assert build("D4").order == 8
    entry = next(e for e in load_catalog("default") if e["label"] == "D8")
    assert build(entry["expr"]).order == 8


def test_catalog_class_coverage():
    from grouplab.predicates import (
        is_metanilpotent,
        is_nilpotent,
        is_soluble,
        is_supersoluble,
    )

    entries = load_catalog("default")
    required = {"C1", "C2", "C6", "C12", "S3", "S4", "A4", "A5", "D8", "D5", "Q8"}
    assert required <= {e["label"] for e in entries}
    built = {e["label"]: build(e["expr"]) for e in entries}
    assert any(is_nilpotent(g) for g in built.values())
    assert any(is_soluble(g) and not is_nilpotent(g) for g in built.values())
    assert any(not is_soluble(g) for g in built.values())
    assert any(
        is_metanilpotent(g) and not is_supersoluble(g) for g in built.values()
    )


def test_cli_analyze_json(capsys):
    assert cli_main(["--json", "analyze", "S4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["order"] == 24
    assert payload["subgroups"]["fitting"]["order"] == 4
    assert payload["subgroups"]["fitting_star"]["order"] == 4
    assert payload["subgroups"]["fitting_tilde"]["order"] == 4
    assert payload["classes"]["nilpotent"] is False
    assert payload["classes"]["soluble"] is True


def test_cli_analyze_trivial(capsys):
    assert cli_main(["--json", "analyze", "C1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["classes"]["nilpotent"] is True
    assert all(v["order"] == 1 for v in payload["subgroups"].values())


def test_cli_subgroups(capsys):
    assert cli_main(["--json", "subgroups", "S3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert sum(c["class_size"] for c in payload["classes"]) == 6
    orders = sorted(c["order"] for c in payload["classes"])
    assert orders == [1, 2, 3, 6]
    full = next(c for c in payload["classes"] if c["order"] == 6)
    assert full["flags"]["normal"] and full["flags"]["abnormal"]
    c2 = next(c for c in payload["classes"] if c["order"] == 2)
    assert not c2["flags"]["quasinormal"] and not c2["flags"]["subnormal"]


def test_cli_rcp(capsys):
    # Sylow 2-subgroup of S4 against the Fitting subgroup: holds
    code = cli_main(
        ["--json", "rcp", "S4", "--sub", "(1 2 3 4), (1 3)", "--r", "fitting"]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["holds"] is True and payload["subgroup_order"] == 8

    # same subgroup against generators spanning the whole group: fails
    code = cli_main(
        ["--json", "rcp", "S4", "--sub", "(1 2 3 4), (1 3)", "--r", "(1 2 3 4), (1 2)"]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["holds"] is False and payload["witness"]


def test_cli_oracle(capsys):
    assert cli_main(["--json", "oracle", "C12"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["agree"] and payload["oracle_count"] == 6
    assert cli_main(["oracle", "S4"]) == 2  # order above the oracle limit


def test_cli_exit_codes(capsys):
    assert cli_main(["analyze", "Foo7"]) == 2
    assert cli_main(["analyze", "S4 x"]) == 2
    assert cli_main(["--max-order", "5", "analyze", "S4"]) == 3
    assert cli_main(["verify", "--statements", "NOPE"]) == 2
    assert cli_main([]) == 2


def test_cli_verify_subset(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = cli_main(
        [
            "verify",
            "--statements",
            "L2.15,T2.5,T2.13",
            "--catalog",
            "default",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    reports = json.loads(out.read_text())
    assert len(reports) == 16 * 3
    for r in reports:
        assert set(r) == {"group", "statement", "verdict", "witnesses", "elapsed_ms"}
        assert r["verdict"] == "holds"


def test_cli_verify_custom_catalog(tmp_path, capsys):
    cat = tmp_path / "cat.json"
    cat.write_text(json.dumps([{"label": "tiny", "expr": "S3"}]))
    code = cli_main(
        ["verify", "--statements", "A,EX1", "--catalog", str(cat)]
    )
    assert code == 0
    reports = json.loads(capsys.readouterr().out)
    verdicts = {r["statement"]: r["verdict"] for r in reports}
    assert verdicts == {"A": "holds", "EX1": "inapplicable"}


def test_cli_verify_parallel_matches_serial(tmp_path):
    args = ["verify", "--statements", "L2.15,T2.12", "--catalog", "default"]
    serial = tmp_path / "serial.json"
    parallel = tmp_path / "parallel.json"
    assert cli_main(args + ["--out", str(serial)]) == 0
    assert cli_main(["--jobs", "2"] + args + ["--out", str(parallel)]) == 0
    strip = lambda rs: [
        {k: v for k, v in r.items() if k != "elapsed_ms"} for r in rs
    ]
    assert strip(json.loads(serial.read_text())) == strip(
        json.loads(parallel.read_text())
    )


def test_cli_verify_skip_exit_code(tmp_path):
    code = cli_main(
        [
            "--max-subgroups",
            "3",
            "verify",
            "--statements",
            "L3.1",
            "--catalog",
            "default",
            "--out",
            str(tmp_path / "r.json"),
        ]
    )
    assert code == 3
