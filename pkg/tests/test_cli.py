import json

from lstag.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- validate -------------------------------------------------------------------


def test_validate_clean_grammar(capsys, fixtures_dir):
    code, out, err = run(capsys, "validate", str(fixtures_dir / "cooks_eats.lstag"))
    assert code == 0
    assert err == ""


def test_validate_reports_restriction_failures(capsys, fixtures_dir):
    code, out, err = run(capsys, "validate", str(fixtures_dir / "excised.lstag"))
    assert code == 1
    assert "Discontiguous" in err


def test_validate_json_lines(capsys, fixtures_dir):
    code, out, err = run(capsys, "validate", str(fixtures_dir / "excised.lstag"), "--json")
    assert code == 1
    payload = json.loads(err.strip().splitlines()[0])
    assert payload["code"] == "Discontiguous"
    assert payload["where"] == "likes_gapped"


def test_validate_no_restrictions_loads_discontiguous_pair(capsys, fixtures_dir):
    code, out, err = run(
        capsys, "validate", str(fixtures_dir / "excised.lstag"), "--no-restrictions"
    )
    assert code == 0
    assert err == ""


def test_validate_flags_non_reflexive_phi(capsys, tmp_path):
    bad = tmp_path / "bad.lstag"
    bad.write_text(
        'lspair b { left: NP("x") right: S(NP! VP(V("y"))) delta: [] phi: [1~2] }',
        encoding="utf-8",
    )
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 1
    assert "NotReflexive" in err


def test_parse_error_exits_with_usage_status(capsys, tmp_path):
    broken = tmp_path / "broken.tag"
    broken.write_text("tree a: S(", encoding="utf-8")
    code, out, err = run(capsys, "validate", str(broken))
    assert code == 2
    assert "parse error" in err


def test_missing_file_exits_with_usage_status(capsys, tmp_path):
    code, out, err = run(capsys, "validate", str(tmp_path / "nope.tag"))
    assert code == 2


# --- derive ---------------------------------------------------------------------


def test_derive_plain_tag_script(capsys, fixtures_dir):
    code, out, err = run(
        capsys,
        "derive",
        str(fixtures_dir / "cooked.tag"),
        str(fixtures_dir / "scripts" / "cooked_dried.script"),
    )
    assert code == 0
    assert "yield: John cooked dried beans" in out
    assert "beans @ 1 <- dried" in out


def test_derive_coordination_script(capsys, fixtures_dir):
    code, out, err = run(
        capsys,
        "derive",
        str(fixtures_dir / "cooks_eats.lstag"),
        str(fixtures_dir / "scripts" / "cooks_eats.script"),
    )
    assert code == 0
    assert "yield: John cooks and eats beans" in out
    assert "fragment cooks/1:john" in out


def test_derive_structure_json_matches_golden(capsys, fixtures_dir, golden_dir):
    code, out, err = run(
        capsys,
        "derive",
        str(fixtures_dir / "cooks_eats.lstag"),
        str(fixtures_dir / "scripts" / "cooks_eats.script"),
        "--format",
        "json",
    )
    assert code == 0
    produced = json.loads(out)
    with open(golden_dir / "cooks_eats_structure.json", encoding="utf-8") as fh:
        expected = json.load(fh)
    expected["yield"] = "John cooks and eats beans"
    assert produced == expected


def test_derive_dot_golden_bytes(capsys, fixtures_dir, golden_dir):
    code, out, err = run(
        capsys,
        "derive",
        str(fixtures_dir / "cooks_eats.lstag"),
        str(fixtures_dir / "scripts" / "cooks_eats.script"),
        "--format",
        "dot",
    )
    assert code == 0
    assert out == (golden_dir / "cooks_eats_derive.dot").read_text(encoding="utf-8")


def test_derive_tag_dot_golden_bytes(capsys, fixtures_dir, golden_dir):
    code, out, err = run(
        capsys,
        "derive",
        str(fixtures_dir / "cooked.tag"),
        str(fixtures_dir / "scripts" / "cooked_dried.script"),
        "--format",
        "dot",
    )
    assert code == 0
    assert out == (golden_dir / "cooked_dried_derive.dot").read_text(encoding="utf-8")


def test_derive_root_only_script(capsys, fixtures_dir, tmp_path):
    script = tmp_path / "just.script"
    script.write_text("root john\n", encoding="utf-8")
    code, out, err = run(capsys, "derive", str(fixtures_dir / "cooked.tag"), str(script))
    assert code == 0
    assert 'tree: NP("John")' in out


def test_derive_failing_step_reports_diagnostic(capsys, fixtures_dir, tmp_path):
    script = tmp_path / "bad.script"
    script.write_text("root cooks\nsubstitute john at 9.9\n", encoding="utf-8")
    code, out, err = run(capsys, "derive", str(fixtures_dir / "cooks_eats.lstag"), str(script))
    assert code == 1
    assert "DerivationFailed" in err


def test_derive_unknown_root(capsys, fixtures_dir, tmp_path):
    script = tmp_path / "odd.script"
    script.write_text("root mystery\n", encoding="utf-8")
    code, out, err = run(capsys, "derive", str(fixtures_dir / "cooked.tag"), str(script))
    assert code == 1
    assert "UnknownTree" in err


# --- enumerate ------------------------------------------------------------------


def test_enumerate_strings_only(capsys, fixtures_dir):
    code, out, err = run(
        capsys,
        "enumerate",
        str(fixtures_dir / "cooked.tag"),
        "--max-ops",
        "3",
        "--strings-only",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines == sorted(lines)
    assert "John cooked beans" in lines
    assert "John cooked dried beans" in lines


def test_enumerate_zero_budget_is_a_usage_error(capsys, fixtures_dir):
    code, out, err = run(capsys, "enumerate", str(fixtures_dir / "cooked.tag"), "--max-ops", "0")
    assert code == 2


def test_enumerate_over_a_broken_grammar_fails_cleanly(capsys, tmp_path):
    bad = tmp_path / "bad.tag"
    bad.write_text('tree odd: S(A("x") NP*)', encoding="utf-8")
    code, out, err = run(capsys, "enumerate", str(bad), "--max-ops", "2")
    assert code == 1
    assert "ClassMismatch" in err


def test_enumerate_coordination_listing(capsys, fixtures_dir):
    code, out, err = run(
        capsys,
        "enumerate",
        str(fixtures_dir / "cooks_eats.lstag"),
        "--max-ops",
        "4",
        "--strings-only",
    )
    assert code == 0
    assert "John cooks and eats beans" in out.splitlines()


def test_enumerate_json_is_deterministic(capsys, fixtures_dir):
    args = (
        "enumerate",
        str(fixtures_dir / "cooks_eats.lstag"),
        "--max-ops",
        "3",
        "--format",
        "json",
    )
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert json.loads(out1)["truncated"] is True


def test_enumerate_respects_restrictions(capsys, fixtures_dir):
    code, out, err = run(
        capsys,
        "enumerate",
        str(fixtures_dir / "topicalization.lstag"),
        "--max-ops",
        "3",
        "--strings-only",
    )
    assert code == 0
    assert "peanuts john likes and almonds hates" not in out.splitlines()
    code, out, err = run(
        capsys,
        "enumerate",
        str(fixtures_dir / "topicalization.lstag"),
        "--max-ops",
        "3",
        "--strings-only",
        "--no-restrictions",
    )
    assert code == 0
    assert "peanuts john likes and almonds hates" in out.splitlines()


# --- export ---------------------------------------------------------------------


def test_export_text_round_trips(capsys, fixtures_dir):
    path = str(fixtures_dir / "cooks_eats.lstag")
    code, out, err = run(capsys, "export", path)
    assert code == 0
    from lstag import load_grammar, parse_grammar

    assert parse_grammar(out) == load_grammar(path)


def test_export_json(capsys, fixtures_dir):
    code, out, err = run(
        capsys, "export", str(fixtures_dir / "translation.stag"), "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["pairs"][0]["links"] == ["1~1", "2.2~2.2"]


def test_export_dot_lists_every_entry(capsys, fixtures_dir):
    code, out, err = run(capsys, "export", str(fixtures_dir / "cooked.tag"), "--format", "dot")
    assert code == 0
    for name in ("cooked", "john", "beans", "dried"):
        assert f'label="tree {name}"' in out
