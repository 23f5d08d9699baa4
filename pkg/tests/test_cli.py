"""End-to-end CLI coverage through run(), plus golden text for key outputs."""

import shlex
import sys

import pytest

from cpmonoid import Template, TemplateFunction, format_table, format_template
from cpmonoid.cli import run

from conftest import ABC, AB


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def template_file(tmp_path):
    t = Template.of(ABC, "ab", 1, "c")
    path = tmp_path / "t.tmpl"
    path.write_text(format_template(t))
    return str(path)


@pytest.fixture
def morphism_file(tmp_path):
    path = tmp_path / "m.mor"
    path.write_text("alphabet abc\na=ab\nb=b\nc=a\n")
    return str(path)


def test_eval(capsys, template_file):
    code, out, _ = invoke(capsys, "eval", "-t", template_file, "ba")
    assert code == 0
    assert out.strip() == "abbac"


def test_eval_empty_word(capsys, template_file):
    code, out, _ = invoke(capsys, "eval", "-t", template_file, "")
    assert code == 0
    assert out.strip() == "abc"


def test_eval_wrong_arity(capsys, template_file):
    code, _, err = invoke(capsys, "eval", "-t", template_file, "a", "b")
    assert code == 2
    assert "arity" in err


def test_eval_missing_file(capsys):
    code, _, err = invoke(capsys, "eval", "-t", "/no/such/file", "a")
    assert code == 2
    assert "cannot read" in err


def test_morphism_apply(capsys, morphism_file):
    code, out, _ = invoke(capsys, "morphism", "apply", "-m", morphism_file, "cab")
    assert code == 0
    assert out.strip() == "aabb"


def test_profile_builtin(capsys):
    code, out, _ = invoke(capsys, "profile", "--oracle", "builtin:reverse")
    assert code == 0
    assert "p 1" in out and "e 0" in out


def test_profile_rejects_erasure(capsys):
    code, out, _ = invoke(capsys, "profile", "--oracle", "builtin:erase_a")
    assert code == 1
    assert "NOT-RCP" in out


def test_classify(capsys):
    code, out, _ = invoke(capsys, "classify", "--oracle", "builtin:reverse")
    assert code == 0
    assert out.strip() == "variable 1"


def test_extract_template_round_trip(capsys, template_file):
    code, out, _ = invoke(capsys, "extract", "--oracle", f"template:{template_file}")
    assert code == 0
    assert out == 'arity 1\nalphabet abc\n"ab" x1 "c"\n'


def test_extract_reverse_not_rcp(capsys):
    code, out, _ = invoke(capsys, "extract", "--oracle", "builtin:reverse")
    assert code == 1
    assert "reason: peel prefix violation" in out


def test_extract_fresh_flag(capsys, template_file):
    code, out, _ = invoke(
        capsys, "extract", "--fresh", "--oracle", f"template:{template_file}"
    )
    assert code == 0
    assert '"ab" x1 "c"' in out


def test_extract_fresh_needs_extension(capsys):
    code, _, err = invoke(
        capsys, "extract", "--fresh", "--oracle", "builtin:sort_letters"
    )
    assert code == 2
    assert "letters" in err or "extension" in err


def test_table_oracle(capsys, tmp_path):
    fn = TemplateFunction(Template.of(AB, "a", 1, ""))
    rows = []
    from cpmonoid import iter_words

    for w in iter_words(AB, 4):
        rows.append(f"{w.letters}\t{fn(w.letters).letters}")
    path = tmp_path / "t.tsv"
    path.write_text("\n".join(rows) + "\n")
    code, out, _ = invoke(
        capsys, "profile", "--oracle", f"table:{path}", "--alphabet", "ab"
    )
    assert code == 0
    assert "p 1" in out


def test_audit_standard_collapse(capsys):
    code, out, _ = invoke(capsys, "audit", "--oracle", "builtin:collapse_b_to_a")
    assert code == 1
    assert "WITNESS" in out


def test_audit_pass_for_square(capsys):
    code, out, _ = invoke(capsys, "audit", "--oracle", "builtin:square")
    assert code == 0
    assert out.startswith("ok (")


def test_audit_budget_exit(capsys):
    code, out, _ = invoke(
        capsys, "audit", "--oracle", "builtin:reverse", "--budget", "5"
    )
    assert code == 4
    assert "budget exhausted" in out


def test_audit_seed_env_override(capsys, monkeypatch):
    monkeypatch.setenv("CPMONOID_SEED", "123")
    code, out, _ = invoke(
        capsys, "audit", "--oracle", "builtin:square", "--family", "random"
    )
    assert code == 0
    monkeypatch.setenv("CPMONOID_SEED", "not-a-number")
    code, _, err = invoke(
        capsys, "audit", "--oracle", "builtin:square", "--family", "random"
    )
    assert code == 2
    assert "CPMONOID_SEED" in err


def test_check_certifies(capsys, template_file):
    code, out, _ = invoke(capsys, "check", "--oracle", f"template:{template_file}")
    assert code == 0
    assert "certified-cp" in out


def test_check_refutes(capsys):
    code, out, _ = invoke(capsys, "check", "--oracle", "builtin:erase_a")
    assert code == 1
    assert "refuted-cp" in out
    assert "WITNESS" in out


def test_explore_exit_codes(capsys):
    code, out, _ = invoke(capsys, "explore", "--maxlen", "2", "--coeff", "1,0")
    assert code == 1  # non-representable candidates exist over two letters
    assert "non-representable 3" in out

    code, out, _ = invoke(
        capsys, "explore", "--maxlen", "2", "--coeff", "0,1", "--alphabet", "abc"
    )
    assert code == 0
    assert "non-representable 0" in out


def test_explore_budget_exit(capsys):
    code, out, _ = invoke(
        capsys, "explore", "--maxlen", "2", "--coeff", "1,1", "--node-budget", "10"
    )
    assert code == 4
    assert "budget exhausted" in out


def test_explore_bad_coeff(capsys):
    code, _, err = invoke(capsys, "explore", "--maxlen", "2", "--coeff", "1")
    assert code == 2


def test_exec_oracle(capsys):
    cmd = f"{shlex.quote(sys.executable)} -m cpmonoid.identity_oracle"
    code, out, _ = invoke(capsys, "extract", "--oracle", f"exec:{cmd}")
    assert code == 0
    assert '"" x1 ""' in out


def test_exec_protocol_failure(capsys):
    code, _, err = invoke(capsys, "extract", "--oracle", "exec:echo NOPE")
    assert code == 3
    assert "protocol" in err


def test_unknown_scheme(capsys):
    code, _, err = invoke(capsys, "extract", "--oracle", "zip:whatever")
    assert code == 2
    assert "scheme" in err


def test_unknown_subcommand(capsys):
    code, _, _ = invoke(capsys, "frobnicate")
    assert code == 2


def test_no_args_usage(capsys):
    code, _, _ = invoke(capsys)
    assert code == 2
