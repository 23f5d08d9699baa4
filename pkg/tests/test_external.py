"""Line-protocol conformance, driven against small inline subprocess oracles.

Each misbehaving oracle is a one-liner Python script; the harness must turn
every deviation into OracleProtocolError rather than wrong answers.
"""

import shlex
import sys

import pytest

from cpmonoid import (
    Extracted,
    ExternalFunction,
    OracleProtocolError,
    extract,
    extract_fresh,
)

from conftest import ABC


def script(body: str) -> str:
    return f"{shlex.quote(sys.executable)} -c {shlex.quote(body)}"


IDENTITY = f"{shlex.quote(sys.executable)} -m cpmonoid.identity_oracle"


def test_identity_oracle_basic():
    with ExternalFunction(IDENTITY, 1, ABC) as fn:
        assert fn("").letters == ""
        assert fn("abc").letters == "abc"
        assert fn("aa").letters == "aa"


def test_identity_oracle_binary():
    # two TAB-separated fields, concatenated back
    with ExternalFunction(IDENTITY, 2, ABC) as fn:
        assert fn("ab", "c").letters == "abc"
        assert fn("", "").letters == ""
        assert fn("a", "").letters == "a"


def test_identity_oracle_extension_handshake():
    with ExternalFunction(IDENTITY + " --ext", 1, ABC) as fn:
        assert fn.supports_extension
    with ExternalFunction(IDENTITY, 1, ABC) as fn:
        assert not fn.supports_extension


def test_extract_over_protocol():
    with ExternalFunction(IDENTITY, 1, ABC) as fn:
        got = extract(fn)
    assert isinstance(got, Extracted)
    assert str(got.template) == '"" x1 ""'


def test_extract_fresh_over_protocol():
    with ExternalFunction(IDENTITY + " --ext", 1, ABC) as fn:
        got = extract_fresh(fn)
    assert isinstance(got, Extracted)
    assert str(got.template) == '"" x1 ""'


def test_query_count_counts_lines():
    with ExternalFunction(IDENTITY, 1, ABC) as fn:
        fn("ab")
        fn("ab")  # cache hit, no second line
        fn("ba")
        assert fn.query_count == 2


def test_bad_handshake():
    bad = script("print('NOPE', flush=True)")
    with pytest.raises(OracleProtocolError):
        ExternalFunction(bad, 1, ABC)


def test_eof_before_handshake():
    bad = script("pass")
    with pytest.raises(OracleProtocolError):
        ExternalFunction(bad, 1, ABC)


def test_eof_mid_session():
    body = (
        "import sys\n"
        "input()\n"
        "print('OK', flush=True)\n"
    )
    with ExternalFunction(script(body), 1, ABC) as fn:
        with pytest.raises(OracleProtocolError):
            fn("a")


def test_reply_with_tab_rejected():
    body = (
        "import sys\n"
        "input()\n"
        "print('OK', flush=True)\n"
        "for line in sys.stdin:\n"
        "    print('a\\tb', flush=True)\n"
    )
    with ExternalFunction(script(body), 1, ABC) as fn:
        with pytest.raises(OracleProtocolError):
            fn("a")


def test_reply_with_undeclared_letter_rejected():
    # plain 'OK' handshake promises outputs over the declared alphabet
    body = (
        "import sys\n"
        "input()\n"
        "print('OK', flush=True)\n"
        "for line in sys.stdin:\n"
        "    print('z', flush=True)\n"
    )
    with ExternalFunction(script(body), 1, ABC) as fn:
        with pytest.raises(OracleProtocolError):
            fn("a")


def test_ext_reply_may_echo_sent_letters():
    # with OK EXT, letters the tool itself sent are fair game
    body = (
        "import sys\n"
        "input()\n"
        "print('OK EXT', flush=True)\n"
        "for line in sys.stdin:\n"
        "    print(line.rstrip('\\n').replace('\\t', ''), flush=True)\n"
    )
    with ExternalFunction(script(body), 1, ABC) as fn:
        out = fn.evaluate((ABC.extended("Q").word("Qa"),))
        assert out.letters == "Qa"


def test_ext_reply_with_invented_letter_rejected():
    # even OK EXT does not allow letters nobody has mentioned
    body = (
        "import sys\n"
        "input()\n"
        "print('OK EXT', flush=True)\n"
        "for line in sys.stdin:\n"
        "    print('Z', flush=True)\n"
    )
    with ExternalFunction(script(body), 1, ABC) as fn:
        with pytest.raises(OracleProtocolError):
            fn("a")


def test_close_is_idempotent():
    fn = ExternalFunction(IDENTITY, 1, ABC)
    assert fn("ab").letters == "ab"
    fn.close()
    fn.close()


def test_closed_oracle_refuses_queries():
    fn = ExternalFunction(IDENTITY, 1, ABC)
    fn.close()
    with pytest.raises(OracleProtocolError):
        fn("ab")
