import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irkit import scan
from irkit.errors import InversionError, ParseError, TransformError

from oracles import all_scan_commands, oracle_scan_interpret

actions_strategy = st.lists(st.sampled_from(sorted(scan.ACTIONS)),
                            min_size=1, max_size=40)


@pytest.fixture(scope="module")
def command_space():
    return all_scan_commands()


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def test_parse_repeat():
    assert scan.parse_command("jump twice") == scan.Repeat(
        scan.VerbPhrase("jump"), 2)


def test_parse_atomic():
    assert scan.parse_command("jump") == scan.VerbPhrase("jump")


def test_parse_conjunction():
    command = scan.parse_command("walk left and run thrice")
    assert command == scan.Conjunction(
        "and", scan.VerbPhrase("walk", "left"),
        scan.Repeat(scan.VerbPhrase("run"), 3))


@pytest.mark.parametrize("bad", [
    "jump sideways",        # unknown word
    "turn",                 # bare turn has no denotation
    "jump opposite",        # modifier without direction
    "jump twice thrice",    # trailing word
    "and jump",             # missing left conjunct
    "",
])
def test_parse_rejections(bad):
    with pytest.raises(ParseError):
        scan.parse_command(bad)


def test_unknown_word_offset():
    with pytest.raises(ParseError) as err:
        scan.parse_command("jump frobnicate twice")
    assert err.value.offset == len("jump ")


def test_whole_grammar_parses(command_space):
    assert len(command_space) == 20910
    for text in command_space:
        scan.parse_command(text)


# ---------------------------------------------------------------------------
# Interpretation: primary vs independent table-driven oracle
# ---------------------------------------------------------------------------


def test_interpret_examples():
    assert scan.interpret(scan.parse_command("jump twice")) == ["JUMP", "JUMP"]
    assert scan.interpret(scan.parse_command("turn opposite left twice")) == [
        "LTURN", "LTURN", "LTURN", "LTURN"]


def test_interpret_agrees_with_oracle_everywhere(command_space):
    for text in command_space:
        ours = " ".join(scan.interpret(scan.parse_command(text)))
        assert ours == oracle_scan_interpret(text), text


def test_interpretation_is_never_empty(command_space):
    for text in command_space[:500]:
        assert scan.interpret(scan.parse_command(text))


# ---------------------------------------------------------------------------
# Reversible IR
# ---------------------------------------------------------------------------


def test_rir_examples():
    assert scan.scan_to_rir(scan.parse_command("jump")) == ["JUMP"]
    assert " ".join(scan.scan_to_rir(scan.parse_command("jump twice"))) == \
        "( JUMP ) ( JUMP )"
    assert " ".join(
        scan.scan_to_rir(scan.parse_command("turn opposite left twice"))) == \
        "( LTURN LTURN ) ( LTURN LTURN )"
    assert " ".join(
        scan.scan_to_rir(scan.parse_command("jump opposite right"))) == \
        "( RTURN RTURN JUMP )"


def test_strip_brackets_inverts_rir_everywhere(command_space):
    for text in command_space:
        command = scan.parse_command(text)
        rir = scan.scan_to_rir(command)
        assert scan.strip_brackets(rir) == scan.interpret(command), text


def test_rir_brackets_balanced_and_shallow(command_space):
    for text in command_space[::7]:
        depth = 0
        max_depth = 0
        for tok in scan.scan_to_rir(scan.parse_command(text)):
            if tok == "(":
                depth += 1
                max_depth = max(max_depth, depth)
            elif tok == ")":
                depth -= 1
                assert depth >= 0
        assert depth == 0
        assert max_depth <= 4


def test_strip_brackets_plain_and_errors():
    assert scan.strip_brackets("( LTURN LTURN )") == ["LTURN", "LTURN"]
    assert scan.strip_brackets("JUMP WALK") == ["JUMP", "WALK"]
    with pytest.raises(InversionError):
        scan.strip_brackets("( JUMP")
    with pytest.raises(InversionError):
        scan.strip_brackets(") JUMP (")
    with pytest.raises(InversionError):
        scan.strip_brackets("( JUMPX )")


# ---------------------------------------------------------------------------
# Lossy IR
# ---------------------------------------------------------------------------


def test_lir_run_length_rule():
    assert scan.scan_to_lir(["LTURN"] * 4) == ["LTURN", "A", "A", "A"]
    assert scan.scan_to_lir(["JUMP"]) == ["JUMP"]
    assert scan.scan_to_lir("WALK WALK JUMP JUMP JUMP") == [
        "WALK", "A", "JUMP", "A", "A"]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lir_repetition_sizes(n):
    assert scan.scan_to_lir(["RUN"] * n) == ["RUN"] + ["A"] * (n - 1)


def test_lir_expand_examples():
    assert scan.scan_lir_expand("LTURN A A A") == ["LTURN"] * 4
    assert scan.scan_lir_expand("JUMP WALK") == ["JUMP", "WALK"]
    with pytest.raises(TransformError):
        scan.scan_lir_expand("A JUMP")


def test_lir_round_trip_everywhere(command_space):
    for text in command_space:
        actions = scan.interpret(scan.parse_command(text))
        lir = scan.scan_to_lir(actions)
        assert scan.scan_lir_expand(lir) == actions, text


def test_lir_invariants_everywhere(command_space):
    for text in command_space[::11]:
        actions = scan.interpret(scan.parse_command(text))
        lir = scan.scan_to_lir(actions)
        assert len(lir) == len(actions)
        assert lir[0] != scan.ANON_ACTION
        previous = None
        for tok in lir:
            if tok == scan.ANON_ACTION:
                assert previous is not None
            else:
                previous = tok


@settings(max_examples=200, deadline=None)
@given(actions=actions_strategy)
def test_lir_round_trip_random_sequences(actions):
    lir = scan.scan_to_lir(actions)
    assert scan.scan_lir_expand(lir) == actions
    assert len(lir) == len(actions)


def test_lir_composes_with_brackets():
    rir = scan.scan_to_rir(scan.parse_command("turn opposite left twice"))
    composed = scan.scan_to_lir(rir)
    assert " ".join(composed) == "( LTURN A ) ( LTURN A )"
    assert scan.scan_lir_expand(composed) == rir


# ---------------------------------------------------------------------------
# File adapter
# ---------------------------------------------------------------------------


def test_scan_file_records_are_consistent(scan_records):
    assert len(scan_records) == 24
    for record in scan_records:
        command = scan.parse_command(record.x)
        assert " ".join(scan.interpret(command)) == record.y
