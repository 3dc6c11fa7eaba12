from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from findyn.errors import SpecSemanticError, SpecSyntaxError
from findyn.generators import runex
from findyn.multipoly import format_mpoly, mp_interpolate
from findyn.specfile import SpecFile, format_spec, load_model, parse_spec
from findyn.stochastic import PFDS, SFDS
from findyn.system import System

MODELS = sorted((Path(__file__).parent.parent / "models").glob("*.spec"))

RUNEX_TEXT = """\
field 2
vars 4
local 1 = x1 + x2 + x3 + x4
local 2 = bool x1 ^ x2
local 3 = x1 + x3
local 4 = x4 + x1   # order inside a sum does not matter
mode parallel
"""


def test_runex_text_matches_generator():
    S = load_model(RUNEX_TEXT)
    assert isinstance(S, System)
    assert S == runex().system()


@pytest.mark.parametrize("path", MODELS, ids=[p.name for p in MODELS])
def test_corpus_roundtrip(path):
    spec = parse_spec(path.read_text())
    again = parse_spec(format_spec(spec))
    assert again == spec
    assert format_spec(again) == format_spec(spec)


def test_kinds():
    assert isinstance(load_model((MODELS[0].parent / "runex_sfds.spec").read_text()), SFDS)
    assert isinstance(load_model((MODELS[0].parent / "toggle_pfds.spec").read_text()), PFDS)


def test_missing_local():
    with pytest.raises(SpecSemanticError, match="variable 2"):
        parse_spec("field 2\nvars 2\nlocal 1 = x1\n")


def test_duplicate_local():
    with pytest.raises(SpecSemanticError, match="twice"):
        parse_spec("field 2\nvars 1\nlocal 1 = x1\nlocal 1 = 1\n")


def test_probability_sum():
    text = "field 2\nvars 1\nlocal 1 = x1\nstochastic sfds\nmember 0.6 parallel\nmember 0.5 word (1)\n"
    with pytest.raises(SpecSemanticError, match="sum"):
        parse_spec(text)
    text = "field 2\nvars 1\nstochastic pfds\nchoice 1 1/3 = x1\nchoice 1 1/3 = 1\n"
    with pytest.raises(SpecSemanticError):
        parse_spec(text)


@pytest.mark.parametrize(
    "text, line",
    [
        ("field 2\nvars 2\nlocal 1 = x1 +\nlocal 2 = x2\n", 3),
        ("field 2\nvars 2\n\n# comment\nlocal 1 x1\n", 5),
        ("field 2\nvars 1\nlocal 1 = x1\nmode sideways\n", 4),
        ("field 2\nvars 1\nlocal 1 = x1\nfrobnicate\n", 4),
        ("local 1 = x1\nfield 2\nvars 1\n", 1),
        ("field 2\nvars 2\nlocal 1 = table 0 1 1\nlocal 2 = x2\n", 3),
        ("field 2\nvars 1\nlocal 1 = x1\nmember 1 parallel\n", 4),
    ],
)
def test_syntax_errors_carry_line(text, line):
    with pytest.raises(SpecSyntaxError) as err:
        parse_spec(text)
    assert err.value.line == line
    assert str(err.value).startswith(f"line {line}:")


@pytest.mark.parametrize(
    "text",
    [
        "field 4\nvars 1\nlocal 1 = x1\n",
        "field 3\nvars 1\nlocal 1 = bool !x1\n",
        "field 2\nvars 1\nlocal 2 = x1\n",
        "field 2\nvars 2\nlocal 1 = x1\nlocal 2 = x2\nmode word (1,3)\n",
        "field 2\nvars 2\nlocal 1 = x1\nlocal 2 = x2\ninit (1,2)\n",
        "field 2\nfield 2\nvars 1\nlocal 1 = x1\n",
        "field 3\nvars 1\nlocal 1 = table 0 1 3\n",
    ],
)
def test_semantic_errors(text):
    with pytest.raises(SpecSemanticError):
        parse_spec(text)


def test_table_and_bool_forms():
    spec = parse_spec("field 2\nvars 2\nlocal 1 = table 0 0 0 1\nlocal 2 = bool x1 | x2\n")
    assert format_mpoly(spec.locals[0]) == "x1*x2"
    assert format_mpoly(spec.locals[1]) == "x1*x2 + x1 + x2"


def test_probability_forms():
    spec = parse_spec("field 2\nvars 1\nlocal 1 = x1\nstochastic sfds\nmember 0.25 parallel\nmember 3/4 word (1,1)\n")
    assert [q for _, q in spec.members] == [Fraction(1, 4), Fraction(3, 4)]
    assert spec.members[1][0] == (1, 1)


@given(st.sampled_from([(2, 1), (2, 2), (3, 2), (5, 1)]).flatmap(
    lambda pn: st.tuples(
        st.just(pn),
        st.lists(st.lists(st.integers(0, pn[0] - 1), min_size=pn[0] ** pn[1], max_size=pn[0] ** pn[1]), min_size=pn[1], max_size=pn[1]),
        st.one_of(st.just("parallel"), st.lists(st.integers(1, pn[1]), min_size=1, max_size=4).map(tuple)),
    )
))
def test_random_spec_roundtrip(t):
    (p, n), tables, mode = t
    spec = SpecFile(p, n, "system", tuple(mp_interpolate(p, n, tb) for tb in tables), mode)
    assert parse_spec(format_spec(spec)) == spec
