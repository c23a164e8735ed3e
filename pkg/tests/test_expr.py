import math
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qalgebra import EvalEnv, EvalPolicy, evaluate, parse, parse_expr, pretty_print, tokenize
from qalgebra.errors import (
    DomainViolation,
    LexError,
    NonPositiveArgument,
    NonPositiveBracket,
    ParseError,
    SingularDenominator,
    UnboundVariable,
)
from qalgebra.expr import ADDITIVE, FUNCTIONS, MULTIPLICATIVE, Binary, Call, NumberLit, TokenKind, Unary, Var


def n(v):
    return NumberLit(float(v))


# -- tokenizer ------------------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("0.1 @+ 0.1", "[Number(0.1), DeformedOp(@+), Number(0.1)]"),
    ("qln(x) + 2", "[Func(qln), LParen, Ident(x), RParen, ClassicalOp(+), Number(2)]"),
    ("a^*b ^+ 1e-3", "[Ident(a), DualOp(^*), Ident(b), DualOp(^+), Number(1e-3)]"),
    ("exp(.5, 2.)", "[Func(exp), LParen, Number(.5), Comma, Number(2.), RParen]"),
])
def test_tokenize_examples(text, expected):
    assert repr(tokenize(text)) == expected


def test_number_values():
    assert [t.value for t in tokenize("1 2.5 .5 3e2 4E-1")] == [1.0, 2.5, 0.5, 300.0, 0.4]


@pytest.mark.parametrize("text, offset", [("3 @@ 4", 2), ("1 $ 2", 2), ("x ^ y", 2), ("1 @", 2), ("π", 0)])
def test_lex_errors(text, offset):
    with pytest.raises(LexError) as info:
        tokenize(text)
    assert info.value.offset == offset


@given(st.text(alphabet="0123456789.e+-*/@^() ,xqlnp", max_size=40))
def test_token_spans_cover_input(text):
    try:
        tokens = tokenize(text)
    except LexError:
        return
    covered = set()
    prev_end = 0
    for tok in tokens:
        start, end = tok.span
        assert prev_end <= start < end
        assert text[start:end] == tok.text
        covered.update(range(start, end))
        prev_end = end
    assert covered == {i for i, ch in enumerate(text) if not ch.isspace()}


# -- parser ---------------------------------------------------------------------

@pytest.mark.parametrize("text, tree", [
    ("1 @+ 2 @* 3", Binary("@+", n(1), Binary("@*", n(2), n(3)))),
    ("(1 @+ 2) @* 3", Binary("@*", Binary("@+", n(1), n(2)), n(3))),
    ("1 - 2 - 3", Binary("-", Binary("-", n(1), n(2)), n(3))),
    ("1 ^+ 2 ^* 3", Binary("^+", n(1), Binary("^*", n(2), n(3)))),
    ("-x @* 2", Binary("@*", Unary("-", Var("x")), n(2))),
    ("@-2 + 1", Binary("+", Unary("@-", n(2)), n(1))),
    ("qexp(qln(y))", Call("qexp", (Call("qln", (Var("y"),)),))),
    ("2 * 3 @+ 4 / 5", Binary("@+", Binary("*", n(2), n(3)), Binary("/", n(4), n(5)))),
])
def test_parse_examples(text, tree):
    assert parse_expr(text) == tree


@pytest.mark.parametrize("text, message, offset", [
    ("1 @+ ", "expected operand", 5),
    ("", "expected operand", 0),
    ("(1", "expected ')'", 2),
    ("1)", "expected an operator", 1),
    ("qexp()", "expected operand", 5),
    ("qln(1, 2)", "takes 1 argument", 0),
    ("1 2", "expected an operator", 2),
    ("--1", "expected operand", 1),
])
def test_parse_errors(text, message, offset):
    with pytest.raises(ParseError, match=re.escape(message)) as info:
        parse_expr(text)
    assert info.value.offset == offset


def test_parse_accepts_token_list():
    assert parse(tokenize("1 @+ 2")) == Binary("@+", n(1), n(2))


def test_node_spans():
    tree = parse_expr("1 @+ (2 @* 3)")
    assert tree.span == (0, 13)
    assert tree.right.span == (5, 13)
    assert tree.right.left.span == (6, 7)


def test_paren_depth_limit():
    ok = "(" * 256 + "1" + ")" * 256
    assert parse_expr(ok) == n(1)
    with pytest.raises(ParseError):
        parse_expr("(" * 257 + "1" + ")" * 257)
    assert parse_expr("((1))", max_depth=2) == n(1)


def test_tree_depth_limit():
    with pytest.raises(ParseError):
        parse_expr(" @+ ".join(["1"] * 300))
    with pytest.raises(ParseError):
        parse_expr("qexp(" * 300 + "1" + ")" * 300)
    assert evaluate(parse_expr(" + ".join(["1"] * 200)), EvalEnv()) == 200


# -- printer and round trip -----------------------------------------------------

@pytest.mark.parametrize("tree, text", [
    (Binary("@+", n(1), Binary("@*", n(2), n(3))), "1 @+ 2 @* 3"),
    (Binary("@*", Binary("@+", n(1), n(2)), n(3)), "(1 @+ 2) @* 3"),
    (n(0.5), "0.5"),
    (Binary("-", n(1), Binary("-", n(2), n(3))), "1 - (2 - 3)"),
    (Unary("@-", Binary("+", Var("x"), n(1))), "@-(x + 1)"),
    (Unary("-", Unary("-", n(2))), "-(-2)"),
    (Call("qln", (Binary("^*", Var("x"), n(2)),)), "qln(x ^* 2)"),
])
def test_pretty_print_examples(tree, text):
    assert pretty_print(tree) == text


numbers = st.floats(0, 1e20, allow_nan=False, allow_infinity=False).map(NumberLit)
names = st.sampled_from(["x", "y", "z", "rate", "a_1"]).map(Var)


def trees(max_depth=12):
    def extend(children):
        return st.one_of(
            st.builds(Unary, st.sampled_from(["-", "@-"]), children),
            st.builds(Binary, st.sampled_from(ADDITIVE + MULTIPLICATIVE), children, children),
            st.builds(lambda f, arg: Call(f, (arg,)), st.sampled_from(FUNCTIONS), children),
        )

    return st.recursive(numbers | names, extend, max_leaves=max_depth * 3)


def depth(e):
    if isinstance(e, (NumberLit, Var)):
        return 1
    if isinstance(e, Unary):
        return 1 + depth(e.operand)
    if isinstance(e, Binary):
        return 1 + max(depth(e.left), depth(e.right))
    return 1 + depth(e.args[0])


@settings(max_examples=500)
@given(trees())
def test_round_trip(tree):
    if depth(tree) > 12:
        return
    assert parse_expr(pretty_print(tree)) == tree


@given(trees())
def test_pretty_print_is_a_fixed_point(tree):
    text = pretty_print(tree)
    assert pretty_print(parse_expr(text)) == text


# -- evaluation -----------------------------------------------------------------

@pytest.mark.parametrize("text, a, bindings, expected", [
    ("0.1 @+ 0.1", 1.0, {}, 0.21),
    ("qln(qexp(x))", 0.7, {"x": 2.0}, 2.0),
    ("3 @* 4", 1.0, {}, 6.0),
    ("6 @/ 4", 1.0, {}, 3.0),
    ("0.21 @- 0.1", 1.0, {}, 0.1),
    ("@-1", 1.0, {}, -0.5),
    ("1 ^+ 1", 1.0, {}, 1 + math.log(2)),
    ("x ^* 0", 1.0, {"x": 5.0}, 0.0),
    ("exp(1) - ln(1)", 0.3, {}, math.e),
    ("2 * (3 + 4) / 7", 0.0, {}, 2.0),
])
def test_evaluate_examples(text, a, bindings, expected):
    assert evaluate(parse_expr(text), EvalEnv(a, bindings)) == pytest.approx(expected, rel=1e-15, abs=1e-15)


def test_unbound_variable_has_span():
    with pytest.raises(UnboundVariable) as info:
        evaluate(parse_expr("1 @+ rate"), EvalEnv(1.0, {"x": 1.0}))
    assert info.value.span == (5, 9)


@pytest.mark.parametrize("text, error, failing", [
    ("3 @- (-1)", SingularDenominator, "3 @- (-1)"),
    ("1 @+ (2 @* qln(0 - 1))", NonPositiveArgument, "qln(0 - 1)"),
    ("2 + qexp(-3) * 4", NonPositiveBracket, "qexp(-3)"),
    ("1 / (x - x) + 1", SingularDenominator, "1 / (x - x)"),
    ("(0.3 @* 0.4) @+ 1", DomainViolation, "(0.3 @* 0.4)"),
])
def test_errors_carry_span_of_failing_subexpression(text, error, failing):
    with pytest.raises(error) as info:
        evaluate(parse_expr(text), EvalEnv(1.0, {"x": 2.0}))
    start, end = info.value.span
    assert text[start:end] == failing


def test_cutoff_policy_in_evaluation():
    tree = parse_expr("qexp(-3) + 1")
    with pytest.raises(NonPositiveBracket):
        evaluate(tree, EvalEnv(1.0))
    assert evaluate(tree, EvalEnv(1.0, policy=EvalPolicy.CUTOFF)) == 1.0


def test_shared_tree_under_different_environments():
    tree = parse_expr("x @+ x")
    assert evaluate(tree, EvalEnv(1.0, {"x": 0.1})) == pytest.approx(0.21)
    assert evaluate(tree, EvalEnv(0.0, {"x": 0.1})) == pytest.approx(0.2)


_CLASSICAL = {"@+": "+", "@-": "-", "@*": "*", "@/": "/", "^+": "+", "^*": "*"}
_CLASSICAL_FUNC = {"qexp": "exp", "qln": "ln"}


def classical(e):
    if isinstance(e, Binary):
        return Binary(_CLASSICAL.get(e.op, e.op), classical(e.left), classical(e.right))
    if isinstance(e, Unary):
        return Unary("-", classical(e.operand))
    if isinstance(e, Call):
        return Call(_CLASSICAL_FUNC.get(e.func, e.func), tuple(classical(x) for x in e.args))
    return e


def deformed_trees():
    leaves = st.floats(0.1, 5.0).map(NumberLit) | names

    def extend(children):
        return st.one_of(
            st.builds(Binary, st.sampled_from(list(_CLASSICAL)), children, children),
            st.builds(Unary, st.just("@-"), children),
            st.builds(lambda f, arg: Call(f, (arg,)), st.sampled_from(["qexp", "qln"]), children),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@settings(max_examples=300)
@given(deformed_trees(), st.floats(0.1, 3.0), st.floats(0.1, 3.0), st.floats(0.1, 3.0))
def test_classical_substitution_at_zero(tree, x, y, z):
    env = EvalEnv(0.0, {"x": x, "y": y, "z": z, "rate": 1.5, "a_1": 0.5})
    try:
        deformed = evaluate(tree, env)
        plain = evaluate(classical(tree), env)
    except DomainViolation:
        return
    assert deformed == pytest.approx(plain, rel=1e-12, abs=1e-300)


def test_token_kinds_are_distinct():
    kinds = [t.kind for t in tokenize("1 x qexp + @+ ^+ ( ) ,")]
    assert kinds == [
        TokenKind.NUMBER, TokenKind.IDENT, TokenKind.FUNC, TokenKind.CLASSICAL_OP,
        TokenKind.DEFORMED_OP, TokenKind.DUAL_OP, TokenKind.LPAREN, TokenKind.RPAREN, TokenKind.COMMA,
    ]
