import pytest

from pathorder.coeffs import MAX_DEPTH, BinOp, Func, Lag, MeanLag, MeanSupNorm, Neg, Num, Time, parse, tokenize
from pathorder.common.helpers import CoeffSyntaxError
from pathorder.segments import TimeGrid

GRID = TimeGrid(0, 1, 0.25, 0.5)


class TestTokenize:

    def test_offsets(self):
        tokens = tokenize("x[1] + 2.5e-1")
        assert [t.offset for t in tokens] == [1, 2, 3, 4, 6, 8, 14]
        assert tokens[-1].kind == 'end'

    def test_bad_character(self):
        with pytest.raises(CoeffSyntaxError) as e:
            tokenize("1 + $")
        assert e.value.offset == 5


class TestParse:

    @pytest.mark.parametrize('src, tree', [
        ("1", Num(1.)),
        ("t", Time()),
        ("x[2](-0.25)", Lag(2, -0.25, 1)),
        ("x[1](0)", Lag(1, 0., 2)),
        ("E[x[1](-0.5)]", MeanLag(1, -0.5, 0)),
        ("E[supnorm]", MeanSupNorm()),
        ("-t", Neg(Time())),
        ("1 - 2 - t", BinOp('-', BinOp('-', Num(1.), Num(2.)), Time())),
        ("1 + 2 * t", BinOp('+', Num(1.), BinOp('*', Num(2.), Time()))),
        ("max(t, 0)", Func('max', (Time(), Num(0.)))),
        ("tanh((t))", Func('tanh', (Time(),))),
    ])
    def test_trees(self, src, tree):
        assert parse(src, 2, GRID) == tree

    def test_whitespace(self):
        assert parse(" x [ 1 ] ( - 0.25 ) ", 2, GRID) == parse("x[1](-0.25)", 2, GRID)

    @pytest.mark.parametrize('src, offset, reason', [
        ("x[2](0", 7, "expected ')'"),
        ("", 1, "empty expression"),
        ("1 +", 4, "unexpected end of input"),
        ("foo(1)", 1, "unknown identifier"),
        ("x[3](0)", 3, "index out of range"),
        ("x[0](0)", 3, "index out of range"),
        ("x[1](-0.3)", 7, "lag not on grid"),
        ("x[1](-0.75)", 7, "outside"),
        ("x[1](0.25)", 6, "outside"),
        ("min(1)", 6, "takes 2 argument(s)"),
        ("exp(1, 2)", 9, "takes 1 argument(s)"),
        ("E[t]", 3, "inside E[...]"),
        ("1 2", 3, "unexpected '2'"),
        ("(1", 3, "expected ')'"),
    ])
    def test_errors(self, src, offset, reason):
        with pytest.raises(CoeffSyntaxError) as e:
            parse(src, 2, GRID)
        assert e.value.offset == offset
        assert reason in e.value.reason
        assert e.value.source == src

    def test_nesting_limit(self):
        src = "(" * (MAX_DEPTH + 1) + "1" + ")" * (MAX_DEPTH + 1)
        with pytest.raises(CoeffSyntaxError, match="deeper than"):
            parse(src, 1, GRID)

    def test_tree_depth_limit(self):
        with pytest.raises(CoeffSyntaxError, match="deeper than"):
            parse(" + ".join(["1"] * (MAX_DEPTH + 2)), 1, GRID)

    def test_depth_at_limit(self):
        parse(" + ".join(["1"] * (MAX_DEPTH // 2)), 1, GRID)

    def test_not_string(self):
        with pytest.raises(TypeError):
            parse(1.5, 1, GRID)
