import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import EXAMPLE1_ROWS, columns_of, vor
from strongsep.errors import ParseError, SupportError
from strongsep.matrix import (
    BinaryMatrix,
    BooleanVector,
    boolean_sum,
    covers,
    matrix_from_json,
    matrix_to_json,
    read_matrix,
    write_matrix,
)

COLS = columns_of(EXAMPLE1_ROWS)


def test_example1_shape(example1):
    assert example1.shape == (7, 8)
    assert example1.column(2).to_tuple() == (0, 1, 1, 0, 0, 0, 0)
    assert example1.entry(1, 8) == 1


@pytest.mark.parametrize("s", [{1, 3}, {2, 6}])
def test_boolean_sum_matches_hand_or(example1, s):
    expected = vor(COLS[j - 1] for j in s)
    assert boolean_sum(example1, s).to_tuple() == expected


def test_boolean_sum_values(example1):
    assert boolean_sum(example1, {1, 3}).to_tuple() == (1, 1, 1, 1, 0, 0, 0)
    assert boolean_sum(example1, {2, 6}).to_tuple() == (0, 1, 1, 0, 0, 1, 0)


def test_boolean_sum_singleton_is_column(example1):
    for j in range(1, 9):
        assert boolean_sum(example1, [j]) == example1.column(j)


def test_boolean_sum_errors(example1):
    with pytest.raises(SupportError, match="empty support"):
        boolean_sum(example1, [])
    with pytest.raises(SupportError, match="bad index"):
        boolean_sum(example1, [0, 1])
    with pytest.raises(SupportError, match="bad index"):
        boolean_sum(example1, [9])


def test_covers_examples(example1):
    a = BooleanVector.from_seq((1, 1, 1, 1, 0, 0, 0))
    assert covers(a, example1.column(2))
    assert covers(a, a)
    assert not covers(BooleanVector.from_seq((1, 0)), BooleanVector.from_seq((0, 1)))


def test_covers_length_mismatch():
    with pytest.raises(ValueError):
        covers(BooleanVector.from_seq((1,)), BooleanVector.from_seq((1, 0)))


def test_covers_is_partial_order():
    for t in range(1, 5):
        vs = [BooleanVector.from_seq(b) for b in itertools.product((0, 1), repeat=t)]
        for a in vs:
            assert covers(a, a)
            for b in vs:
                if covers(a, b) and covers(b, a):
                    assert a == b
                for c in vs:
                    if covers(a, b) and covers(b, c):
                        assert covers(a, c)


matrices = st.integers(1, 6).flatmap(
    lambda t: st.lists(st.lists(st.integers(0, 1), min_size=t, max_size=t), min_size=1, max_size=8)
).map(BinaryMatrix.from_columns)


@given(matrices, st.data())
def test_boolean_sum_union_and_cover(m, data):
    idx = st.sets(st.integers(1, m.n), min_size=1)
    s, s2 = data.draw(idx), data.draw(idx)
    assert boolean_sum(m, s | s2) == boolean_sum(m, s) | boolean_sum(m, s2)
    r = boolean_sum(m, s)
    assert all(covers(r, m.column(j)) for j in s)


def test_read_identity():
    m = read_matrix("2 2\n10\n01\n")
    assert m == BinaryMatrix.identity(2)


def test_read_rejects_bad_character():
    with pytest.raises(ParseError) as err:
        read_matrix("2 2\n1a\n01\n")
    assert err.value.line == 2


@pytest.mark.parametrize(
    "text, line",
    [
        ("2 2\n10\n0\n", 3),
        ("2 2\n10\n", 3),
        ("2 2\n10\n01\n11\n", 4),
        ("2  2\n10\n01\n", 1),
        ("2 2 \n10\n01\n", 1),
        ("2 2\n10 \n01\n", 2),
        ("2 2\r\n10\r\n01\r\n", 1),
        ("", 1),
    ],
)
def test_read_rejects_malformed(text, line):
    with pytest.raises(ParseError) as err:
        read_matrix(text)
    assert err.value.line == line


@given(matrices)
def test_text_and_json_round_trip(m):
    text = write_matrix(m)
    assert read_matrix(text) == m
    assert write_matrix(read_matrix(text)) == text
    assert matrix_from_json(matrix_to_json(m)) == m


def test_write_is_canonical(example1):
    text = write_matrix(example1)
    assert text == "7 8\n" + "".join(r + "\n" for r in EXAMPLE1_ROWS)
    assert not any(line.endswith(" ") for line in text.split("\n"))


def test_json_errors():
    with pytest.raises(ParseError):
        matrix_from_json('{"t": 2, "n": 2, "rows": ["10"]}')
    with pytest.raises(ParseError):
        matrix_from_json('{"t": 1, "n": 2, "rows": ["1x"]}')
    with pytest.raises(ParseError):
        matrix_from_json("{not json")


def test_duplicate_and_zero_columns_are_representable():
    m = BinaryMatrix.from_columns([(1, 0), (1, 0), (0, 0)])
    assert m.n == 3 and m.columns == (1, 1, 0)


def test_rows_transpose(example1):
    for i in range(1, 8):
        for j in range(1, 9):
            assert (example1.rows[i - 1] >> (j - 1)) & 1 == example1.entry(i, j)


def test_wide_columns():
    t = 600
    col = [1 if i % 7 == 0 else 0 for i in range(t)]
    m = BinaryMatrix.from_columns([col, [1] * t])
    assert covers(m.column(2), m.column(1))
    assert not covers(m.column(1), m.column(2))
    assert read_matrix(write_matrix(m)) == m
