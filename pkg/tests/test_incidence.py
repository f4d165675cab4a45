import pytest

from qnull.fields import field
from qnull.grassmann import (
    contains,
    enumerate_subspaces,
    gaussian_binomial,
    index_of,
)
from qnull.incidence import (
    apply_check,
    read_matrix,
    wilson_matrix,
    write_matrix,
)


@pytest.mark.parametrize(
    "q,n,t,k",
    [(2, 4, 1, 2), (2, 5, 1, 3), (3, 3, 1, 2), (4, 3, 1, 2), (2, 4, 0, 2)],
)
def test_shape_and_entries_match_containment(q, n, t, k):
    m = wilson_matrix(q, n, t, k)
    assert m.rows == gaussian_binomial(n, t, q)
    assert m.cols == gaussian_binomial(n, k, q)
    rows = m.row_subspaces()
    cols = m.col_subspaces()
    for i, y in enumerate(rows):
        assert index_of(y) == i
        for j, x in enumerate(cols):
            assert m.entry(i, j) == (1 if contains(x, y) else 0)


def test_column_and_row_sums():
    # every k-space holds the same number of t-subspaces, and every t-space
    # sits inside the same number of k-spaces
    for q, n, t, k in [(2, 4, 1, 2), (3, 4, 1, 2), (2, 5, 2, 3)]:
        m = wilson_matrix(q, n, t, k)
        d = m.dense()
        col_sums = {sum(d[i][j] for i in range(m.rows)) for j in range(m.cols)}
        row_sums = {sum(row) for row in d}
        assert col_sums == {gaussian_binomial(k, t, q)}
        assert row_sums == {gaussian_binomial(n - t, k - t, q)}


def test_t_equals_k_is_identity():
    m = wilson_matrix(3, 3, 2, 2)
    d = m.dense()
    assert m.rows == m.cols
    for i in range(m.rows):
        for j in range(m.cols):
            assert d[i][j] == (1 if i == j else 0)


def test_t_zero_is_all_ones_row():
    m = wilson_matrix(2, 4, 0, 2)
    assert m.rows == 1
    assert m.dense() == [[1] * m.cols]


def test_dense_entry_masks_agree():
    m = wilson_matrix(2, 4, 1, 2)
    d = m.dense()
    masks = m.col_masks()
    assert len(masks) == m.cols
    for j in range(m.cols):
        for i in range(m.rows):
            assert ((masks[j] >> i) & 1) == d[i][j] == m.entry(i, j)
    assert m.col_masks() is masks  # built once, cached


def test_parameter_validation():
    with pytest.raises(ValueError):
        wilson_matrix(2, 4, 3, 2)  # t > k
    with pytest.raises(ValueError):
        wilson_matrix(2, 4, 1, 5)  # k > n
    with pytest.raises(ValueError):
        wilson_matrix(2, 4, -1, 2)
    with pytest.raises(ValueError):
        wilson_matrix(6, 4, 1, 2)  # not a prime power


def test_apply_check_is_matrix_vector_product():
    m = wilson_matrix(4, 3, 1, 2)
    d = m.dense()
    coeffs = [(3 * j + 1) % 4 for j in range(m.cols)]
    for r in (2, 4):
        got = apply_check(m, coeffs, r)
        want = [
            sum(d[i][j] * coeffs[j] for j in range(m.cols)) % r
            for i in range(m.rows)
        ]
        assert got == want


def test_apply_check_validation():
    m = wilson_matrix(3, 3, 1, 2)
    ok = [1] * m.cols
    with pytest.raises(ValueError):
        apply_check(m, ok[:-1], 3)  # wrong length
    with pytest.raises(ValueError):
        apply_check(m, ok, 2)  # 2 is not a power of 3
    with pytest.raises(ValueError):
        apply_check(m, ok, 9)  # exceeds q
    with pytest.raises(ValueError):
        apply_check(m, ok, 1)
    assert apply_check(m, ok, 3) == [
        gaussian_binomial(2, 1, 3) % 3
    ] * m.rows


def test_write_read_round_trip():
    m = wilson_matrix(2, 4, 1, 2)
    text = write_matrix(m)
    back = read_matrix(text)
    assert back == m
    assert back.dense() == m.dense()
    head = text.splitlines()[0].split()
    assert head == ["2", "4", "1", "2", "15", "35"]


def test_read_matrix_rejects_malformed_input():
    with pytest.raises(ValueError):
        read_matrix("")
    with pytest.raises(ValueError):
        read_matrix("2 4 1 2 15\n")  # short header
    with pytest.raises(ValueError):
        read_matrix("2 4 1 2 15 35\n99 0\n")  # row index out of bounds
    with pytest.raises(ValueError):
        read_matrix("2 4 1 2 15 35\n0 99\n")  # column index out of bounds


def test_row_and_col_subspace_lists_are_fresh_and_ordered():
    m = wilson_matrix(3, 3, 1, 2)
    a = m.col_subspaces()
    b = m.col_subspaces()
    assert a == b and a is not b
    assert a == list(enumerate_subspaces(field(3), 3, 2))
