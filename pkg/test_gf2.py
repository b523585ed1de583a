import numpy as np

from decimcorr import gf2


def test_rank_and_nullspace_small():
    assert gf2.rank(np.eye(4, dtype=np.uint8)) == 4
    assert gf2.nullspace(np.eye(4, dtype=np.uint8)).shape == (0, 4)

    kernel = gf2.nullspace([[1, 1], [1, 1]])
    assert kernel.tolist() == [[1, 1]]
    assert gf2.rank([[1, 1], [1, 1]]) == 1


def test_nullspace_is_kernel():
    rng = np.random.default_rng(0)
    for _ in range(50):
        n = int(rng.integers(2, 12))
        matrix = rng.integers(0, 2, size=(n, n), dtype=np.uint8)
        kernel = gf2.nullspace(matrix)
        assert gf2.rank(matrix) + kernel.shape[0] == n
        for vector in kernel:
            assert not ((matrix.astype(np.int64) @ vector) % 2).any()
        if kernel.shape[0]:
            assert gf2.rank(kernel) == kernel.shape[0]


def test_row_reduce_pivots():
    result = gf2.row_reduce([[0, 1, 1], [0, 1, 0], [0, 0, 1]])
    assert result.rank == 2
    assert result.pivots == (1, 2)


def test_pack_rows_and_span():
    vectors = np.array([[1, 0, 1], [0, 1, 0]], dtype=np.uint8)
    assert gf2.pack_rows(vectors) == [5, 2]
    assert gf2.span([5, 2]).tolist() == [0, 2, 5, 7]
    assert gf2.span([]).tolist() == [0]
