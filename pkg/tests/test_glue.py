import math

import pytest
from gmpy2 import mpq

import polys
from niep.errors import (
    DegenerateEigenvector,
    EpsTooSmall,
    NegativeEps,
    NotAnEigenpair,
    NotAnEigenvalue,
    NotSymmetric,
    OrderViolated,
    PerronExceedsCorner,
)
from niep.glue import eigenvector, fiedler_couple, fiedler_eps, guo_eps_perturb, merge_lists_eps, smigoc_glue
from niep.matrix import Matrix
from niep.verify import certify, char_poly

SWAP5 = Matrix.from_rows([[0, 5], [5, 0]])
SWAP1 = Matrix.from_rows([[0, 1], [1, 0]])
DESK_A = Matrix.from_rows([[0, 2], [1, 1]])
EXAMPLE_M = Matrix.from_rows([[0, 5, 0, 0, 1], [5, 0, 0, 0, 1], [1, 0, 0, 5, 0], [1, 0, 5, 0, 0], [0, 0, 4, 0, 2]])


def test_eigenvector_is_exact_in_rational_mode():
    x = eigenvector(SWAP5, -5)
    assert x[0] == -x[1] and x[0] != 0
    with pytest.raises(NotAnEigenvalue):
        eigenvector(SWAP5, 1)


@pytest.mark.parametrize("sign, spectrum", [("+", [6, -4]), ("-", [6, -6])])
def test_guo_eps_perturb_examples(sign, spectrum):
    out = guo_eps_perturb(SWAP5, -5, 1, sign)
    assert certify(out, spectrum).passed


def test_guo_eps_zero_is_identity():
    assert guo_eps_perturb(SWAP5, -5, 0) == SWAP5


def test_guo_eps_keeps_the_rest_of_the_spectrum():
    out = guo_eps_perturb(EXAMPLE_M, 3, mpq(1, 2), "-")
    expected = polys.from_roots([mpq(13, 2), mpq(5, 2), 3, -5, -5])
    assert char_poly(out) == expected
    assert out.min_entry() >= 0


def test_guo_eps_rejects_the_perron_direction():
    with pytest.raises(DegenerateEigenvector):
        guo_eps_perturb(SWAP5, 5, 1)


@pytest.mark.parametrize(
    "a1, a2, eps, spectrum",
    [
        (SWAP5, SWAP5, 0, [5, 5, -5, -5]),
        (SWAP5, SWAP5, 2, [7, 3, -5, -5]),
        (Matrix.from_rows([[2]]), SWAP5, 3, [5, 2, -5]),
    ],
)
def test_merge_lists_examples(a1, a2, eps, spectrum):
    out = merge_lists_eps(a1, a2, eps)
    assert out.n == a1.n + a2.n
    assert certify(out, spectrum).passed


def test_merge_lists_eps_lower_bound():
    with pytest.raises(EpsTooSmall):
        merge_lists_eps(Matrix.from_rows([[2]]), SWAP5, 2)


def test_smigoc_glue_desk_case():
    out = smigoc_glue(DESK_A, SWAP1)
    assert out == [[0, 2, 0], [1, 0, 1], [1, 1, 0]]
    assert certify(out, [2, -1, -1]).passed


def test_smigoc_glue_with_a_scalar_block_is_identity():
    assert smigoc_glue(DESK_A, Matrix.from_rows([[1]])) == DESK_A


def test_smigoc_glue_diagonal_bound():
    # corner c = 1, max diagonal d = 1, lambda_1 = 1 for the 2x2 all-halves block
    b_mat = Matrix.from_rows([[mpq(1, 2), mpq(1, 2)], [mpq(1, 2), mpq(1, 2)]])
    out = smigoc_glue(DESK_A, b_mat)
    assert max(out.diagonal()) >= 1 + mpq(1, 2) - 1
    assert certify(out, [2, -1, 0]).passed


def test_smigoc_glue_rejects_a_large_perron_root():
    with pytest.raises(PerronExceedsCorner):
        smigoc_glue(DESK_A, Matrix.from_rows([[0, 3], [3, 0]]))


def test_fiedler_couple_examples():
    zero = Matrix.from_rows([[0]])
    assert fiedler_couple(zero, zero, [1], [1], 1) == [[0, 1], [1, 0]]
    h = 1 / math.sqrt(2)
    out = fiedler_couple(SWAP1.to_float(), SWAP1.to_float(), [h, h], [h, h], 1)
    assert certify(out, [2, 0, -1, -1]).passed


def test_fiedler_couple_input_checks():
    with pytest.raises(NotSymmetric):
        fiedler_couple(DESK_A, SWAP1, [1, 0], [1, 0], 1)
    with pytest.raises(NotAnEigenpair):
        fiedler_couple(SWAP1, SWAP1, [1, 0], [1, 0], 1)


def test_fiedler_eps_examples():
    assert fiedler_eps(SWAP1, SWAP1, 0) == [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    out = fiedler_eps(SWAP1, SWAP1, 1)
    assert out.backend.exact and out.symmetric
    assert certify(out, [2, 0, -1, -1]).passed
    pair = fiedler_eps(Matrix.from_rows([[3]]), Matrix.from_rows([[1]]), 1)
    assert abs(pair.rows[0][1] - math.sqrt(3)) < 1e-12
    assert certify(pair, [4.0, 0.0]).passed


def test_fiedler_eps_input_checks():
    with pytest.raises(OrderViolated):
        fiedler_eps(Matrix.from_rows([[1]]), Matrix.from_rows([[3]]), 1)
    with pytest.raises(NegativeEps):
        fiedler_eps(SWAP1, SWAP1, -1)
