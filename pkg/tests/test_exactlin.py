"""Exact linear algebra: solving, subspace lattice, canonical forms."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linvariants.exactlin import (
    DimensionMismatchError,
    Matrix,
    Subspace,
    all_coordinate_subspaces,
    subspace_sum_dim_identity,
)

small_fractions = st.builds(
    F, st.integers(-9, 9), st.integers(1, 4)
)


def matrices(rows, cols):
    return st.lists(
        st.lists(small_fractions, min_size=cols, max_size=cols),
        min_size=rows,
        max_size=rows,
    ).map(Matrix)


def test_solve_identity():
    assert Matrix.identity(1).solve([5]).solution == (F(5),)


def test_solve_zero_map():
    result = Matrix.zero(2, 2).solve([0, 0])
    assert result.solution == (F(0), F(0))
    assert len(result.kernel) == 2


def test_solve_two_by_two():
    result = Matrix([[1, 2], [3, 4]]).solve([5, 11])
    assert result.solution == (F(1), F(2))
    assert result.is_unique()


def test_solve_inconsistent_returns_none():
    assert Matrix([[1, 1], [1, 1]]).solve([0, 1]) is None


def test_solve_underdetermined_kernel():
    result = Matrix([[1, 1, 0]]).solve([3])
    assert result is not None and len(result.kernel) == 2
    a = Matrix([[1, 1, 0]])
    for basis_vector in result.kernel:
        assert a.apply(basis_vector) == (F(0),)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.tuples(st.just(r), st.integers(1, 4))).flatmap(
    lambda shape: st.tuples(
        matrices(*shape),
        st.lists(small_fractions, min_size=shape[1], max_size=shape[1]),
    )
))
def test_solve_then_substitute(data):
    a, x = data
    b = a.apply(x)
    result = a.solve(b)
    assert result is not None
    assert a.apply(result.solution) == tuple(b)


@settings(max_examples=50, deadline=None)
@given(
    st.integers(2, 8).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.lists(small_fractions, min_size=n, max_size=n), min_size=0, max_size=n),
            st.lists(st.lists(small_fractions, min_size=n, max_size=n), min_size=0, max_size=n),
        )
    )
)
def test_dimension_formula(data):
    n, span_u, span_w = data
    u = Subspace.from_vectors(n, span_u)
    w = Subspace.from_vectors(n, span_w)
    assert subspace_sum_dim_identity(u, w)


@settings(max_examples=50, deadline=None)
@given(
    st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(small_fractions, min_size=n, max_size=n), min_size=0, max_size=n + 1
        ).map(lambda vs: (n, vs))
    )
)
def test_echelon_idempotent(data):
    n, vectors = data
    space = Subspace.from_vectors(n, vectors)
    again = Subspace.from_vectors(n, space.basis)
    assert space == again


def test_sum_with_zero_is_neutral():
    v = Subspace.from_vectors(3, [[1, 2, 3], [0, 1, 1]])
    assert v + Subspace.zero(3) == v


def test_intersect_complementary_lines():
    x_axis = Subspace.from_vectors(2, [[1, 0]])
    y_axis = Subspace.from_vectors(2, [[0, 1]])
    assert x_axis.intersect(y_axis) == Subspace.zero(2)


def test_preimage_of_steinberg_monodromy_top_line():
    # N on (f_1, f_0, f_-1) for n=1: N f_0 = f_1, N f_-1 = 2 f_0
    n_matrix = Matrix([[0, 1, 0], [0, 0, 2], [0, 0, 0]])
    top = Subspace.from_vectors(3, [[1, 0, 0]])
    preimage = top.preimage_under(n_matrix)
    assert preimage == Subspace.from_vectors(3, [[1, 0, 0], [0, 1, 0]])


def test_image_under():
    t = Matrix([[0, 1], [0, 0]])
    line = Subspace.from_vectors(2, [[0, 1]])
    assert line.image_under(t) == Subspace.from_vectors(2, [[1, 0]])


def test_membership():
    space = Subspace.from_vectors(3, [[1, 0, 1], [0, 1, 1]])
    assert space.contains([1, 1, 2])
    assert not space.contains([1, 1, 1])


def test_ambient_mismatch_raises():
    with pytest.raises(DimensionMismatchError):
        Subspace.zero(2).intersect(Subspace.zero(3))
    with pytest.raises(DimensionMismatchError):
        Matrix([[1, 2]]).apply([1, 2, 3])


def test_coordinate_support():
    space = Subspace.coordinate(4, [2, 0])
    assert space.coordinate_support() == (0, 2)
    slanted = Subspace.from_vectors(2, [[1, 1]])
    assert slanted.coordinate_support() is None


def test_all_coordinate_subspaces_count():
    assert len(list(all_coordinate_subspaces(3))) == 8


def test_rank_and_kernel():
    a = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert a.rank() == 2
    kernel = a.kernel()
    assert len(kernel) == 1
    assert a.apply(kernel[0]) == (F(0), F(0), F(0))
