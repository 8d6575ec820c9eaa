"""Inverse Clebsch-Gordan recurrences, B-coefficient rows, projections."""

import random
from fractions import Fraction as F
from math import comb, factorial

import pytest

from linvariants.plethysm import (
    CGTable,
    DiagonalProjection,
    InvalidWeightTripleError,
    b_coefficient,
    b_row,
    b_special,
    cg_coefficient,
    cg_table,
    project_endomorphism,
    project_endomorphism_diagonal,
    valid_triple,
)
from linvariants.sl2rep import EndoElement, act_on_end, lower

rng = random.Random(97)


def test_invalid_triple_rejected():
    assert not valid_triple(2, 2, 3)
    with pytest.raises(InvalidWeightTripleError):
        cg_table(2, 2, 3)
    with pytest.raises(InvalidWeightTripleError):
        cg_table(2, 2, 6)


def test_off_stratum_vanishes():
    table = cg_table(3, 3, 4)
    offset = table.stratum_offset()
    for u in range(4):
        for v in range(4):
            for w in range(5):
                if u + v - w != offset:
                    assert table.coefficient(u, v, w) == 0


def test_initial_value_example():
    assert cg_coefficient(2, 2, 2, 1, 0, 0) == -2


def test_one_recurrence_step_example():
    assert cg_coefficient(2, 2, 2, 1, 1, 1) == 0


@pytest.mark.parametrize(
    "m,n,p",
    [(m, n, p) for m in range(0, 6) for n in range(0, 6) for p in range(abs(m - n), m + n + 1, 2)],
)
def test_both_recurrences_hold(m, n, p):
    table = cg_table(m, n, p)

    def c(u, v, w):
        if 0 <= u <= m and 0 <= v <= n and 0 <= w <= p:
            return table.coefficient(u, v, w)
        return F(0)

    for u in range(m + 1):
        for v in range(n + 1):
            # lowering recurrence, the one not used for generation
            for w in range(p):
                assert (p - w) * c(u, v, w) == (m - u) * c(u + 1, v, w + 1) + (
                    n - v
                ) * c(u, v + 1, w + 1)
            # raising recurrence
            for w in range(1, p + 1):
                assert w * c(u, v, w) == u * c(u - 1, v, w - 1) + v * c(u, v - 1, w - 1)


@pytest.mark.parametrize("n", range(0, 9))
def test_closed_form_equals_recurrence(n):
    for k in range(n + 1):
        for i in range(n + 1):
            recurrence = F((-1) ** i * comb(n, i)) * cg_coefficient(n, n, 2 * k, i, n - i, k)
            assert b_coefficient(n, k, i) == recurrence


def test_printed_values():
    assert b_coefficient(1, 1, 0) == 1
    assert b_coefficient(1, 1, 1) == -1
    assert b_row(3, 3) == (36, -108, 108, -36)


def test_k_zero_row_is_constant_factorial():
    for n in range(0, 8):
        assert all(x == factorial(n) for x in b_row(n, 0))


def test_b_special_examples():
    assert b_special(3, 3, 0) == 36
    assert b_special(4, 3, 1) == -1152
    for i in range(1, 6):
        assert b_special(2 * i, 2 * i - 1, i) == 0  # n = 2i kills (n - 2i)


def test_b_special_domain():
    with pytest.raises(ValueError):
        b_special(5, 2, 0)
    with pytest.raises(ValueError):
        b_special(5, 5, 6)


@pytest.mark.parametrize("n", range(2, 13))
def test_b_special_matches_closed_form(n):
    for k in (n, n - 1, n - 2):
        for i in range(n + 1):
            assert b_special(n, k, i) == b_coefficient(n, k, i)


def test_b_coefficient_range_errors():
    with pytest.raises(ValueError):
        b_coefficient(3, 4, 0)
    with pytest.raises(ValueError):
        b_coefficient(3, 0, 5)


def proportional(xs, ys):
    """One nonzero global scalar relating the two sequences."""
    scalar = None
    for x, y in zip(xs, ys):
        if (x == 0) != (y == 0):
            return False
        if x != 0:
            if scalar is None:
                scalar = F(y) / F(x)
            elif F(y) / F(x) != scalar:
                return False
    return scalar is not None and scalar != 0


@pytest.mark.parametrize("n", range(2, 11))
def test_difference_row_proportional_to_binomial_pattern(n):
    # proportionality only; the absolute constant is recorded in the
    # documentation, not pinned here
    diffs = [
        b_coefficient(2 * n, 2 * n - 1, n + i) - b_coefficient(2 * n, 2 * n - 1, n - i)
        for i in range(1, n + 1)
    ]
    pattern = [F((-1) ** i * comb(2 * n, n + i) * i) for i in range(1, n + 1)]
    assert proportional(pattern, diffs)


@pytest.mark.parametrize("n", range(1, 6))
def test_cubic_row_proportional(n):
    m = 4 * n - 1
    row = [b_coefficient(m, m - 2, i) for i in range(m + 1)]
    pattern = [
        F(
            (-1) ** i
            * comb(m, i)
            * (m**3 - (4 * i + 1) * m**2 + (4 * i**2 + 2 * i) * m - 2 * i**2)
        )
        for i in range(m + 1)
    ]
    assert proportional(pattern, row)


def test_diagonal_projection_identity_has_no_higher_component():
    for n in range(1, 6):
        for k in range(1, n + 1):
            result = project_endomorphism_diagonal(n, k, [1] * (n + 1))
            assert result.middle == 0
            assert result.tail_is_zero()


def test_diagonal_projection_rank_one():
    result = project_endomorphism_diagonal(1, 1, [F(3), F(5)])
    assert result.middle == 3 - 5  # a_0 - a_1


def test_diagonal_projection_length_mismatch():
    with pytest.raises(Exception):
        project_endomorphism_diagonal(2, 1, [1, 2])


@pytest.mark.parametrize("n", range(1, 7))
def test_projection_map_is_equivariant(n):
    # psi o (1 x phi^-1) intertwines the lowering operator
    for k in range(n + 1):
        t = EndoElement(
            n,
            tuple(
                tuple(F(rng.randint(-5, 5)) for _ in range(n + 1)) for _ in range(n + 1)
            ),
        )
        assert project_endomorphism(act_on_end("L", t), k) == lower(
            project_endomorphism(t, k)
        )


@pytest.mark.parametrize("n", range(1, 7))
def test_upper_triangular_tail_vanishes(n):
    for k in range(n + 1):
        grid = [
            [F(rng.randint(-5, 5)) if j >= i else F(0) for j in range(n + 1)]
            for i in range(n + 1)
        ]
        t = EndoElement(n, tuple(tuple(row) for row in grid))
        image = project_endomorphism(t, k)
        assert not any(image.coeffs[k + 1 :])
