"""Inverse Clebsch-Gordan coefficients and the End(Sym^n V) projection rows.

C_{m,n,p}^{u,v,w} are the coefficients of the equivariant projection
psi_{m,n,p}: Sym^m V (x) Sym^n V -> Sym^p V in the monomial bases,

    psi(g_{m,u} (x) g_{n,v}) = sum_w C_{m,n,p}^{u,v,w} g_{p,w}.

They vanish off the weight stratum u + v - w = (m+n-p)/2.  On the w = 0
layer of that stratum C^{u,v,0} = (-1)^u (m-u)! (n-v)!, and ascending in w
with the raising-operator recurrence

    C^{u,v,w} = (u C^{u-1,v,w-1} + v C^{u,v-1,w-1}) / w        (w >= 1)

fills the whole table.  The lowering-operator recurrence

    (p-w) C^{u,v,w} = (m-u) C^{u+1,v,w+1} + (n-v) C^{u,v+1,w+1}

is not used for generation and stays available as an independent check.

B_{n,k,i} is the coefficient of g_{2k,k} in the projection to Sym^{2k} V of
the diagonal endomorphism g_{n,i} (x) g_{n,i}^v; for an upper-triangular
endomorphism with diagonal (a_0..a_n) the g_{2k,k} coefficient of the
projection is sum_i B_{n,k,i} a_i and everything past the middle vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exactlin import DimensionMismatchError, rational
from .sl2rep import DualRepVector, EndoElement, RepVector, duality_iso_inverse


class InvalidWeightTripleError(ValueError):
    """p is not among m+n, m+n-2, ..., |m-n|."""


def valid_triple(m: int, n: int, p: int) -> bool:
    return (
        m >= 0
        and n >= 0
        and abs(m - n) <= p <= m + n
        and (m + n - p) % 2 == 0
    )


@dataclass(frozen=True)
class CGTable:
    """All C_{m,n,p}^{u,v,w} for one weight triple, keyed on the stratum."""

    m: int
    n: int
    p: int
    values: dict[tuple[int, int, int], Fraction]

    def coefficient(self, u: int, v: int, w: int) -> Fraction:
        if not (0 <= u <= self.m and 0 <= v <= self.n and 0 <= w <= self.p):
            raise ValueError(f"indices out of range for V_{self.m} x V_{self.n} -> V_{self.p}")
        return self.values.get((u, v, w), Fraction(0))

    def stratum_offset(self) -> int:
        return (self.m + self.n - self.p) // 2


@lru_cache(maxsize=None)
def cg_table(m: int, n: int, p: int) -> CGTable:
    if not valid_triple(m, n, p):
        raise InvalidWeightTripleError(f"V_{p} does not occur in V_{m} (x) V_{n}")
    s0 = (m + n - p) // 2
    values: dict[tuple[int, int, int], Fraction] = {}
    for u in range(m + 1):
        v = s0 - u
        if 0 <= v <= n:
            values[(u, v, 0)] = Fraction((-1) ** u * factorial(m - u) * factorial(n - v))
    for w in range(1, p + 1):
        target = s0 + w
        for u in range(m + 1):
            v = target - u
            if not 0 <= v <= n:
                continue
            acc = Fraction(0)
            if u >= 1:
                acc += u * values.get((u - 1, v, w - 1), Fraction(0))
            if v >= 1:
                acc += v * values.get((u, v - 1, w - 1), Fraction(0))
            if acc:
                values[(u, v, w)] = acc / w
    return CGTable(m, n, p, values)


def cg_coefficient(m: int, n: int, p: int, u: int, v: int, w: int) -> Fraction:
    return cg_table(m, n, p).coefficient(u, v, w)


def b_coefficient(n: int, k: int, i: int) -> Fraction:
    """Closed form sum_{a+b=k} (-1)^a C(n,i) C(i,a) C(n-i,b) (n-i+a)! (i+b)!."""
    if not (0 <= k <= n and 0 <= i <= n):
        raise ValueError(f"need 0 <= k, i <= n, got k={k}, i={i}, n={n}")
    total = 0
    for a in range(k + 1):
        b = k - a
        if a > i or b > n - i:
            continue
        total += (
            (-1) ** a
            * comb(n, i)
            * comb(i, a)
            * comb(n - i, b)
            * factorial(n - i + a)
            * factorial(i + b)
        )
    return Fraction(total)


def b_row(n: int, k: int) -> tuple[Fraction, ...]:
    return tuple(b_coefficient(n, k, i) for i in range(n + 1))


def b_special(n: int, k: int, i: int) -> Fraction:
    """Special-value closed forms for k in {n, n-1, n-2}.

    The k = n sum has a single term and the k = n-1 sum two, giving

        B_{n,n,i}   = (-1)^i (n!)^2 C(n,i),
        B_{n,n-1,i} = (-1)^i n! (n-1)! C(n,i) (n - 2i).

    For k = n-2 the three-term sum
    C(i,2)(n-2)!n! - C(i,1)C(n-i,1)((n-1)!)^2 + C(n-i,2)n!(n-2)!
    collapses to (n-2)!(n-1)!(n^3 - (4i+1)n^2 + (4i^2+2i)n - 2i^2)/2;
    note the /2, which the usual simplified form of this cubic omits.
    """
    if not 0 <= i <= n:
        raise ValueError(f"need 0 <= i <= n, got i={i}, n={n}")
    sign = (-1) ** i
    if k == n:
        return Fraction(sign * factorial(n) ** 2 * comb(n, i))
    if k == n - 1:
        return Fraction(sign * factorial(n) * factorial(n - 1) * comb(n, i) * (n - 2 * i))
    if k == n - 2:
        poly = (
            n**3
            - (4 * i + 1) * n**2
            + (4 * i**2 + 2 * i) * n
            - 2 * i**2
        )
        return Fraction(sign * comb(n, i) * factorial(n - 2) * factorial(n - 1) * poly, 2)
    raise ValueError(f"special values exist only for k in {{n, n-1, n-2}}, got k={k}")


def project_endomorphism(t: EndoElement, k: int) -> RepVector:
    """Projection End(Sym^n V) -> Sym^{2k} V through psi_{n,n,2k} o (1 (x) phi_n^{-1}).

    g_{n,i} (x) g_{n,j}^v maps to (-1)^j C(n,j) sum_w C_{n,n,2k}^{i,n-j,w} g_{2k,w}.
    """
    n = t.n
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    table = cg_table(n, n, 2 * k)
    out = [Fraction(0)] * (2 * k + 1)
    for i in range(n + 1):
        for j in range(n + 1):
            c = t.grid[i][j]
            if not c:
                continue
            scale = c * (-1) ** j * comb(n, j)
            for w in range(2 * k + 1):
                coeff = table.values.get((i, n - j, w))
                if coeff:
                    out[w] += scale * coeff
    return RepVector(2 * k, tuple(out))


def untensor_dual(t: EndoElement) -> EndoElement:
    """Apply 1 (x) phi_n^{-1} rowwise; mainly for equivariance tests."""
    n = t.n
    out = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        image = duality_iso_inverse(DualRepVector(n, t.grid[i]))
        for j, val in enumerate(image.coeffs):
            out[i][j] = val
    return EndoElement(n, tuple(tuple(r) for r in out))


@dataclass(frozen=True)
class DiagonalProjection:
    """g_{2k,k} coefficient plus the (always-zero) past-the-middle tail."""

    middle: Fraction
    tail: tuple[Fraction, ...]

    def tail_is_zero(self) -> bool:
        return not any(self.tail)


def project_endomorphism_diagonal(n: int, k: int, diag) -> DiagonalProjection:
    """Project the diagonal endomorphism with entries diag onto Sym^{2k} V.

    The middle coefficient equals sum_i B_{n,k,i} diag_i; the coefficients
    of g_{2k,u} for u > k are returned so callers can assert they vanish.
    """
    diag = [rational(d) for d in diag]
    if len(diag) != n + 1:
        raise DimensionMismatchError(f"diagonal must have length {n + 1}")
    middle = sum((b_coefficient(n, k, i) * d for i, d in enumerate(diag)), Fraction(0))
    full = project_endomorphism(EndoElement.diagonal(diag), k)
    if full.coeffs[k] != middle:
        raise ValueError("B-row disagrees with the assembled projection")
    return DiagonalProjection(middle, full.coeffs[k + 1 :])
