"""Weyl group of GSp(2g), Iwahori-Hecke diagonal eigenvalues, slope bounds.

The Weyl group is S_g x (Z/2)^g; an element w = (nu, eps) acts on torus
exponents t = (p^{a_1}, ..., p^{a_g}; p^{a_0}) by first replacing a_i with
a_0 - a_i wherever eps(i) = -1 and then permuting, so the conjugated
exponent at slot j is a'_{nu(j)}.

On the Iwahori invariants of an irreducible unramified principal series
chi_1 (x) ... (x) chi_g (x) sigma there is a basis indexed by w in which
every U_t = [Iw t Iw] is triangular; the diagonal entry at w is computed
here as the half-modulus character times chi, both evaluated at the
conjugated element:

    p^{g(g+1)/4 a_0 - sum_j (g+1-j) a'_{nu(j)}} sigma(p)^{a_0}
        prod_j chi_j(p)^{a'_{nu(j)}}.

Specializing t to the standard elements beta_j reproduces the two closed
U_{p,i} eigenvalue families with their combinatorial constants
c_{i,nu,eps}; the test suite checks that equality over every Weyl element.
Character recovery inverts these eigenvalue formulas (given the weight,
whose similitude coordinate enters through the determinant relation
chi_1...chi_g sigma^2 (p) = p^{mu_0}) and is contracted to round-trip.

Half-integer p-exponents (the g(g+1)/4 term) are ordinary rational
exponents of the EigenMonomial symbol 'p'; no square roots are adjoined.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from .exactlin import rational
from .phin import EigenMonomial, monomial_product


class InversionError(ValueError):
    """Character recovery failed its round trip: inconsistent eigenvalues."""


class NonDominantError(ValueError):
    """The torus exponent is not dominant (a_1 >= ... >= a_g >= a_0/2)."""


@dataclass(frozen=True)
class WeylElement:
    """(nu, eps) with nu in one-line notation on {1..g} and eps: {1..g} -> {-1,1}."""

    nu: tuple[int, ...]
    eps: tuple[int, ...]

    def __post_init__(self):
        g = len(self.nu)
        if sorted(self.nu) != list(range(1, g + 1)):
            raise ValueError("nu is not a permutation of 1..g")
        if len(self.eps) != g or any(e not in (-1, 1) for e in self.eps):
            raise ValueError("eps must be a vector of +-1 of length g")

    @property
    def g(self) -> int:
        return len(self.nu)

    @classmethod
    def identity(cls, g: int) -> "WeylElement":
        return cls(tuple(range(1, g + 1)), (1,) * g)

    def permute(self, j: int) -> int:
        """nu(j) for 1-based j."""
        return self.nu[j - 1]

    def sign(self, i: int) -> int:
        """eps(i) for 1-based i."""
        return self.eps[i - 1]

    def nu_inverse(self, i: int) -> int:
        return self.nu.index(i) + 1

    def compose(self, other: "WeylElement") -> "WeylElement":
        """Product w1 * w2 with (w1 * w2) . t = w1 . (w2 . t)."""
        if self.g != other.g:
            raise ValueError("ranks differ")
        g = self.g
        nu = tuple(other.permute(self.permute(j)) for j in range(1, g + 1))
        eps = tuple(
            other.sign(i) * self.sign(other.nu_inverse(i)) for i in range(1, g + 1)
        )
        return WeylElement(nu, eps)

    def to_json(self) -> dict:
        return {"nu": list(self.nu), "eps": list(self.eps)}

    @classmethod
    def from_json(cls, obj: dict) -> "WeylElement":
        return cls(tuple(obj["nu"]), tuple(obj["eps"]))


@lru_cache(maxsize=None)
def weyl_group(g: int) -> tuple[WeylElement, ...]:
    """All 2^g g! elements, permutations in lexicographic order."""
    elements = []
    for nu in itertools.permutations(range(1, g + 1)):
        for eps in itertools.product((1, -1), repeat=g):
            elements.append(WeylElement(nu, eps))
    return tuple(elements)


def element_order(w: WeylElement) -> int:
    power = w
    identity = WeylElement.identity(w.g)
    for k in range(1, 2**w.g * factorial(w.g) + 1):
        if power == identity:
            return k
        power = power.compose(w)
    raise RuntimeError("order not found")  # unreachable


@dataclass(frozen=True)
class TorusExponent:
    """t = (p^{a_1}, ..., p^{a_g}; p^{a_0}) stored by its exponents."""

    a: tuple[Fraction, ...]
    a0: Fraction

    @classmethod
    def make(cls, a: Iterable, a0) -> "TorusExponent":
        return cls(tuple(rational(x) for x in a), rational(a0))

    @property
    def g(self) -> int:
        return len(self.a)

    def combine(self, other: "TorusExponent") -> "TorusExponent":
        """Exponents of t * t'."""
        return TorusExponent(
            tuple(x + y for x, y in zip(self.a, other.a)), self.a0 + other.a0
        )

    def is_dominant(self) -> bool:
        pairs_ok = all(self.a[i] >= self.a[i + 1] for i in range(self.g - 1))
        return pairs_ok and self.a[-1] >= self.a0 / 2


def beta(g: int, j: int) -> TorusExponent:
    """beta_0 = (1,...,1; p^-1); beta_j has p^-1 in the last j slots and p^-2 center."""
    if not 0 <= j <= g:
        raise ValueError("need 0 <= j <= g")
    if j == 0:
        return TorusExponent.make([0] * g, -1)
    return TorusExponent.make([0] * (g - j) + [-1] * j, -2)


def weyl_conjugate(w: WeylElement, t: TorusExponent) -> TorusExponent:
    """Exponents of the conjugated torus element: slot j carries a'_{nu(j)}."""
    if w.g != t.g:
        raise ValueError("ranks differ")
    flipped = [
        t.a[i - 1] if w.sign(i) == 1 else t.a0 - t.a[i - 1] for i in range(1, w.g + 1)
    ]
    return TorusExponent(tuple(flipped[w.permute(j) - 1] for j in range(1, w.g + 1)), t.a0)


@dataclass(frozen=True)
class CharacterData:
    """Values chi_j(p) and sigma(p) of an unramified character of the torus."""

    chi: tuple[EigenMonomial, ...]
    sigma: EigenMonomial

    @property
    def g(self) -> int:
        return len(self.chi)

    @classmethod
    def generic(cls, g: int) -> "CharacterData":
        return cls(
            tuple(EigenMonomial.symbol(f"chi_{j}") for j in range(1, g + 1)),
            EigenMonomial.symbol("sigma"),
        )

    def determinant(self) -> EigenMonomial:
        """chi_1 ... chi_g sigma^2 (p)."""
        return monomial_product(self.chi) * self.sigma**2


def hecke_diagonal(chi: CharacterData, t: TorusExponent, w: WeylElement) -> EigenMonomial:
    """Diagonal eigenvalue of U_t on the basis vector indexed by w."""
    g = chi.g
    if t.g != g or w.g != g:
        raise ValueError("ranks differ")
    s = weyl_conjugate(w, t)
    p_exp = Fraction(g * (g + 1), 4) * t.a0 - sum(
        (g + 1 - j) * s.a[j - 1] for j in range(1, g + 1)
    )
    value = EigenMonomial.p_power(p_exp) * chi.sigma**t.a0
    for j in range(1, g + 1):
        value = value * chi.chi[j - 1] ** s.a[j - 1]
    return value


def c_constant(g: int, i: int, w: WeylElement) -> Fraction:
    """c_{i,nu,eps} = sum_{nu(j)>i}(g+1-j) + 2 sum_{nu(j)<=i, eps(nu(j))=-1}(g+1-j) - g(g+1)/2."""
    if not 1 <= i <= g:
        raise ValueError("need 1 <= i <= g")
    total = Fraction(0)
    for j in range(1, g + 1):
        image = w.permute(j)
        if image > i:
            total += g + 1 - j
        elif w.sign(image) == -1:
            total += 2 * (g + 1 - j)
    return total - Fraction(g * (g + 1), 2)


def c_g_constant(g: int, w: WeylElement) -> Fraction:
    """c_{g,nu,eps} = sum_{eps(nu(j))=-1}(g+1-j) - g(g+1)/4."""
    total = sum(
        Fraction(g + 1 - j)
        for j in range(1, g + 1)
        if w.sign(w.permute(j)) == -1
    )
    return total - Fraction(g * (g + 1), 4)


def upi_eigenvalue_display(chi: CharacterData, i: int, w: WeylElement) -> EigenMonomial:
    """The closed U_{p,i} = [Iw beta_{g-i} Iw] eigenvalue families.

    For i < g:  p^{c_i} sigma^{-2} prod_{nu(j)>i} chi_j^{-1}
                prod_{nu(j)<=i, eps(nu(j))=-1} chi_j^{-2};
    for i = g:  p^{c_g} sigma^{-1} prod_{eps(nu(j))=-1} chi_j^{-1}.
    """
    g = chi.g
    if not 1 <= i <= g:
        raise ValueError("need 1 <= i <= g")
    if i == g:
        value = EigenMonomial.p_power(c_g_constant(g, w)) * chi.sigma**-1
        for j in range(1, g + 1):
            if w.sign(w.permute(j)) == -1:
                value = value * chi.chi[j - 1] ** -1
        return value
    value = EigenMonomial.p_power(c_constant(g, i, w)) * chi.sigma**-2
    for j in range(1, g + 1):
        image = w.permute(j)
        if image > i:
            value = value * chi.chi[j - 1] ** -1
        elif w.sign(image) == -1:
            value = value * chi.chi[j - 1] ** -2
    return value


def weight_exponent(mu: Sequence[Fraction], mu0: Fraction, t: TorusExponent) -> Fraction:
    """v_p of the highest-weight character (mu_1..mu_g; mu_0) at t."""
    mu = [rational(x) for x in mu]
    mu0 = rational(mu0)
    return sum(m * a for m, a in zip(mu, t.a)) + (mu0 - sum(mu)) * t.a0 / 2


def normalized_eigenvalue(
    chi: CharacterData,
    mu: Sequence,
    mu0,
    i: int,
    w: WeylElement,
) -> EigenMonomial:
    """theta(U_{p,i}): the raw eigenvalue rescaled by |lambda(beta_{g-i})|_p^{-1}."""
    g = chi.g
    t = beta(g, g - i)
    shift = weight_exponent(mu, mu0, t)
    return EigenMonomial.p_power(shift) * hecke_diagonal(chi, t, w)


def recover_characters(
    g: int,
    normalized_eigenvalues: Sequence[EigenMonomial],
    mu: Sequence,
    mu0,
    w: WeylElement,
) -> CharacterData:
    """Solve the U_{p,i} eigenvalue system for (chi_1..chi_g, sigma).

    Successive eigenvalue ratios isolate chi_{nu^{-1}(i)}^{eps(i)} for
    i = 2..g, the determinant relation det = p^{mu_0} pins the i = 1
    character, and the i = g eigenvalue pins sigma.  The recovered data is
    round-tripped through the eigenvalue formulas; any mismatch (inputs not
    of Hecke-eigenvalue shape for these weights) raises InversionError.
    """
    if g < 2:
        raise ValueError("character recovery needs g >= 2")
    if len(normalized_eigenvalues) != g:
        raise ValueError("need exactly g eigenvalues")
    mu = [rational(x) for x in mu]
    mu0 = rational(mu0)
    alphas = [
        EigenMonomial.p_power(-weight_exponent(mu, mu0, beta(g, g - i)))
        * normalized_eigenvalues[i - 1]
        for i in range(1, g + 1)
    ]

    constants = {i: c_constant(g, i, w) for i in range(1, g)}
    cg = c_g_constant(g, w)
    chis: dict[int, EigenMonomial] = {}
    for i in range(2, g):
        ratio = EigenMonomial.p_power(constants[i - 1] - constants[i]) * (
            alphas[i - 1] / alphas[i - 2]
        )
        chis[w.nu_inverse(i)] = ratio ** w.sign(i)
    ratio_g = EigenMonomial.p_power(constants[g - 1] - 2 * cg) * (
        alphas[g - 1] ** 2 / alphas[g - 2]
    )
    chis[w.nu_inverse(g)] = ratio_g ** w.sign(g)
    first = EigenMonomial.p_power(mu0 - constants[1]) * alphas[0]
    chis[w.nu_inverse(1)] = first ** w.sign(1)

    chi_values = tuple(chis[j] for j in range(1, g + 1))
    sigma = EigenMonomial.p_power(cg) * alphas[g - 1].inverse()
    for j in range(1, g + 1):
        if w.sign(w.permute(j)) == -1:
            sigma = sigma * chi_values[j - 1].inverse()
    recovered = CharacterData(chi_values, sigma)

    for i in range(1, g + 1):
        if normalized_eigenvalue(recovered, mu, mu0, i, w) != normalized_eigenvalues[i - 1]:
            raise InversionError(f"eigenvalue {i} does not round-trip")
    if recovered.determinant() != EigenMonomial.p_power(mu0):
        raise InversionError("determinant relation fails for the recovered data")
    return recovered


def slope_check_hilbert(k_weights: Sequence[int], w_weight: int, slopes: Sequence) -> bool:
    """sum_i ((w + k_i - 2)/2 + v_p(alpha_i)) < min(k_i) - 1, evaluated exactly."""
    if len(k_weights) != len(slopes):
        raise ValueError("one slope per infinite place is required")
    if not k_weights:
        raise ValueError("at least one place is required")
    for k in k_weights:
        if k < 2:
            raise ValueError("weights must be at least 2")
        if (k - w_weight) % 2:
            raise ValueError("weights must be congruent to w mod 2")
    lhs = sum(
        (Fraction(w_weight + k - 2, 2) + rational(s) for k, s in zip(k_weights, slopes)),
        Fraction(0),
    )
    return lhs < min(k_weights) - 1


def slope_check_gsp(
    mu_per_place: Sequence[Sequence],
    mu0,
    t: TorusExponent,
    slopes: Sequence,
) -> bool:
    """Noncritical-slope inequality for GSp(2g) over all places above p.

    LHS = sum_v (v_p(lambda_v(t)) + v_p(alpha_{v,t})); RHS = the minimum of
    (mu_{v,i} - mu_{v,i+1} + 1)(a_i - a_{i+1}) over i < g and places, and
    2(2 mu_{v,g} + 1) a_g.  t must be dominant.
    """
    if not t.is_dominant():
        raise NonDominantError("need a_1 >= ... >= a_g >= a_0/2")
    if len(mu_per_place) != len(slopes):
        raise ValueError("one slope per place is required")
    g = t.g
    mu0 = rational(mu0)
    lhs = Fraction(0)
    bounds = []
    for mu, slope in zip(mu_per_place, slopes):
        mu = [rational(x) for x in mu]
        if len(mu) != g:
            raise ValueError("weight length must equal g")
        lhs += weight_exponent(mu, mu0, t) + rational(slope)
        for i in range(g - 1):
            bounds.append((mu[i] - mu[i + 1] + 1) * (t.a[i] - t.a[i + 1]))
        bounds.append(2 * (2 * mu[g - 1] + 1) * t.a[g - 1])
    return lhs < min(bounds)


def twist_search(
    mu_per_place: Sequence[Sequence],
    mu0,
    t: TorusExponent,
    slopes: Sequence,
    max_abs_twist: int = 100000,
) -> int:
    """Smallest |m| such that the |.|^m twist has noncritical slope.

    Twisting shifts the similitude weight mu_0 by m and every slope by
    -m a_0 while the right-hand side stays fixed, so for a_0 != 0 the
    search terminates.
    """
    mu0 = rational(mu0)
    slopes = [rational(s) for s in slopes]
    for m in range(max_abs_twist + 1):
        for signed in ((m,) if m == 0 else (m, -m)):
            twisted_slopes = [s - signed * t.a0 for s in slopes]
            if slope_check_gsp(mu_per_place, mu0 + signed, t, twisted_slopes):
                return signed
        if m == 0 and t.a0 == 0:
            raise ValueError("a_0 = 0: twisting cannot change the slope")
    raise RuntimeError("twist bound exceeded")  # unreachable for a_0 != 0


def _divisors(n: int) -> set[int]:
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return out


def refinement_obstruction_orders(exponents: Iterable[int]) -> set[int]:
    """Orders d such that r^d = 1 collides the leading refinement.

    exponents are the r-exponents of the Frobenius eigenvalues, leading
    refinement first after sorting; for each cardinality i the top-i sum is
    compared with every other i-element subset sum, and each divisor of a
    nonzero difference is an obstruction order.  Distinct exponents make
    the top sum strictly maximal, so all differences are positive.
    """
    exps = sorted(exponents, reverse=True)
    if len(set(exps)) != len(exps):
        raise ValueError("exponents must be pairwise distinct")
    orders: set[int] = set()
    for i in range(1, len(exps)):
        top = sum(exps[:i])
        for subset in itertools.combinations(exps, i):
            diff = top - sum(subset)
            if diff:
                orders |= _divisors(abs(diff))
    return orders


def exclusion_sufficient(orders: Iterable[int], n: int) -> bool:
    """Whether excluding mu_n kills every obstruction (all orders divide n)."""
    return all(n % d == 0 for d in orders)
