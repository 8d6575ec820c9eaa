"""Filtered (phi, N)-modules for twisted symmetric powers, locally at p.

The module D_st of Sym^{2n} of a two-dimensional representation, twisted so
the determinant is trivial, has basis f_i = e1^(n+i) e2^(n-i) for
i = n, n-1, ..., -n (that descending order indexes coordinates here).
Three local shapes occur:

* steinberg: phi(f_i) = p^{-i}, monodromy N f_i = (n-i) f_{i+1} (the
  derivation extending N e2 = e1), Fil^0 spanned by the expansions of
  (e2 - L e1)^n e1^a e2^(n-a) for a nonzero Fontaine-Mazur parameter L;
* crystalline_split (ordinary): phi(f_i) = alpha^{2i} p^{i(k-1)} with
  v_p(alpha) = 0, N = 0, Fil^0 = <f_0, ..., f_{-n}>;
* crystalline_nonsplit: phi(f_i) = r^i for the formal eigenvalue ratio
  r = alpha/beta, N = 0, Fil^0 spanned by (e1 + e2)^n e1^a e2^(n-a).

Frobenius eigenvalues live in a free multiplicative monomial group
(EigenMonomial): equality against 1 or p^{-1} is exponent comparison,
which is exactly the strength of the standing no-multiplicative-relations
hypothesis on alpha/beta.  On top of this the module computes the stable
and regular submodules and the filtration

    D_{-1} = (1 - p^{-1} phi^{-1}) D + N(D^{phi=1}),
    D_0    = D,
    D_1    = D + D_st^{phi=1} ^ N^{-1}(D^{phi=p^{-1}}),

whose graded piece D_1/D_0 must come out one-dimensional with trivial
Frobenius eigenvalue in every regular case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import comb

from .exactlin import Matrix, Subspace, rational

STEINBERG = "steinberg"
CRYSTALLINE_SPLIT = "crystalline_split"
CRYSTALLINE_NONSPLIT = "crystalline_nonsplit"
CASES = (STEINBERG, CRYSTALLINE_SPLIT, CRYSTALLINE_NONSPLIT)

#: default p-adic valuations of the formal symbols
SYMBOL_VALUATIONS = {"p": Fraction(1)}


class UnsupportedInputError(ValueError):
    """Input outside the standing hypotheses (e.g. repeated eigenvalues)."""


@dataclass(frozen=True)
class EigenMonomial:
    """Laurent monomial in formal symbols with exact rational exponents.

    Two monomials are equal iff their exponent maps are equal: the symbols
    satisfy no hidden multiplicative relations.
    """

    exponents: frozenset = field(default_factory=frozenset)  # of (symbol, Fraction)

    @classmethod
    def from_dict(cls, exps: dict) -> "EigenMonomial":
        items = []
        for sym, e in exps.items():
            e = rational(e)
            if e:
                items.append((sym, e))
        return cls(frozenset(items))

    @classmethod
    def one(cls) -> "EigenMonomial":
        return cls(frozenset())

    @classmethod
    def symbol(cls, name: str, exponent=1) -> "EigenMonomial":
        return cls.from_dict({name: rational(exponent)})

    @classmethod
    def p_power(cls, exponent) -> "EigenMonomial":
        return cls.symbol("p", exponent)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(sorted(self.exponents))

    def exponent_of(self, sym: str) -> Fraction:
        return dict(self.exponents).get(sym, Fraction(0))

    def __mul__(self, other: "EigenMonomial") -> "EigenMonomial":
        exps = dict(self.exponents)
        for sym, e in other.exponents:
            exps[sym] = exps.get(sym, Fraction(0)) + e
        return EigenMonomial.from_dict(exps)

    def __pow__(self, e) -> "EigenMonomial":
        e = rational(e)
        return EigenMonomial.from_dict({s: x * e for s, x in self.exponents})

    def inverse(self) -> "EigenMonomial":
        return self ** -1

    def __truediv__(self, other: "EigenMonomial") -> "EigenMonomial":
        return self * other.inverse()

    def is_one(self) -> bool:
        return not self.exponents

    def valuation(self, symbol_valuations: dict[str, Fraction] | None = None) -> Fraction:
        """Additive valuation from declared per-symbol valuations (default v_p(p)=1)."""
        vals = SYMBOL_VALUATIONS if symbol_valuations is None else symbol_valuations
        return sum(
            (e * vals.get(sym, Fraction(0)) for sym, e in self.exponents), Fraction(0)
        )

    def __repr__(self) -> str:
        if not self.exponents:
            return "1"
        return "*".join(f"{s}^{e}" for s, e in sorted(self.exponents))


def monomial_product(factors) -> EigenMonomial:
    return reduce(lambda a, b: a * b, factors, EigenMonomial.one())


P_INVERSE = EigenMonomial.p_power(-1)


@dataclass(frozen=True)
class PhiNModule:
    """Diagonal-Frobenius filtered (phi, N)-module in the f-basis.

    Coordinates follow the descending index order f_n, ..., f_{-n}; the
    f-index i sits at coordinate n - i.
    """

    case: str
    n: int
    phi: tuple[EigenMonomial, ...]  # eigenvalue of f at each coordinate
    monodromy: Matrix
    fil0: Subspace
    l_invariant: Fraction | None = None
    weight: int | None = None

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    def coordinate(self, f_index: int) -> int:
        if not -self.n <= f_index <= self.n:
            raise ValueError(f"f-index out of range: {f_index}")
        return self.n - f_index

    def f_index(self, coordinate: int) -> int:
        return self.n - coordinate

    def f_span(self, f_indices) -> Subspace:
        return Subspace.coordinate(self.dim, [self.coordinate(i) for i in f_indices])

    def f_indices_of(self, space: Subspace) -> tuple[int, ...]:
        support = space.coordinate_support()
        if support is None:
            raise UnsupportedInputError("subspace is not spanned by eigenvectors")
        return tuple(sorted((self.f_index(c) for c in support), reverse=True))

    def eigenvalue(self, f_index: int) -> EigenMonomial:
        return self.phi[self.coordinate(f_index)]

    def eigenspace(self, value: EigenMonomial) -> Subspace:
        positions = [c for c, lam in enumerate(self.phi) if lam == value]
        return Subspace.coordinate(self.dim, positions)


def _poly_to_f_coordinates(n: int, e1_coeffs: dict[int, Fraction]) -> tuple[Fraction, ...]:
    """Degree-2n homogeneous polynomial, keyed by e1-degree, to f-coordinates."""
    out = [Fraction(0)] * (2 * n + 1)
    for a, c in e1_coeffs.items():
        # e1^a e2^(2n-a) = f_{a-n} at coordinate n - (a - n) = 2n - a
        out[2 * n - a] = c
    return tuple(out)


def _filtration_span(n: int, root: tuple[Fraction, Fraction]) -> Subspace:
    """Span of (c1 e1 + c2 e2)^n e1^a e2^(n-a), a = 0..n, in f-coordinates.

    With root = (c1, c2) this is the space of degree-2n polynomials
    divisible by (c1 e1 + c2 e2)^n, which is (n+1)-dimensional.
    """
    c1, c2 = root
    base = {t: Fraction(comb(n, t)) * c1**t * c2 ** (n - t) for t in range(n + 1)}
    vectors = []
    for a in range(n + 1):
        shifted = {t + a: c for t, c in base.items()}
        vectors.append(_poly_to_f_coordinates(n, shifted))
    return Subspace.from_vectors(2 * n + 1, vectors)


def steinberg_fil0(n: int, l_value: Fraction) -> Subspace:
    """Fil^0 for the semistable case: multiples of (e2 - L e1)^n."""
    return _filtration_span(n, (-l_value, Fraction(1)))


def _monodromy_matrix(n: int) -> Matrix:
    """N f_i = (n - i) f_{i+1}: derivation extending N e2 = e1, N e1 = 0."""
    dim = 2 * n + 1
    entries = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(-n, n):
        entries[n - (i + 1)][n - i] = Fraction(n - i)
    return Matrix(entries)


def build_case(case: str, n: int, l_invariant=None, weight: int | None = None) -> PhiNModule:
    """Construct one of the three local module shapes for Sym^{2n}.

    steinberg needs a nonzero rational Fontaine-Mazur parameter (default 1);
    crystalline_split needs the motivic weight k >= 2 (default 2).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    dim = 2 * n + 1
    if case == STEINBERG:
        l_value = rational(1 if l_invariant is None else l_invariant)
        if l_value == 0:
            raise ValueError("steinberg case requires a nonzero L-parameter")
        phi = tuple(EigenMonomial.p_power(-i) for i in range(n, -n - 1, -1))
        module = PhiNModule(
            case=case,
            n=n,
            phi=phi,
            monodromy=_monodromy_matrix(n),
            fil0=steinberg_fil0(n, l_value),
            l_invariant=l_value,
        )
    elif case == CRYSTALLINE_SPLIT:
        if l_invariant is not None:
            raise ValueError("L-parameter only applies to the steinberg case")
        k = 2 if weight is None else weight
        if k < 2:
            raise ValueError("weight must be at least 2")
        phi = tuple(
            EigenMonomial.from_dict({"alpha": 2 * i, "p": i * (k - 1)})
            for i in range(n, -n - 1, -1)
        )
        module = PhiNModule(
            case=case,
            n=n,
            phi=phi,
            monodromy=Matrix.zero(dim, dim),
            fil0=Subspace.coordinate(dim, range(n, dim)),  # f_0, ..., f_{-n}
            weight=k,
        )
    elif case == CRYSTALLINE_NONSPLIT:
        if l_invariant is not None:
            raise ValueError("L-parameter only applies to the steinberg case")
        phi = tuple(EigenMonomial.symbol("r", i) for i in range(n, -n - 1, -1))
        module = PhiNModule(
            case=case,
            n=n,
            phi=phi,
            monodromy=Matrix.zero(dim, dim),
            fil0=_filtration_span(n, (Fraction(1), Fraction(1))),
        )
    else:
        raise ValueError(f"unknown case {case!r}; expected one of {CASES}")
    if module.fil0.dim != n + 1:
        raise UnsupportedInputError("Fil^0 is not (n+1)-dimensional")
    return module


def canonical_regular_submodule(module: PhiNModule) -> Subspace:
    """<f_n, ..., f_1>: the regular submodule every case singles out."""
    return module.f_span(range(1, module.n + 1))


def _distinct_eigenvalues(module: PhiNModule) -> None:
    if len(set(module.phi)) != module.dim:
        raise UnsupportedInputError("repeated Frobenius eigenvalues")


def is_stable(module: PhiNModule, space: Subspace) -> bool:
    """phi- and N-stability; phi-stable subspaces are coordinate spans here.

    For a coordinate span N-stability reduces to a column-support check.
    """
    support = space.coordinate_support()
    if support is None:
        return False
    inside = set(support)
    entries = module.monodromy.entries
    for col in support:
        for row in range(module.dim):
            if entries[row][col] and row not in inside:
                return False
    return True


def stable_submodules(module: PhiNModule) -> list[Subspace]:
    """All (phi, N)-stable submodules, sorted by dimension."""
    _distinct_eigenvalues(module)
    dim = module.dim
    found = []
    for r in range(dim + 1):
        for combo in combinations(range(dim), r):
            space = Subspace.coordinate(dim, combo)
            if is_stable(module, space):
                found.append(space)
    found.sort(key=lambda s: (s.dim, s.coordinate_support()))
    return found


def regular_submodules(module: PhiNModule) -> list[Subspace]:
    """Stable submodules D of dimension n with D ^ Fil^0 = 0."""
    n = module.n
    return [
        space
        for space in stable_submodules(module)
        if space.dim == n and space.intersect(module.fil0).dim == 0
    ]


@dataclass(frozen=True)
class BenoisFiltration:
    d_minus1: Subspace
    d_0: Subspace
    d_1: Subspace


def benois_filtration(module: PhiNModule, d: Subspace) -> BenoisFiltration:
    """The three-step filtration attached to a stable submodule D."""
    if not is_stable(module, d):
        raise UnsupportedInputError("D must be phi- and N-stable")
    dim = module.dim
    one = EigenMonomial.one()

    # (1 - p^{-1} phi^{-1}) D: on the eigenvector f with phi f = lambda f the
    # operator is the scalar 1 - p^{-1} lambda^{-1}, zero iff lambda = p^{-1}.
    support = d.coordinate_support()
    surviving = [c for c in support if module.phi[c] != P_INVERSE]
    part1 = Subspace.coordinate(dim, surviving)
    d_phi_one = d.intersect(module.eigenspace(one))
    d_minus1 = part1 + d_phi_one.image_under(module.monodromy)

    d_phi_pinv = d.intersect(module.eigenspace(P_INVERSE))
    d_1 = d + module.eigenspace(one).intersect(
        d_phi_pinv.preimage_under(module.monodromy)
    )
    return BenoisFiltration(d_minus1, d, d_1)


def gr1_data(module: PhiNModule, d: Subspace) -> tuple[int, EigenMonomial | None]:
    """(dim D_1/D_0, Frobenius eigenvalue on the quotient line when rank 1)."""
    filtration = benois_filtration(module, d)
    rank = filtration.d_1.dim - filtration.d_0.dim
    if rank != 1:
        return rank, None
    new = set(filtration.d_1.coordinate_support()) - set(
        filtration.d_0.coordinate_support()
    )
    (position,) = new
    return 1, module.phi[position]


def module_from_json(obj: dict) -> PhiNModule:
    """Build a module from {"case": ..., "n": ..., "L"?: ..., "weight"?: ...}."""
    case = obj["case"]
    n = int(obj["n"])
    l_invariant = obj.get("L")
    if l_invariant is not None:
        l_invariant = rational(l_invariant)
    weight = obj.get("weight")
    if weight is not None:
        weight = int(weight)
    return build_case(case, n, l_invariant=l_invariant, weight=weight)
