"""Exact computation of arithmetic L-invariants for twisted symmetric powers.

Submodules:

* exactlin  -- rational matrices, fraction-free elimination, subspaces
* sl2rep    -- sl(2) actions on Sym^m V and End(Sym^n V), brute-force oracle
* plethysm  -- inverse Clebsch-Gordan tables and the B_{n,k,i} rows
* phin      -- filtered (phi,N)-modules, regular submodules, the 3-step filtration
* weylhecke -- GSp(2g) Weyl combinatorics, Hecke eigenvalues, slope bounds
* linv      -- triangulation data and the L-invariant closed forms
* cli       -- JSON/CSV command-line interface
"""

__all__ = [
    "exactlin",
    "sl2rep",
    "plethysm",
    "phin",
    "weylhecke",
    "linv",
    "cli",
]

__version__ = "0.1.0"
