"""Prime fields, dense polynomials, quotient rings and factorization utilities."""

from ._backend import backend_name, compiled_available, set_backend
from .factor import (
    compose_mod,
    cyclotomic,
    factor_equal_degree,
    frobenius,
    is_irreducible,
    minpoly_from_powers,
    minpoly_in_quotient,
)
from .field import (
    FieldElement,
    PrimeField,
    is_prime,
    is_quadratic_residue,
    legendre,
    multiplicative_order,
    prime_factors,
    sqrt_mod,
)
from .modulus import ModulusContext, modpow, series_inverse
from .poly import DensePoly, poly_divrem, poly_gcd, poly_mul, poly_xgcd

# exponents such as q^(l^i j) are plain Python ints
BigExponent = int

__all__ = [
    "BigExponent", "DensePoly", "FieldElement", "ModulusContext", "PrimeField",
    "backend_name", "compiled_available", "compose_mod", "cyclotomic",
    "factor_equal_degree", "frobenius", "is_irreducible", "is_prime",
    "is_quadratic_residue", "legendre", "minpoly_from_powers", "minpoly_in_quotient",
    "modpow", "multiplicative_order", "poly_divrem", "poly_gcd", "poly_mul",
    "poly_xgcd", "prime_factors", "series_inverse", "set_backend", "sqrt_mod",
]
