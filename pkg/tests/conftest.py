from fractions import Fraction

import numpy as np
import pytest

from hypcones.polynomials import Polynomial


def random_rational_vector(rng: np.random.Generator, n: int, den: int = 8, lo: int = -12, hi: int = 12):
    return tuple(Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, den + 1))) for _ in range(n))


def random_homogeneous_poly(rng: np.random.Generator, num_vars: int, degree: int, nterms: int) -> Polynomial:
    """Random sparse homogeneous polynomial with small rational coefficients."""
    terms = {}
    for _ in range(nterms):
        exp = [0] * num_vars
        for _ in range(degree):
            exp[int(rng.integers(0, num_vars))] += 1
        c = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
        if c:
            terms[tuple(exp)] = terms.get(tuple(exp), Fraction(0)) + c
    terms = {e: c for e, c in terms.items() if c}
    if not terms:
        exp = [degree] + [0] * (num_vars - 1)
        terms[tuple(exp)] = Fraction(1)
    return Polynomial.from_terms(num_vars, terms)


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)
