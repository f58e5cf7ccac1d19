"""Hamiltonian vector fields on (q_1..q_n, p_1..p_n).

Convention: X_f = sum f_(p_i) d_(q_i) - f_(q_i) d_(p_i), with the Poisson
bracket {f, g} = X_f(g) so that [X_f, X_g] = X_({f, g}).
"""

import logging
from collections.abc import Sequence
from itertools import combinations

from .diffop import DiffOp, SuperDomain
from .exceptions import ValidationError
from .superscalar import SuperScalar
from .supermat import determinant

logger = logging.getLogger(__name__)


def symplectic_domain(n: int) -> SuperDomain:
    """Coordinates (q, p) for n = 1, else (q1..qn, p1..pn)."""
    if n < 1:
        raise ValidationError(f"h(2n) needs n >= 1, got {n}")
    if n == 1:
        return SuperDomain.create(2, even_names=("q", "p"))
    names = [f"q{i + 1}" for i in range(n)] + [f"p{i + 1}" for i in range(n)]
    return SuperDomain.create(2 * n, even_names=names)


def _half(domain: SuperDomain) -> int:
    if domain.n_odd or domain.n_even % 2:
        raise ValidationError(
            f"Hamiltonian fields need an even number of even coordinates, "
            f"got ({domain.n_even}|{domain.n_odd})"
        )
    return domain.n_even // 2


def hamiltonian_field(domain: SuperDomain, f: SuperScalar) -> DiffOp:
    """X_f = sum f_(p_i) d_(q_i) - f_(q_i) d_(p_i)."""
    half = _half(domain)
    coefficients = [SuperScalar.zero(domain.table)] * (2 * half)
    for i in range(half):
        coefficients[i] = f.derivative(half + i)
        coefficients[half + i] = -f.derivative(i)
    return DiffOp.vector_field(domain, coefficients)


def poisson_bracket(domain: SuperDomain, f: SuperScalar, g: SuperScalar) -> SuperScalar:
    """{f, g} = X_f(g)."""
    return hamiltonian_field(domain, f).apply(g)


def is_hamiltonian(x: DiffOp) -> bool:
    """Whether x = X_f for a polynomial f.

    x = sum a_i d_(q_i) + b_i d_(p_i) is Hamiltonian iff the 1-form
    sum a_i dp_i - b_i dq_i is closed.
    """
    half = _half(x.domain)
    if not x.is_vector_field:
        return False
    evens, _ = x.field_coefficients()
    form = [-b for b in evens[half:]] + list(evens[:half])
    return all(
        form[k].derivative(l) == form[l].derivative(k)
        for k, l in combinations(range(2 * half), 2)
    )


def h5_determinant(domain: SuperDomain, functions: Sequence[SuperScalar]) -> SuperScalar:
    """det of the rows d_q, d_p, d_p^2, d_q^2, d_p d_q applied to f_1..f_5."""
    if len(functions) != 5:
        raise ValidationError(f"h5_determinant takes 5 functions, got {len(functions)}")
    if _half(domain) != 1:
        raise ValidationError("h5_determinant is defined on h(2)")
    q, p = 0, 1
    rows = [
        [f.derivative(q) for f in functions],
        [f.derivative(p) for f in functions],
        [f.derivative(p).derivative(p) for f in functions],
        [f.derivative(q).derivative(q) for f in functions],
        [f.derivative(p).derivative(q) for f in functions],
    ]
    return determinant(rows, domain.table)
