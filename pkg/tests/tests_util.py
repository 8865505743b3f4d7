"""Shared helpers for the test suite."""

from mockingbird.terms import app, basic

_M = basic("M")


def random_m_term(rng, degree):
    """A uniform-ish random binary tree with the given number of
    applications over the single leaf M."""
    if degree == 0:
        return _M
    left_degree = rng.randint(0, degree - 1)
    return app(random_m_term(rng, left_degree),
               random_m_term(rng, degree - 1 - left_degree))
