import random

import pytest
from hypothesis import HealthCheck, settings

from webfoam.laurent import LaurentPoly

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def random_poly(rng: random.Random, max_terms: int = 4, spread: int = 2) -> LaurentPoly:
    """Small random Laurent polynomial for seeded (non-hypothesis) suites."""
    terms = {
        (
            rng.randint(-spread, spread),
            rng.randint(-spread, spread),
            rng.randint(-spread, spread),
        )
        for _ in range(rng.randint(0, max_terms))
    }
    return LaurentPoly(terms)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240)
