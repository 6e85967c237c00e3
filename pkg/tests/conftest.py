import math

import pytest
from hypothesis import settings

# the first call into a compiled kernel loads it from the cache
settings.register_profile("default", deadline=None)
settings.load_profile("default")


def primitive_triples(max_p, min_p=2):
    for p in range(min_p, max_p + 1):
        for q in range(1, p):
            if math.gcd(q, p) != 1:
                continue
            for k in range(1, p):
                if math.gcd(k, p) == 1:
                    yield p, q, k


@pytest.fixture
def k512():
    from simpleknots.knot import validate
    return validate(5, 1, 2)
