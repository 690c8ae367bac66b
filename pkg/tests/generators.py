"""Random admissible inputs shared by the test modules."""

import random
from fractions import Fraction

from slope_lab import families as F
from slope_lab import hn_engine as HN
from slope_lab import wps_ring as W


def random_profile(rng: random.Random, max_len: int = 4) -> HN.HNProfile:
    ell = rng.randint(1, max_len)
    ranks = sorted(rng.sample(range(1, 3 * ell + 3), ell))
    slopes = sorted({Fraction(rng.randint(-20, 40), rng.randint(1, 4)) for _ in range(3 * ell)},
                    reverse=True)
    while len(slopes) < ell:
        slopes = [slopes[0] + 1] + slopes
    slopes = sorted(rng.sample(slopes, ell), reverse=True)
    return HN.validate_profile(zip(ranks, slopes))


def random_wps_family(rng: random.Random) -> F.WpsHypersurfaceFamily:
    """Draw until the data are admissible: well-formed weights, lcm | d and
    a nonzero space of sections."""
    while True:
        size = rng.randint(3, 5)
        a = sorted(rng.randint(1, 6) for _ in range(size))
        if not W.is_well_formed(a):
            continue
        lcm = W.cartier_index(a)
        if lcm > 60:
            continue
        d = lcm * rng.randint(1, 3)
        e, h, l = rng.randint(1, 2 * d + 3), rng.randint(1, 5), rng.randint(0, 5)
        if W.graded_dim(a, e) - W.graded_dim(a, e - d) <= 0:
            continue
        return F.WpsHypersurfaceFamily(a, d, e, h, l)
