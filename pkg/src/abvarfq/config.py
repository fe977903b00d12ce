"""Run-time configuration knobs.

Every randomized algorithm in the package draws from a seeded RNG so that
repeated runs (and parallel runs) are byte-identical.  The seed can be
overridden through the ABVARFQ_SEED environment variable before import.
"""

import os

FACTOR_SEED = int(os.environ.get("ABVARFQ_SEED", "271828"))

# hard cap on factorization degree over Z (covers g <= 8)
FACTOR_DEGREE_CAP = 16

# horizon for point/curve count vectors: max(2g, DEFAULT_MIN_HORIZON)
DEFAULT_MIN_HORIZON = 10

# geometric-simplicity extension-degree lcm cap; beyond this -> Undecided
GEOM_SIMPLE_LCM_CAP = 10 ** 6

# Monte Carlo sample count for densities with g >= 5
DENSITY_MC_SAMPLES = int(os.environ.get("ABVARFQ_MC_SAMPLES", "10000000"))

UNDECIDED = "undecided"
