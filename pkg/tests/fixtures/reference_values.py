"""
Reference values computed by hand from the closed forms.
"""

import math

# Ginibre pure-state rate limit 2(N² − 2)/(N + 1) at Γσ² = 1
GIN_RATE_LIMIT = {
    4: 2.0 * 14.0 / 5.0,
    8: 2.0 * 62.0 / 9.0,
    16: 2.0 * 254.0 / 17.0,
    32: 2.0 * 1022.0 / 33.0,
}

# Hermitian pure-state rate limit 2(N − 2 + π²/12) at Γσ² = 1
GXE_RATE_LIMIT = {n: 2.0 * (n - 2.0 + math.pi ** 2 / 12.0) for n in (4, 8, 16, 32)}

# Printed Hermitian A at N = 30, and the matching Ã
GXE_A_N30 = 2.0 + (math.pi ** 2 / 6.0 - 2.0) / 30.0

# F(40) for N = 30, Ã = 1.98817
CDF_N30_D40 = 40.0 / (29.0 * (1.98817 * 30.0 - 40.0))

# κ₂ at N = 30, Ã = 1
KAPPA2_N30 = 30.0 * (1.0 - 30.0 * (math.log(30.0) / 29.0) ** 2)

# N = 2: mean rate 2Ã(1 − ln 2)
MEAN_N2_PER_A = 2.0 * (1.0 - math.log(2.0))

SAMPLE_CONFIG = """\
experiment = cumulant-table
kinds = gue,ginue
n_grid = 4,10,30
seed = 11
"""

INVALID_CONFIG = """\
experiment = rate-scaling
kinds = gse
n_grid = 5,8
n_realizations = 0
mix_a1 = 0.9
mix_a2 = 0.9
"""
