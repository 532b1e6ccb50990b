"""fibcong: Fibonacci/Lucas-weighted hypergeometric sums, their
prime-power supercongruence sweeps, and certified evaluation of the
companion series for 1/pi and 1/pi^2.
"""

__version__ = "0.1.0"

from .congruences import (
    BASE_VALUES,
    FAMILIES,
    CongruenceFamily,
    CongruenceOutcome,
    base_consistency,
    check_case,
    run_sweep,
    verdict,
)
from .quadratic import PHI, RHO, SQRT5, SQRT6, UNIT6, QuadraticNumber, check_structural_identities, quad
from .residue import (
    PadicScaled,
    Residue,
    RingDescriptor,
    inv_mod,
    legendre,
    odd_primes,
    padic_div,
    padic_mul,
    padic_to_residue,
    sieve_primes,
    split_padic,
)
from .sequences import (
    SecondOrderSpec,
    apery,
    apery_double_sum,
    binom,
    fib,
    kernel_stream,
    lucas,
    second_order_stream,
)
from .series import (
    SERIES_SPECS,
    BigFloat,
    SeriesSpec,
    eval_series,
    pi_oracle,
    sqrt_oracle,
    verify_limit,
)
from .sums import SUM_SPECS, ExactSum, SumSpec, sum_exact, sum_mod, term_exact

__all__ = [
    "__version__",
    "BASE_VALUES", "FAMILIES", "CongruenceFamily", "CongruenceOutcome",
    "base_consistency", "check_case", "run_sweep", "verdict",
    "PHI", "RHO", "SQRT5", "SQRT6", "UNIT6", "QuadraticNumber",
    "check_structural_identities", "quad",
    "PadicScaled", "Residue", "RingDescriptor", "inv_mod", "legendre",
    "odd_primes", "padic_div", "padic_mul", "padic_to_residue",
    "sieve_primes", "split_padic",
    "SecondOrderSpec", "apery", "apery_double_sum", "binom", "fib",
    "kernel_stream", "lucas", "second_order_stream",
    "SERIES_SPECS", "BigFloat", "SeriesSpec", "eval_series", "pi_oracle",
    "sqrt_oracle", "verify_limit",
    "SUM_SPECS", "ExactSum", "SumSpec", "sum_exact", "sum_mod", "term_exact",
]
