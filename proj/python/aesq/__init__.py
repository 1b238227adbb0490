"""Sums of almost equal prime squares: sieve constants, local data and
representation counts."""

from ._aesq import (
    AesqError,
    BuchstabTable,
    a_term,
    arc_partition,
    c_of_theta,
    count_representations,
    enumerate_representations,
    exceptional_scan,
    f_eval,
    factorize,
    figure1,
    gamma_eval,
    gauss_sum,
    is_H,
    is_prime,
    lambda_eval,
    local_density,
    omega_upper,
    primes_in,
    psi,
    run_cli,
    short_interval,
    sigma_admissible,
    singular_integral_exact,
    singular_series_partial,
    theta_s,
    verify_interval,
    window_counts,
)

__all__ = [name for name in dir() if not name.startswith("_")]
