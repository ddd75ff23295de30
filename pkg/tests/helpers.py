"""Independent oracles shared across the test suite.

Both evolution oracles deliberately avoid the site recurrence used by the
package: one sums amplitudes over every coin-toss path, the other applies
the explicit shift-after-coin operator matrix.  Agreement between three
structurally different routes pins the dynamics down.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def brute_force_amplitudes(a0, b0, coin: np.ndarray, n: int):
    """Sum per-path phase products over all 2^n coin histories.

    A path is an initial component s0 and a component choice s_k after each
    of the n coin applications; it contributes v[s0] * prod_k C[s_k, s_{k-1}]
    at position sum(+1 if s_k == 0 else -1), in final component s_n.
    Returns (a, b) arrays over the sites [-n, +n].
    """
    v = (complex(a0), complex(b0))
    a = np.zeros(2 * n + 1, dtype=complex)
    b = np.zeros(2 * n + 1, dtype=complex)
    if n == 0:
        a[0], b[0] = v
        return a, b
    for s0 in (0, 1):
        for path in itertools.product((0, 1), repeat=n):
            amp = v[s0]
            prev = s0
            pos = 0
            for s in path:
                amp *= coin[s, prev]
                pos += 1 if s == 0 else -1
                prev = s
            if path[-1] == 0:
                a[pos + n] += amp
            else:
                b[pos + n] += amp
    return a, b


def operator_matrix_evolve(a0, b0, coin: np.ndarray, n: int):
    """Apply the explicit walk operator (shift after coin) as a dense matrix
    on a lattice wide enough that the walker never reaches the edge.
    Returns (a, b) arrays over the sites [-n, +n].
    """
    width = 2 * n + 3
    dim = 2 * width
    coin_full = np.zeros((dim, dim), dtype=complex)
    for site in range(width):
        for ci in range(2):
            for cj in range(2):
                coin_full[ci * width + site, cj * width + site] = coin[ci, cj]
    shift = np.zeros((dim, dim), dtype=complex)
    for site in range(width):
        if site + 1 < width:
            shift[0 * width + site + 1, 0 * width + site] = 1.0
        if site - 1 >= 0:
            shift[1 * width + site - 1, 1 * width + site] = 1.0
    v_op = shift @ coin_full
    psi = np.zeros(dim, dtype=complex)
    mid = width // 2
    psi[0 * width + mid] = a0
    psi[1 * width + mid] = b0
    for _ in range(n):
        psi = v_op @ psi
    return psi[1 : width - 1], psi[width + 1 : 2 * width - 1]


def binomial_probs(n: int) -> np.ndarray:
    """Exact classical random-walk endpoint probabilities over [-n, +n],
    built from integer binomial coefficients."""
    probs = np.zeros(2 * n + 1)
    denom = 2**n
    for k in range(n + 1):
        probs[2 * k] = math.comb(n, k) / denom
    return probs


def entropy_nats(probs: np.ndarray) -> float:
    nz = probs[probs > 0]
    return float(-np.sum(nz * np.log(nz)))


def random_coin_angles(rng: np.random.Generator):
    return (
        rng.uniform(0.0, 2.0 * math.pi),
        rng.uniform(0.0, math.pi),
        rng.uniform(0.0, 2.0 * math.pi),
    )


def random_ic(rng: np.random.Generator):
    parts = rng.normal(size=4)
    a = complex(parts[0], parts[1])
    b = complex(parts[2], parts[3])
    norm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    return a / norm, b / norm
