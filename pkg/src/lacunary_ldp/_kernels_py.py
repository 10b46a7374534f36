"""Pure numpy implementations of the hot loops (fallback backend)."""
import numpy as np

NAME = "numpy"

_TWO_PI = 2.0 * np.pi
_gather_cache = {}


def _gather(M, q):
    key = (M, q)
    hit = _gather_cache.get(key)
    if hit is None:
        i = np.arange(M, dtype=np.int64)
        lo, hi, frac = [], [], []
        for j in range(q):
            num = i + j * M
            base = num // q
            lo.append(base % M)
            hi.append((base + 1) % M)
            frac.append((num % q) / q)
        hit = (np.array(lo), np.array(hi), np.array(frac))
        if len(_gather_cache) > 8:
            _gather_cache.clear()
        _gather_cache[key] = hit
    return hit


def transfer_apply(weight, g, q, out):
    """out[i] = weight[i] * mean_j g((i + j M)/q), g linearly interpolated on the periodic grid."""
    M = g.shape[0]
    lo, hi, frac = _gather(M, q)
    acc = np.zeros(M)
    for j in range(q):
        acc += g[lo[j]] * (1.0 - frac[j]) + g[hi[j]] * frac[j]
    np.multiply(acc, weight, out=out)
    out /= q
    return out


def add_folded_cos(S, a_mod, M, start):
    """S[t] += cos(2 pi ((a_mod * (start + t)) mod M) / M) for t in range(len(S))."""
    idx = np.arange(start, start + S.shape[0], dtype=np.int64)
    idx *= a_mod
    idx &= M - 1
    S += np.cos(idx * (_TWO_PI / M))
    return S


def exp_sum(S, theta, shift):
    """sum_i exp(theta * S[i] - shift)."""
    return float(np.exp(theta * S - shift).sum())


def count_at_least(S, level):
    return int(np.count_nonzero(S >= level))
