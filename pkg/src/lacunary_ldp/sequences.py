"""Integer sequences (a_k) driving the lacunary sums S_n = sum cos(2 pi a_k w).

Everything here is exact: terms are Python ints and gap ratios are
:class:`fractions.Fraction`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .errors import InvalidArgument

KINDS = ("geometric", "large_gap", "interleaved", "perturbed", "custom")


@dataclass(frozen=True)
class LacunarySequence:
    """Finite prefix a_1, ..., a_n of an integer sequence plus provenance.

    ``terms[k-1]`` holds a_k.  ``params`` records how the terms were built
    (``{"q": 2, "n": 5}`` for a geometric sequence, the schedule for an
    interleaved one, ...).  For perturbed sequences ``ratio_bound_from`` is
    the first index k from which the worst-case ratio bounds
    2/(1+2^{-k^{1/3}}) <= a_{k+1}/a_k <= 2(1+2^{-(k+1)^{1/3}}) hold for every
    realisation of the perturbation.
    """

    terms: tuple[int, ...]
    kind: str = "custom"
    params: dict = field(default_factory=dict)
    seed: int | None = None
    ratio_bound_from: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidArgument(f"unknown sequence kind {self.kind!r}")
        if not self.terms:
            raise InvalidArgument("a sequence needs at least one term")
        for t in self.terms:
            if not isinstance(t, (int, np.integer)) or isinstance(t, bool):
                raise InvalidArgument(f"terms must be integers, got {t!r}")
            if t <= 0:
                raise InvalidArgument("terms must be positive")
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        if self.kind != "perturbed" and not self.is_increasing():
            raise InvalidArgument("terms must be strictly increasing")

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, idx):
        return self.terms[idx]

    def __iter__(self):
        return iter(self.terms)

    def is_increasing(self) -> bool:
        return all(a < b for a, b in zip(self.terms, self.terms[1:]))

    def prefix(self, n: int) -> "LacunarySequence":
        if not 1 <= n <= len(self.terms):
            raise InvalidArgument(f"prefix length {n} outside 1..{len(self.terms)}")
        return LacunarySequence(self.terms[:n], self.kind, dict(self.params), self.seed,
                                self.ratio_bound_from)

    def tail(self, start: int) -> "LacunarySequence":
        """Terms a_start, a_{start+1}, ... (1-indexed) as a custom sequence."""
        if not 1 <= start <= len(self.terms):
            raise InvalidArgument(f"tail start {start} outside 1..{len(self.terms)}")
        params = {"source": self.kind, "start": start, **self.params}
        return LacunarySequence(self.terms[start - 1:], "custom", params)

    # -- serialisation ----------------------------------------------------
    def to_dict(self) -> dict[str, Any]:
        params = dict(self.params)
        if self.seed is not None:
            params["seed"] = self.seed
        return {"kind": self.kind, "params": params,
                "terms": [str(t) for t in self.terms]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "LacunarySequence":
        try:
            kind = data.get("kind", "custom")
            params = dict(data.get("params", {}))
            terms = tuple(int(t) for t in data["terms"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgument(f"malformed sequence JSON: {exc}") from exc
        seed = params.get("seed")
        bound_from = perturbation_threshold() if kind == "perturbed" else None
        return cls(terms, kind, params, seed, bound_from)

    @classmethod
    def from_json(cls, text: str) -> "LacunarySequence":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidArgument(f"malformed sequence JSON: {exc}") from exc
        return cls.from_dict(data)


def custom(terms: Sequence[int]) -> LacunarySequence:
    return LacunarySequence(tuple(terms), "custom", {})


def geometric(q: int, n: int) -> LacunarySequence:
    """(q, q^2, ..., q^n)."""
    if q < 2:
        raise InvalidArgument(f"geometric base must be >= 2, got {q}")
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    return LacunarySequence(tuple(q ** k for k in range(1, n + 1)), "geometric",
                            {"q": q, "n": n})


def large_gap(n: int) -> LacunarySequence:
    """a_k = 2^{k(k+1)/2}, so that a_{k+1}/a_k = 2^{k+1} grows without bound."""
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    return LacunarySequence(tuple(2 ** (k * (k + 1) // 2) for k in range(1, n + 1)),
                            "large_gap", {"n": n})


def ceil_two_thirds(k: int) -> int:
    """Exact ceil(k^{2/3}): the least e with e^3 >= k^2."""
    e = max(1, round(k ** (2 / 3)) - 1)
    while e ** 3 < k * k:
        e += 1
    while e > 1 and (e - 1) ** 3 >= k * k:
        e -= 1
    return e


def perturbation_support(k: int) -> list[int]:
    """The set {h 2^e : 0 <= h <= 2^e} with e = ceil(k^{2/3})."""
    step = 2 ** ceil_two_thirds(k)
    return [h * step for h in range(step + 1)]


def _bound_holds(j: int) -> bool:
    # worst case: 2 ceil(j^{2/3}) - j <= -j^{1/3}, decided exactly via cubes
    slack = j - 2 * ceil_two_thirds(j)
    return slack > 0 and slack ** 3 >= j


def perturbation_threshold() -> int:
    """Smallest k such that the ratio bounds hold for all realisations and all k' >= k.

    The lower bound at k needs the worst case at j = k and the upper bound at
    j = k + 1.  Beyond j = 64 the continuous estimate 2(j^{2/3}+1) + j^{1/3} <= j
    holds with room to spare, so a finite scan decides it.
    """
    last_fail = 0
    for j in range(1, 65):
        if not _bound_holds(j):
            last_fail = j
    return last_fail + 1


def _draw(seed: int, k: int, size: int) -> int:
    # Philox4x64 keyed by (seed, k): one independent counter-based stream per
    # index, so extending n never changes earlier terms.
    gen = np.random.Generator(np.random.Philox(key=[seed & 0xFFFFFFFFFFFFFFFF, k]))
    return int(gen.integers(0, size, endpoint=False))


def perturbed(n: int, seed: int) -> LacunarySequence:
    """a_k = 2^k + Y_k with Y_k uniform on {h 2^e : 0 <= h <= 2^e}, e = ceil(k^{2/3}).

    Draws come from Philox4x64 keyed by ``(seed, k)``.  Small-k prefixes need
    not be monotone; ``ratio_bound_from`` marks where the worst-case ratio
    bounds start to hold.
    """
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    if not 0 <= seed < 2 ** 64:
        raise InvalidArgument("seed must be a 64-bit unsigned integer")
    terms = []
    for k in range(1, n + 1):
        e = ceil_two_thirds(k)
        h = _draw(seed, k, 2 ** e + 1)
        terms.append(2 ** k + h * 2 ** e)
    return LacunarySequence(tuple(terms), "perturbed", {"n": n}, seed,
                            perturbation_threshold())


def interleaved(schedule: Sequence[tuple[int, int]]) -> LacunarySequence:
    """Concatenate blocks of consecutive powers of 2 or 3.

    Each block starts at the smallest power of its base exceeding twice the
    last emitted term, which keeps every gap ratio >= 2.
    """
    if not schedule:
        raise InvalidArgument("schedule must not be empty")
    terms: list[int] = []
    for base, length in schedule:
        if base not in (2, 3):
            raise InvalidArgument(f"block base must be 2 or 3, got {base}")
        if length < 1:
            raise InvalidArgument("block lengths must be >= 1")
        power = base
        if terms:
            while power <= 2 * terms[-1]:
                power *= base
        for _ in range(length):
            terms.append(power)
            power *= base
    params = {"schedule": [[int(b), int(l)] for b, l in schedule]}
    return LacunarySequence(tuple(terms), "interleaved", params)


def gap_ratios(seq: LacunarySequence) -> list[Fraction]:
    if len(seq) < 2:
        raise InvalidArgument("gap ratios need at least two terms")
    return [Fraction(b, a) for a, b in zip(seq.terms, seq.terms[1:])]


def hadamard_check(seq: LacunarySequence, q) -> bool:
    """True iff every ratio a_{k+1}/a_k is at least ``q``."""
    q = Fraction(q)
    if q <= 1:
        raise InvalidArgument("Hadamard ratio must exceed 1")
    return all(r >= q for r in gap_ratios(seq))


def parse_inline(spec: str) -> LacunarySequence:
    """Parse the compact CLI form of a sequence.

    ``geometric:Q:N``, ``large_gap:N``, ``perturbed:N:SEED``,
    ``interleaved:2x7,3x6`` and ``linear:N`` (a_k = k, the sub-lacunary case).
    """
    kind, _, rest = spec.partition(":")
    parts = rest.split(":") if rest else []
    try:
        if kind == "geometric" and len(parts) == 2:
            return geometric(int(parts[0]), int(parts[1]))
        if kind == "large_gap" and len(parts) == 1:
            return large_gap(int(parts[0]))
        if kind == "perturbed" and len(parts) == 2:
            return perturbed(int(parts[0]), int(parts[1]))
        if kind == "interleaved" and len(parts) == 1:
            blocks = []
            for blk in parts[0].split(","):
                b, _, l = blk.partition("x")
                blocks.append((int(b), int(l)))
            return interleaved(blocks)
        if kind == "linear" and len(parts) == 1:
            n = int(parts[0])
            return LacunarySequence(tuple(range(1, n + 1)), "custom", {"linear": n})
    except ValueError as exc:
        if isinstance(exc, InvalidArgument):
            raise
        raise InvalidArgument(f"cannot parse sequence {spec!r}: {exc}") from exc
    raise InvalidArgument(f"cannot parse sequence {spec!r}")
