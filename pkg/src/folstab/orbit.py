"""Floating-point pseudo-orbit exploration for holonomy pseudogroups.

Maps are truncated power series with an attached validity radius; a map
is only applied inside its radius, and points are explored breadth
first with deduplication on a rounding grid.  The walk stops when a
point leaves the escape radius or the expansion budget runs out.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


@dataclass(frozen=True)
class NumericGerm:
    """z -> sum coeffs[t] z^(t+1), trusted for |z| < radius."""

    coeffs: tuple[complex, ...]
    radius: float

    @classmethod
    def from_formal(cls, f, radius: float) -> "NumericGerm":
        return cls(tuple(f.numeric_coeffs()), radius)

    def apply(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = (acc + c) * z
        return acc

    def inverse(self) -> "NumericGerm":
        n = len(self.coeffs)
        m = self.coeffs[0]
        if m == 0:
            raise ValueError("non-invertible map")
        b = [0j] * n
        b[0] = 1 / m
        for k in range(1, n):
            b[k] = -_compose_num(self.coeffs, b, k + 1)[k] / m
        return NumericGerm(tuple(b), self.radius)


def _compose_num(f, g, n):
    """Coefficients of f(g(z)); index t holds the z^(t+1) coefficient."""
    out = [0j] * n
    p = list(g[:n]) + [0j] * max(0, n - len(g))
    for t in range(min(n, len(f))):
        c = f[t]
        if c != 0:
            for k in range(n):
                out[k] += c * p[k]
        if t + 1 < n:
            nxt = [0j] * n
            for i, pi in enumerate(p):
                if pi == 0:
                    continue
                for j in range(min(len(g), n - i - 1)):
                    nxt[i + j + 1] += pi * g[j]
            p = nxt
    return out


@dataclass
class OrbitResult:
    escaped: bool
    escape_step: int | None
    escape_point: complex | None
    expansions: int
    visited: int
    max_drift: float
    notes: list[str] = field(default_factory=list)


def simulate_pseudo_orbit(
    maps,
    start: complex,
    u_radius: float,
    budget: int = 10000,
    include_inverses: bool = True,
    dedupe_digits: int = 12,
) -> OrbitResult:
    """Breadth-first orbit of `start`; escape means leaving |z| < u_radius.

    The reported step of an escape is the word length that produced it.
    """
    all_maps = list(maps)
    notes: list[str] = []
    if include_inverses:
        for m in maps:
            try:
                all_maps.append(m.inverse())
            except ValueError:
                notes.append("a map had no numeric inverse")
    if abs(start) > u_radius:
        return OrbitResult(True, 0, start, 0, 0, 0.0, notes)

    def key(z: complex):
        return (round(z.real, dedupe_digits), round(z.imag, dedupe_digits))

    seen = {key(start)}
    queue = deque([(start, 0)])
    expansions = 0
    max_drift = 0.0
    while queue:
        z, depth = queue.popleft()
        for m in all_maps:
            if abs(z) >= m.radius:
                continue
            if expansions >= budget:
                return OrbitResult(
                    False, None, None, expansions, len(seen), max_drift, notes
                )
            w = m.apply(z)
            expansions += 1
            drift = abs(abs(w) - abs(z))
            if drift > max_drift:
                max_drift = drift
            if abs(w) > u_radius:
                return OrbitResult(
                    True, depth + 1, w, expansions, len(seen), max_drift, notes
                )
            k = key(w)
            if k not in seen:
                seen.add(k)
                queue.append((w, depth + 1))
    return OrbitResult(False, None, None, expansions, len(seen), max_drift, notes)
