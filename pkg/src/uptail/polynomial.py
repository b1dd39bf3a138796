"""Sparse polynomials in ``x1, x2, min(x1, x2), y1, y2, min(y1, y2)``.

A term ``(c, (p1, p2, p3, q1, q2, q3))`` stands for
``c * x1**p1 * x2**p2 * min(x1,x2)**p3 * y1**q1 * y2**q2 * min(y1,y2)**q3``.
All coefficients are positive integers, so every polynomial here is
nondecreasing in each coordinate on the nonnegative orthant.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = ["Exponents", "TailPolynomial"]

Exponents = tuple[int, int, int, int, int, int]

_NAMES = ("x1", "x2", "min(x1,x2)", "y1", "y2", "min(y1,y2)")


@dataclass(frozen=True)
class TailPolynomial:
    terms: tuple[tuple[int, Exponents], ...]
    kind: str = ""

    @classmethod
    def from_exponents(cls, exponents: Iterable[Exponents], kind: str = "") -> "TailPolynomial":
        """One unit term per exponent vector; identical vectors are merged."""
        counts = Counter(tuple(int(e) for e in exps) for exps in exponents)
        for exps in counts:
            if len(exps) != 6 or min(exps) < 0:
                raise ValueError(f"bad exponent vector {exps}")
        return cls(tuple((c, e) for e, c in sorted(counts.items())), kind)

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    @property
    def multiplicity(self) -> int:
        """Total coefficient mass, i.e. the number of sets before merging."""
        return sum(c for c, _ in self.terms)

    @property
    def x_degree(self) -> int:
        return max(e[0] + e[1] + e[2] for _, e in self.terms)

    def __call__(self, x1, x2, y1, y2):
        return self.evaluate(x1, x2, y1, y2)

    def evaluate(self, x1: float, x2: float, y1: float, y2: float) -> float:
        if min(x1, x2, y1, y2) < 0:
            raise ValueError("polynomial arguments must be nonnegative")
        x3 = min(x1, x2)
        y3 = min(y1, y2)
        total = 0.0
        for c, (p1, p2, p3, q1, q2, q3) in self.terms:
            # Python's float power gives 0.0 ** 0 == 1.0
            total += c * x1 ** p1 * x2 ** p2 * x3 ** p3 * y1 ** q1 * y2 ** q2 * y3 ** q3
        return total

    def evaluate_many(self, x1, x2, y1, y2) -> np.ndarray:
        x1, x2, y1, y2 = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x1, x2, y1, y2)))
        if min(a.min(initial=0.0) for a in (x1, x2, y1, y2)) < 0:
            raise ValueError("polynomial arguments must be nonnegative")
        x3 = np.minimum(x1, x2)
        y3 = np.minimum(y1, y2)
        out = np.zeros(x1.shape)
        for c, (p1, p2, p3, q1, q2, q3) in self.terms:
            out += c * x1 ** p1 * x2 ** p2 * x3 ** p3 * y1 ** q1 * y2 ** q2 * y3 ** q3
        return out

    def ray_coefficients(self, r1, r2, y1, y2) -> np.ndarray:
        """Coefficients in ``s`` of ``P(s*r1, s*r2, y1, y2)``.

        Returns shape ``(..., x_degree + 1)``; column ``d`` multiplies ``s**d``.
        """
        r1, r2, y1, y2 = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (r1, r2, y1, y2)))
        r3 = np.minimum(r1, r2)
        y3 = np.minimum(y1, y2)
        coeffs = np.zeros(r1.shape + (self.x_degree + 1,))
        for c, (p1, p2, p3, q1, q2, q3) in self.terms:
            coeffs[..., p1 + p2 + p3] += c * r1 ** p1 * r2 ** p2 * r3 ** p3 * y1 ** q1 * y2 ** q2 * y3 ** q3
        return coeffs

    def ray_coefficients_scalar(self, r1: float, r2: float, y1: float, y2: float) -> list[float]:
        """Plain-float version of :meth:`ray_coefficients` for one point."""
        r3, y3 = min(r1, r2), min(y1, y2)
        coeffs = [0.0] * (self.x_degree + 1)
        for c, (p1, p2, p3, q1, q2, q3) in self.terms:
            coeffs[p1 + p2 + p3] += c * r1 ** p1 * r2 ** p2 * r3 ** p3 * y1 ** q1 * y2 ** q2 * y3 ** q3
        return coeffs

    def outer_ray_coefficients(self, r1, r2, y1, y2) -> np.ndarray:
        """Ray coefficients on a product grid, shape ``(x_degree + 1, len(y), len(r))``.

        ``y1, y2`` vary along the first grid axis and ``r1, r2`` along the
        second; each degree is assembled with one matrix product.
        """
        r1, r2 = np.broadcast_arrays(*np.atleast_1d(np.asarray(r1, dtype=float), np.asarray(r2, dtype=float)))
        y1, y2 = np.broadcast_arrays(*np.atleast_1d(np.asarray(y1, dtype=float), np.asarray(y2, dtype=float)))
        r3 = np.minimum(r1, r2)
        y3 = np.minimum(y1, y2)
        deg = self.x_degree
        ycols: list[list[np.ndarray]] = [[] for _ in range(deg + 1)]
        rcols: list[list[np.ndarray]] = [[] for _ in range(deg + 1)]
        for c, (p1, p2, p3, q1, q2, q3) in self.terms:
            d = p1 + p2 + p3
            ycols[d].append(c * y1 ** q1 * y2 ** q2 * y3 ** q3)
            rcols[d].append(r1 ** p1 * r2 ** p2 * r3 ** p3)
        out = np.zeros((deg + 1, y1.size, r1.size))
        for d in range(deg + 1):
            if ycols[d]:
                out[d] = np.stack(ycols[d], axis=1) @ np.stack(rcols[d], axis=0)
        return out

    def substitute(self, y1: float | None = None, y2: float | None = None) -> dict[tuple, float]:
        """Collect terms after fixing ``y1`` and/or ``y2`` (exactly, for 0/1 values).

        The result maps remaining exponent signatures to summed coefficients,
        which makes slice identities comparable term by term.
        """
        out: dict[tuple, float] = {}
        for c, (p1, p2, p3, q1, q2, q3) in self.terms:
            if y1 is not None and y2 is not None:
                key = (p1, p2, p3)
                val = c * y1 ** q1 * y2 ** q2 * min(y1, y2) ** q3
            elif y2 is not None:
                # min(y1, y2) with y2 = 1 and y1 <= 1 is y1
                if y2 != 1:
                    raise ValueError("partial substitution supports y2 = 1 only")
                key = (p1, p2, p3, q1 + q3)
                val = c
            elif y1 is not None:
                if y1 != 1:
                    raise ValueError("partial substitution supports y1 = 1 only")
                key = (p1, p2, p3, q2 + q3)
                val = c
            else:
                key = (p1, p2, p3, q1, q2, q3)
                val = c
            if val:
                out[key] = out.get(key, 0) + val
        return out

    def pretty(self) -> str:
        parts = []
        for c, exps in self.terms:
            factors = "".join(f"({name}^{e})" for name, e in zip(_NAMES, exps) if e)
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append(factors)
            else:
                parts.append(f"{c}{factors}")
        return " + ".join(parts)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "terms": [[c, list(e)] for c, e in self.terms],
                "text": self.pretty()}

    def __str__(self) -> str:
        return self.pretty()
