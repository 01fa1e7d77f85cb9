"""Two-generator numerical semigroups and the running-time predictors.

All arithmetic is on integers; ceilings of logarithms are found by comparing
against exact powers so boundary values never round the wrong way.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable


class DomainError(ValueError):
    pass


def min_coefficient(d: int, x: int, y: int) -> int | None:
    """Least ``a >= 0`` with ``d = a*x + b*y`` for some ``b >= 0``, or ``None``."""
    if x < 1 or y < 1:
        raise DomainError("generators must be positive")
    if d < 0:
        return None
    g = gcd(x, y)
    if d % g:
        return None
    x1, y1, d1 = x // g, y // g, d // g
    a = 0 if y1 == 1 else (d1 * pow(x1, -1, y1)) % y1
    return a if a * x1 <= d1 else None


def representable(d: int, x: int, y: int) -> bool:
    """Is ``d = a*x + b*y`` for some non-negative integers ``a, b``?"""
    return min_coefficient(d, x, y) is not None


def frobenius(x: int, y: int) -> int:
    """Largest integer not representable by coprime ``x, y`` (``-1`` when one is 1)."""
    if x < 1 or y < 1:
        raise DomainError("generators must be positive")
    if gcd(x, y) != 1:
        raise DomainError(f"generators {x}, {y} are not coprime")
    return x * y - x - y


@dataclass(frozen=True)
class SemigroupView:
    x: int
    y: int

    @property
    def frobenius(self) -> int:
        return frobenius(self.x, self.y)

    def representable(self, d: int) -> bool:
        return representable(d, self.x, self.y)

    def gaps(self) -> list[int]:
        return [d for d in range(max(self.frobenius, -1) + 1) if not self.representable(d)]


def F_cycle(k: int) -> int:
    """Frobenius number of ``k-2`` and ``k`` for odd ``k``: ``k^2 - 4k + 2``."""
    if k < 3 or k % 2 == 0:
        raise DomainError("F_cycle needs an odd k >= 3")
    return k * k - 4 * k + 2


def Fprime_cycle(k: int) -> int:
    """Largest even number not representable by ``k-2`` and ``k`` for even ``k``."""
    if k < 4 or k % 2:
        raise DomainError("Fprime_cycle needs an even k >= 4")
    return k * k // 2 - 3 * k + 2


def cycle_gap(k: int) -> int:
    return F_cycle(k) if k % 2 else Fprime_cycle(k)


def in_A(d: int, i: int, k: int) -> bool:
    """Membership of ``d`` in ``{(k-1)^i - a(k-2) - b k : a, b >= 0}``."""
    return representable((k - 1) ** i - d, k - 2, k)


def set_A(i: int, k: int, range_max: int) -> set[int]:
    """Elements of the round-``i`` difference set lying in ``[1, range_max]``."""
    if i < 0 or k < 3 or range_max < 1:
        raise DomainError("need i >= 0, k >= 3, range_max >= 1")
    top = (k - 1) ** i
    return {d for d in range(1, min(range_max, top) + 1) if representable(top - d, k - 2, k)}


def in_A_prime(d: int, i: int, k: int) -> bool:
    """Membership in the constrained set where ``a + b <= (k-1)^(i-2) (k-2)``."""
    if i <= 1:
        return d == (1 if i == 0 else k - 1)
    m = (k - 1) ** i - d
    a = min_coefficient(m, k - 2, k)
    if a is None:
        return False
    # along the solution family a + b grows with a, so the least a is optimal
    b = (m - a * (k - 2)) // k
    return a + b <= (k - 1) ** (i - 2) * (k - 2)


def set_A_prime(i: int, k: int, range_max: int) -> set[int]:
    """Constrained difference set: ``a + b <= (k-1)^(i-2) (k-2)``.

    Rounds 0 and 1 are ``{1}`` and ``{k-1}``.
    """
    if i < 0 or k < 3 or range_max < 1:
        raise DomainError("need i >= 0, k >= 3, range_max >= 1")
    top = (k - 1) ** i
    return {d for d in range(1, min(range_max, top) + 1) if in_A_prime(d, i, k)}


def sumset(h: int, A: Iterable[int]) -> set[int]:
    """``h``-fold sumset ``{a_1 + ... + a_h}``."""
    if h < 1:
        raise DomainError("h must be at least 1")
    base = set(A)
    out = set(base)
    for _ in range(h - 1):
        out = {s + a for s in out for a in base}
    return out


def dilate(h: int, A: Iterable[int]) -> set[int]:
    return {h * a for a in A}


def _ceil_log(base: int, x: int) -> int:
    if x < 1:
        raise DomainError(f"logarithm argument {x} must be at least 1")
    r, p = 0, 1
    while p < x:
        p *= base
        r += 1
    return r


def log_argument(n: int, k: int) -> int:
    if k < 3:
        raise DomainError("k must be at least 3")
    return n + k * k - 4 * k + 2 if k % 2 else 2 * n + k * k - 5 * k


def predict_r(n: int, k: int) -> int:
    """Round by which every pair that will ever be joined is joined."""
    r = _ceil_log(k - 1, log_argument(n, k))
    if not _sandwich_holds(n, k, r):  # pragma: no cover - guarded by tests
        raise AssertionError(f"window check failed for n={n}, k={k}, r={r}")
    return r


def _sandwich_holds(n: int, k: int, r: int) -> bool:
    p_hi = (k - 1) ** r
    if k % 2:
        F = F_cycle(k)
        lo_ok = r == 0 or (k - 1) ** (r - 1) - F <= n - 1
        return lo_ok and n - 1 < p_hi - F
    Fp = Fprime_cycle(k)
    hi_ok = 2 * n < p_hi - (k - 1) - 2 * Fp + 4
    lo_ok = r == 0 or (k - 1) ** (r - 1) - (k - 1) - 2 * Fp + 4 <= 2 * n
    return lo_ok and hi_ok


def window(k: int, r: int) -> tuple[int, int]:
    """Inclusive range of ``n`` for which ``predict_r(n, k) == r``."""
    if r < 1:
        raise DomainError("r must be at least 1")
    if k % 2:
        F = F_cycle(k)
        return (k - 1) ** (r - 1) - F + 1, (k - 1) ** r - F
    # 2n + k^2 - 5k in ((k-1)^(r-1), (k-1)^r]
    c = k * k - 5 * k
    lo = ((k - 1) ** (r - 1) - c) // 2 + 1
    hi = ((k - 1) ** r - c) // 2
    return lo, hi


def predict_ell(k: int, r: int) -> int:
    """Arm length of the triangle-capped path whose far pair appears at round ``r``."""
    if k % 2 or k < 4:
        raise DomainError("predict_ell needs an even k >= 4")
    if r < 2:
        raise DomainError("predict_ell needs r >= 2")
    return ((k - 1) ** (r - 1) - (k - 1)) // 2 - Fprime_cycle(k) - 1


def predict_M(n: int, k: int) -> int:
    """Closed-form maximum running time of the ``C_k`` process on ``n`` vertices."""
    return _ceil_log(k - 1, log_argument(n, k))


@dataclass(frozen=True)
class Predictors:
    k: int

    def r(self, n: int) -> int:
        return predict_r(n, self.k)

    def ell(self, r: int) -> int:
        return predict_ell(self.k, r)

    def M(self, n: int) -> int:
        return predict_M(n, self.k)
