"""Closed-form complexity lower bounds and sweep verification.

Each bound is an exact rational; a check passes when the exactly
computed complexity is >= the bound (a bound <= 0 passes trivially,
since complexities are nonnegative).  Bound identifiers name the
workbench's bound catalog:

  inversive-nk    per-variable cap:   (n-1)/(k+1)
  inversive-lk    total-degree cap:   (n-1)/(k+1)
  inversive-lin   linear complexity:  (n-1)/2
  periodic-nk     per-variable cap:   min((n-1)/(k+1), (d-1)/k)
  periodic-lk     total-degree cap:   min((n-1)/(k+1), (d-1)/k)
  hermitian-nk    per-variable cap:   ((q-1)r - 1)/(l(l-1)k + r)
  hermitian-lk    total-degree cap:   ((q-1)r - (l^2-l-1)k - 1)/(k + r)

with r = floor(n/(q-1)) in the last two, and a Hermitian per-variable
bound of 0 when n < q - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import complexity as cx
from .finite_field import field_of_order, prime_power
from .generators import Sequence, inversive_finite, inversive_periodic
from .hermitian import hermitian_sequence


def bound_inversive(n: int, k: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    return Fraction(n - 1, k + 1)


def bound_periodic(n: int, k: int, d: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    if d < 1:
        raise ValueError("d must be >= 1")
    return min(Fraction(n - 1, k + 1), Fraction(d - 1, k))


def _check_hermitian_args(n: int, k: int, ell: int) -> int:
    if ell < 2 or prime_power(ell) is None:
        raise ValueError("l must be a prime power >= 2")
    if k < 1:
        raise ValueError("k must be >= 1")
    q = ell * ell
    if not 1 <= n <= (q - 1) * (ell - 1):
        raise ValueError(f"n must lie in 1..{(q - 1) * (ell - 1)}")
    return q


def bound_hermitian_N(n: int, k: int, ell: int) -> Fraction:
    q = _check_hermitian_args(n, k, ell)
    r = n // (q - 1)
    if r == 0:
        return Fraction(0)
    return Fraction((q - 1) * r - 1, ell * (ell - 1) * k + r)


def bound_hermitian_L(n: int, k: int, ell: int) -> Fraction:
    q = _check_hermitian_args(n, k, ell)
    r = n // (q - 1)
    return Fraction((q - 1) * r - (ell * ell - ell - 1) * k - 1, k + r)


@dataclass(frozen=True)
class BoundCheck:
    theorem: str
    q: int
    k: int
    n: int
    bound: Fraction
    computed: int
    passed: bool
    d: Optional[int] = None
    ell: Optional[int] = None


def _profile_checks(seq: Sequence, theorem: str, k: int, kind: str,
                    bound_fn, n_max: Optional[int], max_monomials: int,
                    **ids) -> list[BoundCheck]:
    n_stop = len(seq) if n_max is None else min(n_max, len(seq))
    sub = seq.prefix(n_stop)
    if kind == "lin":
        prof = cx.linear_profile(sub)
    else:
        prof = cx.profile(sub, k, kind, max_monomials=max_monomials)
    out = []
    for n in range(1, n_stop + 1):
        b = bound_fn(n)
        computed = prof[n - 1]
        out.append(BoundCheck(theorem=theorem, q=seq.field.q, k=k, n=n,
                              bound=b, computed=computed,
                              passed=computed >= b, **ids))
    return out


def admissible_periods(q: int) -> list[int]:
    """Positive divisors d of q-1 with d < q-1."""
    return [d for d in range(1, q - 1) if (q - 1) % d == 0]


def verify(construction: str, *, q: Optional[int] = None,
           ell: Optional[int] = None, k_values=(1, 2),
           kinds: Optional[tuple] = None, d: Optional[int] = None,
           b=1, c=None, a=1, periods: int = 3, n_max: Optional[int] = None,
           max_monomials: int = cx.DEFAULT_MAX_MONOMIALS) -> list[BoundCheck]:
    """Sweep every prefix length and requested degree cap of one
    construction and compare exact complexities against the catalog
    bounds.  Returns one BoundCheck per (kind, k, n)."""
    k_values = sorted(set(int(k) for k in k_values))
    if any(k < 1 for k in k_values):
        raise ValueError("degree caps must be >= 1")

    if construction == "inversive":
        if q is None:
            raise ValueError("inversive verification needs q")
        field = field_of_order(q)
        seq = inversive_finite(field, a=a)
        kinds = ("nk", "lk", "lin") if kinds is None else kinds
        checks: list[BoundCheck] = []
        for kind in kinds:
            if kind == "nk":
                for k in k_values:
                    checks += _profile_checks(
                        seq, "inversive-nk", k, "nk",
                        lambda n, k=k: bound_inversive(n, k), n_max, max_monomials)
            elif kind == "lk":
                for k in k_values:
                    checks += _profile_checks(
                        seq, "inversive-lk", k, "lk",
                        lambda n, k=k: bound_inversive(n, k), n_max, max_monomials)
            elif kind == "lin":
                checks += _profile_checks(
                    seq, "inversive-lin", 1, "lin",
                    lambda n: bound_inversive(n, 1), n_max, max_monomials)
            else:
                raise ValueError(f"no inversive bound covers kind {kind!r}")
        return checks

    if construction == "periodic":
        if q is None:
            raise ValueError("periodic verification needs q")
        field = field_of_order(q)
        ds = admissible_periods(q) if d is None else [d]
        kinds = ("nk", "lk") if kinds is None else kinds
        checks = []
        for dd in ds:
            n_len = periods * dd if n_max is None else n_max
            seq = inversive_periodic(field, dd, n_len, b=b, c=c)
            for kind in kinds:
                if kind not in ("nk", "lk"):
                    raise ValueError(f"no periodic bound covers kind {kind!r}")
                theorem = "periodic-nk" if kind == "nk" else "periodic-lk"
                for k in k_values:
                    checks += _profile_checks(
                        seq, theorem, k, kind,
                        lambda n, k=k, dd=dd: bound_periodic(n, k, dd),
                        None, max_monomials, d=dd)
        return checks

    if construction == "hermitian":
        if ell is None:
            raise ValueError("hermitian verification needs ell")
        seq = hermitian_sequence(ell)
        kinds = ("nk", "lk") if kinds is None else kinds
        checks = []
        for kind in kinds:
            if kind not in ("nk", "lk"):
                raise ValueError(f"no Hermitian bound covers kind {kind!r}")
            theorem = "hermitian-nk" if kind == "nk" else "hermitian-lk"
            bound_fn = bound_hermitian_N if kind == "nk" else bound_hermitian_L
            for k in k_values:
                checks += _profile_checks(
                    seq, theorem, k, kind,
                    lambda n, k=k: bound_fn(n, k, ell), n_max, max_monomials,
                    ell=ell)
        return checks

    raise ValueError(f"no bound catalog entry for construction {construction!r}")


def all_passed(checks) -> bool:
    return all(ch.passed for ch in checks)


def summarize(checks) -> dict:
    failed = [ch for ch in checks if not ch.passed]
    return {
        "total": len(checks),
        "passed": len(checks) - len(failed),
        "failed": len(failed),
        "all_passed": not failed,
    }
