"""Exact F-signature values: closed forms, W-combinatorics, empirical runs.

The closed-form signature of S[[u,v]]/(x^dvec + uv) is a rational built
from the symmetric quantities W_j; the signature of S[[z]]/(x^dvec + z^2)
is 1/2^{n-1} when all exponents are 1 and 0 otherwise.  Empirical
sequences s_e divide exact free ranks by the matching power of p so the
convergence toward the closed form can be checked at small e.  All
arithmetic is exact rational; no floating point.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod

import sympy

from .frobenius import FrobBasis
from .hypersurface import free_rank_uv, free_rank_z2
from .monomial import MonomialData
from .ring import SparsePoly


@dataclass(frozen=True)
class WTable:
    """The values W_0..W_n for an exponent vector.

    W_s sums, over s-element subsets J of the variables, the product of
    (d - d_j) for j in J times d_j for j outside J, with d = max d_j.
    """

    dvec: tuple[int, ...]
    values: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.dvec)

    @property
    def d(self) -> int:
        return max(self.dvec)


def _w_direct(dvec: tuple[int, ...]) -> list[Fraction]:
    n = len(dvec)
    d = max(dvec)
    out = []
    for s in range(n + 1):
        total = Fraction(0)
        for subset in itertools.combinations(range(n), s):
            inside = set(subset)
            term = prod(d - dvec[j] for j in inside) * prod(
                dvec[j] for j in range(n) if j not in inside
            )
            total += term
        out.append(total)
    return out


def _w_recurrence(dvec: tuple[int, ...]) -> list[Fraction]:
    # W over the first m variables, extending one variable at a time:
    # W_j gains (d - d_m) W_{j-1} + d_m W_j
    d = max(dvec)
    values = [Fraction(1)]
    for dm in dvec:
        prev = values
        values = []
        for j in range(len(prev) + 1):
            acc = Fraction(0)
            if j - 1 >= 0:
                acc += (d - dm) * prev[j - 1]
            if j < len(prev):
                acc += dm * prev[j]
            values.append(acc)
    return values


def w_values(dvec) -> WTable:
    """W_0..W_n, computed by direct summation and checked by the recurrence."""
    dvec = tuple(dvec)
    if not dvec:
        raise ValueError("dvec must be non-empty")
    if any(d < 1 for d in dvec):
        raise ValueError("all exponents must be >= 1")
    direct = _w_direct(dvec)
    if direct != _w_recurrence(dvec):
        raise AssertionError("W-value computation paths disagree")
    return WTable(dvec=dvec, values=tuple(direct))


def fsignature_uv_closed(dvec) -> Fraction:
    """Closed-form F-signature of S[[u,v]]/(x^dvec + uv).

    Equals (2/d^{n+1}) * sum_{j=0}^{n} W_j/(n-j+1); the j=n term is always
    zero since d = max d_j forces W_n = 0, but it is included for the
    identity's sake.
    """
    table = w_values(dvec)
    n, d = table.n, table.d
    total = sum(
        (table.values[j] / (n - j + 1) for j in range(n + 1)), Fraction(0)
    )
    value = Fraction(2, d ** (n + 1)) * total
    if not 0 < value <= 1:
        raise AssertionError("signature out of range (0, 1]")
    return value


def fsignature_z2_closed(dvec) -> Fraction:
    """Closed-form F-signature of S[[z]]/(x^dvec + z^2): 1/2^{n-1} or 0."""
    dvec = tuple(dvec)
    if not dvec or any(d < 1 for d in dvec):
        raise ValueError("dvec must be non-empty with all exponents >= 1")
    n = len(dvec)
    if all(d == 1 for d in dvec):
        return Fraction(1, 2 ** (n - 1))
    return Fraction(0)


@lru_cache(maxsize=None)
def bernoulli(j: int) -> Fraction:
    """Bernoulli number B_j with B_1 = -1/2, by the standard recurrence."""
    if j < 0:
        raise ValueError("index must be non-negative")
    if j == 0:
        return Fraction(1)
    total = Fraction(0)
    for i in range(j):
        total += comb(j + 1, i) * bernoulli(i)
    return -total / (j + 1)


def sum_powers(delta: int, s: int) -> Fraction:
    """Faulhaber evaluation of sum_{r=1}^{delta} r^s.

    (1/(s+1)) * sum_j (-1)^j C(s+1, j) B_j delta^{s+1-j}.
    """
    if delta < 0 or s < 0:
        raise ValueError("arguments must be non-negative")
    total = Fraction(0)
    for j in range(s + 1):
        total += (-1) ** j * comb(s + 1, j) * bernoulli(j) * delta ** (s + 1 - j)
    return total / (s + 1)


def expansion_check(dvec, u_values, r_degree_bound: int | None = None) -> bool:
    """Verify the two-variable expansion underlying the signature formula.

    Expands prod_j (d_j*r + q*(d-d_j)/d + u_j) in (r, q) and asserts: the
    coefficient of r^{n-j} q^j is W_j/d^j, and every remaining coefficient
    of r^c is a polynomial in q of degree at most n-1-c.
    """
    dvec = tuple(dvec)
    table = w_values(dvec)
    n, d = table.n, table.d
    u_values = tuple(Fraction(u) for u in u_values)
    if len(u_values) != n:
        raise ValueError("one u value per variable required")
    r, q = sympy.symbols("r q")
    product = sympy.prod(
        dj * r + sympy.Rational(d - dj, d) * q + sympy.Rational(u)
        for dj, u in zip(dvec, u_values)
    )
    expanded = sympy.Poly(sympy.expand(product), r)
    bound = n if r_degree_bound is None else min(r_degree_bound, n)
    for c in range(bound + 1):
        coeff = sympy.expand(expanded.coeff_monomial(r ** c))
        j = n - c
        lead = coeff.coeff(q, j)
        want = table.values[j] / d ** j
        if sympy.Rational(lead) != sympy.Rational(want.numerator, want.denominator):
            return False
        residual = sympy.expand(coeff - lead * q ** j)
        if sympy.degree(residual, q) > n - 1 - c:
            return False
    return True


@dataclass
class SignatureReport:
    """Closed-form value (monomial input only) plus empirical sequence."""

    target: str
    dvec: tuple[int, ...] | None = None
    closed_form: Fraction | None = None
    empirical: list = field(default_factory=list)  # [(e, Fraction), ...]

    def gaps(self) -> list:
        if self.closed_form is None:
            return []
        return [(e, abs(s - self.closed_form)) for e, s in self.empirical]

    def to_json_dict(self) -> dict:
        out = {"target": self.target}
        if self.dvec is not None:
            out["dvec"] = list(self.dvec)
        if self.closed_form is not None:
            out["closed_form"] = _frac_str(self.closed_form)
        out["empirical"] = [
            {"e": e, "s": _frac_str(s)} for e, s in self.empirical
        ]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _as_monomial_data(f: SparsePoly) -> MonomialData | None:
    if not f.is_monomial():
        return None
    ((exps, coeff),) = f.terms.items()
    if any(a < 1 for a in exps):
        return None
    return MonomialData(exps)


def empirical_sequence(
    f: SparsePoly,
    p: int,
    e_range,
    target: str,
    max_size: int = 10 ** 6,
) -> SignatureReport:
    """Exact signature approximants s_e for e in e_range.

    uv target: s_e = free_rank_uv / p^{e(n+1)} (the uv-hypersurface has
    dimension n+1); z2 target: s_e = free_rank_z2 / p^{e*n}.  Raises when
    the largest block size q^n * q^2 would exceed max_size.
    """
    if target not in ("uv", "z2"):
        raise ValueError(f"unknown target {target!r}")
    if f.is_zero() or f.is_constant():
        raise ValueError("f must be a nonzero nonunit")
    if target == "z2" and p == 2:
        raise ValueError("the f+z^2 target requires p odd")
    md = _as_monomial_data(f)
    closed = None
    if md is not None:
        closed = (
            fsignature_uv_closed(md.dvec)
            if target == "uv"
            else fsignature_z2_closed(md.dvec)
        )
    n = f.n
    report = SignatureReport(
        target=target,
        dvec=md.dvec if md is not None else None,
        closed_form=closed,
    )
    for e in e_range:
        q = p ** e
        if q ** n * q ** 2 > max_size:
            raise ResourceWarning(
                f"matrix work at e={e} exceeds the size bound {max_size}"
            )
        basis = FrobBasis(p, e, n, f.names)
        if target == "uv":
            s = Fraction(free_rank_uv(f, basis), p ** (e * (n + 1)))
        else:
            s = Fraction(free_rank_z2(f, basis), p ** (e * n))
        report.empirical.append((e, s))
    return report
