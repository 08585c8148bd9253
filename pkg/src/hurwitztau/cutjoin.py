"""Bosonic cut-and-join operators Q_k and V_k on the flow-variable ring, the
exponential reconstruction of the tau-function, and the parametric PDEs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import ConfigurationError, UnsupportedDegreeError
from .exactalg import (
    BetaSeries,
    GradedPoly,
    exp_weight,
    exps_mul,
    monomial_from_partition,
    series_exp,
)
from .partitions import Partition, enumerate_partitions, partitions_up_to
from .symfun import cauchy_kernel, char_table, schur_monomial_map, schur_to_power
from .taufn import build_tau
from .weights import DUAL_FINITE_C, FINITE_C, WeightFamily, log_A_coeffs


@dataclass(frozen=True)
class DiffOp:
    """Finite sum of terms (t-monomial multiplier) * (partial-derivative monomial).

    Application to a GradedPoly changes every term's t-weight by exactly
    grading_shift and adds grading_shift to its gamma-grade.
    """

    terms: tuple  # (mult_exps, deriv_exps, Fraction)
    grading_shift: int

    def apply(self, poly: GradedPoly) -> GradedPoly:
        out: dict = {}
        d_max = poly.d_max
        for (t, s, g), coeff in poly.terms.items():
            for mult, deriv, c in self.terms:
                if len(deriv) > len(t):
                    continue
                factor = 1
                ok = True
                new_t = list(t)
                for idx, d in enumerate(deriv):
                    if d == 0:
                        continue
                    e = t[idx]
                    if e < d:
                        ok = False
                        break
                    for step in range(d):
                        factor *= e - step
                    new_t[idx] = e - d
                if not ok or factor == 0:
                    continue
                t_out = exps_mul(tuple(new_t), mult)
                if exp_weight(t_out) > poly.w_max:
                    continue
                key = (t_out, s, g + self.grading_shift)
                contrib = coeff * (c * factor)
                if key in out:
                    out[key] = out[key] + contrib
                else:
                    out[key] = contrib
        return GradedPoly(out, poly.w_max, d_max)


def _mono(*parts) -> tuple:
    return monomial_from_partition(parts)


def build_Qk(k: int, w_max: int) -> DiffOp:
    """Explicit bosonic Q_0, Q_1, Q_2, restricted to weight <= w_max."""
    terms = []
    if k == 0:
        for a in range(1, w_max + 1):
            terms.append((_mono(a), _mono(a), Fraction(a)))
    elif k == 1:
        for a in range(1, w_max + 1):
            for b in range(1, w_max - a + 1):
                terms.append((_mono(a, b), _mono(a + b), Fraction(a * b, 2)))
                terms.append((_mono(a + b), exps_mul(_mono(a), _mono(b)), Fraction(a + b, 2)))
    elif k == 2:
        for a in range(1, w_max + 1):
            for b in range(1, w_max - a + 1):
                for c in range(1, w_max - a - b + 1):
                    n = a + b + c
                    terms.append((_mono(a, b, c), _mono(n), Fraction(a * b * c, 3)))
                    terms.append(
                        (_mono(n), exps_mul(exps_mul(_mono(a), _mono(b)), _mono(c)), Fraction(n, 3))
                    )
        for a in range(1, w_max + 1):
            for b in range(1, w_max - a + 1):
                for c in range(1, a + b):
                    terms.append(
                        (
                            _mono(c, a + b - c),
                            exps_mul(_mono(a), _mono(b)),
                            Fraction(c * (a + b - c), 2),
                        )
                    )
        for a in range(1, w_max + 1):
            terms.append((_mono(a), _mono(a), Fraction(a * (a * a - 1), 6)))
    else:
        raise UnsupportedDegreeError("explicit Q_k available only for k <= 2")
    return DiffOp(tuple(terms), 0)


def build_V1(w_max: int) -> DiffOp:
    """V_1 = sum_k k t_k d/dt_{k-1} (the t_0-derivative is dropped: charge is fixed)."""
    terms = []
    for k in range(2, w_max + 1):
        terms.append((_mono(k), _mono(k - 1), Fraction(k)))
    return DiffOp(tuple(terms), 1)


def build_V2(w_max: int) -> DiffOp:
    """V_2 = sum_{k,l} (k t_k l t_l d_{k+l-1} + (k+l+1) t_{k+l+1} d_k d_l)."""
    terms = []
    for k in range(1, w_max + 1):
        for l in range(1, w_max - k + 2):
            if k + l - 1 >= 1 and k + l <= w_max + 1:
                terms.append((_mono(k, l), _mono(k + l - 1), Fraction(k * l)))
            if k + l + 1 <= w_max:
                terms.append((_mono(k + l + 1), exps_mul(_mono(k), _mono(l)), Fraction(k + l + 1)))
    return DiffOp(tuple(terms), 1)


def diagonal_Qk(k: int, lam: Partition) -> Fraction:
    """Eigenvalue of Q_k on s_lambda: |lambda| for k = 0, else sum of content^k."""
    if k == 0:
        return Fraction(lam.weight)
    return sum((Fraction(c) ** k for c in lam.contents()), Fraction(0))


def schur_eigen_check(weight_max: int = 6, commutator_weight: int = 8) -> dict:
    """Explicit Q_0, Q_1, Q_2 have every s_lambda as eigenvector with the
    content-power eigenvalue; [Q_1, Q_2] = 0 on the low-weight component."""
    failures = []
    checks = 0
    ops = {k: build_Qk(k, weight_max) for k in (0, 1, 2)}
    for lam in partitions_up_to(weight_max):
        s_lam = schur_to_power(lam, 0, weight_max)
        for k, op in ops.items():
            got = op.apply(s_lam)
            want = s_lam.scale(diagonal_Qk(k, lam))
            checks += 1
            if got != want:
                failures.append({"k": k, "lambda": lam.parts})
    q1 = build_Qk(1, commutator_weight)
    q2 = build_Qk(2, commutator_weight)
    for lam in partitions_up_to(commutator_weight):
        mono = GradedPoly(
            {(monomial_from_partition(lam.parts), (), 0): BetaSeries.one(0)},
            commutator_weight,
            0,
        )
        left = q1.apply(q2.apply(mono))
        right = q2.apply(q1.apply(mono))
        checks += 1
        if left != right:
            failures.append({"commutator": lam.parts})
    return {"ok": not failures, "checks": checks, "failures": failures}


def _family_signs(family: WeightFamily, k_max: int) -> list[Fraction]:
    """sign_k A_k with sign (-1)^{k+1} for direct families and +1 for the dual,
    so that log(G(beta x)) = sum_k sign_k A_k (beta x)^k in both cases."""
    a = log_A_coeffs(family, k_max)
    if family.kind == DUAL_FINITE_C:
        return a
    return [(-1) ** (k + 1) * a[k - 1] for k in range(1, k_max + 1)]


def diagonal_exponent(family: WeightFamily, lam: Partition, d_max: int) -> BetaSeries:
    """exp(sum_k sign_k beta^k A_k Q_k-eigenvalue), the content-product rebuilt
    from the log-expansion data."""
    signed = _family_signs(family, d_max)
    expo = BetaSeries.zero(d_max)
    beta = BetaSeries.variable(d_max) if d_max >= 1 else None
    for k in range(1, d_max + 1):
        coeff = signed[k - 1] * diagonal_Qk(k, lam)
        if coeff:
            expo = expo + beta.shift(k - 1) * coeff
    return series_exp(expo)


def reconstruct_tau(family: WeightFamily, w_max: int, d_max: int) -> dict:
    """Diagonal cut-and-join reconstruction against the content-product tau.

    Every Schur sector of exp(sum k t_k s_k) is multiplied by
    exp(sum_k sign_k beta^k A_k q_k(lambda)); the result must match build_tau
    coefficient by coefficient.  The explicit-operator form with Q_1, Q_2 is
    additionally checked through beta^2.
    """
    tau = build_tau(family, w_max, d_max)
    terms: dict = {}
    for lam in partitions_up_to(w_max):
        factor = diagonal_exponent(family, lam, d_max)
        tmap = schur_monomial_map(lam)
        for t_exp, a in tmap.items():
            for s_exp, b in tmap.items():
                key = (t_exp, s_exp, lam.weight)
                contrib = factor * (a * b)
                terms[key] = terms.get(key, BetaSeries.zero(d_max)) + contrib
    rebuilt = GradedPoly(terms, w_max, d_max)
    diagonal_ok = rebuilt == tau.body

    # explicit operator route through beta^2: exp(A_1 beta Q_1 + sign A_2 beta^2 Q_2)
    signed = _family_signs(family, min(2, d_max))
    base = cauchy_kernel(w_max, d_max)
    q1 = build_Qk(1, w_max)
    q2 = build_Qk(2, w_max)

    def x_apply(p):
        out = q1.apply(p).scale(BetaSeries.variable(d_max) * signed[0])
        if len(signed) > 1 and signed[1]:
            out = out + q2.apply(p).scale(BetaSeries.variable(d_max).shift(1) * signed[1])
        return out

    series = base
    power = base
    for m in range(1, 3):
        power = x_apply(power)
        series = series + power.scale(Fraction(1, factorial(m)))
    operator_ok = _equal_through_order(series, tau.body, min(2, d_max))
    return {
        "ok": diagonal_ok and operator_ok,
        "diagonal_ok": diagonal_ok,
        "operator_ok_through_beta2": operator_ok,
        "rebuilt": rebuilt,
    }


def _equal_through_order(p: GradedPoly, q: GradedPoly, order: int) -> bool:
    keys = set(p.terms) | set(q.terms)
    zero = BetaSeries.zero(p.d_max)
    for key in keys:
        a = p.terms.get(key, zero)
        b = q.terms.get(key, zero)
        if any(a[d] != b[d] for d in range(order + 1)):
            return False
    return True


def pde_check(family: WeightFamily, w_max: int, d_max: int) -> dict:
    """The three parametric identities, verified per (t, s)-monomial.

    * gamma d/dgamma tau = Q_0 tau: the grade times each coefficient equals the
      explicit Q_0 action.
    * d/dA_k tau = sign_k beta^k Q_k tau (k = 1, 2): the A_k-derivative is
      computed symbolically through the per-sector exponential of the
      reconstruction; the right side applies the explicit operator to the
      content-product tau.
    * beta d/dbeta tau = sum_k k A_k d/dA_k tau, as exact beta-series.
    """
    tau = build_tau(family, w_max, d_max)
    body = tau.body
    failures = []

    q0 = build_Qk(0, w_max)
    got = q0.apply(body)
    want = GradedPoly(
        {key: coeff * key[2] for key, coeff in body.terms.items()}, w_max, d_max
    )
    if got != want:
        failures.append("gamma-derivative (Q_0)")

    signed = _family_signs(family, d_max)
    beta = BetaSeries.variable(d_max)
    # per-sector data for the symbolic A_k derivatives
    sector_terms = {}
    for lam in partitions_up_to(w_max):
        factor = diagonal_exponent(family, lam, d_max)
        tmap = schur_monomial_map(lam)
        for t_exp, a in tmap.items():
            for s_exp, b in tmap.items():
                key = (t_exp, s_exp, lam.weight)
                sector_terms.setdefault(key, []).append((lam, a * b, factor))

    # dA_k tau = sign_k beta^k Q_k tau; both sides carry sign_k beta^k, so the
    # content to verify is (diagonal q_k-weighted sectors) == (explicit Q_k tau)
    for k in (1, 2):
        if k > d_max:
            continue
        qk = build_Qk(k, w_max)
        rhs = qk.apply(body)
        ok = True
        for key in set(sector_terms) | set(rhs.terms):
            lhs_series = BetaSeries.zero(d_max)
            for lam, weight, factor in sector_terms.get(key, []):
                lhs_series = lhs_series + factor * (weight * diagonal_Qk(k, lam))
            rhs_series = rhs.terms.get(key, BetaSeries.zero(d_max))
            if lhs_series != rhs_series:
                ok = False
                break
        if not ok:
            failures.append(f"A_{k}-derivative")

    # Euler identity in beta: k A_k dA_k contributes k sign_k A_k q_k(lam) beta^k
    ok = True
    for key, coeff in body.terms.items():
        lhs = BetaSeries([d * coeff[d] for d in range(d_max + 1)])
        rhs = BetaSeries.zero(d_max)
        for lam, weight, factor in sector_terms.get(key, []):
            scale = BetaSeries.zero(d_max)
            for k in range(1, d_max + 1):
                c = k * signed[k - 1] * diagonal_Qk(k, lam)
                if c:
                    scale = scale + beta.shift(k - 1) * c
            rhs = rhs + factor * scale * weight
        if lhs != rhs:
            ok = False
            break
    if not ok:
        failures.append("beta-Euler identity")
    return {"ok": not failures, "failures": failures}


def build_Vk_and_single_rep(family: WeightFamily, w_max: int) -> dict:
    """Single-Hurwitz representation: per gamma-sector,
    tau(t, s = delta_{k,1}) == exp(gamma (t_1 + sum_{k<=M} g_k beta^k V_k)) . 1."""
    if family.kind != FINITE_C:
        raise ConfigurationError("single-Hurwitz V_k representation needs polynomial G")
    M = len(family.c)
    if M > 2:
        raise UnsupportedDegreeError("explicit V_k available only for M <= 2")
    from .weights import g_coeff

    d_max = max(M * w_max, 1)
    beta = BetaSeries.variable(d_max)
    ops = [build_V1(w_max)]
    if M == 2:
        ops.append(build_V2(w_max))

    def x_apply(p: GradedPoly) -> GradedPoly:
        t1 = GradedPoly(
            {((1,), (), 1): BetaSeries.one(d_max)}, w_max, d_max
        )
        out = t1 * p
        for k, op in enumerate(ops, start=1):
            gk = g_coeff(family, k)
            if gk:
                out = out + op.apply(p).scale(beta.shift(k - 1) * gk)
        return out

    sectors = [GradedPoly.one(w_max, d_max)]
    current = GradedPoly.one(w_max, d_max)
    for n in range(1, w_max + 1):
        current = x_apply(current)
        sectors.append(current.scale(Fraction(1, factorial(n))))

    # tau with s evaluated at s_1 = 1: sector N is sum_lam r_lam (dim/N!) s_lam(t)
    failures = []
    for n in range(w_max + 1):
        want_terms: dict = {}
        for lam in enumerate_partitions(n):
            from .weights import content_product

            r = content_product(family, lam, 0, d_max).value
            dim = char_table(n).chi(lam, Partition([1] * n)) if n else 1
            scale = Fraction(dim, factorial(n))
            for t_exp, a in schur_monomial_map(lam).items():
                key = (t_exp, (), n)
                contrib = r * (a * scale)
                want_terms[key] = want_terms.get(key, BetaSeries.zero(d_max)) + contrib
        want = GradedPoly(want_terms, w_max, d_max)
        if sectors[n] != want:
            failures.append(n)
    return {"ok": not failures, "failing_sectors": failures, "M": M}


def resolve_exponential_index(w_max: int = 3, d_max: int = 3) -> dict:
    """Which single cut-and-join exponential reproduces the simple-Hurwitz tau:
    exp(beta Q_1) (the log-expansion index) or exp(beta Q_2) (the index as
    printed in the source derivation)?"""
    tau = build_tau(WeightFamily("exponential"), w_max, d_max)
    base = cauchy_kernel(w_max, d_max)
    beta = BetaSeries.variable(d_max)
    results = {}
    for k in (1, 2):
        op = build_Qk(k, w_max)
        series = base
        power = base
        for m in range(1, d_max + 1):
            power = op.apply(power).scale(beta)
            series = series + power.scale(Fraction(1, factorial(m)))
        results[k] = series == tau.body
    return {"matching_index": [k for k, v in results.items() if v], "results": results}
