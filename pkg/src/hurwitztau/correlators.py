"""Pair correlators by two constructions, the Christoffel-Darboux matrix with
its finite-rank property and generating function, the h-orthogonality lemma,
and the two-pair determinantal identity.

Conventions (pinned by exact verification, see tests): all kernels live in the
|z| > |w| regime, where

    K2(z, w)      = sum_{j>=1} w_j(w) w*_{1-j}(z)
                  = [1/(z-w) expansion] + hook contributions, and
    (z-w) K2(z,w) = gamma * sum_{i,j=0}^{LM} A_{ij} w_{1-i}(w) w*_{1-j}(z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .adaptedbasis import BasisWindow
from .errors import ConfigurationError, OutOfWindowError
from .exactalg import BRing, QRing
from .partitions import Partition, enumerate_partitions, partitions_up_to
from .symfun import character, h_of_sigma, schur_at_sigma
from .weights import (
    FINITE_C,
    WeightFamily,
    content_product,
    content_product_value,
    g_coeff,
    g_value,
    r_factor,
)


@dataclass(frozen=True)
class KernelWindow:
    """Rectangular window of a two-variable Laurent kernel, |z| > |w| regime.

    Cells outside the rectangle are unknown, except that every kernel here has
    only negative z-exponents, so cells with ez >= 0 are known zero.
    """

    zlo: int
    zhi: int
    wlo: int
    whi: int
    cells: dict  # (ez, ew) -> scalar

    def cell(self, ez: int, ew: int, ring):
        if ez >= 0:
            return ring.zero()
        if not (self.zlo <= ez <= self.zhi and self.wlo <= ew <= self.whi):
            raise OutOfWindowError(f"kernel cell ({ez}, {ew}) outside window")
        return self.cells.get((ez, ew), ring.zero())


def _ring_for(beta_val, d_max):
    if beta_val is None:
        if d_max is None:
            raise ConfigurationError("series mode needs d_max")
        return BRing(d_max), None
    return QRing(), Fraction(beta_val)


def _hook_r(family, a: int, b: int, beta, ring):
    hook = Partition([a + 1] + [1] * b)
    if beta is None:
        return content_product(family, hook, 0, ring.d_max).value
    return ring.coerce(content_product_value(family, hook, beta))


def K2_via_tau(
    family: WeightFamily,
    beta_val,
    gamma_val,
    sigma,
    window: tuple,
    d_max: int | None = None,
) -> KernelWindow:
    """K2(z, w) = tau([w^{-1}] - [z^{-1}]) / (z - w).

    Only the empty partition and hooks survive the difference-alphabet
    evaluation: the hook (a|b) contributes on the single cell
    (z^{-b-1}, w^{-a-1}), and the empty partition gives the geometric
    expansion of 1/(z-w).
    """
    ring, beta = _ring_for(beta_val, d_max)
    gamma_val = Fraction(gamma_val)
    sigma = tuple(Fraction(x) for x in sigma)
    zlo, zhi, wlo, whi = window
    cells = {}
    for m in range(0, whi + 1):
        ez, ew = -m - 1, m
        if zlo <= ez <= zhi and wlo <= ew:
            cells[(ez, ew)] = ring.one()
    for ez in range(zlo, min(zhi, -1) + 1):
        for ew in range(wlo, min(whi, -1) + 1):
            a, b = -ew - 1, -ez - 1
            r = _hook_r(family, a, b, beta, ring)
            s_val = schur_at_sigma(Partition([a + 1] + [1] * b), sigma)
            value = r * (gamma_val ** (a + b + 1) * (-1) ** b * s_val)
            if not ring.is_zero(value):
                cells[(ez, ew)] = cells.get((ez, ew), ring.zero()) + value
    return KernelWindow(zlo, zhi, wlo, whi, cells)


def K2_via_basis(b: BasisWindow, window: tuple) -> tuple[KernelWindow, dict]:
    """K2(z, w) = sum_{j >= 1} w_j(w) w*_{1-j}(z), cell by cell.

    Each cell (ez, ew) receives contributions only from max(1, ew+1) <= j <= -ez,
    so the sum stabilizes; the largest j consulted is reported.
    """
    zlo, zhi, wlo, whi = window
    ring = b.ring
    j_max_needed = -zlo
    if b.k_hi < j_max_needed or b.k_lo > min(0, 1 - j_max_needed):
        raise OutOfWindowError(
            f"basis k-range [{b.k_lo}, {b.k_hi}] cannot cover j up to {j_max_needed}"
        )
    if b.depth > zlo or b.depth > wlo:
        raise OutOfWindowError("basis windows too shallow for the requested kernel window")
    cells = {}
    j_used = 0
    for ez in range(zlo, min(zhi, -1) + 1):
        for ew in range(wlo, whi + 1):
            total = ring.zero()
            for j in range(max(1, ew + 1), -ez + 1):
                total = total + b.w[j].get(ew, ring) * b.ws[1 - j].get(ez, ring)
                j_used = max(j_used, j)
            if not ring.is_zero(total):
                cells[(ez, ew)] = total
    return KernelWindow(zlo, zhi, wlo, whi, cells), {"j_cutoff": j_used}


def kernels_equal(k1: KernelWindow, k2: KernelWindow, ring) -> bool:
    zlo = max(k1.zlo, k2.zlo)
    zhi = min(k1.zhi, k2.zhi)
    wlo = max(k1.wlo, k2.wlo)
    whi = min(k1.whi, k2.whi)
    for ez in range(zlo, zhi + 1):
        for ew in range(wlo, whi + 1):
            if k1.cell(ez, ew, ring) != k2.cell(ez, ew, ring):
                return False
    return True


# ---------------------------------------------------------------------------
# Christoffel-Darboux matrix.
# ---------------------------------------------------------------------------


def cd_matrix(
    family: WeightFamily,
    beta_val,
    sigma,
    bounds: int,
    d_max: int | None = None,
) -> dict:
    """A_{ij} for 0 <= i, j <= bounds, by both published formulas (compared).

    A_00 = 1, A_{0j} = A_{i0} = 0 and for i, j >= 1
        A_{ij} = -sum_{k=-i}^{j} G(beta k) h_{j-k}(-sigma) h_{i+k}(sigma)
               = -sum_{n=0}^{i+j} G(beta (j-n)) h_n(-sigma) h_{i+j-n}(sigma).
    """
    ring, beta = _ring_for(beta_val, d_max)
    sigma = tuple(Fraction(x) for x in sigma)

    def g_at(k):
        if beta is None:
            return r_factor(family, k, ring.d_max)
        return ring.coerce(g_value(family, beta * k))

    out = {}
    for i in range(bounds + 1):
        for j in range(bounds + 1):
            if i == 0 and j == 0:
                out[(i, j)] = ring.one()
                continue
            if i == 0 or j == 0:
                out[(i, j)] = ring.zero()
                continue
            acc = ring.zero()
            for k in range(-i, j + 1):
                acc = acc + g_at(k) * (h_of_sigma(j - k, sigma, -1) * h_of_sigma(i + k, sigma, 1))
            first = -acc
            acc2 = ring.zero()
            for n in range(0, i + j + 1):
                acc2 = acc2 + g_at(j - n) * (
                    h_of_sigma(n, sigma, -1) * h_of_sigma(i + j - n, sigma, 1)
                )
            second = -acc2
            if first != second:
                raise AssertionError(f"CD formulas disagree at ({i},{j})")
            out[(i, j)] = first
    return out


def cd_kernel(b: BasisWindow, window: tuple, margin: int = 3) -> dict:
    """Assemble the finite-rank kernel numerator and verify the CD identity.

    With L = sigma support and M = deg G, checks
      * A_{ij} = 0 for all i + j > LM up to i + j <= LM + margin;
      * gamma * sum_{i,j<=LM} A_{ij} w_{1-i}(w) w*_{1-j}(z) == (z-w) K2(z,w)
        on the window, against the tau-route kernel.
    """
    if b.family.kind != FINITE_C:
        raise ConfigurationError("finite-rank kernel needs a polynomial G")
    ring = b.ring
    L = b.sigma_support
    M = len(b.family.c)
    rank = L * M
    beta_mode = b.beta if b.beta is not None else None
    d_max = None if b.beta is not None else ring.d_max
    A = cd_matrix(b.family, beta_mode, b.sigma, rank + margin, d_max=d_max)
    finiteness_failures = [
        (i, j)
        for (i, j), v in A.items()
        if i + j > rank and not ring.is_zero(v)
    ]
    zlo, zhi, wlo, whi = window
    if b.k_lo > 1 - rank or b.k_hi < 1:
        raise OutOfWindowError(f"basis k-range must cover [1-{rank}, 1]")
    numer = {}
    for ez in range(zlo, zhi + 1):
        for ew in range(wlo, whi + 1):
            total = ring.zero()
            for i in range(rank + 1):
                for j in range(rank + 1):
                    a = A[(i, j)]
                    if ring.is_zero(a):
                        continue
                    total = total + a * b.w[1 - i].get(ew, ring) * b.ws[1 - j].get(ez, ring)
            numer[(ez, ew)] = total * b.gamma
    k2 = K2_via_tau(
        b.family,
        b.beta,
        b.gamma,
        b.sigma,
        (zlo - 1, zhi, wlo - 1, whi),
        d_max=d_max,
    )
    identity_failures = []
    for ez in range(zlo, zhi + 1):
        for ew in range(wlo, whi + 1):
            lhs = numer[(ez, ew)]
            rhs = k2.cell(ez - 1, ew, ring) - k2.cell(ez, ew - 1, ring)
            if lhs != rhs:
                identity_failures.append((ez, ew))
    return {
        "ok": not finiteness_failures and not identity_failures,
        "rank": rank,
        "finiteness_failures": finiteness_failures,
        "identity_failures": identity_failures,
        "A": A,
        "numerator": KernelWindow(zlo, zhi, wlo, whi, numer),
    }


# ---------------------------------------------------------------------------
# Generating function for the CD matrix.
# ---------------------------------------------------------------------------


def gen_A(
    family: WeightFamily,
    sigma,
    degrees: tuple,
    beta_val=1,
    d_max: int | None = None,
) -> dict:
    """A(r,t) = [r G(S(t) - t d/dt) - t G(S(r) + r d/dr)] 1/(r-t), expanded.

    Computed in the beta-rescaled normalization: the operator argument uses
    sigma and the effective Taylor weights g_m beta^m, which reproduces
    A_{ij}(beta, s) exactly.  Returns {(i, j): coefficient} for
    0 <= i <= degrees[0], 0 <= j <= degrees[1]; negative r-power cells are
    verified to cancel and trigger an AssertionError otherwise.
    """
    if family.kind != FINITE_C:
        raise ConfigurationError("gen_A needs a polynomial G")
    ring, beta = _ring_for(beta_val, d_max)
    sigma = tuple(Fraction(x) for x in sigma)
    big_m = len(family.c)
    L = len(sigma)
    imax, jmax = degrees
    # effective Taylor weights g_m beta^m of G(beta x)
    if beta is None:
        from .exactalg import BetaSeries

        ghat = [
            BetaSeries.constant(g_coeff(family, m), ring.d_max).shift(m)
            if m <= ring.d_max
            else ring.zero()
            for m in range(big_m + 1)
        ]
    else:
        ghat = [ring.coerce(g_coeff(family, m) * beta**m) for m in range(big_m + 1)]

    m_max = max(imax + jmax + big_m * L + 2, jmax + 1)

    def apply_xt(poly):
        # X_t = S_sigma(t) - t d/dt with S_sigma(t) = sum_k k sigma_k t^k
        out = [ring.zero()] * (len(poly) + L)
        for e, c in enumerate(poly):
            if ring.is_zero(c):
                continue
            for k, s in enumerate(sigma, start=1):
                if s != 0:
                    out[e + k] = out[e + k] + c * (k * s)
            out[e] = out[e] - c * e
        return out

    def apply_xr(poly, lo):
        # X_r = S_sigma(r) + r d/dr on Laurent coefficients starting at lo
        out = [ring.zero()] * (len(poly) + L)
        for idx, c in enumerate(poly):
            if ring.is_zero(c):
                continue
            e = lo + idx
            for k, s in enumerate(sigma, start=1):
                if s != 0:
                    out[idx + k] = out[idx + k] + c * (k * s)
            out[idx] = out[idx] + c * e
        return out

    cells: dict = {}

    def add_cell(i, j, v):
        if ring.is_zero(v):
            return
        cells[(i, j)] = cells.get((i, j), ring.zero()) + v

    for m in range(m_max + 1):
        # term 1: r * Ghat(X_t) t^m r^{-m-1} -> cells (-m, *)
        tpoly = [ring.zero()] * m + [ring.one()]
        acc = [ring.zero()] * len(tpoly)
        power = tpoly
        for q in range(big_m + 1):
            if q > 0:
                power = apply_xt(power)
            gq = ghat[q]
            if ring.is_zero(gq):
                continue
            if len(acc) < len(power):
                acc = acc + [ring.zero()] * (len(power) - len(acc))
            for e, c in enumerate(power):
                acc[e] = acc[e] + gq * c
        for e, c in enumerate(acc):
            add_cell(-m, e, c)
        # term 2: -t * Ghat(X_r) r^{-m-1} t^m -> cells (*, m+1)
        rpoly = [ring.one()]
        lo = -m - 1
        acc_r = [ring.zero()] * len(rpoly)
        power_r = rpoly
        for q in range(big_m + 1):
            if q > 0:
                power_r = apply_xr(power_r, lo)
            gq = ghat[q]
            if ring.is_zero(gq):
                continue
            if len(acc_r) < len(power_r):
                acc_r = acc_r + [ring.zero()] * (len(power_r) - len(acc_r))
            for idx, c in enumerate(power_r):
                acc_r[idx] = acc_r[idx] + gq * c
        for idx, c in enumerate(acc_r):
            add_cell(lo + idx, m + 1, -c)

    # negative r-powers must cancel wherever all contributions are inside m_max
    for (i, j), v in cells.items():
        if i < 0 and j <= jmax and -i <= m_max - big_m * L - 1:
            if not ring.is_zero(v):
                raise AssertionError(f"gen_A: uncancelled negative cell ({i},{j})")
    return {
        (i, j): cells.get((i, j), ring.zero())
        for i in range(imax + 1)
        for j in range(jmax + 1)
    }


# ---------------------------------------------------------------------------
# Orthogonality lemma and the two-pair determinant identity.
# ---------------------------------------------------------------------------


def h_orthogonality(s, k_max: int, n_max: int) -> dict:
    """sum_n n^k h_n(-s) h_{N-n}(s), which vanishes for all N > kL.

    The n = 0 term is included with the convention 0^0 = 1, so the k = 0 row
    is the plain inverse-series identity; for k >= 1 it contributes nothing.
    """
    s = tuple(Fraction(x) for x in s)
    L = 0
    for i, v in enumerate(s, start=1):
        if v != 0:
            L = i
    rows = {}
    ok = True
    for k in range(k_max + 1):
        for N in range(1, n_max + 1):
            value = sum(
                (
                    Fraction(n) ** k * h_of_sigma(n, s, -1) * h_of_sigma(N - n, s, 1)
                    for n in range(0, N + 1)
                ),
                Fraction(0),
            )
            rows[(k, N)] = value
            if N > k * L and value != 0:
                ok = False
    return {"ok": ok, "L": L, "values": rows}


def _dict4_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            out[key] = out.get(key, Fraction(0)) + va * vb
    return {k: v for k, v in out.items() if v}


def _pair_T(family, beta, gamma, sigma, ring, zdepth: int, wdepth: int) -> dict:
    """T(z, w) = tau([w^{-1}] - [z^{-1}]) = (z - w) K2(z, w), as exact cells.

    Hook (a|b) contributes on cells (-b, -a-1) and (-b-1, -a) with opposite
    signs; the empty partition gives the cell (0, 0).
    """
    cells = {(0, 0): ring.one()}
    for a in range(0, wdepth):
        for b_leg in range(0, zdepth):
            hook = Partition([a + 1] + [1] * b_leg)
            r = _hook_r(family, a, b_leg, beta, ring)
            val = r * (gamma ** (a + b_leg + 1) * (-1) ** b_leg * schur_at_sigma(hook, sigma))
            if ring.is_zero(val):
                continue
            for key, sign in (((-b_leg, -a - 1), 1), ((-b_leg - 1, -a), -1)):
                cells[key] = cells.get(key, ring.zero()) + val * sign
    return {k: v for k, v in cells.items() if not ring.is_zero(v)}


def multipair_two_point(
    family: WeightFamily,
    beta_val,
    gamma_val,
    sigma,
    degree: int = 4,
    d_max: int | None = None,
) -> dict:
    """The n = 2 determinantal identity, cleared of denominators.

    Verifies, on all cells of total inverse degree <= degree - 2,
        -tau(X) (z1-z2)(w1-w2)
          == T(z1,w1) T(z2,w2) (z1-w2)(z2-w1) - T(z1,w2) T(z2,w1) (z1-w1)(z2-w2)
    where X = [w1^{-1}] + [w2^{-1}] - [z1^{-1}] - [z2^{-1}] and
    T(z,w) = tau([w^{-1}] - [z^{-1}]).  This is the two-pair correlator
    determinant identity with every 1/(z_i - w_j) multiplied through.
    """
    ring, beta = _ring_for(beta_val, d_max)
    gamma_val = Fraction(gamma_val)
    sigma = tuple(Fraction(x) for x in sigma)
    D = degree

    # tau(X) through total degree D via the character formula
    def p_of(k):
        return {
            (0, 0, -k, 0): Fraction(1),
            (0, 0, 0, -k): Fraction(1),
            (-k, 0, 0, 0): Fraction(-1),
            (0, -k, 0, 0): Fraction(-1),
        }

    tau_x: dict = {(0, 0, 0, 0): ring.one()}
    for lam in partitions_up_to(D):
        if lam.weight == 0:
            continue
        r = (
            content_product(family, lam, 0, ring.d_max).value
            if beta is None
            else ring.coerce(content_product_value(family, lam, beta))
        )
        weight = r * (gamma_val**lam.weight * schur_at_sigma(lam, sigma))
        if ring.is_zero(weight):
            continue
        s_x: dict = {}
        for mu in enumerate_partitions(lam.weight):
            chi = character(lam, mu)
            if not chi:
                continue
            term = {(0, 0, 0, 0): Fraction(chi, mu.z_order())}
            for part in mu.parts:
                term = _dict4_mul(term, p_of(part))
            for key, v in term.items():
                s_x[key] = s_x.get(key, Fraction(0)) + v
        for key, v in s_x.items():
            if v:
                tau_x[key] = tau_x.get(key, ring.zero()) + weight * v

    t_cells = _pair_T(family, beta, gamma_val, sigma, ring, D + 2, D + 2)

    def lift(cells, slots):
        # place a 2-variable dict into the 4-variable key layout
        out = {}
        for (ez, ew), v in cells.items():
            key = [0, 0, 0, 0]
            key[slots[0]], key[slots[1]] = ez, ew
            out[tuple(key)] = v
        return out

    def poly(*pairs):
        # (z_i - w_j) as a 4-variable dict; slots: z1 z2 w1 w2
        out = {}
        for slot, coeff in pairs:
            key = [0, 0, 0, 0]
            key[slot] = 1
            out[tuple(key)] = Fraction(coeff)
        return out

    z1, z2, w1, w2 = 0, 1, 2, 3
    lhs = _dict4_mul_ring(tau_x, poly((z1, 1), (z2, -1)), ring)
    lhs = _dict4_mul_ring(lhs, poly((w1, 1), (w2, -1)), ring)
    lhs = {k: -v for k, v in lhs.items()}

    t11 = lift(t_cells, (z1, w1))
    t22 = lift(t_cells, (z2, w2))
    t12 = lift(t_cells, (z1, w2))
    t21 = lift(t_cells, (z2, w1))
    term1 = _dict4_mul_ring(t11, t22, ring)
    term1 = _dict4_mul_ring(term1, poly((z1, 1), (w2, -1)), ring)
    term1 = _dict4_mul_ring(term1, poly((z2, 1), (w1, -1)), ring)
    term2 = _dict4_mul_ring(t12, t21, ring)
    term2 = _dict4_mul_ring(term2, poly((z1, 1), (w1, -1)), ring)
    term2 = _dict4_mul_ring(term2, poly((z2, 1), (w2, -1)), ring)
    rhs = dict(term1)
    for k, v in term2.items():
        rhs[k] = rhs.get(k, ring.zero()) - v

    mismatches = []
    keys = set(lhs) | set(rhs)
    for key in keys:
        if -sum(key) > D - 2 or any(e < -D for e in key):
            continue
        lv = lhs.get(key, ring.zero())
        rv = rhs.get(key, ring.zero())
        if lv != rv:
            mismatches.append(key)
    # antisymmetry under z1 <-> z2 on the safe window (degenerate-point control)
    antisym = True
    for key, v in lhs.items():
        if -sum(key) > D - 2 or any(e < -D for e in key):
            continue
        swapped = (key[1], key[0], key[2], key[3])
        if lhs.get(swapped, ring.zero()) != -v:
            antisym = False
            break
    return {"ok": not mismatches, "mismatches": sorted(mismatches)[:5], "antisymmetric": antisym}


def _dict4_mul_ring(a: dict, b: dict, ring) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            prev = out.get(key)
            term = va * vb
            out[key] = term if prev is None else prev + term
    return {k: v for k, v in out.items() if not ring.is_zero(v)}
