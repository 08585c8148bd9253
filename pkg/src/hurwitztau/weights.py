"""Weight generating functions G / G-dual and their derived data: Taylor
coefficients, content products, the convolution coefficients rho_j, and the
log-expansion data (A_k and the telescoping polynomials p_k)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ConfigurationError, DomainError, SingularParameterError
from .exactalg import BetaSeries, series_inv
from .partitions import Partition
from .symfun import complete_list, elementary_list, eval_basis

FINITE_C = "finite_c"
DUAL_FINITE_C = "dual_finite_c"
EXPONENTIAL = "exponential"
QUANTUM = "quantum"

_KINDS = (FINITE_C, DUAL_FINITE_C, EXPONENTIAL, QUANTUM)


@dataclass(frozen=True)
class WeightFamily:
    """A weight generating function.

    finite_c:      G(z) = prod_i (1 + z c_i)            (polynomial, degree M = len(c))
    dual_finite_c: G(z) = prod_i (1 - z c_i)^{-1}        (dual family)
    exponential:   G(z) = e^z
    quantum:       G(z) = prod_{i>=1} (1 + q^i z)
    """

    kind: str
    c: tuple = ()
    q: Fraction | None = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ConfigurationError(f"unknown weight family kind {self.kind!r}")
        object.__setattr__(self, "c", tuple(Fraction(x) for x in self.c))
        if self.kind == QUANTUM:
            if self.q is None:
                raise ConfigurationError("quantum family needs q")
            object.__setattr__(self, "q", Fraction(self.q))
            if not 0 < self.q < 1:
                raise ConfigurationError("quantum family needs 0 < q < 1")
        if not self.label:
            object.__setattr__(self, "label", self._default_label())

    def _default_label(self) -> str:
        if self.kind == FINITE_C:
            return "G(z)=prod(1+z c_i), c=" + str([str(x) for x in self.c])
        if self.kind == DUAL_FINITE_C:
            return "G(z)=prod(1-z c_i)^-1, c=" + str([str(x) for x in self.c])
        if self.kind == EXPONENTIAL:
            return "G(z)=exp(z)"
        return f"G(z)=prod(1+q^i z), q={self.q}"

    @property
    def degree(self) -> int | None:
        """Polynomial degree M of G, or None when G is not a polynomial."""
        return len(self.c) if self.kind == FINITE_C else None

    @property
    def is_dual(self) -> bool:
        return self.kind == DUAL_FINITE_C


def belyi() -> WeightFamily:
    return WeightFamily(FINITE_C, c=(1,), label="belyi")


def exponential() -> WeightFamily:
    return WeightFamily(EXPONENTIAL, label="exp")


def signed() -> WeightFamily:
    return WeightFamily(DUAL_FINITE_C, c=(1,), label="signed")


def quantum(q) -> WeightFamily:
    return WeightFamily(QUANTUM, q=Fraction(q), label=f"quantum(q={Fraction(q)})")


@lru_cache(maxsize=None)
def _quantum_g(q: Fraction, i: int) -> Fraction:
    # e_i(q, q^2, ...) = q^{i(i+1)/2} / prod_{j=1..i} (1 - q^j)
    num = q ** (i * (i + 1) // 2)
    den = Fraction(1)
    for j in range(1, i + 1):
        den *= 1 - q**j
    return num / den


def g_coeff(family: WeightFamily, i: int) -> Fraction:
    """Taylor coefficient of z^i in the family's generating function."""
    if i < 0:
        raise DomainError("Taylor index must be nonnegative")
    if i == 0:
        return Fraction(1)
    if family.kind == FINITE_C:
        return elementary_list(family.c, i)[i] if i <= len(family.c) else Fraction(0)
    if family.kind == DUAL_FINITE_C:
        return complete_list(family.c, i)[i]
    if family.kind == EXPONENTIAL:
        out = Fraction(1)
        for k in range(2, i + 1):
            out /= k
        return out
    return _quantum_g(family.q, i)


def r_factor(family: WeightFamily, j: int, d_max: int) -> BetaSeries:
    """G(j beta) as a truncated beta-series; r_0 = 1."""
    coeffs = [g_coeff(family, i) * Fraction(j) ** i for i in range(d_max + 1)]
    return BetaSeries(coeffs)


def g_value(family: WeightFamily, x: Fraction) -> Fraction:
    """Exact value G(x) at a rational point (finite_c / dual_finite_c only)."""
    x = Fraction(x)
    if family.kind == FINITE_C:
        out = Fraction(1)
        for ci in family.c:
            out *= 1 + x * ci
        return out
    if family.kind == DUAL_FINITE_C:
        out = Fraction(1)
        for ci in family.c:
            factor = 1 - x * ci
            if factor == 0:
                raise SingularParameterError(
                    f"dual generating function has a pole at x={x} (c_i={ci})"
                )
            out *= factor
        return 1 / out
    raise ConfigurationError(
        f"{family.kind} family has no exact rational evaluation; keep beta as a series"
    )


@dataclass(frozen=True)
class ContentProduct:
    lam: Partition
    shift: int
    value: BetaSeries


def content_product(
    family: WeightFamily, lam: Partition, shift_N: int = 0, d_max: int = 0
) -> ContentProduct:
    """prod over cells (i,j) of G(beta (N + j - i)), truncated at d_max."""
    out = BetaSeries.one(d_max)
    for c in lam.contents():
        out = out * r_factor(family, shift_N + c, d_max)
    return ContentProduct(lam, shift_N, out)


def content_product_value(
    family: WeightFamily, lam: Partition, beta_val: Fraction, shift_N: int = 0
) -> Fraction:
    """The same content product evaluated exactly at rational beta."""
    beta_val = Fraction(beta_val)
    out = Fraction(1)
    for c in lam.contents():
        out *= g_value(family, (shift_N + c) * beta_val)
    return out


def rho(family: WeightFamily, j: int, beta_val: Fraction, gamma_val: Fraction) -> Fraction:
    """Convolution coefficient rho_j at rational parameters, normalized rho_0 = 1.

    rho_j = gamma^j prod_{i=1..j} G(i beta);
    rho_{-j} = gamma^{-j} prod_{i=0..j-1} G(-i beta)^{-1}, which is singular
    whenever one of the denominators G(-i beta) vanishes.
    """
    beta_val, gamma_val = Fraction(beta_val), Fraction(gamma_val)
    if gamma_val == 0:
        raise SingularParameterError("gamma must be nonzero")
    if j == 0:
        return Fraction(1)
    if j > 0:
        out = gamma_val**j
        for i in range(1, j + 1):
            out *= g_value(family, i * beta_val)
        return out
    out = gamma_val**j
    for i in range(0, -j):
        factor = g_value(family, -i * beta_val)
        if factor == 0:
            raise SingularParameterError(
                f"rho_{j} undefined: G({-i}*beta) = 0 at i={i} (beta={beta_val})"
            )
        out /= factor
    return out


def rho_series(family: WeightFamily, j: int, d_max: int, gamma_val: Fraction) -> BetaSeries:
    """rho_j with beta kept as a formal series (never singular: G(x) has constant term 1)."""
    gamma_val = Fraction(gamma_val)
    out = BetaSeries.constant(gamma_val**j, d_max)
    if j > 0:
        for i in range(1, j + 1):
            out = out * r_factor(family, i, d_max)
    else:
        for i in range(0, -j):
            out = out * series_inv(r_factor(family, -i, d_max))
    return out


def log_A_coeffs(family: WeightFamily, k_max: int) -> list[Fraction]:
    """A_k = p_k(c)/k for k = 1..k_max (power sums of the weight alphabet)."""
    out = []
    for k in range(1, k_max + 1):
        if family.kind in (FINITE_C, DUAL_FINITE_C):
            pk = sum((ci**k for ci in family.c), Fraction(0))
            out.append(pk / k)
        elif family.kind == EXPONENTIAL:
            out.append(Fraction(1) if k == 1 else Fraction(0))
        else:
            qk = family.q**k
            out.append(qk / (k * (1 - qk)))
    return out


@lru_cache(maxsize=None)
def pk_poly(k: int) -> tuple:
    """Coefficients (by ascending power, constant first) of the unique
    polynomial p_k in x*Q[x] with p_k(x) - p_k(x-1) = x^k.

    p_k has degree k+1 and p_k(m) = 1^k + ... + m^k for integer m >= 0, so it
    is recovered by Lagrange interpolation through x = 0..k+1.
    """
    if k < 0:
        raise DomainError("pk_poly index must be nonnegative")
    xs = list(range(k + 2))
    ys = []
    acc = Fraction(0)
    for m in xs:
        if m > 0:
            acc += Fraction(m) ** k
        ys.append(acc)
    # Lagrange interpolation, assembling coefficient lists exactly
    coeffs = [Fraction(0)] * (k + 2)
    for i, xi in enumerate(xs):
        # numerator polynomial prod_{j != i} (x - x_j)
        num = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = [Fraction(0)] + num
            for idx in range(len(num) - 1):
                num[idx] -= Fraction(xj) * num[idx + 1]
            denom *= xi - xj
        scale = ys[i] / denom
        for idx, cval in enumerate(num):
            coeffs[idx] += scale * cval
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def pk_eval(k: int, x) -> Fraction:
    x = Fraction(x)
    out = Fraction(0)
    for c in reversed(pk_poly(k)):
        out = out * x + c
    return out


def profile_weight(family: WeightFamily, lam: Partition) -> Fraction:
    """Weight attached to a branch-profile signature lam in the configuration sums.

    m_lambda(c) for the direct families, f_lambda(c) for the dual one.  The
    exponential family is the all-transpositions limit (only lam = (1^k)
    survives, with weight 1/k!); the quantum family has the exact closed form
    of a geometric alphabet.
    """
    if lam.weight == 0:
        return Fraction(1)
    if family.kind == FINITE_C:
        return eval_basis("m", lam, family.c)
    if family.kind == DUAL_FINITE_C:
        return eval_basis("f", lam, family.c)
    if family.kind == EXPONENTIAL:
        if all(p == 1 for p in lam.parts):
            out = Fraction(1)
            for i in range(2, lam.length + 1):
                out /= i
            return out
        return Fraction(0)
    return _quantum_monomial(family.q, lam)


def _quantum_monomial(q: Fraction, lam: Partition) -> Fraction:
    """m_lambda(q, q^2, ...) via the closed product over orderings."""
    total = Fraction(0)
    for sigma in itertools.permutations(lam.parts):
        prod = Fraction(1)
        partial = 0
        for part in sigma:
            partial += part
            prod /= q ** (-partial) - 1
        total += prod
    return total / lam.aut_order()


def path_weight(family: WeightFamily, lam: Partition) -> Fraction:
    """e_lambda (or h_lambda for the dual family) expressed through the Taylor
    data of G: prod_i g_{lam_i}."""
    out = Fraction(1)
    for part in lam.parts:
        out *= g_coeff(family, part)
    return out
