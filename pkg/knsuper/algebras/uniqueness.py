"""
Module: uniqueness.py

Truncated uniqueness of the AK(1) 1-cocycle. A cocycle
C(eps_n + a_i) = sum_r lambda_n^r eps*_r + sum_k mu_i^k a*_k is unknown on a
finite window; the cocycle condition gives the linear recursions

    lambda_{n+m}^r = lambda_m^{r+n} + lambda_n^{r+m}
    mu_{i+n}^k     = mu_i^{k+n} + (k - i) lambda_n^{i+k}
    (j - i) lambda_{i+j}^r = -mu_j^{r+i} + mu_i^{r+j}

which, with vanishing on K_3 and the normalisation lambda_1^{-1} = -1, fix the
interior of the window to lambda_n^r = -n delta_{r,-n}, mu_i^k = (k^2 - 1/4) delta_{k,-i}.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

from knsuper.core.coeffield import ONE, ZERO, Scalar, render_scalar
from knsuper.core.densities import HalfInt, window_indices
from knsuper.core.errors import DomainError, TableMismatch, UnderdeterminedInterior
from knsuper.core.linsolve import LinearSystem
from knsuper.logger.logger import log_path, setup_logger

logger = setup_logger("uniqueness", log_path("uniqueness"))

LamKey = Tuple[str, int, int]
MuKey = Tuple[str, int, int]


def lam(n: int, r: int) -> LamKey:
    return ("lambda", 2 * n, 2 * r)


def mu(i: HalfInt, k: HalfInt) -> MuKey:
    return ("mu", i.twice, k.twice)


@dataclass
class CocycleUnknowns:
    """Solved values; entries outside the solved set read as zero."""

    window: int
    lambdas: Dict[Tuple[int, int], Scalar] = field(default_factory=dict)
    mus: Dict[Tuple[Fraction, Fraction], Scalar] = field(default_factory=dict)

    def lam(self, n: int, r: int) -> Scalar:
        return self.lambdas.get((n, r), ZERO)

    def mu(self, i, k) -> Scalar:
        return self.mus.get((HalfInt.of(i).value, HalfInt.of(k).value), ZERO)

    def to_json(self) -> str:
        def fmt(v: Fraction) -> str:
            return str(HalfInt.of(v))

        payload = {
            "lambda": [
                {"n": n, "r": r, "value": render_scalar(v)}
                for (n, r), v in sorted(self.lambdas.items()) if not v.is_zero()
            ],
            "mu": [
                {"i": fmt(i), "k": fmt(k), "value": render_scalar(v)}
                for (i, k), v in sorted(self.mus.items()) if not v.is_zero()
            ],
        }
        return json.dumps(payload, indent=2)


def _int_range(window: int) -> List[int]:
    return list(range(-window, window + 1))


def _half_range(window: int) -> List[HalfInt]:
    return list(window_indices("a", window))


def _equations(window: int) -> Iterator[Tuple[Dict, Scalar]]:
    ints = _int_range(window)
    halves = _half_range(window)
    int_ok = set(ints)
    half_ok = {h.twice for h in halves}

    # lambda_{n+m}^r - lambda_m^{r+n} - lambda_n^{r+m} = 0
    for n in ints:
        for m in ints:
            if n + m not in int_ok:
                continue
            for r in ints:
                if r + n not in int_ok or r + m not in int_ok:
                    continue
                row: Dict = {}
                for key, c in ((lam(n + m, r), 1), (lam(m, r + n), -1), (lam(n, r + m), -1)):
                    row[key] = row.get(key, ZERO) + c
                yield row, ZERO

    # mu_{i+n}^k - mu_i^{k+n} - (k - i) lambda_n^{i+k} = 0
    for i in halves:
        for n in ints:
            if i.twice + 2 * n not in half_ok:
                continue
            for k in halves:
                if k.twice + 2 * n not in half_ok or (i + k).twice // 2 not in int_ok:
                    continue
                row = {}
                coeff = Scalar.from_rational((k - i).value)
                for key, c in (
                    (mu(HalfInt(i.twice + 2 * n), k), ONE),
                    (mu(i, HalfInt(k.twice + 2 * n)), -ONE),
                    (lam(n, (i + k).twice // 2), -coeff),
                ):
                    row[key] = row.get(key, ZERO) + c
                yield row, ZERO

    # (j - i) lambda_{i+j}^r + mu_j^{r+i} - mu_i^{r+j} = 0
    for i in halves:
        for j in halves:
            s = (i + j).twice // 2
            if s not in int_ok:
                continue
            for r in ints:
                if i.twice + 2 * r not in half_ok or j.twice + 2 * r not in half_ok:
                    continue
                row = {}
                coeff = Scalar.from_rational((j - i).value)
                for key, c in (
                    (lam(s, r), coeff),
                    (mu(j, HalfInt(i.twice + 2 * r)), ONE),
                    (mu(i, HalfInt(j.twice + 2 * r)), -ONE),
                ):
                    row[key] = row.get(key, ZERO) + c
                yield row, ZERO

    # vanishing on K_3 = <eps_0, a_{-1/2}, a_{1/2}>
    for r in ints:
        yield {lam(0, r): ONE}, ZERO
    for k in halves:
        for i in (HalfInt(-1), HalfInt(1)):
            yield {mu(i, k): ONE}, ZERO

    yield {lam(1, -1): ONE}, -ONE


def expected_lambda(n: int, r: int) -> Scalar:
    return Scalar.from_int(-n) if r == -n else ZERO


def expected_mu(i: HalfInt, k: HalfInt) -> Scalar:
    if k.twice != -i.twice:
        return ZERO
    v = k.value
    return Scalar.from_rational(v * v - Fraction(1, 4))


def unique_solver(W: int) -> CocycleUnknowns:
    """Solve the truncated cocycle system and assert the interior solution."""
    if W < 2:
        raise DomainError(f"window must be at least 2, got {W}")
    logger.info("Setting up cocycle uniqueness system, window %d", W)
    ints = _int_range(W)
    halves = _half_range(W)
    unknowns = [lam(n, r) for n in ints for r in ints] + [mu(i, k) for i in halves for k in halves]
    system: LinearSystem = LinearSystem(unknowns)
    for row, rhs in _equations(W):
        row = {k: v for k, v in row.items() if not v.is_zero()}
        if not row and rhs.is_zero():
            continue
        system.add_equation(row, rhs)
    logger.info("Uniqueness system: %d equations, rank %d", system.equations, system.rank)
    if not system.consistent:
        raise TableMismatch("cocycle recursions are inconsistent with the normalisation")

    solved = CocycleUnknowns(W)
    for (kind, a, b), value in system.determined().items():
        if kind == "lambda":
            solved.lambdas[(a // 2, b // 2)] = value
        else:
            solved.mus[(Fraction(a, 2), Fraction(b, 2))] = value

    inner = W - 2
    free = []
    for n in ints:
        for r in ints:
            if max(abs(n), abs(r), abs(n + r)) > inner:
                continue
            value = system.value(lam(n, r))
            if value is None:
                free.append(f"lambda_{n}^{r}")
            elif value != expected_lambda(n, r):
                raise TableMismatch(f"lambda_{n}^{r} = {value}, expected {expected_lambda(n, r)}")
    for i in halves:
        for k in halves:
            if max(abs(i.value), abs(k.value), abs((i + k).value)) > inner:
                continue
            value = system.value(mu(i, k))
            if value is None:
                free.append(f"mu_{i}^{k}")
            elif value != expected_mu(i, k):
                raise TableMismatch(f"mu_{i}^{k} = {value}, expected {expected_mu(i, k)}")
    if free:
        raise UnderdeterminedInterior(f"free interior unknowns: {', '.join(free[:8])}")
    return solved
