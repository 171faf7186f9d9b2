"""Named verification suites, one per CLI subcommand.

Every suite takes a ``SuiteConfig`` and returns a list of reports; random
draws come from generators seeded by (seed, suite, prime) so each suite is
reproducible on its own and independent of which other suites run.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import groups, padic, structure, weil, whittaker
from .report import VerificationReport

DEFAULT_PRIMES = (3, 5, 7, 11)

GAMMA_TRIALS = 60
WEIL_TRIALS = 20
HILBERT_TRIALS = 50
RING_TRIALS = 200
SPECIALIZATION_TRIALS = 3
HEISENBERG_TRIALS = 50
MATRIX_SAMPLES = 20


@dataclass(frozen=True)
class SuiteConfig:
    order: int = whittaker.DEFAULT_ORDER
    primes: tuple[int, ...] = DEFAULT_PRIMES
    mmax: int = 5
    tolerance: float = weil.TOLERANCE
    seed: int = 0
    backend: str | None = None
    extra: dict = field(default_factory=dict)

    def rng(self, suite: str, p: int = 0) -> np.random.Generator:
        tag = sum(ord(c) * 31 ** i for i, c in enumerate(suite)) % (1 << 32)
        return np.random.default_rng([self.seed, tag, p])

    def context(self, p: int) -> padic.PAdicContext:
        reach, fine = weil.default_grid(p)
        return padic.PAdicContext(p, grid_reach=reach, grid_fine=fine)


def run_algebra(cfg: SuiteConfig) -> list[VerificationReport]:
    return [
        structure.verify_ring_laws(RING_TRIALS, cfg.rng("algebra")),
        structure.verify_recursions(),
        structure.verify_cleared_identities(),
        structure.verify_generating_function(cfg.order),
        structure.verify_symmetries(cfg.order),
        structure.verify_specialization(cfg.order, SPECIALIZATION_TRIALS, cfg.rng("specialization")),
    ]


def run_identity(cfg: SuiteConfig) -> list[VerificationReport]:
    return [
        whittaker.verify_main_identity(cfg.order),
        whittaker.factorization_report(),
        whittaker.verify_partial_fractions(),
        whittaker.verify_closed_forms(cfg.order),
        *structure.verify_negative_controls(cfg.order),
    ]


def run_gauss(cfg: SuiteConfig) -> list[VerificationReport]:
    out = []
    for p in cfg.primes:
        out += weil.verify_unit_integrals(p, cfg.mmax, cfg.tolerance)
        out += weil.verify_gamma_properties(cfg.context(p), GAMMA_TRIALS, cfg.rng("gamma", p), cfg.tolerance)
        out.append(padic.verify_psi(cfg.context(p), 100, cfg.rng("psi", p)))
    return out


def run_hilbert(cfg: SuiteConfig) -> list[VerificationReport]:
    out = []
    for p in cfg.primes:
        out += padic.verify_hilbert(cfg.context(p), HILBERT_TRIALS, cfg.rng("hilbert", p), cfg.backend)
    return out


def run_weil(cfg: SuiteConfig) -> list[VerificationReport]:
    out = []
    for p in cfg.primes:
        out += weil.verify_weil_relations(cfg.context(p), WEIL_TRIALS, cfg.rng("weil", p), cfg.tolerance)
    return out


def run_matrix(cfg: SuiteConfig) -> list[VerificationReport]:
    rng = cfg.rng("matrix")
    samples = [groups.random_nonzero_rational(rng) for _ in range(MATRIX_SAMPLES)]
    return [
        groups.verify_matrix_identity(samples),
        groups.verify_heisenberg_group(HEISENBERG_TRIALS, cfg.rng("heisenberg")),
    ]


SUITES = {
    "algebra": run_algebra,
    "identity": run_identity,
    "gauss": run_gauss,
    "hilbert": run_hilbert,
    "weil": run_weil,
    "matrix": run_matrix,
}


def run(name: str, cfg: SuiteConfig) -> list[VerificationReport]:
    names = list(SUITES) if name == "all" else [name]
    reports = []
    for n in names:
        reports += SUITES[n](cfg)
    return sorted(reports, key=lambda r: r.sort_key())
