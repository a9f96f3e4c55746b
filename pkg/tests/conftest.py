from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from scipy.linalg import expm

from bosonscramble.symplectic import symplectic_form

settings.register_profile("repo", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def random_symplectic(n: int, rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    """``exp(J H)`` for a random symmetric ``H``: symplectic by construction."""
    h = rng.normal(size=(2 * n, 2 * n))
    h = scale * (h + h.T) / 2
    return expm(symplectic_form(n) @ h)


def random_covariance(n: int, rng: np.random.Generator, kind: str = "mixed") -> np.ndarray:
    s = random_symplectic(n, rng)
    if kind == "pure":
        nu = np.ones(n)
    else:
        nu = 1.0 + rng.exponential(1.0, size=n)
    d = np.concatenate([nu, nu])
    return (s * d) @ s.T


def two_mode_squeezed_cov(r: float) -> np.ndarray:
    """Two-mode squeezed vacuum written out in (q1, q2, p1, p2) order."""
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    return np.array([[c, s, 0, 0],
                     [s, c, 0, 0],
                     [0, 0, c, -s],
                     [0, 0, -s, c]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES: list[str] = []


def record_criterion(label: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
