"""Interference coefficients, regime classification, and phase extraction.

For each outcome value the classical two-branch prediction is the sum of the
branch probabilities ``branch_i = selector_marginal_i * transition[i]``.  The
interference coefficient measures the normalized deviation of the directly
observed marginal from that prediction::

    coefficient = (observed - branch_1 - branch_2) / (2 * sqrt(branch_1 * branch_2))

Coefficients with magnitude at most 1 admit an ordinary phase via arccos and
reproduce the observed marginal as

    observed = branch_1 + branch_2 + 2 * sqrt(branch_1 * branch_2) * cos(phase)

while larger magnitudes need a hyperbolic phase via arccosh and a sign::

    observed = branch_1 + branch_2 + 2 * sqrt(branch_1 * branch_2) * sign * cosh(phase)

Outcomes with a vanishing branch are reported as degenerate rather than
treated as failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Hashable

import numpy as np

from .dynamics import ContextualStatistics
from .errors import DegenerateDenominator, InvariantViolation, NoPhase

DEFAULT_CLASSIFY_TOLERANCE = 1e-9


class Classification(str, Enum):
    """Which phase representation an interference coefficient admits."""

    TRIGONOMETRIC = "trigonometric"
    HYPERBOLIC = "hyperbolic"
    DEGENERATE = "degenerate"


def branch_probabilities(statistics: ContextualStatistics) -> np.ndarray:
    """Matrix of per-branch outcome probabilities.

    Entry ``[i, j]`` is the probability of reaching outcome ``j`` through
    selector value ``i``: the selector marginal times the transition entry.
    """
    return (
        statistics.selector_marginals[:, np.newaxis] * statistics.transition
    )


def interference_coefficients(
    statistics: ContextualStatistics,
) -> tuple[tuple[float, float], np.ndarray]:
    """Both interference coefficients plus the branch probability matrix.

    Raises :class:`DegenerateDenominator` if any branch probability is zero;
    use :func:`analyze_interference` to get degenerate outcomes reported as
    first-class results instead.
    """
    branches = branch_probabilities(statistics)
    for j in range(2):
        for i in range(2):
            if branches[i, j] == 0.0:
                raise DegenerateDenominator(
                    f"branch probability for selector "
                    f"{statistics.selector_labels[i]!r} and outcome "
                    f"{statistics.outcome_labels[j]!r} is zero",
                    selector_index=i,
                    outcome_index=j,
                )
    coefficients = tuple(
        _coefficient(
            float(statistics.outcome_marginals[j]),
            float(branches[0, j]),
            float(branches[1, j]),
        )
        for j in range(2)
    )
    return coefficients, branches


def _coefficient(observed: float, first: float, second: float) -> float:
    return (observed - first - second) / (2.0 * math.sqrt(first * second))


def classify(
    coefficient: float, tolerance: float = DEFAULT_CLASSIFY_TOLERANCE
) -> Classification:
    """Trigonometric when |coefficient| <= 1 + tolerance, hyperbolic beyond.

    The tolerance band guards against rounding right at the boundary: values
    inside it are classified trigonometric and their phase clamps to 0 or pi.
    """
    coefficient = float(coefficient)
    if not math.isfinite(coefficient):
        raise InvariantViolation(
            f"interference coefficient must be finite, got {coefficient!r}"
        )
    if abs(coefficient) <= 1.0 + tolerance:
        return Classification.TRIGONOMETRIC
    return Classification.HYPERBOLIC


def phases(
    coefficient: float | None, classification: Classification
) -> tuple[float, int]:
    """Phase and sign for a classified coefficient.

    Trigonometric: ``(arccos(clamped coefficient), +1)`` with the phase in
    [0, pi].  Hyperbolic: ``(arccosh(|coefficient|), sign(coefficient))``.
    Raises :class:`NoPhase` for the degenerate classification.
    """
    if classification is Classification.DEGENERATE or coefficient is None:
        raise NoPhase("a degenerate outcome has no phase")
    coefficient = float(coefficient)
    if classification is Classification.TRIGONOMETRIC:
        return math.acos(min(1.0, max(-1.0, coefficient))), 1
    if classification is Classification.HYPERBOLIC:
        return math.acosh(abs(coefficient)), (1 if coefficient > 0 else -1)
    raise InvariantViolation(f"unknown classification {classification!r}")


@dataclass(frozen=True)
class OutcomeInterference:
    """Interference analysis of a single outcome value."""

    outcome: Hashable
    observed: float
    branches: tuple[float, float]
    coefficient: float | None
    classification: Classification
    phase: float | None
    sign: int | None

    def reconstructed(self) -> float:
        """Observed marginal rebuilt from branches, phase, and sign."""
        if self.classification is Classification.DEGENERATE:
            raise NoPhase("a degenerate outcome has no reconstruction")
        cross = 2.0 * math.sqrt(self.branches[0] * self.branches[1])
        if self.classification is Classification.TRIGONOMETRIC:
            return self.branches[0] + self.branches[1] + cross * math.cos(self.phase)
        return (
            self.branches[0]
            + self.branches[1]
            + cross * self.sign * math.cosh(self.phase)
        )


@dataclass(frozen=True)
class InterferenceReport:
    """Per-outcome interference entries plus the classification tolerance."""

    entries: tuple[OutcomeInterference, ...]
    classify_tolerance: float = DEFAULT_CLASSIFY_TOLERANCE

    @property
    def regime(self) -> str:
        """Overall label: trigonometric, hyperbolic, mixed, or degenerate."""
        kinds = {entry.classification for entry in self.entries}
        if Classification.DEGENERATE in kinds:
            return "degenerate"
        if kinds == {Classification.TRIGONOMETRIC}:
            return "trigonometric"
        if kinds == {Classification.HYPERBOLIC}:
            return "hyperbolic"
        return "mixed"


def analyze_interference(
    statistics: ContextualStatistics,
    tolerance: float = DEFAULT_CLASSIFY_TOLERANCE,
) -> InterferenceReport:
    """Classify both outcomes and extract phases where they exist.

    Outcomes with a vanishing branch probability come back with the
    degenerate classification and no coefficient, phase, or sign.
    """
    branches = branch_probabilities(statistics)
    entries = []
    for j, label in enumerate(statistics.outcome_labels):
        observed = float(statistics.outcome_marginals[j])
        pair = (float(branches[0, j]), float(branches[1, j]))
        if pair[0] == 0.0 or pair[1] == 0.0:
            entries.append(
                OutcomeInterference(
                    outcome=label,
                    observed=observed,
                    branches=pair,
                    coefficient=None,
                    classification=Classification.DEGENERATE,
                    phase=None,
                    sign=None,
                )
            )
            continue
        coefficient = _coefficient(observed, pair[0], pair[1])
        kind = classify(coefficient, tolerance)
        phase, sign = phases(coefficient, kind)
        entries.append(
            OutcomeInterference(
                outcome=label,
                observed=observed,
                branches=pair,
                coefficient=coefficient,
                classification=kind,
                phase=phase,
                sign=sign,
            )
        )
    return InterferenceReport(entries=tuple(entries), classify_tolerance=tolerance)
