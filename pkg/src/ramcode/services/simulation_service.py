"""
Bounded-weight Monte Carlo over seeded error patterns.

Trial t draws from default_rng([seed, t]) only, so every trial is
reproducible on its own and reports do not depend on execution order.
"""

from typing import Dict, List, Optional, Union

import numpy as np

from ..core.config import settings
from ..core.exceptions import ShapeMismatchError
from ..core.logging import get_module_logger
from ..linalg.gf2 import BitVector
from ..models.reports import DecodeOutcome, DecodeStatus, ExperimentConfig, SimulationReport, TrialClass
from .decode_service import Decodable, DecodeSession, ErrorType

logger = get_module_logger("services.simulation")


def trial_error(n: int, weight: int, seed: int, trial: int, up_to: bool = False) -> BitVector:
    """Uniform error of the given weight (or of weight 1..weight with ``up_to``)."""
    rng = np.random.default_rng([seed, trial])
    w = int(rng.integers(1, weight + 1)) if up_to else weight
    return BitVector.from_support(n, rng.choice(n, size=min(w, n), replace=False).tolist())


def classify(session: DecodeSession, error: BitVector, syndrome: BitVector, outcome: DecodeOutcome) -> TrialClass:
    """Success only when the syndrome matches and error + correction is a stabilizer."""
    status = DecodeStatus(outcome.status)
    if status == DecodeStatus.STALLED:
        return TrialClass.STALL
    if status == DecodeStatus.BUDGET_EXCEEDED:
        return TrialClass.BUDGET_EXCEEDED
    correction = outcome.correction_vector()
    if session.syndrome(correction) != syndrome:
        return TrialClass.EQUIVALENCE_FAILURE
    if session.is_equivalent(error + correction):
        return TrialClass.SUCCESS
    return TrialClass.EQUIVALENCE_FAILURE


class SimulationService:
    """Runs seeded decoding trials and aggregates them."""

    def run(
        self,
        obj: Decodable,
        error_type: Union[ErrorType, str],
        weight: int,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        up_to: bool = False,
        inputs: Optional[Dict[str, str]] = None,
        outputs: Optional[Dict[str, str]] = None,
    ) -> SimulationReport:
        trials = trials if trials is not None else settings.simulation.trials
        seed = seed if seed is not None else settings.simulation.seed
        if weight < 1:
            raise ShapeMismatchError(f"error weight must be positive, got {weight}")
        session = DecodeSession(obj, error_type)

        counts = {c: 0 for c in TrialClass}
        iterations: List[int] = []
        failures: List[int] = []
        for t in range(trials):
            error = trial_error(session.n_errors, weight, seed, t, up_to)
            syndrome = session.syndrome(error)
            outcome = session.decode(syndrome)
            verdict = classify(session, error, syndrome, outcome)
            counts[verdict] += 1
            iterations.append(outcome.iterations)
            if verdict != TrialClass.SUCCESS:
                failures.append(t)
            if (t + 1) % 100 == 0:
                logger.debug(f"{t + 1}/{trials} trials, {counts[TrialClass.SUCCESS]} successes")

        report = SimulationReport(
            config=ExperimentConfig(
                command="simulate",
                parameters={"type": session.error_type.value, "weight": weight, "up_to": up_to, "trials": trials},
                seed=seed,
                inputs=dict(inputs or {}),
                outputs=dict(outputs or {}),
                version=settings.version,
            ),
            version=settings.version,
            trials=trials,
            successes=counts[TrialClass.SUCCESS],
            stalls=counts[TrialClass.STALL],
            equivalence_failures=counts[TrialClass.EQUIVALENCE_FAILURE],
            budget_exceeded=counts[TrialClass.BUDGET_EXCEEDED],
            mean_iterations=float(np.mean(iterations)) if iterations else 0.0,
            stall_rate=counts[TrialClass.STALL] / trials if trials else 0.0,
            failures=failures,
        )
        logger.info(
            f"simulate {session.error_type.value} w={weight}: {report.successes}/{trials} successes, "
            f"{report.stalls} stalls, {report.equivalence_failures} equivalence failures"
        )
        return report
