"""
Seeded batches of random singlet models, each checked over every ordered
setting triple of its grid. One row per model, reporting its worst triple.
"""

import json
from dataclasses import dataclass
from itertools import permutations
from typing import Optional

import numpy as np

from chameleon.analysis.bell import BELL_TOLERANCE
from chameleon.contextual.model import epr_distance, correlation_matrix, generate_singlet_model
from chameleon.errors import ConfigError, UnknownSetting
from chameleon.protocols.streams import derive_session_seed
from chameleon.utils import TWO_PI

EPR_TRIPLE = (0.0, TWO_PI / 3.0, np.pi / 3.0)
EPR_MATCH_TOLERANCE = 0.16


@dataclass(frozen=True)
class ContextualRow:
    seed: int
    omega_size: int
    triple: tuple[float, float, float]
    quantity: float
    holds: bool
    epr_distance: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "omega_size": self.omega_size,
            "triple": list(self.triple),
            "quantity": self.quantity,
            "holds": self.holds,
            "epr_distance": self.epr_distance,
        }


@dataclass(frozen=True)
class ContextualBatch:
    rows: tuple[ContextualRow, ...]
    worst_quantity: float
    violations: int
    epr_matches: int

    @property
    def n_models(self) -> int:
        return len(self.rows)

    @property
    def all_hold(self) -> bool:
        return self.violations == 0

    def summary(self) -> dict:
        return {
            "n_models": self.n_models,
            "worst_quantity": self.worst_quantity,
            "violations": self.violations,
            "epr_matches": self.epr_matches,
        }

    def to_json_lines(self) -> str:
        return "".join(json.dumps(row.to_dict()) + "\n" for row in self.rows)


def run_contextual_batch(
    n_models: int, omega_min: int = 2, omega_max: int = 64, n_settings: int = 6, seed: int = 0
) -> ContextualBatch:
    if n_models < 1:
        raise ConfigError(f"n_models must be at least 1, got {n_models}")
    if not 2 <= omega_min <= omega_max:
        raise ConfigError(f"need 2 <= omega_min <= omega_max, got {omega_min}..{omega_max}")
    if n_settings < 3:
        raise ConfigError(f"n_settings must be at least 3, got {n_settings}")

    triples = np.array(list(permutations(range(n_settings), 3)))
    i, j, k = triples.T
    span = omega_max - omega_min + 1

    rows = []
    for n in range(n_models):
        model_seed = derive_session_seed(seed, "contextual", n)
        model = generate_singlet_model(omega_min + model_seed % span, n_settings, model_seed)
        corr = correlation_matrix(model)
        quantities = np.abs(corr[i, j] - corr[k, j]) - corr[i, k]
        worst = int(np.argmax(quantities))
        quantity = float(quantities[worst])
        try:
            distance = epr_distance(model, *EPR_TRIPLE)
        except UnknownSetting:
            distance = None
        rows.append(
            ContextualRow(
                seed=model_seed,
                omega_size=model.omega_size,
                triple=tuple(model.settings[x] for x in triples[worst]),
                quantity=quantity,
                holds=quantity <= 1.0 + BELL_TOLERANCE,
                epr_distance=distance,
            )
        )

    return ContextualBatch(
        rows=tuple(rows),
        worst_quantity=max(row.quantity for row in rows),
        violations=sum(not row.holds for row in rows),
        epr_matches=int(sum(row.epr_distance is not None and row.epr_distance <= EPR_MATCH_TOLERANCE for row in rows)),
    )
