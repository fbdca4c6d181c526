"""
Outcomes and trial records.

Outcome values double as the numbers the estimators multiply: +1, −1, and
0 for the empty reply, so a product over a non-coincident trial is 0.
TrialLog keeps a whole run as arrays and hands out TrialRecord values on
indexing/iteration; a million dataclass instances per run would dominate
the runtime of every scan.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from chameleon.errors import ProtocolError


class Outcome(IntEnum):
    MINUS = -1
    EMPTY = 0
    PLUS = 1

    @property
    def wire(self) -> str:
        return _WIRE[self]

    @classmethod
    def from_wire(cls, text: str) -> "Outcome":
        try:
            return _FROM_WIRE[text]
        except KeyError:
            raise ProtocolError(f"unknown outcome on the wire: {text!r}") from None


_WIRE = {Outcome.PLUS: "+1", Outcome.MINUS: "-1", Outcome.EMPTY: "empty"}
_FROM_WIRE = {text: outcome for outcome, text in _WIRE.items()}


@dataclass(frozen=True)
class TrialRecord:
    index: int
    sigma: float
    outcome_1: Outcome
    outcome_2: Outcome
    coincidence: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "outcome_1", Outcome(self.outcome_1))
        object.__setattr__(self, "outcome_2", Outcome(self.outcome_2))
        object.__setattr__(
            self, "coincidence", self.outcome_1 is not Outcome.EMPTY and self.outcome_2 is not Outcome.EMPTY
        )


def _frozen(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class TrialLog(Sequence):
    indices: np.ndarray
    sigmas: np.ndarray
    outcome_1: np.ndarray
    outcome_2: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "indices", _frozen(self.indices, np.int64))
        object.__setattr__(self, "sigmas", _frozen(self.sigmas, np.float64))
        object.__setattr__(self, "outcome_1", _frozen(self.outcome_1, np.int8))
        object.__setattr__(self, "outcome_2", _frozen(self.outcome_2, np.int8))
        lengths = {len(self.indices), len(self.sigmas), len(self.outcome_1), len(self.outcome_2)}
        if len(lengths) != 1:
            raise ValueError(f"trial log columns disagree in length: {sorted(lengths)}")

    @classmethod
    def empty(cls) -> "TrialLog":
        return cls(indices=[], sigmas=[], outcome_1=[], outcome_2=[])

    @classmethod
    def from_records(cls, records: Iterable[TrialRecord]) -> "TrialLog":
        records = list(records)
        return cls(
            indices=[r.index for r in records],
            sigmas=[r.sigma for r in records],
            outcome_1=[int(r.outcome_1) for r in records],
            outcome_2=[int(r.outcome_2) for r in records],
        )

    @property
    def coincidence(self) -> np.ndarray:
        return (self.outcome_1 != Outcome.EMPTY) & (self.outcome_2 != Outcome.EMPTY)

    def __len__(self) -> int:
        return len(self.indices)

    def __getitem__(self, position):
        if isinstance(position, slice):
            return TrialLog(
                self.indices[position], self.sigmas[position], self.outcome_1[position], self.outcome_2[position]
            )
        return TrialRecord(
            index=int(self.indices[position]),
            sigma=float(self.sigmas[position]),
            outcome_1=Outcome(int(self.outcome_1[position])),
            outcome_2=Outcome(int(self.outcome_2[position])),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrialLog):
            return NotImplemented
        return all(
            np.array_equal(getattr(self, name), getattr(other, name))
            for name in ("indices", "sigmas", "outcome_1", "outcome_2")
        )

    __hash__ = None
