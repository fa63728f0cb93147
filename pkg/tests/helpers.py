"""Shared fixtures: hand-built plans for negative tests."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from dofbc.config import SystemConfig
from dofbc.precoding import CONSTANT
from dofbc.schemes import (
    FreshPayload,
    Slot,
    Stream,
    Symbol,
    SymbolRegistry,
    TransmissionPlan,
    UnitRecipe,
)


@dataclass(frozen=True)
class LeakyRecipe:
    """Claims constant coefficients but sneaks a channel entry onto the last
    (uninformed) antenna; the compliance check must flag it."""

    def vector(self, channel):
        dtype = float if channel.field is None else np.int64
        t = np.zeros(channel.cfg.M, dtype=dtype)
        t[0] = 1
        t[-1] = channel.H[0, 0]
        return t

    def labels(self, cfg):
        return (CONSTANT,) * cfg.M

    def support_in_informed(self, cfg):
        return False

    def to_json(self):
        return {"kind": "leaky"}


def adversarial_plan() -> TransmissionPlan:
    cfg = SystemConfig(3, 1, 2, 1)
    registry = SymbolRegistry((Symbol("b1", 2),))
    slots = (Slot((Stream(FreshPayload("b1"), LeakyRecipe()),)),)
    return TransmissionPlan(
        cfg=cfg, scheme_id="adversarial", registry=registry, slots=slots, claimed_dof=Fraction(1)
    )


def overloaded_rx2_plan() -> TransmissionPlan:
    """(4,1,3,2) shaped plan pushing N2*(M-k)+1 = 7 fresh RX2 symbols into
    M-k = 2 slots: RX2 has only 6 observations, so it cannot decode."""
    cfg = SystemConfig(4, 1, 3, 2)
    syms = tuple(Symbol(f"b{i}", 2) for i in range(1, 8))
    registry = SymbolRegistry(syms)
    first = tuple(
        Stream(FreshPayload(f"b{i + 1}"), UnitRecipe(i % cfg.M)) for i in range(4)
    )
    second = tuple(
        Stream(FreshPayload(f"b{i + 5}"), UnitRecipe(i % cfg.M)) for i in range(3)
    )
    return TransmissionPlan(
        cfg=cfg,
        scheme_id="overloaded",
        registry=registry,
        slots=(Slot(first), Slot(second)),
        claimed_dof=Fraction(7, 2),
    )


def empty_plan() -> TransmissionPlan:
    cfg = SystemConfig(4, 1, 3, 2)
    return TransmissionPlan(
        cfg=cfg,
        scheme_id="empty",
        registry=SymbolRegistry(()),
        slots=(),
        claimed_dof=Fraction(0),
    )
