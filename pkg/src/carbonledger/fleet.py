"""Fleet-level accounting: what share of a datacenter fleet's energy goes to
ML, split into training and inference, plus the server-versus-mobile bound.

Snapshots are user-supplied measurements (this module is the arithmetic and
schema, not a profiler). The shipped example snapshot reproduces a 2020-style
hyperscaler fleet: ML at 15% of total energy, one third of it training.
Known caveats of such measurements — CPU libraries shared with non-ML work,
possible double counting of hosts — belong to the measurement, and are
documented with the fixture rather than modeled here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True)
class FleetSnapshot:
    """Measured TWh for one period: the fleet total and its ML components."""

    period_label: str
    total_energy_twh: float
    accelerator_training_twh: float
    accelerator_inference_twh: float
    cpu_inference_twh: float

    def __post_init__(self) -> None:
        for name in (
            "total_energy_twh",
            "accelerator_training_twh",
            "accelerator_inference_twh",
            "cpu_inference_twh",
        ):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValidationError(f"{name} must be >= 0, got {value!r}")
        components = (
            self.accelerator_training_twh
            + self.accelerator_inference_twh
            + self.cpu_inference_twh
        )
        if components > self.total_energy_twh:
            raise ValidationError(
                f"ML components sum to {components} TWh, exceeding the fleet total "
                f"{self.total_energy_twh} TWh"
            )

    def to_dict(self) -> dict:
        return {
            "period_label": self.period_label,
            "total_energy_twh": self.total_energy_twh,
            "accelerator_training_twh": self.accelerator_training_twh,
            "accelerator_inference_twh": self.accelerator_inference_twh,
            "cpu_inference_twh": self.cpu_inference_twh,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "FleetSnapshot":
        try:
            return cls(
                period_label=str(doc.get("period_label", "")),
                total_energy_twh=float(doc["total_energy_twh"]),
                accelerator_training_twh=float(doc["accelerator_training_twh"]),
                accelerator_inference_twh=float(doc["accelerator_inference_twh"]),
                cpu_inference_twh=float(doc["cpu_inference_twh"]),
            )
        except KeyError as exc:
            raise ValidationError(f"fleet snapshot is missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"fleet snapshot field has wrong type: {exc}") from None


@dataclass(frozen=True)
class FleetReport:
    period_label: str
    ml_total_twh: float
    ml_fraction: float
    training_share: float
    inference_share: float

    def to_dict(self) -> dict:
        return {
            "period_label": self.period_label,
            "ml_total_twh": self.ml_total_twh,
            "ml_fraction": self.ml_fraction,
            "training_share": self.training_share,
            "inference_share": self.inference_share,
        }


def fleet_report(snapshot: FleetSnapshot) -> FleetReport:
    """ML total, its fraction of fleet energy, and the training/inference split.

    Training counts accelerator training only; inference is accelerator plus
    CPU inference. An all-zero ML fleet reports zero shares.
    """
    if snapshot.total_energy_twh == 0:
        raise ValidationError("total_energy_twh must be positive to compute a fraction")
    ml_total = (
        snapshot.accelerator_training_twh
        + snapshot.accelerator_inference_twh
        + snapshot.cpu_inference_twh
    )
    if ml_total == 0:
        training_share = inference_share = 0.0
    else:
        training_share = snapshot.accelerator_training_twh / ml_total
        inference_share = (
            snapshot.accelerator_inference_twh + snapshot.cpu_inference_twh
        ) / ml_total
    return FleetReport(
        period_label=snapshot.period_label,
        ml_total_twh=ml_total,
        ml_fraction=ml_total / snapshot.total_energy_twh,
        training_share=training_share,
        inference_share=inference_share,
    )


@dataclass(frozen=True)
class MobileBoundReport:
    """Server-side ML energy against a generous bound for phone-side ML."""

    phones: float
    global_phone_twh: float
    ml_share_bound: float
    client_ml_bound_twh: float
    server_ml_twh: float
    server_to_client_ratio: float | None

    def to_dict(self) -> dict:
        return {
            "phones": self.phones,
            "global_phone_twh": self.global_phone_twh,
            "ml_share_bound": self.ml_share_bound,
            "client_ml_bound_twh": self.client_ml_bound_twh,
            "server_ml_twh": self.server_ml_twh,
            "server_to_client_ratio": self.server_to_client_ratio,
        }


def mobile_bound(
    phones: float,
    global_phone_twh: float,
    ml_share_bound: float,
    server_ml_twh: float,
) -> MobileBoundReport:
    """Upper-bound client-side ML energy and compare server-side ML to it.

    A zero client bound reports the ratio as absent rather than infinite.
    """
    for name, value in (
        ("phones", phones),
        ("global_phone_twh", global_phone_twh),
        ("ml_share_bound", ml_share_bound),
        ("server_ml_twh", server_ml_twh),
    ):
        if not math.isfinite(value) or value < 0:
            raise ValidationError(f"{name} must be >= 0, got {value!r}")
    if ml_share_bound > 1:
        raise ValidationError(f"ml_share_bound must be <= 1, got {ml_share_bound}")
    client_bound = global_phone_twh * ml_share_bound
    if client_bound == 0:
        ratio = None if server_ml_twh > 0 else 0.0
    else:
        ratio = server_ml_twh / client_bound
    return MobileBoundReport(
        phones=phones,
        global_phone_twh=global_phone_twh,
        ml_share_bound=ml_share_bound,
        client_ml_bound_twh=client_bound,
        server_ml_twh=server_ml_twh,
        server_to_client_ratio=ratio,
    )
