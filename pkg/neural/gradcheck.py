"""
Finite-difference gradient check for ArcaneNet

The checked scalar is sum(output_grad * Q). Parameters whose +/-eps perturbation
flips any ReLU activation sit on a kink and are skipped.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .arcane_net import ArcaneNet


def relative_error(analytic: float, numeric: float, floor: float = 1e-6) -> float:
    return abs(analytic - numeric) / max(abs(analytic) + abs(numeric), floor)


@dataclass
class GradCheckReport:
    max_relative_error: float = 0.0
    checked: int = 0
    skipped: int = 0
    worst: Optional[str] = None
    per_parameter: dict = field(default_factory=dict)

    def passed(self, tolerance: float = 1e-4) -> bool:
        return self.checked > 0 and self.max_relative_error < tolerance


def _same_masks(a: List[np.ndarray], b: List[np.ndarray]) -> bool:
    return all(np.array_equal(x, y) for x, y in zip(a, b))


def check_gradients(
    net: ArcaneNet,
    global_x: np.ndarray,
    local_x: Optional[np.ndarray],
    output_grad: np.ndarray,
    eps: float = 1e-4,
    max_entries: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> GradCheckReport:
    """
    Compare analytic and central-difference gradients of every parameter entry

    max_entries limits the entries checked per parameter (sampled with rng); None checks all.
    """
    def objective() -> float:
        return float(np.sum(output_grad * net.forward_batch(global_x, local_x)))

    objective()
    base_masks = [mask.copy() for mask in net.relu_masks()]
    analytic = {name: grad.copy() for name, grad in net.backward(output_grad).items()}

    report = GradCheckReport()
    rng = rng or np.random.default_rng(0)
    for name, value in net.parameters().items():
        flat = value.reshape(-1)
        indices = np.arange(flat.size)
        if max_entries is not None and flat.size > max_entries:
            indices = rng.choice(flat.size, size=max_entries, replace=False)
        worst = 0.0
        for index in indices:
            original = flat[index]
            flat[index] = original + eps
            plus = objective()
            plus_masks = net.relu_masks()
            kink = not _same_masks(base_masks, plus_masks)
            flat[index] = original - eps
            minus = objective()
            kink = kink or not _same_masks(base_masks, net.relu_masks())
            flat[index] = original
            if kink:
                report.skipped += 1
                continue
            numeric = (plus - minus) / (2 * eps)
            err = relative_error(float(analytic[name].reshape(-1)[index]), numeric)
            worst = max(worst, err)
            report.checked += 1
            if err > report.max_relative_error:
                report.max_relative_error = err
                report.worst = f"{name}[{int(index)}]"
        report.per_parameter[name] = worst
    return report
