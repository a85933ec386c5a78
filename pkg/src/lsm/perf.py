"""Point-wise precision / recall / F1 over resampled lane boundaries."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from lsm.geometry import Point3, Polyline3, closest_point, resample
from lsm.types import EvalConfig


def _ratio(num: int, den: int) -> float:
    return num / den if den > 0 else 0.0


def f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class PerfResult:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def precision(self) -> float:
        return _ratio(self.tp, self.tp + self.fp)

    @property
    def recall(self) -> float:
        return _ratio(self.tp, self.tp + self.fn)

    @property
    def f1(self) -> float:
        return f1(self.precision, self.recall)

    def __add__(self, other: PerfResult) -> PerfResult:
        return PerfResult(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)


def required_gt_points(gt: Polyline3, ego_origin: Point3, spacing: float, d_long: float) -> np.ndarray:
    """GT samples within ``d_long`` of arc length ahead of the ego's projection."""
    samples = resample(gt, spacing)
    s0 = closest_point(gt, ego_origin).s
    s = samples.cumulative_arc_length
    return samples.points[(s >= s0) & (s <= s0 + d_long)]


def match_boundary(
    det: Polyline3 | None, gt: Polyline3, ego_origin: Point3, cfg: EvalConfig, d_long: float
) -> PerfResult:
    required = required_gt_points(gt, ego_origin, cfg.sample_spacing, d_long)
    if det is None:
        return PerfResult(0, 0, len(required))
    det_pts = resample(det, cfg.sample_spacing).points
    gt_pts = resample(gt, cfg.sample_spacing).points
    d_det, _ = cKDTree(gt_pts).query(det_pts, k=1)
    tp = int(np.count_nonzero(d_det <= cfg.tp_threshold))
    fn = 0
    if len(required):
        d_req, _ = cKDTree(det_pts).query(required, k=1)
        fn = int(np.count_nonzero(d_req > cfg.tp_threshold))
    return PerfResult(tp, len(det_pts) - tp, fn)


def match_boundaries(
    det: Sequence[Polyline3 | None],
    gt: Sequence[Polyline3],
    ego_origin: Point3,
    cfg: EvalConfig,
    d_long: float,
) -> PerfResult:
    """Pool TP/FP/FN over boundaries; ``det[i]`` is scored against ``gt[i]`` only.

    Matching is per point: a detected sample is a TP when any GT sample lies
    within ``cfg.tp_threshold``, and a required GT sample is a FN when no
    detected sample does.
    """
    if len(det) != len(gt):
        raise ValueError("detected and GT boundary lists differ in length")
    total = PerfResult()
    for d, g in zip(det, gt):
        total = total + match_boundary(d, g, ego_origin, cfg, d_long)
    return total
