"""Regenerate the bundled C_S / C_1 / C_2 / C_3 scenario fixtures.

All four share one straight 3.5 m rural lane (x from -10 m to 150 m) with
oncoming traffic on the left and a sidewalk on the right.  The ego vehicle is
2.0 m wide, so the tolerable centerline deviation is 0.75 m.  Detections come
from the sensor model with zero noise:

    cs  13.89 m/s, ranges 40/40, both boundaries shifted right by 0.1 * 0.75
    c1  27.78 m/s, ranges 30/60, same shift
    c2  13.89 m/s, ranges 40/40, right boundary pushed 1.8 m outward for
        s in [20, 30) m, moving the centerline 0.9 m = 1.2 * 0.75 toward the sidewalk
    c3  13.89 m/s, ranges 40/40, both boundaries shifted right by 0.2 * 0.75

Usage: python scripts/make_fixtures.py [outdir]
"""

import json
import sys
from pathlib import Path

LANE_WIDTH = 3.5
VEHICLE_WIDTH = 2.0
TH_LAT = (LANE_WIDTH - VEHICLE_WIDTH) / 2
N_FRAMES = 10
DT = 0.1


def lane():
    half = LANE_WIDTH / 2
    return {
        "id": "ego_lane",
        "width_m": LANE_WIDTH,
        "road_type": "rural",
        "left_boundary": [[-10.0, half, 0.0], [150.0, half, 0.0]],
        "right_boundary": [[-10.0, -half, 0.0], [150.0, -half, 0.0]],
        "left_adjacent": {"kind": "opposite_direction", "speed_limit_mps": 27.78, "angle_deg": 180.0},
        "right_adjacent": {"kind": "vrus", "speed_limit_mps": 0.0, "angle_deg": 0.0},
    }


def scenario(name, speed, ranges, shift=0.0, schedule=()):
    # a rightward shift moves the left boundary inward and the right boundary outward
    return {
        "schema_version": "1.0",
        "name": name,
        "lane": lane(),
        "eval_config": {"t_delay_s": 0.1, "a_mps2": 7.5, "x_lat_m": 0.0},
        "trajectory": {
            "ego": {"speed_mps": speed, "vehicle_width_m": VEHICLE_WIDTH},
            "dt_s": DT,
            "origins": [[round(speed * DT * i, 6), 0.0, 0.0] for i in range(N_FRAMES)],
        },
        "sensor": {
            "range_left_m": ranges[0],
            "range_right_m": ranges[1],
            "lateral_noise_sigma_m": 0.0,
            "offset_left_m": round(shift, 6),
            "offset_right_m": round(-shift, 6),
            "offset_schedule": list(schedule),
            "dropout_frame_prob": 0.0,
            "dropout_boundary_prob": 0.0,
            "seed": 7,
        },
    }


CASES = {
    "cs": scenario("cs", 13.89, (40.0, 40.0), shift=0.1 * TH_LAT),
    "c1": scenario("c1", 27.78, (30.0, 60.0), shift=0.1 * TH_LAT),
    "c2": scenario(
        "c2",
        13.89,
        (40.0, 40.0),
        schedule=[{"side": "right", "s_start_m": 20.0, "s_end_m": 30.0, "offset_m": -2 * 1.2 * TH_LAT}],
    ),
    "c3": scenario("c3", 13.89, (40.0, 40.0), shift=0.2 * TH_LAT),
}


def main(outdir):
    outdir.mkdir(parents=True, exist_ok=True)
    for name, doc in CASES.items():
        path = outdir / f"{name}.scenario.json"
        path.write_text(json.dumps(doc, indent=2) + "\n")
        print(path)


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parents[1] / "src" / "lsm" / "fixtures")
