#!/usr/bin/env python3
"""Writes a deterministic synthetic AIS fleet for the ais-stats fixture.

Per-vessel dimensions hit fixed targets for mean, median, min and max
(std approximately); every vessel reports several messages inside the
study area, some with stale dimensions that a later report supersedes.
Vessels outside the area and a few corrupt rows are mixed in.
"""

import argparse
import random
from datetime import datetime, timedelta, timezone

import numpy as np
from scipy.optimize import least_squares

N_VESSELS = 201
TARGETS = {
    "length": dict(mean=50.1, median=33.0, std=39.6, min=5.0, max=240.0),
    "breadth": dict(mean=9.2, median=8.0, std=4.6, min=1.0, max=34.0),
    "draught": dict(mean=3.2, median=2.7, std=1.3, min=0.1, max=9.3),
}
REGION = (57.044196, 57.062865, 9.909933, 9.971545)
HEADER = "mmsi,timestamp_iso8601,lat,lon,sog_kn,cog_deg,length_m,breadth_m,draught_m,nav_status"


def shaped(t, n):
    """Sorted sample with exact min/median/max; exponents shape each half."""
    half = n // 2
    u = np.linspace(0.0, 1.0, half + 1)[1:-1]

    def build(params):
        q, p1, p2 = np.exp(params[:3])
        w = 1.0 / (1.0 + np.exp(-params[3]))
        lower = t["min"] + (t["median"] - t["min"]) * u**q
        upper = t["median"] + (t["max"] - t["median"]) * (w * u**p1 + (1.0 - w) * u**p2)
        return np.concatenate([[t["min"]], lower, [t["median"]], upper, [t["max"]]])

    def residual(params):
        v = build(params)
        return [v.mean() - t["mean"], v.std() - t["std"]]

    fit = least_squares(residual, x0=[0.0, 1.0, 3.0, 0.0])
    v = np.round(build(fit.x), 1)
    # Spread the rounding drift over the upper half in 0.1 steps.
    steps = int(round((t["mean"] - v.mean()) * n / 0.1))
    for k in range(abs(steps)):
        v[half + 1 + k % (half - 1)] += 0.1 if steps > 0 else -0.1
    return np.sort(np.round(v, 1))


def iso(t):
    return t.strftime("%Y-%m-%dT%H:%M:%SZ")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True)
    ap.add_argument("--seed", type=int, default=9)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    dims = {k: shaped(t, N_VESSELS) for k, t in TARGETS.items()}
    start = datetime(2020, 6, 1, 8, 0, 0, tzinfo=timezone.utc)
    lat0, lat1, lon0, lon1 = REGION
    rows = []

    def fmt(x):
        return "" if x is None else f"{x:.1f}"

    for i in range(N_VESSELS):
        mmsi = 219000000 + i
        length, breadth, draught = (float(dims[k][i]) for k in ("length", "breadth", "draught"))
        status = "restricted manoeuvrability" if i % 37 == 0 else ("under way using engine" if i % 2 else "")
        t = start + timedelta(minutes=rng.randrange(0, 600))
        # A stale report with different dimensions precedes the current ones.
        if i % 5 == 0:
            lat, lon = rng.uniform(lat0, lat1), rng.uniform(lon0, lon1)
            rows.append((t - timedelta(hours=1), mmsi, lat, lon, length + 7.0, breadth + 1.0, draught + 0.4, status))
        for k in range(1 + i % 3):
            lat, lon = rng.uniform(lat0, lat1), rng.uniform(lon0, lon1)
            rows.append((t + timedelta(seconds=10 * k), mmsi, lat, lon, length, breadth, draught, status))

    for i in range(25):
        mmsi = 265000000 + i
        lat = rng.choice([rng.uniform(56.9, lat0 - 0.001), rng.uniform(lat1 + 0.001, 57.2)])
        lon = rng.uniform(9.7, 10.2)
        t = start + timedelta(minutes=rng.randrange(0, 600))
        rows.append((t, mmsi, lat, lon, 300.0 + i, 45.0, 14.0, ""))

    rows.sort(key=lambda r: (r[0], r[1]))
    lines = [HEADER]
    for t, mmsi, lat, lon, length, breadth, draught, status in rows:
        sog = rng.uniform(0.0, 14.0)
        cog = rng.uniform(0.0, 360.0)
        lines.append(
            f"{mmsi},{iso(t)},{lat:.6f},{lon:.6f},{sog:.1f},{cog:.1f},"
            f"{fmt(length)},{fmt(breadth)},{fmt(draught)},{status}"
        )
    # Rows a receiver would reject.
    lines.insert(17, "219999001,2020-06-01T09:00:00Z,not-a-lat,9.95,3.0,90.0,20.0,5.0,1.5,")
    lines.insert(42, "219999002,2020-06-01T09:01:00Z,57.05,9.95,3.0,90.0,20.0,5.0")
    lines.insert(99, "219999003,yesterday,57.05,9.95,3.0,90.0,20.0,5.0,1.5,")
    with open(args.out, "w", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
