#!/usr/bin/env python3
"""Sample one adjoint orbit and write its points as CSV for external plotting."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from dotenv import load_dotenv

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))


def main() -> int:
    parser = argparse.ArgumentParser(
        description="Dump adjoint-orbit points of a canonical CR line to CSV."
    )
    parser.add_argument("--group", required=True, help="Built-in group tag (sl2r, su2, heis, e2).")
    parser.add_argument("--t", type=float, default=1.0, help="Family parameter (ignored for heis/e2).")
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument(
        "--out",
        default="",
        help="CSV path; defaults to orbit_<group>_<t>.csv in the current directory.",
    )
    args = parser.parse_args()

    load_dotenv()

    # Imported after env setup.
    from cr_config import load_settings, with_overrides
    from cr_errors import CRGeometryError, error_payload_for
    from cr_formats import write_points_csv
    from cr_logging import configure_logging
    from group_atlas import builtin_algebra, canonical_line
    from realization import adjoint_orbit_sample

    settings = with_overrides(load_settings(use_dotenv=False), seed=args.seed, samples=args.samples)
    configure_logging(settings)
    out_path = Path(args.out or f"orbit_{args.group}_{args.t:g}.csv")

    try:
        sample = adjoint_orbit_sample(
            builtin_algebra(args.group),
            canonical_line(args.group, args.t),
            seed=settings.default_seed,
            samples=settings.default_samples,
            tag=args.group,
            tolerances=settings.tolerances,
        )
        rows = write_points_csv(out_path, sample.points)
    except CRGeometryError as exc:
        payload = {"ok": False, **error_payload_for(exc)}
        print(json.dumps(payload, indent=2, sort_keys=True))
        return exc.exit_code

    payload = {
        "ok": True,
        "path": str(out_path),
        "rows": rows,
        "mu": sample.invariant_mu,
        "max_residual": sample.residual_max,
        "seed": settings.default_seed,
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
