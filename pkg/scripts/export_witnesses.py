#!/usr/bin/env python3
"""Write every threshold-table witness as a CLI-ready JSON config file.

Usage: python3 scripts/export_witnesses.py [outdir]

Each file certifies one table row; feed it back through the CLI, e.g.

    dplct lct witnesses/deg4.json
    dplct lct witnesses/deg2_tacnodal.json --lambda 3/4
"""

import json
import sys
from pathlib import Path

from delpezzo_lct import SCENARIOS, witness
from delpezzo_lct.configio import config_to_json_obj
from delpezzo_lct.rationals import format_rational


def main() -> int:
    outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "witnesses")
    outdir.mkdir(parents=True, exist_ok=True)
    for sc in SCENARIOS:
        rec = witness(sc)
        path = outdir / f"{sc.variant}.json"
        path.write_text(
            json.dumps(config_to_json_obj(rec.config), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        print(f"{path}  (expected lct = {format_rational(sc.omega)})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
