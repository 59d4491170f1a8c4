"""Regenerate tests/golden/reproduce_checksums.json from the current code.

Run only after an intended change to figure outputs; review the diff.
"""

import hashlib
import json
import tempfile
from pathlib import Path

from ces_transition import experiments

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden" / "reproduce_checksums.json"


def main():
    sums = {}
    with tempfile.TemporaryDirectory() as tmp:
        for figure in experiments.FIGURES:
            out = Path(tmp) / figure
            experiments.reproduce(figure, out)
            sums[figure] = {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(out.iterdir())}
    GOLDEN.write_text(json.dumps(sums, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {GOLDEN} ({sum(len(v) for v in sums.values())} files)")


if __name__ == "__main__":
    main()
