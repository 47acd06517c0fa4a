"""
Regenerate qadc/data/classical_weissman_expected.json.

The values come from exhaustive summation over the classical joint distribution, not from the
density-matrix code path that the fixture is used to check.

Usage:
    python scripts/generate_classical_fixture.py [OUTPUT]
"""

import sys
from pathlib import Path

from qadc.quantum.rate_engine import classical_joint, classical_rate_terms
from qadc.quantum.serialization import canonical_json, load_model, load_strategy, write_text

DATA = Path(__file__).resolve().parents[1] / "qadc" / "data"


def build_fixture() -> dict:
    model = load_model(DATA / "classical_weissman.json")
    strat = load_strategy(DATA / "classical_weissman_strategy.json")
    i_vuy, i_vs_u = classical_rate_terms(classical_joint(model, strat))
    return {
        "generator": "scripts/generate_classical_fixture.py",
        "i_vs_given_u": i_vs_u,
        "i_vuy": i_vuy,
        "model": model.name,
        "r_low": i_vuy - i_vs_u,
        "strategy": "classical_weissman_strategy",
    }


def main(argv: list[str]) -> int:
    out = argv[1] if len(argv) > 1 else str(DATA / "classical_weissman_expected.json")
    write_text(out, canonical_json(build_fixture()))
    print(f"[+] Wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
