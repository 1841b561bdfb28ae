import json
from fractions import Fraction
from pathlib import Path

from gllimits import Poly

GOLDEN = Path(__file__).resolve().parent / "golden"


def derived():
    return json.loads((GOLDEN / "derived.json").read_text(encoding="utf-8"))


def from_terms(items) -> Poly:
    """Inverse of the oracle's frozen term lists."""
    return Poly.from_terms((mono, Fraction(c)) for mono, c in items)
