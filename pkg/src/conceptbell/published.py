"""Rounded values originally reported for the bundled datasets.

Reports print these next to the recomputed values when the input counts
match the bundled ones. They are four-decimal (or two-decimal) views; the
recomputed values are authoritative.
"""

from __future__ import annotations

from importlib import resources

# CHSH value obtained in a separate human-subject experiment on the same
# concept pairs. Documentation only; nothing in this package computes it.
HUMAN_SUBJECT_CHSH = 2.4197

CONJUNCTION = {
    ("Mother", "Child", "embrace"): {"p_a": 0.37, "p_b": 0.05, "p_ab": 0.83},
    ("Bottle", "Glass", "liquid"): {"p_a": 0.16, "p_b": 0.04, "p_ab": 0.30},
}

CONJUNCTION_COUNTS = {
    ("Mother", "Child", "embrace"): ((415, 155), (475, 22), (365, 303)),
    ("Bottle", "Glass", "liquid"): ((325, 52), (390, 17), (310, 92)),
}

BORN_ANGLES = {
    "Linda": {"p": (0.05, 0.4, 0.7), "angles": (77.08, 50.77, 33.21)},
    "Guppy": {"p": (0.4, 0.9, 0.7), "angles": (50.77, 18.43, 33.21)},
}

# (total, positives) for cells 11, 12, 21, 22 of each experiment
CHSH_COUNTS = {
    "AB": ((400, 4), (391, 39), (380, 142), (389, 2)),
    "ABp": ((407, 41), (403, 4), (385, 23), (405, 5)),
    "ApB": ((399, 219), (402, 3), (405, 78), (402, 1)),
    "ApBp": ((400, 30), (403, 10), (392, 15), (399, 161)),
}

CHSH = {
    "AB": {
        "raw": (0.01, 0.0997, 0.3737, 0.0050),
        "sum": 0.4884,
        "normalized": (0.0205, 0.2042, 0.7651, 0.0103),
        "e": -0.9385,
    },
    "ABp": {
        "raw": (0.1007, 0.0099, 0.0597, 0.0123),
        "sum": 0.1827,
        "normalized": (0.5512, 0.0543, 0.3269, 0.0676),
        "e": 0.2376,
    },
    "ApB": {
        "raw": (0.5489, 0.0075, 0.1926, 0.0025),
        "sum": 0.7514,
        "normalized": (0.7305, 0.0099, 0.2563, 0.0033),
        "e": 0.4675,
    },
    "ApBp": {
        "raw": (0.075, 0.0248, 0.0383, 0.4035),
        "sum": 0.5416,
        "normalized": (0.1385, 0.0458, 0.0707, 0.7450),
        "e": 0.7671,
    },
}
CHSH_S = 2.4107


def bundled(name: str):
    """Path-like handle to a bundled data file (``conjunction.csv``, ``chsh.json``, ``born.csv``)."""
    return resources.files("conceptbell") / "data" / name
