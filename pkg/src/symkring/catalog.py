"""Built-in example specs: small minimal-rank symmetric spaces with fans.

Each entry is a JSON-style dict accepted by the CLI and by
`build_symmetric_datum`; subdivided variants carry a `subdivision` key.
Rank-1 restricted systems admit no nontrivial smooth subdivision of the
half-line chamber, so only the rank-2 examples have split variants.
"""

from __future__ import annotations

from .root_data import pgl2n_psp2n_theta

_SPLIT_RANK2 = {
    "rays": [[1, 0], [0, 1], [1, 1]],
    "max_cones": [[0, 2], [1, 2]],
}


def _pgl_spec(n: int) -> dict:
    return {
        "type": "A",
        "rank": 2 * n - 1,
        "theta_matrix": [list(row) for row in pgl2n_psp2n_theta(n)],
    }


EXAMPLES: dict[str, dict] = {
    "pgl4_psp4": _pgl_spec(2),
    "pgl6_psp6": _pgl_spec(3),
    "pgl6_psp6_split": {**_pgl_spec(3), "subdivision": _SPLIT_RANK2},
    "group_a1": {"type": "A", "rank": 1, "group_case": True},
    "group_a2": {"type": "A", "rank": 2, "group_case": True},
    "group_a2_split": {
        "type": "A",
        "rank": 2,
        "group_case": True,
        "subdivision": _SPLIT_RANK2,
    },
    "sl4_su22": {
        # involution of A3 fixing alpha_1 and alpha_3; used by splitting-check
        "type": "A",
        "rank": 3,
        "theta_matrix": [list(row) for row in pgl2n_psp2n_theta(2)],
    },
}


def example_spec(name: str) -> dict:
    if name not in EXAMPLES:
        raise KeyError(
            f"unknown example {name!r}; known: {', '.join(sorted(EXAMPLES))}"
        )
    return {"name": name, **EXAMPLES[name]}
