"""Named matrix pairs used throughout the examples and the summary table."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .algebra import Mat2, lower_shear, parse_matrix_spec, render_matrix, upper_shear
from .errors import ParseError


@dataclass(frozen=True)
class PairSpec:
    name: Optional[str]
    A: Mat2
    B: Mat2
    description: str = ""
    # known maximal growth rate, the periodic block attaining it, and whether it is proven
    s_max_known: Optional[float] = None
    s_max_block: Optional[str] = None
    s_max_proven: bool = False

    @property
    def label(self):
        return self.name or f"{render_matrix(self.A)}|{render_matrix(self.B)}"


REGISTRY = {
    "a1b1": PairSpec(
        "a1b1", upper_shear(1), lower_shear(1), "A(1), B(1)",
        (1 + math.sqrt(5)) / 2, "AB", True,
    ),
    "a2b2": PairSpec(
        "a2b2", upper_shear(2), lower_shear(2), "A(2), B(2)",
        1 + math.sqrt(2), "AB", True,
    ),
    "a2bm2": PairSpec(
        "a2bm2", upper_shear(2), lower_shear(-2), "A(2), B(-2)",
        math.sqrt(2 + math.sqrt(3)), "AABB", False,
    ),
    "pollicott": PairSpec(
        "pollicott", Mat2(2, 1, 1, 1), Mat2(3, 1, 2, 1), "Pollicott's pair (XY, XY^2)",
        2 + math.sqrt(3), "B", True,
    ),
    "binary24": PairSpec(
        "binary24", Mat2(1, 1, 0, 1), Mat2(0, 1, 1, 0), "Jungers-Blondel binary pair",
        ((3 + math.sqrt(13)) / 2) ** 0.25, "AAAB", False,
    ),
    "jurga_morris": PairSpec(
        "jurga_morris", Mat2(3, 1, 1, 3), Mat2(5, 2, 2, 5), "Jurga-Morris pair",
    ),
}

SUMMARY_PAIRS = ("binary24", "a1b1", "a2b2", "a2bm2", "pollicott")


def resolve_pair(text: str) -> PairSpec:
    """A registry name, or two matrices separated by ``|`` (``"1,2;0,1|1,0;2,1"``)."""
    key = text.strip()
    if key in REGISTRY:
        return REGISTRY[key]
    if "|" not in key:
        raise ParseError(
            f"unknown pair {key!r}; use one of {', '.join(REGISTRY)} or 'a,b;c,d|a,b;c,d'"
        )
    left, right = key.split("|", 1)
    return PairSpec(None, parse_matrix_spec(left), parse_matrix_spec(right))
