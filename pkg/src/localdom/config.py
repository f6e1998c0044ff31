from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

DEFAULT_R1 = 7
DEFAULT_R2 = 13
DEFAULT_DIAM_CAP = 40
DEFAULT_BRUTE_CAP = 62


@dataclass(frozen=True)
class AlgorithmConfig:
    """Tunable radii of the cut-based algorithms.

    ``r1`` is the radius of local 1-cuts, ``r2`` of local 2-cuts and the
    interesting-vertex test. ``diam_cap`` bounds the diameter of residual
    components the brute-force phase gathers (``None`` = gather whatever the
    component needs); ``brute_cap`` bounds their vertex count.
    """

    r1: int = DEFAULT_R1
    r2: int = DEFAULT_R2
    diam_cap: int | None = DEFAULT_DIAM_CAP
    brute_cap: int = DEFAULT_BRUTE_CAP
    seed: int = 0

    def __post_init__(self):
        if self.r1 < 1:
            raise ValueError(f"r1 must be >= 1, got {self.r1}")
        if self.r2 < 2:
            raise ValueError(f"r2 must be >= 2, got {self.r2}")
        if self.diam_cap is not None and self.diam_cap < 1:
            raise ValueError(f"diam_cap must be >= 1, got {self.diam_cap}")
        if not 1 <= self.brute_cap <= DEFAULT_BRUTE_CAP:
            raise ValueError(f"brute_cap must lie in 1..{DEFAULT_BRUTE_CAP}")


@dataclass(frozen=True)
class ControlConfig:
    """Class description consumed by the dimension-parametrised variant.

    ``control`` is the control function of the class (callable or a table
    holding at least the values at 5 and 11); ``dim`` its asymptotic
    dimension. Nothing here refers to the excluded minor.
    """

    dim: int
    control: Callable[[int], int] | Mapping[int, int]
    diam_cap: int | None = None
    seed: int = 0

    def f(self, r: int) -> int:
        c = self.control
        return int(c(r)) if callable(c) else int(c[r])

    def radii(self) -> tuple[int, int]:
        return self.f(5) + 2, self.f(11) + 5

    def to_algorithm_config(self) -> AlgorithmConfig:
        r1, r2 = self.radii()
        return AlgorithmConfig(r1=r1, r2=r2, diam_cap=self.diam_cap, seed=self.seed)

    def ratio_bound(self) -> int:
        """Sum of the counting constants ``3(d+1) + 22(d+1) + 1`` at this dimension."""
        return 3 * (self.dim + 1) + 22 * (self.dim + 1) + 1
