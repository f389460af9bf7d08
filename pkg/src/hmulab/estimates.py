from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class NormEstimate:
    """A (semi)norm value with the grid that produced it.

    ``levels`` holds the value at each refinement level, coarsest first; the
    last entry is ``value``.  ``error_indicator`` is the relative change
    between the two finest levels.
    """

    value: float
    grid: dict = field(default_factory=dict)
    error_indicator: float = 0.0
    levels: tuple[float, ...] = ()

    def __float__(self):
        return float(self.value)

    @classmethod
    def from_levels(cls, levels, grid):
        levels = tuple(float(v) for v in levels)
        fine = levels[-1]
        if len(levels) > 1:
            coarse = levels[-2]
            scale = max(abs(fine), abs(coarse))
            err = abs(fine - coarse) / scale if scale > 0 else 0.0
        else:
            err = 0.0
        return cls(value=fine, grid=dict(grid), error_indicator=err, levels=levels)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "grid": self.grid,
            "error_indicator": self.error_indicator,
            "levels": list(self.levels),
        }
