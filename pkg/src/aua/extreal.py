"""Extended reals: a finite value, positive infinity, or undefined.

Undefined is kept distinct from NaN on purpose: it compares with nothing
and raises instead of quietly propagating through ``<`` or ``max``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

FINITE = "finite"
POS_INF = "inf"
UNDEFINED = "undefined"


@dataclass(frozen=True)
class ExtendedReal:
    kind: str
    value: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in (FINITE, POS_INF, UNDEFINED):
            raise ValueError(f"unknown ExtendedReal kind {self.kind!r}")
        if self.kind == FINITE:
            if not math.isfinite(self.value):
                raise ValueError(f"finite ExtendedReal needs a finite value, got {self.value!r}")
            object.__setattr__(self, "value", float(self.value))
        else:
            object.__setattr__(self, "value", 0.0)

    @classmethod
    def finite(cls, value: float) -> "ExtendedReal":
        return cls(FINITE, value)

    @classmethod
    def inf(cls) -> "ExtendedReal":
        return cls(POS_INF)

    @classmethod
    def undefined(cls) -> "ExtendedReal":
        return cls(UNDEFINED)

    @classmethod
    def from_float(cls, x: float) -> "ExtendedReal":
        if math.isnan(x):
            return cls.undefined()
        if x == math.inf:
            return cls.inf()
        if x == -math.inf:
            raise ValueError("negative infinity is not representable")
        return cls.finite(x)

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def is_inf(self) -> bool:
        return self.kind == POS_INF

    @property
    def is_undefined(self) -> bool:
        return self.kind == UNDEFINED

    def __add__(self, other: Union["ExtendedReal", float, int]) -> "ExtendedReal":
        if not isinstance(other, ExtendedReal):
            other = ExtendedReal.from_float(float(other))
        if self.is_undefined or other.is_undefined:
            return ExtendedReal.undefined()
        if self.is_inf or other.is_inf:
            return ExtendedReal.inf()
        return ExtendedReal.finite(self.value + other.value)

    __radd__ = __add__

    def _key(self, other: "ExtendedReal") -> tuple:
        if not isinstance(other, ExtendedReal):
            other = ExtendedReal.from_float(float(other))
        if self.is_undefined or other.is_undefined:
            raise TypeError("undefined values are not ordered")
        return (self.is_inf, self.value), (other.is_inf, other.value)

    def __lt__(self, other):
        a, b = self._key(other)
        return a < b

    def __le__(self, other):
        a, b = self._key(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._key(other)
        return a > b

    def __ge__(self, other):
        a, b = self._key(other)
        return a >= b

    def __float__(self) -> float:
        if self.is_undefined:
            raise TypeError("undefined has no float value")
        return math.inf if self.is_inf else self.value

    def to_json(self) -> Union[float, str]:
        """JSON form: a number, ``"inf"`` or ``"undefined"``."""
        if self.is_finite:
            return self.value
        return self.kind

    @classmethod
    def from_json(cls, raw: Union[float, int, str]) -> "ExtendedReal":
        if raw == POS_INF:
            return cls.inf()
        if raw == UNDEFINED:
            return cls.undefined()
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise ValueError(f"not an ExtendedReal JSON value: {raw!r}")
        return cls.finite(raw)

    def format(self, decimals: int = 2) -> str:
        if self.is_inf:
            return "∞"
        if self.is_undefined:
            return "n/a"
        return f"{self.value:.{decimals}f}"

    def __str__(self) -> str:
        if self.is_finite:
            return repr(self.value)
        return self.kind
