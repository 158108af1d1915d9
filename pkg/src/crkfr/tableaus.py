"""Explicit Runge-Kutta tableaus used by both time steppers."""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ButcherTableau:
    """Coefficients (A, b, c) of an explicit Runge-Kutta method.

    A must be strictly lower triangular, c the row sums of A, and b
    must sum to one; violations raise at construction time.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.a, dtype=float))
        b = np.asarray(self.b, dtype=float)
        c = np.asarray(self.c, dtype=float)
        s = b.size
        if a.shape != (s, s) or c.size != s:
            raise ValueError("inconsistent tableau dimensions")
        if np.any(np.triu(a) != 0.0):
            raise ValueError("tableau is not explicit (A must be strictly lower triangular)")
        if np.max(np.abs(a.sum(axis=1) - c)) > 1e-14:
            raise ValueError("abscissae c must equal the row sums of A")
        if abs(b.sum() - 1.0) > 1e-14:
            raise ValueError("weights b must sum to 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def stages(self) -> int:
        return self.b.size


def _rk4() -> ButcherTableau:
    a = np.zeros((4, 4))
    a[1, 0] = 0.5
    a[2, 1] = 0.5
    a[3, 2] = 1.0
    return ButcherTableau(
        a=a,
        b=np.array([1 / 6, 1 / 3, 1 / 3, 1 / 6]),
        c=np.array([0.0, 0.5, 0.5, 1.0]),
        name="rk4",
    )


def _ssprk33() -> ButcherTableau:
    a = np.zeros((3, 3))
    a[1, 0] = 1.0
    a[2, 0] = 0.25
    a[2, 1] = 0.25
    return ButcherTableau(
        a=a,
        b=np.array([1 / 6, 1 / 6, 2 / 3]),
        c=np.array([0.0, 1.0, 0.5]),
        name="ssprk33",
    )


_TABLEAUS = {"rk4": _rk4, "ssprk33": _ssprk33}


def standard_tableaus(name: str) -> ButcherTableau:
    """Look up a tableau by name; unknown names raise with the list of
    available ones."""
    try:
        return _TABLEAUS[name]()
    except KeyError:
        raise ValueError(
            f"unknown tableau '{name}' (available: {', '.join(sorted(_TABLEAUS))})"
        ) from None
