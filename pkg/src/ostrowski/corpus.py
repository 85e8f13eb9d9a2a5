"""Curated test corpus: functions with known convexity status per (n, q).

Positive entries have |f^(n)|^q convex on their interval for every cell of
the test grid; negative controls fail the convexity gate somewhere.  The
statuses below were fixed with the grid checker and spot-checked by hand
(e.g. |d/dt (t ln t)| = ln t + 1 is concave on [0.5, 2] but its cube is
convex there because (ln t + 1) stays below 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .expr import ExprFunction, parse
from .quadrature import Interval

#: convexity statuses are tabulated on this (n, q) grid
N_GRID = (1, 2, 3, 4, 5)
Q_GRID = (1.0, 1.5, 2.0, 3.0)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    expression: str
    interval: Interval
    max_n: int
    convexity_status: Mapping[tuple[int, float], bool]
    integral: float | None = None
    negative_control: bool = False
    fn: ExprFunction = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "fn", parse(self.expression))

    def convex_at(self, n: int, q: float = 1.0) -> bool:
        return self.convexity_status[(n, float(q))]


def _status(exceptions: Mapping[tuple[int, float], bool] = {}) -> dict:
    table = {(n, q): True for n in N_GRID for q in Q_GRID}
    table.update(exceptions)
    return table


def _all_nonconvex() -> dict:
    return {(n, q): False for n in N_GRID for q in Q_GRID}


def corpus() -> tuple[CorpusEntry, ...]:
    """The built-in corpus; immutable, safe to share."""
    entries = [
        CorpusEntry("exp[0,1]", "exp(t)", Interval(0, 1), 6, _status(), math.e - 1.0),
        CorpusEntry(
            "exp[-1,2]", "exp(t)", Interval(-1, 2), 6, _status(),
            math.exp(2) - math.exp(-1),
        ),
        CorpusEntry("t^2[0,1]", "t^2", Interval(0, 1), 6, _status(), 1.0 / 3.0),
        CorpusEntry("t^3[0,1]", "t^3", Interval(0, 1), 6, _status(), 1.0 / 4.0),
        CorpusEntry("t^4[0,1]", "t^4", Interval(0, 1), 6, _status(), 1.0 / 5.0),
        CorpusEntry("t^5[0,1]", "t^5", Interval(0, 1), 6, _status(), 1.0 / 6.0),
        CorpusEntry("t^2[1,2]", "t^2", Interval(1, 2), 6, _status(), 7.0 / 3.0),
        CorpusEntry("t^3[1,2]", "t^3", Interval(1, 2), 6, _status(), 15.0 / 4.0),
        CorpusEntry("t^4[1,2]", "t^4", Interval(1, 2), 6, _status(), 31.0 / 5.0),
        CorpusEntry("t^5[1,2]", "t^5", Interval(1, 2), 6, _status(), 63.0 / 6.0),
        CorpusEntry(
            "cosh[-1,1]", "cosh(t)", Interval(-1, 1), 6, _status(), 2.0 * math.sinh(1.0)
        ),
        CorpusEntry("1/t^2[1,2]", "1/t^2", Interval(1, 2), 6, _status(), 0.5),
        CorpusEntry(
            "1/(1+t)[0,1]", "1/(1+t)", Interval(0, 1), 6, _status(), math.log(2.0)
        ),
        CorpusEntry(
            "sin[0,3]", "sin(t)", Interval(0, 3), 6, _all_nonconvex(),
            1.0 - math.cos(3.0), negative_control=True,
        ),
        CorpusEntry(
            "t*ln(t)[0.5,2]", "t*ln(t)", Interval(0.5, 2), 6,
            _status({(1, 1.0): False, (1, 1.5): False, (1, 2.0): False}),
            2.125 * math.log(2.0) - 0.9375, negative_control=True,
        ),
    ]
    return tuple(entries)


def positive_entries() -> tuple[CorpusEntry, ...]:
    return tuple(e for e in corpus() if not e.negative_control)


def load_corpus_file(path) -> tuple[CorpusEntry, ...]:
    """Load entries from a plain-text file: name; expression; a; b; max_n.

    Lines that are blank or start with '#' are skipped.  Convexity statuses
    for loaded entries are computed with the grid checker.
    """
    from .quadrature import check_convexity
    import numpy as np

    entries = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [part.strip() for part in line.split(";")]
            if len(parts) != 5:
                raise ValueError(
                    f"{path}:{lineno}: expected 5 ';'-separated fields, got {len(parts)}"
                )
            name, expression, a_text, b_text, max_n_text = parts
            iv = Interval(float(a_text), float(b_text))
            max_n = int(max_n_text)
            fn = parse(expression)
            status = {}
            for n in N_GRID:
                if n > max_n:
                    continue
                for q in Q_GRID:
                    verdict = check_convexity(
                        lambda t, n=n, q=q: np.abs(fn.deriv(t, n)) ** q, iv
                    )
                    status[(n, q)] = verdict.convex
            entries.append(
                CorpusEntry(
                    name=name,
                    expression=expression,
                    interval=iv,
                    max_n=max_n,
                    convexity_status=status,
                    negative_control=not all(status.values()),
                )
            )
    return tuple(entries)
