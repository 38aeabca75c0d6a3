"""Surface invariants: the handle operator and the genus partition function.

The partition function of a commutative Frobenius object in Rel is the
Boolean sequence ``Z(g) = (S^g(unit) meets counit)`` where ``S = mu o delta``
is the handle operator.  Iterating ``S`` on subsets of a finite carrier is
eventually periodic, so the whole sequence is captured by a preperiod and a
period, and is rendered as a short proposition in ``g``.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass

from .frobenius import FrobObject
from .relation import FinSet, PowerMap, bits


@dataclass(frozen=True)
class HandleOperator:
    obj: FrobObject
    s_map: PowerMap

    def apply(self, subset: int) -> int:
        out = 0
        image = self.s_map.image
        while subset:
            low = subset & -subset
            out |= image[low.bit_length() - 1]
            subset ^= low
        return out


def handle_operator(f: FrobObject) -> HandleOperator:
    """``S(x)`` is the union over ``y`` and ``z in y*x`` of ``alpha(y) * z``."""
    n = f.n
    alpha = f.alpha.alpha_hat
    t = f.table
    image = []
    for x in range(n):
        acc = 0
        for y in range(n):
            row = alpha[y] * n
            for z in bits(t[y * n + x]):
                acc |= t[row + z]
        image.append(acc)
    return HandleOperator(f, PowerMap(FinSet(n), FinSet(n), tuple(image)))


def genus_state(f: FrobObject, g: int, handle: HandleOperator | None = None) -> int:
    """``S^g o unit`` as a subset mask of the carrier."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    h = handle or handle_operator(f)
    state = f.unit
    for _ in range(g):
        state = h.apply(state)
    return state


def minimize(preperiod: list[bool], period: list[bool]) -> tuple[tuple[bool, ...], tuple[bool, ...]]:
    """Shortest (preperiod, period) describing the same eventually periodic sequence."""
    if not period:
        raise ValueError("period must be nonempty")
    pre = list(preperiod)
    per = list(period)
    p = len(per)
    for d in range(1, p + 1):
        if p % d == 0 and all(per[i] == per[i % d] for i in range(p)):
            per = per[:d]
            break
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = [per[-1]] + per[:-1]
    return tuple(pre), tuple(per)


def _tf(values) -> str:
    return "".join("T" if v else "F" for v in values)


def render(preperiod: tuple[bool, ...], period: tuple[bool, ...]) -> str:
    """Render a minimized sequence as a proposition in ``g``.

    Patterns are tried in a fixed order: True, False, ``g = k``, ``g ≥ k``,
    parity, a single residue ``g ≡ r (mod m)``, and finally an explicit
    listing ``preperiod TF… then period TF…``.
    """
    pre, per = preperiod, period
    if not pre and per == (True,):
        return "True"
    if not pre and per == (False,):
        return "False"
    if per == (False,) and sum(pre) == 1:
        return f"g = {pre.index(True)}"
    if per == (True,) and pre and not any(pre):
        return f"g ≥ {len(pre)}"
    if not pre and sum(per) == 1:
        r = per.index(True)
        m = len(per)
        if m == 2:
            return "g is odd" if r == 1 else "g is even"
        return f"g ≡ {r} (mod {m})"
    return f"preperiod {_tf(pre) or '-'} then period {_tf(per)}"


_PATTERNS = [
    (re.compile(r"^True$"), lambda m: ((), (True,))),
    (re.compile(r"^False$"), lambda m: ((), (False,))),
    (re.compile(r"^g = (\d+)$"), lambda m: ((False,) * int(m[1]) + (True,), (False,))),
    (re.compile(r"^g ≥ (\d+)$"), lambda m: ((False,) * int(m[1]), (True,))),
    (re.compile(r"^g is odd$"), lambda m: ((), (False, True))),
    (re.compile(r"^g is even$"), lambda m: ((), (True, False))),
    (
        re.compile(r"^g ≡ (\d+) \(mod (\d+)\)$"),
        lambda m: ((), tuple(i == int(m[1]) for i in range(int(m[2])))),
    ),
    (
        re.compile(r"^preperiod ([TF]*|-) then period ([TF]+)$"),
        lambda m: (tuple(c == "T" for c in m[1].strip("-")), tuple(c == "T" for c in m[2])),
    ),
]


def parse_proposition(text: str) -> tuple[tuple[bool, ...], tuple[bool, ...]]:
    """Inverse of :func:`render` (up to minimization)."""
    s = text.strip().replace(">=", "≥")
    for pattern, build in _PATTERNS:
        m = pattern.match(s)
        if m:
            return build(m)
    raise ValueError(f"unrecognised proposition {text!r}")


@dataclass(frozen=True)
class PartitionFunction:
    preperiod: tuple[bool, ...]
    period: tuple[bool, ...]
    proposition: str
    formal: bool = False

    @classmethod
    def from_sequence(cls, preperiod, period, formal: bool = False) -> PartitionFunction:
        pre, per = minimize(list(preperiod), list(period))
        return cls(pre, per, render(pre, per), formal)

    @classmethod
    def from_proposition(cls, text: str) -> PartitionFunction:
        return cls.from_sequence(*parse_proposition(text))

    def value(self, g: int) -> bool:
        if g < 0:
            raise ValueError("genus must be non-negative")
        if g < len(self.preperiod):
            return self.preperiod[g]
        return self.period[(g - len(self.preperiod)) % len(self.period)]

    def values(self, count: int) -> list[bool]:
        return [self.value(g) for g in range(count)]

    def to_json(self) -> dict:
        out = {
            "preperiod": list(self.preperiod),
            "period": list(self.period),
            "proposition": self.proposition,
        }
        if self.formal:
            out["formal"] = True
        return out

    @classmethod
    def from_json(cls, obj: dict) -> PartitionFunction:
        return cls.from_sequence(obj["preperiod"], obj["period"], obj.get("formal", False))


def partition_function(f: FrobObject) -> PartitionFunction:
    """Iterate ``S`` from the unit, stopping at the first repeated subset.

    Noncommutative objects still get the sequence, marked ``formal``.
    """
    formal = not f.commutative
    if formal:
        warnings.warn("object is not commutative; the partition function is formal (non-TQFT)", stacklevel=2)
    h = handle_operator(f)
    seen: dict[int, int] = {}
    states = []
    state = f.unit
    while state not in seen:
        seen[state] = len(states)
        states.append(state)
        state = h.apply(state)
    start = seen[state]
    values = [bool(s & f.counit) for s in states]
    return PartitionFunction.from_sequence(values[:start], values[start:], formal)


def element_order(m: int, omega: int) -> int:
    return m // math.gcd(m, omega % m) if m else 1


def partition_function_abelian(m: int, omega: int) -> PartitionFunction:
    """Closed form for the cyclic group of order ``m`` with counit ``{omega}``:
    true exactly when ``(g - 1) * omega`` vanishes mod ``m``."""
    if m < 1:
        raise ValueError("modulus must be at least 1")
    values = [((g - 1) * omega) % m == 0 for g in range(m)]
    return PartitionFunction.from_sequence([], values)
