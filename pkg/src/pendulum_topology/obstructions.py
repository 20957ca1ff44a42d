"""Topological obstructions to geodesic flows, global cross sections and
integrability, evaluated on homology data."""

import enum
from dataclasses import dataclass, field
from math import comb
from typing import Any, List, Optional

from .errors import BadDimension
from .homology import HomologyProfile


class Verdict(str, enum.Enum):
    OBSTRUCTION_FOUND = "ObstructionFound"
    NO_OBSTRUCTION = "NoObstruction"
    NOT_APPLICABLE = "NotApplicable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Condition:
    name: str
    holds: Optional[bool]          # None: not checked
    lhs: Any = None
    rhs: Any = None
    note: str = ""

    def to_dict(self):
        return {"name": self.name, "holds": self.holds, "lhs": self.lhs, "rhs": self.rhs,
                "note": self.note}


@dataclass(frozen=True)
class ObstructionVerdict:
    criterion: str
    verdict: Verdict
    lhs: Any = None
    rhs: Any = None
    conditions: List[Condition] = field(default_factory=list)

    @property
    def obstructed(self):
        return self.verdict == Verdict.OBSTRUCTION_FOUND

    def to_dict(self):
        return {
            "criterion": self.criterion,
            "verdict": str(self.verdict),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "conditions": [c.to_dict() for c in self.conditions],
        }


def geodesic_flow_sides(p: HomologyProfile, n: int):
    b = p.rank
    lhs = abs(sum((-1) ** i * b(i) for i in range(n - 1)) + (-1) ** n * (1 - b(2 * n - 2)))
    rhs = 1 + b(1) - b(n)
    return lhs, rhs


def geodesic_flow_check(p: HomologyProfile, torsion=None, n: int = 4) -> ObstructionVerdict:
    """Necessary condition for a (2n-1)-manifold to be a unit tangent bundle.

    ``torsion`` is the torsion of H_{n-1}; when omitted it is read off the
    profile.  With nontrivial torsion the criterion does not apply.
    """
    if n <= 2:
        raise BadDimension("criterion needs n > 2")
    if p.top_degree != 2 * n - 1:
        raise BadDimension(f"profile has top degree {p.top_degree}, expected {2 * n - 1}")
    if torsion is None:
        torsion = p.torsion_at(n - 1)
    torsion = tuple(t for t in torsion if t > 1)
    lhs, rhs = geodesic_flow_sides(p, n)
    if torsion:
        cond = Condition(f"T_{n - 1} trivial", False, list(torsion), [],
                         "torsion present, identity not required")
        return ObstructionVerdict("geodesic_flow", Verdict.NOT_APPLICABLE, lhs, rhs, [cond])
    cond = Condition("unit tangent bundle identity", lhs == rhs, lhs, rhs)
    verdict = Verdict.NO_OBSTRUCTION if lhs == rhs else Verdict.OBSTRUCTION_FOUND
    return ObstructionVerdict("geodesic_flow", verdict, lhs, rhs, [cond])


def cross_section_check(pZ: HomologyProfile, chi: int, has_equilibria: bool = False) -> ObstructionVerdict:
    """Necessary conditions for a global cross section of finite type."""
    conds = [
        Condition("fiber bundle over S^1", None, note="no homological test; not checked"),
        Condition("euler characteristic vanishes", chi == 0, chi, 0),
        Condition("H_1(M; Z) has a Z summand", pZ.rank(1) >= 1, pZ.rank(1), 1),
        Condition("no equilibrium points", not has_equilibria, bool(has_equilibria), False),
    ]
    failed = any(c.holds is False for c in conds)
    verdict = Verdict.OBSTRUCTION_FOUND if failed else Verdict.NO_OBSTRUCTION
    return ObstructionVerdict("cross_section", verdict, None, None, conds)


def integrability_check(q: HomologyProfile, n: int) -> ObstructionVerdict:
    """Taimanov's bounds beta_k(Q) <= C(n, k); equalities when beta_1 == n."""
    if n < 1 or q.top_degree != n:
        raise BadDimension(f"configuration profile of degree {q.top_degree} for {n} degrees of freedom")
    equal = q.rank(1) == n
    conds = []
    for k in range(n + 1):
        b, c = q.rank(k), comb(n, k)
        holds = b == c if equal else b <= c
        conds.append(Condition(f"beta_{k} {'==' if equal else '<='} C({n},{k})", holds, b, c))
    failed = any(not c.holds for c in conds)
    verdict = Verdict.OBSTRUCTION_FOUND if failed else Verdict.NO_OBSTRUCTION
    return ObstructionVerdict("integrability", verdict, [c.lhs for c in conds], [c.rhs for c in conds],
                              conds)
