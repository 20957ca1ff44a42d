"""Rank bookkeeping in long exact sequences: plain solving, the Gysin and
relative Gysin sequences, the long exact sequence of a pair, and the
connected-sum effect of an index-2 surgery."""

import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .errors import (
    DimensionMismatch,
    Inconsistent,
    NotApplicable,
    Underdetermined,
    ZeroEulerWarning,
)
from .homology import RATIONALS, HomologyProfile, connected_sum, euler_characteristic


@dataclass(frozen=True)
class Term:
    label: str
    dim: Optional[int] = None

    @property
    def known(self):
        return self.dim is not None


def Known(dim, label=""):
    return Term(label or f"<{dim}>", int(dim))


def Unknown(label):
    return Term(label, None)


@dataclass
class ExactSequenceSpec:
    """0 -> terms[0] -> terms[1] -> ... -> terms[-1] -> 0, exact everywhere.

    ``map_ranks[i]`` optionally fixes the rank of the map terms[i] -> terms[i+1].
    """

    terms: List[Term]
    map_ranks: Dict[int, int] = field(default_factory=dict)


@dataclass
class SequenceSolution:
    dims: List[Optional[int]]
    ranks: List[Optional[int]]     # ranks[i]: map terms[i] -> terms[i+1]
    labels: List[str]
    trace: List[str]

    @property
    def underdetermined(self):
        return [l for l, d in zip(self.labels, self.dims) if d is None]

    def value(self, label):
        return self.dims[self.labels.index(label)]

    def as_dict(self):
        return dict(zip(self.labels, self.dims))

    def require(self):
        if self.underdetermined:
            raise Underdetermined("exactness does not force " + ", ".join(self.underdetermined),
                                  self.underdetermined)
        return self


def solve_exact(spec: ExactSequenceSpec) -> SequenceSolution:
    """Propagate dim V_i = rank(f_{i-1}) + rank(f_i) along the sequence.

    Only values forced by exactness (plus any given map ranks) are filled
    in.  Raises Inconsistent when the known data cannot be exact.
    """
    terms = spec.terms
    m = len(terms)
    dims = [t.dim for t in terms]
    labels = [t.label for t in terms]
    # r[i + 1] is the rank of terms[i] -> terms[i+1]; r[0] and r[m] are the
    # maps out of / into the flanking zeros
    r = [None] * (m + 1)
    r[0] = 0
    r[m] = 0
    trace = []
    for i, v in spec.map_ranks.items():
        if not 0 <= i < m - 1:
            raise ValueError(f"no map starting at term {i}")
        r[i + 1] = int(v)
        trace.append(f"rank({labels[i]} -> {labels[i + 1]}) = {v} (given)")

    def setr(j, v, why):
        if v < 0:
            raise Inconsistent(f"negative rank forced at map {j} ({why})")
        if r[j] is None:
            r[j] = v
            return True
        if r[j] != v:
            raise Inconsistent(f"rank of map {j} forced to both {r[j]} and {v} ({why})")
        return False

    changed = True
    while changed:
        changed = False
        for i in range(m):
            a, b, d = r[i], r[i + 1], dims[i]
            if d is not None:
                if a is not None and b is not None:
                    if a + b != d:
                        raise Inconsistent(f"exactness fails at {labels[i]}: {a} + {b} != {d}")
                elif a is not None:
                    changed |= setr(i + 1, d - a, f"exactness at {labels[i]}")
                elif b is not None:
                    changed |= setr(i, d - b, f"exactness at {labels[i]}")
                elif d == 0:
                    changed |= setr(i, 0, f"{labels[i]} = 0")
                    changed |= setr(i + 1, 0, f"{labels[i]} = 0")
            elif a is not None and b is not None:
                dims[i] = a + b
                trace.append(f"{labels[i]} = {a} + {b} = {a + b} (image in + image out)")
                changed = True
    for i, d in enumerate(dims):
        if d is not None and r[i] is not None and r[i + 1] is not None and r[i] + r[i + 1] != d:
            raise Inconsistent(f"exactness fails at {labels[i]}")
    return SequenceSolution(dims, r[1:m], labels, trace)


# --- Gysin sequences ---------------------------------------------------------


def _gysin_spec(base_rank, top_base, fiber_dim, total_label, base_label, psi_ranks=None,
                total_known=None):
    """Terms  X_i -> B_i -> B_{i-k-1} -> X_{i-1} -> ...  for i = n+k+1 .. 0."""
    k = fiber_dim
    N = top_base + k + 1
    terms, ranks = [], {}
    total_known = total_known or {}
    for i in range(N, -1, -1):
        if i >= N:
            terms.append(Known(0, f"{total_label}_{i}"))
        elif i in total_known:
            terms.append(Known(total_known[i], f"{total_label}_{i}"))
        else:
            terms.append(Unknown(f"{total_label}_{i}"))
        terms.append(Known(base_rank(i), f"{base_label}_{i}"))
        terms.append(Known(base_rank(i - k - 1), f"{base_label}_{i - k - 1}'"))
        if psi_ranks and i in psi_ranks:
            ranks[len(terms) - 2] = psi_ranks[i]
    return ExactSequenceSpec(terms, ranks), N


def _collect(sol, label, top):
    out = []
    for i in range(top + 1):
        v = sol.value(f"{label}_{i}")
        out.append(v)
    return out


def gysin_total_space(base: HomologyProfile, fiber_dim: int, psi_rank_at_top=None,
                      euler_number=None, trace=None) -> HomologyProfile:
    """Betti numbers of an oriented S^k-bundle over a closed oriented manifold.

    The only Gysin map that can be nonzero between nonzero groups here is
    H_n(B) -> H_0(B); give its rank directly or as an Euler number (rank 1
    iff nonzero).  Raises Underdetermined if the sequence leaves ranks open.
    """
    if fiber_dim < 1:
        raise ValueError("fiber dimension must be >= 1")
    n = base.top_degree
    psi = {}
    if psi_rank_at_top is None and euler_number is not None:
        psi_rank_at_top = 1 if euler_number != 0 else 0
    if psi_rank_at_top is not None and n - fiber_dim - 1 == 0:
        psi[n] = psi_rank_at_top
    spec, _ = _gysin_spec(base.rank, n, fiber_dim, "H(E)", "H(B)", psi)
    sol = solve_exact(spec)
    if trace is not None:
        trace += sol.trace
    sol.require()
    return HomologyProfile(tuple(_collect(sol, "H(E)", n + fiber_dim)), (), RATIONALS)


def unit_tangent_integer_homology(baseZ: HomologyProfile, euler_number: int, trace=None) -> HomologyProfile:
    """Integer homology of the S^{n-1}-bundle with Euler number e over a
    torsion-free closed oriented n-manifold.

    In the Gysin segment 0 -> H_n(E) -> Z --(x e)--> Z -> H_{n-1}(E) -> ...
    multiplication by e contributes Z_e to H_{n-1}(E) and kills H_n(B).
    """
    n = baseZ.top_degree
    if n < 2:
        raise ValueError("base dimension must be at least 2")
    if not baseZ.is_torsion_free:
        raise NotApplicable("base homology must be torsion free")
    if baseZ.rank(0) != 1 or baseZ.rank(n) != 1:
        raise NotApplicable("base must be closed, connected and orientable")
    e = abs(int(euler_number))
    betti = [0] * (2 * n)
    torsion = [()] * (2 * n)
    for i in range(0, n - 1):
        betti[i] = baseZ.rank(i)
    betti[n - 1] = baseZ.rank(n - 1)
    betti[n] = baseZ.rank(1)
    for i in range(n + 1, 2 * n):
        betti[i] = baseZ.rank(i - n + 1)
    if e == 0:
        warnings.warn("Euler number 0: no torsion, multiplication map has kernel and cokernel Z",
                      ZeroEulerWarning, stacklevel=2)
        betti[n - 1] += 1
        betti[n] += 1
    elif e > 1:
        torsion[n - 1] = (e,)
    if trace is not None:
        trace.append(f"H_{n - 1}(E) gets coker(x{e}: Z -> Z)" + (f" = Z_{e}" if e > 1 else ""))
        trace.append(f"H_{n}(E) = H_1(B) + ker(x{e})")
    return HomologyProfile(tuple(betti), tuple(torsion))


@dataclass(frozen=True)
class PairProfile:
    """Ranks of H(X, A), with the absolute profiles when known."""

    relative: HomologyProfile
    space: Optional[HomologyProfile] = None
    subspace: Optional[HomologyProfile] = None

    @classmethod
    def from_ranks(cls, ranks, space=None, subspace=None):
        return cls(HomologyProfile(tuple(ranks), (), RATIONALS), space, subspace)

    @property
    def ranks(self):
        return self.relative.betti


def relative_gysin(pair: PairProfile, fiber_dim: int, trace=None) -> PairProfile:
    """Relative homology of (E, p^{-1}C) for an S^k-bundle over (B, C)."""
    if fiber_dim < 1:
        raise ValueError("fiber dimension must be >= 1")
    rel = pair.relative
    n = rel.top_degree
    spec, _ = _gysin_spec(rel.rank, n, fiber_dim, "H(X,K)", "H(B,C)")
    sol = solve_exact(spec)
    if trace is not None:
        trace += sol.trace
    sol.require()
    return PairProfile.from_ranks(_collect(sol, "H(X,K)", n + fiber_dim))


def pair_sequence_spec(pair_ranks, subspace: HomologyProfile, space_known=None, boundary_iso_degree=None):
    """... -> H_k(A) -> H_k(M) -> H_k(M,A) -> H_{k-1}(A) -> ...  (k from top down)."""
    top = len(pair_ranks) - 1
    space_known = space_known or {}
    terms, ranks = [], {}
    for k in range(top + 1, -1, -1):
        terms.append(Known(subspace.rank(k), f"H(A)_{k}"))
        if k > top:
            terms.append(Known(0, f"H(M)_{k}"))
        elif k in space_known:
            terms.append(Known(space_known[k], f"H(M)_{k}"))
        else:
            terms.append(Unknown(f"H(M)_{k}"))
        terms.append(Known(pair_ranks[k] if k <= top else 0, f"H(M,A)_{k}"))
        if k == boundary_iso_degree:
            ranks[len(terms) - 1] = pair_ranks[k]
    return ExactSequenceSpec(terms, ranks)


def energy_surface_betti(pair: PairProfile, boundary: HomologyProfile, boundary_iso_degree=4,
                         trace=None) -> HomologyProfile:
    """Betti numbers of a closed orientable manifold M from H(M, A) and H(A).

    Uses the long exact sequence of the pair, the isomorphism
    d_*: H_4(M, A) -> H_3(A) (valid because A projects homeomorphically onto
    the boundary of the 4-dimensional accessible region), and Poincare
    duality for whatever the sequence leaves open.
    """
    ranks = list(pair.ranks)
    n = len(ranks) - 1
    d = boundary_iso_degree
    if d is not None:
        rd = ranks[d] if d <= n else 0
        if rd != boundary.rank(d - 1):
            raise Inconsistent(f"d_* cannot be an isomorphism: H_{d}(M,A) has rank {rd}, "
                               f"H_{d - 1}(A) has rank {boundary.rank(d - 1)}")
        if trace is not None:
            trace.append(f"d_*: H_{d}(M,A) -> H_{d - 1}(A) is an isomorphism (rank {rd})")
    known = {}
    while True:
        sol = solve_exact(pair_sequence_spec(ranks, boundary, known, d))
        if trace is not None:
            trace += [t for t in sol.trace if t not in trace]
        values = {k: sol.value(f"H(M)_{k}") for k in range(n + 1)}
        new = dict(known)
        for k, v in values.items():
            if v is not None:
                new[k] = v
        for k in range(n + 1):
            if k not in new and (n - k) in new:
                new[k] = new[n - k]
                if trace is not None:
                    trace.append(f"H(M)_{k} = H(M)_{n - k} = {new[k]} (Poincare duality)")
        if new == known:
            break
        known = new
    missing = [f"H(M)_{k}" for k in range(n + 1) if k not in known]
    if missing:
        raise Underdetermined("ranks not forced: " + ", ".join(missing), missing)
    return HomologyProfile(tuple(known[k] for k in range(n + 1)), (), RATIONALS)


S2xS5 = HomologyProfile.from_betti((1, 0, 1, 0, 0, 1, 0, 1))


def surgery_connected_sum(m: HomologyProfile, n: int = 7, simply_connected=True) -> HomologyProfile:
    """Betti-level effect of passing an index-2 critical level: M -> M # (S^2 x S^5).

    Only valid for simply connected M, which is taken as an assumption.
    """
    if n != 7:
        raise DimensionMismatch("the surgery rule is only set up for 7-dimensional energy surfaces")
    if m.top_degree != n:
        raise DimensionMismatch(f"profile has top degree {m.top_degree}, expected {n}")
    if not simply_connected:
        raise NotApplicable("surgery rule assumes a simply connected manifold")
    return connected_sum(m, S2xS5, n)


# --- the whole computation for one energy band --------------------------------


def band_betti(tag, oracle: HomologyProfile, fiber_dim=3, trace=None) -> HomologyProfile:
    """Betti numbers of the energy surface of band ``tag`` from H(Q, A_c).

    For M1..M3 ``oracle`` holds the ranks of H(U, dU); they go through the
    relative Gysin sequence and the pair sequence with the known boundary
    of U.  For M4 the superlevel set is empty, ``oracle`` is H(Q) and the
    ordinary Gysin sequence of the unit tangent bundle is used with the
    Euler characteristic of Q as Euler number.
    """
    from .mechanics import RegimeTag, accessible_region

    tag = RegimeTag(tag)
    if tag == RegimeTag.M4:
        e = euler_characteristic(oracle)
        if trace is not None:
            trace.append(f"Euler number e(Q) = {e}")
        return gysin_total_space(oracle, fiber_dim, euler_number=e, trace=trace)
    _, _, boundary = accessible_region(tag)
    lifted = relative_gysin(PairProfile(oracle), fiber_dim, trace=trace)
    return energy_surface_betti(lifted, boundary, boundary_iso_degree=oracle.top_degree, trace=trace)
