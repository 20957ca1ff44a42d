"""Chain complexes, their homology, and the closed-form rules for products,
connected sums and duality of manifold homology."""

from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence, Tuple

from .errors import (
    ComplexTooLarge,
    DimensionMismatch,
    InvalidComplex,
    NotASubcomplex,
    NotClosedConnected,
    TorsionPresent,
)
from .intmatrix import DEFAULT_PRIME, IntegerMatrix, elementary_divisors, rank_modp

RATIONALS = "rationals"
INTEGERS = "integers"

SNF_CUTOFF = 20_000


class ChainComplex:
    """Graded free modules C_0..C_n with boundary matrices.

    ``boundaries[k - 1]`` is d_k : C_k -> C_{k-1}, of shape
    (rank C_{k-1}, rank C_k).  ``cells`` optionally labels the basis of each
    C_k (for simplicial complexes: sorted vertex tuples).
    """

    def __init__(self, sizes, boundaries, cells=None):
        self.sizes = tuple(int(s) for s in sizes)
        self.boundaries = list(boundaries)
        if len(self.boundaries) != max(len(self.sizes) - 1, 0):
            raise ValueError("need one boundary matrix per positive degree")
        for k, d in enumerate(self.boundaries, start=1):
            if d.shape != (self.sizes[k - 1], self.sizes[k]):
                raise ValueError(f"d_{k} has shape {d.shape}, expected "
                                 f"{(self.sizes[k - 1], self.sizes[k])}")
        self.cells = cells
        self._index = None

    @property
    def top_degree(self):
        return len(self.sizes) - 1

    def boundary(self, k) -> IntegerMatrix:
        """d_k, with zero maps outside 1..n."""
        if 1 <= k <= self.top_degree:
            return self.boundaries[k - 1]
        rows = self.sizes[k - 1] if 0 <= k - 1 <= self.top_degree else 0
        cols = self.sizes[k] if 0 <= k <= self.top_degree else 0
        return IntegerMatrix(rows, cols)

    def index(self, k, cell):
        if self._index is None:
            self._index = [{c: i for i, c in enumerate(cs)} for cs in self.cells]
        return self._index[k][cell]

    def check(self):
        """Raise InvalidComplex unless d_k d_{k+1} == 0 for every k."""
        for k in range(1, self.top_degree):
            prod = self.boundaries[k - 1] @ self.boundaries[k]
            if not prod.is_zero():
                raise InvalidComplex(f"d_{k} d_{k + 1} != 0")
        return True

    def euler_characteristic(self):
        return sum((-1) ** k * s for k, s in enumerate(self.sizes))

    def __repr__(self):
        return f"ChainComplex(sizes={self.sizes})"


@dataclass(frozen=True)
class HomologyProfile:
    """Free ranks and torsion divisors of H_0..H_n.

    Degrees outside 0..n are reported as zero.
    """

    betti: Tuple[int, ...]
    torsion: Tuple[Tuple[int, ...], ...] = field(default=())
    coefficients: str = INTEGERS

    def __post_init__(self):
        betti = tuple(int(b) for b in self.betti)
        torsion = tuple(tuple(int(t) for t in ts) for ts in self.torsion)
        if not torsion:
            torsion = ((),) * len(betti)
        if len(torsion) != len(betti):
            raise ValueError("torsion list length must match betti length")
        if any(b < 0 for b in betti):
            raise ValueError("negative Betti number")
        for ts in torsion:
            if any(t <= 1 for t in ts):
                raise ValueError("torsion divisors must exceed 1")
            if any(b % a for a, b in zip(ts, ts[1:])):
                raise ValueError("torsion divisors must form a divisibility chain")
        if self.coefficients == RATIONALS and any(torsion):
            raise ValueError("field coefficients carry no torsion")
        object.__setattr__(self, "betti", betti)
        object.__setattr__(self, "torsion", torsion)

    @classmethod
    def from_betti(cls, betti, torsion=None, coefficients=INTEGERS):
        return cls(tuple(betti), tuple(torsion or ()), coefficients)

    @property
    def top_degree(self):
        return len(self.betti) - 1

    def rank(self, k):
        return self.betti[k] if 0 <= k < len(self.betti) else 0

    def torsion_at(self, k):
        return self.torsion[k] if 0 <= k < len(self.torsion) else ()

    @property
    def is_torsion_free(self):
        return not any(self.torsion)

    def rational(self):
        return HomologyProfile(self.betti, (), RATIONALS)

    def group(self, k):
        """Human readable H_k, e.g. ``Z^2 + Z_4``."""
        parts = []
        b = self.rank(k)
        if b == 1:
            parts.append("Z" if self.coefficients == INTEGERS else "Q")
        elif b > 1:
            parts.append(("Z" if self.coefficients == INTEGERS else "Q") + f"^{b}")
        parts += [f"Z_{t}" for t in self.torsion_at(k)]
        return " + ".join(parts) if parts else "0"

    def to_dict(self):
        return {
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "coefficients": self.coefficients,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(d["betti"]), tuple(tuple(t) for t in d.get("torsion", ())),
                   d.get("coefficients", INTEGERS))

    def __str__(self):
        return "(" + ", ".join(self.group(k) for k in range(len(self.betti))) + ")"


def sphere_profile(n):
    b = [0] * (n + 1)
    b[0] += 1
    b[n] += 1
    return HomologyProfile.from_betti(b)


def point_profile():
    return HomologyProfile.from_betti((1,))


def boundary_ranks(C: ChainComplex, prime=DEFAULT_PRIME):
    """Ranks of d_1..d_n over GF(prime); entry k of the result is rank d_k.

    Works from the top degree down so that pivot rows of d_{k+1} can be
    skipped as columns of d_k (they always reduce to zero).
    """
    n = C.top_degree
    ranks = [0] * (n + 2)
    cleared = set()
    for k in range(n, 0, -1):
        pivots = {}
        ranks[k] = rank_modp(C.boundaries[k - 1], prime, skip=cleared, pivots_out=pivots)
        cleared = set(pivots)
    return ranks


def homology(C: ChainComplex, coeffs=RATIONALS, check=True, prime=DEFAULT_PRIME,
             snf_cutoff=SNF_CUTOFF) -> HomologyProfile:
    """Homology of a chain complex over the rationals or the integers.

    Rational ranks come from sparse elimination modulo a large prime.  Integer
    homology needs Smith divisors and is refused above ``snf_cutoff`` nonzeros
    per boundary matrix.
    """
    if check:
        C.check()
    n = C.top_degree
    if n < 0:
        return HomologyProfile((), (), coeffs)
    if coeffs == RATIONALS:
        r = boundary_ranks(C, prime)
        betti = [C.sizes[k] - r[k] - r[k + 1] for k in range(n + 1)]
        return HomologyProfile(tuple(betti), (), RATIONALS)
    if coeffs != INTEGERS:
        raise ValueError(f"unknown coefficients {coeffs!r}")
    divs = [()] * (n + 2)
    for k in range(1, n + 1):
        d = C.boundaries[k - 1]
        if d.nnz > snf_cutoff:
            raise ComplexTooLarge(f"d_{k} has {d.nnz} nonzeros (cutoff {snf_cutoff})")
        divs[k] = elementary_divisors(d)
    betti = [C.sizes[k] - len(divs[k]) - len(divs[k + 1]) for k in range(n + 1)]
    torsion = [tuple(t for t in divs[k + 1] if t > 1) for k in range(n + 1)]
    return HomologyProfile(tuple(betti), tuple(torsion), INTEGERS)


def _selection(C, sub):
    # sub: per-degree collection of cell indices, or of cell labels
    sel = []
    for k in range(C.top_degree + 1):
        items = sub[k] if k < len(sub) else ()
        idx = set()
        for it in items:
            if isinstance(it, (int,)) and not isinstance(it, bool):
                idx.add(it)
            else:
                idx.add(C.index(k, tuple(it)))
        sel.append(idx)
    return sel


def subcomplex(C: ChainComplex, sub) -> ChainComplex:
    """Chain complex spanned by the selected cells (must be face closed)."""
    sel = _selection(C, sub)
    _check_closed(C, sel)
    keep = [sorted(s) for s in sel]
    while len(keep) > 1 and not keep[-1]:
        keep.pop()
    return _restrict(C, keep)


def _check_closed(C, sel):
    for k in range(1, C.top_degree + 1):
        d = C.boundaries[k - 1]
        lower = sel[k - 1]
        for j in sel[k]:
            for r in d.column(j):
                if r not in lower:
                    raise NotASubcomplex(f"boundary of cell {j} in degree {k} leaves the subcomplex")


def _restrict(C, keep):
    sizes = [len(cs) for cs in keep]
    mats = [C.boundaries[k - 1].submatrix(keep[k - 1], keep[k]) for k in range(1, len(keep))]
    cells = None
    if C.cells is not None:
        cells = [[C.cells[k][i] for i in cs] for k, cs in enumerate(keep)]
    return ChainComplex(sizes, mats, cells)


def quotient_complex(C: ChainComplex, sub) -> ChainComplex:
    """C / C(A) for a subcomplex A given as a cell selection."""
    sel = _selection(C, sub)
    _check_closed(C, sel)
    keep = [[i for i in range(C.sizes[k]) if i not in sel[k]] for k in range(C.top_degree + 1)]
    return _restrict(C, keep)


def relative_homology(C: ChainComplex, sub, coeffs=RATIONALS, check_les=False,
                      check=True, prime=DEFAULT_PRIME) -> HomologyProfile:
    """H(X, A) as the homology of the quotient complex C(X)/C(A).

    With ``check_les`` the ranks are also tested against the long exact
    sequence of the pair, which costs two extra homology computations.
    """
    Q = quotient_complex(C, sub)
    # pad to the degree range of X
    rel = homology(Q, coeffs, check=check, prime=prime)
    n = C.top_degree
    betti = tuple(rel.rank(k) for k in range(n + 1))
    torsion = tuple(rel.torsion_at(k) for k in range(n + 1))
    rel = HomologyProfile(betti, torsion, rel.coefficients)
    if check_les:
        hX = homology(C, RATIONALS, check=False, prime=prime)
        hA = homology(subcomplex(C, sub), RATIONALS, check=False, prime=prime)
        if not pair_sequence_consistent(hA, hX, rel):
            raise InvalidComplex("ranks violate the long exact sequence of the pair")
    return rel


def exact_sequence_realizable(dims: Sequence[int]) -> bool:
    """Can a sequence 0 -> V_0 -> ... -> V_m -> 0 of these dimensions be exact?

    Equivalent to every partial alternating sum being non-negative and the
    full alternating sum vanishing.
    """
    r = 0
    for d in dims:
        r = d - r
        if r < 0:
            return False
    return r == 0


def pair_sequence_consistent(hA, hX, hXA) -> bool:
    n = max(hA.top_degree, hX.top_degree, hXA.top_degree)
    dims = []
    for k in range(n, -1, -1):
        dims += [hA.rank(k), hX.rank(k), hXA.rank(k)]
    return exact_sequence_realizable(dims)


def kunneth(P: HomologyProfile, Q: HomologyProfile) -> HomologyProfile:
    """Betti numbers of a product, field coefficients."""
    if not (P.is_torsion_free and Q.is_torsion_free):
        raise TorsionPresent("integer Kunneth needs Tor terms")
    n = P.top_degree + Q.top_degree
    betti = [0] * (n + 1)
    for i, a in enumerate(P.betti):
        for j, b in enumerate(Q.betti):
            betti[i + j] += a * b
    return HomologyProfile(tuple(betti), (), P.coefficients if P.coefficients == Q.coefficients else RATIONALS)


def connected_sum(P: HomologyProfile, Q: HomologyProfile, n: int) -> HomologyProfile:
    if P.top_degree != n or Q.top_degree != n:
        raise DimensionMismatch(f"profiles of degree {P.top_degree}, {Q.top_degree}, expected {n}")
    for X in (P, Q):
        if X.rank(0) != 1 or X.rank(n) != 1:
            raise NotClosedConnected(f"{X} is not a closed connected orientable {n}-manifold")
    betti = [1] + [P.rank(i) + Q.rank(i) for i in range(1, n)] + [1]
    if n == 0:
        betti = [1]
    torsion = [()] + [_merge_torsion(P.torsion_at(i), Q.torsion_at(i)) for i in range(1, n)] + [()]
    coeffs = P.coefficients if P.coefficients == Q.coefficients else RATIONALS
    if coeffs == RATIONALS:
        torsion = ()
    return HomologyProfile(tuple(betti), tuple(torsion[: len(betti)]), coeffs)


def _merge_torsion(a, b):
    # invariant factors of (+Z_a) (+) (+Z_b)
    if not a and not b:
        return ()
    from .intmatrix import IntegerMatrix, elementary_divisors
    ts = list(a) + list(b)
    D = IntegerMatrix.from_dense([[t if i == j else 0 for j in range(len(ts))] for i, t in enumerate(ts)])
    return tuple(t for t in elementary_divisors(D) if t > 1)


def euler_characteristic(P: HomologyProfile) -> int:
    return sum((-1) ** k * b for k, b in enumerate(P.betti))


def poincare_dual_check(P: HomologyProfile, n: int) -> bool:
    return all(P.rank(i) == P.rank(n - i) for i in range(n + 1)) and P.top_degree <= n


def binomial_profile(n):
    """Betti numbers of the n-torus."""
    return HomologyProfile.from_betti([comb(n, k) for k in range(n + 1)])
