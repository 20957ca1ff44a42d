"""Concrete simplicial complexes: spheres, the subdivided icosahedral S^2,
staircase products, and sub/superlevel sets of a vertex potential."""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import LevelTooCloseToVertex, NonMorseLevel
from .homology import RATIONALS, ChainComplex, HomologyProfile, homology, relative_homology
from .intmatrix import IntegerMatrix


class SimplicialComplex:
    """Abstract simplicial complex on vertices 0..n_vertices-1.

    ``simplices`` may list any generating set (typically the maximal
    simplices); all faces are implied.  ``coords`` and ``field`` are optional
    per-vertex arrays.
    """

    def __init__(self, n_vertices, simplices, coords=None, field=None, critical_values=None,
                 vertices=None, ambient_dimension=None):
        self.n_vertices = int(n_vertices)
        # a full subcomplex reports homology up to the dimension of its parent
        self.ambient_dimension = ambient_dimension
        # vertices actually present; a full subcomplex keeps the parent numbering
        self.vertices = range(self.n_vertices) if vertices is None else sorted(int(v) for v in vertices)
        gens = sorted({tuple(sorted(int(v) for v in s)) for s in simplices}, key=lambda s: (len(s), s))
        for s in gens:
            if not s or s[0] < 0 or s[-1] >= self.n_vertices:
                raise ValueError(f"bad simplex {s}")
            if len(set(s)) != len(s):
                raise ValueError(f"repeated vertex in {s}")
        self.simplices = gens
        self.coords = None if coords is None else np.asarray(coords, dtype=float)
        self.field = None if field is None else np.asarray(field, dtype=float)
        if self.coords is not None and len(self.coords) != self.n_vertices:
            raise ValueError("one coordinate row per vertex")
        if self.field is not None and len(self.field) != self.n_vertices:
            raise ValueError("one field value per vertex")
        self.critical_values = None if critical_values is None else tuple(critical_values)

    @property
    def dimension(self):
        return max((len(s) - 1 for s in self.simplices), default=0 if len(self.vertices) else -1)

    @cached_property
    def faces(self):
        """faces[k] = sorted list of k-simplices, colexicographic order."""
        n = self.dimension
        levels = [set() for _ in range(n + 1)]
        for s in self.simplices:
            levels[len(s) - 1].add(s)
        levels[0].update((v,) for v in self.vertices)
        for k in range(n, 0, -1):
            lower = levels[k - 1]
            for s in levels[k]:
                for i in range(k + 1):
                    lower.add(s[:i] + s[i + 1:])
        # colex order: sorting by the largest vertex first keeps every face
        # ahead of its cofaces, which keeps column reduction cheap
        return [sorted(lv, key=lambda s: s[::-1]) for lv in levels]

    def f_vector(self):
        return tuple(len(f) for f in self.faces)

    def euler_characteristic(self):
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    @cached_property
    def chain_complex(self) -> ChainComplex:
        faces = self.faces
        index = [{s: i for i, s in enumerate(f)} for f in faces]
        mats = []
        for k in range(1, len(faces)):
            lower = index[k - 1]
            cols = []
            for s in faces[k]:
                col = {}
                for i in range(k + 1):
                    col[lower[s[:i] + s[i + 1:]]] = -1 if i % 2 else 1
                cols.append(col)
            mats.append(IntegerMatrix(len(faces[k - 1]), len(faces[k]), cols))
        return ChainComplex([len(f) for f in faces], mats, cells=faces)

    def homology(self, coeffs=RATIONALS, check=True):
        h = homology(self.chain_complex, coeffs, check=check)
        top = max(self.dimension, self.ambient_dimension or 0)
        if h.top_degree < top:
            pad = top - h.top_degree
            h = HomologyProfile(h.betti + (0,) * pad, h.torsion + ((),) * pad, h.coefficients)
        return h

    def vertex_selection(self, mask):
        """Per-degree indices of the faces spanned by masked vertices."""
        mask = np.asarray(mask, dtype=bool)
        return [[i for i, s in enumerate(f) if all(mask[v] for v in s)] for f in self.faces]

    def full_subcomplex(self, mask):
        """Every face whose vertices all satisfy ``mask``; vertex numbering kept."""
        mask = np.asarray(mask, dtype=bool)
        keep = [s for f in self.faces[1:] for s in f if all(mask[v] for v in s)]
        verts = [v for v in self.vertices if mask[v]]
        ambient = max(self.dimension, self.ambient_dimension or 0)
        return SimplicialComplex(self.n_vertices, keep, self.coords, self.field, self.critical_values,
                                 vertices=verts, ambient_dimension=ambient)

    def relabel(self, order):
        """Renumber so that old vertex ``order[i]`` becomes vertex ``i``."""
        order = np.asarray(order)
        new = np.empty_like(order)
        new[order] = np.arange(len(order))
        simplices = [tuple(int(new[v]) for v in s) for s in self.simplices]
        coords = None if self.coords is None else self.coords[order]
        field = None if self.field is None else self.field[order]
        verts = [int(new[v]) for v in self.vertices]
        return SimplicialComplex(self.n_vertices, simplices, coords, field, self.critical_values, verts,
                                 self.ambient_dimension)

    def with_field(self, values, critical_values=None):
        return SimplicialComplex(self.n_vertices, self.simplices, self.coords, values,
                                 critical_values if critical_values is not None else self.critical_values,
                                 self.vertices, self.ambient_dimension)

    def __repr__(self):
        return f"SimplicialComplex(n_vertices={self.n_vertices}, f={self.f_vector()})"


@dataclass
class SimplicialPair:
    """A complex X with a face-closed subcomplex A, given by a vertex mask
    (A is the full subcomplex on the masked vertices)."""

    X: SimplicialComplex
    mask: np.ndarray

    @property
    def A(self):
        return self.X.full_subcomplex(self.mask)

    def selection(self):
        return self.X.vertex_selection(self.mask)

    def relative_homology(self, coeffs=RATIONALS, check_les=False):
        return relative_homology(self.X.chain_complex, self.selection(), coeffs,
                                 check_les=check_les)


def sphere_complex(n) -> SimplicialComplex:
    """Boundary of the (n+1)-simplex."""
    if n < 0:
        raise ValueError("n >= 0 required")
    verts = range(n + 2)
    return SimplicialComplex(n + 2, combinations(verts, n + 1))


def disk_complex(n) -> SimplicialComplex:
    """The n-simplex itself, a triangulated D^n."""
    return SimplicialComplex(n + 1, [tuple(range(n + 1))])


def point_complex():
    return SimplicialComplex(1, [(0,)])


def _icosahedron():
    # one vertex at each pole, two staggered rings of five
    z = 1 / np.sqrt(5)
    r = 2 / np.sqrt(5)
    pts = [(0.0, 0.0, 1.0)]
    pts += [(r * np.cos(2 * np.pi * i / 5), r * np.sin(2 * np.pi * i / 5), z) for i in range(5)]
    pts += [(r * np.cos(2 * np.pi * i / 5 + np.pi / 5), r * np.sin(2 * np.pi * i / 5 + np.pi / 5), -z)
            for i in range(5)]
    pts.append((0.0, 0.0, -1.0))
    U = [1 + i for i in range(5)]
    L = [6 + i for i in range(5)]
    tris = []
    for i in range(5):
        j = (i + 1) % 5
        tris.append((0, U[i], U[j]))
        tris.append((11, L[i], L[j]))
        tris.append((U[i], U[j], L[i]))
        tris.append((L[i], L[j], U[j]))
    return np.array(pts), tris


def subdivided_sphere2(level=0) -> SimplicialComplex:
    """Icosahedron subdivided ``level`` times at edge midpoints, projected to
    the unit sphere.  The poles (0, 0, +-1) stay vertices at every level."""
    if level < 0:
        raise ValueError("level >= 0 required")
    pts, tris = _icosahedron()
    pts = [tuple(p) for p in pts]
    for _ in range(level):
        mid = {}

        def midpoint(a, b):
            key = (a, b) if a < b else (b, a)
            if key not in mid:
                m = np.add(pts[a], pts[b])
                m = m / np.linalg.norm(m)
                pts.append(tuple(m))
                mid[key] = len(pts) - 1
            return mid[key]

        new = []
        for a, b, c in tris:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        tris = new
    coords = np.array(pts)
    coords /= np.linalg.norm(coords, axis=1)[:, None]
    return SimplicialComplex(len(coords), tris, coords)


def _maximal(K):
    gens = K.simplices
    top = [s for s in gens]
    sets = [frozenset(s) for s in top]
    out = []
    for s, fs in zip(top, sets):
        if not any(fs < other for other in sets if len(other) > len(fs)):
            out.append(s)
    return out


def product_complex(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of |K| x |L|.

    Vertex (v, w) gets index v * L.n_vertices + w.  A p-simplex times a
    q-simplex is cut into C(p+q, p) simplices, one per monotone lattice path.
    """
    nL = L.n_vertices
    out = []
    for s in _maximal(K):
        p = len(s) - 1
        for t in _maximal(L):
            q = len(t) - 1
            for right_steps in combinations(range(p + q), p):
                i = j = 0
                simplex = [s[0] * nL + t[0]]
                rs = set(right_steps)
                for step in range(p + q):
                    if step in rs:
                        i += 1
                    else:
                        j += 1
                    simplex.append(s[i] * nL + t[j])
                out.append(tuple(simplex))
    coords = None
    if K.coords is not None and L.coords is not None:
        coords = np.hstack([np.repeat(K.coords, nL, axis=0), np.tile(L.coords, (K.n_vertices, 1))])
    return SimplicialComplex(K.n_vertices * nL, out, coords)


def pendulum_configuration_complex(params, level=1) -> SimplicialComplex:
    """Triangulated S^2 x S^2 carrying the pendulum potential at each vertex.

    Vertices are renumbered by increasing potential (ties by original index).
    """
    from .mechanics import critical_points

    S = subdivided_sphere2(level)
    Q = product_complex(S, S)
    z1 = Q.coords[:, 2]
    z2 = Q.coords[:, 5]
    V = params.g * params.m2 * params.l2 * (params.k * z1 + z2)
    order = np.lexsort((np.arange(len(V)), V))
    crit = tuple(cp.potential_value for cp in critical_points(params, verify=False))
    return Q.with_field(V, crit).relabel(order)


def _check_level(Q, c, tol_level, tol_crit):
    if Q.field is None:
        raise ValueError("complex carries no potential field")
    if tol_level is not None and np.any(np.abs(Q.field - c) <= tol_level):
        raise LevelTooCloseToVertex(f"level {c} within {tol_level} of a vertex value")
    if Q.critical_values is not None:
        scale = max(1.0, max(abs(v) for v in Q.critical_values))
        tol = tol_crit * scale
        for v in Q.critical_values:
            if abs(c - v) <= tol:
                raise NonMorseLevel(f"level {c} is a critical value {v}")


def superlevel_pair(Q: SimplicialComplex, c, tol_level=None, tol_crit=1e-9) -> SimplicialPair:
    """(Q, A_c) with A_c the full subcomplex on vertices where V > c."""
    _check_level(Q, c, tol_level, tol_crit)
    return SimplicialPair(Q, Q.field > c)


def sublevel_complex(Q: SimplicialComplex, c, tol_level=None, tol_crit=1e-9) -> SimplicialComplex:
    """Full subcomplex on vertices where V <= c."""
    _check_level(Q, c, tol_level, tol_crit)
    return Q.full_subcomplex(Q.field <= c)
