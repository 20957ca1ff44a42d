"""Line-oriented text formats.

Simplicial complex::

    simplicial_complex <n_vertices>
    vertex <v>                      # only for vertices not in any simplex
    simplex <v0> <v1> ...
    field <v> <value>               # optional per-vertex potential

Chain complex (one boundary entry per line)::

    chain_complex <top_degree>
    size <k> <n_k>
    entry <k> <row> <col> <value>   # entry of d_k : C_k -> C_{k-1}

Blank lines and ``#`` comments are ignored.
"""

import io

from .complexes import SimplicialComplex
from .homology import ChainComplex
from .intmatrix import IntegerMatrix


def _lines(text):
    for raw in io.StringIO(text):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line.split()


def dumps_simplicial(K: SimplicialComplex) -> str:
    out = [f"simplicial_complex {K.n_vertices}"]
    covered = {v for s in K.simplices for v in s}
    out += [f"vertex {v}" for v in K.vertices if v not in covered]
    out += ["simplex " + " ".join(map(str, s)) for s in K.simplices]
    if K.field is not None:
        out += [f"field {v} {float(x)!r}" for v, x in enumerate(K.field)]
    return "\n".join(out) + "\n"


def loads_simplicial(text) -> SimplicialComplex:
    lines = _lines(text)
    head = next(lines, None)
    if not head or head[0] != "simplicial_complex" or len(head) != 2:
        raise ValueError("expected 'simplicial_complex <n_vertices>' header")
    n = int(head[1])
    simplices, lone, field = [], [], {}
    for tok in lines:
        if tok[0] == "simplex":
            simplices.append(tuple(int(t) for t in tok[1:]))
        elif tok[0] == "vertex":
            lone.append(int(tok[1]))
        elif tok[0] == "field":
            field[int(tok[1])] = float(tok[2])
        else:
            raise ValueError(f"unknown record {tok[0]!r}")
    verts = sorted({v for s in simplices for v in s} | set(lone))
    values = None
    if field:
        if len(field) != n:
            raise ValueError("field must give a value for every vertex")
        values = [field[v] for v in range(n)]
    return SimplicialComplex(n, simplices, field=values, vertices=verts)


def dumps_chain(C: ChainComplex) -> str:
    out = [f"chain_complex {C.top_degree}"]
    out += [f"size {k} {n}" for k, n in enumerate(C.sizes)]
    for k in range(1, C.top_degree + 1):
        for r, c, v in sorted(C.boundary(k).entries(), key=lambda e: (e[1], e[0])):
            out.append(f"entry {k} {r} {c} {v}")
    return "\n".join(out) + "\n"


def loads_chain(text) -> ChainComplex:
    lines = _lines(text)
    head = next(lines, None)
    if not head or head[0] != "chain_complex" or len(head) != 2:
        raise ValueError("expected 'chain_complex <top_degree>' header")
    top = int(head[1])
    sizes = [None] * (top + 1)
    entries = {k: [] for k in range(1, top + 1)}
    for tok in lines:
        if tok[0] == "size":
            sizes[int(tok[1])] = int(tok[2])
        elif tok[0] == "entry":
            k, r, c, v = map(int, tok[1:5])
            entries[k].append((r, c, v))
        else:
            raise ValueError(f"unknown record {tok[0]!r}")
    if any(s is None for s in sizes):
        raise ValueError("missing size line")
    mats = [IntegerMatrix.from_entries(sizes[k - 1], sizes[k], entries[k]) for k in range(1, top + 1)]
    return ChainComplex(sizes, mats)
