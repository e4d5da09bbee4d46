"""Cut-polygon model of a nonorientable surface and its cellular homology.

Cutting ``N_{g,s}^n`` along the chain of circles ``a_1..a_g`` and the arcs
``v_1..v_{n+s}`` leaves a disk whose boundary reads

    a_1 .. a_{g-1} a_g a_{g-1} .. a_1   (v-block)   a_1 .. a_g .. a_2 a_1

where the v-block is ``v_i v_i^-1`` around each puncture and
``v_j u_k v_j^-1`` around each hole.  Each of ``a_2..a_{g-1}`` (and
``a_1``) is cut into two segments, so its label occurs four times.  The
two a-blocks are glued position by position; the second block runs
forwards on its rising half and backwards on its falling half.  That
assignment was found by exhaustive search over pairings and signs and is
checked by the test-suite against Euler characteristic, orientability
and integral H_1 for every small (g, s, n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .linalg import AbelianInvariants, IntegerMatrix, inverse, invariant_factors, snf

__all__ = [
    "SurfaceSpec",
    "Side",
    "PolygonModel",
    "CellComplex",
    "build_polygon",
    "polygon_from_word",
    "glue",
    "h1",
    "is_orientable",
    "cycle_class",
]


@dataclass(frozen=True)
class SurfaceSpec:
    """Genus ``g`` (number of crosscaps), ``s`` boundary circles, ``n`` punctures."""

    g: int
    s: int = 0
    n: int = 0

    def __post_init__(self):
        if self.g < 1:
            raise ValueError(f"genus must be at least 1, got {self.g}")
        if self.s < 0 or self.n < 0:
            raise ValueError("s and n must be non-negative")

    @property
    def r(self) -> int:
        return (self.g - 1) // 2

    @property
    def odd(self) -> bool:
        return self.g % 2 == 1

    def require_supported_range(self) -> None:
        if self.g < 3:
            raise ValueError(f"genus must be at least 3, got {self.g}")

    def __str__(self) -> str:
        return f"N_{{{self.g},{self.s}}}^{self.n}"


@dataclass(frozen=True)
class Side:
    label: str
    edge: str
    exponent: int

    @property
    def token(self) -> str:
        return self.label if self.exponent == 1 else f"{self.label}^-1"


@dataclass(frozen=True)
class PolygonModel:
    sides: tuple[Side, ...]
    puncture_marks: tuple[str, ...] = ()
    boundary_edges: tuple[str, ...] = ()

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(x.label for x in self.sides)

    @property
    def word(self) -> str:
        return " ".join(x.token for x in self.sides)

    def __len__(self) -> int:
        return len(self.sides)


def build_polygon(spec: SurfaceSpec) -> PolygonModel:
    g, s, n = spec.g, spec.s, spec.n
    rising = list(range(1, g + 1))
    falling = list(range(g - 1, 0, -1))

    first = [Side(f"a_{i}", f"a_{i}", 1) for i in rising]
    first += [Side(f"a_{i}", f"a_{i}'", 1) for i in falling]

    middle = []
    for i in range(1, n + 1):
        middle += [Side(f"v_{i}", f"v_{i}", 1), Side(f"v_{i}", f"v_{i}", -1)]
    for k in range(1, s + 1):
        j = n + k
        middle += [Side(f"v_{j}", f"v_{j}", 1), Side(f"u_{k}", f"u_{k}", 1),
                   Side(f"v_{j}", f"v_{j}", -1)]

    second = [Side(f"a_{i}", f"a_{i}", 1) for i in rising]
    second += [Side(f"a_{i}", f"a_{i}'", -1) for i in falling]

    return PolygonModel(
        tuple(first + middle + second),
        tuple(f"v_{i}" for i in range(1, n + 1)),
        tuple(f"u_{k}" for k in range(1, s + 1)),
    )


def polygon_from_word(text: str) -> PolygonModel:
    """Polygon from a token line such as ``"a b a^-1 b^-1"``.

    Each label is one edge; labels occurring once are free boundary edges.
    """
    sides = []
    for tok in text.split():
        label, e = (tok[:-3], -1) if tok.endswith("^-1") else (tok, 1)
        sides.append(Side(label, label, e))
    counts: dict[str, int] = {}
    for x in sides:
        counts[x.edge] = counts.get(x.edge, 0) + 1
    bad = [e for e, c in counts.items() if c > 2]
    if bad:
        raise ValueError(f"edges occurring more than twice: {bad}")
    return PolygonModel(tuple(sides), (), tuple(e for e, c in counts.items() if c == 1))


def is_orientable(model: PolygonModel) -> bool:
    """A polygon surface is orientable iff each paired edge is read once
    forwards and once backwards."""
    seen: dict[str, list[int]] = {}
    for x in model.sides:
        seen.setdefault(x.edge, []).append(x.exponent)
    return all(sum(es) == 0 for es in seen.values() if len(es) == 2)


@dataclass(frozen=True)
class CellComplex:
    """One 2-cell attached along the polygon word.

    ``edges`` lists ``(name, tail, head)`` with vertex classes numbered
    ``0..num_vertices-1`` in order of first appearance around the polygon.
    """

    num_vertices: int
    edges: tuple[tuple[str, int, int], ...]
    attaching: tuple[tuple[str, int], ...]
    boundary_edges: tuple[str, ...] = ()

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + 1

    @property
    def edge_index(self) -> dict[str, int]:
        return {name: i for i, (name, _, _) in enumerate(self.edges)}

    def d1(self) -> IntegerMatrix:
        rows = [[0] * self.num_edges for _ in range(self.num_vertices)]
        for j, (_, tail, head) in enumerate(self.edges):
            rows[head][j] += 1
            rows[tail][j] -= 1
        return IntegerMatrix.from_rows(rows, self.num_edges)

    def d2(self) -> IntegerMatrix:
        col = [0] * self.num_edges
        idx = self.edge_index
        for name, e in self.attaching:
            col[idx[name]] += e
        return IntegerMatrix.from_rows([[c] for c in col], 1)

    def summary(self) -> str:
        return (f"V={self.num_vertices} E={self.num_edges} F=1 "
                f"chi={self.euler_characteristic} H1={h1(self)}")


def glue(model: PolygonModel) -> CellComplex:
    """Identify like edges of the polygon and compute vertex classes."""
    counts: dict[str, int] = {}
    for x in model.sides:
        counts[x.edge] = counts.get(x.edge, 0) + 1
    for edge, c in counts.items():
        if c > 2:
            raise ValueError(f"edge {edge} occurs {c} times")
        if c == 1 and edge not in model.boundary_edges:
            raise ValueError(f"edge {edge} occurs once but is not a boundary edge")
        if c == 2 and edge in model.boundary_edges:
            raise ValueError(f"boundary edge {edge} occurs twice")

    parent: dict[tuple[str, str], tuple[str, str]] = {}

    def find(v):
        parent.setdefault(v, v)
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    def start(x: Side):
        return (x.edge, "tail" if x.exponent == 1 else "head")

    def end(x: Side):
        return (x.edge, "head" if x.exponent == 1 else "tail")

    sides = model.sides
    for k, x in enumerate(sides):
        union(end(x), start(sides[(k + 1) % len(sides)]))

    edge_order = list(dict.fromkeys(x.edge for x in sides))
    number: dict = {}
    for x in sides:
        for v in (start(x), end(x)):
            root = find(v)
            if root not in number:
                number[root] = len(number)
    edges = tuple(
        (e, number[find((e, "tail"))], number[find((e, "head"))]) for e in edge_order
    )
    return CellComplex(
        len(number),
        edges,
        tuple((x.edge, x.exponent) for x in sides),
        tuple(model.boundary_edges),
    )


class _H1Basis:
    """Kernel basis of d1 and the Smith form of the boundaries inside it."""

    def __init__(self, complex: CellComplex):
        d1 = complex.d1()
        f1 = snf(d1)
        self.kernel_start = f1.rank
        self.V1inv = inverse(f1.V)
        kdim = complex.num_edges - f1.rank
        # d2 columns written in the kernel basis (tail coordinates of V1^-1 x)
        d2 = complex.d2()
        coords = self.V1inv @ d2
        rel_rows = [[coords[self.kernel_start + i, j] for i in range(kdim)]
                    for j in range(d2.cols)]
        self.relations = IntegerMatrix.from_rows(rel_rows, kdim)
        self.kdim = kdim
        self.form = snf(self.relations)
        self.invariants = invariant_factors(self.relations, kdim)


def h1(complex: CellComplex) -> AbelianInvariants:
    """Integral first homology of the glued complex."""
    return _H1Basis(complex).invariants


def cycle_class(complex: CellComplex, z: Mapping[str, int]) -> tuple[int, ...]:
    """Coordinates of the cycle ``z`` in H_1.

    The result lists the free coordinates first and then one coordinate per
    torsion factor (reduced modulo that factor, largest factor first), the
    same order in which the invariants are printed.
    """
    idx = complex.edge_index
    for name in z:
        if name not in idx:
            raise ValueError(f"unknown edge {name!r}")
    vec = [0] * complex.num_edges
    for name, c in z.items():
        vec[idx[name]] += c
    if any(complex.d1().apply(vec)):
        raise ValueError("chain is not a cycle")
    basis = _H1Basis(complex)
    coords = basis.V1inv.apply(vec)[basis.kernel_start:]
    # row vector times V of the relation Smith form
    V = basis.form.V
    new = [sum(coords[i] * V[i, j] for i in range(basis.kdim)) for j in range(basis.kdim)]
    diag = list(basis.form.diagonal) + [0] * (basis.kdim - len(basis.form.diagonal))
    free = [new[j] for j in range(basis.kdim) if diag[j] == 0]
    torsion = [(new[j] % diag[j], diag[j]) for j in range(basis.kdim) if diag[j] > 1]
    torsion.sort(key=lambda t: -t[1])
    return tuple(free) + tuple(c for c, _ in torsion)


def surface_h1(spec: SurfaceSpec) -> AbelianInvariants:
    return h1(glue(build_polygon(spec)))


def expected_h1(spec: SurfaceSpec) -> AbelianInvariants:
    """H_1 of N_{g,s}^n from the classification (punctures are marked points)."""
    if spec.s == 0:
        return AbelianInvariants(spec.g - 1, (2,))
    return AbelianInvariants(spec.g + spec.s - 1)


def side_counts(model: PolygonModel) -> dict[str, int]:
    out: dict[str, int] = {}
    for label in model.labels:
        out[label] = out.get(label, 0) + 1
    return out


def orientable_word(h: int) -> PolygonModel:
    """The standard genus-h orientable word ``prod [x_i, y_i]``."""
    toks: list[str] = []
    for i in range(1, h + 1):
        toks += [f"x_{i}", f"y_{i}", f"x_{i}^-1", f"y_{i}^-1"]
    return polygon_from_word(" ".join(toks))


def relabel(model: PolygonModel, mapping: Mapping[str, str]) -> PolygonModel:
    """Rename labels and edges consistently (used to permute v-labels)."""
    def ren(name: str) -> str:
        base, prime = (name[:-1], "'") if name.endswith("'") else (name, "")
        return mapping.get(base, base) + prime
    sides = tuple(Side(mapping.get(x.label, x.label), ren(x.edge), x.exponent)
                  for x in model.sides)
    return PolygonModel(sides, tuple(mapping.get(p, p) for p in model.puncture_marks),
                        tuple(ren(b) for b in model.boundary_edges))


def edges_of(model: PolygonModel) -> Sequence[str]:
    return list(dict.fromkeys(x.edge for x in model.sides))
