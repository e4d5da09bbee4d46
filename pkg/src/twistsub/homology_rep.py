"""Action of twists and the crosscap slide on the free part of H_1(N).

A two-sided circle ``c`` is recorded by its homology class and by the
covector ``x -> I(c, x)``; its twist acts as the transvection
``x -> x + sign * I(c, x) * [c]``.  Matrix relations checked here are
necessary conditions only, since the homology representation is not
faithful: a failed check refutes a relation, a passed one proves nothing.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .fpgroup import FreeWord
from .linalg import IntegerMatrix, det, inverse
from .surface import SurfaceSpec

__all__ = [
    "CurveDatum",
    "HomologyRepresentation",
    "twist_matrix",
    "det_hom",
    "evaluate",
    "verify_relation",
    "load_representation",
    "parse_representation",
    "format_representation",
    "twist_generators",
    "subgroup_indices",
    "crosscap_model_n3",
]


@dataclass(frozen=True)
class CurveDatum:
    name: str
    klass: tuple[int, ...]
    functional: tuple[int, ...]
    sign: int = 1
    two_sided: bool = True
    separating: bool = False

    def __post_init__(self):
        object.__setattr__(self, "klass", tuple(self.klass))
        object.__setattr__(self, "functional", tuple(self.functional))
        if len(self.klass) != len(self.functional):
            raise ValueError(f"{self.name}: class and functional lengths differ")
        if self.sign not in (1, -1):
            raise ValueError(f"{self.name}: sign must be +1 or -1")

    @property
    def dimension(self) -> int:
        return len(self.klass)

    @property
    def self_pairing(self) -> int:
        return sum(a * b for a, b in zip(self.functional, self.klass))


def twist_matrix(c: CurveDatum, sign: int | None = None, dimension: int | None = None) -> IntegerMatrix:
    """Matrix of ``x -> x + sign * functional(x) * klass``."""
    if not c.two_sided:
        raise ValueError(f"{c.name} is one-sided; there is no twist about it")
    sign = c.sign if sign is None else sign
    dimension = c.dimension if dimension is None else dimension
    if c.dimension != dimension:
        raise ValueError(f"{c.name} has dimension {c.dimension}, expected {dimension}")
    rows = [[int(i == j) + sign * c.klass[i] * c.functional[j] for j in range(dimension)]
            for i in range(dimension)]
    return IntegerMatrix.from_rows(rows, dimension)


@dataclass(frozen=True)
class HomologyRepresentation:
    dimension: int
    matrices: Mapping[str, IntegerMatrix]
    curves: Mapping[str, CurveDatum] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "matrices", dict(self.matrices))
        object.__setattr__(self, "curves", dict(self.curves))
        inverses = {}
        for name, M in self.matrices.items():
            if M.shape != (self.dimension, self.dimension):
                raise ValueError(f"matrix {name} has shape {M.shape}")
            inverses[name] = inverse(M)
        object.__setattr__(self, "_inverses", inverses)

    def matrix(self, name: str, exponent: int = 1) -> IntegerMatrix:
        if name not in self.matrices:
            raise KeyError(f"unknown generator {name!r}")
        return self.matrices[name] if exponent == 1 else self._inverses[name]

    @property
    def names(self) -> list[str]:
        return list(self.matrices)


def evaluate(rep: HomologyRepresentation, word: FreeWord) -> IntegerMatrix:
    """Matrix of the composed map; the rightmost letter acts first."""
    out = IntegerMatrix.identity(rep.dimension)
    for name, e in word:
        out = out @ rep.matrix(name, e)
    return out


def det_hom(rep: HomologyRepresentation, word: FreeWord) -> int:
    """Determinant homomorphism, with values +1 and -1."""
    d = 1
    for name, e in word:
        d *= det(rep.matrix(name, e))
    return d


def verify_relation(rep: HomologyRepresentation, lhs: FreeWord, rhs: FreeWord) -> bool:
    """Whether ``lhs`` and ``rhs`` act identically on homology."""
    return evaluate(rep, lhs) == evaluate(rep, rhs)


def twist_generators(spec: SurfaceSpec) -> list[str]:
    """Twist generators of the twist subgroup, catalog names in order."""
    spec.require_supported_range()
    g, s, n, r = spec.g, spec.s, spec.n, spec.r
    names = [f"a_{i}" for i in range(2, g)]
    names += [f"b_{i}" for i in range(1, (r if spec.odd else r + 1) + 1)]
    names += [f"c_{i}" for i in range(1, r + 1)]
    names += [f"e_{i}" for i in range(1, n + s)]
    names += [f"u_{i}" for i in range(1, s + 1)]
    if g == 3:
        names += [f"f_{i}" for i in range(1, n + s)] + ["xi"]
    elif spec.odd:
        names += ["psi", "xi"]
    else:
        names += ["lambda", "psi", "xi"]
    return names


def subgroup_indices(spec: SurfaceSpec) -> tuple[int, int, int, int]:
    """Index factors of the twist subgroup in the mapping class group:
    permutations of punctures, local orientations at punctures, and the
    determinant."""
    spec.require_supported_range()
    a, b, c = math.factorial(spec.n), 2 ** spec.n, 2
    return a, b, c, a * b * c


def expected_dimension(spec: SurfaceSpec) -> int:
    return spec.g - 1 if spec.s == 0 else spec.g + spec.s - 1


_CURVE = re.compile(
    r"^curve\s+(?P<name>[A-Za-z0-9_]+)\s+class:(?P<klass>[-+\d\s]*?)\s+functional:"
    r"(?P<func>[-+\d\s]*?)\s+sign:\s*(?P<sign>[+-]1)\s+flags:\s*(?P<flags>\S+)\s*$"
)
_MATRIX = re.compile(r"^matrix\s+(?P<name>[A-Za-z0-9_]+):(?P<body>[-+\d\s]*)$")


def _ints(text: str, where: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split())
    except ValueError:
        raise ValueError(f"{where}: non-integer entry") from None


def parse_representation(text: str) -> tuple[int, list[CurveDatum], dict[str, IntegerMatrix]]:
    """Strict parser for the representation config format."""
    dim = None
    curves: list[CurveDatum] = []
    mats: dict[str, IntegerMatrix] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = f"line {lineno}"
        if line.startswith("dim:"):
            if dim is not None:
                raise ValueError(f"{where}: duplicate dim")
            parts = line[4:].split()
            if len(parts) != 1:
                raise ValueError(f"{where}: bad dim line")
            dim = int(parts[0])
            continue
        if dim is None:
            raise ValueError(f"{where}: dim must come first")
        m = _CURVE.match(line)
        if m:
            flags = m["flags"].split(",")
            unknown = set(flags) - {"two_sided", "separating"}
            if unknown:
                raise ValueError(f"{where}: unknown flags {sorted(unknown)}")
            klass = _ints(m["klass"], where)
            func = _ints(m["func"], where)
            if len(klass) != dim or len(func) != dim:
                raise ValueError(f"{where}: curve {m['name']} needs {dim} entries per vector")
            if any(c.name == m["name"] for c in curves) or m["name"] in mats:
                raise ValueError(f"{where}: duplicate generator {m['name']}")
            curves.append(CurveDatum(m["name"], klass, func, int(m["sign"]),
                                     "two_sided" in flags, "separating" in flags))
            continue
        m = _MATRIX.match(line)
        if m:
            body = _ints(m["body"], where)
            if len(body) != dim * dim:
                raise ValueError(f"{where}: matrix {m['name']} needs {dim * dim} entries")
            if m["name"] in mats or any(c.name == m["name"] for c in curves):
                raise ValueError(f"{where}: duplicate generator {m['name']}")
            mats[m["name"]] = IntegerMatrix(dim, dim, body)
            continue
        raise ValueError(f"{where}: unrecognised line {line!r}")
    if dim is None:
        raise ValueError("missing dim line")
    return dim, curves, mats


def load_representation(text: str, spec: SurfaceSpec) -> HomologyRepresentation:
    """Parse and validate a representation config for the surface ``spec``.

    The config must cover every twist generator of the twist subgroup and
    the crosscap slide ``y``; extra curves are allowed.  Rejected when a
    curve has nonzero self-pairing, a separating curve has a nonzero
    functional, a twist has determinant other than +1, or ``y`` does not
    have determinant -1.
    """
    dim, curves, mats = parse_representation(text)
    want = expected_dimension(spec)
    if dim != want:
        raise ValueError(f"dimension {dim} does not match free rank {want} of H1({spec})")
    matrices: dict[str, IntegerMatrix] = {}
    for c in curves:
        if not c.two_sided:
            raise ValueError(f"curve {c.name} is not two-sided")
        if c.separating and any(c.functional):
            raise ValueError(f"separating curve {c.name} has a nonzero intersection functional")
        M = twist_matrix(c)
        d = det(M)
        if d != 1:
            # det = 1 + sign * functional(klass)
            raise ValueError(f"twist about {c.name} has determinant {d}, expected 1 "
                             f"(self-pairing {c.self_pairing})")
        matrices[c.name] = M
    for name, M in mats.items():
        if name != "y":
            raise ValueError(f"unexpected explicit matrix {name!r}; only y is given by matrix")
        d = det(M)
        if d != -1:
            raise ValueError(f"crosscap slide y has determinant {d}, expected -1")
        matrices[name] = M
    missing = [n for n in twist_generators(spec) + ["y"] if n not in matrices]
    if missing:
        raise ValueError(f"missing generators: {', '.join(missing)}")
    return HomologyRepresentation(dim, matrices, {c.name: c for c in curves})


def format_representation(dim: int, curves: Sequence[CurveDatum],
                          matrices: Mapping[str, IntegerMatrix]) -> str:
    def ints(v: Iterable[int]) -> str:
        return " ".join(str(x) for x in v)

    lines = [f"dim: {dim}"]
    for c in curves:
        flags = ["two_sided"] + (["separating"] if c.separating else [])
        lines.append(
            f"curve {c.name} class: {ints(c.klass)} functional: {ints(c.functional)} "
            f"sign: {'+1' if c.sign == 1 else '-1'} flags: {','.join(flags)}"
        )
    for name, M in matrices.items():
        lines.append(f"matrix {name}: {ints(M.entries)}")
    return "\n".join(lines) + "\n"


# Closed N_g as a sphere with crosscaps C_1..C_g.  H_1 is generated by the
# core classes gamma_1..gamma_g subject to 2*sum(gamma) = 0, so its free part
# has basis gamma_1..gamma_{g-1} with gamma_g = -(gamma_1 + ... + gamma_{g-1}).

def _core_class(g: int, coeffs: Mapping[int, int]) -> tuple[int, ...]:
    last = coeffs.get(g, 0)
    return tuple(coeffs.get(i, 0) - last for i in range(1, g))


def _core_functional(g: int, values: Mapping[int, int]) -> tuple[int, ...]:
    if sum(values.values()) != 0:
        raise ValueError("functional must vanish on the sum of the cores")
    return tuple(values.get(i, 0) for i in range(1, g))


def through_crosscaps(name: str, g: int, i: int, j: int) -> CurveDatum:
    """Two-sided circle passing once through crosscaps C_i and C_j."""
    return CurveDatum(name, _core_class(g, {i: 1, j: 1}), _core_functional(g, {i: 1, j: -1}))


def crosscap_slide(g: int) -> IntegerMatrix:
    """Slide of C_g along a loop through C_{g-1}: reverses gamma_g and sends
    gamma_{g-1} to gamma_{g-1} + 2 gamma_g."""
    cols = []
    for i in range(1, g):
        image = {i: 1}
        if i == g - 1:
            image[g] = 2
        cols.append(_core_class(g, image))
    return IntegerMatrix.from_rows(cols, g - 1).transpose()


def transport(c: CurveDatum, F: IntegerMatrix, name: str) -> CurveDatum:
    """Data of the image curve f(c) when f acts on homology by ``F``."""
    Finv = inverse(F)
    klass = F.apply(c.klass)
    func = tuple(sum(c.functional[i] * Finv[i, j] for i in range(F.rows)) for j in range(F.cols))
    return CurveDatum(name, klass, func, c.sign, c.two_sided, c.separating)


def crosscap_model_n3() -> str:
    """Representation config of the closed genus-3 surface.

    ``a_1`` and ``a_2`` pass through consecutive crosscaps, ``b_1`` through
    C_1 and C_3, ``c_1`` is ``y^-1(b_1)``, and ``xi`` bounds the Klein bottle
    around C_2 and C_3 that supports ``y``.
    """
    g = 3
    Y = crosscap_slide(g)
    b1 = through_crosscaps("b_1", g, 1, 3)
    curves = [
        through_crosscaps("a_1", g, 1, 2),
        through_crosscaps("a_2", g, 2, 3),
        b1,
        transport(b1, inverse(Y), "c_1"),
        CurveDatum("xi", _core_class(g, {2: 2, 3: 2}), (0,) * (g - 1), 1, True, True),
    ]
    return format_representation(g - 1, curves, {"y": Y})
