"""First homology of the twist subgroup from its relation ledger.

After the conjugacy reductions the abelianization is generated by the
classes of the twists about ``a_1`` (symbol ``A``), ``b_{r+1}`` (``B``,
even genus only), ``xi`` (``XI``) and the boundary curves ``u_j``
(``U_j``).  The ledger lists the known relations among these classes, and
the group is the cokernel of the resulting integer matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import AbelianInvariants, IntegerMatrix, invariant_factors
from .surface import SurfaceSpec

__all__ = [
    "RelationLedger", "h1_symbols", "build_ledger", "compute_h1", "expected_h1", "explain", "headline",
]

SYMBOL_MEANING = {"A": "[t_a_1]", "B": "[t_b_{r+1}]", "XI": "[t_xi]"}


def h1_symbols(spec: SurfaceSpec) -> tuple[str, ...]:
    spec.require_supported_range()
    syms = ["A"] + (["B"] if not spec.odd else []) + ["XI"]
    syms += [f"U_{j}" for j in range(1, spec.s + 1)]
    return tuple(syms)


@dataclass(frozen=True)
class Relation:
    vector: tuple[int, ...]
    tag: str
    statement: str


@dataclass(frozen=True)
class RelationLedger:
    symbols: tuple[str, ...]
    relations: tuple[Relation, ...]

    def matrix(self) -> IntegerMatrix:
        return IntegerMatrix.from_rows([r.vector for r in self.relations], len(self.symbols))

    def without(self, tag: str) -> "RelationLedger":
        return RelationLedger(self.symbols, tuple(r for r in self.relations if r.tag != tag))


def build_ledger(spec: SurfaceSpec) -> RelationLedger:
    syms = h1_symbols(spec)
    pos = {x: i for i, x in enumerate(syms)}
    g, s = spec.g, spec.s
    us = [f"U_{j}" for j in range(1, s + 1)]
    rels: list[Relation] = []

    def add(coeffs: dict[str, int], tag: str, statement: str) -> None:
        v = [0] * len(syms)
        for name, c in coeffs.items():
            v[pos[name]] += c
        rels.append(Relation(tuple(v), tag, statement))

    if g >= 7:
        add({"A": 1}, "a1-trivial", "[t_a_1] = 0 for g >= 7")
    if g >= 6 and not spec.odd:
        add({"B": 1}, "b-trivial", "[t_b_{r+1}] = 0 for even g >= 6")
    if g >= 5:
        for u in us:
            add({u: 1}, "boundary-trivial", f"{u} = 0: boundary twists vanish for g >= 5")
    if g >= 4:
        add({"XI": 1}, "xi-trivial", "[y^2] = [t_xi] = 0 for g >= 4 (lantern)")
    if g == 4 and s >= 1:
        add({u: 1 for u in us}, "boundary-sum", "U_1 + ... + U_s = 0 for g = 4 (lantern)")
    if g == 3:
        add({"XI": 1, "A": -12}, "xi-twelve", "[t_xi] = 12 [t_a_1] for g = 3 (torus with a hole, lantern)")
        if s >= 1:
            add({**{u: 1 for u in us}, "A": -12}, "boundary-twelve",
                "U_1 + ... + U_s = 12 [t_a_1] for g = 3")
    if g >= 4:
        add({"A": 2}, "a1-square", "2 [t_a_1] = 0 for g >= 4: t_a_1 is conjugate to its inverse")
    for u in us:
        add({u: 2}, "boundary-square", f"2 {u} = 0 (lantern)")
    if g == 3 and s == 0:
        add({"A": 12}, "a1-twelve", "12 [t_a_1] = 0 for g = 3, s = 0")
    if g == 3:
        add({"A": 24}, "a1-twentyfour", "24 [t_a_1] = 0 for g = 3 (lantern t_kappa = t_xi t_xi1 t_xi2)")
    return RelationLedger(syms, tuple(rels))


def compute_h1(spec: SurfaceSpec) -> AbelianInvariants:
    ledger = build_ledger(spec)
    return invariant_factors(ledger.matrix(), len(ledger.symbols))


def expected_h1(spec: SurfaceSpec) -> AbelianInvariants:
    """The closed-form answer, case by case."""
    spec.require_supported_range()
    g, s = spec.g, spec.s
    if g == 3:
        return AbelianInvariants(0, (12,)) if s == 0 else AbelianInvariants(0, (2,) * (s - 1) + (24,))
    if g == 4:
        return AbelianInvariants(1, (2,) * max(s, 1))
    if g in (5, 6):
        return AbelianInvariants(0, (2,))
    return AbelianInvariants(0)


def headline(spec: SurfaceSpec) -> str:
    return f"H1(T(N_{{{spec.g},{spec.s}}}^{spec.n})) = {compute_h1(spec)}"


def _equation(symbols, vector) -> str:
    terms = []
    for name, c in zip(symbols, vector):
        if not c:
            continue
        mag = "" if abs(c) == 1 else f"{abs(c)} "
        sign = "-" if c < 0 else "+"
        terms.append((sign, f"{mag}{name}"))
    if not terms:
        return "0 = 0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, t in terms[1:]:
        out += f" {sign} {t}"
    return out + " = 0"


def explain(spec: SurfaceSpec) -> str:
    ledger = build_ledger(spec)
    lines = ["generators: " + " ".join(
        f"{x}={SYMBOL_MEANING.get(x, '[t_u_' + x[2:] + ']')}" for x in ledger.symbols)]
    lines.append("relations:")
    width = max((len(_equation(ledger.symbols, r.vector)) for r in ledger.relations), default=0)
    for r in ledger.relations:
        eq = _equation(ledger.symbols, r.vector).ljust(width)
        vec = " ".join(str(c) for c in r.vector)
        lines.append(f"  {eq}  [{vec}]  {r.tag}: {r.statement}")
    lines.append(f"result: {compute_h1(spec)}")
    return "\n".join(lines) + "\n"
