"""Finitely presented groups and finite-index kernels of maps onto Z/m.

Words are tuples of ``(name, exponent)`` letters with exponent +1 or -1,
always stored freely reduced.  A presentation is an ordered alphabet plus
a list of relator words.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .linalg import AbelianInvariants, IntegerMatrix, invariant_factors

Letter = tuple[str, int]
FreeWord = tuple[Letter, ...]

_NAME = re.compile(r"^[A-Za-z0-9_]+$")

__all__ = [
    "FreeWord",
    "Presentation",
    "FiniteQuotientHom",
    "Transversal",
    "free_reduce",
    "word",
    "inverse",
    "concat",
    "format_word",
    "check_hom",
    "default_transversal",
    "schreier_generators",
    "reidemeister_schreier",
    "tietze_simplify",
    "abelianization",
    "exponent_sums",
    "parse_presentation",
    "format_presentation",
]


def valid_name(name: str) -> bool:
    return bool(_NAME.match(name))


def free_reduce(letters: Iterable[Letter], alphabet: Iterable[str] | None = None) -> FreeWord:
    """Cancel adjacent inverse pairs; rejects symbols outside ``alphabet``."""
    known = None if alphabet is None else set(alphabet)
    stack: list[Letter] = []
    for name, e in letters:
        if e not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {e}")
        if known is not None and name not in known:
            raise ValueError(f"unknown generator {name!r}")
        if stack and stack[-1][0] == name and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((name, e))
    return tuple(stack)


def word(text: str, alphabet: Iterable[str] | None = None) -> FreeWord:
    """Parse a whitespace separated word such as ``"a_1 a_2^-1"``.

    Integer powers ``x^k`` are expanded; ``1`` or an empty string is the
    identity.
    """
    letters: list[Letter] = []
    for tok in text.split():
        if tok == "1":
            continue
        name, _, power = tok.partition("^")
        k = 1
        if power:
            try:
                k = int(power)
            except ValueError:
                raise ValueError(f"bad exponent in token {tok!r}") from None
        if not valid_name(name):
            raise ValueError(f"bad generator name {name!r}")
        e = 1 if k > 0 else -1
        letters.extend([(name, e)] * abs(k))
    return free_reduce(letters, alphabet)


def inverse(w: FreeWord) -> FreeWord:
    return tuple((g, -e) for g, e in reversed(w))


def concat(*words: FreeWord) -> FreeWord:
    return free_reduce(letter for w in words for letter in w)


def power(w: FreeWord, k: int) -> FreeWord:
    if k < 0:
        return power(inverse(w), -k)
    return free_reduce(w * k)


def format_word(w: FreeWord) -> str:
    if not w:
        return "1"
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in w)


def cyclic_reduce(w: FreeWord) -> FreeWord:
    w = free_reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i][0] == w[j][0] and w[i][1] == -w[j][1]:
        i += 1
        j -= 1
    return w[i:j + 1]


def _canonical_relator(w: FreeWord, order: Mapping[str, int]) -> FreeWord:
    """Least rotation of ``w`` or its inverse; identifies relators that
    define the same normal closure trivially."""
    w = cyclic_reduce(w)
    if not w:
        return w

    def key(x: FreeWord):
        return tuple((order[g], -e) for g, e in x)

    best = None
    for cand in (w, inverse(w)):
        for i in range(len(cand)):
            rot = cand[i:] + cand[:i]
            if best is None or key(rot) < key(best):
                best = rot
    return best


@dataclass(frozen=True)
class Presentation:
    alphabet: tuple[str, ...]
    relators: tuple[FreeWord, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate generator in alphabet")
        for g in self.alphabet:
            if not valid_name(g):
                raise ValueError(f"bad generator name {g!r}")
        known = set(self.alphabet)
        rels = []
        for r in self.relators:
            for g, _ in r:
                if g not in known:
                    raise ValueError(f"relator uses unknown generator {g!r}")
            rels.append(free_reduce(r))
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def rank(self) -> int:
        return len(self.alphabet)

    def __str__(self) -> str:
        return format_presentation(self)


@dataclass(frozen=True)
class FiniteQuotientHom:
    """A map of generators into the cyclic group Z/target_order."""

    target_order: int
    images: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.target_order < 1:
            raise ValueError("target order must be positive")
        object.__setattr__(
            self, "images",
            {g: v % self.target_order for g, v in dict(self.images).items()},
        )

    def image(self, g: str) -> int:
        return self.images.get(g, 0)

    def of_word(self, w: FreeWord) -> int:
        return sum(e * self.image(g) for g, e in w) % self.target_order

    def is_surjective(self, alphabet: Iterable[str]) -> bool:
        from math import gcd
        d = self.target_order
        for g in alphabet:
            d = gcd(d, self.image(g))
        return d == 1


@dataclass(frozen=True)
class Transversal:
    """Coset representatives keyed by their label in Z/m."""

    representatives: Mapping[int, FreeWord]

    def __post_init__(self):
        object.__setattr__(self, "representatives", dict(self.representatives))

    def __getitem__(self, label: int) -> FreeWord:
        return self.representatives[label]

    def labels(self) -> list[int]:
        return sorted(self.representatives)

    def is_schreier(self) -> bool:
        """True when every prefix of a representative is a representative."""
        reps = set(self.representatives.values())
        return all(r[:k] in reps for r in reps for k in range(len(r)))


def check_hom(P: Presentation, phi: FiniteQuotientHom) -> bool:
    """Whether ``phi`` kills every relator, i.e. is a homomorphism."""
    return all(phi.of_word(r) == 0 for r in P.relators)


def default_transversal(P: Presentation, phi: FiniteQuotientHom) -> Transversal:
    """Shortest-word Schreier transversal, found breadth first with the
    generators tried in alphabet order.  For Z/2 with a single odd
    generator ``y`` this is ``{1, y}``."""
    m = phi.target_order
    reps: dict[int, FreeWord] = {0: ()}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for g in P.alphabet:
            for e in (1, -1):
                d = (c + e * phi.image(g)) % m
                if d not in reps:
                    reps[d] = reps[c] + ((g, e),)
                    queue.append(d)
    if len(reps) != m:
        raise ValueError("homomorphism is not surjective")
    return Transversal(reps)


def _validate(P: Presentation, phi: FiniteQuotientHom, U: Transversal) -> None:
    if not check_hom(P, phi):
        raise ValueError("the map does not send every relator to 0")
    if not phi.is_surjective(P.alphabet):
        raise ValueError("homomorphism is not surjective")
    m = phi.target_order
    if sorted(U.representatives) != list(range(m)):
        raise ValueError(f"transversal must have one representative for each of 0..{m - 1}")
    if U[0] != ():
        raise ValueError("representative of the identity coset must be the empty word")
    known = set(P.alphabet)
    for label, rep in U.representatives.items():
        if any(g not in known for g, _ in rep):
            raise ValueError(f"representative of {label} uses an unknown generator")
        if free_reduce(rep) != rep:
            raise ValueError(f"representative of {label} is not freely reduced")
        if phi.of_word(rep) != label:
            raise ValueError(f"representative {format_word(rep)} does not map to {label}")


def _schreier_table(P, phi, U):
    """Map (coset, generator) to (symbol name, word) for nontrivial Schreier
    generators ``u x (rep of ux)^-1``; trivial ones map to None."""
    names = set(P.alphabet)
    table: dict[tuple[int, str], tuple[str, FreeWord] | None] = {}
    ordered = []
    for c in U.labels():
        u = U[c]
        for x in P.alphabet:
            d = (c + phi.image(x)) % phi.target_order
            w = concat(u, ((x, 1),), inverse(U[d]))
            if not w:
                table[c, x] = None
                continue
            name = x if c == 0 else f"{x}_{c}"
            while name in names and not (c == 0 and name == x):
                name += "_"
            names.add(name)
            table[c, x] = (name, w)
            ordered.append((w, name))
    return table, ordered


def schreier_generators(P: Presentation, phi: FiniteQuotientHom,
                        U: Transversal | None = None) -> list[tuple[FreeWord, str]]:
    """Generators of ``ker phi``: each pair (u, x) with ux outside the
    transversal gives ``u x (rep of ux)^-1``, listed by coset then by
    alphabet position.  Generators of the identity coset keep their name;
    the others are named ``<x>_<coset>``."""
    U = default_transversal(P, phi) if U is None else U
    _validate(P, phi, U)
    return _schreier_table(P, phi, U)[1]


def _rewrite(w: FreeWord, start: int, phi: FiniteQuotientHom, table) -> FreeWord:
    c = start
    out: list[Letter] = []
    for x, e in w:
        if e == 1:
            entry = table[c, x]
            c = (c + phi.image(x)) % phi.target_order
            if entry is not None:
                out.append((entry[0], 1))
        else:
            c = (c - phi.image(x)) % phi.target_order
            entry = table[c, x]
            if entry is not None:
                out.append((entry[0], -1))
    return free_reduce(out)


def reidemeister_schreier(P: Presentation, phi: FiniteQuotientHom,
                          U: Transversal | None = None) -> Presentation:
    """Presentation of ``ker phi`` on its Schreier generators.

    Relators are the rewrites of ``u r u^-1`` for every representative
    ``u`` and relator ``r``, together with the rewrites of the
    representatives themselves (empty for a Schreier transversal).
    """
    U = default_transversal(P, phi) if U is None else U
    _validate(P, phi, U)
    table, ordered = _schreier_table(P, phi, U)
    relators = []
    for c in U.labels():
        u = U[c]
        for r in P.relators:
            relators.append(_rewrite(concat(u, r, inverse(u)), 0, phi, table))
    for c in U.labels():
        relators.append(_rewrite(U[c], 0, phi, table))
    return Presentation(tuple(name for _, name in ordered),
                        tuple(r for r in relators if r))


def _substitute(w: FreeWord, g: str, replacement: FreeWord) -> FreeWord:
    inv = inverse(replacement)
    out: list[Letter] = []
    for h, e in w:
        if h == g:
            out.extend(replacement if e == 1 else inv)
        else:
            out.append((h, e))
    return free_reduce(out)


def tietze_simplify(P: Presentation) -> Presentation:
    """Delete trivial and duplicate relators and eliminate generators.

    A generator occurring exactly once in some cyclically reduced relator
    is solved for and substituted away.  Generators are tried in alphabet
    order, and for each the shortest qualifying relator is used, so the
    result is deterministic.
    """
    alphabet = list(P.alphabet)
    relators = list(P.relators)
    while True:
        order = {g: i for i, g in enumerate(alphabet)}
        seen = set()
        cleaned = []
        for r in relators:
            canon = _canonical_relator(r, order)
            if canon and canon not in seen:
                seen.add(canon)
                cleaned.append(canon)
        relators = cleaned

        move = None
        for g in alphabet:
            best = None
            for idx, r in enumerate(relators):
                hits = [k for k, (h, _) in enumerate(r) if h == g]
                if len(hits) != 1:
                    continue
                if best is None or len(r) < len(relators[best[0]]):
                    best = (idx, hits[0])
            if best is not None:
                move = (g, *best)
                break
        if move is None:
            break
        g, idx, k = move
        r = relators[idx]
        rot = r[k:] + r[:k]
        e = rot[0][1]
        rest = rot[1:]
        # g^e * rest = 1  =>  g = rest^-1 (e = 1) or g = rest (e = -1)
        replacement = inverse(rest) if e == 1 else rest
        relators = [_substitute(w, g, replacement) for j, w in enumerate(relators) if j != idx]
        alphabet.remove(g)
    return Presentation(tuple(alphabet), tuple(relators))


def exponent_sums(P: Presentation) -> IntegerMatrix:
    index = {g: i for i, g in enumerate(P.alphabet)}
    rows = []
    for r in P.relators:
        row = [0] * len(P.alphabet)
        for g, e in r:
            row[index[g]] += e
        rows.append(row)
    return IntegerMatrix.from_rows(rows, len(P.alphabet))


def abelianization(P: Presentation) -> AbelianInvariants:
    return invariant_factors(exponent_sums(P), len(P.alphabet))


def parse_presentation(text: str) -> Presentation:
    """Read the ``gens:`` / ``rel:`` text format."""
    gens = None
    rels_text = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'gens:' or 'rel:'")
        key = key.strip()
        if key == "gens":
            if gens is not None:
                raise ValueError(f"line {lineno}: duplicate gens line")
            gens = rest.split()
        elif key == "rel":
            rels_text.append((lineno, rest))
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if gens is None:
        raise ValueError("missing gens line")
    relators = []
    for lineno, body in rels_text:
        letters = []
        for tok in body.split():
            name, e = (tok[:-3], -1) if tok.endswith("^-1") else (tok, 1)
            if name not in gens:
                raise ValueError(f"line {lineno}: unknown generator {name!r}")
            letters.append((name, e))
        relators.append(free_reduce(letters))
    return Presentation(tuple(gens), tuple(relators))


def format_presentation(P: Presentation) -> str:
    lines = ["gens: " + " ".join(P.alphabet)]
    for r in P.relators:
        lines.append("rel: " + " ".join(g if e == 1 else f"{g}^-1" for g, e in r))
    return "\n".join(lines) + "\n"
