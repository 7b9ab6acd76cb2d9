"""Permutations of {1..m} and small permutation groups.

Colours are 1-based throughout.  Composition is right-to-left:
``compose(p, q)`` applies ``q`` first and then ``p``, so the result maps
``i`` to ``p(q(i))``.  Every search over group elements runs in
lexicographic order of the image tuple, so all results are reproducible.

Groups are stored by their full element set; at degree <= 10 closure
enumeration is cheap and easy to audit.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field

from .errors import CapExceededError, ParseError

DEFAULT_CLOSURE_CAP = math.factorial(10)

_CYCLE_RE = re.compile(r"\(([^()]*)\)")
_NAMED_RE = re.compile(r"^([SADZ])(\d+)$")
_GENS_RE = re.compile(r"^gens(\d+):(.*)$", re.DOTALL)

SYMMETRIC = "symmetric"
ALTERNATING = "alternating"
DIHEDRAL = "dihedral"
CYCLIC = "cyclic"
CUSTOM = "custom"

_KIND_LETTERS = {"S": SYMMETRIC, "A": ALTERNATING, "D": DIHEDRAL, "Z": CYCLIC}
_KIND_MINIMUM = {SYMMETRIC: 2, CYCLIC: 2, ALTERNATING: 3, DIHEDRAL: 2}


class Permutation:
    """A bijection on {1..m}, stored as the tuple of images of 1, 2, ..., m."""

    __slots__ = ("image",)

    def __init__(self, image):
        image = tuple(image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"not a permutation of 1..{len(image)}: {image!r}")
        self.image = image

    @property
    def m(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(range(1, m + 1))

    @classmethod
    def rotation(cls, m: int) -> "Permutation":
        """The m-cycle sending 1 to 2, 2 to 3, ..., m to 1."""
        return cls(tuple(range(2, m + 1)) + (1,))

    @classmethod
    def from_cycles(cls, m, cycles) -> "Permutation":
        """Build from cycles on 1..m; cycles are composed right-to-left.

        For the usual case of disjoint cycles the order is immaterial.
        """
        acc = cls.identity(m)
        for cycle in cycles:
            cycle = tuple(cycle)
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated entry in cycle {cycle!r}")
            image = list(range(1, m + 1))
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                if not 1 <= a <= m:
                    raise ValueError(f"cycle entry {a} out of range 1..{m}")
                image[a - 1] = b
            acc = compose(acc, cls(image))
        return acc

    @classmethod
    def parse(cls, text: str, m: int) -> "Permutation":
        """Parse cycle notation such as ``(1 2)(3 4)``; ``()`` is the identity."""
        s = text.strip()
        if not s:
            raise ParseError("empty permutation")
        leftover = _CYCLE_RE.sub("", s).strip()
        if leftover:
            raise ParseError(f"bad permutation syntax: {text.strip()!r}")
        cycles = []
        for body in _CYCLE_RE.findall(s):
            toks = body.split()
            if not toks:
                continue
            try:
                cycles.append(tuple(int(t) for t in toks))
            except ValueError:
                raise ParseError(f"bad cycle entry in {text.strip()!r}") from None
        try:
            return cls.from_cycles(m, cycles)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def __call__(self, colour: int) -> int:
        if not 1 <= colour <= len(self.image):
            raise ValueError(f"colour {colour} out of range 1..{len(self.image)}")
        return self.image[colour - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for i, v in enumerate(self.image):
            inv[v - 1] = i + 1
        return Permutation(inv)

    def fixed_points(self):
        return tuple(i for i, v in enumerate(self.image, start=1) if i == v)

    def cycles(self):
        """Disjoint cycle decomposition; cycles of length >= 2, each starting
        at its smallest element, sorted by that element."""
        seen = [False] * len(self.image)
        out = []
        for start in range(1, len(self.image) + 1):
            if seen[start - 1]:
                continue
            cyc = []
            cur = start
            while not seen[cur - 1]:
                seen[cur - 1] = True
                cyc.append(cur)
                cur = self.image[cur - 1]
            if len(cyc) >= 2:
                out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.image, start=1))

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycs)

    def __repr__(self) -> str:
        return f"Permutation({self.image!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __lt__(self, other) -> bool:
        return self.image < other.image


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Right-to-left composition: the result maps i to p(q(i))."""
    if p.m != q.m:
        raise ValueError(f"degree mismatch: {p.m} vs {q.m}")
    return Permutation(tuple(p.image[x - 1] for x in q.image))


class PermGroup:
    """A subgroup of the symmetric group on {1..m}, stored exhaustively.

    Instances are treated as immutable after construction (the attribute
    caches are derived data only), so they are safe to share.
    """

    __slots__ = ("m", "generators", "elements", "kind", "name",
                 "_sorted", "_arrows", "_first_t")

    def __init__(self, m, generators, elements, kind=CUSTOM, name=None):
        self.m = int(m)
        self.generators = tuple(generators)
        self.elements = frozenset(elements)
        if Permutation.identity(self.m) not in self.elements:
            raise ValueError("element set lacks the identity")
        if any(p.m != self.m for p in self.elements):
            raise ValueError("mixed degrees in element set")
        if math.factorial(self.m) % len(self.elements) != 0:
            raise ValueError("order does not divide m! (not a group)")
        self.kind = kind
        self.name = name or "gens%d:%s" % (
            self.m, ";".join(str(g) for g in self.generators))
        self._sorted = None
        self._arrows = None
        self._first_t = -1

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return p in self.elements

    def __iter__(self):
        return iter(self.sorted_elements())

    def __repr__(self) -> str:
        return f"PermGroup({self.name}, order={self.order})"

    def sorted_elements(self):
        if self._sorted is None:
            self._sorted = tuple(sorted(self.elements))
        return self._sorted

    def arrows(self, i: int, j: int):
        """Elements mapping colour i to colour j, in lexicographic order."""
        if self._arrows is None:
            index = {}
            for p in self.sorted_elements():
                for i0, j0 in enumerate(p.image, start=1):
                    index.setdefault((i0, j0), []).append(p)
            self._arrows = {key: tuple(val) for key, val in index.items()}
        return self._arrows.get((i, j), ())


def generate_closure(m, generators, cap=DEFAULT_CLOSURE_CAP, kind=CUSTOM,
                     name=None) -> PermGroup:
    """Smallest subgroup of S_m containing the generators, by breadth-first
    closure under right multiplication."""
    generators = tuple(generators)
    for g in generators:
        if g.m != m:
            raise ValueError(f"generator degree {g.m} != {m}")
    ident = Permutation.identity(m)
    elements = {ident}
    frontier = deque([ident])
    while frontier:
        p = frontier.popleft()
        for g in generators:
            q = compose(p, g)
            if q not in elements:
                if len(elements) >= cap:
                    raise CapExceededError(
                        f"closure exceeds cap of {cap} elements")
                elements.add(q)
                frontier.append(q)
    return PermGroup(m, generators, elements, kind=kind, name=name)


def _reflection(m: int) -> Permutation:
    # flip of the m-gon fixing vertex 1: i -> (2 - i) mod m, values in 1..m
    return Permutation(tuple((2 - i) % m or m for i in range(1, m + 1)))


def make_named(kind: str, m: int) -> PermGroup:
    """Named group with canonical generators.

    Dihedral groups act on the vertices 1..m of the regular m-gon in cyclic
    order; for m = 2 the dihedral action collapses to the transposition
    group of order 2 so that the even-degree results instantiate at m = 2.
    """
    kind = _KIND_LETTERS.get(kind, kind)
    if kind not in _KIND_MINIMUM:
        raise ValueError(f"unknown group kind {kind!r}")
    if m < _KIND_MINIMUM[kind]:
        raise ValueError(f"{kind} groups need degree >= {_KIND_MINIMUM[kind]}")
    if kind == SYMMETRIC:
        gens = [Permutation.from_cycles(m, [(1, 2)])]
        if m >= 3:
            gens.append(Permutation.rotation(m))
        letter = "S"
    elif kind == CYCLIC:
        gens = [Permutation.rotation(m)]
        letter = "Z"
    elif kind == ALTERNATING:
        gens = [Permutation.from_cycles(m, [(1, 2, k)]) for k in range(3, m + 1)]
        letter = "A"
    else:
        letter = "D"
        if m == 2:
            gens = [Permutation.from_cycles(2, [(1, 2)])]
        else:
            gens = [Permutation.rotation(m), _reflection(m)]
    return generate_closure(m, gens, kind=kind, name=f"{letter}{m}")


def parse_group_spec(text: str) -> PermGroup:
    """Parse a group spec: ``S<m>``, ``A<m>``, ``D<m>``, ``Z<m>`` or
    ``gens<m>:(c1)(c2);...`` with cycles in 1-based cycle notation."""
    s = text.strip()
    match = _NAMED_RE.match(s)
    if match:
        try:
            return make_named(match.group(1), int(match.group(2)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    match = _GENS_RE.match(s)
    if match:
        m = int(match.group(1))
        if m < 1:
            raise ParseError(f"bad degree in group spec {s!r}")
        parts = [p for p in match.group(2).split(";") if p.strip()]
        gens = [Permutation.parse(p, m) for p in parts]
        return generate_closure(m, gens, name=s)
    raise ParseError(f"bad group spec {text.strip()!r}")


@dataclass(frozen=True)
class PropertyTWitness:
    """Witness that alpha maps i to j while fixing k, and beta maps j to k."""

    i: int
    j: int
    k: int
    alpha: Permutation
    beta: Permutation


def find_T_witness(group: PermGroup, i: int, j: int):
    """First witness (alpha, k, beta) with alpha(i) = j, alpha(k) = k and
    beta(j) = k, searching elements lexicographically; None if there is none.

    For i = j the identity qualifies with k = j, so the search always
    succeeds in that case.
    """
    if not (1 <= i <= group.m and 1 <= j <= group.m):
        raise ValueError(f"colours {i}, {j} out of range 1..{group.m}")
    for alpha in group.arrows(i, j):
        for k in alpha.fixed_points():
            betas = group.arrows(j, k)
            if betas:
                return PropertyTWitness(i=i, j=j, k=k, alpha=alpha, beta=betas[0])
    return None


def has_property_Tj(group: PermGroup, j: int) -> bool:
    """Whether the group can retarget every colour i onto j via a witness."""
    if not 1 <= j <= group.m:
        raise ValueError(f"colour {j} out of range 1..{group.m}")
    return all(find_T_witness(group, i, j) is not None
               for i in range(1, group.m + 1))


def first_property_t_colour(group: PermGroup):
    """Smallest j for which the group has the uniformisation property, or
    None.  Cached on the group instance."""
    if group._first_t == -1:
        group._first_t = next(
            (j for j in range(1, group.m + 1) if has_property_Tj(group, j)),
            None)
    return group._first_t


QUOTIENT_IDENTITY = "identity"
QUOTIENT_SWAP = "swap"


@dataclass
class BlockStructure:
    """The odd/even colour block system of an even-degree dihedral group."""

    m: int
    odd_block: frozenset
    even_block: frozenset
    stabilizer: PermGroup
    quotient: dict = field(repr=False)

    def blocks_swapped(self, p: Permutation) -> bool:
        return self.quotient[p] == QUOTIENT_SWAP


def dihedral_blocks(m: int) -> BlockStructure:
    """Blocks {1,3,...,m-1} and {2,4,...,m}, the subgroup preserving them,
    and the two-valued quotient map, for the dihedral group of even degree."""
    if m % 2 != 0:
        raise ValueError(f"degree {m} is odd; blocks need even degree")
    group = make_named(DIHEDRAL, m)
    odd = frozenset(range(1, m, 2))
    even = frozenset(range(2, m + 1, 2))
    quotient = {}
    stab = []
    for p in group.sorted_elements():
        image = {p(i) for i in odd}
        if image == odd:
            quotient[p] = QUOTIENT_IDENTITY
            stab.append(p)
        elif image == even:
            quotient[p] = QUOTIENT_SWAP
        else:
            raise RuntimeError("dihedral element does not respect the blocks")
    stabilizer = PermGroup(m, tuple(stab), frozenset(stab),
                           name=f"Stab(D{m})")
    return BlockStructure(m=m, odd_block=odd, even_block=even,
                          stabilizer=stabilizer, quotient=quotient)
