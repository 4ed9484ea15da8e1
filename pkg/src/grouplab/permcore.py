"""Permutations, finite groups, subgroup handles, and subset products.

Conventions fixed for the whole package:

* Composition is left-to-right: ``(p * q)(i) == q(p(i))``.
* Points are 0-based internally; cycle notation for I/O is 1-based.
* Every constructed ``FiniteGroup`` has its identity at element index 0.
* Conjugation is ``h^x = x^-1 * h * x``.
"""

from __future__ import annotations

import threading
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import (
    ClosureCapExceeded,
    DegreeMismatch,
    ParseError,
)

DEFAULT_CLOSURE_CAP = 10000
DEFAULT_TABLE_LIMIT = 2048


class Permutation:
    """A bijection on {0..degree-1}, stored as the tuple of images."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        seen = [False] * n
        for i in images:
            if not 0 <= i < n or seen[i]:
                raise ValueError(f"not a bijection on 0..{n - 1}: {images}")
            seen[i] = True
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash(images))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.cycles()!r})"

    def cycles(self) -> str:
        """1-based disjoint cycle notation; fixed points omitted; identity is "()"."""
        seen = [False] * self.degree
        parts = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
        return "".join(parts) if parts else "()"

    @classmethod
    def from_cycles(cls, degree: int, text: str) -> "Permutation":
        """Parse 1-based cycle notation such as "(1 2 3)(4 5)" or "()".

        Cycles must be disjoint; whitespace separates points.
        """
        images = list(range(degree))
        used = set()
        pos = 0
        text_len = len(text)
        saw_cycle = False
        while pos < text_len:
            ch = text[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch != "(":
                raise ParseError("expected '('", pos, expected=["("])
            end = text.find(")", pos)
            if end < 0:
                raise ParseError("unclosed cycle", pos, expected=[")"])
            body = text[pos + 1 : end].split()
            points = []
            for tok in body:
                if not tok.isdigit():
                    raise ParseError(f"bad point {tok!r}", pos, expected=["integer"])
                p = int(tok) - 1
                if not 0 <= p < degree:
                    raise ParseError(f"point {tok} out of degree {degree}", pos)
                if p in used:
                    raise ParseError(f"point {tok} repeated", pos)
                used.add(p)
                points.append(p)
            for i, p in enumerate(points):
                images[p] = points[(i + 1) % len(points)]
            saw_cycle = True
            pos = end + 1
        if not saw_cycle and text.strip() not in ("", "()"):
            raise ParseError("empty permutation", 0, expected=["("])
        return cls(images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Left-to-right composite: apply `p` first, then `q`."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    qi = q.images
    return Permutation(tuple(qi[i] for i in p.images))


class FiniteGroup:
    """A fully enumerated permutation group with an indexed element table.

    Immutable after construction; lazily built caches (multiplication
    table, inverse array, downstream lattice data) are guarded by a lock so
    concurrent readers observe consistent values.
    """

    def __init__(
        self,
        degree: int,
        generators: Sequence[Permutation],
        elements: Sequence[Permutation],
        *,
        table_limit: int = DEFAULT_TABLE_LIMIT,
        _parents=None,
        _table=None,
    ):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self._index = {p: i for i, p in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate elements")
        self.identity_index = self._index[Permutation.identity(degree)]
        if self.identity_index != 0:
            raise ValueError("identity must sit at index 0")
        self._table_limit = table_limit
        self._parents = _parents
        self._cache: dict = {}
        self._lock = threading.RLock()
        if _table is not None:
            self._cache["table"] = np.ascontiguousarray(_table, dtype=np.int32)

    # -- construction ------------------------------------------------

    @classmethod
    def from_generators(
        cls,
        degree: int,
        generators: Iterable[Permutation],
        cap: int = DEFAULT_CLOSURE_CAP,
        table_limit: int = DEFAULT_TABLE_LIMIT,
    ) -> "FiniteGroup":
        """Breadth-first product closure of the generators and the identity."""
        gens = []
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} != {degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        if cap < 1:
            raise ValueError("cap must be >= 1")
        ident = Permutation.identity(degree)
        elements = [ident]
        index = {ident: 0}
        parents = [(-1, -1)]
        head = 0
        while head < len(elements):
            base = elements[head]
            for gi, g in enumerate(gens):
                q = base * g
                if q not in index:
                    if len(elements) >= cap:
                        raise ClosureCapExceeded(
                            f"closure exceeded {cap} elements", limit=cap
                        )
                    index[q] = len(elements)
                    elements.append(q)
                    parents.append((head, gi))
            head += 1
        return cls(degree, gens, elements, table_limit=table_limit, _parents=parents)

    # -- basic queries -----------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, p: Permutation) -> int:
        return self._index[p]

    def __contains__(self, p: Permutation) -> bool:
        return p in self._index

    def _memo(self, key, builder):
        cache = self._cache
        if key in cache:
            return cache[key]
        with self._lock:
            if key not in cache:
                cache[key] = builder()
            return cache[key]

    @property
    def table(self):
        """Full |G| x |G| int32 product table, or None above the table limit."""
        if self.order > self._table_limit:
            return None
        return self._memo("table", self._build_table)

    def _build_table(self):
        n = self.order
        table = np.empty((n, n), dtype=np.int32)
        table[:, 0] = np.arange(n, dtype=np.int32)
        if self._parents is not None and self.generators:
            # Column DP over the BFS tree: f = parent * gen implies
            # col(f) = gencol(gen)[col(parent)].
            gencols = []
            for g in self.generators:
                gencols.append(
                    np.fromiter(
                        (self._index[e * g] for e in self.elements),
                        dtype=np.int32,
                        count=n,
                    )
                )
            for f in range(1, n):
                pf, gi = self._parents[f]
                table[:, f] = gencols[gi][table[:, pf]]
        else:
            for f in range(1, n):
                q = self.elements[f]
                table[:, f] = np.fromiter(
                    (self._index[e * q] for e in self.elements),
                    dtype=np.int32,
                    count=n,
                )
        return np.ascontiguousarray(table)

    @property
    def inv_array(self):
        return self._memo("inv", self._build_inv)

    def _build_inv(self):
        inv = np.empty(self.order, dtype=np.int32)
        for i, p in enumerate(self.elements):
            inv[i] = self._index[p.inverse()]
        return inv

    def mult(self, i: int, j: int) -> int:
        table = self.table
        if table is not None:
            return int(table[i, j])
        return self._index[self.elements[i] * self.elements[j]]

    def inv(self, i: int) -> int:
        return int(self.inv_array[i])

    @property
    def element_orders(self):
        return self._memo("orders", self._build_orders)

    def _build_orders(self):
        orders = np.empty(self.order, dtype=np.int32)
        ident = self.identity_index
        for i in range(self.order):
            k, acc = 1, i
            while acc != ident:
                acc = self.mult(acc, i)
                k += 1
            orders[i] = k
        return orders

    def __repr__(self) -> str:
        return f"FiniteGroup(degree={self.degree}, order={self.order})"


class SubgroupHandle:
    """An element-index set inside a parent group, closed under product/inverse.

    Construction via `subgroup_from_generators` guarantees closure; use
    `validate()` in tests to re-check the invariants from scratch.
    """

    __slots__ = ("parent", "members", "_mask")

    def __init__(self, parent: FiniteGroup, members: Iterable[int]):
        self.parent = parent
        self.members = tuple(sorted(set(int(m) for m in members)))
        self._mask = None
        if parent.identity_index not in set(self.members):
            raise ValueError("subgroup must contain the identity")
        if parent.order % len(self.members) != 0:
            raise ValueError("subgroup order must divide the group order")

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> int:
        if self._mask is None:
            m = 0
            for i in self.members:
                m |= 1 << i
            object.__setattr__(self, "_mask", m)
        return self._mask

    def __setattr__(self, name, value):
        if name in ("parent", "members", "_mask") and not hasattr(self, "members"):
            object.__setattr__(self, name, value)
        elif name == "_mask":
            object.__setattr__(self, name, value)
        else:
            raise AttributeError("SubgroupHandle is immutable")

    def __contains__(self, idx: int) -> bool:
        return (self.mask >> idx) & 1 == 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubgroupHandle)
            and other.parent is self.parent
            and other.members == self.members
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __le__(self, other: "SubgroupHandle") -> bool:
        return self.mask & other.mask == self.mask

    def __lt__(self, other: "SubgroupHandle") -> bool:
        return self.mask != other.mask and self <= other

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def is_full(self) -> bool:
        return self.order == self.parent.order

    def is_trivial(self) -> bool:
        return self.order == 1

    def validate(self) -> None:
        """Re-verify closure, inverses, identity, and Lagrange from scratch."""
        G = self.parent
        mem = set(self.members)
        assert G.identity_index in mem
        assert G.order % len(mem) == 0
        for a in self.members:
            assert G.inv(a) in mem
            for b in self.members:
                assert G.mult(a, b) in mem

    def __repr__(self) -> str:
        return f"SubgroupHandle(order={self.order} of {self.parent.order})"


class ElementSubset:
    """An arbitrary set of element indices inside a parent group."""

    __slots__ = ("parent", "members", "_mask")

    def __init__(self, parent: FiniteGroup, members: Iterable[int]):
        self.parent = parent
        self.members = tuple(sorted(set(int(m) for m in members)))
        self._mask = None
        for m in self.members:
            if not 0 <= m < parent.order:
                raise ValueError(f"index {m} outside the parent group")

    @property
    def mask(self) -> int:
        if self._mask is None:
            m = 0
            for i in self.members:
                m |= 1 << i
            self._mask = m
        return self._mask

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, idx: int) -> bool:
        return (self.mask >> idx) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ElementSubset)
            and other.parent is self.parent
            and other.members == self.members
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return f"ElementSubset({len(self.members)} of {self.parent.order})"


# -- index-set arithmetic (kernel-backed with a table, generic otherwise) --


def _as_array(members) -> np.ndarray:
    return np.asarray(members, dtype=np.int32)


def close_indices(G: FiniteGroup, seed: Iterable[int]) -> tuple:
    """Member tuple of the subgroup generated by `seed` inside G."""
    table = G.table
    seed_arr = _as_array(sorted(set(seed)))
    if table is not None:
        out = kernels.close_under_product(table, seed_arr, G.identity_index)
        return tuple(int(x) for x in out)
    members = {G.identity_index} | set(int(s) for s in seed_arr)
    fresh = list(members)
    while fresh:
        new = []
        mem_list = list(members)
        for a in fresh:
            for b in mem_list:
                for c in (G.mult(a, b), G.mult(b, a)):
                    if c not in members:
                        members.add(c)
                        new.append(c)
        fresh = new
    return tuple(sorted(members))


def product_indices(G: FiniteGroup, a: Sequence[int], b: Sequence[int]) -> tuple:
    table = G.table
    if table is not None:
        out = kernels.product_set(table, _as_array(a), _as_array(b))
        return tuple(int(x) for x in out)
    return tuple(sorted({G.mult(x, y) for x in a for y in b}))


def conjugate_indices(G: FiniteGroup, members: Sequence[int], x: int) -> tuple:
    table = G.table
    if table is not None:
        out = kernels.conjugate_set(table, G.inv_array, _as_array(members), int(x))
        return tuple(int(v) for v in out)
    xi = G.inv(x)
    return tuple(sorted(G.mult(G.mult(xi, h), x) for h in members))


def normalizer_indices(G: FiniteGroup, members: Sequence[int]) -> tuple:
    table = G.table
    if table is not None:
        out = kernels.normalizer_members(table, G.inv_array, _as_array(members))
        return tuple(int(v) for v in out)
    mem = set(members)
    return tuple(
        x
        for x in range(G.order)
        if all(G.mult(G.mult(G.inv(x), h), x) in mem for h in members)
    )


def centralizer_indices(G: FiniteGroup, members: Sequence[int]) -> tuple:
    table = G.table
    if table is not None:
        out = kernels.centralizer_members(table, _as_array(members))
        return tuple(int(v) for v in out)
    return tuple(
        x
        for x in range(G.order)
        if all(G.mult(x, s) == G.mult(s, x) for s in members)
    )


# -- spec operations ------------------------------------------------


def closure(
    degree: int,
    generators: Iterable[Permutation],
    cap: int = DEFAULT_CLOSURE_CAP,
) -> FiniteGroup:
    """Group generated by `generators` on `degree` points (BFS closure)."""
    return FiniteGroup.from_generators(degree, generators, cap=cap)


def subgroup_from_generators(G: FiniteGroup, gens: Iterable[int]) -> SubgroupHandle:
    """Smallest subgroup of G containing the given element indices."""
    gens = list(gens)
    for g in gens:
        if not 0 <= g < G.order:
            raise ValueError(f"generator index {g} outside G")
    return SubgroupHandle(G, close_indices(G, gens))


def trivial_subgroup(G: FiniteGroup) -> SubgroupHandle:
    return SubgroupHandle(G, (G.identity_index,))

def full_subgroup(G: FiniteGroup) -> SubgroupHandle:
    return SubgroupHandle(G, range(G.order))


def conjugate_subgroup(G: FiniteGroup, H: SubgroupHandle, x: int) -> SubgroupHandle:
    """H^x = {x^-1 h x : h in H}."""
    if H.parent is not G:
        raise ValueError("handle belongs to a different group")
    return SubgroupHandle(G, conjugate_indices(G, H.members, x))


def set_product(G: FiniteGroup, H, K) -> ElementSubset:
    """The product set HK = {hk}; for subgroups |HK| = |H||K|/|H∩K|."""
    if H.parent is not G or K.parent is not G:
        raise ValueError("operands belong to a different group")
    return ElementSubset(G, product_indices(G, H.members, K.members))


def intersect_handles(G: FiniteGroup, H: SubgroupHandle, K: SubgroupHandle) -> SubgroupHandle:
    mask = H.mask & K.mask
    members = [m for m in H.members if (mask >> m) & 1]
    return SubgroupHandle(G, members)


def join_subgroups(G: FiniteGroup, H: SubgroupHandle, K: SubgroupHandle) -> SubgroupHandle:
    """Subgroup generated by H and K."""
    if K <= H:
        return H
    if H <= K:
        return K
    return SubgroupHandle(G, close_indices(G, H.members + K.members))


def permutes(G: FiniteGroup, H: SubgroupHandle, K: SubgroupHandle) -> bool:
    """True iff HK = KH as sets (equivalently, iff HK is a subgroup)."""
    return product_indices(G, H.members, K.members) == product_indices(
        G, K.members, H.members
    )


def permutes_fast(G: FiniteGroup, H: SubgroupHandle, K: SubgroupHandle) -> bool:
    """Same verdict as `permutes` via |<H,K>| == |H||K|/|H∩K|.

    HK = KH iff HK is a subgroup iff the join has exactly |H||K|/|H∩K|
    elements. The definitional route is kept in `permutes`; the test suite
    asserts agreement on all catalog subgroup pairs.
    """
    if K <= H or H <= K:
        return True
    inter = (H.mask & K.mask).bit_count()
    expected, rem = divmod(H.order * K.order, inter)
    if rem or G.order % expected:
        return False
    return join_subgroups(G, H, K).order == expected


def direct_product(G1: FiniteGroup, G2: FiniteGroup, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """G1 x G2 acting on the disjoint union of the two point sets."""
    d1, d2 = G1.degree, G2.degree
    gens = []
    for g in G1.generators:
        gens.append(Permutation(tuple(g.images) + tuple(range(d1, d1 + d2))))
    for g in G2.generators:
        gens.append(Permutation(tuple(range(d1)) + tuple(i + d1 for i in g.images)))
    return FiniteGroup.from_generators(d1 + d2, gens, cap=cap)


def is_normal_handle(G: FiniteGroup, H: SubgroupHandle) -> bool:
    """H normal in G; conjugating by the generators of G suffices."""
    if H.is_full() or H.is_trivial():
        return True
    for g in G.generators:
        x = G.index_of(g)
        if conjugate_indices(G, H.members, x) != H.members:
            return False
    return True


def distinct_conjugates(G: FiniteGroup, H: SubgroupHandle) -> list:
    """All distinct conjugates of H in G (orbit under conjugation)."""
    seen = {H.members: H}
    queue = [H.members]
    gen_idx = [G.index_of(g) for g in G.generators]
    while queue:
        mem = queue.pop()
        for x in gen_idx:
            c = conjugate_indices(G, mem, x)
            if c not in seen:
                seen[c] = SubgroupHandle(G, c)
                queue.append(c)
    return sorted(seen.values(), key=lambda h: h.members)


def handle_generators(G: FiniteGroup, H: SubgroupHandle) -> list:
    """A small generating set of element indices for H (greedy, largest order first)."""
    if H.is_trivial():
        return []
    orders = G.element_orders
    candidates = sorted(H.members, key=lambda m: (-int(orders[m]), m))
    gens: list[int] = []
    current = (G.identity_index,)
    for c in candidates:
        if c in set(current):
            continue
        gens.append(c)
        current = close_indices(G, gens)
        if len(current) == H.order:
            break
    return gens
