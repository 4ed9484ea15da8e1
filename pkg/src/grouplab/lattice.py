"""Subgroup enumeration, normalizers, cores, quotients, and epimorphisms."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import permcore
from .errors import LatticeCapExceeded, NotNormal, TrivialGroup
from .permcore import (
    ElementSubset,
    FiniteGroup,
    Permutation,
    SubgroupHandle,
    close_indices,
    conjugate_indices,
    join_subgroups,
    normalizer_indices,
    centralizer_indices,
    subgroup_from_generators,
    trivial_subgroup,
)

DEFAULT_LATTICE_CAP = 20000


def cyclic_subgroups(G: FiniteGroup) -> list[SubgroupHandle]:
    """All distinct <g>, including the trivial subgroup."""

    def build():
        seen = {}
        for g in range(G.order):
            mem = close_indices(G, (g,))
            seen.setdefault(mem, SubgroupHandle(G, mem))
        return sorted(seen.values(), key=lambda h: (h.order, h.members))

    return G._memo("cyclics", build)


def all_subgroups(G: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> list[SubgroupHandle]:
    """Complete duplicate-free subgroup list via cyclic extension.

    Fixpoint of joining known subgroups with cyclic subgroups; complete
    because every subgroup is generated by its cyclic subgroups.
    """

    def build():
        cyclics = cyclic_subgroups(G)
        known: dict[tuple, SubgroupHandle] = {h.members: h for h in cyclics}
        frontier = list(known.values())
        while frontier:
            fresh: list[SubgroupHandle] = []
            for S in frontier:
                for C in cyclics:
                    if C <= S:
                        continue
                    J = join_subgroups(G, S, C)
                    if J.members not in known:
                        if len(known) >= cap:
                            raise LatticeCapExceeded(
                                f"more than {cap} subgroups", limit=cap
                            )
                        known[J.members] = J
                        fresh.append(J)
            frontier = fresh
        return sorted(known.values(), key=lambda h: (h.order, h.members))

    return G._memo(("subgroups", cap), build)


def maximal_subgroups(G: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> list[SubgroupHandle]:
    """Proper subgroups maximal under inclusion; empty (with a warning) for |G| = 1."""
    if G.order == 1:
        warnings.warn("maximal subgroups of the trivial group are undefined; returning []")
        return []

    def build():
        subs = [h for h in all_subgroups(G, cap) if not h.is_full()]
        out = []
        for h in subs:
            if not any(h < k for k in subs if k.order > h.order):
                out.append(h)
        return out

    return G._memo(("maximals", cap), build)


def normalizer(G: FiniteGroup, H: SubgroupHandle) -> SubgroupHandle:
    """N_G(H) = {x : H^x = H}."""
    return SubgroupHandle(G, normalizer_indices(G, H.members))


def centralizer(G: FiniteGroup, S) -> SubgroupHandle:
    """C_G(S) = {x : xs = sx for all s in S}; S is any subset or handle."""
    return SubgroupHandle(G, centralizer_indices(G, S.members))


def core(G: FiniteGroup, H: SubgroupHandle) -> SubgroupHandle:
    """Largest normal subgroup of G inside H: intersection of all conjugates."""
    mask = H.mask
    for c in permcore.distinct_conjugates(G, H):
        mask &= c.mask
    return SubgroupHandle(G, [m for m in H.members if (mask >> m) & 1])


def normal_closure(G: FiniteGroup, H: SubgroupHandle) -> SubgroupHandle:
    """Smallest normal subgroup of G containing H."""
    seed = set()
    for c in permcore.distinct_conjugates(G, H):
        seed.update(c.members)
    return SubgroupHandle(G, close_indices(G, seed))


def normal_closure_in(G: FiniteGroup, K: SubgroupHandle, H: SubgroupHandle) -> SubgroupHandle:
    """Normal closure of H inside the subgroup K (H <= K required)."""
    seed = set(H.members)
    queue = [H.members]
    seen = {H.members}
    while queue:
        mem = queue.pop()
        for x in K.members:
            c = conjugate_indices(G, mem, x)
            if c not in seen:
                seen.add(c)
                seed.update(c)
                queue.append(c)
    return SubgroupHandle(G, close_indices(G, seed))


def normal_subgroups(G: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> list[SubgroupHandle]:
    def build():
        return [h for h in all_subgroups(G, cap) if permcore.is_normal_handle(G, h)]

    return G._memo(("normals", cap), build)


def minimal_normal_subgroups(G: FiniteGroup) -> list[SubgroupHandle]:
    """Minimal nontrivial normal subgroups.

    Independent of the full lattice: every minimal normal subgroup is the
    normal closure of a single cyclic subgroup.
    """
    if G.order == 1:
        raise TrivialGroup("the trivial group has no minimal normal subgroups")

    def build():
        closures = {}
        for g in range(G.order):
            if g == G.identity_index:
                continue
            h = subgroup_from_generators(G, [g])
            closures.setdefault(normal_closure(G, h).members, None)
        handles = [SubgroupHandle(G, m) for m in closures]
        out = [
            h
            for h in handles
            if not any(k.members != h.members and k < h for k in handles)
        ]
        return sorted(out, key=lambda h: (h.order, h.members))

    return G._memo("minimal_normals", build)


@dataclass(frozen=True)
class Epimorphism:
    """The canonical map G -> G/N realized on the right-coset action."""

    source: FiniteGroup
    kernel: SubgroupHandle
    target: FiniteGroup
    image_of: np.ndarray  # source element index -> target element index

    def image_of_handle(self, H: SubgroupHandle) -> SubgroupHandle:
        return SubgroupHandle(self.target, {int(self.image_of[m]) for m in H.members})

    def image_of_members(self, members) -> tuple:
        return tuple(sorted({int(self.image_of[m]) for m in members}))


def quotient(G: FiniteGroup, N: SubgroupHandle) -> Epimorphism:
    """G/N as the permutation action of G on the right cosets of N."""
    if not permcore.is_normal_handle(G, N):
        raise NotNormal("quotient requires a normal subgroup")

    def build():
        n = G.order
        table = G.table
        coset_of = np.full(n, -1, dtype=np.int32)
        reps = []
        for g in range(n):
            if coset_of[g] >= 0:
                continue
            cid = len(reps)
            reps.append(g)
            if table is not None:
                coset_of[table[np.asarray(N.members, dtype=np.int32), g]] = cid
            else:
                for x in N.members:
                    coset_of[G.mult(x, g)] = cid
        k = len(reps)
        reps_arr = np.asarray(reps, dtype=np.int32)
        # sigma_g permutes cosets by right multiplication.
        perms: dict[Permutation, int] = {}
        image_of = np.empty(n, dtype=np.int32)
        elements: list[Permutation] = []
        if table is not None:
            images_all = coset_of[table[reps_arr, :]]  # shape (k, n): row c = coset of rep_c * g
        for g in range(n):
            if table is not None:
                img = Permutation(images_all[:, g])
            else:
                img = Permutation([int(coset_of[G.mult(int(r), g)]) for r in reps])
            idx = perms.get(img)
            if idx is None:
                idx = len(elements)
                perms[img] = idx
                elements.append(img)
            image_of[g] = idx
        gens = []
        for gp in G.generators:
            img = elements[image_of[G.index_of(gp)]]
            if not img.is_identity() and img not in gens:
                gens.append(img)
        ttable = None
        if table is not None and k <= G._table_limit:
            ttable = np.empty((k, k), dtype=np.int32)
            ttable[image_of[:, None], image_of[None, :]] = image_of[table]
        target = FiniteGroup(
            k, gens, elements, table_limit=G._table_limit, _table=ttable
        )
        return Epimorphism(G, N, target, image_of)

    return G._memo(("quotient", N.members), build)


def preimage(e: Epimorphism, T: SubgroupHandle) -> SubgroupHandle:
    """{g in source : image(g) in T}; order |T| * |kernel|."""
    tmask = T.mask
    members = [g for g in range(e.source.order) if (tmask >> int(e.image_of[g])) & 1]
    return SubgroupHandle(e.source, members)


def subgroup_group(G: FiniteGroup, H: SubgroupHandle):
    """Materialize a handle as its own FiniteGroup.

    Returns (group, idx) where idx[i] is the G-index of the new group's
    element i. Identity stays at index 0; permutations are shared.
    """

    def build():
        idx = np.asarray(H.members, dtype=np.int32)
        elements = [G.elements[int(i)] for i in idx]
        gens = [G.elements[g] for g in permcore.handle_generators(G, H)]
        table = None
        gtable = G.table
        if gtable is not None:
            back = np.full(G.order, -1, dtype=np.int32)
            back[idx] = np.arange(len(idx), dtype=np.int32)
            table = back[gtable[np.ix_(idx, idx)]]
        group = FiniteGroup(
            G.degree, gens, elements, table_limit=G._table_limit, _table=table
        )
        return group, idx

    return G._memo(("matgroup", H.members), build)


def lift_members(idx: np.ndarray, members) -> tuple:
    """Translate member indices of a materialized subgroup back into G."""
    return tuple(sorted(int(idx[m]) for m in members))


def conjugacy_classes_of_subgroups(
    G: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP
) -> list[list[SubgroupHandle]]:
    """Orbits of the subgroup list under conjugation.

    Each class is sorted with the lexicographically least member set first
    (the class representative); classes are ordered by representative.
    """

    def build():
        remaining = {h.members: h for h in all_subgroups(G, cap)}
        classes = []
        while remaining:
            key = min(remaining)
            orbit = permcore.distinct_conjugates(G, remaining[key])
            for h in orbit:
                remaining.pop(h.members, None)
            classes.append(sorted(orbit, key=lambda h: h.members))
        return sorted(classes, key=lambda cl: (cl[0].order, cl[0].members))

    return G._memo(("subgroup_classes", cap), build)


def powerset_subgroups(G: FiniteGroup, limit: int = 16) -> list[SubgroupHandle]:
    """Brute-force oracle: test every identity-containing subset for closure.

    Deliberately independent of `all_subgroups` (anti-hallucination check).
    Subset sizes are restricted to divisors of |G|; raises for |G| > limit.
    """
    if G.order > limit:
        raise ValueError(f"powerset oracle limited to |G| <= {limit}")
    from . import kernels

    table = G.table
    ident = G.identity_index
    others = [i for i in range(G.order) if i != ident]
    found = []
    divisors = [d for d in range(1, G.order + 1) if G.order % d == 0]
    for d in divisors:
        for extra in combinations(others, d - 1):
            members = np.asarray(sorted((ident,) + extra), dtype=np.int32)
            if kernels.is_closed_subset(table, members):
                found.append(SubgroupHandle(G, members))
    return sorted(found, key=lambda h: (h.order, h.members))
