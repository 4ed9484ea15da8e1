"""Characteristic subgroups: center, hypercenter, derived series, Sylow
subgroups, p-cores, Fitting subgroup, Frattini subgroup, socle, and the two
generalized Fitting subgroups."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import lattice, permcore
from .permcore import (
    FiniteGroup,
    SubgroupHandle,
    close_indices,
    product_indices,
    subgroup_from_generators,
    trivial_subgroup,
    full_subgroup,
)


def _primes(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def center(G: FiniteGroup) -> SubgroupHandle:
    """Z(G) = {x : xg = gx for all g}."""

    def build():
        table = G.table
        if table is not None:
            members = np.flatnonzero((table == table.T).all(axis=1))
            return SubgroupHandle(G, members)
        return SubgroupHandle(G, permcore.centralizer_indices(G, range(G.order)))

    return G._memo("center", build)


def hypercenter(G: FiniteGroup) -> SubgroupHandle:
    """Limit of the upper central series; stops at the first repeated term."""

    def build():
        z = center(G)
        while not z.is_full():
            e = lattice.quotient(G, z)
            nxt = lattice.preimage(e, center(e.target))
            if nxt.members == z.members:
                break
            z = nxt
        return z

    return G._memo("hypercenter", build)


def commutator_members(G: FiniteGroup, a_members, b_members) -> set:
    """{[a,b] = a^-1 b^-1 a b} over the two index sets."""
    table = G.table
    if table is not None:
        inv = G.inv_array
        a = np.asarray(a_members, dtype=np.int32)
        b = np.asarray(b_members, dtype=np.int32)
        left = table[np.ix_(inv[a], inv[b])]
        right = table[np.ix_(a, b)]
        return set(int(v) for v in np.unique(table[left, right]))
    out = set()
    for a in a_members:
        ia = G.inv(a)
        for b in b_members:
            out.add(G.mult(G.mult(G.mult(ia, G.inv(b)), a), b))
    return out


def derived_subgroup(G: FiniteGroup) -> SubgroupHandle:
    """G' = <[g, h]>."""

    def build():
        comms = commutator_members(G, range(G.order), range(G.order))
        return SubgroupHandle(G, close_indices(G, comms))

    return G._memo("derived", build)


def derived_subgroup_of(G: FiniteGroup, H: SubgroupHandle) -> SubgroupHandle:
    """Derived subgroup of a subgroup handle, as a handle in G."""
    comms = commutator_members(G, H.members, H.members)
    return SubgroupHandle(G, close_indices(G, comms))


def derived_series(G: FiniteGroup) -> list[SubgroupHandle]:
    """G >= G' >= G'' >= ..., ending at the first repetition."""

    def build():
        series = [full_subgroup(G)]
        while True:
            nxt = derived_subgroup_of(G, series[-1])
            if nxt.members == series[-1].members:
                break
            series.append(nxt)
        return series

    return G._memo("derived_series", build)


def sylow_subgroups(G: FiniteGroup, p: int) -> list[SubgroupHandle]:
    """All Sylow p-subgroups; the trivial subgroup if p does not divide |G|."""

    def build():
        target = _p_part(G.order, p)
        if target == 1:
            return [trivial_subgroup(G)]
        orders = G.element_orders
        p_elems = [i for i in range(G.order) if _is_p_power(int(orders[i]), p)]
        P = trivial_subgroup(G)
        # Grow inside the normalizer until Sylow order is reached; a p-element
        # extending P to a p-group always exists in N_G(P) while |P| < target.
        while P.order < target:
            norm = permcore.normalizer_indices(G, P.members)
            for x in norm:
                if x in P or not _is_p_power(int(orders[x]), p):
                    continue
                cand = close_indices(G, set(P.members) | {x})
                if _is_p_power(len(cand), p):
                    P = SubgroupHandle(G, cand)
                    break
            else:
                raise AssertionError("Sylow growth stalled")
        sylows = permcore.distinct_conjugates(G, P)
        assert len(sylows) % p == 1, "Sylow count must be 1 mod p"
        return sylows

    return G._memo(("sylow", p), build)


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def sylow_map(G: FiniteGroup) -> dict[int, list[SubgroupHandle]]:
    return {p: sylow_subgroups(G, p) for p in _primes(G.order)}


def p_core(G: FiniteGroup, p: int) -> SubgroupHandle:
    """O_p(G): intersection of all Sylow p-subgroups."""
    sylows = sylow_subgroups(G, p)
    mask = sylows[0].mask
    for s in sylows[1:]:
        mask &= s.mask
    return SubgroupHandle(G, [m for m in sylows[0].members if (mask >> m) & 1])


def fitting(G: FiniteGroup) -> SubgroupHandle:
    """F(G): the largest normal nilpotent subgroup, as the join of the O_p."""

    def build():
        members = trivial_subgroup(G)
        for p in _primes(G.order):
            op = p_core(G, p)
            # both factors normal, so the set product is the join
            members = SubgroupHandle(G, product_indices(G, members.members, op.members))
        return members

    return G._memo("fitting", build)


def frattini(G: FiniteGroup) -> SubgroupHandle:
    """Phi(G): intersection of all maximal subgroups; Phi(1) = 1."""

    def build():
        if G.order == 1:
            return trivial_subgroup(G)
        maxs = lattice.maximal_subgroups(G)
        mask = maxs[0].mask
        for m in maxs[1:]:
            mask &= m.mask
        return SubgroupHandle(G, [i for i in maxs[0].members if (mask >> i) & 1])

    return G._memo("frattini", build)


def socle(G: FiniteGroup) -> SubgroupHandle:
    """Join of all minimal normal subgroups; Soc(1) = 1."""

    def build():
        if G.order == 1:
            return trivial_subgroup(G)
        seed: set[int] = set()
        for n in lattice.minimal_normal_subgroups(G):
            seed.update(n.members)
        return SubgroupHandle(G, close_indices(G, seed))

    return G._memo("socle", build)


def fitting_star(G: FiniteGroup) -> SubgroupHandle:
    """F*(G), defined by F*(G)/F(G) = Soc(C_G(F(G)) F(G) / F(G))."""

    def build():
        F = fitting(G)
        C = lattice.centralizer(G, F)
        K = SubgroupHandle(G, product_indices(G, C.members, F.members))
        e = lattice.quotient(G, F)
        KQ = e.image_of_handle(K)
        if KQ.is_trivial():
            return F
        sub, idx = lattice.subgroup_group(e.target, KQ)
        soc_local = socle(sub)
        soc_q = SubgroupHandle(e.target, lattice.lift_members(idx, soc_local.members))
        return lattice.preimage(e, soc_q)

    return G._memo("fstar", build)


def fitting_tilde(G: FiniteGroup) -> SubgroupHandle:
    """The Frattini-closed socle lift: preimage of Soc(G/Phi(G))."""

    def build():
        phi = frattini(G)
        e = lattice.quotient(G, phi)
        return lattice.preimage(e, socle(e.target))

    return G._memo("ftilde", build)


@dataclass(frozen=True)
class CharacteristicProfile:
    """All characteristic subgroups of one group, computed in one sweep."""

    group: FiniteGroup
    center: SubgroupHandle
    hypercenter: SubgroupHandle
    derived: SubgroupHandle
    fitting: SubgroupHandle
    frattini: SubgroupHandle
    socle: SubgroupHandle
    f_star: SubgroupHandle
    f_tilde: SubgroupHandle
    sylow: dict[int, list[SubgroupHandle]] = field(default_factory=dict)


def profile(G: FiniteGroup) -> CharacteristicProfile:
    return CharacteristicProfile(
        group=G,
        center=center(G),
        hypercenter=hypercenter(G),
        derived=derived_subgroup(G),
        fitting=fitting(G),
        frattini=frattini(G),
        socle=socle(G),
        f_star=fitting_star(G),
        f_tilde=fitting_tilde(G),
        sylow=sylow_map(G),
    )
