"""Group-class and subgroup-embedding predicates.

Class predicates (nilpotent, soluble, supersoluble, metanilpotent,
quasinilpotent) take a FiniteGroup; embedding predicates take the ambient
group and a SubgroupHandle. Everything is pure and memoized per group.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import charsub, lattice, permcore
from .errors import SearchCapExceeded
from .permcore import (
    FiniteGroup,
    SubgroupHandle,
    conjugate_indices,
    join_subgroups,
    permutes_fast,
    subgroup_from_generators,
    trivial_subgroup,
    full_subgroup,
)

DEFAULT_PAIR_CAP = 200000


# -- group classes --------------------------------------------------


def is_nilpotent(G: FiniteGroup) -> bool:
    """Every Sylow subgroup normal (equivalently unique)."""

    def build():
        return all(
            len(charsub.sylow_subgroups(G, p)) == 1 for p in charsub._primes(G.order)
        )

    return G._memo("is_nilpotent", build)


def is_soluble(G: FiniteGroup) -> bool:
    return charsub.derived_series(G)[-1].is_trivial()


@dataclass(frozen=True)
class ChiefSeries:
    """1 = N_0 < N_1 < ... < N_k = G with each factor minimal normal in G/N_i."""

    group: FiniteGroup
    terms: tuple[SubgroupHandle, ...]

    @property
    def factor_orders(self) -> tuple[int, ...]:
        return tuple(
            self.terms[i + 1].order // self.terms[i].order
            for i in range(len(self.terms) - 1)
        )

    def factors(self):
        return list(zip(self.terms[1:], self.terms[:-1]))


def chief_series(G: FiniteGroup, tie: str = "min") -> ChiefSeries:
    """One chief series; `tie` picks among minimal normals of each quotient.

    Supersolubility and the other class checks are series-independent
    (Jordan-Hoelder); the tie parameter exists so tests can confirm that.
    """
    pick = min if tie == "min" else max

    def build():
        terms = [trivial_subgroup(G)]
        while terms[-1].order < G.order:
            e = lattice.quotient(G, terms[-1])
            mins = lattice.minimal_normal_subgroups(e.target)
            chosen = pick(mins, key=lambda h: h.members)
            terms.append(lattice.preimage(e, chosen))
        return ChiefSeries(G, tuple(terms))

    return G._memo(("chief", tie), build)


def is_supersoluble(G: FiniteGroup) -> bool:
    """All chief factors of prime order."""

    def build():
        return all(_is_prime(q) for q in chief_series(G).factor_orders)

    return G._memo("is_supersoluble", build)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def is_metanilpotent(G: FiniteGroup) -> bool:
    """G/F(G) nilpotent."""

    def build():
        e = lattice.quotient(G, charsub.fitting(G))
        return is_nilpotent(e.target)

    return G._memo("is_metanilpotent", build)


def chief_factor_centralizer(G: FiniteGroup, H: SubgroupHandle, K: SubgroupHandle) -> SubgroupHandle:
    """C_G(H/K) = {g : [g, H] <= K} for K normal in H."""
    table = G.table
    km = np.zeros(G.order, dtype=bool)
    km[np.asarray(K.members, dtype=np.int32)] = True
    if table is not None:
        inv = G.inv_array
        hm = np.asarray(H.members, dtype=np.int32)
        left = table[np.ix_(inv, inv[hm])]
        right = table[:, hm]
        comm = table[left, right]
        members = np.flatnonzero(km[comm].all(axis=1))
        return SubgroupHandle(G, members)
    members = []
    for g in range(G.order):
        ig = G.inv(g)
        if all(
            km[G.mult(G.mult(G.mult(ig, G.inv(h)), g), h)] for h in H.members
        ):
            members.append(g)
    return SubgroupHandle(G, members)


def is_quasinilpotent(G: FiniteGroup) -> bool:
    """G = C_G(H/K) H for every chief factor H/K."""

    def build():
        series = chief_series(G)
        for H, K in series.factors():
            C = chief_factor_centralizer(G, H, K)
            # H normal in G, so CH is a subgroup of size |C||H|/|C∩H|
            inter = (C.mask & H.mask).bit_count()
            if C.order * H.order // inter != G.order:
                return False
        return True

    return G._memo("is_quasinilpotent", build)


# -- subgroup materialization helpers --------------------------------


def nilpotent_handle(G: FiniteGroup, H: SubgroupHandle) -> bool:
    def build():
        if H.is_full():
            return is_nilpotent(G)
        sub, _ = lattice.subgroup_group(G, H)
        return is_nilpotent(sub)

    return G._memo(("nilpotent_sub", H.members), build)


def supersoluble_handle(G: FiniteGroup, H: SubgroupHandle) -> bool:
    def build():
        if H.is_full():
            return is_supersoluble(G)
        sub, _ = lattice.subgroup_group(G, H)
        return is_supersoluble(sub)

    return G._memo(("supersoluble_sub", H.members), build)


# -- embedding predicates --------------------------------------------


def is_subnormal(G: FiniteGroup, H: SubgroupHandle) -> bool:
    """Normal-closure descent from G reaches H."""
    return is_subnormal_in(G, full_subgroup(G), H)


def is_subnormal_in(G: FiniteGroup, J: SubgroupHandle, H: SubgroupHandle) -> bool:
    """H subnormal in the subgroup J (H <= J required)."""
    if not H <= J:
        raise ValueError("H must be contained in J")
    current = J
    while True:
        if current.members == H.members:
            return True
        nxt = lattice.normal_closure_in(G, current, H)
        if nxt.members == current.members:
            return False
        current = nxt


def _conjugate_table(G: FiniteGroup, H: SubgroupHandle) -> dict[int, tuple]:
    """Map x -> members of H^x, for all x (conjugates shared, not copied)."""
    out = {}
    interned: dict[tuple, tuple] = {}
    for x in range(G.order):
        c = conjugate_indices(G, H.members, x)
        out[x] = interned.setdefault(c, c)
    return out


def is_pronormal(G: FiniteGroup, H: SubgroupHandle) -> bool:
    """H and H^x conjugate inside <H, H^x> for every x."""

    def build():
        for Hx in permcore.distinct_conjugates(G, H):
            if Hx.members == H.members:
                continue
            J = join_subgroups(G, H, Hx)
            if not any(
                conjugate_indices(G, H.members, u) == Hx.members for u in J.members
            ):
                return False
        return True

    return G._memo(("pronormal", H.members), build)


def is_abnormal(G: FiniteGroup, H: SubgroupHandle) -> bool:
    """x in <H, H^x> for every x in G."""

    def build():
        joins: dict[tuple, int] = {}
        for x in range(G.order):
            if x in H:
                continue
            c = conjugate_indices(G, H.members, x)
            jmask = joins.get(c)
            if jmask is None:
                J = join_subgroups(G, H, SubgroupHandle(G, c))
                jmask = J.mask
                joins[c] = jmask
            if not (jmask >> x) & 1:
                return False
        return True

    return G._memo(("abnormal", H.members), build)


def is_quasinormal(G: FiniteGroup, H: SubgroupHandle, cap: int = lattice.DEFAULT_LATTICE_CAP) -> bool:
    """H permutes with every subgroup of G."""

    def build():
        for K in lattice.all_subgroups(G, cap):
            if not permutes_fast(G, H, K):
                return False
        return True

    return G._memo(("quasinormal", H.members), build)


def is_s_permutable(G: FiniteGroup, H: SubgroupHandle) -> bool:
    """H permutes with every Sylow subgroup of G."""

    def build():
        for p in charsub._primes(G.order):
            for P in charsub.sylow_subgroups(G, p):
                if not permutes_fast(G, H, P):
                    return False
        return True

    return G._memo(("s_permutable", H.members), build)


def is_conjugate_permutable(G: FiniteGroup, H: SubgroupHandle) -> bool:
    """H H^x = H^x H for every x in G."""

    def build():
        for Hx in permcore.distinct_conjugates(G, H):
            if not permutes_fast(G, H, Hx):
                return False
        return True

    return G._memo(("conj_permutable", H.members), build)


def is_r_conjugate_permutable(G: FiniteGroup, H: SubgroupHandle, R) -> bool:
    """H H^x = H^x H for every x in the subset R (handle or ElementSubset)."""
    seen: set[tuple] = set()
    for x in R.members:
        c = conjugate_indices(G, H.members, x)
        if c in seen:
            continue
        seen.add(c)
        if c != H.members and not permutes_fast(G, H, SubgroupHandle(G, c)):
            return False
    return True


def r_cp_witness(G: FiniteGroup, H: SubgroupHandle, R):
    """First x in R with H H^x != H^x H, or None."""
    for x in R.members:
        c = conjugate_indices(G, H.members, x)
        if c != H.members and not permutes_fast(G, H, SubgroupHandle(G, c)):
            return x
    return None


# -- factorizations ---------------------------------------------------


def dinilpotent_factorizations(
    G: FiniteGroup,
    limit: int = DEFAULT_PAIR_CAP,
    cap: int = lattice.DEFAULT_LATTICE_CAP,
) -> list[tuple[SubgroupHandle, SubgroupHandle]]:
    """All unordered pairs of nilpotent subgroups with AB = G.

    Pairs with |A||B| < |G| are pruned before the product test; at most
    `limit` surviving candidate pairs are examined.
    """

    def build():
        subs = lattice.all_subgroups(G, cap)
        nilp = [h for h in subs if nilpotent_handle(G, h)]
        out = []
        examined = 0
        for i, A in enumerate(nilp):
            for B in nilp[i:]:
                if A.order * B.order < G.order:
                    continue
                examined += 1
                if examined > limit:
                    raise SearchCapExceeded(
                        f"more than {limit} candidate pairs", limit=limit
                    )
                inter = (A.mask & B.mask).bit_count()
                if A.order * B.order == G.order * inter:
                    out.append((A, B))
        return out

    return G._memo(("dinilpotent", limit, cap), build)


def covers_group(G: FiniteGroup, A: SubgroupHandle, B: SubgroupHandle) -> bool:
    """AB = G, decided by |A||B| = |G||A∩B| (exact for subgroups)."""
    inter = (A.mask & B.mask).bit_count()
    return A.order * B.order == G.order * inter
