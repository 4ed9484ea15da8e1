"""Registry of machine-checkable statements and the evaluation harness.

Each statement id maps to one checker. Checkers return a verdict plus
witnesses:

* ``holds``        the statement is confirmed on this group,
* ``violated``     a concrete counterexample was found (always witnessed),
* ``inapplicable`` the statement's hypothesis fails for this group,
* ``skipped``      a resource cap was hit (the cap is named in a witness).

Biconditionals evaluate both sides independently and record them as
``lhs=…`` / ``rhs=…`` witness flags; implications with a false hypothesis
are inapplicable, never vacuously ``holds``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import gcd

from . import charsub, lattice, permcore, predicates
from .errors import CapExceeded, SearchCapExceeded
from .permcore import (
    FiniteGroup,
    SubgroupHandle,
    join_subgroups,
    product_indices,
    subgroup_from_generators,
)


@dataclass(frozen=True)
class Caps:
    max_order: int = 10000
    max_subgroups: int = 20000
    max_pairs: int = 200000


@dataclass(frozen=True)
class Witness:
    label: str
    generators: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"label": self.label, "generators": list(self.generators)}


@dataclass
class StatementReport:
    statement: str
    group_label: str
    verdict: str
    witnesses: list[Witness] = field(default_factory=list)
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        return {
            "group": self.group_label,
            "statement": self.statement,
            "verdict": self.verdict,
            "witnesses": [w.to_json() for w in self.witnesses],
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def _wsub(G: FiniteGroup, label: str, H: SubgroupHandle) -> Witness:
    gens = tuple(
        G.elements[i].cycles() for i in permcore.handle_generators(G, H)
    )
    return Witness(label, gens)


def _welem(G: FiniteGroup, label: str, x: int) -> Witness:
    return Witness(label, (G.elements[x].cycles(),))


def _flag(label: str) -> Witness:
    return Witness(label)


# -- shared ingredients ------------------------------------------------


def _subs(G, caps):
    return lattice.all_subgroups(G, caps.max_subgroups)


def _maximals(G, caps):
    if G.order == 1:
        return []
    return lattice.maximal_subgroups(G, caps.max_subgroups)


def _fcp(G, H, R) -> bool:
    return predicates.is_r_conjugate_permutable(G, H, R)


def _all_sylows(G):
    out = []
    for p in charsub._primes(G.order):
        out.extend((p, P) for P in charsub.sylow_subgroups(G, p))
    return out


def _sylows_of_handle(G, M):
    """Sylow subgroups of the subgroup M, lifted back to handles in G."""
    if M.is_trivial():
        return []
    sub, idx = lattice.subgroup_group(G, M)
    out = []
    for p in charsub._primes(sub.order):
        for P in charsub.sylow_subgroups(sub, p):
            out.append(SubgroupHandle(G, lattice.lift_members(idx, P.members)))
    return out


def _biconditional(lhs: bool, rhs: bool, extra=()):
    witnesses = [_flag(f"lhs={lhs}"), _flag(f"rhs={rhs}"), *extra]
    return ("holds" if lhs == rhs else "violated"), witnesses


# -- main theorems -----------------------------------------------------


def _check_A(G, caps):
    ft = charsub.fitting_tilde(G)
    lhs = predicates.is_nilpotent(G)
    bad = None
    for M in _maximals(G, caps):
        if not _fcp(G, M, ft):
            bad = M
            break
    rhs = bad is None
    extra = [] if bad is None else [_wsub(G, "maximal not ftilde-cp", bad)]
    return _biconditional(lhs, rhs, extra)


def _check_A1(G, caps):
    bad = None
    for M in _maximals(G, caps):
        if not predicates.is_conjugate_permutable(G, M):
            bad = M
            break
    if bad is not None:
        return "inapplicable", [_wsub(G, "maximal not conjugate-permutable", bad)]
    if predicates.is_nilpotent(G):
        return "holds", [_flag("all maximal subgroups conjugate-permutable")]
    return "violated", [_flag("hypothesis true but group not nilpotent")]


def _check_A2(G, caps):
    if predicates.is_nilpotent(G):
        return "inapplicable", [_flag("group is nilpotent")]
    ft = charsub.fitting_tilde(G)
    for M in _maximals(G, caps):
        if predicates.is_abnormal(G, M) and not ft <= M:
            return "holds", [_wsub(G, "abnormal maximal avoiding ftilde", M)]
    return "violated", [_flag("no abnormal maximal subgroup avoids ftilde")]


def _check_B(G, caps):
    fs = charsub.fitting_star(G)
    s1 = predicates.is_nilpotent(G)
    s2 = all(
        _fcp(G, H, fs)
        for H in _subs(G, caps)
        if predicates.is_abnormal(G, H)
    )
    s3 = all(_fcp(G, lattice.normalizer(G, P), fs) for _, P in _all_sylows(G))
    s4 = all(_fcp(G, P, fs) for _, P in _all_sylows(G))
    witnesses = [
        _flag(f"lhs={s1}"),
        _flag(f"rhs={s2 and s3 and s4}"),
        _flag(f"side1-nilpotent={s1}"),
        _flag(f"side2-abnormal-fstar-cp={s2}"),
        _flag(f"side3-sylow-normalizers-fstar-cp={s3}"),
        _flag(f"side4-sylows-fstar-cp={s4}"),
    ]
    ok = s1 == s2 == s3 == s4
    return ("holds" if ok else "violated"), witnesses


def _check_B1(G, caps):
    fs = charsub.fitting_star(G)
    lhs = predicates.is_nilpotent(G)
    rhs = all(
        fs <= lattice.normalizer(G, P) for _, P in _all_sylows(G)
    )
    return _biconditional(lhs, rhs)


def _check_B2(G, caps):
    fs = charsub.fitting_star(G)
    lhs = predicates.is_nilpotent(G)
    rhs1 = True
    rhs2 = True
    for M in _maximals(G, caps):
        for P in _sylows_of_handle(G, M):
            if rhs1 and not _fcp(G, P, fs):
                rhs1 = False
            if rhs2:
                nm = SubgroupHandle(
                    G,
                    [
                        x
                        for x in permcore.normalizer_indices(G, P.members)
                        if x in M
                    ],
                )
                if not _fcp(G, nm, fs):
                    rhs2 = False
        if not rhs1 and not rhs2:
            break
    witnesses = [
        _flag(f"lhs={lhs}"),
        _flag(f"rhs={rhs1 and rhs2}"),
        _flag(f"sylows-of-maximals-fstar-cp={rhs1}"),
        _flag(f"normalizers-in-maximals-fstar-cp={rhs2}"),
    ]
    ok = (lhs == rhs1) and (lhs == rhs2)
    return ("holds" if ok else "violated"), witnesses


def _cyclic_primary_subgroups(G):
    """<g> for every g of prime-power order > 1."""
    orders = G.element_orders
    seen = {}
    for g in range(G.order):
        o = int(orders[g])
        if o > 1 and len(charsub._primes(o)) == 1:
            mem = permcore.close_indices(G, (g,))
            seen.setdefault(mem, SubgroupHandle(G, mem))
    return list(seen.values())


def _check_C(G, caps):
    fs = charsub.fitting_star(G)
    for H in _cyclic_primary_subgroups(G):
        if not _fcp(G, H, fs):
            return "inapplicable", [_wsub(G, "cyclic primary not fstar-cp", H)]
    if predicates.is_nilpotent(G):
        return "holds", [_flag("all cyclic primary subgroups fstar-cp")]
    return "violated", [_flag("hypothesis true but group not nilpotent")]


def _check_C1(G, caps):
    fs = charsub.fitting_star(G)
    orders = G.element_orders
    for M in _maximals(G, caps):
        for P in _sylows_of_handle(G, M):
            seen = set()
            for g in P.members:
                if int(orders[g]) == 1:
                    continue
                mem = permcore.close_indices(G, (g,))
                if mem in seen:
                    continue
                seen.add(mem)
                H = SubgroupHandle(G, mem)
                if not _fcp(G, H, fs):
                    return "inapplicable", [
                        _wsub(G, "cyclic subgroup of maximal's sylow not fstar-cp", H)
                    ]
    if predicates.is_nilpotent(G):
        return "holds", [_flag("hypothesis satisfied")]
    return "violated", [_flag("hypothesis true but group not nilpotent")]


def _check_D(G, caps):
    facs = predicates.dinilpotent_factorizations(G, caps.max_pairs, caps.max_subgroups)
    if not facs:
        return "inapplicable", [_flag("no dinilpotent factorization")]
    F = charsub.fitting(G)
    lhs = predicates.is_nilpotent(G)
    good = next(
        ((A, B) for A, B in facs if _fcp(G, A, F) and _fcp(G, B, F)), None
    )
    rhs = good is not None
    extra = []
    if good:
        extra = [_wsub(G, "factor A", good[0]), _wsub(G, "factor B", good[1])]
    return _biconditional(lhs, rhs, extra)


def _check_D1(G, caps):
    facs = predicates.dinilpotent_factorizations(G, caps.max_pairs, caps.max_subgroups)
    F = charsub.fitting(G)
    qualifying = [
        (A, B) for A, B in facs if F.mask & A.mask & B.mask == F.mask
    ]
    if not qualifying:
        return "inapplicable", [_flag("no dinilpotent factorization with F <= A∩B")]
    if predicates.is_nilpotent(G):
        return "holds", [_flag(f"{len(qualifying)} qualifying factorizations")]
    A, B = qualifying[0]
    return "violated", [_wsub(G, "factor A", A), _wsub(G, "factor B", B)]


def _supersoluble_fcp_subgroups(G, caps):
    """Subgroups that are supersoluble and F(G)-conjugate-permutable."""

    def build():
        F = charsub.fitting(G)
        return [
            H
            for H in _subs(G, caps)
            if predicates.supersoluble_handle(G, H) and _fcp(G, H, F)
        ]

    return G._memo(("ss_fcp", caps.max_subgroups), build)


def _check_E(G, caps):
    lhs = predicates.is_supersoluble(G)
    derived_nilp = predicates.nilpotent_handle(G, charsub.derived_subgroup(G))
    good = None
    if derived_nilp:
        cands = _supersoluble_fcp_subgroups(G, caps)
        for i, A in enumerate(cands):
            for B in cands[i:]:
                if predicates.covers_group(G, A, B):
                    good = (A, B)
                    break
            if good:
                break
    rhs = derived_nilp and good is not None
    extra = [_flag(f"derived-nilpotent={derived_nilp}")]
    if good:
        extra += [_wsub(G, "factor A", good[0]), _wsub(G, "factor B", good[1])]
    return _biconditional(lhs, rhs, extra)


def _check_F(G, caps):
    lhs = predicates.is_supersoluble(G)
    meta = predicates.is_metanilpotent(G)
    good = None
    if meta:
        cands = _supersoluble_fcp_subgroups(G, caps)
        n = G.order
        for i, A in enumerate(cands):
            for B in cands[i:]:
                if gcd(n // A.order, n // B.order) == 1:
                    good = (A, B)
                    break
            if good:
                break
    rhs = meta and good is not None
    extra = [_flag(f"metanilpotent={meta}")]
    if good:
        extra += [_wsub(G, "factor A", good[0]), _wsub(G, "factor B", good[1])]
    return _biconditional(lhs, rhs, extra)


def _check_G(G, caps):
    lhs = predicates.is_supersoluble(G)
    derived = charsub.derived_subgroup(G)
    cands = _supersoluble_fcp_subgroups(G, caps)
    good = None
    for i, A in enumerate(cands):
        for B in cands[i:]:
            if not predicates.covers_group(G, A, B):
                continue
            da = charsub.derived_subgroup_of(G, A)
            db = charsub.derived_subgroup_of(G, B)
            if product_indices(G, da.members, db.members) == derived.members:
                good = (A, B)
                break
        if good:
            break
    rhs = good is not None
    extra = []
    if good:
        extra = [_wsub(G, "factor A", good[0]), _wsub(G, "factor B", good[1])]
    return _biconditional(lhs, rhs, extra)


# -- section 2 statements ----------------------------------------------


def _check_L215(G, caps):
    fs = charsub.fitting_star(G)
    ft = charsub.fitting_tilde(G)
    if fs <= ft:
        return "holds", [_flag(f"|F*|={fs.order} <= |F~|={ft.order}")]
    return "violated", [_wsub(G, "fstar not inside ftilde", fs)]


def _check_L216(G, caps):
    F = charsub.fitting(G)
    fs = charsub.fitting_star(G)
    ft = charsub.fitting_tilde(G)
    phi = charsub.frattini(G)
    e = lattice.quotient(G, phi)
    p1 = charsub.fitting_tilde(e.target).members == e.image_of_handle(ft).members
    p2 = lattice.centralizer(G, ft) <= F
    p3 = (not predicates.is_soluble(G)) or lattice.centralizer(G, F) <= F
    p4 = lattice.centralizer(G, fs) <= F
    p5 = F <= fs and fs <= ft
    parts = {"quotient": p1, "c-ftilde": p2, "soluble-c-fitting": p3, "c-fstar": p4, "tower": p5}
    witnesses = [_flag(f"{k}={v}") for k, v in parts.items()]
    return ("holds" if all(parts.values()) else "violated"), witnesses


def _check_T22(G, caps):
    sylows = _all_sylows(G)
    a = all(permcore.is_normal_handle(G, P) for _, P in sylows)
    by_prime = {}
    for p, P in sylows:
        by_prime.setdefault(p, []).append(P)
    b = all(len(v) == 1 for v in by_prime.values())
    if b:
        prod = permcore.trivial_subgroup(G)
        for v in by_prime.values():
            prod = SubgroupHandle(G, product_indices(G, prod.members, v[0].members))
        b = prod.is_full()
    subs = _subs(G, caps)
    c = all(
        lattice.normalizer(G, H).order > H.order for H in subs if not H.is_full()
    )
    d = all(permcore.is_normal_handle(G, M) for M in _maximals(G, caps))
    ee = all(predicates.is_subnormal(G, H) for H in subs)
    flags = [a, b, c, d, ee]
    witnesses = [
        _flag(f"sylows-normal={a}"),
        _flag(f"direct-product-of-sylows={b}"),
        _flag(f"proper-below-normalizer={c}"),
        _flag(f"maximals-normal={d}"),
        _flag(f"all-subnormal={ee}"),
    ]
    ok = len(set(flags)) == 1
    return ("holds" if ok else "violated"), witnesses


def _check_T25(G, caps):
    phi = charsub.frattini(G)
    ok = permcore.is_normal_handle(G, phi) and predicates.nilpotent_handle(G, phi)
    return ("holds" if ok else "violated"), [_wsub(G, "frattini", phi)]


def _kd_quotient_nilpotent(G, K, D):
    """Is K/D nilpotent? (D normal in G, D <= K, both handles in G)."""
    sub, idx = lattice.subgroup_group(G, K)
    back = {int(v): i for i, v in enumerate(idx)}
    d_local = SubgroupHandle(sub, [back[m] for m in D.members])
    e = lattice.quotient(sub, d_local)
    return predicates.is_nilpotent(e.target)


def _check_T26(G, caps):
    phi = charsub.frattini(G)
    normals = lattice.normal_subgroups(G, caps.max_subgroups)
    substantive = 0
    for D in normals:
        if not D <= phi:
            continue
        for K in normals:
            if not D <= K:
                continue
            if _kd_quotient_nilpotent(G, K, D):
                substantive += 1
                if not predicates.nilpotent_handle(G, K):
                    return "violated", [
                        _wsub(G, "K with K/D nilpotent but K not", K),
                        _wsub(G, "D", D),
                    ]
    if substantive == 0:
        return "inapplicable", [_flag("no qualifying (D, K) pair")]
    return "holds", [_flag(f"{substantive} qualifying (D, K) pairs")]


def _check_L27(G, caps):
    count = 0
    for K in lattice.normal_subgroups(G, caps.max_subgroups):
        for P in _sylows_of_handle(G, K):
            count += 1
            N = lattice.normalizer(G, P)
            if not predicates.covers_group(G, N, K):
                return "violated", [
                    _wsub(G, "normal K", K),
                    _wsub(G, "sylow P of K", P),
                ]
    if count == 0:
        return "inapplicable", [_flag("no (normal K, Sylow P) instances")]
    return "holds", [_flag(f"{count} (K, P) instances")]


def _check_L210(G, caps):
    substantive = 0
    for H in _subs(G, caps):
        if not predicates.is_pronormal(G, H):
            continue
        substantive += 1
        N = lattice.normalizer(G, H)
        if not predicates.is_abnormal(G, N):
            return "violated", [_wsub(G, "pronormal H with non-abnormal normalizer", H)]
    if substantive == 0:
        return "inapplicable", [_flag("no pronormal subgroups")]
    return "holds", [_flag(f"{substantive} pronormal subgroups")]


def _check_L211(G, caps):
    substantive = 0
    subs = _subs(G, caps)
    for H in subs:
        if not predicates.is_abnormal(G, H):
            continue
        over = [U for U in subs if H <= U]
        for U in over:
            # x in U gives U^x = U, a trivially satisfied instance
            substantive += U.order
            if U.is_full():
                continue
            for x in range(G.order):
                if x in U:
                    continue
                ux = permcore.conjugate_indices(G, U.members, x)
                uxmask = 0
                for m in ux:
                    uxmask |= 1 << m
                if H.mask & uxmask == H.mask:
                    substantive += 1
                    return "violated", [
                        _wsub(G, "abnormal H", H),
                        _wsub(G, "U", U),
                        _welem(G, "x", x),
                    ]
    if substantive == 0:
        return "inapplicable", [_flag("no abnormal subgroups")]
    return "holds", [_flag(f"{substantive} (H, U, x) instances")]


def _check_T212(G, caps):
    if not charsub.frattini(G).is_trivial():
        return "inapplicable", [_flag("frattini subgroup nontrivial")]
    z = charsub.center(G)
    zi = charsub.hypercenter(G)
    if z.members == zi.members:
        return "holds", [_flag(f"|Z|=|Z_inf|={z.order}")]
    return "violated", [_wsub(G, "hypercenter exceeds center", zi)]


def _check_T213(G, caps):
    zi = charsub.hypercenter(G)
    members = set(range(G.order))
    for _, P in _all_sylows(G):
        members &= set(permcore.normalizer_indices(G, P.members))
    inter = SubgroupHandle(G, sorted(members))
    if inter.members == zi.members:
        return "holds", [_flag(f"|Z_inf|={zi.order}")]
    return "violated", [
        _wsub(G, "hypercenter", zi),
        _wsub(G, "sylow-normalizer intersection", inter),
    ]


def _check_T214(G, caps):
    phi = charsub.frattini(G)
    e = lattice.quotient(G, phi)
    Q = e.target
    fq = charsub.fitting(Q)
    p1 = fq.members == e.image_of_handle(charsub.fitting(G)).members
    if Q.order == 1:
        p2 = fq.is_trivial()
    else:
        seed = set()
        for N in lattice.minimal_normal_subgroups(Q):
            sub, _ = lattice.subgroup_group(Q, N)
            if charsub.center(sub).is_full():  # abelian
                seed.update(N.members)
        join = (
            SubgroupHandle(Q, permcore.close_indices(Q, seed))
            if seed
            else permcore.trivial_subgroup(Q)
        )
        p2 = join.members == fq.members
    witnesses = [_flag(f"fitting-commutes={p1}"), _flag(f"abelian-socle={p2}")]
    return ("holds" if p1 and p2 else "violated"), witnesses


def _check_T219(G, caps):
    zi = charsub.hypercenter(G)
    e = lattice.quotient(G, zi)
    lhs = predicates.is_quasinilpotent(G)
    rhs = predicates.is_quasinilpotent(e.target)
    return _biconditional(lhs, rhs)


def _check_D221(G, caps):
    if not predicates.is_supersoluble(G):
        return "inapplicable", [_flag("group not supersoluble")]
    derived = charsub.derived_subgroup(G)
    if predicates.nilpotent_handle(G, derived):
        return "holds", [_wsub(G, "derived subgroup", derived)]
    return "violated", [_wsub(G, "non-nilpotent derived subgroup", derived)]


def _check_T222(G, caps):
    subs = _subs(G, caps)
    good = [
        H
        for H in subs
        if predicates.is_subnormal(G, H) and predicates.supersoluble_handle(G, H)
    ]
    n = G.order
    substantive = []
    for i, A in enumerate(good):
        for B in good[i:]:
            if gcd(n // A.order, n // B.order) == 1 and predicates.covers_group(G, A, B):
                substantive.append((A, B))
    if not substantive:
        return "inapplicable", [_flag("no coprime-index subnormal supersoluble pairs")]
    if predicates.is_supersoluble(G):
        return "holds", [_flag(f"{len(substantive)} qualifying pairs")]
    A, B = substantive[0]
    return "violated", [_wsub(G, "factor A", A), _wsub(G, "factor B", B)]


def _check_L217(G, caps):
    subs = _subs(G, caps)
    normal_nilp = [
        H
        for H in subs
        if permcore.is_normal_handle(G, H) and predicates.nilpotent_handle(G, H)
    ]
    sub_ss = [
        H
        for H in subs
        if predicates.is_subnormal(G, H) and predicates.supersoluble_handle(G, H)
    ]
    substantive = [
        (A, B)
        for A in normal_nilp
        for B in sub_ss
        if predicates.covers_group(G, A, B)
    ]
    if not substantive:
        return "inapplicable", [_flag("no (normal nilpotent, subnormal supersoluble) cover")]
    if predicates.is_supersoluble(G):
        return "holds", [_flag(f"{len(substantive)} qualifying pairs")]
    A, B = substantive[0]
    return "violated", [_wsub(G, "factor A", A), _wsub(G, "factor B", B)]


# -- section 3 statements ----------------------------------------------


def _check_L31(G, caps):
    substantive = 0
    for H in _subs(G, caps):
        if not predicates.is_conjugate_permutable(G, H):
            continue
        substantive += 1
        if not predicates.is_subnormal(G, H):
            return "violated", [_wsub(G, "conjugate-permutable not subnormal", H)]
    if substantive == 0:
        return "inapplicable", [_flag("no conjugate-permutable subgroups")]
    return "holds", [_flag(f"{substantive} conjugate-permutable subgroups")]


def _permuting_pairs(G, caps):
    """(H, R, join) with RH = HR, i.e. the product set HR is a subgroup."""
    subs = _subs(G, caps)
    if len(subs) * len(subs) > caps.max_pairs:
        raise SearchCapExceeded(
            f"{len(subs)}^2 subgroup pairs exceed {caps.max_pairs}",
            limit=caps.max_pairs,
        )
    out = []
    for H in subs:
        for R in subs:
            inter = (H.mask & R.mask).bit_count()
            expected, rem = divmod(H.order * R.order, inter)
            if rem or G.order % expected:
                continue
            J = join_subgroups(G, H, R)
            if J.order == expected:
                out.append((H, R, J))
    return out


def _check_L32(G, caps):
    substantive = 0
    for H, R, J in G._memo(("perm_pairs", caps.max_pairs), lambda: _permuting_pairs(G, caps)):
        if not predicates.is_r_conjugate_permutable(G, H, R):
            continue
        substantive += 1
        if not predicates.is_subnormal_in(G, J, H):
            return "violated", [
                _wsub(G, "H not subnormal in HR", H),
                _wsub(G, "R", R),
            ]
    if substantive == 0:
        return "inapplicable", [_flag("no qualifying (H, R) pairs")]
    return "holds", [_flag(f"{substantive} qualifying (H, R) pairs")]


def _check_L33(G, caps):
    substantive = 0
    for H in _subs(G, caps):
        if not (
            predicates.is_conjugate_permutable(G, H) and predicates.is_pronormal(G, H)
        ):
            continue
        substantive += 1
        if not permcore.is_normal_handle(G, H):
            return "violated", [_wsub(G, "cp and pronormal but not normal", H)]
    if substantive == 0:
        return "inapplicable", [_flag("no conjugate-permutable pronormal subgroups")]
    return "holds", [_flag(f"{substantive} instances")]


def _handle_in_join(G, J, H):
    sub, idx = lattice.subgroup_group(G, J)
    back = {int(v): i for i, v in enumerate(idx)}
    return sub, SubgroupHandle(sub, [back[m] for m in H.members])


def _check_P34(G, caps):
    substantive = 0
    for H, R, J in G._memo(("perm_pairs", caps.max_pairs), lambda: _permuting_pairs(G, caps)):
        if not predicates.is_r_conjugate_permutable(G, H, R):
            continue
        substantive += 1
        if not predicates.is_subnormal_in(G, J, H):
            return "violated", [_wsub(G, "H not subnormal in HR", H), _wsub(G, "R", R)]
        sub, h_local = _handle_in_join(G, J, H)
        if predicates.is_pronormal(sub, h_local):
            if not permcore.is_normal_handle(sub, h_local):
                return "violated", [
                    _wsub(G, "pronormal-in-HR H not normal in HR", H),
                    _wsub(G, "R", R),
                ]
    if substantive == 0:
        return "inapplicable", [_flag("no qualifying (H, R) pairs")]
    return "holds", [_flag(f"{substantive} qualifying (H, R) pairs")]


def _check_C341(G, caps):
    substantive = 0
    sylows = [P for _, P in _all_sylows(G)]
    for P in sylows:
        for R in _subs(G, caps):
            inter = (P.mask & R.mask).bit_count()
            expected, rem = divmod(P.order * R.order, inter)
            if rem or G.order % expected:
                continue
            J = join_subgroups(G, P, R)
            if J.order != expected:
                continue
            if not predicates.is_r_conjugate_permutable(G, P, R):
                continue
            substantive += 1
            if any(
                permcore.conjugate_indices(G, P.members, x) != P.members
                for x in J.members
            ):
                return "violated", [_wsub(G, "sylow not normal in PR", P), _wsub(G, "R", R)]
    if substantive == 0:
        return "inapplicable", [_flag("no qualifying (P, R) pairs")]
    return "holds", [_flag(f"{substantive} qualifying (P, R) pairs")]


def _check_C342(G, caps):
    substantive = 0
    subs = _subs(G, caps)
    for M, R, J in G._memo(("perm_pairs", caps.max_pairs), lambda: _permuting_pairs(G, caps)):
        if M.members == J.members:
            continue  # M must be proper in MR
        if any(M < S and S < J for S in subs):
            continue  # not maximal in MR
        if not predicates.is_r_conjugate_permutable(G, M, R):
            continue
        substantive += 1
        if any(
            permcore.conjugate_indices(G, M.members, x) != M.members
            for x in J.members
        ):
            return "violated", [_wsub(G, "M not normal in MR", M), _wsub(G, "R", R)]
    if substantive == 0:
        return "inapplicable", [_flag("no qualifying (M, R) pairs")]
    return "holds", [_flag(f"{substantive} qualifying (M, R) pairs")]


def _check_L35(G, caps):
    cps = [H for H in _subs(G, caps) if predicates.is_conjugate_permutable(G, H)]
    normals = lattice.normal_subgroups(G, caps.max_subgroups)
    substantive = 0
    for H in cps:
        for K in normals:
            substantive += 1
            HK = SubgroupHandle(G, product_indices(G, H.members, K.members))
            if not predicates.is_conjugate_permutable(G, HK):
                return "violated", [
                    _wsub(G, "HK not conjugate-permutable", HK),
                    _wsub(G, "H", H),
                    _wsub(G, "K", K),
                ]
    if substantive == 0:
        return "inapplicable", [_flag("no (conjugate-permutable H, normal K) pairs")]
    return "holds", [_flag(f"{substantive} (H, K) pairs")]


# -- worked examples ---------------------------------------------------


def _check_EX1(G, caps):
    # Applicability fingerprint: the symmetric group on 4 points is the
    # unique order-24 group with trivial center.
    if G.order != 24 or not charsub.center(G).is_trivial():
        return "inapplicable", [_flag("group is not the order-24 symmetric group")]
    F = charsub.fitting(G)
    fs = charsub.fitting_star(G)
    ft = charsub.fitting_tilde(G)
    maximals = {M.members for M in _maximals(G, caps)}
    for P in charsub.sylow_subgroups(G, 2):
        facts = {
            "sylow2-maximal": P.members in maximals,
            "sylow2-not-normal": not permcore.is_normal_handle(G, P),
            "towers-collapse": F.members == fs.members == ft.members,
            "fitting-inside-sylow": F <= P,
            "fitting-cp": predicates.is_r_conjugate_permutable(G, P, F),
            "not-conjugate-permutable": not predicates.is_conjugate_permutable(G, P),
        }
        if not all(facts.values()):
            bad = [k for k, v in facts.items() if not v]
            return "violated", [_wsub(G, f"failing: {','.join(bad)}", P)]
    return "holds", [_flag("all five facts confirmed on every Sylow 2-subgroup")]


def _check_EX3(G, caps):
    F = charsub.fitting(G)
    if G.order != 294 or F.order != 49:
        return "inapplicable", [_flag("group is not the order-294 construction")]
    subs = _subs(G, caps)
    A = next(
        (
            H
            for H in subs
            if H.order == 147
            and predicates.supersoluble_handle(G, H)
            and predicates.is_r_conjugate_permutable(G, H, F)
        ),
        None,
    )
    B = next(
        (
            H
            for H in subs
            if H.order == 98
            and predicates.supersoluble_handle(G, H)
            and predicates.is_r_conjugate_permutable(G, H, F)
            and (A is None or predicates.covers_group(G, A, H))
        ),
        None,
    )
    facts = {
        "fitting-order-49": permcore.is_normal_handle(G, F) and F.order == 49,
        "factor-147": A is not None,
        "factor-98": B is not None,
        "product-covers": A is not None and B is not None and predicates.covers_group(G, A, B),
        "not-supersoluble": not predicates.is_supersoluble(G),
        "not-metanilpotent": not predicates.is_metanilpotent(G),
    }
    witnesses = [_flag(f"{k}={v}") for k, v in facts.items()]
    if A is not None:
        witnesses.append(_wsub(G, "factor A", A))
    if B is not None:
        witnesses.append(_wsub(G, "factor B", B))
    return ("holds" if all(facts.values()) else "violated"), witnesses


# -- registry ----------------------------------------------------------

_CHECKERS = {
    "A": _check_A,
    "A1": _check_A1,
    "A2": _check_A2,
    "B": _check_B,
    "B1": _check_B1,
    "B2": _check_B2,
    "C": _check_C,
    "C1": _check_C1,
    "D": _check_D,
    "D1": _check_D1,
    "E": _check_E,
    "F": _check_F,
    "G": _check_G,
    "L2.15": _check_L215,
    "L2.16": _check_L216,
    "T2.2": _check_T22,
    "T2.5": _check_T25,
    "T2.6": _check_T26,
    "L2.7": _check_L27,
    "L2.10": _check_L210,
    "L2.11": _check_L211,
    "T2.12": _check_T212,
    "T2.13": _check_T213,
    "T2.14": _check_T214,
    "T2.19": _check_T219,
    "D2.21": _check_D221,
    "T2.22": _check_T222,
    "L2.17": _check_L217,
    "L3.1": _check_L31,
    "L3.2": _check_L32,
    "L3.3": _check_L33,
    "P3.4": _check_P34,
    "C3.4.1": _check_C341,
    "C3.4.2": _check_C342,
    "L3.5": _check_L35,
    "EX1": _check_EX1,
    "EX3": _check_EX3,
}

STATEMENT_IDS = tuple(_CHECKERS)

BICONDITIONAL_IDS = ("A", "B", "B1", "B2", "D", "E", "F", "G", "T2.19")


def evaluate_statement(
    statement: str,
    G: FiniteGroup,
    caps: Caps = Caps(),
    group_label: str | None = None,
) -> StatementReport:
    """Evaluate one statement on one group, catching caps as 'skipped'."""
    if statement not in _CHECKERS:
        raise KeyError(f"unknown statement id {statement!r}")
    label = group_label if group_label is not None else f"order-{G.order}"
    start = time.perf_counter()
    try:
        verdict, witnesses = _CHECKERS[statement](G, caps)
    except CapExceeded as exc:
        verdict = "skipped"
        witnesses = [_flag(f"cap {exc.cap_name} exhausted: {exc}")]
    elapsed = (time.perf_counter() - start) * 1000.0
    return StatementReport(statement, label, verdict, list(witnesses), elapsed)


def run_suite(catalog, ids=None, caps: Caps = Caps()) -> list[StatementReport]:
    """Evaluate each statement against each (label, group) catalog entry."""
    ids = list(ids) if ids is not None else list(STATEMENT_IDS)
    reports = []
    for label, G in catalog:
        for sid in ids:
            reports.append(evaluate_statement(sid, G, caps=caps, group_label=label))
    return reports


def summarize(reports) -> dict:
    counts: dict[str, int] = {}
    for r in reports:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    return counts
