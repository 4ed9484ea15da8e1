import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grouplab.errors import ClosureCapExceeded, DegreeMismatch, ParseError
from grouplab.permcore import (
    ElementSubset,
    FiniteGroup,
    Permutation,
    SubgroupHandle,
    close_indices,
    compose,
    conjugate_subgroup,
    closure,
    direct_product,
    permutes,
    permutes_fast,
    set_product,
    subgroup_from_generators,
    trivial_subgroup,
    full_subgroup,
)

P = Permutation.from_cycles

# S3 multiplication worked out by hand (left-to-right: (p*q)(i) = q(p(i))).
# e, a=(1 2 3), b=(1 3 2), t1=(1 2), t2=(1 3), t3=(2 3) as image tuples.
E3 = (0, 1, 2)
A = (1, 2, 0)
B = (2, 0, 1)
T1 = (1, 0, 2)
T2 = (2, 1, 0)
T3 = (0, 2, 1)

S3_TABLE = {
    (A, A): B, (A, B): E3, (A, T1): T3, (A, T2): T1, (A, T3): T2,
    (B, A): E3, (B, B): A, (B, T1): T2, (B, T2): T3, (B, T3): T1,
    (T1, A): T2, (T1, B): T3, (T1, T1): E3, (T1, T2): A, (T1, T3): B,
    (T2, A): T3, (T2, B): T1, (T2, T1): B, (T2, T2): E3, (T2, T3): A,
    (T3, A): T1, (T3, B): T2, (T3, T1): A, (T3, T2): B, (T3, T3): E3,
}


def test_compose_matches_hand_table():
    for (p, q), expected in S3_TABLE.items():
        assert compose(Permutation(p), Permutation(q)).images == expected


def test_compose_convention_example():
    # (1 2 3) then (1 2) is the transposition fixing point 1
    assert compose(P(3, "(1 2 3)"), P(3, "(1 2)")).cycles() == "(2 3)"


def test_identity_and_inverse_laws():
    p = P(5, "(1 2 3)(4 5)")
    e = Permutation.identity(5)
    assert compose(p, e) == p
    assert compose(e, p) == p
    assert compose(p, p.inverse()) == e
    assert compose(p.inverse(), p) == e


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(P(3, "(1 2)"), P(4, "(1 2)"))


def test_not_a_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


@given(st.permutations(range(6)), st.permutations(range(6)), st.permutations(range(6)))
def test_associativity(a, b, c):
    pa, pb, pc = Permutation(a), Permutation(b), Permutation(c)
    assert compose(compose(pa, pb), pc) == compose(pa, compose(pb, pc))


@given(st.permutations(range(7)))
def test_double_inverse_and_cycle_roundtrip(a):
    p = Permutation(a)
    assert p.inverse().inverse() == p
    assert Permutation.from_cycles(7, p.cycles()) == p


def test_cycle_notation_edge_cases():
    assert Permutation.identity(4).cycles() == "()"
    assert P(4, "()").is_identity()
    assert P(5, "(1 2 3)(4 5)").cycles() == "(1 2 3)(4 5)"
    with pytest.raises(ParseError):
        P(3, "(1 5)")
    with pytest.raises(ParseError):
        P(3, "(1 2")
    with pytest.raises(ParseError):
        P(4, "(1 2)(2 3)")  # repeated point


def test_closure_s3_and_s4():
    S3 = closure(3, [P(3, "(1 2 3)"), P(3, "(1 2)")])
    assert S3.order == 6
    S4 = closure(4, [P(4, "(1 2 3 4)"), P(4, "(1 2)")])
    assert S4.order == 24


def test_closure_empty_generators():
    G = closure(4, [])
    assert G.order == 1
    assert G.identity_index == 0


def test_closure_cap():
    with pytest.raises(ClosureCapExceeded):
        closure(4, [P(4, "(1 2 3 4)"), P(4, "(1 2)")], cap=10)


def test_table_and_inverse_consistency():
    S4 = closure(4, [P(4, "(1 2 3 4)"), P(4, "(1 2)")])
    table = S4.table
    for i in range(S4.order):
        assert table[i, S4.inv(i)] == S4.identity_index
        for j in range(0, S4.order, 5):
            assert S4.elements[table[i, j]] == compose(S4.elements[i], S4.elements[j])


def test_group_without_table_matches_table_path():
    gens = [P(4, "(1 2 3 4)"), P(4, "(1 2)")]
    with_table = FiniteGroup.from_generators(4, gens)
    no_table = FiniteGroup.from_generators(4, gens, table_limit=1)
    assert no_table.table is None
    h1 = close_indices(with_table, (1, 2))
    h2 = close_indices(no_table, (1, 2))
    assert h1 == h2  # identical BFS elements order, so indices agree
    a = subgroup_from_generators(with_table, [1])
    b = subgroup_from_generators(no_table, [1])
    assert a.members == b.members
    assert permutes(with_table, a, a) and permutes(no_table, b, b)


def test_subgroup_from_generators_examples():
    S3 = closure(3, [P(3, "(1 2 3)"), P(3, "(1 2)")])
    h = subgroup_from_generators(S3, [S3.index_of(P(3, "(1 2)"))])
    assert h.order == 2
    S4 = closure(4, [P(4, "(1 2 3 4)"), P(4, "(1 2)")])
    klein = subgroup_from_generators(
        S4, [S4.index_of(P(4, "(1 2)(3 4)")), S4.index_of(P(4, "(1 3)(2 4)"))]
    )
    assert klein.order == 4
    assert subgroup_from_generators(S4, []).order == 1


def test_subgroup_invariants_validate():
    S4 = closure(4, [P(4, "(1 2 3 4)"), P(4, "(1 2)")])
    for gens in ([1], [1, 2], [3], []):
        subgroup_from_generators(S4, gens).validate()


def test_conjugate_subgroup():
    S3 = closure(3, [P(3, "(1 2 3)"), P(3, "(1 2)")])
    h = subgroup_from_generators(S3, [S3.index_of(P(3, "(1 2)"))])
    x = S3.index_of(P(3, "(1 2 3)"))
    hx = conjugate_subgroup(S3, h, x)
    assert {S3.elements[i] for i in hx.members} == {Permutation.identity(3), P(3, "(2 3)")}
    # conjugating by a member fixes the subgroup
    assert conjugate_subgroup(S3, h, S3.index_of(P(3, "(1 2)"))).members == h.members
    # conjugate twice by x then x^-1 returns the original
    back = conjugate_subgroup(S3, hx, S3.inv(x))
    assert back.members == h.members


def test_set_product_examples():
    S3 = closure(3, [P(3, "(1 2 3)"), P(3, "(1 2)")])
    h = subgroup_from_generators(S3, [S3.index_of(P(3, "(1 2)"))])
    k = subgroup_from_generators(S3, [S3.index_of(P(3, "(1 2 3)"))])
    assert set_product(S3, h, h).members == h.members
    assert set_product(S3, h, k).order == 6
    k2 = subgroup_from_generators(S3, [S3.index_of(P(3, "(1 3)"))])
    assert set_product(S3, h, k2).order == 4


def test_permutes_examples():
    S3 = closure(3, [P(3, "(1 2 3)"), P(3, "(1 2)")])
    h = subgroup_from_generators(S3, [S3.index_of(P(3, "(1 2)"))])
    k = subgroup_from_generators(S3, [S3.index_of(P(3, "(1 2 3)"))])  # normal
    k2 = subgroup_from_generators(S3, [S3.index_of(P(3, "(1 3)"))])
    assert permutes(S3, h, k)
    assert not permutes(S3, h, k2)
    assert permutes(S3, h, full_subgroup(S3))  # h contained in k case
    assert permutes(S3, trivial_subgroup(S3), k2)


def test_direct_product():
    C2 = closure(2, [P(2, "(1 2)")])
    C3 = closure(3, [P(3, "(1 2 3)")])
    S3 = closure(3, [P(3, "(1 2 3)"), P(3, "(1 2)")])
    C6 = direct_product(C2, C3)
    assert C6.order == 6
    assert all(
        C6.mult(i, j) == C6.mult(j, i) for i in range(6) for j in range(6)
    )  # abelian
    assert direct_product(C2, S3).order == 12
    padded = direct_product(S3, closure(1, []))
    assert padded.order == 6 and padded.degree == 4


def _s4_subgroup_pairs():
    S4 = closure(4, [P(4, "(1 2 3 4)"), P(4, "(1 2)")])
    from grouplab.lattice import all_subgroups

    subs = all_subgroups(S4)
    return S4, subs


def test_product_cardinality_formula_all_s4_pairs():
    S4, subs = _s4_subgroup_pairs()
    for h in subs:
        for k in subs:
            prod = set_product(S4, h, k)
            inter = (h.mask & k.mask).bit_count()
            assert prod.order == h.order * k.order // inter


def test_permutes_agrees_with_closure_characterization():
    # permutes(H, K) iff the product set is itself closed iff join size matches
    S4, subs = _s4_subgroup_pairs()
    from grouplab import kernels

    table = S4.table
    for h in subs:
        for k in subs:
            prod = set_product(S4, h, k)
            closed = kernels.is_closed_subset(table, np.asarray(prod.members, dtype=np.int32))
            assert permutes(S4, h, k) == bool(closed) == permutes_fast(S4, h, k)


def test_lagrange_on_constructed_subgroups():
    S4, subs = _s4_subgroup_pairs()
    for h in subs:
        assert S4.order % h.order == 0


@settings(max_examples=25)
@given(st.integers(0, 23), st.integers(0, 23))
def test_conjugation_is_automorphism(i, j):
    S4 = closure(4, [P(4, "(1 2 3 4)"), P(4, "(1 2)")])
    table = S4.table
    for x in (1, 5, 17):
        ci = table[table[S4.inv(x), i], x]
        cj = table[table[S4.inv(x), j], x]
        cij = table[table[S4.inv(x), table[i, j]], x]
        assert table[ci, cj] == cij
