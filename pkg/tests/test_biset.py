from itertools import product

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import SMALL, lq_arrows
from monext.biset import (
    Biset,
    BisetHom,
    LQArrow,
    associator,
    bisets_isomorphic,
    compose_biset_homs,
    find_biset_isomorphism,
    hom_biset,
    identity_biset,
    identity_biset_hom,
    identity_lq,
    left_unitor,
    lq_from_hom,
    lq_hom_from_element,
    lq_tensor,
    lq_to_biset,
    right_unitor,
    tensor,
    tensor_hom,
    validate_biset,
    validate_biset_hom,
    validate_lq_arrow,
)
from monext.errors import (
    IllDefined,
    IllDefinedRightAction,
    MonoidMismatch,
    NotEquivariant,
    NotLeftEquivariant,
    NotRightEquivariant,
    ValidationError,
)
from monext.monoid import (
    Congruence,
    all_homs,
    compose,
    identity_hom,
    is_hom,
    total_congruence,
)

PAIRS = [(a, b) for a in SMALL for b in SMALL]


def _some_bisets(M, N):
    """A handful of (M, N)-bisets: LQ bisets plus one disjoint sum."""
    from monext.biset import biset_sum
    out = [lq_to_biset(a) for a in lq_arrows(M, N)]
    out.append(Biset(M, N, 0, [[] for _ in M.elements], []))
    if out[:1]:
        s = biset_sum(out[0], out[-2])
        if s.carrier <= 4:
            out.append(s)
    return out


# --- hom bisets ------------------------------------------------------------

def test_hom_biset_examples(c2, c4, t1):
    assert hom_biset(identity_hom(c2)) == identity_biset(c2)
    assert hom_biset(is_hom(c2, t1, [0, 0])).carrier == 1
    b = hom_biset(is_hom(c2, c4, [0, 2]))
    assert b.carrier == 4
    assert [b.ract[x][1] for x in range(4)] == [2, 3, 0, 1]
    validate_biset(b)


def test_hom_biset_laws_for_every_small_hom():
    for a, b in PAIRS:
        for f in all_homs(a, b):
            validate_biset(hom_biset(f))


# --- biset homs --------------------------------------------------------------

def test_biset_hom_examples(c2, c4):
    idb = identity_biset(c2)
    validate_biset_hom(idb, idb, [0, 1])
    validate_biset_hom(idb, idb, [c2.table[x][1] for x in range(2)])
    hf = hom_biset(is_hom(c2, c4, [0, 2]))
    with pytest.raises(NotLeftEquivariant):
        validate_biset_hom(hf, hf, [0, 3, 2, 1])


def test_biset_hom_right_failure(c2):
    # right translation by a is left equivariant, but H_f for constant f acts trivially on the right
    idb = identity_biset(c2)
    hc = hom_biset(is_hom(c2, c2, [0, 0]))
    with pytest.raises(NotRightEquivariant):
        validate_biset_hom(idb, hc, [1, 0])


# --- tensor ------------------------------------------------------------------

def test_unitors_are_isomorphisms():
    for M, N in PAIRS:
        for X in _some_bisets(M, N):
            for u in (left_unitor(X), right_unitor(X)):
                assert u.is_bijective()
                validate_biset_hom(u.dom, u.cod, u.map)


def test_hom_biset_tensor_is_hom_biset_of_composite():
    """H_f (x) H_g -> H_{f g}, [(m, n)] -> m f(n), is a bijective biset hom."""
    checked = 0
    for L, N in PAIRS:
        for M in SMALL:
            for g in all_homs(L, N):
                for f in all_homs(N, M):
                    tp = tensor(hom_biset(f), hom_biset(g))
                    target = hom_biset(compose(f, g))
                    out = [-1] * tp.biset.carrier
                    for m, n in product(M.elements, N.elements):
                        out[tp.cls(m, n)] = M.table[m][f(n)]
                    h = validate_biset_hom(tp.biset, target, out)
                    assert h.is_bijective()
                    checked += 1
    assert checked > 100


def test_tensor_rejects_mismatch(c2, c3):
    with pytest.raises(MonoidMismatch):
        tensor(identity_biset(c2), identity_biset(c3))


@given(st.data())
def test_tensor_associator_is_bijective(data):
    L, M, N, P = (data.draw(st.sampled_from(SMALL)) for _ in range(4))
    X = data.draw(st.sampled_from(_some_bisets(L, M)))
    Y = data.draw(st.sampled_from(_some_bisets(M, N)))
    Z = data.draw(st.sampled_from(_some_bisets(N, P)))
    a = associator(X, Y, Z)
    validate_biset_hom(a.dom, a.cod, a.map)
    assert a.is_bijective()


@given(st.data())
def test_tensor_is_functorial(data):
    L, M, N = (data.draw(st.sampled_from(SMALL)) for _ in range(3))
    X = data.draw(st.sampled_from(_some_bisets(L, M)))
    Y = data.draw(st.sampled_from(_some_bisets(M, N)))
    tp = tensor(X, Y)
    ident = tensor_hom(tp, tp, identity_biset_hom(X), identity_biset_hom(Y))
    assert ident.map == tuple(tp.biset.elements)


# --- LQ arrows -----------------------------------------------------------------

def test_lq_to_biset_examples(c2, n3):
    assert lq_to_biset(identity_lq(c2)) == identity_biset(c2)
    one = lq_to_biset(LQArrow(c2, c2, total_congruence(c2), [0, 0]))
    assert one.carrier == 1 and one.lact == ((0,), (0,)) and one.ract == ((0, 0),)
    a = LQArrow(n3, n3, Congruence(n3, [0, 1, 2, 2]), [0, 1, 2, 3])
    validate_lq_arrow(a)
    b = lq_to_biset(a)
    assert b.carrier == 3
    assert b.ract[2][2] == 2  # [2].2 = [3] = [2]


def test_lq_to_biset_rejects_unstable_partition(n3):
    with pytest.raises(IllDefinedRightAction):
        lq_to_biset(LQArrow(n3, n3, Congruence(n3, [0, 1, 1, 2]), [0, 1, 2, 3]))


def test_lq_to_biset_right_action_can_be_ill_defined():
    """Some left congruence with f = id does not descend to a right action."""
    from monext.monoid import left_congruences
    hits = 0
    for m in SMALL:
        for c in left_congruences(m):
            try:
                lq_to_biset(LQArrow(m, m, c, tuple(m.elements)))
            except IllDefinedRightAction:
                hits += 1
    assert hits > 0


def test_lq_tensor_examples(c2, c4, n3):
    i = identity_lq(c2)
    assert lq_tensor(i, i).f == i.f and lq_tensor(i, i).cong.is_discrete()
    f = is_hom(c2, c4, [0, 2])
    g = is_hom(c2, c2, [0, 1])
    composite = lq_tensor(lq_from_hom(f), lq_from_hom(g))
    assert composite.f == compose(f, g).map and composite.cong.is_discrete()
    a = LQArrow(n3, n3, Congruence(n3, [0, 1, 2, 2]), [0, 1, 2, 3])
    t = lq_tensor(a, identity_lq(n3))
    assert t.cong.classes == a.cong.classes and t.f == a.f


def test_lq_tensor_matches_biset_tensor():
    checked = 0
    for L, M in PAIRS:
        for N in SMALL[:4]:
            for x in lq_arrows(L, M):
                for y in lq_arrows(M, N):
                    t = lq_tensor(x, y)
                    validate_lq_arrow(t)
                    assert bisets_isomorphic(lq_to_biset(t),
                                             tensor(lq_to_biset(x), lq_to_biset(y)).biset)
                    checked += 1
    assert checked > 200


def test_lq_bisets_are_cyclic():
    for M, N in PAIRS:
        for a in lq_arrows(M, N):
            b = lq_to_biset(a)
            c0 = a.cong.classes[M.identity]
            assert {b.lact[m][c0] for m in M.elements} == set(b.elements)


# --- homs from elements ----------------------------------------------------------

def test_lq_hom_from_element_examples(c2):
    i = identity_lq(c2)
    assert lq_hom_from_element(i, i, 0) == identity_biset_hom(lq_to_biset(i))
    assert lq_hom_from_element(i, i, 1).map == (1, 0)


def test_lq_hom_from_element_errors_by_search():
    """Scan small arrows for both failure modes."""
    kinds = set()
    for M, N in PAIRS:
        arrows = lq_arrows(M, N)
        for a, b in product(arrows, repeat=2):
            for eta in M.elements:
                try:
                    lq_hom_from_element(a, b, eta)
                except NotEquivariant:
                    kinds.add("equivariant")
                except IllDefined:
                    kinds.add("ill_defined")
    assert kinds == {"equivariant", "ill_defined"}


def test_not_equivariant_between_c2_arrows(c2):
    a, b = identity_lq(c2), lq_from_hom(is_hom(c2, c2, [0, 0]))
    with pytest.raises(NotEquivariant):
        lq_hom_from_element(a, b, 0)


def test_equivalent_elements_give_equal_homs():
    for M, N in PAIRS:
        arrows = lq_arrows(M, N)
        for a, b in product(arrows, repeat=2):
            for e1, e2 in product(M.elements, repeat=2):
                if not b.cong.same(e1, e2):
                    continue
                try:
                    h1 = lq_hom_from_element(a, b, e1)
                except ValidationError:
                    continue
                assert lq_hom_from_element(a, b, e2) == h1


def test_every_lq_biset_hom_comes_from_an_element():
    """Homs between LQ bisets are exactly the [m] -> [m eta]."""
    for M, N in PAIRS:
        arrows = lq_arrows(M, N)
        for a, b in product(arrows, repeat=2):
            ba, bb = lq_to_biset(a), lq_to_biset(b)
            brute = set()
            for mp in product(bb.elements, repeat=ba.carrier):
                try:
                    brute.add(validate_biset_hom(ba, bb, mp).map)
                except ValidationError:
                    pass
            ours = set()
            for eta in M.elements:
                try:
                    ours.add(lq_hom_from_element(a, b, eta).map)
                except ValidationError:
                    pass
            assert ours == brute


def test_vertical_composition_multiplies_in_reverse():
    """h_eta after h_eta2 is witnessed by eta2 * eta."""
    checked = 0
    for M, N in PAIRS:
        arrows = lq_arrows(M, N)
        for a, b, c in product(arrows, repeat=3):
            for e2, e1 in product(M.elements, repeat=2):
                try:
                    first = lq_hom_from_element(a, b, e2)
                    second = lq_hom_from_element(b, c, e1)
                except ValidationError:
                    continue
                witness = lq_hom_from_element(a, c, M.table[e2][e1])
                assert compose_biset_homs(second, first) == witness
                checked += 1
    assert checked > 500


@settings(max_examples=150)
@given(st.data())
def test_horizontal_composite_witness(data):
    """h1 (x) h2 is witnessed by eta1 f^{X'}(eta2) on the LQ tensor."""
    L, M, N = (data.draw(st.sampled_from(SMALL)) for _ in range(3))
    x, x2 = (data.draw(st.sampled_from(lq_arrows(L, M))) for _ in range(2))
    y, y2 = (data.draw(st.sampled_from(lq_arrows(M, N))) for _ in range(2))
    e1s = [e for e in L.elements if _element_hom(x, x2, e)]
    e2s = [e for e in M.elements if _element_hom(y, y2, e)]
    assume(e1s and e2s)
    e1, e2 = data.draw(st.sampled_from(e1s)), data.draw(st.sampled_from(e2s))
    _check_horizontal(x, x2, y, y2, e1, e2,
                      lq_hom_from_element(x, x2, e1), lq_hom_from_element(y, y2, e2))


def _element_hom(a, b, eta):
    try:
        lq_hom_from_element(a, b, eta)
    except ValidationError:
        return False
    return True


def _check_horizontal(x, x2, y, y2, e1, e2, h1, h2):
    L, M = x.left, x.right
    xy, xy2 = lq_tensor(x, y), lq_tensor(x2, y2)
    w = L.table[e1][x2.f[e2]]
    hw = lq_hom_from_element(xy, xy2, w)
    tp = tensor(lq_to_biset(x), lq_to_biset(y))
    tq = tensor(lq_to_biset(x2), lq_to_biset(y2))
    th = tensor_hom(tp, tq, h1, h2)

    def to_tensor(arrow, inner_x, inner_y, t):
        # [l] -> [([l], [1])]
        one = inner_y.cong.classes[M.identity]
        return [t.cls(inner_x.cong.classes[r], one) for r in arrow.cong.reps]

    phi = to_tensor(xy, x, y, tp)
    phi2 = to_tensor(xy2, x2, y2, tq)
    for c in range(xy.cong.num_classes):
        assert phi2[hw(c)] == th(phi[c])


def test_biset_isomorphism_search():
    for M, N in PAIRS[:30]:
        for X in _some_bisets(M, N):
            iso = find_biset_isomorphism(X, X)
            assert iso is not None and iso.is_bijective()


def test_biset_hom_shape_checks(c2):
    b = identity_biset(c2)
    with pytest.raises(ValidationError):
        BisetHom(b, b, (0,))
