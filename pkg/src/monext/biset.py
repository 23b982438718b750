"""(M, N)-bisets, their tensor product, and left-quotient bisets.

A biset is stored extensionally: ``lact[m][x]`` is m.x and ``ract[x][n]``
is x.n.  A left-quotient biset is stored intensionally as an LQArrow, a
left congruence on M together with a function f: N -> M that is a monoid
homomorphism up to the congruence; ``lq_to_biset`` converts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    IllDefined,
    IllDefinedRightAction,
    MonoidMismatch,
    NotEquivariant,
    NotLeftEquivariant,
    NotRightEquivariant,
    ShapeError,
    ValidationError,
)
from .monoid import (
    LEFT,
    Congruence,
    FiniteMonoid,
    MonoidHom,
    check_congruence,
    congruence_closure,
    discrete_congruence,
    generated_equivalence,
)


def _freeze(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in r) for r in rows)


@dataclass(frozen=True)
class Biset:
    left: FiniteMonoid
    right: FiniteMonoid
    carrier: int
    lact: tuple[tuple[int, ...], ...]
    ract: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "lact", _freeze(self.lact))
        object.__setattr__(self, "ract", _freeze(self.ract))
        n = self.carrier
        if n < 0:
            raise ShapeError("negative carrier size")
        if len(self.lact) != self.left.size or any(len(r) != n for r in self.lact):
            raise ShapeError("left action table has the wrong shape")
        if len(self.ract) != n or any(len(r) != self.right.size for r in self.ract):
            raise ShapeError("right action table has the wrong shape")
        for rows in (self.lact, self.ract):
            for r in rows:
                if any(not 0 <= v < n for v in r):
                    raise ShapeError("action value out of range")

    @property
    def elements(self) -> range:
        return range(self.carrier)

    def act_left(self, m: int, x: int) -> int:
        return self.lact[m][x]

    def act_right(self, x: int, n: int) -> int:
        return self.ract[x][n]


def biset_laws_hold(b: Biset) -> bool:
    try:
        validate_biset(b)
    except ValidationError:
        return False
    return True


def validate_biset(b: Biset) -> Biset:
    M, N, la, ra = b.left, b.right, b.lact, b.ract
    for x in b.elements:
        if la[M.identity][x] != x:
            raise ValidationError(f"1.x != x at x={x}")
        if ra[x][N.identity] != x:
            raise ValidationError(f"x.1 != x at x={x}")
        for m in M.elements:
            for mp in M.elements:
                if la[M.table[m][mp]][x] != la[m][la[mp][x]]:
                    raise ValidationError(f"left action not associative at ({m},{mp},{x})")
            for n in N.elements:
                if ra[la[m][x]][n] != la[m][ra[x][n]]:
                    raise ValidationError(f"actions do not commute at ({m},{x},{n})")
        for n in N.elements:
            for np_ in N.elements:
                if ra[x][N.table[n][np_]] != ra[ra[x][n]][np_]:
                    raise ValidationError(f"right action not associative at ({x},{n},{np_})")
    return b


def identity_biset(m: FiniteMonoid) -> Biset:
    return Biset(m, m, m.size, m.table, m.table)


def hom_biset(f: MonoidHom) -> Biset:
    """H_f for f: N -> M: carrier M, left multiplication, m.n = m f(n)."""
    M, N = f.cod, f.dom
    ract = [[M.table[m][f(n)] for n in N.elements] for m in M.elements]
    return Biset(M, N, M.size, M.table, ract)


def biset_sum(a: Biset, b: Biset) -> Biset:
    """Disjoint union; b's elements are shifted by a.carrier."""
    if a.left != b.left or a.right != b.right:
        raise MonoidMismatch("summands act through different monoids")
    s = a.carrier
    lact = [list(ra) + [v + s for v in rb] for ra, rb in zip(a.lact, b.lact)]
    ract = [list(r) for r in a.ract] + [[v + s for v in r] for r in b.ract]
    return Biset(a.left, a.right, s + b.carrier, lact, ract)


# ---------------------------------------------------------------------------
# homomorphisms

@dataclass(frozen=True)
class BisetHom:
    dom: Biset
    cod: Biset
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != self.dom.carrier:
            raise ShapeError("biset hom map has the wrong length")
        if any(not 0 <= v < self.cod.carrier for v in self.map):
            raise ShapeError("biset hom value out of range")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_bijective(self) -> bool:
        return self.dom.carrier == self.cod.carrier and len(set(self.map)) == len(self.map)


def validate_biset_hom(dom: Biset, cod: Biset, map: Sequence[int]) -> BisetHom:
    if dom.left != cod.left or dom.right != cod.right:
        raise MonoidMismatch("bisets act through different monoids")
    h = BisetHom(dom, cod, tuple(map))
    for x in dom.elements:
        hx = h.map[x]
        for m in dom.left.elements:
            if h.map[dom.lact[m][x]] != cod.lact[m][hx]:
                raise NotLeftEquivariant(m, x)
        for n in dom.right.elements:
            if h.map[dom.ract[x][n]] != cod.ract[hx][n]:
                raise NotRightEquivariant(x, n)
    return h


def is_biset_hom(dom: Biset, cod: Biset, map: Sequence[int]) -> bool:
    try:
        validate_biset_hom(dom, cod, map)
    except ValidationError:
        return False
    return True


def identity_biset_hom(b: Biset) -> BisetHom:
    return BisetHom(b, b, tuple(b.elements))


def compose_biset_homs(g: BisetHom, f: BisetHom) -> BisetHom:
    """g after f."""
    if f.cod != g.dom:
        raise MonoidMismatch("biset homs are not composable")
    return BisetHom(f.dom, g.cod, tuple(g.map[x] for x in f.map))


# ---------------------------------------------------------------------------
# tensor product

@dataclass(frozen=True)
class TensorProduct:
    """X (x) Y together with the quotient map from X x Y.

    ``quotient[x * |Y| + y]`` is the class of the pair (x, y).  Class ids are
    numbered in order of their least pair in that index order.
    """

    biset: Biset
    left_factor: Biset
    right_factor: Biset
    quotient: tuple[int, ...]

    def cls(self, x: int, y: int) -> int:
        return self.quotient[x * self.right_factor.carrier + y]

    def representative(self, c: int) -> tuple[int, int]:
        ny = self.right_factor.carrier
        i = self.quotient.index(c)
        return divmod(i, ny)


def tensor(X: Biset, Y: Biset) -> TensorProduct:
    """X (x) Y for an (L, M)-biset X and an (M, N)-biset Y.

    The carrier is X x Y modulo the equivalence generated by
    (x.m, y) ~ (x, m.y); L acts on the first factor and N on the second.
    """
    if X.right != Y.left:
        raise MonoidMismatch("middle monoids of the tensor factors differ")
    M = X.right
    nx, ny = X.carrier, Y.carrier
    pairs = (
        (X.ract[x][m] * ny + y, x * ny + Y.lact[m][y])
        for x in range(nx) for m in M.elements for y in range(ny)
    )
    q = generated_equivalence(nx * ny, pairs)
    k = max(q) + 1 if q else 0
    reps = [-1] * k
    for i, c in enumerate(q):
        if reps[c] < 0:
            reps[c] = i
    lact, ract = [], []
    for l in X.left.elements:
        lact.append([q[X.lact[l][reps[c] // ny] * ny + reps[c] % ny] for c in range(k)])
    for c in range(k):
        x, y = divmod(reps[c], ny)
        ract.append([q[x * ny + Y.ract[y][n]] for n in Y.right.elements])
    # the actions must not depend on the chosen representative
    for i, c in enumerate(q):
        x, y = divmod(i, ny)
        for l in X.left.elements:
            if q[X.lact[l][x] * ny + y] != lact[l][c]:
                raise ValidationError("left action on the tensor is ill defined")
        for n in Y.right.elements:
            if q[x * ny + Y.ract[y][n]] != ract[c][n]:
                raise ValidationError("right action on the tensor is ill defined")
    b = Biset(X.left, Y.right, k, lact, ract)
    return TensorProduct(b, X, Y, q)


def tensor_hom(tp: TensorProduct, tq: TensorProduct, f: BisetHom, g: BisetHom) -> BisetHom:
    """f (x) g from tp = X (x) Y to tq = X' (x) Y'."""
    if f.dom != tp.left_factor or g.dom != tp.right_factor:
        raise MonoidMismatch("f (x) g: domains do not match the source tensor")
    if f.cod != tq.left_factor or g.cod != tq.right_factor:
        raise MonoidMismatch("f (x) g: codomains do not match the target tensor")
    out = [-1] * tp.biset.carrier
    ny = tp.right_factor.carrier
    for i, c in enumerate(tp.quotient):
        x, y = divmod(i, ny)
        v = tq.cls(f(x), g(y))
        if out[c] >= 0 and out[c] != v:
            raise ValidationError("f (x) g is ill defined")
        out[c] = v
    return BisetHom(tp.biset, tq.biset, tuple(out))


def associator(X: Biset, Y: Biset, Z: Biset) -> BisetHom:
    """The canonical map [((x, y), z)] -> [(x, (y, z))]."""
    xy = tensor(X, Y)
    left = tensor(xy.biset, Z)
    yz = tensor(Y, Z)
    right = tensor(X, yz.biset)
    out = [-1] * left.biset.carrier
    for x in X.elements:
        for y in Y.elements:
            for z in Z.elements:
                c = left.cls(xy.cls(x, y), z)
                v = right.cls(x, yz.cls(y, z))
                if out[c] >= 0 and out[c] != v:
                    raise ValidationError("associator is ill defined")
                out[c] = v
    return BisetHom(left.biset, right.biset, tuple(out))


def left_unitor(X: Biset) -> BisetHom:
    """[(l, x)] -> l.x from id_L (x) X to X."""
    tp = tensor(identity_biset(X.left), X)
    out = [-1] * tp.biset.carrier
    for l in X.left.elements:
        for x in X.elements:
            out[tp.cls(l, x)] = X.lact[l][x]
    return BisetHom(tp.biset, X, tuple(out))


def right_unitor(X: Biset) -> BisetHom:
    """[(x, m)] -> x.m from X (x) id_M to X."""
    tp = tensor(X, identity_biset(X.right))
    out = [-1] * tp.biset.carrier
    for x in X.elements:
        for m in X.right.elements:
            out[tp.cls(x, m)] = X.ract[x][m]
    return BisetHom(tp.biset, X, tuple(out))


# ---------------------------------------------------------------------------
# isomorphism search

def _signature(b: Biset, x: int) -> tuple:
    fixed_l = tuple(b.lact[m][x] == x for m in b.left.elements)
    fixed_r = tuple(b.ract[x][n] == x for n in b.right.elements)
    lorb = len({b.lact[m][x] for m in b.left.elements})
    rorb = len({b.ract[x][n] for n in b.right.elements})
    return fixed_l, fixed_r, lorb, rorb


def find_biset_isomorphism(X: Biset, Y: Biset) -> BisetHom | None:
    """Search for an equivariant bijection X -> Y.

    Candidates are pruned by orbit sizes and fixed-point patterns; each
    assignment propagates along both actions.
    """
    if X.left != Y.left or X.right != Y.right or X.carrier != Y.carrier:
        return None
    n = X.carrier
    sx = [_signature(X, x) for x in X.elements]
    sy = [_signature(Y, y) for y in Y.elements]
    if sorted(sx) != sorted(sy):
        return None
    M, N = X.left, X.right
    fwd = [-1] * n
    bwd = [-1] * n

    def propagate(x0, y0, undo):
        stack = [(x0, y0)]
        while stack:
            x, y = stack.pop()
            if fwd[x] >= 0 or bwd[y] >= 0:
                if fwd[x] != y or bwd[y] != x:
                    return False
                continue
            if sx[x] != sy[y]:
                return False
            fwd[x], bwd[y] = y, x
            undo.append(x)
            for m in M.elements:
                stack.append((X.lact[m][x], Y.lact[m][y]))
            for k in N.elements:
                stack.append((X.ract[x][k], Y.ract[y][k]))
        return True

    def rec():
        try:
            x = fwd.index(-1)
        except ValueError:
            return True
        for y in range(n):
            if bwd[y] >= 0 or sx[x] != sy[y]:
                continue
            undo: list[int] = []
            if propagate(x, y, undo) and rec():
                return True
            for u in undo:
                bwd[fwd[u]] = -1
                fwd[u] = -1
        return False

    if not rec():
        return None
    return validate_biset_hom(X, Y, fwd)


def bisets_isomorphic(X: Biset, Y: Biset) -> bool:
    return find_biset_isomorphism(X, Y) is not None


# ---------------------------------------------------------------------------
# left-quotient bisets

@dataclass(frozen=True)
class LQArrow:
    """A relaxed monoid homomorphism (cong, f) encoding an LQ (M, N)-biset."""

    left: FiniteMonoid
    right: FiniteMonoid
    cong: Congruence
    f: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(v) for v in self.f))
        if self.cong.carrier != self.left:
            raise MonoidMismatch("congruence must live on the left monoid")
        if len(self.f) != self.right.size or any(not 0 <= v < self.left.size for v in self.f):
            raise ShapeError("f must map the right monoid into the left one")


def validate_lq_arrow(a: LQArrow) -> LQArrow:
    if a.cong.mode != LEFT:
        raise ValidationError("an LQ arrow needs a left congruence")
    check_congruence(a.cong)
    M, N, f, c = a.left, a.right, a.f, a.cong
    if not c.same(f[N.identity], M.identity):
        raise ValidationError("f(1) is not ~ 1")
    for n in N.elements:
        for np_ in N.elements:
            if not c.same(f[N.table[n][np_]], M.table[f[n]][f[np_]]):
                raise ValidationError(f"f({n}*{np_}) is not ~ f({n})f({np_})")
    return a


def lq_from_hom(f: MonoidHom) -> LQArrow:
    return LQArrow(f.cod, f.dom, discrete_congruence(f.cod), f.map)


def identity_lq(m: FiniteMonoid) -> LQArrow:
    return LQArrow(m, m, discrete_congruence(m), tuple(m.elements))


def lq_to_biset(a: LQArrow) -> Biset:
    """Carrier M/~, m.[m'] = [m m'], [m].n = [m f(n)]."""
    M, N, c, f = a.left, a.right, a.cong, a.f
    cls, reps = c.classes, c.reps
    k = c.num_classes
    lact = [[cls[M.table[m][reps[j]]] for j in range(k)] for m in M.elements]
    ract = [[cls[M.table[reps[j]][f[n]]] for n in N.elements] for j in range(k)]
    for m in M.elements:
        for n in N.elements:
            if cls[M.table[m][f[n]]] != ract[cls[m]][n]:
                raise IllDefinedRightAction(
                    f"[{m}].{n} depends on the representative of [{m}]")
        for mp in M.elements:
            if cls[M.table[m][mp]] != lact[m][cls[mp]]:
                raise IllDefinedRightAction(f"~ is not left stable at ({m},{mp})")
    return Biset(M, N, k, lact, ract)


def lq_tensor(x: LQArrow, y: LQArrow) -> LQArrow:
    """Composite of LQ arrows x over (L, M) and y over (M, N).

    The congruence on L is generated by ~x together with
    l f_x(m) ~ l' f_x(m') for l ~x l', m ~y m'; the function is f_x . f_y.
    """
    if x.right != y.left:
        raise MonoidMismatch("middle monoids of the LQ arrows differ")
    L, M = x.left, x.right
    fx = x.f
    pairs = list(x.cong.pairs())
    for l1 in L.elements:
        for l2 in L.elements:
            if not x.cong.same(l1, l2):
                continue
            for m1 in M.elements:
                for m2 in M.elements:
                    if y.cong.same(m1, m2):
                        pairs.append((L.table[l1][fx[m1]], L.table[l2][fx[m2]]))
    cong = congruence_closure(L, pairs, LEFT)
    return LQArrow(L, y.right, cong, tuple(fx[v] for v in y.f))


def lq_hom_from_element(dom: LQArrow, cod: LQArrow, eta: int) -> BisetHom:
    """The biset hom [m] -> [m eta] between the LQ bisets of dom and cod."""
    if dom.left != cod.left or dom.right != cod.right:
        raise MonoidMismatch("LQ arrows over different monoids")
    M, N = dom.left, dom.right
    c1, c2 = dom.cong, cod.cong
    for m in M.elements:
        for mp in M.elements:
            if c1.same(m, mp) and not c2.same(M.table[m][eta], M.table[mp][eta]):
                raise IllDefined(m, mp)
    for n in N.elements:
        if not c2.same(M.table[dom.f[n]][eta], M.table[eta][cod.f[n]]):
            raise NotEquivariant(n)
    src, dst = lq_to_biset(dom), lq_to_biset(cod)
    mp = [c2.classes[M.table[r][eta]] for r in c1.reps]
    return validate_biset_hom(src, dst, mp)


def all_lq_arrows(M: FiniteMonoid, N: FiniteMonoid, congs: Sequence[Congruence] | None = None):
    """Every valid LQArrow over (M, N) with f valued in least class members."""
    from itertools import product

    from .monoid import left_congruences

    out = []
    for c in congs if congs is not None else left_congruences(M):
        reps = c.reps
        for f in product(reps, repeat=N.size):
            a = LQArrow(M, N, c, f)
            try:
                validate_lq_arrow(a)
            except ValidationError:
                continue
            try:
                lq_to_biset(a)
            except ValidationError:
                continue
            out.append(a)
    return out
