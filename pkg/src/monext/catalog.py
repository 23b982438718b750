"""Named monoids and ready-made extension data used by the CLI and the tests."""

from __future__ import annotations

from .correspondence import fiber_data
from .monoid import (
    ExactSequence,
    FiniteMonoid,
    MonoidHom,
    cyclic_group,
    direct_product,
    exact_sequence,
    idempotent_pair,
    is_hom,
    kernel,
    saturating_addition,
    trivial_monoid,
    validate_monoid,
)
from .schreier import SchreierData, validate_schreier_data
from .weakly_schreier import WSData, validate_ws_data


def z3_multiplicative() -> FiniteMonoid:
    """{0, 1, 2} under multiplication mod 3; the identity sits at index 1."""
    table = [[(i * j) % 3 for j in range(3)] for i in range(3)]
    return validate_monoid(3, 1, table, name="Z3mult")


def klein() -> FiniteMonoid:
    m = direct_product(cyclic_group(2), cyclic_group(2))
    return FiniteMonoid(m.size, m.identity, m.table, name="Klein")


def named_monoid(name: str) -> FiniteMonoid:
    """Look up t1, c<n>, i2, n<k> / n_<k>, z3mult or klein."""
    key = name.strip().lower()
    fixed = {"t1": trivial_monoid, "i2": idempotent_pair, "z3mult": z3_multiplicative,
             "klein": klein}
    if key in fixed:
        return fixed[key]()
    if key.startswith("c") and key[1:].isdigit() and int(key[1:]) >= 1:
        return cyclic_group(int(key[1:]))
    digits = key[2:] if key.startswith("n_") else key[1:] if key.startswith("n") else ""
    if digits.isdigit():
        return saturating_addition(int(digits))
    raise KeyError(f"unknown monoid {name!r}")


MONOID_NAMES = ("t1", "c2", "c3", "c4", "i2", "n_k", "z3mult", "klein")


# ---------------------------------------------------------------------------
# extension data

def c4_cocycle() -> SchreierData:
    """N = H = C2, trivial phi, chi(a, a) = a: builds C4."""
    c2 = cyclic_group(2)
    return validate_schreier_data(c2, c2, [[0, 1], [0, 1]], [[0, 0], [0, 1]])


def dihedral_s3() -> SchreierData:
    """N = C3, H = C2 acting by inversion, trivial chi: builds S3."""
    c3, c2 = cyclic_group(3), cyclic_group(2)
    return validate_schreier_data(c3, c2, [[0, 1, 2], [0, 2, 1]], [[0, 0], [0, 0]])


def trivial_data(N: FiniteMonoid, H: FiniteMonoid) -> SchreierData:
    return validate_schreier_data(N, H, [list(N.elements)] * H.size,
                                  [[N.identity] * H.size] * H.size)


def z3mult_ws() -> WSData:
    """N = C2, H = I2, ~e total, phi(e, -) = 1, chi = 1: builds (Z/3, x)."""
    c2, i2 = cyclic_group(2), idempotent_pair()
    return validate_ws_data(c2, i2, [[0, 1], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [0, 0]])


def z3mult_sequence() -> ExactSequence:
    """(Z/3, x) -> I2 sending the units to 1 and 0 to e."""
    g, i2 = z3_multiplicative(), idempotent_pair()
    e = is_hom(g, i2, [1, 0, 0])
    _, k = kernel(e)
    return exact_sequence(k, e)


def c4_sequence() -> ExactSequence:
    c4, c2 = cyclic_group(4), cyclic_group(2)
    e = is_hom(c4, c2, [x % 2 for x in range(4)])
    _, k = kernel(e)
    return exact_sequence(k, e)


def nk_addition_sequence(k: int) -> ExactSequence:
    """Saturating addition N_k x N_k -> N_k."""
    nk = saturating_addition(k)
    p = direct_product(nk, nk)
    e = is_hom(p, nk, [min(k, (x // (k + 1)) + (x % (k + 1))) for x in range(p.size)])
    _, kk = kernel(e)
    return exact_sequence(kk, e)


def identity_sequence(H: FiniteMonoid) -> ExactSequence:
    e = MonoidHom(H, H, tuple(H.elements))
    _, k = kernel(e)
    return exact_sequence(k, e)


SEED_EXAMPLES = {
    "c4-cocycle": ("schreier", c4_cocycle),
    "dihedral-s3": ("schreier", dihedral_s3),
    "trivial-c2-c2": ("schreier", lambda: trivial_data(cyclic_group(2), cyclic_group(2))),
    "z3mult-ws": ("ws", z3mult_ws),
    "z3mult-sequence": ("sequence", z3mult_sequence),
    "c4-sequence": ("sequence", c4_sequence),
    "nk-sequence": ("sequence", lambda: nk_addition_sequence(4)),
}


def nk_fiber_report(k: int) -> dict:
    """Fibre sizes of N_k x N_k -> N_k and the compositor read on first coordinates.

    The pair (a, i - a) in the fibre over i is identified with a, so the
    untruncated fibres are {0, ..., i}; ``additive`` records whether
    gamma_{i,j}(n, m) = n + m whenever i + j < k.
    """
    seq = nk_addition_sequence(k)
    L = fiber_data(seq)
    side = k + 1
    fibers = [seq.fiber(h) for h in seq.H.elements]
    sizes = [len(f) for f in fibers]
    first = {g: g // side for g in seq.G.elements}
    additive = True
    for i in range(k):
        for j in range(k - i):
            fi, fj, fij = fibers[i], fibers[j], fibers[i + j]
            for x, gx in enumerate(fi):
                for y, gy in enumerate(fj):
                    if first[fij[L.gamma[i][j][x][y]]] != first[gx] + first[gy]:
                        additive = False
    reps = [[first[g] for g in f] for f in fibers[:k]]
    return {"k": k, "fiber_sizes": sizes[:k], "saturated_fiber_size": sizes[k],
            "representatives": reps, "additive": additive}
