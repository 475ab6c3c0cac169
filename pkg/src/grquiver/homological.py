"""Projective covers, Heller shifts, AR translates, Ext^1 and almost split
sequences, Betti sequences and rank-variety probes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import constructions
from .grmod import (GradedModule, ModuleMap, Weight, borel_dual,
                    contravariant_dual, decompose, direct_sum, hom_space,
                    is_isomorphic, shift, submodule_from_subspace, top,
                    zero_module)


@dataclass
class ShortExact:
    left: GradedModule
    middle: GradedModule
    right: GradedModule
    inj: ModuleMap  # left -> middle
    surj: ModuleMap  # middle -> right

    def check(self) -> list[str]:
        errs = self.inj.check() + self.surj.check()
        ff = self.left.field
        if self.middle.dim != self.left.dim + self.right.dim:
            errs.append("middle dimension is not the sum of the ends")
        if not self.inj.is_injective():
            errs.append("left map not injective")
        if not self.surj.is_surjective():
            errs.append("right map not surjective")
        if np.any(ff.matmul(self.surj.matrix, self.inj.matrix)):
            errs.append("composite left-to-right is nonzero")
        return errs

    def is_split(self) -> bool:
        """True iff the surjection admits a section."""
        return _find_section(self.middle, self.right, self.surj.matrix,
                             self.right.field) is not None

    def to_json_dict(self) -> dict:
        return {
            "left": self.left.to_json_dict(),
            "middle": self.middle.to_json_dict(),
            "right": self.right.to_json_dict(),
            "inj": self.inj.matrix.tolist(),
            "surj": self.surj.matrix.tolist(),
        }


def _find_section(middle: GradedModule, right: GradedModule,
                  surj: np.ndarray, ff) -> np.ndarray | None:
    basis = hom_space(right, middle)
    if not basis:
        return None
    cols = [ff.matmul(surj, s).reshape(-1) for s in basis]
    target = ff.eye(right.dim).reshape(-1)
    x = ff.solve(np.stack(cols, axis=1), target)
    if x is None:
        return None
    out = np.zeros_like(basis[0])
    for c, s in zip(x, basis):
        out = (out + int(c) * s) % ff.p
    return out


# ---------------------------------------------------------------------------
# projective covers


def _identify_simple_summands(t: GradedModule) -> list[tuple[int, Weight]]:
    """Write a semisimple sl2r1 module as a list of (a, shift) for L(a)[mu]."""
    out = []
    for piece, mult in decompose(t):
        a = piece.dim - 1
        mu = (min(w[0] for w in piece.weights),
              min(w[1] for w in piece.weights))
        ref = shift(constructions.simple_hat(t.algebra.p, a), mu)
        if is_isomorphic(piece, ref) is None:
            raise RuntimeError("top summand is not a shifted simple")
        out.extend([(a, mu)] * mult)
    return out


def projective_cover(m: GradedModule) -> tuple[GradedModule, ModuleMap]:
    """Minimal projective cover (P, epi); epi is an iso on tops."""
    if m.dim == 0:
        z = zero_module(m.algebra)
        return z, ModuleMap(z, m, np.zeros((0, 0), dtype=np.int64))
    ff = m.field
    t, proj = top(m)
    if m.algebra.kind == "borel":
        covers = [constructions.borel_projective(w, m.algebra)
                  for w in t.weights]
        P = direct_sum(covers)
        # homogeneous preimages of the top basis vectors
        reps = []
        for j, w in enumerate(t.weights):
            e = np.zeros(t.dim, dtype=np.int64)
            e[j] = 1
            v = ff.solve(proj.matrix, e)
            assert v is not None
            hom_part = np.where([m.weights[i] == w for i in range(m.dim)], v, 0)
            reps.append(hom_part % ff.p)
        # epi: monomial basis of each free summand maps to action * rep
        cols = []
        for j, z in enumerate(covers):
            images = {0: reps[j]}  # index in z -> vector in m
            gens = m.algebra.generators()
            col_block = np.zeros((m.dim, z.dim), dtype=np.int64)
            # walk the free module: z basis vector c reached from generator
            # applications; reconstruct by following z's action matrices
            col_block[:, 0] = reps[j]
            pending = [0]
            seen = {0}
            while pending:
                i = pending.pop()
                for g in gens:
                    col = z.action[g][:, i]
                    nz = np.flatnonzero(col)
                    if nz.size == 0:
                        continue
                    k = int(nz[0])
                    if k not in seen:
                        col_block[:, k] = ff.matmul(
                            m.action[g], col_block[:, i]) * int(col[k]) % ff.p
                        seen.add(k)
                        pending.append(k)
            cols.append(col_block)
        epi_mat = np.hstack(cols)
        epi = ModuleMap(P, m, epi_mat)
        if not epi.is_surjective():
            raise RuntimeError("borel cover construction failed to surject")
        return P, epi
    # sl2r1
    summands = _identify_simple_summands(t)
    P = direct_sum([shift(constructions.projective_indec(m.algebra.p, a), mu)
                    for a, mu in summands])
    tP, projP = top(P)
    psi0 = is_isomorphic(tP, t)
    if psi0 is None:
        raise RuntimeError("top of candidate cover does not match top(m)")
    target = ff.matmul(psi0, projP.matrix)  # P -> t
    basis = hom_space(P, m)
    cols = [ff.matmul(proj.matrix, phi).reshape(-1) for phi in basis]
    x = ff.solve(np.stack(cols, axis=1) if cols else
                 np.zeros((target.size, 0), dtype=np.int64),
                 target.reshape(-1))
    if x is None:
        raise RuntimeError("projectivity lift failed (should not happen)")
    phi = np.zeros((m.dim, P.dim), dtype=np.int64)
    for c, b in zip(x, basis):
        phi = (phi + int(c) * b) % ff.p
    epi = ModuleMap(P, m, phi)
    if not epi.is_surjective():
        raise RuntimeError("cover candidate is not surjective")
    return P, epi


def is_projective(m: GradedModule) -> bool:
    if m.dim == 0:
        return True
    P, _ = projective_cover(m)
    return P.dim == m.dim


# ---------------------------------------------------------------------------
# Heller shifts and the AR translate


def omega_with_maps(m: GradedModule
                    ) -> tuple[GradedModule, ModuleMap, GradedModule,
                               ModuleMap]:
    """(K, incl, P, epi) with 0 -> K -> P -> m -> 0 a minimal presentation.

    K carries no projective summands: a projective submodule of P would be
    injective (self-injectivity), hence a direct summand, contradicting
    minimality of the cover.
    """
    P, epi = projective_cover(m)
    kernel = m.field.kernel_basis(epi.matrix)
    K, incl = submodule_from_subspace(P, kernel)
    return K, incl, P, epi


def omega(m: GradedModule) -> GradedModule:
    return omega_with_maps(m)[0]


def _dual(m: GradedModule) -> GradedModule:
    return contravariant_dual(m) if m.algebra.kind == "sl2r1" else borel_dual(m)


def omega_inv(m: GradedModule) -> GradedModule:
    return _dual(omega(_dual(m)))


def omega_pow(m: GradedModule, k: int) -> GradedModule:
    out = m
    for _ in range(abs(k)):
        out = omega(out) if k > 0 else omega_inv(out)
    return out


def nakayama(m: GradedModule) -> GradedModule:
    """Identity for sl2r1; shift by (p^r - 1)(1, -1) for borel.

    With generators lowering the weight by (1, -1), the second syzygy of a
    character module sits at -p^r(1, -1), and the almost split sequence
    ending at k_mu must start at k_{mu - (1,-1)}; this fixes the sign of
    the Nakayama twist.
    """
    if m.algebra.kind == "sl2r1":
        return m
    step = m.algebra.p ** m.algebra.r - 1
    return shift(m, (step, -step))


def nakayama_inv(m: GradedModule) -> GradedModule:
    if m.algebra.kind == "sl2r1":
        return m
    step = m.algebra.p ** m.algebra.r - 1
    return shift(m, (-step, step))


def tau(m: GradedModule) -> GradedModule:
    return nakayama(omega_pow(m, 2))


def tau_inv(m: GradedModule) -> GradedModule:
    return omega_pow(nakayama_inv(m), -2)


# ---------------------------------------------------------------------------
# Ext^1 via stable Hom


@dataclass
class ExtClass:
    rep: ModuleMap  # omega(right) -> left


def _left_annihilator(ff, cols: np.ndarray) -> np.ndarray:
    """Rows A with A @ cols = 0; membership f in span(cols) iff A @ f = 0."""
    return ff.kernel_basis(cols.T).T


def ext1(v: GradedModule, w: GradedModule
         ) -> tuple[int, list[ExtClass]]:
    """dim Ext^1(v, w) and stable-Hom representatives spanning it."""
    K, incl, P, epi = omega_with_maps(v)
    homs = hom_space(K, w)
    if not homs:
        return 0, []
    ff = v.field
    homsP = hom_space(P, w)
    factoring = [ff.matmul(h, incl.matrix).reshape(-1) for h in homsP]
    flat = np.stack([h.reshape(-1) for h in homs], axis=1)
    if factoring:
        B = np.stack(factoring, axis=1)
        joint = np.hstack([flat, B])
        dim_ext = ff.rank(joint) - ff.rank(B)
    else:
        B = np.zeros((flat.shape[0], 0), dtype=np.int64)
        dim_ext = ff.rank(flat)
    # representatives: greedily pick homs enlarging rank over B
    reps: list[ExtClass] = []
    cur = B
    for h in homs:
        if len(reps) == dim_ext:
            break
        cand = np.hstack([cur, h.reshape(-1, 1)])
        if ff.rank(cand) > ff.rank(cur):
            reps.append(ExtClass(ModuleMap(K, w, h)))
            cur = cand
    return dim_ext, reps


# ---------------------------------------------------------------------------
# almost split sequences


def _radical_endos(v: GradedModule) -> list[np.ndarray]:
    """Basis of rad End(v) for indecomposable v (nilpotent parts)."""
    ff = v.field
    endos = hom_space(v, v)
    rad = []
    for phi in endos:
        found = False
        for c in range(ff.p):
            psi = (phi - c * ff.eye(v.dim)) % ff.p
            if not np.any(ff.matpow(psi, v.dim)):
                if np.any(psi):
                    rad.append(psi)
                found = True
                break
        if not found:
            raise RuntimeError("End(v) is not split local over F_p; "
                               "cannot form the almost split sequence")
    if not rad:
        return []
    basis = ff.column_space_basis(np.stack([r.reshape(-1) for r in rad],
                                           axis=1))
    return [basis[:, j].reshape(v.dim, v.dim) for j in range(basis.shape[1])]


def almost_split_sequence(v: GradedModule) -> ShortExact:
    """The sequence 0 -> tau(v) -> E -> v -> 0 via the socle of Ext^1.

    The class is the (unique up to scalar) nonzero element of
    Ext^1(v, tau v) killed by precomposition with every radical
    endomorphism of v; realized as a pushout of the minimal presentation.
    """
    if v.dim == 0 or is_projective(v):
        raise ValueError("almost split sequence needs an indecomposable "
                         "non-projective end term")
    ff = v.field
    K, incl, P, epi = omega_with_maps(v)
    tv = nakayama(omega(K))
    homs = hom_space(K, tv)
    if not homs:
        raise RuntimeError("Ext^1(v, tau v) vanishes; no almost split "
                           "sequence found")
    homsP = hom_space(P, tv)
    B_cols = ([ff.matmul(h, incl.matrix).reshape(-1) for h in homsP]
              or [np.zeros(tv.dim * K.dim, dtype=np.int64)])
    B = np.stack(B_cols, axis=1)
    A = _left_annihilator(ff, B)  # Ext coordinates: class of f is A @ flat(f)

    # lift each radical endomorphism nu to Omega(nu): K -> K
    endP = hom_space(P, P)
    lift_cols = (np.stack([ff.matmul(epi.matrix, e).reshape(-1)
                           for e in endP], axis=1)
                 if endP else np.zeros((v.dim * P.dim, 0), dtype=np.int64))
    omegas = []
    for nu in _radical_endos(v):
        target = ff.matmul(nu, epi.matrix).reshape(-1)
        x = ff.solve(lift_cols, target)
        if x is None:
            raise RuntimeError("projectivity lift failed for a radical endo")
        rho = np.zeros((P.dim, P.dim), dtype=np.int64)
        for c, e in zip(x, endP):
            rho = (rho + int(c) * e) % ff.p
        onK = ff.solve_matrix(incl.matrix, ff.matmul(rho, incl.matrix))
        assert onK is not None
        omegas.append(onK)

    # solve for h in span(homs): A @ flat(h o Omega(nu)) = 0 for all nu,
    # with [h] nonzero; the solution space modulo B must be one-dimensional
    rows = []
    for onK in omegas:
        for t, h in enumerate(homs):
            col = (A @ ff.matmul(h, onK).reshape(-1)) % ff.p
            rows.append((t, col))
    n_h = len(homs)
    if rows and A.shape[0] > 0:
        sys_rows = np.zeros((A.shape[0] * len(omegas), n_h), dtype=np.int64)
        for block, onK in enumerate(omegas):
            for t, h in enumerate(homs):
                sys_rows[block * A.shape[0]:(block + 1) * A.shape[0], t] = \
                    (A @ ff.matmul(h, onK).reshape(-1)) % ff.p
        sol = ff.kernel_basis(sys_rows)
    else:
        sol = ff.eye(n_h)
    # image of the solution space in Ext coordinates
    if A.shape[0] == 0:
        raise RuntimeError("Ext^1(v, tau v) vanishes")
    ext_img = np.zeros((A.shape[0], sol.shape[1]), dtype=np.int64)
    for j in range(sol.shape[1]):
        hmat = np.zeros((tv.dim, K.dim), dtype=np.int64)
        for c, h in zip(sol[:, j], homs):
            hmat = (hmat + int(c) * h) % ff.p
        ext_img[:, j] = (A @ hmat.reshape(-1)) % ff.p
    if ff.rank(ext_img) != 1:
        raise RuntimeError(
            f"socle of Ext^1(v, tau v) has dimension {ff.rank(ext_img)}, "
            "expected 1")
    jcol = next(j for j in range(ext_img.shape[1])
                if np.any(ext_img[:, j]))
    hmat = np.zeros((tv.dim, K.dim), dtype=np.int64)
    for c, h in zip(sol[:, jcol], homs):
        hmat = (hmat + int(c) * h) % ff.p

    # pushout: E = (tv + P) / {(h(x), -incl(x))}
    D = direct_sum([tv, P])
    rel = np.vstack([hmat, (-incl.matrix) % ff.p])
    from .grmod import quotient
    E, projD = quotient(D, rel)
    inj = ModuleMap(tv, E, projD.matrix[:, :tv.dim])
    psi = np.hstack([np.zeros((v.dim, tv.dim), dtype=np.int64), epi.matrix])
    S = ff.solve_matrix(projD.matrix.T, psi.T)
    assert S is not None
    surj = ModuleMap(E, v, S.T)
    seq = ShortExact(tv, E, v, inj, surj)
    errs = seq.check()
    if errs:
        raise RuntimeError("constructed sequence is not exact: " + "; ".join(errs))
    if seq.is_split():
        raise RuntimeError("constructed sequence splits; not almost split")
    return seq


# ---------------------------------------------------------------------------
# Betti numbers, complexity, rank probes


@dataclass
class BettiSequence:
    dims: list[int]


def betti(m: GradedModule, n_terms: int) -> BettiSequence:
    """Dimensions of the first n_terms terms of a minimal projective
    resolution."""
    if n_terms < 4:
        raise ValueError("n_terms must be at least 4")
    dims = []
    cur = m
    for _ in range(n_terms):
        if cur.dim == 0:
            dims.append(0)
            continue
        K, _, P, _ = omega_with_maps(cur)
        dims.append(P.dim)
        cur = K
    return BettiSequence(dims)


def complexity_estimate(m: GradedModule, window: int = 12) -> int | str:
    """Bounded-window heuristic: 0, 1, 2 or "unknown"."""
    b = betti(m, window).dims
    if 0 in b:
        return 0
    half = window // 2
    if max(b[half:]) <= max(b[:half]):
        return 1
    d = [b[i + 1] - b[i] for i in range(len(b) - 1)]
    if max(d[half:]) <= max(d[:half]):
        return 2
    return "unknown"


def rank_probe(m: GradedModule, x) -> dict:
    """Freeness of m over k[x]/(x^p) for a nilpotent x in sl2.

    Args:
        x: "E", "F", or a coefficient triple (a, b, c) meaning aE + bF + cH.
    """
    if m.algebra.kind != "sl2r1":
        raise ValueError("rank_probe applies to the sl2r1 backend")
    ff = m.field
    if x == "E":
        coeffs = (1, 0, 0)
    elif x == "F":
        coeffs = (0, 1, 0)
    else:
        coeffs = tuple(int(c) % ff.p for c in x)
    a, b, c = coeffs
    if (a, b, c) == (0, 0, 0) or (c * c + a * b) % ff.p != 0:
        raise ValueError(f"element {coeffs} is not nilpotent in sl2")
    op = (a * m.action["E"] + b * m.action["F"] + c * m.action["H"]) % ff.p
    rank = ff.rank(op)
    expected = m.dim * (ff.p - 1) // ff.p if m.dim % ff.p == 0 else None
    free = expected is not None and rank == expected
    return {"free": free, "rank": rank, "expected": expected}
