"""The polynomial-representation layer: torsion radical t (largest submodule
with polynomial support), its quotient partner u, Ext-projectivity inside the
polynomial category, almost split sequences there, resolutions, and the
quasi-hereditary check for the degree-d blocks on the borel side."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import constructions, homological
from .grmod import (GradedModule, ModuleMap, Weight, borel_dual,
                    contravariant_dual, decompose, hom_space, is_isomorphic,
                    is_polynomial_weight, quotient, shift,
                    submodule_from_subspace, submodule_span, weight_degree,
                    zero_module)


@dataclass
class PolyVerdict:
    is_polynomial: bool
    offending_weights: list[Weight]
    degree: int | None  # common weight degree when homogeneous


def is_polynomial(m: GradedModule) -> PolyVerdict:
    bad = sorted({w for w in m.weights if not is_polynomial_weight(w)})
    return PolyVerdict(not bad, list(bad), m.degree())


def t_poly(m: GradedModule) -> tuple[GradedModule, ModuleMap]:
    """Largest homogeneous submodule with polynomial support.

    Fixpoint shrink: start from the span of the polynomial weight spaces and
    repeatedly cut to vectors kept inside by every generator.
    """
    ff = m.field
    good = [j for j in range(m.dim) if is_polynomial_weight(m.weights[j])]
    basis = np.zeros((m.dim, len(good)), dtype=np.int64)
    for t, j in enumerate(good):
        basis[j, t] = 1
    gens = m.algebra.generators()
    while basis.shape[1] > 0:
        ann = ff.kernel_basis(basis.T).T  # rows; v in span iff ann @ v = 0
        if ann.shape[0] == 0:
            break  # span is everything invariant trivially
        rows = [ff.matmul(ann, ff.matmul(m.action[g], basis)) for g in gens]
        stacked = np.vstack(rows)
        if not np.any(stacked):
            break
        coords = ff.kernel_basis(stacked)
        if coords.shape[1] == basis.shape[1]:
            break
        basis = ff.matmul(basis, coords)
    return submodule_from_subspace(m, basis)


def u_poly(m: GradedModule) -> tuple[GradedModule, ModuleMap]:
    """Largest polynomial quotient: divide by the submodule generated by the
    non-polynomial weight spaces."""
    bad = [j for j in range(m.dim) if not is_polynomial_weight(m.weights[j])]
    if not bad:
        q = GradedModule(m.algebra, m.weights, dict(m.action))
        return q, ModuleMap(m, q, m.field.eye(m.dim))
    gens = []
    for j in bad:
        e = np.zeros(m.dim, dtype=np.int64)
        e[j] = 1
        gens.append(e)
    sub, incl = submodule_span(m, gens)
    return quotient(m, incl.matrix)


def _dual(m: GradedModule) -> GradedModule:
    return contravariant_dual(m) if m.algebra.kind == "sl2r1" else borel_dual(m)


def is_poly_projective_object(v: GradedModule) -> bool:
    """Projective object of the polynomial category (ambient-projective or
    torsion-free translate); used for Ext-projectivity."""
    return homological.is_projective(v)


def ext_projective_in_poly(v: GradedModule) -> bool:
    """True iff v is projective over the ambient algebra or t(tau v) = 0."""
    if homological.is_projective(v):
        return True
    t, _ = t_poly(homological.tau(v))
    return t.dim == 0


def induced_sequence(seq: homological.ShortExact
                     ) -> homological.ShortExact:
    """Apply t to the left and middle of a sequence with polynomial right
    term, with the induced maps."""
    tl, incl_l = t_poly(seq.left)
    tm, incl_m = t_poly(seq.middle)
    ff = seq.left.field
    inj_mat = ff.solve_matrix(incl_m.matrix,
                              ff.matmul(seq.inj.matrix, incl_l.matrix))
    if inj_mat is None:
        raise RuntimeError("t does not restrict the inclusion (unexpected)")
    surj_mat = ff.matmul(seq.surj.matrix, incl_m.matrix)
    return homological.ShortExact(tl, tm, seq.right,
                                  ModuleMap(tl, tm, inj_mat),
                                  ModuleMap(tm, seq.right, surj_mat))


def almost_split_in_poly(v: GradedModule) -> homological.ShortExact:
    """Almost split sequence of the polynomial category: t applied to the
    ambient almost split sequence ending at v."""
    verdict = is_polynomial(v)
    if not verdict.is_polynomial:
        raise ValueError("end term must be polynomial")
    if ext_projective_in_poly(v):
        raise ValueError("end term is Ext-projective in the polynomial "
                         "category; no almost split sequence ends at it")
    ambient = homological.almost_split_sequence(v)
    seq = induced_sequence(ambient)
    errs = seq.check()
    if errs:
        raise RuntimeError("induced sequence is not exact: " + "; ".join(errs))
    if seq.is_split():
        raise RuntimeError("induced sequence splits")
    return seq


# ---------------------------------------------------------------------------
# resolutions in the polynomial category


def poly_projective_cover(v: GradedModule
                          ) -> tuple[GradedModule, ModuleMap]:
    """Cover of v by a projective object of the polynomial category: u of
    the ambient projective cover with the induced epi."""
    ff = v.field
    P, epi = homological.projective_cover(v)
    uP, projP = u_poly(P)
    # epi kills the non-polynomial-generated submodule, so it factors
    rep = ff.solve_matrix(projP.matrix, ff.eye(uP.dim))
    assert rep is not None
    phi = ff.matmul(epi.matrix, rep)
    cover = ModuleMap(uP, v, phi)
    if not cover.is_surjective():
        raise RuntimeError("induced polynomial cover is not surjective")
    return uP, cover


def poly_projective_resolution(v: GradedModule, n: int) -> list[GradedModule]:
    """First n terms of a minimal projective resolution inside the
    polynomial category."""
    terms = []
    cur = v
    ff = v.field
    for _ in range(n):
        if cur.dim == 0:
            terms.append(zero_module(v.algebra))
            continue
        P, cover = poly_projective_cover(cur)
        terms.append(P)
        kernel = ff.kernel_basis(cover.matrix)
        cur, _ = submodule_from_subspace(P, kernel)
    return terms


def poly_injective_hull(v: GradedModule) -> tuple[GradedModule, ModuleMap]:
    """Hull of v inside the polynomial category: t of the ambient injective
    hull with the induced mono."""
    ff = v.field
    dv = _dual(v)
    Pd, epid = homological.projective_cover(dv)
    I = _dual(Pd)
    mono = ModuleMap(v, I, epid.matrix.T)
    tI, incl = t_poly(I)
    coords = ff.solve_matrix(incl.matrix, mono.matrix)
    if coords is None:
        raise RuntimeError("image of v does not land in t of the hull")
    return tI, ModuleMap(v, tI, coords)


def poly_injective_resolution(v: GradedModule, n: int) -> list[GradedModule]:
    terms = []
    cur = v
    for _ in range(n):
        if cur.dim == 0:
            terms.append(zero_module(v.algebra))
            continue
        I, mono = poly_injective_hull(cur)
        terms.append(I)
        cur, _ = quotient(I, mono.matrix)
    return terms


def pd_in_poly(v: GradedModule, cap: int = 10) -> int | str:
    """Projective dimension in the polynomial category, or ">=cap"."""
    terms = poly_projective_resolution(v, cap + 1)
    for i, t in enumerate(terms):
        if t.dim == 0:
            return i - 1
    return f">={cap}"


# ---------------------------------------------------------------------------
# quasi-hereditary check (borel backend)


@dataclass
class StandardReport:
    weight: Weight
    dim: int
    unit_weight_space: bool
    lower_weights_only: bool
    scalar_endos: bool

    @property
    def passed(self) -> bool:
        return (self.unit_weight_space and self.lower_weights_only
                and self.scalar_endos)


def standard_module(lam: Weight, algebra) -> GradedModule:
    """Delta(lambda) = u(Z_r(lambda)): the standard module of the degree-d
    block on the borel side."""
    z = constructions.borel_projective(lam, algebra)
    return u_poly(z)[0]


def quasi_hereditary_check(p: int, r: int, d: int) -> list[StandardReport]:
    """Evidence that the degree-d polynomial category on the borel side is
    quasi-hereditary and directed: for every polynomial weight of degree d
    the standard module has a one-dimensional highest weight space, strictly
    lower other weights, and scalar endomorphisms."""
    algebra = constructions.borel_algebra(p, r)
    out = []
    for lam1 in range(d, -1, -1):
        lam = (lam1, d - lam1)
        delta = standard_module(lam, algebra)
        mult = len(delta.weight_indices(lam))
        others_lower = all(w == lam or (weight_degree(w) == d and w[0] < lam[0])
                           for w in delta.weights)
        endos = hom_space(delta, delta)
        out.append(StandardReport(lam, delta.dim, mult == 1, others_lower,
                                  len(endos) == 1))
    return out
