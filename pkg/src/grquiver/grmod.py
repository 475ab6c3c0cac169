"""Z^2-graded modules over restricted sl2 and graded truncated polynomial rings.

A module is stored with a weight-homogeneous basis: ``weights[j]`` is the
weight of the j-th basis vector and every generator matrix maps weight
subspaces onto shifted weight subspaces.  All operations preserve this normal
form, which makes homogeneity checks syntactic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .gf import PrimeField

Weight = tuple[int, int]


def weight_degree(w: Weight) -> int:
    return w[0] + w[1]


def is_polynomial_weight(w: Weight) -> bool:
    return w[0] >= 0 and w[1] >= 0


def add_weight(u: Weight, v: Weight) -> Weight:
    return (u[0] + v[0], u[1] + v[1])


@dataclass(frozen=True)
class AlgebraKind:
    """Either restricted sl2 ("sl2r1") or k[X_1..X_r]/(X_i^p) ("borel").

    For the borel kind, ``offset`` is the global index of the first variable
    (used by outer tensor factors over a sub-range of variables) and
    ``raising`` flips the weight convention of the action: by default X_i
    lowers weights by p^(i-1)*(1,-1); the dual module lives over the raising
    variant.
    """

    kind: str  # "sl2r1" | "borel"
    p: int
    r: int = 1
    offset: int = 1
    raising: bool = False

    def __post_init__(self):
        if self.kind not in ("sl2r1", "borel"):
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        PrimeField(self.p)  # validates p

    @property
    def field(self) -> PrimeField:
        return _field_cache(self.p)

    def generators(self) -> list[str]:
        if self.kind == "sl2r1":
            return ["E", "F", "H"]
        return [f"X{i}" for i in range(self.offset, self.offset + self.r)]

    def action_shift(self, gen: str) -> Weight:
        """Weight translation applied by the generator's action."""
        if self.kind == "sl2r1":
            return {"E": (1, -1), "F": (-1, 1), "H": (0, 0)}[gen]
        i = int(gen[1:])
        step = self.p ** (i - 1)
        if self.raising:
            return (step, -step)
        return (-step, step)

    def same_ring(self, other: "AlgebraKind") -> bool:
        return self == other


def _field_cache(p: int, _cache={}) -> PrimeField:
    if p not in _cache:
        _cache[p] = PrimeField(p)
    return _cache[p]


@dataclass
class GradedModule:
    algebra: AlgebraKind
    weights: tuple[Weight, ...]
    action: dict[str, np.ndarray]

    def __post_init__(self):
        self.weights = tuple((int(a), int(b)) for a, b in self.weights)
        ff = self.field
        self.action = {g: ff.reduce(m).reshape(self.dim, self.dim)
                       for g, m in self.action.items()}

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def field(self) -> PrimeField:
        return self.algebra.field

    def support(self) -> set[Weight]:
        return set(self.weights)

    def weight_indices(self, w: Weight) -> list[int]:
        return [j for j, wj in enumerate(self.weights) if wj == w]

    def degree(self) -> int | None:
        """Common weight degree, or None if mixed or zero module."""
        degs = {weight_degree(w) for w in self.weights}
        return degs.pop() if len(degs) == 1 else None

    def __repr__(self) -> str:
        return (f"GradedModule({self.algebra.kind}, p={self.algebra.p}, "
                f"dim={self.dim})")

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        alg: dict = {"kind": self.algebra.kind, "p": self.algebra.p}
        if self.algebra.kind == "borel":
            alg["r"] = self.algebra.r
            if self.algebra.offset != 1:
                alg["offset"] = self.algebra.offset
            if self.algebra.raising:
                alg["raising"] = True
        return {
            "algebra": alg,
            "dim": self.dim,
            "weights": [list(w) for w in self.weights],
            "action": {g: self.action[g].tolist()
                       for g in self.algebra.generators()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(", ", ": "))

    @staticmethod
    def from_json_dict(d: dict) -> "GradedModule":
        a = d["algebra"]
        kind = AlgebraKind(a["kind"], a["p"], a.get("r", 1),
                           a.get("offset", 1), a.get("raising", False))
        weights = tuple((w[0], w[1]) for w in d["weights"])
        dim = d["dim"]
        action = {g: np.array(m, dtype=np.int64).reshape(dim, dim)
                  for g, m in d["action"].items()}
        return GradedModule(kind, weights, action)

    @staticmethod
    def from_json(s: str) -> "GradedModule":
        return GradedModule.from_json_dict(json.loads(s))


@dataclass
class ModuleMap:
    """A degree-0 homogeneous intertwiner; matrix maps source coords to target."""

    source: GradedModule
    target: GradedModule
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = self.source.field.reduce(self.matrix).reshape(
            self.target.dim, self.source.dim)

    def check(self) -> list[str]:
        errs = []
        ff = self.source.field
        for j in range(self.source.dim):
            for i in range(self.target.dim):
                if self.matrix[i, j] and (self.target.weights[i]
                                          != self.source.weights[j]):
                    errs.append(f"entry ({i},{j}) violates weight preservation")
        for g in self.source.algebra.generators():
            lhs = ff.matmul(self.target.action[g], self.matrix)
            rhs = ff.matmul(self.matrix, self.source.action[g])
            if not np.array_equal(lhs, rhs):
                errs.append(f"does not intertwine generator {g}")
        return errs

    def is_injective(self) -> bool:
        return self.source.field.rank(self.matrix) == self.source.dim

    def is_surjective(self) -> bool:
        return self.source.field.rank(self.matrix) == self.target.dim

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other (other.target must be self.source)."""
        return ModuleMap(other.source, self.target,
                         self.source.field.matmul(self.matrix, other.matrix))


# ---------------------------------------------------------------------------
# basic constructors


def zero_module(algebra: AlgebraKind) -> GradedModule:
    return GradedModule(algebra, (),
                        {g: np.zeros((0, 0), dtype=np.int64)
                         for g in algebra.generators()})


def character_module(algebra: AlgebraKind, w: Weight) -> GradedModule:
    """One-dimensional module k_w with all generators acting by zero."""
    if algebra.kind == "sl2r1" and (w[0] - w[1]) % algebra.p != 0:
        raise ValueError(f"weight {w} is not legal for a trivial H-action "
                         "character (needs a = b mod p)")
    return GradedModule(algebra, (w,),
                        {g: np.zeros((1, 1), dtype=np.int64)
                         for g in algebra.generators()})


def direct_sum(mods: list[GradedModule]) -> GradedModule:
    if not mods:
        raise ValueError("empty direct sum needs an algebra; use zero_module")
    alg = mods[0].algebra
    for m in mods:
        if m.algebra != alg:
            raise ValueError("direct sum over mixed algebras")
    weights = tuple(w for m in mods for w in m.weights)
    n = len(weights)
    action = {}
    for g in alg.generators():
        mat = np.zeros((n, n), dtype=np.int64)
        o = 0
        for m in mods:
            mat[o:o + m.dim, o:o + m.dim] = m.action[g]
            o += m.dim
        action[g] = mat
    return GradedModule(alg, weights, action)


def restrict_to_indices(m: GradedModule, idx: list[int]) -> GradedModule:
    """Submodule on a subset of basis vectors (must be action-invariant)."""
    idx = list(idx)
    comp = [j for j in range(m.dim) if j not in set(idx)]
    for g, mat in m.action.items():
        if comp and idx and np.any(mat[np.ix_(comp, idx)]):
            raise ValueError(f"index set not invariant under {g}")
    weights = tuple(m.weights[j] for j in idx)
    action = {g: mat[np.ix_(idx, idx)] for g, mat in m.action.items()}
    return GradedModule(m.algebra, weights, action)


# ---------------------------------------------------------------------------
# validation


def validate(m: GradedModule) -> list[str]:
    """Empty list iff all invariants hold; otherwise human-readable findings."""
    report: list[str] = []
    ff = m.field
    p = m.algebra.p
    gens = m.algebra.generators()
    for g in gens:
        if g not in m.action:
            report.append(f"missing action matrix for {g}")
            return report
        if m.action[g].shape != (m.dim, m.dim):
            report.append(f"action matrix for {g} has wrong shape")
            return report
    # algebra relations
    if m.algebra.kind == "sl2r1":
        E, F, H = m.action["E"], m.action["F"], m.action["H"]
        checks = [
            ("E^p = 0", ff.matpow(E, p), np.zeros_like(E)),
            ("F^p = 0", ff.matpow(F, p), np.zeros_like(F)),
            ("H^p = H", ff.matpow(H, p), H),
            ("[H,E] = 2E", ff.reduce(ff.matmul(H, E) - ff.matmul(E, H)),
             ff.reduce(2 * E)),
            ("[H,F] = -2F", ff.reduce(ff.matmul(H, F) - ff.matmul(F, H)),
             ff.reduce(-2 * F)),
            ("[E,F] = H", ff.reduce(ff.matmul(E, F) - ff.matmul(F, E)), H),
        ]
        for name, lhs, rhs in checks:
            if not np.array_equal(lhs, rhs):
                report.append(f"relation {name} fails")
    else:
        for g in gens:
            if np.any(ff.matpow(m.action[g], p)):
                report.append(f"relation {g}^p = 0 fails")
        for i, g in enumerate(gens):
            for h in gens[i + 1:]:
                ab = ff.matmul(m.action[g], m.action[h])
                ba = ff.matmul(m.action[h], m.action[g])
                if not np.array_equal(ab, ba):
                    report.append(f"relation {g}{h} = {h}{g} fails")
    # grading compatibility, column by column
    for g in gens:
        d = m.algebra.action_shift(g)
        mat = m.action[g]
        for j in range(m.dim):
            tgt = add_weight(m.weights[j], d)
            for i in range(m.dim):
                if mat[i, j] and m.weights[i] != tgt:
                    report.append(
                        f"grading: {g}*e_{j} hits weight {m.weights[i]}, "
                        f"expected {tgt}")
    # torus-differential consistency
    if m.algebra.kind == "sl2r1":
        H = m.action["H"]
        for j in range(m.dim):
            a, b = m.weights[j]
            want = np.zeros(m.dim, dtype=np.int64)
            want[j] = (a - b) % p
            if not np.array_equal(H[:, j], want):
                report.append(f"H does not act as (a-b) mod p on basis "
                              f"vector {j} of weight {(a, b)}")
    return report


# ---------------------------------------------------------------------------
# shifts, duals, twists


def shift(m: GradedModule, lam: Weight) -> GradedModule:
    return GradedModule(m.algebra,
                        tuple(add_weight(w, lam) for w in m.weights),
                        dict(m.action))


def contravariant_dual(m: GradedModule) -> GradedModule:
    """m^o: transposition anti-automorphism; weight multiset preserved."""
    if m.algebra.kind != "sl2r1":
        raise ValueError("contravariant_dual requires the sl2r1 backend; "
                         "use borel_dual for the borel backend")
    action = {"E": m.action["F"].T.copy(),
              "F": m.action["E"].T.copy(),
              "H": m.action["H"].T.copy()}
    return GradedModule(m.algebra, m.weights, action)


def borel_dual(m: GradedModule) -> GradedModule:
    """Dual over the opposite weight convention of the borel backend."""
    if m.algebra.kind != "borel":
        raise ValueError("borel_dual requires the borel backend")
    alg = replace(m.algebra, raising=not m.algebra.raising)
    action = {g: m.action[g].T.copy() for g in m.algebra.generators()}
    return GradedModule(alg, m.weights, action)


def weyl_twist(m: GradedModule) -> GradedModule:
    """m^{w0}: swap grading coordinates; E <-> F, H -> -H."""
    if m.algebra.kind != "sl2r1":
        raise ValueError("weyl_twist requires the sl2r1 backend")
    action = {"E": m.action["F"].copy(),
              "F": m.action["E"].copy(),
              "H": m.field.reduce(-m.action["H"])}
    return GradedModule(m.algebra, tuple((b, a) for a, b in m.weights), action)


# ---------------------------------------------------------------------------
# support and degree decomposition


def support(m: GradedModule) -> set[Weight]:
    return m.support()


def degree_decompose(m: GradedModule) -> dict[int, GradedModule]:
    """Direct summands grouped by weight degree (identity basis permutation)."""
    by_deg: dict[int, list[int]] = {}
    for j, w in enumerate(m.weights):
        by_deg.setdefault(weight_degree(w), []).append(j)
    return {d: restrict_to_indices(m, idx) for d, idx in sorted(by_deg.items())}


# ---------------------------------------------------------------------------
# submodules and quotients


def _homogeneous_column_basis(m: GradedModule,
                              vectors: np.ndarray) -> np.ndarray:
    """Basis (as columns) of the span, each column a weight vector of m.

    The input columns must each be weight-homogeneous.  Groups by weight and
    row-reduces within each weight block; column order follows sorted weights.
    """
    ff = m.field
    by_weight: dict[Weight, list[np.ndarray]] = {}
    for j in range(vectors.shape[1]):
        v = vectors[:, j]
        if not np.any(v):
            continue
        ws = {m.weights[i] for i in range(m.dim) if v[i]}
        if len(ws) != 1:
            raise ValueError("non-homogeneous vector in submodule span")
        by_weight.setdefault(ws.pop(), []).append(v)
    cols = []
    for w in sorted(by_weight):
        block = np.stack(by_weight[w], axis=1)
        cols.append(ff.column_space_basis(block))
    if not cols:
        return np.zeros((m.dim, 0), dtype=np.int64)
    return np.hstack(cols)


def homogenize_columns(m: GradedModule, basis: np.ndarray) -> np.ndarray:
    """Split columns of a graded subspace basis into weight components.

    Valid when the column space is graded (e.g. kernels/images of
    homogeneous operators); returns a weight-homogeneous basis of the same
    span.
    """
    pieces = []
    for j in range(basis.shape[1]):
        v = basis[:, j]
        for w in sorted({m.weights[i] for i in range(m.dim) if v[i]}):
            comp = np.where([m.weights[i] == w for i in range(m.dim)], v, 0)
            pieces.append(comp)
    if not pieces:
        return np.zeros((m.dim, 0), dtype=np.int64)
    stacked = np.stack(pieces, axis=1)
    out = _homogeneous_column_basis(m, stacked)
    if m.field.rank(out) != m.field.rank(basis):
        raise ValueError("subspace is not graded")  # constraint, not expected
    return out


def _module_on_basis(m: GradedModule,
                     basis: np.ndarray) -> tuple[GradedModule, ModuleMap]:
    """Submodule structure on an invariant homogeneous column basis."""
    ff = m.field
    weights = []
    for j in range(basis.shape[1]):
        idx = int(np.flatnonzero(basis[:, j])[0])
        weights.append(m.weights[idx])
    action = {}
    for g in m.algebra.generators():
        img = ff.matmul(m.action[g], basis)
        coords = ff.solve_matrix(basis, img)
        if coords is None:
            raise ValueError(f"basis not invariant under {g}")
        action[g] = coords
    sub = GradedModule(m.algebra, tuple(weights), action)
    return sub, ModuleMap(sub, m, basis)


def submodule_span(m: GradedModule,
                   generators: list[np.ndarray]
                   ) -> tuple[GradedModule, ModuleMap]:
    """Smallest homogeneous submodule containing the given weight vectors."""
    ff = m.field
    vecs = [ff.reduce(v).reshape(-1) for v in generators]
    for v in vecs:
        if v.shape[0] != m.dim:
            raise ValueError("generator vector has wrong length")
        ws = {m.weights[i] for i in range(m.dim) if v[i]}
        if len(ws) > 1:
            raise ValueError("generator vector is not a weight vector")
    if not vecs or all(not np.any(v) for v in vecs):
        z = zero_module(m.algebra)
        return z, ModuleMap(z, m, np.zeros((m.dim, 0), dtype=np.int64))
    basis = _homogeneous_column_basis(m, np.stack(vecs, axis=1))
    while True:
        images = [basis]
        for g in m.algebra.generators():
            images.append(ff.matmul(m.action[g], basis))
        new_basis = _homogeneous_column_basis(m, np.hstack(images))
        if new_basis.shape[1] == basis.shape[1]:
            break
        basis = new_basis
    return _module_on_basis(m, basis)


def submodule_from_subspace(m: GradedModule,
                            basis: np.ndarray) -> tuple[GradedModule, ModuleMap]:
    """Submodule on an action-invariant graded subspace given by columns."""
    if basis.shape[1] == 0:
        z = zero_module(m.algebra)
        return z, ModuleMap(z, m, np.zeros((m.dim, 0), dtype=np.int64))
    hom = homogenize_columns(m, m.field.reduce(basis))
    return _module_on_basis(m, hom)


def quotient(m: GradedModule,
             sub_basis: np.ndarray) -> tuple[GradedModule, ModuleMap]:
    """Quotient by the homogeneous submodule spanned by the given columns."""
    ff = m.field
    if sub_basis.shape[0] != m.dim:
        raise ValueError("submodule basis has wrong ambient dimension")
    if sub_basis.shape[1] == 0:
        q = GradedModule(m.algebra, m.weights, dict(m.action))
        return q, ModuleMap(m, q, ff.eye(m.dim))
    basis = homogenize_columns(m, ff.reduce(sub_basis))
    # invariance check
    for g in m.algebra.generators():
        img = ff.matmul(m.action[g], basis)
        if ff.solve_matrix(basis, img) is None:
            raise ValueError(f"submodule not closed under {g}")
    k = basis.shape[1]
    # complete with standard basis vectors (homogeneous) to a full basis
    cols = [basis]
    chosen: list[int] = []
    cur_rank = k
    full = basis
    for j in range(m.dim):
        e = np.zeros((m.dim, 1), dtype=np.int64)
        e[j, 0] = 1
        cand = np.hstack([full, e])
        if ff.rank(cand) > cur_rank:
            full = cand
            cur_rank += 1
            chosen.append(j)
    inv = ff.inv_matrix(full)
    assert inv is not None
    proj = inv[k:, :]  # coordinates on the complementary standard vectors
    weights = tuple(m.weights[j] for j in chosen)
    action = {}
    for g in m.algebra.generators():
        # action on representatives e_j, read off in quotient coordinates
        reps = np.zeros((m.dim, len(chosen)), dtype=np.int64)
        for t, j in enumerate(chosen):
            reps[j, t] = 1
        action[g] = ff.matmul(proj, ff.matmul(m.action[g], reps))
    q = GradedModule(m.algebra, weights, action)
    return q, ModuleMap(m, q, proj)


# ---------------------------------------------------------------------------
# radical / socle / top


@lru_cache(maxsize=None)
def _sl2_radical_operators(p: int) -> tuple:
    """Homogeneous PBW expressions spanning the radical of restricted sl2.

    Returns a tuple of (i, j, k, coeff-vector-index) descriptions packed as
    arrays: each element is a list of (coeff, i, j, k) monomial terms for
    F^i H^j E^k; every element annihilates all simple modules.
    """
    from . import constructions  # local import to avoid a cycle at load time

    ff = _field_cache(p)
    monos = [(i, j, k) for i in range(p) for j in range(p) for k in range(p)]
    # stack the representations of all simples: rows = one matrix entry each
    blocks = []
    simples = [constructions.simple_hat(p, r) for r in range(p)]
    for s in simples:
        E, F, H = s.action["E"], s.action["F"], s.action["H"]
        cols = []
        for (i, j, k) in monos:
            op = ff.matmul(ff.matpow(F, i),
                           ff.matmul(ff.matpow(H, j), ff.matpow(E, k)))
            cols.append(op.reshape(-1))
        blocks.append(np.stack(cols, axis=1))
    system = np.vstack(blocks)
    kernel = ff.kernel_basis(system)
    # homogenize by PBW-monomial weight (k - i) and collect terms
    out = []
    seen_spans: dict[int, list[np.ndarray]] = {}
    for c in range(kernel.shape[1]):
        vec = kernel[:, c]
        by_wt: dict[int, np.ndarray] = {}
        for t, (i, j, k) in enumerate(monos):
            if vec[t]:
                comp = by_wt.setdefault(k - i, np.zeros(len(monos),
                                                        dtype=np.int64))
                comp[t] = vec[t]
        for wt, comp in by_wt.items():
            seen_spans.setdefault(wt, []).append(comp)
    for wt in sorted(seen_spans):
        block = np.stack(seen_spans[wt], axis=1)
        reduced = ff.column_space_basis(block)
        for c in range(reduced.shape[1]):
            terms = [(int(reduced[t, c]), *monos[t])
                     for t in range(len(monos)) if reduced[t, c]]
            out.append(tuple(terms))
    return tuple(out)


def _radical_operator_matrices(m: GradedModule) -> list[np.ndarray]:
    """Matrices of a homogeneous spanning set of J(A) acting on m."""
    ff = m.field
    if m.algebra.kind == "borel":
        return [m.action[g] for g in m.algebra.generators()]
    ops = []
    E, F, H = m.action["E"], m.action["F"], m.action["H"]
    Fp = [ff.matpow(F, i) for i in range(m.algebra.p)]
    Hp = [ff.matpow(H, j) for j in range(m.algebra.p)]
    Ep = [ff.matpow(E, k) for k in range(m.algebra.p)]
    for terms in _sl2_radical_operators(m.algebra.p):
        op = np.zeros((m.dim, m.dim), dtype=np.int64)
        for coeff, i, j, k in terms:
            op = (op + coeff * ff.matmul(Fp[i], ff.matmul(Hp[j], Ep[k]))) % ff.p
        ops.append(op)
    return ops


def radical(m: GradedModule) -> tuple[GradedModule, ModuleMap]:
    """J(A)·m with its inclusion."""
    if m.dim == 0:
        z = zero_module(m.algebra)
        return z, ModuleMap(z, m, np.zeros((0, 0), dtype=np.int64))
    ops = _radical_operator_matrices(m)
    if not ops:
        z = zero_module(m.algebra)
        return z, ModuleMap(z, m, np.zeros((m.dim, 0), dtype=np.int64))
    images = np.hstack([op for op in ops])
    return submodule_from_subspace(m, images)


def socle(m: GradedModule) -> tuple[GradedModule, ModuleMap]:
    """Joint kernel of the radical operators, with inclusion."""
    if m.dim == 0:
        z = zero_module(m.algebra)
        return z, ModuleMap(z, m, np.zeros((0, 0), dtype=np.int64))
    ops = _radical_operator_matrices(m)
    if not ops:
        return _module_on_basis(m, m.field.eye(m.dim))
    stacked = np.vstack(ops)
    kernel = m.field.kernel_basis(stacked)
    return submodule_from_subspace(m, kernel)


def top(m: GradedModule) -> tuple[GradedModule, ModuleMap]:
    """m / rad(m) with its projection."""
    _, incl = radical(m)
    return quotient(m, incl.matrix)


# ---------------------------------------------------------------------------
# Hom, isomorphism, decomposition


def hom_space(m: GradedModule, n: GradedModule) -> list[np.ndarray]:
    """Basis of degree-0 intertwiners m -> n, as (dim n x dim m) matrices."""
    if not m.algebra.same_ring(n.algebra):
        raise ValueError("hom_space requires a common algebra")
    ff = m.field
    # unknowns: entries (i, j) with matching weights
    slots = [(i, j) for i in range(n.dim) for j in range(m.dim)
             if n.weights[i] == m.weights[j]]
    if not slots:
        return []
    pos = {s: t for t, s in enumerate(slots)}
    rows = []
    for g in m.algebra.generators():
        A, B = n.action[g], m.action[g]
        # (A phi - phi B)[i, j] = 0
        for i in range(n.dim):
            for j in range(m.dim):
                row = np.zeros(len(slots), dtype=np.int64)
                nonzero = False
                for k in range(n.dim):
                    if A[i, k] and (k, j) in pos:
                        row[pos[(k, j)]] = (row[pos[(k, j)]] + A[i, k]) % ff.p
                        nonzero = True
                for k in range(m.dim):
                    if B[k, j] and (i, k) in pos:
                        row[pos[(i, k)]] = (row[pos[(i, k)]] - B[k, j]) % ff.p
                        nonzero = True
                if nonzero:
                    rows.append(row)
    if rows:
        kernel = ff.kernel_basis(np.stack(rows, axis=0))
    else:
        kernel = ff.eye(len(slots))
    basis = []
    for c in range(kernel.shape[1]):
        mat = np.zeros((n.dim, m.dim), dtype=np.int64)
        for t, (i, j) in enumerate(slots):
            mat[i, j] = kernel[t, c]
        basis.append(mat)
    return basis


def _combo(ff: PrimeField, basis: list[np.ndarray],
           coeffs) -> np.ndarray:
    out = np.zeros_like(basis[0])
    for c, b in zip(coeffs, basis):
        out = (out + int(c) * b) % ff.p
    return out


def is_isomorphic(m: GradedModule, n: GradedModule,
                  seed: int = 0) -> np.ndarray | None:
    """Invertible intertwiner m -> n, or None (certified at these dims).

    Certification: graded dimensions differ, or no invertible combination of
    the Hom basis exists — decided exhaustively when the search space is
    small, otherwise by 64 seeded random draws followed by exhaustive
    fallback.
    """
    if not m.algebra.same_ring(n.algebra):
        return None
    if m.dim != n.dim:
        return None
    if sorted(m.weights) != sorted(n.weights):
        return None
    if m.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    ff = m.field
    basis = hom_space(m, n)
    if not basis:
        return None
    k = len(basis)
    p = ff.p
    if p ** k <= 20000:
        for coeffs in np.ndindex(*([p] * k)):
            phi = _combo(ff, basis, coeffs)
            if ff.inv_matrix(phi) is not None:
                return phi
        return None
    rng = np.random.default_rng(seed)
    for _ in range(64):
        coeffs = rng.integers(0, p, size=k)
        phi = _combo(ff, basis, coeffs)
        if ff.inv_matrix(phi) is not None:
            return phi
    for coeffs in np.ndindex(*([p] * k)):  # deterministic fallback
        phi = _combo(ff, basis, coeffs)
        if ff.inv_matrix(phi) is not None:
            return phi
    return None


def _fitting_split(m: GradedModule, psi: np.ndarray
                   ) -> tuple[np.ndarray, np.ndarray] | None:
    """Split m along ker(psi^dim) + im(psi^dim) when both are proper."""
    ff = m.field
    power = ff.matpow(psi, m.dim)
    kernel = ff.kernel_basis(power)
    if kernel.shape[1] in (0, m.dim):
        return None
    image = ff.column_space_basis(power)
    return kernel, image


def decompose(m: GradedModule, seed: int = 0
              ) -> list[tuple[GradedModule, int]]:
    """Indecomposable direct summands with multiplicities (Fitting splits)."""
    pieces = _decompose_rec(m, seed)
    grouped: list[tuple[GradedModule, int]] = []
    for piece in pieces:
        for t, (rep, mult) in enumerate(grouped):
            if is_isomorphic(piece, rep, seed) is not None:
                grouped[t] = (rep, mult + 1)
                break
        else:
            grouped.append((piece, 1))
    return grouped


def _endo_candidates(m: GradedModule, basis: list[np.ndarray],
                     seed: int) -> list[np.ndarray]:
    ff = m.field
    cands = list(basis)
    for i in range(len(basis)):
        for j in range(len(basis)):
            if i != j:
                cands.append(ff.matmul(basis[i], basis[j]))
    p = ff.p
    k = len(basis)
    if p ** k <= 2000:
        for coeffs in np.ndindex(*([p] * k)):
            cands.append(_combo(ff, basis, coeffs))
    else:
        rng = np.random.default_rng(seed)
        for _ in range(64):
            cands.append(_combo(ff, basis, rng.integers(0, p, size=k)))
    return cands


def _decompose_rec(m: GradedModule, seed: int) -> list[GradedModule]:
    if m.dim == 0:
        return []
    # cheap first split: weight-degree blocks are always direct summands
    by_deg = degree_decompose(m)
    if len(by_deg) > 1:
        return [piece for d in sorted(by_deg)
                for piece in _decompose_rec(by_deg[d], seed)]
    ff = m.field
    basis = hom_space(m, m)
    if len(basis) == 1:
        return [m]
    for phi in _endo_candidates(m, basis, seed):
        for c in range(ff.p):
            psi = (phi - c * ff.eye(m.dim)) % ff.p
            split = _fitting_split(m, psi)
            if split is not None:
                kernel, image = split
                sub_k, _ = submodule_from_subspace(m, kernel)
                sub_i, _ = submodule_from_subspace(m, image)
                return _decompose_rec(sub_k, seed) + _decompose_rec(sub_i, seed)
    # no split found: certify local endomorphism ring on the candidates
    for phi in basis:
        ok = False
        for c in range(ff.p):
            psi = (phi - c * ff.eye(m.dim)) % ff.p
            if not np.any(ff.matpow(psi, m.dim)):
                ok = True
                break
        if not ok:
            raise RuntimeError(
                "endomorphism without F_p eigenvalue: module may only "
                "decompose over an extension field")
    return [m]
