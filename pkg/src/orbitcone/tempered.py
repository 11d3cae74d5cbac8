"""Weak-containment test for L^2(G/H) via split-abelian weight data.

The criterion is a family of linear inequalities: 2 rho_h(Y) <= rho_g(Y)
for every Y in a maximal split abelian subspace a of h, where rho is the
trace of ad(Y) over its positive eigenspaces.  Both sides are piecewise
linear over the fan cut out by the weight hyperplanes, so the global
check reduces to finitely many candidate rays: the +- solutions of every
(dim-1)-subset of hyperplanes of full rank, taken after quotienting the
common lineality space.  Catalog weights are integers, and the ray check
runs in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DimensionTooLarge, NonCommuting, UnsupportedAlgebra
from .induction import SubalgebraEmbedding
from .liealg import MatrixLieAlgebra, ad_matrix

COMMUTE_TOL = 1e-9
INT_SNAP_TOL = 1e-6
MAX_SPLIT_DIM = 4


@dataclass(frozen=True, eq=False)
class WeightSystem:
    """Weights of a commuting real-diagonalizable action.

    Each entry is (functional on the acting space as a coordinate tuple,
    multiplicity).  Nonzero weights come in +- pairs with equal
    multiplicities.
    """

    ambient_dim: int
    weights: tuple
    integral: bool


@dataclass(frozen=True, eq=False)
class BKCertificate:
    verdict: str  # "Contained" | "Violated" | "Unknown"
    witness: dict | None
    rays_checked: int
    weight_tables: dict


def split_abelian(E: SubalgebraEmbedding) -> np.ndarray:
    """Basis rows of a maximal split abelian subspace of the sub algebra,
    verified to act real-diagonalizably."""
    h = E.sub
    rows = np.asarray(h.split_coords, dtype=float)
    if rows.size == 0 or rows.shape[0] == 0:
        return np.zeros((0, h.dim))
    rng = np.random.default_rng(7)
    combo = rng.standard_normal(rows.shape[0]) @ rows
    a = ad_matrix(h, combo)
    vals, vecs = np.linalg.eig(a)
    scale = max(1.0, np.max(np.abs(vals)))
    if np.max(np.abs(vals.imag)) > COMMUTE_TOL * scale:
        raise UnsupportedAlgebra(f"split part of {h.name} has complex spectrum")
    recon = (vecs * vals) @ np.linalg.inv(vecs)
    if np.max(np.abs(recon - a)) > COMMUTE_TOL * scale:
        raise UnsupportedAlgebra(f"split part of {h.name} is not diagonalizable")
    return rows


def weights_of_action(mats, module_dim: int | None = None) -> WeightSystem:
    """Simultaneous eigen-decomposition of commuting real matrices.

    Returns the joint weights with multiplicities; eigenvalues within
    1e-6 of an integer are snapped so downstream checks can run exactly.
    An empty acting space carries the single zero weight with the module's
    full multiplicity.
    """
    mats = [np.asarray(m, dtype=float) for m in mats]
    k = len(mats)
    if k == 0:
        if module_dim is None:
            raise UnsupportedAlgebra("empty action needs an explicit module_dim")
        return WeightSystem(0, (((), module_dim),), True)
    n = mats[0].shape[0]
    scale = max(1.0, *(np.max(np.abs(m)) for m in mats))
    for i in range(k):
        for j in range(i + 1, k):
            if np.max(np.abs(mats[i] @ mats[j] - mats[j] @ mats[i])) > COMMUTE_TOL * scale * scale:
                raise NonCommuting(f"action matrices {i} and {j} do not commute")
    rng = np.random.default_rng(11)
    lam_rows: list[np.ndarray] = []
    mults: list[int] = []
    for _ in range(8):
        combo = rng.standard_normal(k)
        t = np.tensordot(combo, np.stack(mats), axes=1)
        vals = np.linalg.eigvals(t)
        if np.max(np.abs(vals.imag)) > 1e-7 * scale:
            continue
        # eigenvalues are reliable even when LAPACK's eigenvectors for a
        # degenerate spectrum are not; recover each eigenspace as an SVD
        # null space and read the generators' scalars off the restriction
        centers: list[float] = []
        for v in np.sort(vals.real):
            if not centers or abs(v - centers[-1]) > 1e-6 * scale:
                centers.append(float(v))
        lam_rows, mults = [], []
        ok = True
        for c in centers:
            _, s, vt = np.linalg.svd(t - c * np.eye(n))
            gap = 1e-7 * max(scale, 1.0)
            mult = int(np.sum(s <= gap))
            if mult == 0:
                ok = False
                break
            V = vt[n - mult :].T  # orthonormal eigenspace basis
            row = np.empty(k)
            for i in range(k):
                B = mats[i] @ V
                row[i] = float(np.trace(V.T @ B) / mult)
                # a generic combo separates weights, so each generator
                # must act as a scalar on the whole eigenspace
                if np.linalg.norm(B - row[i] * V) > 1e-6 * scale * np.sqrt(mult):
                    ok = False
                    break
            if not ok:
                break
            lam_rows.append(row)
            mults.append(mult)
        if ok and sum(mults) == n:
            break
    else:
        raise NonCommuting("no generic combination separated the weights")
    lam = np.repeat(np.array(lam_rows), mults, axis=0)
    snapped = np.round(lam)
    integral = bool(np.max(np.abs(lam - snapped)) <= INT_SNAP_TOL)
    if integral:
        lam = snapped
    groups: dict[tuple, int] = {}
    for col in range(n):
        if integral:
            key = tuple(int(x) for x in lam[col])
        else:
            key = tuple(round(float(x), 9) for x in lam[col])
        groups[key] = groups.get(key, 0) + 1
    weights = tuple(sorted(groups.items()))
    total = sum(m for _, m in weights)
    if total != n:
        raise NonCommuting("weight multiplicities do not sum to the module dim")
    for w, m in weights:
        if any(abs(x) > 0 for x in w):
            neg = tuple(-x for x in w)
            if groups.get(neg) != m:
                raise NonCommuting(f"weight {w} lacks its negative partner")
    return WeightSystem(ambient_dim=k, weights=weights, integral=integral)


def rho(W: WeightSystem, y) -> float:
    """Sum of positive weight values, with multiplicity: the trace of the
    action over its positive part at y."""
    y = np.asarray(y, dtype=float)
    out = 0.0
    for w, m in W.weights:
        v = float(np.dot(w, y))
        if v > 0:
            out += m * v
    return out


def rho_batch(W: WeightSystem, ys: np.ndarray) -> np.ndarray:
    ys = np.asarray(ys, dtype=float)
    if not W.weights:
        return np.zeros(len(ys))
    wmat = np.array([w for w, _ in W.weights], dtype=float)
    mult = np.array([m for _, m in W.weights], dtype=float)
    vals = ys @ wmat.T
    return np.maximum(vals, 0.0) @ mult


# ---------------------------------------------------------------------------
# exact rational linear algebra on weight rows


def _frac_rows(rows):
    return [[Fraction(int(x)) for x in r] for r in rows]


def _rref(rows):
    """Reduced row echelon form over the rationals; returns (rref rows,
    pivot column list)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _rational_nullspace(rows, ncols):
    """Basis of {y : row . y = 0 for all rows}, exact."""
    rref, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in zip(rref, pivots):
            v[pc] = -r[fc]
        basis.append(v)
    return basis


def _evaluate_exact(weights, y):
    """(2 rho_sub, rho_ambient) pieces are assembled by the caller; this
    returns sum(mult * max(w.y, 0)) exactly."""
    out = Fraction(0)
    for w, m in weights:
        v = sum(Fraction(int(a)) * b for a, b in zip(w, y))
        if v > 0:
            out += m * v
    return out


def bk_weak_containment(E: SubalgebraEmbedding) -> BKCertificate:
    """Exact global test of 2 rho_h <= rho_g over the split abelian part.

    Candidate extreme rays are the +- null directions of every
    (d-1)-subset of weight hyperplanes of full rank, d the dimension of
    the split part modulo the common lineality of all weights; a linear
    function on a polyhedral cone attains its sign extremes at such rays.
    """
    a_rows = split_abelian(E)
    k = a_rows.shape[0]
    tables: dict = {"split_dim": k}
    if k == 0:
        return BKCertificate("Contained", None, 0, tables)
    if k > MAX_SPLIT_DIM:
        raise DimensionTooLarge(f"split part has dim {k} > {MAX_SPLIT_DIM}")
    mats_h = [ad_matrix(E.sub, y) for y in a_rows]
    mats_g = [ad_matrix(E.ambient, y @ E.inclusion) for y in a_rows]
    W_h = weights_of_action(mats_h)
    W_g = weights_of_action(mats_g)
    tables["sub_weights"] = [[list(w), m] for w, m in W_h.weights]
    tables["ambient_weights"] = [[list(w), m] for w, m in W_g.weights]
    if not (W_h.integral and W_g.integral):
        return _bk_float(W_h, W_g, k, tables)
    nonzero = {w for w, _ in W_h.weights + W_g.weights if any(x != 0 for x in w)}
    if not nonzero:
        return BKCertificate("Contained", None, 0, tables)
    # hyperplanes up to sign
    planes = sorted({w if w > tuple(-x for x in w) else tuple(-x for x in w)
                     for w in nonzero})
    full_rref, full_piv = _rref(_frac_rows(planes))
    ell = k - len(full_piv)  # common lineality dimension
    d = k - ell
    rays = []
    if d == 1:
        # quotient is a line: any direction not killed by all weights
        for v in _rational_nullspace([[Fraction(0)] * k], k):
            if any(sum(Fraction(int(a)) * b for a, b in zip(w, v)) != 0 for w in planes):
                rays.append(v)
                break
    else:
        for subset in combinations(planes, d - 1):
            rows = _frac_rows(subset)
            rref, piv = _rref(rows)
            if len(piv) != d - 1:
                continue
            space = _rational_nullspace(rows, k)
            # dim(space) = k - (d-1) = ell + 1: one ray modulo lineality
            for v in space:
                if any(
                    sum(Fraction(int(a)) * b for a, b in zip(w, v)) != 0
                    for w in planes
                ):
                    rays.append(v)
                    break
    worst = None
    checked = 0
    for v in rays:
        for sign in (1, -1):
            y = [sign * x for x in v]
            checked += 1
            lhs = 2 * _evaluate_exact(W_h.weights, y)
            rhs = _evaluate_exact(W_g.weights, y)
            if lhs > rhs and (worst is None or lhs - rhs > worst[0]):
                worst = (lhs - rhs, y, lhs, rhs)
    tables["rays"] = checked
    if worst is not None:
        gap, y, lhs, rhs = worst
        norm = float(np.linalg.norm([float(x) for x in y]))
        yl = [float(x) / norm for x in y]
        return BKCertificate(
            "Violated",
            {
                "ray": yl,
                "two_rho_sub": float(lhs) / norm,
                "rho_ambient": float(rhs) / norm,
            },
            checked,
            tables,
        )
    return BKCertificate("Contained", None, checked, tables)


def _bk_float(W_h, W_g, k, tables) -> BKCertificate:
    """Float fallback for non-integral weights (not hit by the catalog)."""
    nonzero = [np.array(w, dtype=float) for w, _ in W_h.weights + W_g.weights
               if any(abs(x) > 0 for x in w)]
    if not nonzero:
        return BKCertificate("Contained", None, 0, tables)
    planes = np.unique(
        np.array([w / np.linalg.norm(w) * np.sign(next(x for x in w if x != 0) or 1)
                  for w in nonzero]).round(9), axis=0
    )
    full_rank = np.linalg.matrix_rank(planes, tol=1e-9)
    d = full_rank
    rays = []
    if d == 1:
        rays = [planes[0]]
    else:
        for subset in combinations(range(len(planes)), d - 1):
            sub = planes[list(subset)]
            if np.linalg.matrix_rank(sub, tol=1e-9) != d - 1:
                continue
            u, s, vt = np.linalg.svd(np.vstack([sub, np.zeros((1, k))]))
            v = vt[-1]
            if np.max(np.abs(planes @ v)) > 1e-9:
                rays.append(v)
    worst = None
    checked = 0
    for v in rays:
        for sign in (1.0, -1.0):
            y = sign * v
            checked += 1
            lhs, rhs = 2 * rho(W_h, y), rho(W_g, y)
            if lhs > rhs + 1e-9 and (worst is None or lhs - rhs > worst[0]):
                worst = (lhs - rhs, y, lhs, rhs)
    tables["rays"] = checked
    if worst is not None:
        _, y, lhs, rhs = worst
        return BKCertificate(
            "Violated",
            {"ray": [float(x) for x in y], "two_rho_sub": lhs, "rho_ambient": rhs},
            checked,
            tables,
        )
    return BKCertificate("Contained", None, checked, tables)
