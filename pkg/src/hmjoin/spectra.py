"""Main functions, block characteristic polynomials, eigenvalue
classification, and carry-forward multiplicity accounting for joins.

For a block matrix M with diagonal blocks M_i and cross blocks
rho_{ij} E_i E_j^T (host-adjacent factors only), the characteristic
polynomial factors as

    det(xI - M) = prod_i phi_i(x) * det(A~),

where A~ has m x m blocks: the identity on the diagonal and
-rho_{ij} Gamma_i off it, with Gamma_i = E_i^T (xI - M_i)^{-1} E_i the
main-function matrix of factor i. Clearing row-block i by the reduced
common denominator g_i of Gamma_i turns det(A~) into the determinant Phi
of a polynomial matrix (g_i I_m on the diagonal, -rho_{ij} f_i off it,
f_i = g_i Gamma_i), giving the fully exact pipeline

    det(xI - M) = prod_i phi_i * Phi / prod_i g_i^m.

An eigenvalue class of M_i is E-main when its eigenspace is not
orthogonal to the column space of E_i; exactly the roots of g_i are
E-main, so classification is gcd arithmetic, no root finding. Main
classes of multiplicity e are guaranteed multiplicity >= e - m in the
join, non-main classes >= e; reports check the observed multiplicities
against those bounds on the directly computed characteristic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import BlockFactorizationError, CarryForwardError, InvalidParametersError, NonSymmetricInputError, SizeMismatchError
from .exactlinalg import (
    RatFunMatrix,
    charpoly,
    charpoly_with_adjugate,
    mat_is_symmetric,
    mat_mul,
    mat_shape,
    mat_transpose,
    polymatrix_det,
    rational_eigenvalues,
)
from .graphs import UniversalParams, universal_matrix
from .joins import JoinSpec, degree_corrections, hm_join
from .polynomials import (
    Polynomial,
    RationalFunction,
    poly_divexact,
    poly_gcd,
    rational_root_multiplicity,
    squarefree_decomposition,
)


@dataclass(frozen=True)
class MainFunction:
    """Gamma = E^T (xI - M)^{-1} E with cached exact normal forms.

    `denominator` is the monic least common denominator g of the reduced
    entries (g divides the characteristic polynomial, and its roots are
    exactly the E-main eigenvalues when M is symmetric); `numerator` is
    the polynomial matrix f = g * Gamma.
    """

    matrix: RatFunMatrix
    charpoly: Polynomial
    denominator: Polynomial
    numerator: Tuple[Tuple[Polynomial, ...], ...]


@dataclass(frozen=True)
class EigenvalueClass:
    """A set of conjugate eigenvalues sharing multiplicity and mainness.

    `poly` is monic and squarefree; rational classes are linear with the
    root in `rational`. `multiplicity` is the multiplicity in the factor's
    characteristic polynomial.
    """

    poly: Polynomial
    rational: Optional[Fraction]
    multiplicity: int
    is_main: bool


@dataclass(frozen=True)
class CarryForwardRow:
    """Guaranteed vs observed multiplicity of one factor eigenvalue class
    in the join."""

    factor: int
    eigen_class: EigenvalueClass
    guaranteed: int
    observed: int


@dataclass(frozen=True)
class SpectralReport:
    """Everything the block pipeline produces for one join spec."""

    charpoly_direct: Polynomial
    charpoly_block: Polynomial
    factor_charpolys: Tuple[Polynomial, ...]
    phi_polynomial: Polynomial
    gammas: Tuple[MainFunction, ...]
    e_main_flags: Tuple[Tuple[EigenvalueClass, ...], ...]
    carry_forward: Tuple[CarryForwardRow, ...]
    numeric_spectrum: Tuple[Tuple[float, int], ...]


# ---------------------------------------------------------------------------
# main functions


def _bilinear_numerators(m, left, right) -> Tuple[Polynomial, List[List[Polynomial]]]:
    """phi and the polynomial matrix left^T adj(xI - M) right."""
    n = len(m)
    rl, cl = mat_shape(left)
    rr, cr = mat_shape(right)
    if rl != n or rr != n:
        raise SizeMismatchError(f"side matrices must have {n} rows, got {rl} and {rr}")
    phi, bs = charpoly_with_adjugate(m)
    if cl == 0 or cr == 0:
        return phi, [[] for _ in range(cl)]
    lt = mat_transpose(left)
    coeff_layers = []
    for b in bs:
        coeff_layers.append(mat_mul(mat_mul(lt, b), right))
    entries = []
    for a in range(cl):
        row = []
        for b_idx in range(cr):
            coeffs = [Fraction(0)] * n
            for k, layer in enumerate(coeff_layers):
                coeffs[n - 1 - k] = Fraction(layer[a][b_idx])
            row.append(Polynomial(coeffs))
        entries.append(row)
    return phi, entries


def main_function_bilinear(m, u, v) -> MainFunction:
    """V^T (xI - M)^{-1} U with its exact normal forms (charpoly, reduced
    common denominator, cleared numerator matrix)."""
    phi, numerators = _bilinear_numerators(m, v, u)
    matrix = RatFunMatrix([[RationalFunction(p, phi) for p in row] for row in numerators])
    g = matrix.common_denominator
    poly_divexact(phi, g)  # invariant: the reduced common denominator divides phi
    f = tuple(tuple(row) for row in matrix.numerator_matrix(g))
    return MainFunction(matrix=matrix, charpoly=phi, denominator=g, numerator=f)


def gamma(m, e) -> MainFunction:
    """Main-function matrix Gamma = E^T (xI - M)^{-1} E of a square matrix
    M and side matrix E, with exact reduced entries."""
    return main_function_bilinear(m, e, e)


def gamma_bilinear(m, u, v) -> RatFunMatrix:
    """V^T (xI - M)^{-1} U as a matrix of reduced rational functions."""
    return main_function_bilinear(m, u, v).matrix


# ---------------------------------------------------------------------------
# eigenvalue classes


def _eigen_classes(m, phi: Polynomial, g: Polynomial) -> Tuple[EigenvalueClass, ...]:
    """Split phi into monic squarefree classes homogeneous in multiplicity
    and mainness (mainness = dividing g), extracting rational roots."""
    rationals = rational_eigenvalues(m, char=phi)
    classes: List[EigenvalueClass] = []
    for layer, mult in squarefree_decomposition(phi):
        main_part = poly_gcd(layer, g)
        parts = ((main_part, True), (poly_divexact(layer, main_part), False))
        for part, flag in parts:
            if part.degree < 1:
                continue
            remaining = part
            for root, root_mult in rationals:
                if root_mult == mult and part(root) == 0:
                    classes.append(EigenvalueClass(Polynomial.from_roots([root]), root, mult, flag))
                    remaining = poly_divexact(remaining, Polynomial.from_roots([root]))
            if remaining.degree >= 1:
                classes.append(EigenvalueClass(remaining.monic(), None, mult, flag))
    return tuple(sorted(classes, key=_class_sort_key))


def _class_sort_key(c: EigenvalueClass):
    if c.rational is not None:
        return (0, c.rational, c.multiplicity, ())
    return (1, Fraction(0), c.multiplicity, c.poly.coeffs)


def classify_e_main(m, e) -> Tuple[EigenvalueClass, ...]:
    """Classify the eigenvalue classes of a symmetric rational matrix M as
    E-main or not: a class is E-main exactly when it divides the reduced
    common denominator of Gamma."""
    if not mat_is_symmetric(m):
        raise NonSymmetricInputError("classification needs a symmetric matrix")
    mf = gamma(m, e)
    return _eigen_classes(m, mf.charpoly, mf.denominator)


def classify_e_main_numeric(m, e, tol: float = 1e-9) -> List[Tuple[float, int, bool]]:
    """Numeric cross-check oracle: eigendecomposition plus projection norms.
    Returns (eigenvalue, multiplicity, is_main) per numeric cluster. For
    diagnostics and tests only; the exact path is authoritative."""
    if not mat_is_symmetric(m):
        raise NonSymmetricInputError("classification needs a symmetric matrix")
    dense = np.array([[float(x) for x in row] for row in m], dtype=float)
    side = np.array([[float(x) for x in row] for row in e], dtype=float)
    if dense.size == 0:
        return []
    w, vecs = np.linalg.eigh(dense)
    scale = max(1.0, float(np.max(np.abs(w))))
    out = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or abs(w[i] - w[start]) > 1e-8 * scale:
            basis = vecs[:, start:i]
            norm = float(np.linalg.norm(basis.T @ side))
            out.append((float(np.mean(w[start:i])), i - start, norm > tol * scale))
            start = i
    return out


def _numeric_spectrum(matrix) -> Tuple[Tuple[float, int], ...]:
    dense = np.array([[float(x) for x in row] for row in matrix], dtype=float)
    if dense.size == 0:
        return ()
    w = np.linalg.eigvalsh(dense)
    scale = max(1.0, float(np.max(np.abs(w))))
    clusters = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or abs(w[i] - w[start]) > 1e-8 * scale:
            clusters.append((float(np.mean(w[start:i])), i - start))
            start = i
    return tuple(clusters)


# ---------------------------------------------------------------------------
# block pipeline


def _poly_power_multiplicity(target: Polynomial, base: Polynomial) -> int:
    count = 0
    current = target
    while True:
        quot, rem = divmod(current, base)
        if not rem.is_zero:
            return count
        current = quot
        count += 1


def _block_report(spec: JoinSpec, factor_matrices, direct_matrix, off_scale) -> SpectralReport:
    ems = spec.indexing_matrices()
    mfs = [gamma(mat, em) for mat, em in zip(factor_matrices, ems)]
    k, m = spec.k, spec.m
    size = k * m
    zero = Polynomial.zero()
    block = [[zero] * size for _ in range(size)]
    host_adj = spec.host.adjacency_matrix()
    for i in range(k):
        gi = mfs[i].denominator
        fi = mfs[i].numerator
        for a in range(m):
            block[i * m + a][i * m + a] = gi
        for j in range(k):
            if j == i or not host_adj[i][j]:
                continue
            for a in range(m):
                for b in range(m):
                    if not fi[a][b].is_zero:
                        block[i * m + a][j * m + b] = -off_scale * fi[a][b]
    phi_det = polymatrix_det(block)
    numerator = phi_det
    for mf in mfs:
        numerator = numerator * mf.charpoly
    denominator = Polynomial.one()
    for mf in mfs:
        denominator = denominator * mf.denominator ** m
    charpoly_block = poly_divexact(numerator, denominator)
    charpoly_direct = charpoly(direct_matrix)
    if charpoly_block != charpoly_direct:
        raise BlockFactorizationError(
            "block factorization identity violated: "
            f"block path gives {charpoly_block}, direct path gives {charpoly_direct}"
        )
    flags = []
    carry = []
    for i, (mat, mf) in enumerate(zip(factor_matrices, mfs)):
        if not mat_is_symmetric(mat):
            raise NonSymmetricInputError(f"factor matrix {i} is not symmetric")
        classes = _eigen_classes(mat, mf.charpoly, mf.denominator)
        flags.append(classes)
        for cls in classes:
            guaranteed = max(0, cls.multiplicity - m) if cls.is_main else cls.multiplicity
            if cls.rational is not None:
                observed = rational_root_multiplicity(charpoly_direct, cls.rational)
            else:
                observed = _poly_power_multiplicity(charpoly_direct, cls.poly)
            if observed < guaranteed:
                raise CarryForwardError(
                    f"factor {i} class {cls.poly}: observed multiplicity {observed} "
                    f"below the guaranteed bound {guaranteed}"
                )
            carry.append(CarryForwardRow(i, cls, guaranteed, observed))
    return SpectralReport(
        charpoly_direct=charpoly_direct,
        charpoly_block=charpoly_block,
        factor_charpolys=tuple(mf.charpoly for mf in mfs),
        phi_polynomial=phi_det,
        gammas=tuple(mfs),
        e_main_flags=tuple(flags),
        carry_forward=tuple(carry),
        numeric_spectrum=_numeric_spectrum(direct_matrix),
    )


def block_charpoly(spec: JoinSpec) -> SpectralReport:
    """Characteristic polynomial of the join both ways (block factorization
    and direct), plus classification, carry-forward ledger, and a numeric
    diagnostic spectrum. Raises when the two paths disagree."""
    matrices = [g.adjacency_matrix() for g in spec.factors]
    direct = hm_join(spec).adjacency_matrix()
    return _block_report(spec, matrices, direct, 1)


def carry_forward_report(spec: JoinSpec) -> Tuple[CarryForwardRow, ...]:
    """Guaranteed vs observed multiplicities of every factor eigenvalue
    class in the join (adjacency spectra)."""
    return block_charpoly(spec).carry_forward


def universal_block_charpoly(spec: JoinSpec, params: UniversalParams) -> SpectralReport:
    """Block pipeline for the universal matrix U = alpha*A + beta*I + delta*D
    of a join (gamma must be 0). The factor-side matrices are
    M_i = U(G_i) + delta*DC_i with DC_i the cross-degree corrections, and
    the off-diagonal blocks carry the extra factor alpha."""
    if params.gamma != 0:
        raise InvalidParametersError("universal block factorization needs gamma = 0 (the all-ones block couples all factor pairs); use the generalized-join pipeline instead")
    ds, _ = degree_corrections(spec)
    matrices = []
    for g, d in zip(spec.factors, ds):
        base = universal_matrix(g, params)
        for v in range(g.n):
            base[v][v] += params.delta * d[v][v]
        matrices.append(base)
    direct = universal_matrix(hm_join(spec), params)
    return _block_report(spec, matrices, direct, params.alpha)
