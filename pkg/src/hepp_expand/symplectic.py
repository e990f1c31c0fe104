"""R-linear operators on C^d split into linear and antilinear parts.

An R-linear map T acts as z -> M_L z + M_A conj(z).  Storing the
antilinear part by the matrix of z -> M_A conj(z) makes the antilinear
adjoint a plain transpose, which keeps all the adjoint identities
one-line matrix facts.

The module provides the Banach-algebra operations (composition,
adjoint, norm), the symplectomorphism predicate with its defect report,
and the reduction T = u e^{c rho} of a symplectomorphism into a unitary,
a conjugation and a non-negative squeezing spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError


class RLinearMap:
    """An R-linear operator on C^d as a (linear, antilinear) matrix pair."""

    __slots__ = ("dim", "linear", "antilinear")

    def __init__(self, linear, antilinear=None):
        linear = np.asarray(linear, dtype=complex)
        if antilinear is None:
            antilinear = np.zeros_like(linear)
        antilinear = np.asarray(antilinear, dtype=complex)
        if linear.shape != antilinear.shape or linear.ndim != 2 or linear.shape[0] != linear.shape[1]:
            raise ValueError("linear and antilinear parts must be equal square matrices")
        self.dim = linear.shape[0]
        self.linear = linear
        self.antilinear = antilinear

    @classmethod
    def identity(cls, dim: int) -> "RLinearMap":
        return cls(np.eye(dim))

    @classmethod
    def from_antilinear(cls, antilinear) -> "RLinearMap":
        antilinear = np.asarray(antilinear, dtype=complex)
        return cls(np.zeros_like(antilinear), antilinear)

    def apply(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return self.linear @ z + self.antilinear @ np.conj(z)

    __call__ = apply

    def compose(self, other: "RLinearMap") -> "RLinearMap":
        """self after other; antilinear factors conjugate what they pass over."""
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dim {self.dim} vs {other.dim}")
        lin = self.linear @ other.linear + self.antilinear @ np.conj(other.antilinear)
        anti = self.linear @ other.antilinear + self.antilinear @ np.conj(other.linear)
        return RLinearMap(lin, anti)

    def __matmul__(self, other):
        return self.compose(other)

    def adjoint(self) -> "RLinearMap":
        """L* + A*: conjugate transpose of the linear part, plain transpose
        of the antilinear matrix."""
        return RLinearMap(self.linear.conj().T, self.antilinear.T)

    def inverse(self) -> "RLinearMap":
        """Inverse valid for symplectomorphisms: L* - A*."""
        return RLinearMap(self.linear.conj().T, -self.antilinear.T)

    def __add__(self, other):
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dim {self.dim} vs {other.dim}")
        return RLinearMap(self.linear + other.linear, self.antilinear + other.antilinear)

    def __sub__(self, other):
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dim {self.dim} vs {other.dim}")
        return RLinearMap(self.linear - other.linear, self.antilinear - other.antilinear)

    def scale(self, c: complex) -> "RLinearMap":
        """Composition with the scalar map z -> c z from the left."""
        return RLinearMap(c * self.linear, c * self.antilinear)

    def norm_x(self) -> float:
        """Banach-algebra norm: operator norm of L plus HS norm of A."""
        return float(np.linalg.norm(self.linear, 2) + np.linalg.norm(self.antilinear, "fro"))

    def distance(self, other: "RLinearMap") -> float:
        return (self - other).norm_x()

    def is_symplectomorphism(self, tol: float = 1e-10) -> "SymplecticityReport":
        return is_symplectomorphism(self, tol)

    def __repr__(self):
        return f"RLinearMap(dim={self.dim})"


@dataclass
class SymplecticityReport:
    """Defects of the two relations L*L - A*A = I and L*A = A*L."""

    ok: bool
    gram_defect: float
    cross_defect: float
    tol: float

    def __bool__(self):
        return self.ok


def compose(s: RLinearMap, t: RLinearMap) -> RLinearMap:
    return s.compose(t)


def adjoint(t: RLinearMap) -> RLinearMap:
    return t.adjoint()


def is_symplectomorphism(t: RLinearMap, tol: float = 1e-10) -> SymplecticityReport:
    """Check L*L - A*A = I and L*A = A*L in operator norm."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    ml, ma = t.linear, t.antilinear
    gram = ml.conj().T @ ml - ma.T @ np.conj(ma) - np.eye(t.dim)
    cross = ml.conj().T @ ma - ma.T @ np.conj(ml)
    gram_defect = float(np.linalg.norm(gram, 2))
    cross_defect = float(np.linalg.norm(cross, 2))
    ok = gram_defect <= tol and cross_defect <= tol
    return SymplecticityReport(ok, gram_defect, cross_defect, tol)


class SymplectoDecomposition:
    """A symplectomorphism reduced to u e^{c rho}.

    `unitary` is the polar unitary of the linear part, `conj_basis` holds
    the orthonormal fixed vectors of the conjugation c as columns, and
    `rho_eigs` the non-negative squeezing parameters in that basis.
    """

    __slots__ = ("dim", "unitary", "conj_basis", "rho_eigs")

    def __init__(self, unitary, conj_basis, rho_eigs):
        self.unitary = np.asarray(unitary, dtype=complex)
        self.conj_basis = np.asarray(conj_basis, dtype=complex)
        self.rho_eigs = np.asarray(rho_eigs, dtype=float)
        self.dim = self.unitary.shape[0]

    def conjugation_matrix(self) -> np.ndarray:
        """Antilinear matrix of c: z -> E E^T conj(z) for basis columns E."""
        e = self.conj_basis
        return e @ e.T

    def reconstruct(self) -> RLinearMap:
        return compose(RLinearMap(self.unitary), exp_antilinear(self.conj_basis, self.rho_eigs))


def exp_antilinear(conj_basis, rho_eigs) -> RLinearMap:
    """e^{c rho} = cosh(rho) + c sinh(rho) for rho diagonal in the
    conjugation's fixed basis."""
    e = np.asarray(conj_basis, dtype=complex)
    rho = np.asarray(rho_eigs, dtype=float)
    if np.any(rho < 0):
        raise ValueError("rho eigenvalues must be non-negative")
    lin = (e * np.cosh(rho)) @ e.conj().T
    anti = (e * np.sinh(rho)) @ e.T
    return RLinearMap(lin, anti)


def _fixed_basis_of_antilinear(f_mat: np.ndarray):
    """Eigen-decompose a self-adjoint antilinear map z -> F conj(z).

    Realified, the map is the symmetric matrix [[X, Y], [Y, -X]] with
    F = X + iY; its spectrum comes in +/- pairs and the positive
    eigenvectors give a C-orthonormal basis with f(e_j) = lam_j e_j,
    lam_j >= 0.
    Returns (basis columns, lam values) sorted by descending lam.
    """
    k = f_mat.shape[0]
    x, y = f_mat.real, f_mat.imag
    r = np.block([[x, y], [y, -x]])
    w, v = np.linalg.eigh((r + r.T) / 2.0)
    order = np.argsort(w)[::-1][:k]
    vecs = v[:, order]
    basis = vecs[:k, :] + 1j * vecs[k:, :]
    lam = np.clip(w[order], 0.0, None)
    return basis, lam


def decompose(t: RLinearMap, tol: float = 1e-8, group_rtol: float = 1e-9,
              zero_tol: float = 1e-12) -> SymplectoDecomposition:
    """Reduce a symplectomorphism to u e^{c rho}.

    Polar-decompose L = u|L|; then u* T = |L| + A' with A' self-adjoint
    antilinear and commuting with |L|.  Within each eigenvalue group of
    |L| (relative tolerance `group_rtol`) the antilinear part is reduced
    on its own; groups with negligible antilinear norm keep rho = 0 and
    any orthonormal basis.
    """
    report = is_symplectomorphism(t, tol)
    if not report.ok:
        raise ValueError(
            f"input is not a symplectomorphism within tol={tol}: "
            f"defects ({report.gram_defect:.3e}, {report.cross_defect:.3e})"
        )
    d = t.dim
    w, sig, vh = np.linalg.svd(t.linear)
    u = w @ vh
    v = vh.conj().T  # columns: eigenbasis of |L| with eigenvalues sig
    a_prime = u.conj().T @ t.antilinear

    basis_cols = []
    rho_vals = []
    start = 0
    while start < d:
        stop = start + 1
        while stop < d and abs(sig[stop] - sig[start]) <= group_rtol * sig[start]:
            stop += 1
        p = v[:, start:stop]
        a_sub = p.conj().T @ a_prime @ np.conj(p)
        if np.linalg.norm(a_sub, 2) <= zero_tol:
            basis_cols.append(p)
            rho_vals.extend([0.0] * (stop - start))
        else:
            f_basis, lam = _fixed_basis_of_antilinear((a_sub + a_sub.T) / 2.0)
            basis_cols.append(p @ f_basis)
            # arccosh of mu evaluated through lam = sinh(rho): exact for
            # mu^2 - lam^2 = 1 and stable when mu is close to 1.
            rho_vals.extend(np.log(np.sqrt(1.0 + lam**2) + lam).tolist())
        start = stop
    basis = np.concatenate(basis_cols, axis=1)
    return SymplectoDecomposition(u, basis, np.array(rho_vals))


def random_symplectomorphism(rng: np.random.Generator, dim: int,
                             rho_scale: float = 0.7) -> RLinearMap:
    """Draw u e^{c rho} from Haar-ish unitaries and random conjugation data."""
    u = _random_unitary(rng, dim)
    e = _random_unitary(rng, dim)
    rho = rho_scale * rng.random(dim)
    return compose(RLinearMap(u), exp_antilinear(e, rho))


def _random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))
