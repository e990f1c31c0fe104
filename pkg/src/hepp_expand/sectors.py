"""Occupation-number machinery for the symmetric sectors of C^d.

Every module in this package expresses sector data (polynomial
coefficients, Fock blocks, second quantizations) in one fixed
orthonormal basis per n-particle sector: the occupation-number vectors
|n_1 ... n_d>, enumerated in the lexicographic order of their
non-decreasing index tuples.  Keeping a single convention here removes
all symmetrization-factor ambiguity between the symbol algebra and the
truncated Fock oracle.

Ladder matrices carry no epsilon factor; the semiclassical scale is
applied at quantization time.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def sector_dim(dim: int, n: int) -> int:
    """Dimension of the n-particle sector over C^dim: C(n+d-1, d-1)."""
    return math.comb(n + dim - 1, dim - 1)


@lru_cache(maxsize=None)
def occupations(dim: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Occupation vectors of the n-particle sector, in canonical order.

    The order is the lexicographic order of the associated non-decreasing
    index tuples (i_1 <= ... <= i_n), as produced by
    itertools.combinations_with_replacement.
    """
    out = []
    for combo in itertools.combinations_with_replacement(range(dim), n):
        occ = [0] * dim
        for i in combo:
            occ[i] += 1
        out.append(tuple(occ))
    return tuple(out)


@lru_cache(maxsize=None)
def occupation_index(dim: int, n: int) -> dict:
    """Map occupation vector -> position in the canonical enumeration."""
    return {occ: k for k, occ in enumerate(occupations(dim, n))}


@lru_cache(maxsize=None)
def occupation_array(dim: int, n: int) -> np.ndarray:
    """Occupations as an integer array of shape (sector_dim, dim)."""
    return _frozen(np.array(occupations(dim, n), dtype=np.int64).reshape(sector_dim(dim, n), dim))


def occ_to_indices(occ) -> tuple[int, ...]:
    """Occupation vector -> non-decreasing 1-based index tuple."""
    out = []
    for i, k in enumerate(occ):
        out.extend([i + 1] * int(k))
    return tuple(out)


def indices_to_occ(indices, dim: int) -> tuple[int, ...]:
    """Non-decreasing 1-based index tuple -> occupation vector."""
    occ = [0] * dim
    for i in indices:
        if not 1 <= i <= dim:
            raise ValueError(f"index {i} out of range 1..{dim}")
        occ[i - 1] += 1
    return tuple(occ)


@lru_cache(maxsize=None)
def occ_factorials(dim: int, n: int) -> np.ndarray:
    """Array of kappa! = prod_i kappa_i! over the sector, canonical order."""
    occ = occupation_array(dim, n)
    vals = np.ones(occ.shape[0])
    for i in range(dim):
        for row in range(occ.shape[0]):
            vals[row] *= math.factorial(int(occ[row, i]))
    return _frozen(vals)


@lru_cache(maxsize=None)
def coeff_scale(dim: int, n: int) -> np.ndarray:
    """sqrt(n!/kappa!) per basis vector: converts operator coefficients
    to plain monomial coefficients of z^kappa (and back by division)."""
    return _frozen(np.sqrt(math.factorial(n) / occ_factorials(dim, n)))


@lru_cache(maxsize=None)
def annihilators(dim: int, n: int) -> tuple[np.ndarray, ...]:
    """Mode annihilation matrices a_i mapping sector n -> n-1.

    a_i|kappa> = sqrt(kappa_i) |kappa - delta_i>, no epsilon factor.
    """
    if n == 0:
        return tuple(np.zeros((0, 1), dtype=complex) for _ in range(dim))
    occ = occupations(dim, n)
    idx_lo = occupation_index(dim, n - 1)
    mats = []
    for i in range(dim):
        m = np.zeros((sector_dim(dim, n - 1), sector_dim(dim, n)), dtype=complex)
        for col, kappa in enumerate(occ):
            if kappa[i] > 0:
                low = list(kappa)
                low[i] -= 1
                m[idx_lo[tuple(low)], col] = math.sqrt(kappa[i])
        mats.append(_frozen(m))
    return tuple(mats)


@lru_cache(maxsize=None)
def creators(dim: int, n: int) -> tuple[np.ndarray, ...]:
    """Mode creation matrices a_i^dag mapping sector n -> n+1."""
    return tuple(_frozen(a.conj().T.copy()) for a in annihilators(dim, n + 1))


def creation_field(z: np.ndarray, n: int) -> np.ndarray:
    """Sum_i z_i a_i^dag as a matrix from sector n to n+1."""
    dim = len(z)
    ups = creators(dim, n)
    return sum(z[i] * ups[i] for i in range(dim))


def annihilation_field(z: np.ndarray, n: int) -> np.ndarray:
    """Sum_i conj(z_i) a_i as a matrix from sector n to n-1."""
    dim = len(z)
    downs = annihilators(dim, n)
    return sum(np.conj(z[i]) * downs[i] for i in range(dim))


def sym_power_coords(z: np.ndarray, n: int) -> np.ndarray:
    """Coordinates of z^(vee n) in the occupation basis:
    <kappa|z^(vee n)> = sqrt(n!/kappa!) z^kappa."""
    dim = len(z)
    occ = occupation_array(dim, n)
    mono = np.prod(np.asarray(z, dtype=complex)[None, :] ** occ, axis=1)
    return coeff_scale(dim, n) * mono


@lru_cache(maxsize=None)
def raise_map(dim: int, n: int, i: int) -> np.ndarray:
    """Index array: position of kappa + delta_i in sector n+1, per kappa."""
    idx_hi = occupation_index(dim, n + 1)
    out = np.empty(sector_dim(dim, n), dtype=np.int64)
    for k, kappa in enumerate(occupations(dim, n)):
        hi = list(kappa)
        hi[i] += 1
        out[k] = idx_hi[tuple(hi)]
    return _frozen(out)


@lru_cache(maxsize=None)
def lower_map(dim: int, n: int, i: int):
    """(src, dst, weight) arrays realizing d/dz_i on degree-n monomial
    coefficients: coefficient at kappa moves to kappa - delta_i with
    weight kappa_i."""
    occ = occupation_array(dim, n)
    idx_lo = occupation_index(dim, n - 1) if n > 0 else {}
    src, dst, wgt = [], [], []
    for k, kappa in enumerate(occupations(dim, n)):
        if kappa[i] > 0:
            lo = list(kappa)
            lo[i] -= 1
            src.append(k)
            dst.append(idx_lo[tuple(lo)])
            wgt.append(float(kappa[i]))
    return (
        _frozen(np.array(src, dtype=np.int64)),
        _frozen(np.array(dst, dtype=np.int64)),
        _frozen(np.array(wgt)),
    )


@lru_cache(maxsize=None)
def merge_map(dim: int, n1: int, n2: int) -> np.ndarray:
    """Index grid: position of kappa1 + kappa2 in sector n1+n2."""
    idx_hi = occupation_index(dim, n1 + n2)
    occ1 = occupations(dim, n1)
    occ2 = occupations(dim, n2)
    out = np.empty((len(occ1), len(occ2)), dtype=np.int64)
    for a, ka in enumerate(occ1):
        for b, kb in enumerate(occ2):
            out[a, b] = idx_hi[tuple(x + y for x, y in zip(ka, kb))]
    return _frozen(out)


@lru_cache(maxsize=None)
def sym_mult_map(dim: int, n1: int, n2: int) -> np.ndarray:
    """The vee-multiplication tensor M: sector n1 (x) sector n2 -> sector n1+n2.

    (psi vee chi)_kappa = sum_{k1+k2=kappa} M[kappa, k1, k2] psi_k1 chi_k2
    with M = sqrt(n1! n2! / (n1+n2)!) * sqrt(kappa!/(k1! k2!)).
    """
    d1, d2 = sector_dim(dim, n1), sector_dim(dim, n2)
    out = np.zeros((sector_dim(dim, n1 + n2), d1, d2))
    f1 = occ_factorials(dim, n1)
    f2 = occ_factorials(dim, n2)
    fh = occ_factorials(dim, n1 + n2)
    mm = merge_map(dim, n1, n2)
    pref = math.sqrt(math.factorial(n1) * math.factorial(n2) / math.factorial(n1 + n2))
    for a in range(d1):
        for b in range(d2):
            k = mm[a, b]
            out[k, a, b] = pref * math.sqrt(fh[k] / (f1[a] * f2[b]))
    return _frozen(out)


def sym_mult(psi: np.ndarray, n1: int, chi: np.ndarray, n2: int, dim: int) -> np.ndarray:
    """Symmetric tensor product psi vee chi in sector coordinates."""
    return np.einsum("kab,a,b->k", sym_mult_map(dim, n1, n2), psi, chi)


@lru_cache(maxsize=None)
def onb_embedding(dim: int, n: int) -> np.ndarray:
    """Isometry from the sector basis into full tensor coordinates.

    Column kappa holds the d^n coordinates of |kappa>; the entry at a
    tensor position with content kappa is sqrt(kappa!/n!).  Intended for
    small n only (reference checks against explicit symmetrizers).
    """
    cols = sector_dim(dim, n)
    v = np.zeros((dim**n, cols))
    fk = occ_factorials(dim, n)
    idx = occupation_index(dim, n)
    for pos, word in enumerate(itertools.product(range(dim), repeat=n)):
        occ = [0] * dim
        for i in word:
            occ[i] += 1
        k = idx[tuple(occ)]
        v[pos, k] = math.sqrt(fk[k] / math.factorial(n))
    return _frozen(v)
