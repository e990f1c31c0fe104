"""Truncated bosonic Fock space over C^d as a brute-force oracle.

The space keeps every symmetric sector up to a cutoff N_max and shares
the occupation bases of :mod:`hepp_expand.sectors`, so quantized
matrices here and symbol coefficients elsewhere never disagree about
normalization.  Operators are stored as one dense matrix over the
truncated direct sum with sector block views.

Quantization of a plain monomial conj(z)^m z^n is the normally ordered
ladder product eps^((|m|+|n|)/2) prod a_i^dag^{m_i} prod a_i^{n_i};
a slow reference route through explicit symmetrizers validates this
fast path on tiny sectors (see ``wick_quantize_slow``).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import expm

from . import sectors as sec
from .errors import DimensionMismatchError, LeakageError
from .flow import QuadraticHamiltonian, integrate_u_alpha
from .symbols import PolySymbol, preset_symbol, squeezing_hamiltonian_symbol

_EPS_DEFAULT = 0.5


class FockSpace:
    """Sectors 0..n_max over C^dim with semiclassical scale epsilon."""

    def __init__(self, dim: int, n_max: int, epsilon: float = _EPS_DEFAULT):
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        self.dim = dim
        self.n_max = n_max
        self.epsilon = float(epsilon)
        self.sector_dims = [sec.sector_dim(dim, n) for n in range(n_max + 1)]
        self.offsets = np.concatenate([[0], np.cumsum(self.sector_dims)])
        self.total_dim = int(self.offsets[-1])
        self._ladder_cache = {}

    def sector_slice(self, n: int) -> slice:
        return slice(int(self.offsets[n]), int(self.offsets[n + 1]))

    def span_slice(self, n_top: int) -> slice:
        """States of all sectors 0..n_top."""
        return slice(0, int(self.offsets[n_top + 1]))

    def number_values(self) -> np.ndarray:
        """Particle number per basis state (unscaled)."""
        out = np.empty(self.total_dim)
        for n in range(self.n_max + 1):
            out[self.sector_slice(n)] = n
        return out

    def ladder_product(self, m_occ, n_occ) -> np.ndarray:
        """Dense matrix of prod_i a_i^dag^{m_i} prod_i a_i^{n_i}
        (no epsilon factor) on the truncated space."""
        key = (tuple(m_occ), tuple(n_occ))
        if key in self._ladder_cache:
            return self._ladder_cache[key]
        p, q = sum(key[1]), sum(key[0])
        out = np.zeros((self.total_dim, self.total_dim), dtype=complex)
        for n_in in range(p, self.n_max + 1):
            n_out = n_in - p + q
            if n_out > self.n_max:
                continue
            blk = np.eye(self.sector_dims[n_in], dtype=complex)
            cur = n_in
            for i, reps in enumerate(key[1]):
                for _ in range(int(reps)):
                    blk = sec.annihilators(self.dim, cur)[i] @ blk
                    cur -= 1
            for i, reps in enumerate(key[0]):
                for _ in range(int(reps)):
                    blk = sec.creators(self.dim, cur)[i] @ blk
                    cur += 1
            out[self.sector_slice(n_out), self.sector_slice(n_in)] = blk
        out.setflags(write=False)
        self._ladder_cache[key] = out
        return out

    def random_state(self, rng: np.random.Generator, n_top: int) -> np.ndarray:
        """Normalized random vector supported on sectors 0..n_top."""
        d_low = int(self.offsets[n_top + 1])
        psi = np.zeros(self.total_dim, dtype=complex)
        psi[:d_low] = rng.standard_normal(d_low) + 1j * rng.standard_normal(d_low)
        return psi / np.linalg.norm(psi)

    def __repr__(self):
        return f"FockSpace(dim={self.dim}, n_max={self.n_max}, epsilon={self.epsilon})"


class FockOperator:
    """Dense operator on a truncated Fock space with sector block views."""

    __slots__ = ("space", "matrix")

    def __init__(self, space: FockSpace, matrix: np.ndarray):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (space.total_dim, space.total_dim):
            raise ValueError(f"matrix shape {matrix.shape} does not fit the space")
        self.space = space
        self.matrix = matrix

    @classmethod
    def identity(cls, space: FockSpace) -> "FockOperator":
        return cls(space, np.eye(space.total_dim, dtype=complex))

    @classmethod
    def zeros(cls, space: FockSpace) -> "FockOperator":
        return cls(space, np.zeros((space.total_dim, space.total_dim), dtype=complex))

    def _check(self, other):
        if self.space is not other.space and (
                self.space.dim != other.space.dim
                or self.space.n_max != other.space.n_max
                or self.space.epsilon != other.space.epsilon):
            raise DimensionMismatchError("operators live on different Fock spaces")

    def block(self, n_out: int, n_in: int) -> np.ndarray:
        return self.matrix[self.space.sector_slice(n_out), self.space.sector_slice(n_in)]

    def dagger(self) -> "FockOperator":
        return FockOperator(self.space, self.matrix.conj().T)

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        self._check(other)
        return FockOperator(self.space, self.matrix @ other.matrix)

    def __add__(self, other):
        self._check(other)
        return FockOperator(self.space, self.matrix + other.matrix)

    def __sub__(self, other):
        self._check(other)
        return FockOperator(self.space, self.matrix - other.matrix)

    def __mul__(self, c):
        return FockOperator(self.space, c * self.matrix)

    __rmul__ = __mul__

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))

    def trusted_block_diff(self, other: "FockOperator", n_trust: int) -> float:
        """Max |entry difference| over rows and columns in sectors <= n_trust."""
        self._check(other)
        s = self.space.span_slice(n_trust)
        return float(np.abs(self.matrix[s, s] - other.matrix[s, s]).max())

    def restricted_norm(self, n_top: int) -> float:
        s = self.space.span_slice(n_top)
        return float(np.linalg.norm(self.matrix[s, s], 2))

    def __repr__(self):
        return f"FockOperator(dim={self.space.dim}, n_max={self.space.n_max})"


def wick_quantize(b: PolySymbol, space: FockSpace) -> FockOperator:
    """Quantize a polynomial on the truncated space.

    Per (p, q)-monomial the sector-n block carries the factor
    sqrt(n!(n+q-p)!)/(n-p)! eps^((p+q)/2) on the symmetrized extension
    of the coefficient; in ladder form that is the normally ordered
    product written above, summed over plain-coefficient entries.
    """
    if b.dim != space.dim:
        raise DimensionMismatchError(f"dim {b.dim} vs {space.dim}")
    deg = b.degree()
    if deg > space.n_max:
        raise ValueError(f"symbol degree {deg} exceeds the sector cutoff {space.n_max}")
    out = np.zeros((space.total_dim, space.total_dim), dtype=complex)
    for (p, q), coeffs in b._coeffs().items():
        scale = space.epsilon ** ((p + q) / 2.0)
        occ_q = sec.occupations(space.dim, q)
        occ_p = sec.occupations(space.dim, p)
        for mi in range(coeffs.shape[0]):
            for ni in range(coeffs.shape[1]):
                val = coeffs[mi, ni]
                if val != 0:
                    out += (val * scale) * space.ladder_product(occ_q[mi], occ_p[ni])
    return FockOperator(space, out)


def wick_quantize_slow(b: PolySymbol, space: FockSpace) -> FockOperator:
    """Reference quantization through explicit symmetrizer embeddings.

    Builds each block as the stated combinatorial factor times
    (coefficient vee identity) in full tensor coordinates.  Exponential
    in n_max; intended only to validate the fast path on tiny spaces.
    """
    if b.dim != space.dim:
        raise DimensionMismatchError(f"dim {b.dim} vs {space.dim}")
    dim = space.dim
    out = np.zeros((space.total_dim, space.total_dim), dtype=complex)
    for (p, q), coeff in b.terms.items():
        tensor = sec.onb_embedding(dim, q) @ coeff @ sec.onb_embedding(dim, p).conj().T
        scale = space.epsilon ** ((p + q) / 2.0)
        for n_in in range(p, space.n_max + 1):
            n_out = n_in - p + q
            if n_out > space.n_max:
                continue
            factor = math.sqrt(math.factorial(n_in) * math.factorial(n_out)) \
                / math.factorial(n_in - p)
            big = np.kron(tensor, np.eye(dim ** (n_in - p)))
            blk = sec.onb_embedding(dim, n_out).conj().T @ big @ sec.onb_embedding(dim, n_in)
            out[space.sector_slice(n_out), space.sector_slice(n_in)] += factor * scale * blk
    return FockOperator(space, out)


def field_and_weyl(xi, space: FockSpace):
    """Field operator of sqrt(2) Re<z, xi> and its Weyl exponential."""
    xi = np.asarray(xi, dtype=complex)
    phi = wick_quantize(preset_symbol("field", space.dim, xi=xi), space)
    weyl = FockOperator(space, expm(1j * phi.matrix))
    return phi, weyl


def gamma_u(u, space: FockSpace, tol: float = 1e-10) -> FockOperator:
    """Second quantization: block-diagonal sector-wise tensor powers of u."""
    u = np.asarray(u, dtype=complex)
    if np.linalg.norm(u.conj().T @ u - np.eye(space.dim), 2) > tol:
        raise ValueError("gamma_u requires a unitary within 1e-10")
    out = np.zeros((space.total_dim, space.total_dim), dtype=complex)
    cols = [u[:, i] for i in range(space.dim)]
    for n in range(space.n_max + 1):
        blk = np.empty((space.sector_dims[n], space.sector_dims[n]), dtype=complex)
        for k, kappa in enumerate(sec.occupations(space.dim, n)):
            vec = np.ones(1, dtype=complex)
            cur = 0
            norm = 1.0
            for i, reps in enumerate(kappa):
                for _ in range(int(reps)):
                    vec = sec.creation_field(cols[i], cur) @ vec
                    cur += 1
                norm *= math.factorial(int(reps))
            blk[:, k] = vec / math.sqrt(norm)
        out[space.sector_slice(n), space.sector_slice(n)] = blk
    return FockOperator(space, out)


class QuantumFlowResult:
    """Quantum flow on the truncated space at requested sample times."""

    def __init__(self, space, times, operators, leakage_trace, trusted_n, leak_threshold):
        self.space = space
        self.times = times
        self._ops = operators
        self.leakage_trace = leakage_trace
        self.trusted_n = trusted_n
        self.leak_threshold = leak_threshold

    def u_at(self, t: float) -> FockOperator:
        for ts, op in zip(self.times, self._ops):
            if abs(ts - t) <= 1e-9 * max(1.0, abs(t)):
                return op
        raise ValueError(f"t={t} was not among the stored sample times {self.times}")

    def max_leakage(self) -> float:
        return float(self.leakage_trace.max()) if len(self.leakage_trace) else 0.0

    def unitarity_defect(self, t: float, n_top: int = None) -> float:
        """Norm of U*U - I restricted to sectors <= n_top."""
        u = self.u_at(t).matrix
        gram = u.conj().T @ u - np.eye(self.space.total_dim)
        if n_top is None:
            n_top = self.space.n_max - 2
        s = self.space.span_slice(n_top)
        return float(np.linalg.norm(gram[s, s], 2))


def quantum_flow(hamiltonian: QuadraticHamiltonian, space: FockSpace,
                 t_end: float = None, dt: float = None, store=None,
                 trusted_n: int = None, leak_threshold: float = 1e-6) -> QuantumFlowResult:
    """Integrate the quantum flow i eps dU/dt = Q_t^Wick U with RK4.

    Runs the beta-only generator (rotated by u_alpha when alpha is
    present) and composes with the second-quantized unitary path at the
    stored times.  Leakage of trusted-sector columns into the top two
    sectors is recorded each step and aborts the run above the
    threshold.
    """
    if hamiltonian.dim != space.dim:
        raise DimensionMismatchError(f"dim {hamiltonian.dim} vs {space.dim}")
    t0 = hamiltonian.t_start
    if t_end is None:
        t_end = hamiltonian.t_end
    if dt is None:
        dt = hamiltonian.dt
    if store is None:
        store = [t_end]
    n_steps = max(1, int(round((t_end - t0) / dt)))
    grid = t0 + (t_end - t0) / n_steps * np.arange(n_steps + 1)
    store_idx = {}
    for ts in store:
        k = int(np.argmin(np.abs(grid - ts)))
        if abs(grid[k] - ts) > 1e-9 * max(1.0, abs(ts)):
            raise ValueError(f"store time {ts} is not on the integration grid")
        store_idx[k] = ts

    has_alpha = not hamiltonian.alpha.is_zero()
    u_path = integrate_u_alpha(hamiltonian) if has_alpha else None

    dim = space.dim
    pair_ops = {}
    for kappa in sec.occupations(dim, 2):
        pair_ops[kappa] = space.ladder_product((0,) * dim, kappa)
    pair_list = []
    for a in range(dim):
        for b in range(dim):
            kap = [0] * dim
            kap[a] += 1
            kap[b] += 1
            pair_list.append((a, b, pair_ops[tuple(kap)]))

    def generator(t):
        beta = hamiltonian.beta_matrix(t)
        if has_alpha:
            u = u_path.at(t)
            beta = u.conj().T @ beta @ np.conj(u)
        g = np.zeros((space.total_dim, space.total_dim), dtype=complex)
        for a, b, pab in pair_list:
            if beta[a, b] != 0:
                g += np.conj(beta[a, b]) * pab
        return -0.5 * (g - g.conj().T)

    if trusted_n is None:
        trusted_n = space.n_max - 4
    trusted_n = max(0, min(trusted_n, space.n_max))
    top_lo = int(space.offsets[max(space.n_max - 1, 0)])
    trusted_hi = int(space.offsets[trusted_n + 1])

    u_mat = np.eye(space.total_dim, dtype=complex)
    leak = np.zeros(n_steps + 1)
    stored = {}
    if 0 in store_idx:
        stored[0] = u_mat.copy()
    for k in range(n_steps):
        t = grid[k]
        h = grid[k + 1] - t
        k1 = generator(t) @ u_mat
        k2 = generator(t + h / 2) @ (u_mat + h / 2 * k1)
        k3 = generator(t + h / 2) @ (u_mat + h / 2 * k2)
        k4 = generator(t + h) @ (u_mat + h * k3)
        u_mat = u_mat + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        leak[k + 1] = np.linalg.norm(u_mat[top_lo:, :trusted_hi], 2)
        if leak[k + 1] > leak_threshold:
            raise LeakageError(
                f"top-sector leakage {leak[k + 1]:.3e} exceeded {leak_threshold:.1e} "
                f"at t={grid[k + 1]:.4f}; raise n_max or shorten the time span",
                diagnostics={"t": float(grid[k + 1]), "leakage": float(leak[k + 1]),
                             "n_max": space.n_max, "trusted_n": trusted_n})
        if k + 1 in store_idx:
            stored[k + 1] = u_mat.copy()

    times, ops = [], []
    for k in sorted(stored):
        t = grid[k]
        full = stored[k]
        if has_alpha:
            full = gamma_u(u_path.at(t), space).matrix @ full
        times.append(float(t))
        ops.append(FockOperator(space, full))
    return QuantumFlowResult(space, times, ops, leak, trusted_n, leak_threshold)


def conjugate_observable(qflow: QuantumFlowResult, b: PolySymbol,
                         space: FockSpace, t: float) -> FockOperator:
    """U(0,t) b^Wick U(t,0) on the truncated space."""
    u = qflow.u_at(t)
    return u.dagger() @ wick_quantize(b, space) @ u


# ---------------------------------------------------------------------------
# inequality checks

def _beta_norm(beta_mat) -> float:
    # 2-vector norm of beta equals the HS norm of its coordinate matrix
    return float(np.linalg.norm(beta_mat, "fro"))


def check_estimates(beta_mat, space: FockSpace, ks=(1, 2), n_samples: int = 100,
                    rng: np.random.Generator = None) -> dict:
    """Sample the generator bound and the commutator form bound.

    Ratios are LHS over the stated RHS; every row should stay <= 1.
    With beta = 0 both sides vanish and rows are marked vacuous.
    """
    rng = rng or np.random.default_rng(0)
    beta_mat = np.asarray(beta_mat, dtype=complex)
    bnorm = _beta_norm(beta_mat)
    eps = space.epsilon
    report = {"n_samples": n_samples, "beta_norm": bnorm, "vacuous": bnorm == 0.0}
    if bnorm == 0.0:
        report["max_ratio_generator"] = 0.0
        report["max_ratio_commutator"] = {int(k): 0.0 for k in ks}
        return report
    q_op = wick_quantize(squeezing_hamiltonian_symbol(beta_mat), space).matrix / eps
    nvec = space.number_values() / eps + 1.0
    gen_max = 0.0
    comm_max = {int(k): 0.0 for k in ks}
    for _ in range(n_samples):
        psi = space.random_state(rng, space.n_max - 2)
        qpsi = q_op @ psi
        gen_max = max(gen_max, np.linalg.norm(qpsi)
                      / (1.5 * bnorm * np.linalg.norm(nvec * psi)))
        for k in ks:
            wpsi = (nvec ** k) * psi
            lhs = abs(2.0 * np.imag(np.vdot(qpsi, wpsi)))
            rhs = (3.0 ** k) * math.sqrt(2.0) * bnorm * np.real(np.vdot(psi, wpsi))
            comm_max[int(k)] = max(comm_max[int(k)], lhs / rhs)
    report["max_ratio_generator"] = float(gen_max)
    report["max_ratio_commutator"] = {k: float(v) for k, v in comm_max.items()}
    return report


def check_growth_bound(beta_mat, space: FockSpace, t: float, ks=(1, 2),
                       n_samples: int = 50, rng: np.random.Generator = None,
                       dt: float = 1e-3, slack: float = 0.1) -> dict:
    """Soft growth check for the time-independent flow:
    ||(N/eps+1)^{k/2} U psi|| <= e^{3^k sqrt(2) ||beta|| t} ||(N/eps+1)^{k/2} psi||
    with a truncation slack on the right-hand side."""
    rng = rng or np.random.default_rng(0)
    beta_mat = np.asarray(beta_mat, dtype=complex)
    bnorm = _beta_norm(beta_mat)
    h = QuadraticHamiltonian(space.dim, beta=beta_mat, t_end=t, dt=dt)
    qf = quantum_flow(h, space, store=[t], leak_threshold=np.inf)
    u = qf.u_at(t).matrix
    nvec = space.number_values() / space.epsilon + 1.0
    out = {"t": t, "beta_norm": bnorm, "slack": slack}
    ratios = {}
    for k in ks:
        bound = math.exp((3.0 ** k) * math.sqrt(2.0) * bnorm * t) * (1.0 + slack)
        worst = 0.0
        for _ in range(n_samples):
            psi = space.random_state(rng, space.n_max // 2)
            lhs = np.linalg.norm((nvec ** (k / 2.0)) * (u @ psi))
            rhs = bound * np.linalg.norm((nvec ** (k / 2.0)) * psi)
            worst = max(worst, lhs / rhs)
        ratios[int(k)] = float(worst)
    out["max_ratio"] = ratios
    return out
