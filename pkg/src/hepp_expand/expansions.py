"""The two semiclassical expansions of an evolved Wick observable.

Both engines expand U(0,t) b^Wick U(t,0) at the symbol level as a
polynomial in the scale parameter.  The integral engine accumulates
nested simplex integrals of the first-order generator lambda^s; the
exponential engine applies the accumulated second-order operator
Lambda^t, whose formal time derivative is lambda^t.  Term k of either
engine carries the weight (eps/2)^k at assembly and lowers the total
degree by exactly 2k, so the series terminates at floor(m/2).
"""

from __future__ import annotations

import math

import numpy as np

from .flow import FlowResult, QuadraticHamiltonian, v_vector
from .symbols import (
    PolySymbol,
    apply_second_order_operator,
    beta_matrix_from_tensor,
    poisson_bracket,
    squeezing_hamiltonian_symbol,
)
from .symplectic import RLinearMap


class ExpansionResult:
    """Ordered expansion terms of one engine run.

    `terms[k]` is the coefficient of (eps/2)^k; `assembled()` sums the
    weighted terms at the stored (or an explicit) epsilon.
    """

    def __init__(self, method, t, epsilon, terms, quad_spec=None):
        self.method = method
        self.t = t
        self.epsilon = epsilon
        self.terms = list(terms)
        self.quad_spec = quad_spec or {}

    def term(self, k: int) -> PolySymbol:
        return self.terms[k]

    @property
    def orders(self):
        return list(range(len(self.terms)))

    def assembled(self, epsilon: float = None) -> PolySymbol:
        eps = self.epsilon if epsilon is None else epsilon
        out = PolySymbol.zero(self.terms[0].dim)
        for k, term in enumerate(self.terms):
            out = out + ((eps / 2.0) ** k) * term
        return out

    def to_report(self, include_symbols: bool = True) -> dict:
        rows = []
        for k, term in enumerate(self.terms):
            row = {"k": k, "norm": term.norm_p()}
            if include_symbols:
                row["symbol"] = term.to_json()
            rows.append(row)
        return {
            "method": self.method,
            "t": self.t,
            "epsilon": self.epsilon,
            "terms": rows,
            "assembled_norm": self.assembled().norm_p(),
            "quad_spec": self.quad_spec,
        }


def _require_base_zero(flow: FlowResult):
    if abs(flow.t_start) > 1e-12:
        raise ValueError("expansion engines require a flow based at t = 0")


def lambda_s(c: PolySymbol, s: float, flow: FlowResult,
             hamiltonian: QuadraticHamiltonian) -> PolySymbol:
    """First-order generator at time s.

    Composes c with the inverse flow, contracts its second derivatives
    against beta_s, and composes back; lowers total degree by 2.
    """
    _require_base_zero(flow)
    g = c.compose_rlinear(flow.phi_inverse_at(s))
    beta = hamiltonian.beta_matrix(s)
    mid = apply_second_order_operator(g, np.zeros_like(beta), beta)
    return mid.compose_rlinear(flow.phi_at(s))


def lambda_s_via_bracket(c: PolySymbol, s: float, flow: FlowResult,
                         hamiltonian: QuadraticHamiltonian) -> PolySymbol:
    """Same generator through its defining order-2 Poisson bracket with
    the full quadratic Hamiltonian (the alpha part drops out of the
    bracket identically)."""
    _require_base_zero(flow)
    g = c.compose_rlinear(flow.phi_inverse_at(s))
    q = squeezing_hamiltonian_symbol(hamiltonian.beta_matrix(s))
    alpha = hamiltonian.alpha_matrix(s)
    if np.any(alpha):
        q = q + PolySymbol(c.dim, {(1, 1): alpha})
    bracket = poisson_bracket(g, q, 2)
    return (-1j * bracket).compose_rlinear(flow.phi_at(s))


def Lambda_t(c: PolySymbol, t: float, flow: FlowResult) -> PolySymbol:
    """Accumulated second-order operator of the flow at grid time t:
    a -2 A*A trace contraction plus both v_t pair contractions."""
    k = flow.grid_index(t)
    a = flow.antilinear[k]
    mixed = -2.0 * (a.T @ np.conj(a))
    vmat = beta_matrix_from_tensor(v_vector(flow, t))
    return apply_second_order_operator(c, mixed, vmat)


def Lambda_of_map(c: PolySymbol, t_map: RLinearMap) -> PolySymbol:
    """The analogous operator attached to a fixed symplectomorphism
    T = L + A, built from -2 A A* and the pair tensor of L A*."""
    a = t_map.antilinear
    mixed = -2.0 * (a @ a.conj().T)
    vmat = t_map.linear @ a.T
    return apply_second_order_operator(c, mixed, (vmat + vmat.T) / 2.0)


def dyson_expand(b: PolySymbol, t: float, flow: FlowResult,
                 hamiltonian: QuadraticHamiltonian, epsilon: float,
                 nodes: int = 16, max_order: int = None) -> ExpansionResult:
    """Integral-formula engine.

    Term k integrates the k-fold generator composition
    lambda^{s_k} ... lambda^{s_1} over the nested region
    {0 <= s_k <= ... <= s_1 <= t} produced by the recursion (each new
    time is bounded by the previous one).  The region is mapped onto the
    unit cube by s_{j+1} = s_j u_{j+1} with the Jacobian accumulated
    analytically, one Gauss-Legendre rule per axis; the generator
    recursion is evaluated lazily along the node tree.
    """
    _require_base_zero(flow)
    if nodes < 1:
        raise ValueError("quadrature needs at least one node per axis")
    m = b.degree()
    kmax = m // 2 if max_order is None else min(max_order, m // 2)
    term0 = b.compose_rlinear(flow.phi(t))
    terms = [term0] + [PolySymbol.zero(b.dim) for _ in range(kmax)]
    if kmax >= 1:
        x, w = np.polynomial.legendre.leggauss(nodes)
        xs = (x + 1.0) / 2.0
        ws = w / 2.0

        def walk(c, level, bound, weight):
            for u_node, w_node in zip(xs, ws):
                s = bound * u_node
                ck = lambda_s(c, s, flow, hamiltonian)
                wk = weight * bound * w_node
                terms[level + 1] = terms[level + 1] + wk * ck
                if level + 1 < kmax and not ck.is_zero():
                    walk(ck, level + 1, s, wk)

        walk(term0, 0, t, 1.0)
    return ExpansionResult("dyson", t, epsilon, terms,
                           quad_spec={"rule": "gauss-legendre-duffy", "nodes": nodes})


def exp_expand(b: PolySymbol, t: float, flow: FlowResult, epsilon: float,
               max_order: int = None) -> ExpansionResult:
    """Exponential-formula engine: term k is (1/k!) Lambda_t^k (b o phi)."""
    m = b.degree()
    kmax = m // 2 if max_order is None else min(max_order, m // 2)
    term0 = b.compose_rlinear(flow.phi(t))
    terms = [term0]
    power = term0
    for k in range(1, kmax + 1):
        power = Lambda_t(power, t, flow)
        terms.append((1.0 / math.factorial(k)) * power)
    return ExpansionResult("exponential", t, epsilon, terms)


def check_lambda_is_derivative_of_Lambda(flow: FlowResult,
                                         hamiltonian: QuadraticHamiltonian,
                                         t: float, c: PolySymbol,
                                         h: float = None) -> dict:
    """Finite-difference check that d/ds Lambda^s = lambda^s.

    Uses a central difference of Lambda over grid times (one-sided at
    the left end, where Lambda vanishes); the defect is reported in the
    polynomial norm and should shrink like h^2 (h at the left end).
    """
    if h is None:
        h = float(flow.times[1] - flow.times[0])
    if t + h > flow.times[-1] + 1e-12:
        raise ValueError("h reaches beyond the flow grid")
    lam = lambda_s(c, t, flow, hamiltonian)
    at_left = abs(t - flow.times[0]) < 1e-12
    if at_left:
        diff = (1.0 / h) * Lambda_t(c, t + h, flow)
    else:
        if t - h < flow.times[0] - 1e-12:
            raise ValueError("h reaches beyond the flow grid")
        diff = (1.0 / (2.0 * h)) * (Lambda_t(c, t + h, flow) - Lambda_t(c, t - h, flow))
    defect = diff.distance_p(lam)
    return {"t": t, "h": h, "one_sided": at_left, "defect": defect,
            "lambda_norm": lam.norm_p()}
