"""The two expansions of an evolved quartic observable, term by term.

One engine accumulates nested time integrals of a first-order
degree-lowering generator; the other applies the exponential of a
second-order operator built from the flow's antilinear part.  They are
computed along entirely different routes and must agree order by order,
here on the quartic number observable under single-mode squeezing and
then on a two-mode Hamiltonian with a time-dependent coefficient.
"""

import numpy as np

from hepp_expand import (
    QuadraticHamiltonian,
    dyson_expand,
    exp_expand,
    integrate_flow,
    preset_symbol,
    random_symbol,
)

print("=== one mode, Q = Im(z^2), b = conj(z)^2 z^2 ===")
ham = QuadraticHamiltonian(1, beta=np.array([[1.0]]), t_end=0.8, dt=1e-3)
flow = integrate_flow(ham)
b = preset_symbol("n-squared", 1)

integral = dyson_expand(b, 0.8, flow, ham, epsilon=0.5, nodes=12)
exponential = exp_expand(b, 0.8, flow, epsilon=0.5)

print("order    integral-engine norm    exponential norm    distance")
for k in range(len(exponential.terms)):
    print(f"  {k}      {integral.terms[k].norm_p():16.8f}"
          f"    {exponential.terms[k].norm_p():16.8f}"
          f"    {integral.terms[k].distance_p(exponential.terms[k]):.2e}")
print(f"assembled at eps=0.5: norm {exponential.assembled().norm_p():.8f}")

print("\n=== two modes, time-dependent coefficient, random degree-4 symbol ===")
rng = np.random.Generator(np.random.Philox(7))
m0 = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
m1 = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
m0, m1 = 0.4 * (m0 + m0.T), 0.4 * (m1 + m1.T)
ham2 = QuadraticHamiltonian(2, beta=lambda t: m0 + np.sin(3 * t) * m1,
                            t_end=0.7, dt=1e-3)
flow2 = integrate_flow(ham2)
b2 = random_symbol(rng, 2, 4)

integral2 = dyson_expand(b2, 0.7, flow2, ham2, epsilon=0.5, nodes=10)
exponential2 = exp_expand(b2, 0.7, flow2, epsilon=0.5)
for k in range(len(exponential2.terms)):
    print(f"order {k}: distance {integral2.terms[k].distance_p(exponential2.terms[k]):.2e}"
          f"  (norm {exponential2.terms[k].norm_p():.3f})")
