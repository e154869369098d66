"""
Evaluating theta3 and its relatives
===================================

theta3(z, tau) is a Gaussian lattice sum. This walk-through evaluates it,
checks its periodicity, and shows the modular transform that swaps a
narrow lattice for a wide one.
"""

import cmath
import math

from thetadft import modular_transform_check, reduce_quasi_period, theta2, theta3, theta4

# The value at the origin for tau = i.
print("theta3(0, i)   =", theta3(0, 1j).real)

# theta4 and theta2 are half-period shifts of theta3.
print("theta4(0, i)   =", theta4(0, 1j).real)
print("theta2(0, i)   =", theta2(0, 1j).real)

# Period 1 in z, and a quasi-period tau with an explicit prefactor.
z, tau = 0.3 + 0.1j, 0.3 + 1.2j
print("period check   :", abs(theta3(z + 1, tau) - theta3(z, tau)))
shifted = theta3(z + 2 * tau, tau)
prefactor = cmath.exp(-1j * math.pi * tau * 4 - 4j * math.pi * z)
print("quasi-period   :", abs(shifted - prefactor * theta3(z, tau)) / abs(shifted))

# Large imaginary parts are folded back into the fundamental cell first.
red = reduce_quasi_period(0.1 + 3 + 2j, 1j)
print("reduction      : z0 =", red.z0, " m =", red.m, " n =", red.n)

# The modular transform relates tau = i t to tau = i / t. Small t makes
# the direct sum slow, so theta3 switches to the transformed side itself.
for t in (0.1, 0.25, 1.0, 4.0):
    r = modular_transform_check(0.4, t)
    print(f"modular t={t:<5} residual {r.residual:.2e}")
