"""Permutations of the field from self-maps of the vector space, and back.

The composite  eta_a . g . rho_v . f  permutes the extension field exactly
when v and a are bases and g permutes F_q^n; this script measures that
equivalence empirically and shows the conjugation isomorphism between the
two map spaces.
"""

import random

from ppf.fields import build_tower
from ppf.linalg import Basis
from ppf.maps import (
    ComponentPerms,
    VectorMap,
    composition_equivalence_check,
    build_trace_composite,
    build_triangular_g,
    compose_field_map,
    compose_corollary_vec,
    monomial_family,
    psi,
    psi_inverse,
)
from ppf.polys import FnTable, monomial

f9 = build_tower(3, n=2)
power = Basis(f9, [1, 3])
dual = power.dual()

# Identity data composes to the identity permutation.
ident = FnTable.identity(f9)
g_id = VectorMap.identity(f9.base, 2)
print("identity composite:", compose_field_map(ident, power.elems, g_id, dual.elems) == ident)

# The equivalence, measured: random data, both directions, no counterexamples.
rng = random.Random(0)
bad = 0
for trial in range(300):
    v = [rng.randrange(9) for _ in range(2)]
    a = [rng.randrange(9) for _ in range(2)]
    g = (VectorMap.random_permutation(f9.base, 2, rng) if trial % 2
         else VectorMap.random_map(f9.base, 2, rng))
    if not composition_equivalence_check(ident, v, a, g):
        bad += 1
print("equivalence counterexamples in 300 random trials:", bad)

# Downward direction: a field permutation induces a vector-space permutation.
frob = monomial(f9, 3).to_table()
vm = compose_corollary_vec(power.elems, frob, dual.elems)
print("x^q conjugates to a permutation of F_3^2:", vm.is_permutation())

# Componentwise and triangular maps always permute (each h_i permutes F_q).
h = monomial(f9.base, 1)
tri = build_triangular_g(
    f9.base, ComponentPerms((h, h), (None, lambda xs: f9.base.mul(xs[0], xs[0]))))
print("triangular map permutes:", tri.is_permutation())

# Symbolic composition: sum_i a_i h_i(Tr(v_i x)) as an explicit polynomial.
h3 = monomial(f9.base, 3)
F = build_trace_composite(monomial(f9, 1), ComponentPerms((h3, h3)), power.elems, dual.elems)
print("symbolic composite:", F, "| permutes:", F.to_table().is_permutation())

# Monomial components reduce the condition to gcd(m1 m2, q-1) = 1.
poly, predicted = monomial_family(monomial(f9, 1), [3, 5], power.elems, dual.elems)
print("monomial family predicted:", predicted,
      "| oracle:", poly.to_table().is_permutation())

# Conjugation g -> rho^-1 . g . rho identifies the two map spaces.
g1 = VectorMap.random_map(f9.base, 2, rng)
g2 = VectorMap.random_map(f9.base, 2, rng)
lhs = psi(power.elems, g1.compose(g2), f9)
rhs = psi(power.elems, g1, f9).compose(psi(power.elems, g2, f9))
print("conjugation preserves composition:", lhs == rhs)
print("conjugation round-trips:", psi_inverse(power.elems, psi(power.elems, g1, f9)) == g1)
