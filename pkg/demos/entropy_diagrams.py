#!/usr/bin/env python3
"""Entropy Venn diagrams for two- and three-party states.

Walks through the textbook reference states: a maximally entangled pair
(negative conditional entropies, mutual information 2), a product state
(everything factorizes), and a classically correlated pair (mutual
information 1, conditionals 0), then spot-checks subadditivity on a few
random mixed states.
"""

import numpy as np

from vncap.qmat import DensityMatrix, random_unitary, tensor
from vncap.entropy import venn2, venn3
from vncap.depolarizing import q_basis


def random_density(rng, dim, dims=None):
    w = rng.random(dim)
    w /= w.sum()
    u = random_unitary(dim, int(rng.integers(0, 2**62)))
    return DensityMatrix(u @ np.diag(w.astype(complex)) @ u.conj().T, dims)


def show(label, venn):
    print(f"{label}:")
    print(f"  S(A)={venn.s_a:+.4f}  S(B)={venn.s_b:+.4f}  S(AB)={venn.s_ab:+.4f}")
    print(
        f"  S(A|B)={venn.cond_a_given_b:+.4f}  "
        f"S(B|A)={venn.cond_b_given_a:+.4f}  S(A:B)={venn.mutual:+.4f}"
    )


bell = q_basis(0.5)[2].projector()
show("maximally entangled pair", venn2(bell, ((0,), (1,))))

rng = np.random.default_rng(0)
rho_a = random_density(rng, 2)
rho_b = random_density(rng, 2)
product = DensityMatrix(tensor(rho_a.matrix, rho_b.matrix), (2, 2))
show("product state", venn2(product, ((0,), (1,))))

classical = np.zeros((4, 4), dtype=complex)
classical[0, 0] = classical[3, 3] = 0.5
show("classically correlated pair", venn2(DensityMatrix(classical, (2, 2)), ((0,), (1,))))

print()
print("three-party regions of a random pure tripartite state")
psi = rng.standard_normal(8) + 1j * rng.standard_normal(8)
psi /= np.linalg.norm(psi)
from vncap.qmat import PureState

venn = venn3(PureState(psi, (2, 2, 2)).projector(), ((0,), (1,), (2,)))
print(f"  S(A|BC)={venn.cond_a:+.4f}  S(B|AC)={venn.cond_b:+.4f}  S(C|AB)={venn.cond_c:+.4f}")
print(f"  S(A:B|C)={venn.mutual_ab:+.4f}  S(A:C|B)={venn.mutual_ac:+.4f}  S(B:C|A)={venn.mutual_bc:+.4f}")
print(f"  center S(A:B:C)={venn.center:+.4f}   (always 0 for a pure overall state)")

print()
print("subadditivity S(AB) <= S(A) + S(B) on random mixed states")
for trial in range(5):
    rho = random_density(rng, 4, (2, 2))
    venn = venn2(rho, ((0,), (1,)))
    slack = venn.s_a + venn.s_b - venn.s_ab
    print(f"  trial {trial}: slack {slack:.6f} (>= 0)")
