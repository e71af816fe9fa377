#!/usr/bin/env python3
"""Walkthrough: dual mass distribution over a sampled graph.

Samples a graph, extracts an optimal fractional vertex cover from the
bipartite solver, lets vertices spread their mass over incident edges,
adds the quadratic edge-to-edge transfers, and audits conservation.
Finishes with the per-edge certificates that drive the floor proofs.
"""

import numpy as np

from matchgap import (audit_masses, max_weight_matching_bipartite,
                      per_edge_certificate, sample, unweighted_scheme,
                      weighted_scheme, weighted_kernel_constant)
from matchgap.gallery import gen_pendant_star, gen_random_point

inst = gen_random_point(3, 0.7, seed=5, kind="bipartite", weighted=False)
g = sample(inst, seed=1, index=0)
print(f"instance: {inst.num_edges} potential edges, realized: {g.edge_indices.tolist()}")

matching, nu, cover = max_weight_matching_bipartite(g)
print(f"matching value nu = {nu},   cover norm = {cover.norm}  (equal by duality)")
print(f"cover y = {np.round(cover.y, 4).tolist()}")

print()
print("vertex mass spreads evenly over realized incident edges:")
t = weighted_scheme(g, cover)
print(f"  edge masses   = {np.round(t.edge_mass, 4).tolist()}")
print(f"  total mass    = {t.total:.6f}  (conserved: equals nu)")
print(f"  audit ok      = {audit_masses(t, cover, nu).ok}")

print()
print("quadratic transfers tax high-probability edges deterministically:")
t2 = unweighted_scheme(g, cover)
print(f"  edge masses   = {np.round(t2.edge_mass, 4).tolist()}")
print(f"  audit ok      = {audit_masses(t2, cover, nu).ok}")

print()
print("=" * 70)
print("Per-edge certificates on the pendant star (the weighted worst case)")
print("=" * 70)
const = weighted_kernel_constant().closed_form
small = gen_pendant_star(8, 0.05)  # 9 edges: exact support enumeration is cheap
mass = per_edge_certificate(small, 0, "exact", "weighted", bound="mass")
kern = per_edge_certificate(small, 0, "exact", "weighted", bound="kernel")
print(f"pendant star n=8, designated edge x = {small.edges[0].x}:")
print(f"  realized-mass certificate  E[t_e]/(w x) = {mass:.4f}")
print(f"  kernel bound  E[1/max(deg,deg) | e]     = {kern:.4f}")
print(f"  asymptotic floor 1 - 3/(2e)             = {const:.4f}")
print()
print("the kernel bound works at any size (it is a conditional expectation")
print("over the other incident edges, no enumeration) and approaches the floor:")
for n in (8, 40, 200):
    kern = per_edge_certificate(gen_pendant_star(n, 0.01), 0,
                                "exact", "weighted", bound="kernel")
    print(f"  n = {n:4d}: kernel certificate {kern:.5f}")
print("the mass form dominates it, so both certify the weighted bipartite bound")
