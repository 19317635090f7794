"""
When do information losses add up?
==================================

A pair of maps loses information additively exactly when the middle
stage can be read off from the input and the output.
"""

from finstoch import core, measures, structure

p = core.make_space(("x0", "x1"), ("1/2", "1/2"))
f = core.morphism(core.map_from_columns(p.labels, ("y0", "y1"), [(1, 0), ("1/2", "1/2")]), p)
K = measures.conditional_information_loss

# prepending the prior: y0 can be reached from both inputs, so no mediator
start = core.bloom_of(p)
print("witness:", structure.coalescability_witness(start, f))
gap = K(start) + K(f) - K(core.compose_morphisms(f, start))
print("deviation = %.6f, K gap = %.6f" % (measures.functoriality_deviation(start, f), gap))

# following f by a relabelling always admits one
swap = core.morphism(core.deterministic_map(("y0", "y1"), ("z0", "z1"),
                                            {"y0": "z1", "y1": "z0"}), f.tgt_dist)
h = structure.find_mediator(f, swap)
print("mediator table:", h.table)
print("K(swap o f) - K(f) - K(swap) = %.2e"
      % (K(core.compose_morphisms(swap, f)) - K(f) - K(swap)))
