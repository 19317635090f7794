"""
Information loss of a two-point channel
=======================================

One input is passed through cleanly, the other is replaced by a fair coin.
"""

from finstoch import bayes, core, measures

p = core.make_space(("x0", "x1"), ("1/2", "1/2"))
f = core.map_from_columns(p.labels, ("y0", "y1"), [(1, 0), ("1/2", "1/2")])
m = core.morphism(f, p)

# the output distribution is computed exactly
print("q =", [str(v) for v in m.tgt_dist.probs])

# K(f) by definition and through the joint masses
print("K(f)             = %.6f" % measures.conditional_information_loss(m))
print("K(f) closed form = %.6f" % measures.closs_closed_form(m))

# the Bayesian inverse, and the entropy it adds back
inv = bayes.inverse(m)
print("inverse columns:", [[str(v) for v in c] for c in inv.map.columns()])
print("H(inverse | q)   = %.6f" % measures.conditional_entropy(inv))
