"""
Zero loss means a decodable code
================================

Inputs with positive mass are codewords and the support of each column
is the set of outputs it can produce.
"""

from finstoch import core, measures, structure

p = core.make_space(("a", "b", "c"), ("1/2", "1/2", 0))

# disjoint supports on the codewords: lossless, decodable
clean = core.map_from_columns(p.labels, ("u", "v", "w"),
                              [("1/3", "2/3", 0), (0, 0, 1), (1, 0, 0)])
m = core.morphism(clean, p)
print("K = %.6f" % measures.conditional_information_loss(m))
print("decoder:", structure.is_correctable(structure.code_from_morphism(m)).as_dict())

# let a and b collide on w and decoding fails
noisy = core.map_from_columns(p.labels, ("u", "v", "w"),
                              [("1/3", "1/3", "1/3"), (0, 0, 1), (1, 0, 0)])
m = core.morphism(noisy, p)
print("K = %.6f" % measures.conditional_information_loss(m))
print("overlap:", structure.overlap_witness(structure.code_from_morphism(m)))
