"""
A ZDD by hand: the family {}, {1,2}, {3,4}, {1,2,3,4} over four elements.

Walks through membership, weighted optimization and in-place restriction.
"""

from zddcolor import FALSE, TRUE, Zdd

# Build bottom-up. insert(var, lo, hi) hash-conses, so shared tails are free.
z = Zdd(4)
d = z.insert(4, FALSE, TRUE)  # {4}
c = z.insert(3, TRUE, d)  # {}, {3,4}
b = z.insert(2, FALSE, c)  # {2}, {2,3,4}
z.root = z.insert(1, c, b)
print(f"{z.count_accepted()} sets, {z.node_count()} nodes (terminals included)")
print(z.enumerate())

# Membership follows one path. For {1,2,4} the path takes the low edge out of
# the e3 node, which leads straight to TRUE and skips e4; since e4 is in the
# set, the set is rejected.
for s in ({1, 2}, {3}, {1, 2, 4}):
    print(sorted(s), z.evaluate(s))

# Longest path: the high edge out of a node labeled e_i earns w_i.
print("max weight set:", z.max_weight_set([-1, -1, 2, 1]))

# Remove {1,2,3,4} in place; only the tail of its path is touched.
z.restrict_set({1, 2, 3, 4})
print("after restrict:", z.enumerate(), f"{z.node_count()} nodes")
print(z.dump())
