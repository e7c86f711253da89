"""Quick end-to-end check of the bisem extension module."""

import bisem

i2 = bisem.InverseSemigroup.symmetric(2)
assert len(i2) == 7 and not i2.verify()
b = i2.boolean()
assert b.decompose() == [(2, "trivial")]
typ = b.type_monoid()
assert typ.free_rank() == 1

ex = bisem.InverseSemigroup.non_join_example()
try:
    ex.boolean()
    raise AssertionError("non-join example certified as Boolean")
except ValueError as e:
    assert "BIS2" in str(e)
assert [[ex.label(x) for x in c] for c in ex.mu_classes()] == [["1", "u"]]

gens = bisem.InverseSemigroup.from_generators(2, [[(0, 1), (1, 0)], [(0, 0)]])
assert len(gens) == 7
z2 = bisem.InverseSemigroup.cyclic_with_zero(2)
assert i2.direct_sum(z2).boolean().decompose() == [(2, "trivial"), (1, "Z2")]

i3 = bisem.InverseSemigroup.symmetric(3).boolean().type_monoid()
assert i3.decide_equal([3, 0, 0], [0, 0, 1]) == ("equal", 2)
free = bisem.MonoidPresentation(["x", "y"], [])
assert free.decide_equal([1, 0], [0, 1])[0] == "distinct"

fork = bisem.DirectedGraph(["v", "w1", "w2"], [("e1", "v", "w1"), ("e2", "v", "w2")])
assert fork.sinks() == ["w1", "w2"]
assert fork.verify_theorem() == "theorem: VERIFIED (ℕ₀², a_v ↦ (1,1))"
assert len(fork.tight_booleanization()) == 49

again = bisem.InverseSemigroup.parse(ex.to_cayley())
assert again.labels() == ex.labels()

print("smoke test passed")
