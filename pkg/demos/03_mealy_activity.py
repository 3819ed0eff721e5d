"""Active-state counts and growth classes for a few Mealy automorphisms."""

import random

from wreathmgs import automaton as am

f = am.MealyAutomorphism.from_table(2, {"f": ((1, 0), ("f", "f"))}, "f")
b = am.MealyAutomorphism.from_table(2, {
    "b": ((0, 1), ("b", "a")),
    "a": ((1, 0), ("e", "a")),
    "e": ((0, 1), ("e", "e")),
}, "b")

machines = {"odometer": am.odometer(), "f": f, "b": b, "m0(2)": am.m0_generator(2)}
rng = random.Random(5)
for i in range(4):
    machines[f"random {i}"] = am.minimize(am.random_machine(rng, 4))

for name, g in machines.items():
    theta = list(am.theta_profile(g, 10).counts)
    cls = am.classify_activity(g)
    print(f"{name:10s} {cls.kind:12s} deg={cls.degree}  theta={theta}")

a = am.odometer()
for n in range(5):
    word = tuple(int(x) for x in f"{n:03b}"[::-1])
    print(word, "->", a.act(word))
