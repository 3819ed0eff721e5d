"""Level parities of truncated automorphisms: squares are even everywhere,
so an odd level certifies that an element is not a square."""

from wreathmgs import automaton as am
from wreathmgs.portrait import pi_sign, random_portrait, square_obstruction

depth = 6
for i in range(4):
    g = am.to_portrait(am.m0_generator(i), depth)
    print(f"m0({i}) signs", [pi_sign(g, n) for n in range(depth)], "odd level", square_obstruction(g))

g = random_portrait((2,) * depth, 42)
print("random g  ", [pi_sign(g, n) for n in range(depth)])
print("g squared ", [pi_sign(g * g, n) for n in range(depth)])
print("odometer odd level", square_obstruction(am.to_portrait(am.odometer(), depth)))
