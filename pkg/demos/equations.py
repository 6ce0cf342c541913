"""The tetrahedron and 3D reflection equations, acted out on states.

The A2 table R acts on three slots of a six-mode Fock space; composing the
four factors of each side of the tetrahedron equation must give the same
linear map.  The C2 table K joins R on a nine-mode space for the 3D
reflection equation.  Both are checked exactly on a sample state here
(the full verifier sweeps whole occupation ranges).
"""

from qpbw.presets import ONE
from qpbw.verify import KetOperator, REFLECTION_3D, TETRAHEDRON, infer_slot_bases

def act(eq, table_for, state):
    sides = []
    for side in eq["sides"]:
        vec = {state: ONE}
        for kind, slots in side:
            vec = table_for[kind].apply(vec, slots)
        sides.append(vec)
    return sides


print("tetrahedron equation on six modes")
bases = infer_slot_bases(6, TETRAHEDRON["sides"][0])[0]
print(f"  slot oscillator bases: {bases} (all plain q)")
R = KetOperator("A2")
state = (1, 0, 1, 0, 0, 0)
lhs, rhs = act(TETRAHEDRON, {"R": R}, state)
assert lhs == rhs
print(f"  input {state}: both sides give {len(lhs)} kets, identical")

print("\n3D reflection equation on nine modes")
bases = infer_slot_bases(9, REFLECTION_3D["sides"][0])[0]
squared = sorted(s for s, d in bases.items() if d == 2)
print(f"  slots {squared} carry the q^2 oscillator, the rest plain q")
K = KetOperator("C2")
state = (0, 0, 0, 0, 1, 0, 0, 0, 0)
lhs, rhs = act(REFLECTION_3D, {"R": R, "K": K}, state)
assert lhs == rhs
print(f"  input {state}: both sides give {len(lhs)} kets, identical")

print("\nEvery coefficient matched as an exact rational function of q.")
