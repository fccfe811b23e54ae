"""Walk through products in a small Frobenius wreath algebra.

Run with ``python3 demos/wreath_tour.py``.
"""
from fractions import Fraction

from frobhecke.frobenius import builtin
from frobhecke.grammar import parse_label
from frobhecke.polyalg import QUANTUM, is_pin_label, teleporter
from frobhecke.wreath import center_membership, wreath_ring


def show(label, value):
    print(f"{label:<28} {value}")


def main():
    A = builtin("clifford_even")
    print(f"algebra: {A.name} (dim {A.dim})")
    W = wreath_ring(A, 2)
    s1, x1, x2 = W.crossing(1), W.x(1), W.x(2)

    show("teleporter t12", teleporter(W.pol, 1, 2))
    show("s1 * x1", s1 * x1)
    show("x2 * s1", x2 * s1)
    show("s1 * s1", s1 * s1)
    show("s1 * c_1", s1 * W.token(1, "c"))

    # x anticommutes with c here, so only even dot polynomials can be central
    Q = is_pin_label(parse_label("x^2+1", A))
    pins = W.from_poly(Q.place(W.pol, 1) * Q.place(W.pol, 2))
    show("x1 + x2 central?", bool(center_membership(x1 + x2)))
    show("Q(x1) Q(x2) central?", bool(center_membership(pins)))

    print()
    H = wreath_ring(builtin("group"), 2, QUANTUM, Fraction(1, 2))
    T = H.crossing(1)
    print("quantum variant over the group algebra, z = 1/2")
    show("T1 * X1 * T1", T * H.x(1) * T)
    show("T1 * T1", T * T)
    show("T1 * T1^-1", T * H.crossing_inv(1))


if __name__ == "__main__":
    main()
