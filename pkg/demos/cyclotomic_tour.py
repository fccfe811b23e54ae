"""Compare a level-one cyclotomic quotient with the matching path algebra.

Run with ``python3 demos/cyclotomic_tour.py``.
"""
import warnings
from math import factorial

from frobhecke.category import Session
from frobhecke.frobenius import builtin
from frobhecke.grammar import parse_label
from frobhecke.polyalg import is_pin_label
from frobhecke.wreath import BoundTooSmall, cyclotomic_reduce, quotient_dim_oracle, wreath_ring


def main():
    A = builtin("ground")
    Q = is_pin_label(parse_label("x^2", A))
    print(f"label Q = {Q.element}, top degree {Q.top}")

    for n in (1, 2):
        W = wreath_ring(A, n)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BoundTooSmall)
            dim = quotient_dim_oracle(W, Q, Q.top + 2)
        print(f"n={n}: quotient dimension {dim}, expected {A.dim ** n * Q.top ** n * factorial(n)}")

    W = wreath_ring(A, 2)
    print("x1^3 reduces to", cyclotomic_reduce(W.x(1, 3), Q))

    S = Session(A, [is_pin_label(parse_label("x", A))])
    print()
    print("objects with one red and one black strand:")
    for obj in S.objects(1):
        print("  ", obj)


if __name__ == "__main__":
    main()
