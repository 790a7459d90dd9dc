"""Closed forms for the u_m sequences of the six registry examples.

Each is an independent factorial/binomial formula, evaluated with stdlib
integer arithmetic only, so the recurrence and diagonal routes are checked
against something that shares no code with the library.
"""

import math


def u_closed_1(m):
    return math.factorial(6 * m) // (
        math.factorial(m) * math.factorial(2 * m) * math.factorial(3 * m)
    )


def u_closed_2(m):
    return math.factorial(4 * m) // (math.factorial(m) ** 2 * math.factorial(2 * m))


def u_closed_3(m):
    return math.factorial(3 * m) // math.factorial(m) ** 3


def u_closed_4(m):
    return math.factorial(2 * m) ** 2 // math.factorial(m) ** 4


def u_closed_5(m):
    # Apery numbers: 1, 3, 19, 147, ...
    return sum(math.comb(m, k) ** 2 * math.comb(m + k, k) for k in range(m + 1))


def u_closed_6(m):
    # Franel numbers: 1, 2, 10, 56, ...
    return sum(math.comb(m, k) ** 3 for k in range(m + 1))


CLOSED_BY_EXAMPLE = {
    1: u_closed_1,
    2: u_closed_2,
    3: u_closed_3,
    4: u_closed_4,
    5: u_closed_5,
    6: u_closed_6,
}
