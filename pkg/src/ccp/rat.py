"""Exact rational arithmetic used throughout the package.

Every number that flows through the solvers is an exact rational in
canonical form: positive denominator, numerator and denominator coprime.
The backend is gmpy2.mpq when importable (the perturbed cost vectors can
reach tens of thousands of bits, where gmpy2 is decisively faster) and
fractions.Fraction otherwise.  Nothing outside this module touches the
backend directly, so the two are interchangeable.
"""

from __future__ import annotations

import math

try:
    from gmpy2 import mpq as _mpq  # type: ignore[import-not-found]

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _HAVE_GMPY2 = False

from fractions import Fraction

BACKEND = "gmpy2" if _HAVE_GMPY2 else "fractions"
_RAT = _mpq if _HAVE_GMPY2 else Fraction

# Rat is intentionally loose: both backends quack alike for +,-,*,/,**,
# comparisons, numerator/denominator.
Rat = object


def rat(num, den=None):
    """Canonical rational from ints, another rational, or an int pair."""
    if den is None:
        return _RAT(num)
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return _RAT(num, den)


ZERO = rat(0)
ONE = rat(1)


def numer(x) -> int:
    return int(x.numerator)


def denom(x) -> int:
    return int(x.denominator)


def is_rat(x) -> bool:
    return isinstance(x, (int, _RAT)) or (_HAVE_GMPY2 and isinstance(x, Fraction))


def rat_str(x) -> str:
    """Serialize canonically: "num/den", with "/den" omitted when den is 1."""
    n, d = numer(x), denom(x)
    return str(n) if d == 1 else "%d/%d" % (n, d)


def parse_rat(text: str):
    """Parse the canonical "num/den" form (den optional).

    Signs are accepted on either part and normalized away; anything else
    (decimals, exponents, blanks inside) is rejected so both backends
    accept exactly the same language.
    """
    t = text.strip()
    if any(ch.isspace() for ch in t):
        raise ValueError("not a rational literal: %r" % (text,))
    if "/" in t:
        num_s, _, den_s = t.partition("/")
    else:
        num_s, den_s = t, "1"
    try:
        n = int(num_s)
        d = int(den_s)
    except ValueError as exc:
        raise ValueError("not a rational literal: %r" % (text,)) from exc
    if d == 0:
        raise ValueError("zero denominator in rational literal: %r" % (text,))
    return rat(n, d)


def sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def rat_floor(x) -> int:
    return numer(x) // denom(x)


def rat_ceil(x) -> int:
    return -((-numer(x)) // denom(x))


def as_int(x) -> int:
    n, d = numer(x), denom(x)
    assert d == 1, "expected an integer rational, got %s" % rat_str(x)
    return n


def is_integer(x) -> bool:
    return denom(x) == 1


def bit_size(x) -> int:
    """max bit length of numerator and denominator, for statistics."""
    return max(abs(numer(x)).bit_length(), denom(x).bit_length())


def assert_canonical(x) -> None:
    """Debug audit for the canonical-form invariant.

    Both backends normalize eagerly, so this should never fire; tests call
    it after arithmetic to pin the invariant down.
    """
    n, d = numer(x), denom(x)
    assert d > 0, "denominator not positive: %r" % (x,)
    assert math.gcd(n, d) == 1, "not in lowest terms: %r" % (x,)
