from fractions import Fraction
from numbers import Rational


def to_fraction(value) -> Fraction:
    """Coerce ``value`` to an exact ``Fraction``.

    Accepts integers, ``Fraction``s and strings such as ``"-124/3"``.
    Floats are rejected: the whole engine is exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"not an exact rational: {value!r}")


def render(value: Fraction) -> str:
    return str(Fraction(value))
