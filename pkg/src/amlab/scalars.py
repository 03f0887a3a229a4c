"""Scalar handling for the two arithmetic modes.

Every computation in the library runs either over exact rationals
(`fractions.Fraction`, the default) or over floats with an explicit
tolerance.  Rationals serialize as "p/q" strings so that JSON round-trips
are lossless.
"""

from fractions import Fraction

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)

DEFAULT_FLOAT_TOL = 1e-9


class SchemaError(ValueError):
    """Malformed input data: bad JSON shape, unknown labels, bad indices."""


def check_mode(mode):
    if mode not in MODES:
        raise SchemaError(f"unknown scalar mode {mode!r}; expected one of {MODES}")
    return mode


def coerce(value, mode):
    """Convert a raw scalar (int, float, Fraction or 'p/q' string) to the mode's type."""
    if isinstance(value, bool):
        raise SchemaError(f"boolean is not a scalar: {value!r}")
    if mode == RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise SchemaError(f"bad rational literal {value!r}: {exc}") from None
        if isinstance(value, float):
            # exact binary-to-rational conversion; 0.5 -> 1/2
            return Fraction(value)
        raise SchemaError(f"cannot coerce {value!r} to a rational")
    check_mode(mode)
    if isinstance(value, str):
        try:
            return float(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad scalar literal {value!r}: {exc}") from None
    if isinstance(value, (int, float, Fraction)):
        return float(value)
    raise SchemaError(f"cannot coerce {value!r} to a float")


def to_json(x):
    """JSON form of a scalar: Fractions become 'p/q' (or 'p') strings."""
    if isinstance(x, Fraction):
        return str(x)
    return x


def render(x):
    """Text form for CSV output: exact for rationals, 17 significant digits for floats."""
    if isinstance(x, Fraction):
        return str(x)
    return format(float(x), ".17g")
