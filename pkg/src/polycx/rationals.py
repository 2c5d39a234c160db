"""Exact rational scalars.

All geometry in this package is done over Q.  We use gmpy2.mpq when it is
available (it is a drop-in exact rational, noticeably faster than
fractions.Fraction) and fall back to the standard library otherwise.
Both keep values in lowest terms with a positive denominator.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - exercised only without gmpy2
    QQ = Fraction

ZERO = QQ(0)
ONE = QQ(1)


def rat(value, den=None):
    """Coerce ints, strings like '3/4' or '-2', or rationals to QQ."""
    if den is not None:
        return QQ(value) / QQ(den)
    if isinstance(value, str):
        value = value.strip()
        if "/" in value:
            p, q = value.split("/")
            return QQ(int(p), int(q))
        return QQ(int(value))
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass an int, string or rational")
    return QQ(value)


def rat_str(q):
    """Render as 'p' or 'p/q' (lowest terms, q > 0)."""
    q = QQ(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def vec(values):
    return tuple(rat(v) for v in values)


def vec_str(v):
    return " ".join(rat_str(x) for x in v)
