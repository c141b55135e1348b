import math
from typing import Optional

from biso import config


def to_precision(x: float, p: int) -> str:
    """
    returns a string representation of x formatted with a precision of p

    Based on the webkit javascript implementation of Number.toPrecision.
    """
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return str(x)
    if x == 0.0:
        return "0." + "0" * (p - 1) if p > 1 else "0"

    out = []
    if x < 0:
        out.append("-")
        x = -x

    e = int(math.floor(math.log10(x)))
    tens = math.pow(10, e - p + 1)
    n = math.floor(x / tens)

    if n < math.pow(10, p - 1):
        e -= 1
        tens = math.pow(10, e - p + 1)
        n = math.floor(x / tens)

    if abs((n + 1.0) * tens - x) <= abs(n * tens - x):
        n += 1

    if n >= math.pow(10, p):
        n /= 10.0
        e += 1

    digits = "%.*g" % (p, n)

    if e < -4 or e >= p:
        out.append(digits[0])
        if p > 1:
            out.append(".")
            out.extend(digits[1:p])
        out.append("e")
        out.append("+" if e > 0 else "")
        out.append(str(e))
    elif e == p - 1:
        out.append(digits)
    elif e >= 0:
        out.append(digits[: e + 1])
        if e + 1 < len(digits):
            out.append(".")
            out.extend(digits[e + 1 :])
    else:
        out.append("0.")
        out.extend(["0"] * -(e + 1))
        out.append(digits)

    return "".join(out)


def format_value(x: float, sig_fig: Optional[int] = None) -> str:
    """Report formatting of a rate, capacity or gap."""
    return to_precision(x, sig_fig or config.display_sig_fig)
