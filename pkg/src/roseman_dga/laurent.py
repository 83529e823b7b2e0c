"""Exact arithmetic in Z[mu, mu^-1], the scalar ring of the diagram algebras.

Elements are stored as sparse maps exponent -> nonzero integer coefficient.
Integers are Python ints, so coefficients never overflow.  The units of this
ring are exactly +-mu^k.
"""

from __future__ import annotations


class Laurent:
    """An element of Z[mu, mu^-1].  Immutable once constructed."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[e] = v
        self.c = c

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(n: int) -> "Laurent":
        return Laurent({0: n}) if n else Laurent()

    @staticmethod
    def mono(coeff: int, exp: int) -> "Laurent":
        return Laurent({exp: coeff}) if coeff else Laurent()

    # -- ring structure ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Laurent.of(other)
        return isinstance(other, Laurent) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other: "Laurent") -> "Laurent":
        if isinstance(other, int):
            other = Laurent.of(other)
        c = dict(self.c)
        for e, v in other.c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        out = Laurent()
        out.c = c
        return out

    def __neg__(self) -> "Laurent":
        out = Laurent()
        out.c = {e: -v for e, v in self.c.items()}
        return out

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other) -> "Laurent":
        if isinstance(other, int):
            other = Laurent.of(other)
        c = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = c.get(e, 0) + v1 * v2
                if w:
                    c[e] = w
                else:
                    c.pop(e, None)
        out = Laurent()
        out.c = c
        return out

    __rmul__ = __mul__

    # -- units -------------------------------------------------------------

    def is_unit(self) -> bool:
        if len(self.c) != 1:
            return False
        (v,) = self.c.values()
        return v in (1, -1)

    def unit_inverse(self) -> "Laurent":
        if not self.is_unit():
            raise ValueError("not a unit of Z[mu, mu^-1]: %s" % self)
        ((e, v),) = self.c.items()
        return Laurent({-e: v})

    # -- evaluation --------------------------------------------------------

    def eval_mod(self, p: int, mu_value: int) -> int:
        """Evaluate at mu = mu_value in F_p.  mu_value must be a unit mod p."""
        if mu_value % p == 0:
            raise ValueError("mu must evaluate to a unit of F_p")
        inv = pow(mu_value, p - 2, p) if p > 2 else mu_value % p
        total = 0
        for e, v in self.c.items():
            base = mu_value if e >= 0 else inv
            total += v * pow(base, abs(e), p)
        return total % p

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            v = self.c[e]
            parts.append(str(v) if e == 0 else "%dmu^%d" % (v, e))
        return " + ".join(parts)

    __repr__ = __str__


ZERO = Laurent()
ONE = Laurent.of(1)
MU = Laurent.mono(1, 1)
MU_INV = Laurent.mono(1, -1)
ONE_PLUS_MU = ONE + MU


def parse_laurent(text: str) -> Laurent:
    """Inverse of str(); accepts e.g. '1 + -2mu^-1' or '0'."""
    text = text.strip()
    if text == "0":
        return Laurent()
    coeffs = {}
    for part in text.split(" + "):
        part = part.strip()
        if "mu^" in part:
            cs, es = part.split("mu^")
            e = int(es)
        else:
            cs, e = part, 0
        coeffs[e] = coeffs.get(e, 0) + int(cs)
    return Laurent(coeffs)
