"""Construction of the four differential graded algebras of a diagram.

Each sign variant (eps, delta) gets its own differential table on the
triple-point generator families; all other families share one table.  The
tables are transcribed entry by entry below, one builder function per
generator family per variant, so each can be eyeballed against its source
and exercised term-by-term in tests.  d is extended to products by the
signed Leibniz rule d(vw) = (dv)w + (-1)^deg(v) v(dw), and d(d(g)) = 0 is
checked generator by generator.
"""

from __future__ import annotations

from .algebra import Element, Generator, gen_elem as G
from .diagram import Diagram, validate_diagram
from .laurent import MU, MU_INV, Laurent

VARIANTS = ("--", "-+", "+-", "++")

_SMU = Element.scalar(MU)
_SMUI = Element.scalar(MU_INV)


def _mu(e: Element) -> Element:
    return e.scale(MU)


def _mui(e: Element) -> Element:
    return e.scale(MU_INV)


class Dga:
    """Generator set with differential, tagged by a sign variant."""

    def __init__(self, name, variant, sheet_count, diff):
        if variant not in VARIANTS:
            raise ValueError("variant must be one of %s" % (VARIANTS,))
        self.name = name
        self.variant = variant
        self.sheet_count = sheet_count
        self.diff = diff  # Generator -> Element

    @property
    def generators(self):
        return self.diff.keys()

    def copy(self):
        return Dga(self.name, self.variant, self.sheet_count, dict(self.diff))

    def __eq__(self, other):
        return (isinstance(other, Dga) and self.variant == other.variant
                and self.diff == other.diff)


# -- differential tables -------------------------------------------------
#
# Argument conventions inside the builders: i, j sheets; x, y curves;
# p, q triples; k, l positive branch points.  Curve data is unpacked as
# (o, up, um) = (over, uplus, uminus), triple data via _tp.


def _cv(dg, x):
    c = dg.curve(x)
    return c.over, c.uplus, c.uminus


def _tp(dg, p):
    t = dg.triple(p)
    return (t.top, t.mplus, t.mminus, t.bpp, t.bpm, t.bmp, t.bmm,
            t.tm, t.mbplus, t.mbminus, t.tbplus, t.tbminus)


def _d_a21(dg, v, x, i):
    o, up, um = _cv(dg, x)
    return _mu(G("a11", um, i)) + G("a11", up, i) - G("a11", um, o) * G("a11", o, i)


def _d_a12(dg, v, i, x):
    o, up, um = _cv(dg, x)
    return -G("a11", i, um) - _mu(G("a11", i, up)) + G("a11", i, o) * G("a11", o, um)


def _d_a22(dg, v, x, y):
    ox, upx, umx = _cv(dg, x)
    oy, upy, umy = _cv(dg, y)
    return (_mu(G("a12", umx, y)) + G("a12", upx, y)
            - G("a11", umx, ox) * G("a12", ox, y)
            + G("a21", x, umy) + _mu(G("a21", x, upy))
            - G("a21", x, oy) * G("a11", oy, umy))


def _d_a2(dg, v, x):
    o, up, um = _cv(dg, x)
    return (_mu(G("a21", x, up)) + _mu(G("a12", um, x))
            - G("a11", um, o) * G("a12", o, x))


def _d_ab1(dg, v, k, i):
    return G("a21", dg.branch(k).curve, i)


def _d_a1b(dg, v, i, k):
    return G("a12", i, dg.branch(k).curve)


def _d_ab2(dg, v, k, x):
    o, up, um = _cv(dg, x)
    return (G("a22", dg.branch(k).curve, x)
            - G("ab1", k, um) - _mu(G("ab1", k, up))
            + G("ab1", k, o) * G("a11", o, um))


def _d_a2b(dg, v, x, k):
    o, up, um = _cv(dg, x)
    return (_mu(G("a1b", um, k)) + G("a1b", up, k)
            - G("a11", um, o) * G("a1b", o, k)
            - G("a22", x, dg.branch(k).curve))


def _d_abb(dg, v, k, l):
    return G("a2b", dg.branch(k).curve, l) + G("ab2", k, dg.branch(l).curve)


def _d_ab(dg, v, k):
    b = dg.branch(k)
    return G("a2", b.curve) - _mu(G("ab1", k, b.sheet)) + G("a1b", b.sheet, k)


# degree-2/3/4 triple-point families, one entry per variant


def _d_a31(dg, v, p, i):
    t, mp, mm, bpp, bpm, bmp, bmm, tm, mbp, mbm, tbp, tbm = _tp(dg, p)
    if v == "--":
        return (_mu(G("a21", tbm, i)) + G("a21", tbp, i)
                - G("a21", tbm, mp) * G("a11", mp, i)
                - _mu(G("a21", mbm, i)) - G("a21", mbp, i)
                + G("a21", mbm, t) * G("a11", t, i)
                - G("a11", bmm, mm) * G("a21", tm, i)
                - G("a12", bmm, tm) * G("a11", mp, i)
                + _mui(G("a11", bmm, t) * G("a12", t, tm) * G("a11", mp, i)))
    if v == "-+":
        return (_mu(G("a21", tbm, i)) + G("a21", tbp, i)
                - G("a21", tbp, mp) * G("a11", mp, i)
                - _mu(G("a21", mbm, i)) - G("a21", mbp, i)
                + G("a21", mbm, t) * G("a11", t, i)
                + _mu(G("a21", mbm, mm) * G("a11", mm, i))
                + G("a21", mbp, mp) * G("a11", mp, i)
                - G("a21", mbm, mm) * G("a11", mm, t) * G("a11", t, i)
                - G("a11", bmp, mm) * G("a21", tm, i)
                - G("a12", bmp, tm) * G("a11", mp, i)
                + _mui(G("a11", bmp, t) * G("a12", t, tm) * G("a11", mp, i)))
    if v == "+-":
        return (_mu(G("a21", tbm, i)) + G("a21", tbp, i)
                - G("a21", tbm, mm) * G("a11", mm, i)
                - _mu(G("a21", mbm, i)) - G("a21", mbp, i)
                + G("a21", mbp, t) * G("a11", t, i)
                - _mu(G("a21", tbm, t) * G("a11", t, i))
                - G("a21", tbp, t) * G("a11", t, i)
                + G("a21", tbm, t) * G("a11", t, mm) * G("a11", mm, i)
                - G("a11", bpm, mp) * G("a21", tm, i)
                - G("a12", bpm, tm) * G("a11", mm, i)
                + G("a11", bpm, mp) * G("a21", tm, t) * G("a11", t, i))
    return (_mu(G("a21", tbm, i)) + G("a21", tbp, i)
            - G("a21", tbp, mm) * G("a11", mm, i)
            - _mu(G("a21", mbm, i)) - G("a21", mbp, i)
            + G("a21", mbp, t) * G("a11", t, i)
            - _mu(G("a21", tbm, t) * G("a11", t, i))
            - G("a21", tbp, t) * G("a11", t, i)
            + G("a21", tbp, t) * G("a11", t, mm) * G("a11", mm, i)
            + _mu(G("a21", mbm, mm) * G("a11", mm, i))
            + G("a21", mbp, mp) * G("a11", mp, i)
            - G("a21", mbp, mp) * G("a11", mp, t) * G("a11", t, i)
            - G("a11", bpp, mp) * G("a21", tm, i)
            - G("a12", bpp, tm) * G("a11", mm, i)
            + G("a11", bpp, mp) * G("a21", tm, t) * G("a11", t, i))


def _d_a13(dg, v, i, p):
    t, mp, mm, bpp, bpm, bmp, bmm, tm, mbp, mbm, tbp, tbm = _tp(dg, p)
    if v == "--":
        return (G("a12", i, tbm) + _mu(G("a12", i, tbp))
                - G("a11", i, mp) * G("a12", mp, tbm)
                - G("a12", i, mbm) - _mu(G("a12", i, mbp))
                + G("a11", i, t) * G("a12", t, mbm)
                - G("a12", i, tm) * G("a11", mm, bmm)
                - G("a11", i, mp) * G("a21", tm, bmm)
                + G("a11", i, mp) * G("a21", tm, t) * G("a11", t, bmm))
    if v == "-+":
        return (G("a12", i, tbm) + _mu(G("a12", i, tbp))
                - G("a11", i, mp) * G("a12", mp, tbp)
                - G("a12", i, mbm) - _mu(G("a12", i, mbp))
                + G("a11", i, t) * G("a12", t, mbm)
                + _mui(G("a11", i, mm) * G("a12", mm, mbm))
                + G("a11", i, mp) * G("a12", mp, mbp)
                - _mui(G("a11", i, t) * G("a11", t, mm) * G("a12", mm, mbm))
                - G("a12", i, tm) * G("a11", mm, bmp)
                - G("a11", i, mp) * G("a21", tm, bmp)
                + G("a11", i, mp) * G("a21", tm, t) * G("a11", t, bmp))
    if v == "+-":
        return (G("a12", i, tbm) + _mu(G("a12", i, tbp))
                - G("a11", i, mm) * G("a12", mm, tbm)
                - G("a12", i, mbm) - _mu(G("a12", i, mbp))
                + G("a11", i, t) * G("a12", t, mbp)
                - _mui(G("a11", i, t) * G("a12", t, tbm))
                - G("a11", i, t) * G("a12", t, tbp)
                + _mui(G("a11", i, mm) * G("a11", mm, t) * G("a12", t, tbm))
                - G("a12", i, tm) * G("a11", mp, bpm)
                - G("a11", i, mm) * G("a21", tm, bpm)
                + _mui(G("a11", i, t) * G("a12", t, tm) * G("a11", mp, bpm)))
    return (G("a12", i, tbm) + _mu(G("a12", i, tbp))
            - G("a11", i, mm) * G("a12", mm, tbp)
            - G("a12", i, mbm) - _mu(G("a12", i, mbp))
            + G("a11", i, t) * G("a12", t, mbp)
            - _mui(G("a11", i, t) * G("a12", t, tbm))
            - G("a11", i, t) * G("a12", t, tbp)
            + _mui(G("a11", i, mm) * G("a11", mm, t) * G("a12", t, tbp))
            + _mui(G("a11", i, mm) * G("a12", mm, mbm))
            + G("a11", i, mp) * G("a12", mp, mbp)
            - _mui(G("a11", i, t) * G("a11", t, mp) * G("a12", mp, mbp))
            - G("a12", i, tm) * G("a11", mp, bpp)
            - G("a11", i, mm) * G("a21", tm, bpp)
            + _mui(G("a11", i, t) * G("a12", t, tm) * G("a11", mp, bpp)))


def _triple_block_32(dg, v, p, tail):
    """The triple-point block of d(a32)/d(a33)/d(a3b), with tail(s) appended
    to each sheet argument slot: tail("a12"/"a13"/"a1b", sheet) and
    tail("a22"/"a23"/"a2b", curve)."""
    t, mp, mm, bpp, bpm, bmp, bmm, tm, mbp, mbm, tbp, tbm = _tp(dg, p)
    two, one = tail
    if v == "--":
        return (_mu(two(tbm)) + two(tbp)
                - G("a21", tbm, mp) * one(mp)
                - _mu(two(mbm)) - two(mbp)
                + G("a21", mbm, t) * one(t)
                - G("a11", bmm, mm) * two(tm)
                - G("a12", bmm, tm) * one(mp)
                + _mui(G("a11", bmm, t) * G("a12", t, tm) * one(mp)))
    if v == "-+":
        return (_mu(two(tbm)) + two(tbp)
                - G("a21", tbp, mp) * one(mp)
                - _mu(two(mbm)) - two(mbp)
                + G("a21", mbm, t) * one(t)
                + _mu(G("a21", mbm, mm) * one(mm))
                + G("a21", mbp, mp) * one(mp)
                - G("a21", mbm, mm) * G("a11", mm, t) * one(t)
                - G("a11", bmp, mm) * two(tm)
                - G("a12", bmp, tm) * one(mp)
                + _mui(G("a11", bmp, t) * G("a12", t, tm) * one(mp)))
    if v == "+-":
        return (_mu(two(tbm)) + two(tbp)
                - G("a21", tbm, mm) * one(mm)
                - _mu(two(mbm)) - two(mbp)
                + G("a21", mbp, t) * one(t)
                - _mu(G("a21", tbm, t) * one(t))
                - G("a21", tbp, t) * one(t)
                + G("a21", tbm, t) * G("a11", t, mm) * one(mm)
                - G("a11", bpm, mp) * two(tm)
                - G("a12", bpm, tm) * one(mm)
                + G("a11", bpm, mp) * G("a21", tm, t) * one(t))
    return (_mu(two(tbm)) + two(tbp)
            - G("a21", tbp, mm) * one(mm)
            - _mu(two(mbm)) - two(mbp)
            + G("a21", mbp, t) * one(t)
            - _mu(G("a21", tbm, t) * one(t))
            - G("a21", tbp, t) * one(t)
            + G("a21", tbp, t) * G("a11", t, mm) * one(mm)
            + _mu(G("a21", mbm, mm) * one(mm))
            + G("a21", mbp, mp) * one(mp)
            - G("a21", mbp, mp) * G("a11", mp, t) * one(t)
            - G("a11", bpp, mp) * two(tm)
            - G("a12", bpp, tm) * one(mm)
            + G("a11", bpp, mp) * G("a21", tm, t) * one(t))


def _triple_block_23(dg, v, q, head):
    """The triple-point block of d(a23)/d(a33)/d(ab3), with head(s) prepended:
    head("a21"/"a31"/"ab1", sheet) and head("a22"/"a32"/"ab2", curve)."""
    t, mp, mm, bpp, bpm, bmp, bmm, tm, mbp, mbm, tbp, tbm = _tp(dg, q)
    two, one = head
    if v == "--":
        return (-two(tbm) - _mu(two(tbp))
                + one(mp) * G("a12", mp, tbm)
                + two(mbm) + _mu(two(mbp))
                - one(t) * G("a12", t, mbm)
                + two(tm) * G("a11", mm, bmm)
                + one(mp) * G("a21", tm, bmm)
                - one(mp) * G("a21", tm, t) * G("a11", t, bmm))
    if v == "-+":
        return (-two(tbm) - _mu(two(tbp))
                + one(mp) * G("a12", mp, tbp)
                + two(mbm) + _mu(two(mbp))
                - one(t) * G("a12", t, mbm)
                - _mui(one(mm) * G("a12", mm, mbm))
                - one(mp) * G("a12", mp, mbp)
                + _mui(one(t) * G("a11", t, mm) * G("a12", mm, mbm))
                + two(tm) * G("a11", mm, bmp)
                + one(mp) * G("a21", tm, bmp)
                - one(mp) * G("a21", tm, t) * G("a11", t, bmp))
    if v == "+-":
        return (-two(tbm) - _mu(two(tbp))
                + one(mm) * G("a12", mm, tbm)
                + two(mbm) + _mu(two(mbp))
                - one(t) * G("a12", t, mbp)
                + _mui(one(t) * G("a12", t, tbm))
                + one(t) * G("a12", t, tbp)
                - _mui(one(mm) * G("a11", mm, t) * G("a12", t, tbm))
                + two(tm) * G("a11", mp, bpm)
                + one(mm) * G("a21", tm, bpm)
                - _mui(one(t) * G("a12", t, tm) * G("a11", mp, bpm)))
    return (-two(tbm) - _mu(two(tbp))
            + one(mm) * G("a12", mm, tbp)
            + two(mbm) + _mu(two(mbp))
            - one(t) * G("a12", t, mbp)
            + _mui(one(t) * G("a12", t, tbm))
            + one(t) * G("a12", t, tbp)
            - _mui(one(mm) * G("a11", mm, t) * G("a12", t, tbp))
            - _mui(one(mm) * G("a12", mm, mbm))
            - one(mp) * G("a12", mp, mbp)
            + _mui(one(t) * G("a11", t, mp) * G("a12", mp, mbp))
            + two(tm) * G("a11", mp, bpp)
            + one(mm) * G("a21", tm, bpp)
            - _mui(one(t) * G("a12", t, tm) * G("a11", mp, bpp)))


def _d_a32(dg, v, p, x):
    o, up, um = _cv(dg, x)
    tail = (lambda c: G("a22", c, x), lambda s: G("a12", s, x))
    return (_triple_block_32(dg, v, p, tail)
            - G("a31", p, um) - _mu(G("a31", p, up))
            + G("a31", p, o) * G("a11", o, um))


def _d_a23(dg, v, x, p):
    o, up, um = _cv(dg, x)
    head = (lambda c: G("a22", x, c), lambda s: G("a21", x, s))
    return (_mu(G("a13", um, p)) + G("a13", up, p)
            - G("a11", um, o) * G("a13", o, p)
            + _triple_block_23(dg, v, p, head))


def _d_a33(dg, v, p, q):
    tail = (lambda c: G("a23", c, q), lambda s: G("a13", s, q))
    head = (lambda c: G("a32", p, c), lambda s: G("a31", p, s))
    return _triple_block_32(dg, v, p, tail) - _triple_block_23(dg, v, q, head)


def _d_ab3(dg, v, k, p):
    head = (lambda c: G("ab2", k, c), lambda s: G("ab1", k, s))
    return G("a23", dg.branch(k).curve, p) - _triple_block_23(dg, v, p, head)


def _d_a3b(dg, v, p, k):
    tail = (lambda c: G("a2b", c, k), lambda s: G("a1b", s, k))
    return _triple_block_32(dg, v, p, tail) + G("a32", p, dg.branch(k).curve)


def _d_a3(dg, v, p):
    t, mp, mm, bpp, bpm, bmp, bmm, tm, mbp, mbm, tbp, tbm = _tp(dg, p)
    if v == "--":
        return (_mu(G("a31", p, bpp))
                - _mu(G("a13", bmm, p))
                + G("a11", bmm, mm) * G("a13", mm, p)
                + (G("a11", bmm, t)
                   - _mui(G("a11", bmm, mm) * G("a11", mm, t))) * G("a13", t, p)
                + G("a2", tbm) + G("a2", mbp)
                + _mui(G("a11", bmm, mm) * G("a2", tm) * G("a11", mm, bmm))
                - G("a2", tbp) - G("a2", mbm)
                - _mu(G("a22", tbm, mbp))
                + G("a11", bmm, mm) * G("a22", tm, mbp)
                - _mui(G("a11", bmm, mm) * G("a22", tm, tbm))
                + _mu(G("a22", mbm, tbp))
                - G("a21", mbm, t) * G("a12", t, tbp)
                + (_mui(G("a11", bmm, mm) * G("a21", tm, mp))
                   + G("a12", bmm, tm)
                   - _mui(G("a11", bmm, t) * G("a12", t, tm)))
                * (G("a12", mp, tbm) + G("a21", tm, bmm)
                   - G("a21", tm, t) * G("a11", t, bmm))
                + (G("a21", tbm, mp) + G("a12", bmm, tm)
                   - _mui(G("a11", bmm, t) * G("a12", t, tm)))
                * G("a12", mp, mbp))
    if v == "-+":
        return (G("a2", tbp) - G("a2", tbm) - G("a2", mbp)
                + _mu(G("a22", tbm, mbp))
                - G("a11", bmm, mm)
                * _mui(G("a22", tm, tm) - G("a2", tm))
                * G("a11", mm, bmm)
                - G("a11", bmm, mm)
                * (G("a22", tm, mbp) - _mui(G("a22", tm, tbm)))
                + (_mui(G("a11", bmm, mm) * G("a21", tm, mp))
                   + G("a12", bmm, tm)
                   - _mui(G("a11", bmm, t) * G("a12", t, tm)))
                * (G("a12", mp, tm) * G("a11", mm, bmm)
                   + G("a21", tm, mm) * G("a11", mm, bmm)
                   - G("a21", tm, t) * G("a11", t, mm) * G("a11", mm, bmm))
                + _mui((G("a11", bmm, mm) * G("a12", mm, tm)
                        - _mui(G("a11", bmm, mm) * G("a11", mm, t) * G("a12", t, tm))
                        - _mu(G("a12", bmm, tm))
                        + G("a11", bmm, t) * G("a12", t, tm))
                       * (G("a12", mp, mbp) + G("a12", mp, tbm)
                          + G("a21", tm, bmm)
                          - G("a21", tm, t) * G("a11", t, bmm)))
                + (_mui(G("a11", bmm, mm) * G("a21", tm, mp))
                   - G("a21", tbm, mp)) * G("a12", mp, mbp)
                - _mu(G("a31", p, bpp))
                + _mu(G("a13", bmm, p))
                - G("a11", bmm, mm) * G("a13", mm, p)
                - (G("a11", bmm, t)
                   - _mui(G("a11", bmm, mm) * G("a11", mm, t))) * G("a13", t, p)
                - (_mu(G("a11", bmm, mp))
                   - G("a11", bmm, mm) * G("a11", mm, mp)
                   - G("a11", bmm, t) * G("a11", t, mp)
                   + _mui(G("a11", bmm, mm) * G("a11", mm, t) * G("a11", t, mp)))
                * G("a13", mp, p)
                + G("a31", p, mp) * G("a11", mp, bpp)
                - _mu(G("a22", mbm, tbp))
                + (G("a11", bmm, mm) * G("a11", mm, mp)
                   - _mui(G("a11", bmm, mm) * G("a11", mm, t) * G("a11", t, mp))
                   - _mu(G("a11", bmm, mp))
                   + G("a11", bmm, t) * G("a11", t, mp)) * G("a22", tm, mbm)
                + G("a22", mbm, tm) * G("a11", mp, bpp)
                - (G("a11", bmm, mm) * G("a11", mm, mp)
                   - _mui(G("a11", bmm, mm) * G("a11", mm, t) * G("a11", t, mp))
                   - _mu(G("a11", bmm, mp))
                   + G("a11", bmm, t) * G("a11", t, mp))
                * (-_mui(G("a12", mp, tm) * G("a12", mm, mbm))
                   + G("a21", tm, t) * G("a12", t, mbm))
                - _mui((G("a11", bmm, mm) * G("a12", mm, tm)
                        - _mu(G("a12", bmm, tm))
                        + G("a11", bmm, t) * G("a12", t, tm)
                        - _mui(G("a11", bmm, mm) * G("a11", mm, t) * G("a12", t, tm)))
                       * G("a12", mm, mbm))
                - _mui(G("a21", mbm, t) * G("a12", t, tm) * G("a11", mp, bpp))
                + G("a21", mbm, t) * G("a12", t, tbp)
                + G("a21", mbm, mm)
                * (G("a21", tm, mp) * G("a11", mp, bpp)
                   - _mu(G("a21", tm, bpp)))
                + G("a2", mbm))
    if v == "+-":
        return (G("a2", tbp) - G("a2", tbm) - G("a2", mbp)
                + _mu(G("a22", tbm, mbp))
                + G("a2", mbm)
                - _mui(G("a11", bmm, mm) * G("a2", tm) * G("a11", mm, bmm))
                - _mu(G("a22", mbm, tbp))
                - G("a11", bmm, mm) * G("a22", tm, mbp)
                - G("a22", tbm, tm)
                * (_mu(G("a11", mm, bpp)) - G("a11", mm, t) * G("a11", t, bpp))
                + G("a21", mbm, t) * G("a12", t, tbp)
                - (G("a21", tbm, mp) + G("a12", bmm, tm)
                   - _mui(G("a11", bmm, t) * G("a12", t, tm)))
                * (G("a12", mp, mbp) + _mu(G("a21", tm, bpp)))
                - _mui(G("a11", bmm, mm)
                       * (G("a21", tm, mp) + G("a12", mm, tm)
                          - _mui(G("a11", mm, t) * G("a12", t, tm)))
                       * (G("a12", mp, tbm) + G("a21", tm, bmm)
                          - G("a21", tm, t) * G("a11", t, bmm)))
                - _mu(G("a31", p, bpp))
                + _mu(G("a13", bmm, p))
                - G("a11", bmm, mm) * G("a13", mm, p)
                + G("a31", p, t) * G("a11", t, bpp))
    return (G("a2", tbp) - G("a2", tbm) - G("a2", mbp)
            + _mu(G("a22", tbm, mbp))
            - G("a21", tbm, mp) * G("a12", mp, mbp)
            - _mu((G("a21", tbm, mp) + G("a12", bmm, tm)
                   + G("a21", mbp, mp)
                   - _mui(G("a11", bmm, t) * G("a12", t, tm)))
                  * G("a21", tm, bpp))
            + (G("a11", bpp, mp) * G("a22", tm, tm)
               - G("a11", bpp, mp) * G("a2", tm)
               - _mu(G("a22", tbm, tm))
               + G("a22", mbp, tm)
               - G("a21", mbp, mp) * G("a12", mp, tm))
            * (G("a11", mm, bpp) - _mui(G("a11", mm, t) * G("a11", t, bpp)))
            + G("a31", p, t) * G("a11", t, bpp)
            + G("a31", p, mm)
            * (G("a11", mm, bpp) - _mui(G("a11", mm, t) * G("a11", t, bpp)))
            - _mu(G("a31", p, bpp))
            + _mu(G("a13", bmm, p))
            - _mu(G("a22", mbm, tbp))
            + G("a21", mbm, t) * G("a12", t, tbp)
            + G("a2", mbm))


_SHARED_TABLE = {
    "a21": _d_a21, "a12": _d_a12, "a22": _d_a22, "a2": _d_a2,
    "ab1": _d_ab1, "a1b": _d_a1b, "ab2": _d_ab2, "a2b": _d_a2b,
    "abb": _d_abb, "ab": _d_ab,
}

_TRIPLE_TABLE = {
    "a31": _d_a31, "a13": _d_a13, "a32": _d_a32, "a23": _d_a23,
    "a3": _d_a3, "a33": _d_a33, "ab3": _d_ab3, "a3b": _d_a3b,
}


def generator_differential(dg: Diagram, variant: str, g: Generator) -> Element:
    if g.kind == "a11":
        return Element.zero()
    if g.kind in _SHARED_TABLE:
        return _SHARED_TABLE[g.kind](dg, variant, *g.args)
    return _TRIPLE_TABLE[g.kind](dg, variant, *g.args)


def enumerate_generators(dg: Diagram):
    sheets = list(dg.sheets)
    curves = [c.cid for c in dg.curves]
    triples = [t.tid for t in dg.triples]
    branches = [b.bid for b in dg.positive_branches()]
    gens = []
    gens += [Generator("a11", (i, j)) for i in sheets for j in sheets if i != j]
    gens += [Generator("a21", (x, i)) for x in curves for i in sheets]
    gens += [Generator("a12", (i, x)) for i in sheets for x in curves]
    gens += [Generator("a22", (x, y)) for x in curves for y in curves]
    gens += [Generator("a2", (x,)) for x in curves]
    gens += [Generator("a31", (p, i)) for p in triples for i in sheets]
    gens += [Generator("a13", (i, p)) for i in sheets for p in triples]
    gens += [Generator("ab1", (k, i)) for k in branches for i in sheets]
    gens += [Generator("a1b", (i, k)) for i in sheets for k in branches]
    gens += [Generator("a32", (p, x)) for p in triples for x in curves]
    gens += [Generator("a23", (x, p)) for x in curves for p in triples]
    gens += [Generator("ab2", (k, x)) for k in branches for x in curves]
    gens += [Generator("a2b", (x, k)) for x in curves for k in branches]
    gens += [Generator("a3", (p,)) for p in triples]
    gens += [Generator("ab", (k,)) for k in branches]
    gens += [Generator("a33", (p, q)) for p in triples for q in triples]
    gens += [Generator("ab3", (k, p)) for k in branches for p in triples]
    gens += [Generator("a3b", (p, k)) for p in triples for k in branches]
    gens += [Generator("abb", (k, l)) for k in branches for l in branches]
    return gens


def build_dga(dg: Diagram, variant: str) -> Dga:
    """Enumerate all generators of a diagram and populate their differentials."""
    report = validate_diagram(dg)
    if report:
        raise ValueError("invalid diagram %s: %s" % (dg.name, "; ".join(report)))
    diff = {}
    for g in enumerate_generators(dg):
        diff[g] = generator_differential(dg, variant, g)
    return Dga(dg.name, variant, dg.sheet_count, diff)


# -- boundary operator ---------------------------------------------------


def boundary(dga: Dga, e: Element) -> Element:
    """Extend the generator differential by linearity and the signed Leibniz rule."""
    out = Element.zero()
    diff = dga.diff
    for w, c in e.terms.items():
        sign = 1
        for pos, g in enumerate(w):
            try:
                dg_ = diff[g]
            except KeyError:
                raise KeyError("generator %s is not part of this algebra" % g.name)
            if dg_:
                piece = Element.word(w[:pos], c if sign > 0 else -c) * dg_
                if pos + 1 < len(w):
                    piece = piece * Element.word(w[pos + 1:])
                out += piece
            if g.deg % 2:
                sign = -sign
    return out


def check_d_squared(dga: Dga):
    """d(d(g)) for every generator; returns [(generator, nonzero residue)]."""
    failures = []
    for g, dg_ in dga.diff.items():
        residue = boundary(dga, dg_)
        if residue:
            failures.append((g, residue))
    return failures


# -- dumps ----------------------------------------------------------------


def dump_dga(dga: Dga) -> str:
    lines = ["dga %s variant=%s sheets=%d" % (dga.name, dga.variant, dga.sheet_count)]
    gens = sorted(dga.diff, key=lambda g: g.sort_key())
    for g in gens:
        lines.append("gen %s deg=%d" % (g.name, g.deg))
    for g in gens:
        lines.append("d %s = %s" % (g.name, dga.diff[g]))
    return "\n".join(lines) + "\n"


def parse_dga_dump(text: str) -> Dga:
    from .algebra import parse_element, parse_generator

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "dga":
        raise ValueError("not a dga dump")
    name = head[1]
    fields = dict(tok.split("=", 1) for tok in head[2:])
    variant, sheets = fields["variant"], int(fields["sheets"])

    stab_degrees = {}
    gens = {}
    for ln in lines[1:]:
        if not ln.startswith("gen "):
            continue
        name_txt, deg_txt = ln[4:].rsplit(" deg=", 1)
        name_txt = name_txt.strip()
        if name_txt.startswith("stab"):
            index, part = (int(x) for x in name_txt[4:].split("."))
            deg = int(deg_txt)
            stab_degrees[index] = deg - 1 if part == 1 else deg
    for ln in lines[1:]:
        if not ln.startswith("gen "):
            continue
        name_txt = ln[4:].rsplit(" deg=", 1)[0].strip()
        if name_txt.startswith("stab"):
            index, part = (int(x) for x in name_txt[4:].split("."))
            g = Generator("stab", (index, part), stab_degrees[index])
        else:
            g = parse_generator(name_txt)
        gens[g.name] = g

    diff = {}
    for ln in lines[1:]:
        if not ln.startswith("d "):
            continue
        name_txt, elem_txt = ln[2:].split(" = ", 1)
        diff[gens[name_txt.strip()]] = parse_element(elem_txt, stab_degrees)
    missing = [g for g in gens.values() if g not in diff]
    for g in missing:
        diff[g] = Element.zero()
    return Dga(name, variant, sheets, diff)
