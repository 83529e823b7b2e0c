"""Combinatorial incidence data of a surface-knot diagram.

A diagram is stored as labeled incidence only: sheets 1..n, double curves
with an over-sheet and two under-sheets (u+ on the positive-normal side of
the over-sheet), triple points with their three sheets / four bottom
quadrants / five incident double curves, and branch points.  No embedding
or realizability is checked; local move patterns are first-class citizens.

File grammar (UTF-8, line oriented, '#' comments):

    diagram <name>
    sheets <n>
    curve c<j> over=s<i> uplus=s<i> uminus=s<i>
    triple t<j> t=s<i> mplus=s<i> mminus=s<i> bpp=s<i> bpm=s<i> bmp=s<i> bmm=s<i> \
        tm=c<j> mbplus=c<j> mbminus=c<j> tbplus=c<j> tbminus=c<j>
    branch b<j> sign=<+|-> curve=c<j> sheet=s<i>

Positive branch points come first and are the only ones generators index.
"""

from __future__ import annotations

from dataclasses import dataclass


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class DoubleCurve:
    cid: int
    over: int
    uplus: int
    uminus: int


@dataclass(frozen=True)
class TriplePoint:
    tid: int
    top: int
    mplus: int
    mminus: int
    bpp: int
    bpm: int
    bmp: int
    bmm: int
    tm: int
    mbplus: int
    mbminus: int
    tbplus: int
    tbminus: int

    def bottom(self, alpha: str, beta: str) -> int:
        return {("+", "+"): self.bpp, ("+", "-"): self.bpm,
                ("-", "+"): self.bmp, ("-", "-"): self.bmm}[(alpha, beta)]

    def curve_ids(self):
        return (self.tm, self.mbplus, self.mbminus, self.tbplus, self.tbminus)


@dataclass(frozen=True)
class BranchPoint:
    bid: int
    sign: int  # +1 or -1; only +1 branch points index generators
    curve: int
    sheet: int


@dataclass(frozen=True)
class Diagram:
    name: str
    sheet_count: int
    curves: tuple
    triples: tuple
    branches: tuple

    def curve(self, cid: int) -> DoubleCurve:
        return self.curves[cid - 1]

    def triple(self, tid: int) -> TriplePoint:
        return self.triples[tid - 1]

    def branch(self, bid: int) -> BranchPoint:
        return self.branches[bid - 1]

    def positive_branches(self):
        return tuple(b for b in self.branches if b.sign > 0)

    @property
    def sheets(self):
        return range(1, self.sheet_count + 1)


def _id(token: str, prefix: str, line_no: int):
    if not token.startswith(prefix) or not token[len(prefix):].isdigit():
        raise DiagramError("line %d: expected %s<id>, got %r" % (line_no, prefix, token))
    return int(token[len(prefix):])


def _fields(tokens, expected_keys, line_no):
    vals = {}
    for tok in tokens:
        if "=" not in tok:
            raise DiagramError("line %d: expected key=value, got %r" % (line_no, tok))
        k, v = tok.split("=", 1)
        if k not in expected_keys or k in vals:
            raise DiagramError("line %d: unexpected or duplicate field %r" % (line_no, k))
        vals[k] = v
    missing = [k for k in expected_keys if k not in vals]
    if missing:
        raise DiagramError("line %d: missing fields %s" % (line_no, ", ".join(missing)))
    return vals


_TRIPLE_SHEET_KEYS = ("t", "mplus", "mminus", "bpp", "bpm", "bmp", "bmm")
_TRIPLE_CURVE_KEYS = ("tm", "mbplus", "mbminus", "tbplus", "tbminus")


def parse_diagram(text: str) -> Diagram:
    name = None
    sheet_count = None
    curves, triples, branches = {}, {}, {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kw = tokens[0]
        if kw == "diagram":
            if name is not None or len(tokens) != 2:
                raise DiagramError("line %d: bad diagram header" % line_no)
            name = tokens[1]
        elif kw == "sheets":
            if sheet_count is not None or len(tokens) != 2 or not tokens[1].isdigit():
                raise DiagramError("line %d: bad sheets line" % line_no)
            sheet_count = int(tokens[1])
        elif kw == "curve":
            cid = _id(tokens[1], "c", line_no)
            if cid in curves:
                raise DiagramError("line %d: duplicate curve label c%d" % (line_no, cid))
            f = _fields(tokens[2:], ("over", "uplus", "uminus"), line_no)
            curves[cid] = DoubleCurve(cid, *(_id(f[k], "s", line_no) for k in ("over", "uplus", "uminus")))
        elif kw == "triple":
            tid = _id(tokens[1], "t", line_no)
            if tid in triples:
                raise DiagramError("line %d: duplicate triple label t%d" % (line_no, tid))
            f = _fields(tokens[2:], _TRIPLE_SHEET_KEYS + _TRIPLE_CURVE_KEYS, line_no)
            sheet_vals = [_id(f[k], "s", line_no) for k in _TRIPLE_SHEET_KEYS]
            curve_vals = [_id(f[k], "c", line_no) for k in _TRIPLE_CURVE_KEYS]
            triples[tid] = TriplePoint(tid, *sheet_vals, *curve_vals)
        elif kw == "branch":
            bid = _id(tokens[1], "b", line_no)
            if bid in branches:
                raise DiagramError("line %d: duplicate branch label b%d" % (line_no, bid))
            f = _fields(tokens[2:], ("sign", "curve", "sheet"), line_no)
            if f["sign"] not in ("+", "-"):
                raise DiagramError("line %d: sign must be + or -" % line_no)
            branches[bid] = BranchPoint(bid, 1 if f["sign"] == "+" else -1,
                                        _id(f["curve"], "c", line_no),
                                        _id(f["sheet"], "s", line_no))
        else:
            raise DiagramError("line %d: unknown directive %r" % (line_no, kw))
    if name is None or sheet_count is None:
        raise DiagramError("diagram header or sheets line missing")
    for label, items in (("curve", curves), ("triple", triples), ("branch", branches)):
        if items and sorted(items) != list(range(1, len(items) + 1)):
            raise DiagramError("%s labels are not dense 1..%d" % (label, len(items)))
    d = Diagram(name, sheet_count,
                tuple(curves[i] for i in sorted(curves)),
                tuple(triples[i] for i in sorted(triples)),
                tuple(branches[i] for i in sorted(branches)))
    _check_references(d)
    return d


def _check_references(d: Diagram):
    def sheet_ok(s):
        return 1 <= s <= d.sheet_count

    ncurves = len(d.curves)
    for c in d.curves:
        for s in (c.over, c.uplus, c.uminus):
            if not sheet_ok(s):
                raise DiagramError("curve c%d references missing sheet s%d" % (c.cid, s))
    for t in d.triples:
        for s in (t.top, t.mplus, t.mminus, t.bpp, t.bpm, t.bmp, t.bmm):
            if not sheet_ok(s):
                raise DiagramError("triple t%d references missing sheet s%d" % (t.tid, s))
        for c in t.curve_ids():
            if not 1 <= c <= ncurves:
                raise DiagramError("triple t%d references missing curve c%d" % (t.tid, c))
    for b in d.branches:
        if not 1 <= b.curve <= ncurves:
            raise DiagramError("branch b%d references missing curve c%d" % (b.bid, b.curve))
        if not sheet_ok(b.sheet):
            raise DiagramError("branch b%d references missing sheet s%d" % (b.bid, b.sheet))


def serialize_diagram(d: Diagram) -> str:
    lines = ["diagram %s" % d.name, "sheets %d" % d.sheet_count]
    for c in d.curves:
        lines.append("curve c%d over=s%d uplus=s%d uminus=s%d" % (c.cid, c.over, c.uplus, c.uminus))
    for t in d.triples:
        lines.append(
            "triple t%d t=s%d mplus=s%d mminus=s%d bpp=s%d bpm=s%d bmp=s%d bmm=s%d"
            " tm=c%d mbplus=c%d mbminus=c%d tbplus=c%d tbminus=c%d"
            % (t.tid, t.top, t.mplus, t.mminus, t.bpp, t.bpm, t.bmp, t.bmm,
               t.tm, t.mbplus, t.mbminus, t.tbplus, t.tbminus))
    for b in d.branches:
        lines.append("branch b%d sign=%s curve=c%d sheet=s%d"
                     % (b.bid, "+" if b.sign > 0 else "-", b.curve, b.sheet))
    return "\n".join(lines) + "\n"


def validate_diagram(d: Diagram):
    """Check every incidence invariant; returns a list of violation strings.

    An empty report means the diagram is valid.  Cross-reference resolution
    is enforced at parse time and re-checked here for diagrams built in code.
    """
    report = []
    try:
        _check_references(d)
    except DiagramError as exc:
        return [str(exc)]

    for t in d.triples:
        if len(set(t.curve_ids())) != 5:
            report.append("triple t%d: the five incident curves are not pairwise distinct" % t.tid)
        checks = (
            ("tm", t.tm, t.top, t.mplus, t.mminus),
            ("mbplus", t.mbplus, t.mplus, t.bpp, t.bpm),
            ("mbminus", t.mbminus, t.mminus, t.bmp, t.bmm),
            ("tbplus", t.tbplus, t.top, t.bpp, t.bmp),
            ("tbminus", t.tbminus, t.top, t.bpm, t.bmm),
        )
        for role, cid, over, uplus, uminus in checks:
            c = d.curve(cid)
            if (c.over, c.uplus, c.uminus) != (over, uplus, uminus):
                report.append(
                    "triple incidence %s: t%d expects c%d = (over=s%d uplus=s%d uminus=s%d),"
                    " found (over=s%d uplus=s%d uminus=s%d)"
                    % (role, t.tid, cid, over, uplus, uminus, c.over, c.uplus, c.uminus))

    positives = [b for b in d.branches if b.sign > 0]
    if [b.bid for b in positives] != list(range(1, len(positives) + 1)):
        report.append("positive branch points must carry the leading dense labels")
    for b in d.branches:
        c = d.curve(b.curve)
        if not (c.over == c.uplus == c.uminus == b.sheet):
            report.append(
                "branch-curve identity: b%d needs c%d to have over=uplus=uminus=s%d"
                % (b.bid, b.curve, b.sheet))
    return report
