"""Spun-surface diagrams from tangle movies.

A closed movie of a 1-string tangle sweeps a surface diagram: sheets are
traces of arcs, double curves are traces of crossings, triple points come
from triangle moves and branch points from kink moves.  The movie state is
the passage sequence of the strand (each crossing visited once over, once
under); between passages sit slot tokens naming the sheet pieces, merged
across over-passages because only the under-sheet is cut along a double
curve.

Conventions: crossing signs are fixed at birth and never change; with
flip=False the uplus under-sheet of a crossing is its under-out arc exactly
when the crossing sign is positive.
"""

from __future__ import annotations

from .diagram import Diagram, DoubleCurve, TriplePoint, BranchPoint, validate_diagram


class MovieError(ValueError):
    pass


class _UnionFind(dict):
    def find(self, x):
        while self.setdefault(x, x) != x:
            self[x] = self[self[x]]
            x = self[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self[max(ra, rb)] = min(ra, rb)


class SpunMovie:
    def __init__(self, passages, signs, name="movie"):
        self.name = name
        self.seq = list(passages)
        self.signs = dict(signs)
        self._next_tok = 0
        self._next_seg = 0
        self.tok_uf = _UnionFind()
        self.seg_uf = _UnionFind()
        self.slots = [self._tok() for _ in range(len(self.seq) + 1)]
        self.seg = {c: self._seg() for c in self.signs}
        self.curve_records = []   # (seg, over_tok, in_tok, out_tok, sign)
        self.triple_records = []  # dict with sheet tokens / curve segs
        self.branch_records = []  # (sign, seg, sheet_tok)
        self._reunify()
        self.initial = (list(self.seq), list(self.slots), dict(self.seg))

    # -- id plumbing -------------------------------------------------------

    def _tok(self):
        self._next_tok += 1
        return self._next_tok

    def _seg(self):
        self._next_seg += 1
        return self._next_seg

    def _reunify(self):
        # slots flanking an over-passage belong to the same sheet piece
        for i, (c, r) in enumerate(self.seq):
            if r == "o":
                self.tok_uf.union(self.slots[i], self.slots[i + 1])

    def pos(self, cid, role):
        for i, pr in enumerate(self.seq):
            if pr == (cid, role):
                return i
        raise MovieError("no passage (%s, %s)" % (cid, role))

    def _insert(self, index, passages, new_slots):
        """Insert passages at index; new_slots are the len(passages) slot
        tokens that follow each inserted passage."""
        if len(new_slots) != len(passages):
            raise MovieError("need one new slot per inserted passage")
        self.seq[index:index] = passages
        self.slots[index + 1:index + 1] = new_slots
        self._reunify()

    def _remove(self, indices):
        for i in sorted(indices, reverse=True):
            del self.seq[i]
            del self.slots[i + 1]
        self._reunify()

    def _record(self, cid):
        io = self.pos(cid, "o")
        iu = self.pos(cid, "u")
        self.curve_records.append((
            self.seg_uf.find(self.seg[cid]),
            self.tok_uf.find(self.slots[io]),
            self.tok_uf.find(self.slots[iu]),
            self.tok_uf.find(self.slots[iu + 1]),
            self.signs[cid],
        ))

    # -- events ------------------------------------------------------------

    def r2_birth(self, a, b, over_at, under_at, sign_a=1, under_reversed=False):
        """Push one strand across another: new crossings a (met first along
        the over strand) and b.  over_at/under_at are seq indices where the
        over pair and the under pair are inserted; the under strand meets the
        lens in the same a-then-b order when the strands run parallel and in
        the reverse order when antiparallel (under_reversed)."""
        if a in self.signs or b in self.signs:
            raise MovieError("crossing ids must be fresh")
        self.signs[a], self.signs[b] = sign_a, -sign_a
        s = self._seg()
        self.seg[a] = s
        self.seg[b] = self._seg()
        self.seg_uf.union(self.seg[a], self.seg[b])
        upair = [(b, "u"), (a, "u")] if under_reversed else [(a, "u"), (b, "u")]
        if over_at <= under_at:
            self._insert(under_at, upair, [self._tok(), self._tok()])
            self._insert(over_at, [(a, "o"), (b, "o")], [self._tok(), self._tok()])
        else:
            self._insert(over_at, [(a, "o"), (b, "o")], [self._tok(), self._tok()])
            self._insert(under_at, upair, [self._tok(), self._tok()])
        # under mid slot is a fresh piece; the outer under slots reconnect
        iu = min(self.pos(a, "u"), self.pos(b, "u"))
        if iu + 1 >= len(self.seq) or self.seq[iu + 1][1] != "u":
            raise MovieError("r2 birth under passages not adjacent")
        self.tok_uf.union(self.slots[iu], self.slots[iu + 2])
        self._reunify()

    def r2_death(self, a, b):
        ia_o, ib_o = self.pos(a, "o"), self.pos(b, "o")
        ia_u, ib_u = self.pos(a, "u"), self.pos(b, "u")
        if abs(ia_o - ib_o) != 1 or abs(ia_u - ib_u) != 1:
            raise MovieError("r2 death needs adjacent passage pairs")
        self._record(a)
        self._record(b)
        self.seg_uf.union(self.seg[a], self.seg[b])
        lo, hi = min(ia_u, ib_u), max(ia_u, ib_u)
        self.tok_uf.union(self.slots[lo], self.slots[hi + 1])
        self._remove([ia_o, ib_o, ia_u, ib_u])
        del self.signs[a], self.seg[a], self.signs[b], self.seg[b]

    def r1_birth(self, at, k, sign, under_first=True):
        if k in self.signs:
            raise MovieError("crossing id must be fresh")
        self.signs[k] = sign
        self.seg[k] = self._seg()
        roles = [("u", "o")] if under_first else [("o", "u")]
        (r1, r2), = roles
        self._insert(at, [(k, r1), (k, r2)], [self._tok(), self._tok()])
        i = self.pos(k, "u")
        # the kink loop does not disconnect the sheet: branch-curve identity
        self.tok_uf.union(self.slots[i], self.slots[i + 1])
        self._reunify()
        self.branch_records.append(("?", self.seg_uf.find(self.seg[k]),
                                    self.tok_uf.find(self.slots[i])))

    def r1_death(self, k):
        i1, i2 = sorted((self.pos(k, "o"), self.pos(k, "u")))
        if i2 - i1 != 1:
            raise MovieError("r1 death needs an empty kink loop")
        self._record(k)
        iu = self.pos(k, "u")
        self.tok_uf.union(self.slots[iu], self.slots[iu + 1])
        self.branch_records.append(("?", self.seg_uf.find(self.seg[k]),
                                    self.tok_uf.find(self.slots[iu])))
        self._remove([i1, i2])
        del self.signs[k], self.seg[k]

    def _usign(self, cid):
        return self.signs[cid] > 0

    def r3(self, cids):
        """Triangle move on three crossings; the top/mid/bottom roles are
        derived from the adjacency pattern of their passages."""
        assignment = None
        for tm in cids:
            for tb in cids:
                for mb in cids:
                    if len({tm, tb, mb}) != 3:
                        continue
                    try:
                        ok = (abs(self.pos(tm, "o") - self.pos(tb, "o")) == 1
                              and abs(self.pos(tm, "u") - self.pos(mb, "o")) == 1
                              and abs(self.pos(tb, "u") - self.pos(mb, "u")) == 1)
                    except MovieError:
                        ok = False
                    if ok:
                        if assignment is not None and assignment != (tm, tb, mb):
                            raise MovieError("ambiguous triangle %s" % (cids,))
                        assignment = (tm, tb, mb)
        if assignment is None:
            raise MovieError("no triangle adjacency on %s" % (cids,))
        tm, tb, mb = assignment

        # record the halves of tb and mb that end here, with pre-event flanks
        self._record(tb)
        self._record(mb)
        old_seg_tb, old_seg_mb = self.seg_uf.find(self.seg[tb]), self.seg_uf.find(self.seg[mb])

        # bottom strand data before the swap
        i_tb_u, i_mb_u = self.pos(tb, "u"), self.pos(mb, "u")
        first, second = (tb, mb) if i_tb_u < i_mb_u else (mb, tb)
        i1, i2 = min(i_tb_u, i_mb_u), max(i_tb_u, i_mb_u)
        s_in = self.tok_uf.find(self.slots[i1])
        s_mid = self.tok_uf.find(self.slots[i1 + 1])
        s_out = self.tok_uf.find(self.slots[i2 + 1])
        s_mid2 = self._tok()

        top_tok = self.tok_uf.find(self.slots[self.pos(tm, "o")])
        i_tm_u = self.pos(tm, "u")
        m_in = self.tok_uf.find(self.slots[i_tm_u])
        m_out = self.tok_uf.find(self.slots[i_tm_u + 1])
        m_plus, m_minus = (m_out, m_in) if self._usign(tm) else (m_in, m_out)

        # quadrant signs: alpha = side of the top sheet (tb's cut),
        # beta = side of the middle sheet (mb's cut)
        def side(cid, is_after_half):
            return "+" if (is_after_half == self._usign(cid)) else "-"

        quads = {}
        quads[(side(tb, first is tb), side(mb, first is mb))] = s_in
        quads[(side(tb, first is not tb), side(mb, first is mb))] = s_mid
        quads[(side(tb, first is tb), side(mb, first is not mb))] = s_mid2
        quads[(side(tb, first is not tb), side(mb, first is not mb))] = s_out

        # perform the three adjacent swaps
        i_tm_o, i_tb_o = self.pos(tm, "o"), self.pos(tb, "o")
        self.seq[i_tm_o], self.seq[i_tb_o] = self.seq[i_tb_o], self.seq[i_tm_o]
        i_tm_u, i_mb_o = self.pos(tm, "u"), self.pos(mb, "o")
        self.seq[i_tm_u], self.seq[i_mb_o] = self.seq[i_mb_o], self.seq[i_tm_u]
        i1 = min(self.pos(tb, "u"), self.pos(mb, "u"))
        self.seq[i1], self.seq[i1 + 1] = self.seq[i1 + 1], self.seq[i1]
        self.slots[i1 + 1] = s_mid2
        # the slot between the swapped middle passages flips to the other
        # side of the tm cut; re-deriving the over-merges fixes it up
        i_tm_u = self.pos(tm, "u")
        lo = min(i_tm_u, self.pos(mb, "o"))
        self.slots[lo + 1] = self._tok()
        self._reunify()

        self.seg[tb] = self._seg()
        self.seg[mb] = self._seg()
        new_seg_tb, new_seg_mb = self.seg_uf.find(self.seg[tb]), self.seg_uf.find(self.seg[mb])

        tb_plus, tb_minus = ((new_seg_tb, old_seg_tb) if self._usign(mb) == (first is mb)
                             else (old_seg_tb, new_seg_tb))
        mb_plus, mb_minus = ((old_seg_mb, new_seg_mb) if self._usign(tb) == (first is not tb)
                             else (new_seg_mb, old_seg_mb))
        self.triple_records.append({
            "top": top_tok, "mplus": m_plus, "mminus": m_minus,
            "bpp": quads[("+", "+")], "bpm": quads[("+", "-")],
            "bmp": quads[("-", "+")], "bmm": quads[("-", "-")],
            "tm": self.seg_uf.find(self.seg[tm]),
            "tbplus": tb_plus, "tbminus": tb_minus,
            "mbplus": mb_plus, "mbminus": mb_minus,
        })

    # -- closure and emission ----------------------------------------------

    def compile(self, flip=False, branch_signs=None, perm=None) -> Diagram:
        """Close the movie up and emit the swept diagram.

        perm maps each surviving crossing id to the initial id it lands on
        when the final still is identified with the initial one (identity if
        omitted); the final sequence under this renaming must reproduce the
        initial sequence, signs included.
        """
        seq0, slots0, seg0 = self.initial
        perm = perm or {}
        renamed = [(perm.get(c, c), r) for c, r in self.seq]
        if renamed != seq0:
            raise MovieError("movie is not closed: %s vs %s" % (renamed, seq0))
        for c in self.signs:
            if self.signs[c] != self.signs.get(perm.get(c, c), self.signs[c]):
                raise MovieError("closure changes the sign of %s" % c)
        for s_now, s_then in zip(self.slots, slots0):
            self.tok_uf.union(s_now, s_then)
        for c in self.signs:
            self.seg_uf.union(self.seg[c], seg0[perm.get(c, c)])
        for c in self.signs:
            self._record(c)

        # sheets: number the token classes
        toks = []
        def tok_id(t):
            t = self.tok_uf.find(t)
            if t not in toks:
                toks.append(t)
            return toks.index(t) + 1

        curves = {}
        for seg, over, t_in, t_out, sign in self.curve_records:
            seg = self.seg_uf.find(seg)
            up, um = (t_out, t_in) if (sign > 0) != flip else (t_in, t_out)
            data = (tok_id(over), tok_id(up), tok_id(um))
            if seg in curves and curves[seg] != data:
                raise MovieError("inconsistent curve data on segment %d: %s vs %s"
                                 % (seg, curves[seg], data))
            curves[seg] = data
        seg_ids = {}
        def seg_id(s):
            s = self.seg_uf.find(s)
            if s not in seg_ids:
                seg_ids[s] = len(seg_ids) + 1
            return seg_ids[s]

        curve_rows = []
        for seg in sorted(curves):
            cid = seg_id(seg)
            over, up, um = curves[seg]
            curve_rows.append((cid, over, up, um))
        curve_rows.sort()

        triples = []
        for i, tr in enumerate(self.triple_records, start=1):
            triples.append(TriplePoint(
                i, tok_id(tr["top"]), tok_id(tr["mplus"]), tok_id(tr["mminus"]),
                tok_id(tr["bpp"]), tok_id(tr["bpm"]), tok_id(tr["bmp"]), tok_id(tr["bmm"]),
                seg_id(tr["tm"]), seg_id(tr["mbplus"]), seg_id(tr["mbminus"]),
                seg_id(tr["tbplus"]), seg_id(tr["tbminus"])))

        if branch_signs is None:
            branch_signs = [1] * len(self.branch_records)
        if len(branch_signs) != len(self.branch_records):
            raise MovieError("need %d branch signs" % len(self.branch_records))
        branches = []
        order = sorted(range(len(self.branch_records)),
                       key=lambda i: -branch_signs[i])
        for n, i in enumerate(order, start=1):
            _s, seg, tok = self.branch_records[i]
            branches.append(BranchPoint(n, branch_signs[i], seg_id(seg), tok_id(tok)))

        # make sure every slot's sheet is numbered even without singularities
        for s in self.slots:
            tok_id(s)

        d = Diagram(self.name, len(toks),
                    tuple(DoubleCurve(*row) for row in curve_rows),
                    tuple(triples), tuple(branches))
        report = validate_diagram(d)
        if report:
            raise MovieError("compiled diagram invalid: %s" % "; ".join(report))
        return d


def trefoil_tangle():
    """The 3-crossing still of the torus-knot tangle: passages N -> S."""
    seq = [("T", "o"), ("M", "u"), ("B", "o"), ("T", "u"), ("M", "o"), ("B", "u")]
    signs = {"T": 1, "M": 1, "B": 1}
    return seq, signs


def spun_trefoil_diagram(flip=False) -> Diagram:
    seq, signs = trefoil_tangle()
    m = SpunMovie(seq, signs, name="spun_trefoil")
    return m.compile(flip=flip)
