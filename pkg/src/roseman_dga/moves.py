"""Tame isomorphisms, algebraic (de)stabilization and move-script replay.

The workhorse is generic pair cancellation: if d(x) = c*y + r with c a unit
and y a generator absent from r, then (x, y) spans an acyclic factor and can
be removed, substituting y -> -c^{-1} r and x -> 0 everywhere else.  A
"destabilization along H -> L" greedily cancels every generator whose index
tuple mentions the labels H or L.  Scripts chain such steps and record a
trace of every cancellation for audit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Element, Generator, GEN_INFO
from .differential import Dga, boundary, check_d_squared
from .laurent import Laurent, ONE


class MoveError(ValueError):
    pass


class StallError(MoveError):
    def __init__(self, message, survivors):
        super().__init__(message)
        self.survivors = survivors


# -- elementary isomorphisms ----------------------------------------------


@dataclass(frozen=True)
class ElementaryIso:
    """phi(target) = unit * target + tail, identity on every other generator."""
    target: Generator
    unit: Laurent
    tail: Element


def apply_elementary_iso(dga: Dga, iso: ElementaryIso) -> Dga:
    g, unit, tail = iso.target, iso.unit, iso.tail
    if g not in dga.diff:
        raise MoveError("iso target %s is not a generator" % g.name)
    if not unit.is_unit():
        raise MoveError("iso coefficient must be a unit of Z[mu,mu^-1]")
    if tail and tail.degree() != g.deg:
        raise MoveError("iso tail must be homogeneous of degree %d" % g.deg)
    if tail.mentions(g):
        raise MoveError("iso tail may not contain the target generator")

    image = Element.gen(g).scale(unit) + tail
    new_diff = {}
    for h, dh in dga.diff.items():
        if h is not g:
            new_diff[h] = dh.substitute(g, image)
    # d'(target) is pinned by the chain-map condition d'(phi(g)) = phi(d(g))
    tmp = Dga(dga.name, dga.variant, dga.sheet_count, dict(new_diff, **{g: Element.zero()}))
    d_tail = boundary(tmp, tail)
    new_diff[g] = (dga.diff[g].substitute(g, image) - d_tail).scale(unit.unit_inverse())
    return Dga(dga.name, dga.variant, dga.sheet_count, new_diff)


# -- stabilization ---------------------------------------------------------


def stabilize(dga: Dga, degree: int) -> Dga:
    """Adjoin an acyclic pair e1, e2 with d(e1) = e2, d(e2) = 0, deg(e2) = degree."""
    used = {g.args[0] for g in dga.diff if g.kind == "stab"}
    index = max(used, default=0) + 1
    e1 = Generator("stab", (index, 1), degree)
    e2 = Generator("stab", (index, 2), degree)
    diff = dict(dga.diff)
    diff[e1] = Element.gen(e2)
    diff[e2] = Element.zero()
    return Dga(dga.name, dga.variant, dga.sheet_count, diff)


# -- pair cancellation -----------------------------------------------------


def cancel_shape(dga: Dga, x: Generator, y: Generator):
    """If d(x) = c*y + r is cancellable, return (c, r); otherwise None."""
    if x not in dga.diff or y not in dga.diff or x is y:
        return None
    if x.deg != y.deg + 1:
        return None
    dx = dga.diff[x]
    c = dx.terms.get((y,))
    if c is None or not c.is_unit():
        return None
    r = dx - Element.word((y,), c)
    if any(y in w for w in r.terms):
        return None
    return c, r


def cancel_pair(dga: Dga, x: Generator, y: Generator, _index=None) -> Dga:
    shape = cancel_shape(dga, x, y)
    if shape is None:
        raise MoveError("d(%s) does not have the shape unit*%s + rest" % (x.name, y.name))
    c, r = shape
    rep = r.scale(c.unit_inverse()).scale(Laurent.of(-1))
    diff = dict(dga.diff)
    del diff[x]
    del diff[y]
    if _index is None:
        touched = list(diff.keys())
    else:
        touched = list(_index.get(x, set()) | _index.get(y, set()))
    for h in touched:
        if h is x or h is y or h not in diff:
            continue
        dh = diff[h]
        if dh.mentions(x):
            dh = dh.substitute(x, Element.zero())
        if dh.mentions(y):
            dh = dh.substitute(y, rep)
        diff[h] = dh
    return Dga(dga.name, dga.variant, dga.sheet_count, diff)


# -- destabilization along a label pair ------------------------------------

_NAMESPACES = {"s": "sheet", "c": "curve", "t": "triple", "b": "branch"}


def _gen_mentions_label(g: Generator, ns: str, label: int) -> bool:
    if g.kind == "stab":
        return False
    spaces = GEN_INFO[g.kind][1]
    return any(space == ns and arg == label for space, arg in zip(spaces, g.args))


def doomed_generators(dga: Dga, high, low):
    ns_h, id_h = high
    ns_l, id_l = low
    return {g for g in dga.diff
            if _gen_mentions_label(g, ns_h, id_h) or _gen_mentions_label(g, ns_l, id_l)}


def _occurrence_index(dga: Dga):
    index = {}
    for h, dh in dga.diff.items():
        for g in dh.generators():
            index.setdefault(g, set()).add(h)
    return index


def _canonical_partner(g: Generator, high, low, diag_uplus=True):
    """The generator a doomed x cancels against: its high-label slot resolved
    one level down to the low label.  None marks y-material (generators that
    are themselves somebody's partner).

    For a curve -> sheet destabilization the two diagonal generators
    a21(H, L) and a12(L, H) split between a2(H) and a22(H, H); which one
    a2(H) takes depends on whether L is the curve's uplus (diag_uplus) or
    uminus under-sheet.
    """
    H, L = high[1], low[1]
    k, a = g.kind, g.args
    if high[0] == "c":  # curve -> sheet
        if k == "a21" and a[0] == H:
            return None if a[1] == L else Generator("a11", (L, a[1]))
        if k == "a12" and a[1] == H:
            return None if a[0] == L else Generator("a11", (a[0], L))
        if k == "a2" and a[0] == H:
            return Generator("a21", (H, L)) if diag_uplus else Generator("a12", (L, H))
        if k == "a22" and a == (H, H):
            return Generator("a12", (L, H)) if diag_uplus else Generator("a21", (H, L))
        if k == "a22" and a[1] == H:
            return Generator("a21", (a[0], L))
        if k == "a22" and a[0] == H:
            return Generator("a12", (L, a[1]))
        if k == "a32" and a[1] == H:
            return Generator("a31", (a[0], L))
        if k == "a23" and a[0] == H:
            return Generator("a13", (L, a[1]))
        if k == "ab2" and a[1] == H:
            return Generator("ab1", (a[0], L))
        if k == "a2b" and a[0] == H:
            return Generator("a1b", (L, a[1]))
        return None
    if high[0] == "t":  # triple -> curve
        if k == "a31" and a[0] == H:
            return Generator("a21", (L, a[1]))
        if k == "a13" and a[1] == H:
            return Generator("a12", (a[0], L))
        if k == "a3" and a[0] == H:
            return Generator("a2", (L,))
        if k == "a32" and a[0] == H:
            return Generator("a22", (L, a[1]))
        if k == "a23" and a == (L, H):
            return None  # partner of a33(H, H)
        if k == "a23" and a[1] == H:
            return Generator("a22", (a[0], L))
        if k == "a33" and a == (H, H):
            return Generator("a23", (L, H))
        if k == "a33" and a[0] == H:
            return Generator("a23", (L, a[1]))
        if k == "a33" and a[1] == H:
            return Generator("a32", (a[0], L))
        if k == "ab3" and a[1] == H:
            return Generator("ab2", (a[0], L))
        if k == "a3b" and a[0] == H:
            return Generator("a2b", (L, a[1]))
        return None
    # branch -> curve
    if k == "ab1" and a[0] == H:
        return Generator("a21", (L, a[1]))
    if k == "a1b" and a[1] == H:
        return Generator("a12", (a[0], L))
    if k == "ab" and a[0] == H:
        return Generator("a2", (L,))
    if k == "ab2" and a[0] == H:
        return Generator("a22", (L, a[1]))
    if k == "a2b" and a == (L, H):
        return None  # partner of abb(H, H)
    if k == "a2b" and a[1] == H:
        return Generator("a22", (a[0], L))
    if k == "abb" and a == (H, H):
        return Generator("a2b", (L, H))
    if k == "abb" and a[0] == H:
        return Generator("a2b", (L, a[1]))
    if k == "abb" and a[1] == H:
        return Generator("ab2", (a[0], L))
    if k == "ab3" and a[0] == H:
        return Generator("a23", (L, a[1]))
    if k == "a3b" and a[1] == H:
        return Generator("a32", (a[0], L))
    return None


def destabilize_along(dga: Dga, high, low, trace=None) -> Dga:
    """Cancel every generator mentioning the labels high or low.

    high/low are (namespace, id) pairs with namespace one of s/c/t/b; the
    admissible shapes are (c, s), (t, c) and (b, c).  Generators mentioning
    the high label cancel, in ascending (degree, name) order, against their
    canonical partner: the same index tuple with the high slot resolved one
    level down to the low label.  This is the pairing every hand-written
    destabilization sequence follows, and in that order each differential
    has the required unit*y + rest shape when its turn comes.
    """
    if (high[0], low[0]) not in (("c", "s"), ("t", "c"), ("b", "c")):
        raise MoveError("destabilization goes curve->sheet, triple->curve or branch->curve")
    doomed = doomed_generators(dga, high, low)
    index = _occurrence_index(dga)
    diag_uplus = True
    if high[0] == "c":
        a2h = Generator("a2", (high[1],))
        if a2h in dga.diff:
            diag_uplus = (Generator("a21", (high[1], low[1])),) in dga.diff[a2h].terms
    pairs = []
    paired = set()
    for x in sorted(doomed, key=lambda g: g.sort_key()):
        y = _canonical_partner(x, high, low, diag_uplus)
        if y is None:
            continue
        if y not in dga.diff or y in paired:
            raise MoveError("no canonical partner available for %s" % x.name)
        pairs.append((x, y))
        paired.add(x)
        paired.add(y)
    unpaired = doomed - paired
    if unpaired:
        survivors = {g: dga.diff[g] for g in sorted(unpaired, key=lambda g: g.sort_key())}
        raise StallError(
            "destabilization along %s%d -> %s%d leaves %d generators unpaired"
            % (high[0], high[1], low[0], low[1], len(unpaired)), survivors)
    # Worklist over the canonical pairs: substitutions from executed pairs can
    # be needed to bring a deferred pair's differential into cancellable shape,
    # so retry deferred pairs after every successful cancellation.
    while pairs:
        pick = None
        for k, (x, y) in enumerate(pairs):
            shape = cancel_shape(dga, x, y)
            if shape is not None:
                pick = (k, x, y, shape)
                break
        if pick is None:
            survivors = {x: dga.diff[x] for x, _y in pairs}
            raise StallError(
                "destabilization along %s%d -> %s%d stalled with %d pairs uncancellable"
                % (high[0], high[1], low[0], low[1], len(pairs)), survivors)
        k, x, y, (c, r) = pick
        del pairs[k]
        if trace is not None:
            trace.append("cancel x=%s y=%s c=%s r=%s" % (x.name, y.name, c, r))
        touched = (index.get(x, set()) | index.get(y, set())) - {x, y}
        dga = cancel_pair(dga, x, y, _index=index)
        for h in touched:
            if h not in dga.diff:
                continue
            for g in list(index.keys()):
                index[g].discard(h)
            for g in dga.diff[h].generators():
                index.setdefault(g, set()).add(h)
        index.pop(x, None)
        index.pop(y, None)
    return dga


# -- relabeling and comparison ----------------------------------------------


def relabel_generator(g: Generator, mapping) -> Generator:
    if g.kind == "stab":
        return g
    spaces = GEN_INFO[g.kind][1]
    args = tuple(mapping.get(space, {}).get(arg, arg) for space, arg in zip(spaces, g.args))
    return Generator(g.kind, args)


def relabel_element(e: Element, mapping) -> Element:
    out = Element.zero()
    for w, c in e.terms.items():
        out += Element.word(tuple(relabel_generator(g, mapping) for g in w), c)
    return out


def relabel_dga(dga: Dga, mapping) -> Dga:
    diff = {}
    for g, dg_ in dga.diff.items():
        diff[relabel_generator(g, mapping)] = relabel_element(dg_, mapping)
    if len(diff) != len(dga.diff):
        raise MoveError("relabeling map is not injective on the generator set")
    return Dga(dga.name, dga.variant, dga.sheet_count, diff)


def dga_equal_up_to_relabel(a: Dga, b: Dga, mapping):
    """Relabel a by mapping and compare generator sets and differentials.

    Returns (True, None) or (False, first discrepancy description).
    """
    ra = relabel_dga(a, mapping)
    gens_a = {g.name: g for g in ra.diff}
    gens_b = {g.name: g for g in b.diff}
    for name in sorted(gens_a.keys() - gens_b.keys()):
        return False, "generator %s only on the left" % name
    for name in sorted(gens_b.keys() - gens_a.keys()):
        return False, "generator %s only on the right" % name
    for name in sorted(gens_a):
        da, db = ra.diff[gens_a[name]], b.diff[gens_b[name]]
        if da != db:
            return False, "d %s differs: %s vs %s" % (name, da, db)
    return True, None


# -- scripts ----------------------------------------------------------------


@dataclass
class MoveScript:
    steps: list = field(default_factory=list)

    @staticmethod
    def parse(text: str) -> "MoveScript":
        from .algebra import parse_generator

        steps = []
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            op = tokens[0]
            if op == "destab":
                if len(tokens) != 4 or tokens[2] != "->":
                    raise MoveError("line %d: destab <ns>:<id> -> <ns>:<id>" % line_no)
                high = _parse_labelref(tokens[1], line_no)
                low = _parse_labelref(tokens[3], line_no)
                steps.append(("destab", high, low))
            elif op == "cancel":
                if len(tokens) != 3:
                    raise MoveError("line %d: cancel <gen> <gen>" % line_no)
                steps.append(("cancel", parse_generator(tokens[1]), parse_generator(tokens[2])))
            elif op == "stab":
                steps.append(("stab", int(tokens[1])))
            elif op == "relabel":
                mapping = {}
                for tok in tokens[1:]:
                    src, dst = tok.split("=", 1)
                    ns, old = src[0], int(src[1:])
                    ns2, new = dst[0], int(dst[1:])
                    if ns not in _NAMESPACES or ns2 != ns:
                        raise MoveError("line %d: bad relabel pair %r" % (line_no, tok))
                    mapping.setdefault(ns, {})[old] = new
                steps.append(("relabel", mapping))
            else:
                raise MoveError("line %d: unknown step %r" % (line_no, op))
        return MoveScript(steps)


def _parse_labelref(token: str, line_no: int):
    name, _, ident = token.partition(":")
    prefixes = {"curve": "c", "sheet": "s", "triple": "t", "branch": "b"}
    if name not in prefixes or not ident.startswith(prefixes[name]):
        raise MoveError("line %d: bad label reference %r" % (line_no, token))
    return prefixes[name], int(ident[1:])


def run_move_script(dga: Dga, script: MoveScript, strict: bool = True):
    """Apply script steps in order; returns (dga, trace lines).

    In strict mode dualsquared = 0 is re-verified after every step; the first
    failing step aborts with the trace collected so far attached.
    """
    trace = []
    for step in script.steps:
        op = step[0]
        try:
            if op == "destab":
                trace.append("destab %s%d -> %s%d" % (step[1][0], step[1][1], step[2][0], step[2][1]))
                dga = destabilize_along(dga, step[1], step[2], trace=trace)
            elif op == "cancel":
                x, y = step[1], step[2]
                shape = cancel_shape(dga, x, y)
                if shape is None:
                    raise MoveError("cannot cancel (%s, %s)" % (x.name, y.name))
                trace.append("cancel x=%s y=%s c=%s r=%s" % (x.name, y.name, shape[0], shape[1]))
                dga = cancel_pair(dga, x, y)
            elif op == "stab":
                trace.append("stab %d" % step[1])
                dga = stabilize(dga, step[1])
            elif op == "relabel":
                trace.append("relabel")
                dga = relabel_dga(dga, step[1])
        except MoveError as exc:
            exc.trace = trace
            raise
        if strict:
            failures = check_d_squared(dga)
            if failures:
                g, residue = failures[0]
                err = MoveError("d^2 != 0 after step %r: d(d(%s)) = %s" % (step[0], g.name, residue))
                err.trace = trace
                raise err
    return dga, trace
