"""Free unital graded noncommutative algebra over Z[mu, mu^-1].

Generators are indexed by sheets (s), double curves (c), triple points (t)
and positive branch points (b) of a diagram, plus stabilization generators.
Words are ordered tuples of generators; elements are sparse sums of words
with Laurent coefficients, kept in a canonical form with scalars collected
on the left and no zero terms.

The diagonal degree-0 generator is never materialized: asking for it yields
the scalar 1 + mu instead.
"""

from __future__ import annotations

from .laurent import Laurent, ONE, ONE_PLUS_MU

# degree and argument namespaces per generator family; namespace letters are
# s(heet), c(urve), t(riple), b(ranch)
GEN_INFO = {
    "a11": (0, "ss"),
    "a21": (1, "cs"),
    "a12": (1, "sc"),
    "a22": (2, "cc"),
    "a2": (2, "c"),
    "a31": (2, "ts"),
    "a13": (2, "st"),
    "ab1": (2, "bs"),
    "a1b": (2, "sb"),
    "a32": (3, "tc"),
    "a23": (3, "ct"),
    "ab2": (3, "bc"),
    "a2b": (3, "cb"),
    "a3": (3, "t"),
    "ab": (3, "b"),
    "a33": (4, "tt"),
    "ab3": (4, "bt"),
    "a3b": (4, "tb"),
    "abb": (4, "bb"),
}


class Generator:
    """A single noncommuting generator.  Interned: equal generators are identical."""

    __slots__ = ("kind", "args", "deg", "name", "_h")
    _cache: dict = {}

    def __new__(cls, kind, args, deg=None):
        args = tuple(args)
        key = (kind, args, deg)
        g = cls._cache.get(key)
        if g is not None:
            return g
        g = object.__new__(cls)
        if kind == "stab":
            # args = (index, part) with part 1 or 2; deg is the degree of the
            # part-2 generator, so part 1 sits one degree higher
            index, part = args
            g.deg = deg + 1 if part == 1 else deg
            g.name = "stab%d.%d" % (index, part)
        else:
            base_deg, spaces = GEN_INFO[kind]
            if len(args) != len(spaces):
                raise ValueError("%s takes %d ids" % (kind, len(spaces)))
            g.deg = base_deg
            g.name = "%s(%s)" % (kind, ",".join(ns + str(a) for ns, a in zip(spaces, args)))
        g.kind = kind
        g.args = args
        g._h = hash((kind, args, deg))
        cls._cache[key] = g
        return g

    def __hash__(self):
        return self._h

    def __repr__(self):
        return self.name

    def sort_key(self):
        return (self.deg, self.name)


def parse_generator(text: str) -> Generator:
    text = text.strip()
    if text.startswith("stab"):
        index, part = text[4:].split(".")
        raise ValueError("stab generators need an explicit degree to parse: %s" % text)
    kind, rest = text.split("(", 1)
    args = [int(a.strip()[1:]) for a in rest.rstrip(")").split(",")]
    return Generator(kind, args)


def word_key(word):
    return (sum(g.deg for g in word), tuple(g.name for g in word))


class Element:
    """Z[mu,mu^-1]-linear combination of words in noncommuting generators."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for w, c in terms.items():
                if c:
                    t[w] = c
        self.terms = t

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Element":
        return Element()

    @staticmethod
    def scalar(c: Laurent) -> "Element":
        return Element({(): c})

    @staticmethod
    def gen(g: Generator) -> "Element":
        return Element({(g,): ONE})

    @staticmethod
    def word(gens, coeff: Laurent = ONE) -> "Element":
        return Element({tuple(gens): coeff})

    # -- structure ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((w, hash(c)) for w, c in self.terms.items()))

    def __add__(self, other: "Element") -> "Element":
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w)
            s = c if s is None else s + c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        out = Element()
        out.terms = t
        return out

    def __neg__(self) -> "Element":
        out = Element()
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, other: "Element") -> "Element":
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = t.get(w)
                s = c if s is None else s + c
                if s:
                    t[w] = s
                else:
                    t.pop(w, None)
        out = Element()
        out.terms = t
        return out

    def scale(self, c: Laurent) -> "Element":
        if not c:
            return Element()
        out = Element()
        out.terms = {w: v * c for w, v in self.terms.items()}
        return out

    # -- grading -----------------------------------------------------------

    def degree(self):
        """Common degree of all words, or None if 0 or inhomogeneous."""
        degs = {sum(g.deg for g in w) for w in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self) -> bool:
        return len({sum(g.deg for g in w) for w in self.terms}) <= 1

    # -- substitution ------------------------------------------------------

    def mentions(self, g: Generator) -> bool:
        return any(g in w for w in self.terms)

    def generators(self):
        seen = set()
        for w in self.terms:
            seen.update(w)
        return seen

    def substitute(self, g: Generator, replacement: "Element") -> "Element":
        """Algebra-map substitution g -> replacement, applied in every word."""
        out = Element()
        for w, c in self.terms.items():
            if g not in w:
                out += Element({w: c})
                continue
            piece = Element.scalar(c)
            run = []
            for f in w:
                if f is g:
                    if run:
                        piece = piece * Element.word(run)
                        run = []
                    piece = piece * replacement
                else:
                    run.append(f)
            if run:
                piece = piece * Element.word(run)
            out += piece
        return out

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=word_key):
            c = self.terms[w]
            if w:
                parts.append("(%s) %s" % (c, "*".join(g.name for g in w)))
            else:
                parts.append("(%s)" % c)
        return " + ".join(parts)

    __repr__ = __str__


def gen_elem(kind: str, *args) -> Element:
    """The one-generator element, with the diagonal degree-0 case folded to 1+mu."""
    if kind == "a11" and args[0] == args[1]:
        return Element.scalar(ONE_PLUS_MU)
    return Element.gen(Generator(kind, args))


def parse_element(text: str, stab_degrees=None) -> Element:
    """Inverse of str() on elements; stab generator degrees via stab_degrees map."""
    from .laurent import parse_laurent

    text = text.strip()
    if text == "0":
        return Element()
    out = Element()
    for term in text.split(" + ("):
        term = term.strip()
        if term.startswith("("):
            term = term[1:]
        coeff_txt, _, word_txt = term.partition(")")
        coeff = parse_laurent(coeff_txt)
        word_txt = word_txt.strip()
        if not word_txt:
            out += Element.scalar(coeff)
            continue
        gens = []
        for name in word_txt.split("*"):
            name = name.strip()
            if name.startswith("stab"):
                index, part = (int(x) for x in name[4:].split("."))
                if stab_degrees is None or index not in stab_degrees:
                    raise ValueError("unknown stab generator degree for %s" % name)
                gens.append(Generator("stab", (index, part), stab_degrees[index]))
            else:
                gens.append(parse_generator(name))
        out += Element.word(gens, coeff)
    return out
