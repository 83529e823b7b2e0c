"""Characteristic-algebra presentations and finite-field map counting.

A presentation is generators plus relation elements; an algebra map to F_p
assigns every generator a value and mu a unit so that each relation, with
words read as commutative products, evaluates to zero.  Counting proceeds
layer by layer: homogeneity makes a degree-d relation affine-linear in the
degree-d generator values once everything of lower degree is fixed, so only
the degree-0 layer needs search, and a higher layer is enumerated explicitly
only when its values feed the inhomogeneous part of a later layer.

A brute-force counter over all assignments serves as the independent oracle
for the layered solver on small presentations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Element, Generator
from .differential import Dga


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class Presentation:
    name: str
    generators: list
    relations: list

    def dump(self) -> str:
        lines = ["pres %s" % self.name]
        for g in self.generators:
            lines.append("gen %s deg=%d" % (g.name, g.deg))
        for r in self.relations:
            lines.append("rel %s" % r)
        return "\n".join(lines) + "\n"


@dataclass
class MapCount:
    p: int
    total: int
    exact: bool
    nodes: int
    layer_report: dict = field(default_factory=dict)

    @property
    def p_valuation(self) -> int:
        if self.total == 0:
            return 0
        v, t = 0, self.total
        while t % self.p == 0:
            t //= self.p
            v += 1
        return v

    @property
    def p_free_part(self) -> int:
        return self.total // (self.p ** self.p_valuation) if self.total else 0

    def report_line(self) -> str:
        total = str(self.total) if self.exact else "partial(%d)" % self.total
        return "count p=%d total=%s v_p=%d pfree=%d" % (
            self.p, total, self.p_valuation, self.p_free_part)


def characteristic_presentation(dga: Dga) -> Presentation:
    gens = sorted(dga.diff, key=lambda g: g.sort_key())
    relations = [dga.diff[g] for g in gens if dga.diff[g]]
    return Presentation(dga.name, gens, relations)


def hr0_presentation(dga: Dga) -> Presentation:
    """Degree-0 generators modulo the boundaries of the degree-1 generators."""
    gens = sorted((g for g in dga.diff if g.deg == 0), key=lambda g: g.sort_key())
    rels = [dga.diff[g] for g in sorted(dga.diff, key=lambda g: g.sort_key())
            if g.deg == 1 and dga.diff[g]]
    return Presentation(dga.name + ".hr0", gens, rels)


def _units(p: int):
    return range(1, p)


# -- compiled form ---------------------------------------------------------


class _CompiledRelation:
    __slots__ = ("degree", "linear", "lower", "feeds")

    def __init__(self, degree, linear, lower):
        self.degree = degree
        self.linear = linear    # [(coeff Laurent, cofactor idx tuple (deg 0), var idx)]
        self.lower = lower      # [(coeff Laurent, idx tuple, degrees tuple)]


class _Compiled:
    def __init__(self, pres: Presentation, p: int):
        self.p = p
        self.vars = list(pres.generators)
        self.index = {g: i for i, g in enumerate(self.vars)}
        self.deg = [g.deg for g in self.vars]
        degrees = sorted({d for d in self.deg})
        self.layers = [d for d in degrees]
        self.layer_vars = {d: [i for i, dd in enumerate(self.deg) if dd == d] for d in degrees}
        self.rels_by_degree = {}
        self.fed_by = {}  # degree d >= 1 -> var indices of degree d feeding later layers
        self.fed0 = set()  # degree-0 vars appearing anywhere (must be enumerated)
        for rel in pres.relations:
            deg = rel.degree()
            if deg is None and rel:
                raise ValueError("inhomogeneous relation: %s" % rel)
            if not rel:
                continue
            linear, lower = [], []
            for w, c in rel.terms.items():
                idxs = tuple(self.index[g] for g in w)
                degs = tuple(self.deg[i] for i in idxs)
                top = [k for k, dd in enumerate(degs) if dd == deg]
                if len(top) == 1 and all(dd == 0 for k, dd in enumerate(degs) if k != top[0]):
                    cof = tuple(i for k, i in enumerate(idxs) if k != top[0])
                    linear.append((c, cof, idxs[top[0]]))
                    if deg > 0:
                        self.fed0.update(cof)
                else:
                    lower.append((c, idxs, degs))
            comp = _CompiledRelation(deg, linear, lower)
            self.rels_by_degree.setdefault(deg, []).append(comp)
            if deg > 0:
                for c, idxs, degs in lower:
                    for i, dd in zip(idxs, degs):
                        if 0 < dd < deg:
                            self.fed_by.setdefault(dd, set()).add(i)
                        elif dd == 0:
                            self.fed0.add(i)

    def max_rel_degree(self):
        return max(self.rels_by_degree, default=-1)


# -- brute force oracle ------------------------------------------------------


def brute_force_count_maps(pres: Presentation, p: int, cap: int = 3 ** 12) -> MapCount:
    n = len(pres.generators)
    work = (p ** n) * (p - 1)
    if work > cap:
        raise BudgetExceeded("brute force needs %d assignments > cap %d" % (work, cap))
    index = {g: i for i, g in enumerate(pres.generators)}
    compiled = [[(c, tuple(index[g] for g in w)) for w, c in rel.terms.items()]
                for rel in pres.relations]
    total = 0
    nodes = 0
    for mu in _units(p):
        rel_mod = [[(c.eval_mod(p, mu), idxs) for c, idxs in rel] for rel in compiled]
        rel_mod = [[(cm, idxs) for cm, idxs in rel if cm] for rel in rel_mod]
        values = [0] * n
        def rec(i):
            nonlocal total, nodes
            nodes += 1
            if i == n:
                for rel in rel_mod:
                    acc = 0
                    for cm, idxs in rel:
                        t = cm
                        for j in idxs:
                            t = (t * values[j]) % p
                        acc = (acc + t) % p
                    if acc:
                        return
                total += 1
                return
            for v in range(p):
                values[i] = v
                rec(i + 1)
        rec(0)
    return MapCount(p, total, True, nodes)


# -- layered solver ----------------------------------------------------------


def _solve_affine(rows, consts, nvars, p):
    """Row-reduce [A | b] over F_p for A x = -b.  Returns None if inconsistent,
    else (particular, basis) with basis spanning the kernel."""
    aug = [list(r) + [b % p] for r, b in zip(rows, consts)]
    pivots = []
    r = 0
    for col in range(nvars):
        piv = None
        for i in range(r, len(aug)):
            if aug[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][col], p - 2, p) if p > 2 else aug[r][col]
        aug[r] = [(v * inv) % p for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] % p:
                f = aug[i][col]
                aug[i] = [(v - f * w) % p for v, w in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][nvars] % p:
            return None
    particular = [0] * nvars
    for i, col in enumerate(pivots):
        particular[col] = (-aug[i][nvars]) % p
    free_cols = [c for c in range(nvars) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [0] * nvars
        vec[fc] = 1
        for i, col in enumerate(pivots):
            vec[col] = (-aug[i][fc]) % p
        basis.append(vec)
    return particular, basis


class _LayerSolver:
    def __init__(self, comp: _Compiled, p: int, mu: int, budget: int):
        self.c = comp
        self.p = p
        self.mu = mu
        self.budget = budget
        self.nodes = 0
        self.coeff_cache = {}
        self.layer_stats = {}

    def _eval_coeff(self, laurent):
        key = id(laurent)
        v = self.coeff_cache.get(key)
        if v is None:
            v = laurent.eval_mod(self.p, self.mu)
            self.coeff_cache[key] = v
        return v

    def _tick(self, n=1):
        self.nodes += n
        if self.nodes > self.budget:
            raise BudgetExceeded("solver budget of %d nodes exceeded" % self.budget)

    def count(self):
        values = {}
        return self._solve_degree0(values)

    # degree 0: constraint-propagating search over the a11-type variables

    def _solve_degree0(self, values):
        p = self.p
        c = self.c
        zero_vars = c.layer_vars.get(0, [])
        rels = []
        for rel in c.rels_by_degree.get(0, []):
            terms = []
            for coeff, cof, var in rel.linear:
                terms.append((self._eval_coeff(coeff), cof + (var,)))
            for coeff, idxs, _degs in rel.lower:
                terms.append((self._eval_coeff(coeff), idxs))
            const = 0
            cleaned = []
            for cm, idxs in terms:
                if not cm:
                    continue
                if idxs:
                    cleaned.append((cm, idxs))
                else:
                    const = (const + cm) % p
            rels.append((const, cleaned))

        assign = {}
        total = 0

        var_rels = {}
        for ri, (_const, terms) in enumerate(rels):
            for _cm, idxs in terms:
                for i in idxs:
                    var_rels.setdefault(i, set()).add(ri)

        def residual(ri):
            """Evaluate relation ri under partial assignment.

            Returns (const, [(coeff, unassigned idx tuple)]) or None if some
            term has an unassigned variable from a later layer (cannot happen
            for degree-0 relations)."""
            const, terms = rels[ri]
            acc = const
            poly = {}
            for cm, idxs in terms:
                val = cm
                unas = []
                for i in idxs:
                    if i in assign:
                        val = (val * assign[i]) % p
                    else:
                        unas.append(i)
                if not unas:
                    acc = (acc + val) % p
                elif val:
                    key = tuple(sorted(unas))
                    poly[key] = (poly.get(key, 0) + val) % p
            poly = {k: v for k, v in poly.items() if v}
            return acc, poly

        def propagate(queue):
            """Force single-variable linear consequences; returns the list of
            assignments made, or None on contradiction."""
            made = []
            pending = list(queue)
            while pending:
                ri = pending.pop()
                acc, poly = residual(ri)
                if not poly:
                    if acc:
                        for i in made:
                            del assign[i]
                        return None
                    continue
                if len(poly) == 1:
                    ((key, cm),) = poly.items()
                    if len(key) == 1:
                        x = key[0]
                        inv = pow(cm, p - 2, p) if p > 2 else cm
                        assign[x] = (-acc * inv) % p
                        made.append(x)
                        pending.extend(var_rels.get(x, ()))
            return made

        fed0 = c.fed0

        def rec():
            nonlocal total
            self._tick()
            cand = None
            for ri in range(len(rels)):
                acc, poly = residual(ri)
                if not poly:
                    if acc:
                        return
                    continue
                for key in poly:
                    for i in key:
                        cand = i
                        break
                    break
                if cand is not None:
                    break
            if cand is None:
                # all degree-0 relations are satisfied; variables that feed
                # later layers still need explicit values, the rest are free
                pending = [i for i in zero_vars if i not in assign and i in fed0]
                if pending:
                    cand = pending[0]
                    for v in range(p):
                        assign[cand] = v
                        rec()
                    del assign[cand]
                    return
                free = sum(1 for i in zero_vars if i not in assign)
                sub = self._solve_higher(1, dict(assign))
                total += (p ** free) * sub if sub else 0
                return
            for v in range(p):
                assign[cand] = v
                made = propagate(var_rels.get(cand, ()))
                if made is not None:
                    rec()
                    for i in made:
                        del assign[i]
                del assign[cand]

        rec()
        return total

    # degrees >= 1: affine layers

    def _solve_higher(self, d, values):
        p = self.p
        c = self.c
        layers = sorted(dd for dd in set(c.layers) | set(c.rels_by_degree) if dd >= d)
        if not layers:
            return 1
        d = layers[0]
        vars_d = c.layer_vars.get(d, [])
        col = {v: k for k, v in enumerate(vars_d)}
        rows, consts = [], []
        for rel in c.rels_by_degree.get(d, []):
            row = [0] * len(vars_d)
            for coeff, cof, var in rel.linear:
                cm = self._eval_coeff(coeff)
                for i in cof:
                    cm = (cm * values[i]) % p
                row[col[var]] = (row[col[var]] + cm) % p
            const = 0
            for coeff, idxs, _degs in rel.lower:
                cm = self._eval_coeff(coeff)
                for i in idxs:
                    cm = (cm * values[i]) % p
                const = (const + cm) % p
            rows.append(row)
            consts.append(const)
        self._tick(max(1, len(rows)))
        if rows:
            sol = _solve_affine(rows, consts, len(vars_d), p)
            if sol is None:
                return 0
            particular, basis = sol
        else:
            particular, basis = [0] * len(vars_d), [
                [1 if k == j else 0 for k in range(len(vars_d))] for j in range(len(vars_d))]
        k = len(basis)
        stats = self.layer_stats.setdefault(d, {"solves": 0, "nullity": set()})
        stats["solves"] += 1
        stats["nullity"].add(k)

        fed = c.fed_by.get(d, set())
        feeding_cols = [col[v] for v in vars_d if v in fed]
        if not feeding_cols:
            for v, val in zip(vars_d, particular):
                values[v] = val
            return (p ** k) * self._solve_higher(d + 1, values)
        # split kernel directions into those visible downstream and those not
        active = [b for b in basis if any(b[j] % p for j in feeding_cols)]
        silent = len(basis) - len(active)
        total = 0
        point = list(particular)

        def enum(i):
            nonlocal total
            if i == len(active):
                self._tick()
                for v, val in zip(vars_d, point):
                    values[v] = val
                total += self._solve_higher(d + 1, values)
                return
            base = list(point)
            for t in range(p):
                if t:
                    for j in range(len(point)):
                        point[j] = (point[j] + active[i][j]) % p
                enum(i + 1)
            point[:] = base

        enum(0)
        return (p ** silent) * total


def count_algebra_maps(pres: Presentation, p: int, budget: int = 10 ** 8) -> MapCount:
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError("p must be prime")
    comp = _Compiled(pres, p)
    total = 0
    nodes = 0
    exact = True
    report = {}
    for mu in _units(p):
        solver = _LayerSolver(comp, p, mu, budget - nodes)
        try:
            total += solver.count()
        except BudgetExceeded:
            exact = False
            total += 0
        nodes += solver.nodes
        for d, st in solver.layer_stats.items():
            agg = report.setdefault(d, {"solves": 0, "nullity": set()})
            agg["solves"] += st["solves"]
            agg["nullity"] |= st["nullity"]
        if not exact:
            break
    report = {d: {"solves": st["solves"], "nullity": sorted(st["nullity"])}
              for d, st in report.items()}
    return MapCount(p, total, exact, nodes, report)


@dataclass
class Fingerprint:
    counts: dict  # prime -> MapCount

    def __eq__(self, other):
        if not isinstance(other, Fingerprint):
            return NotImplemented
        if self.counts.keys() != other.counts.keys():
            return False
        return all(self.counts[p].total == other.counts[p].total
                   and self.counts[p].exact == other.counts[p].exact
                   for p in self.counts)

    def report(self) -> str:
        return "\n".join(self.counts[p].report_line() for p in sorted(self.counts))


def fingerprint(dga: Dga, primes=(2, 3, 5), budget: int = 10 ** 8,
                presentation=characteristic_presentation) -> Fingerprint:
    pres = presentation(dga)
    return Fingerprint({p: count_algebra_maps(pres, p, budget) for p in primes})
