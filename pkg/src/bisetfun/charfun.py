"""Class functions with exact cyclotomic values, and the character-ring functors.

The complex character functor is modeled as the full space of class functions;
the Brauer functor as class functions supported on p-regular classes.  A biset
acts through the five elementary formulas (restriction, induction, inflation,
deflation-averaging, transport), composed along the Goursat factorization of
each transitive class.
"""

import math
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import Cyclotomic
from .errors import FlavorError, SupportError
from .groups import make_named
from .linalg import SpanBuilder


def support_classes(G, support):
    if support == "all":
        return list(range(len(G.conjugacy_classes)))
    return G.p_regular_classes(support)


class ClassFunction:
    """A function on (p-regular) conjugacy classes with Fraction/Cyclotomic values."""

    __slots__ = ("group", "support", "values", "_pos")

    def __init__(self, group, support, values):
        self.group = group
        self.support = support
        self.values = tuple(values)
        assert len(self.values) == len(support_classes(group, support))
        self._pos = None

    def _positions(self):
        if self._pos is None:
            self._pos = {c: i for i, c in enumerate(support_classes(self.group, self.support))}
        return self._pos

    def value_at(self, elt_idx):
        """Value at a group element (must lie in the support)."""
        c = self.group.class_of[elt_idx]
        pos = self._positions().get(c)
        if pos is None:
            raise SupportError("element outside the p-regular support")
        return self.values[pos]

    def __add__(self, other):
        assert self.group is other.group and self.support == other.support
        return ClassFunction(self.group, self.support,
                             [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        assert self.group is other.group and self.support == other.support
        return ClassFunction(self.group, self.support,
                             [a - b for a, b in zip(self.values, other.values)])

    def __rmul__(self, scalar):
        return ClassFunction(self.group, self.support,
                             [scalar * v for v in self.values])

    def __mul__(self, other):
        if not isinstance(other, ClassFunction):
            return self.__rmul__(other)
        assert self.group is other.group and self.support == other.support
        return ClassFunction(self.group, self.support,
                             [a * b for a, b in zip(self.values, other.values)])

    def __eq__(self, other):
        return (isinstance(other, ClassFunction) and self.group is other.group
                and self.support == other.support
                and all(a == b for a, b in zip(self.values, other.values)))

    def is_zero(self):
        return not any(self.values)

    def __repr__(self):
        from .cyclotomic import format_value

        return "ClassFunction(" + ", ".join(format_value(v) for v in self.values) + ")"


def zero_function(G, support="all"):
    return ClassFunction(G, support, [Fraction(0)] * len(support_classes(G, support)))


def decomposition_map(f, p):
    """Restrict a full class function to the p-regular classes."""
    if f.support != "all":
        raise SupportError("decomposition map needs full support")
    G = f.group
    keep = set(G.p_regular_classes(p))
    values = [v for c, v in zip(range(len(G.conjugacy_classes)), f.values) if c in keep]
    return ClassFunction(G, p, values)


# -- the biset action ------------------------------------------------------------

def class_action_matrix(cls, support):
    """Matrix (target support classes) x (source support classes) of one class.

    The factorization collapses to a deflated restriction (coset average over
    the right kernel) followed by a transported induced pullback, so the
    matrix is the product of two explicit counting matrices.  Memoized on the
    class object.
    """
    cached = cls._act_mats.get(support)
    if cached is not None:
        return cached
    hom = cls.hom
    H, G = hom.H, hom.G
    sq1, sq2 = cls.sections()
    phi = cls.iso()
    inv_phi = [0] * len(phi)
    for q2, q1 in enumerate(phi):
        inv_phi[q1] = q2

    Q2 = sq2.group
    src = support_classes(G, support)
    src_pos = {c: i for i, c in enumerate(src)}
    mid = support_classes(Q2, support)
    mid_pos = {c: i for i, c in enumerate(mid)}
    s2 = sq2.s_members
    # deflated restriction: entry[q-class][G-class] = #{s in S2 : t*s in class}/|S2|
    lower = [[Fraction(0)] * len(src) for _ in mid]
    for qi, c in enumerate(mid):
        t = sq2.lift[Q2.conjugacy_classes[c][0]]
        for s in s2:
            gc = G.class_of[G.table[t][s]]
            lower[qi][src_pos[gc]] += Fraction(1, len(s2))
    # induced pullback: entry[H-class][q-class] through the transported iso
    tgt = support_classes(H, support)
    t1_order = len(sq1.to_q)
    upper = [[Fraction(0)] * len(mid) for _ in tgt]
    for hi, c in enumerate(tgt):
        h = H.conjugacy_classes[c][0]
        for x in range(H.order):
            a = H.conj(h, H.inverse[x])
            q1 = sq1.to_q.get(a)
            if q1 is not None:
                qc = Q2.class_of[inv_phi[q1]]
                upper[hi][mid_pos[qc]] += Fraction(1, t1_order)
    matrix = [[sum(upper[i][k] * lower[k][j] for k in range(len(mid)))
               for j in range(len(src))] for i in range(len(tgt))]
    cls._act_mats[support] = matrix
    return matrix


def act_class(cls, f):
    """Action of one transitive class on a class function."""
    assert f.group is cls.hom.G
    matrix = class_action_matrix(cls, f.support)
    values = [sum((row[j] * v for j, v in enumerate(f.values) if row[j] and v),
                  start=Fraction(0)) for row in matrix]
    return ClassFunction(cls.hom.H, f.support, values)


def act(x, f):
    """Action of a BisetElt on a class function; flavors must be compatible."""
    if f.group is not x.source:
        raise SupportError("class function lives on the wrong group")
    if f.support != "all" and x.hom.p != f.support:
        raise FlavorError("p-regular class functions accept only p-bifree bisets")
    H = x.target
    out = zero_function(H, f.support)
    for cls, v in x.coeffs.items():
        out = out + v * act_class(cls, f)
    return out


# -- Dirichlet characters of unit groups ------------------------------------------

def _prime_factors(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _primitive_root(q):
    phi = sum(1 for k in range(1, q) if math.gcd(k, q) == 1)
    for r in range(2, q):
        if math.gcd(r, q) != 1:
            continue
        x, order = r, 1
        while x != 1:
            x = x * r % q
            order += 1
        if order == phi:
            return r
    raise ValueError(f"no primitive root mod {q}")


class UnitGroup:
    """(Z/mZ)^x with a fixed generator decomposition and full log table."""

    def __init__(self, m):
        self.m = m
        if m == 1:
            self.units = [0]
            self.gens = []
            self.orders = []
            self.log = {0: ()}
            self.exponent = 1
            return
        self.units = [u for u in range(m) if math.gcd(u, m) == 1]
        gens = []
        for p, a in sorted(_prime_factors(m).items()):
            q = p ** a
            rest = m // q
            local = []
            if p == 2:
                if a == 2:
                    local = [3]
                elif a >= 3:
                    local = [q - 1, 5]
            else:
                local = [_primitive_root(q)]
            for g in local:
                # CRT lift: g mod q, 1 mod rest
                lifted = next(u for u in self.units if u % q == g % q and u % rest == 1 % rest)
                gens.append(lifted)
        self.gens = gens
        self.orders = []
        for g in gens:
            x, order = g, 1
            while x != 1:
                x = x * g % m
                order += 1
            self.orders.append(order)
        self.exponent = math.lcm(*self.orders) if self.orders else 1
        self.log = {}
        for exps in _tuples(self.orders):
            u = 1
            for g, e in zip(gens, exps):
                u = u * pow(g, e, m) % m
            self.log.setdefault(u, exps)
        assert len(self.log) == len(self.units)


def _tuples(orders):
    if not orders:
        yield ()
        return
    for head in range(orders[0]):
        for tail in _tuples(orders[1:]):
            yield (head,) + tail


@lru_cache(maxsize=None)
def unit_group(m):
    return UnitGroup(m)


class UnitCharacter:
    """A character of (Z/mZ)^x, given by root exponents on the fixed generators."""

    __slots__ = ("modulus", "exps", "_conductor")

    def __init__(self, modulus, exps):
        self.modulus = modulus
        ug = unit_group(modulus)
        self.exps = tuple(e % o for e, o in zip(exps, ug.orders))
        self._conductor = None

    def root_exponent(self, u):
        """k with value(u) = zeta_e^k, e the unit-group exponent."""
        ug = unit_group(self.modulus)
        a = ug.log[u % self.modulus if self.modulus > 1 else 0]
        e = ug.exponent
        return sum(r * ai * (e // o) for r, ai, o in zip(self.exps, a, ug.orders)) % e, e

    def value(self, u):
        k, e = self.root_exponent(u)
        return Cyclotomic.zeta(e, k)

    @property
    def order(self):
        ug = unit_group(self.modulus)
        return math.lcm(*[o // math.gcd(o, r) for r, o in zip(self.exps, ug.orders)]) \
            if self.exps else 1

    def is_trivial(self):
        return all(e == 0 for e in self.exps)

    def conductor(self):
        """Least d | m such that the character factors through (Z/dZ)^x."""
        if self._conductor is not None:
            return self._conductor
        m = self.modulus
        ug = unit_group(m)
        for d in sorted(_divisors(m)):
            ok = True
            for u in ug.units:
                if (u - 1) % d == 0 and self.root_exponent(u)[0] != 0:
                    ok = False
                    break
            if ok:
                self._conductor = d
                return d
        raise AssertionError("unreachable: m always works")

    def is_primitive(self):
        return self.conductor() == self.modulus

    def p_part_split(self, p):
        """(xi_p, xi_p') along m = m_p * m_p'."""
        m = self.modulus
        mp = 1
        while m % p == 0:
            mp *= p
            m //= p
        mpp = self.modulus // mp
        return self._factor_character(mp), self._factor_character(mpp)

    def _factor_character(self, d):
        """The component character mod d (d a unitary divisor of m)."""
        m = self.modulus
        rest = m // d
        ug_d = unit_group(d)
        exps = []
        for g, o in zip(ug_d.gens, ug_d.orders):
            # CRT lift: g mod d, 1 mod rest
            u = next(v for v in unit_group(m).units
                     if v % d == g % d and v % rest == 1 % rest)
            k, e = self.root_exponent(u)
            assert (k * o) % e == 0
            exps.append(k * o // e)
        return UnitCharacter(d, exps)

    def pprime_part_primitive(self, p):
        _, xpp = self.p_part_split(p)
        return xpp.is_primitive()

    def __repr__(self):
        return f"UnitCharacter(mod {self.modulus}, exps={self.exps})"


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def unit_characters(m):
    """All characters of (Z/mZ)^x in a deterministic order."""
    ug = unit_group(m)
    return [UnitCharacter(m, exps) for exps in _tuples(ug.orders)]


def primitive_character_count(m):
    return sum(1 for xi in unit_characters(m) if xi.is_primitive())


# -- Dirichlet class functions ----------------------------------------------------

@lru_cache(maxsize=None)
def cyclic_group(n):
    return make_named(f"C{n}")


def dirichlet_tilde(m, xi, group=None):
    """xi extended by zero to the cyclic group of order m."""
    if xi.modulus != m:
        raise SupportError("modulus mismatch")
    G = group if group is not None else cyclic_group(m)
    res, _ = G.residue_maps
    values = []
    for cls in G.conjugacy_classes:
        r = res[cls[0]]
        if math.gcd(r, m) == 1:
            values.append(xi.value(r))
        else:
            values.append(Fraction(0))
    return ClassFunction(G, "all", values)


def xi_mnp(m, n, p, xi, group=None):
    """The generator-supported character of C_{m p^n} induced by a primitive xi mod m."""
    if math.gcd(m, p) != 1:
        raise ValueError("m must be prime to p")
    if not xi.is_primitive():
        raise ValueError("xi must be primitive mod m")
    order = m * p ** n
    G = group if group is not None else cyclic_group(order)
    res, _ = G.residue_maps
    values = []
    for cls in G.conjugacy_classes:
        r = res[cls[0]]
        if math.gcd(r, order) == 1:
            values.append(xi.value(r % m if m > 1 else 0))
        else:
            values.append(Fraction(0))
    return ClassFunction(G, "all", values)


# -- spans of generated subfunctors -----------------------------------------------

def subfunctor_span(gen, H, p=None):
    """Row-reduced basis of span{act(x, gen) : x over the (H, G0) Goursat basis}.

    Computed through the five-factor decomposition: every basis morphism is
    Ind Inf Iso Def Res over a pair of matched sections, so the span is
    accumulated from those words directly.
    """
    from .bisets import _encode, hom_space, isomorphisms

    G0 = gen.group
    width = len(support_classes(H, gen.support))
    sb = SpanBuilder(width)
    for sec_g in G0.all_sections:
        if p is not None and sec_g.s_order % p == 0:
            continue
        sq_g = sec_g.quotient
        dr_hom = hom_space(sq_g.group, G0, p)
        dr_cls = dr_hom.intern(frozenset(
            _encode(sq_g.to_q[t], t, G0.order) for t in sq_g.to_q))
        w = act_class(dr_cls, gen)
        if w.is_zero():
            continue
        for sec_h in H.all_sections:
            if p is not None and sec_h.s_order % p == 0:
                continue
            if sec_h.quotient_order != sec_g.quotient_order:
                continue
            sq_h = sec_h.quotient
            isos = isomorphisms(sq_g.group, sq_h.group)
            if not isos:
                continue
            up_hom = hom_space(H, sq_g.group, p)
            for f in isos:
                by_q = {}
                for h, q in sq_h.to_q.items():
                    by_q.setdefault(q, []).append(h)
                L = frozenset(_encode(h, q2, sq_g.group.order)
                              for q2 in range(sq_g.group.order)
                              for h in by_q[f[q2]])
                v = act_class(up_hom.intern(L), w)
                sb.insert(list(v.values))
    return [ClassFunction(H, gen.support, row) for row in sb.basis()]


def subfunctor_span_direct(gen, H, p=None):
    """Oracle route for the span: enumerate the full Goursat basis and act."""
    from .bisets import goursat_basis

    width = len(support_classes(H, gen.support))
    sb = SpanBuilder(width)
    for cls in goursat_basis(H, gen.group, p):
        v = act_class(cls, gen)
        sb.insert(list(v.values))
    return [ClassFunction(H, gen.support, row) for row in sb.basis()]
