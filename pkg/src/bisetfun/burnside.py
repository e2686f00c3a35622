"""Burnside rings B(G) and their p'-spans: marks, idempotents, deflation numbers.

All arithmetic is exact (Fraction); a BurnsideElt is a rational vector over
the conjugacy classes of subgroups of a fixed group.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import FlavorError, NotNormalError
from .groups import _bits, full_subgroup_index, quotient


class BurnsideElt:
    """An element of QB(G), stored as {subgroup-class index: Fraction}."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs):
        self.group = group
        self.coeffs = {c: Fraction(v) for c, v in coeffs.items() if v}

    @staticmethod
    def transitive(group, class_idx):
        return BurnsideElt(group, {class_idx: 1})

    @staticmethod
    def zero(group):
        return BurnsideElt(group, {})

    def __add__(self, other):
        assert self.group is other.group
        out = dict(self.coeffs)
        for c, v in other.coeffs.items():
            out[c] = out.get(c, 0) + v
        return BurnsideElt(self.group, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        return BurnsideElt(self.group, {c: v * scalar for c, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, BurnsideElt):
            return self.__rmul__(other)
        assert self.group is other.group
        G = self.group
        tab = G.subgroup_table
        out = {}
        for c1, v1 in self.coeffs.items():
            for c2, v2 in other.coeffs.items():
                for cls, mult in _transitive_product(G, c1, c2).items():
                    out[cls] = out.get(cls, 0) + v1 * v2 * mult
        return BurnsideElt(G, out)

    def __eq__(self, other):
        return isinstance(other, BurnsideElt) and self.group is other.group \
            and self.coeffs == other.coeffs

    def __repr__(self):
        tab = self.group.subgroup_table
        if not self.coeffs:
            return "0"
        bits = []
        for c in sorted(self.coeffs):
            order = tab.order_of_class(c)
            bits.append(f"{self.coeffs[c]}*[G/({order}:{c})]")
        return " + ".join(bits)

    def is_pprime(self, p):
        tab = self.group.subgroup_table
        return all(tab.order_of_class(c) % p != 0 for c in self.coeffs)

    def as_vector(self):
        n = self.group.subgroup_table.n_classes
        return [self.coeffs.get(c, Fraction(0)) for c in range(n)]


def _transitive_product(G, c1, c2):
    """[G/K][G/L] = sum over K\\G/L of [G/(K cap xLx^-1)], returned by class."""
    tab = G.subgroup_table
    km = tab.masks[tab.class_reps[c1]]
    lm = tab.masks[tab.class_reps[c2]]
    out = {}
    for x in G.double_coset_reps(km, lm):
        conj = G.conj_mask(lm, x)
        cls = tab.fusion[tab.index_of[km & conj]]
        out[cls] = out.get(cls, 0) + 1
    return out


def mark(G, k_class, h_class):
    """|(G/K)^H| = #{xK : x^-1 H x <= K}, by direct coset scan."""
    tab = G.subgroup_table
    km = tab.masks[tab.class_reps[k_class]]
    h_members = tab.subgroups[tab.class_reps[h_class]]
    reps, _ = G.cosets(km)
    count = 0
    for x in reps:
        xinv = G.inverse[x]
        if all((km >> G.table[G.table[xinv][h]][x]) & 1 for h in h_members):
            count += 1
    return count


def table_of_marks(G):
    """Rows indexed by transitive sets [G/K], columns by point-stabilizer classes H."""
    n = G.subgroup_table.n_classes
    return [[Fraction(mark(G, k, h)) for h in range(n)] for k in range(n)]


_MARKS_CACHE = {}


def _marks(G):
    if id(G) not in _MARKS_CACHE:
        _MARKS_CACHE[id(G)] = (G, table_of_marks(G))
    return _MARKS_CACHE[id(G)][1]


def mark_vector(x):
    """The mark morphism applied to x, as a list over subgroup classes."""
    M = _marks(x.group)
    n = x.group.subgroup_table.n_classes
    out = [Fraction(0)] * n
    for c, v in x.coeffs.items():
        row = M[c]
        for h in range(n):
            if row[h]:
                out[h] += v * row[h]
    return out


def idempotent(G, h_class):
    """e^G_H: the unique element whose mark vector is the indicator of [H].

    Solved by back-substitution on the triangular mark system.
    """
    M = _marks(G)
    n = G.subgroup_table.n_classes
    coeffs = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(1 if i == h_class else 0)
        for j in range(i + 1, n):
            if coeffs[j] and M[j][i]:
                acc -= coeffs[j] * M[j][i]
        coeffs[i] = acc / M[i][i]
    return BurnsideElt(G, {c: v for c, v in enumerate(coeffs) if v})


def idempotent_moebius(G, h_class):
    """Cross-check route: e^G_H = (1/|N_G(H)|) sum_{K <= H} |K| mu(K, H) [G/K]."""
    tab = G.subgroup_table
    h_idx = tab.class_reps[h_class]
    nh = tab.normalizer_orders[h_class]
    out = {}
    for k_idx in tab.below[h_idx]:
        mu = tab.moebius[(k_idx, h_idx)]
        if mu:
            cls = tab.fusion[k_idx]
            out[cls] = out.get(cls, 0) + Fraction(len(tab.subgroups[k_idx]) * mu, nh)
    return BurnsideElt(G, out)


def deflation_number(G, n_sub_idx):
    """m_{G,N} = (1/|G|) sum over X with XN = G of |X| mu(X, G)."""
    tab = G.subgroup_table
    if not tab.normal_flags[n_sub_idx]:
        raise NotNormalError("deflation requires a normal subgroup")
    nm = tab.masks[n_sub_idx]
    n_order = len(tab.subgroups[n_sub_idx])
    full = full_subgroup_index(G)
    total = Fraction(0)
    for x_idx in range(tab.n_subgroups):
        x_order = len(tab.subgroups[x_idx])
        inter = (tab.masks[x_idx] & nm).bit_count()
        if x_order * n_order // inter == G.order:
            mu = tab.moebius[(x_idx, full)]
            if mu:
                total += x_order * mu
    return total / G.order


def pprime_idempotent_sum(G, p):
    """e^G_{p'} = sum of e^G_H over p'-subgroup classes H."""
    tab = G.subgroup_table
    out = BurnsideElt.zero(G)
    for c in range(tab.n_classes):
        if tab.order_of_class(c) % p != 0:
            out = out + idempotent(G, c)
    return out


def orbit_pairing(G, x, y):
    """<x, y> = |G \\ (y times x)|, bilinear in the double-coset counts."""
    assert x.group is G and y.group is G
    tab = G.subgroup_table
    total = Fraction(0)
    for c1, v1 in x.coeffs.items():
        m1 = tab.masks[tab.class_reps[c1]]
        for c2, v2 in y.coeffs.items():
            m2 = tab.masks[tab.class_reps[c2]]
            total += v1 * v2 * len(G.double_coset_reps(m1, m2))
    return total


def linearize(x):
    """[G/K] -> its permutation character, extended linearly."""
    from .charfun import ClassFunction

    G = x.group
    tab = G.subgroup_table
    values = [Fraction(0)] * len(G.conjugacy_classes)
    for c, v in x.coeffs.items():
        km = tab.masks[tab.class_reps[c]]
        reps, coset_of = G.cosets(km)
        for ci, cls in enumerate(G.conjugacy_classes):
            g = cls[0]
            fixed = sum(1 for r in reps if coset_of[G.table[g][r]] == coset_of[r])
            values[ci] += v * fixed
    return ClassFunction(G, "all", values)


# -- elementary operations on Burnside elements --------------------------------

def _subgroup_class_of_mask(G, mask):
    tab = G.subgroup_table
    return tab.fusion[tab.index_of[mask]]


def elementary_op(kind, data, x, p=None):
    """Apply res/ind/inf/def/iso to a Burnside element.

    data: res/ind -> (G, t_sub_idx); inf/def -> (G, n_sub_idx); iso -> (G, H, mapping).
    In the p-bifree flavor (p set), inf and def require a p'-kernel.
    """
    if kind == "res":
        G, t_idx = data
        assert x.group is G
        sub, to_sub, _ = G.as_subgroup_group(t_idx)
        tab = G.subgroup_table
        tm = tab.masks[t_idx]
        out = {}
        stab = sub.subgroup_table
        for c, v in x.coeffs.items():
            km = tab.masks[tab.class_reps[c]]
            for r in G.double_coset_reps(tm, km):
                inter = tm & G.conj_mask(km, r)
                smask = 0
                for gi in _bits(inter):
                    smask |= 1 << to_sub[gi]
                cls = stab.fusion[stab.index_of[smask]]
                out[cls] = out.get(cls, 0) + v
        return BurnsideElt(sub, out)
    if kind == "ind":
        G, t_idx = data
        sub, to_sub, to_parent = G.as_subgroup_group(t_idx)
        assert x.group is sub
        stab = sub.subgroup_table
        out = {}
        for c, v in x.coeffs.items():
            members = stab.subgroups[stab.class_reps[c]]
            mask = 0
            for si in members:
                mask |= 1 << to_parent[si]
            cls = _subgroup_class_of_mask(G, mask)
            out[cls] = out.get(cls, 0) + v
        return BurnsideElt(G, out)
    if kind == "inf":
        G, n_idx = data
        _check_pprime_kernel(G, n_idx, p)
        sq = G.section_quotient(full_subgroup_index(G), n_idx)
        Q = sq.group
        assert x.group is Q
        qtab = Q.subgroup_table
        out = {}
        for c, v in x.coeffs.items():
            members = qtab.subgroups[qtab.class_reps[c]]
            qset = set(members)
            mask = 0
            for gi in range(G.order):
                if sq.to_q[gi] in qset:
                    mask |= 1 << gi
            cls = _subgroup_class_of_mask(G, mask)
            out[cls] = out.get(cls, 0) + v
        return BurnsideElt(G, out)
    if kind == "def":
        G, n_idx = data
        assert x.group is G
        _check_pprime_kernel(G, n_idx, p)
        sq = G.section_quotient(full_subgroup_index(G), n_idx)
        Q = sq.group
        qtab = Q.subgroup_table
        tab = G.subgroup_table
        out = {}
        for c, v in x.coeffs.items():
            members = tab.subgroups[tab.class_reps[c]]
            mask = 0
            for gi in members:
                mask |= 1 << sq.to_q[gi]
            cls = qtab.fusion[qtab.index_of[mask]]
            out[cls] = out.get(cls, 0) + v
        return BurnsideElt(Q, out)
    if kind == "iso":
        G, H, mapping = data
        assert x.group is G
        tab = G.subgroup_table
        htab = H.subgroup_table
        out = {}
        for c, v in x.coeffs.items():
            members = tab.subgroups[tab.class_reps[c]]
            mask = 0
            for gi in members:
                mask |= 1 << mapping[gi]
            cls = htab.fusion[htab.index_of[mask]]
            out[cls] = out.get(cls, 0) + v
        return BurnsideElt(H, out)
    raise ValueError(f"unknown elementary operation {kind!r}")


def _check_pprime_kernel(G, n_idx, p):
    tab = G.subgroup_table
    if not tab.normal_flags[n_idx]:
        raise NotNormalError("inflation/deflation kernel must be normal")
    if p is not None and len(tab.subgroups[n_idx]) % p == 0:
        raise FlavorError(f"kernel of order {len(tab.subgroups[n_idx])} is not a {p}'-group")


def phi1(G, sub_idx):
    """Number of generators of the subgroup (nonzero iff it is cyclic)."""
    tab = G.subgroup_table
    members = tab.subgroups[sub_idx]
    n = len(members)
    return sum(1 for g in members if G.element_orders[g] == n)
