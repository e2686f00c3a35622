"""Finite permutation groups with exhaustive subgroup-lattice machinery.

Groups are stored as explicit element lists (permutation tuples, sorted
lexicographically, so the identity is always element 0) with a full
multiplication table.  Everything downstream -- marks, Moebius values,
Goursat classes -- leans on exhaustive enumeration, which is the point:
the order bound (default 200) keeps that honest.
"""

import hashlib
import json
import math
import os
import random
import re
from functools import cached_property

from .errors import InternalConsistencyError, NotNormalError, ParseError, ResourceBoundError

DEFAULT_BOUND = 200


def pmul(a, b):
    """Compose permutations: (a*b)(x) = a(b(x))."""
    return tuple(a[x] for x in b)


def pinv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Group:
    """A finite group given by permutations, with cached exhaustive data."""

    def __init__(self, degree, generators, elements, name=None):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        self.elements = sorted(tuple(e) for e in elements)
        self.name = name
        self.index = {e: i for i, e in enumerate(self.elements)}
        ident = tuple(range(degree))
        if self.elements[0] != ident:
            raise InternalConsistencyError("identity missing or element list unsorted")
        self._subgroup_group_cache = {}
        self._section_quotient_cache = {}
        self._double_coset_cache = {}
        self._normalizer_cache = {}
        self._coset_cache = {}

    @classmethod
    def from_generators(cls, gens, name=None, bound=DEFAULT_BOUND):
        gens = [tuple(g) for g in gens]
        degree = len(gens[0]) if gens else 1
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise ParseError(f"not a permutation of 0..{degree - 1}: {g}")
        ident = tuple(range(degree))
        seen = {ident}
        queue = [ident]
        while queue:
            x = queue.pop()
            for g in gens:
                y = pmul(x, g)
                if y not in seen:
                    if len(seen) >= bound:
                        raise ResourceBoundError(f"group order exceeds bound {bound}")
                    seen.add(y)
                    queue.append(y)
        return cls(degree, gens, seen, name=name)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Group({self.name or '?'}, order={self.order})"

    @cached_property
    def table(self):
        """Cayley table t[i][j] = index(e_i . e_j), filled by left word derivations.

        Only the rows of a small generating subset are composed directly; every
        other row is two table lookups per entry via e_i = g . e_prev.
        """
        n = self.order
        idx = self.index
        els = self.elements
        table = [None] * n
        table[0] = list(range(n))
        if n == 1:
            return table
        # greedy generating subset: cycle-type orders are free, try big elements first
        def perm_order(t):
            seen_pts = [False] * len(t)
            out = 1
            for s in range(len(t)):
                if seen_pts[s]:
                    continue
                ln, x = 0, s
                while not seen_pts[x]:
                    seen_pts[x] = True
                    x = t[x]
                    ln += 1
                out = math.lcm(out, ln)
            return out

        declared = [idx[g] for g in self.generators if g in idx and idx[g] != 0]
        if len(declared) > 6:
            declared = []
        rest = sorted((i for i in range(1, n) if i not in set(declared)),
                      key=lambda i: -perm_order(els[i]))
        gen_idx = []
        seen = {0}
        for g in declared + rest:
            if g in seen:
                continue
            gen_idx.append(g)
            frontier = [g]
            seen.add(g)
            while frontier:
                x = frontier.pop()
                for h in list(seen):
                    for z in (idx[pmul(els[x], els[h])], idx[pmul(els[h], els[x])]):
                        if z not in seen:
                            seen.add(z)
                            frontier.append(z)
            if len(seen) == n:
                break
        for g in gen_idx:
            table[g] = [idx[pmul(els[g], els[j])] for j in range(n)]
        # BFS: e_new = g . e_cur gives row[new][j] = row[g][row[cur][j]]
        queue = [0] + gen_idx
        head = 0
        while head < len(queue):
            cur = queue[head]
            head += 1
            for g in gen_idx:
                nxt = table[g][cur]
                if table[nxt] is None:
                    grow = table[g]
                    base = table[cur]
                    table[nxt] = [grow[base[j]] for j in range(n)]
                    queue.append(nxt)
        if any(row is None for row in table):
            raise InternalConsistencyError("generators do not generate the element list")
        return table

    def mult(self, i, j):
        return self.table[i][j]

    @cached_property
    def inverse(self):
        out = [0] * self.order
        for i, e in enumerate(self.elements):
            out[i] = self.index[pinv(e)]
        return out

    @cached_property
    def element_orders(self):
        out = []
        for i in range(self.order):
            x, n = i, 1
            while x != 0:
                x = self.table[x][i]
                n += 1
            out.append(n)
        return out

    def power(self, i, k):
        k %= self.element_orders[i]
        out = 0
        for _ in range(k):
            out = self.table[out][i]
        return out

    def conj(self, i, g):
        """g * x_i * g^-1"""
        return self.table[self.table[g][i]][self.inverse[g]]

    @cached_property
    def conjugacy_classes(self):
        seen = [False] * self.order
        classes = []
        for i in range(self.order):
            if seen[i]:
                continue
            orb = sorted({self.conj(i, g) for g in range(self.order)})
            for x in orb:
                seen[x] = True
            classes.append(tuple(orb))
        return classes

    @cached_property
    def class_of(self):
        out = [0] * self.order
        for c, cls in enumerate(self.conjugacy_classes):
            for x in cls:
                out[x] = c
        return out

    @property
    def class_reps(self):
        return [cls[0] for cls in self.conjugacy_classes]

    def p_regular_classes(self, p):
        return [c for c, cls in enumerate(self.conjugacy_classes)
                if self.element_orders[cls[0]] % p != 0]

    @cached_property
    def exponent(self):
        return math.lcm(*self.element_orders)

    @cached_property
    def is_abelian(self):
        return all(len(c) == 1 for c in self.conjugacy_classes)

    @cached_property
    def center_mask(self):
        m = 0
        for i in range(self.order):
            if all(self.table[i][j] == self.table[j][i] for j in range(self.order)):
                m |= 1 << i
        return m

    @cached_property
    def is_cyclic(self):
        return max(self.element_orders) == self.order

    def cyclic_generator(self):
        assert self.is_cyclic
        return min(i for i in range(self.order) if self.element_orders[i] == self.order)

    @cached_property
    def residue_maps(self):
        """For a cyclic group: (res, elem) with elem[j] = g0^j and res its inverse."""
        g0 = self.cyclic_generator()
        elem = [0] * self.order
        x = 0
        for j in range(self.order):
            elem[j] = x
            x = self.table[x][g0]
        res = [0] * self.order
        for j, e in enumerate(elem):
            res[e] = j
        return res, elem

    # -- subgroup machinery ------------------------------------------------

    def closure_mask(self, seed):
        els = set(seed)
        els.add(0)
        queue = list(els)
        while queue:
            x = queue.pop()
            for y in list(els):
                for z in (self.table[x][y], self.table[y][x]):
                    if z not in els:
                        els.add(z)
                        queue.append(z)
        m = 0
        for x in els:
            m |= 1 << x
        return m

    def conj_mask(self, mask, g):
        out = 0
        for i in _bits(mask):
            out |= 1 << self.conj(i, g)
        return out

    def normalizer_mask(self, mask):
        if mask in self._normalizer_cache:
            return self._normalizer_cache[mask]
        out = 0
        for g in range(self.order):
            if self.conj_mask(mask, g) == mask:
                out |= 1 << g
        self._normalizer_cache[mask] = out
        return out

    def is_normal_under(self, s_mask, t_mask):
        return all(self.conj_mask(s_mask, g) == s_mask for g in _bits(t_mask))

    def cosets(self, k_mask):
        """Left cosets of K: (reps, coset_of) with reps[coset_of[x]] the rep of xK."""
        if k_mask in self._coset_cache:
            return self._coset_cache[k_mask]
        coset_of = [-1] * self.order
        reps = []
        kelems = list(_bits(k_mask))
        for x in range(self.order):
            if coset_of[x] == -1:
                c = len(reps)
                reps.append(x)
                for k in kelems:
                    coset_of[self.table[x][k]] = c
        self._coset_cache[k_mask] = (reps, coset_of)
        return reps, coset_of

    def double_coset_reps(self, a_mask, b_mask):
        """Representatives of A\\G/B, ascending by element index."""
        key = (a_mask, b_mask)
        if key in self._double_coset_cache:
            return self._double_coset_cache[key]
        seen = [False] * self.order
        reps = []
        aelems = list(_bits(a_mask))
        belems = list(_bits(b_mask))
        for x in range(self.order):
            if seen[x]:
                continue
            reps.append(x)
            for a in aelems:
                ax = self.table[a][x]
                for b in belems:
                    seen[self.table[ax][b]] = True
        self._double_coset_cache[key] = reps
        return reps

    @cached_property
    def subgroup_table(self):
        return _compute_subgroup_table(self)

    def as_subgroup_group(self, sub_idx):
        """The subgroup as a standalone Group, with index maps both ways."""
        if sub_idx in self._subgroup_group_cache:
            return self._subgroup_group_cache[sub_idx]
        tab = self.subgroup_table
        members = tab.subgroups[sub_idx]
        grp = Group(self.degree, [self.elements[i] for i in members],
                    [self.elements[i] for i in members],
                    name=f"{self.name or 'G'}<{sub_idx}>")
        to_sub = {gi: grp.index[self.elements[gi]] for gi in members}
        to_parent = [0] * grp.order
        for gi, si in to_sub.items():
            to_parent[si] = gi
        res = (grp, to_sub, to_parent)
        self._subgroup_group_cache[sub_idx] = res
        return res

    def section_quotient(self, t_idx, s_idx):
        key = (t_idx, s_idx)
        if key in self._section_quotient_cache:
            return self._section_quotient_cache[key]
        tab = self.subgroup_table
        if len(tab.subgroups[s_idx]) == 1 and len(tab.subgroups[t_idx]) == self.order:
            # the (G, 1) section: the quotient is G itself
            sq = SectionQuotient.__new__(SectionQuotient)
            sq.parent = self
            sq.t_idx = t_idx
            sq.s_idx = s_idx
            sq.group = self
            sq.to_q = {i: i for i in range(self.order)}
            sq.lift = list(range(self.order))
            sq.s_members = [0]
        else:
            sq = SectionQuotient(self, t_idx, s_idx)
        self._section_quotient_cache[key] = sq
        return sq

    @cached_property
    def all_sections(self):
        """All sections (T, S), S normal in T, up to G-conjugacy."""
        tab = self.subgroup_table
        out = []
        for t_idx in tab.class_reps:
            t_mask = tab.masks[t_idx]
            nt_mask = self.normalizer_mask(t_mask)
            normals = [s for s in tab.below[t_idx]
                       if self.is_normal_under(tab.masks[s], t_mask)]
            seen = set()
            for s in normals:
                if s in seen:
                    continue
                orbit = {s}
                queue = [s]
                while queue:
                    cur = queue.pop()
                    for g in _bits(nt_mask):
                        im = self.conj_mask(tab.masks[cur], g)
                        im_idx = tab.index_of[im]
                        if im_idx not in orbit:
                            orbit.add(im_idx)
                            queue.append(im_idx)
                seen |= orbit
                out.append(Section(self, t_idx, min(orbit)))
        out.sort(key=lambda s: (len(self.subgroup_table.subgroups[s.t_idx]),
                                s.t_idx,
                                len(self.subgroup_table.subgroups[s.s_idx]),
                                s.s_idx))
        return out

    def proper_sections(self):
        """Sections with |T/S| < |G|, up to conjugacy."""
        return [s for s in self.all_sections if s.quotient_order < self.order]

    def canonical_hash(self):
        h = hashlib.sha256()
        h.update(f"{self.degree}:{self.order};".encode())
        for row in self.table:
            h.update((",".join(map(str, row)) + ";").encode())
        return h.hexdigest()


class Section:
    """A section (T, S) of G with S normal in T, carrying its quotient."""

    __slots__ = ("group", "t_idx", "s_idx")

    def __init__(self, group, t_idx, s_idx):
        self.group = group
        self.t_idx = t_idx
        self.s_idx = s_idx

    @property
    def t_order(self):
        return len(self.group.subgroup_table.subgroups[self.t_idx])

    @property
    def s_order(self):
        return len(self.group.subgroup_table.subgroups[self.s_idx])

    @property
    def quotient_order(self):
        return self.t_order // self.s_order

    @property
    def quotient(self):
        return self.group.section_quotient(self.t_idx, self.s_idx)

    def __repr__(self):
        return f"Section(T#{self.t_idx}|{self.t_order}, S#{self.s_idx}|{self.s_order})"


class SectionQuotient:
    """The quotient T/S realized faithfully by the left coset action of T."""

    def __init__(self, parent, t_idx, s_idx):
        tab = parent.subgroup_table
        t_members = tab.subgroups[t_idx]
        s_mask = tab.masks[s_idx]
        if not parent.is_normal_under(s_mask, tab.masks[t_idx]):
            raise NotNormalError("S is not normal in T")
        self.parent = parent
        self.t_idx = t_idx
        self.s_idx = s_idx
        s_members = list(_bits(s_mask))
        coset_of = {}
        reps = []
        for x in t_members:
            if x not in coset_of:
                c = len(reps)
                reps.append(x)
                for s in s_members:
                    coset_of[parent.table[x][s]] = c
        nq = len(reps)
        perms = {}
        for x in t_members:
            perm = tuple(coset_of[parent.table[x][reps[c]]] for c in range(nq))
            perms.setdefault(perm, x)
        self.group = Group(nq, list(perms), list(perms),
                           name=f"{parent.name or 'G'}[{t_idx}/{s_idx}]")
        self.to_q = {}
        for x in t_members:
            perm = tuple(coset_of[parent.table[x][reps[c]]] for c in range(nq))
            self.to_q[x] = self.group.index[perm]
        # smallest parent element as the lift of each quotient element
        self.lift = [-1] * self.group.order
        for x in sorted(t_members, reverse=True):
            self.lift[self.to_q[x]] = x
        self.s_members = s_members


class SubgroupClassTable:
    """All subgroups of a group in canonical order, with class and Moebius data."""

    def __init__(self, subgroups, masks, fusion, class_reps, normalizer_orders,
                 normal_flags, moebius, below):
        self.subgroups = subgroups          # tuple of element indices, canonical order
        self.masks = masks
        self.fusion = fusion                # subgroup idx -> class idx
        self.class_reps = class_reps        # class idx -> subgroup idx of representative
        self.normalizer_orders = normalizer_orders  # per class
        self.normal_flags = normal_flags
        self.moebius = moebius              # (k_idx, h_idx) -> mu(K, H) for K <= H
        self.below = below                  # h_idx -> sorted list of k_idx with K <= H
        self.index_of = {m: i for i, m in enumerate(masks)}

    @property
    def n_subgroups(self):
        return len(self.subgroups)

    @property
    def n_classes(self):
        return len(self.class_reps)

    def class_members(self, c):
        return [i for i, f in enumerate(self.fusion) if f == c]

    def order_of_class(self, c):
        return len(self.subgroups[self.class_reps[c]])


def _compute_subgroup_table(G):
    cached = _load_cached_table(G)
    if cached is not None:
        return cached
    n = G.order
    # cyclic subgroups seed the join closure
    cyclics = []
    seen_masks = set()
    for i in range(n):
        m = G.closure_mask([i])
        if m not in seen_masks:
            seen_masks.add(m)
            cyclics.append(m)
    found = set(cyclics)
    found.add(1)  # trivial subgroup: identity only (index 0)
    queue = list(found)
    while queue:
        s = queue.pop()
        for c in cyclics:
            if c & ~s == 0:
                continue
            t = G.closure_mask(list(_bits(s | c)))
            if t not in found:
                found.add(t)
                queue.append(t)
    subgroups = sorted((tuple(sorted(_bits(m))) for m in found), key=lambda t: (len(t), t))
    masks = []
    for t in subgroups:
        m = 0
        for i in t:
            m |= 1 << i
        masks.append(m)
    index_of = {m: i for i, m in enumerate(masks)}

    fusion = [-1] * len(subgroups)
    class_reps = []
    normalizer_orders = []
    for i, m in enumerate(masks):
        if fusion[i] != -1:
            continue
        c = len(class_reps)
        orbit = {m}
        for g in range(n):
            orbit.add(G.conj_mask(m, g))
        for om in orbit:
            fusion[index_of[om]] = c
        class_reps.append(i)
        normalizer_orders.append(n // len(orbit))
    normal_flags = [normalizer_orders[fusion[i]] == n for i in range(len(subgroups))]

    below = []
    for j, mj in enumerate(masks):
        below.append([i for i, mi in enumerate(masks) if mi & ~mj == 0])

    moebius = {}
    for j in range(len(subgroups)):
        interval = sorted(below[j], key=lambda i: -len(subgroups[i]))
        moebius[(j, j)] = 1
        for i in interval:
            if i == j:
                continue
            mi = masks[i]
            acc = 0
            for x in interval:
                if x != i and masks[x] & ~masks[j] == 0 and mi & ~masks[x] == 0:
                    acc += moebius[(x, j)]
            moebius[(i, j)] = -acc

    table = SubgroupClassTable(subgroups, masks, fusion, class_reps,
                               normalizer_orders, normal_flags, moebius, below)
    _store_cached_table(G, table)
    return table


# -- JSON cache --------------------------------------------------------------

_cache_dir_override = None


def set_cache_dir(path):
    global _cache_dir_override
    _cache_dir_override = path


def cache_dir():
    if _cache_dir_override is not None:
        return _cache_dir_override
    return os.environ.get("BISETFUN_CACHE_DIR")


def _cache_path(G):
    d = cache_dir()
    if not d:
        return None
    return os.path.join(d, f"table-{G.canonical_hash()}.json")


def table_to_json(table):
    return {
        "version": 1,
        "subgroups": [list(s) for s in table.subgroups],
        "fusion": list(table.fusion),
        "class_reps": list(table.class_reps),
        "normalizer_orders": list(table.normalizer_orders),
        "normal_flags": list(table.normal_flags),
        "moebius": sorted([i, j, m] for (i, j), m in table.moebius.items()),
    }


def table_from_json(data):
    subgroups = [tuple(s) for s in data["subgroups"]]
    masks = []
    for t in subgroups:
        m = 0
        for i in t:
            m |= 1 << i
        masks.append(m)
    below = []
    for j, mj in enumerate(masks):
        below.append([i for i, mi in enumerate(masks) if mi & ~mj == 0])
    moebius = {(i, j): m for i, j, m in data["moebius"]}
    return SubgroupClassTable(subgroups, masks, data["fusion"], data["class_reps"],
                              data["normalizer_orders"], data["normal_flags"],
                              moebius, below)


def _audit_loaded_table(G, table):
    """Spot-check a cached table: one random subgroup and one Moebius column."""
    rng = random.Random(G.canonical_hash())
    i = rng.randrange(table.n_subgroups)
    if G.closure_mask(table.subgroups[i]) != table.masks[i]:
        raise InternalConsistencyError("cached table corrupt: not a subgroup")
    j = rng.randrange(table.n_subgroups)
    for k in table.below[j]:
        # sum of mu(X, H_j) over K_k <= X <= H_j must be delta(k, j)
        total = sum(table.moebius[(x, j)] for x in table.below[j]
                    if table.masks[k] & ~table.masks[x] == 0)
        if total != (1 if k == j else 0):
            raise InternalConsistencyError("cached table corrupt: Moebius recursion fails")


def _load_cached_table(G):
    path = _cache_path(G)
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        data = json.load(fh)
    table = table_from_json(data)
    _audit_loaded_table(G, table)
    return table


def _store_cached_table(G, table):
    path = _cache_path(G)
    if not path:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(table_to_json(table), fh, sort_keys=True)


# -- named groups and the spec parser ----------------------------------------

def _cyclic_perm(n):
    return tuple((i + 1) % n for i in range(n))


def _cyclic_group(n, bound):
    if n == 1:
        return Group(1, [], [(0,)], name="C1")
    return Group.from_generators([_cyclic_perm(n)], name=f"C{n}", bound=bound)


def _dihedral_group(order, bound):
    if order % 2 or order < 2:
        raise ParseError(f"dihedral order must be even and >= 2, got {order}")
    m = order // 2
    if m == 1:
        return _cyclic_group(2, bound)
    if m == 2:
        return direct_product(_cyclic_group(2, bound), _cyclic_group(2, bound),
                              name="D4", bound=bound)
    rot = _cyclic_perm(m)
    refl = tuple((m - i) % m for i in range(m))
    return Group.from_generators([rot, refl], name=f"D{order}", bound=bound)


def _quaternion_group(bound):
    # elements 1,-1,i,-i,j,-j,k,-k as indices 0..7, left regular representation
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    unit = {"1": (1, "1"), "i": (1, "i"), "j": (1, "j"), "k": (1, "k")}

    def base_mul(a, b):
        rules = {("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
                 ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1")}
        if a == "1":
            return (1, b)
        if b == "1":
            return (1, a)
        return rules[(a, b)]

    def mul(x, y):
        sx, bx = (-1 if names[x].startswith("-") else 1), names[x].lstrip("-")
        sy, by = (-1 if names[y].startswith("-") else 1), names[y].lstrip("-")
        s, b = base_mul(bx, by)
        s *= sx * sy
        return names.index(b if s == 1 else "-" + b)

    def perm_of(x):
        return tuple(mul(x, y) for y in range(8))

    gens = [perm_of(names.index("i")), perm_of(names.index("j"))]
    return Group.from_generators(gens, name="Q8", bound=bound)


def _symmetric_group(n, bound):
    if n > 6:
        raise ParseError("S<n> supported for n <= 6")
    if n <= 1:
        return _cyclic_group(1, bound)
    gens = [tuple([1, 0] + list(range(2, n))), _cyclic_perm(n)]
    return Group.from_generators(gens, name=f"S{n}", bound=bound)


def _alternating_group(n, bound):
    if n > 6:
        raise ParseError("A<n> supported for n <= 6")
    if n <= 2:
        return _cyclic_group(1, bound)
    if n == 3:
        g = _cyclic_group(3, bound)
        g.name = "A3"
        return g
    three = tuple([1, 2, 0] + list(range(3, n)))
    if n % 2:
        big = _cyclic_perm(n)
    else:
        big = tuple([0] + [1 + ((i + 1) % (n - 1)) for i in range(n - 1)])
    return Group.from_generators([three, big], name=f"A{n}", bound=bound)


def direct_product(a, b, name=None, bound=DEFAULT_BOUND):
    if a.order * b.order > bound:
        raise ResourceBoundError(f"product order {a.order * b.order} exceeds bound {bound}")
    da, db = a.degree, b.degree
    gens = [tuple(list(g) + [da + i for i in range(db)]) for g in a.generators]
    gens += [tuple(list(range(da)) + [da + x for x in g]) for g in b.generators]
    if not gens:
        gens = [tuple(range(da + db))]
    return Group.from_generators(gens, name=name or f"{a.name}x{b.name}", bound=bound)


_ATOM_RE = re.compile(r"^(C|D|S|A)(\d+)$")


def _parse_cycles(text, bound):
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles or re.sub(r"\([^()]*\)", "", text).strip():
        raise ParseError(f"bad cycle notation: {text!r}")
    pts = []
    parsed = []
    for c in cycles:
        nums = [int(t) for t in c.split(",") if t.strip()]
        if len(nums) < 2 or min(nums) < 1:
            raise ParseError(f"bad cycle: ({c})")
        parsed.append(nums)
        pts.extend(nums)
    degree = max(pts)
    perm = list(range(degree))
    for nums in parsed:
        for i, x in enumerate(nums):
            perm[x - 1] = nums[(i + 1) % len(nums)] - 1
    if sorted(perm) != list(range(degree)):
        raise ParseError(f"cycles overlap within one permutation: {text!r}")
    return tuple(perm)


def _make_atom(tok, bound):
    tok = tok.strip()
    if tok.startswith("<") and tok.endswith(">"):
        parts = [p for p in tok[1:-1].split(";") if p.strip()]
        perms = [_parse_cycles(p, bound) for p in parts]
        degree = max(len(p) for p in perms)
        perms = [tuple(list(p) + list(range(len(p), degree))) for p in perms]
        return Group.from_generators(perms, name=tok, bound=bound)
    if tok == "Q8":
        return _quaternion_group(bound)
    m = _ATOM_RE.match(tok)
    if not m:
        raise ParseError(f"unrecognized group spec: {tok!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "C":
        if n < 1:
            raise ParseError("C<n> needs n >= 1")
        if n > bound:
            raise ResourceBoundError(f"order {n} exceeds bound {bound}")
        return _cyclic_group(n, bound)
    if kind == "D":
        return _dihedral_group(n, bound)
    if kind == "S":
        return _symmetric_group(n, bound)
    return _alternating_group(n, bound)


def make_named(spec, bound=DEFAULT_BOUND):
    """Build a group from a spec like "C12", "D8", "S4", "C2xC2xC3" or "<(1,2,3);(1,2)>"."""
    # split on 'x' but not inside <...>
    toks, depth, cur = [], 0, ""
    for ch in spec:
        if ch == "<":
            depth += 1
        elif ch == ">":
            depth -= 1
        if ch == "x" and depth == 0:
            toks.append(cur)
            cur = ""
        else:
            cur += ch
    toks.append(cur)
    if any(not t.strip() for t in toks):
        raise ParseError(f"malformed spec: {spec!r}")
    groups = [_make_atom(t, bound) for t in toks]
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g, bound=bound)
    out.name = spec
    return out


# -- quotients ----------------------------------------------------------------

def full_subgroup_index(G):
    tab = G.subgroup_table
    return tab.index_of[(1 << G.order) - 1]


def quotient(G, n_sub_idx):
    """G/N realized by the coset action; returns (Q, proj) with proj per element index."""
    tab = G.subgroup_table
    if not tab.normal_flags[n_sub_idx]:
        raise NotNormalError("quotient kernel must be normal")
    sq = G.section_quotient(full_subgroup_index(G), n_sub_idx)
    proj = [sq.to_q[x] for x in range(G.order)]
    return sq.group, proj


# -- automorphisms and isomorphisms -------------------------------------------

def small_generating_set(G):
    if G.order == 1:
        return []
    gens = []
    mask = 1
    order_key = sorted(range(G.order), key=lambda i: (-G.element_orders[i], i))
    while mask.bit_count() < G.order:
        best = None
        best_size = 0
        for i in order_key:
            if (mask >> i) & 1:
                continue
            m = G.closure_mask(list(_bits(mask)) + [i])
            if m.bit_count() > best_size:
                best, best_size = i, m.bit_count()
                if best_size == G.order:
                    break
        gens.append(best)
        mask = G.closure_mask(list(_bits(mask)) + [best])
    return gens


def _element_profiles(G):
    return [(G.element_orders[i], len(G.conjugacy_classes[G.class_of[i]]))
            for i in range(G.order)]


def _word_expressions(G, gens):
    """For each element, a derivation (prev, gen_pos) by right multiplication."""
    expr = {0: None}
    queue = [0]
    while queue:
        x = queue.pop(0)
        for j, g in enumerate(gens):
            y = G.table[x][g]
            if y not in expr:
                expr[y] = (x, j)
                queue.append(y)
    if len(expr) != G.order:
        raise InternalConsistencyError("generating set does not generate")
    return expr


def _extend_hom(G, H, gens, expr, images):
    """Map G -> H from generator images via word derivations, or None."""
    phi = [None] * G.order
    phi[0] = 0
    for x, deriv in expr.items():  # insertion order = BFS order, prev always done
        if deriv is not None:
            prev, j = deriv
            phi[x] = H.table[phi[prev]][images[j]]
    # homomorphy against right multiplication by the generators suffices
    for x in range(G.order):
        for j, g in enumerate(gens):
            if phi[G.table[x][g]] != H.table[phi[x]][images[j]]:
                return None
    if len(set(phi)) != G.order:
        return None
    return tuple(phi)


def _hom_search(G, H, find_all):
    """Isomorphisms G -> H (all of them, or the first)."""
    if G.order != H.order:
        return []
    gens = small_generating_set(G)
    if not gens:
        return [tuple([0])] if H.order == 1 else []
    expr = _word_expressions(G, gens)
    prof_g = _element_profiles(G)
    prof_h = _element_profiles(H)
    candidates = [[h for h in range(H.order) if prof_h[h] == prof_g[g]] for g in gens]
    results = []
    gen_masks = [G.closure_mask(gens[: i + 1]).bit_count() for i in range(len(gens))]

    def rec(i, chosen):
        if results and not find_all:
            return
        if i == len(gens):
            phi = _extend_hom(G, H, gens, expr, chosen)
            if phi is not None:
                results.append(phi)
            return
        for h in candidates[i]:
            m = H.closure_mask([c for c in chosen] + [h])
            if m.bit_count() != gen_masks[i]:
                continue
            rec(i + 1, chosen + [h])

    rec(0, [])
    return results


def is_isomorphic(G, H):
    """(True, witness) with witness a G-index -> H-index bijection, or (False, None)."""
    if G is H:
        return True, tuple(range(G.order))
    if G.order != H.order:
        return False, None
    if sorted(G.element_orders) != sorted(H.element_orders):
        return False, None
    if sorted(len(c) for c in G.conjugacy_classes) != sorted(len(c) for c in H.conjugacy_classes):
        return False, None
    if G.is_abelian != H.is_abelian:
        return False, None
    found = _hom_search(G, H, find_all=False)
    if found:
        return True, found[0]
    return False, None


class AutData:
    """The automorphism group of G together with its Out decomposition."""

    def __init__(self, G):
        self.group = G
        auts = _hom_search(G, G, find_all=True)
        auts.sort()
        self.auts = auts
        self.index = {a: i for i, a in enumerate(auts)}
        inner = set()
        for g in range(G.order):
            inner.add(tuple(G.conj(x, g) for x in range(G.order)))
        self.inner = {self.index[a] for a in inner}
        if len(self.inner) * (G.center_mask.bit_count()) != G.order:
            raise InternalConsistencyError("inner automorphism count mismatch")
        # Out classes: cosets alpha * Inn
        self.out_of_aut = [-1] * len(auts)
        self.out_reps = []
        for i, a in enumerate(auts):
            if self.out_of_aut[i] != -1:
                continue
            o = len(self.out_reps)
            for inn in self.inner:
                composed = self.index[tuple(a[x] for x in auts[inn])]
                self.out_of_aut[composed] = o
            self.out_reps.append(i)
        n_out = len(self.out_reps)
        self.out_table = [[0] * n_out for _ in range(n_out)]
        for i, ai in enumerate(self.out_reps):
            for j, aj in enumerate(self.out_reps):
                comp = tuple(auts[ai][x] for x in auts[aj])
                self.out_table[i][j] = self.out_of_aut[self.index[comp]]
        self.out_identity = self.out_of_aut[self.index[tuple(range(G.order))]]
        self.out_inverse = [0] * n_out
        for i in range(n_out):
            for j in range(n_out):
                if self.out_table[i][j] == self.out_identity:
                    self.out_inverse[i] = j

    @property
    def n_out(self):
        return len(self.out_reps)

    def out_of(self, aut_tuple):
        return self.out_of_aut[self.index[aut_tuple]]

    def aut_rep(self, out_idx):
        return self.auts[self.out_reps[out_idx]]


_AUT_CACHE = {}


def automorphisms(G):
    if id(G) not in _AUT_CACHE:
        _AUT_CACHE[id(G)] = (G, AutData(G))
    return _AUT_CACHE[id(G)][1]


# -- module-level spec operations ---------------------------------------------

def subgroup_table(G):
    return G.subgroup_table


def p_prime_subgroup_classes(G, p):
    """Class indices whose representative subgroup has order coprime to p."""
    tab = G.subgroup_table
    return [c for c in range(tab.n_classes) if tab.order_of_class(c) % p != 0]


def proper_sections(G):
    return G.proper_sections()


# -- isomorphism-type registry -------------------------------------------------

class IsoRegistry:
    """Buckets groups by cheap invariants, then by explicit isomorphism tests."""

    def __init__(self):
        self.buckets = {}
        self.count_by_order = {}

    def _key(self, G):
        return (G.order, tuple(sorted(G.element_orders)),
                tuple(sorted(len(c) for c in G.conjugacy_classes)),
                G.is_abelian, G.center_mask.bit_count())

    def classify(self, G):
        """A stable (representative, label) pair for the isomorphism type of G."""
        key = self._key(G)
        for rep, label in self.buckets.get(key, []):
            ok, _ = is_isomorphic(G, rep)
            if ok:
                return rep, label
        label = _library_name(G)
        if label is None:
            k = self.count_by_order.get(G.order, 0)
            self.count_by_order[G.order] = k + 1
            label = f"G{G.order}_{k}"
        self.buckets.setdefault(key, []).append((G, label))
        return G, label


# Named groups the toolkit knows by display name; also the order <= 36 part
# of the default verification corpus.
NAMED_LIBRARY = [
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10",
    "C12", "C14", "C15", "C16", "C18", "C20", "C21", "C24", "C27", "C28",
    "C30", "C36",
    "C2xC2", "C2xC4", "C2xC2xC2", "C3xC3", "C2xC6", "C4xC4", "C5xC5",
    "C3xC9", "C2xC12", "C6xC6", "C2xC18", "C3xC3xC2", "C3xC3xC4",
    "S3", "D8", "Q8", "D10", "D12", "A4", "D16", "C3xS3", "D18", "S4", "D36",
]

_library_cache = {}


def _library_name(G):
    for spec in NAMED_LIBRARY:
        if spec not in _library_cache:
            _library_cache[spec] = make_named(spec)
        H = _library_cache[spec]
        if H.order == G.order:
            ok, _ = is_isomorphic(G, H)
            if ok:
                return spec
    return None


ISO_REGISTRY = IsoRegistry()
