"""Computable functors on the (p-bifree) biset category and their invariants.

A FunctorHandle exposes per-group evaluation bases and the linear action of
biset elements.  Restriction kernels, image sums and the I_G condition are
computed through deflated-restriction / inflated-induction words over proper
sections; by the five-factor decomposition these generate exactly the
morphisms from (resp. through) smaller groups, and the agreement with full
Goursat bases is property-tested.
"""

from fractions import Fraction

from .burnside import BurnsideElt
from .charfun import ClassFunction, act, class_action_matrix, subfunctor_span, support_classes
from .cyclotomic import Cyclotomic
from .errors import InternalConsistencyError, ResourceBoundError
from .bisets import (BisetElt, _encode, compose, elementary, from_burnside, graph_pairing,
                     hom_space, to_burnside)
from .groups import automorphisms
from .linalg import SpanBuilder, express_in_rows, mat_apply, nullspace


class FunctorHandle:
    """A functor presented by evaluation bases and a linear biset action."""

    def __init__(self, name, flavor_p, eval_fn, act_fn, matrix_fn=None):
        self.name = name
        self.flavor_p = flavor_p
        self._eval = eval_fn
        self._act = act_fn
        self._matrix = matrix_fn

    def dim(self, G):
        return self._eval(G)[0]

    def labels(self, G):
        return self._eval(G)[1]

    def act(self, x, vec):
        return self._act(x, vec)

    def matrix(self, x):
        """Action matrix of a BisetElt: (dim target) x (dim source)."""
        if self._matrix is not None:
            return self._matrix(x)
        n = self.dim(x.source)
        m = self.dim(x.target)
        cols = []
        for j in range(n):
            unit = [Fraction(0)] * n
            unit[j] = Fraction(1)
            cols.append(self.act(x, unit))
        return [[cols[j][i] for j in range(n)] for i in range(m)]

    def __repr__(self):
        flavor = "classical" if self.flavor_p is None else f"{self.flavor_p}-bifree"
        return f"FunctorHandle({self.name}, {flavor})"


# -- built-in functors -----------------------------------------------------------

def class_function_functor(flavor_p=None, p_regular=None, name=None):
    """Complex (p_regular=None) or Brauer (p_regular=p) class functions."""
    support = "all" if p_regular is None else p_regular

    def eval_fn(G):
        classes = support_classes(G, support)
        return len(classes), [f"class{c}" for c in classes]

    def act_fn(x, vec):
        f = ClassFunction(x.source, support, vec)
        return list(act(x, f).values)

    def matrix_fn(x):
        m = len(support_classes(x.target, support))
        n = len(support_classes(x.source, support))
        out = [[Fraction(0)] * n for _ in range(m)]
        for cls, v in x.coeffs.items():
            mat = class_action_matrix(cls, support)
            for i in range(m):
                row = mat[i]
                for j in range(n):
                    if row[j]:
                        out[i][j] += v * row[j]
        return out

    default = "complex-characters" if p_regular is None else f"brauer-characters(p={p_regular})"
    return FunctorHandle(name or default, flavor_p, eval_fn, act_fn, matrix_fn)


def burnside_functor(flavor_p=None):
    """The Burnside functor KB; evaluation basis = subgroup classes."""

    def eval_fn(G):
        tab = G.subgroup_table
        return tab.n_classes, [f"[G/{c}]" for c in range(tab.n_classes)]

    def act_fn(x, vec):
        u = BurnsideElt(x.source, dict(enumerate(vec)))
        res = compose(x.as_classical(), from_burnside(u))
        return to_burnside(res).as_vector()

    return FunctorHandle("burnside", flavor_p, eval_fn, act_fn)


def pbifree_burnside_functor(p):
    """KB^Delta: the p'-span inside KB; basis = p'-subgroup classes."""

    def eval_fn(G):
        tab = G.subgroup_table
        classes = [c for c in range(tab.n_classes) if tab.order_of_class(c) % p != 0]
        return len(classes), [f"[G/{c}]" for c in classes]

    def act_fn(x, vec):
        G = x.source
        tab = G.subgroup_table
        classes = [c for c in range(tab.n_classes) if tab.order_of_class(c) % p != 0]
        u = BurnsideElt(G, dict(zip(classes, vec)))
        res = to_burnside(compose(x.as_classical(), from_burnside(u)))
        tab2 = x.target.subgroup_table
        out_classes = [c for c in range(tab2.n_classes) if tab2.order_of_class(c) % p != 0]
        if any(res.coeffs.get(c) for c in range(tab2.n_classes) if c not in out_classes):
            raise InternalConsistencyError("p-bifree action left the p'-span")
        return [res.coeffs.get(c, Fraction(0)) for c in out_classes]

    return FunctorHandle(f"pbifree-burnside(p={p})", p, eval_fn, act_fn)


def span_functor(gen, flavor_p, span_p=None, name=None):
    """The subfunctor of class functions generated by `gen`, in span coordinates.

    `span_p` controls which category the generating morphisms range over
    (None = classical, giving classical simple-functor evaluations);
    `flavor_p` is the category the handle itself lives in.
    """
    bases = {}

    def basis_of(G):
        if id(G) not in bases:
            bases[id(G)] = (G, subfunctor_span(gen, G, span_p))
        return bases[id(G)][1]

    def eval_fn(G):
        b = basis_of(G)
        return len(b), [f"v{i}" for i in range(len(b))]

    def act_fn(x, vec):
        src = basis_of(x.source)
        tgt = basis_of(x.target)
        f = None
        for c, v in zip(src, vec):
            f = v * c if f is None else f + v * c
        if f is None:
            return []
        img = act(x, f)
        if not tgt:
            if not img.is_zero():
                raise InternalConsistencyError("span functor image escapes the span")
            return []
        coords = express_in_rows([list(b.values) for b in tgt], list(img.values))
        if coords is None:
            raise InternalConsistencyError("span functor image escapes the span")
        return coords

    return FunctorHandle(name or "span-functor", flavor_p, eval_fn, act_fn)


# -- section words ----------------------------------------------------------------

def _flavored_proper_sections(G, p):
    return [s for s in G.proper_sections() if p is None or s.s_order % p != 0]


def def_res_elt(G, section, p):
    """Def^T_{T/S} Res^G_T as one transitive class in B(T/S, G)."""
    sq = section.quotient
    hom = hom_space(sq.group, G, p)
    L = frozenset(_encode(sq.to_q[t], t, G.order) for t in sq.to_q)
    return BisetElt(hom, {hom.intern(L): 1})


def ind_inf_elt(G, section, p):
    """Ind^G_T Inf^T_{T/S} as one transitive class in B(G, T/S)."""
    sq = section.quotient
    hom = hom_space(G, sq.group, p)
    L = frozenset(_encode(t, sq.to_q[t], sq.group.order) for t in sq.to_q)
    return BisetElt(hom, {hom.intern(L): 1})


# -- kernel spaces ------------------------------------------------------------------

class KernelSpace:
    """The restriction kernel of F at G with its Out(G)-action."""

    def __init__(self, functor, group, basis, out_matrices):
        self.functor = functor
        self.group = group
        self.basis = basis
        self.out_matrices = out_matrices

    @property
    def dimension(self):
        return len(self.basis)

    def __repr__(self):
        return f"KernelSpace({self.functor.name}, |G|={self.group.order}, dim={self.dimension})"


def restriction_kernel(F, G):
    """Intersection of kernels of all morphisms to proper section quotients."""
    p = F.flavor_p
    dim = F.dim(G)
    rows = []
    for sec in _flavored_proper_sections(G, p):
        rows.extend(F.matrix(def_res_elt(G, sec, p)))
    basis = nullspace(rows, dim)
    out_data = automorphisms(G)
    out_matrices = []
    for o in range(out_data.n_out):
        amap = out_data.aut_rep(o)
        iso_x = elementary("iso", (G, G, amap), p)
        mat = []
        for b in basis:
            img = F.act(iso_x, b)
            coords = express_in_rows(basis, img)
            if coords is None:
                raise InternalConsistencyError("Out action does not preserve the kernel")
            mat.append(coords)
        out_matrices.append(mat)
    return KernelSpace(F, G, basis, out_matrices)


def image_sum(F, G):
    """Basis of the sum of images from all smaller groups' evaluations."""
    p = F.flavor_p
    dim = F.dim(G)
    sb = SpanBuilder(dim)
    for sec in _flavored_proper_sections(G, p):
        x = ind_inf_elt(G, sec, p)
        mat = F.matrix(x)
        for j in range(F.dim(x.source)):
            sb.insert([mat[i][j] for i in range(dim)])
    return sb.basis()


def out_multiplicity(K, xi):
    """Multiplicity of the one-dimensional character xi in the kernel module."""
    out_data = automorphisms(K.group)
    n = out_data.n_out
    total = None
    for o in range(n):
        tr = sum((K.out_matrices[o][i][i] for i in range(K.dimension)), start=Fraction(0))
        val = xi[o].conjugate() if isinstance(xi[o], Cyclotomic) else xi[o]
        term = val * tr
        total = term if total is None else total + term
    if total is None:
        return 0
    total = total / n if not isinstance(total, Cyclotomic) else total / n
    if isinstance(total, Cyclotomic):
        if not total.is_rational():
            raise InternalConsistencyError("non-rational multiplicity")
        total = total.rational_value()
    if total.denominator != 1 or total < 0:
        raise InternalConsistencyError(f"multiplicity {total} is not a nonnegative integer")
    return int(total)


def verify_condition(F, G):
    """Exact test of F(G) = kernel + I_G F(G)."""
    p = F.flavor_p
    dim = F.dim(G)
    sections = _flavored_proper_sections(G, p)
    # images of F(G) under deflated restrictions, bucketed by quotient iso type
    from .bisets import isomorphisms
    from .groups import ISO_REGISTRY

    buckets = {}
    for sec in sections:
        x = def_res_elt(G, sec, p)
        Q = x.target
        mat = F.matrix(x)
        vectors = []
        qb = SpanBuilder(F.dim(Q))
        for j in range(dim):
            col = [mat[i][j] for i in range(F.dim(Q))]
            if qb.insert(col):
                vectors.append(col)
        if not vectors:
            continue
        rep, _ = ISO_REGISTRY.classify(Q)
        key = id(rep)
        if key not in buckets:
            buckets[key] = (rep, [])
        rep_group = buckets[key][0]
        iso = isomorphisms(Q, rep_group)[0]
        iso_x = elementary("iso", (rep_group, Q, iso), p)
        for v in vectors:
            buckets[key][1].append(F.act(iso_x, v))
    # close each bucket under Aut(rep), then push back up along every section
    total = SpanBuilder(dim)
    for key, (rep, vecs) in buckets.items():
        aut = automorphisms(rep)
        span = SpanBuilder(F.dim(rep))
        frontier = []
        for v in vecs:
            if span.insert(v):
                frontier.append(v)
        while frontier:
            nxt = []
            for a in aut.auts:
                iso_x = elementary("iso", (rep, rep, a), p)
                for v in frontier:
                    w = F.act(iso_x, v)
                    if span.insert(w):
                        nxt.append(w)
            frontier = nxt
        closed = span.basis()
        for sec in sections:
            Q = sec.quotient.group
            isos = isomorphisms(rep, Q)
            if not isos:
                continue
            up = ind_inf_elt(G, sec, p)
            iso_x = elementary("iso", (Q, rep, isos[0]), p)
            for v in closed:
                total.insert(F.act(up, F.act(iso_x, v)))
    kernel = restriction_kernel(F, G)
    for b in kernel.basis:
        total.insert(list(b))
    return total.rank == dim


# -- simple functor evaluations ------------------------------------------------------

class SimpleLabel:
    """(G0, xi): a group with a one-dimensional character of Out(G0)."""

    def __init__(self, G0, xi, validate=True):
        self.G0 = G0
        self.xi = tuple(xi)
        out = automorphisms(G0)
        assert len(self.xi) == out.n_out
        if validate:
            self.validate()

    def validate(self):
        out = automorphisms(self.G0)
        if self.xi[out.out_identity] != 1:
            raise ValueError("character must send the identity to 1")
        for i in range(out.n_out):
            for j in range(out.n_out):
                if self.xi[out.out_table[i][j]] != self.xi[i] * self.xi[j]:
                    raise ValueError("character is not multiplicative on Out")

    @staticmethod
    def trivial(G0):
        return SimpleLabel(G0, [Fraction(1)] * automorphisms(G0).n_out, validate=False)

    @staticmethod
    def from_unit_character(G0, unit_char):
        """For cyclic G0: identify Out(G0) with the unit group of Z/|G0|.

        Multiplicative by construction (out index -> unit is an isomorphism).
        """
        assert G0.is_cyclic and unit_char.modulus == G0.order
        out = automorphisms(G0)
        res, elem = G0.residue_maps
        xi = []
        for o in range(out.n_out):
            amap = out.aut_rep(o)
            a = res[amap[elem[1]]] if G0.order > 1 else 0
            xi.append(unit_char.value(a))
        return SimpleLabel(G0, xi, validate=False)


def simple_dim(label, H, flavor_p, bound=None):
    """dim of the simple functor evaluation at H: the rank of the essential pairing.

    Rows/columns run over the Hom-basis classes with full Goursat quotient;
    all other classes pair to zero since their composites factor through
    strictly smaller groups.  For abelian G0 or the trivial character the
    rows collapse to one per section (pre/post-twists scale whole rows).
    """
    G0 = label.G0
    if bound is not None and G0.order * H.order > bound * bound:
        raise ResourceBoundError(f"|H x G0| = {G0.order * H.order} exceeds bound^2")
    xi = label.xi
    reduce_rows = G0.is_abelian or all(v == 1 for v in xi)
    rows, entries = graph_pairing(G0, H, flavor_p, one_per_section=reduce_rows)
    if not rows:
        return 0
    matrix = []
    for i in range(len(rows)):
        row = []
        for j in range(len(rows)):
            acc = Fraction(0)
            for o, c in entries[i][j].items():
                acc = acc + xi[o] * c
            row.append(acc)
        matrix.append(row)
    sb = SpanBuilder(len(rows))
    for row in matrix:
        sb.insert(row)
    return sb.rank
