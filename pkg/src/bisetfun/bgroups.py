"""B-groups and their p-bifree refinement: minimal quotients and dimension counts.

A group is recorded as B^Delta_p when every nontrivial normal p'-subgroup has
vanishing deflation number; beta_delta computes the unique minimal quotient
and asserts the uniqueness on every scan (machine-checking the theorem it
relies on, rather than trusting it).
"""

from .burnside import deflation_number
from .errors import InternalConsistencyError
from .groups import ISO_REGISTRY, is_isomorphic, quotient

_BETA_CACHE = {}


class BetaRecord:
    """The minimal quotient data attached to (G, p)."""

    __slots__ = ("group", "p", "beta_delta", "witness_n", "classical_beta",
                 "beta_label", "classical_label")

    def __init__(self, group, p, beta_delta, witness_n, classical_beta,
                 beta_label, classical_label):
        self.group = group
        self.p = p
        self.beta_delta = beta_delta
        self.witness_n = witness_n
        self.classical_beta = classical_beta
        self.beta_label = beta_label
        self.classical_label = classical_label

    def __repr__(self):
        return (f"BetaRecord(|G|={self.group.order}, p={self.p}, "
                f"beta^D={self.beta_label}, beta={self.classical_label})")


def _normal_subgroup_indices(G, p=None, nontrivial=False):
    tab = G.subgroup_table
    out = []
    for i in range(tab.n_subgroups):
        if not tab.normal_flags[i]:
            continue
        order = len(tab.subgroups[i])
        if nontrivial and order == 1:
            continue
        if p is not None and order % p == 0:
            continue
        out.append(i)
    out.sort(key=lambda i: (len(tab.subgroups[i]), i))
    return out


def is_bdelta_group(G, p):
    """True iff m_{G,N} = 0 for every nontrivial normal p'-subgroup N."""
    return all(deflation_number(G, n) == 0
               for n in _normal_subgroup_indices(G, p=p, nontrivial=True))


def is_b_group(G):
    """Bouc's classical condition: m_{G,N} = 0 for every nontrivial normal N."""
    return all(deflation_number(G, n) == 0
               for n in _normal_subgroup_indices(G, nontrivial=True))


def _minimal_quotient(G, p):
    """Scan normal (p'-)subgroups for the first qualifying quotient; assert uniqueness.

    p=None runs the classical scan (any normal subgroup, B-group quotient).
    """
    qualifying = []
    for n_idx in _normal_subgroup_indices(G, p=p):
        m = deflation_number(G, n_idx)
        if m == 0:
            continue
        Q, _ = quotient(G, n_idx)
        good = is_bdelta_group(Q, p) if p is not None else is_b_group(Q)
        if good:
            qualifying.append((n_idx, Q))
    if not qualifying:
        raise InternalConsistencyError(
            f"no minimal quotient found for |G|={G.order}, p={p}; "
            "this contradicts the classification theorem")
    first_n, first_q = qualifying[0]
    for _, Q in qualifying[1:]:
        ok, _ = is_isomorphic(first_q, Q)
        if not ok:
            raise InternalConsistencyError(
                "two qualifying quotients are non-isomorphic; "
                "uniqueness of the minimal quotient fails")
    return first_n, first_q


def beta_delta(G, p):
    """BetaRecord for G at p, cached by isomorphism type."""
    rep, _ = ISO_REGISTRY.classify(G)
    key = (id(rep), p)
    if key in _BETA_CACHE:
        return _BETA_CACHE[key]
    n_idx, bd = _minimal_quotient(rep, p)
    _, bc = _minimal_quotient(rep, None)
    bd_rep, bd_label = ISO_REGISTRY.classify(bd)
    bc_rep, bc_label = ISO_REGISTRY.classify(bc)
    rec = BetaRecord(rep, p, bd_rep, n_idx, bc_rep, bd_label, bc_label)
    _BETA_CACHE[key] = rec
    return rec


def gg_related(G, H, p):
    """True iff some normal p'-subgroup N of G has G/N isomorphic to H."""
    if G.order % H.order != 0:
        return False
    for n_idx in _normal_subgroup_indices(G, p=p):
        if len(G.subgroup_table.subgroups[n_idx]) * H.order != G.order:
            continue
        Q, _ = quotient(G, n_idx)
        ok, _ = is_isomorphic(Q, H)
        if ok:
            return True
    return False


def e_delta_basis(G_B, H, p):
    """Subgroup classes [K] of H with K >> G_B; spans the evaluation of e^Delta_{G_B}."""
    tab = H.subgroup_table
    out = []
    for c in range(tab.n_classes):
        K, _, _ = H.as_subgroup_group(tab.class_reps[c])
        if gg_related(K, G_B, p):
            out.append(c)
    return out


def beta_census(H, p):
    """Per subgroup class of H: the BetaRecord of its representative.

    Returns a list indexed by subgroup class.
    """
    tab = H.subgroup_table
    out = []
    for c in range(tab.n_classes):
        K, _, _ = H.as_subgroup_group(tab.class_reps[c])
        out.append(beta_delta(K, p))
    return out


def dim_simple_trivial(G_B, H, p):
    """dim S^Delta_{G_B,K}(H) = #{[K] <= H : beta^Delta(K) iso G_B}."""
    if not is_bdelta_group(G_B, p):
        raise ValueError("the first argument must be a B^Delta_p-group")
    gb_rep, _ = ISO_REGISTRY.classify(G_B)
    return sum(1 for rec in beta_census(H, p) if rec.beta_delta is gb_rep)
