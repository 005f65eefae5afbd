"""Closed-form predictions for nilpotent groups and the brute-force cross-check.

Predictions are read off a :class:`~epgraph.groups.NilpotentProfile`
(``G = G1 x Z_n x Q_{2^k}``).  ``None`` means "no prediction available";
:class:`~epgraph.errors.NotApplicable` is raised when a formula's
hypotheses fail outright.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, NamedTuple

import numpy as np

from .errors import BoundExceeded, NotApplicable, SearchBudgetExceeded
from .graphs import (Graph, dominating_mask, enhanced_power_graph,
                     proper_enhanced_power_graph)
from .groups import (DEFAULT_MAX_ORDER, Cyclic, Group, GroupSpec, NilpotentProfile,
                     nilpotent_profile, p_part_orders, parse_group_spec)
from .metrics import (INFINITE, connected_components, diameter,
                      domination_number_exact, dominating_vertices, vertex_connectivity)
from .numtheory import euler_phi, factorize
from .spectrum import multiplicity_of_eigenvalue_n


class Bound(NamedTuple):
    """``kind`` is ``"exactly"``, ``"at_most"`` or ``"upper_bound"``."""

    kind: str
    value: int

    def holds(self, x) -> bool:
        if self.kind == "exactly":
            return x == self.value
        return x <= self.value

    def as_json(self):
        return {self.kind: self.value}


def Exactly(v):
    return Bound("exactly", v)


def AtMost(v):
    return Bound("at_most", v)


def UpperBound(v):
    return Bound("upper_bound", v)


def _require_nilpotent(profile: NilpotentProfile) -> None:
    if not profile.is_nilpotent:
        raise NotApplicable("group is not nilpotent")


def _proper_graph_empty(profile: NilpotentProfile) -> bool:
    # cyclic groups (and the trivial group) have only dominating vertices
    return profile.is_cyclic or profile.group_order == 1


# ---------------------------------------------------------------------------
# Dominating set
# ---------------------------------------------------------------------------

def predict_dom_set(profile: NilpotentProfile) -> tuple[int, int]:
    """``(size, case)`` of the dominating set of the enhanced power graph."""
    _require_nilpotent(profile)
    n = profile.cyclic_part_order
    size = {1: 1, 2: n, 3: 2, 4: 2 * n}[profile.case]
    return size, profile.case


def predicted_dom_members(G: Group, profile: NilpotentProfile | None = None) -> list[int]:
    """Elements with trivial ``G1``-part and ``Q``-part of order at most 2."""
    profile = profile or nilpotent_profile(G)
    _require_nilpotent(profile)
    ok = p_part_orders(G, profile.noncyclic_primes) == 1
    if profile.quaternion_order:
        ok &= p_part_orders(G, [2]) <= 2
    return np.flatnonzero(ok).tolist()


# ---------------------------------------------------------------------------
# Proper graph structure
# ---------------------------------------------------------------------------

def predict_proper_connectivity(profile: NilpotentProfile) -> bool | None:
    _require_nilpotent(profile)
    if _proper_graph_empty(profile):
        raise NotApplicable("proper graph of a cyclic group is empty")
    if profile.case in (1, 2):
        return not profile.g1_is_p_group
    if profile.g1_trivial:
        return None
    return True


def predict_component_count(profile: NilpotentProfile) -> int | None:
    _require_nilpotent(profile)
    if _proper_graph_empty(profile):
        return None
    if profile.case in (1, 2):
        if profile.g1_is_p_group:
            p = profile.noncyclic_primes[0]
            return profile.sylows[p].s_p
        return 1
    return None if profile.g1_trivial else 1


def predict_domination_number(profile: NilpotentProfile) -> int | None:
    _require_nilpotent(profile)
    if profile.case not in (1, 2) or _proper_graph_empty(profile):
        return None
    return min(profile.sylows[p].s_p for p in profile.noncyclic_primes)


def predict_diameter(profile: NilpotentProfile) -> Bound | None:
    _require_nilpotent(profile)
    if _proper_graph_empty(profile):
        return None
    if profile.case in (1, 2):
        return None if profile.g1_is_p_group else Exactly(3)
    return None if profile.g1_trivial else AtMost(4)


def predict_eta(profile: NilpotentProfile) -> int | None:
    """Multiplicity of the Laplacian spectral radius of the enhanced power graph."""
    _require_nilpotent(profile)
    if profile.case not in (1, 2) or _proper_graph_empty(profile):
        return None
    return 1 if profile.case == 1 else profile.cyclic_part_order


# ---------------------------------------------------------------------------
# Vertex connectivity bounds for abelian groups
# ---------------------------------------------------------------------------

def abelian_invariants(spec: GroupSpec | str) -> dict[int, list[int]]:
    """Primary decomposition ``{p: sorted exponents}`` of an abelian spec."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    if not spec.is_abelian_spec:
        raise NotApplicable(f"{spec} is not a product of cyclic groups")
    out: dict[int, list[int]] = {}
    for f in spec.factors:
        for p, e in factorize(f.n).items() if f.n > 1 else []:
            out.setdefault(p, []).append(e)
    return {p: sorted(v) for p, v in sorted(out.items())}


def _bound_parts(spec) -> tuple[int, int]:
    inv = abelian_invariants(spec)
    if all(len(e) == 1 for e in inv.values()):
        raise NotApplicable("group is cyclic")
    least = 1      # product of p^(smallest exponent) over non-cyclic Sylows
    cyclic = 1     # product of the cyclic Sylow orders
    for p, exps in inv.items():
        if len(exps) == 1:
            cyclic *= p ** exps[0]
        else:
            least *= p ** exps[0]
    return least, cyclic


def alpha_bound(spec: GroupSpec | str) -> int:
    """Older connectivity bound: ``m - phi(m)`` with ``m`` the product of least parts over all Sylows."""
    least, cyclic = _bound_parts(spec)
    m = least * cyclic
    return m - euler_phi(m)


def beta_bound(spec: GroupSpec | str) -> int:
    """Improved bound: ``(cyclic Sylow orders) * (b - phi(b))``, ``b`` the non-cyclic least parts."""
    least, cyclic = _bound_parts(spec)
    return cyclic * (least - euler_phi(least))


def predict_kappa(profile: NilpotentProfile, spec: GroupSpec | None = None) -> Bound | None:
    _require_nilpotent(profile)
    if profile.case not in (1, 2):
        raise NotApplicable("no connectivity formula when a quaternion Sylow is present")
    if _proper_graph_empty(profile):
        raise NotApplicable("enhanced power graph of a cyclic group is complete")
    if profile.g1_is_p_group:
        return Exactly(1) if profile.case == 1 else Exactly(profile.cyclic_part_order)
    if spec is not None and spec.is_abelian_spec:
        return UpperBound(beta_bound(spec))
    return None


# ---------------------------------------------------------------------------
# Aggregated prediction
# ---------------------------------------------------------------------------

@dataclass
class Prediction:
    dom_size: int | None = None
    dom_description: int | None = None
    proper_connected: bool | None = None
    component_count: int | None = None
    domination_number: int | None = None
    diameter_bound: Bound | None = None
    kappa: Bound | None = None
    alpha: int | None = None
    beta: int | None = None
    eta_lambda1: int | None = None

    def as_dict(self) -> dict:
        out = {}
        for k, v in self.__dict__.items():
            out[k] = v.as_json() if isinstance(v, Bound) else v
        return out


def _try(fn, *args):
    try:
        return fn(*args)
    except NotApplicable:
        return None


def predict(profile: NilpotentProfile, spec: GroupSpec | None = None) -> Prediction:
    if not profile.is_nilpotent:
        return Prediction()
    size, case = predict_dom_set(profile)
    pred = Prediction(dom_size=size, dom_description=case)
    pred.proper_connected = _try(predict_proper_connectivity, profile)
    pred.component_count = predict_component_count(profile)
    pred.domination_number = predict_domination_number(profile)
    pred.diameter_bound = predict_diameter(profile)
    pred.kappa = _try(predict_kappa, profile, spec)
    if spec is not None and spec.table is None and spec.is_abelian_spec:
        pred.alpha = _try(alpha_bound, spec)
        pred.beta = _try(beta_bound, spec)
    pred.eta_lambda1 = predict_eta(profile)
    return pred


# ---------------------------------------------------------------------------
# Verification harness
# ---------------------------------------------------------------------------

MATCH = "match"
MISMATCH = "mismatch"
SKIPPED = "skipped"
ANOMALY = "anomaly"
UNPREDICTED = "unpredicted"


@dataclass(frozen=True)
class Caps:
    max_order: int = DEFAULT_MAX_ORDER
    max_flow_n: int = 300
    max_gamma_n: int = 400
    eigen_n: int = 1500
    rank_n: int = 400
    diameter_n: int = 5000
    gamma_budget: int = 2_000_000


@dataclass
class Row:
    quantity: str
    predicted: Any
    computed: Any
    status: str
    theorem: str
    note: str = ""

    @property
    def match(self) -> bool | None:
        if self.status == MATCH:
            return True
        if self.status == MISMATCH:
            return False
        return None

    def as_dict(self) -> dict:
        def enc(v):
            if isinstance(v, Bound):
                return v.as_json()
            if v == INFINITE:
                return "inf"
            return v
        d = {"quantity": self.quantity, "predicted": enc(self.predicted),
             "computed": enc(self.computed), "status": self.status,
             "match": self.match, "theorem": self.theorem}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class VerificationReport:
    group_name: str
    profile: NilpotentProfile
    rows: list = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return all(r.status != MISMATCH for r in self.rows)

    def row(self, quantity: str) -> Row | None:
        for r in self.rows:
            if r.quantity == quantity:
                return r
        return None

    def as_dict(self) -> dict:
        case = self.profile.case if self.profile.case is not None else "NotNilpotent"
        return {"group": self.group_name, "case": case,
                "rows": [r.as_dict() for r in self.rows], "all_match": self.all_match}


def _compare(quantity, predicted, computed, theorem, note="") -> Row:
    if computed is None:
        return Row(quantity, predicted, None, SKIPPED, theorem, note)
    if predicted is None:
        return Row(quantity, None, computed, UNPREDICTED, theorem, note)
    ok = predicted.holds(computed) if isinstance(predicted, Bound) else predicted == computed
    return Row(quantity, predicted, computed, MATCH if ok else MISMATCH, theorem, note)


def _dom_product_row(G: Group, dom: list[int]) -> Row:
    factor_dom = []
    for i in range(G.factor_count):
        F = G.factor_group(i)
        m = dominating_mask(enhanced_power_graph(F))
        factor_dom.append(m)
    inside = all(
        all(factor_dom[i] >> int(G.factor_projection(i)[x]) & 1 for i in range(G.factor_count))
        for x in dom)
    return Row("dom_product_containment", True, inside, MATCH if inside else MISMATCH,
               "dom-of-product")


def verify(G: Group, caps: Caps = Caps()) -> VerificationReport:
    """Compare every applicable prediction with brute force on ``G``.

    Quantities whose computation exceeds a cap are recorded as skipped,
    never as mismatches.
    """
    profile = nilpotent_profile(G)
    spec = G.spec if (G.spec is not None and G.spec.table is None) else None
    pred = predict(profile, spec)
    rep = VerificationReport(G.display_name, profile)
    rows = rep.rows

    E = enhanced_power_graph(G)
    dom = dominating_vertices(E)

    if profile.is_nilpotent:
        members = predicted_dom_members(G, profile)
        r = _compare("dom_size", pred.dom_size, len(dom), "dom-set")
        if r.status == MATCH and members != dom:
            r.status = MISMATCH
            r.note = "sizes agree but members differ"
        rows.append(r)
    else:
        rows.append(Row("dom_size", None, len(dom), UNPREDICTED, "dom-set", "not nilpotent"))
    if G.factor_count >= 2:
        rows.append(_dom_product_row(G, dom))

    P, _ = proper_enhanced_power_graph(G, allow_empty=True, graph=E)
    if P.n == 0:
        rows.append(Row("proper_graph", None, 0, SKIPPED, "proper-connectivity",
                        "every vertex is dominating (cyclic group)"))
    else:
        comps = connected_components(P)
        connected = len(comps) == 1
        r = _compare("proper_connected", pred.proper_connected, connected, "proper-connectivity")
        if (profile.is_nilpotent and profile.case in (3, 4) and profile.g1_trivial):
            r.predicted = True
            r.status = MATCH if connected else ANOMALY
            r.note = "quaternion case with trivial odd part; literal reading predicts connected"
        rows.append(r)
        rows.append(_compare("component_count", pred.component_count, len(comps),
                             "component-count"))

        gamma = note = None
        if P.n <= caps.max_gamma_n:
            try:
                gamma = domination_number_exact(P, limit=caps.max_gamma_n,
                                                node_budget=caps.gamma_budget)
            except SearchBudgetExceeded as exc:
                note = str(exc)
        else:
            note = f"proper graph has {P.n} > {caps.max_gamma_n} vertices"
        rows.append(_compare("domination_number", pred.domination_number, gamma,
                             "domination-number", note or ""))

        d = diameter(P) if P.n <= caps.diameter_n else None
        rows.append(_compare("proper_diameter", pred.diameter_bound if connected else None,
                             d, "diameter"))

    if P.n > 0:
        kappa = note = None
        try:
            kappa = vertex_connectivity(E, max_n=caps.max_flow_n)
        except BoundExceeded as exc:
            note = str(exc)
        rows.append(_compare("kappa", pred.kappa, kappa, "vertex-connectivity", note or ""))
        if pred.alpha is not None:
            ok = pred.beta <= pred.alpha
            rows.append(Row("beta_le_alpha", pred.alpha, pred.beta,
                            MATCH if ok else MISMATCH, "connectivity-bounds"))

        eta = None if E.n > caps.rank_n else multiplicity_of_eigenvalue_n(E)
        rows.append(_compare("eta_lambda1", pred.eta_lambda1, eta, "spectral-radius-multiplicity",
                             "" if eta is not None else f"{E.n} > {caps.rank_n} vertices"))
    return rep
