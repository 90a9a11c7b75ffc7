"""Grothendieck-level action of a fusion ring on a module category.

ModuleActionData stores one nonnegative integer matrix N_r per ring label,
with (N_r)_{ji} counting M_j inside X_r (x) M_i.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, NotInvertibleClass
from .grothendieck import FusionData, VerificationReport


class ModuleActionData:
    def __init__(self, labels, action):
        """``action`` maps each ring label to a |I| x |I| matrix."""
        self.labels = list(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate module labels")
        self.index = {x: i for i, x in enumerate(self.labels)}
        k = len(self.labels)
        self.action = {}
        for r, m in action.items():
            m = np.asarray(m, dtype=np.int64)
            if m.shape != (k, k):
                raise DimensionMismatch(f"N_{r} must be {k}x{k}")
            if (m < 0).any():
                raise ValueError(f"N_{r} has negative entries")
            self.action[r] = m

    @property
    def size(self):
        return len(self.labels)

    def matrix(self, r) -> np.ndarray:
        return self.action[r]

    def matrices(self, f: FusionData):
        """Action matrices in the fusion label order."""
        return [self.action[r] for r in f.labels]

    def row_total(self, r) -> int:
        return int(self.action[r].sum())


def verify_module(f: FusionData, mod: ModuleActionData) -> VerificationReport:
    """Check the Z+-module axioms, transpose duality and indecomposability."""
    rep = VerificationReport("module action data")
    k = mod.size

    rep.record("labels")
    missing = [r for r in f.labels if r not in mod.action]
    for r in missing:
        rep.fail("labels", (r,), "no action matrix")
    if missing:
        return rep

    rep.record("unit-action")
    if not (mod.matrix(f.unit) == np.eye(k, dtype=np.int64)).all():
        rep.fail("unit-action", (f.unit,), "N_unit != identity")

    rep.record("module-associativity")
    t = f.tensor()
    for qi, q in enumerate(f.labels):
        for ri, r in enumerate(f.labels):
            lhs = mod.matrix(q) @ mod.matrix(r)
            rhs = np.zeros_like(lhs)
            for si, s in enumerate(f.labels):
                c = t[qi, ri, si]
                if c:
                    rhs = rhs + c * mod.matrix(s)
            if not (lhs == rhs).all():
                rep.fail("module-associativity", (q, r), "N_q N_r != sum c_{qr}^s N_s")

    rep.record("transpose-duality")
    for r in f.labels:
        if not (mod.matrix(f.dual[r]) == mod.matrix(r).T).all():
            rep.fail("transpose-duality", (r,), "N_{r*} != N_r^T")

    rep.record("indecomposability")
    support = sum(mod.matrix(r) for r in f.labels)
    adj = (support + support.T) > 0
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in np.nonzero(adj[i])[0]:
            if int(j) not in seen:
                seen.add(int(j))
                frontier.append(int(j))
    if len(seen) != k:
        orphan = sorted(set(range(k)) - seen)
        rep.fail(
            "indecomposability",
            tuple(mod.labels[i] for i in orphan),
            "support graph disconnected",
        )
    return rep


def d_action_triviality(mod: ModuleActionData, d_label) -> bool:
    """True iff the invertible class acts trivially on Gr(M).

    The label must act by a permutation matrix (invertible class)."""
    m = mod.matrix(d_label)
    if not ((m.sum(axis=0) == 1).all() and (m.sum(axis=1) == 1).all() and m.max() == 1):
        raise NotInvertibleClass(f"{d_label} does not act by a permutation")
    return bool((m == np.eye(mod.size, dtype=np.int64)).all())


def dimension_identity(f: FusionData, mod: ModuleActionData) -> int:
    """dim H = sum_{q,r} rowTotal(q) C_{qr} rowTotal(r); must match the
    spectrum's total degree."""
    totals = np.array([mod.row_total(r) for r in f.labels], dtype=np.int64)
    return int(totals @ f.cartan_matrix() @ totals)
