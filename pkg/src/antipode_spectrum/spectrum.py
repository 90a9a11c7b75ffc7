"""Module-trace vectors and the factored characteristic polynomial of the
squared antipode.

Conventions.  Action matrices follow the module-data convention
(N_r)_{ji} = N_{ri}^j, and the module-trace vector is the right eigenvector
N_r m = dim(X_r) m.  With these conventions the rank-one structure of
Q_M = sum_r dim(X_r*) N_r reads Q_M = m . mbar^T, so mbar is extracted from
the rows of Q_M and the dimension table is

    sum_r dim(X_r) (N_r)_{ji} = m_i mbar_j .

On examples with real self-conjugate data both index orders coincide.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import _linalg
from .cyclotomic import CycNum
from .errors import (
    AmbiguousM,
    EmptyEigenspace,
    FieldMismatch,
    InvalidTwist,
    JDependence,
    NotInEigenspace,
    ZeroEntry,
)
from .grothendieck import FusionData, VerificationReport, global_dimension, q_matrix
from .modcat import ModuleActionData
from .scalar import DEFAULT_TOLERANCE, canonical_key, numeric_value
from .symbolic import FactoredValue, LaurentPoly


# -- scalar domain bookkeeping -------------------------------------------------

def classify_scalars(values):
    """('cyc', field) | ('frac', None) | ('num', None) | ('sym', ctx)."""
    field = None
    ctx = None
    numeric = False
    for v in values:
        if isinstance(v, CycNum):
            if field is not None and v.field is not field:
                raise FieldMismatch("mixed cyclotomic orders; embed first")
            field = v.field
        elif isinstance(v, FactoredValue):
            ctx = v.ctx
        elif isinstance(v, (int, Fraction)):
            pass
        else:
            numeric = True
    if ctx is not None:
        return ("sym", ctx)
    if field is not None:
        return ("cyc", field)
    if numeric:
        return ("num", None)
    return ("frac", None)


def _lift(values, kind, context):
    if kind == "cyc":
        return [v if isinstance(v, CycNum) else context.from_rational(v) for v in values]
    if kind == "frac":
        return [Fraction(v) for v in values]
    if kind == "num":
        return [numeric_value(v) for v in values]
    return list(values)


def _is_zero(v, tol):
    if isinstance(v, (CycNum, Fraction, int, FactoredValue)):
        return not v
    return abs(v) <= tol


def _eq(a, b, tol):
    if isinstance(a, (CycNum, Fraction, int, FactoredValue)) and isinstance(
        b, (CycNum, Fraction, int, FactoredValue)
    ):
        return a == b
    return abs(numeric_value(a) - numeric_value(b)) <= tol


# -- spectrum container ----------------------------------------------------------

class SpectrumFactorization:
    """Multiset of (eigenvalue, multiplicity) pairs; eigenvalues pairwise
    distinct under canonical equality, entries sorted by canonical key."""

    def __init__(self, entries, backend, tol=DEFAULT_TOLERANCE):
        self.entries = list(entries)
        self.backend = backend
        self.tol = tol
        self.total_degree = sum(m for _, m in self.entries)

    @classmethod
    def from_accumulator(cls, acc: dict, backend, tol=DEFAULT_TOLERANCE):
        items = sorted(acc.items(), key=lambda kv: kv[0])
        return cls([(v, m) for _, (v, m) in items], backend, tol)

    @classmethod
    def merge_pairs(cls, pairs, backend, tol=DEFAULT_TOLERANCE):
        acc = {}
        for value, mult in pairs:
            k = canonical_key(value, tol)
            if k in acc:
                acc[k][1] += mult
            else:
                acc[k] = [value, mult]
        items = sorted(acc.items(), key=lambda kv: kv[0])
        return cls([(v, m) for _, (v, m) in items], backend, tol)

    def multiset(self):
        return {canonical_key(v, self.tol): m for v, m in self.entries}

    def __eq__(self, other):
        if not isinstance(other, SpectrumFactorization):
            return NotImplemented
        return self.multiset() == other.multiset()

    def __len__(self):
        return len(self.entries)

    def close_to(self, other: "SpectrumFactorization", tol: float) -> bool:
        """Numeric comparison: same multiplicities after matching each
        eigenvalue to its nearest counterpart within tol."""
        if self.total_degree != other.total_degree or len(self) != len(other):
            return False
        used = [False] * len(other.entries)
        for v, m in self.entries:
            z = numeric_value(v)
            best = None
            for idx, (w, mw) in enumerate(other.entries):
                if used[idx] or mw != m:
                    continue
                d = abs(z - numeric_value(w))
                if d <= tol and (best is None or d < best[0]):
                    best = (d, idx)
            if best is None:
                return False
            used[best[1]] = True
        return True

    def uniform_root_power(self):
        """(n, e) when the spectrum is exactly all n-th roots of unity, each
        with multiplicity e: the factorization (z^n - 1)^e.  None otherwise."""
        n = len(self.entries)
        if n == 0 or self.backend not in ("cyclotomic", "numeric"):
            return None
        mults = {m for _, m in self.entries}
        if len(mults) != 1:
            return None
        e = mults.pop()
        values = [v for v, _ in self.entries]
        if all(isinstance(v, CycNum) for v in values):
            field = values[0].field
            if n == field.order and {v for v in values} == {field.zeta(t) for t in range(n)}:
                return (n, e)
            return None
        roots = sorted(
            (round((np.angle(numeric_value(v)) / (2 * np.pi) * n)) % n for v in values)
        )
        if roots != list(range(n)):
            return None
        for v in values:
            z = numeric_value(v)
            if abs(z**n - 1) > 1e-6:
                return None
        return (n, e)

    def __str__(self):
        rp = self.uniform_root_power()
        if rp:
            return f"(z^{rp[0]} - 1)^{rp[1]}"
        parts = []
        for v, m in self.entries:
            sv = str(v) if not isinstance(v, complex) else f"{v:.6g}"
            parts.append(f"(z - {sv})^{m}")
        return " ".join(parts)


# -- eigenspace machinery --------------------------------------------------------

def dimension_eigenspace(f: FusionData, mod: ModuleActionData, tol=DEFAULT_TOLERANCE):
    """Exact basis of the joint eigenspace  cap_r ker(N_r - dim(X_r) I)  and
    its dimension (the multiplicity of the dimension character in Gr(M))."""
    dims = f.dims_vector()
    kind, context = classify_scalars(dims)
    size = mod.size
    mats = mod.matrices(f)
    if kind == "num":
        rows = np.vstack(
            [np.asarray(m, dtype=complex) - d * np.eye(size) for m, d in zip(mats, _lift(dims, kind, context))]
        )
        basis = _linalg.numeric_nullspace(rows, tol)
        if not basis:
            raise EmptyEigenspace("no matched pivotal structure for the given dims")
        return [list(b) for b in basis], len(basis)
    if kind == "cyc":
        one, zero = context.one(), context.zero()
    else:
        one, zero = Fraction(1), Fraction(0)
    dlift = _lift(dims, kind, context)
    stacked = []
    for m, d in zip(mats, dlift):
        for j in range(size):
            row = [one * int(m[j, i]) for i in range(size)]
            row[j] = row[j] - d
            stacked.append(row)
    basis = _linalg.nullspace(stacked, one, zero)
    if not basis:
        raise EmptyEigenspace("no matched pivotal structure for the given dims")
    return basis, len(basis)


def _verify_eigenvector(f, mod, m, tol):
    """Check N_r m = dim(X_r) m for every r; exact for symbolic entries."""
    dims = f.dims_vector()
    size = mod.size
    if any(isinstance(x, FactoredValue) for x in m):
        ctx = next(x.ctx for x in m if isinstance(x, FactoredValue))
        field = ctx.field
        polys = []
        for x in m:
            if isinstance(x, FactoredValue):
                polys.append(x.expand())
            else:
                xv = x if isinstance(x, CycNum) else field.from_rational(x)
                polys.append(LaurentPoly.constant(ctx, xv))
        for r, lab in enumerate(f.labels):
            d = dims[r]
            dv = d if isinstance(d, CycNum) else field.from_rational(d)
            if isinstance(d, CycNum) and d.field is not field:
                raise FieldMismatch("dims live outside the symbolic context field")
            N = mod.matrix(lab)
            for j in range(size):
                acc = LaurentPoly(ctx, {})
                for i in range(size):
                    c = int(N[j, i])
                    if c:
                        acc = acc + polys[i] * field.from_rational(c)
                if not (acc - polys[j] * dv).is_zero():
                    raise NotInEigenspace(f"N_{lab} m != dim(X_{lab}) m at row {mod.labels[j]}")
        return
    for r, lab in enumerate(f.labels):
        N = mod.matrix(lab)
        d = dims[r]
        for j in range(size):
            lhs = sum((int(N[j, i]) * m[i] for i in range(size)), start=0 * m[0])
            if not _eq(lhs, d * m[j], tol):
                raise NotInEigenspace(f"N_{lab} m != dim(X_{lab}) m at row {mod.labels[j]}")


def select_m(f: FusionData, mod: ModuleActionData, eigenspace=None, candidate=None,
             tol=DEFAULT_TOLERANCE):
    """Pick the module-trace vector.

    Unique eigenvector: scaled to first entry 1, all entries checked nonzero.
    Higher multiplicity: a candidate is required and is verified to solve the
    eigenvector equations with no vanishing entry.
    """
    if eigenspace is None:
        eigenspace = dimension_eigenspace(f, mod, tol)
    basis, mult = eigenspace
    if mult == 0:
        raise EmptyEigenspace("dimension character does not occur")
    if candidate is None:
        if mult > 1:
            raise AmbiguousM(
                f"dimension character has multiplicity {mult}; supply an m-vector"
            )
        v = basis[0]
        for i, x in enumerate(v):
            if _is_zero(x, tol):
                raise ZeroEntry(f"m_{mod.labels[i]} = 0 in the unique eigenvector")
        lead = v[0]
        return [x / lead for x in v]
    for i, x in enumerate(candidate):
        if not isinstance(x, FactoredValue) and _is_zero(x, tol):
            raise ZeroEntry(f"candidate m_{mod.labels[i]} = 0")
    _verify_eigenvector(f, mod, candidate, tol)
    return list(candidate)


def m_bar(f: FusionData, mod: ModuleActionData, m, tol=DEFAULT_TOLERANCE):
    """Conjugate trace vector from the rank-one structure of Q_M:
    mbar_i = (Q_M)_{ji} / m_j, checked to be independent of the row j."""
    Q = q_matrix(f, mod.matrices(f))
    size = mod.size
    if any(isinstance(x, FactoredValue) for x in m):
        return _m_bar_symbolic(f, mod, m, Q)
    mbar = [Q[0][i] / m[0] for i in range(size)]
    for j in range(size):
        for i in range(size):
            if not _eq(Q[j][i], mbar[i] * m[j], tol):
                raise JDependence(
                    f"row {mod.labels[j]} of Q_M is not m_j * mbar; data is not matched"
                )
    return mbar


def _m_bar_symbolic(f, mod, m, Q):
    ctx = next(x.ctx for x in m if isinstance(x, FactoredValue))
    field = ctx.field

    def to_factored(c):
        cc = c if isinstance(c, CycNum) else field.from_rational(c)
        return FactoredValue.from_constant(ctx, cc) if cc else None

    size = mod.size
    mbar = [None] * size
    for i in range(size):
        q0 = to_factored(Q[0][i])
        mbar[i] = None if q0 is None else q0 / m[0]
    for j in range(size):
        for i in range(size):
            lhs = to_factored(Q[j][i])
            rhs = None if mbar[i] is None else mbar[i] * m[j]
            if (lhs is None) != (rhs is None) or (lhs is not None and lhs != rhs):
                raise JDependence(
                    f"row {mod.labels[j]} of Q_M is not m_j * mbar; the torus "
                    "parameter does not cancel"
                )
    return mbar


def matched_checks(f: FusionData, mod: ModuleActionData, m, mbar,
                   tol=DEFAULT_TOLERANCE) -> VerificationReport:
    """The Q-element identity suite for matched data."""
    rep = VerificationReport("matched pivotal data")
    Q = q_matrix(f, mod.matrices(f))
    size = mod.size
    dim_c = global_dimension(f)

    rep.record("trace")
    tr = Q[0][0]
    for i in range(1, size):
        tr = tr + Q[i][i]
    if not _eq(tr, dim_c, tol):
        rep.fail("trace", (), f"Tr(Q_M) = {tr}, expected dim(C) = {dim_c}")

    rep.record("rank-one")
    kind, _ = classify_scalars([x for row in Q for x in row])
    if kind == "num":
        r = _linalg.numeric_rank(np.array([[numeric_value(x) for x in row] for row in Q]), tol)
    else:
        r = _linalg.rank(Q)
    if r != 1:
        rep.fail("rank-one", (), f"rank(Q_M) = {r}")

    rep.record("q-squared")
    Q2 = _linalg.mat_mul(Q, Q)
    for i in range(size):
        for j in range(size):
            if not _eq(Q2[i][j], dim_c * Q[i][j], tol):
                rep.fail("q-squared", (mod.labels[i], mod.labels[j]), "Q^2 != dim(C) Q")

    rep.record("pivotal-normalization")
    s = m[0] * mbar[0]
    for i in range(1, size):
        s = s + m[i] * mbar[i]
    if not _eq(s, dim_c, tol):
        rep.fail("pivotal-normalization", (), f"sum m_i mbar_i = {s} != {dim_c}")

    rep.record("hom-table")
    dims = f.dims_vector()
    for j in range(size):
        for i in range(size):
            lhs = sum(
                (d * int(mod.matrix(lab)[j, i]) for lab, d in zip(f.labels, dims)),
                start=0 * dims[0],
            )
            if not _eq(lhs, m[i] * mbar[j], tol):
                rep.fail(
                    "hom-table",
                    (mod.labels[i], mod.labels[j]),
                    "sum_r dim(X_r) N_{ri}^j != m_i mbar_j",
                )
    return rep


# -- the characteristic polynomial ------------------------------------------------

def block_multiplicities(f: FusionData, mod: ModuleActionData) -> np.ndarray:
    """n_{ijkl} = sum_{q,r} N_{qi}^j C_{qr} N_{rl}^k as an int64 tensor."""
    T = np.stack([mod.matrix(r) for r in f.labels])  # T[r, j, i]
    C = f.cartan_matrix()
    return np.einsum("qji,qr,rkl->ijkl", T, C, T)


def char_poly_s2(f: FusionData, mod: ModuleActionData, m,
                 tol=DEFAULT_TOLERANCE) -> SpectrumFactorization:
    """Factored characteristic polynomial of S^2 on the weak Hopf algebra of
    (C, M): eigenvalue m_j m_l / (m_i m_k) with multiplicity n_{ijkl},
    merged under canonical equality."""
    n = block_multiplicities(f, mod)
    size = mod.size
    kind, context = classify_scalars(m)
    backend = {"cyc": "cyclotomic", "frac": "cyclotomic", "num": "numeric", "sym": "symbolic"}[kind]
    if kind == "sym":
        mv = list(m)
        inv = [FactoredValue.one(context) / x for x in mv]
    else:
        mv = _lift(m, kind, context)
        inv = [1 / x if not isinstance(x, CycNum) else x.inverse() for x in mv]
    prod = [[mv[j] * mv[l] for l in range(size)] for j in range(size)]
    iprod = [[inv[i] * inv[k] for k in range(size)] for i in range(size)]
    acc = {}
    for i in range(size):
        for j in range(size):
            pj = prod[j]
            qi = iprod[i]
            for k in range(size):
                nk = n[i, j, k]
                qik = qi[k]
                for l in range(size):
                    mult = int(nk[l])
                    if not mult:
                        continue
                    lam = pj[l] * qik
                    key = canonical_key(lam, tol)
                    slot = acc.get(key)
                    if slot is None:
                        acc[key] = [lam, mult]
                    else:
                        slot[1] += mult
    return SpectrumFactorization.from_accumulator(acc, backend, tol)


def pivotal_twist_invariance(f: FusionData, mod: ModuleActionData, m,
                             ring_character: dict, module_twist,
                             tol=DEFAULT_TOLERANCE) -> bool:
    """True iff the spectrum is unchanged by the pivotal twist
    d_r -> d_r b_r, m_i -> m_i b_i.  The pair (b_r, b_i) must satisfy the
    twisted eigenvector equations; otherwise InvalidTwist."""
    dims = f.dims_vector()
    twisted_m = [x * b for x, b in zip(m, module_twist)]
    for i, x in enumerate(twisted_m):
        if not isinstance(x, FactoredValue) and _is_zero(x, tol):
            raise InvalidTwist(f"twisted m_{mod.labels[i]} vanishes")
    for r, lab in enumerate(f.labels):
        if lab not in ring_character:
            raise InvalidTwist(f"no character value for {lab}")
        N = mod.matrix(lab)
        d = dims[r] * ring_character[lab]
        for j in range(mod.size):
            lhs = sum((int(N[j, i]) * twisted_m[i] for i in range(mod.size)), start=0 * twisted_m[0])
            if not _eq(lhs, d * twisted_m[j], tol):
                raise InvalidTwist(
                    f"twist is not compatible with the action at ({lab}, {mod.labels[j]})"
                )
    return char_poly_s2(f, mod, m, tol) == char_poly_s2(f, mod, twisted_m, tol)


def perron_m_vector(mod: ModuleActionData, f: FusionData, max_iter=10000,
                    tol=DEFAULT_TOLERANCE):
    """Positive common Perron eigenvector of the action matrices (the
    pseudounitary m, Frobenius-Perron dimensions of the M_i), first entry 1."""
    total = sum(mod.matrix(r) for r in f.labels).astype(float) + np.eye(mod.size)
    v = np.ones(mod.size)
    for _ in range(max_iter):
        w = total @ v
        w /= np.linalg.norm(w)
        if np.linalg.norm(w - v) < 1e-14:
            v = w
            break
        v = w
    for r in f.labels:
        N = mod.matrix(r).astype(float)
        lam = float(v @ N @ v) / float(v @ v)
        if np.linalg.norm(N @ v - lam * v) > 1e-8 * max(1.0, lam):
            raise EmptyEigenspace(
                f"action matrices share no positive eigenvector (failed at {r})"
            )
    return list(v / v[0])
