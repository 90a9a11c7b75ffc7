"""Independent brute-force validation on explicit algebras.

Everything here recomputes from first principles what the rest of the
package takes as input: Cartan matrices are validated against radical
filtrations of the actual finite dimensional algebras, and the squared
antipode is composed directly on a PBW basis.

Elements of a StructureAlgebra are sparse dicts {basis index: CycNum}.
"""

from __future__ import annotations

import itertools
import math
from collections import namedtuple

from . import _linalg
from .cyclotomic import CycField
from .errors import BadParameters
from .grothendieck import FusionData, VerificationReport
from .modcat import ModuleActionData
from .scalar import DEFAULT_TOLERANCE, canonical_key
from .spectrum import SpectrumFactorization


class StructureAlgebra:
    """Finite dimensional associative algebra with explicit basis and sparse
    multiplication tensor over a cyclotomic field.

    ``mult`` is either a dict (i, j) -> {k: CycNum} or a callable computing
    one basis product on demand; products are memoized either way.
    """

    def __init__(self, labels, field: CycField, mult, unit):
        self.labels = list(labels)
        self.index = {x: i for i, x in enumerate(self.labels)}
        self.field = field
        if callable(mult):
            self._mult_fn = mult
            self.mult = {}
        else:
            self._mult_fn = None
            self.mult = mult  # (i, j) -> {k: CycNum}
        self.unit = dict(unit)  # sparse vector

    @property
    def dim(self):
        return len(self.labels)

    def basis_product(self, i: int, j: int) -> dict:
        got = self.mult.get((i, j))
        if got is None:
            if self._mult_fn is None:
                return {}
            got = self._mult_fn(i, j)
            self.mult[(i, j)] = got
        return got

    def multiply(self, v: dict, w: dict) -> dict:
        out = {}
        for i, a in v.items():
            if not a:
                continue
            for j, b in w.items():
                if not b:
                    continue
                ab = a * b
                for k, c in self.basis_product(i, j).items():
                    cur = out.get(k)
                    out[k] = ab * c if cur is None else cur + ab * c
        return {k: c for k, c in out.items() if c}

    def basis_element(self, label) -> dict:
        return {self.index[label]: self.field.one()}

    def trace_vector(self):
        """tr[i] = trace of left multiplication by e_i."""
        tr = []
        for i in range(self.dim):
            t = self.field.zero()
            for m in range(self.dim):
                t = t + self.basis_product(i, m).get(m, self.field.zero())
            tr.append(t)
        return tr

    def dense(self, v: dict):
        out = [self.field.zero()] * self.dim
        for k, c in v.items():
            out[k] = c
        return out

    def check_unit(self) -> bool:
        for i in range(self.dim):
            e = {i: self.field.one()}
            if self.multiply(self.unit, e) != e or self.multiply(e, self.unit) != e:
                return False
        return True

    def check_associativity(self, triples=None) -> bool:
        """Exact (uv)w = u(vw) on basis triples; all triples when none given."""
        rng = range(self.dim)
        if triples is None:
            triples = itertools.product(rng, rng, rng)
        for i, j, k in triples:
            ei, ej, ek = {i: self.field.one()}, {j: self.field.one()}, {k: self.field.one()}
            if self.multiply(self.multiply(ei, ej), ek) != self.multiply(ei, self.multiply(ej, ek)):
                return False
        return True


HopfOracle = namedtuple("HopfOracle", "algebra antipode")
# antipode: dict basis index -> sparse image vector


def apply_linear(mapping: dict, v: dict) -> dict:
    out = {}
    for i, c in v.items():
        for k, d in mapping.get(i, {}).items():
            cur = out.get(k)
            out[k] = c * d if cur is None else cur + c * d
    return {k: c for k, c in out.items() if c}


# -- Taft algebra -------------------------------------------------------------------

def taft_algebra(n: int, s: int = 1) -> HopfOracle:
    """T_n on the PBW basis g^a x^b with x g = q^-1 g x, plus the antipode
    S(g) = g^-1, S(x) = -x g^-1 composed as an anti-homomorphism."""
    if n < 2 or math.gcd(s, n) != 1:
        raise BadParameters("need n >= 2 and gcd(s, n) = 1")
    field = CycField(n)
    q = field.zeta(s)
    labels = [(a, b) for a in range(n) for b in range(n)]
    index = {x: i for i, x in enumerate(labels)}
    mult = {}
    for i, (a1, b1) in enumerate(labels):
        for j, (a2, b2) in enumerate(labels):
            if b1 + b2 >= n:
                mult[(i, j)] = {}
                continue
            coeff = q ** ((-b1 * a2) % n)
            mult[(i, j)] = {index[((a1 + a2) % n, b1 + b2)]: coeff}
    alg = StructureAlgebra(labels, field, mult, {index[(0, 0)]: field.one()})
    g_inv = alg.basis_element(((n - 1) % n, 0))
    x_el = alg.basis_element((0, 1))
    s_of_g = g_inv
    s_of_x = {k: -c for k, c in alg.multiply(x_el, g_inv).items()}
    antipode = {}
    for i, (a, b) in enumerate(labels):
        img = dict(alg.unit)
        for _ in range(b):
            img = alg.multiply(img, s_of_x)
        for _ in range(a):
            img = alg.multiply(img, s_of_g)
        antipode[i] = img
    return HopfOracle(alg, antipode)


def taft_s2_spectrum(n: int, s: int = 1) -> SpectrumFactorization:
    """Eigenvalues of S^2 on T_n itself, by composing the antipode twice on
    the PBW basis (the matrix comes out diagonal)."""
    oracle = taft_algebra(n, s)
    alg = oracle.algebra
    pairs = []
    for i in range(alg.dim):
        img = apply_linear(oracle.antipode, apply_linear(oracle.antipode, {i: alg.field.one()}))
        if set(img) != {i}:
            raise AssertionError("S^2 is not diagonal on the PBW basis")
        pairs.append((img[i], 1))
    return SpectrumFactorization.merge_pairs(pairs, "cyclotomic")


# -- small quantum sl2 ---------------------------------------------------------------

def uqsl2_algebra(ell: int, s: int = 1) -> StructureAlgebra:
    """u_q(sl2) on the PBW basis E^a F^b K^c, 0 <= a,b,c < ell, with the
    standard straightening derived from KE = q^2 EK, KF = q^-2 FK and
    EF - FE = (K - K^-1)/(q - q^-1)."""
    if ell < 3 or ell % 2 == 0 or math.gcd(s, ell) != 1:
        raise BadParameters("need odd ell >= 3 and gcd(s, ell) = 1")
    field = CycField(ell)
    q = field.zeta(s)
    qinv = field.zeta((-s) % ell)
    denom_inv = (q - qinv).inverse()
    labels = [(a, b, c) for a in range(ell) for b in range(ell) for c in range(ell)]
    index = {x: i for i, x in enumerate(labels)}

    def mul_e_left(v):
        out = {}
        for (a, b, c), coeff in v.items():
            if a + 1 < ell:
                out[(a + 1, b, c)] = out.get((a + 1, b, c), field.zero()) + coeff
        return out

    # fe[a] = normal form of F E^a
    fe = [{(0, 1, 0): field.one()}]
    for a in range(1, ell):
        term = mul_e_left(fe[a - 1])
        k_pos = (a - 1, 0, 1)
        k_neg = (a - 1, 0, (ell - 1))
        term[k_pos] = term.get(k_pos, field.zero()) - denom_inv * q ** ((2 * (a - 1)) % ell)
        term[k_neg] = term.get(k_neg, field.zero()) + denom_inv * q ** ((-2 * (a - 1)) % ell)
        fe.append({k: c for k, c in term.items() if c})

    def mul_f_left(v):
        out = {}
        for (a, b, c), coeff in v.items():
            # F E^a = fe[a]; then append F^b K^c on the right
            for (a2, b2, c2), c_fe in fe[a].items():
                nb = b2 + b
                if nb >= ell:
                    continue
                phase = q ** ((-2 * c2 * b) % ell)
                key = (a2, nb, (c2 + c) % ell)
                out[key] = out.get(key, field.zero()) + coeff * c_fe * phase
        return {k: c for k, c in out.items() if c}

    def basis_mul(m1, m2):
        a1, b1, c1 = m1
        a2, b2, c2 = m2
        phase = q ** ((2 * c1 * (a2 - b2)) % ell)
        # F^{b1} E^{a2}
        v = {(a2, 0, 0): field.one()}
        for _ in range(b1):
            v = mul_f_left(v)
        # E^{a1} . v
        for _ in range(a1):
            v = mul_e_left(v)
        # right factors F^{b2} K^{c1+c2}
        out = {}
        for (a3, b3, c3), coeff in v.items():
            nb = b3 + b2
            if nb >= ell:
                continue
            ph = q ** ((-2 * c3 * b2) % ell)
            key = (a3, nb, (c3 + c1 + c2) % ell)
            out[key] = out.get(key, field.zero()) + coeff * ph * phase
        return {k: c for k, c in out.items() if c}

    def mult_fn(i, j):
        return {index[k]: c for k, c in basis_mul(labels[i], labels[j]).items()}

    return StructureAlgebra(labels, field, mult_fn, {index[(0, 0, 0)]: field.one()})


def uqsl2_generators(alg: StructureAlgebra) -> dict:
    return {
        "E": alg.basis_element((1, 0, 0)),
        "F": alg.basis_element((0, 1, 0)),
        "K": alg.basis_element((0, 0, 1)),
    }


def taft_generators(alg: StructureAlgebra) -> dict:
    return {"g": alg.basis_element((1, 0)), "x": alg.basis_element((0, 1))}


SimpleModule = namedtuple("SimpleModule", "name dim matrices")
# matrices: generator label -> dense CycNum matrix (list of rows)


def uqsl2_simple_modules(ell: int, s: int = 1):
    """Highest-weight simples L(mu), mu = 0..ell-1, with the standard basis:
    K v_t = q^(mu-2t) v_t, F v_t = v_{t+1}, E v_t = [t][mu-t+1] v_{t-1}."""
    field = CycField(ell)
    q = field.zeta(s)
    qinv = field.zeta((-s) % ell)
    denom_inv = (q - qinv).inverse()

    def bracket(k):
        return (field.zeta((s * k) % ell) - field.zeta((-s * k) % ell)) * denom_inv

    out = []
    for mu in range(ell):
        d = mu + 1
        zero = field.zero()
        E = [[zero] * d for _ in range(d)]
        F = [[zero] * d for _ in range(d)]
        K = [[zero] * d for _ in range(d)]
        for t in range(d):
            K[t][t] = field.zeta((s * (mu - 2 * t)) % ell)
            if t + 1 < d:
                F[t + 1][t] = field.one()
            if t >= 1:
                E[t - 1][t] = bracket(t) * bracket(mu - t + 1)
        out.append(SimpleModule(f"L{mu}", d, {"E": E, "F": F, "K": K}))
    return out


def taft_simple_modules(n: int, s: int = 1):
    field = CycField(n)
    return [
        SimpleModule(f"L{a}", 1, {"g": [[field.zeta((s * a) % n)]], "x": [[field.zero()]]})
        for a in range(n)
    ]


def taft_idempotents(n: int, s: int = 1):
    """e_a = (1/n) sum_c q^(-ac) g^c, the lifted idempotents of the group
    subalgebra, ordered to match taft_simple_modules."""
    oracle = taft_algebra(n, s)
    alg = oracle.algebra
    field = alg.field
    inv_n = field.from_rational(1) / field.from_rational(n)
    out = []
    for a in range(n):
        v = {}
        for c in range(n):
            v[alg.index[(c, 0)]] = inv_n * field.zeta((-s * a * c) % n)
        out.append(v)
    return out


# -- radical and Cartan validation ----------------------------------------------------

def radical_via_trace_form(alg: StructureAlgebra):
    """Exact basis of the Jacobson radical in characteristic zero: the null
    space of the Gram matrix B_{uv} = Tr(L_{e_u e_v}) of the trace form."""
    tr = alg.trace_vector()
    zero, one = alg.field.zero(), alg.field.one()
    gram = []
    for u in range(alg.dim):
        row = []
        for v in range(alg.dim):
            t = zero
            for k, c in alg.basis_product(u, v).items():
                t = t + c * tr[k]
            row.append(t)
        gram.append(row)
    return _linalg.nullspace(gram, one, zero)


def _rref_rows(rows, zero):
    red, pivots = _linalg.rref(rows)
    out = [r for r in red if any(r)]
    return out, pivots


def _reduce_by(v, rows, pivots):
    v = list(v)
    for row, p in zip(rows, pivots):
        c = v[p]
        if c:
            v = [a - c * b for a, b in zip(v, row)]
    return v


class _Subspace:
    """Exact subspace of k^dim in reduced row echelon form."""

    def __init__(self, rows, zero):
        self.zero = zero
        self.rows, self.pivots = _rref_rows(rows, zero) if rows else ([], [])

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        return _reduce_by(v, self.rows, self.pivots)

    def contains(self, v):
        return not any(self.reduce(v))


def _ideal_chain(alg: StructureAlgebra, radical_rows):
    """rad^0 = A >= rad >= rad^2 >= ... as exact subspaces, ending at 0."""
    zero, one = alg.field.zero(), alg.field.one()
    full = _Subspace([[one if i == j else zero for j in range(alg.dim)] for i in range(alg.dim)], zero)
    rad = _Subspace([list(r) for r in radical_rows], zero)
    chain = [full, rad]
    while chain[-1].dim > 0:
        prev = chain[-1]
        gens = []
        for u in prev.rows:
            uv = {i: c for i, c in enumerate(u) if c}
            for w in rad.rows:
                wv = {i: c for i, c in enumerate(w) if c}
                gens.append(alg.dense(alg.multiply(uv, wv)))
        nxt = _Subspace(gens, zero)
        if nxt.dim == prev.dim:
            raise AssertionError("radical chain does not descend; not nilpotent")
        chain.append(nxt)
    return chain


def _layer_action(alg: StructureAlgebra, generators, big: _Subspace, small: _Subspace):
    """Action matrices of the generators on big/small, with the quotient
    basis extracted from big's rows reduced mod small."""
    zero = alg.field.zero()
    reduced = [small.reduce(r) for r in big.rows]
    basis = _Subspace(reduced, zero)
    qdim = basis.dim

    def coords(v):
        v = small.reduce(v)
        c = [v[p] for p in basis.pivots]
        check = list(v)
        for row, x in zip(basis.rows, c):
            check = [a - x * b for a, b in zip(check, row)]
        if any(check):
            raise AssertionError("vector escaped the quotient basis")
        return c

    mats = {}
    for name, g in generators.items():
        cols = []
        for row in basis.rows:
            img = alg.multiply(g, {i: c for i, c in enumerate(row) if c})
            cols.append(coords(alg.dense(img)))
        mats[name] = [[cols[j][i] for j in range(qdim)] for i in range(qdim)]
    return qdim, mats


def _intertwiner_multiplicity(field, layer_dim, layer_mats, simple: SimpleModule):
    """dim Hom_A(L, layer) by exact solution of F rho(g) = sigma(g) F."""
    if layer_dim == 0:
        return 0
    dl = simple.dim
    zero, one = field.zero(), field.one()
    rows = []
    for name, rho in simple.matrices.items():
        sigma = layer_mats[name]
        for a in range(layer_dim):
            for b in range(dl):
                row = [zero] * (layer_dim * dl)
                for t in range(dl):
                    row[a * dl + t] = row[a * dl + t] + rho[t][b]
                for u in range(layer_dim):
                    row[u * dl + b] = row[u * dl + b] - sigma[a][u]
                rows.append(row)
    return len(_linalg.nullspace(rows, one, zero))


def validate_cartan(alg: StructureAlgebra, generators, simples, candidate,
                    idempotents=None) -> VerificationReport:
    """Check a candidate Cartan matrix C_{qr} = [P_r : L_q] against the
    algebra itself.

    (a) with lifted idempotents: dim(A e_r) must equal sum_q C_{qr} dim L_q;
    (b) always: the aggregate multiplicities [A : L_q] from the radical
        filtration must equal sum_r C_{qr} dim L_r.
    """
    import numpy as np

    rep = VerificationReport("cartan matrix candidate")
    candidate = np.asarray(candidate, dtype=np.int64)
    k = len(simples)
    if candidate.shape != (k, k):
        rep.record("shape")
        rep.fail("shape", candidate.shape, f"expected {k}x{k}")
        return rep
    dims = [sm.dim for sm in simples]

    if idempotents is not None:
        rep.record("projective-dims")
        zero = alg.field.zero()
        for r, e in enumerate(idempotents):
            cols = []
            for m in range(alg.dim):
                prod = alg.multiply({m: alg.field.one()}, e)
                cols.append(alg.dense(prod))
            got = _linalg.rank(cols)
            want = int(sum(candidate[q][r] * dims[q] for q in range(k)))
            if got != want:
                rep.fail("projective-dims", (simples[r].name,), f"dim A e = {got}, expected {want}")

    rep.record("aggregate-multiplicities")
    radical = radical_via_trace_form(alg)
    chain = _ideal_chain(alg, radical)
    totals = [0] * k
    for big, small in zip(chain[:-1], chain[1:]):
        layer_dim, mats = _layer_action(alg, generators, big, small)
        for qi, sm in enumerate(simples):
            totals[qi] += _intertwiner_multiplicity(alg.field, layer_dim, mats, sm)
    for qi, sm in enumerate(simples):
        want = int(sum(candidate[qi][r] * dims[r] for r in range(k)))
        if totals[qi] != want:
            rep.fail(
                "aggregate-multiplicities",
                (sm.name,),
                f"[A : {sm.name}] = {totals[qi]}, expected {want}",
            )
    return rep


def quotient_algebra(alg: StructureAlgebra, ideal_rows) -> StructureAlgebra:
    """A / I for a two-sided ideal given by spanning rows; used to confirm
    that A/rad is semisimple."""
    zero = alg.field.zero()
    ideal = _Subspace([list(r) for r in ideal_rows], zero)
    full = _Subspace(
        [[alg.field.one() if i == j else zero for j in range(alg.dim)] for i in range(alg.dim)],
        zero,
    )
    reduced = [ideal.reduce(r) for r in full.rows]
    basis = _Subspace(reduced, zero)

    def coords(v):
        v = ideal.reduce(v)
        return [v[p] for p in basis.pivots]

    labels = [f"q{i}" for i in range(basis.dim)]
    mult = {}
    for i, ri in enumerate(basis.rows):
        vi = {t: c for t, c in enumerate(ri) if c}
        for j, rj in enumerate(basis.rows):
            vj = {t: c for t, c in enumerate(rj) if c}
            prod = coords(alg.dense(alg.multiply(vi, vj)))
            mult[(i, j)] = {t: c for t, c in enumerate(prod) if c}
    unit = coords(alg.dense(alg.unit))
    return StructureAlgebra(labels, alg.field, mult, {t: c for t, c in enumerate(unit) if c})


# -- independent spectrum enumeration ---------------------------------------------------

def brute_force_spectrum(f: FusionData, mod: ModuleActionData, m,
                         tol=DEFAULT_TOLERANCE) -> SpectrumFactorization:
    """Plain quadruple-loop evaluation of the block multiplicities and
    eigenvalue ratios, independent of the vectorized route in spectrum."""
    size = mod.size
    cart = [[int(x) for x in row] for row in f.cartan_matrix()]
    mats = [mod.matrix(r) for r in f.labels]
    nring = len(f.labels)
    pairs = []
    for i in range(size):
        for j in range(size):
            for k in range(size):
                for l in range(size):
                    n = 0
                    for q in range(nring):
                        nq = int(mats[q][j, i])
                        if not nq:
                            continue
                        for r in range(nring):
                            c = cart[q][r]
                            if c:
                                n += nq * c * int(mats[r][k, l])
                    if n:
                        pairs.append(((m[j] * m[l]) / (m[i] * m[k]), n))
    kind = canonical_key(pairs[0][0], tol)[0]
    backend = {"cyc": "cyclotomic", "fac": "symbolic", "num": "numeric"}[kind]
    return SpectrumFactorization.merge_pairs(pairs, backend, tol)
