"""Built-in families: Taft, small quantum sl2 with a torus parameter, the
dynamical families for simply-laced root systems, pointed categories Vec_G
with a pivotal character, and regular modules.

Each generator returns verified Grothendieck-level data together with the
module-trace vector (and, for the dynamical families, the closed-form
expected spectrum used as an independent cross-check).
"""

from __future__ import annotations

import cmath
import itertools
import math
import os
from collections import namedtuple
from fractions import Fraction

import numpy as np

from .cyclotomic import CycField, CycNum
from .errors import BadParameters, EmptyEigenspace, MissingDims, NotACharacter, NotASubgroup, ZeroEntry
from .grothendieck import FusionData
from .modcat import ModuleActionData
from .scalar import DEFAULT_TOLERANCE
from .spectrum import SpectrumFactorization, dimension_eigenspace
from .symbolic import FactoredContext, FactoredValue


# -- Chebyshev polynomials of the second kind ------------------------------------

def chebyshev(j: int):
    """Integer coefficients of P_j (low degree first): P_1 = 1, P_2 = x,
    P_{j+1} = x P_j - P_{j-1}."""
    if j < 1:
        raise ValueError("chebyshev index must be >= 1")
    prev, cur = [1], [0, 1]
    if j == 1:
        return prev
    for _ in range(j - 2):
        nxt = [0] + cur
        for t, c in enumerate(prev):
            nxt[t] -= c
        prev, cur = cur, nxt
    return cur


def _ipoly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                out[i + k] += x * y
    return out


def _ipoly_mod(a, q):
    # q monic with integer coefficients
    a = list(a)
    while len(a) >= len(q):
        c = a[-1]
        if c:
            off = len(a) - len(q)
            for t in range(len(q) - 1):
                a[off + t] -= c * q[t]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _eval_ipoly(p, x):
    acc = 0 * x
    for c in reversed(p):
        acc = acc * x + c
    return acc


# -- torus points -----------------------------------------------------------------

class TorusPoint:
    """A point of the maximal torus: symbolic, or a tuple of numeric / exact
    coordinates.  Numeric coordinates must keep every Lambda_alpha off the
    ell-th roots of unity; families check that per positive root."""

    def __init__(self, ell: int, entries=None):
        self.ell = ell
        self.entries = None if entries is None else tuple(entries)

    @property
    def is_symbolic(self):
        return self.entries is None

    @classmethod
    def coerce(cls, ell, lam, rank):
        if isinstance(lam, TorusPoint):
            if lam.entries is not None and len(lam.entries) != rank:
                raise BadParameters(f"torus point needs {rank} coordinates")
            return lam
        if lam is None or lam == "symbolic":
            return cls(ell)
        if isinstance(lam, (list, tuple)):
            if len(lam) != rank:
                raise BadParameters(f"torus point needs {rank} coordinates")
            return cls(ell, lam)
        if rank != 1:
            raise BadParameters(f"torus point needs {rank} coordinates")
        return cls(ell, (lam,))


def _exactish(x):
    return isinstance(x, (int, Fraction, CycNum))


# -- Taft family ------------------------------------------------------------------

def taft_family(n: int, s: int = 1):
    """Grothendieck data of (Rep T_n, Rep Z/n): group ring of Z/n with
    dims q^a (q = zeta_n^s), all-ones Cartan matrix, and m_i = q^i.

    The action uses the inverse-shift orientation (N_a)_{ji} = [j = i - a],
    which is the labeling that makes N_a m = q^a m hold with both d_a = q^a
    and m_i = q^i.
    """
    if n < 2 or math.gcd(s, n) != 1:
        raise BadParameters("need n >= 2 and gcd(s, n) = 1")
    field = CycField(n)
    q = field.zeta(s)
    labels = [str(a) for a in range(n)]
    structure = {
        (str(a), str(b), str((a + b) % n)): 1 for a in range(n) for b in range(n)
    }
    fusion = FusionData(
        labels=labels,
        unit="0",
        dual={str(a): str((-a) % n) for a in range(n)},
        structure=structure,
        cartan=np.ones((n, n), dtype=np.int64),
        dims={str(a): q**a for a in range(n)},
    )
    action = {
        str(a): np.array(
            [[1 if j == (i - a) % n else 0 for i in range(n)] for j in range(n)],
            dtype=np.int64,
        )
        for a in range(n)
    }
    module = ModuleActionData(labels=[str(i) for i in range(n)], action=action)
    m = [q**i for i in range(n)]
    return fusion, module, m


# -- small quantum sl2 ------------------------------------------------------------

DynamicalFamily = namedtuple("DynamicalFamily", "fusion module m expected")


def _uqsl2_fusion(ell: int, s: int) -> FusionData:
    polys = {j: chebyshev(j) for j in range(1, ell + 1)}
    modulus = [0] + polys[ell]  # x * P_ell
    sub = polys[ell - 1]
    modulus = list(modulus)
    for t, c in enumerate(sub):
        modulus[t] -= 2 * c
    modulus[0] -= 2  # Q = x P_ell - 2 P_{ell-1} - 2, monic of degree ell
    labels = [f"X{j}" for j in range(1, ell + 1)]
    structure = {}
    for j in range(1, ell + 1):
        for k in range(1, ell + 1):
            prod = _ipoly_mod(_ipoly_mul(polys[j], polys[k]), modulus)
            # expand in the triangular basis P_1 .. P_ell (monic, deg j-1)
            rem = list(prod) + [0] * (ell - len(prod))
            for t in range(ell, 0, -1):
                c = rem[t - 1]
                if c:
                    if c < 0:
                        raise AssertionError("negative fusion coefficient")
                    structure[(f"X{j}", f"X{k}", f"X{t}")] = c
                    for u, pc in enumerate(polys[t]):
                        rem[u] -= c * pc
            if any(rem):
                raise AssertionError("basis expansion failed")
    field = CycField(ell)
    x0 = field.zeta(s) + field.zeta((-s) % ell)
    dims = {f"X{j}": _eval_ipoly(polys[j], x0) for j in range(1, ell + 1)}
    cartan = np.zeros((ell, ell), dtype=np.int64)
    for mu in range(ell - 1):
        for nu in range(ell - 1):
            cartan[mu, nu] = 2 * (mu == nu) + 2 * (mu + nu == ell - 2)
    cartan[ell - 1, ell - 1] = 1
    return FusionData(
        labels=labels,
        unit="X1",
        dual={x: x for x in labels},
        structure=structure,
        cartan=cartan,
        dims=dims,
    )


def _uqsl2_module(ell: int) -> ModuleActionData:
    def shift(w):
        return np.array(
            [[1 if j == (i + w) % ell else 0 for i in range(ell)] for j in range(ell)],
            dtype=np.int64,
        )

    action = {}
    for j in range(1, ell + 1):
        weights = range(j - 1, -j, -2)
        action[f"X{j}"] = sum(shift(w) for w in weights)
    return ModuleActionData(labels=[str(t) for t in range(ell)], action=action)


def _merge_quadruples(values, mult, pairing, tol):
    """Merge value(j) value(k) / (value(i) value(l)) over all label
    quadruples with a uniform multiplicity."""
    size = len(values)
    if all(_exactish(v) or isinstance(v, FactoredValue) for v in values):
        inv = [
            v.inverse() if isinstance(v, CycNum)
            else (FactoredValue.one(v.ctx) / v if isinstance(v, FactoredValue) else 1 / Fraction(v))
            for v in values
        ]
        backend = "symbolic" if any(isinstance(v, FactoredValue) for v in values) else "cyclotomic"
    else:
        values = [complex(v) for v in values]
        inv = [1 / v for v in values]
        backend = "numeric"
    num = [[values[a] * values[b] for b in range(size)] for a in range(size)]
    den = [[inv[a] * inv[b] for b in range(size)] for a in range(size)]
    pairs = []
    for i, j, k, l in itertools.product(range(size), repeat=4):
        a, b = pairing((i, j, k, l))
        pairs.append((num[a[0]][a[1]] * den[b[0]][b[1]], mult))
    return SpectrumFactorization.merge_pairs(pairs, backend, tol)


def uqsl2_family(ell: int, s: int = 1, lam="symbolic", tol=DEFAULT_TOLERANCE) -> DynamicalFamily:
    """The dynamical sl2 family at an odd root of unity: fusion ring from the
    Chebyshev presentation, the weight-space Cartan matrix, the Rep Z/ell
    module, m_j = Lambda q^j - q^-j, and the closed-form expected spectrum
    (every exponent ell)."""
    if ell < 3 or ell % 2 == 0:
        raise BadParameters("ell must be odd and >= 3")
    if math.gcd(s, ell) != 1:
        raise BadParameters("q = zeta_ell^s must be primitive")
    point = TorusPoint.coerce(ell, lam, 1)
    fusion = _uqsl2_fusion(ell, s)
    module = _uqsl2_module(ell)
    field = CycField(ell)
    if point.is_symbolic:
        ctx = FactoredContext(ell, 1)
        m = [FactoredValue.atom(ctx, (1,), (s * j) % ell) for j in range(ell)]
    else:
        lam0 = point.entries[0]
        if _exactish(lam0):
            lam0 = lam0 if isinstance(lam0, CycNum) else field.from_rational(lam0)
            m = [lam0 * field.zeta(s * j) - field.zeta(-s * j) for j in range(ell)]
            if any(not x for x in m):
                raise ZeroEntry("Lambda^ell = 1: some m_j vanishes")
        else:
            lam0 = complex(lam0)
            if abs(lam0**ell - 1) <= tol:
                raise ZeroEntry("Lambda^ell = 1 within tolerance")
            q = cmath.exp(2j * cmath.pi * s / ell)
            m = [lam0 * q**j - q**-j for j in range(ell)]
    expected = _merge_quadruples(
        m, ell, lambda t: ((t[1], t[2]), (t[0], t[3])), tol
    )
    return DynamicalFamily(fusion, module, m, expected)


# -- general simply-laced dynamical families --------------------------------------

class RootSystemData:
    """Simply-laced root system: Cartan matrix, positive roots in simple-root
    coordinates, and the dimension of the Lie algebra."""

    def __init__(self, name, cartan, positive_roots, dim_g):
        self.name = name
        self.cartan = np.asarray(cartan, dtype=np.int64)
        self.rank = self.cartan.shape[0]
        self.positive_roots = [tuple(r) for r in positive_roots]
        self.dim_g = dim_g
        if len(self.positive_roots) != (dim_g - self.rank) // 2:
            raise ValueError("positive root count does not match dim g")
        if not (self.cartan == self.cartan.T).all():
            raise ValueError("simply-laced Cartan matrix must be symmetric")

    @classmethod
    def preset(cls, name: str) -> "RootSystemData":
        try:
            return cls(name, *_ROOT_PRESETS[name])
        except KeyError:
            raise BadParameters(f"unknown root system {name!r} (have A1, A2, A3)")


_ROOT_PRESETS = {
    "A1": ([[2]], [(1,)], 3),
    "A2": ([[2, -1], [-1, 2]], [(1, 0), (0, 1), (1, 1)], 8),
    "A3": (
        [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)],
        15,
    ),
}


def _thread_count():
    try:
        return max(1, int(os.environ.get("ANTIPODE_SPECTRUM_THREADS", "1")))
    except ValueError:
        return 1


def uqg_family(rs, ell: int, s: int = 1, lam="symbolic", tol=DEFAULT_TOLERANCE) -> SpectrumFactorization:
    """Spectrum of the dynamical family for a simply-laced g, evaluated
    directly from the closed product formula: eigenvalues
    y_l y_k / (y_m y_n) over quadruples of torus characters, each with
    multiplicity ell^(dim g - 2 rank)."""
    if isinstance(rs, str):
        rs = RootSystemData.preset(rs)
    if ell < 3 or ell % 2 == 0:
        raise BadParameters("ell must be odd and >= 3")
    if math.gcd(s, ell) != 1:
        raise BadParameters("q = zeta_ell^s must be primitive")
    det = int(round(np.linalg.det(rs.cartan)))
    if math.gcd(ell, det) != 1:
        raise BadParameters(
            f"ell = {ell} shares a factor with det(Cartan) = {det} for {rs.name}"
        )
    point = TorusPoint.coerce(ell, lam, rs.rank)
    mult = ell ** (rs.dim_g - 2 * rs.rank)
    chars = list(itertools.product(range(ell), repeat=rs.rank))
    pairings = [
        [int(np.dot(lamv, rs.cartan @ np.array(alpha))) % ell for lamv in chars]
        for alpha in rs.positive_roots
    ]

    if point.is_symbolic:
        ctx = FactoredContext(ell, rs.rank)
        ys = []
        for idx in range(len(chars)):
            y = FactoredValue.one(ctx)
            for a, alpha in enumerate(rs.positive_roots):
                y = y * FactoredValue.atom(ctx, alpha, (s * pairings[a][idx]) % ell)
            ys.append(y)
        return _merge_quadruples(ys, mult, lambda t: ((t[0], t[3]), (t[1], t[2])), tol)

    entries = point.entries
    if all(_exactish(x) for x in entries):
        field = CycField(ell)
        coords = [x if isinstance(x, CycNum) else field.from_rational(x) for x in entries]
        ys = []
        for idx in range(len(chars)):
            y = field.one()
            for a, alpha in enumerate(rs.positive_roots):
                la = field.one()
                for x, e in zip(coords, alpha):
                    la = la * x**e
                p = (s * pairings[a][idx]) % ell
                y = y * (la * field.zeta(p) - field.zeta(-p))
            if not y:
                raise ZeroEntry("Lambda_alpha^ell = 1: a torus character vanishes")
            ys.append(y)
        return _merge_quadruples(ys, mult, lambda t: ((t[0], t[3]), (t[1], t[2])), tol)

    # numeric path, vectorized
    lamv = [complex(x) for x in entries]
    q = cmath.exp(2j * cmath.pi * s / ell)
    y = np.ones(len(chars), dtype=complex)
    for a, alpha in enumerate(rs.positive_roots):
        la = 1.0 + 0j
        for x, e in zip(lamv, alpha):
            la *= x**e
        if abs(la**ell - 1) <= tol:
            raise ZeroEntry(f"Lambda_alpha^ell = 1 for root {alpha}")
        p = np.array(pairings[a])
        y = y * (la * q**p - q ** (-p.astype(float)))
    digits = max(1, min(12, int(round(-math.log10(tol)))))

    def merge_chunk(lo, hi):
        block = (
            y[lo:hi, None, None, None]
            * y[None, None, None, :]
            / (y[None, :, None, None] * y[None, None, :, None])
        )
        rounded = np.round(block.real, digits) + 1j * np.round(block.imag, digits)
        vals, counts = np.unique(rounded.ravel(), return_counts=True)
        return vals, counts

    threads = _thread_count()
    nchar = len(chars)
    acc: dict = {}
    if threads > 1 and nchar >= 8:
        from concurrent.futures import ThreadPoolExecutor

        bounds = np.linspace(0, nchar, threads + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(lambda b: merge_chunk(b[0], b[1]), zip(bounds[:-1], bounds[1:])))
    else:
        results = [merge_chunk(0, nchar)]
    for vals, counts in results:
        for v, c in zip(vals, counts):
            acc[v] = acc.get(v, 0) + int(c)
    pairs = [(complex(v), c * mult) for v, c in acc.items()]
    return SpectrumFactorization.merge_pairs(pairs, "numeric", tol)


# -- pointed categories Vec_G -------------------------------------------------------

class Group:
    """Finite group as a multiplication table over string labels."""

    def __init__(self, elements, table, unit):
        self.elements = list(elements)
        self.table = dict(table)
        self.unit = unit
        for a in self.elements:
            for b in self.elements:
                if (a, b) not in self.table:
                    raise ValueError(f"incomplete multiplication table at {(a, b)}")
        self._inv = {}
        for a in self.elements:
            inv = [b for b in self.elements if self.table[(a, b)] == self.unit]
            if len(inv) != 1 or self.table[(inv[0], a)] != self.unit:
                raise ValueError(f"no two-sided inverse for {a}")
            self._inv[a] = inv[0]

    def mul(self, a, b):
        return self.table[(a, b)]

    def inverse(self, a):
        return self._inv[a]

    @classmethod
    def cyclic(cls, n: int) -> "Group":
        els = [str(a) for a in range(n)]
        table = {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}
        return cls(els, table, "0")

    @classmethod
    def symmetric3(cls) -> "Group":
        perms = {
            "e": (0, 1, 2),
            "r": (1, 2, 0),
            "r2": (2, 0, 1),
            "s": (1, 0, 2),
            "sr": (0, 2, 1),
            "sr2": (2, 1, 0),
        }
        names = {v: k for k, v in perms.items()}
        els = list(perms)
        table = {}
        for a in els:
            for b in els:
                pa, pb = perms[a], perms[b]
                table[(a, b)] = names[tuple(pa[pb[i]] for i in range(3))]
        return cls(els, table, "e")


class MatchFailure:
    """Evidence that no module trace exists for the requested pivotal data."""

    def __init__(self, reason, multiplicity=0):
        self.reason = reason
        self.multiplicity = multiplicity

    def __repr__(self):
        return f"MatchFailure({self.reason!r})"


def vecg_family(group: Group, kappa: dict, subgroup):
    """Vec_G with pivotal character kappa acting on the coset module G/H.

    Matched exactly when kappa restricts trivially to H; then the trace
    vector is m_{gH} = kappa(g)^-1.  Otherwise a MatchFailure carrying the
    (empty) eigenspace evidence is returned in place of m.
    """
    kappa = {
        g: (v if isinstance(v, CycNum) else Fraction(v)) for g, v in kappa.items()
    }
    if set(kappa) != set(group.elements):
        raise NotACharacter("kappa must be defined on every group element")
    for a in group.elements:
        for b in group.elements:
            if kappa[group.mul(a, b)] != kappa[a] * kappa[b]:
                raise NotACharacter(f"kappa({a} {b}) != kappa({a}) kappa({b})")
    H = list(subgroup)
    hset = set(H)
    if group.unit not in hset or len(hset) != len(H):
        raise NotASubgroup("subgroup must contain the unit, without repeats")
    for a in H:
        if group.inverse(a) not in hset:
            raise NotASubgroup(f"{a}^-1 missing")
        for b in H:
            if group.mul(a, b) not in hset:
                raise NotASubgroup(f"{a} {b} escapes the subgroup")

    fusion = FusionData(
        labels=group.elements,
        unit=group.unit,
        dual={g: group.inverse(g) for g in group.elements},
        structure={(a, b, group.mul(a, b)): 1 for a in group.elements for b in group.elements},
        cartan=None,
        dims=dict(kappa),
    )
    # left cosets, labeled by their first representative in element order
    coset_of = {}
    reps = []
    for g in group.elements:
        if g in coset_of:
            continue
        members = {group.mul(g, h) for h in H}
        for x in members:
            coset_of[x] = g
        reps.append(g)
    labels = [f"{r}H" for r in reps]
    rep_index = {r: i for i, r in enumerate(reps)}
    size = len(reps)
    action = {}
    for g in group.elements:
        mat = np.zeros((size, size), dtype=np.int64)
        for i, r in enumerate(reps):
            target = coset_of[group.mul(g, r)]
            mat[rep_index[target], i] = 1
        action[g] = mat
    module = ModuleActionData(labels=labels, action=action)

    if all(kappa[h] == 1 for h in H):
        m = []
        for r in reps:
            v = kappa[r]
            m.append(v.inverse() if isinstance(v, CycNum) else 1 / v)
        return fusion, module, m
    try:
        dimension_eigenspace(fusion, module)
        multiplicity = -1  # unreachable for unmatched kappa
    except EmptyEigenspace:
        multiplicity = 0
    return fusion, module, MatchFailure("kappa does not restrict trivially to H", multiplicity)


# -- regular module and small presets ----------------------------------------------

def regular_module(f: FusionData):
    """M = C with N_r the left-multiplication matrices; the trace vector is
    the dims composed with duality (equal to dims whenever the dims are
    dual-symmetric, as in every spherical example)."""
    if f.dims is None:
        raise MissingDims("regular module needs dims")
    action = {r: f.left_mult_matrix(r) for r in f.labels}
    module = ModuleActionData(labels=list(f.labels), action=action)
    m = [f.dims[f.dual[x]] for x in f.labels]
    return module, m


def fibonacci_fusion() -> FusionData:
    field = CycField(5)
    phi = -(field.zeta(2)) - field.zeta(3)  # golden ratio
    return FusionData(
        labels=["1", "t"],
        unit="1",
        dual={"1": "1", "t": "t"},
        structure={("1", "1", "1"): 1, ("1", "t", "t"): 1, ("t", "1", "t"): 1,
                   ("t", "t", "1"): 1, ("t", "t", "t"): 1},
        cartan=None,
        dims={"1": field.one(), "t": phi},
    )


BuiltinExample = namedtuple("BuiltinExample", "name fusion module m q_suite pivotal_suite")


def matched_builtins(include_uqsl2=True):
    """Matched examples used by the property suites.

    q_suite: the rank-one Q-element identities apply (fusion-type data).
    pivotal_suite: additionally semisimple with real trace vector, so the
    signed-spectrum reduction applies.
    """
    out = []
    f, mod, m = taft_family(2)
    out.append(BuiltinExample("taft-2", f, mod, m, True, False))
    f, mod, m = taft_family(3)
    out.append(BuiltinExample("taft-3", f, mod, m, True, False))
    f, mod, m = taft_family(5, 2)
    out.append(BuiltinExample("taft-5", f, mod, m, True, False))

    z2 = Group.cyclic(2)
    f, mod, m = vecg_family(z2, {"0": 1, "1": -1}, ["0"])
    out.append(BuiltinExample("vecg-z2-sign", f, mod, m, True, True))

    z3 = Group.cyclic(3)
    field3 = CycField(3)
    f, mod, m = vecg_family(z3, {str(a): field3.zeta(a) for a in range(3)}, ["0"])
    out.append(BuiltinExample("vecg-z3-omega", f, mod, m, True, False))
    f, mod, m = vecg_family(z3, {str(a): 1 for a in range(3)}, ["0"])
    out.append(BuiltinExample("vecg-z3-trivial", f, mod, m, True, True))

    s3 = Group.symmetric3()
    f, mod, m = vecg_family(s3, {g: 1 for g in s3.elements}, ["e", "r", "r2"])
    out.append(BuiltinExample("vecg-s3-trivial", f, mod, m, True, True))
    sign = {"e": 1, "r": 1, "r2": 1, "s": -1, "sr": -1, "sr2": -1}
    f, mod, m = vecg_family(s3, sign, ["e"])
    out.append(BuiltinExample("vecg-s3-sign", f, mod, m, True, True))

    fib = fibonacci_fusion()
    mod, m = regular_module(fib)
    out.append(BuiltinExample("fibonacci-regular", fib, mod, m, True, True))

    if include_uqsl2:
        fam = uqsl2_family(3)
        out.append(BuiltinExample("uqsl2-3-symbolic", fam.fusion, fam.module, fam.m, False, False))
    return out
