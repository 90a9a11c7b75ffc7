"""Command line interface.

Subcommands: verify, solve-m, charpoly, pivotalize, family, oracle.
Exit codes: 0 success, 1 verification/matching failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import families, oracle, specfile
from .cyclotomic import CycNum
from .errors import (
    AmbiguousM,
    BadParameters,
    DimensionMismatch,
    DivisionByZero,
    EmptyEigenspace,
    FieldMismatch,
    JDependence,
    MissingDims,
    NonConvergence,
    NonRealSigns,
    NotACharacter,
    NotASubgroup,
    NotFactorable,
    NotInEigenspace,
    NotInvertibleClass,
    ParseError,
    SignSplitMismatch,
    ZeroEntry,
    ZeroGlobalDimension,
)
from .pivotalization import SignedEigenvalue, char_poly_pivotalized, from_matched_pivotal
from .scalar import count_torus_vars, literal_to_cycnum, literal_to_factored
from .spectrum import (
    SpectrumFactorization,
    char_poly_s2,
    dimension_eigenspace,
    select_m,
)
from .symbolic import FactoredValue

INPUT_ERRORS = (
    ParseError,
    BadParameters,
    AmbiguousM,
    ZeroEntry,
    NotInEigenspace,
    NotACharacter,
    NotASubgroup,
    FieldMismatch,
    MissingDims,
    DivisionByZero,
    NotFactorable,
    DimensionMismatch,
)
DATA_ERRORS = (
    JDependence,
    EmptyEigenspace,
    SignSplitMismatch,
    NonRealSigns,
    ZeroGlobalDimension,
    NonConvergence,
    NotInvertibleClass,
)


# -- output helpers ------------------------------------------------------------------

def eigenvalue_json(v):
    if isinstance(v, SignedEigenvalue):
        return {"kind": "signed", "sign": v.sign, "squared": eigenvalue_json(v.squared)}
    if isinstance(v, CycNum):
        a = v.complex_value()
        return {
            "kind": "cyclotomic",
            "order": v.field.order,
            "coeffs": [str(c) for c in v.coeffs],
            "approx": [a.real, a.imag],
            "str": str(v),
        }
    if isinstance(v, FactoredValue):
        return {
            "kind": "factored",
            "constant": {"order": v.ctx.ell, "coeffs": [str(c) for c in v.constant.coeffs]},
            "monomial": list(v.monomial),
            "factors": [
                {"root": list(coords), "class": cls, "power": p}
                for (coords, cls), p in sorted(v.factors.items())
            ],
            "str": str(v),
        }
    if isinstance(v, (int, Fraction)):
        return {"kind": "rational", "value": str(v)}
    z = complex(v)
    return {"kind": "numeric", "re": z.real, "im": z.imag}


def spectrum_json(spec: SpectrumFactorization) -> dict:
    return {
        "backend": spec.backend,
        "total_degree": spec.total_degree,
        "eigenvalues": [
            {"value": eigenvalue_json(v), "multiplicity": m} for v, m in spec.entries
        ],
    }


def _eig_text(v) -> str:
    if isinstance(v, SignedEigenvalue):
        return str(v)
    if isinstance(v, CycNum):
        a = v.complex_value()
        return f"{v}  (~ {a.real:.6g}{a.imag:+.6g}j)"
    if isinstance(v, FactoredValue):
        return str(v)
    if isinstance(v, (int, Fraction)):
        return str(v)
    z = complex(v)
    return f"{z.real:.9g}{z.imag:+.9g}j"


def print_spectrum(spec: SpectrumFactorization, as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        json.dump(spectrum_json(spec), out, indent=2, sort_keys=True)
        out.write("\n")
        return
    rp = spec.uniform_root_power()
    out.write(f"total degree {spec.total_degree}, {len(spec.entries)} distinct eigenvalue(s)\n")
    if rp:
        out.write(f"chi(z) = (z^{rp[0]} - 1)^{rp[1]}\n")
    for v, m in spec.entries:
        out.write(f"multiplicity {m}: {_eig_text(v)}\n")


def _spectrum_for(doc: specfile.SpecDocument, override_m=None):
    eigenspace = None
    m = override_m if override_m is not None else doc.m
    if m is None:
        eigenspace = dimension_eigenspace(doc.fusion, doc.module, doc.tolerance)
    m = select_m(doc.fusion, doc.module, eigenspace, candidate=m, tol=doc.tolerance)
    return char_poly_s2(doc.fusion, doc.module, m, doc.tolerance)


def _verify_doc(doc, strict):
    from .grothendieck import verify_fusion
    from .modcat import verify_module

    rf = verify_fusion(doc.fusion, strict_duality=strict)
    rm = verify_module(doc.fusion, doc.module)
    return rf, rm


# -- subcommand handlers --------------------------------------------------------------

def _load(args):
    doc = specfile.load(args.spec)
    if getattr(args, "tolerance", None) is not None:
        doc.tolerance = args.tolerance
    return doc


def cmd_verify(args):
    doc = _load(args)
    rf, rm = _verify_doc(doc, args.strict_duality)
    print(rf)
    print(rm)
    return 0 if (rf.ok and rm.ok) else 1


def cmd_solve_m(args):
    doc = _load(args)
    basis, mult = dimension_eigenspace(doc.fusion, doc.module, doc.tolerance)
    print(f"dimension character multiplicity: {mult}")
    if mult == 1:
        m = select_m(doc.fusion, doc.module, (basis, mult), tol=doc.tolerance)
        print("m =", ", ".join(str(x) for x in m))
    else:
        for i, v in enumerate(basis):
            print(f"basis[{i}] =", ", ".join(str(x) for x in v))
        print("supply --m to charpoly to pick a vector in this eigenspace")
    return 0


def _parse_m_option(text, doc):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != doc.module.size:
        raise ParseError(
            f"--m needs {doc.module.size} comma-separated literals, got {len(parts)}"
        )
    nvars = max((count_torus_vars(p) for p in parts), default=0)
    if nvars:
        return [literal_to_factored(p, doc.order, nvars) for p in parts]
    if doc.mode == "numeric":
        from .scalar import literal_to_complex

        return [literal_to_complex(p, doc.order) for p in parts]
    return [literal_to_cycnum(p, doc.order) for p in parts]


def cmd_charpoly(args):
    doc = _load(args)
    rf, rm = _verify_doc(doc, False)
    if not (rf.ok and rm.ok):
        print(rf, file=sys.stderr)
        print(rm, file=sys.stderr)
        return 1
    override = _parse_m_option(args.m, doc) if args.m else None
    spec = _spectrum_for(doc, override)
    print_spectrum(spec, args.json)
    return 0


def cmd_pivotalize(args):
    doc = _load(args)
    if doc.pivotalization is not None:
        spec = char_poly_pivotalized(doc.pivotalization, doc.tolerance)
    else:
        eigenspace = None
        m = doc.m
        if m is None:
            eigenspace = dimension_eigenspace(doc.fusion, doc.module, doc.tolerance)
        m = select_m(doc.fusion, doc.module, eigenspace, candidate=m, tol=doc.tolerance)
        piv = from_matched_pivotal(doc.fusion, doc.module, m, tol=doc.tolerance)
        spec = char_poly_pivotalized(piv, doc.tolerance)
    print_spectrum(spec, args.json)
    return 0


def _parse_lambda(text, ell, rank=1):
    if text is None or text == "symbolic":
        return "symbolic"
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != rank:
        raise BadParameters(f"lambda needs {rank} coordinate(s), got {len(parts)}")
    vals = []
    for p in parts:
        if any(c in p for c in ".jeE") and not p.lstrip("+-").startswith("z"):
            try:
                vals.append(complex(p))
                continue
            except ValueError:
                raise ParseError(f"bad numeric lambda coordinate {p!r}")
        vals.append(literal_to_cycnum(p, ell))
    return vals


def _family_data(args):
    if args.kind == "taft":
        f, mod, m = families.taft_family(args.n, args.s)
        return f, mod, m, args.n
    if args.kind == "uqsl2":
        lam = _parse_lambda(args.lam, args.ell, 1)
        lam = lam if lam == "symbolic" else lam[0]
        fam = families.uqsl2_family(args.ell, args.s, lam)
        return fam.fusion, fam.module, fam.m, args.ell
    if args.kind == "vecg":
        group = _parse_group(args.group)
        kappa_parts = [p.strip() for p in args.kappa.split(",")]
        if len(kappa_parts) != len(group.elements):
            raise ParseError(
                f"--kappa needs {len(group.elements)} values for {args.group}: {group.elements}"
            )
        kappa = {
            g: literal_to_cycnum(p, args.order)
            for g, p in zip(group.elements, kappa_parts)
        }
        subgroup = [p.strip() for p in args.subgroup.split(",")]
        f, mod, m = families.vecg_family(group, kappa, subgroup)
        return f, mod, m, args.order
    if args.kind == "regular":
        doc = specfile.load(args.spec)
        mod, m = families.regular_module(doc.fusion)
        return doc.fusion, mod, m, doc.order
    raise BadParameters(f"unknown family {args.kind!r}")


def _parse_group(name):
    if name == "s3":
        return families.Group.symmetric3()
    if name.startswith("z"):
        try:
            return families.Group.cyclic(int(name[1:]))
        except ValueError:
            pass
    raise BadParameters(f"unknown group {name!r} (use zN or s3)")


def cmd_family(args):
    if args.kind == "uqg":
        if args.emit_spec:
            raise BadParameters(
                "the general-g family evaluates the closed product formula; "
                "no Grothendieck spec document is constructed"
            )
        rank = families.RootSystemData.preset(args.type).rank
        if args.lam is None and rank >= 2:
            raise BadParameters(
                "rank >= 2 families run numerically by default to bound memory; "
                "pass --lambda with coordinates, or --lambda symbolic explicitly"
            )
        lam = _parse_lambda(args.lam, args.ell, rank)
        spec = families.uqg_family(args.type, args.ell, args.s, lam)
        print_spectrum(spec, args.json)
        return 0
    f, mod, m, order = _family_data(args)
    if isinstance(m, families.MatchFailure):
        print(f"match failure: {m.reason} (eigenspace multiplicity {m.multiplicity})",
              file=sys.stderr)
        return 1
    if args.charpoly:
        spec = char_poly_s2(f, mod, m)
        print_spectrum(spec, args.json)
        return 0
    print(specfile.dumps(f, mod, m=m, order=order))
    return 0


def cmd_oracle(args):
    if args.what == "radical":
        if args.family == "taft":
            alg = oracle.taft_algebra(args.n, args.s).algebra
        else:
            alg = oracle.uqsl2_algebra(args.ell, args.s)
        rad = oracle.radical_via_trace_form(alg)
        print(f"dim algebra = {alg.dim}, dim radical = {len(rad)}")
        return 0
    if args.what == "cartan":
        if args.family == "taft":
            orc = oracle.taft_algebra(args.n, args.s)
            alg, gens = orc.algebra, oracle.taft_generators(orc.algebra)
            simples = oracle.taft_simple_modules(args.n, args.s)
            idem = oracle.taft_idempotents(args.n, args.s)
            cand = (json.loads(args.candidate) if args.candidate
                    else [[1] * args.n for _ in range(args.n)])
        else:
            alg = oracle.uqsl2_algebra(args.ell, args.s)
            gens = oracle.uqsl2_generators(alg)
            simples = oracle.uqsl2_simple_modules(args.ell, args.s)
            idem = None
            if args.candidate:
                cand = json.loads(args.candidate)
            else:
                ell = args.ell
                cand = np.zeros((ell, ell), dtype=int)
                for mu in range(ell - 1):
                    for nu in range(ell - 1):
                        cand[mu, nu] = 2 * (mu == nu) + 2 * (mu + nu == ell - 2)
                cand[ell - 1, ell - 1] = 1
        rep = oracle.validate_cartan(alg, gens, simples, cand, idempotents=idem)
        print(rep)
        return 0 if rep.ok else 1
    if args.what == "s2":
        spec = oracle.taft_s2_spectrum(args.n, args.s)
        print_spectrum(spec, args.json)
        return 0
    raise BadParameters(f"unknown oracle command {args.what!r}")


# -- parser -----------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="antipode-spectrum",
        description="Exact spectrum of the squared antipode from Grothendieck-level data",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check fusion and module axioms of a spec file")
    v.add_argument("spec", help="spec document path, or - for stdin")
    v.add_argument("--strict-duality", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve-m", help="dimension-character eigenspace and m-vector")
    s.add_argument("spec", help="spec document path, or - for stdin")
    s.add_argument("--tolerance", type=float, help="numeric comparison tolerance override")
    s.set_defaults(func=cmd_solve_m)

    c = sub.add_parser("charpoly", help="factored characteristic polynomial of S^2")
    c.add_argument("spec", help="spec document path, or - for stdin")
    c.add_argument("--m", help="comma-separated scalar literals overriding the m-vector")
    c.add_argument("--tolerance", type=float, help="numeric comparison tolerance override")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_charpoly)

    pz = sub.add_parser("pivotalize", help="signed spectrum from a pivotalization block")
    pz.add_argument("spec", help="spec document path, or - for stdin")
    pz.add_argument("--tolerance", type=float, help="numeric comparison tolerance override")
    pz.add_argument("--json", action="store_true")
    pz.set_defaults(func=cmd_pivotalize)

    fam = sub.add_parser("family", help="built-in families; emit a spec or run end-to-end")
    fsub = fam.add_subparsers(dest="kind", required=True)

    def family_common(q):
        q.add_argument("--emit-spec", action="store_true",
                       help="print the spec document (default)")
        q.add_argument("--charpoly", action="store_true", help="run end-to-end instead")
        q.add_argument("--json", action="store_true")
        q.set_defaults(func=cmd_family)

    ft = fsub.add_parser("taft")
    ft.add_argument("--n", type=int, required=True)
    ft.add_argument("--s", type=int, default=1)
    family_common(ft)

    fu = fsub.add_parser("uqsl2")
    fu.add_argument("--ell", type=int, required=True)
    fu.add_argument("--s", type=int, default=1)
    fu.add_argument("--lambda", dest="lam", default="symbolic",
                    help="'symbolic', an exact literal, or a complex number")
    family_common(fu)

    fg = fsub.add_parser("uqg")
    fg.add_argument("--type", required=True, choices=["A1", "A2", "A3"])
    fg.add_argument("--ell", type=int, required=True)
    fg.add_argument("--s", type=int, default=1)
    fg.add_argument("--lambda", dest="lam", default=None,
                    help="'symbolic' or comma-separated coordinates (numeric default required for rank >= 2)")
    family_common(fg)

    fv = fsub.add_parser("vecg")
    fv.add_argument("--group", required=True, help="zN or s3")
    fv.add_argument("--kappa", required=True, help="comma-separated literals, one per element")
    fv.add_argument("--subgroup", required=True, help="comma-separated element labels")
    fv.add_argument("--order", type=int, default=1, help="cyclotomic order for kappa literals")
    family_common(fv)

    fr = fsub.add_parser("regular")
    fr.add_argument("--spec", required=True, help="spec file providing the fusion data with dims")
    family_common(fr)

    orc = sub.add_parser("oracle", help="brute-force validations on explicit algebras")
    osub = orc.add_subparsers(dest="what", required=True)
    for what in ("radical", "cartan", "s2"):
        q = osub.add_parser(what)
        q.add_argument("--family", choices=["taft", "uqsl2"],
                       default="taft" if what == "s2" else None,
                       required=(what != "s2"))
        q.add_argument("--n", type=int, default=3)
        q.add_argument("--ell", type=int, default=3)
        q.add_argument("--s", type=int, default=1)
        q.add_argument("--json", action="store_true")
        if what == "cartan":
            q.add_argument("--candidate", help="JSON integer matrix [P_r : L_q] by (q, r)")
        q.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except DATA_ERRORS as e:
        print(f"failure: {e}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0
    except OSError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
