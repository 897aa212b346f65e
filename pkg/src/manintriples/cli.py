"""Command line front end.

Every subcommand reads an algebra spec (``--spec`` or stdin) and prints
canonical JSON (sorted keys, compact separators, scalars as "p/q" or
"a+bi" strings) or a plain table.  Exit codes: 0 ok, 2 parse error,
3 budget exceeded, 4 datum fails validation, 5 internal invariant breach.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .bddata import (BDDataError, BudgetExceeded, GeneralizedBDData, LagrangianError,
                     RootMap, Skeleton, complete_skeleton, enumerate_skeletons,
                     diagonal_setting, identity_pairing, make_data, sigma_sets, validate)
from .forms import (COMPLEX, REAL, DegenerateFormError, InvariantForm, is_nondegenerate,
                    make_form, satisfies_special_criterion, split_plus_minus)
from .liealg import ChevalleyAlgebra, Root, RootSystemError, build_algebra, killing_form
from .linalg import Subspace
from .realforms import (RealityError, chain_involution, direct_j_stability, make_context,
                        normalize_twist, realify, reality_conditions, trivial_off_gamma0)
from .scalars import Scalar, format_scalar, parse_scalar
from .triples import (DescentError, GraphFormError, NotLagrangianError, TauError,
                      ValidationFailure, WeylTwist, antecedent_data, ambient_space,
                      check_sign_preservation, construct_triple, descent_chain, extract_bd,
                      verify_triple)

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_VALIDATION, EXIT_INVARIANT = 0, 2, 3, 4, 5


class ParseError(ValueError):
    pass


class InvariantBreach(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Serialization


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def s(x: Scalar) -> str:
    return format_scalar(x)


def vec_out(v: Sequence[Scalar]) -> list[str]:
    return [s(x) for x in v]


def space_out(v: Subspace) -> list[list[str]]:
    return [vec_out(r) for r in v.rows]


def root_out(beta: Root) -> list[int]:
    return list(beta)


def scalar_in(x: Any) -> Scalar:
    if isinstance(x, dict):
        try:
            re = Fraction(int(x.get("re_num", 0)), int(x.get("re_den", 1)))
            im = Fraction(int(x.get("im_num", 0)), int(x.get("im_den", 1)))
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad scalar {x!r}: {e}") from e
        return Scalar(re, im)
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"bad scalar {x!r}")
    try:
        return parse_scalar(x)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(str(e)) from e


# ---------------------------------------------------------------------------
# Input documents


@dataclass(frozen=True)
class AlgebraSpec:
    simple_types: tuple[tuple[str, int], ...]
    center_dim: int
    lambdas: tuple[Scalar, ...]
    form_kind: str
    opposite_borel: tuple[bool, ...]
    center_gram: tuple[tuple[Scalar, ...], ...] | None

    def build(self) -> tuple[ChevalleyAlgebra, InvariantForm]:
        alg = build_algebra(list(self.simple_types), self.center_dim,
                            self.opposite_borel or None)
        form = make_form(alg, self.form_kind, self.lambdas, self.center_gram)
        return alg, form


def parse_spec(doc: Any) -> AlgebraSpec:
    if not isinstance(doc, dict):
        raise ParseError("spec must be a JSON object")
    try:
        types = tuple((str(t[0]).upper(), int(t[1])) for t in doc["simple_types"])
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise ParseError(f"simple_types: {e}") from e
    for letter, rank in types:
        if letter not in "ABCDEFG" or len(letter) != 1 or rank < 1:
            raise ParseError(f"bad simple type {letter}{rank}")
    center_dim = doc.get("center_dim", 0)
    if not isinstance(center_dim, int) or center_dim < 0:
        raise ParseError("center_dim must be a nonnegative integer")
    lams = tuple(scalar_in(x) for x in doc.get("lambdas", [1] * len(types)))
    if len(lams) != len(types):
        raise ParseError(f"need one lambda per simple factor, got {len(lams)}")
    kind = doc.get("form_kind", COMPLEX)
    if kind not in (COMPLEX, REAL):
        raise ParseError(f"form_kind must be complex or real, got {kind!r}")
    opp = doc.get("opposite_borel", [])
    if opp and len(opp) != len(types):
        raise ParseError("opposite_borel needs one flag per simple factor")
    gram = doc.get("center_gram")
    cg = None
    if gram is not None:
        cg = tuple(tuple(scalar_in(x) for x in row) for row in gram)
    return AlgebraSpec(types, center_dim, lams, kind, tuple(bool(b) for b in opp), cg)


def _root_in(alg: ChevalleyAlgebra, x: Any) -> Root:
    roots = alg.roots.roots
    if isinstance(x, int) and not isinstance(x, bool):
        if not 0 <= x < len(roots):
            raise ParseError(f"root index {x} out of range")
        return roots[x]
    if isinstance(x, list):
        beta = tuple(int(c) for c in x)
        if not alg.roots.is_root(beta):
            raise ParseError(f"{x} is not a root")
        return beta
    raise ParseError(f"bad root {x!r}")


def _map_in(alg: ChevalleyAlgebra, pairs: Any) -> list[tuple[Root, Root]]:
    if not isinstance(pairs, list):
        raise ParseError("A and A_p must be lists of pairs")
    out = []
    for p in pairs:
        if not isinstance(p, list) or len(p) != 2:
            raise ParseError(f"bad pair {p!r}")
        out.append((_root_in(alg, p[0]), _root_in(alg, p[1])))
    return out


def _center_in(alg: ChevalleyAlgebra, rows: Any) -> Subspace:
    """Rows over the j0 coordinates (H_1..H_n, Z_1..Z_c)."""
    idx = list(range(alg.rank)) + [alg.center_index(k) for k in range(alg.center_dim)]
    vecs = []
    for r in rows:
        if len(r) != len(idx):
            raise ParseError(f"i_a row needs {len(idx)} entries")
        v = [Scalar(0)] * alg.dim
        for k, x in zip(idx, r):
            v[k] = scalar_in(x)
        vecs.append(v)
    return Subspace.span(vecs, alg.dim)


def twist_in(alg: ChevalleyAlgebra, doc: Any) -> WeylTwist | None:
    if doc is None:
        return None
    if isinstance(doc, dict):
        doc = doc.get("t", doc.get("twist"))
    if not isinstance(doc, list) or len(doc) != alg.rank:
        raise ParseError(f"twist needs {alg.rank} values")
    try:
        return WeylTwist.of([scalar_in(x) for x in doc])
    except ValueError as e:
        raise ParseError(str(e)) from e


@dataclass(frozen=True)
class BDDocument:
    data: GeneralizedBDData
    twist: WeylTwist | None
    twist_p: WeylTwist | None


def parse_bd(alg: ChevalleyAlgebra, form: InvariantForm, doc: Any) -> BDDocument:
    if not isinstance(doc, dict):
        raise ParseError("BD document must be a JSON object")
    a = _map_in(alg, doc.get("A", []))
    ap = _map_in(alg, doc.get("A_p", []))
    sigma = sigma_sets(alg, form)
    for key, side, m in (("gamma_plus", 0, a), ("gamma_plus_p", 0, ap),
                         ("gamma_minus", 1, a), ("gamma_minus_p", 1, ap)):
        if key in doc:
            want = sorted(_root_in(alg, x) for x in doc[key])
            if want != sorted(p[side] for p in m):
                raise ParseError(f"{key} does not match the pairs of the map")
    try:
        skel = make_data(a, ap, Subspace.zero(alg.dim), Subspace.zero(alg.dim), sigma)
    except BDDataError as e:
        raise ParseError(str(e)) from e
    if "i_a" in doc and "i_a_p" in doc:
        data = GeneralizedBDData(skel.A, skel.A_p, _center_in(alg, doc["i_a"]),
                                 _center_in(alg, doc["i_a_p"]))
    else:
        filled = complete_or_empty(alg, form, Skeleton(skel.A, skel.A_p))
        ia = _center_in(alg, doc["i_a"]) if "i_a" in doc else filled.i_a
        iap = _center_in(alg, doc["i_a_p"]) if "i_a_p" in doc else filled.i_a_p
        data = GeneralizedBDData(skel.A, skel.A_p, ia, iap)
    return BDDocument(data, twist_in(alg, doc.get("twist")), twist_in(alg, doc.get("twist_p")))


# ---------------------------------------------------------------------------
# Output helpers


def _root_ix(alg: ChevalleyAlgebra) -> dict[Root, int]:
    return {b: k for k, b in enumerate(alg.roots.roots)}


def map_out(alg: ChevalleyAlgebra, m: RootMap) -> list[list[int]]:
    ix = _root_ix(alg)
    return sorted([ix[a], ix[b]] for a, b in m)


def center_coords(alg: ChevalleyAlgebra, v: Subspace) -> list[list[str]]:
    idx = list(range(alg.rank)) + [alg.center_index(k) for k in range(alg.center_dim)]
    return [[s(r[k]) for k in idx] for r in v.rows]


def data_out(alg: ChevalleyAlgebra, d: GeneralizedBDData) -> dict:
    return {"A": map_out(alg, d.A), "A_p": map_out(alg, d.A_p),
            "i_a": center_coords(alg, d.i_a), "i_a_p": center_coords(alg, d.i_a_p)}


def report_out(rep) -> dict:
    return {str(c.number): {"name": c.name, "ok": c.ok,
                            "witness": None if c.witness is None else repr(c.witness)}
            for c in rep.conditions}


def checks_out(rep) -> dict:
    return {c.name: c.ok for c in rep.checks}


def table_digest(alg: ChevalleyAlgebra) -> str:
    payload = canonical_json([[list(map(list, cell)) for cell in row] for row in alg.table])
    return hashlib.sha256(payload.encode()).hexdigest()


# ---------------------------------------------------------------------------
# Commands


def cmd_algebra(spec: AlgebraSpec, args) -> dict:
    alg, form = spec.build()
    kil = killing_form(alg)
    out = {
        "dim": alg.dim,
        "rank": alg.rank,
        "center_dim": alg.center_dim,
        "basis": list(alg.basis_labels),
        "roots": [root_out(b) for b in alg.roots.roots],
        "b0_simple_roots": [root_out(b) for b in alg.b0_simple_roots],
        "ideals": [{"type": f"{t}{r}", "basis": list(idx), "lambda": s(lam)}
                   for (t, r), idx, lam in zip(spec.simple_types, alg.ideal_basis, form.lambdas)],
        "structure_constants_digest": table_digest(alg),
        "killing_diagonal": [s(kil[k][k]) for k in range(alg.dim)],
        "form_kind": form.kind,
        "nondegenerate": is_nondegenerate(form),
    }
    if form.kind == COMPLEX and is_nondegenerate(form):
        sp = split_plus_minus(alg, form)
        sig = sigma_sets(alg, form)
        out["split"] = {"plus_ideals": list(sp.plus_ideals), "minus_ideals": list(sp.minus_ideals),
                        "dim_g_plus": sp.g_plus.dim, "dim_g_minus": sp.g_minus.dim}
        out["sigma_plus"] = [root_out(b) for b in sig.sigma_plus]
        out["sigma_minus"] = [root_out(b) for b in sig.sigma_minus]
        out["special_criterion"] = satisfies_special_criterion(form)
    return out


def _complex(spec: AlgebraSpec) -> tuple[ChevalleyAlgebra, InvariantForm]:
    alg, form = spec.build()
    if form.kind != COMPLEX:
        raise ParseError("this command needs a complex form")
    if not is_nondegenerate(form):
        raise ParseError("the form is degenerate")
    return alg, form


def cmd_enumerate(spec: AlgebraSpec, args) -> dict:
    alg, form = _complex(spec)
    fixed = identity_pairing(alg, form) if args.diagonal else None
    sks = enumerate_skeletons(alg, form, budget=args.budget, fixed_A=fixed,
                              strict_killing=args.strict_killing)
    rows = []
    for sk in sks:
        # in diagonal mode a = 0, so the canonical i_a is already 0
        d = complete_or_empty(alg, form, sk)
        rep = validate(alg, form, d, strict_killing=args.strict_killing)
        rows.append({"data": data_out(alg, d),
                     "conditions": {str(c.number): c.ok for c in rep.conditions}})
    return {"count": len(sks), "diagonal": bool(args.diagonal), "skeletons": rows}


def complete_or_empty(alg: ChevalleyAlgebra, form: InvariantForm, sk: Skeleton) -> GeneralizedBDData:
    """Canonical centers, or zero centers (failing condition 4) when a has none."""
    try:
        return complete_skeleton(alg, form, sk)
    except LagrangianError:
        zero = Subspace.zero(alg.dim)
        return GeneralizedBDData(sk.A, sk.A_p, zero, zero)


def _build(alg, form, bd: BDDocument, args) -> Any:
    twist = twist_in(alg, args.twist_doc) if args.twist_doc is not None else bd.twist
    rep = validate(alg, form, bd.data, strict_killing=args.strict_killing)
    if not rep.ok:
        raise ValidationFailure(rep)
    return construct_triple(alg, form, bd.data, twist, bd.twist_p)


def cmd_construct(spec: AlgebraSpec, args) -> dict:
    alg, form = _complex(spec)
    bd = parse_bd(alg, form, args.bd_doc)
    t = _build(alg, form, bd, args)
    ver = verify_triple(alg, form, t.i, t.i_p)
    if not ver.ok:
        raise InvariantBreach(f"constructed triple fails verification: {ver}")
    back = extract_bd(alg, form, t)
    if back != bd.data:
        raise InvariantBreach("extract_bd does not return the input data")
    again = construct_triple(alg, form, back, t.twist, t.twist_p)
    if (again.i, again.i_p) != (t.i, t.i_p):
        raise InvariantBreach("rebuilding from the extracted data changes the triple")
    signs = check_sign_preservation(alg, form, t)
    sides = {}
    for label, w in (("unprimed", t.side), ("primed", t.side_p)):
        par = w.parabolic
        sides[label] = {"levi_indices": sorted(par.levi_indices), "dim_p": par.p.dim,
                        "dim_n": par.n.dim, "dim_h": w.h.dim, "dim_i_a": w.i_a.dim}
    return {
        "manin_triple": ver.ok,
        "checks": checks_out(ver),
        "i": space_out(t.i),
        "i_p": space_out(t.i_p),
        "witnesses": sides,
        "extracted": data_out(alg, back),
        "round_trip": True,
        "sign_preservation": signs.ok,
        "twist": vec_out(t.twist.values),
        "twist_p": vec_out(t.twist_p.values),
    }


def _vectors_in(alg: ChevalleyAlgebra, rows: Any) -> Subspace:
    if not isinstance(rows, list):
        raise ParseError("expected a list of vectors")
    vecs = []
    for r in rows:
        if not isinstance(r, list) or len(r) != alg.dim:
            raise ParseError(f"vectors need {alg.dim} coordinates")
        vecs.append([scalar_in(x) for x in r])
    return Subspace.span(vecs, alg.dim)


def cmd_verify(spec: AlgebraSpec, args) -> dict:
    alg, form = spec.build()
    doc = args.bd_doc
    if isinstance(doc, dict) and "i" in doc and "i_p" in doc:
        i, ip = _vectors_in(alg, doc["i"]), _vectors_in(alg, doc["i_p"])
    else:
        bd = parse_bd(alg, form, doc)
        t = _build(alg, form, bd, args)
        i, ip = t.i, t.i_p
    ver = verify_triple(alg, form, i, ip)
    return {"manin_triple": ver.ok, "checks": checks_out(ver),
            "witnesses": {c.name: repr(c.witness) for c in ver.checks if not c.ok}}


def cmd_descend(spec: AlgebraSpec, args) -> dict:
    alg, form = _complex(spec)
    bd = parse_bd(alg, form, args.bd_doc)
    t = _build(alg, form, bd, args)
    res = descent_chain(alg, form, t)
    if not res.f0_contained or not all(r.ok for r in res.reports):
        raise InvariantBreach("a descent level fails verification")
    datas = [bd.data]
    for _ in range(res.height):
        datas.append(antecedent_data(alg, datas[-1])[0])
    levels = []
    for k, (lvl, rep, data) in enumerate(zip(res.levels, res.reports, datas)):
        levels.append({
            "level": k,
            "ambient_indices": sorted(lvl.ambient),
            "dim_g": ambient_space(alg, lvl.ambient).dim,
            "dim_i": lvl.i.dim,
            "dim_i_p": lvl.i_p.dim,
            "verified": rep.ok,
            "data": data_out(alg, data),
        })
    return {"height": res.height, "f0_contained": res.f0_contained, "levels": levels}


def _oracle_classes(g1: ChevalleyAlgebra) -> list[tuple[tuple[int, int], ...]]:
    """Admissible (Gamma_1, Gamma_2, T) of a Dynkin diagram by brute force.

    T must preserve inner products of simple roots and every orbit of T must
    leave its domain.
    """
    simple = g1.roots.simple_roots
    gram = [[g1.roots.ip(a, b) for b in simple] for a in simple]
    out = []
    nodes = list(range(g1.rank))
    for k in range(g1.rank + 1):
        for dom in itertools.combinations(nodes, k):
            for img in itertools.permutations(nodes, k):
                t = dict(zip(dom, img))
                if any(gram[t[a]][t[b]] != gram[a][b] for a in dom for b in dom):
                    continue
                ok = True
                for a in dom:
                    seen = {a}
                    cur = a
                    while cur in t:
                        cur = t[cur]
                        if cur in seen:
                            ok = False
                            break
                        seen.add(cur)
                    if not ok:
                        break
                if ok:
                    out.append(tuple(sorted(t.items())))
    return sorted(out)


def _local(alg: ChevalleyAlgebra, beta: Root) -> int:
    half = alg.rank // 2
    k = next(i for i, c in enumerate(beta) if c)
    return k % half


def cmd_classify_diagonal(spec: AlgebraSpec, args) -> dict:
    if spec.center_dim or len(spec.simple_types) != 1:
        raise ParseError("classify-diagonal needs a simple g1")
    alg, form = diagonal_setting(spec.simple_types)
    fixed = identity_pairing(alg, form)
    sks = enumerate_skeletons(alg, form, budget=args.budget, fixed_A=fixed,
                              strict_killing=args.strict_killing)
    classes = []
    for sk in sks:
        d = complete_or_empty(alg, form, sk)
        if not validate(alg, form, d).ok:
            raise InvariantBreach(f"no valid centers for A' = {sk.A_p}")
        classes.append(tuple(sorted((_local(alg, a), _local(alg, b)) for a, b in sk.A_p)))
    classes.sort()
    g1 = build_algebra(list(spec.simple_types))
    oracle = _oracle_classes(g1)
    if classes != oracle:
        raise InvariantBreach(f"enumeration gives {len(classes)} classes, oracle {len(oracle)}")
    return {"count": len(classes), "oracle_count": len(oracle), "agree": True,
            "classes": [{"gamma_1": [a for a, _ in c], "gamma_2": [b for _, b in c],
                         "T": [[a, b] for a, b in c]} for c in classes]}


def cmd_realcheck(spec: AlgebraSpec, args) -> dict:
    g1 = build_algebra(list(spec.simple_types), spec.center_dim)
    try:
        ctx = make_context(g1, spec.lambdas, spec.center_gram)
    except RealityError as e:
        raise ParseError(str(e)) from e
    g, form = ctx.g, ctx.form
    bd = parse_bd(g, form, args.bd_doc)
    twist = twist_in(g, args.twist_doc) if args.twist_doc is not None else bd.twist
    twist = twist or WeylTwist.identity(g)
    val = validate(g, form, bd.data)
    if not val.ok:
        raise ValidationFailure(val)
    rep = reality_conditions(ctx, bd.data, twist)
    triple = construct_triple(g, form, bd.data, twist)
    stab = direct_j_stability(ctx, triple)
    if stab.ok != rep.ok:
        raise InvariantBreach("reality conditions disagree with direct j-stability")
    out = {"complexified_real_triple": rep.ok, "conditions": report_out(rep),
           "u": vec_out(rep.u.values), "j_stable": {"i": stab.i, "i_p": stab.i_p}}
    if rep.ok:
        real = realify(ctx, triple)
        out["real_triple"] = {"dim_i": real.i.dim, "dim_i_p": real.i_p.dim,
                              "checks": checks_out(real.report),
                              "i": space_out(real.i), "i_p": space_out(real.i_p)}
        inv = chain_involution(ctx, bd.data)
        nm = normalize_twist(ctx, bd.data, twist)
        out["chains"] = [[root_out(b) for b in c] for c in inv.chains]
        out["check_map"] = [list(p) for p in inv.check]
        out["normalization"] = {
            "exact": nm.exact,
            "t_star": vec_out(nm.t_star.values) if nm.t_star else None,
            "u_star": vec_out(nm.u_star.values),
            "u_star_squared_is_one": all(x * x == 1 for x in nm.u_star.values),
            "nontrivial_off_gamma0": [root_out(b) for b in
                                      trivial_off_gamma0(ctx, bd.data, nm.u_star)],
            "obstruction": [[root_out(b), kind, s(v)] for b, kind, v in nm.obstruction],
        }
    return out


COMMANDS = {
    "algebra": (cmd_algebra, False),
    "enumerate": (cmd_enumerate, False),
    "construct": (cmd_construct, True),
    "verify": (cmd_verify, True),
    "descend": (cmd_descend, True),
    "classify-diagonal": (cmd_classify_diagonal, False),
    "realcheck": (cmd_realcheck, True),
}


# ---------------------------------------------------------------------------
# Table rendering


def render_table(doc: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(doc, dict):
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(render_table(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_cell(v)}")
    elif isinstance(doc, list):
        for n, v in enumerate(doc):
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}[{n}]")
                lines.extend(render_table(v, indent + 1))
            else:
                lines.append(f"{pad}[{n}] {_cell(v)}")
    else:
        lines.append(f"{pad}{_cell(doc)}")
    return lines


def _flat(v: Any) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or
                   (isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x))
                   for x in v)
    return False


def _cell(v: Any) -> str:
    if isinstance(v, list):
        return " ".join(_cell(x) if not isinstance(x, list) else "(" + " ".join(map(str, x)) + ")"
                        for x in v)
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


# ---------------------------------------------------------------------------
# Entry point


def _load(path: str | None, stdin_doc: Any, key: str) -> Any:
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                return json.load(fh)
        except OSError as e:
            raise ParseError(f"cannot read {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}: invalid JSON: {e}") from e
    if isinstance(stdin_doc, dict) and key in stdin_doc:
        return stdin_doc[key]
    if key == "spec" and stdin_doc is not None:
        return stdin_doc
    return None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="manintriples",
                                description="Manin triples from generalized Belavin-Drinfeld data")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        c = sub.add_parser(name)
        c.add_argument("--spec", help="algebra spec JSON file (default: stdin)")
        c.add_argument("--bd", help="BD data JSON file")
        c.add_argument("--twist", help="twist JSON file (list of values per simple root)")
        c.add_argument("--budget", type=int, default=100000)
        c.add_argument("--format", choices=("json", "table"), default="json")
        c.add_argument("--strict-killing", action="store_true",
                       help="also check condition 1 with Killing-normalized pairings")
        if name == "enumerate":
            c.add_argument("--diagonal", action="store_true",
                           help="fix A to the identity pairing and i_a = 0")
    return p


def run(argv: Sequence[str] | None = None, stdin: Any = None) -> tuple[int, str, str]:
    """Execute a command; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (EXIT_PARSE if e.code else EXIT_OK), "", ""
    func, needs_bd = COMMANDS[args.command]
    try:
        stdin_doc = None
        if args.spec is None or (needs_bd and args.bd is None):
            text = (stdin if stdin is not None else sys.stdin).read()
            if text.strip():
                try:
                    stdin_doc = json.loads(text)
                except json.JSONDecodeError as e:
                    raise ParseError(f"stdin: invalid JSON: {e}") from e
        spec_doc = _load(args.spec, stdin_doc, "spec")
        if spec_doc is None:
            raise ParseError("no algebra spec given")
        spec = parse_spec(spec_doc)
        args.bd_doc = _load(args.bd, stdin_doc, "bd")
        if needs_bd and args.bd_doc is None:
            raise ParseError("no BD document given")
        args.twist_doc = _load(args.twist, stdin_doc, "twist")
        if args.budget is not None and args.budget <= 0:
            raise ParseError("budget must be positive")
        doc = func(spec, args)
    except (ParseError, RootSystemError, BDDataError, DegenerateFormError) as e:
        return EXIT_PARSE, "", f"parse error: {e}\n"
    except BudgetExceeded as e:
        return EXIT_BUDGET, "", f"budget exceeded: {e}\n"
    except ValidationFailure as e:
        bad = e.report.first_failure()
        return EXIT_VALIDATION, "", f"validation failed: condition {bad.number} ({bad.name})\n"
    except (InvariantBreach, DescentError, RealityError, TauError, GraphFormError,
            NotLagrangianError, LagrangianError) as e:
        return EXIT_INVARIANT, "", f"invariant breach: {e}\n"
    except ValueError as e:
        return EXIT_PARSE, "", f"parse error: {e}\n"
    except Exception as e:  # any other failure is an internal error, not a verdict
        return EXIT_INVARIANT, "", f"internal error: {type(e).__name__}: {e}\n"
    if args.format == "table":
        text = "\n".join(render_table(doc)) + "\n"
    else:
        text = canonical_json(doc) + "\n"
    return EXIT_OK, text, ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
