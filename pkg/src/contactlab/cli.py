"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a check fails, 2 for
unreadable or malformed input (including enumeration caps).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .boolean_core import Algebra, ultrafilters
from .docs import Document, algebra_doc, dumps, parse_text, points_doc, space_doc
from .dot import adjacency_dot, poset_dot, specialization_dot
from .dual_construction import (
    TwoPCS, canonical_2cs, canonical_2pcs, canonical_algebra_of_2pcs, canonical_stone2, check_cs,
    check_pcs, check_s2s, derived_relation_of_2cs, g_map, pair_algebra, space_round_trip,
    verify_theorem,
)
from .duality import Dt_object, natural_t, standard_algebras, verify_duality
from .errors import AxiomViolation, InputError, WorkbenchError
from .extensions import extension_poset, relation_label, verify_extension_poset
from .finite_space import discrete, is_homeomorphism
from .points import canonical_adjacency, clans, grills
from .precontact import (
    AXIOM_SETS, AtomRelation, PrecontactRel, check_axioms, enumerate_contact_relations,
    enumerate_precontact_relations, ll_axiom_equivalence, rho_l,
)
from .report import Check, Report

ATOM_NAMES = "pqrstuvwxyzabcdefghijklmno"


def _read(path: str) -> Document:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(exc.strerror or "cannot read file", path) from None
    return parse_text(text)


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _degenerate(A: Algebra) -> None:
    if A.n == 0:
        _warn("degenerate algebra with no atoms: 0 = 1, not representable by a nonempty space")


def _relation(doc: Document, *, default_full: bool = False) -> PrecontactRel:
    """The contact relation of an algebra-like document."""
    if doc.relation is not None:
        return doc.relation
    if doc.table is not None:
        rep = check_axioms(doc.table, AXIOM_SETS["precontact"])
        _, check = rep.first_failure()
        raise AxiomViolation(check.name, check.witness, f"table is not a precontact relation: {check.name} fails")
    if default_full:
        return rho_l(doc.algebra)
    raise InputError("document has no contact relation", "contact")


def _emit_report(rep: Report, out: TextIO, timings: bool) -> int:
    out.write(rep.to_json(timings=timings) + "\n")
    if not rep.ok:
        first = rep.first_failure()
        print(f"FAIL {first[0]}  witness={json.dumps(first[1].witness, sort_keys=True)}", file=sys.stderr)
    return 0 if rep.ok else 1


# --- verbs -----------------------------------------------------------------------------

def cmd_check(args, out: TextIO) -> int:
    doc = _read(args.input)
    rep = Report("check")
    if doc.kind == "space-pair":
        P = doc.pair
        if doc.structure == "2pcs":
            rep.add_section(check_pcs(TwoPCS(P, doc.r)))
        elif doc.structure == "2cs":
            rep.add_section(check_cs(P))
        else:
            rep.add_section(check_s2s(P))
        return _emit_report(rep, out, args.timings)
    if doc.bare:
        raise InputError("document has no contact relation", "contact")
    T = doc.table if doc.table is not None else doc.relation.table()
    _degenerate(doc.algebra)
    rep.add_section(check_axioms(T, AXIOM_SETS[args.axioms]))
    rep.add_section(ll_axiom_equivalence(T))
    return _emit_report(rep, out, args.timings)


def _dualize_algebra(doc: Document, kind: str):
    A = doc.algebra
    _degenerate(A)
    if kind == "stone2":
        if not doc.bare:
            _warn("stone2 ignores the contact relation and uses the largest one")
        P = canonical_stone2(A)
        return P, g_map(A, P), None
    C = _relation(doc)
    if kind == "2pcs":
        S = canonical_2pcs(A, C)
        return S.pair, g_map(A, S.pair), S.relation
    P = canonical_2cs(A, C)
    return P, g_map(A, P), None


def cmd_dualize(args, out: TextIO) -> int:
    doc = _read(args.input)
    if doc.kind == "space-pair":
        P = doc.pair
        if doc.structure == "2pcs":
            B, C = canonical_algebra_of_2pcs(TwoPCS(P, doc.r))
        else:
            B, C = pair_algebra(P)
        out.write(dumps(algebra_doc(B.algebra, C)))
        return 0
    P, base, r = _dualize_algebra(doc, args.kind)
    out.write(dumps(space_doc(P, base, r, args.kind)))
    if args.dot:
        with open(args.dot, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(specialization_dot(P))
    return 0


def cmd_points(args, out: TextIO) -> int:
    doc = _read(args.input)
    if doc.kind == "space-pair":
        raise InputError("points are listed for algebra documents", "kind")
    A = doc.algebra
    _degenerate(A)
    if args.kind == "ultrafilters":
        pts = ultrafilters(A)
    elif args.kind == "grills":
        pts = grills(A)
    else:
        pts = clans(A, _relation(doc))
    out.write(dumps(points_doc(args.kind, [p.label for p in pts])))
    return 0


def _suite_representation(doc: Document) -> Report:
    if doc.kind == "space-pair":
        P = doc.pair
        if doc.structure == "2pcs":
            return space_round_trip(TwoPCS(P, doc.r))
        rep = Report("representation")
        cs = rep.add_section(check_cs(P) if doc.structure == "2cs" else check_s2s(P))
        if cs.ok:
            rep.add_section(space_round_trip(TwoPCS(P, derived_relation_of_2cs(P))))
        return rep
    rep = verify_theorem(doc.algebra, _relation(doc, default_full=doc.bare))
    if doc.bare:
        rep.notes.append("bare algebra: verified with the largest contact relation")
    return rep


def _suite_duality(doc: Document) -> Report:
    if doc.kind == "space-pair" and doc.structure != "stone2":
        # only Stone 2-spaces are objects of the duality; use the algebra the pair represents
        A = pair_algebra(doc.pair)[0].algebra
        rep = Report("duality")
        rep.notes.append(f"{doc.structure} document: duality verified on its algebra RC(X, X0)")
        algs = standard_algebras(2)
        if all(A != B for B in algs):
            algs.append(A)
        rep.add_section(verify_duality(algs))
        return rep
    if doc.kind == "space-pair":
        P = doc.pair
        rep = Report("duality")
        s2s = rep.add_section(check_s2s(P))
        if s2s.ok:
            t = natural_t(P)
            rep.add("t-isomorphism", is_homeomorphism(t.space_map) and t.space_map.image(P.x0) == t.target.x0)
            A = Dt_object(P)
        else:
            return rep
    else:
        A, rep = doc.algebra, None
    algs = standard_algebras(2)
    if all(A != B for B in algs):
        algs.append(A)
    sub = verify_duality(algs)
    if rep is None:
        return sub
    rep.add_section(sub)
    return rep


def _suite_extensions(doc: Document) -> Report:
    if doc.kind == "space-pair":
        names = doc.pair.space.names(doc.pair.x0)
    else:
        names = list(doc.algebra.atoms)
    poset = extension_poset(discrete(names))
    rep = verify_extension_poset(poset)
    rep.notes.append("elements: " + " ".join(relation_label(E.relation) for E in poset.records))
    return rep


SUITES = {
    "representation": _suite_representation,
    "duality": _suite_duality,
    "extensions": _suite_extensions,
}


def cmd_verify(args, out: TextIO) -> int:
    doc = _read(args.input)
    if doc.kind != "space-pair" and doc.algebra is not None:
        _degenerate(doc.algebra)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rep = Report("verify")
    for name in names:
        try:
            rep.add_section(SUITES[name](doc))
        except AxiomViolation as exc:
            rep.add_section(Report(name, [_failed(exc)]))
    return _emit_report(rep, out, args.timings)


def _failed(exc: AxiomViolation) -> Check:
    return Check(exc.axiom, False, exc.witness or None, str(exc))


def cmd_enumerate(args, out: TextIO) -> int:
    n = args.atoms
    if n < 0 or n > len(ATOM_NAMES):
        raise InputError(f"atom count must be between 0 and {len(ATOM_NAMES)}", "--atoms")
    A = Algebra(tuple(ATOM_NAMES[:n]))
    gen = enumerate_contact_relations(A) if args.kind == "contact" else enumerate_precontact_relations(A)
    for C in gen:
        out.write(json.dumps(algebra_doc(A, C), sort_keys=True, separators=(",", ":")) + "\n")
    return 0


def cmd_export(args, out: TextIO) -> int:
    doc = _read(args.input)
    if args.dot == "specialization":
        if doc.kind == "space-pair":
            P = doc.pair
        else:
            P, _, _ = _dualize_algebra(doc, "stone2" if doc.bare else "2pcs")
        out.write(specialization_dot(P))
    elif args.dot == "adjacency":
        if doc.kind == "space-pair":
            if doc.r is None:
                raise InputError("space-pair document has no relation", "r")
            X = doc.pair.space
            A = Algebra(tuple(X.names(doc.pair.x0)))
            rel = AtomRelation.from_pairs(A, [(X.points[x], X.points[y]) for x, y in doc.r])
        else:
            A = doc.algebra
            rel = canonical_adjacency(A, _relation(doc)).relation
        out.write(adjacency_dot(A, rel))
    else:
        names = doc.pair.space.names(doc.pair.x0) if doc.kind == "space-pair" else list(doc.algebra.atoms)
        poset = extension_poset(discrete(names))
        out.write(poset_dot([relation_label(E.relation) for E in poset.records], poset.hasse()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="contactlab",
                                     description="Precontact algebras, their canonical spaces and dualities.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="run an axiom suite on a document")
    p.add_argument("input", help="JSON document, or - for stdin")
    p.add_argument("--axioms", choices=sorted(AXIOM_SETS), default="precontact")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dualize", help="build the canonical space of an algebra (or algebra of a space)")
    p.add_argument("input")
    p.add_argument("--kind", choices=["2pcs", "2cs", "stone2"], default="2pcs")
    p.add_argument("--dot", metavar="FILE", help="also write the specialization order as DOT")
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("points", help="list ultrafilters, grills or clans")
    p.add_argument("input")
    p.add_argument("--kind", choices=["ultrafilters", "grills", "clans"], default="clans")
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("input")
    p.add_argument("--suite", choices=["representation", "duality", "extensions", "all"],
                   default="representation")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="stream every relation on n atoms as JSON lines")
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--kind", choices=["contact", "precontact"], default="contact")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("export", help="emit DOT text")
    p.add_argument("input")
    p.add_argument("--dot", choices=["specialization", "adjacency", "poset"], default="specialization")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    if out is None:
        out = sys.stdout
        try:
            out.reconfigure(newline="\n")
        except (AttributeError, ValueError):
            pass
    try:
        return args.func(args, out)
    except AxiomViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except WorkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
