"""Command line entry point: every construction and check, with JSON certificates.

Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 a budget ran out.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from pathlib import Path

from . import __version__
from .logic.enumerate import ORDER_VERSION

OK, FAILED, BAD_INPUT, EXHAUSTED = 0, 1, 2, 3


class Certificate:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.outputs: dict = {}
        self.records: list[dict] = []

    def check(self, claim: str, result: bool, method: str = "exact") -> bool:
        self.records.append({"claim": claim, "method": method, "result": bool(result)})
        return bool(result)

    @property
    def ok(self) -> bool:
        return all(r["result"] for r in self.records)

    def to_json(self) -> dict:
        canon = json.dumps(self.inputs, sort_keys=True, default=str)
        return {
            "command": self.command,
            "inputs": {"hash": hashlib.sha256(canon.encode()).hexdigest(), "inline": self.inputs},
            "outputs": self.outputs,
            "verification": self.records,
            "tool_version": __version__,
            "order_version": ORDER_VERSION,
        }


def _ints(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValueError(f"expected comma separated naturals, got {text!r}") from None


def _sentence(text: str):
    from .logic.parser import parse
    from .logic.syntax import is_sentence

    f = parse(text)
    if not is_sentence(f):
        raise ValueError(f"{text!r} has free variables")
    return f


def _rels(text: str) -> tuple[tuple[str, int], ...]:
    out = []
    for part in text.split(","):
        name, _, arity = part.partition(":")
        out.append((name.strip(), int(arity or 2)))
    return tuple(out)


def _theory(name: str):
    from .logic.registry import base_by_name, base_theory

    return base_theory(base_by_name(name))


def _subject(path: str | None):
    from .janiczak.jx import jtheory_from_json
    from .logic.registry import default_subject

    if path is None:
        return default_subject()
    return jtheory_from_json(json.loads(Path(path).read_text()))


def _program_index(args) -> int:
    from .recfun.machine import encode, parse_program, program_from_json

    if args.index is not None:
        return args.index
    if args.program is None:
        raise ValueError("give --index or --program")
    text = Path(args.program).read_text() if Path(args.program).exists() else args.program
    if text.lstrip().startswith("{"):
        return encode(program_from_json(json.loads(text)))
    return encode(parse_program(text))


# -- recfun ------------------------------------------------------------------------


def cmd_recfun(args, cert: Certificate):
    from .recfun.core import fixed_point
    from .recfun.machine import Halted, decode, run_index, smn

    if args.action == "run":
        i = _program_index(args)
        out = run_index(i, _ints(args.args), args.fuel)
        cert.outputs = {"index": str(i), "program": decode(i).to_text(),
                        "result": out.value if isinstance(out, Halted) else "out_of_fuel"}
        return OK if isinstance(out, Halted) else EXHAUSTED
    if args.action == "smn":
        i = _program_index(args)
        fixed = _ints(args.fixed)
        j = smn(i, fixed)
        cert.outputs = {"index": str(j), "program": decode(j).to_text()}
        rng = random.Random(args.seed)
        rest = max(decode(i).arity - len(fixed), 0)
        for _ in range(args.samples):
            ys = [rng.randrange(10) for _ in range(rest)]
            a, b = run_index(j, ys, args.fuel), run_index(i, fixed + ys, args.fuel)
            cert.check(f"phi_smn(i,{fixed})({ys}) = phi_i({fixed + ys})", a == b, f"to_budget({args.fuel})")
        return OK if cert.ok else FAILED
    # fix
    t = args.index if args.index is not None else _program_index(args)
    n = fixed_point(t, args.arity)
    cert.outputs = {"fixed_point": str(n)}
    out = run_index(t, [n], args.fuel)
    if not isinstance(out, Halted):
        cert.check("transform halts on the fixed point", False, f"to_budget({args.fuel})")
        return EXHAUSTED
    for x in range(args.samples):
        xs = [x] * args.arity
        a, b = run_index(n, xs, args.fuel), run_index(out.value, xs, args.fuel)
        cert.check(f"phi_n({xs}) = phi_t(n)({xs})", a == b, f"to_budget({args.fuel})")
    return OK if cert.ok else FAILED


# -- pairs -------------------------------------------------------------------------


def cmd_pairs(args, cert: Certificate):
    from .inseparable import check_witness, ei_witness, k_pair
    from .recfun.core import ReSet, decidable_set
    from .recfun.machine import OutOfFuel

    pair = k_pair()
    if args.action == "k":
        cert.outputs = pair.to_json()
        left, right = pair.stages(args.budget)
        cert.outputs["stage"] = {"budget": args.budget, "left": sorted(left), "right": sorted(right)}
        cert.check(f"stages disjoint at budget {args.budget}", not (left & right), f"to_budget({args.budget})")
        return OK if cert.ok else FAILED
    if args.left_char is not None and args.right_char is not None:
        wi, wj = decidable_set(args.left_char, "W_i"), decidable_set(args.right_char, "W_j")
    elif args.i is not None and args.j is not None:
        wi, wj = ReSet(args.i, name="W_i"), ReSet(args.j, name="W_j")
    else:
        raise ValueError("give --i/--j or --left-char/--right-char")
    n = ei_witness(pair, wi.index, wj.index, args.fuel)
    if isinstance(n, OutOfFuel):
        cert.outputs = {"witness": "out_of_fuel"}
        return EXHAUSTED
    res = check_witness(pair, wi, wj, n, args.budget)
    cert.outputs = res.to_json()
    cert.check("witness outside W_i and W_j, or a precondition violation exhibited", res.ok, res.verification)
    return OK if cert.ok else FAILED


# -- logic ---------------------------------------------------------------------------


def _translation(args):
    from .logic.enumerate import translations
    from .logic.parser import parse
    from .logic.translate import Clause, Translation

    if args.translation:
        data = json.loads(Path(args.translation).read_text() if Path(args.translation).exists() else args.translation)

        def clause(d):
            return Clause(tuple(d["params"]), parse(d["formula"]))

        eq = data.get("equality")
        return Translation(clause(data["domain"]), tuple((k, clause(v)) for k, v in sorted(data["relations"].items())),
                           clause(eq) if eq else None)
    return translations(_rels(args.source), _rels(args.target))[args.translation_index]


def cmd_logic(args, cert: Certificate):
    from .logic.godel import godel
    from .logic.parser import to_text
    from .logic.syntax import relations
    from .logic.theory import theorems
    from .logic.translate import apply_translation

    if args.action == "parse":
        f = _sentence(args.sentence)
        cert.outputs = {"text": to_text(f), "code": str(godel(f)), "relations": sorted(relations(f))}
        cert.check("canonical text parses back to the same sentence", _sentence(to_text(f)) == f)
        return OK if cert.ok else FAILED
    if args.action == "translate":
        f = _sentence(args.sentence)
        tr = _translation(args)
        cert.outputs = {"translation": tr.to_json(), "result": to_text(apply_translation(f, tr))}
        return OK
    if args.action == "oplus":
        t = _theory(args.theory)
        d = t.decide(_sentence(args.sentence), [_sentence(c) for c in args.context or ()], args.budget)
        cert.outputs = {"theory": t.name if hasattr(t, "name") else args.theory, **d.to_json()}
        return OK
    t = _theory(args.theory)
    codes = theorems(t, args.budget)
    from .logic.godel import ungodel

    cert.outputs = {"budget": args.budget, "theorems": [to_text(ungodel(c)) for c in codes]}
    return OK


# -- janiczak -----------------------------------------------------------------------


def cmd_janiczak(args, cert: Certificate):
    from .janiczak.decide import decide, iff_sentence, normal_form
    from .janiczak.profiles import profiles
    from .logic.parser import to_text

    if args.action == "decide":
        d = decide([_sentence(c) for c in args.context or ()], _sentence(args.sentence))
        cert.outputs = d.to_json()
        return OK
    if args.action == "nf":
        f = _sentence(args.sentence)
        nf = normal_form(f)
        cert.outputs = {"normal_form": nf.to_json(), "text": to_text(nf.to_formula("E", expand=False))}
        ok = decide([], iff_sentence(f, nf)).provable
        cert.check("J proves s <-> normal_form(s)", ok, "decider")
        return OK if cert.ok else FAILED
    cert.outputs = {"n": args.n, "profiles": [p.to_json() for p in profiles(args.n)]}
    return OK


# -- construct ---------------------------------------------------------------------


def cmd_construct(args, cert: Certificate):
    return {"build-x": _build_x, "build-v": _build_v, "weaker": _weaker, "witness-oplus": _witness_oplus,
            "eet-tei": _eet_tei}[args.action](args, cert)


def _build_x(args, cert):
    from .construct.xset import build_x, evidence_bundle

    xb = build_x(_subject(args.subject), args.depth)
    cert.outputs = xb.to_json()
    F = xb.F
    cert.check("F(0) = 0", F[0] == 0)
    cert.check("F(k+1) >= F(k) + 2 on the prefix", all(b >= a + 2 for a, b in zip(F, F[1:])))
    if args.depth >= 1 and args.samples:
        ev = evidence_bundle(xb, args.samples, args.seed)
        cert.outputs["evidence_bundle"] = [e.to_json() for e in ev]
        for e in ev:
            cert.check(f"claims replay for translation {e.i} on {e.theory.name}", e.ok, "decider")
    return OK if cert.ok else FAILED


def _sample_decidable(rng):
    from .recfun.core import decidable_set, residue_char

    m = rng.randint(2, 5)
    r1, r2 = rng.sample(range(m), 2)
    return decidable_set(residue_char(m, r1)), decidable_set(residue_char(m, r2))


def _build_v(args, cert):
    from .construct.vtheory import build_V, check_v_witness, extended_F, extended_F_inverse, sampled_consistency
    from .construct.xset import build_x

    xb = build_x(_subject(args.subject), args.depth)
    prefix = tuple(xb.F)
    vb = build_V(extended_F(prefix), extended_F_inverse(prefix))
    rng = random.Random(args.seed)
    cert.outputs = {"F_prefix": list(prefix), "v": vb.to_json()}
    y, z = vb.members()
    cert.check("F(c0) in Y", vb.pair.left.semi_contains(y, 10**4), "to_budget(10000)")
    cert.check("F(c1) in Z", vb.pair.right.semi_contains(z, 10**4), "to_budget(10000)")
    cert.check("sampled finite axiom sets of V consistent", all(sampled_consistency(vb, rng)), "decider")
    checks = []
    for _ in range(args.samples):
        d1, d2 = _sample_decidable(rng)
        res = check_v_witness(vb, d1, d2)
        checks.append({"left_char": str(d1.char), "right_char": str(d2.char), **res.to_json()})
        cert.check("V witness outside candidate supersets or violation exhibited", res.ok, res.verification)
    cert.outputs["witness_checks"] = checks
    return OK if cert.ok else FAILED


def _weaker(args, cert):
    from .construct.vtheory import marker_lift, sampled_u_theorems, weaker_theory
    from .logic.parser import to_text

    u = _subject(args.subject)
    w = weaker_theory(u, args.depth, args.samples, args.seed)
    cert.outputs = w.to_json()
    sig = {n for n, _ in w.theory.relations}
    cert.check("signature is U's plus E' plus P", sig == {n for n, _ in u.relations} | {"E'", "P"})
    for phi in sampled_u_theorems(u, 5, seed=args.seed):
        cert.check(f"T proves P -> {to_text(phi)}", marker_lift(w.theory, phi), "decider")
    for n in range(args.reduction_range):
        side = "left" if n % 2 == 0 else "right"
        cert.check(f"semi-reduction sends {n} to the {side} nucleus", w.ei.check(n, side), "decider")
    for e in w.evidence:
        cert.check(f"claims replay for translation {e.i} on {e.theory.name}", e.ok, "decider")
    return OK if cert.ok else FAILED


def _witness_oplus(args, cert):
    from .construct.tei import expected_case, fresh_atom_witness, nucleus_sets, tei_witness_oplus
    from .logic.registry import base_by_name

    base = base_by_name(args.theory)
    ctx = _sentence(args.context) if args.context else None
    x, y = nucleus_sets(base, ctx)
    w1, w2 = fresh_atom_witness(0, args.delay1), fresh_atom_witness(1, args.delay2)
    out = tei_witness_oplus(x.index, y.index, w1, w2, args.max_stage)
    case, stage = expected_case(x.index, y.index, w1, w2, args.max_stage)
    cert.outputs = out.to_json()
    cert.check("selected case matches the halting-time oracle", (case, stage) == (out.case, out.stage))
    cert.check("output not in X", not x.contains(out.value))
    cert.check("output not in Y", not y.contains(out.value))
    return OK if cert.ok else FAILED


def _eet_tei(args, cert):
    from .construct.tei import eet_from_tei, fresh_atom_witness, nucleus_sets, tei_from_eet
    from .logic.godel import ungodel
    from .logic.parser import to_text
    from .logic.registry import base_by_name, base_theory
    from .logic.syntax import Not
    from .recfun.machine import Halted, run_index

    base = base_by_name(args.theory)
    t = base_theory(base)
    ctx = _sentence(args.context) if args.context else None
    x, y = nucleus_sets(base, ctx)
    f = fresh_atom_witness(0)
    g = eet_from_tei(f)
    h = tei_from_eet(g, base)
    cert.outputs = {"tei_witness": str(f), "eet_from_tei": str(g), "tei_from_eet": str(h)}
    out = run_index(g, [x.index], args.fuel)
    if not isinstance(out, Halted):
        return EXHAUSTED
    s = ungodel(out.value)
    context = [ctx] if ctx is not None else []
    cert.outputs["independent_sentence"] = None if s is None else to_text(s)
    cert.check("S does not prove g(i)", s is not None and not t.proves(s, context), "decider")
    cert.check("S does not refute g(i)", s is not None and not t.proves(Not(s), context), "decider")
    out = run_index(h, [x.index, y.index], args.fuel)
    if not isinstance(out, Halted):
        return EXHAUSTED
    cert.check("round trip output outside X and Y", not x.contains(out.value) and not y.contains(out.value))
    return OK if cert.ok else FAILED


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="insep", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the certificate here instead of stdout")
    top = p.add_subparsers(dest="group", required=True)
    # the global flags are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)

    rf = top.add_parser("recfun").add_subparsers(dest="action", required=True)
    for name in ("run", "smn", "fix"):
        s = rf.add_parser(name, parents=[common])
        s.add_argument("--index", type=int)
        s.add_argument("--program", help="program text, JSON, or a file holding either")
        s.add_argument("--fuel", type=int, default=10**5)
        if name == "run":
            s.add_argument("--args", default="")
        if name == "smn":
            s.add_argument("--fixed", default="")
            s.add_argument("--samples", type=int, default=10)
        if name == "fix":
            s.add_argument("--arity", type=int, default=1)
            s.add_argument("--samples", type=int, default=5)

    pr = top.add_parser("pairs").add_subparsers(dest="action", required=True)
    s = pr.add_parser("k", parents=[common])
    s.add_argument("--budget", type=int, default=1000)
    s = pr.add_parser("witness", parents=[common])
    for flag in ("--i", "--j", "--left-char", "--right-char"):
        s.add_argument(flag, type=int)
    s.add_argument("--fuel", type=int, default=10**6)
    s.add_argument("--budget", type=int, default=10**4)

    lg = top.add_parser("logic").add_subparsers(dest="action", required=True)
    lg.add_parser("parse", parents=[common]).add_argument("--sentence", required=True)
    s = lg.add_parser("translate", parents=[common])
    s.add_argument("--sentence", required=True)
    s.add_argument("--translation", help="translation JSON or a file holding it")
    s.add_argument("--translation-index", type=int, default=0)
    s.add_argument("--source", default="E:2")
    s.add_argument("--target", default="E:2")
    s = lg.add_parser("oplus", parents=[common])
    s.add_argument("--sentence", required=True)
    s.add_argument("--context", action="append")
    s.add_argument("--theory", default="U(+)V0")
    s.add_argument("--budget", type=int)
    s = lg.add_parser("theorems", parents=[common])
    s.add_argument("--theory", default="U")
    s.add_argument("--budget", type=int, default=100)

    jn = top.add_parser("janiczak").add_subparsers(dest="action", required=True)
    s = jn.add_parser("decide", parents=[common])
    s.add_argument("--sentence", required=True)
    s.add_argument("--context", action="append")
    jn.add_parser("nf", parents=[common]).add_argument("--sentence", required=True)
    jn.add_parser("profiles", parents=[common]).add_argument("--n", type=int, required=True)

    cs = top.add_parser("construct").add_subparsers(dest="action", required=True)
    for name in ("build-x", "build-v", "weaker"):
        s = cs.add_parser(name, parents=[common])
        s.add_argument("--depth", type=int, default=2)
        s.add_argument("--subject", help="J,X-theory JSON file (default: the mod-4 subject)")
        s.add_argument("--samples", type=int, default=3)
        if name == "weaker":
            s.add_argument("--reduction-range", type=int, default=31)
    for name in ("witness-oplus", "eet-tei"):
        s = cs.add_parser(name, parents=[common])
        s.add_argument("--context", help="extra axiom of the extension S")
        s.add_argument("--theory", default="U(+)V0" if name == "witness-oplus" else "U")
        s.add_argument("--fuel", type=int, default=10**6)
        if name == "witness-oplus":
            s.add_argument("--delay1", type=int, default=0)
            s.add_argument("--delay2", type=int, default=0)
            s.add_argument("--max-stage", type=int, default=1 << 12)
    return p


HANDLERS = {"recfun": cmd_recfun, "pairs": cmd_pairs, "logic": cmd_logic, "janiczak": cmd_janiczak,
            "construct": cmd_construct}


def main(argv: list[str] | None = None) -> int:
    from .construct.tei import RaceExhausted
    from .inseparable import InputError
    from .janiczak.jx import NotDecidable
    from .janiczak.profiles import ResourceError
    from .logic.oplus import UndecidableByHook
    from .logic.parser import ParseError

    args = build_parser().parse_args(argv)
    inputs = {k: v for k, v in sorted(vars(args).items()) if k != "out"}
    cert = Certificate(f"{args.group} {args.action}", inputs)
    try:
        code = HANDLERS[args.group](args, cert)
    except (ParseError, InputError, KeyError, ValueError, OSError, UndecidableByHook, NotDecidable) as e:
        print(f"insep: {e}", file=sys.stderr)
        return BAD_INPUT
    except (ResourceError, RaceExhausted, RuntimeError) as e:
        # RuntimeError here means some program did not halt within its budget
        cert.outputs = {"error": str(e)}
        code = EXHAUSTED
    text = json.dumps(cert.to_json(), sort_keys=True, indent=2, default=str)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
