"""Command-line front end.  Every command prints one JSON object.

Polynomials are given either as a JSON array of rational strings in
ascending degree (``'["-7", "0", "1"]'``) or in the small expression syntax
below.

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/")? factor)*      juxtaposition multiplies: 2x
    factor := ("+" | "-") factor | atom ("^" integer)?
    atom   := integer | "x" | "(" expr ")"

Division is only allowed by constants, so ``x/2`` and ``1/6`` are fine.

Chains are JSON objects

    {"p": 7, "base": {"a": "0", "gamma": "1/2"},
     "steps": [{"kind": "ordinary", "phi": "x^2-7", "gamma": "inf"}]}

where a limit step adds ``"family": {"theta": "-1/6"}`` or
``"family": {"theta": "sqrt", "of": "2", "root": 3}`` (digit stream of the
p-adic square root of ``of`` congruent to ``root`` mod p).  ``--chain``
accepts a file path or inline JSON.

Exit codes: 0 success, 2 parse error, 3 domain error, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .chain import compress, defect_ledger, graded_presentation, invariants, validate
from .exactnum import INF, RationalPoly, X
from .extend import extensions
from .keypoly import is_key, residual
from .limitfam import EssentialWith, Inessential, classify, digit_stream_family, hensel_digits
from .valuation import AugStep, InductiveValuation

EXIT_PARSE, EXIT_DOMAIN, EXIT_INTERNAL = 2, 3, 4


class ParseError(ValueError):
    pass


# -- polynomials ------------------------------------------------------------------


class _PolyParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def parse(self) -> RationalPoly:
        out = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return out

    def expr(self) -> RationalPoly:
        out = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> RationalPoly:
        out = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.take()
                out = out * self.factor()
            elif ch == "/":
                self.take()
                d = self.factor()
                if d.degree != 0:
                    self.error("division by a non-constant")
                out = out / d.coeffs[0]
            elif ch and (ch.isdigit() or ch in "x("):
                out = out * self.factor()
            else:
                return out

    def factor(self) -> RationalPoly:
        ch = self.peek()
        if ch in ("+", "-"):
            self.take()
            f = self.factor()
            return -f if ch == "-" else f
        base = self.atom()
        if self.peek() == "^":
            self.take()
            base = base ** self.integer()
        return base

    def atom(self) -> RationalPoly:
        ch = self.peek()
        if ch.isdigit():
            return RationalPoly.const(self.integer())
        if ch == "x":
            self.take()
            return X
        if ch == "(":
            self.take()
            out = self.expr()
            if self.take() != ")":
                self.error("expected ')'")
            return out
        self.error("expected a number, x or '('" if ch else "unexpected end of input")


def parse_rational(text) -> Fraction:
    try:
        if isinstance(text, bool) or not isinstance(text, (str, int)):
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational: {text!r}") from None


def parse_value(text):
    if isinstance(text, str) and text.strip().lower() in ("inf", "oo", "infinity"):
        return INF
    return parse_rational(text)


def parse_poly(obj) -> RationalPoly:
    """A coefficient list, a JSON string holding one, or the expression syntax."""
    if isinstance(obj, str):
        s = obj.strip()
        if s.startswith("["):
            try:
                obj = json.loads(s)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON polynomial: {exc}") from None
        else:
            return _PolyParser(s).parse()
    if isinstance(obj, list):
        return RationalPoly([parse_rational(c) for c in obj])
    raise ParseError(f"not a polynomial: {obj!r}")


def poly_to_json(f: RationalPoly) -> list:
    return [str(c) for c in f.coeffs]


def poly_text(f: RationalPoly) -> str:
    return str(f).replace(" ", "")


def value_to_json(v) -> str:
    return "inf" if v is INF else str(v)


# -- chains -----------------------------------------------------------------------


def family_from_spec(p: int, spec: dict, base: InductiveValuation, where: str = "family"):
    if not isinstance(spec, dict) or "theta" not in spec:
        raise ParseError(f"{where}: expected an object with a 'theta' entry")
    budget = spec.get("budget", 60)
    theta = spec["theta"]
    if theta == "sqrt":
        D = parse_rational(spec.get("of", ""))
        f = X**2 - D
        root = spec.get("root")
        if root is None:
            roots = [r for r in range(p) if f(Fraction(r)).numerator % p == 0]
            if not roots:
                raise ValueError(f"{D} has no square root mod {p}")
            root = roots[0]
        clean = {"theta": "sqrt", "of": str(D), "root": int(root)}
        return digit_stream_family(
            p, digits=hensel_digits(f, p, int(root)), base=base, budget=budget,
            key=("sqrt", p, str(D), int(root)), spec=clean,
        )
    return digit_stream_family(p, theta=parse_rational(theta), base=base, budget=budget)


def chain_from_json(obj) -> InductiveValuation:
    if not isinstance(obj, dict):
        raise ParseError("chain: expected a JSON object")
    try:
        p = obj["p"]
        base = obj.get("base", {"a": "0", "gamma": "0"})
        a = parse_rational(base.get("a", "0"))
        gamma = parse_value(base.get("gamma", "0"))
        steps = obj.get("steps", [])
    except (KeyError, AttributeError) as exc:
        raise ParseError(f"chain: missing or malformed entry {exc}") from None
    if not isinstance(p, int) or isinstance(p, bool):
        raise ParseError("chain.p: expected an integer")
    mu = InductiveValuation(p, a, gamma)
    for i, st in enumerate(steps):
        where = f"chain.steps[{i}]"
        if not isinstance(st, dict):
            raise ParseError(f"{where}: expected an object")
        kind = st.get("kind", "ordinary")
        try:
            phi = parse_poly(st["phi"])
            g = parse_value(st["gamma"])
        except KeyError as exc:
            raise ParseError(f"{where}: missing {exc}") from None
        except ParseError as exc:
            raise ParseError(f"{where}: {exc}") from None
        if kind == "ordinary":
            mu = InductiveValuation(p, a, gamma, mu.steps + (AugStep(phi, g),))
        elif kind == "limit":
            fam = family_from_spec(p, st.get("family"), mu, f"{where}.family")
            mu = InductiveValuation(p, a, gamma, mu.steps + (AugStep(phi, g, fam),))
        else:
            raise ParseError(f"{where}.kind: unknown kind {kind!r}")
    return mu


def chain_to_json(mu: InductiveValuation) -> dict:
    steps = []
    for st in mu.steps:
        item = {"kind": st.kind, "phi": poly_to_json(st.phi), "gamma": value_to_json(st.gamma)}
        if st.is_limit:
            if st.family.spec is None:
                raise ValueError("family has no serializable description")
            item["family"] = dict(st.family.spec)
        steps.append(item)
    return {
        "p": mu.p,
        "base": {"a": str(mu.zero.a), "gamma": value_to_json(mu.zero.gamma)},
        "steps": steps,
    }


def _load_json(text: str):
    if not text.lstrip().startswith(("{", "[")) and os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from None


def _load_poly(text: str) -> RationalPoly:
    if not text.lstrip().startswith("[") and os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    return parse_poly(text)


# -- commands ---------------------------------------------------------------------


def cmd_eval(args) -> dict:
    mu = chain_from_json(_load_json(args.chain))
    return {"value": value_to_json(mu.eval(_load_poly(args.poly)))}


def cmd_extend(args) -> dict:
    F = _load_poly(args.poly)
    rep = extensions(F, args.p, seed=args.seed)
    leaves = [
        {
            "e": l.e,
            "f": l.f,
            "slopes": [str(s) for s in l.slopes],
            "approximant": chain_to_json(l.approximant),
            "psi": str(l.psi),
        }
        for l in rep.leaves
    ]
    return {"poly": poly_to_json(F), "p": args.p, "leaves": leaves, "sum_ef": rep.sum_ef}


def _invariants_json(chain) -> dict:
    out = invariants(chain).as_dict()
    if chain.valuation.last_gamma is INF:
        e, f, d = defect_ledger(chain)
        out["defect_ledger"] = {"e": e, "f": f, "d": str(d)}
    else:
        out["defect_ledger"] = None
    return out


def cmd_chain_invariants(args) -> dict:
    mu = chain_from_json(_load_json(args.chain))
    chain = compress(mu) if args.compress else validate(mu)
    return _invariants_json(chain)


def cmd_graded(args) -> dict:
    mu = chain_from_json(_load_json(args.chain))
    chain = compress(mu) if args.compress else validate(mu)
    return graded_presentation(chain).as_dict()


def cmd_is_key(args) -> dict:
    mu = chain_from_json(_load_json(args.chain))
    return {"is_key": is_key(mu, _load_poly(args.poly), seed=args.seed)}


def cmd_residual(args) -> dict:
    mu = chain_from_json(_load_json(args.chain))
    r = residual(mu, _load_poly(args.poly), seed=args.seed)
    return {
        "value": value_to_json(r.value),
        "s0": r.s0,
        "R": str(r.R),
        "leading_unit": str(r.leading_unit),
        "field": str(r.field),
    }


def cmd_limit_demo(args) -> dict:
    spec = _load_json(args.spec) if args.spec else {}
    p = spec.get("p", args.p)
    if args.theta is not None:
        spec["theta"] = args.theta
    if args.of is not None:
        spec["of"] = args.of
    if args.root is not None:
        spec["root"] = args.root
    spec.pop("p", None)
    base = InductiveValuation(p)
    fam = family_from_spec(p, spec, base)
    if spec["theta"] == "sqrt":
        D = Fraction(fam.spec["of"])
        phi = X**2 - D
        candidates = [fam.term(1)[0], phi]
    else:
        theta = Fraction(spec["theta"])
        candidates = [X - theta]
    verdict = classify(fam, candidates)
    out = {"p": p, "family": fam.spec, "classification": verdict.kind}
    if isinstance(verdict, Inessential):
        out["witness"] = poly_text(verdict.witness)
    elif isinstance(verdict, EssentialWith):
        chain = validate(base.limit_augment(fam, verdict.phi, INF))
        out["limit_key"] = poly_text(verdict.phi)
        out["chain"] = chain_to_json(chain.valuation)
        out["invariants"] = _invariants_json(chain)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mlvchain",
        description="Inductive valuations over Q with ord_p.",
        epilog=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized factorization (default 0)")
    sub = ap.add_subparsers(dest="command", required=True)

    def chain_cmd(name, fn, needs_poly=False, help=None):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--chain", required=True, help="chain JSON file or inline JSON")
        if needs_poly:
            sp.add_argument("--poly", required=True, help="polynomial (JSON array or expression)")
        sp.set_defaults(func=fn)
        return sp

    chain_cmd("eval", cmd_eval, True, "value of a polynomial")
    chain_cmd("is-key", cmd_is_key, True, "key polynomial test")
    chain_cmd("residual", cmd_residual, True, "initial term data")
    for name, fn in (("chain-invariants", cmd_chain_invariants), ("graded", cmd_graded)):
        sp = chain_cmd(name, fn, help=name.replace("-", " "))
        sp.add_argument("--compress", action="store_true", help="compress the chain before validating")

    sp = sub.add_parser("extend", help="all extensions of ord_p to Q[x]/(F)")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("limit-demo", help="classify a digit-stream family")
    sp.add_argument("--spec", help='JSON such as {"p": 7, "theta": "sqrt", "of": "2"}')
    sp.add_argument("--p", type=int, default=7)
    sp.add_argument("--theta")
    sp.add_argument("--of")
    sp.add_argument("--root", type=int)
    sp.set_defaults(func=cmd_limit_demo)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else 0
    try:
        out = args.func(args)
    except ParseError as exc:
        print(json.dumps({"error": "ParseError", "message": str(exc)}), file=sys.stderr)
        return EXIT_PARSE
    except AssertionError as exc:
        print(json.dumps({"error": "InternalError", "message": str(exc)}), file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, ArithmeticError, KeyError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_DOMAIN
    print(json.dumps(out))
    return 0


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
