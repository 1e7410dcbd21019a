"""Batch front end: census tables, orbit reports, ad-hoc element
arithmetic, zeta evaluation, and the verification suites.

Output is JSON (sorted keys; byte-identical for identical config and
seed) or TSV for human tables.  Timings are included only with
--timings, keeping the default output deterministic.  Exit codes:
0 success, 1 configuration error, 2 failed identity or suite.

Element grammar for `elem` (whitespace ignored):

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := INT | 't' INT? | 'n' | 'p' | '(' expr ')'

where `n` is the uniformizer nu (nu^ell = p), `p` is the central
uniformizer pi, `t` the fixed Teichmueller generator of the coefficient
field (tK = t^K), and integer literals are prime-field scalars.
Multiplication is the skew product, evaluated left to right.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import algebra as alg
from . import construction as cons
from . import orbits as orb
from . import verify as ver
from . import zeta
from .errors import SL1DError, ConfigError
from .gf import FieldTower


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            f = 0
            while q % p == 0:
                q //= p
                f += 1
            if q != 1:
                raise ConfigError("q must be a prime power")
            return p, f
    raise ConfigError("q must be a prime power >= 3")


def _tower_from(cfg) -> FieldTower:
    if cfg.get("p"):
        p, f = cfg["p"], cfg.get("f", 1)
    elif cfg.get("q"):
        p, f = _factor_prime_power(cfg["q"])
    else:
        raise ConfigError("pass --q or --p/--f")
    if not cfg.get("ell"):
        raise ConfigError("--ell is required")
    return FieldTower(
        p, f, cfg["ell"],
        modulus_q=cfg.get("modulus_q"),
        modulus_qell=cfg.get("modulus_qell"),
    )


def _merge_config(args) -> dict:
    cfg = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            cfg.update(json.load(fh))
    for key in ("q", "p", "f", "ell", "seed", "jobs", "max_group_order",
                "max_orbit_cosets"):
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    for key in ("modulus_q", "modulus_qell"):
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = [int(x) for x in v.split(",")]
    cfg.setdefault("seed", 0)
    cfg.setdefault("jobs", 1)
    cfg.setdefault("max_group_order", cons.DEFAULT_GROUP_GUARD)
    cfg.setdefault("max_orbit_cosets", orb.DEFAULT_COSET_GUARD)
    return cfg


def _emit(obj, fmt, rows_key=None):
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True, default=str))
        return
    rows = obj[rows_key] if rows_key else [obj]
    if not rows:
        return
    cols = list(rows[0].keys())
    print("\t".join(cols))
    for r in rows:
        print("\t".join(str(r[c]) for c in cols))


# -- element expression parser ---------------------------------------------------


class _ElemParser:
    def __init__(self, tower, prec, text):
        self.tw = tower
        self.prec = prec
        self.toks = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text):
        toks = []
        i = 0
        while i < len(text):
            c = text[i]
            if c.isspace():
                i += 1
            elif c.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(("int", int(text[i:j])))
                i = j
            elif c == "t":
                j = i + 1
                while j < len(text) and text[j].isdigit():
                    j += 1
                k = int(text[i + 1:j]) if j > i + 1 else 1
                toks.append(("teich", k))
                i = j
            elif c in "np":
                toks.append((c, None))
                i += 1
            elif c in "+-*^()":
                toks.append((c, None))
                i += 1
            else:
                raise ConfigError(f"unexpected character {c!r} in element")
        return toks

    def _peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def _next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def parse(self):
        v = self.expr()
        if self.pos != len(self.toks):
            raise ConfigError("trailing tokens in element expression")
        return v.truncate(self.prec)

    def expr(self):
        v = self.term()
        while self._peek() in ("+", "-"):
            op, _ = self._next()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self._peek() == "*":
            self._next()
            v = v * self.factor()
        return v

    def factor(self):
        v = self.atom()
        if self._peek() == "^":
            self._next()
            kind, e = self._next()
            if kind != "int":
                raise ConfigError("exponent must be an integer")
            v = v**e
        return v

    def atom(self):
        kind, val = self._next()
        if kind == "int":
            return alg.scalar(self.tw, val)
        if kind == "teich":
            return alg.teich(self.tw, self.tw.pow(self.tw.generator, val))
        if kind == "n":
            return alg.nu(self.tw)
        if kind == "p":
            return alg.pi(self.tw)
        if kind == "(":
            v = self.expr()
            kind, _ = self._next()
            if kind != ")":
                raise ConfigError("unbalanced parentheses")
            return v
        raise ConfigError(f"unexpected token {kind!r}")


def parse_element(tower, prec, text) -> alg.DElem:
    return _ElemParser(tower, prec, text).parse()


# -- commands ---------------------------------------------------------------------


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _census_params(cfg):
    if not cfg.get("q") and not cfg.get("p"):
        raise ConfigError("pass --q or --p/--f")
    q = cfg.get("q") or cfg["p"] ** cfg.get("f", 1)
    p, f = _factor_prime_power(q)
    ell = cfg.get("ell")
    if ell is None:
        raise ConfigError("--ell is required")
    if p == 2 or not _is_prime(p):
        raise ConfigError("p must be an odd prime")
    if not _is_prime(ell) or ell == p:
        raise ConfigError("ell must be a prime different from p")
    return q, p, f, ell


def cmd_census(args):
    cfg = _merge_config(args)
    q, p, f, ell = _census_params(cfg)
    rows = zeta.census_rows(q, ell, args.max_level)
    ok = all(r["check"] for r in rows)
    if args.cross_validate:
        tower = _tower_from(cfg)
        for m in range(args.max_level + 1):
            if zeta.group_order(q, ell, m + 1) > cfg["max_group_order"]:
                break
            G = cons.build_quotient_group(tower, m + 1,
                                          cfg["max_group_order"])
            cons.census(q, ell, m, cross_validate=G)
            rows[m]["class_count"] = G.class_count()
    _emit({"q": q, "ell": ell, "rows": rows, "ok": ok}, args.format, "rows")
    return 0 if ok else 2


def cmd_orbits(args):
    cfg = _merge_config(args)
    tower = _tower_from(cfg)
    m = args.m
    guard = cfg["max_orbit_cosets"]
    reports = []
    if args.y:
        ys = [parse_element(tower, m + 2, args.y)]
    else:
        ys = []
        for t0 in range(tower.Q):
            for t1 in range(tower.Q):
                y = alg.DElem(tower, 3, 0, (t0, t1))
                try:
                    alg.jump(y)
                except SL1DError:
                    continue
                ys.append(y)
    for y in ys:
        j = alg.jump(y)
        if j >= m:
            continue
        rep = orb.orbit_size_G(y, m)
        row = {
            "y": repr(y),
            "m": m,
            "jump": j,
            "kind": alg.classify(y).value,
            "units_orbit": orb.orbit_size_Ounits(y, m),
            "G_orbit": rep.formula_size,
            "splitting": rep.splitting_count,
        }
        if tower.Q**m <= guard and args.bruteforce:
            bf_u = len(orb.brute_force_orbit(y, m, "Ounits", guard))
            bf_g = len(orb.brute_force_orbit(y, m, "G", guard))
            row["units_orbit_bruteforce"] = bf_u
            row["G_orbit_bruteforce"] = bf_g
            row["match"] = (bf_u == row["units_orbit"]
                            and bf_g == row["G_orbit"])
        reports.append(row)
    ok = all(r.get("match", True) for r in reports)
    _emit({"rows": reports, "ok": ok}, args.format, "rows")
    return 0 if ok else 2


def cmd_elem(args):
    cfg = _merge_config(args)
    tower = _tower_from(cfg)
    x = parse_element(tower, args.prec, args.expr)
    out = {
        "expr": args.expr,
        "prec": args.prec,
        "canonical": repr(x),
        "serialized": x.to_dict(),
        "val": str(x.val()),
    }
    try:
        out["jump"] = str(alg.jump(x))
        out["class"] = alg.classify(x).value
    except SL1DError as exc:
        out["jump"] = f"undetermined ({exc})"
    if args.op == "trd":
        out["trd"] = repr(alg.trd(x))
    elif args.op == "nrd":
        out["nrd"] = repr(alg.nrd(x))
    elif args.op == "inv":
        out["inv"] = repr(alg.inv(x))
    elif args.op == "all":
        out["trd"] = repr(alg.trd(x))
        if x.nu_val() == 0:
            out["nrd"] = repr(alg.nrd(x))
            out["inv"] = repr(alg.inv(x))
    _emit(out, args.format)
    return 0


def cmd_zeta(args):
    cfg = _merge_config(args)
    q, p, f, ell = _census_params(cfg)
    raw = args.s
    if "," in raw:
        re_s, im_s = raw.split(",")
        s = complex(float(re_s), float(im_s))
    else:
        fr = Fraction(raw)
        s = int(fr) if fr.denominator == 1 else float(fr)
    if args.exact and not isinstance(s, int):
        raise ConfigError(
            "exact evaluation is available at integer s only")
    cf = zeta.zeta_closed_form(q, ell, s)
    ps = zeta.zeta_partial_sum(q, ell, s, args.terms)
    out = {
        "q": q,
        "ell": ell,
        "s": str(s),
        "pole": str(cf.pole),
        "at_pole": cf.at_pole,
        "partial_sum": str(ps.value),
        "terms": args.terms,
        "exact": cf.exact and ps.exact,
    }
    if cf.at_pole:
        out["closed_form"] = None
        out["abs_error"] = None
    else:
        out["closed_form"] = str(cf.value)
        out["abs_error"] = (str(abs(cf.value - ps.value))
                            if cf.exact and ps.exact
                            else abs(complex(cf.value) - complex(ps.value)))
    _emit(out, args.format)
    return 0


def _run_one_suite(task):
    q, ell, suite, seed, max_level, guard = task
    return ver.run_suites(q, ell, [suite], seed=seed, max_level=max_level,
                          guard=guard)


def cmd_verify(args):
    cfg = _merge_config(args)
    if cfg.get("q") or cfg.get("p"):
        q = cfg.get("q") or cfg["p"] ** cfg.get("f", 1)
        params = [(q, cfg["ell"])]
    else:
        params = [(3, 2), (5, 3), (7, 3)]
    suites = [args.suite] if args.suite != "all" else list(ver.SUITES)
    tasks = [(q, ell, s, cfg["seed"], args.max_level,
              cfg["max_group_order"])
             for (q, ell) in params for s in suites]
    if cfg["jobs"] > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=cfg["jobs"]) as pool:
            grouped = list(pool.map(_run_one_suite, tasks))
    else:
        grouped = [_run_one_suite(t) for t in tasks]
    rows = []
    for (q, ell, suite, *_), results in zip(tasks, grouped):
        for r in results:
            row = {
                "q": q,
                "ell": ell,
                "suite": r.suite,
                "check": r.name,
                "ok": r.ok,
                "claim": r.claim,
                "detail": r.detail,
            }
            if args.timings:
                row["seconds"] = round(r.seconds, 3)
            rows.append(row)
    ok = all(r["ok"] for r in rows)
    _emit({"rows": rows, "ok": ok}, args.format, "rows")
    return 0 if ok else 2


def build_parser():
    ap = argparse.ArgumentParser(
        prog="sl1d",
        description="Exact character census of the norm-one units of a "
        "local division algebra of prime degree, with brute-force "
        "verification on finite congruence quotients.",
    )
    ap.add_argument("--config", help="JSON config file (flags win)")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, tower=True):
        sp.add_argument("--q", type=int, help="residual cardinality (p^f)")
        sp.add_argument("--p", type=int, help="residual characteristic")
        sp.add_argument("--f", type=int, help="exponent with q = p^f")
        sp.add_argument("--ell", type=int, required=False,
                        help="degree of the division algebra (prime)")
        sp.add_argument("--modulus-q", dest="modulus_q",
                        help="little-endian coefficients over GF(p)")
        sp.add_argument("--modulus-qell", dest="modulus_qell",
                        help="little-endian coefficients over GF(p)")
        sp.add_argument("--format", choices=("json", "tsv"), default="json")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--jobs", type=int)
        sp.add_argument("--max-group-order", dest="max_group_order",
                        type=int)
        sp.add_argument("--max-orbit-cosets", dest="max_orbit_cosets",
                        type=int)
        sp.add_argument("--config", help="JSON config file (flags win)")

    sp = sub.add_parser("census", help="level census and telescoping table")
    common(sp)
    sp.add_argument("--max-level", type=int, default=8)
    sp.add_argument("--cross-validate", action="store_true",
                    help="compare against explicit quotient groups")
    sp.set_defaults(fn=cmd_census)

    sp = sub.add_parser("orbits", help="similarity class sizes")
    common(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--y", help="element expression (default: all "
                    "non-central cosets mod P^2)")
    sp.add_argument("--bruteforce", action="store_true")
    sp.set_defaults(fn=cmd_orbits)

    sp = sub.add_parser("elem", help="ad-hoc skew series arithmetic")
    common(sp)
    sp.add_argument("expr")
    sp.add_argument("--prec", type=int, default=8)
    sp.add_argument("--op", choices=("show", "trd", "nrd", "inv", "all"),
                    default="show")
    sp.set_defaults(fn=cmd_elem)

    sp = sub.add_parser("zeta", help="representation zeta function")
    common(sp)
    sp.add_argument("--s", required=True,
                    help="evaluation point RE or RE,IM")
    sp.add_argument("--terms", type=int, default=200)
    sp.add_argument("--exact", action="store_true",
                    help="require exact rational evaluation (integer s)")
    sp.set_defaults(fn=cmd_zeta)

    sp = sub.add_parser("verify", help="run invariant suites")
    common(sp)
    sp.add_argument("--suite",
                    choices=("arith", "orbits", "duality", "construction",
                             "zeta", "all"),
                    default="all")
    sp.add_argument("--max-level", "--m", dest="max_level", type=int,
                    default=None)
    sp.add_argument("--timings", action="store_true")
    sp.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except SL1DError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
