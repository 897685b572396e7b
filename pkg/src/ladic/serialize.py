"""TowerFileV1: a tower as one JSON document, integers as decimal strings."""

import json

from . import conic, cyclodescent, elliptic
from .errors import InvalidParameters, LadicError, TowerFileError, VersionMismatch
from .fieldcore import DensePoly, PrimeField, cyclotomic, is_irreducible
from .tower import Strategy, Tower, check_params

FORMAT = "ladic.tower"
VERSION = 1


def _enc(coeffs):
    return [str(int(c)) for c in coeffs]


def _int(s, what):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise TowerFileError(f"{what}: expected a decimal string")
    try:
        return int(s)
    except ValueError:
        raise TowerFileError(f"{what}: {s!r} is not a decimal integer") from None


def _dec(seq, what):
    if not isinstance(seq, list):
        raise TowerFileError(f"{what}: expected a list")
    return [_int(s, what) for s in seq]


def _poly(field, seq, what):
    return DensePoly(field, _dec(seq, what))


def _init_payload(t):
    s, init = t.strategy, t.init
    if s is Strategy.T1:
        return {"y0": str(init)}
    if s is Strategy.T2:
        return {"alpha": str(init.alpha), "delta": str(init.params.delta)}
    if s is Strategy.ELLIPTIC:
        cyc = init.cycle
        return {
            "a": str(init.curve.a), "b": str(init.curve.b),
            "eta": str(init.eta), "e": str(init.e), "N": str(init.N),
            "point": [str(init.point.x), str(init.point.y)],
            "twist_scalar": str(cyc.twist_scalar),
            "flags": list(cyc.flags),
            "steps": [{
                "codomain": [str(st.codomain.a), str(st.codomain.b)],
                "f": _enc(st.f.coeffs), "g": _enc(st.g.coeffs), "h": _enc(st.h.coeffs),
                "y_scale": str(st.y_scale),
            } for st in cyc.steps],
        }
    return {"r": str(init.r), "F0": _enc(init.F0.coeffs), "y0": _enc(init.y0.coeffs),
            "P0": _enc(init.P0.coeffs)}


def tower_to_dict(t, levels=None):
    """The TowerFileV1 document for levels 0..levels (default: those built)."""
    top = t.built_levels - 1 if levels is None else levels
    out = []
    for i in range(top + 1):
        lvl = t.level(i)
        entry = {"i": i, "Q": _enc(lvl.Q.coeffs)}
        if lvl.relation is not None:
            entry["f"] = _enc(lvl.relation.f.coeffs)
            entry["g"] = _enc(lvl.relation.g.coeffs)
        out.append(entry)
    return {
        "format": FORMAT,
        "version": VERSION,
        "p": str(t.p),
        "ell": str(t.ell),
        "strategy": t.strategy.value,
        "init": _init_payload(t),
        "levels": out,
    }


def _load_init(strategy, field, ell, d):
    p = field.p
    if not isinstance(d, dict):
        raise TowerFileError("init: expected an object")
    try:
        if strategy is Strategy.T1:
            y0 = _int(d.get("y0"), "init.y0") % p
            if (p - 1) % ell or y0 == 0 or pow(y0, (p - 1) // ell, p) == 1:
                raise TowerFileError("init.y0 is not a non ell-th power")
            return y0
        if strategy is Strategy.T2:
            alpha = _int(d.get("alpha"), "init.alpha")
            delta = _int(d.get("delta"), "init.delta")
            if not conic.is_t2_generator(alpha % p, p, ell):
                raise TowerFileError("init.alpha does not generate a T2 tower")
            init = conic.T2Init(conic.ConicParams(field, delta), alpha % p, ell)
            if init.params.delta != (alpha * alpha - 4) % p:
                raise TowerFileError("init.delta must equal alpha^2 - 4")
            return init
        if strategy is Strategy.ELLIPTIC:
            return _load_elliptic(field, ell, d)
        return _load_general(field, ell, d)
    except TowerFileError:
        raise
    except (LadicError, ValueError, ZeroDivisionError, AttributeError, TypeError) as exc:
        raise TowerFileError(f"init: {exc}") from None


def _load_elliptic(field, ell, d):
    E0 = elliptic.Curve(field, _int(d.get("a"), "init.a"), _int(d.get("b"), "init.b"))
    steps, E = [], E0
    raw = d.get("steps")
    if not isinstance(raw, list) or not raw:
        raise TowerFileError("init.steps: expected a nonempty list")
    for k, st in enumerate(raw):
        h = _poly(field, st.get("h"), "step.h")
        ref = elliptic.velu(E, h, ell)
        cod = elliptic.Curve(field, *_dec(st.get("codomain"), "step.codomain"))
        f, g = _poly(field, st.get("f"), "step.f"), _poly(field, st.get("g"), "step.g")
        y_scale = _int(st.get("y_scale"), "step.y_scale")
        last = k == len(raw) - 1
        if last:
            # the closing isomorphism divides g by u^2 and lands back on E_0
            pp, u = field.p, y_scale % field.p
            En = ref.codomain
            if (cod != E0 or ref.g.scale(pow(u * u, -1, pp)) != g
                    or En.a * pow(u, 4, pp) % pp != E0.a or En.b * pow(u, 6, pp) % pp != E0.b):
                raise TowerFileError("init.steps: the cycle does not close on E_0")
        elif cod != ref.codomain or g != ref.g or y_scale != 1:
            raise TowerFileError(f"init.steps[{k}] disagrees with Velu's formulas")
        if f != ref.f:
            raise TowerFileError(f"init.steps[{k}] disagrees with Velu's formulas")
        steps.append(elliptic.IsogenyStep(E, cod, f, g, h, y_scale))
        E = ref.codomain
    N = _int(d.get("N"), "init.N")
    x, y = _dec(d.get("point"), "init.point")
    P = elliptic.ECPoint(x % field.p, y % field.p)
    eta = _int(d.get("eta"), "init.eta") % field.p
    if not E0.contains(P) or P.x != eta:
        raise TowerFileError("init.point is not a point of E_0 above eta")
    flags = d.get("flags", [])
    cycle = elliptic.IsogenyCycle(steps, ell, N, _int(d.get("twist_scalar"), "init.twist_scalar"),
                                  list(flags))
    return elliptic.EllipticInit(cycle, eta, _int(d.get("e"), "init.e"), N, P)


def _load_general(field, ell, d):
    r = _int(d.get("r"), "init.r")
    F0 = _poly(field, d.get("F0"), "init.F0")
    y0 = _poly(field, d.get("y0"), "init.y0")
    P0 = _poly(field, d.get("P0"), "init.P0")
    if F0.degree != r or F0.lc != 1 or not (cyclotomic(ell, field) % F0).is_zero() \
            or not is_irreducible(F0):
        raise TowerFileError("init.F0 is not a monic irreducible factor of Phi_ell of degree r")
    ctx = cyclodescent.general_init(field, ell, y0=y0, F0=F0)
    if ctx.P0 != P0:
        raise TowerFileError("init.P0 is not the minimal polynomial of y0")
    return ctx


def tower_from_dict(d, strict=True):
    """Rebuild a Tower.  strict re-derives every level and rejects any mismatch;
    otherwise the stored Q_i and relations are kept for verify to judge."""
    if not isinstance(d, dict):
        raise TowerFileError("tower file must be a JSON object")
    if "version" not in d:
        raise TowerFileError("missing version field")
    if d["version"] != VERSION:
        raise VersionMismatch(f"unsupported tower file version {d['version']!r} (expected {VERSION})")
    if d.get("format") != FORMAT:
        raise TowerFileError(f"not a tower file (format {d.get('format')!r})")
    p, ell = _int(d.get("p"), "p"), _int(d.get("ell"), "ell")
    try:
        strategy = Strategy.parse(d.get("strategy"))
        field = PrimeField(p)
        check_params(p, ell)
    except InvalidParameters as exc:
        raise TowerFileError(str(exc)) from None
    init = _load_init(strategy, field, ell, d.get("init"))
    levels = d.get("levels")
    if not isinstance(levels, list) or not levels:
        raise TowerFileError("levels: expected a nonempty list")
    stored, rels = {}, {}
    for k, entry in enumerate(levels):
        if not isinstance(entry, dict) or entry.get("i") != k:
            raise TowerFileError(f"levels[{k}]: levels must be contiguous from 0")
        stored[k] = _poly(field, entry.get("Q"), f"levels[{k}].Q")
        if "f" in entry or "g" in entry:
            rels[k] = (_poly(field, entry.get("f", []), f"levels[{k}].f"),
                       _poly(field, entry.get("g", []), f"levels[{k}].g"))
    if strict:
        t = Tower(p, ell, strategy, init)
        for k, Q in stored.items():
            try:
                ok = t.derive_Q(k) == Q
                rel = t.relation(k)
                ok = ok and ((rel.f, rel.g) == rels.get(k) if rel is not None else k not in rels)
            except LadicError as exc:
                raise TowerFileError(f"levels[{k}]: {exc}") from None
            if not ok:
                raise TowerFileError(f"levels[{k}] does not match the data derived from init")
            t.level(k)
        return t
    return Tower(p, ell, strategy, init, stored=stored, stored_relations=rels)


def dump(t, path, levels=None):
    doc = tower_to_dict(t, levels)
    try:
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise TowerFileError(f"cannot write {path}: {exc}") from None


def load(path, strict=True):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise TowerFileError(f"cannot read {path}: {exc}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise TowerFileError(f"{path} is not valid JSON: {exc}") from None
    return tower_from_dict(doc, strict=strict), len(doc["levels"]) - 1
