"""Run configurations: JSON schema, parsing into library objects, dispatch and replay."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

import jsonschema

from .balls import ClopenSet, parse_ball, unit_ball
from .dvr import MODES, DvrContext
from .errors import DEFAULT_BUDGET
from .line import (IntervalUnion, LineCovering, attractor_closure_check, certify_all_words,
                   parse_rational, sc_star_line, word_image)
from .maps import Ifs
from .models import (
    CofiniteCovering, Side, Word, baire_report, classify_against_u, cofinite_sc,
    cylinder_minimal_k, cylinders_disjoint, dyadic_interval, omega_image, omega_minimal_k,
    sc_star_cylinders, sc_star_omega_discrete, _omega_container, _union_contains,
)
from .report import FAILS, VerificationReport
from .verify import Covering, minimal_k, replay_sc, uniform_covering, verify_local_fractality, verify_sc


class ConfigError(ValueError):
    """Invalid configuration; ``diagnostics`` lists every schema violation."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


_RAT = {"type": ["string", "integer"]}
_WORD = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_PAIR = {"type": "array", "items": _RAT, "minItems": 2, "maxItems": 2}


def _model(name, props, required=()):
    props = dict(props, model={"const": name})
    return {"type": "object", "additionalProperties": False,
            "required": ["model", *required], "properties": props}


SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "context": {
            "type": "object", "additionalProperties": False, "required": ["p"],
            "properties": {"p": {"type": "integer", "minimum": 2},
                           "mode": {"enum": list(MODES)},
                           "precision": {"type": "integer", "minimum": 1}},
        },
        "system": {
            "type": "object", "additionalProperties": False, "required": ["kind"],
            "properties": {"kind": {"enum": ["digit-prepend", "window", "tail-fixing"]},
                           "mu": {"type": "integer", "minimum": 0}},
        },
        "covering": {
            "type": "object", "additionalProperties": False, "required": ["sets"],
            "properties": {
                "universe": {"type": "string"},
                "sets": {"type": "array", "minItems": 1, "items": {
                    "oneOf": [{"type": "string"},
                              {"type": "array", "items": {"type": "string"}}]}},
            },
        },
        "local": {
            "type": "object", "additionalProperties": False, "required": ["center"],
            "properties": {"center": {"type": "string"},
                           "depth": {"type": "integer", "minimum": 0}},
        },
        "model": {"oneOf": [
            _model("baire", {"max_k": {"type": "integer", "minimum": 0}}),
            _model("kappa-omega", {"kappa": {"type": "integer", "minimum": 1},
                                   "basics": {"type": "array", "items": _WORD},
                                   "U": {"type": ["array", "null"], "items": _WORD}},
                   ["kappa", "basics"]),
            _model("omega-discrete", {"singletons": {"type": "array",
                                                     "items": {"type": "integer", "minimum": 0}}},
                   ["singletons"]),
            _model("cofinite", {"complements": {"type": "array", "minItems": 1,
                                                "items": {"type": "array", "items": _RAT}},
                                "max_k": {"type": "integer", "minimum": 0}},
                   ["complements"]),
            _model("line", {"U": {"type": "array", "items": _PAIR},
                            "basics": {"type": "array", "items": _PAIR},
                            "bound": _RAT,
                            "sample_depth": {"type": "integer", "minimum": 0}},
                   ["U", "basics"]),
        ]},
        "options": {
            "type": "object", "additionalProperties": False,
            "properties": {"max_k": {"type": "integer", "minimum": 0},
                           "budget": {"type": "integer", "minimum": 1}},
        },
    },
}


@dataclass
class RunConfig:
    context: DvrContext | None = None
    system: dict | None = None
    covering: dict | None = None
    local: dict | None = None
    model: dict | None = None
    options: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        if self.model is not None:
            return self.model["model"]
        if self.local is not None:
            return "local-fractality"
        if self.covering is not None:
            return "ball-covering"
        return "system"

    @property
    def budget(self) -> int:
        return self.options.get("budget", DEFAULT_BUDGET)

    def ifs(self) -> Ifs:
        if self.context is None:
            raise ConfigError(["a 'context' section is required"])
        kind = (self.system or {}).get("kind")
        if self.local is not None and kind in (None, "tail-fixing"):
            return Ifs.tail_fixing(self.context)
        if kind is None or kind == "digit-prepend":
            return Ifs.digit_prepend(self.context)
        if kind == "window":
            return Ifs.window(self.context, self.system.get("mu", 1))
        return Ifs.tail_fixing(self.context)

    def universe(self):
        ctx = self.context
        if self.local is not None:
            return unit_ball(ctx, ctx.parse(self.local["center"]))
        if self.covering is not None and "universe" in self.covering:
            return parse_ball(ctx, self.covering["universe"])
        return unit_ball(ctx)

    def ball_covering(self) -> Covering:
        sets = []
        for s in self.covering["sets"]:
            texts = [s] if isinstance(s, str) else s
            sets.append(ClopenSet(tuple(parse_ball(self.context, t) for t in texts)))
        return Covering(tuple(sets), self.universe())

    def line_covering(self) -> LineCovering:
        m = self.model
        return LineCovering(IntervalUnion.of_open([tuple(x) for x in m["U"]]),
                            tuple(tuple(x) for x in m["basics"]))


def parse_config(doc) -> RunConfig:
    """Validate and convert a config document.

    Model configs may be flat (``{"model": "baire", "max_k": 10}``); they are
    folded into the nested ``{"model": {...}}`` form before validation.
    """
    if isinstance(doc, dict) and isinstance(doc.get("model"), str):
        flat = {k: v for k, v in doc.items() if k != "options"}
        doc = {"model": flat, **({"options": doc["options"]} if "options" in doc else {})}
    validator = jsonschema.Draft7Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        raise ConfigError(
            f"{'/'.join(str(x) for x in e.absolute_path) or '<root>'}: {e.message}" for e in errors)
    try:
        ctx = None
        if "context" in doc:
            c = doc["context"]
            ctx = DvrContext(c["p"], c.get("mode", "equal-char"), c.get("precision", 8))
        cfg = RunConfig(ctx, doc.get("system"), doc.get("covering"), doc.get("local"),
                        doc.get("model"), doc.get("options", {}))
        if cfg.model is None and ctx is None:
            raise ConfigError(["a 'context' section is required unless a 'model' is given"])
        return cfg
    except (ValueError, KeyError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError([str(exc)]) from exc


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError([f"cannot read {path}: {exc}"]) from exc
    return parse_config(doc)


def line_sample_words(depth: int, shifts=range(-5, 6), per_length=200, seed=0):
    """Deterministic sample of shift words of length ``depth``: constants plus a seeded draw."""
    rng = random.Random(seed)
    shifts = list(shifts)
    words = [(n,) * depth for n in shifts]
    words += [tuple(rng.choice(shifts) for _ in range(depth)) for _ in range(per_length)]
    return words


def run_verify(cfg: RunConfig, oracle: bool = False, max_k: int | None = None) -> VerificationReport:
    """Dispatch on the configured model and return its report."""
    budget = cfg.budget
    max_k = max_k if max_k is not None else cfg.options.get("max_k")
    kind = cfg.kind
    if kind == "baire":
        return baire_report(max_k if max_k is not None else cfg.model.get("max_k", 10))
    if kind == "kappa-omega":
        m = cfg.model
        rep = sc_star_cylinders(m["kappa"], m["basics"], m.get("U"), budget)
        if oracle:
            mk = cylinder_minimal_k(m["kappa"], m["basics"], m.get("U"), budget)
            rep.details["minimal k"] = mk
            rep.oracle_minimal = mk == rep.k
        return rep
    if kind == "omega-discrete":
        rep = sc_star_omega_discrete(cfg.model["singletons"], budget)
        if oracle:
            mk = omega_minimal_k(cfg.model["singletons"])
            rep.details["minimal k"] = mk
            rep.oracle_minimal = mk == rep.k
        return rep
    if kind == "cofinite":
        cov = CofiniteCovering(tuple(tuple(parse_rational(x) for x in F)
                                     for F in cfg.model["complements"]))
        limit = max_k if max_k is not None else cfg.model.get("max_k", 16)
        return cofinite_sc(cov, limit, budget)
    if kind == "line":
        cov = cfg.line_covering()
        probe = sc_star_line(cov)
        depth = cfg.model.get("sample_depth", probe.k)
        rep = sc_star_line(cov, line_sample_words(max(depth, probe.k)))
        top = max(depth, probe.k) + 2
        count, bad_word = certify_all_words(cov, rep.k, top)
        rep.details["exhaustive words"] = f"lengths {rep.k}..{top}, shifts -5..5: " + (
            f"{count} certified" if bad_word is None else f"uncovered {list(bad_word)}")
        if bad_word is not None:
            rep.verdict, rep.witness = FAILS, bad_word
        ok, bad = attractor_closure_check(parse_rational(cfg.model.get("bound", 5)))
        rep.details["closure check"] = ok
        if not ok:
            rep.verdict = FAILS
            rep.details["closure failures"] = [str(q) for q in bad[:10]]
        return rep
    if kind == "local-fractality":
        center = cfg.context.parse(cfg.local["center"])
        return verify_local_fractality(center, cfg.local.get("depth", 3), budget)
    if kind == "ball-covering":
        F = cfg.ifs()
        cov = cfg.ball_covering()
        rep = verify_sc(F, cov, budget)
        if oracle:
            mk = minimal_k(F, cov, budget)
            rep.details["minimal k"] = mk
            rep.oracle_minimal = mk == rep.k
        return rep
    raise ConfigError(["config has neither 'covering', 'local' nor 'model'"])


def replay(cfg: RunConfig, report: VerificationReport) -> bool:
    """Re-verify a report's certificate (or witnesses) against a fresh computation."""
    kind = cfg.kind
    if report.kind != kind:
        return False
    if kind == "baire":
        ws = report.details.get("witnesses", [])
        return bool(ws) and all(classify_against_u(Word(w)) is Side.SPLIT for w in ws) and \
            [len(w) for w in ws] == list(range(1, len(ws) + 1))
    if kind == "ball-covering":
        return replay_sc(report, cfg.ifs(), cfg.ball_covering())
    if kind == "local-fractality":
        F = cfg.ifs()
        return replay_sc(report, F, uniform_covering(cfg.universe(), report.k))
    if kind == "kappa-omega":
        m = cfg.model
        kappa = m["kappa"]
        basics = [Word(x, kappa) for x in m["basics"]]
        rest = m.get("U")
        rest_words = None if rest is None else [Word(x, kappa) for x in rest]
        if sorted(w for w, _ in report.certificate) != \
                [tuple(y) for y in _words(range(kappa), report.k)]:
            return False
        for w, i in report.certificate:
            y = Word(w, kappa)
            if i > 0:
                if not basics[i - 1].is_prefix_of(y):
                    return False
            elif rest_words is None:
                if not all(cylinders_disjoint(y, x) for x in basics):
                    return False
            elif not _union_contains(rest_words, y, kappa):
                return False
        return True
    if kind == "omega-discrete":
        singles = [int(n) for n in cfg.model["singletons"]]
        if sorted(w for w, _ in report.certificate) != list(_words((0, 1), report.k)):
            return False
        return all(_omega_container(omega_image(w), singles) == i for w, i in report.certificate)
    if kind == "cofinite":
        comps = [frozenset(parse_rational(x) for x in F) for F in cfg.model["complements"]]
        if sorted(w for w, _ in report.certificate) != list(_words((0, 1), report.k)):
            return False
        for w, i in report.certificate:
            lo, hi = dyadic_interval(w)
            if any(lo <= x <= hi for x in comps[i]):
                return False
        return True
    if kind == "line":
        cov = cfg.line_covering()
        for w, i in report.certificate:
            if len(w) < report.k or not cov.sets[i].contains_interval(word_image(w)):
                return False
        return True
    return False


def _words(alphabet, k):
    return itertools.product(tuple(alphabet), repeat=k)

