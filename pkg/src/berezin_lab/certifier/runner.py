"""Runs the claim catalog and assembles a deterministic report."""
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..config import DEFAULT
from ..errors import BerezinError, ConfigError
from .claims import BY_ID, CATALOG, c7b_values
from .instances import Instance, rng_for

WITNESS_COUNT = 3
RED_FLAG_DUMPS = 5


def _index(cid):
    for i, c in enumerate(CATALOG):
        if c.cid == cid:
            return i
    raise ConfigError("claims", f"unknown claim {cid!r}")


def resolve_claims(claims=None):
    """Claim objects for ids (or ``None``/``"all"`` for the full catalog), in catalog order."""
    if claims is None or claims == "all" or claims == ["all"]:
        return list(CATALOG)
    if isinstance(claims, str):
        claims = [c.strip() for c in claims.split(",") if c.strip()]
    want = set()
    for c in claims:
        if c not in BY_ID:
            raise ConfigError("claims", f"unknown claim {c!r}; known: {', '.join(BY_ID)}")
        want.add(c)
    return [c for c in CATALOG if c.cid in want]


def gen_instance(claim, seed, trial, dim=None):
    ops, scalars = claim.gen(rng_for(seed, _index(claim.cid), trial), dim)
    return Instance(claim.cid, int(seed), int(trial), ops, scalars)


@dataclass
class TrialOutcome:
    instance: Instance
    results: list = field(default_factory=list)
    error: str = None


def certify(claim, instance, cfg=DEFAULT):
    """All checks of one instance; numeric failures make the trial inconclusive."""
    try:
        return TrialOutcome(instance, claim.check(instance, cfg))
    except BerezinError as exc:
        return TrialOutcome(instance, [], f"{type(exc).__name__}: {exc}")


def _run_one(claim, seed, trial, cfg):
    try:
        inst = gen_instance(claim, seed, trial)
    except BerezinError as exc:
        return TrialOutcome(Instance(claim.cid, int(seed), int(trial)), [], f"{type(exc).__name__}: {exc}")
    return certify(claim, inst, cfg)


def _clean(x):
    """JSON-safe copy: numpy scalars unwrapped, non-finite floats become strings."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [_clean(x.real), _clean(x.imag)]
    return x


def _aggregate(entries):
    """Per-label summary of (trial, result) pairs, labels in first-seen order."""
    out = {}
    for trial, r in entries:
        a = out.get(r.label)
        if a is None:
            a = out[r.label] = {"form": r.label, "evaluations": 0, "min_margin": math.inf, "failures": 0,
                                "worst": None}
        a["evaluations"] += 1
        if not r.passed:
            a["failures"] += 1
        if r.margin < a["min_margin"]:
            a["min_margin"] = r.margin
            a["worst"] = dict(r.to_dict(), trial=trial)
    return list(out.values())


def claim_block(claim, outcomes):
    asserted, diag, audit, errors = [], [], [], []
    for o in outcomes:
        if o.error is not None:
            errors.append({"trial": o.instance.trial, "error": o.error})
        for r in o.results:
            (asserted if r.kind == "assert" else diag if r.kind == "diagnostic" else audit).append((o.instance.trial, r))
    fails = [(t, r) for t, r in asserted if not r.passed]
    worst = sorted(asserted, key=lambda tr: (tr[1].margin, tr[0]))[:WITNESS_COUNT]
    witnesses = [dict(r.to_dict(), trial=t) for t, r in worst]
    flagged_trials = []
    for t, _ in fails:
        if t not in flagged_trials:
            flagged_trials.append(t)
    by_trial = {o.instance.trial: o.instance for o in outcomes}
    red = [{"trial": t, "instance": by_trial[t].to_dict(),
            "failed": [r.to_dict() for tt, r in fails if tt == t]} for t in flagged_trials[:RED_FLAG_DUMPS]]
    block = {
        "claim": claim.cid,
        "title": claim.title,
        "orientation": claim.orientation,
        "trials": len(outcomes),
        "checks": len(asserted),
        "min_margin": min((r.margin for _, r in asserted), default=None),
        "violations": len(fails),
        "inconclusive": len(errors),
        "diagnostics": _aggregate(diag),
        "audit": _aggregate(audit),
        "witnesses": witnesses,
        "red_flags": red,
    }
    if errors:
        block["errors"] = errors[:RED_FLAG_DUMPS]
    if claim.cid == "C7b":
        inf, mu, half = c7b_values()
        block["values"] = {"inf_mu": inf, "inf_mu_exact": "1560/29", "argmin_mu": mu, "argmin_mu_exact": "15/29",
                           "half_ber": half, "half_ber_exact": "55"}
    return block


def _orientation_summary(blocks):
    """Which reading of the mu = 0 endpoint holds, from the C3 audit."""
    for b in blocks:
        if b["claim"] != "C3":
            continue
        axiom = [a for a in b["audit"] if a["form"].startswith("printed sigma_0")]
        if axiom:
            return {"cli_default": "example",
                    "example_reading_mu0_is_ber": b["violations"] == 0,
                    "axiom_reading_mu0_is_ber": axiom[0]["failures"] == 0}
    return None


@dataclass
class SuiteReport:
    seed: int
    trials: int
    claims: list
    blocks: list

    @property
    def violations(self):
        return sum(b["violations"] for b in self.blocks)

    @property
    def red_flag(self):
        return any(b["red_flags"] for b in self.blocks)

    @property
    def exit_code(self):
        return 5 if self.red_flag else 0

    def to_dict(self):
        d = {"seed": self.seed, "trials": self.trials, "claims": self.claims,
             "violations": self.violations, "claim_reports": self.blocks}
        o = _orientation_summary(self.blocks)
        if o is not None:
            d["orientation"] = o
        return _clean(d)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, allow_nan=False) + "\n"


def thread_count(threads=None):
    if threads is None:
        raw = os.environ.get("BEREZIN_LAB_THREADS", "1")
        try:
            threads = int(raw)
        except ValueError:
            raise ConfigError("BEREZIN_LAB_THREADS", f"expected a positive integer, got {raw!r}") from None
    if threads < 1:
        raise ConfigError("threads", f"must be at least 1, got {threads}")
    return threads


def certify_suite(seed=42, trials=100, claims=None, threads=None, cfg=DEFAULT):
    """Run ``trials`` instances of each claim (fixed claims once) and build the report."""
    if int(trials) < 1:
        raise ConfigError("trials", f"must be at least 1, got {trials}")
    selected = resolve_claims(claims)
    tasks = [(c, t) for c in selected for t in range(1 if c.fixed else int(trials))]
    n = thread_count(threads)
    if n == 1:
        outcomes = [_run_one(c, seed, t, cfg) for c, t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            outcomes = list(pool.map(lambda ct: _run_one(ct[0], seed, ct[1], cfg), tasks))
    blocks = []
    k = 0
    for c in selected:
        m = 1 if c.fixed else int(trials)
        blocks.append(claim_block(c, outcomes[k:k + m]))
        k += m
    return SuiteReport(int(seed), int(trials), [c.cid for c in selected], blocks)
