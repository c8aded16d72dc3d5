"""Closed-form eigenvalue bounds for each family and the sweep that audits them.

Every published closed form is registered as a :class:`BoundClaim`.  Where the
stated bound and the one its derivation actually arrives at differ, both are
registered under the same ``formula_id`` with ``variant`` set to
``"statement"`` or ``"proof"``.  Verdicts on these claims are recorded, never
enforced.  The hard checks in a sweep are the ones backed by a certificate:

* ``lambda_2 <= certified_ub`` (Rayleigh quotient of an orthogonal vector),
* ``lambda_2 > 0`` on every connected instance,
* ``lambda_2 >= N / c`` wherever ``K_N <= c G`` was certified.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .eigensolver import lambda2 as compute_lambda2
from .families import FamilyError, FamilySpec, complete, random_connected, tree_height
from .loewner import PSD_TOL, family_scale, loewner_geq
from .vectors import certified_upper_bound, family_vector

SLACK = 1e-9

CSV_HEADER = (
    "family", "n", "m", "k", "l", "N", "lambda2", "certified_ub",
    "claim_id", "claim_side", "claim_variant", "claim_value", "holds", "margin",
)
ERRATA_HEADER = (
    "claim_id", "family", "claim_side", "claim_variant", "rows", "held",
    "held_fraction", "worst_margin", "variant_disagreements", "note",
)

LOEWNER_FAMILIES = ("dumbbell", "star_bridge", "tree_bridge", "tree_chain")


@dataclass(frozen=True)
class BoundClaim:
    family: str
    side: str  # "lower" | "upper"
    variant: str  # "statement" | "proof"
    formula_id: str
    evaluate: Callable[[dict], float] = field(compare=False, repr=False)
    strict: bool = False
    note: str = ""

    def __reduce__(self):
        # the closed forms are lambdas, so ship a registry lookup to worker processes
        return (lookup_claim, (self.family, self.formula_id, self.variant))

    def verdict(self, lam2: float, value: float, slack: float = SLACK) -> tuple[bool, float]:
        margin = lam2 - value if self.side == "lower" else value - lam2
        holds = margin > slack if self.strict else margin >= -slack
        return holds, margin


def _lg(x: float) -> float:
    return math.log2(x)


def _tree_multi_upper(threshold: Callable[[int, int], bool]) -> Callable[[dict], float]:
    def f(p: dict) -> float:
        n, k = p["n"], p["k"]
        base = (2 * k + 2) / (n - 1)
        extra = (-3 * k + 3 * n - 3) / (2 * (n - 1))
        return base + (extra if threshold(k, n) else 0.0)
    return f


_TREE_MULTI_NOTE = "formula uses an undefined m; k substituted"

REGISTRY: dict[str, list[BoundClaim]] = {
    "dumbbell": [
        BoundClaim("dumbbell", "lower", "statement", "dumbbell_lower",
                   lambda p: 2 / ((2 * p["n"] + p["m"] - 3) * (p["m"] + 1))),
        BoundClaim("dumbbell", "lower", "proof", "dumbbell_lower",
                   lambda p: 2 / ((2 * p["n"] + p["m"] - 1) * (p["m"] + 1)),
                   note="derivation ends with 2n+m-1 in place of 2n+m-3"),
        BoundClaim("dumbbell", "upper", "statement", "dumbbell_upper",
                   lambda p: 12 / (6 * (p["m"] - 1) * (p["n"] - 1) + p["m"] * (p["m"] - 1))),
    ],
    "dumbbell_multi": [
        BoundClaim("dumbbell_multi", "lower", "statement", "dumbbell_multi_lower",
                   lambda p: 2 / (3 * (2 * p["n"] - 1))),
        BoundClaim("dumbbell_multi", "upper", "statement", "dumbbell_multi_upper",
                   lambda p: 4 / p["n"]),
        BoundClaim("dumbbell_multi", "upper", "proof", "dumbbell_multi_upper",
                   lambda p: 2 * p["k"] / p["n"], note="stated 4/n is the k=2 case of 2k/n"),
    ],
    "general_bridge2k": [
        BoundClaim("general_bridge2k", "lower", "statement", "general_bridge2k_positive",
                   lambda p: 0.0, strict=True),
        BoundClaim("general_bridge2k", "upper", "statement", "general_bridge2k_upper",
                   lambda p: 2 * p["k"] / p["n"]),
    ],
    "star_bridge": [
        BoundClaim("star_bridge", "lower", "statement", "star_bridge_lower",
                   lambda p: 2 / ((2 * p["n"] + p["m"] - 3) * (p["m"] + 3))),
        BoundClaim("star_bridge", "upper", "statement", "star_bridge_upper",
                   lambda p: (4 * p["n"] + 2) / (2 * p["n"] + p["m"] - 4),
                   note="numerator of the even-n case"),
        BoundClaim("star_bridge", "upper", "proof", "star_bridge_upper",
                   lambda p: (4 * p["n"] - 6) / (2 * p["n"] + p["m"] - 4),
                   note="odd-n centre-to-centre derivation, said to cover the other cases"),
    ],
    "tree_bridge": [
        BoundClaim("tree_bridge", "lower", "statement", "tree_bridge_lower",
                   lambda p: 2 / ((2 * p["n"] + p["m"] - 1) * (2 * _lg(p["n"] + 1) + p["m"] - 3))),
        BoundClaim("tree_bridge", "upper", "statement", "tree_bridge_upper",
                   lambda p: 5 / (2 * (p["n"] - 1))),
    ],
    "tree_multi": [
        BoundClaim("tree_multi", "lower", "statement", "tree_multi_lower",
                   lambda p: 2 / ((2 * p["n"] + 1) * (2 * _lg(p["n"] - 1) + 1))),
        BoundClaim("tree_multi", "upper", "statement", "tree_multi_upper",
                   _tree_multi_upper(lambda k, n: k >= n - 1),
                   note=_TREE_MULTI_NOTE + "; indicator read literally as k >= n-1"),
        BoundClaim("tree_multi", "upper", "proof", "tree_multi_upper",
                   _tree_multi_upper(lambda k, n: k <= n - 1),
                   note=_TREE_MULTI_NOTE + "; indicator per the prose, k <= n-1"),
    ],
    "tree_chain": [
        BoundClaim("tree_chain", "lower", "statement", "tree_chain_lower",
                   lambda p: 2 / ((p["n"] * p["l"] - 1) * (p["l"] * _lg(p["n"] - 1) - 1))),
        BoundClaim("tree_chain", "upper", "statement", "tree_chain_upper",
                   lambda p: p["l"] / (p["n"] - 1)),
        BoundClaim("tree_chain", "upper", "proof", "tree_chain_upper",
                   lambda p: 2 / (p["n"] - 1)),
    ],
    "bridge_chain": [
        BoundClaim("bridge_chain", "lower", "statement", "bridge_chain_positive",
                   lambda p: 0.0, strict=True),
        BoundClaim("bridge_chain", "upper", "statement", "bridge_chain_upper",
                   lambda p: 2.0, note="tight for two single-vertex blocks"),
    ],
}


def spec_params(spec: FamilySpec) -> dict:
    """``n`` (block size), ``m``, ``k``, ``l`` of an instance; missing values are None."""
    n = spec.base.num_vertices if spec.base is not None else spec.n
    return {"n": n, "m": spec.m, "k": spec.k, "l": spec.l}


def _loewner_claim(family: str) -> BoundClaim:
    return BoundClaim(family, "lower", "proof", f"{family}_lower_loewner", lambda p: float("nan"),
                      note="N/c with K_N <= c G certified numerically")


def _domain(family: str, p: dict) -> None:
    n, m, k, l = p.get("n"), p.get("m"), p.get("k"), p.get("l")
    ok = n is not None and n >= 1
    if family in ("dumbbell", "star_bridge"):
        ok = ok and n >= 2 and m is not None and m >= 2 and 2 * n + m - 4 > 0
    elif family == "tree_bridge":
        ok = ok and m is not None and m >= 2 and n >= 3
    elif family in ("dumbbell_multi", "general_bridge2k"):
        ok = ok and k is not None and 1 <= k <= n
    elif family == "tree_multi":
        ok = ok and n >= 3 and k is not None and 1 <= k <= n
    elif family == "tree_chain":
        ok = ok and n >= 3 and l is not None and l >= 2
    elif family == "bridge_chain":
        ok = ok and l is not None and l >= 2
    else:
        raise FamilyError(f"no registered claims for family {family!r}")
    if family in ("tree_bridge", "tree_multi", "tree_chain"):
        tree_height(n)
    if not ok:
        raise FamilyError(f"parameters {p} outside the domain of the {family} claims")


def lookup_claim(family: str, formula_id: str, variant: str) -> BoundClaim:
    if formula_id == f"{family}_lower_loewner":
        return _loewner_claim(family)
    for c in claims_for(family):
        if (c.formula_id, c.variant) == (formula_id, variant):
            return c
    raise FamilyError(f"unknown claim {formula_id}/{variant} for {family!r}")


def claims_for(family: str) -> list[BoundClaim]:
    if family not in REGISTRY:
        raise FamilyError(f"no registered claims for family {family!r}")
    return list(REGISTRY[family])


def claimed_bounds(family: str, params: dict) -> list[tuple[BoundClaim, float]]:
    """Every registered closed form for ``family`` evaluated at ``params``."""
    _domain(family, params)
    return [(c, float(c.evaluate(params))) for c in claims_for(family)]


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class ClaimVerdict:
    claim: BoundClaim
    value: float
    holds: bool
    margin: float


@dataclass
class BoundReport:
    spec: FamilySpec
    N: int
    lambda2: float = float("nan")
    certified_ub: float = float("nan")
    vector_label: str = ""
    shift_applied: float = 0.0
    paper_closed_form: float | None = None
    loewner_c: float | None = None
    loewner_certified: bool | None = None
    loewner_min_eig: float | None = None
    verdicts: list[ClaimVerdict] = field(default_factory=list)
    error: str | None = None

    @property
    def params(self) -> dict:
        return spec_params(self.spec)

    def dominance_ok(self, slack: float = SLACK) -> bool:
        return self.error is None and self.lambda2 <= self.certified_ub + slack

    def positivity_ok(self) -> bool:
        return self.error is None and self.lambda2 > SLACK

    def loewner_ok(self) -> bool:
        """True unless a certified Loewner bound is violated."""
        for v in self.verdicts:
            if v.claim.formula_id.endswith("_loewner") and self.loewner_certified and not v.holds:
                return False
        return self.error is None

    def hard_ok(self, slack: float = SLACK) -> bool:
        return (self.dominance_ok(slack) and self.positivity_ok() and self.loewner_ok()
                and self.loewner_certified is not False)


def evaluate_instance(spec: FamilySpec, slack: float = SLACK, loewner_tol: float = PSD_TOL) -> BoundReport:
    """Build, solve, certify and judge one family instance.  Never raises."""
    try:
        g = spec.build()
    except ValueError as exc:
        return BoundReport(spec, 0, error=f"construction failed: {exc}")
    rep = BoundReport(spec, g.num_vertices)
    try:
        params = rep.params
        rep.lambda2 = compute_lambda2(g)
        x, closed = family_vector(spec)
        ub = certified_upper_bound(g, x, closed)
        rep.certified_ub = ub.value
        rep.vector_label = ub.vector_label
        rep.shift_applied = ub.shift_applied
        rep.paper_closed_form = closed
        for claim, value in claimed_bounds(spec.family, params):
            holds, margin = claim.verdict(rep.lambda2, value, slack)
            rep.verdicts.append(ClaimVerdict(claim, value, holds, margin))
        if spec.family in LOEWNER_FAMILIES:
            c = family_scale(spec.family, params["n"], params["m"], params["l"])
            cert = loewner_geq(g, complete(g.num_vertices), c, rhs_desc=f"K_{g.num_vertices}",
                               tol=loewner_tol)
            rep.loewner_c = c
            rep.loewner_certified = cert.holds
            rep.loewner_min_eig = cert.min_eig_of_difference
            claim = _loewner_claim(spec.family)
            value = g.num_vertices / c
            holds, margin = claim.verdict(rep.lambda2, value, slack)
            rep.verdicts.append(ClaimVerdict(claim, value, holds and cert.holds, margin))
    except (ValueError, RuntimeError) as exc:
        rep.error = f"{type(exc).__name__}: {exc}"
    return rep


def _sort_key(rep: BoundReport):
    s = rep.spec
    nums = tuple(-1 if v is None else v for v in rep.params.values())
    return (s.family, nums, s.attachments or (), s.pairing or ())


def _evaluate_star(args):
    return evaluate_instance(*args)


def verify(specs: Sequence[FamilySpec], slack: float = SLACK, jobs: int = 1) -> list[BoundReport]:
    """Evaluate every instance; output sorted by (family, parameters)."""
    work = [(s, slack) for s in specs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_evaluate_star, work, chunksize=8))
    else:
        reports = [evaluate_instance(*w) for w in work]
    order = sorted(range(len(reports)), key=lambda i: (_sort_key(reports[i]), i))
    return [reports[i] for i in order]


# -- grids ----------------------------------------------------------------------


def random_bases(count: int, seed: int = 42, n_min: int = 2, n_max: int = 10) -> list:
    rng = np.random.default_rng(seed)
    return [random_connected(int(rng.integers(n_min, n_max + 1)), rng) for _ in range(count)]


def default_grid(family: str, seed: int = 42) -> list[FamilySpec]:
    """Default parameter grid for one family."""
    out: list[FamilySpec] = []
    if family == "dumbbell":
        out = [FamilySpec("dumbbell", n=n, m=m) for n in range(4, 13) for m in range(2, 9)]
    elif family == "dumbbell_multi":
        out = [FamilySpec("dumbbell_multi", n=n, k=k) for n in range(4, 13) for k in range(1, min(n, 4) + 1)]
    elif family == "star_bridge":
        for n in range(4, 13):
            for m in range(2, 9):
                c2 = n + m - 1
                for att in ((1, c2), (1, c2 + 1), (2, c2 + 1)):
                    out.append(FamilySpec("star_bridge", n=n, m=m, attachments=att))
    elif family == "tree_bridge":
        for n in (3, 7, 15):
            for m in range(2, 7):
                r2, N = n + m - 1, 2 * n + m - 2
                for att in ((1, r2), (1, r2 + 1), (2, r2 + 1), (n, N)):
                    out.append(FamilySpec("tree_bridge", n=n, m=m, attachments=att))
    elif family == "tree_multi":
        out = [FamilySpec("tree_multi", n=n, k=k) for n in (3, 7, 15) for k in range(1, min(n, 4) + 1)]
    elif family == "tree_chain":
        out = [FamilySpec("tree_chain", n=n, l=l) for n in (3, 7, 15) for l in range(2, 6)]
    elif family == "bridge_chain":
        out = [FamilySpec("bridge_chain", l=l, base=b) for b in random_bases(5, seed) for l in range(2, 6)]
    elif family == "general_bridge2k":
        out = [FamilySpec("general_bridge2k", k=k, base=b)
               for b in random_bases(5, seed + 1) for k in range(1, min(b.num_vertices, 4) + 1)]
    else:
        raise FamilyError(f"no default grid for family {family!r}")
    return out


GRID_FAMILIES = tuple(REGISTRY)


def full_grid(seed: int = 42) -> list[FamilySpec]:
    return [s for f in GRID_FAMILIES for s in default_grid(f, seed)]


# -- output ---------------------------------------------------------------------


def _num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.15g}"


def report_rows(rep: BoundReport) -> list[list[str]]:
    s = rep.spec
    head = [s.family, _num(rep.params["n"]), _num(s.m), _num(s.k), _num(s.l), _num(rep.N),
            _num(rep.lambda2), _num(rep.certified_ub)]
    if rep.error is not None:
        return [head + ["error", "", "", "", "false", ""]]
    rows = []
    for v in rep.verdicts:
        rows.append(head + [v.claim.formula_id, v.claim.side, v.claim.variant,
                            _num(v.value), _num(v.holds), _num(v.margin)])
    return rows


def write_csv(rows: Iterable[Sequence[str]], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def reports_csv(reports: Sequence[BoundReport]) -> str:
    return write_csv((r for rep in reports for r in report_rows(rep)), CSV_HEADER)


@dataclass(frozen=True)
class ErrataRow:
    claim_id: str
    family: str
    side: str
    variant: str
    rows: int
    held: int
    worst_margin: float
    disagreements: int
    note: str

    @property
    def held_fraction(self) -> float:
        return self.held / self.rows if self.rows else float("nan")

    def cells(self) -> list[str]:
        return [self.claim_id, self.family, self.side, self.variant, str(self.rows), str(self.held),
                _num(self.held_fraction), _num(self.worst_margin), str(self.disagreements), self.note]


def errata_report(reports: Sequence[BoundReport]) -> list[ErrataRow]:
    """Per claim: how often it held, its worst margin, and statement/proof disagreements."""
    if not reports:
        raise ValueError("errata report needs at least one report")
    stats: dict[tuple[str, str], dict] = {}
    for idx, rep in enumerate(reports):
        for v in rep.verdicts:
            key = (v.claim.formula_id, v.claim.variant)
            st = stats.setdefault(key, {"claim": v.claim, "rows": 0, "held": 0,
                                        "worst": math.inf, "verdicts": {}})
            st["rows"] += 1
            st["held"] += int(v.holds)
            st["worst"] = min(st["worst"], v.margin)
            st["verdicts"][idx] = v.holds
    out = []
    for (fid, variant), st in sorted(stats.items(), key=lambda kv: (kv[1]["claim"].family, kv[0])):
        other = stats.get((fid, "proof" if variant == "statement" else "statement"))
        dis = 0
        if other is not None:
            dis = sum(1 for i, h in st["verdicts"].items()
                      if i in other["verdicts"] and other["verdicts"][i] != h)
        c = st["claim"]
        out.append(ErrataRow(fid, c.family, c.side, variant, st["rows"], st["held"],
                             st["worst"], dis, c.note))
    return out


def errata_csv(rows: Sequence[ErrataRow]) -> str:
    return write_csv((r.cells() for r in rows), ERRATA_HEADER)


def format_errata(rows: Sequence[ErrataRow]) -> str:
    """Fixed-width text rendering for terminals."""
    lines = [f"{'claim_id':32} {'variant':9} {'side':5} {'held':>9} {'frac':>6} {'worst_margin':>13} {'disagree':>8}"]
    for r in rows:
        lines.append(f"{r.claim_id:32} {r.variant:9} {r.side:5} {r.held:>4}/{r.rows:<4} "
                     f"{r.held_fraction:6.3f} {r.worst_margin:13.6g} {r.disagreements:8d}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SweepSummary:
    instances: int
    dominance_failures: int
    positivity_failures: int
    loewner_failures: int
    uncertified: int
    errors: int

    @property
    def ok(self) -> bool:
        return not (self.dominance_failures or self.positivity_failures
                    or self.loewner_failures or self.uncertified or self.errors)


def summarize(reports: Sequence[BoundReport], slack: float = SLACK) -> SweepSummary:
    ok = [r for r in reports if r.error is None]
    return SweepSummary(
        instances=len(reports),
        dominance_failures=sum(not r.dominance_ok(slack) for r in ok),
        positivity_failures=sum(not r.positivity_ok() for r in ok),
        loewner_failures=sum(not r.loewner_ok() for r in ok),
        uncertified=sum(r.loewner_certified is False for r in ok),
        errors=len(reports) - len(ok),
    )
