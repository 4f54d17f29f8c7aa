"""Built-in scenarios with their known answers, and INI scenario files."""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm
from typing import Callable

from .body import okounkov_body
from .boundary import discontinuity_witness
from .exact import as_fraction
from .filtration import jumping_numbers
from .function import okounkov_function_envelope
from .geometry import ConcavePL, Polytope, convex_hull, disk_cap, envelope_from_values
from .integrals import closed_form_phi, cubic, family_scan
from .semigroup import SEQUENCE_LIBRARY, DiscreteSemigroup, fekete_limit, gordan_gap
from .series import (CURVE_P, CURVE_Q, P0, P1_DEFAULT, P2_COLLINEAR, P2_GENERIC, SeriesFamily,
                     ValuationSpec, family, parse_point)


class ScenarioError(ValueError):
    """Bad scenario name, file or parameter (CLI exit status 2)."""


@dataclass(frozen=True)
class Scenario:
    name: str
    kind: str  # "series", "scan", "boundary", "semigroup" or "fekete"
    series: SeriesFamily | None = None
    valuation: ValuationSpec | None = None
    max_level: int = 4
    lam: Fraction | None = None
    lambda_grid: tuple[Fraction, ...] = ()
    expected_body: tuple | None = None
    expected_function: Callable[[], ConcavePL] | None = field(default=None, compare=False)
    expected_jumps: tuple[int, ...] | None = None
    body: object = None
    center: tuple | None = None
    generators: tuple = ()
    box: int = 20
    expected_gap: frozenset | None = None
    sequence: str = ""
    sequence_param: Fraction | None = None
    expected_bound: Fraction | None = None

    @property
    def golden_level(self) -> int:
        """Smallest budget at which the expected body is claimed exactly."""
        if self.expected_body is None:
            return 1
        return lcm(*(c.denominator for v in self.expected_body for c in v)) * self.series.step


# --------------------------------------------------------------------------
# built-ins


def _F(x) -> Fraction:
    return as_fraction(x)


def _pts(*pts):
    return tuple(tuple(_F(c) for c in p) for p in pts)


def _pl(domain_pts, values: dict) -> Callable[[], ConcavePL]:
    def build():
        return envelope_from_values(convex_hull(_pts(*domain_pts)), {tuple(_F(c) for c in k): _F(v) for k, v in values.items()})
    return build


def blowup1(lam=1) -> Scenario:
    """2H - lambda E_1 at P_1 = [1:0:0], order at the general point [1:1:1]."""
    lam = _F(lam)
    if not 0 <= lam < 2:
        raise ScenarioError(f"blowup1 needs 0 <= lambda < 2 for 2H - lambda E to be big, got {lam}")
    F = family("BlowupP2", 2, [P1_DEFAULT], [lam]) if lam else family("P2", 2)
    half = lam / 2
    verts = tuple((2 * a, 2 * b) for a, b in _pts(*[(0, 0), (1 - half, 0), (1 - half, half), (0, 1)]))
    return Scenario("blowup1", "series", F, ValuationSpec.at_point(P2_GENERIC), max_level=4 * lam.denominator,
                    lam=lam, expected_body=verts,
                    expected_function=lambda: closed_form_phi("P2", half, 2))


def _builtins() -> dict[str, Callable[[], Scenario]]:
    tri = _pts((0, 0), (1, 0), (0, 1))
    return {
        "p1-curve": lambda: Scenario(
            "p1-curve", "series", family("P1", 1), ValuationSpec.at_point(CURVE_Q), max_level=6,
            expected_body=_pts((0,), (1,)), expected_function=_pl([(0,), (1,)], {(0,): 1, (1,): 0}),
            expected_jumps=(1, 0)),
        "p1-curve-p": lambda: Scenario(
            "p1-curve-p", "series", family("P1", 1), ValuationSpec.at_point(CURVE_P), max_level=6,
            expected_body=_pts((0,), (1,)), expected_function=_pl([(0,), (1,)], {(0,): 0, (1,): 1}),
            expected_jumps=(1, 0)),
        "p2-deg2": lambda: Scenario(
            "p2-deg2", "series", family("P2", 2), ValuationSpec.at_point(P0), max_level=2,
            expected_body=_pts((0, 0), (2, 0), (0, 2)),
            expected_function=_pl([(0, 0), (2, 0), (0, 2)], {(0, 0): 0, (2, 0): 2, (0, 2): 2}),
            expected_jumps=(2, 2, 2, 1, 1, 0)),
        "p2-ordP0": lambda: Scenario(
            "p2-ordP0", "series", family("P2", 1), ValuationSpec.at_point(P0), max_level=3,
            expected_body=tri, expected_function=_pl(tri, {(0, 0): 0, (1, 0): 1, (0, 1): 1}),
            expected_jumps=(1, 1, 0)),
        "p2-ordP1": lambda: Scenario(
            "p2-ordP1", "series", family("P2", 1), ValuationSpec.at_point(P1_DEFAULT), max_level=3,
            expected_body=tri, expected_function=_pl(tri, {(0, 0): 1, (1, 0): 0, (0, 1): 1}),
            expected_jumps=(1, 1, 0)),
        "blowup1": blowup1,
        "blowup1-family": lambda: Scenario(
            "blowup1-family", "scan", max_level=8,
            lambda_grid=tuple(_F(x) for x in ("0", "1/4", "1/2", "3/4"))),
        "blowup2-generic": lambda: Scenario(
            "blowup2-generic", "series", family("BlowupP2", 2, [P1_DEFAULT, P2_GENERIC], [1, 1]),
            ValuationSpec.at_point(P0), max_level=6, expected_body=_pts((0, 0), (1, 0), (0, 2))),
        "blowup2-collinear": lambda: Scenario(
            "blowup2-collinear", "series", family("BlowupP2", 2, [P1_DEFAULT, P2_COLLINEAR], [1, 1]),
            ValuationSpec.at_point(P0), max_level=6, expected_body=_pts((0, 0), (1, 1), (0, 2))),
        "disk-demo": lambda: Scenario(
            "disk-demo", "boundary", body=disk_cap(), center=_pts((0, 2))[0], max_level=10),
        "square-control": lambda: Scenario(
            "square-control", "boundary", body=convex_hull(_pts((0, 0), (1, 0), (1, 1), (0, 1))),
            center=_pts((0, 0))[0], max_level=10),
        "semigroup-gap": lambda: Scenario(
            "semigroup-gap", "semigroup", generators=((3,), (5,)), box=20,
            expected_gap=frozenset({(1,), (2,), (4,), (7,)})),
        "fekete-demo": lambda: Scenario(
            "fekete-demo", "fekete", max_level=30, sequence="floor-multiple", sequence_param=Fraction(7, 3),
            expected_bound=Fraction(7, 3)),
    }


BUILTINS = _builtins()


def builtin(name: str, lam=None) -> Scenario:
    if name not in BUILTINS:
        raise ScenarioError(f"unknown scenario {name!r}; built-ins: {', '.join(sorted(BUILTINS))}")
    if lam is not None:
        if name != "blowup1":
            raise ScenarioError("--lambda only applies to the blowup1 scenario")
        return blowup1(lam)
    return BUILTINS[name]()


# --------------------------------------------------------------------------
# INI files


def parse_valuation(text: str) -> ValuationSpec:
    """``point:X:Y:Z``, ``exceptional:i`` (1-based) or ``curve:c*a,b,c + ...``."""
    kind, _, rest = text.strip().partition(":")
    if kind == "point":
        return ValuationSpec.at_point(parse_point(rest))
    if kind == "exceptional":
        return ValuationSpec.along_exceptional(int(rest) - 1)
    if kind == "curve":
        form = {}
        for term in rest.split("+"):
            coef, _, exps = term.strip().rpartition("*")
            form[tuple(int(e) for e in exps.split(","))] = _F(coef or 1)
        return ValuationSpec.along_curve(form)
    raise ScenarioError(f"cannot parse valuation {text!r}")


def _points(text: str):
    return tuple(parse_point(p) for p in text.split(";") if p.strip())


def _fracs(text: str):
    return tuple(_F(x.strip()) for x in text.replace(";", ",").split(",") if x.strip())


def load_config(path: str) -> Scenario:
    cp = configparser.ConfigParser()
    try:
        if not cp.read(path, encoding="utf-8"):
            raise ScenarioError(f"cannot read scenario file {path}")
        sec = cp["scenario"]
    except (configparser.Error, KeyError) as e:
        raise ScenarioError(f"bad scenario file {path}: {e}") from e
    try:
        base = sec.get("base")
        lam = sec.get("lambda")
        sc = builtin(base, lam) if base else None
        if sc is None:
            if "generators" in sec:
                sc = Scenario(sec.get("name", "custom"), "semigroup")
            elif "sequence" in sec:
                sc = Scenario(sec.get("name", "custom"), "fekete")
            elif "model" not in sec:
                raise ScenarioError("a scenario file needs base, model, generators or sequence")
        if sc is None:
            F = family(sec["model"], sec.get("degree", "1"), _points(sec.get("points", "")),
                       _fracs(sec.get("multiplicities", "")),
                       tuple(int(i) for i in sec["flag"].split(",")) if "flag" in sec else None)
            sc = Scenario(sec.get("name", "custom"), "series", F, ValuationSpec.at_point(F.geometry.flag_point))
        changes: dict = {}
        if "name" in sec:
            changes["name"] = sec["name"]
        if "valuation" in sec:
            changes["valuation"] = parse_valuation(sec["valuation"])
        if "max_level" in sec:
            changes["max_level"] = int(sec["max_level"])
        if "lambda_grid" in sec:
            changes["lambda_grid"] = _fracs(sec["lambda_grid"])
        if "generators" in sec:
            gens = tuple(tuple(int(c) for c in g.split(",")) for g in sec["generators"].split(";"))
            changes.update(kind="semigroup", generators=gens, expected_gap=None)
        if "box" in sec:
            changes["box"] = int(sec["box"])
        if "sequence" in sec:
            changes.update(kind="fekete", sequence=sec["sequence"], expected_bound=None,
                           sequence_param=_F(sec["sequence_param"]) if "sequence_param" in sec else None)
        if "expected_body" in sec:
            changes["expected_body"] = tuple(_fracs(p) for p in sec["expected_body"].split(";"))
        if changes.get("valuation") or changes.get("generators") or changes.get("sequence"):
            changes.setdefault("expected_function", None)
            changes.setdefault("expected_jumps", None)
        return replace(sc, **changes)
    except (ValueError, TypeError, KeyError) as e:
        if isinstance(e, ScenarioError):
            raise
        raise ScenarioError(f"bad scenario file {path}: {e}") from e


# --------------------------------------------------------------------------
# golden checks


@dataclass(frozen=True)
class GoldenResult:
    name: str
    ok: bool
    detail: str


def same_function(f: ConcavePL, g: ConcavePL) -> bool:
    """Equality of two concave piecewise-linear functions on the same domain.

    Each is the least concave majorant of its values at its own cell
    vertices, so agreeing on all of them forces equality.
    """
    if f.domain.vertex_set() != g.domain.vertex_set():
        return False
    pts = {v for h in (f, g) for fc in h.facets for v in fc.cell}
    return all(f(p) == g(p) for p in pts)


def body_matches(sc: Scenario, K: int | None = None) -> tuple[bool, Polytope]:
    K = K or sc.max_level
    body = okounkov_body(sc.series, K).body
    return body.vertex_set() == convex_hull(sc.expected_body, body.dim).vertex_set(), body


def run_golden(sc: Scenario) -> list[GoldenResult]:
    out = []
    if sc.kind == "series":
        K = sc.max_level
        if sc.expected_body is not None:
            ok, body = body_matches(sc)
            out.append(GoldenResult(f"{sc.name}:body", ok, f"K={K} vertices={sorted(body.vertices)}"))
        if sc.expected_function is not None:
            phi = okounkov_function_envelope(sc.series, sc.valuation, K)
            out.append(GoldenResult(f"{sc.name}:function", same_function(phi, sc.expected_function()), f"K={K}"))
        if sc.expected_jumps is not None:
            prof = jumping_numbers(sc.series.level(sc.series.step), sc.valuation)
            out.append(GoldenResult(f"{sc.name}:jumps", prof.jumps == sc.expected_jumps, f"jumps={prof.jumps}"))
    elif sc.kind == "scan":
        for e in family_scan(sc.lambda_grid):
            ok = not e.flagged and all(v == cubic(e.lam) for v in e.exact.values())
            out.append(GoldenResult(f"{sc.name}:lambda={e.lam}", ok, f"values={sorted(e.exact.items()) if e.exact else e.flag}"))
    elif sc.kind == "boundary":
        rep = discontinuity_witness(sc.body, sc.center, sc.max_level)
        want = "continuity" if isinstance(sc.body, Polytope) else "discontinuity"
        out.append(GoldenResult(f"{sc.name}:{rep.kind}", rep.certified and rep.kind == want, f"probes={len(rep.probes)}"))
    elif sc.kind == "semigroup" and sc.expected_gap is not None:
        gap = gordan_gap(DiscreteSemigroup(sc.generators), sc.box)
        out.append(GoldenResult(f"{sc.name}:gap", gap == sc.expected_gap, f"gap={sorted(gap)}"))
    elif sc.kind == "fekete" and sc.expected_bound is not None:
        r = run_fekete(sc)
        out.append(GoldenResult(f"{sc.name}:bound", r.bound == sc.expected_bound, f"bound={r.bound}"))
    return out


def run_fekete(sc: Scenario):
    if sc.sequence not in SEQUENCE_LIBRARY:
        raise ScenarioError(f"unknown sequence {sc.sequence!r}; library: {', '.join(sorted(SEQUENCE_LIBRARY))}")
    make, orientation = SEQUENCE_LIBRARY[sc.sequence]
    a = make(sc.sequence_param) if sc.sequence_param is not None else make()
    return fekete_limit(a, orientation, sc.max_level)
