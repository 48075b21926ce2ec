"""Built-in verification catalog.

A fixed family of varieties and arcs with independently computable
invariants, plus the cross-checks the package promises: closed formulas
against the jet Jacobian corank, diagonalization against raw minors,
truncation compatibility, monotonicity, the birational transformation
rule on blow-up charts, the discrepancy formula at divisorial arcs, and
detection of suspected-infinite embedding dimensions.

Everything here is deterministic: randomized checks draw from fixed
seeds, and the report layout is stable, so two runs emit identical
bytes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .analysis import (
    btr_check,
    embdim_arc,
    embdim_jet,
    fiber_dim_formula,
    jet_codim,
    mather_discrepancy_check,
    oracle_check,
)
from .arcs import Arc, GenericComponent, make_arc
from .exact import BaseField, FieldElement, RATIONALS, SparsePolynomial
from .geometry import MorphismPresentation, VarietyPresentation, jacobian_ideal_generators
from .invariants import fitting_minor_oracle, profile_of_omega, refined_profile_of_omega, smith_orders
from .series import OrderValue, SeriesExpression, TruncatedSeries

_Q = RATIONALS
_ORACLE_MAX_LEVEL = 6
_TRUNCATION_MAX_LEVEL = 8
_STAB_N_MAX = 12
_FITTING_TRIALS = 200
_FITTING_SEED = 94301
_BTR_SEED = 52972
_BTR_TRIALS = 20


def _fe(field, value):
    return FieldElement.from_scalar(field, value)


def _series(field, *coeffs) -> SeriesExpression:
    return SeriesExpression(field, [_fe(field, c) for c in coeffs])


def _poly(field, text_vars, builder) -> SparsePolynomial:
    env = {v: SparsePolynomial.variable(field, v) for v in text_vars}
    return builder(env)


@dataclass(frozen=True)
class CatalogArc:
    name: str
    components: tuple
    off_singular_locus: bool


@dataclass(frozen=True)
class CatalogVariety:
    key: str
    variety: VarietyPresentation
    arcs: tuple[CatalogArc, ...]


def build_catalog() -> list[CatalogVariety]:
    """The regression family: smooth spaces, plane curves, surfaces, char p."""
    entries = []

    line = VarietyPresentation(_Q, ("x",), (), declared_dim=1, name="affine-line")
    entries.append(
        CatalogVariety(
            "affine-line",
            line,
            (
                CatalogArc("origin", (_series(_Q, 0),), True),
                CatalogArc("line", (_series(_Q, 0, 1),), True),
                CatalogArc("window", (_window_component(_Q, 1, 3),), True),
                CatalogArc("generic", (GenericComponent(1, 0),), True),
            ),
        )
    )

    plane = VarietyPresentation(_Q, ("x", "y"), (), declared_dim=2, name="affine-plane")
    entries.append(
        CatalogVariety(
            "affine-plane",
            plane,
            (
                CatalogArc("origin", (_series(_Q, 0), _series(_Q, 0)), True),
                CatalogArc("mono", (_series(_Q, 0, 1), _series(_Q, 0, 0, 1)), True),
                CatalogArc("generic", (GenericComponent(1, 0), GenericComponent(2, 0)), True),
            ),
        )
    )

    cusp = VarietyPresentation(
        _Q,
        ("x", "y"),
        (_poly(_Q, ("x", "y"), lambda e: e["y"] ** 2 - e["x"] ** 3),),
        declared_dim=1,
        name="cusp",
    )
    unit = _series(_Q, 1) + _series(_Q, 0, 1) * SeriesExpression.constant(
        _Q, FieldElement.variable(_Q, "a1")
    )
    t2 = SeriesExpression.t_power(_Q, 2)
    t3 = SeriesExpression.t_power(_Q, 3)
    entries.append(
        CatalogVariety(
            "cusp",
            cusp,
            (
                CatalogArc("main", (t2, t3), True),
                CatalogArc("unit-branch", (t2 * unit ** 2, t3 * unit ** 3), True),
            ),
        )
    )

    node = VarietyPresentation(
        _Q,
        ("x", "y"),
        (_poly(_Q, ("x", "y"), lambda e: e["y"] ** 2 - e["x"] ** 3 - e["x"] ** 2),),
        declared_dim=1,
        name="node",
    )
    entries.append(
        CatalogVariety(
            "node",
            node,
            (CatalogArc("branch", (_series(_Q, 0, 2, 1), _series(_Q, 0, 2, 3, 1)), True),),
        )
    )

    whitney = VarietyPresentation(
        _Q,
        ("x", "y", "z"),
        (_poly(_Q, ("x", "y", "z"), lambda e: e["x"] * e["y"] ** 2 - e["z"] ** 2),),
        declared_dim=2,
        name="whitney",
    )
    zero = _series(_Q, 0)
    entries.append(
        CatalogVariety(
            "whitney",
            whitney,
            (
                CatalogArc("off-axis", (_series(_Q, 1), _series(_Q, 0, 1), _series(_Q, 0, 1)), True),
                CatalogArc(
                    "through-origin",
                    (SeriesExpression.t_power(_Q, 2), _series(_Q, 0, 1), SeriesExpression.t_power(_Q, 2)),
                    True,
                ),
                CatalogArc("singular-jet", (_series(_Q, 0, 1), zero, zero), False),
                CatalogArc("singular-generic", (GenericComponent(1, 1), zero, zero), False),
            ),
        )
    )

    for k in (1, 2, 3):
        surface = VarietyPresentation(
            _Q,
            ("x", "y", "z"),
            (_poly(_Q, ("x", "y", "z"), lambda e, k=k: e["x"] * e["y"] - e["z"] ** (k + 1)),),
            declared_dim=2,
            name=f"a{k}",
        )
        arcs = [
            CatalogArc(
                "diag",
                (
                    SeriesExpression.t_power(_Q, 1),
                    SeriesExpression.t_power(_Q, k),
                    SeriesExpression.t_power(_Q, 1),
                ),
                True,
            )
        ]
        if k == 2:
            arcs.append(
                CatalogArc(
                    "fat",
                    (
                        SeriesExpression.t_power(_Q, 3),
                        SeriesExpression.t_power(_Q, 3),
                        SeriesExpression.t_power(_Q, 2),
                    ),
                    True,
                )
            )
        entries.append(CatalogVariety(f"a{k}", surface, tuple(arcs)))

    for p in (2, 3):
        field = BaseField(p)
        umbrella = VarietyPresentation(
            field,
            ("x", "y", "z"),
            (
                _poly(
                    field,
                    ("x", "y", "z"),
                    lambda e, p=p: e["x"] * e["y"] ** p - e["z"] ** p,
                ),
            ),
            declared_dim=2,
            name=f"umbrella{p}",
        )
        zero_p = SeriesExpression.constant(field, 0)
        entries.append(
            CatalogVariety(
                f"umbrella{p}",
                umbrella,
                (
                    CatalogArc(
                        "off",
                        (
                            SeriesExpression.t_power(field, p),
                            SeriesExpression.t_power(field, 1),
                            SeriesExpression.t_power(field, 2),
                        ),
                        True,
                    ),
                    CatalogArc("singular-jet", (SeriesExpression.t_power(field, 1), zero_p, zero_p), False),
                ),
            )
        )

    return entries


def _window_component(field, index, width) -> SeriesExpression:
    coeffs = [FieldElement.variable(field, f"w{index}_{p}") for p in range(width)]
    return SeriesExpression(field, coeffs)


def blow_up_chart(dim: int) -> MorphismPresentation:
    """Chart of the blow-up of the origin of affine dim-space."""
    if dim < 2:
        raise ValueError("blow-up chart needs dimension >= 2")
    src_vars = tuple(f"y{i}" for i in range(1, dim + 1))
    tgt_vars = tuple(f"x{i}" for i in range(1, dim + 1))
    source = VarietyPresentation(_Q, src_vars, (), declared_dim=dim, name=f"chart{dim}")
    target = VarietyPresentation(_Q, tgt_vars, (), declared_dim=dim, name=f"space{dim}")
    first = SparsePolynomial.variable(_Q, src_vars[0])
    components = [first]
    for v in src_vars[1:]:
        components.append(first * SparsePolynomial.variable(_Q, v))
    return MorphismPresentation(source, target, tuple(components), name=f"blowup{dim}")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    details: dict

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "details": self.details,
        }


def _order_values_match(a: OrderValue, b: OrderValue) -> bool:
    if a.is_finite != b.is_finite:
        return False
    return (not a.is_finite) or a.value == b.value


def check_oracle_equivalence(catalog=None) -> CheckResult:
    """Fiber-dimension formula vs. jet Jacobian corank, levels 0..6."""
    catalog = catalog or build_catalog()
    failures = []
    values = {}
    cases = 0
    for entry in catalog:
        for arc_spec in entry.arcs:
            arc = make_arc(entry.variety, arc_spec.components, 16)
            row = []
            for n in range(_ORACLE_MAX_LEVEL + 1):
                result = oracle_check(arc, n, cap=64)
                cases += 1
                row.append(result.formula_value)
                if not result.match:
                    failures.append(
                        {
                            "variety": entry.key,
                            "arc": arc_spec.name,
                            "level": n,
                            "formula": result.formula_value,
                            "corank": result.corank,
                        }
                    )
            values[f"{entry.key}/{arc_spec.name}"] = row
    return CheckResult(
        "oracle-equivalence",
        not failures,
        cases,
        {"fiber_dims": values, "failures": failures},
    )


def check_cusp_numbers() -> CheckResult:
    """Pinned invariants of the cuspidal arc (t^2, t^3)."""
    catalog = {e.key: e for e in build_catalog()}
    entry = catalog["cusp"]
    arc = make_arc(entry.variety, entry.arcs[0].components, 16)
    profile, arc = refined_profile_of_omega(arc)
    jac_gens = jacobian_ideal_generators(entry.variety, 1)
    ord_jac = arc.ord_ideal(jac_gens)
    fiber = fiber_dim_formula(arc, 3)
    corank3 = oracle_check(arc, 3).corank
    emb = embdim_jet(arc, 3)
    got = {
        "free_rank": profile.betti,
        "factors": list(profile.factors),
        "ord_jacobian_ideal": ord_jac.to_json(),
        "ord_jacobian_via_fitting": profile.fitting_invariant(1).to_json(),
        "fiber_dim_n3": fiber.value,
        "jet_jacobian_corank_n3": corank3,
        "embdim_jet_n3": emb.value,
    }
    passed = (
        profile.betti == 1
        and list(profile.factors) == [3]
        and ord_jac == OrderValue.finite(3)
        and profile.fitting_invariant(1) == OrderValue.finite(3)
        and fiber.value == 7
        and corank3 == 7
        and emb.value == 7
    )
    return CheckResult("cusp-numbers", passed, 7, got)


def _random_series_matrix(rng: random.Random, precision: int):
    rows = rng.randint(1, 4)
    cols = rng.randint(1, 4)
    matrix = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            coeffs = []
            for _ in range(6):
                if rng.random() < 0.45:
                    coeffs.append(_fe(_Q, 0))
                else:
                    coeffs.append(_fe(_Q, Fraction(rng.randint(-9, 9))))
            row.append(TruncatedSeries.from_coefficients(_Q, coeffs, precision))
        matrix.append(row)
    return matrix, cols


def check_fitting_oracle(trials: int = _FITTING_TRIALS) -> CheckResult:
    """Diagonalization-based Fitting orders vs. raw minors, random matrices."""
    rng = random.Random(_FITTING_SEED)
    failures = []
    cases = 0
    for trial in range(trials):
        matrix, cols = _random_series_matrix(rng, 24)
        profile = smith_orders(matrix, cols)
        for i in range(cols + 1):
            cases += 1
            smith_c = profile.fitting_invariant(i)
            minor_c = fitting_minor_oracle(matrix, i, num_columns=cols)
            if not _order_values_match(smith_c, minor_c):
                failures.append(
                    {
                        "trial": trial,
                        "index": i,
                        "smith": smith_c.to_json(),
                        "minors": minor_c.to_json(),
                    }
                )
    return CheckResult(
        "fitting-oracle", not failures, cases, {"trials": trials, "failures": failures}
    )


def check_truncation_compatibility(catalog=None) -> CheckResult:
    """e_i at level n equals min(n+1, e_i at level m) for n < m <= 8."""
    catalog = catalog or build_catalog()
    failures = []
    cases = 0
    for entry in catalog:
        width = len(entry.variety.variables)
        for arc_spec in entry.arcs:
            arc = make_arc(entry.variety, arc_spec.components, _TRUNCATION_MAX_LEVEL + 2)
            profiles = [
                profile_of_omega(arc, n) for n in range(_TRUNCATION_MAX_LEVEL + 1)
            ]
            for m in range(1, _TRUNCATION_MAX_LEVEL + 1):
                for n in range(m):
                    for i in range(width + 1):
                        cases += 1
                        e_n = profiles[n].invariant_factor(i).value
                        e_m = profiles[m].invariant_factor(i).value
                        if e_n != min(n + 1, e_m):
                            failures.append(
                                {
                                    "variety": entry.key,
                                    "arc": arc_spec.name,
                                    "n": n,
                                    "m": m,
                                    "i": i,
                                    "e_n": e_n,
                                    "e_m": e_m,
                                }
                            )
    return CheckResult(
        "truncation-compatibility", not failures, cases, {"failures": failures}
    )


def check_betti_monotonicity(catalog=None) -> CheckResult:
    """Level-n free rank never increases with n."""
    catalog = catalog or build_catalog()
    failures = []
    cases = 0
    for entry in catalog:
        for arc_spec in entry.arcs:
            arc = make_arc(entry.variety, arc_spec.components, _TRUNCATION_MAX_LEVEL + 2)
            previous = None
            for n in range(_TRUNCATION_MAX_LEVEL + 1):
                betti = profile_of_omega(arc, n).betti
                cases += 1
                if previous is not None and betti > previous:
                    failures.append(
                        {"variety": entry.key, "arc": arc_spec.name, "level": n}
                    )
                previous = betti
    return CheckResult("betti-monotonicity", not failures, cases, {"failures": failures})


def check_codim_monotonicity(catalog=None) -> CheckResult:
    """s_n sequences are non-decreasing and bounded below by D - dim(center)."""
    catalog = catalog or build_catalog()
    failures = []
    sequences = {}
    cases = 0
    for entry in catalog:
        for arc_spec in entry.arcs:
            arc = make_arc(entry.variety, arc_spec.components, _STAB_N_MAX + 4)
            report = embdim_arc(arc, n_max=_STAB_N_MAX, cap=96)
            seq = report.codim_sequence()
            sequences[f"{entry.key}/{arc_spec.name}"] = seq
            bound = report.ambient_rank - report.rows[0].residue_dim
            for a, b in zip(seq, seq[1:]):
                cases += 1
                if b < a:
                    failures.append({"variety": entry.key, "arc": arc_spec.name})
            for s in seq:
                cases += 1
                if s < bound:
                    failures.append(
                        {"variety": entry.key, "arc": arc_spec.name, "bound": bound}
                    )
    return CheckResult(
        "codim-monotonicity", not failures, cases, {"sequences": sequences, "failures": failures}
    )


def _random_chart_arc(rng: random.Random, chart: MorphismPresentation, precision: int) -> Arc:
    comps = []
    for index in range(len(chart.source.variables)):
        kind = rng.choice(("generic", "generic", "poly", "constant"))
        if kind == "generic":
            comps.append(GenericComponent(index + 1, rng.randint(0, 3)))
        elif kind == "poly":
            degree = rng.randint(1, 4)
            coeffs = [Fraction(rng.randint(-4, 4)) for _ in range(degree + 1)]
            if all(c == 0 for c in coeffs):
                coeffs[degree] = Fraction(1)
            comps.append(_series(_Q, *coeffs))
        else:
            comps.append(_series(_Q, rng.randint(-3, 3)))
    return make_arc(chart.source, comps, precision)


def check_btr(trials: int = _BTR_TRIALS) -> CheckResult:
    """Birational transformation rule on blow-up charts, randomized arcs."""
    rng = random.Random(_BTR_SEED)
    failures = []
    cases = 0
    summary = []
    for dim in (2, 3):
        chart = blow_up_chart(dim)
        for trial in range(trials):
            beta = _random_chart_arc(rng, chart, 16)
            report = btr_check(chart, beta, n_max=_STAB_N_MAX, cap=96)
            cases += 1
            ok = report.inequalities_hold and report.smooth_at_center
            if report.equality_holds is not None:
                ok = ok and report.equality_holds
            if not ok:
                failures.append(
                    {
                        "chart": chart.name,
                        "trial": trial,
                        "ord_jacobian": report.ord_jacobian.to_json(),
                        "source": report.source.verdict(),
                        "target": report.target.verdict(),
                    }
                )
            summary.append(
                {
                    "chart": chart.name,
                    "trial": trial,
                    "ord_jacobian": report.ord_jacobian.to_json(),
                    "source": report.source.verdict(),
                    "target": report.target.verdict(),
                }
            )
    return CheckResult("btr", not failures, cases, {"runs": summary, "failures": failures})


def check_mather() -> CheckResult:
    """Discrepancy formula at maximal divisorial arcs of blow-up charts."""
    failures = []
    runs = []
    cases = 0
    for dim, q_range in ((2, (1, 2, 3, 4)), (3, (1, 2))):
        chart = blow_up_chart(dim)
        for q in q_range:
            report = mather_discrepancy_check(
                chart, chart.source.variables[0], q, precision=20, cap=96
            )
            cases += 1
            runs.append(
                {
                    "chart": chart.name,
                    "q": q,
                    "mather_discrepancy": report.mather_discrepancy,
                    "expected_embdim": report.expected_embdim,
                    "target": report.target.verdict(),
                    "dim_bound_holds": report.dim_bound_holds,
                }
            )
            expected = q * dim  # discrepancy of the origin blow-up is dim - 1
            ok = (
                report.passed
                and report.mather_discrepancy == dim - 1
                and report.expected_embdim == expected
                and report.dim_bound_holds is True
            )
            if not ok:
                failures.append({"chart": chart.name, "q": q})
    return CheckResult("mather-discrepancy", not failures, cases, {"runs": runs, "failures": failures})


def check_infinite_detection() -> CheckResult:
    """Arcs with suspected infinite embedding dimension keep growing."""
    catalog = {e.key: e for e in build_catalog()}
    targets = [
        ("whitney", "singular-generic"),
        ("cusp", "main"),
    ]
    failures = []
    runs = []
    cases = 0
    for vkey, arc_name in targets:
        entry = catalog[vkey]
        arc_spec = next(a for a in entry.arcs if a.name == arc_name)
        arc = make_arc(entry.variety, arc_spec.components, _STAB_N_MAX + 4)
        report = embdim_arc(arc, n_max=_STAB_N_MAX, cap=96)
        seq = report.codim_sequence()
        strictly_increasing = all(b > a for a, b in zip(seq, seq[1:]))
        cases += 1
        runs.append(
            {
                "variety": vkey,
                "arc": arc_name,
                "verdict": report.verdict(),
                "sequence": seq,
            }
        )
        if report.stabilized or not strictly_increasing:
            failures.append({"variety": vkey, "arc": arc_name, "sequence": seq})
    return CheckResult(
        "infinite-detection", not failures, cases, {"runs": runs, "failures": failures}
    )


def check_embdim_equals_jet_codim(catalog=None) -> CheckResult:
    """Embedding dimension agrees with jet codimension off the singular arcs."""
    catalog = catalog or build_catalog()
    failures = []
    cases = 0
    for entry in catalog:
        for arc_spec in entry.arcs:
            if not arc_spec.off_singular_locus:
                continue
            arc = make_arc(entry.variety, arc_spec.components, _STAB_N_MAX + 4)
            emb = embdim_arc(arc, n_max=_STAB_N_MAX, cap=96)
            by_betti = jet_codim(arc, "betti", n_max=_STAB_N_MAX, cap=96)
            by_declared = jet_codim(arc, "declared", n_max=_STAB_N_MAX, cap=96)
            for other in (by_betti, by_declared):
                cases += 1
                same = (
                    emb.stabilized == other.stabilized
                    and emb.value == other.value
                    and emb.codim_sequence() == other.codim_sequence()
                )
                if not same:
                    failures.append(
                        {
                            "variety": entry.key,
                            "arc": arc_spec.name,
                            "dim_source": other.dim_source,
                            "embdim": emb.codim_sequence(),
                            "jet_codim": other.codim_sequence(),
                        }
                    )
    return CheckResult(
        "embdim-equals-jet-codim", not failures, cases, {"failures": failures}
    )


_ALL_CHECKS: tuple[tuple[str, Callable[[], CheckResult]], ...] = (
    ("oracle-equivalence", check_oracle_equivalence),
    ("cusp-numbers", check_cusp_numbers),
    ("fitting-oracle", check_fitting_oracle),
    ("truncation-compatibility", check_truncation_compatibility),
    ("betti-monotonicity", check_betti_monotonicity),
    ("codim-monotonicity", check_codim_monotonicity),
    ("btr", check_btr),
    ("mather-discrepancy", check_mather),
    ("infinite-detection", check_infinite_detection),
    ("embdim-equals-jet-codim", check_embdim_equals_jet_codim),
)


@dataclass(frozen=True)
class CatalogReport:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self):
        return {
            "passed": self.passed,
            "checks": [r.to_json() for r in self.results],
        }


def run_catalog() -> CatalogReport:
    return CatalogReport(tuple(check() for _, check in _ALL_CHECKS))
