# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.06.09
# Copyright (C) 2025 HRDAG https://hrdag.org
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along
# with this program; if not, see <https://www.gnu.org/licenses/>.
#
# ------
# hvmod/src/hvmod/validator.py

"""Acceptance suites run by `hvmod verify`."""

import logging
import random
from collections.abc import Callable
from functools import cache
from itertools import combinations

from .catalog import (
    CatalogEntry,
    catalog,
    gysin_model,
    parse_representation,
)
from .classify import (
    SigmaNClass,
    check_resolution,
    classify_f2_plus_sigma,
    classify_sigma_n,
    enumerate_sigma_n,
    search_j2,
    search_sigma_n,
    serre_containment,
    solve_j2,
    sq_tables,
)
from .f2lin import F2Matrix, GradedModule
from .f2lin import rank as matrix_rank
from .functors import (
    fix_z2,
    induced_bar,
    quotient_E,
    smith_sequence,
    tensor_with_HV,
    tor1,
)
from .hv import LinearForm
from .steenrod import (
    adem_normalize,
    brown_gitler,
    format_steenrod,
    free_unstable,
    parse_steenrod,
)
from .types import (
    DEFAULT_BUDGET,
    DEFAULT_SEED,
    CheckResult,
    ClassificationError,
    SuiteResult,
    Verdict,
)
from .umod import (
    FreeElement,
    Generator,
    GradedMap,
    Presentation,
    apply_monomial,
    check_axioms,
    is_hfree,
    is_isomorphic_bounded,
    is_nilpotent,
    is_reduced,
    materialize,
)

logger = logging.getLogger(__name__)

Suite = Callable[[int, int, int | None], SuiteResult]

# (name, args) for every catalog entry, with the arguments it is checked at
INSTANCES: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("hv", ()), ("hv", ("2",)), ("sigma-h", ()), ("tH", ()),
    ("h-geq-1", ()), ("jv1", ()), ("h-leq-1", ()), ("f2", ()),
    ("sigma-t-h", ()), ("h-plus-sigma-h", ()), ("j2", ()),
    ("j2-tensor", ()), ("j2-exotic", ()), ("rp2", ("3", "0")),
    ("rp2", ("2", "1")), ("rp2", ("1", "2")), ("f2-poly-c2", ()),
    ("bsu2-a", ()), ("bsu2-b", ()), ("gysin", ("t",)),
    ("gysin", ("t,0",)), ("gysin", ("t1,t2",)),
)


def check(name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, passed, detail)


def _describe(verdict: Verdict) -> str:
    if verdict.witness is not None:
        return f"{verdict.status}: {verdict.witness.condition}"
    return verdict.status


def _holds(name: str, verdict: Verdict) -> CheckResult:
    return check(name, verdict.holds, _describe(verdict))


def _fails(name: str, verdict: Verdict) -> CheckResult:
    return check(name, verdict.status == "fails", _describe(verdict))


def _instances(max_degree: int) -> list[CatalogEntry]:
    return [catalog(name, *args, max_degree=max_degree)
            for name, args in INSTANCES]


def _label(entry: CatalogEntry) -> str:
    return " ".join((entry.name,) + entry.args)


def _random_word(rng: random.Random, max_degree: int) -> tuple[int, ...]:
    word: list[int] = []
    while True:
        i = rng.randint(1, max_degree)
        if sum(word) + i > max_degree:
            return tuple(word)
        word.append(i)
        if rng.random() < 0.4:
            return tuple(word)


def suite_steenrod(seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET,
                   max_degree: int | None = None) -> SuiteResult:
    top = max_degree or 16
    checks = [
        check("Sq1 Sq1 = 0", parse_steenrod("Sq1 Sq1").is_zero()),
        check("Sq2 Sq2 = Sq3 Sq1",
              format_steenrod(parse_steenrod("Sq2 Sq2")) == "Sq3 Sq1"),
        check("Sq1 Sq2 = Sq3",
              format_steenrod(parse_steenrod("Sq1 Sq2")) == "Sq3"),
    ]
    rng = random.Random(seed)
    broken = 0
    for _ in range(1000):
        a, b, c = (adem_normalize([_random_word(rng, 4)]) for _ in range(3))
        left, right = (a * b) * c, a * (b * c)
        again = adem_normalize(left.sorted_monomials())
        if left != right or again != left:
            broken += 1
    checks.append(check("normal form is associative and idempotent on 1000 "
                        "random triples", broken == 0, f"{broken} broken"))
    f1 = {n: d for n, d in free_unstable(1, 9).dims().items() if d}
    checks.append(check("F(1) has dimension 1 in degrees 1, 2, 4, 8",
                        f1 == {1: 1, 2: 1, 4: 1, 8: 1}, str(f1)))
    j2 = brown_gitler(2, top)
    checks.append(check("J(2) has dims {1: 1, 2: 1}",
                        j2.space.nonzero_dims() == {1: 1, 2: 1},
                        str(j2.space.nonzero_dims())))
    checks.append(_holds("J(2) is the Sq1-isomorphism model",
                         is_isomorphic_bounded(
                             j2, catalog("j2").presentation, top,
                             budget).verdict))
    for n in range(7):
        checks.append(_holds(f"J({n}) is unstable and satisfies Adem",
                             check_axioms(brown_gitler(n, top))))
    return SuiteResult("steenrod", tuple(checks))


def _classify_back(cls: SigmaNClass, max_degree: int,
                   budget: int) -> CheckResult:
    try:
        found = classify_sigma_n(cls.presentation(), max_degree, budget)
    except ClassificationError as exc:
        return check(f"{cls} classifies back", False, str(exc))
    return check(f"{cls} classifies back", found == cls, str(found))


def suite_sigma_r1(seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET,
                   max_degree: int | None = None) -> SuiteResult:
    top = max_degree or 12
    checks = []
    for n in range(4):
        buckets = search_sigma_n(n, 1, top, budget)
        expected = enumerate_sigma_n(n, 1)
        labels = sorted(b.label for b in buckets)
        checks.append(check(f"n={n}: {n + 1} classes by brute force",
                            len(buckets) == n + 1, ", ".join(labels)))
        checks.append(check(f"n={n}: brute force matches the enumerator",
                            labels == sorted(str(c) for c in expected)))
        checks += [_classify_back(c, top, budget) for c in expected]
    return SuiteResult("sigma-r1", tuple(checks))


def suite_sigma_r2(seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET,
                   max_degree: int | None = None) -> SuiteResult:
    top = max_degree or 12
    classes = enumerate_sigma_n(1, 2)
    checks = [check("n=1, r=2: 4 classes", len(classes) == 4,
                    ", ".join(str(c) for c in classes))]
    for a, b in combinations(classes, 2):
        checks.append(_fails(f"{a} is not {b}", is_isomorphic_bounded(
            a.presentation(), b.presentation(), top, budget).verdict))
    buckets = search_sigma_n(1, 2, top, budget)
    checks.append(check("brute force finds 4 classes", len(buckets) == 4,
                        ", ".join(b.label for b in buckets)))
    for n in range(3):
        for cls in enumerate_sigma_n(n, 2):
            checks.append(_classify_back(cls, top, budget))
            checks.append(_holds(f"c_V^a H*V inside {cls}",
                                 serre_containment(cls, top)))
    return SuiteResult("sigma-r2", tuple(checks))


def _fix_matches(fix: GradedModule, model: "GradedModule | Presentation",
                 budget: int) -> Verdict:
    return is_isomorphic_bounded(fix, model, fix.top, budget).verdict


def suite_j2(seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET,
             max_degree: int | None = None) -> SuiteResult:
    top = max_degree or 8
    buckets = search_j2(top, budget)
    labels = sorted(b.label for b in buckets)
    checks = [check("exactly 2 classes", len(buckets) == 2, str(labels)),
              check("the classes are tensor and exotic",
                    labels == ["exotic", "tensor"])]
    for b in buckets:
        totals = {fix_z2(p, top).space.total_dim for p in b.members}
        checks.append(check(f"{b.label}: every member has Fix of total "
                            "dimension 2", totals == {2}, str(totals)))
    j2 = catalog("j2").presentation
    tensor_fix = fix_z2(catalog("j2-tensor").presentation, top)
    exotic_fix = fix_z2(catalog("j2-exotic").presentation, top)
    checks.append(_holds("Fix of j2-tensor is J(2)",
                         _fix_matches(tensor_fix, j2, budget)))
    checks.append(check("Fix of j2-exotic is F2 + ΣF2",
                        exotic_fix.space.nonzero_dims() == {0: 1, 1: 1},
                        str(exotic_fix.space.nonzero_dims())))
    return SuiteResult("j2", tuple(checks))


def suite_smith(seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET,
                max_degree: int | None = None) -> SuiteResult:
    top = max_degree or 16
    tensor = smith_sequence(catalog("j2-tensor").presentation, top)
    exotic = smith_sequence(catalog("j2-exotic").presentation, top)
    cut = exotic.certified_degree
    return SuiteResult("smith", (
        check("j2-tensor: C = 0", tensor.cokernel.is_zero(),
              str(tensor.cokernel.space.nonzero_dims())),
        _holds("j2-tensor: eta is injective", tensor.eta_injective),
        _holds("j2-exotic: eta is injective", exotic.eta_injective),
        _holds("j2-exotic: C is H^{<=1}", is_isomorphic_bounded(
            exotic.cokernel, catalog("h-leq-1").presentation, cut,
            budget).verdict),
        check("j2-exotic: tauC = ΣF2",
              exotic.trivial_part.space.nonzero_dims() == {1: 1},
              str(exotic.trivial_part.space.nonzero_dims())),
        _holds(f"j2-exotic: four-term sequence exact to degree {cut}",
               exotic.four_term_exact),
    ))


def suite_rp2(seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET,
              max_degree: int | None = None) -> SuiteResult:
    expected = {(3, 0): "tensor", (2, 1): "exotic", (1, 2): "exotic"}
    truncations = (max_degree,) if max_degree else (8, 16)
    j2 = catalog("j2").presentation
    checks = []
    for (i, j), tag in expected.items():
        p = catalog("rp2", str(i), str(j)).presentation
        for top in truncations:
            label = f"rp2 {i} {j} at N={top}"
            checks.append(_holds(f"{label}: free over H",
                                 is_hfree(p, top)))
            bar = quotient_E(p, top)
            checks.append(check(f"{label}: rank 2",
                                bar.space.total_dim == 2))
            checks.append(_holds(f"{label}: E-bar is J(2)",
                                 is_isomorphic_bounded(
                                     bar, j2, top, budget).verdict))
            try:
                found = solve_j2(p, top, budget)
            except ClassificationError as exc:
                checks.append(check(f"{label}: {tag}", False, str(exc)))
                continue
            checks.append(check(f"{label}: {tag}", found == tag, found))
    return SuiteResult("rp2", tuple(checks))


def suite_fix(seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET,
              max_degree: int | None = None) -> SuiteResult:
    top = max_degree or 16
    checks = []
    for n in range(3):
        m = brown_gitler(n, n)
        fix = fix_z2(tensor_with_HV(m), top)
        checks.append(check(
            f"Fix(H (x) J({n})) has the dims of J({n})",
            fix.space.nonzero_dims() == m.space.nonzero_dims(),
            str(fix.space.nonzero_dims())))
        checks.append(_holds(f"Fix(H (x) J({n})) is J({n})",
                             _fix_matches(fix, m, budget)))
    for entry in _instances(top):
        p = entry.presentation
        if p.rank != 1 or not is_hfree(p, top).holds:
            continue
        bar = quotient_E(p, top)
        if max(bar.space.nonzero_dims(), default=0) > top // 2:
            continue
        total = fix_z2(p, top).space.total_dim
        checks.append(check(f"{_label(entry)}: dim Fix = dim E-bar",
                            total == bar.space.total_dim,
                            f"{total} vs {bar.space.total_dim}"))
    sigma_t = fix_z2(catalog("sigma-t-h").presentation, top)
    checks.append(check("Fix(ΣtH) = ΣF2",
                        sigma_t.space.nonzero_dims() == {1: 1},
                        str(sigma_t.space.nonzero_dims())))
    return SuiteResult("fix", tuple(checks))


@cache
def _free_pool(max_degree: int) -> tuple[Presentation, ...]:
    """Valid rank-1 free presentations on at most two small generators."""
    shapes = [(d,) for d in range(4)]
    shapes += [(a, b) for a in range(3) for b in range(a, 3)]
    pool = []
    for shape in shapes:
        gens = tuple(Generator(f"g{k + 1}", d) for k, d in enumerate(shape))
        for table in sq_tables(1, gens):
            p = Presentation(1, gens, table, name=f"pool-{len(pool)}")
            if check_axioms(materialize(p, max_degree).module).holds:
                pool.append(p)
    logger.debug("random pool: %d valid presentations", len(pool))
    return tuple(pool)


def random_map(rng: random.Random, source: Presentation,
               target: Presentation, max_degree: int,
               tries: int = 20) -> GradedMap:
    """A linear map from a plain free presentation, images drawn at random.

    Falls back to the zero map when no draw commutes with the squares.
    """
    src = materialize(source, max_degree)
    tgt = materialize(target, max_degree).module
    for attempt in range(tries + 1):
        images = [rng.randrange(1 << tgt.dim(g.degree)) if attempt < tries
                  else 0 for g in source.generators]
        matrices = {}
        for n in src.module.degrees():
            cols = [apply_monomial(tgt, mono, source.generators[k].degree,
                                   images[k])
                    for k, mono in src.basis[n]]
            matrices[n] = F2Matrix.from_columns(cols, tgt.dim(n))
        f = GradedMap(src.module, tgt, matrices)
        if f.check_linear() is None:
            return f
    raise AssertionError("the zero map is always linear")


def _bar_injective_to(bar: dict[int, F2Matrix], top: int) -> bool:
    return all(matrix_rank(bar[n]) == bar[n].ncols
               for n in bar if n <= top)


def suite_lemmas(seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET,
                 max_degree: int | None = None) -> SuiteResult:
    top = max_degree or 10
    half = top // 2
    rng = random.Random(seed)
    pool = _free_pool(top)
    first = second = 0
    first_bad: list[str] = []
    second_bad: list[str] = []
    for _ in range(100):
        source, target = rng.choice(pool), rng.choice(pool)
        f = random_map(rng, source, target, top)
        bar = induced_bar(f)
        if _bar_injective_to(bar, half):
            first += 1
            if not f.is_injective(half):
                first_bad.append(f"{source.name} -> {target.name}")
        if (f.is_injective()
                and is_reduced(quotient_E(f.source), top).holds):
            second += 1
            if not _bar_injective_to(bar, half):
                second_bad.append(f"{source.name} -> {target.name}")
    checks = [
        check("injective on E-bar implies injective", not first_bad,
              f"{first} instances met the hypothesis; failures: "
              f"{first_bad}"),
        check("injective with reduced E-bar implies injective on E-bar",
              not second_bad, f"{second} instances met the hypothesis; "
              f"failures: {second_bad}"),
    ]
    for entry in _instances(16):
        result = tor1(entry.presentation)
        if result.module is None:
            continue
        checks.append(_holds(f"Tor1({_label(entry)}) is nilpotent",
                             is_nilpotent(result.module)))
    return SuiteResult("lemmas", tuple(checks))


def suite_reduced(seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET,
                  max_degree: int | None = None) -> SuiteResult:
    top = max_degree or 16
    jv1 = catalog("jv1").presentation
    hgeq = catalog("h-geq-1").presentation
    checks = [
        _fails("jv1 is not reduced", is_reduced(jv1, top)),
        _holds("E-bar of jv1 is reduced", is_reduced(quotient_E(jv1, top))),
        _fails("jv1 is not free over H", is_hfree(jv1, top)),
        _holds("h-geq-1 is reduced", is_reduced(hgeq, top)),
        _holds("E-bar of h-geq-1 is nilpotent",
               is_nilpotent(quotient_E(hgeq, top))),
    ]
    for entry in _instances(top):
        p = entry.presentation
        if not is_hfree(p, top).holds:
            continue
        if not is_reduced(quotient_E(p, top)).holds:
            continue
        checks.append(_holds(f"{_label(entry)}: free with reduced E-bar "
                             "is reduced", is_reduced(p, top)))
    return SuiteResult("reduced", tuple(checks))


def h_as_a_module(top: int) -> Presentation:
    """H*(Z/2) as a plain A-module, cut off above ``top``."""
    gens = tuple(Generator(f"x{k}", k) for k in range(top + 1))
    table = []
    for k in range(1, top + 1):
        for i in range(1, min(k, top - k) + 1):
            if (k & i) == i:
                table.append((k, i, FreeElement(frozenset({(k + i, ())}))))
    return Presentation(0, gens, tuple(table), name="H")


def suite_bsu2(seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET,
               max_degree: int | None = None) -> SuiteResult:
    top = max_degree or 12
    a = catalog("bsu2-a", max_degree=top).presentation
    b = catalog("bsu2-b", max_degree=top).presentation
    poly = catalog("f2-poly-c2", max_degree=top).presentation
    checks = []
    for p in (a, b):
        checks.append(_holds(f"{p.name} is free over H", is_hfree(p, top)))
        checks.append(_holds(f"E-bar of {p.name} is F2[c2]",
                             is_isomorphic_bounded(quotient_E(p, top), poly,
                                                   top, budget).verdict))
    checks.append(_fails("bsu2-a is not bsu2-b",
                         is_isomorphic_bounded(a, b, top, budget).verdict))
    zero = Presentation(1, (), name="0")
    f2 = tensor_with_HV(brown_gitler(0, 0), name="H (x) F2")
    checks.append(_holds("injective E-bar = F2: H resolves as H (x) F2",
                         check_resolution(catalog("hv").presentation, f2,
                                          zero, None, top, budget=budget)))
    small = min(top, 6)
    hh = tensor_with_HV(h_as_a_module(small), name="H (x) H")
    checks.append(_holds("injective E-bar = H: H (x) H resolves as itself",
                         check_resolution(hh, hh, zero, None, small,
                                          budget=budget)))
    checks.append(_fails("jv1 is not H (x) F2",
                         check_resolution(catalog("jv1").presentation, f2,
                                          zero, None, top, budget=budget)))
    phi = smith_sequence(b, top).cokernel_map
    checks.append(_holds("bsu2-b resolves as H (x) Fix E -> C",
                         check_resolution(b, phi.source, phi.target, phi,
                                          phi.top, budget=budget)))
    checks.append(_fails("bsu2-a is not the kernel of the bsu2-b map",
                         check_resolution(a, phi.source, phi.target, phi,
                                          phi.top, budget=budget)))
    return SuiteResult("bsu2", tuple(checks))


def suite_gysin(seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET,
                max_degree: int | None = None) -> SuiteResult:
    top = max_degree or 12
    t, t1, t2 = LinearForm((1,)), LinearForm((1, 0)), LinearForm((0, 1))
    cases = [
        ("t", SigmaNClass(0, ((t, 1),), 1), False),
        ("t,0", SigmaNClass(1, ((t, 1),), 1), True),
        ("t1,t2", SigmaNClass(0, ((t1, 1), (t2, 1)), 2), False),
    ]
    checks = []
    for chars, expected, split in cases:
        entry = gysin_model(parse_representation(chars))
        try:
            if split:
                found = classify_f2_plus_sigma(entry.presentation, top,
                                               budget).sigma
            else:
                found = classify_sigma_n(entry.presentation, top, budget)
        except ClassificationError as exc:
            checks.append(check(f"gysin {chars}", False, str(exc)))
            continue
        checks.append(check(f"gysin {chars} is {expected}",
                            found == expected, str(found)))
        checks.append(check(f"gysin {chars} is enumerated",
                            expected in enumerate_sigma_n(expected.n,
                                                          expected.rank)))
    return SuiteResult("gysin", tuple(checks))


SUITES: dict[str, Suite] = {
    "steenrod": suite_steenrod,
    "sigma-r1": suite_sigma_r1,
    "sigma-r2": suite_sigma_r2,
    "j2": suite_j2,
    "smith": suite_smith,
    "rp2": suite_rp2,
    "fix": suite_fix,
    "lemmas": suite_lemmas,
    "reduced": suite_reduced,
    "bsu2": suite_bsu2,
    "gysin": suite_gysin,
}


def run_suite(name: str, seed: int = DEFAULT_SEED,
              budget: int = DEFAULT_BUDGET,
              max_degree: int | None = None) -> list[SuiteResult]:
    """Run one suite, or every suite for ``all``."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(f"unknown suite {name!r}; known: all, "
                       f"{', '.join(SUITES)}")
    results = []
    for suite in names:
        logger.debug("running suite %s", suite)
        results.append(SUITES[suite](seed, budget, max_degree))
    return results
