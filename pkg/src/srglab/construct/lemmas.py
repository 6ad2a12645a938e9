"""Enumeration checks of the algebraic facts behind the orbit constructions.

Each check fills a LemmaReport with failures instead of raising, so a run
over several lemmas always completes.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Any

import numpy as np
import pandas as pd

from srglab.config import DEFAULT_CONFIG, Config
from srglab.construct.groups import (
    GroupElementK,
    alternating_matrices,
    g_elements,
    g_generators,
    is_form_preserved,
    k_generators,
    l_generators,
)
from srglab.exceptions import UnsupportedParameters
from srglab.geometry import Family, FormModel, HermitianSpaceSpec, canonical_form, prime_power
from srglab.geometry.matrix import all_vectors, fmatmul, fmul, fsum
from srglab.gf import field_create

logger = logging.getLogger(__name__)

LEMMAS = ("A_eq_B", "nonvanishing", "K_closure", "L_closure", "G_closure", "T_translation")

DEFAULT_PARAMS: dict[str, dict[str, int]] = {
    "A_eq_B": {"q": 2, "r": 3},
    "nonvanishing": {"q": 4},
    "K_closure": {"q": 5, "r": 2},
    "L_closure": {"q": 2, "r": 3},
    "G_closure": {"q": 2, "r": 3},
    "T_translation": {"q": 5, "r": 2},
}


@dataclass
class LemmaFailure:
    check_name: str
    case: str
    message: str


@dataclass
class LemmaReport:
    """Outcome of one lemma check."""

    lemma: str
    params: dict[str, Any]
    cases: int = 0
    failures: list[LemmaFailure] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def add(self, case: str, message: str) -> None:
        self.failures.append(LemmaFailure(self.lemma, case, message))

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "lemma": self.lemma,
            "params": self.params,
            "cases": self.cases,
            "passed": self.passed,
            "failures": [f.__dict__ for f in self.failures[:20]],
            "details": self.details,
        }

    def to_dataframe(self) -> pd.DataFrame:
        if not self.failures:
            return pd.DataFrame()
        return pd.DataFrame([f.__dict__ for f in self.failures])

    def __repr__(self) -> str:
        status = "ok" if self.passed else f"{len(self.failures)} failures"
        return f"LemmaReport({self.lemma}, cases={self.cases}, {status})"


def _hermitian_space(q: int, r: int) -> HermitianSpaceSpec:
    return canonical_form(Family.NU, q, r)


# ---------------------------------------------------------------------------
# G-side lemmas
# ---------------------------------------------------------------------------


def check_A_eq_B(report: LemmaReport, q: int, r: int, samples: int, seed: int) -> None:
    """A = {sum_i c_i u^(q^2i) : c admissible} equals B = {x : Tr(u^(q^r) x) = 0}."""
    space = _hermitian_space(q, r)
    big = space.big_field
    rng = np.random.default_rng(seed)
    us = [big.primitive] + [int(u) for u in rng.integers(1, big.order, size=samples - 1)]
    elements = list(g_elements(space))
    report.details["group_order"] = len(elements)
    every_x = np.arange(big.order)
    sizes = []
    for u in us:
        row = np.array([[u, 0]], dtype=np.int64)
        A = {int(element.act(row)[0, 1]) for element in elements}
        traces = big.trace_table(space.m)[big.mul_table[int(space.conj_table[u]), every_x]]
        B = set(np.flatnonzero(traces == 0).tolist())
        report.cases += 1
        sizes.append(len(B))
        if A != B:
            report.add(f"u={u}", f"|A|={len(A)}, |B|={len(B)}, |A ^ B|={len(A ^ B)}")
    report.details["sizes"] = sizes


def check_nonvanishing(report: LemmaReport, q: int) -> None:
    """gamma^((q+1) l0) + gamma^((q+1) l) - Tr(gamma^(l + l0 + m(q-1))) != 0 for l != l0.

    gamma is primitive in GF(q^2), l, l0 in 0..q-2, m in 0..q.
    """
    p, n = prime_power(q)
    f = field_create(p, 2 * n)
    gamma = f.primitive
    tr = f.trace_table(n)
    for l0, l1 in product(range(q - 1), repeat=2):
        if l1 == l0:
            continue
        base = f.add(f.pow(gamma, (q + 1) * l0), f.pow(gamma, (q + 1) * l1))
        for m in range(q + 1):
            value = f.sub(base, int(tr[f.pow(gamma, l1 + l0 + m * (q - 1))]))
            report.cases += 1
            if value == 0:
                report.add(f"l0={l0} l={l1} m={m}", "expression vanishes")


def check_G_closure(report: LemmaReport, q: int, r: int, pairs: int, seed: int) -> None:
    """Generator products are admissible, act as the composite, and preserve h and H."""
    space = _hermitian_space(q, r)
    big = space.big_field
    gens = g_generators(space)
    rows = all_vectors(big, 2)
    for a, b in product(gens, repeat=2):
        report.cases += 1
        try:
            ab = a.compose(b)
            a.compose(b.inverse())
        except UnsupportedParameters as exc:
            report.add(f"{a.c} * {b.c}", str(exc))
            continue
        if not np.array_equal(ab.act(rows), b.act(a.act(rows))):
            report.add(f"{a.c} * {b.c}", "composite acts differently from successive application")

    rng = np.random.default_rng(seed)
    left = rows[rng.integers(0, len(rows), size=pairs)]
    right = rows[rng.integers(0, len(rows), size=pairs)]
    for gen in gens:
        report.cases += 1
        if not is_form_preserved(gen, space, rows):
            report.add(f"{gen.c}", "h not preserved")
        before = space.H_values(left[:, 0], left[:, 1], right[:, 0], right[:, 1])
        la, ra = gen.act(left), gen.act(right)
        after = space.H_values(la[:, 0], la[:, 1], ra[:, 0], ra[:, 1])
        if not np.array_equal(before, after):
            report.add(f"{gen.c}", "H not preserved on sampled pairs")


# ---------------------------------------------------------------------------
# K and L
# ---------------------------------------------------------------------------


def check_K_closure(report: LemmaReport, q: int, r: int) -> None:
    """Products A B and A B^-1 of generators stay in K; generators preserve Q."""
    form = canonical_form(Family.NO_ODD, q, r, 1, FormModel.SPLIT)
    f = form.field
    gens = k_generators(f, r)
    identity = GroupElementK.identity(f, r)
    for a, b in product(gens, repeat=2):
        for label, other in (("*", b), ("/", b.inverse())):
            report.cases += 1
            product_matrix = fmatmul(f, a.matrix, other.matrix)
            try:
                recovered = GroupElementK.from_matrix(f, r, product_matrix)
            except UnsupportedParameters as exc:
                report.add(f"{a.u},{a.S} {label} {b.u},{b.S}", str(exc))
                continue
            if recovered != a.compose(other):
                report.add(f"{a.u},{a.S} {label} {b.u},{b.S}", "product law does not hold")
        if a.compose(a.inverse()) != identity:
            report.add(f"{a.u},{a.S}", "inverse law does not hold")
    rows = all_vectors(f, form.dim)
    for gen in gens:
        report.cases += 1
        if not is_form_preserved(gen, form, rows):
            report.add(f"{gen.u},{gen.S}", "Q not preserved")


def check_L_closure(report: LemmaReport, q: int, r: int) -> None:
    """L is closed under products and preserves x y^T."""
    family = Family.NO_EVEN2 if q == 2 else Family.NO_EVEN3
    form = canonical_form(family, q, r, 1, FormModel.SPLIT)
    f = form.field
    gens = l_generators(f, r)
    for a, b in product(gens, repeat=2):
        report.cases += 1
        if not np.array_equal(fmatmul(f, a.matrix, b.matrix), a.compose(b).matrix):
            report.add(f"{a.S} * {b.S}", "product is not [[I, S + T], [0, I]]")
    rows = all_vectors(f, form.dim)
    for gen in gens:
        report.cases += 1
        if not is_form_preserved(gen, form, rows):
            report.add(f"{gen.S}", "Q not preserved")


def check_T_translation(report: LemmaReport, q: int, r: int) -> None:
    """T_(i x) + T_(j x) = T_((i+j) x) and T_(0 x) = {x S : S alternating}.

    T_(lambda x) = {u : x u^T = lambda}.
    """
    p, n = prime_power(q)
    f = field_create(p, n)
    vectors = all_vectors(f, r)
    alternating = list(alternating_matrices(f, r))
    for x in vectors[1:]:
        dots = fsum(f, fmul(f, vectors, x[None, :]), axis=1)
        T = {lam: vectors[dots == lam] for lam in range(f.order)}
        kernel = {tuple(int(c) for c in fmatmul(f, x[None, :], S)[0]) for S in alternating}
        report.cases += 1
        if kernel != {tuple(int(c) for c in u) for u in T[0]}:
            report.add(f"x={tuple(x)}", "T_0x is not {x S}")
        for i, j in product(range(f.order), repeat=2):
            sums = {
                tuple(int(c) for c in row)
                for row in (f.add_table[T[i][:, None, :], T[j][None, :, :]]).reshape(-1, r)
            }
            report.cases += 1
            if sums != {tuple(int(c) for c in u) for u in T[f.add(i, j)]}:
                report.add(f"x={tuple(x)} i={i} j={j}", "translation identity fails")


def lemma_checks(which: str, config: Config | None = None, **params: int) -> LemmaReport:
    """Run one named check at the given or default parameters.

    Raises:
        UnsupportedParameters: unknown lemma name
    """
    if which not in DEFAULT_PARAMS:
        raise UnsupportedParameters(f"Unknown lemma {which!r}; choose from {', '.join(LEMMAS)}")
    config = config or DEFAULT_CONFIG
    merged = {**DEFAULT_PARAMS[which], **{k: v for k, v in params.items() if v is not None}}
    report = LemmaReport(which, merged)
    q = merged["q"]
    r = merged.get("r")
    logger.info(f"Lemma check {which} at {merged}")
    if which == "A_eq_B":
        check_A_eq_B(report, q, r, samples=5, seed=config.seed)
    elif which == "nonvanishing":
        check_nonvanishing(report, q)
    elif which == "K_closure":
        check_K_closure(report, q, r)
    elif which == "L_closure":
        check_L_closure(report, q, r)
    elif which == "G_closure":
        check_G_closure(report, q, r, pairs=2000, seed=config.seed)
    else:
        check_T_translation(report, q, r)
    logger.info(f"{report!r}")
    return report
