"""Shared random generators for the identity tests.

All draws use small integer coefficients and degree at most one, which keeps
intermediate expressions well inside the growth limit while still exercising
every derivative term.
"""

from fractions import Fraction
import random

from lnlab.poly import Chart, Poly
from lnlab.forms import DiffForm, Multivector, VForm

CH2 = Chart(("x", "y"))
CH3 = Chart(("x", "y", "z"))


def rnd_poly(rng: random.Random, chart: Chart, lo: int = -2, hi: int = 2) -> Poly:
    terms = {(0,) * chart.dim: Fraction(rng.randint(lo, hi))}
    for i in range(chart.dim):
        exp = tuple(1 if j == i else 0 for j in range(chart.dim))
        terms[exp] = Fraction(rng.randint(lo, hi))
    return Poly(chart, terms)


def rnd_vf(rng: random.Random, chart: Chart) -> VForm:
    return VForm.section(chart, [rnd_poly(rng, chart) for _ in range(chart.dim)])


def rnd_endo(rng: random.Random, chart: Chart) -> VForm:
    n = chart.dim
    return VForm(chart, 1, n, {((i,), j): rnd_poly(rng, chart)
                               for i in range(n) for j in range(n)})


def rnd_one_form(rng: random.Random, chart: Chart) -> DiffForm:
    return DiffForm(chart, 1, {(i,): rnd_poly(rng, chart)
                               for i in range(chart.dim)})


def rnd_form(rng: random.Random, chart: Chart, degree: int) -> DiffForm:
    from itertools import combinations
    return DiffForm(chart, degree,
                    {idx: rnd_poly(rng, chart)
                     for idx in combinations(range(chart.dim), degree)})


def rnd_mv(rng: random.Random, chart: Chart, degree: int) -> Multivector:
    from itertools import combinations
    return Multivector(chart, degree,
                       {idx: rnd_poly(rng, chart)
                        for idx in combinations(range(chart.dim), degree)})


def rnd_bivector(rng: random.Random, chart: Chart) -> Multivector:
    return rnd_mv(rng, chart, 2)


def rnd_vvform(rng: random.Random, chart: Chart, degree: int) -> VForm:
    from itertools import combinations
    n = chart.dim
    return VForm(chart, degree, n,
                 {(idx, v): rnd_poly(rng, chart)
                  for idx in combinations(range(n), degree) for v in range(n)})
