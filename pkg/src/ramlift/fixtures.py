"""Named demo fixtures with frozen expected output.

Each fixture recomputes a small scenario end to end and compares the result
record to the expected one field by field; runs are deterministic, so two
invocations print byte-identical reports.
"""

from __future__ import annotations

from .dvr import make_dvr, project, residue_ring
from .homlift import (
    enumerate_homs,
    enumerate_isos,
    has_root,
    lift_hom,
    project_hom,
    residue_hom,
)
from .ramification import (
    different_val,
    generic_bounds,
    krasner_bound,
    lift_precision_bound,
)
from .resfield import identity_embedding, make_field


def _rings_2_13_1():
    F3 = make_field(3, 1)
    return make_dvr(F3, [-3, 0, 1]), make_dvr(F3, [3, 0, 1])


def _rings_wild():
    F2 = make_field(2, 1)
    return make_dvr(F2, [-2, 0, 1]), make_dvr(F2, [-10, 0, 1])


def _fixture_ex_2_13_1():
    R1, R2 = _rings_2_13_1()
    isos = enumerate_isos(residue_ring(R1, 2), residue_ring(R2, 2))
    homs3 = enumerate_homs(residue_ring(R1, 3), residue_ring(R2, 3))
    return {
        "M": str(krasner_bound(R1)),
        "lift_precision_bound": lift_precision_bound(R1, R2.e),
        "iso_count_n2": len(isos),
        "iso_betas": sorted(h.beta.text() for h in isos),
        "hom_count_n3": len(homs3),
    }


def _fixture_ex_2_13_2():
    R, _ = _rings_2_13_1()
    src = residue_ring(R, 4)
    beta = project(R.from_int(4, 4) * R.uniformizer(4), 4)
    phi = residue_hom(src, src, identity_embedding(R.k), beta)
    g = lift_hom(phi)
    back = project_hom(g, 4, 4)
    return {
        "input_beta": phi.beta.text(),
        "lift_is_identity": g.is_identity(),
        "projection_equals_input": back == phi,
        "projected_beta": back.beta.text(),
    }


def _fixture_wild_2_2():
    R1, R2 = _rings_wild()
    isos6 = enumerate_isos(residue_ring(R1, 6), residue_ring(R2, 6))
    homs7 = enumerate_homs(residue_ring(R1, 7), residue_ring(R2, 7))
    return {
        "M": str(krasner_bound(R1)),
        "lift_precision_bound": lift_precision_bound(R1, R2.e),
        "iso_count_n6": len(isos6),
        "hom_count_n7": len(homs7),
        "x2_minus_2_root_in_sqrt10": has_root(R2, [-2, 0, 1]).kind,
    }


def _fixture_ex_4_12():
    F3 = make_field(3, 1)
    R = make_dvr(F3, [-3, 0, 0, 1])
    return {
        "M": str(krasner_bound(R)),
        "different": different_val(R),
        "per_ring_bound": lift_precision_bound(R, R.e),
        "basarab_upper": generic_bounds(3, 3)["basarab_upper"],
        "x3_minus_3_root": has_root(R, [-3, 0, 0, 1]).kind,
    }


def _fixture_tame_atlas():
    rows = []
    for p, e in [(3, 2), (5, 2), (2, 3), (7, 3), (3, 4), (5, 4)]:
        b = generic_bounds(p, e)
        rows.append({"p": p, "e": e, "lifting_number": b["tame_exact"], "upper": b["upper"]})
    return {"rows": rows}


FIXTURES = {
    "ex-2-13-1": (
        "quadratic pair over Z3: optimal length for lifting isomorphisms",
        _fixture_ex_2_13_1,
        {
            "M": "1/2",
            "lift_precision_bound": 3,
            "iso_count_n2": 2,
            "iso_betas": ["π:0,1", "π:0,2"],
            "hom_count_n3": 0,
        },
    ),
    "ex-2-13-2": (
        "unit-twist automorphism at length 4 lifts to the identity",
        _fixture_ex_2_13_2,
        {
            "input_beta": "π:0,1,0,1",
            "lift_is_identity": True,
            "projection_equals_input": False,
            "projected_beta": "π:0,1,0,0",
        },
    ),
    "wild-2-2": (
        "wild quadratic pair over Z2: residue rings agree to length 6 only",
        _fixture_wild_2_2,
        {
            "M": "3/2",
            "lift_precision_bound": 7,
            "iso_count_n6": 8,
            "hom_count_n7": 0,
            "x2_minus_2_root_in_sqrt10": "no",
        },
    ),
    "ex-4-12": (
        "cubic wild ring over Z3: bound arithmetic around 15/2 <= 8",
        _fixture_ex_4_12,
        {
            "M": "5/6",
            "different": 5,
            "per_ring_bound": 8,
            "basarab_upper": 13,
            "x3_minus_3_root": "yes",
        },
    ),
    "tame-atlas": (
        "tame lifting numbers e+1 for e in {2,3,4}",
        _fixture_tame_atlas,
        {
            "rows": [
                {"p": 3, "e": 2, "lifting_number": 3, "upper": 3},
                {"p": 5, "e": 2, "lifting_number": 3, "upper": 3},
                {"p": 2, "e": 3, "lifting_number": 4, "upper": 4},
                {"p": 7, "e": 3, "lifting_number": 4, "upper": 4},
                {"p": 3, "e": 4, "lifting_number": 5, "upper": 5},
                {"p": 5, "e": 4, "lifting_number": 5, "upper": 5},
            ]
        },
    ),
}


def run_fixture(fixture_id: str) -> dict:
    description, compute, expected = FIXTURES[fixture_id]
    actual = compute()
    return {
        "id": fixture_id,
        "description": description,
        "expected": expected,
        "actual": actual,
        "status": "PASS" if actual == expected else "FAIL",
    }
