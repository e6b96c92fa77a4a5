"""Command-line front end: one spec file, one verb, canonical JSON out.

The spec file carries the symmetric-space datum, an optional fan subdivision,
and optional verb inputs under "inputs".  Reports are emitted with sorted
keys and fixed indentation so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys

from .fans import build_positive_fan
from .group_ring import GroupRingElement, orbit_sum
from .kring import (
    GradedDecomposition,
    SRModel,
    constant_class,
    enumerate_fixed_points,
    enumerate_invariant_curves,
    filtration_membership,
    graded_multiply,
    kg_decompose,
    kg_membership,
    kt_membership,
    line_bundle_class,
    reassemble,
    sr_preimage,
    wonderful_presentation_check,
)
from .lattices import equivariant_section_exists, split_surjection
from .root_data import SymmetricDatum, build_symmetric_datum, sc_splitting_problem
from .verify import run_full_verification

VERBS = (
    "describe",
    "fixed-points",
    "curves",
    "check-kt",
    "check-kg",
    "decompose",
    "multiply",
    "filtration",
    "presentation",
    "splitting-check",
    "verify",
)


def _load_element(datum: SymmetricDatum, lattice, data: dict) -> GroupRingElement:
    return GroupRingElement.from_json(lattice, data)


def _build_localization(datum, fan, data: dict, scope: str = "X"):
    builder = data.get("builder", "constant")
    if builder == "line_bundle":
        return line_bundle_class(datum, fan, tuple(data["u"]), scope)
    if builder == "constant":
        return constant_class(
            datum,
            fan,
            scope,
            GroupRingElement.constant(datum.char_lattice, int(data.get("value", 1))),
        )
    if builder == "values":
        cls = constant_class(
            datum, fan, scope, GroupRingElement.zero(datum.char_lattice)
        )
        for p in cls.values:
            cls.values[p] = GroupRingElement.from_json(
                datum.char_lattice, data["values"][p.label()]
            )
        return cls
    raise ValueError(f"unknown localization builder {builder!r}")


def _build_kg_values(datum, fan, data: dict) -> list[GroupRingElement]:
    n = len(fan.pos_max_cones)
    builder = data.get("builder", "constant")
    if builder == "orbit_monomial":
        f = orbit_sum(
            datum.weyl_H,
            GroupRingElement.monomial(datum.char_lattice, tuple(data["mu"])),
        )
        return [f] * n
    if builder == "constant":
        return [
            GroupRingElement.constant(datum.char_lattice, int(data.get("value", 1)))
        ] * n
    if builder == "values":
        return [
            GroupRingElement.from_json(datum.char_lattice, t) for t in data["values"]
        ]
    raise ValueError(f"unknown kg builder {builder!r}")


def _build_sr_element(model: SRModel, data: dict) -> GroupRingElement:
    builder = data.get("builder", "terms")
    if builder == "terms":
        return GroupRingElement.from_json(model.lattice, data)
    if builder == "symmetrized":
        tau = frozenset(int(i) for i in data["tau"])
        raw = model.x_tau(tau)
        exps = {int(j): int(e) for j, e in data.get("x_exponents", {}).items()}
        if exps:
            raw = raw * model.x_monomial(exps)
        h = data.get("h")
        if h:
            raw = raw * model.h_monomial(tuple(h))
        out = GroupRingElement.zero(model.lattice)
        for w in model.fan.cone_stabilizer(tau).elements:
            out = out + model.act(w, raw)
        d = GradedDecomposition(model, {tau: out})
        return reassemble(d)
    raise ValueError(f"unknown element builder {builder!r}")


def _run(spec: dict, verb: str, box: int) -> dict:
    datum = build_symmetric_datum(spec)
    fan = build_positive_fan(datum, spec.get("subdivision"))
    inputs = spec.get("inputs", {})

    if verb == "describe":
        return {
            "datum": datum.summary(),
            "fan": {
                **fan.to_json(),
                "num_positive_cones": len(fan.pos_cones),
                "num_full_rays": len(fan.rays),
                "num_full_max_cones": len(fan.max_cones),
            },
        }
    if verb == "fixed-points":
        out = {}
        for scope in ("X", "Y"):
            idx = enumerate_fixed_points(datum, fan, scope)
            out[scope] = {
                "count": len(idx.points),
                "points": [p.label() for p in idx.points],
            }
        return out
    if verb == "curves":
        out = {}
        for scope in ("X", "Y"):
            recs = enumerate_invariant_curves(datum, fan, scope)
            out[scope] = {
                "count": len(recs),
                "curves": [
                    {
                        "type": r.curve_type,
                        "endpoints": sorted(
                            p.label() for p in r.endpoints
                        ),
                        "character": list(r.character),
                    }
                    for r in recs
                ],
            }
        return out
    if verb == "check-kt":
        cls = _build_localization(datum, fan, inputs.get("class", {}), "X")
        ok, witness = kt_membership(cls)
        return {"member": ok, "witness": witness}
    if verb == "check-kg":
        values = _build_kg_values(datum, fan, inputs.get("kg", {}))
        ok, witness = kg_membership(datum, fan, values)
        return {"member": ok, "witness": witness}
    if verb == "decompose":
        model = SRModel(datum, fan)
        if "element" in inputs:
            f = _build_sr_element(model, inputs["element"])
        elif "class" in inputs:
            target = _build_localization(datum, fan, inputs["class"], "Y")
            f = sr_preimage(model, target, box)
        else:
            f = model.one()
        d = kg_decompose(model, f)
        return {"components": d.to_json()}
    if verb == "multiply":
        model = SRModel(datum, fan)
        e1, e2 = inputs["elements"]
        d1 = kg_decompose(model, _build_sr_element(model, e1))
        d2 = kg_decompose(model, _build_sr_element(model, e2))
        return {"components": graded_multiply(d1, d2).to_json()}
    if verb == "filtration":
        model = SRModel(datum, fan)
        f = _build_sr_element(model, inputs["element"])
        d = kg_decompose(model, f)
        tau = frozenset(int(i) for i in inputs.get("tau", []))
        return {"tau": sorted(tau), "member": filtration_membership(d, tau)}
    if verb == "presentation":
        return wonderful_presentation_check(datum, fan)
    if verb == "splitting-check":
        q, generators = sc_splitting_problem(datum)
        plain = True
        try:
            split_surjection(q)
        except Exception:
            plain = False
        return {
            "splitting_exists": plain,
            "WL_invariant_splitting_exists": equivariant_section_exists(
                q, generators
            ),
        }
    if verb == "verify":
        results = run_full_verification(datum, fan, seed=int(spec.get("seed", 0)))
        return {
            "suites": {name: report for name, report in results},
            "all_passed": all(report["passed"] for _, report in results),
        }
    raise ValueError(f"unknown verb {verb!r}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="symkring",
        description="Equivariant K-ring computations for minimal-rank "
        "complete symmetric varieties.",
    )
    parser.add_argument("--spec", required=True, help="path to a JSON spec file")
    parser.add_argument("--verb", required=True, choices=VERBS)
    parser.add_argument("--out", help="write the JSON report here (default stdout)")
    parser.add_argument(
        "--box",
        type=int,
        default=2,
        help="exponent bound for the localization-to-representative search",
    )
    args = parser.parse_args(argv)
    try:
        with open(args.spec) as fh:
            spec = json.load(fh)
        report = _run(spec, args.verb, args.box)
        code = 0
        if args.verb == "verify":
            for name, suite in report["suites"].items():
                status = "PASS" if suite["passed"] else "FAIL"
                print(f"[{status}] {name}", file=sys.stderr)
            if not report["all_passed"]:
                code = 1
    except Exception as exc:  # surface a machine-readable error object
        report = {"error": type(exc).__name__, "message": str(exc)}
        code = 1
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
