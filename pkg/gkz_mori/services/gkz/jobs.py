"""Computation jobs behind the CLI commands and the MCP tools.

Each job takes a parsed polytope document and a :class:`JobSpec` and
returns a plain report dictionary; :func:`run_job` adds input parsing
and maps library errors onto exit codes.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from gkz_mori.config import DEFAULT_HP_TRUNCATION
from gkz_mori.errors import GkzError, NoRegularSimplex, NotInterior, SchemaError
from gkz_mori.families import (
    TwistedMonoid,
    build_hp,
    specialize,
    theta_multiply,
    theta_section,
    universal_bending_check,
    universal_function,
)
from gkz_mori.graded import s_of_q, slice_check
from gkz_mori.kernel.cones import dual_cone
from gkz_mori.kernel.linalg import Vector, dot, primitive
from gkz_mori.pavings import LatticePolytope, Paving, normalized_volume
from gkz_mori.secondary import (
    GkzChamber,
    SecondaryFan,
    build_secondary_fan,
    enumerate_regular_triangulations,
    find_regular_simplex,
    psi_map,
)
from gkz_mori.services.gkz.config import (
    EXIT_FAILURE,
    EXIT_NO_REGULAR_SIMPLEX,
    EXIT_OK,
    EXIT_SCHEMA_ERROR,
    LIFT_RADIUS,
    Command,
)
from gkz_mori.services.gkz.models import JobSpec, PolytopeDocument, parse_document
from gkz_mori.services.gkz.validation import validate_polytope_size
from gkz_mori.toric import (
    ToricFanData,
    build_fan_data,
    eff_curve_cone,
    is_relative_minimal,
    mori_chamber_check,
    moving_cone,
    nef_cone,
    wall_curve_class,
)
from gkz_mori.walls import (
    WallCrossing,
    WallKind,
    classify_wall,
    cocycle_check,
    curve_multiple,
    g12,
    half_lattice_points,
    lineality_spanned_by_q,
    tau_context,
    vanishes_outside_star,
)

logger = logging.getLogger(__name__)

__all__ = ["JobResult", "interior_lifts", "load", "run_job"]

Report = dict[str, Any]


@dataclass(frozen=True)
class JobResult:
    """A report (or error document) and the exit code that goes with it."""

    document: Report
    exit_code: int


def load(document: PolytopeDocument) -> tuple[LatticePolytope, Paving | None]:
    """Build the polytope and the optional paving of a document.

    Raises:
        InvalidPolytope: If the vertices do not span a full-dimensional polytope.
        InvalidPaving: If the given cells violate a paving axiom.
        SchemaError: If the polytope is too large to enumerate.
    """
    polytope = LatticePolytope.from_vertices(document.vertices)
    error = validate_polytope_size(polytope)
    if error:
        raise SchemaError(error)
    paving = Paving.from_indices(polytope, document.cells) if document.cells is not None else None
    return polytope, paving


def interior_lifts(chamber: GkzChamber, count: int, rng: random.Random) -> list[Vector]:
    """Random lifts in the interior of ``C̃(T)``.

    An interior point of ``C(T)`` plus a non-negative combination of its
    rays stays interior; adding an affine function does not change the
    class in ``L*``.
    """
    cone = chamber.cone
    base = cone.interior_point()
    affine = chamber.context.aff_basis
    lifts = []
    for _ in range(count):
        y = list(base)
        for ray in cone.generators:
            c = rng.randint(0, LIFT_RADIUS)
            y = [a + c * b for a, b in zip(y, ray)]
        for line in cone.lineality:
            c = rng.randint(-LIFT_RADIUS, LIFT_RADIUS)
            y = [a + c * b for a, b in zip(y, line)]
        lift = list(chamber.context.section(y))
        for row in affine:
            c = rng.randint(-LIFT_RADIUS, LIFT_RADIUS)
            lift = [a + c * b for a, b in zip(lift, row)]
        lifts.append(tuple(Fraction(x) for x in lift))
    return lifts


def _polytope_header(polytope: LatticePolytope) -> Report:
    return {"dim": polytope.dim, "vertices": polytope.vertices, "n_points": polytope.n_points}


def _points(polytope: LatticePolytope, paving: Paving | None, spec: JobSpec) -> Report:
    try:
        simplex: Any = [list(v) for v in find_regular_simplex(polytope)]
    except NoRegularSimplex:
        simplex = None
    graded = s_of_q(polytope, spec.truncation)
    slices = {d: sum(1 for p in graded if p.degree == d) for d in range(spec.truncation + 1)}
    return {
        **_polytope_header(polytope),
        "points": list(polytope.points),
        "origin": polytope.origin,
        "normalized_volume": normalized_volume(polytope),
        "regular_simplex": simplex,
        "graded_slices": slices,
        "slices_match_cone": slice_check(polytope, spec.truncation),
    }


def _triangulations(polytope: LatticePolytope, paving: Paving | None, spec: JobSpec) -> Report:
    found = enumerate_regular_triangulations(polytope, oracle=spec.oracle)
    return {
        **_polytope_header(polytope),
        "method": "oracle" if spec.oracle else "traversal",
        "count": len(found),
        "triangulations": [
            {
                "cells": t.triangulation.cell_indices(),
                "unused": [polytope.index(p) for p in t.triangulation.unused_points],
                "witness": t.witness,
            }
            for t in found
        ],
    }


def _fan(polytope: LatticePolytope, spec: JobSpec) -> SecondaryFan:
    return build_secondary_fan(polytope, oracle=spec.oracle, seed=spec.seed)


def _chamber_summary(chamber: GkzChamber) -> Report:
    cone = chamber.cone
    return {
        "cells": chamber.triangulation.cell_indices(),
        "dimension": cone.dimension,
        "inequalities": cone.inequalities,
        "equations": cone.equations,
        "generators": cone.generators,
        "lineality": cone.lineality,
    }


def _fan_report(polytope: LatticePolytope, paving: Paving | None, spec: JobSpec) -> Report:
    fan = _fan(polytope, spec)
    return {
        **_polytope_header(polytope),
        "rank": fan.context.rank,
        "torsion": fan.context.torsion,
        "torsion_order": math.prod(fan.context.torsion),
        "regular_simplex": fan.psi.simplex,
        "psi": fan.psi.coordinates,
        "chambers": [_chamber_summary(c) for c in fan.chambers],
        "walls": [{"chambers": w.chambers, "generators": w.facet.generators} for w in fan.walls],
        "adjacency": fan.adjacency,
        "sampling": {
            "directions": fan.sampling.directions,
            "uncovered": len(fan.sampling.uncovered),
            "generic": fan.sampling.generic,
            "complete": fan.sampling.complete,
        },
    }


def _mori_verdicts(fan: SecondaryFan, index: int, lifts: list[Vector]) -> list[bool]:
    chamber = fan.chambers[index]
    verdicts = []
    for lift in lifts:
        try:
            verdicts.append(mori_chamber_check(fan.polytope, chamber.triangulation, lift, chamber).verdict)
        except NotInterior:
            verdicts.append(False)
    return verdicts


def _chamber_report(polytope: LatticePolytope, paving: Paving | None, spec: JobSpec) -> Report:
    fan = _fan(polytope, spec)
    rng = random.Random(spec.seed)
    chambers = []
    for i, chamber in enumerate(fan.chambers):
        triangulation = chamber.triangulation
        fd = build_fan_data(triangulation, fan.context)
        nef = nef_cone(fd)
        eff, hilbert = eff_curve_cone(fd)
        minimal = is_relative_minimal(fd)
        curves = []
        if minimal:
            for wall in triangulation.interior_walls:
                curve = wall_curve_class(fd, wall)
                curves.append({"wall": [polytope.index(v) for v in curve.wall], "class": curve.coordinates})
        theta = theta_section(triangulation, fan.psi, fan.context)
        verdicts = _mori_verdicts(fan, i, interior_lifts(chamber, spec.samples, rng))
        chambers.append(
            {
                "cells": triangulation.cell_indices(),
                "unused": [polytope.index(p) for p in triangulation.unused_points],
                "class_group": {"free_rank": fd.class_group[0], "torsion": fd.class_group[1]},
                "lstar_index": fd.lstar_index,
                "nef_generators": nef.generators,
                "nef_lineality": nef.lineality,
                "effective_curve_generators": eff.generators,
                "effective_curve_hilbert_basis": hilbert,
                "relative_minimal": minimal,
                "curve_classes": curves,
                "theta": {
                    "exponents": theta.exponents,
                    "stable": theta.stable,
                    "consistent": theta.consistent,
                    "above_zero": theta.above_zero,
                },
                "mori_verdicts": verdicts,
            }
        )
    return {**_polytope_header(polytope), "chambers": chambers}


def _wall_report(polytope: LatticePolytope, paving: Paving | None, spec: JobSpec) -> Report:
    fan = _fan(polytope, spec)
    walls = []
    for fan_wall in fan.walls:
        a, b = fan_wall.chambers
        first, second = fan.chambers[a], fan.chambers[b]
        crossing = classify_wall(
            polytope,
            first.triangulation,
            second.triangulation,
            context=fan.context,
            psi=fan.psi,
            chambers=(first, second),
        )
        fd1 = build_fan_data(first.triangulation, fan.context)
        tau = tau_context(fd1, build_fan_data(second.triangulation, fan.context))
        scalar, direction = tau.primitive_form(crossing.q_tau)
        record: Report = {
            "chambers": fan_wall.chambers,
            "kind": crossing.kind,
            "omega": crossing.omega,
            "q_tau": crossing.q_tau,
            "q_tau_primitive": {"scalar": scalar, "direction": direction},
            "closed_form": crossing.closed_form,
            "tau_indices": tau.indices,
            "placement": crossing.placement,
            "sign_consistent": crossing.sign_consistent,
            "lineality": crossing.lineality,
            "lineality_spanned_by_q": lineality_spanned_by_q(crossing),
            "wall_paving": crossing.wall_paving.cell_indices(),
            "exceptions_outside_star": vanishes_outside_star(crossing),
        }
        if crossing.kind is WallKind.DIVISORIAL:
            record["sigma_zero"] = [polytope.index(v) for v in sorted(crossing.sigma_zero.vertices)]
            record["barycentric"] = crossing.barycentric
            record["star_reproduces"] = crossing.star_reproduces
        else:
            circuit = crossing.circuit
            record["circuit"] = {
                "minus": [polytope.index(v) for v in circuit.minus],
                "plus": [polytope.index(v) for v in circuit.plus],
                "coefficients": [[polytope.index(v), c] for v, c in sorted(circuit.coefficients.items())],
            }
            record["non_simplicial_cells"] = [crossing.wall_paving.indices(c) for c in crossing.non_simplicial_cells]
            record["curve_multiple"] = _flip_curve_multiple(crossing, fd1)
        walls.append(record)
    return {**_polytope_header(polytope), "walls": walls}


def _flip_curve_multiple(crossing: WallCrossing, fd: ToricFanData) -> Fraction | None:
    """``q_τ`` as a multiple of the curve of the wall of ``T₁`` containing ``J₋``."""
    minus = set(crossing.circuit.minus)
    for wall in crossing.first.interior_walls:
        if minus <= wall.cell.vertices:
            return curve_multiple(crossing, wall_curve_class(fd, wall).coordinates)
    return None


def _mori_check_report(polytope: LatticePolytope, paving: Paving | None, spec: JobSpec) -> Report:
    fan = _fan(polytope, spec)
    rng = random.Random(spec.seed)
    own = [interior_lifts(c, spec.samples, rng) for c in fan.chambers]
    chambers = []
    for i, chamber in enumerate(fan.chambers):
        others = [lift for j, lifts in enumerate(own) if j != i for lift in lifts]
        foreign = [others[k % len(others)] for k in range(spec.samples)] if others else []
        accepted = _mori_verdicts(fan, i, own[i])
        rejected = [not v for v in _mori_verdicts(fan, i, foreign)]
        chambers.append(
            {
                "cells": chamber.triangulation.cell_indices(),
                "own_accepted": sum(accepted),
                "foreign_rejected": sum(rejected),
                "samples": spec.samples,
                "foreign_samples": len(foreign),
                "passed": all(accepted) and all(rejected),
            }
        )
    moving = moving_cone(fan)
    return {
        **_polytope_header(polytope),
        "chambers": chambers,
        "moving_cone": {
            "chambers": moving.chambers,
            "generators": moving.cone.generators,
            "lineality": moving.cone.lineality,
            "dimension": moving.cone.dimension,
            "convex": moving.convex,
        },
    }


def _family(paving: Paving, spec: JobSpec) -> Report:
    hp = build_hp(paving, DEFAULT_HP_TRUNCATION)
    record: Report = {
        "cells": paving.cell_indices(),
        "h_rank": hp.rank,
        "h_generators": hp.generators,
        "h_group_basis": hp.group_basis,
        "h_sharp": hp.sharp,
        "saturation_hilbert_basis": hp.saturation_basis,
        "saturation_matches": hp.saturated_cone_matches,
    }
    if paving.is_triangulation:
        theta = theta_section(paving)
        record["theta"] = {"exponents": theta.exponents, "stable": theta.stable, "consistent": theta.consistent}
    if hp.rank == 0:
        return record
    if paving.is_triangulation:
        universal_bending_check(hp, psi_map(paving.polytope).coordinates)
    phi = universal_function(hp)
    tm = TwistedMonoid.build(paving.polytope, phi, hp.monoid(), spec.truncation)
    constants = tm.structure_constants()
    v = primitive(dual_cone(hp.saturation).interior_point())
    special = specialize(tm, v)
    commutes = all(
        theta_multiply(special.family, a, b)[1] == (dot(v, correction),)
        for (a, b), (_, correction) in constants.items()
    )
    record.update(
        {
            "theta_basis": tm.elements,
            "structure_constants": [
                {"alpha": a, "beta": b, "gamma": gamma, "correction": correction}
                for (a, b), (gamma, correction) in constants.items()
            ],
            "commutative": tm.is_commutative(),
            "associative": tm.is_associative(),
            "specialization": {
                "functional": v,
                "central_fibre_cells": special.central_fibre_cells,
                "commutes_with_products": commutes,
            },
        }
    )
    return record


def _family_report(polytope: LatticePolytope, paving: Paving | None, spec: JobSpec) -> Report:
    if paving is not None:
        pavings = [paving]
    else:
        pavings = [t.triangulation for t in enumerate_regular_triangulations(polytope, oracle=spec.oracle)]
    return {**_polytope_header(polytope), "families": [_family(p, spec) for p in pavings]}


def _cocycle_report(polytope: LatticePolytope, paving: Paving | None, spec: JobSpec) -> Report:
    fan = _fan(polytope, spec)
    r = fan.context.rank
    samples = half_lattice_points(polytope)
    triangulations = [c.triangulation for c in fan.chambers]
    antisymmetric = True
    for i, j in itertools.combinations(range(len(triangulations)), 2):
        forward = g12(polytope, triangulations[i], triangulations[j], fan.psi)
        backward = g12(polytope, triangulations[j], triangulations[i], fan.psi)
        if any(any(a + b for a, b in zip(forward.value(x), backward.value(x))) for x in samples):
            antisymmetric = False
    triples = []
    for i, j, k in itertools.combinations(range(len(fan.chambers)), 3):
        cones = [fan.chambers[n].cone for n in (i, j, k)]
        if r < 2 or cones[0].intersection(cones[1]).intersection(cones[2]).dimension != r - 2:
            continue
        holds = cocycle_check(polytope, triangulations[i], triangulations[j], triangulations[k], samples, fan.psi)
        triples.append({"chambers": [i, j, k], "holds": holds})
    return {
        **_polytope_header(polytope),
        "samples": len(samples),
        "antisymmetric": antisymmetric,
        "triples": triples,
        "holds": antisymmetric and all(t["holds"] for t in triples),
    }


JOBS: dict[Command, Callable[[LatticePolytope, Paving | None, JobSpec], Report]] = {
    Command.POINTS: _points,
    Command.TRIANGULATIONS: _triangulations,
    Command.FAN: _fan_report,
    Command.CHAMBER: _chamber_report,
    Command.WALL: _wall_report,
    Command.MORI_CHECK: _mori_check_report,
    Command.FAMILY: _family_report,
    Command.COCYCLE_CHECK: _cocycle_report,
}


def _error(exc: Exception) -> Report:
    return {"error": type(exc).__name__, "message": str(exc)}


def run_job(spec: JobSpec, text: str) -> JobResult:
    """Parse ``text``, run the requested command and pick the exit code.

    Returns:
        The report with exit code 0, or an error document with exit code
        2 (no regular simplex), 3 (schema) or 1 (any other library error,
        including arithmetic, value and key errors from the math layers).
    """
    try:
        polytope, paving = load(parse_document(text))
        logger.info("running %s on a polytope with %d points", spec.command, polytope.n_points)
        return JobResult(JOBS[spec.command](polytope, paving, spec), EXIT_OK)
    except SchemaError as exc:
        return JobResult(_error(exc), EXIT_SCHEMA_ERROR)
    except NoRegularSimplex as exc:
        return JobResult(_error(exc), EXIT_NO_REGULAR_SIMPLEX)
    except GkzError as exc:
        logger.warning("%s failed: %s", spec.command, exc)
        return JobResult(_error(exc), EXIT_FAILURE)
    except (ArithmeticError, ValueError, KeyError) as exc:
        logger.exception("%s failed unexpectedly", spec.command)
        return JobResult(_error(exc), EXIT_FAILURE)
