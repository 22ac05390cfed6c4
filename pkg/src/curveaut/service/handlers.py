"""Service handlers: pure functions from request models to response models.

The FastAPI app and the CLI both call these, so command-line runs and
service responses are bit-identical for the same request.
"""

from __future__ import annotations

import os
from typing import Optional

from .. import bounds as bounds_mod
from .. import fileio, verify
from ..classify import ClassifyError, classify, verify_action
from ..curves import FamilyError, make_family
from ..cyclo import CycloError, ScalarParseError, format_scalar, parse_scalar
from ..fileio import ParseError
from ..polyring import GeometryError, is_smooth
from ..projgroup import ClosureCapExceeded, GroupError, closure
from . import schemas

DEFAULT_CAP = 25000
CAP_ENV_VAR = "CURVEAUT_CAP"


class InputError(ValueError):
    pass


class CapError(RuntimeError):
    pass


def effective_cap(cap: Optional[int]) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV_VAR)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"bad {CAP_ENV_VAR} value {env!r}") from exc
    return DEFAULT_CAP


def _wrap_input_errors(fn, *args):
    try:
        return fn(*args)
    except (ParseError, ScalarParseError, CycloError, FamilyError, GeometryError) as exc:
        raise InputError(str(exc)) from exc


def curve(request: schemas.CurveRequest) -> schemas.CurveResponse:
    lam = None
    if request.lam is not None:
        lam = _wrap_input_errors(parse_scalar, request.lam, request.d)
    instance = _wrap_input_errors(make_family, request.family, request.d, lam)
    form = instance.form
    if request.conductor is not None:
        if request.conductor % form.n:
            raise InputError(
                f"conductor {request.conductor} does not contain the curve's field Q(zeta_{form.n})"
            )
        from ..polyring import TernaryForm

        form = TernaryForm(
            form.degree,
            {k: v.embed_to(request.conductor) for k, v in form.terms.items()},
        )
    return schemas.CurveResponse(
        family=instance.label,
        degree=instance.degree,
        lam=format_scalar(instance.lam) if instance.lam is not None else None,
        expected_order=instance.expected_order,
        generators_are_full_group=instance.generators_are_full_group,
        polynomial=fileio.emit_polynomial(form),
        generators=fileio.emit_generators(instance.standard_generators)
        if instance.standard_generators
        else "",
    )


def closure_handler(request: schemas.ClosureRequest) -> schemas.ClosureResponse:
    gens = _wrap_input_errors(fileio.parse_generators, request.generators)
    try:
        group = closure(gens, effective_cap(request.cap))
    except ClosureCapExceeded as exc:
        raise CapError(str(exc)) from exc
    except GroupError as exc:
        raise InputError(str(exc)) from exc
    return schemas.ClosureResponse(
        order=group.order,
        conductor=group.n,
        element_orders=sorted(group.element_order_multiset().items()),
    )


def classify_handler(request: schemas.ClassifyRequest) -> schemas.ClassifyResponse:
    form = _wrap_input_errors(fileio.parse_polynomial, request.curve)
    gens = _wrap_input_errors(fileio.parse_generators, request.generators)
    try:
        group = verify_action(form, gens, effective_cap(request.cap))
        report = classify(form, group)
    except ClosureCapExceeded as exc:
        raise CapError(str(exc)) from exc
    except (ClassifyError, GroupError) as exc:
        raise InputError(str(exc)) from exc
    data = report.to_dict()
    return schemas.ClassifyResponse(**data)


def smooth_handler(request: schemas.SmoothRequest) -> schemas.SmoothResponse:
    form = _wrap_input_errors(fileio.parse_polynomial, request.curve)
    report = _wrap_input_errors(is_smooth, form)
    witness = None
    if report.witness is not None:
        n = max(c.n for c in report.witness.coords)
        witness = {
            "zeta": n,
            "coords": [format_scalar(c, n) for c in report.witness.coords],
        }
    return schemas.SmoothResponse(
        smooth=report.smooth, constructive=report.constructive, witness=witness
    )


def bounds_handler(request: schemas.BoundsRequest) -> schemas.BoundsResponse:
    try:
        if request.hurwitz:
            report = bounds_mod.hurwitz(request.genus)
        elif request.oikawa is not None:
            report = bounds_mod.oikawa(request.genus, request.oikawa)
        else:
            k1, k2, k3 = request.arakawa
            report = bounds_mod.arakawa(request.genus, k1, k2, k3)
    except bounds_mod.BoundsError as exc:
        raise InputError(str(exc)) from exc
    data = report.to_dict()
    return schemas.BoundsResponse(**data)


def verify_handler(request: schemas.VerifyRequest) -> schemas.VerifyResponse:
    try:
        results = verify.run_suite(request.suite, effective_cap(request.cap))
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from exc
    except ClosureCapExceeded as exc:
        raise CapError(str(exc)) from exc
    suites = [schemas.SuiteOutcome(**r.to_dict()) for r in results]
    return schemas.VerifyResponse(passed=all(s.passed for s in suites), suites=suites)
