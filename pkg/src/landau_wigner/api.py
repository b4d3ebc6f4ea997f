"""HTTP service exposing evaluation, grids, marginals, verification and
gauge transforms.  All arithmetic happens here (or deeper); clients only
format.  Every endpoint is stateless, so the service can be scaled or run
in-process through an ASGI transport."""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from . import __version__
from . import gauge as gaugemod
from .marginals import marginal_grid, plane_axes
from .moyal import ladder_to_qp
from .phasespace import Params
from .qpoly import parse_qp_poly
from .quad import GridSpec, sample_grid
from .schemas import (
    CheckModel,
    ComplexValue,
    EvalRequest,
    EvalResponse,
    GridRequest,
    GridResponse,
    MarginalRequest,
    TransformRequest,
    TransformResponse,
    VerifyRequest,
    VerifyResponse,
)
from .verify import run_suite
from .wigner import WignerIndex, eval_wigner, eval_wigner_xy, hamiltonian_fn


def _reduced_scale(axis: str, params: Params) -> float:
    return params.gamma if axis.startswith("q") else params.m * params.omega * params.gamma


def create_app() -> FastAPI:
    app = FastAPI(
        title="landau-wigner",
        version=__version__,
        description="Star-product evaluation service for Landau-level Wigner "
        "functions and their marginal densities.",
    )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/eval", response_model=EvalResponse)
    def eval_point(req: EvalRequest) -> EvalResponse:
        params = req.params.to_params()
        idx = WignerIndex(req.index.n1, req.index.n2, req.index.l1, req.index.l2)
        value = eval_wigner(idx, req.point.to_point(), params)
        value = complex(value)
        return EvalResponse(
            value=ComplexValue(re=value.real, im=0.0 if idx.is_diagonal else value.imag),
            diagonal=idx.is_diagonal,
        )

    @app.post("/grid", response_model=GridResponse)
    def grid(req: GridRequest) -> GridResponse:
        params = req.params.to_params()
        idx = WignerIndex.diagonal(req.n, req.l)
        axes = plane_axes(req.plane)
        try:
            spec = GridSpec(
                plane=axes,
                x_range=(req.window.x_min, req.window.x_max),
                y_range=(req.window.y_min, req.window.y_max),
                nx=req.window.nx,
                ny=req.window.ny,
                fixed=req.fixed,
            )
            field = sample_grid(
                lambda q1, q2, p1, p2: eval_wigner_xy(idx, q1, q2, p1, p2, params),
                spec,
                params,
                meta={"kind": "wigner", "n": req.n, "l": req.l},
            )
        except ValueError as err:
            raise HTTPException(status_code=422, detail=str(err))
        xs, ys = field.xs, field.ys
        meta = dict(field.meta)
        if req.reduced:
            xs = xs / _reduced_scale(axes[0], params)
            ys = ys / _reduced_scale(axes[1], params)
            meta["reduced"] = 1
        return GridResponse(
            meta=meta,
            xs=[float(v) for v in xs],
            ys=[float(v) for v in ys],
            values=[[float(v) for v in row] for row in field.values],
        )

    @app.post("/marginal", response_model=GridResponse)
    def marginal(req: MarginalRequest) -> GridResponse:
        params = req.params.to_params()
        axes = plane_axes(req.plane)
        xs = np.linspace(req.window.x_min, req.window.x_max, req.window.nx)
        ys = np.linspace(req.window.y_min, req.window.y_max, req.window.ny)
        try:
            values = marginal_grid(
                req.n, req.l, req.plane, xs, ys, params, req.order, req.method, req.normalized
            )
        except ValueError as err:
            raise HTTPException(status_code=422, detail=str(err))
        meta = {
            "kind": "marginal",
            "plane": req.plane,
            "n": req.n,
            "l": req.l,
            "m": params.m,
            "omega": params.omega,
            "hbar": params.hbar,
            "method": req.method,
            "normalized": int(req.normalized),
            "x_min": req.window.x_min,
            "x_max": req.window.x_max,
            "y_min": req.window.y_min,
            "y_max": req.window.y_max,
            "nx": req.window.nx,
            "ny": req.window.ny,
        }
        if req.reduced:
            xs = xs / _reduced_scale(axes[0], params)
            ys = ys / _reduced_scale(axes[1], params)
            meta["reduced"] = 1
        return GridResponse(
            meta=meta,
            xs=[float(v) for v in xs],
            ys=[float(v) for v in ys],
            values=[[float(v) for v in row] for row in values],
        )

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        checks = run_suite(
            req.suite,
            max_index=req.max_index,
            params=req.params.to_params(),
            tolerances=req.tolerances or None,
        )
        return VerifyResponse(
            suite=req.suite,
            passed=all(c.passed for c in checks),
            checks=[
                CheckModel(name=c.name, passed=c.passed, residual=c.residual, detail=c.detail)
                for c in checks
            ],
        )

    @app.post("/transform", response_model=TransformResponse)
    def transform(req: TransformRequest) -> TransformResponse:
        params = req.params.to_params()
        try:
            chi = parse_qp_poly(req.chi)
            g = gaugemod.GaugeFn(chi=chi, coupling=req.coupling)
        except ValueError as err:
            raise HTTPException(status_code=422, detail=str(err))
        h_prime = gaugemod.conjugate_function(g, ladder_to_qp(hamiltonian_fn(params), params), params)
        p1p = gaugemod.conjugate_momentum(g, 1, params)
        p2p = gaugemod.conjugate_momentum(g, 2, params)
        try:
            exact, worst = gaugemod.transformed_eigen_residual(g, req.n, req.l, params)
            norm = gaugemod.transformed_normalization(g, req.n, req.l, params, order=16)
            wq = gaugemod.transformed_wigner(g, WignerIndex.diagonal(req.n, req.l), params)
            reality = max(
                (abs(float(c.im)) for c in wq.poly.terms.values()),
                default=0.0,
            )
            return TransformResponse(
                hamiltonian=h_prime.pretty(),
                momentum_1=p1p.pretty(),
                momentum_2=p2p.pretty(),
                eigen_supported=True,
                eigen_exact=exact,
                eigen_residual=worst,
                normalization=norm,
                normalization_residual=abs(norm - params.h_squared) / params.h_squared,
                reality_residual=reality,
            )
        except ValueError as err:
            # conjugated observables are still exact; state transforms need quadratic chi
            return TransformResponse(
                hamiltonian=h_prime.pretty(),
                momentum_1=p1p.pretty(),
                momentum_2=p2p.pretty(),
                eigen_supported=False,
                detail=str(err),
            )

    return app


app = create_app()
