"""Command-line client.

Every command builds a request model, sends it through the service layer
(in-process by default, or to a remote instance via --server) and formats
the response; no arithmetic happens on this side, so CLI output is exactly
the service output.  Exit codes: 0 success, 1 failed verification, 2 bad
arguments, 3 file I/O failure.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import re
import sys
from typing import Any

import httpx

from . import __version__
from .schemas import IndexModel

PLANES = ("q1q2", "p1p2", "q1p1", "q2p2", "q1p2", "q2p1")
SUITES = ("algebra", "eigen", "projection", "normalization", "symmetry", "gauge", "identities")

_META_ORDER = (
    "kind",
    "plane",
    "n",
    "l",
    "m",
    "omega",
    "hbar",
    "method",
    "normalized",
    "reduced",
    "x_min",
    "x_max",
    "y_min",
    "y_max",
    "nx",
    "ny",
)


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that accepts range values like ``-4:4`` as arguments."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(\.\d+)?(:-?\d+(\.\d+)?)?$")


def _post(path: str, payload: dict, server: str | None) -> dict:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            response = client.post(path, json=payload)
    else:
        from .api import create_app

        async def _go():
            transport = httpx.ASGITransport(app=create_app())
            async with httpx.AsyncClient(
                transport=transport, base_url="http://service.internal", timeout=600.0
            ) as client:
                return await client.post(path, json=payload)

        response = asyncio.run(_go())
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except Exception:
            detail = response.text
        raise CliError(f"request failed ({response.status_code}): {detail}", 2)
    return response.json()


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as err:
        raise CliError(f"cannot read config: {err}", 3)
    except json.JSONDecodeError as err:
        raise CliError(f"config is not valid JSON: {err}", 2)
    if not isinstance(cfg, dict):
        raise CliError("config must be a JSON object", 2)
    return cfg


def _params_payload(args, cfg: dict) -> dict:
    params = dict(cfg.get("params", {}))
    for name in ("m", "omega", "hbar"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    for key, value in params.items():
        if key not in ("m", "omega", "hbar") or not value > 0:
            raise CliError(f"bad parameter {key}={value}", 2)
    return params


def _parse_point(text: str) -> dict:
    parts = text.split(",")
    if len(parts) != 4:
        raise CliError("--at expects q1,q2,p1,p2", 2)
    try:
        q1, q2, p1, p2 = (float(p) for p in parts)
    except ValueError:
        raise CliError("--at expects four numbers", 2)
    return {"q1": q1, "q2": q2, "p1": p1, "p2": p2}


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        lo, hi = float(lo), float(hi)
    except ValueError:
        raise CliError(f"bad range {text!r}; expected lo:hi", 2)
    if not lo < hi:
        raise CliError(f"range {text!r} is not increasing", 2)
    return lo, hi


def _index_payload(args) -> dict:
    explicit = [args.n1, args.n2, args.l1, args.l2]
    if any(v is not None for v in explicit):
        if any(v is None for v in explicit):
            raise CliError("off-diagonal indices need all of --n1 --n2 --l1 --l2", 2)
        model = IndexModel(n1=args.n1, n2=args.n2, l1=args.l1, l2=args.l2)
    else:
        model = IndexModel.diagonal(args.n or 0, args.l or 0)
    return model.model_dump()


def _format_value(payload: dict) -> str:
    value = payload["value"]
    if payload["diagonal"]:
        return f"{value['re']:.15g}"
    return f"{value['re']:.15g}{value['im']:+.15g}j"


def _grid_window(args) -> dict:
    x_lo, x_hi = _parse_range(args.range)
    y_lo, y_hi = _parse_range(args.range_y) if args.range_y else (x_lo, x_hi)
    return {
        "x_min": x_lo,
        "x_max": x_hi,
        "y_min": y_lo,
        "y_max": y_hi,
        "nx": args.count,
        "ny": args.count_y or args.count,
    }


def _write_field(payload: dict, out: str, fmt: str) -> None:
    meta = payload["meta"]
    lines = [f"# generated_by=landau-wigner {__version__}"]
    for key in _META_ORDER:
        if key in meta:
            lines.append(f"# {key}={meta[key]}")
    for key in sorted(meta):
        if key not in _META_ORDER:
            lines.append(f"# {key}={meta[key]}")
    try:
        if fmt == "csv":
            lines.append("x,y,value")
            xs, ys, values = payload["xs"], payload["ys"], payload["values"]
            for i, x in enumerate(xs):
                for j, y in enumerate(ys):
                    lines.append(f"{x:.15e},{y:.15e},{values[i][j]:.15e}")
            text = "\n".join(lines) + "\n"
        else:
            text = json.dumps(
                {"meta": meta, "xs": payload["xs"], "ys": payload["ys"], "values": payload["values"]},
                indent=None,
                separators=(",", ":"),
                sort_keys=True,
            )
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as err:
        raise CliError(f"cannot write {out}: {err}", 3)


def _print_checks(payload: dict) -> None:
    width = max(len(c["name"]) for c in payload["checks"])
    print(f"suite: {payload['suite']}")
    for c in payload["checks"]:
        status = "PASS" if c["passed"] else "FAIL"
        residual = "-" if c["residual"] is None else f"{c['residual']:.3e}"
        detail = f"  {c['detail']}" if c["detail"] else ""
        print(f"  {c['name']:<{width}}  {status}  {residual}{detail}")
    print("result:", "PASS" if payload["passed"] else "FAIL")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file (params, format, tolerances)")
    parser.add_argument("--server", help="base URL of a running service; default is in-process")
    parser.add_argument("--m", type=float, help="mass")
    parser.add_argument("--omega", type=float, help="cyclotron frequency")
    parser.add_argument("--hbar", type=float, help="reduced Planck constant")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="landau-wigner",
        description="Evaluate, sample and verify Landau-level Wigner functions "
        "and marginal densities.",
    )
    parser.add_argument("--version", action="version", version=f"landau-wigner {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a Wigner function at a phase point")
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--l1", type=int)
    p.add_argument("--l2", type=int)
    p.add_argument("--at", default="0,0,0,0", help="q1,q2,p1,p2")
    _add_common(p)

    p = sub.add_parser("grid", help="sample a diagonal Wigner function on a plane")
    p.add_argument("--plane", choices=PLANES, default="q1q2")
    p.add_argument("--range", default="-4:4", help="lo:hi for the x axis (and y unless --range-y)")
    p.add_argument("--range-y", dest="range_y")
    p.add_argument("--count", type=int, default=201)
    p.add_argument("--count-y", dest="count_y", type=int)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--fix", action="append", default=[], help="axis=value for the held axes")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--reduced", action="store_true", help="report coordinates in natural units")
    _add_common(p)

    p = sub.add_parser("marginal", help="sample a marginal probability density on a plane")
    p.add_argument("--plane", choices=PLANES, required=True)
    p.add_argument("--range", default="-4:4")
    p.add_argument("--range-y", dest="range_y")
    p.add_argument("--count", type=int, default=101)
    p.add_argument("--count-y", dest="count_y", type=int)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--method", choices=("auto", "analytic", "quadrature"), default="auto")
    p.add_argument("--order", type=int, default=40, help="quadrature order per axis")
    p.add_argument("--normalized", action="store_true", help="normalize the density to 1")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--reduced", action="store_true")
    _add_common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--max-index", dest="max_index", type=int)
    _add_common(p)

    p = sub.add_parser("transform", help="apply a gauge transformation by star conjugation")
    p.add_argument("--gauge", required=True, help="polynomial in q1, q2, e.g. '0.5*q1*q2'")
    p.add_argument("--coupling", type=float, default=1.0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _run(args) -> int:
    cfg = _load_config(getattr(args, "config", None))
    server = getattr(args, "server", None)

    if args.command == "eval":
        payload = {
            "index": _index_payload(args),
            "point": _parse_point(args.at),
            "params": _params_payload(args, cfg),
        }
        print(_format_value(_post("/eval", payload, server)))
        return 0

    if args.command in ("grid", "marginal"):
        fmt = args.format or cfg.get("format", "csv")
        if fmt not in ("csv", "json"):
            raise CliError(f"unknown format {fmt!r}", 2)
        payload: dict[str, Any] = {
            "n": args.n,
            "l": args.l,
            "plane": args.plane,
            "window": _grid_window(args),
            "params": _params_payload(args, cfg),
            "reduced": bool(args.reduced),
        }
        if args.command == "grid":
            fixed = {}
            for item in args.fix:
                try:
                    axis, value = item.split("=")
                    fixed[axis] = float(value)
                except ValueError:
                    raise CliError(f"bad --fix {item!r}; expected axis=value", 2)
            payload["fixed"] = fixed
            data = _post("/grid", payload, server)
        else:
            payload.update(
                {"method": args.method, "order": args.order, "normalized": bool(args.normalized)}
            )
            data = _post("/marginal", payload, server)
        _write_field(data, args.out, fmt)
        print(f"wrote {args.out}")
        return 0

    if args.command == "verify":
        payload = {
            "suite": args.suite,
            "max_index": args.max_index,
            "params": _params_payload(args, cfg),
            "tolerances": cfg.get("tolerances", {}),
        }
        data = _post("/verify", payload, server)
        _print_checks(data)
        return 0 if data["passed"] else 1

    if args.command == "transform":
        payload = {
            "chi": args.gauge,
            "coupling": args.coupling,
            "n": args.n,
            "l": args.l,
            "params": _params_payload(args, cfg),
        }
        data = _post("/transform", payload, server)
        print("transformed hamiltonian:", data["hamiltonian"])
        print("transformed momenta:", data["momentum_1"], "|", data["momentum_2"])
        if data["eigen_supported"]:
            print(
                "eigen equation exact:",
                data["eigen_exact"],
                f"(max deviation {data['eigen_residual']:.3e})",
            )
            print(
                f"normalization: {data['normalization']:.12g} "
                f"(relative residual {data['normalization_residual']:.3e})"
            )
            print(f"reality residual: {data['reality_residual']:.3e}")
        else:
            print("transformed-state checks unavailable:", data["detail"])
        return 0

    if args.command == "serve":
        import uvicorn

        from .api import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    raise CliError(f"unknown command {args.command!r}", 2)


def main(argv: list[str] | None = None) -> int:
    import pydantic

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except pydantic.ValidationError as err:
        print(f"error: invalid request: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
