"""Command-line front end.

The CLI is a thin client of the HTTP service: every command builds a
request, posts it to the service, and renders the JSON payload that comes
back. By default the request goes to an in-process application instance
over an ASGI transport (no socket, no separate process); ``--server``
points the same client at a remote instance instead.

Exit codes: 0 success, 1 input error (unparseable files, unknown
flags/commands, malformed requests), 2 numerical-domain error (well-formed
input the mathematics rejects, such as growth at or above the discount
rate). Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import asyncio
import os
import sys
from pathlib import Path
from typing import Sequence

import httpx

from .errors import InputError
from .render import FORMATS, render

__all__ = ["build_parser", "console_main", "run"]

_ENV_FORMAT = "FUNDVAL_FORMAT"


class _ServiceError(Exception):
    """A non-200 service response, carrying the CLI exit code."""

    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the CLI contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip() != ""]


def _str_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip() != ""]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=FORMATS,
        default=os.environ.get(_ENV_FORMAT, "table"),
        help=f"output format (default from ${_ENV_FORMAT}, else table)",
    )
    common.add_argument(
        "--server",
        metavar="URL",
        default=None,
        help="base URL of a running service; default runs the service in-process",
    )

    parser = _Parser(prog="fundval", description="Deterministic equity valuation toolkit.")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("value", parents=[common], help="value with all three models plus the equity bridge")
    p.add_argument("--statements", required=True, help="statements csv (period,item,value)")
    p.add_argument("--assumptions", required=True, help="assumptions file (key=value lines)")
    p.add_argument("--models", type=_str_list, default=["fcfvm", "revm", "aegm"], metavar="M1,M2")
    p.add_argument("--wacc", type=float, default=None, help="override the discount rate")
    p.add_argument("--growth", type=float, default=None, help="override the growth rate")
    p.add_argument(
        "--rounded-factors",
        action="store_true",
        help="discount with two-decimal factors for row-level reconciliation",
    )

    p = sub.add_parser("sensitivity", parents=[common], help="entity/equity value over rate grids")
    p.add_argument("--statements", required=True)
    p.add_argument("--assumptions", required=True)
    p.add_argument("--model", default="fcfvm")
    p.add_argument("--wacc", type=_float_list, default=[], metavar="R1,R2,...")
    p.add_argument("--growth", type=_float_list, default=[], metavar="G1,G2,...")
    p.add_argument("--cross", action="store_true", help="full wacc x growth matrix instead of one-at-a-time sweeps")

    p = sub.add_parser("multiples", parents=[common], help="comparable-company multiples valuation")
    p.add_argument("--statements", required=True)
    p.add_argument("--comparables", required=True, help="comparables csv (name,entity_value,ebit,sales)")
    p.add_argument("--drivers", type=_str_list, default=["ebit", "sales"], metavar="D1,D2")
    p.add_argument("--methods", type=_str_list, default=["median", "harmonic_mean"], metavar="M1,M2")
    p.add_argument("--shares", type=float, default=None)

    p = sub.add_parser("benford", parents=[common], help="first-digit screen over a csv's numeric cells")
    p.add_argument("--input", required=True, help="csv file; every numeric cell is screened")
    p.add_argument("--min-sample", type=int, default=50)

    p = sub.add_parser("lim", parents=[common], help="linear information dynamics closed forms")
    p.add_argument("--model", choices=["ohlson", "feltham_ohlson"], default="ohlson")
    p.add_argument("--rho", type=float, required=True, help="gross discount rate, e.g. 1.09")
    p.add_argument("--omega0", type=float, default=0.0)
    p.add_argument("--omega1", type=float, default=0.0)
    p.add_argument("--gamma1", type=float, default=0.0)
    p.add_argument("--growth-factor", type=float, default=1.0)
    p.add_argument("--book-value", type=float, default=0.0)
    p.add_argument("--residual-earnings", type=float, default=0.0)
    p.add_argument("--other-info", type=float, default=0.0)
    p.add_argument("--earnings", type=float, default=None)
    p.add_argument("--dividend", type=float, default=None)
    p.add_argument("--noa", type=float, default=0.0)
    p.add_argument("--nfa", type=float, default=0.0)

    p = sub.add_parser("reconcile", parents=[common], help="recompute the bundled worked example's printed figures")
    p.add_argument("--fixture", default="ms")

    return parser


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _request_for(ns: argparse.Namespace) -> tuple[str, dict]:
    """Map parsed arguments to (service path, request body)."""
    if ns.command == "value":
        return "/value", {
            "statements": _read(ns.statements),
            "assumptions": _read(ns.assumptions),
            "models": ns.models,
            "wacc": ns.wacc,
            "growth": ns.growth,
            "rounded_factors": ns.rounded_factors,
        }
    if ns.command == "sensitivity":
        return "/sensitivity", {
            "statements": _read(ns.statements),
            "assumptions": _read(ns.assumptions),
            "model": ns.model,
            "wacc_values": ns.wacc,
            "growth_values": ns.growth,
            "cross": ns.cross,
        }
    if ns.command == "multiples":
        return "/multiples", {
            "statements": _read(ns.statements),
            "comparables": _read(ns.comparables),
            "drivers": ns.drivers,
            "methods": ns.methods,
            "shares": ns.shares,
        }
    if ns.command == "benford":
        return "/benford", {"input": _read(ns.input), "min_sample": ns.min_sample}
    if ns.command == "lim":
        return "/lim", {
            "model": ns.model,
            "rho": ns.rho,
            "omega0": ns.omega0,
            "omega1": ns.omega1,
            "gamma1": ns.gamma1,
            "growth_factor": ns.growth_factor,
            "book_value": ns.book_value,
            "residual_earnings": ns.residual_earnings,
            "other_info": ns.other_info,
            "earnings": ns.earnings,
            "dividend": ns.dividend,
            "noa": ns.noa,
            "nfa": ns.nfa,
        }
    return "/reconcile", {"fixture": ns.fixture}


def _shape_error_message(detail) -> str:
    """Flatten FastAPI's list-form validation detail to one line."""
    if isinstance(detail, list):
        parts = []
        for item in detail:
            loc = ".".join(str(piece) for piece in item.get("loc", ()) if piece != "body")
            parts.append(f"{loc}: {item.get('msg', 'invalid')}" if loc else item.get("msg", "invalid"))
        return "; ".join(parts) or "invalid request"
    return str(detail)


async def _post(server: str | None, path: str, body: dict) -> dict:
    if server is None:
        from .service.app import create_app

        transport = httpx.ASGITransport(app=create_app())
        client = httpx.AsyncClient(transport=transport, base_url="http://fundval.internal")
    else:
        client = httpx.AsyncClient(base_url=server, timeout=30.0)
    async with client:
        response = await client.post(path, json=body)
    if response.status_code == 200:
        return response.json()
    try:
        detail = response.json().get("detail")
    except ValueError:
        raise _ServiceError(1, f"service returned HTTP {response.status_code}")
    if isinstance(detail, dict) and detail.get("type") == "domain_error":
        raise _ServiceError(2, detail.get("message", "domain error"))
    if isinstance(detail, dict):
        raise _ServiceError(1, detail.get("message", "input error"))
    raise _ServiceError(1, _shape_error_message(detail))


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    if ns.command is None:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: a command is required", file=sys.stderr)
        return 1
    try:
        path, body = _request_for(ns)
        payload = asyncio.run(_post(ns.server, path, body))
        sys.stdout.write(render(payload, ns.format))
    except InputError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1
    except _ServiceError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except httpx.HTTPError as exc:
        print(f"{parser.prog}: error: cannot reach service: {exc}", file=sys.stderr)
        return 1
    return 0


def console_main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    console_main()
