"""Thin command-line client for the verification service.

Every subcommand builds a request, sends it through the HTTP interface,
and prints the response JSON (keys sorted, so output is byte-stable).
By default the request is dispatched to an in-process instance of the
service over an ASGI transport -- no socket, same wire format; pass
``--server URL`` to talk to a remote instance instead.

Exit codes: 0 when the computation verified, 1 when an identity was
falsified (the first disagreeing pair goes to stderr), 2 on usage or
validation errors.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
from pathlib import Path

import httpx

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2


def _post(path: str, payload: dict, server: str | None) -> httpx.Response:
    if server:
        return httpx.post(server.rstrip("/") + path, json=payload, timeout=300.0)

    async def go() -> httpx.Response:
        from qsym.service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://qsym") as client:
            return await client.post(path, json=payload, timeout=300.0)

    return asyncio.run(go())


def _emit(body: dict) -> None:
    print(json.dumps(body, indent=2, sort_keys=True))


def _fail_usage(message: str) -> int:
    print(message, file=sys.stderr)
    return EXIT_USAGE


def _call(path: str, payload: dict, server: str | None) -> tuple[int, dict | None]:
    """POST and fold transport/validation problems into exit code 2."""
    try:
        response = _post(path, payload, server)
    except httpx.HTTPError as exc:
        return _fail_usage(f"request failed: {exc}"), None
    if response.status_code != 200:
        detail = response.text
        try:
            detail = json.dumps(response.json(), indent=2, sort_keys=True)
        except ValueError:
            pass
        return _fail_usage(f"rejected ({response.status_code}):\n{detail}"), None
    return EXIT_OK, response.json()


def _weights(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad weight list {text!r}") from exc


def cmd_beta(args: argparse.Namespace) -> int:
    code, body = _call("/beta", {"n": args.n, "q": args.q}, args.server)
    if body is None:
        return code
    _emit(body)
    return EXIT_OK


def cmd_beta_poly(args: argparse.Namespace) -> int:
    code, body = _call("/beta-poly", {"n": args.n, "q": args.q, "x": args.x}, args.server)
    if body is None:
        return code
    _emit(body)
    return EXIT_OK


def cmd_tsum(args: argparse.Namespace) -> int:
    payload = {"m": args.m, "l": args.l, "q": args.q, "weights": args.w}
    code, body = _call("/tsum", payload, args.server)
    if body is None:
        return code
    _emit(body)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    payload = {
        "kind": args.kind,
        "n": args.n,
        "x": args.x,
        "q": args.q,
        "weights": args.w,
        "budget": args.budget,
    }
    if args.kind == "thm1":
        if args.max_order is None:
            return _fail_usage("verify thm1 needs --max-order")
        payload["max_order"] = args.max_order
    else:
        if args.m is None:
            return _fail_usage(f"verify {args.kind} needs --m")
        payload["m"] = args.m
    code, body = _call("/verify", payload, args.server)
    if body is None:
        return code
    _emit(body)
    if body["verdict"]:
        return EXIT_OK
    witness = body.get("first_disagreement")
    if witness:
        print(f"disagreement: {json.dumps(witness, sort_keys=True)}", file=sys.stderr)
    return EXIT_FALSIFIED


def cmd_padic(args: argparse.Namespace) -> int:
    payload = {
        "check": args.check,
        "p": args.p,
        "q_offset": args.q_offset,
        "n": args.n,
        "n_max": args.N_max,
        "precision": args.precision,
    }
    code, body = _call("/padic", payload, args.server)
    if body is None:
        return code
    _emit(body)
    return EXIT_OK if body["passed"] else EXIT_FALSIFIED


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        config = json.loads(Path(args.config).read_text())
    except (OSError, ValueError) as exc:
        return _fail_usage(f"cannot read sweep config: {exc}")
    if not isinstance(config, dict):
        return _fail_usage("sweep config must be a JSON object")
    out_dir = os.environ.get("QSYM_OUT_DIR") or config.get("output_dir") or "certificates"
    code, body = _call("/sweep", config, args.server)
    if body is None:
        return code
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    for certificate in body["certificates"]:
        target = directory / f"{certificate['certificate_id']}.json"
        blob = json.dumps(certificate, indent=2, sort_keys=True) + "\n"
        tmp = target.with_suffix(".json.tmp")
        tmp.write_text(blob)
        os.replace(tmp, target)
    print(f"{body['passed']} passed, {body['failed']} failed")
    return EXIT_OK if body["failed"] == 0 else EXIT_FALSIFIED


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("qsym.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsym",
        description="Exact q-Bernoulli symmetry verification (thin client).",
    )
    parser.add_argument("--server", default=None, help="remote service URL (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("beta", help="one q-Bernoulli number")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", required=True, help='rational text, e.g. "2" or "3/5"')
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("beta-poly", help="one q-Bernoulli polynomial value")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--x", type=int, required=True)
    p.set_defaults(func=cmd_beta_poly)

    p = sub.add_parser("tsum", help="one residue-weighted power sum")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--w", type=_weights, required=True, help="comma-separated weights")
    p.set_defaults(func=cmd_tsum)

    p = sub.add_parser("verify", help="exhaustive S_n verification")
    p.add_argument("kind", choices=["thm1", "thm2", "thm3", "cross"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--max-order", type=int, default=None, dest="max_order")
    p.add_argument("--x", type=int, default=0)
    p.add_argument("--q", required=True)
    p.add_argument("--w", type=_weights, required=True)
    p.add_argument("--budget", type=int, default=720)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("padic", help="p-adic integral convergence checks")
    p.add_argument("check", choices=["eq2", "eq6", "eq7"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q-offset", type=int, required=True, dest="q_offset")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N-max", type=int, required=True, dest="N_max")
    p.add_argument("--precision", type=int, required=True)
    p.set_defaults(func=cmd_padic)

    p = sub.add_parser("sweep", help="run a config-driven grid, write certificates")
    p.add_argument("config", help="path to a sweep config JSON file")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
