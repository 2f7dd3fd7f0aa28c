"""Thin command-line client for the experiment service.

One subcommand per experiment.  The config comes from an optional YAML
file (--config), every field is overridable by a flag of the same dotted
name (e.g. --plan.n-trotter 4, --detunings "[1e-5, 1e5]"), and the common
knobs have short flags (--seed, --shots, --runs, --jobs, --output).

By default requests run against an in-process instance of the service;
--url targets a remote one.  Exit codes: 0 success, 2 config error,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone

import yaml
from pydantic import ValidationError

from .config import ExperimentConfig
from .experiments import COLUMNS

CANONICAL_FLAGS = {
    "seed": "seed",
    "shots": "shots",
    "runs": "n_runs",
    "jobs": "jobs",
    "output": "output",
}


def _leaf_fields(model_cls, prefix=""):
    """Dotted paths of every config leaf, e.g. 'params.g', 'detunings'."""
    from pydantic import BaseModel

    for name, info in model_cls.model_fields.items():
        annotation = info.annotation
        if isinstance(annotation, type) and issubclass(annotation, BaseModel):
            yield from _leaf_fields(annotation, f"{prefix}{name}.")
        else:
            yield f"{prefix}{name}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jchsim",
        description="Coupled-cavity phase-transition experiments")
    sub = parser.add_subparsers(dest="experiment", required=True)
    experiments = {
        "lambda": "overlap observable Lambda(t) per detuning",
        "variance": "excitation variance trajectory per detuning",
        "order-parameter": "time-averaged variance vs detuning",
        "benchmark-uv": "exact vs Trotterized interaction unitary",
        "gate-scaling": "2-qubit gate count of one Trotter step vs L",
        "validate": "check a config and print diagnostics",
    }
    for name, help_text in experiments.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="YAML config file")
        p.add_argument("--url", help="remote service URL (default: in-process)")
        for flag, field_name in CANONICAL_FLAGS.items():
            p.add_argument(f"--{flag}", dest=f"flag_{field_name}")
        for dotted in _leaf_fields(ExperimentConfig):
            option = "--" + dotted.replace("_", "-")
            if option not in (f"--{f}" for f in CANONICAL_FLAGS):
                p.add_argument(option, dest=f"dotted:{dotted}",
                               metavar="VALUE", help=argparse.SUPPRESS)
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="dotted config override, e.g. --set params.g=0.2")
    return parser


def _assign(config: dict, dotted: str, raw: str) -> None:
    value = yaml.safe_load(raw)
    node = config
    parts = dotted.split(".")
    for part in parts[:-1]:
        node = node.setdefault(part, {})
    node[parts[-1]] = value


def _build_config(args) -> ExperimentConfig:
    data = {}
    if args.config:
        with open(args.config) as fh:
            data = yaml.safe_load(fh) or {}
    experiment = args.experiment
    if experiment != "validate":
        data["experiment"] = experiment
    elif "experiment" not in data:
        data["experiment"] = "lambda"
    if experiment == "benchmark-uv":
        data.setdefault("plan", {}).setdefault("n_trotter", 10)
    for key, value in vars(args).items():
        if key.startswith("dotted:") and value is not None:
            _assign(data, key.split(":", 1)[1], value)
        elif key.startswith("flag_") and value is not None:
            _assign(data, key[5:], value)
    for item in args.set:
        if "=" not in item:
            raise ValueError(f"--set expects KEY=VALUE, got {item!r}")
        dotted, raw = item.split("=", 1)
        _assign(data, dotted.strip(), raw)
    return ExperimentConfig(**data)


def _client(url: str | None):
    if url:
        import httpx

        return httpx.Client(base_url=url)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: str, columns, rows) -> None:
    lines = [f"# generated {datetime.now(timezone.utc).isoformat()}"]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_format_cell(row[c]) for c in columns))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _build_config(args)
    except ValidationError as exc:
        for err in exc.errors():
            loc = ".".join(str(p) for p in err["loc"])
            print(f"config error: {loc}: {err['msg']}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    with _client(args.url) as client:
        endpoint = "/validate" if args.experiment == "validate" else "/run"
        response = client.post(endpoint, json=config.model_dump())
        if response.status_code == 422:
            detail = response.json().get("detail", {})
            diags = detail.get("diagnostics") if isinstance(detail, dict) else None
            for d in diags or [str(detail)]:
                print(f"config error: {d}", file=sys.stderr)
            return 2
        if response.status_code == 500:
            detail = response.json().get("detail", {})
            if isinstance(detail, dict) and detail.get("type") == "numerical-failure":
                print(f"numerical failure: {detail.get('message')}", file=sys.stderr)
                return 3
            print(f"service error: {detail}", file=sys.stderr)
            return 1
        if response.status_code != 200:
            print(f"service error: HTTP {response.status_code}", file=sys.stderr)
            return 1
        payload = response.json()

    if args.experiment == "validate":
        diags = payload["diagnostics"]
        for d in diags:
            print(f"diagnostic: {d}")
        if not diags:
            print("config ok")
        return 0 if not diags else 2

    if payload.get("extras", {}).get("text"):
        print(payload["extras"]["text"])
    output = config.output
    if output is None and args.experiment != "benchmark-uv":
        output = f"{config.experiment}.csv"
    if output:
        write_csv(output, payload["columns"], payload["rows"])
        print(f"wrote {len(payload['rows'])} rows to {output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
