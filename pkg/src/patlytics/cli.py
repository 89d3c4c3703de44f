"""Command-line entry point: ingest, train, evaluate, serve, predict, summary.

Machine-readable JSON goes to stdout only; everything else (progress,
errors, usage) goes to stderr. Exit codes: 0 success, 1 user error,
2 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from datetime import date, timedelta
from pathlib import Path

from patlytics import PatlyticsError
from patlytics.config import RunConfig, load_config


class UserError(PatlyticsError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are user errors, exit 1
        self.print_usage(sys.stderr)
        raise UserError(message)


def _emit(payload: dict | list) -> None:
    sys.stdout.write(json.dumps(payload, ensure_ascii=False) + "\n")


def _log(message: str) -> None:
    sys.stderr.write(message + "\n")


def _open_store(cfg: RunConfig, must_exist: bool = False):
    from patlytics.store import AliasTable, PatentStore

    path = Path(cfg.store_path)
    if must_exist and not path.exists():
        raise UserError(f"store not found: {path}")
    aliases = (
        AliasTable.from_file(cfg.alias_table_path) if cfg.alias_table_path else None
    )
    return PatentStore(path, aliases=aliases)


def _schema(cfg: RunConfig):
    from patlytics.features import default_schema

    return default_schema(hash_dim=cfg.hash_dim, ngram_orders=frozenset(cfg.ngram_orders))


def cmd_ingest(cfg: RunConfig, args) -> int:
    from patlytics.ingest import ingest_path
    from patlytics.ingest.pipeline import JsonLinesWriter, write_quarantine_log

    store = _open_store(cfg)
    sinks = [store.upsert]
    export_fh = None
    if args.export:
        export_fh = open(args.export, "w", encoding="utf-8")
        sinks.append(JsonLinesWriter(export_fh))

    def sink(doc):
        for s in sinks:
            s(doc)

    try:
        report = ingest_path(args.input, sink, workers=args.workers)
    finally:
        if export_fh is not None:
            export_fh.close()
        store.close()
    if args.quarantine_log:
        with open(args.quarantine_log, "w", encoding="utf-8") as fh:
            write_quarantine_log(report, fh)
    _emit(report.to_json_dict())
    return 0


def cmd_train(cfg: RunConfig, args) -> int:
    from patlytics.model import ClockOrigin, build_dataset, save_bundle, train_grid

    store = _open_store(cfg, must_exist=True)
    schema = _schema(cfg)
    dataset = build_dataset(
        store,
        schema,
        clock_origin=ClockOrigin(cfg.clock_origin),
        split_seed=cfg.split_seed,
    )
    sizes = dataset.split_sizes()
    _log(f"dataset: {len(dataset.doc_numbers)} grants, splits {[s.value + ':' + str(n) for s, n in sizes.items()]}")
    outcome = train_grid(
        dataset,
        schema,
        lambda_grid=cfg.lambda_grid,
        rounds_grid=cfg.rounds_grid,
        alpha=cfg.alpha,
        trained_at=cfg.trained_at,
    )
    save_bundle(outcome.bundle, cfg.model_path)
    _log(f"saved {outcome.bundle.model_id} ({outcome.selected}) to {cfg.model_path}")
    _emit(outcome.to_json_dict())
    return 0


def cmd_evaluate(cfg: RunConfig, args) -> int:
    from patlytics.model import ClockOrigin, SplitLabel, build_dataset, evaluate_model, load_bundle

    store = _open_store(cfg, must_exist=True)
    bundle = load_bundle(cfg.model_path)
    dataset = build_dataset(
        store,
        bundle.schema,
        clock_origin=ClockOrigin(cfg.clock_origin),
        split_seed=cfg.split_seed,
    )
    X_test, y_test = dataset.rows_for(SplitLabel.TEST)
    metrics = evaluate_model(bundle, X_test, y_test)
    _emit({"model_id": bundle.model_id, "n_test": int(len(y_test)), "metrics": metrics})
    return 0


def cmd_serve(cfg: RunConfig, args) -> int:
    import uvicorn

    from patlytics.api import AppState, create_app
    from patlytics.model import load_bundle

    store = _open_store(cfg, must_exist=True)
    bundle = None
    if Path(cfg.model_path).exists():
        bundle = load_bundle(cfg.model_path)
        _log(f"loaded model {bundle.model_id}")
    else:
        _log("no model bundle found; prediction routes will return 503")
    app = create_app(AppState(store=store, bundle=bundle))
    uvicorn.run(app, host=args.host, port=cfg.port, log_level="warning")
    return 0


def cmd_predict(cfg: RunConfig, args) -> int:
    from patlytics.api.app import ApiException, InlineDocument, inline_to_document
    from patlytics.features import assemble_features
    from patlytics.model import load_bundle, predict_grant_lag

    raw = sys.stdin.read() if args.input == "-" else Path(args.input).read_text("utf-8")
    try:
        payload = json.loads(raw)
        inline = InlineDocument(**payload)
        doc = inline_to_document(inline)
    except (ValueError, ApiException) as exc:
        raise UserError(f"invalid inline document: {exc}")
    bundle = load_bundle(cfg.model_path)
    features = assemble_features(doc, bundle.schema)
    result = predict_grant_lag(bundle, features)
    _emit({**result.to_json_dict(), "model_id": bundle.model_id})
    return 0


def cmd_summary(cfg: RunConfig, args) -> int:
    from patlytics.store import EntityKey, EntityKind

    store = _open_store(cfg, must_exist=True)
    kind = EntityKind.INVENTOR if args.kind == "inventor" else EntityKind.ORGANISATION
    stats = store.entity_summary(EntityKey(kind, args.id))
    _emit(stats.to_json_dict())
    return 0


_BULK_BASE = "https://bulkdata.uspto.gov/data/patent"


def cmd_fetch(cfg: RunConfig, args) -> int:
    """Print the weekly bulk-file URLs covering a date range (no download)."""
    start = date.fromisoformat(args.date_from)
    end = date.fromisoformat(args.date_to)
    if start > end:
        raise UserError(f"invalid range: {start} > {end}")
    grants, applications = [], []
    day = start
    while day <= end:
        if day.weekday() == 1:  # grants publish Tuesdays
            grants.append(
                f"{_BULK_BASE}/grant/redbook/fulltext/{day.year}/ipg{day:%y%m%d}.zip"
            )
        if day.weekday() == 3:  # applications publish Thursdays
            applications.append(
                f"{_BULK_BASE}/application/redbook/fulltext/{day.year}/ipa{day:%y%m%d}.zip"
            )
        day += timedelta(days=1)
    _emit({"grants": grants, "applications": applications, "note": "stub: not downloaded"})
    return 0


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="JSON config file")
    for key, kwargs in (
        ("store-path", {}),
        ("alias-table-path", {}),
        ("model-path", {}),
        ("hash-dim", {"type": int}),
        ("ngram-orders", {"help": "comma list, subset of 1,2"}),
        ("lambda-grid", {"help": "comma list of ridge penalties"}),
        ("rounds-grid", {"help": "comma list of boosting round counts"}),
        ("alpha", {"type": float}),
        ("split-seed", {"type": int}),
        ("clock-origin", {"choices": ["filing_date", "publication_date"]}),
        ("port", {"type": int}),
        ("trained-at", {}),
    ):
        common.add_argument(f"--{key}", default=None, **kwargs)

    parser = _Parser(prog="patlytics", description="Patent analytics pipeline")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("ingest", parents=[common], help="parse bulk XML into the store")
    p.add_argument("--input", required=True, help="bulk XML file or directory")
    p.add_argument("--export", default=None, help="also write documents as JSON lines")
    p.add_argument("--quarantine-log", default=None, help="write quarantine records as JSON lines")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(handler=cmd_ingest)

    p = sub.add_parser("train", parents=[common], help="train and save the best model")
    p.set_defaults(handler=cmd_train)

    p = sub.add_parser("evaluate", parents=[common], help="evaluate the saved model")
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(handler=cmd_serve)

    p = sub.add_parser("predict", parents=[common], help="predict one inline document")
    p.add_argument("--input", default="-", help="JSON file, or - for stdin")
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("summary", parents=[common], help="entity summary statistics")
    p.add_argument("--kind", choices=["inventor", "org"], required=True)
    p.add_argument("--id", required=True, help="canonical entity id")
    p.set_defaults(handler=cmd_summary)

    p = sub.add_parser("fetch", parents=[common], help="print bulk-data URLs (stub)")
    p.add_argument("--from", dest="date_from", required=True, help="YYYY-MM-DD")
    p.add_argument("--to", dest="date_to", required=True, help="YYYY-MM-DD")
    p.set_defaults(handler=cmd_fetch)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_usage(sys.stderr)
            raise UserError("a subcommand is required")
        overrides = {
            key.replace("-", "_"): getattr(args, key.replace("-", "_"), None)
            for key in (
                "store-path", "alias-table-path", "model-path", "hash-dim",
                "ngram-orders", "lambda-grid", "rounds-grid", "alpha",
                "split-seed", "clock-origin", "port", "trained-at",
            )
        }
        cfg = load_config(args.config, overrides)
        return args.handler(cfg, args)
    except UserError as exc:
        _log(f"error: {exc}")
        return 1
    except PatlyticsError as exc:
        _log(f"error: {exc}")
        return 1
    except KeyboardInterrupt:
        return 1
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
