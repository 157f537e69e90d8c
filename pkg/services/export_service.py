# services/export_service.py
import logging
import os
from typing import Optional, Tuple

import pandas as pd

from core.config import settings
from core.constants import SWEEP_COLUMNS
from schemas.sweep import SweepReport

logger = logging.getLogger(__name__)


class ExportService:
    """Tabular sweep reports: CSV with a fixed column order, mirrored 1:1 as JSON records."""

    def __init__(self, export_dir: Optional[str] = None):
        self.export_dir = export_dir or settings.EXPORT_DIR

    @staticmethod
    def sweep_frame(report: SweepReport) -> pd.DataFrame:
        records = []
        for row in report.rows:
            records.append({
                "family": row.family.value,
                "params": ";".join(f"{k}={v}" for k, v in row.params.items()),
                "outcome": row.outcome.value,
                "order_achieved": row.order_achieved,
                "order_promised": row.order_promised,
                "oracle": row.oracle.value,
                "wall_ms": row.wall_ms,
                "witness": row.witness,
            })
        df = pd.DataFrame(records)
        df = df.reindex(columns=SWEEP_COLUMNS)
        return df.astype({"order_achieved": "Int64", "order_promised": "Int64", "wall_ms": "Float64"})

    @staticmethod
    def sweep_csv(report: SweepReport) -> str:
        return ExportService.sweep_frame(report).to_csv(index=False, lineterminator="\n")

    @staticmethod
    def sweep_json(report: SweepReport) -> str:
        return ExportService.sweep_frame(report).to_json(orient="records", indent=2) + "\n"

    def write_sweep(self, report: SweepReport, path: Optional[str] = None) -> Tuple[str, str]:
        """Write `<path>.csv` and `<path>.json`; the default stem lives in the export directory."""
        if path is None:
            path = os.path.join(self.export_dir, f"{report.family.value}_seed{report.seed}")
        stem, ext = os.path.splitext(path)
        if ext.lower() not in (".csv", ".json"):
            stem = path
        folder = os.path.dirname(stem)
        if folder:
            os.makedirs(folder, exist_ok=True)

        csv_path, json_path = f"{stem}.csv", f"{stem}.json"
        with open(csv_path, "w", encoding="utf-8", newline="") as f:
            f.write(self.sweep_csv(report))
        with open(json_path, "w", encoding="utf-8") as f:
            f.write(self.sweep_json(report))
        logger.info(f"write_sweep: {len(report.rows)} rows written to {csv_path} and {json_path}")
        return csv_path, json_path
