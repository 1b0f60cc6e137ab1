import csv
from pathlib import Path
from typing import Iterable, List, Union

from pydantic import BaseModel

from app.models import TraceRow

# CSV column -> TraceRow attribute
TRACE_COLUMNS = {
    "t": "t",
    "f14": "f14",
    "f23": "f23",
    "gamma": "gamma_c",
    "omega": "omega_c",
    "s_cond": "s_cond",
    "holevo_gap": "holevo_gap",
    "eub_adabi": "eub_adabi",
    "eub_berta": "eub_berta",
    "lhs": "lhs",
}
TRACE_HEADER = list(TRACE_COLUMNS)

PathLike = Union[str, Path]


def format_float(value: float) -> str:
    """Shortest decimal that parses back to the same double."""
    return repr(float(value))


def write_trace_csv(rows: Iterable[TraceRow], path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for row in rows:
            writer.writerow([format_float(getattr(row, attr)) for attr in TRACE_COLUMNS.values()])
    return path


def read_trace_csv(path: PathLike) -> List[TraceRow]:
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != TRACE_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        return [
            TraceRow(**{attr: float(record[column]) for column, attr in TRACE_COLUMNS.items()})
            for record in reader
        ]


def write_json(model: BaseModel, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(model.model_dump_json(by_alias=True, indent=2))
        f.write("\n")
    return path
