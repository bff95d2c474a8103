import csv
import io
import json
import math
from typing import Optional

from common.choices import UmbilicFlag
from common.models import FrozenModel

from ..utils import format_real


def _finite(value):
    if value is None or math.isnan(value):
        return None
    return value


class ScanRow(FrozenModel):
    """One row of scan output; field order is the CSV column order."""

    family: str
    eps: Optional[float] = None
    param1: Optional[float] = None
    param2: Optional[float] = None
    param3: Optional[float] = None
    param4: Optional[float] = None
    theta: Optional[float] = None
    phi: Optional[float] = None
    re_z: float
    im_z: float
    re_w: float
    im_w: float
    rho_resid: Optional[float] = None
    levi: Optional[float] = None
    re_det: Optional[float] = None
    im_det: Optional[float] = None
    norm_resid: Optional[float] = None
    flag: UmbilicFlag

    @classmethod
    def from_record(cls, record):
        params = list(record.params) + [None] * (4 - len(record.params))
        coords = list(record.coords or ()) + [None, None]
        return cls(
            family=record.kind,
            eps=record.eps,
            param1=params[0],
            param2=params[1],
            param3=params[2],
            param4=params[3],
            theta=coords[0],
            phi=coords[1],
            re_z=record.z.real,
            im_z=record.z.imag,
            re_w=record.w.real,
            im_w=record.w.imag,
            rho_resid=_finite(record.rho_resid),
            levi=_finite(record.levi),
            re_det=_finite(record.det_a3.real),
            im_det=_finite(record.det_a3.imag),
            norm_resid=_finite(record.normalized_residual),
            flag=record.flag,
        )


CSV_COLUMNS = tuple(ScanRow.model_fields)


def _csv_value(value):
    if isinstance(value, UmbilicFlag):
        return value.value
    if isinstance(value, str):
        return value
    return format_real(value)


def rows_to_csv(rows, columns=CSV_COLUMNS):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_value(getattr(row, column)) for column in columns])
    return buffer.getvalue()


def rows_to_json(rows):
    """One JSON array; floats use the shortest repr that round-trips exactly."""
    return json.dumps([row.model_dump(mode="json") for row in rows], indent=2) + "\n"


def scan_output(records, output_format):
    rows = [ScanRow.from_record(record) for record in records]
    if output_format == "json":
        return rows_to_json(rows)
    return rows_to_csv(rows)
