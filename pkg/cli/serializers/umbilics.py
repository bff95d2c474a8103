from common.models import FrozenModel

from .scan import rows_to_csv, rows_to_json


class UmbilicRow(FrozenModel):
    family: str
    re_z: float
    im_z: float
    re_w: float
    im_w: float
    norm_resid: float
    start: int

    @classmethod
    def from_candidate(cls, family, candidate):
        re_z, im_z, re_w, im_w = candidate.point.real_coords
        return cls(
            family=family.kind.value,
            re_z=re_z,
            im_z=im_z,
            re_w=re_w,
            im_w=im_w,
            norm_resid=candidate.residual,
            start=candidate.start,
        )


UMBILIC_COLUMNS = tuple(UmbilicRow.model_fields)


def umbilic_output(family, candidates, output_format):
    rows = [UmbilicRow.from_candidate(family, candidate) for candidate in candidates]
    if output_format == "json":
        return rows_to_json(rows)
    return rows_to_csv(rows, UMBILIC_COLUMNS)
