"""
Module: structure_table.py

Sparse golden tables: scalar entries indexed by basis pairs (2-cocycles) or
coefficient maps indexed by one basis element (1-cocycles). Omitted entries
are zero. Tables serialise to JSON records, CSV or aligned text.
"""
import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple, Union

from pydantic import BaseModel

from knsuper.core.coeffield import Scalar, render_scalar
from knsuper.core.densities import BasisIndex

ScalarRenderer = Callable[[Scalar], str]


class PairRecord(BaseModel):
    left: str
    right: str
    value: str


class CoeffRecord(BaseModel):
    arg: str
    coeffs: Dict[str, str]


@dataclass
class StructureTable:
    name: str
    mode: str
    pairs: Dict[Tuple[BasisIndex, BasisIndex], Scalar] = field(default_factory=dict)
    maps: Dict[BasisIndex, Dict[BasisIndex, Scalar]] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "maps" if self.maps else "pairs"

    def set_pair(self, left: BasisIndex, right: BasisIndex, value: Scalar) -> None:
        if not value.is_zero():
            self.pairs[(left, right)] = value

    def pair(self, left: BasisIndex, right: BasisIndex) -> Scalar:
        return self.pairs.get((left, right), Scalar.from_int(0))

    def set_map(self, arg: BasisIndex, coeffs: Dict[BasisIndex, Scalar]) -> None:
        self.maps[arg] = {k: v for k, v in coeffs.items() if not v.is_zero()}

    def coeffs(self, arg: BasisIndex) -> Dict[BasisIndex, Scalar]:
        return self.maps.get(arg, {})

    def records(self, render: ScalarRenderer = render_scalar) -> List[Union[PairRecord, CoeffRecord]]:
        if self.maps:
            return [
                CoeffRecord(
                    arg=str(arg),
                    coeffs={str(k): render(v) for k, v in sorted(self.maps[arg].items())},
                )
                for arg in sorted(self.maps)
            ]
        return [
            PairRecord(left=str(left), right=str(right), value=render(self.pairs[(left, right)]))
            for left, right in sorted(self.pairs)
        ]

    def to_json(self, render: ScalarRenderer = render_scalar) -> str:
        return json.dumps([r.model_dump() for r in self.records(render)], indent=2)

    def to_csv(self, render: ScalarRenderer = render_scalar) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if self.maps:
            writer.writerow(["arg", "dual", "value"])
            for record in self.records(render):
                if not record.coeffs:
                    writer.writerow([record.arg, "", "0"])
                for dual, value in record.coeffs.items():
                    writer.writerow([record.arg, dual, value])
        else:
            writer.writerow(["left", "right", "value"])
            for record in self.records(render):
                writer.writerow([record.left, record.right, record.value])
        return buffer.getvalue()

    def to_pretty(self, render: ScalarRenderer = render_scalar) -> str:
        lines = [f"# {self.name} ({self.mode})"]
        if self.maps:
            for record in self.records(render):
                terms = " + ".join(f"({v})*{k}" for k, v in record.coeffs.items()) or "0"
                lines.append(f"{record.arg:>10} -> {terms}")
        else:
            for record in self.records(render):
                lines.append(f"{record.left:>10} {record.right:>10} = {record.value}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str, render: ScalarRenderer = render_scalar) -> str:
        if fmt == "json":
            return self.to_json(render)
        if fmt == "csv":
            return self.to_csv(render)
        return self.to_pretty(render)
