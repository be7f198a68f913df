"""
Module: linsolve.py

Sparse exact Gaussian elimination over the coefficient field.

Rows are dicts from hashable unknowns to Scalars. The system is kept in
reduced row echelon form as equations arrive, so consistency, determined
unknowns and the nullspace can be read off at any time.
"""
from typing import Dict, Generic, Hashable, Iterable, List, Optional, Sequence, Tuple, TypeVar

from knsuper.core.coeffield import ONE, ZERO, Scalar, as_scalar

K = TypeVar("K", bound=Hashable)
Row = Dict[K, Scalar]


def _axpy(target: Dict, source: Dict, factor: Scalar) -> None:
    """target += factor * source, dropping zeros."""
    for key, value in source.items():
        updated = target.get(key, ZERO) + factor * value
        if updated.is_zero():
            target.pop(key, None)
        else:
            target[key] = updated


class LinearSystem(Generic[K]):
    """Incremental RREF. ``order`` ranks unknowns; pivots prefer the highest rank."""

    def __init__(self, unknowns: Sequence[K], prefer_last: bool = True):
        self.unknowns: List[K] = list(unknowns)
        self._rank = {u: i for i, u in enumerate(self.unknowns)}
        self.prefer_last = prefer_last
        self.rows: Dict[K, Tuple[Row, Scalar]] = {}
        self.consistent = True
        self.equations = 0

    def _pick_pivot(self, row: Row) -> K:
        key = self._rank.__getitem__
        return max(row, key=key) if self.prefer_last else min(row, key=key)

    def reduce(self, row: Row, rhs: Scalar = ZERO) -> Tuple[Row, Scalar]:
        row = {k: as_scalar(v) for k, v in row.items() if not as_scalar(v).is_zero()}
        rhs = as_scalar(rhs)
        for key in [k for k in row if k in self.rows]:
            factor = row.get(key)
            if factor is None:
                continue
            pivot_row, pivot_rhs = self.rows[key]
            _axpy(row, pivot_row, -factor)
            rhs = rhs - factor * pivot_rhs
        return row, rhs

    def add_equation(self, row: Dict[K, object], rhs=ZERO) -> bool:
        """Add sum row[k]*x_k = rhs; returns False once the system is inconsistent."""
        for key in row:
            if key not in self._rank:
                self._rank[key] = len(self.unknowns)
                self.unknowns.append(key)
        self.equations += 1
        reduced, rhs = self.reduce(row, rhs)
        if not reduced:
            if not rhs.is_zero():
                self.consistent = False
            return self.consistent
        pivot = self._pick_pivot(reduced)
        inv = reduced[pivot].inverse()
        reduced = {k: v * inv for k, v in reduced.items()}
        rhs = rhs * inv
        for other_key, (other_row, other_rhs) in list(self.rows.items()):
            factor = other_row.get(pivot)
            if factor is None:
                continue
            updated = dict(other_row)
            _axpy(updated, reduced, -factor)
            self.rows[other_key] = (updated, other_rhs - factor * rhs)
        self.rows[pivot] = (reduced, rhs)
        return self.consistent

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[K]:
        return sorted(self.rows, key=self._rank.__getitem__)

    def free_unknowns(self) -> List[K]:
        return [u for u in self.unknowns if u not in self.rows]

    def value(self, unknown: K) -> Optional[Scalar]:
        """Value of ``unknown`` if the equations pin it down, else None."""
        if unknown not in self.rows:
            return None
        row, rhs = self.rows[unknown]
        if len(row) != 1:
            return None
        return rhs

    def determined(self) -> Dict[K, Scalar]:
        out = {}
        for key in self.rows:
            v = self.value(key)
            if v is not None:
                out[key] = v
        return out

    def nullspace(self) -> List[Row]:
        """A basis of solutions of the homogeneous system."""
        basis = []
        for free in self.free_unknowns():
            vec: Row = {free: ONE}
            for pivot, (row, _) in self.rows.items():
                c = row.get(free)
                if c is not None:
                    vec[pivot] = -c
            basis.append(vec)
        return basis

    def particular_solution(self) -> Optional[Row]:
        if not self.consistent:
            return None
        return {pivot: rhs for pivot, (_, rhs) in self.rows.items() if not rhs.is_zero()}


def span_rank(vectors: Iterable[Dict[K, Scalar]], unknowns: Sequence[K] = ()) -> int:
    system: LinearSystem = LinearSystem(unknowns)
    for v in vectors:
        system.add_equation(v)
    return system.rank
