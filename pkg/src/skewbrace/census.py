"""Classification sweep over every brace of a given order."""

from __future__ import annotations

import json
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .braces import SkewBrace, is_symmetric
from .catalog import groups_of_order, identify_group
from .enumeration import enumerate_over_group
from .series import ann_term, classify_nilpotency, gamma_term
from .words import fast_i2_witness, in_class_In


@dataclass
class CensusRow:
    additive: str
    multiplicative: str
    symmetric: bool
    nilpotency: dict[str, int | None]
    ann_order: int
    gamma2_order: int
    in_I2: bool
    i2_witness: tuple[int, int] | None
    dot: list[list[int]] = field(repr=False)
    circ: list[list[int]] = field(repr=False)

    def to_json(self) -> dict:
        d = asdict(self)
        d["i2_witness"] = list(self.i2_witness) if self.i2_witness else None
        return d


@dataclass
class CensusReport:
    order: int
    rows: list[CensusRow]

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def symmetric(self) -> int:
        return sum(r.symmetric for r in self.rows)

    @property
    def non_symmetric(self) -> int:
        return self.total - self.symmetric

    @property
    def in_I2(self) -> int:
        return sum(r.in_I2 for r in self.rows)

    @property
    def not_in_I2(self) -> int:
        return self.total - self.in_I2

    def by_additive(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.rows:
            out[r.additive] = out.get(r.additive, 0) + 1
        return out

    def summary(self) -> str:
        return (
            f"order={self.order} total={self.total} symmetric={self.symmetric} "
            f"non_symmetric={self.non_symmetric} in_I2={self.in_I2} not_in_I2={self.not_in_I2}"
        )

    def summary_json(self) -> dict:
        return {
            "order": self.order,
            "total": self.total,
            "symmetric": self.symmetric,
            "non_symmetric": self.non_symmetric,
            "in_I2": self.in_I2,
            "not_in_I2": self.not_in_I2,
            "by_additive": self.by_additive(),
        }

    def jsonl(self) -> Iterable[str]:
        for r in self.rows:
            yield json.dumps(r.to_json(), sort_keys=True, separators=(",", ":"))


def classify(tag: str, A: SkewBrace) -> CensusRow:
    rep = classify_nilpotency(A)
    witness = fast_i2_witness(A)
    in_i2 = in_class_In(A, 2)  # raises if the two I_2 tests disagree
    return CensusRow(
        additive=tag,
        multiplicative=identify_group(A.circ),
        symmetric=is_symmetric(A),
        nilpotency=asdict(rep),
        ann_order=len(ann_term(A, 1)),
        gamma2_order=len(gamma_term(A, 2)),
        in_I2=in_i2,
        i2_witness=witness,
        dot=A.dot.mul.tolist(),
        circ=A.circ.mul.tolist(),
    )


def _census_group(args: tuple[int, int]) -> list[CensusRow]:
    order, k = args
    entry = groups_of_order(order)[k]
    return [classify(entry.tag, A) for A in enumerate_over_group(entry.group).braces]


def census(
    order: int,
    threads: int = 1,
    progress: Callable[[str, int], None] | None = None,
) -> CensusReport:
    """Enumerate and classify every brace of the given order.

    Rows are grouped by additive group in catalog order and then follow the
    enumerator's canonical order. With ``threads > 1`` the additive groups are
    processed in separate worker processes.
    """
    entries = groups_of_order(order)
    jobs = [(order, k) for k in range(len(entries))]
    rows: list[CensusRow] = []
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_census_group, jobs))
    else:
        results = []
        for job in jobs:
            results.append(_census_group(job))
            if progress is not None:
                progress(entries[job[1]].tag, len(results[-1]))
    for part in results:
        rows.extend(part)
    return CensusReport(order, rows)
