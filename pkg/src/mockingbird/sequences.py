"""Closed recurrences for the six counting sequences, the catalytic
interval family, b-file comparison, and the all-methods cross-check.

Internal values are ladder-indexed: index d refers to the upset of the
d-ladder (equivalently, degree d for the census sequences, height d for
class counts).  The conventional indexing over the lattices M(d) prepends
the M(0) value to the three poset-count sequences; the three census
sequences coincide under both indexings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import series as serieslib
from .oracle import oracle_extremal_census, oracle_poset_counts

SEQUENCE_NAMES = ("sizes", "edges", "intervals", "motzkin", "min", "classes")

# Sequences that count poset data of M(d) and need the prepended M(0) term.
_POSET_SEQUENCES = {"sizes": 1, "edges": 0, "intervals": 1}

# Golden prefixes (conventional indexing), used by the cross-check.
GOLDEN_PREFIXES = {
    "sizes": [1, 1, 2, 6, 42, 1806, 3263442, 10650056950806],
    "edges": [0, 0, 1, 7, 97, 8287, 29942737, 195432804247687],
    "intervals": [1, 1, 3, 17, 371, 144513, 20932611523,
                  438176621806663544657],
    "motzkin": [1, 1, 1, 2, 4, 9, 21, 51],
    "min": [1, 1, 2, 4, 12, 34, 108, 344],
    "classes": [1, 1, 2, 10, 170, 33490, 1133870930, 1285739648704587610],
}


class SequenceError(ValueError):
    pass


@dataclass
class SequenceTable:
    name: str
    values: list[int]
    indexing: str  # "ladder" | "mockingbird"
    method: str  # "recurrence" | "series" | "oracle" | "bfile"

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "indexing": self.indexing,
            "method": self.method,
            "values": [str(v) for v in self.values],
        }


# ---------------------------------------------------------------------------
# Recurrences (ladder-indexed internally)


def _sizes_ladder(count: int) -> list[int]:
    out = [1]
    while len(out) < count:
        a = out[-1]
        out.append(a + a * a)
    return out[:count]


def _edges_ladder(count: int) -> list[int]:
    sizes = _sizes_ladder(count)
    out = [0]
    while len(out) < count:
        e, s = out[-1], sizes[len(out) - 1]
        out.append(e + s + 2 * e * s)
    return out[:count]


_INTERVAL_MEMO: dict[tuple[int, int], int] = {}


def interval_family(k: int, d: int) -> int:
    """Catalytic interval counts: a_k(0) = 1 and
    a_k(d) = a_k(d-1)^2 + sum over i in [0..k] of C(k,i) a_{k+i}(d-1).
    a_1(d) is the interval count of the d-ladder upset."""
    if k < 1 or d < 0:
        raise SequenceError("need k >= 1 and d >= 0")
    cached = _INTERVAL_MEMO.get((k, d))
    if cached is not None:
        return cached
    if d == 0:
        value = 1
    elif d == 1:
        # all a_*(0) = 1, so the binomial sum collapses to 2^k
        value = 1 + (1 << k)
    else:
        prev = interval_family(k, d - 1)
        value = prev * prev
        binom = 1  # C(k, i), updated incrementally
        for i in range(k + 1):
            value += binom * interval_family(k + i, d - 1)
            binom = binom * (k - i) // (i + 1)
    _INTERVAL_MEMO[(k, d)] = value
    return value


def interval_memo_keys() -> set[tuple[int, int]]:
    """Snapshot of the memo keys, for demand-bound instrumentation."""
    return set(_INTERVAL_MEMO)


def clear_interval_memo() -> None:
    _INTERVAL_MEMO.clear()


def _intervals_ladder(count: int) -> list[int]:
    return [interval_family(1, d) for d in range(count)]


def _motzkin_by_degree(count: int) -> list[int]:
    out: list[int] = []
    for d in range(count):
        if d == 0:
            out.append(1)
            continue
        conv = sum(out[i] * out[d - 1 - i] for i in range(d))
        out.append((1 if d == 1 else 0) + conv - out[d - 1])
    return out


def _min_by_degree(count: int) -> list[int]:
    out: list[int] = []
    for d in range(count):
        if d == 0:
            out.append(1)
            continue
        conv = sum(out[i] * out[d - 1 - i] for i in range(d))
        squares = out[(d - 1) // 2] if (d - 1) % 2 == 0 else 0
        out.append((1 if d == 1 else 0) + conv - squares)
    return out


def _classes_by_height(count: int) -> list[int]:
    out: list[int] = []
    running = 0  # sum of out[0..h-2] while computing out[h]
    for h in range(count):
        if h == 0:
            out.append(1)
            continue
        if h == 1:
            out.append(1)
            continue
        prev = out[h - 1]
        running += out[h - 2]
        out.append(prev * prev - prev + 2 * prev * running)
    return out


_LADDER_RECURRENCES = {
    "sizes": _sizes_ladder,
    "edges": _edges_ladder,
    "intervals": _intervals_ladder,
    "motzkin": _motzkin_by_degree,
    "min": _min_by_degree,
    "classes": _classes_by_height,
}


def _to_indexing(name: str, ladder_values: list[int], indexing: str,
                 count: int) -> list[int]:
    if indexing == "ladder":
        return ladder_values[:count]
    if indexing == "mockingbird":
        if name in _POSET_SEQUENCES:
            return ([_POSET_SEQUENCES[name]] + ladder_values)[:count]
        return ladder_values[:count]
    raise SequenceError(f"unknown indexing {indexing!r}")


def seq_by_recurrence(name: str, count: int,
                      indexing: str = "mockingbird") -> SequenceTable:
    if name not in _LADDER_RECURRENCES:
        raise SequenceError(f"unknown sequence {name!r}")
    if count < 1:
        raise SequenceError("count must be >= 1")
    values = _to_indexing(name, _LADDER_RECURRENCES[name](count), indexing,
                          count)
    return SequenceTable(name=name, values=values, indexing=indexing,
                         method="recurrence")


def seq_by_series(name: str, count: int,
                  indexing: str = "mockingbird") -> SequenceTable:
    if name not in _LADDER_RECURRENCES:
        raise SequenceError(f"unknown sequence {name!r}")
    if count < 1:
        raise SequenceError("count must be >= 1")
    solution = serieslib.solve_equation(name, count - 1)
    if name == "intervals":
        solution = solution[0]
    values = _to_indexing(name, list(solution.coefficients), indexing, count)
    return SequenceTable(name=name, values=values, indexing=indexing,
                         method="series")


def seq_by_oracle(name: str, count: int,
                  indexing: str = "mockingbird") -> SequenceTable:
    """Sequence values from explicit poset construction / census: slow and
    range-limited, the independent ground truth."""
    if count < 1:
        raise SequenceError("count must be >= 1")
    ladder_count = count
    if indexing == "mockingbird" and name in _POSET_SEQUENCES:
        ladder_count = count - 1  # the prepended M(0) value is free
    ladder_values: list[int] = []
    if name in _POSET_SEQUENCES:
        for d in range(ladder_count):
            with_intervals = name == "intervals"
            counts = oracle_poset_counts(d, with_intervals=with_intervals)
            ladder_values.append({
                "sizes": counts.elements,
                "edges": counts.hasse_edges,
                "intervals": counts.intervals,
            }[name])
    elif name in ("motzkin", "min"):
        key = "maximal" if name == "motzkin" else "minimal"
        for d in range(ladder_count):
            ladder_values.append(oracle_extremal_census(d)[key])
    else:
        raise SequenceError(f"no oracle for sequence {name!r}")
    values = _to_indexing(name, ladder_values, indexing, count)
    return SequenceTable(name=name, values=values, indexing=indexing,
                         method="oracle")


# ---------------------------------------------------------------------------
# OEIS b-file comparison


def load_bfile(path: str) -> SequenceTable:
    values: list[int] = []
    expected: Optional[int] = None
    first: Optional[int] = None
    with open(path) as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise SequenceError(f"{path}:{lineno}: expected 'n a(n)'")
            try:
                n, a = int(parts[0]), int(parts[1])
            except ValueError:
                raise SequenceError(f"{path}:{lineno}: non-integer field") from None
            if expected is None:
                first = expected = n
            if n != expected:
                raise SequenceError(
                    f"{path}:{lineno}: non-contiguous index {n} (expected {expected})")
            expected += 1
            values.append(a)
    if first is None:
        raise SequenceError(f"{path}: empty b-file")
    return SequenceTable(name=f"bfile:{path}", values=values,
                         indexing="mockingbird", method="bfile")


@dataclass
class CompareReport:
    overlap: int
    first_mismatch: Optional[int]
    warning: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None


def compare(table1: SequenceTable, table2: SequenceTable) -> CompareReport:
    """Compare two tables over their common prefix."""
    overlap = min(len(table1.values), len(table2.values))
    for i in range(overlap):
        if table1.values[i] != table2.values[i]:
            return CompareReport(overlap=overlap, first_mismatch=i)
    warning = "empty overlap" if overlap == 0 else None
    return CompareReport(overlap=overlap, first_mismatch=None, warning=warning)


# ---------------------------------------------------------------------------
# Cross-check


@dataclass
class CrosscheckReport:
    verdicts: list[tuple[str, bool, str]] = field(default_factory=list)

    def record(self, label: str, ok: bool, detail: str = "") -> None:
        self.verdicts.append((label, ok, detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.verdicts)

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"label": label, "ok": ok, "detail": detail}
                for label, ok, detail in self.verdicts
            ],
        }


def crosscheck_all(max_d: int = 12, gated: bool = False) -> CrosscheckReport:
    """Recurrence vs series for every sequence to max_d, golden prefixes,
    and oracle construction over the feasible range.  ``gated`` adds the
    streaming element/edge oracle at ladder depth 5 (minutes of work)."""
    if max_d < 0:
        raise SequenceError("max_d must be >= 0")
    report = CrosscheckReport()
    count = max_d + 1
    for name in SEQUENCE_NAMES:
        rec = seq_by_recurrence(name, count)
        ser = seq_by_series(name, count)
        cmp_ = compare(rec, ser)
        report.record(
            f"{name}: recurrence vs series (n <= {max_d})", cmp_.ok,
            "" if cmp_.ok else f"first mismatch at index {cmp_.first_mismatch}")
        golden = GOLDEN_PREFIXES[name]
        take = min(len(golden), count)
        ok = rec.values[:take] == golden[:take]
        report.record(f"{name}: golden prefix", ok,
                      "" if ok else f"got {rec.values[:take]}")

    # Oracle range: explicit poset construction for small ladder depths.
    rec_sizes = seq_by_recurrence("sizes", 6, indexing="ladder").values
    rec_edges = seq_by_recurrence("edges", 6, indexing="ladder").values
    rec_intervals = seq_by_recurrence("intervals", 5, indexing="ladder").values
    for d in range(5):
        counts = oracle_poset_counts(d, with_intervals=True)
        ok = (counts.elements == rec_sizes[d]
              and counts.hasse_edges == rec_edges[d]
              and counts.intervals == rec_intervals[d]
              and counts.cover_equals_step)
        report.record(
            f"oracle ladder d={d}: elements/edges/intervals", ok,
            f"({counts.elements}, {counts.hasse_edges}, {counts.intervals})")
    if gated:
        counts = oracle_poset_counts(5, with_intervals=False)
        ok = (counts.elements == rec_sizes[5]
              and counts.hasse_edges == rec_edges[5])
        report.record(
            "oracle ladder d=5: elements/edges (streaming)", ok,
            f"({counts.elements}, {counts.hasse_edges})")

    # Extremal census over every combinator of each degree.
    rec_motzkin = seq_by_recurrence("motzkin", 8).values
    rec_min = seq_by_recurrence("min", 8).values
    for degree in range(8):
        census = oracle_extremal_census(degree)
        ok = (census["maximal"] == rec_motzkin[degree]
              and census["minimal"] == rec_min[degree])
        report.record(
            f"census degree {degree}: maximal/minimal", ok,
            f"({census['maximal']}, {census['minimal']})")
    return report
