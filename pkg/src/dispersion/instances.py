"""Instance and solution serialization plus seeded instance generation.

Formats
-------
CSV instance: one point per line, d comma-separated decimal numbers, LF
line endings, UTF-8, no header (a header line can be skipped explicitly).
JSON instance: {"dim": int, "points": [[num, ...], ...]}.
JSON solution: {"algorithm": str, "metric": str, "k": int,
"indices": [int], "weight": str, "stats": {...}}.

Decimal inputs are scaled to integers by 10**scale with round-half-even
(default scale 4). NOTE: scaling multiplies every rectilinear weight by
exactly 10**scale; selections are unaffected, reported weights are not.

Generation uses an explicit SplitMix64 generator (not an environment
default), so a seed produces bit-identical instances on every platform.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation, ROUND_HALF_EVEN
from typing import Iterator

from .errors import ParseError
from .geometry import COORD_LIMIT, Metric, PointSet
from .solution import Solution

DEFAULT_SCALE = 4


@dataclass(frozen=True)
class ScaledDecimal:
    """A decimal token frozen as an exact scaled integer."""

    text: str
    scale: int
    value: int

    @classmethod
    def parse(cls, text: str, scale: int = DEFAULT_SCALE) -> "ScaledDecimal":
        token = text.strip()
        try:
            dec = Decimal(token)
        except InvalidOperation:
            raise ParseError(f"non-numeric token {token!r}") from None
        if not dec.is_finite():
            raise ParseError(f"non-finite token {token!r}")
        scaled = dec.scaleb(scale).quantize(Decimal(1), rounding=ROUND_HALF_EVEN)
        value = int(scaled)
        if abs(value) > COORD_LIMIT:
            raise ParseError(
                f"token {token!r} overflows the coordinate bound after "
                f"scaling by 10**{scale}"
            )
        return cls(text=token, scale=scale, value=value)


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    return data


def parse_instance(
    data: bytes | str,
    fmt: str = "csv",
    scale: int = DEFAULT_SCALE,
    skip_header: bool = False,
) -> PointSet:
    """Parse an instance file into an integer PointSet.

    Input order becomes index order. Raises ParseError on empty input,
    ragged rows, non-numeric tokens, or post-scaling overflow.
    """
    text = _decode(data)
    if fmt == "csv":
        return _parse_csv(text, scale, skip_header)
    if fmt == "json":
        return _parse_json(text, scale)
    raise ParseError(f"unknown instance format {fmt!r}")


def _parse_csv(text: str, scale: int, skip_header: bool) -> PointSet:
    lines = text.split("\n")
    while lines and lines[-1].strip() == "":
        lines.pop()
    if skip_header and lines:
        lines = lines[1:]
    if not lines:
        raise ParseError("empty instance")
    rows: list[tuple[int, ...]] = []
    dim = None
    for ln, line in enumerate(lines, start=1):
        if line.strip() == "":
            raise ParseError(f"blank line {ln} inside instance")
        tokens = line.split(",")
        if dim is None:
            dim = len(tokens)
        elif len(tokens) != dim:
            raise ParseError(
                f"line {ln} has {len(tokens)} fields, expected {dim}"
            )
        rows.append(tuple(ScaledDecimal.parse(t, scale).value for t in tokens))
    try:
        return PointSet(rows, dim=dim)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _parse_json(text: str, scale: int) -> PointSet:
    try:
        obj = json.loads(text, parse_float=str, parse_int=str)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "dim" not in obj or "points" not in obj:
        raise ParseError('JSON instance must be {"dim": int, "points": [...]}')
    try:
        dim = int(obj["dim"])
    except (TypeError, ValueError):
        raise ParseError(f"invalid dim {obj['dim']!r}") from None
    points = obj["points"]
    if not isinstance(points, list) or not points:
        raise ParseError("JSON instance has no points")
    rows = []
    for row in points:
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"point {row!r} does not match dim={dim}")
        rows.append(
            tuple(ScaledDecimal.parse(str(tok), scale).value for tok in row)
        )
    try:
        return PointSet(rows, dim=dim)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _format_coord(value: int, scale: int) -> str:
    if scale == 0:
        return str(value)
    return f"{Decimal(value).scaleb(-scale):.{scale}f}"


def write_instance(ps: PointSet, fmt: str = "csv", scale: int = 0) -> bytes:
    """Serialize a PointSet; parse_instance(write_instance(ps, f, s), f, s)
    reproduces ps exactly."""
    if fmt == "csv":
        body = "\n".join(
            ",".join(_format_coord(c, scale) for c in p) for p in ps.points
        )
        return (body + "\n").encode("utf-8")
    if fmt == "json":
        rows = ",".join(
            "[" + ",".join(_format_coord(c, scale) for c in p) + "]"
            for p in ps.points
        )
        return (f'{{"dim": {ps.dim}, "points": [{rows}]}}\n').encode("utf-8")
    raise ParseError(f"unknown instance format {fmt!r}")


def write_solution(sol: Solution, fmt: str = "json") -> bytes:
    """Serialize a Solution; the weight is the reported form (decimal string;
    halved for LINF, 12 significant digits for L2)."""
    if fmt == "json":
        payload = {
            "algorithm": sol.algorithm,
            "metric": sol.metric.value,
            "k": sol.k,
            "indices": list(sol.indices),
            "weight": sol.reported_weight(),
            "stats": dict(sol.stats),
        }
        return (json.dumps(payload, sort_keys=True) + "\n").encode("utf-8")
    if fmt == "csv":
        header = "algorithm,metric,k,indices,weight\n"
        row = ",".join(
            [
                sol.algorithm,
                sol.metric.value,
                str(sol.k),
                " ".join(str(i) for i in sol.indices),
                sol.reported_weight(),
            ]
        )
        return (header + row + "\n").encode("utf-8")
    raise ParseError(f"unknown solution format {fmt!r}")


def read_solution(data: bytes | str) -> dict:
    """Parse a JSON solution file into a plain dict (used by verification)."""
    text = _decode(data)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid solution JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("solution JSON must be an object")
    for key in ("algorithm", "metric", "k", "indices", "weight"):
        if key not in obj:
            raise ParseError(f"solution JSON missing {key!r}")
    try:
        obj["metric"] = Metric(obj["metric"])
    except ValueError:
        raise ParseError(f"unknown metric {obj['metric']!r}") from None
    return obj


class SplitMix64:
    """Pinned 64-bit generator (SplitMix64), bit-identical everywhere.

    state' = state + 0x9E3779B97F4A7C15 (mod 2**64); the output mixes the
    state with two xor-shift-multiply rounds. Bounded draws use rejection
    sampling, so they are exactly uniform.
    """

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self._state = seed & self._MASK

    def next64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & self._MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            v = self.next64()
            if v < limit:
                return v % bound

    def uniform(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)


@dataclass(frozen=True)
class InstanceSpec:
    """Parameters of one synthetic instance.

    distribution is "uniform" (i.i.d. per coordinate in [lo, hi]) or
    "clustered" (cluster centers uniform in the range, then per-point
    offsets within +-spread, clamped back into the range).
    """

    n: int
    d: int
    lo: int
    hi: int
    seed: int
    distribution: str = "uniform"
    clusters: int | None = None
    spread: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.d < 1:
            raise ValueError(f"d must be positive, got {self.d}")
        if self.lo > self.hi:
            raise ValueError(f"empty coordinate range [{self.lo}, {self.hi}]")
        if max(abs(self.lo), abs(self.hi)) > COORD_LIMIT:
            raise ValueError("coordinate range exceeds the magnitude bound")
        if self.distribution == "clustered":
            if self.clusters is None or not 1 <= self.clusters <= self.n:
                raise ValueError(
                    f"clustered instances need 1 <= clusters <= n, "
                    f"got {self.clusters}"
                )
            if self.spread is None or self.spread < 0:
                raise ValueError("clustered instances need spread >= 0")
        elif self.distribution != "uniform":
            raise ValueError(f"unknown distribution {self.distribution!r}")


def generate_instance(spec: InstanceSpec) -> PointSet:
    """Deterministic PointSet for a spec; the same spec always yields the
    same points, on any platform."""
    rng = SplitMix64(spec.seed)
    if spec.distribution == "uniform":
        rows = [
            tuple(rng.uniform(spec.lo, spec.hi) for _ in range(spec.d))
            for _ in range(spec.n)
        ]
        return PointSet(rows, dim=spec.d)
    centers = [
        tuple(rng.uniform(spec.lo, spec.hi) for _ in range(spec.d))
        for _ in range(spec.clusters)
    ]
    spread = spec.spread
    rows = []
    for _ in range(spec.n):
        center = centers[rng.below(spec.clusters)]
        row = []
        for a in range(spec.d):
            c = center[a] + rng.uniform(-spread, spread)
            row.append(min(max(c, spec.lo), spec.hi))
        rows.append(tuple(row))
    return PointSet(rows, dim=spec.d)


def sweep(specs: list[InstanceSpec]) -> Iterator[tuple[InstanceSpec, PointSet]]:
    for spec in specs:
        yield spec, generate_instance(spec)
