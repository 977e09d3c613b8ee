"""Dense finite stand-in for the one-point compactification.

The space {0, ..., N} together with INF, with relations stored as explicit
pair sets built straight from their defining formulas. Only quantities that
survive truncation are compared against the symbolic engine: membership,
rows, columns, and images or preimages of sets that live inside the box.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alpha import INF, AlphaRelation, AlphaSet


def box_points(n: int) -> list:
    return list(range(n + 1)) + [INF]


def dense_diagonal(n: int) -> frozenset:
    return frozenset((x, x) for x in box_points(n))


def dense_r(n: int) -> frozenset:
    pairs = {(INF, INF)}
    for k in range(n + 1):
        if 2 * k <= n:
            pairs.add((2 * k, 2 * k))
        if 2 * k + 3 <= n:
            pairs.add((2 * k + 1, 2 * k + 3))
    return frozenset(pairs)


def dense_s(n: int) -> frozenset:
    pairs = {(INF, INF)}
    for k in range(n + 1):
        if 2 * k + 2 <= n:
            pairs.add((2 * k, 2 * k + 2))
        if 2 * k + 1 <= n:
            pairs.add((2 * k + 1, 2 * k + 1))
    return frozenset(pairs)


def dense_rows(pairs: frozenset) -> dict:
    out: dict = {}
    for x, y in pairs:
        out.setdefault(x, set()).add(y)
    return out


def dense_preimage(pairs: frozenset, u: set) -> set:
    return {x for x, y in pairs if y in u}


def dense_image(pairs: frozenset, u: set) -> set:
    return {y for x, y in pairs if x in u}


@dataclass
class Agreement:
    name: str
    checks: int
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {"relation": self.name, "checks": self.checks, "mismatches": self.mismatches[:5]}


def probe_sets(n: int) -> list[tuple[str, set]]:
    """Bounded test sets, each living inside the box."""
    evens = {x for x in range(0, n + 1, 2)}
    odds = {x for x in range(1, n + 1, 2)}
    return [
        ("{5}", {5}),
        ("{inf}", {INF}),
        ("evens<=N", evens),
        ("evens<=N+inf", evens | {INF}),
        ("odds<=N", odds),
        ("odds<=N+inf", odds | {INF}),
        ("[0,10]", set(range(11))),
        ("[N/2,N]+inf", set(range(n // 2, n + 1)) | {INF}),
    ]


def _as_alpha(points: set) -> AlphaSet:
    return AlphaSet.of(points)


def compare(name: str, symbolic: AlphaRelation, dense: frozenset, n: int) -> Agreement:
    """Compare membership, rows, columns, images and preimages inside the box."""
    bad: list = []
    checks = 0
    pts = box_points(n)
    sym_pairs = symbolic.pairs_within(n)
    checks += 1
    if sym_pairs != set(dense):
        diff = sorted(map(repr, sym_pairs ^ set(dense)))[:5]
        bad.append({"kind": "pairs", "diff": diff})
    rows, cols = dense_rows(dense), dense_rows(frozenset((y, x) for x, y in dense))
    for x in pts:
        checks += 2
        if symbolic.row(x).points_below(n + 1) != rows.get(x, set()):
            bad.append({"kind": "row", "point": repr(x)})
        if symbolic.column(x).points_below(n + 1) != cols.get(x, set()):
            bad.append({"kind": "column", "point": repr(x)})
    for label, u in probe_sets(n):
        au = _as_alpha(u)
        checks += 2
        if symbolic.preimage(au).points_below(n + 1) != dense_preimage(dense, u):
            bad.append({"kind": "preimage", "set": label})
        if symbolic.image(au).points_below(n + 1) != dense_image(dense, u):
            bad.append({"kind": "image", "set": label})
    # a sample of membership queries, including pairs just outside every piece
    for x in pts[:: max(1, n // 50)]:
        for y in pts[:: max(1, n // 50)]:
            checks += 1
            if symbolic.contains(x, y) != ((x, y) in dense):
                bad.append({"kind": "member", "pair": [repr(x), repr(y)]})
    return Agreement(name, checks, bad)
