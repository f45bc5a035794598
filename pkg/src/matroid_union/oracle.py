"""Matroid oracles with per-call query accounting.

Algorithms only ever talk to a matroid through :meth:`MatroidOracle.is_independent`
and :meth:`MatroidOracle.rank`; each call bumps exactly one counter by one.
Element sets are passed as sized iterables of distinct ints in ``[0, n)``.
"""
from __future__ import annotations

import json
from array import array
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class InstanceMismatchError(ValueError):
    """An element id outside the oracle's ground set was queried."""


class InstanceFormatError(ValueError):
    """An instance description is malformed."""


class OracleModeError(RuntimeError):
    """A rank query was issued against an independence-only oracle."""


def _mismatch(n):
    return InstanceMismatchError(f"element id outside ground set [0, {n})")


class MatroidOracle:
    """Base class; subclasses provide ``_rank_code`` and ``_indep_code``."""

    kind = "abstract"

    def __init__(self, n: int):
        self.n = n
        self.independence_count = 0
        self.rank_count = 0
        self.allow_rank = True

    # kernel hooks: return a rank / 1-0 flag, or a negative code on a bad id
    def _rank_code(self, elems) -> int:
        raise NotImplementedError

    def _indep_code(self, elems) -> int:
        raise NotImplementedError

    def is_independent(self, elems: Iterable[int]) -> bool:
        code = self._indep_code(elems)
        if code < 0:
            raise _mismatch(self.n)
        self.independence_count += 1
        return bool(code)

    def rank(self, elems: Iterable[int]) -> int:
        if not self.allow_rank:
            raise OracleModeError(f"{self.kind} oracle is in independence-only mode")
        code = self._rank_code(elems)
        if code < 0:
            raise _mismatch(self.n)
        self.rank_count += 1
        return code

    def reset_stats(self) -> None:
        self.independence_count = 0
        self.rank_count = 0

    def copy(self) -> "MatroidOracle":
        """Same matroid, fresh counters and scratch buffers."""
        return oracle_from_dict(self.to_dict(), self.n)

    def uncounted(self) -> "UncountedOracle":
        return UncountedOracle(self)

    def to_dict(self) -> dict:
        raise NotImplementedError

    def subset_ranks(self) -> np.ndarray:
        """Rank of every subset, indexed by bitmask; for verification only.

        Computed by a vectorised route that never touches the per-query
        kernels, so it can serve as an independent check of them.
        """
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.to_dict()!r})"


class UncountedOracle:
    """Read-only view that answers queries without touching counters."""

    def __init__(self, base: MatroidOracle):
        self.base = base
        self.n = base.n
        self.kind = base.kind

    def is_independent(self, elems) -> bool:
        code = self.base._indep_code(elems)
        if code < 0:
            raise _mismatch(self.n)
        return bool(code)

    def rank(self, elems) -> int:
        code = self.base._rank_code(elems)
        if code < 0:
            raise _mismatch(self.n)
        return code


def _popcounts(n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        pc += (masks >> b) & 1
    return pc


class UniformMatroid(MatroidOracle):
    kind = "uniform"

    def __init__(self, n: int, r: int):
        super().__init__(n)
        if r < 0:
            raise InstanceFormatError("uniform rank must be non-negative")
        self.r = r

    def _rank_code(self, elems):
        c = kernels.count_valid(elems, self.n)
        return c if c < 0 else min(c, self.r)

    def _indep_code(self, elems):
        c = kernels.count_valid(elems, self.n)
        return c if c < 0 else int(c <= self.r)

    def to_dict(self):
        return {"type": "uniform", "r": self.r}

    def subset_ranks(self):
        return np.minimum(_popcounts(self.n), self.r)


class PartitionMatroid(MatroidOracle):
    """rank(S) = sum over blocks of min(|S & block|, capacity); unblocked elements are loops."""

    kind = "partition"

    def __init__(self, n: int, blocks: Sequence[Sequence[int]], capacities: Sequence[int]):
        super().__init__(n)
        if len(blocks) != len(capacities):
            raise InstanceFormatError("partition needs one capacity per block")
        block_of = array("i", [-1] * n)
        for b, block in enumerate(blocks):
            for e in block:
                if not isinstance(e, int) or not 0 <= e < n:
                    raise InstanceFormatError(f"partition block element {e!r} out of range")
                if block_of[e] != -1:
                    raise InstanceFormatError(f"element {e} appears in two blocks")
                block_of[e] = b
        if any((not isinstance(c, int)) or c < 0 for c in capacities):
            raise InstanceFormatError("capacities must be non-negative integers")
        self.blocks = [list(b) for b in blocks]
        self.capacities = list(capacities)
        self._block_of = block_of
        self._caps = array("i", self.capacities)
        self._counts = array("i", [0] * len(blocks))

    def _rank_code(self, elems):
        return kernels.partition_rank(elems, self._block_of, self._caps, self._counts, False)

    def _indep_code(self, elems):
        r = kernels.partition_rank(elems, self._block_of, self._caps, self._counts, True)
        return r if r == kernels.BAD_ID else int(r >= 0)

    def to_dict(self):
        return {"type": "partition", "blocks": self.blocks, "capacities": self.capacities}

    def subset_ranks(self):
        masks = np.arange(1 << self.n, dtype=np.int64)
        total = np.zeros(1 << self.n, dtype=np.int64)
        for block, cap in zip(self.blocks, self.capacities):
            cnt = np.zeros(1 << self.n, dtype=np.int64)
            for e in block:
                cnt += (masks >> e) & 1
            total += np.minimum(cnt, cap)
        return total


class GraphicMatroid(MatroidOracle):
    """Cycle matroid of a multigraph; edge ``i`` is ground element ``i``."""

    kind = "graphic"

    def __init__(self, n: int, num_vertices: int, edges: Sequence[Sequence[int]]):
        super().__init__(n)
        if len(edges) != n:
            raise InstanceFormatError(f"graphic matroid needs exactly n={n} edges")
        for e in edges:
            if len(e) != 2 or not all(isinstance(x, int) and 0 <= x < num_vertices for x in e):
                raise InstanceFormatError(f"bad edge {e!r}")
        self.num_vertices = num_vertices
        self.edges = [list(e) for e in edges]
        self._tail = array("i", [e[0] for e in edges])
        self._head = array("i", [e[1] for e in edges])
        self._parent = array("i", range(max(num_vertices, 1)))

    def _rank_code(self, elems):
        return kernels.forest_rank(elems, self._tail, self._head, self._parent, False)

    def _indep_code(self, elems):
        r = kernels.forest_rank(elems, self._tail, self._head, self._parent, True)
        return r if r == kernels.BAD_ID else int(r >= 0)

    def to_dict(self):
        return {"type": "graphic", "num_vertices": self.num_vertices, "edges": self.edges}

    def subset_ranks(self):
        # label propagation over all subsets at once; rank = V - #components
        nv = max(self.num_vertices, 1)
        size = 1 << self.n
        masks = np.arange(size, dtype=np.int64)
        lab = np.tile(np.arange(nv, dtype=np.int32), (size, 1))
        for e, (a, b) in enumerate(self.edges):
            if a == b:
                continue
            sel = np.nonzero((masks >> e) & 1)[0]
            sub = lab[sel]
            la, lb = sub[:, a], sub[:, b]
            lo = np.minimum(la, lb)[:, None]
            hi = np.maximum(la, lb)[:, None]
            lab[sel] = np.where(sub == hi, lo, sub)
        roots = (lab == np.arange(nv, dtype=np.int32)).sum(axis=1)
        return (nv - roots).astype(np.int64)


class BinaryMatroid(MatroidOracle):
    """Column matroid of a 0/1 matrix over GF(2); column ``i`` is element ``i``."""

    kind = "binary"

    def __init__(self, n: int, rows: Sequence[str]):
        super().__init__(n)
        for row in rows:
            if not isinstance(row, str) or len(row) != n or set(row) - {"0", "1"}:
                raise InstanceFormatError("binary rows must be 0/1 strings of length n")
        self.rows = list(rows)
        self._words = (len(rows) + 63) // 64
        cols = array("Q", [0] * (n * self._words))
        for r, row in enumerate(rows):
            w, bit = divmod(r, 64)
            for i, ch in enumerate(row):
                if ch == "1":
                    cols[i * self._words + w] |= 1 << bit
        self._cols = cols

    def _rank_code(self, elems):
        if self._words == 0:
            c = kernels.count_valid(elems, self.n)
            return c if c < 0 else 0
        return kernels.gf2_rank(elems, self._cols, self._words, False)

    def _indep_code(self, elems):
        if self._words == 0:
            c = kernels.count_valid(elems, self.n)
            return c if c < 0 else int(c == 0)
        r = kernels.gf2_rank(elems, self._cols, self._words, True)
        return r if r == kernels.BAD_ID else int(r >= 0)

    def to_dict(self):
        return {"type": "binary", "rows": self.rows}

    def subset_ranks(self):
        # simultaneous elimination for every subset; basis[m, r] holds the
        # vector whose lowest set bit is row r
        nrows = len(self.rows)
        size = 1 << self.n
        rank = np.zeros(size, dtype=np.int64)
        if nrows == 0:
            return rank
        masks = np.arange(size, dtype=np.int64)
        col_ints = [int("".join(row[i] for row in reversed(self.rows)), 2) for i in range(self.n)]
        # object dtype keeps arbitrary row counts exact
        dtype = np.int64 if nrows < 63 else object
        basis = np.zeros((size, nrows), dtype=dtype)
        for e in range(self.n):
            sel = np.nonzero((masks >> e) & 1)[0]
            x = np.full(sel.shape[0], col_ints[e], dtype=dtype)
            for r in range(nrows):
                b = basis[sel, r]
                hit = ((x >> r) & 1).astype(bool) & (b != 0)
                x = np.where(hit, x ^ b, x)
            nz = x != 0
            if not nz.any():
                continue
            xs = x[nz]
            low = xs & -xs
            piv = np.array([int(v).bit_length() - 1 for v in low], dtype=np.int64)
            basis[sel[nz], piv] = xs
            rank[sel[nz]] += 1
        return rank


def oracle_from_dict(spec: dict, n: int) -> MatroidOracle:
    if not isinstance(spec, dict):
        raise InstanceFormatError("matroid entry must be an object")
    kind = spec.get("type")
    try:
        if kind == "uniform":
            r = spec["r"]
            if not isinstance(r, int):
                raise InstanceFormatError("uniform r must be an integer")
            return UniformMatroid(n, r)
        if kind == "partition":
            return PartitionMatroid(n, spec["blocks"], spec["capacities"])
        if kind == "graphic":
            nv = spec["num_vertices"]
            if not isinstance(nv, int) or nv < 0:
                raise InstanceFormatError("num_vertices must be a non-negative integer")
            return GraphicMatroid(n, nv, spec["edges"])
        if kind == "binary":
            return BinaryMatroid(n, spec["rows"])
    except (KeyError, TypeError) as exc:
        raise InstanceFormatError(f"malformed {kind} matroid: {exc}") from exc
    raise InstanceFormatError(f"unknown matroid type {kind!r}")


@dataclass(frozen=True)
class QueryStats:
    independence_queries: int = 0
    rank_queries: int = 0
    per_matroid_independence: tuple = ()
    per_matroid_rank: tuple = ()
    phases: int = 0
    augmentations: int = 0

    def __sub__(self, other: "QueryStats") -> "QueryStats":
        return QueryStats(
            self.independence_queries - other.independence_queries,
            self.rank_queries - other.rank_queries,
            tuple(a - b for a, b in zip(self.per_matroid_independence, other.per_matroid_independence)),
            tuple(a - b for a, b in zip(self.per_matroid_rank, other.per_matroid_rank)),
            self.phases - other.phases,
            self.augmentations - other.augmentations,
        )

    @property
    def total(self) -> int:
        return self.independence_queries + self.rank_queries

    def to_dict(self) -> dict:
        return {
            "independence_queries": self.independence_queries,
            "rank_queries": self.rank_queries,
            "per_matroid_independence": list(self.per_matroid_independence),
            "per_matroid_rank": list(self.per_matroid_rank),
            "phases": self.phases,
            "augmentations": self.augmentations,
        }


@dataclass
class Instance:
    n: int
    matroids: list = field(default_factory=list)

    def __post_init__(self):
        if not self.matroids:
            raise InstanceFormatError("an instance needs at least one matroid")
        for m in self.matroids:
            if m.n != self.n:
                raise InstanceFormatError("all matroids must share the ground set [0, n)")

    @property
    def k(self) -> int:
        return len(self.matroids)

    def copy(self) -> "Instance":
        return Instance(self.n, [m.copy() for m in self.matroids])

    def uncounted(self) -> "Instance":
        inst = object.__new__(Instance)
        inst.n = self.n
        inst.matroids = [m.uncounted() for m in self.matroids]
        return inst

    def stats(self) -> QueryStats:
        return snapshot_stats(self)

    def reset_stats(self) -> None:
        reset_stats(self)

    def set_independence_only(self, flag: bool = True) -> None:
        for m in self.matroids:
            m.allow_rank = not flag

    def to_dict(self) -> dict:
        return {"n": self.n, "matroids": [m.to_dict() for m in self.matroids]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict()) + "\n"

    @classmethod
    def from_dict(cls, data) -> "Instance":
        if not isinstance(data, dict) or set(data) != {"n", "matroids"}:
            raise InstanceFormatError('instance must be an object with keys "n" and "matroids"')
        n, ms = data["n"], data["matroids"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise InstanceFormatError("n must be a non-negative integer")
        if not isinstance(ms, list) or not ms:
            raise InstanceFormatError("matroids must be a non-empty list (k >= 1)")
        return cls(n, [oracle_from_dict(m, n) for m in ms])

    @classmethod
    def loads(cls, text: str) -> "Instance":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "Instance":
        with open(path) as fh:
            return cls.loads(fh.read())


def snapshot_stats(obj) -> QueryStats:
    """Counter snapshot of a single oracle or of a whole instance."""
    ms = obj.matroids if isinstance(obj, Instance) else [obj]
    ind = tuple(m.independence_count for m in ms)
    rk = tuple(m.rank_count for m in ms)
    return QueryStats(sum(ind), sum(rk), ind, rk)


def reset_stats(obj) -> None:
    for m in obj.matroids if isinstance(obj, Instance) else [obj]:
        m.reset_stats()
