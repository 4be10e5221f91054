"""Fusion rings of compact groups.

Three kinds of ring are supported: finite groups given by an explicit table
of fusion coefficients ``N[a][b][c] = mult of c in a (x) b``, SU(2) with
irreducibles indexed by ``n`` (dimension ``n + 1``), and finite products.

Irreducibles are plain Python values whose meaning depends on the ring:
table indices for :class:`FiniteTable`, spins for :class:`SU2`, tuples for
:class:`ProductRing`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from typing import Hashable, Sequence

import numpy as np


class UnknownIrrep(KeyError):
    pass


Irrep = Hashable


def _sorted_multiset(d: dict) -> dict:
    return {k: d[k] for k in sorted(d, key=_sort_key) if d[k]}


def _sort_key(a):
    return (0, a) if isinstance(a, int) else (1, tuple(_sort_key(x) for x in a))


class FusionRing:
    is_finite = False
    trivial: Irrep

    def check(self, a) -> None:
        raise NotImplementedError

    def fuse(self, a, b) -> dict:
        raise NotImplementedError

    def conj(self, a):
        raise NotImplementedError

    def dim(self, a) -> int:
        raise NotImplementedError

    def label(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def tensor(self, x: dict, y: dict) -> dict:
        """Fuse two multisets of irreducibles, multiplicities multiplied."""
        out: dict = {}
        for a, ma in x.items():
            for b, mb in y.items():
                for c, mc in self.fuse(a, b).items():
                    out[c] = out.get(c, 0) + ma * mb * mc
        return _sorted_multiset(out)

    def render(self, multiset: dict) -> str:
        parts = []
        for a, m in multiset.items():
            parts.append(self.label(a) if m == 1 else f"{m}·{self.label(a)}")
        return " ⊕ ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=True)
class FiniteTable(FusionRing):
    """Fusion data of a finite group.  Index 0 is the trivial irreducible."""

    name: str
    labels: tuple[str, ...]
    dims: tuple[int, ...]
    conj_map: tuple[int, ...]
    coeffs: tuple[tuple[tuple[int, ...], ...], ...]

    is_finite = True
    trivial = 0

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise ValueError("a fusion table needs at least the trivial irreducible")
        if len(set(self.labels)) != n:
            raise ValueError("duplicate irreducible labels")
        if len(self.dims) != n or len(self.conj_map) != n:
            raise ValueError("dims and conj must have one entry per label")
        arr = np.asarray(self.coeffs, dtype=np.int64)
        if arr.shape != (n, n, n):
            raise ValueError(f"coefficient tensor must be {n}x{n}x{n}, got {arr.shape}")
        if (arr < 0).any():
            raise ValueError("fusion coefficients must be non-negative")
        if any(not 0 <= c < n for c in self.conj_map):
            raise ValueError("conj must map into the label set")

    @classmethod
    def from_array(cls, name, labels, dims, conj_map, N) -> "FiniteTable":
        N = np.asarray(N, dtype=np.int64)
        return cls(name, tuple(labels), tuple(int(d) for d in dims),
                   tuple(int(c) for c in conj_map),
                   tuple(tuple(tuple(int(v) for v in row) for row in mat) for mat in N))

    @cached_property
    def N(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=np.int64)

    @property
    def size(self) -> int:
        return len(self.labels)

    def irreps(self) -> range:
        return range(self.size)

    def check(self, a) -> None:
        if isinstance(a, bool) or not isinstance(a, (int, np.integer)) or not 0 <= a < self.size:
            raise UnknownIrrep(a)

    def fuse(self, a, b) -> dict:
        self.check(a)
        self.check(b)
        row = self.N[a, b]
        return {int(c): int(row[c]) for c in np.nonzero(row)[0]}

    def conj(self, a) -> int:
        self.check(a)
        return self.conj_map[a]

    def dim(self, a) -> int:
        self.check(a)
        return self.dims[a]

    def label(self, a) -> str:
        self.check(a)
        return self.labels[a]

    def parse(self, text: str) -> int:
        try:
            return self.labels.index(text)
        except ValueError:
            raise UnknownIrrep(text) from None


class SU2(FusionRing):
    """SU(2): irreducible ``n`` has dimension ``n + 1`` and is self-conjugate."""

    trivial = 0
    name = "SU2"
    _LABEL = re.compile(r"^(?:π|pi)?(\d+)$")

    def __eq__(self, other):
        return isinstance(other, SU2)

    def __hash__(self):
        return hash("SU2")

    def __repr__(self):
        return "SU2()"

    def check(self, a) -> None:
        if isinstance(a, bool) or not isinstance(a, (int, np.integer)) or a < 0:
            raise UnknownIrrep(a)

    def fuse(self, a, b) -> dict:
        self.check(a)
        self.check(b)
        return {c: 1 for c in range(abs(a - b), a + b + 1, 2)}

    def conj(self, a) -> int:
        self.check(a)
        return a

    def dim(self, a) -> int:
        self.check(a)
        return a + 1

    def label(self, a) -> str:
        self.check(a)
        return f"π{a}"

    def parse(self, text: str) -> int:
        m = self._LABEL.match(text.strip())
        if not m:
            raise UnknownIrrep(text)
        return int(m.group(1))


@dataclass(frozen=True)
class ProductRing(FusionRing):
    factors: tuple[FusionRing, ...]

    def __post_init__(self):
        if len(self.factors) < 1:
            raise ValueError("product of zero rings")

    @property
    def is_finite(self) -> bool:
        return all(f.is_finite for f in self.factors)

    @property
    def trivial(self) -> tuple:
        return tuple(f.trivial for f in self.factors)

    @property
    def name(self) -> str:
        return "×".join(getattr(f, "name", "?") for f in self.factors)

    def check(self, a) -> None:
        if not isinstance(a, tuple) or len(a) != len(self.factors):
            raise UnknownIrrep(a)
        for f, x in zip(self.factors, a):
            f.check(x)

    def fuse(self, a, b) -> dict:
        self.check(a)
        self.check(b)
        parts = [f.fuse(x, y) for f, x, y in zip(self.factors, a, b)]
        out = {}
        for combo in iproduct(*(p.items() for p in parts)):
            key = tuple(c for c, _ in combo)
            mult = 1
            for _, m in combo:
                mult *= m
            out[key] = mult
        return _sorted_multiset(out)

    def conj(self, a) -> tuple:
        self.check(a)
        return tuple(f.conj(x) for f, x in zip(self.factors, a))

    def dim(self, a) -> int:
        self.check(a)
        d = 1
        for f, x in zip(self.factors, a):
            d *= f.dim(x)
        return d

    def label(self, a) -> str:
        self.check(a)
        return "(" + ", ".join(f.label(x) for f, x in zip(self.factors, a)) + ")"

    def parse(self, text: str) -> tuple:
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise UnknownIrrep(text)
        pieces = [p.strip() for p in body[1:-1].split(",")]
        if len(pieces) != len(self.factors):
            raise UnknownIrrep(text)
        return tuple(f.parse(p) for f, p in zip(self.factors, pieces))

    def to_table(self, labels: Sequence[str] | None = None) -> FiniteTable:
        """Flatten a product of finite tables into one table."""
        if not self.is_finite:
            raise ValueError("only products of finite tables flatten")
        irreps = list(iproduct(*(f.irreps() for f in self.factors)))
        index = {a: i for i, a in enumerate(irreps)}
        n = len(irreps)
        N = np.zeros((n, n, n), dtype=np.int64)
        for a in irreps:
            for b in irreps:
                for c, m in self.fuse(a, b).items():
                    N[index[a], index[b], index[c]] = m
        names = list(labels) if labels is not None else [self.label(a) for a in irreps]
        return FiniteTable.from_array(
            self.name, names, [self.dim(a) for a in irreps],
            [index[self.conj(a)] for a in irreps], N)


# -- built-in tables ---------------------------------------------------------

def cyclic(n: int) -> FiniteTable:
    """Z/n: characters chi_0..chi_{n-1} with chi_a (x) chi_b = chi_{a+b mod n}."""
    if n < 1:
        raise ValueError("n >= 1")
    N = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            N[a, b, (a + b) % n] = 1
    if n == 1:
        labels = ["1"]
    elif n == 2:
        labels = ["1", "sgn"]
    else:
        labels = [f"χ{a}" for a in range(n)]
    return FiniteTable.from_array(f"Z{n}", labels, [1] * n, [(-a) % n for a in range(n)], N)


def symmetric3() -> FiniteTable:
    """S_3 with irreducibles 1, sgn, std (dimension 2)."""
    N = np.zeros((3, 3, 3), dtype=np.int64)
    one, sgn, std = 0, 1, 2
    for a in range(3):
        N[one, a, a] = N[a, one, a] = 1
    N[sgn, sgn, one] = 1
    N[sgn, std, std] = N[std, sgn, std] = 1
    N[std, std, one] = N[std, std, sgn] = N[std, std, std] = 1
    return FiniteTable.from_array("S3", ["1", "sgn", "std"], [1, 1, 2], [0, 1, 2], N)


def klein4() -> FiniteTable:
    table = ProductRing((cyclic(2), cyclic(2))).to_table(["1", "a", "b", "ab"])
    return FiniteTable("V4", table.labels, table.dims, table.conj_map, table.coeffs)


def trivial_group() -> FiniteTable:
    return cyclic(1)


def builtin_table(name: str) -> FiniteTable:
    key = name.strip()
    if key in ("S3", "s3"):
        return symmetric3()
    if key in ("V4", "klein4", "Klein4", "Z2xZ2"):
        return klein4()
    if key in ("trivial", "1"):
        return trivial_group()
    m = re.match(r"^Z(\d+)$", key)
    if m and int(m.group(1)) >= 1:
        return cyclic(int(m.group(1)))
    raise KeyError(f"no built-in fusion table named {name!r}")


# -- validation ----------------------------------------------------------------

def validate_ring(ring: FiniteTable, max_reports: int = 8) -> list[str]:
    """All violated fusion-ring axioms, as human-readable strings."""
    out: list[str] = []
    N = ring.N
    n = ring.size
    dims = np.asarray(ring.dims, dtype=np.int64)
    conj = np.asarray(ring.conj_map)
    t = ring.trivial

    def report(kind, items):
        for item in items[:max_reports]:
            out.append(f"{kind}: {item}")
        if len(items) > max_reports:
            out.append(f"{kind}: ... {len(items) - max_reports} more")

    if (dims < 1).any():
        report("dimension", [f"dim({ring.labels[a]}) = {dims[a]} < 1" for a in range(n) if dims[a] < 1])
    if dims[t] != 1:
        out.append(f"trivial: dim({ring.labels[t]}) = {dims[t]} != 1")
    report("conjugation", [f"conj(conj({ring.labels[a]})) != {ring.labels[a]}"
                           for a in range(n) if conj[conj[a]] != a])
    report("conjugation", [f"dim({ring.labels[a]}) != dim of its conjugate"
                           for a in range(n) if dims[conj[a]] != dims[a]])
    eye = np.eye(n, dtype=np.int64)
    report("unit", [f"{ring.labels[a]} ⊗ 1 != {ring.labels[a]}"
                    for a in range(n) if not np.array_equal(N[a, t], eye[a])])
    report("commutativity", [f"N[{ring.labels[a]}][{ring.labels[b]}] != N[{ring.labels[b]}][{ring.labels[a]}]"
                             for a in range(n) for b in range(a + 1, n)
                             if not np.array_equal(N[a, b], N[b, a])])
    report("frobenius", [f"mult of 1 in {ring.labels[a]} ⊗ {ring.labels[b]} is {N[a, b, t]}"
                         for a in range(n) for b in range(n)
                         if N[a, b, t] != int(b == conj[a])])
    lhs = N @ dims
    rhs = np.outer(dims, dims)
    report("dimension rule", [f"{ring.labels[a]} ⊗ {ring.labels[b]}: {lhs[a, b]} != {rhs[a, b]}"
                              for a in range(n) for b in range(n) if lhs[a, b] != rhs[a, b]])
    # (a b) c  vs  a (b c), entry [a, b, c, d]
    left = np.einsum("abe,ecd->abcd", N, N)
    right = np.einsum("bcf,afd->abcd", N, N)
    bad = np.argwhere(left != right)
    report("associativity", [f"({ring.labels[a]} ⊗ {ring.labels[b]}) ⊗ {ring.labels[c]} vs "
                             f"{ring.labels[a]} ⊗ ({ring.labels[b]} ⊗ {ring.labels[c]}) at {ring.labels[d]}"
                             for a, b, c, d in bad])
    return out


# -- independent check of the SU(2) rule ---------------------------------------

def su2_character_oracle(n: int, m: int) -> dict:
    """Decompose pi_n (x) pi_m by multiplying Laurent-polynomial characters.

    chi_n(q) = q^-n + q^(-n+2) + ... + q^n, stored as a coefficient array
    indexed by exponent + degree.  Peel the top term repeatedly.
    """
    def chi(k: int) -> np.ndarray:
        c = np.zeros(2 * k + 1, dtype=object)
        c[::2] = 1
        return c

    prod = np.convolve(chi(n), chi(m))
    top = n + m
    out: dict = {}
    while True:
        nz = np.nonzero(prod)[0]
        if nz.size == 0:
            break
        e = int(nz[-1]) - top
        c = prod[nz[-1]]
        if e < 0 or c < 0:
            raise ArithmeticError("character product is not a sum of SU(2) characters")
        out[e] = out.get(e, 0) + int(c)
        prod[top - e: top + e + 1] -= c * chi(e)
    return dict(sorted(out.items()))
