"""Exact arithmetic on duals of abelian groups.

Characters of the real line are modelled as rational combinations of a finite
family of reals declared linearly independent over the rationals (the first
member is always the number 1).  Characters of tori are integer vectors.
Decimal approximations of the basis are used for one thing only: deciding the
sign of a nonzero combination.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

DEFAULT_TOL = 1e-9

NEGATIVE, ZERO, POSITIVE = -1, 0, 1


class AmbiguousSign(ArithmeticError):
    """Nonzero combination whose decimal value is within tolerance of zero."""


class IndependenceNotDeclared(ValueError):
    pass


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"3"``, ``"-3/2"`` or ``"−3/2"`` (unicode minus) exactly."""
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"expected a rational string, got {type(text).__name__}")
    cleaned = text.strip().replace("−", "-")
    if not cleaned or any(ch not in "0123456789-/" for ch in cleaned):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(cleaned)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RealBasis:
    numeric: tuple[float, ...]
    independence_declared: bool = True
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(self.numeric) < 1:
            raise ValueError("basis must have dimension >= 1")
        if self.numeric[0] != 1.0:
            raise ValueError("basis slot 0 must be exactly 1.0")
        if self.names is not None and len(self.names) != len(self.numeric):
            raise ValueError("basis names must match basis dimension")

    @property
    def dim(self) -> int:
        return len(self.numeric)

    def name(self, i: int) -> str:
        if self.names is not None:
            return self.names[i]
        return "1" if i == 0 else f"b{i}"

    def require_independent(self):
        if not self.independence_declared:
            raise IndependenceNotDeclared(
                "rank-based verdicts need the basis declared rationally independent")


@dataclass(frozen=True, order=True)
class RealCoord:
    """A real number ``sum_i coeffs[i] * basis[i]``, held exactly."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("RealCoord needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, *coeffs) -> "RealCoord":
        return cls(tuple(parse_rational(c) for c in coeffs))

    @classmethod
    def zero(cls, dim: int) -> "RealCoord":
        return cls((Fraction(0),) * dim)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "RealCoord") -> "RealCoord":
        _same_dim(self, other)
        return RealCoord(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "RealCoord") -> "RealCoord":
        _same_dim(self, other)
        return RealCoord(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "RealCoord":
        return RealCoord(tuple(-a for a in self.coeffs))

    def scale(self, q) -> "RealCoord":
        q = Fraction(q)
        return RealCoord(tuple(q * a for a in self.coeffs))

    def value(self, basis: RealBasis) -> float:
        if basis.dim != self.dim:
            raise ValueError(f"coordinate of length {self.dim} against basis of dim {basis.dim}")
        return math.fsum(float(c) * b for c, b in zip(self.coeffs, basis.numeric))

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    def render(self, basis: RealBasis | None = None) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            name = basis.name(i) if basis is not None else ("1" if i == 0 else f"b{i}")
            mag = format_rational(abs(c))
            if name == "1":
                body = mag
            else:
                body = name if abs(c) == 1 else f"{mag}·{name}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.render()


def _same_dim(a: RealCoord, b: RealCoord):
    if a.dim != b.dim:
        raise ValueError("coordinates over different bases")


@dataclass(frozen=True, order=True)
class IntVector:
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) < 1:
            raise ValueError("IntVector needs length >= 1")
        for e in self.entries:
            if isinstance(e, bool) or not isinstance(e, int):
                raise TypeError("IntVector entries must be integers")

    @classmethod
    def of(cls, *entries: int) -> "IntVector":
        return cls(tuple(entries))

    @classmethod
    def zero(cls, dim: int) -> "IntVector":
        return cls((0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: "IntVector") -> "IntVector":
        if self.dim != other.dim:
            raise ValueError("vectors of different length")
        return IntVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntVector") -> "IntVector":
        return self + (-other)

    def __neg__(self) -> "IntVector":
        return IntVector(tuple(-a for a in self.entries))

    def to_json(self) -> list[int]:
        return list(self.entries)

    def render(self, basis=None) -> str:
        if self.dim == 1:
            return str(self.entries[0])
        return "(" + ", ".join(str(e) for e in self.entries) + ")"

    def __str__(self) -> str:
        return self.render()


LATTICE_ZERO = "Zero"
LATTICE_R = "LatticeR"
ALL_OF_R = "AllOfR"
SUBLATTICE_ZD = "SublatticeZd"
FULL_ZD = "FullZd"


@dataclass(frozen=True)
class ClosureClass:
    """Closed subgroup of R or subgroup of Z^d generated by some characters."""

    tag: str
    generator: RealCoord | None = None
    basis_matrix: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.tag == LATTICE_R and (self.generator is None or self.generator.is_zero()):
            raise ValueError("LatticeR needs a nonzero generator")

    @property
    def is_everything(self) -> bool:
        return self.tag in (ALL_OF_R, FULL_ZD)

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.generator is not None:
            out["generator"] = self.generator.to_json()
        if self.basis_matrix is not None:
            out["basis"] = [list(r) for r in self.basis_matrix]
        return out

    def __str__(self) -> str:
        if self.tag == LATTICE_R:
            return f"LatticeR({self.generator})"
        if self.tag == SUBLATTICE_ZD:
            return f"SublatticeZd({[list(r) for r in self.basis_matrix]})"
        return self.tag


# -- signs and ranks ---------------------------------------------------------

def sign(x: RealCoord, basis: RealBasis, tol: float = DEFAULT_TOL) -> int:
    """Exact on zero; otherwise the sign of the decimal value if it clears ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if x.is_zero():
        return ZERO
    basis.require_independent()
    v = x.value(basis)
    if abs(v) <= tol:
        raise AmbiguousSign(
            f"{x.render(basis)} evaluates to {v!r}, within tol={tol}; "
            "give more digits for the basis or a smaller tol")
    return POSITIVE if v > 0 else NEGATIVE


def rational_rank(rows: Iterable[Sequence]) -> int:
    """Rank over Q of a rational matrix given by rows."""
    mat = [[Fraction(c) for c in r] for r in rows]
    if not mat:
        return 0
    rank = 0
    ncols = len(mat[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        p = mat[rank][col]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / p
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def q_rank(xs: Sequence[RealCoord]) -> int:
    if xs:
        dims = {x.dim for x in xs}
        if len(dims) != 1:
            raise ValueError("all coordinates must share one basis")
    return rational_rank(x.coeffs for x in xs)


def rational_gcd(qs: Iterable[Fraction]) -> Fraction:
    """Largest positive rational g with every q an integer multiple of g."""
    qs = [Fraction(q) for q in qs if q != 0]
    if not qs:
        return Fraction(0)
    den = reduce(math.lcm, (q.denominator for q in qs))
    num = reduce(math.gcd, (abs(q.numerator) * (den // q.denominator) for q in qs))
    return Fraction(num, den)


def closed_subgroup_R(xs: Sequence[RealCoord], basis: RealBasis | None = None,
                      tol: float = DEFAULT_TOL) -> ClosureClass:
    """Closure of the subgroup of R generated by ``xs``: {0}, gZ or R.

    The lattice generator is reported positive when the basis can decide its
    sign, otherwise with its first nonzero coefficient positive.
    """
    if basis is not None:
        basis.require_independent()
    nonzero = [x for x in xs if not x.is_zero()]
    if not nonzero:
        return ClosureClass(LATTICE_ZERO)
    rank = q_rank(nonzero)
    if rank >= 2:
        return ClosureClass(ALL_OF_R)
    ray = nonzero[0]
    pivot = next(i for i, c in enumerate(ray.coeffs) if c != 0)
    ratios = [x.coeffs[pivot] / ray.coeffs[pivot] for x in nonzero]
    gen = ray.scale(rational_gcd(ratios))
    flip = gen.coeffs[pivot] < 0
    if basis is not None:
        try:
            flip = sign(gen, basis, tol) < 0
        except AmbiguousSign:
            pass
    return ClosureClass(LATTICE_R, generator=-gen if flip else gen)


@dataclass(frozen=True)
class SemigroupReport:
    """Outcome of asking whether a closed subsemigroup of R is all of R."""

    is_all: bool
    has_positive: bool
    has_negative: bool
    group: ClosureClass
    failed: tuple[str, ...]

    @property
    def reason(self) -> str:
        if self.is_all:
            return "generators of both signs and a dense generated group"
        return "; ".join(self.failed)

    def to_json(self) -> dict:
        return {
            "is_all": self.is_all,
            "has_positive": self.has_positive,
            "has_negative": self.has_negative,
            "group": self.group.to_json(),
            "reason": self.reason,
        }


def subsemigroup_R_is_all(xs: Sequence[RealCoord], basis: RealBasis,
                          tol: float = DEFAULT_TOL) -> SemigroupReport:
    """Is the closed subsemigroup of R generated by ``xs`` the whole line?

    A closed subsemigroup meeting both half-lines is a closed subgroup, so
    the answer is yes exactly when both signs occur and the group is dense.
    """
    signs = {sign(x, basis, tol) for x in xs}
    pos, neg = POSITIVE in signs, NEGATIVE in signs
    group = closed_subgroup_R(xs, basis, tol)
    failed = []
    if not pos:
        failed.append("no positive generator")
    if not neg:
        failed.append("no negative generator")
    if group.tag != ALL_OF_R:
        failed.append(f"generated group is {group}, not dense")
    return SemigroupReport(not failed, pos, neg, group, tuple(failed))


# -- integer lattices --------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """``M == left @ diag @ right`` with ``left``, ``right`` unimodular."""

    factors: tuple[int, ...]
    coker_free_rank: int
    kernel_rank: int
    diag: tuple[tuple[int, ...], ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for f in self.factors if f != 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f > 1)

    def reassemble(self) -> list[list[int]]:
        """``left @ diag @ right`` in exact integer arithmetic."""
        def mul(A, B):
            return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]
        return mul(mul(self.left, self.diag), self.right)


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form over Z of an m x n integer matrix.

    The matrix is read as a map Z^n -> Z^m; the cokernel is
    ``(+) Z/d_i (+) Z^(m - rank)`` and the kernel has rank ``n - rank``.
    """
    D = [[int(v) for v in row] for row in M]
    m = len(D)
    n = len(D[0]) if m else 0
    if any(len(r) != n for r in D):
        raise ValueError("ragged matrix")
    # invariants maintained: U D0 V = D,  Ui D V i = D0 with Ui = U^-1, Vi = V^-1
    Ui = _identity(m)
    Vi = _identity(n)

    def row_add(i, j, k):  # row_i += k * row_j
        D[i] = [a + k * b for a, b in zip(D[i], D[j])]
        for r in Ui:
            r[j] -= k * r[i]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        D[i] = [-a for a in D[i]]
        for r in Ui:
            r[i] = -r[i]

    def col_add(i, j, k):  # col_j += k * col_i
        for r in D:
            r[j] += k * r[i]
        Vi[i] = [a - k * b for a, b in zip(Vi[i], Vi[j])]

    def col_swap(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            row_swap(t, pi)
            col_swap(t, pj)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    row_add(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    col_add(t, j, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if D[t][t] < 0:
            row_neg(t)

    factors = tuple(D[i][i] for i in range(min(m, n)))
    rank = sum(1 for f in factors if f)
    return SmithForm(
        factors=factors,
        coker_free_rank=m - rank,
        kernel_rank=n - rank,
        diag=tuple(tuple(r) for r in D),
        left=tuple(tuple(r) for r in Ui),
        right=tuple(tuple(r) for r in Vi),
    )


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Nonzero rows only, pivots positive and strictly increasing in column,
    entries above each pivot reduced into ``[0, pivot)``.
    """
    H = [[int(v) for v in r] for r in rows if any(r)]
    if not H:
        return ()
    ncols = len(H[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(H)) if H[i][c]]
            if not nz:
                break
            i = min(nz, key=lambda k: abs(H[k][c]))
            H[r], H[i] = H[i], H[r]
            done = True
            for k in range(r + 1, len(H)):
                if H[k][c]:
                    q = H[k][c] // H[r][c]
                    H[k] = [a - q * b for a, b in zip(H[k], H[r])]
                    done = done and H[k][c] == 0
            if done:
                break
        if r < len(H) and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
            for k in range(r):
                q = H[k][c] // H[r][c]
                H[k] = [a - q * b for a, b in zip(H[k], H[r])]
            r += 1
            if r == len(H):
                break
    return tuple(tuple(row) for row in H[:r])


def closed_subgroup_Zd(vs: Sequence[IntVector], d: int | None = None) -> ClosureClass:
    if d is None:
        if not vs:
            raise ValueError("dimension needed for an empty family")
        d = vs[0].dim
    if any(v.dim != d for v in vs):
        raise ValueError("vectors of mixed length")
    hnf = hermite_normal_form([v.entries for v in vs])
    if not hnf:
        return ClosureClass(LATTICE_ZERO)
    if len(hnf) == d and all(hnf[i][i] == 1 for i in range(d)):
        return ClosureClass(FULL_ZD)
    return ClosureClass(SUBLATTICE_ZD, basis_matrix=hnf)


def lattice_is_full_Zd(vs: Sequence[IntVector], d: int | None = None) -> bool:
    """Does ``vs`` generate all of Z^d?"""
    if d is None:
        if not vs:
            return False
        d = vs[0].dim
    if not vs:
        return False
    snf = smith_normal_form([v.entries for v in vs])
    return snf.rank == d and all(f == 1 for f in snf.factors)


def _nullspace_vector(rows: Sequence[Sequence[int]], d: int) -> tuple[int, ...] | None:
    """A primitive integer vector orthogonal to every row, if the rows have rank d-1."""
    mat = [[Fraction(c) for c in r] for r in rows]
    pivots = []
    r = 0
    for c in range(d):
        p = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        mat[r] = [a / mat[r][c] for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(d) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    vec = [Fraction(0)] * d
    vec[f] = Fraction(1)
    for row, c in zip(mat, pivots):
        vec[c] = -row[f]
    den = reduce(math.lcm, (v.denominator for v in vec))
    ints = [int(v * den) for v in vec]
    g = reduce(math.gcd, (abs(v) for v in ints))
    return tuple(v // g for v in ints)


def supporting_functional(vs: Sequence[IntVector], d: int) -> tuple[int, ...] | None:
    """A nonzero integer functional ``f`` with ``f . v >= 0`` for every v, or
    None when the cone spanned by ``vs`` is all of R^d.

    Exact facet enumeration: a full-dimensional polyhedral cone other than
    R^d has a facet spanned by d-1 independent generators, so for d >= 2 the
    returned ``f`` also vanishes on at least one generator.
    """
    rows = [v.entries for v in vs if not v.is_zero()]
    if rational_rank(rows) < d:
        basis_rows = []
        for row in rows:
            if rational_rank(basis_rows + [row]) > len(basis_rows):
                basis_rows.append(row)
        # pad to rank d-1 with unit vectors to pin down one normal direction
        for k in range(d):
            if len(basis_rows) == d - 1:
                break
            unit = tuple(int(i == k) for i in range(d))
            if rational_rank(basis_rows + [unit]) > len(basis_rows):
                basis_rows.append(unit)
        return _nullspace_vector(basis_rows, d)
    for combo in combinations(range(len(rows)), d - 1):
        sub = [rows[i] for i in combo]
        if rational_rank(sub) != d - 1:
            continue
        normal = _nullspace_vector(sub, d)
        if normal is None:
            continue
        dots = [sum(a * b for a, b in zip(normal, row)) for row in rows]
        if all(x >= 0 for x in dots):
            return normal
        if all(x <= 0 for x in dots):
            return tuple(-a for a in normal)
    return None
