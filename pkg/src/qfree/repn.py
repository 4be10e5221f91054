"""Finite-dimensional unitary representations of K x G as formal sums.

A representation is a list of summands ``(irrep of K, character of G, mult)``
where G is trivial, the real line (characters are :class:`RealCoord` over a
declared basis) or a torus T^d (characters are :class:`IntVector`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .abelian import (
    IntVector,
    RealBasis,
    RealCoord,
    closed_subgroup_Zd,
    closed_subgroup_R,
    q_rank,
)
from .fusion import SU2, FiniteTable, FusionRing

DEFAULT_DEPTH = 32

TRIVIAL = "trivial"
R_LINE = "r_line"
TORUS = "torus"


@dataclass(frozen=True)
class AbelianDual:
    kind: str = TRIVIAL
    basis: RealBasis | None = None
    torus_dim: int | None = None

    def __post_init__(self):
        if self.kind == R_LINE and self.basis is None:
            raise ValueError("the real line needs a declared basis")
        if self.kind == TORUS and (self.torus_dim is None or self.torus_dim < 1):
            raise ValueError("a torus needs a positive dimension")
        if self.kind not in (TRIVIAL, R_LINE, TORUS):
            raise ValueError(f"unknown abelian factor {self.kind!r}")

    @classmethod
    def trivial(cls) -> "AbelianDual":
        return cls()

    @classmethod
    def r_line(cls, basis: RealBasis) -> "AbelianDual":
        return cls(R_LINE, basis=basis)

    @classmethod
    def torus(cls, d: int) -> "AbelianDual":
        return cls(TORUS, torus_dim=d)

    @property
    def is_trivial(self) -> bool:
        return self.kind == TRIVIAL

    def zero(self):
        if self.kind == R_LINE:
            return RealCoord.zero(self.basis.dim)
        if self.kind == TORUS:
            return IntVector.zero(self.torus_dim)
        return None

    def add(self, a, b):
        return None if self.kind == TRIVIAL else a + b

    def check(self, ch) -> None:
        if self.kind == TRIVIAL:
            if ch is not None:
                raise ValueError("no character allowed when the abelian factor is trivial")
        elif self.kind == R_LINE:
            if not isinstance(ch, RealCoord) or ch.dim != self.basis.dim:
                raise ValueError(f"expected {self.basis.dim} rational coordinates, got {ch!r}")
        elif not isinstance(ch, IntVector) or ch.dim != self.torus_dim:
            raise ValueError(f"expected an integer vector of length {self.torus_dim}, got {ch!r}")

    def render(self, ch) -> str:
        if ch is None:
            return "-"
        return ch.render(self.basis) if self.kind == R_LINE else ch.render()

    def to_json(self, ch):
        return None if ch is None else ch.to_json()


@dataclass(frozen=True)
class Summand:
    irrep: Any
    character: Any = None
    mult: int = 1


@dataclass(frozen=True)
class Representation:
    ring: FusionRing
    dual: AbelianDual
    summands: tuple[Summand, ...]
    declared_faithful: bool | None = None

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        seen = set()
        for s in self.summands:
            self.ring.check(s.irrep)
            self.dual.check(s.character)
            if isinstance(s.mult, bool) or not isinstance(s.mult, int) or s.mult < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {s.mult!r}")
            key = (s.irrep, s.character)
            if key in seen:
                raise ValueError(f"summand {self.ring.label(s.irrep)} with character "
                                 f"{self.dual.render(s.character)} listed twice; merge multiplicities")
            seen.add(key)
        if not self.summands:
            raise ValueError("the representation has no summands")

    @property
    def characters(self) -> list:
        return [s.character for s in self.summands]

    def conjugate(self) -> "Representation":
        return Representation(
            self.ring, self.dual,
            tuple(Summand(self.ring.conj(s.irrep),
                          None if s.character is None else -s.character, s.mult)
                  for s in self.summands),
            self.declared_faithful)

    def as_multiset(self) -> dict:
        return {(s.irrep, s.character): s.mult for s in self.summands}

    def render(self) -> str:
        parts = []
        for s in self.summands:
            lab = self.ring.label(s.irrep)
            if not self.dual.is_trivial:
                lab = f"({self.dual.render(s.character)}, {lab})"
            parts.append(lab if s.mult == 1 else f"{s.mult}·{lab}")
        return " ⊕ ".join(parts)


def rep_dim(rep: Representation) -> int:
    return sum(s.mult * rep.ring.dim(s.irrep) for s in rep.summands)


def _sort_key(item):
    (irrep, ch), _ = item
    ik = (0, irrep) if isinstance(irrep, int) else (1, str(irrep))
    ck = () if ch is None else (ch.coeffs if isinstance(ch, RealCoord) else ch.entries)
    return ik, ck


def tensor_with(rep: Representation, current: dict) -> dict:
    """``current (x) rep`` for a multiset keyed by (irrep, character)."""
    out: dict = {}
    for (a, ca), ma in current.items():
        for s in rep.summands:
            ch = rep.dual.add(ca, s.character)
            for c, mc in rep.ring.fuse(a, s.irrep).items():
                key = (c, ch)
                out[key] = out.get(key, 0) + ma * s.mult * mc
    return dict(sorted(out.items(), key=_sort_key))


def tensor_power_decompose(rep: Representation, k: int) -> dict:
    """Exact decomposition of ``rep^{(x) k}`` as {(irrep, character): mult}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    current = {(rep.ring.trivial, rep.dual.zero()): 1}
    for _ in range(k):
        current = tensor_with(rep, current)
    return current


def render_decomposition(rep: Representation, decomposition: dict) -> str:
    parts = []
    for (a, ch), m in decomposition.items():
        lab = rep.ring.label(a)
        if not rep.dual.is_trivial:
            lab = f"({rep.dual.render(ch)}, {lab})"
        parts.append(lab if m == 1 else f"{m}·{lab}")
    return " ⊕ ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FockSearch:
    found: bool
    depth: int | None
    searched: int
    exact: bool

    def __str__(self) -> str:
        if self.found:
            return f"FoundAtDepth({self.depth})"
        if self.exact:
            return "NeverFound"
        return f"NotFoundUpTo({self.searched})"


def _support_step(rep: Representation, support: frozenset) -> frozenset:
    out = set()
    for a, ca in support:
        for s in rep.summands:
            ch = rep.dual.add(ca, s.character)
            for c in rep.ring.fuse(a, s.irrep):
                out.add((c, ch))
    return frozenset(out)


def fock_contains(rep: Representation, target, depth: int = DEFAULT_DEPTH) -> FockSearch:
    """Least ``n`` with ``target <= rep^{(x) n}``.

    ``target`` is an irrep when the abelian factor is trivial, otherwise an
    (irrep, character) pair.  For a finite table with trivial abelian factor
    the support sequence is eventually periodic, so the search runs until a
    support set repeats and the answer is exact regardless of ``depth``.
    """
    if rep.dual.is_trivial and not isinstance(target, tuple):
        target = (target, None)
    irrep, ch = target
    rep.ring.check(irrep)
    rep.dual.check(ch)
    support = frozenset({(rep.ring.trivial, rep.dual.zero())})
    exact = rep.ring.is_finite and rep.dual.is_trivial
    seen = {support}
    n = 0
    while True:
        if target in support:
            return FockSearch(True, n, n, exact)
        if not exact and n >= depth:
            return FockSearch(False, None, n, False)
        support = _support_step(rep, support)
        n += 1
        if exact:
            if support in seen:
                return FockSearch(False, None, n, True)
            seen.add(support)


# -- faithfulness ------------------------------------------------------------

FAITHFUL = "Faithful"
NOT_FAITHFUL = "NotFaithful"
DECLARED = "DeclaredByUser"
UNSUPPORTED = "Unsupported"


@dataclass(frozen=True)
class FaithfulnessVerdict:
    tag: str
    witness: str | None = None
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tag == NOT_FAITHFUL and not self.witness:
            raise ValueError("NotFaithful needs a witness")

    @property
    def usable(self) -> bool:
        """Can results that assume faithfulness be applied?"""
        return self.tag in (FAITHFUL, DECLARED)

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.witness:
            out["witness"] = self.witness
        if self.evidence:
            out["evidence"] = self.evidence
        return out

    def __str__(self) -> str:
        return f"{self.tag}({self.witness})" if self.witness else self.tag


def mixed_power_support(ring: FiniteTable, irreps: Sequence[int]) -> set[int]:
    """Irreducibles occurring in some ``pi^{(x)k} (x) conj(pi)^{(x)l}`` with k, l >= 1,
    where ``irreps`` is the support of pi."""
    conj = [ring.conj(a) for a in irreps]
    found: set[int] = set()
    for a in irreps:
        for b in conj:
            found.update(ring.fuse(a, b))
    frontier = set(found)
    while frontier:
        new = set()
        for x in frontier:
            for a in list(irreps) + conj:
                for c in ring.fuse(x, a):
                    if c not in found:
                        new.add(c)
        found |= new
        frontier = new
    return found


def _su2_real_witness(rep: Representation, gen: RealCoord) -> tuple[str, int]:
    """A nontrivial kernel element of a rank-1 SU(2) x R representation.

    Characters are t = q * g with q rational; the element (z, x) acts on the
    summand (t, pi_n) by z^n e^{itx}.  With x = pi/g every summand becomes
    (-1)^(n + q), so (-1, pi/g) is in the kernel when n + q is even throughout
    (q integral, as q is a multiple of the lattice gcd).  Otherwise (1, 2pi/g)
    always is.  Returns the description and z.
    """
    basis = rep.dual.basis
    g_txt = gen.render(basis)
    z = -1
    for s in rep.summands:
        q = _ratio(s.character, gen)
        if q.denominator != 1 or (s.irrep + q.numerator) % 2:
            z = 1
            break
    z_txt, angle = ("−1", "π") if z == -1 else ("1", "2π")
    if g_txt == "1":
        return f"rank 1: ({z_txt}, {angle}) lies in the kernel", z
    return f"rank 1: ({z_txt}, {angle}/g) lies in the kernel, g = {g_txt}", z


def _ratio(x: RealCoord, gen: RealCoord) -> Fraction:
    if x.is_zero():
        return Fraction(0)
    i = next(i for i, c in enumerate(gen.coeffs) if c != 0)
    return x.coeffs[i] / gen.coeffs[i]


def is_faithful(rep: Representation) -> FaithfulnessVerdict:
    ring, dual = rep.ring, rep.dual
    irreps = [s.irrep for s in rep.summands]
    trivial_K = isinstance(ring, FiniteTable) and ring.size == 1

    if isinstance(ring, FiniteTable) and dual.is_trivial:
        reached = mixed_power_support(ring, irreps)
        missing = [a for a in ring.irreps() if a not in reached]
        if not missing:
            return FaithfulnessVerdict(FAITHFUL, evidence={"reached": [ring.label(a) for a in sorted(reached)]})
        names = ", ".join(ring.label(a) for a in missing)
        return FaithfulnessVerdict(
            NOT_FAITHFUL, f"{names} not contained in any π^⊗k ⊗ π̄^⊗l with k, l ≥ 1",
            evidence={"missing": [ring.label(a) for a in missing]})

    if isinstance(ring, SU2) and dual.is_trivial:
        odd = [n for n in irreps if n % 2]
        if odd:
            return FaithfulnessVerdict(FAITHFUL, evidence={"odd_spins": odd})
        return FaithfulnessVerdict(NOT_FAITHFUL, "factors through SO(3): −1 acts trivially (all spins even)")

    if isinstance(ring, SU2) and dual.kind == R_LINE:
        dual.basis.require_independent()
        odd = [n for n in irreps if n % 2]
        chars = [s.character for s in rep.summands]
        rank = q_rank(chars)
        ev = {"odd_spins": odd, "q_rank": rank}
        if rank == 0:
            return FaithfulnessVerdict(NOT_FAITHFUL, "rank 0: the whole real line acts trivially", ev)
        if rank == 1:
            gen = closed_subgroup_R(chars, dual.basis).generator
            text, z = _su2_real_witness(rep, gen)
            ev["kernel_element"] = {"z": z, "x": "π/g" if z == -1 else "2π/g", "g": gen.to_json()}
            return FaithfulnessVerdict(NOT_FAITHFUL, text, ev)
        if not odd:
            return FaithfulnessVerdict(NOT_FAITHFUL, "all spins even: (−1, 0) lies in the kernel", ev)
        return FaithfulnessVerdict(FAITHFUL, evidence=ev)

    if trivial_K and dual.kind == TORUS:
        cls = closed_subgroup_Zd(rep.characters, dual.torus_dim)
        if cls.is_everything:
            return FaithfulnessVerdict(FAITHFUL, evidence={"lattice": cls.to_json()})
        return FaithfulnessVerdict(
            NOT_FAITHFUL, f"characters generate {cls}, a proper sublattice of Z^{dual.torus_dim}",
            evidence={"lattice": cls.to_json()})

    if rep.declared_faithful:
        return FaithfulnessVerdict(DECLARED)
    return FaithfulnessVerdict(
        UNSUPPORTED, "no faithfulness test for this group; declare it in the input")


__all__ = [
    "AbelianDual", "Summand", "Representation", "FockSearch", "FaithfulnessVerdict",
    "rep_dim", "tensor_power_decompose", "tensor_with", "fock_contains", "is_faithful",
    "mixed_power_support", "render_decomposition",
    "DEFAULT_DEPTH", "TRIVIAL", "R_LINE", "TORUS",
    "FAITHFUL", "NOT_FAITHFUL", "DECLARED", "UNSUPPORTED",
]
