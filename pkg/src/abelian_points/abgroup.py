"""Finite abelian groups: invariant factors, per-prime exponent vectors, CRT assembly.

Groups are canonically stored as invariant-factor chains d_1 | d_2 | ... padded
with leading 1s to at least four slots (the rank of the surface lattice);
display omits the trivial factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .errors import InvalidInputError, ParseError, TooManyGeneratorsError
from .numeric import factorize, is_prime, valuation

SLOTS = 4


@dataclass(frozen=True)
class HodgeVector:
    """Sorted exponent tuple (m_1 <= ... <= m_r) of the l-part of a group."""

    ell: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(m) for m in self.exponents))
        if not is_prime(self.ell):
            raise InvalidInputError(f"{self.ell} is not prime")
        if any(m < 0 for m in self.exponents):
            raise InvalidInputError("exponents must be nonnegative")
        if list(self.exponents) != sorted(self.exponents):
            raise InvalidInputError("exponents must be sorted ascending")

    @property
    def slots(self) -> int:
        return len(self.exponents)

    def order(self) -> int:
        return self.ell ** sum(self.exponents)


def _canonical_chain(invariants: tuple[int, ...]) -> tuple[int, ...]:
    chain = tuple(d for d in invariants if d != 1)
    pad = max(SLOTS, len(chain)) - len(chain)
    return (1,) * pad + chain


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant factors d_1 | d_2 | ... | d_r; canonical and hashable."""

    invariants: tuple[int, ...]

    def __post_init__(self):
        inv = tuple(int(d) for d in self.invariants)
        if any(d < 1 for d in inv):
            raise InvalidInputError("invariant factors must be positive")
        for a, b in zip(inv, inv[1:]):
            if b % a != 0:
                raise InvalidInputError(
                    f"{inv} is not a divisibility chain; use from_factors to canonicalize"
                )
        object.__setattr__(self, "invariants", _canonical_chain(inv))

    @classmethod
    def from_factors(cls, factors) -> "FiniteAbelianGroup":
        """Canonical group for an arbitrary multiset of cyclic orders."""
        primary: dict[int, list[int]] = {}
        for d in factors:
            d = int(d)
            if d < 1:
                raise InvalidInputError(f"cyclic factor {d} must be positive")
            for p, e in factorize(d):
                primary.setdefault(p, []).append(e)
        width = max((len(v) for v in primary.values()), default=0)
        width = max(width, SLOTS)
        inv = [1] * width
        for p, exps in primary.items():
            padded = [0] * (width - len(exps)) + sorted(exps)
            for i in range(width):
                if padded[i]:
                    inv[i] *= p ** padded[i]
        return cls(tuple(inv))

    @classmethod
    def trivial(cls) -> "FiniteAbelianGroup":
        return cls(())

    @property
    def order(self) -> int:
        return prod(self.invariants)

    def primary_part(self, ell: int, slots: int = SLOTS) -> HodgeVector:
        """Exponents of the ell-primary component, zero-padded to `slots`."""
        exps = [valuation(ell, d) for d in self.invariants if d % ell == 0]
        if len(exps) > slots:
            raise TooManyGeneratorsError(
                f"the {ell}-part needs {len(exps)} generators, more than {slots}"
            )
        return HodgeVector(ell, (0,) * (slots - len(exps)) + tuple(sorted(exps)))

    def __str__(self) -> str:
        return format_group(self)


def primary_part(group: FiniteAbelianGroup, ell: int, slots: int = SLOTS) -> HodgeVector:
    return group.primary_part(ell, slots)


def assemble_from_primary(parts, slots: int = SLOTS) -> FiniteAbelianGroup:
    """Unique group whose per-prime exponent vectors are the given ones."""
    parts = list(parts)
    seen = set()
    for hv in parts:
        if hv.ell in seen:
            raise InvalidInputError(f"duplicate prime {hv.ell}")
        seen.add(hv.ell)
        if hv.slots != (parts[0].slots if parts else slots):
            raise InvalidInputError("all primary parts must use the same slot count")
    width = parts[0].slots if parts else slots
    inv = [1] * width
    for hv in parts:
        for i, m in enumerate(hv.exponents):
            if m:
                inv[i] *= hv.ell**m
    return FiniteAbelianGroup(tuple(inv))


def partitions_with_slots(total: int, slots: int) -> list[tuple[int, ...]]:
    """All 0 <= m_1 <= ... <= m_slots with sum = total, in lexicographic order."""
    if total < 0 or slots < 1:
        raise InvalidInputError("need total >= 0 and slots >= 1")
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, lo: int, left: int) -> None:
        if left == 1:
            if remaining >= lo:
                out.append(prefix + (remaining,))
            return
        for v in range(lo, remaining // left + 1):
            rec(prefix + (v,), remaining - v, v, left - 1)

    rec((), total, 0, slots)
    return out


def parse_group(text: str) -> FiniteAbelianGroup:
    """Parse "d1,d2,..." into a canonical group; any positive multiset is accepted."""
    tokens = [t.strip() for t in text.split(",")]
    factors = []
    for tok in tokens:
        if not tok or not (tok.isdigit() or (tok[0] == "-" and tok[1:].isdigit())):
            raise ParseError(f"bad cyclic factor {tok!r}")
        d = int(tok)
        if d < 1:
            raise ParseError(f"cyclic factor {d} must be positive")
        factors.append(d)
    return FiniteAbelianGroup.from_factors(factors)


def format_group(group: FiniteAbelianGroup) -> str:
    nontrivial = [d for d in group.invariants if d > 1]
    if not nontrivial:
        return "1"
    return ",".join(str(d) for d in nontrivial)


def group_to_json(group: FiniteAbelianGroup) -> dict:
    primary = {
        str(p): list(group.primary_part(p).exponents)
        for p, _ in factorize(group.order)
    }
    return {"invariants": list(group.invariants), "primary": primary}
