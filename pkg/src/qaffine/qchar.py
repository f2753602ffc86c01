"""q-characters: containers, ring operations, truncations and validation."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from .cartan import CartanData
from .ylattice import (
    ONE,
    APosition,
    Monomial,
    YLatticeError,
    canon,
    decompose_over_A,
    format_monomial,
    is_dominant,
    leq,
    monomial_from_json,
    monomial_to_json,
    parse_monomial,
    part_geq,
    part_leq,
    sigma_involution,
    weight,
    zeta_monomial,
)

SIMPLE_VALIDATED = "simple-validated"
FUNDAMENTAL = "fundamental"


class QCharError(ValueError):
    pass


class QCharacter:
    """Finite Z-combination of monomials with a designated highest monomial."""

    __slots__ = ("highest", "terms", "tags")

    def __init__(self, highest: Monomial, terms: Mapping[Monomial, int], tags: Iterable[str] = ()):
        self.highest = highest
        self.terms: Dict[Monomial, int] = {m: c for m, c in terms.items() if c}
        self.tags = frozenset(tags)

    @classmethod
    def single(cls, m: Monomial, tags=()) -> "QCharacter":
        return cls(m, {m: 1}, tags)

    @classmethod
    def one(cls) -> "QCharacter":
        return cls.single(ONE)

    def __eq__(self, other):
        if not isinstance(other, QCharacter):
            return NotImplemented
        return self.highest == other.highest and self.terms == other.terms

    def __hash__(self):
        return hash((self.highest, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def dimension(self) -> int:
        return sum(self.terms.values())

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def with_tags(self, *tags: str) -> "QCharacter":
        return QCharacter(self.highest, self.terms, self.tags | set(tags))

    def map_terms(self, f: Callable[[Monomial], Monomial], highest: Monomial) -> "QCharacter":
        out: Counter = Counter()
        for m, c in self.terms.items():
            out[f(m)] += c
        return QCharacter(highest, out)

    def __repr__(self):
        return f"QCharacter({self})"

    def __str__(self):
        parts = []
        for m, c in self.sorted_terms():
            s = format_monomial(m)
            parts.append(s if c == 1 else f"{c}*({s})")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "highest": monomial_to_json(self.highest),
            "terms": [[monomial_to_json(m), c] for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QCharacter":
        try:
            highest = monomial_from_json(data["highest"])
            terms: Counter = Counter()
            for mono, c in data["terms"]:
                if not isinstance(c, int):
                    raise QCharError(f"multiplicity {c!r} is not an integer")
                terms[monomial_from_json(mono)] += c
        except (KeyError, TypeError, ValueError) as exc:
            raise QCharError(f"malformed character: {exc}") from exc
        return cls(highest, terms)


def char_add(c1: QCharacter, c2: QCharacter, cd: Optional[CartanData] = None) -> QCharacter:
    """Multiset sum; the highest is the larger of the two highests when comparable."""
    terms = Counter(c1.terms)
    terms.update(c2.terms)
    highest = c1.highest
    if cd is not None and c1.highest != c2.highest and leq(cd, c1.highest, c2.highest):
        highest = c2.highest
    return QCharacter(highest, terms)


def char_mul(c1: QCharacter, c2: QCharacter) -> QCharacter:
    terms: Counter = Counter()
    for m1, a in c1.terms.items():
        for m2, b in c2.terms.items():
            terms[m1 * m2] += a * b
    return QCharacter(c1.highest * c2.highest, terms)


def char_prod(chars: Iterable[QCharacter]) -> QCharacter:
    out = QCharacter.one()
    for c in chars:
        out = char_mul(out, c)
    return out


def char_sub(c1: QCharacter, c2: QCharacter, k: int = 1) -> QCharacter:
    terms = Counter(c1.terms)
    for m, c in c2.terms.items():
        terms[m] -= k * c
    return QCharacter(c1.highest, terms)


# ------------------------------------------------------------ truncations

def char_trunc_geq(cd: CartanData, c: QCharacter, L: int) -> QCharacter:
    """Terms with m^{<=L-1} = M^{<=L-1}."""
    target = part_leq(cd, c.highest, L - 1)
    return QCharacter(c.highest, {m: k for m, k in c.terms.items() if part_leq(cd, m, L - 1) == target})


def char_trunc_leq(cd: CartanData, c: QCharacter, L: int) -> QCharacter:
    """Terms with m^{>=L+1} = M^{>=L+1}."""
    target = part_geq(cd, c.highest, L + 1)
    return QCharacter(c.highest, {m: k for m, k in c.terms.items() if part_geq(cd, m, L + 1) == target})


def in_a_window(cd: CartanData, pos: APosition, L: int, upper: bool) -> bool:
    """pos lies in eps^{d_i Z} q^{d_i(L+N) + mu_i r_i} (upper) or q^{d_i(L-N) - mu_i r_i}."""
    i, kappa, lam = pos
    d = cd.d[i]
    if kappa % d:
        return False
    shift = cd.mu[i] * cd.r[i]
    t = (Fraction(lam) - shift) / d - L if upper else L - (Fraction(lam) + shift) / d
    return t.denominator == 1 and t >= 0


def _alt_filter(cd, c, L, upper):
    keep = {}
    for m, k in c.terms.items():
        S = decompose_over_A(cd, m, c.highest)
        if S is not None and all(in_a_window(cd, p, L, upper) for p in S):
            keep[m] = k
    return QCharacter(c.highest, keep)


def char_trunc_geq_alt(cd: CartanData, c: QCharacter, L: int) -> QCharacter:
    """Terms with m M^{-1} a product of A^{-1} from the upper window at L."""
    return _alt_filter(cd, c, L, True)


def char_trunc_leq_alt(cd: CartanData, c: QCharacter, L: int) -> QCharacter:
    return _alt_filter(cd, c, L, False)


# ------------------------------------------------------------ validation

@dataclass
class ValidationReport:
    ok: bool = True
    failures: List[Tuple[str, str]] = field(default_factory=list)

    def fail(self, m: Monomial, reason: str):
        self.ok = False
        self.failures.append((format_monomial(m), reason))

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": [{"monomial": m, "reason": r} for m, r in self.failures]}


def _fundamental_point(cd: CartanData, m: Monomial):
    items = m.items()
    if len(items) != 1 or items[0][1] != 1:
        return None
    return items[0][0]


def validate_simple_character(cd: CartanData, c: QCharacter, fundamental: Optional[bool] = None) -> ValidationReport:
    """Triangularity against the highest monomial, plus the fundamental first descent.

    ``fundamental`` defaults to the presence of the 'fundamental' tag.
    """
    rep = ValidationReport()
    M = c.highest
    if c.terms.get(M, 0) != 1:
        rep.fail(M, f"highest monomial has multiplicity {c.terms.get(M, 0)}, expected 1")
    if not is_dominant(M):
        rep.fail(M, "highest monomial is not dominant")
    if fundamental is None:
        fundamental = FUNDAMENTAL in c.tags
    var = _fundamental_point(cd, M) if fundamental else None
    if fundamental and var is None:
        rep.fail(M, "fundamental character must have highest Y_{i,a^{d_i}}")
        fundamental = False
    for m, k in c.sorted_terms():
        if k < 0:
            rep.fail(m, f"negative multiplicity {k}")
        if m == M:
            continue
        S = decompose_over_A(cd, m, M)
        if S is None:
            rep.fail(m, "not below the highest monomial")
            continue
        if fundamental:
            i, kappa, lam = var
            first = APosition(i, kappa, canon(Fraction(lam) + cd.mu[i] * cd.r[i]))
            if S.get(first, 0) < 1:
                rep.fail(m, f"descent does not pass through A at {tuple(first)}")
            base = Fraction(lam) / cd.d[i]
            bad = [p for p in S if Fraction(p.lam) / cd.d[p.i] <= base]
            if bad:
                rep.fail(m, f"A-shift not strictly positive at {tuple(bad[0])}")
    return rep


def find_highest(cd: CartanData, terms: Iterable[Monomial]) -> Optional[Monomial]:
    """The term that every other term lies below, if there is one."""
    terms = list(terms)
    cands = [m for m in terms if is_dominant(m)]
    cands.sort(key=lambda m: (-sum(weight(cd, m).coeffs), m.sort_key()))
    for cand in cands:
        if all(m == cand or leq(cd, m, cand) for m in terms):
            return cand
    return None


def zeta_map(cd: CartanData, c: QCharacter, ell: int) -> QCharacter:
    """Apply zeta termwise; the highest is recomputed on the image."""
    out: Counter = Counter()
    for m, k in c.terms.items():
        out[zeta_monomial(cd, m, ell)] += k
    highest = find_highest(cd, out)
    if highest is None:
        highest = zeta_monomial(cd, c.highest, ell)
    return QCharacter(highest, out)


def sigma_character(cd: CartanData, c: QCharacter) -> QCharacter:
    """sigma applied termwise; the image is lowest-to-highest reversed."""
    out: Counter = Counter()
    for m, k in c.terms.items():
        out[sigma_involution(m, cd)] += k
    highest = find_highest(cd, out)
    return QCharacter(highest if highest is not None else sigma_involution(c.highest, cd), out)


# ------------------------------------------------------------ triangular decomposition

class DecompositionError(QCharError):
    pass


def triangular_decompose(cd: CartanData, product: QCharacter,
                         provider: Callable[[Monomial], QCharacter]) -> Dict[Monomial, int]:
    """Multiplicities of simple characters in ``product`` by highest-monomial peeling."""
    residual: Dict[Monomial, int] = dict(product.terms)
    result: Dict[Monomial, int] = {}
    while residual:
        dom = [m for m in residual if is_dominant(m)]
        if not dom:
            sample = min(residual, key=lambda m: m.sort_key())
            raise DecompositionError(
                f"nonzero residual without dominant monomial, e.g. {format_monomial(sample)}")
        maximal = [m for m in dom if not any(o != m and leq(cd, m, o) for o in dom)]
        top = min(maximal, key=lambda m: m.sort_key())
        k = residual[top]
        if k < 0:
            raise DecompositionError(f"negative multiplicity {k} at {format_monomial(top)}")
        result[top] = result.get(top, 0) + k
        for m, c in provider(top).terms.items():
            v = residual.get(m, 0) - k * c
            if v:
                residual[m] = v
            else:
                residual.pop(m, None)
    return result


# ------------------------------------------------------------ tables

class TableError(QCharError):
    pass


@dataclass
class CharacterTable:
    entries: Dict[Monomial, QCharacter] = field(default_factory=dict)
    provenance: Dict[Monomial, str] = field(default_factory=dict)

    PROVENANCES = ("computed-sl2", "ingested")

    def add(self, cd: CartanData, c: QCharacter, provenance: str = "ingested") -> None:
        if provenance not in self.PROVENANCES:
            raise TableError(f"unknown provenance {provenance!r}")
        rep = validate_simple_character(cd, c)
        if not rep.ok:
            m, why = rep.failures[0]
            raise TableError(f"entry {format_monomial(c.highest)}: {m}: {why}")
        self.entries[c.highest] = c.with_tags(SIMPLE_VALIDATED)
        self.provenance[c.highest] = provenance

    def get(self, m: Monomial) -> QCharacter:
        return self.entries[m]

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, CharacterTable) and self.entries == other.entries \
            and self.provenance == other.provenance

    def to_json(self) -> dict:
        out = {}
        for m in sorted(self.entries, key=lambda x: x.sort_key()):
            out[format_monomial(m)] = {
                "provenance": self.provenance.get(m, "ingested"),
                "character": self.entries[m].to_json(),
            }
        return out


def save_table(t: CharacterTable, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(t.to_json(), fh, indent=1, sort_keys=False)
        fh.write("\n")


def table_from_json(cd: CartanData, data) -> CharacterTable:
    if not isinstance(data, dict):
        raise TableError("table must be a JSON object keyed by monomial")
    t = CharacterTable()
    for key, entry in data.items():
        try:
            mkey = parse_monomial(key)
            c = QCharacter.from_json(entry["character"])
            prov = entry.get("provenance", "ingested")
        except (YLatticeError, QCharError, KeyError, TypeError, AttributeError) as exc:
            raise TableError(f"entry {key!r}: {exc}") from exc
        if c.highest != mkey:
            raise TableError(f"entry {key!r}: key differs from highest {format_monomial(c.highest)}")
        try:
            t.add(cd, c, prov)
        except TableError as exc:
            raise TableError(f"entry {key!r}: {exc}") from exc
    return t


def load_table(cd: CartanData, path) -> CharacterTable:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise TableError(f"{path}: JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return table_from_json(cd, data)
