"""q-segment combinatorics for sl2-hat and the pairwise-simplicity harness."""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .qchar import SIMPLE_VALIDATED, QCharacter, char_mul, char_prod, validate_simple_character
from .sl2engine import (
    CD_SL2,
    NotThin,
    extract_qchar,
    is_simple_thin,
    realize_simple,
    tensor_many,
)
from .ylattice import APosition, Monomial, a_monomial, format_monomial, is_dominant


class KRString(NamedTuple):
    """W_{k,a} with a = q^base: highest monomial Y_{1,a} Y_{1,aq^2} ... Y_{1,aq^{2(k-1)}}."""

    base: int
    length: int

    @property
    def support(self) -> range:
        return range(self.base, self.base + 2 * self.length, 2)

    @property
    def top(self) -> int:
        return self.base + 2 * (self.length - 1)


StringFactorization = Tuple[KRString, ...]


def kr_monomial(s: KRString) -> Monomial:
    return Monomial({(1, 0, x): 1 for x in s.support})


def in_general_position(s1: KRString, s2: KRString) -> bool:
    """False exactly when the union of supports is a q^2-segment properly containing both."""
    if (s1.base - s2.base) % 2:
        return True
    a, b = set(s1.support), set(s2.support)
    union = a | b
    lo, hi = min(union), max(union)
    is_segment = len(union) == (hi - lo) // 2 + 1
    return not (is_segment and union != a and union != b)


def _support_counter(m: Monomial) -> Counter:
    if not is_dominant(m):
        raise ValueError(f"{format_monomial(m)} is not dominant")
    pts: Counter = Counter()
    for (i, kappa, lam), e in m.items():
        if i != 1 or kappa != 0 or not isinstance(lam, int):
            raise ValueError(f"{format_monomial(m)} is not an integer-lattice sl2 monomial")
        pts[lam] += e
    return pts


def factor_into_strings(m: Monomial) -> StringFactorization:
    """Greedy peeling of maximal q^2-runs, one copy of each support point per round."""
    pts = _support_counter(m)
    strings: List[KRString] = []
    while pts:
        support = sorted(pts)
        for parity in (0, 1):
            prev = run_start = None
            for x in [y for y in support if y % 2 == parity] + [None]:
                if x is not None and prev is not None and x == prev + 2:
                    prev = x
                    continue
                if prev is not None:
                    strings.append(KRString(run_start, (prev - run_start) // 2 + 1))
                run_start = prev = x
        for x in support:
            pts[x] -= 1
            if not pts[x]:
                del pts[x]
    return tuple(sorted(strings))


def chi_kr(s: KRString) -> QCharacter:
    """Ladder T_j = kr_monomial(s) * prod_{i=k-j+1..k} A_{1,q^{base+2i-1}}^{-1}, j = 0..k."""
    if s.length == 0:
        return QCharacter.one()
    top = kr_monomial(s)
    terms = {top: 1}
    cur = top
    for i in range(s.length, 0, -1):
        cur = cur * a_monomial(CD_SL2, APosition(1, 0, s.base + 2 * i - 1)).inv()
        terms[cur] = 1
    return QCharacter(top, terms)


def chi_simple_sl2(m: Monomial) -> QCharacter:
    c = char_prod(chi_kr(s) for s in factor_into_strings(m))
    c = QCharacter(m, c.terms)
    rep = validate_simple_character(CD_SL2, c)
    if not rep.ok:
        raise AssertionError(f"character of {format_monomial(m)} failed validation: {rep.failures[0]}")
    return c.with_tags(SIMPLE_VALIDATED)


def strings_pairwise_general(strings: Sequence[KRString]) -> bool:
    return all(in_general_position(a, b) for a, b in itertools.combinations(strings, 2))


def tensor_simple_sl2(ms: Sequence[Monomial]) -> bool:
    """Simplicity of L(m_1) (x) ... (x) L(m_N): all cross pairs of strings in general position."""
    facs = [factor_into_strings(m) for m in ms]
    for f1, f2 in itertools.combinations(facs, 2):
        for s1 in f1:
            for s2 in f2:
                if not in_general_position(s1, s2):
                    return False
    return True


# ------------------------------------------------------------ verification harness

def window_strings(ell: int, K: int) -> List[KRString]:
    return [KRString(b, k) for k in range(1, K + 1) for b in range(0, ell + 1) if b + 2 * (k - 1) <= ell]


def window_simples(ell: int, K: int) -> List[Monomial]:
    """Dominant monomials with support in [0, ell] and total degree at most K."""
    out = []
    levels = range(ell + 1)
    for deg in range(1, K + 1):
        for combo in itertools.combinations_with_replacement(levels, deg):
            out.append(Monomial(Counter((1, 0, x) for x in combo)))
    return sorted(out, key=lambda m: m.sort_key())


def oracle_simple(ms: Sequence[Monomial], max_dim: int = 64) -> Optional[bool]:
    """Matrix verdict for the tensor of the L(m); None when too big or not thin."""
    reps = [realize_simple(m) for m in ms]
    dim = 1
    for r in reps:
        dim *= r.dim
    if dim > max_dim:
        return None
    # l-weight multiplicities of the tensor from the factors' extracted characters
    prod = char_prod(extract_qchar(r) for r in reps)
    if any(c > 1 for c in prod.terms.values()):
        return None
    try:
        return is_simple_thin(tensor_many(reps))
    except NotThin:
        return None


@dataclass
class FactgReport:
    ell: int
    K: int
    N: int
    tuples_checked: int = 0
    simple_tuples: int = 0
    counterexamples: List[List[str]] = None
    oracle_checked: int = 0
    oracle_agree: int = 0
    oracle_disagree: List[List[str]] = None
    oracle_skipped: int = 0
    oracle_tuples: List[Tuple[Monomial, ...]] = None

    def __post_init__(self):
        self.counterexamples = self.counterexamples or []
        self.oracle_disagree = self.oracle_disagree or []
        self.oracle_tuples = self.oracle_tuples or []

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.oracle_disagree

    def to_json(self) -> dict:
        return {
            "window": {"ell": self.ell, "max_string_length": self.K, "max_tuple_size": self.N},
            "tuples_checked": self.tuples_checked,
            "simple_tuples": self.simple_tuples,
            "counterexamples": self.counterexamples,
            "oracle": {
                "checked": self.oracle_checked,
                "agree": self.oracle_agree,
                "disagree": self.oracle_disagree,
                "skipped_not_thin_or_large": self.oracle_skipped,
                "tuples": [[format_monomial(m) for m in t] for t in self.oracle_tuples],
            },
            "ok": self.ok,
        }


def verify_factg(ell: int = 4, K: int = 2, N: int = 3, samples: int = 24, seed: int = 0,
                 max_dim: int = 64) -> FactgReport:
    """Pairwise simple <=> globally simple over all tuples of window simples.

    Tuples are multisets of size 2..N drawn from window_simples(ell, K).  A
    seeded sample of tuples is also checked against the matrix oracle.
    """
    simples = window_simples(ell, K)
    rep = FactgReport(ell, K, N)
    tuples = []
    for size in range(2, N + 1):
        tuples.extend(itertools.combinations_with_replacement(simples, size))
    for tup in tuples:
        pairwise = all(tensor_simple_sl2([a, b]) for a, b in itertools.combinations(tup, 2))
        whole = tensor_simple_sl2(tup)
        rep.tuples_checked += 1
        rep.simple_tuples += whole
        if pairwise != whole:
            rep.counterexamples.append([format_monomial(m) for m in tup])
    rng = random.Random(seed)
    order = list(range(len(tuples)))
    rng.shuffle(order)
    for idx in order:
        if rep.oracle_checked >= samples:
            break
        tup = tuples[idx]
        verdict = oracle_simple(tup, max_dim)
        if verdict is None:
            rep.oracle_skipped += 1
            continue
        rep.oracle_checked += 1
        rep.oracle_tuples.append(tuple(tup))
        if verdict == tensor_simple_sl2(tup):
            rep.oracle_agree += 1
        else:
            rep.oracle_disagree.append([format_monomial(m) for m in tup])
    return rep


# ------------------------------------------------------------ structural checks over a window

def _report(name: str, checked: int, failures: list, **extra) -> dict:
    out = {"check": name, "ok": not failures, "checked": checked, "failures": failures[:20]}
    out.update(extra)
    return out


def _as_char(m: Monomial, c: QCharacter) -> QCharacter:
    return QCharacter(m, c.terms)


def verify_lower(ell: int = 4, K: int = 2) -> dict:
    """Every window character is triangular; fundamentals descend through A_{1,aq}."""
    failures, n = [], 0
    for m in window_simples(ell, K):
        c = chi_simple_sl2(m)
        fundamental = len(m) == 1 and m.items()[0][1] == 1
        rep = validate_simple_character(CD_SL2, c, fundamental=fundamental)
        n += 1
        if not rep.ok:
            failures.append({"monomial": format_monomial(m), "failures": rep.failures})
    return _report("lower", n, failures)


def verify_alternate(ell: int = 4, K: int = 2) -> dict:
    from .qchar import char_trunc_geq, char_trunc_geq_alt, char_trunc_leq, char_trunc_leq_alt

    failures, n = [], 0
    for m in window_simples(ell, K):
        c = chi_simple_sl2(m)
        for L in range(-1, ell + 2):
            n += 1
            if char_trunc_geq(CD_SL2, c, L) != char_trunc_geq_alt(CD_SL2, c, L):
                failures.append({"monomial": format_monomial(m), "L": L, "side": ">="})
            if char_trunc_leq(CD_SL2, c, L) != char_trunc_leq_alt(CD_SL2, c, L):
                failures.append({"monomial": format_monomial(m), "L": L, "side": "<="})
    return _report("alternate", n, failures)


def verify_useqt2(ell: int = 4, K: int = 2) -> dict:
    """chi_{q,>=L}(L(M)) = M^{<=L-1} chi_q(L(M^{>=L}))."""
    from .qchar import char_trunc_geq
    from .ylattice import part_geq, part_leq

    failures, n = [], 0
    for M in window_simples(ell, K):
        c = chi_simple_sl2(M)
        for L in range(-1, ell + 2):
            n += 1
            lhs = char_trunc_geq(CD_SL2, c, L)
            low = part_leq(CD_SL2, M, L - 1)
            rhs = char_mul(QCharacter.single(low), chi_simple_sl2(part_geq(CD_SL2, M, L)))
            if lhs.terms != rhs.terms:
                failures.append({"monomial": format_monomial(M), "L": L})
    return _report("useqt2", n, failures)


def verify_duality(ell: int = 4, K: int = 2) -> dict:
    """sigma(chi_q(L(m))) = chi_q(L(dual_highest_monomial(m)))."""
    from .qchar import sigma_character
    from .ylattice import dual_highest_monomial

    failures, n = [], 0
    for m in window_simples(ell, K):
        n += 1
        lhs = sigma_character(CD_SL2, chi_simple_sl2(m))
        rhs = chi_simple_sl2(dual_highest_monomial(CD_SL2, m))
        if lhs != rhs:
            failures.append({"monomial": format_monomial(m)})
    return _report("duality", n, failures)


def tourne_literal_holds(m: Monomial, ell: int) -> bool:
    """Variable-wise bar of chi_q(L(m)) compared with chi_q(L(bar m)), no inversion."""
    from .ylattice import bar_monomial

    c = chi_simple_sl2(m)
    image = Counter()
    for t, k in c.terms.items():
        image[bar_monomial(CD_SL2, t, ell, check_domain=False)] += k
    return dict(image) == chi_simple_sl2(bar_monomial(CD_SL2, m, ell)).terms


def verify_zeta(ells: Sequence[int] = (2, 3, 4), K: int = 2) -> dict:
    """zeta(chi_q(L(m))) = chi_q(L(bar m)) on every window simple of C_ell."""
    from .qchar import zeta_map
    from .ylattice import bar_monomial

    failures, n, literal_fail = [], 0, 0
    for ell in ells:
        for m in window_simples(ell, K):
            n += 1
            lhs = zeta_map(CD_SL2, chi_simple_sl2(m), ell)
            rhs = chi_simple_sl2(bar_monomial(CD_SL2, m, ell))
            if lhs != rhs:
                failures.append({"monomial": format_monomial(m), "ell": ell})
            literal_fail += not tourne_literal_holds(m, ell)
    return _report("zeta", n, failures, literal_bar_failures=literal_fail)


def verify_lzero(K: int = 2, N: int = 3) -> dict:
    """Tuples of level-0 simples are simple tensor products."""
    level0 = [m for m in window_simples(0, K)]
    failures, n = [], 0
    for size in range(1, N + 1):
        for tup in itertools.combinations_with_replacement(level0, size):
            n += 1
            if not tensor_simple_sl2(tup):
                failures.append([format_monomial(m) for m in tup])
    return _report("lzero", n, failures)


def verify_kl(ell: int = 4, K: int = 2) -> dict:
    """Products of two window simples decompose with nonnegative multiplicities, top coefficient 1."""
    from .qchar import triangular_decompose

    simples = window_simples(ell, K)
    failures, n = [], 0
    for m1, m2 in itertools.combinations_with_replacement(simples, 2):
        n += 1
        prod = char_mul(chi_simple_sl2(m1), chi_simple_sl2(m2))
        try:
            mult = triangular_decompose(CD_SL2, prod, chi_simple_sl2)
        except ValueError as exc:
            failures.append({"pair": [format_monomial(m1), format_monomial(m2)], "error": str(exc)})
            continue
        if mult.get(m1 * m2) != 1 or any(v < 0 for v in mult.values()):
            failures.append({"pair": [format_monomial(m1), format_monomial(m2)]})
    return _report("kl", n, failures)
