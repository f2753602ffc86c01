"""Exact matrix models of finite-dimensional U_q(sl2-hat)-modules.

Spectral parameters are integer powers a = q^alpha.  Every basis vector of
a Rep is a weight vector for k_1, which keeps all closures and eigenspace
computations inside single weight spaces.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cartan import AffineType, build_cartan
from .linalg import EchelonBasis, SparseMatrix, Vector, generalized_eigenspace, nullspace
from .qchar import QCharacter, char_prod, find_highest
from .ratfunc import ONE_RF, RatFunc
from .ylattice import Monomial, format_monomial, is_dominant

CD_SL2 = build_cartan(AffineType("A", 1, 1))

X_GENS = ("x0+", "x0-", "x1+", "x1-")
K_GENS = ("k0", "k1", "k0inv", "k1inv")
GENERATORS = X_GENS + K_GENS
CARTAN = ((2, -2), (-2, 2))


class EngineError(ValueError):
    pass


class AmbiguousSpectrum(EngineError):
    pass


class NotThin(EngineError):
    pass


@dataclass
class Rep:
    """Matrices of the Chevalley generators in a basis of k_1-weight vectors.

    ``weights[b]`` is the exponent w with k_1 b = q^w b.  ``factors`` lists
    the exponents alpha_r of the fundamental tensor factors L_{q^alpha_r}.
    """

    dim: int
    mats: Dict[str, SparseMatrix]
    weights: List[int]
    factors: Tuple[int, ...]
    labels: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def __getitem__(self, name: str) -> SparseMatrix:
        return self.mats[name]


def _qpow(k: int) -> RatFunc:
    return RatFunc.qpow(k)


def _k_mats(weights: Sequence[int]) -> Dict[str, SparseMatrix]:
    # k_0 acts by q^{-w} on sl2 weight w (central charge zero)
    return {
        "k1": SparseMatrix.diagonal([_qpow(w) for w in weights]),
        "k1inv": SparseMatrix.diagonal([_qpow(-w) for w in weights]),
        "k0": SparseMatrix.diagonal([_qpow(-w) for w in weights]),
        "k0inv": SparseMatrix.diagonal([_qpow(w) for w in weights]),
    }


def fundamental_rep(alpha: int) -> Rep:
    """L_a with a = q^alpha on the basis (v^+, v^-); highest monomial Y_{1,aq^{-2}}."""
    a = _qpow(alpha)
    mats = {
        "x1+": SparseMatrix.from_entries(2, 2, [(0, 1, 1)]),
        "x1-": SparseMatrix.from_entries(2, 2, [(1, 0, 1)]),
        "x0+": SparseMatrix.from_entries(2, 2, [(1, 0, a)]),
        "x0-": SparseMatrix.from_entries(2, 2, [(0, 1, a.inverse())]),
    }
    mats.update(_k_mats([1, -1]))
    return Rep(2, mats, [1, -1], (alpha,), [f"v{alpha}+", f"v{alpha}-"])


def tensor_rep(r1: Rep, r2: Rep) -> Rep:
    """Coproduct x+ -> x+ (x) 1 + k (x) x+,  x- -> x- (x) k^{-1} + 1 (x) x-,  k -> k (x) k."""
    id1 = SparseMatrix.identity(r1.dim)
    id2 = SparseMatrix.identity(r2.dim)
    mats = {}
    for i in "01":
        k1, k1i = r1[f"k{i}"], r1[f"k{i}inv"]
        mats[f"x{i}+"] = r1[f"x{i}+"].kron(id2) + k1.kron(r2[f"x{i}+"])
        mats[f"x{i}-"] = r1[f"x{i}-"].kron(r2[f"k{i}inv"]) + id1.kron(r2[f"x{i}-"])
        mats[f"k{i}"] = k1.kron(r2[f"k{i}"])
        mats[f"k{i}inv"] = k1i.kron(r2[f"k{i}inv"])
    weights = [w1 + w2 for w1 in r1.weights for w2 in r2.weights]
    labels = [f"{a}*{b}" for a in r1.labels for b in r2.labels]
    return Rep(r1.dim * r2.dim, mats, weights, r1.factors + r2.factors, labels)


def tensor_many(reps: Iterable[Rep]) -> Rep:
    it = iter(reps)
    out = next(it)
    for r in it:
        out = tensor_rep(out, r)
    return out


def tensor_fundamentals(alphas: Sequence[int]) -> Rep:
    return tensor_many(fundamental_rep(a) for a in alphas)


def h11_matrix(r: Rep) -> SparseMatrix:
    """h_{1,1} = q^{-2} x_1^+ x_0^+ - x_0^+ x_1^+."""
    return (r["x1+"] @ r["x0+"]).scale(_qpow(-2)) - r["x0+"] @ r["x1+"]


# ------------------------------------------------------------ relations

def _qint(n: int) -> RatFunc:
    """[n]_q = (q^n - q^-n)/(q - q^-1)."""
    return RatFunc.laurent({n - 1 - 2 * j: 1 for j in range(n)})


def _qbinom3(s: int) -> RatFunc:
    return ONE_RF if s in (0, 3) else _qint(3)


def verify_defining_relations(r: Rep) -> dict:
    """Check the U_q(sl2-hat) relations as exact matrix identities.

    Returns {"ok", "checked", "failed"}; ``failed`` names the first violated
    relation and the first differing entry.
    """
    n = r.dim
    ident = SparseMatrix.identity(n)
    zero = SparseMatrix.zero(n, n)
    checked: List[str] = []

    def check(name, lhs, rhs):
        checked.append(name)
        if lhs != rhs:
            return {"ok": False, "checked": checked, "failed": name,
                    "entry": list(lhs.first_difference(rhs))}
        return None

    qq = _qpow(1) - _qpow(-1)
    rels = []
    for i in "01":
        rels.append((f"k{i} k{i}^-1 = 1", r[f"k{i}"] @ r[f"k{i}inv"], ident))
    rels.append(("k0 k1 = k1 k0", r["k0"] @ r["k1"], r["k1"] @ r["k0"]))
    for i in (0, 1):
        for j in (0, 1):
            c = CARTAN[i][j]
            for sgn, s in (("+", 1), ("-", -1)):
                x = r[f"x{j}{sgn}"]
                rels.append((f"k{i} x{j}{sgn} = q^{s * c} x{j}{sgn} k{i}",
                             r[f"k{i}"] @ x, (x @ r[f"k{i}"]).scale(_qpow(s * c))))
    for i in (0, 1):
        for j in (0, 1):
            lhs = r[f"x{i}+"] @ r[f"x{j}-"] - r[f"x{j}-"] @ r[f"x{i}+"]
            rhs = (r[f"k{i}"] - r[f"k{i}inv"]).scale(qq.inverse()) if i == j else zero
            rels.append((f"[x{i}+, x{j}-]", lhs, rhs))
    for sgn in "+-":
        for i, j in ((0, 1), (1, 0)):
            xi, xj = r[f"x{i}{sgn}"], r[f"x{j}{sgn}"]
            acc = zero
            for s in range(4):
                term = _pow(xi, 3 - s, n) @ xj @ _pow(xi, s, n)
                coef = _qbinom3(s)
                acc = acc + term.scale(coef if s % 2 == 0 else -coef)
            rels.append((f"q-Serre (x{i}{sgn}, x{j}{sgn})", acc, zero))
    for name, lhs, rhs in rels:
        bad = check(name, lhs, rhs)
        if bad:
            return bad
    return {"ok": True, "checked": checked, "failed": None}


def _pow(m: SparseMatrix, k: int, n: int) -> SparseMatrix:
    out = SparseMatrix.identity(n)
    for _ in range(k):
        out = out @ m
    return out


def perturbed(r: Rep, name: str, row: int, col: int, factor: RatFunc) -> Rep:
    """Copy of r with one matrix entry multiplied by ``factor`` (negative control)."""
    m = r[name]
    cols = {c: dict(v) for c, v in m.cols.items()}
    old = m.entry(row, col)
    if not old:
        raise EngineError(f"entry ({row},{col}) of {name} is zero")
    cols[col][row] = old * factor
    mats = dict(r.mats)
    mats[name] = SparseMatrix(m.nrows, m.ncols, cols)
    return Rep(r.dim, mats, list(r.weights), r.factors, list(r.labels), ["perturbed"])


# ------------------------------------------------------------ l-weights

def fundamental_monomials(alpha: int) -> Tuple[Monomial, Monomial]:
    return Monomial({(1, 0, alpha - 2): 1}), Monomial({(1, 0, alpha): -1})


def fundamental_character(alpha: int) -> QCharacter:
    hi, lo = fundamental_monomials(alpha)
    return QCharacter(hi, {hi: 1, lo: 1})


def h_eigenvalue(m: Monomial) -> RatFunc:
    """sum over a of u_{1,a}(m) * a."""
    coeffs: Dict[int, int] = {}
    for (i, kappa, lam), e in m.items():
        if i != 1 or kappa != 0 or not isinstance(lam, int):
            raise EngineError(f"{format_monomial(m)} is not an integer-lattice sl2 monomial")
        coeffs[lam] = coeffs.get(lam, 0) + e
    return RatFunc.laurent(coeffs)


def sl2_weight(m: Monomial) -> int:
    return sum(e for _, e in m.items())


@dataclass
class LWeightDecomp:
    blocks: Dict[Monomial, List[Vector]]
    covered: int

    def multiplicities(self) -> Dict[Monomial, int]:
        return {m: len(v) for m, v in self.blocks.items()}

    def is_thin(self) -> bool:
        return all(len(v) == 1 for v in self.blocks.values())


def _weight_spaces(r: Rep) -> Dict[int, List[int]]:
    spaces: Dict[int, List[int]] = {}
    for b, w in enumerate(r.weights):
        spaces.setdefault(w, []).append(b)
    return spaces


def lweight_decomposition(r: Rep, candidates: Iterable[Monomial]) -> LWeightDecomp:
    """Generalized h_{1,1}-eigenspaces inside each k_1-weight space, matched to candidates."""
    by_weight: Dict[int, List[Tuple[Monomial, RatFunc]]] = {}
    for m in dict.fromkeys(candidates):
        by_weight.setdefault(sl2_weight(m), []).append((m, h_eigenvalue(m)))
    for w, lst in by_weight.items():
        seen: Dict[RatFunc, Monomial] = {}
        for m, ev in lst:
            if ev in seen:
                raise AmbiguousSpectrum(
                    f"{format_monomial(m)} and {format_monomial(seen[ev])} share weight and h_11 eigenvalue")
            seen[ev] = m
    h = h11_matrix(r)
    blocks: Dict[Monomial, List[Vector]] = {}
    covered = 0
    for w, idx in sorted(_weight_spaces(r).items(), reverse=True):
        H = h.restrict(idx, idx)
        n = len(idx)
        found: Dict[Monomial, List[Vector]] = {}
        cands = by_weight.get(w, [])
        # eigenvectors first; generalized eigenspaces only when they fall short
        for m, ev in cands:
            ker = nullspace(H - SparseMatrix.identity(n).scale(ev))
            if ker:
                found[m] = ker
        if sum(len(v) for v in found.values()) != n:
            found = {}
            for m, ev in cands:
                ker = generalized_eigenspace(H, ev)
                if ker:
                    found[m] = ker
        total = sum(len(v) for v in found.values())
        if total != n:
            raise EngineError(f"candidates cover {total} of {n} dimensions in weight {w}")
        for m, vecs in found.items():
            blocks[m] = [{idx[k]: x for k, x in v.items()} for v in vecs]
        covered += n
    return LWeightDecomp(blocks, covered)


def candidate_monomials(factors: Sequence[int]) -> List[Monomial]:
    """All products of one l-weight per fundamental factor."""
    cands = {Monomial()}
    for a in factors:
        pair = fundamental_monomials(a)
        cands = {c * p for c in cands for p in pair}
    return sorted(cands, key=lambda m: m.sort_key())


def extract_qchar(r: Rep) -> QCharacter:
    dec = lweight_decomposition(r, candidate_monomials(r.factors))
    terms = dec.multiplicities()
    highest = find_highest(CD_SL2, terms)
    if highest is None:
        raise EngineError("no highest monomial among the l-weights")
    c = QCharacter(highest, terms)
    if r.dim == 2 ** len(r.factors):
        expected = char_prod(fundamental_character(a) for a in r.factors)
        if c.terms != expected.terms:
            raise EngineError("l-weights of a full tensor product differ from the product of characters")
    return c


# ------------------------------------------------------------ closures

def _closure(r: Rep, seeds: Iterable[Vector], transpose: bool = False,
             stop_at: Optional[int] = None) -> Dict[int, EchelonBasis]:
    """Span of the orbit of weight-vector seeds under x0+-, x1+-.

    The k's act diagonally on weight vectors and add nothing.  With
    ``transpose`` the seeds are covectors and the action is v -> v M.
    """
    bases: Dict[int, EchelonBasis] = {}
    queue: List[Vector] = []
    count = 0

    def push(v):
        nonlocal count
        w = r.weights[next(iter(v))]
        row = bases.setdefault(w, EchelonBasis()).add(v)
        if row is not None:
            queue.append(row)
            count += 1

    for s in seeds:
        if s:
            push(s)
    while queue and (stop_at is None or count < stop_at):
        v = queue.pop()
        for g in X_GENS:
            m = r[g]
            u = m.apply_transpose(v) if transpose else m.apply(v)
            if u:
                push(u)
                if stop_at is not None and count >= stop_at:
                    break
    return bases


def closure_dimension(r: Rep, seeds: Iterable[Vector], transpose: bool = False) -> int:
    return sum(len(b) for b in _closure(r, seeds, transpose, stop_at=r.dim).values())


def restrict_rep(r: Rep, bases: Dict[int, EchelonBasis]) -> Rep:
    """The Rep on an invariant subspace given by per-weight echelon bases."""
    order: List[Tuple[int, int]] = []  # (weight, pivot)
    for w in sorted(bases, reverse=True):
        order.extend((w, p) for p in bases[w].pivots())
    index = {key: n for n, key in enumerate(order)}
    vecs = [bases[w].rows[p] for w, p in order]
    weights = [w for w, _ in order]
    mats = {}
    for g in X_GENS:
        entries = []
        for c, v in enumerate(vecs):
            u = r[g].apply(v)
            if not u:
                continue
            w = r.weights[next(iter(u))]
            basis = bases.get(w)
            if basis is None or not basis.contains(u):
                raise EngineError("subspace is not invariant")
            for p, x in basis.coordinates(u).items():
                entries.append((index[(w, p)], c, x))
        mats[g] = SparseMatrix.from_entries(len(vecs), len(vecs), entries)
    mats.update(_k_mats(weights))
    labels = [f"b{n}" for n in range(len(vecs))]
    return Rep(len(vecs), mats, weights, r.factors, labels)


def is_cocyclic(r: Rep) -> bool:
    """Every nonzero submodule contains the top weight space.

    Requires a one-dimensional top weight space; the covector dual to it
    must generate the whole dual under the transposed action.
    """
    top = max(r.weights)
    idx = [b for b, w in enumerate(r.weights) if w == top]
    if len(idx) != 1:
        return False
    return closure_dimension(r, [{idx[0]: ONE_RF}], transpose=True) == r.dim


def factors_of(m: Monomial) -> List[int]:
    """Exponents alpha with m = prod Y_{1,q^{alpha-2}}, sorted increasingly."""
    if not is_dominant(m):
        raise EngineError(f"{format_monomial(m)} is not dominant")
    out = []
    for (i, kappa, lam), e in m.items():
        if i != 1 or kappa != 0 or not isinstance(lam, int):
            raise EngineError(f"{format_monomial(m)} is not an integer-lattice sl2 monomial")
        out.extend([lam + 2] * e)
    return sorted(out)


def _realize_in_order(m: Monomial, alphas: Sequence[int]) -> Optional[Rep]:
    full = tensor_fundamentals(alphas)
    sub = restrict_rep(full, _closure(full, [{0: ONE_RF}]))
    if extract_qchar(sub).highest != m or not is_cocyclic(sub):
        return None
    return sub


@lru_cache(maxsize=256)
def _realize_cached(m: Monomial) -> Rep:
    alphas = factors_of(m)
    if not alphas:
        mats = {g: SparseMatrix.zero(1, 1) for g in X_GENS}
        mats.update(_k_mats([0]))
        return Rep(1, mats, [0], (), ["1"])
    rep = _realize_in_order(m, alphas)
    if rep is not None:
        rep.notes.append("order: nondecreasing")
        return rep
    rev = list(reversed(alphas))
    rep = _realize_in_order(m, rev)
    if rep is not None:
        rep.notes.append("order: nonincreasing (nondecreasing failed the self-check)")
        return rep
    raise EngineError(f"closure self-check failed in both orders for {format_monomial(m)}")


def realize_simple(m: Monomial) -> Rep:
    """L(m) as the submodule generated by the tensor of highest vectors of fundamentals.

    Self-check: the result has highest monomial m and every nonzero
    submodule contains its highest vector, so it is simple.
    """
    return _realize_cached(m)


def is_simple_thin(r: Rep) -> bool:
    """True iff every l-weight vector generates r; refuses non-thin modules."""
    dec = lweight_decomposition(r, candidate_monomials(r.factors))
    if not dec.is_thin():
        raise NotThin("module has an l-weight space of dimension > 1")
    for m in sorted(dec.blocks, key=lambda x: x.sort_key()):
        if closure_dimension(r, dec.blocks[m]) != r.dim:
            return False
    return True


def matrix_dump(r: Rep) -> dict:
    """JSON-ready dense matrices of rational-function strings."""
    return {
        "dim": r.dim,
        "factors": list(r.factors),
        "weights": list(r.weights),
        "matrices": {g: [[x.to_json() for x in row] for row in r[g].to_dense()] for g in GENERATORS},
    }


def dump_json(r: Rep) -> str:
    return json.dumps(matrix_dump(r), sort_keys=True)
