"""Deciding periodicity of exchange matrices and seeds.

The seed-level check comes in two flavours: the tropical criterion
(integer C-matrix work only; exact for skew-symmetric matrices, flagged
conjectural otherwise) and the full symbolic oracle over the universal
semifield (desk scale).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .seeds import (
    ExchangeMatrix,
    SymbolicSeed,
    apply_sequence,
    run_tropical,
)


def permutation_order(nu) -> int:
    n = len(nu)
    order = 1
    seen = [False] * n
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = nu[j]
            length += 1
        order = order * length // _gcd(order, length)
    return order


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def compose(nu, mu):
    """nu after mu."""
    return tuple(nu[mu[i]] for i in range(len(nu)))


def perm_power(nu, p: int):
    n = len(nu)
    out = tuple(range(n))
    base = tuple(nu)
    p %= permutation_order(nu)
    for _ in range(p):
        out = compose(base, out)
    return out


@dataclass(frozen=True)
class NuPeriodSpec:
    """An index sequence with the relabeling under which it should close up."""

    sequence: tuple
    nu: tuple

    def __post_init__(self):
        n = len(self.nu)
        if sorted(self.nu) != list(range(n)):
            raise ValueError("nu must be a bijection on 0..n-1")
        if any(not 0 <= k < n for k in self.sequence):
            raise ValueError("sequence index out of range")

    @staticmethod
    def identity(sequence, n: int) -> "NuPeriodSpec":
        return NuPeriodSpec(tuple(sequence), tuple(range(n)))

    @property
    def g(self) -> int:
        return permutation_order(self.nu)

    def is_identity_nu(self) -> bool:
        return all(self.nu[i] == i for i in range(len(self.nu)))


@dataclass
class PeriodVerdict:
    matrix_periodic: bool
    seed_periodic: object = None  # True / False / None (not determined)
    method: str = "tropical"
    conjectural: bool = False
    witness: object = None

    def __post_init__(self):
        if self.seed_periodic and not self.matrix_periodic:
            raise AssertionError("seed periodicity must imply matrix periodicity")

    def to_json(self) -> dict:
        witness = self.witness
        if witness is not None:
            kind, where = witness
            if isinstance(where, tuple):
                where = [v + 1 for v in where]
            else:
                where = where + 1
            witness = [kind, where]
        return {
            "matrix_periodic": self.matrix_periodic,
            "seed_periodic": self.seed_periodic,
            "method": self.method,
            "conjectural": self.conjectural,
            "witness": witness,
        }


def check_matrix_period(B: ExchangeMatrix, spec: NuPeriodSpec) -> bool:
    return matrix_period_witness(B, spec) is None


def matrix_period_witness(B: ExchangeMatrix, spec: NuPeriodSpec):
    """First (i, j) where nu-relabeled mutated matrix differs, or None."""
    cur = B
    for k in spec.sequence:
        cur = cur.mutate(k)
    n = B.n
    nu = spec.nu
    for i in range(n):
        for j in range(n):
            if cur.b[nu[i]][nu[j]] != B.b[i][j]:
                return (i, j)
    return None


def check_seed_period_tropical(B: ExchangeMatrix, spec: NuPeriodSpec) -> PeriodVerdict:
    """Seed periodicity via tropical coefficients: C must return to the identity
    up to the relabeling.  Exact iff B is skew-symmetric."""
    n = B.n
    _, c = run_tropical(B, spec.sequence)
    nu = spec.nu
    witness = None
    for i in range(n):
        col_ok = all(c[r][nu[i]] == (1 if r == i else 0) for r in range(n))
        if not col_ok:
            witness = ("c", i)
            break
    seed_ok = witness is None
    matrix_ok = check_matrix_period(B, spec)
    if seed_ok and not matrix_ok:
        # cannot happen for skew-symmetric B; guards transcription errors
        seed_ok = False
        witness = ("matrix", matrix_period_witness(B, spec))
    return PeriodVerdict(
        matrix_periodic=matrix_ok,
        seed_periodic=seed_ok,
        method="tropical",
        conjectural=not B.is_skew_symmetric(),
        witness=witness,
    )


def check_seed_period_symbolic(B: ExchangeMatrix, spec: NuPeriodSpec) -> PeriodVerdict:
    """Full universal-semifield run; the oracle for the tropical criterion."""
    n = B.n
    initial = SymbolicSeed.initial(B)
    final = apply_sequence(initial, spec.sequence)
    nu = spec.nu
    witness = None
    for i in range(n):
        for j in range(n):
            if final.b.b[nu[i]][nu[j]] != B.b[i][j]:
                witness = ("b", (i, j))
                break
        if witness:
            break
    if witness is None:
        for i in range(n):
            if not final.y[nu[i]].eq(initial.y[i]):
                witness = ("y", i)
                break
    if witness is None:
        for i in range(n):
            if not final.x[nu[i]].eq(initial.x[i]):
                witness = ("x", i)
                break
    matrix_ok = check_matrix_period(B, spec)
    return PeriodVerdict(
        matrix_periodic=matrix_ok,
        seed_periodic=witness is None,
        method="symbolic",
        conjectural=False,
        witness=witness,
    )


def period_check_payload(B: ExchangeMatrix, spec: NuPeriodSpec, method: str) -> tuple:
    """Shared CLI/service response for a seed-period check.

    Returns (payload dict, periodic bool); both front doors serialize this
    with the same canonical encoder, so answers are byte-identical.
    """
    payload = {
        "sequence": [k + 1 for k in spec.sequence],
        "nu": [v + 1 for v in spec.nu],
    }
    verdict = None
    if method in ("tropical", "both"):
        verdict = check_seed_period_tropical(B, spec)
        payload["tropical"] = verdict.to_json()
    if method in ("symbolic", "both"):
        verdict = check_seed_period_symbolic(B, spec)
        payload["symbolic"] = verdict.to_json()
    if method == "both":
        payload["methods_agree"] = (
            payload["tropical"]["seed_periodic"] == payload["symbolic"]["seed_periodic"]
        )
    if verdict is None:
        raise ValueError(f"unknown method {method!r}")
    return payload, bool(verdict.seed_periodic)


def build_j_period(spec: NuPeriodSpec) -> tuple:
    """Concatenation of the nu-translates of the sequence over one nu-cycle."""
    out = []
    nu_pow = tuple(range(len(spec.nu)))
    for _ in range(spec.g):
        out.extend(nu_pow[k] for k in spec.sequence)
        nu_pow = compose(spec.nu, nu_pow)
    return tuple(out)


def restrict(B_big: ExchangeMatrix, indices) -> ExchangeMatrix:
    return B_big.restrict(indices)


@dataclass
class ExtendReport:
    restriction_verdict: PeriodVerdict
    extension_verdict: PeriodVerdict
    consistent: bool

    def to_json(self) -> dict:
        return {
            "restriction": self.restriction_verdict.to_json(),
            "extension": self.extension_verdict.to_json(),
            "consistent": self.consistent,
        }


def extend_check(B: ExchangeMatrix, B_big: ExchangeMatrix, spec: NuPeriodSpec, indices) -> ExtendReport:
    """Computational transfer check of seed periodicity between a matrix and a
    full extension of it.  ``indices`` embeds B's index set into B_big's."""
    idx = list(indices)
    if B_big.restrict(idx).b != B.b:
        raise ValueError("B is not the restriction of B_big on the given indices")
    if not spec.is_identity_nu():
        raise ValueError("transfer checks are stated for identity relabelings")
    small = check_seed_period_tropical(B, spec)
    lifted = NuPeriodSpec.identity(tuple(idx[k] for k in spec.sequence), B_big.n)
    big = check_seed_period_tropical(B_big, lifted)
    return ExtendReport(
        restriction_verdict=small,
        extension_verdict=big,
        consistent=small.seed_periodic == big.seed_periodic,
    )


def opposite_period_check(B: ExchangeMatrix, spec: NuPeriodSpec, method="tropical") -> bool:
    """Whether the sequence is also a seed period for the negated matrix."""
    check = (
        check_seed_period_symbolic if method == "symbolic" else check_seed_period_tropical
    )
    return bool(check(B.opposite(), spec).seed_periodic)


def enumerate_matrix_period_nus(B: ExchangeMatrix, sequence) -> list:
    """All bijections nu making the sequence a nu-period of B.

    Backtracking on the relabeling match b'[nu(i)][nu(j)] == b[i][j]; the
    ambiguity is exactly composition with matrix automorphisms.
    """
    cur = B
    for k in sequence:
        cur = cur.mutate(k)
    n = B.n
    target = cur.b
    source = B.b

    # signature pruning: multiset of row/column entries must match
    def signature(mat, i):
        return (tuple(sorted(mat[i])), tuple(sorted(mat[r][i] for r in range(n))))

    sig_s = [signature(source, i) for i in range(n)]
    sig_t = [signature(target, i) for i in range(n)]

    out = []
    assign = [None] * n
    used = [False] * n

    def bt(i):
        if i == n:
            out.append(tuple(assign))
            return
        for cand in range(n):
            if used[cand] or sig_s[i] != sig_t[cand]:
                continue
            ok = True
            for j in range(i + 1):
                pj = assign[j] if j < i else cand
                if (
                    target[cand][pj] != source[i][j]
                    or target[pj][cand] != source[j][i]
                ):
                    ok = False
                    break
            if ok:
                assign[i] = cand
                used[cand] = True
                bt(i + 1)
                used[cand] = False
                assign[i] = None

    bt(0)
    return out


@dataclass
class FoundPeriod:
    sequence: tuple
    nu: tuple
    level: str  # "seed"

    def to_json(self) -> dict:
        return {
            "sequence": [k + 1 for k in self.sequence],
            "nu": [v + 1 for v in self.nu],
            "level": self.level,
        }


def find_periods(B: ExchangeMatrix, max_length: int, limit: int = 10) -> list:
    """Bounded breadth-first search for seed periods (an exploration utility).

    Explores mutation sequences without immediate backtracking, deduplicates
    states by (B, C), and reports sequences whose C-matrix is a permutation
    relabeling of the identity.
    """
    from collections import deque

    n = B.n
    start_b, start_c = run_tropical(B, [])
    key0 = (tuple(map(tuple, start_b)), tuple(map(tuple, start_c)))
    seen = {key0}
    queue = deque([(B, tuple(), None)])
    found = []
    while queue and len(found) < limit:
        cur, seq, last = queue.popleft()
        if len(seq) >= max_length:
            continue
        for k in range(n):
            if k == last and n > 1:  # immediate backtracking only loops
                continue
            nseq = seq + (k,)
            fb, fc = run_tropical(B, nseq)
            key = (tuple(map(tuple, fb)), tuple(map(tuple, fc)))
            # permutation-relabeled identity C?
            nu = _c_as_relabeling(fc)
            if nu is not None:
                spec = NuPeriodSpec(nseq, nu)
                if check_matrix_period(B, spec):
                    found.append(FoundPeriod(nseq, nu, "seed"))
                    if len(found) >= limit:
                        break
            if key not in seen:
                seen.add(key)
                queue.append((cur.mutate(k), nseq, k))
    return found


def _c_as_relabeling(c):
    """If C is a permutation matrix, the relabeling nu with column nu(i) = e_i."""
    n = len(c)
    nu = [None] * n
    for j in range(n):
        ones = [i for i in range(n) if c[i][j] == 1]
        if len(ones) != 1 or any(c[i][j] != 0 for i in range(n) if i != ones[0]):
            return None
        # column j of C equals e_i  <=>  nu(i) = j
        nu[ones[0]] = j
    if any(v is None for v in nu):
        return None
    return tuple(nu)
