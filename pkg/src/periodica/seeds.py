"""Exchange matrices, quivers, seeds and the three mutation rules.

Two seed representations are provided:

* ``PrincipalSeed`` tracks the exchange matrix together with the integer
  C- and G-matrices (tropical coefficient exponents and leading cluster
  exponents) and the F-polynomials.  All updates are integer recursions
  plus one exact polynomial division per step; this is the default,
  cheap representation.
* ``SymbolicSeed`` carries the full coefficient tuple in the universal
  semifield and the cluster variables as subtraction-free rational
  functions of the joint initial variables.  It is the desk-scale
  oracle; costs grow with the true size of the F-polynomials.

Joint variable convention for symbolic data on n indices: cluster
variable ``x_i`` is variable ``i``, coefficient ``y_i`` is variable
``n + i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .semifield import SFRational, SizeLimitError, SparsePoly

Matrix = tuple  # tuple[tuple[int, ...], ...]


class IntegrityError(RuntimeError):
    """An exact identity that the theory guarantees failed to hold."""


class SymmetrizerError(ValueError):
    """The given matrix is not skew-symmetrizable."""


def _pos(a: int) -> int:
    return a if a > 0 else 0


def _freeze(rows) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _compute_symmetrizer(b: Matrix) -> tuple:
    """Positive integers d with d_i b_ij = -d_j b_ji, coprime; raises if none."""
    n = len(b)
    weight = [None] * n
    for root in range(n):
        if weight[root] is not None:
            continue
        weight[root] = Fraction(1)
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if b[i][j] == 0 and b[j][i] == 0:
                    continue
                if (b[i][j] == 0) != (b[j][i] == 0) or b[i][j] * b[j][i] > 0:
                    raise SymmetrizerError(f"entries ({i},{j}) cannot be symmetrized")
                if b[i][j] == 0:
                    continue
                w = weight[i] * Fraction(b[i][j], -b[j][i])
                if weight[j] is None:
                    weight[j] = w
                    stack.append(j)
                elif weight[j] != w:
                    raise SymmetrizerError(f"inconsistent weights at ({i},{j})")
    denom = lcm(*[w.denominator for w in weight])
    ints = [int(w * denom) for w in weight]
    g = 0
    for v in ints:
        g = gcd(g, v)
    d = tuple(v // g for v in ints)
    for i in range(n):
        for j in range(n):
            if d[i] * b[i][j] != -d[j] * b[j][i]:
                raise SymmetrizerError(f"symmetrizer check failed at ({i},{j})")
    return d


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetrizable integer matrix with its left/right symmetrizers."""

    b: Matrix
    d: tuple
    d_tilde: tuple

    @staticmethod
    def from_rows(rows) -> "ExchangeMatrix":
        b = _freeze(rows)
        n = len(b)
        if any(len(row) != n for row in b):
            raise ValueError("exchange matrix must be square")
        if any(b[i][i] != 0 for i in range(n)):
            raise ValueError("exchange matrix must have zero diagonal")
        d = _compute_symmetrizer(b)
        dd = lcm(*d) if d else 1
        return ExchangeMatrix(b, d, tuple(dd // di for di in d))

    @property
    def n(self) -> int:
        return len(self.b)

    def is_skew_symmetric(self) -> bool:
        return all(
            self.b[i][j] == -self.b[j][i] for i in range(self.n) for j in range(self.n)
        )

    def mutate(self, k: int) -> "ExchangeMatrix":
        n = self.n
        if not 0 <= k < n:
            raise IndexError(f"mutation index {k} out of range for n={n}")
        b = self.b
        rows = [
            [
                -b[i][j]
                if i == k or j == k
                else b[i][j] + (abs(b[i][k]) * b[k][j] + b[i][k] * abs(b[k][j])) // 2
                for j in range(n)
            ]
            for i in range(n)
        ]
        # the symmetrizer survives mutation unchanged
        return ExchangeMatrix(_freeze(rows), self.d, self.d_tilde)

    def opposite(self) -> "ExchangeMatrix":
        return ExchangeMatrix(
            _freeze([[-v for v in row] for row in self.b]), self.d, self.d_tilde
        )

    def restrict(self, indices) -> "ExchangeMatrix":
        idx = list(indices)
        return ExchangeMatrix.from_rows([[self.b[i][j] for j in idx] for i in idx])

    def relabel(self, nu) -> "ExchangeMatrix":
        """Matrix nu(B) with entries nu(B)[nu(i)][nu(j)] = B[i][j]."""
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                rows[nu[i]][nu[j]] = self.b[i][j]
        return ExchangeMatrix.from_rows(rows)

    def to_json(self) -> list:
        return [list(row) for row in self.b]


def mutate_matrix(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    return B.mutate(k)


@dataclass(frozen=True)
class Quiver:
    """Loop- and 2-cycle-free quiver; ``arrows[(i, j)]`` is a positive multiplicity."""

    n: int
    arrows: tuple  # tuple of ((i, j), mult), sorted

    @staticmethod
    def from_arrows(n: int, arrows) -> "Quiver":
        acc = {}
        for i, j, *rest in (list(a) for a in arrows):
            mult = rest[0] if rest else 1
            if i == j:
                raise ValueError("loops are not allowed")
            acc[(i, j)] = acc.get((i, j), 0) + mult
        for (i, j) in list(acc):
            if (j, i) in acc and acc[(i, j)] and acc[(j, i)]:
                raise ValueError(f"2-cycle between {i} and {j}")
        return Quiver(n, tuple(sorted((k, v) for k, v in acc.items() if v)))

    @staticmethod
    def from_matrix(B: ExchangeMatrix) -> "Quiver":
        if not B.is_skew_symmetric():
            raise ValueError("only skew-symmetric matrices correspond to quivers")
        arrows = []
        for i in range(B.n):
            for j in range(B.n):
                if B.b[i][j] > 0:
                    arrows.append((i, j, B.b[i][j]))
        return Quiver.from_arrows(B.n, arrows)

    def to_matrix(self) -> ExchangeMatrix:
        rows = [[0] * self.n for _ in range(self.n)]
        for (i, j), m in self.arrows:
            rows[i][j] = m
            rows[j][i] = -m
        return ExchangeMatrix.from_rows(rows)

    def mutate(self, k: int) -> "Quiver":
        mult = {key: m for key, m in self.arrows}
        # compose through k, then cancel opposite pairs, then reverse at k
        new = dict(mult)
        for (i, a), m1 in mult.items():
            if a != k:
                continue
            for (b, j), m2 in mult.items():
                if b != k or j == i:
                    continue
                new[(i, j)] = new.get((i, j), 0) + m1 * m2
        for (i, j) in list(new):
            if i < j and (j, i) in new:
                c = min(new[(i, j)], new[(j, i)])
                new[(i, j)] -= c
                new[(j, i)] -= c
        out = {}
        for (i, j), m in new.items():
            if m == 0:
                continue
            key = (j, i) if (i == k or j == k) else (i, j)
            out[key] = out.get(key, 0) + m
        return Quiver(self.n, tuple(sorted(out.items())))

    def opposite(self) -> "Quiver":
        return Quiver(self.n, tuple(sorted(((j, i), m) for (i, j), m in self.arrows)))

    def to_json(self) -> dict:
        return {
            "vertices": self.n,
            "arrows": [[i + 1, j + 1, m] for (i, j), m in self.arrows],
        }

    @staticmethod
    def from_json(data) -> "Quiver":
        return Quiver.from_arrows(
            int(data["vertices"]),
            [(int(i) - 1, int(j) - 1, int(m)) for i, j, m in data["arrows"]],
        )

    def to_dot(self, labels=None) -> str:
        lines = ["digraph quiver {"]
        for v in range(self.n):
            name = labels[v] if labels else str(v + 1)
            lines.append(f'  {v + 1} [label="{name}"];')
        for (i, j), m in self.arrows:
            label = f' [label="{m}"]' if m > 1 else ""
            lines.append(f"  {i + 1} -> {j + 1}{label};")
        lines.append("}")
        return "\n".join(lines)


def mutate_quiver(Q: Quiver, k: int) -> Quiver:
    return Q.mutate(k)


# -- principal tracking ----------------------------------------------------


def _mutate_c(c, b, k: int) -> list:
    n = len(c)
    ck = [c[i][k] for i in range(n)]
    return [
        [
            -c[i][j]
            if j == k
            else c[i][j] + (abs(ck[i]) * b[k][j] + ck[i] * abs(b[k][j])) // 2
            for j in range(n)
        ]
        for i in range(n)
    ]


def _mutate_g(g, b, b0, c, k: int) -> list:
    n = len(g)
    out = [list(row) for row in g]
    for i in range(n):
        acc = -g[i][k]
        for p in range(n):
            acc += g[i][p] * _pos(b[p][k])
            acc -= b0[i][p] * _pos(c[p][k])
        out[i][k] = acc
    return out


def run_cg(B: ExchangeMatrix, sequence):
    """Integer-only C/G tracking along a sequence; yields (C, G) after each
    step.  Same recursions as PrincipalSeed.mutate minus the F-polynomials."""
    n = B.n
    c = [list(row) for row in _identity(n)]
    g = [list(row) for row in _identity(n)]
    cur = B
    b0 = B.b
    for k in sequence:
        c_new = _mutate_c(c, cur.b, k)
        g = _mutate_g(g, cur.b, b0, c, k)
        c = c_new
        cur = cur.mutate(k)
        yield c, g


@dataclass(frozen=True)
class PrincipalSeed:
    """(B, C, G, F) tracker with the initial matrix kept for the G-recursion."""

    b: ExchangeMatrix
    b0: ExchangeMatrix
    c: Matrix
    g: Matrix
    f: tuple  # tuple[SparsePoly, ...] in variables 0..n-1 (the coefficients)
    history: tuple = ()

    @staticmethod
    def initial(B: ExchangeMatrix) -> "PrincipalSeed":
        n = B.n
        one = SparsePoly.one()
        return PrincipalSeed(B, B, _identity(n), _identity(n), (one,) * n)

    @property
    def n(self) -> int:
        return self.b.n

    def c_column(self, j: int) -> tuple:
        return tuple(self.c[i][j] for i in range(self.n))

    def g_column(self, j: int) -> tuple:
        return tuple(self.g[i][j] for i in range(self.n))

    def mutate(self, k: int) -> "PrincipalSeed":
        n = self.n
        if not 0 <= k < n:
            raise IndexError(f"mutation index {k} out of range for n={n}")
        b = self.b.b
        c, g = self.c, self.g
        ck = [c[i][k] for i in range(n)]

        new_c = _mutate_c(c, b, k)
        new_g = _mutate_g(g, b, self.b0.b, c, k)

        plus = SparsePoly.monomial({i: _pos(ck[i]) for i in range(n)})
        minus = SparsePoly.monomial({i: _pos(-ck[i]) for i in range(n)})
        for j in range(n):
            if b[j][k] > 0:
                plus = plus * self.f[j] ** b[j][k]
            elif b[j][k] < 0:
                minus = minus * self.f[j] ** (-b[j][k])
        quot = (plus + minus).exact_div(self.f[k])
        if quot is None:
            raise IntegrityError(f"F-polynomial recursion division failed at k={k}")
        new_f = list(self.f)
        new_f[k] = quot

        return PrincipalSeed(
            self.b.mutate(k),
            self.b0,
            _freeze(new_c),
            _freeze(new_g),
            tuple(new_f),
            self.history + (k,),
        )

    def tropical_sign(self, i: int) -> int:
        """Sign of the tropical coefficient at index i: +1, -1, or 0 (mixed/zero)."""
        col = self.c_column(i)
        if all(v == 0 for v in col):
            return 0
        if all(v >= 0 for v in col):
            return 1
        if all(v <= 0 for v in col):
            return -1
        return 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "B": self.b.to_json(),
            "C": [list(row) for row in self.c],
            "G": [list(row) for row in self.g],
            "F": [p.to_json() for p in self.f],
            "history": [k + 1 for k in self.history],
        }

    @staticmethod
    def from_json(data) -> "PrincipalSeed":
        """Replay the stored history; "B" holds the current matrix, so the
        initial one is recovered by running the history backwards."""
        current = ExchangeMatrix.from_rows(data["B"])
        history = [int(k) - 1 for k in data.get("history", [])]
        initial = current
        for k in reversed(history):
            initial = initial.mutate(k)
        replayed = apply_sequence(PrincipalSeed.initial(initial), history)
        if replayed.b.b != current.b:
            raise IntegrityError("history does not replay to the stored matrix")
        return replayed


def mutate_principal(seed: PrincipalSeed, k: int) -> PrincipalSeed:
    return seed.mutate(k)


# -- tropical-only fast path -------------------------------------------------


def run_tropical(B: ExchangeMatrix, sequence, record=False):
    """Mutate the C-matrix from the identity along ``sequence``.

    Returns the final (B', C') as tuples of row-lists; with ``record`` also
    the list of (B, C, k) states right before each mutation.
    """
    n = B.n
    b = [list(row) for row in B.b]
    c = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    states = []
    for k in sequence:
        if record:
            states.append(([row[:] for row in b], [row[:] for row in c], k))
        ck = [c[i][k] for i in range(n)]
        for i in range(n):
            ci = c[i]
            cik = ck[i]
            for j in range(n):
                if j == k:
                    continue
                bkj = b[k][j]
                if bkj:
                    ci[j] += (abs(cik) * bkj + cik * abs(bkj)) // 2
            ci[k] = -cik
        bk = [b[k][j] for j in range(n)]
        bcolk = [b[i][k] for i in range(n)]
        for i in range(n):
            bi = b[i]
            bik = bcolk[i]
            for j in range(n):
                if i == k or j == k:
                    continue
                bi[j] += (abs(bik) * bk[j] + bik * abs(bk[j])) // 2
        for j in range(n):
            b[k][j] = -b[k][j]
        for i in range(n):
            if i != k:
                b[i][k] = -b[i][k]
    if record:
        return b, c, states
    return b, c


# -- symbolic seeds ----------------------------------------------------------


def joint_x(i: int) -> SFRational:
    return SFRational.var(i)


def joint_y(i: int, n: int) -> SFRational:
    return SFRational.var(n + i)


@dataclass(frozen=True)
class SymbolicSeed:
    """Seed with universal-semifield coefficients and symbolic cluster."""

    b: ExchangeMatrix
    x: tuple  # tuple[SFRational, ...] in the joint variables
    y: tuple  # tuple[SFRational, ...] in variables n..2n-1

    @staticmethod
    def initial(B: ExchangeMatrix) -> "SymbolicSeed":
        n = B.n
        return SymbolicSeed(
            B,
            tuple(joint_x(i) for i in range(n)),
            tuple(joint_y(i, n) for i in range(n)),
        )

    @property
    def n(self) -> int:
        return self.b.n

    def mutate(self, k: int) -> "SymbolicSeed":
        new_y = mutate_coeffs(self.y, self.b, k)
        new_x = mutate_cluster(self.x, self.y, self.b, k)
        return SymbolicSeed(self.b.mutate(k), new_x, new_y)

    def equals(self, other: "SymbolicSeed", nu=None) -> bool:
        n = self.n
        nu = nu or tuple(range(n))
        if any(
            other.b.b[nu[i]][nu[j]] != self.b.b[i][j] for i in range(n) for j in range(n)
        ):
            return False
        return all(
            other.x[nu[i]].eq(self.x[i]) and other.y[nu[i]].eq(self.y[i])
            for i in range(n)
        )


def mutate_coeffs(y, B: ExchangeMatrix, k: int):
    """Exchange relation for the coefficient tuple (universal semifield)."""
    yk = y[k]
    one = SFRational.one()
    out = list(y)
    out[k] = yk.inv()
    for i in range(B.n):
        if i == k:
            continue
        bki = B.b[k][i]
        if bki >= 0:
            out[i] = y[i] / (one + yk.inv()) ** bki
        else:
            out[i] = y[i] * (one + yk) ** (-bki)
    return tuple(out)


def mutate_cluster(x, y, B: ExchangeMatrix, k: int):
    """Exchange relation for the cluster at index k."""
    one = SFRational.one()
    plus, minus = one, one
    for j in range(B.n):
        bjk = B.b[j][k]
        if bjk > 0:
            plus = plus * x[j] ** bjk
        elif bjk < 0:
            minus = minus * x[j] ** (-bjk)
    yk = y[k]
    try:
        new_xk = (yk * plus + minus) / ((one + yk) * x[k])
    except SizeLimitError as exc:
        raise SizeLimitError(
            f"{exc}; symbolic cluster exceeded the term cap, use principal tracking"
        ) from exc
    out = list(x)
    out[k] = new_xk
    return tuple(out)


def apply_sequence(seed, sequence):
    """Left-to-right composite mutation (first entry acts first)."""
    for k in sequence:
        seed = seed.mutate(k)
    return seed


def build_yhat(B: ExchangeMatrix) -> tuple:
    """The hatted coefficients of the initial seed in the joint variables."""
    n = B.n
    out = []
    for i in range(n):
        exps = {n + i: 1}
        for j in range(n):
            if B.b[j][i]:
                exps[j] = B.b[j][i]
        out.append(SFRational.from_monomial(exps))
    return tuple(out)


def separation_reconstruct(seed: PrincipalSeed, initial: SymbolicSeed) -> SymbolicSeed:
    """Rebuild the symbolic seed from (C, G, F) via the factorization formulas."""
    n = seed.n
    if initial.b.b != seed.b0.b:
        raise ValueError("principal seed does not start at the given initial seed")
    yhat = build_yhat(seed.b0)
    yvars = tuple(joint_y(i, n) for i in range(n))
    f_at_yhat = [p.subs(yhat) for p in seed.f]
    f_at_y = [p.subs(yvars) for p in seed.f]

    xs = []
    for i in range(n):
        mono = SFRational.from_monomial({j: seed.g[j][i] for j in range(n)})
        xs.append(mono * f_at_yhat[i] / f_at_y[i])
    ys = []
    for i in range(n):
        t = SFRational.from_monomial({n + j: seed.c[j][i] for j in range(n)})
        for j in range(n):
            bji = seed.b.b[j][i]
            if bji:
                t = t * f_at_y[j] ** bji
        ys.append(t)
    return SymbolicSeed(seed.b, tuple(xs), tuple(ys))


# -- structural assertions ---------------------------------------------------


@dataclass
class PositivityReport:
    ok: bool
    column_sign_failures: list = field(default_factory=list)
    row_coherence_failures: list = field(default_factory=list)
    constant_term_failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "c_column_failures": self.column_sign_failures,
            "g_row_failures": self.row_coherence_failures,
            "f_constant_failures": self.constant_term_failures,
        }


def check_positivity_assertions(seed: PrincipalSeed) -> PositivityReport:
    """Sign purity of c-columns, sign coherence of g-rows, F constant term 1.

    Violations raise for skew-symmetric initial matrices, where they cannot
    legitimately occur, and are reported otherwise.
    """
    n = seed.n
    report = PositivityReport(ok=True)
    for j in range(n):
        col = seed.c_column(j)
        if all(v == 0 for v in col) or (
            any(v > 0 for v in col) and any(v < 0 for v in col)
        ):
            report.column_sign_failures.append(j)
    for i in range(n):
        row = seed.g[i]
        if any(v > 0 for v in row) and any(v < 0 for v in row):
            report.row_coherence_failures.append(i)
    for i in range(n):
        if seed.f[i].constant_term() != 1:
            report.constant_term_failures.append(i)
    report.ok = not (
        report.column_sign_failures
        or report.row_coherence_failures
        or report.constant_term_failures
    )
    if not report.ok and seed.b0.is_skew_symmetric():
        raise IntegrityError(f"positivity assertions failed: {report.to_json()}")
    return report


def check_cg_inverse(seed: PrincipalSeed) -> bool:
    """Whether transpose(C) * G is the identity."""
    n = seed.n
    for i in range(n):
        for j in range(n):
            s = sum(seed.c[p][i] * seed.g[p][j] for p in range(n))
            if s != (1 if i == j else 0):
                return False
    return True
