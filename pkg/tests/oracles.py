"""Independent oracles used to derive expected values.

The main one mutates cluster variables symbolically with tropical
(principal) coefficients straight from the exchange relations, never
touching the integer C/G recursions or the F-polynomial recursion, and
reads off F, the leading exponent vector, and the tropical coefficient
by specialization.  Tests freeze values computed this way.
"""

from __future__ import annotations

from periodica.seeds import ExchangeMatrix
from periodica.semifield import SFRational, SparsePoly, TropMonomial


def _trop_to_sfr(t: TropMonomial, n: int) -> SFRational:
    return SFRational.from_monomial({n + i: e for i, e in enumerate(t.exponents) if e})


class PrincipalOracle:
    """Principal-coefficient seed mutated by the raw exchange relations.

    Cluster variables live in joint variables (x_i -> i, y_i -> n+i);
    coefficients are tropical monomials updated with min-addition.
    """

    def __init__(self, B: ExchangeMatrix):
        self.b = B
        self.n = B.n
        self.x = [SFRational.var(i) for i in range(self.n)]
        self.y = [TropMonomial.var(i, self.n) for i in range(self.n)]

    def mutate(self, k: int) -> "PrincipalOracle":
        n, b = self.n, self.b.b
        out = PrincipalOracle(self.b)  # placeholder, overwritten below
        yk = self.y[k]
        new_y = list(self.y)
        new_y[k] = yk.inv()
        one = TropMonomial.one(n)
        for i in range(n):
            if i == k:
                continue
            e = b[k][i]
            if e >= 0:
                new_y[i] = self.y[i] * (one.oplus(yk.inv()) ** (-e))
            else:
                new_y[i] = self.y[i] * (one.oplus(yk) ** (-e))
        plus = _trop_to_sfr(yk, n)
        minus = SFRational.one()
        for j in range(n):
            e = b[j][k]
            if e > 0:
                plus = plus * self.x[j] ** e
            elif e < 0:
                minus = minus * self.x[j] ** (-e)
        denom = _trop_to_sfr(one.oplus(yk), n) * self.x[k]
        new_x = list(self.x)
        new_x[k] = (plus + minus) / denom
        out.b = self.b.mutate(k)
        out.x = new_x
        out.y = new_y
        return out

    def run(self, sequence) -> "PrincipalOracle":
        cur = self
        for k in sequence:
            cur = cur.mutate(k)
        return cur

    # -- extraction ----------------------------------------------------

    def c_column(self, i: int) -> tuple:
        return self.y[i].exponents

    def f_poly(self, i: int) -> SparsePoly:
        """Specialize the cluster variable at x = 1; result is a polynomial
        in the coefficient variables, shifted down to 0..n-1."""
        num = _kill_x(self.x[i].num, self.n)
        den = _kill_x(self.x[i].den, self.n)
        quot = num.exact_div(den)
        assert quot is not None, "principal cluster variable was not Laurent"
        return quot.shift_vars(-self.n)

    def g_vector(self, i: int) -> tuple:
        """Exponents of the unique monomial that survives at y = 0."""
        def pure_x_term(p: SparsePoly):
            pure = {m: c for m, c in p.terms.items() if all(v < self.n for v, _ in m)}
            assert len(pure) == 1, f"expected one coefficient-free term, got {len(pure)}"
            (mono, coeff), = pure.items()
            assert coeff == 1
            return dict(mono)

        num = pure_x_term(self.x[i].num)
        den = pure_x_term(self.x[i].den)
        return tuple(num.get(j, 0) - den.get(j, 0) for j in range(self.n))


def _kill_x(p: SparsePoly, n: int) -> SparsePoly:
    """Set the first n variables to 1."""
    out = {}
    for m, c in p.terms.items():
        key = tuple((v, e) for v, e in m if v >= n)
        out[key] = out.get(key, 0) + c
    return SparsePoly(out)
