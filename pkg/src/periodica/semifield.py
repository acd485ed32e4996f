"""Exact arithmetic for coefficient semifields.

Three layers:

* ``SparsePoly`` -- sparse multivariate (Laurent) polynomials with
  arbitrary-precision integer coefficients.
* ``SFRational`` -- subtraction-free rational functions in the formal
  coefficients (the universal semifield).  Internally a fraction is kept
  as a product of interned polynomial "atoms", so that factors produced
  by earlier exchange relations cancel exactly instead of piling up.
  The public face is still a canonical ``num``/``den`` pair of positive
  polynomials with no common monomial or integer content.
* ``TropMonomial`` -- Laurent monomials with min-addition (the tropical
  semifield), plus the evaluation map from the universal semifield.

Variables are identified by nonnegative integer indices.  A monomial is
stored as a sorted tuple of ``(variable, exponent)`` pairs with no zero
exponents; the empty tuple is the constant monomial.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import gcd

Mono = tuple  # tuple[tuple[int, int], ...], sorted by variable, no zero exps

ONE_MONO: Mono = ()

#: hard cap on stored terms per polynomial; exceeded -> SizeLimitError
MAX_TERMS = 10**6


class SizeLimitError(RuntimeError):
    """A polynomial outgrew the configured term cap."""


def set_max_terms(cap: int) -> None:
    global MAX_TERMS
    if cap < 1:
        raise ValueError("term cap must be positive")
    MAX_TERMS = cap


def _mono_mul(m1: Mono, m2: Mono) -> Mono:
    d = dict(m1)
    for v, e in m2:
        e2 = d.get(v, 0) + e
        if e2:
            d[v] = e2
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _mono_div(m1: Mono, m2: Mono):
    """m1 / m2 in the honest polynomial sense, or None."""
    d = dict(m1)
    for v, e in m2:
        e2 = d.get(v, 0) - e
        if e2:
            d[v] = e2
        else:
            d.pop(v, None)
    if any(e < 0 for e in d.values()):
        return None
    return tuple(sorted(d.items()))


def _terms_sorted(terms: dict) -> list:
    """Terms in descending lexicographic order of the exponent vectors."""
    allvars = sorted({v for m in terms for v, _ in m})

    def dense(item):
        d = dict(item[0])
        return tuple(d.get(v, 0) for v in allvars)

    return sorted(terms.items(), key=dense, reverse=True)


class SparsePoly:
    """Immutable sparse polynomial; ``terms`` maps monomial -> nonzero int."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        object.__setattr__(self, "terms", {m: c for m, c in terms.items() if c})
        if len(self.terms) > MAX_TERMS:
            raise SizeLimitError(f"polynomial has {len(self.terms)} terms (cap {MAX_TERMS})")

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("SparsePoly is immutable")

    @staticmethod
    def zero() -> "SparsePoly":
        return SparsePoly({})

    @staticmethod
    def one() -> "SparsePoly":
        return SparsePoly({ONE_MONO: 1})

    @staticmethod
    def const(c: int) -> "SparsePoly":
        return SparsePoly({ONE_MONO: c} if c else {})

    @staticmethod
    def var(i: int, exp: int = 1) -> "SparsePoly":
        return SparsePoly({((i, exp),): 1} if exp else {ONE_MONO: 1})

    @staticmethod
    def monomial(exps: dict, coeff: int = 1) -> "SparsePoly":
        m = tuple(sorted((v, e) for v, e in exps.items() if e))
        return SparsePoly({m: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {ONE_MONO: 1}

    def is_positive(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> int:
        return self.terms.get(ONE_MONO, 0)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparsePoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            c2 = out.get(m, 0) + c
            if c2:
                out[m] = c2
            else:
                del out[m]
        return SparsePoly(out)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = out.get(m, 0) + c1 * c2
                if c:
                    out[m] = c
                elif m in out:
                    del out[m]
            if len(out) > MAX_TERMS:
                raise SizeLimitError(f"product exceeds term cap {MAX_TERMS}")
        return SparsePoly(out)

    def __pow__(self, n: int) -> "SparsePoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = SparsePoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift_vars(self, offset: int) -> "SparsePoly":
        return SparsePoly(
            {tuple(sorted((v + offset, e) for v, e in m)): c for m, c in self.terms.items()}
        )

    def min_exponents(self) -> dict:
        """Componentwise minimum exponent over all monomials (absent = 0)."""
        out = None
        for m in self.terms:
            d = dict(m)
            if out is None:
                out = d
            else:
                for v in list(out):
                    out[v] = min(out[v], d.get(v, 0))
                for v, e in d.items():
                    if v not in out:
                        out[v] = min(0, e)
        if out is None:
            raise ZeroDivisionError("zero polynomial has no exponent minimum")
        return {v: e for v, e in out.items() if e}

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def exact_div(self, divisor: "SparsePoly"):
        """Quotient self/divisor if the division is exact, else None.

        Both operands must have nonnegative exponents.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if divisor.is_one():
            return self
        if self.is_zero():
            return self
        allvars = sorted(self.variables() | divisor.variables())

        def dense(m):
            d = dict(m)
            return tuple(d.get(v, 0) for v in allvars)

        lead_d = max(divisor.terms, key=dense)
        coeff_d = divisor.terms[lead_d]
        rem = dict(self.terms)
        quot = {}
        while rem:
            lead_r = max(rem, key=dense)
            coeff_r = rem[lead_r]
            m = _mono_div(lead_r, lead_d)
            if m is None or coeff_r % coeff_d:
                return None
            c = coeff_r // coeff_d
            quot[m] = c
            for m2, c2 in divisor.terms.items():
                mm = _mono_mul(m, m2)
                cc = rem.get(mm, 0) - c * c2
                if cc:
                    rem[mm] = cc
                else:
                    rem.pop(mm, None)
        return SparsePoly(quot)

    def eval_float(self, values) -> float:
        """Evaluate at positive reals; ``values[v]`` supplies variable v."""
        total = 0.0
        for m, c in self.terms.items():
            t = float(c)
            for v, e in m:
                t *= values[v] ** e
            total += t
        return total

    def subs(self, args) -> "SFRational":
        """Evaluate with ``args[v]`` an SFRational per variable (coeffs must be > 0)."""
        total = None
        for m, c in self.terms.items():
            if c <= 0:
                raise ValueError("semifield evaluation needs positive coefficients")
            t = SFRational.from_int(c)
            for v, e in m:
                t = t * args[v] ** e
            total = t if total is None else total + t
        if total is None:
            raise ZeroDivisionError("cannot evaluate the zero polynomial in a semifield")
        return total

    def to_json(self) -> list:
        # external variable indices are 1-based, like all other indices
        return [
            [[{"var": v + 1, "exp": e} for v, e in m], c]
            for m, c in _terms_sorted(self.terms)
        ]

    @staticmethod
    def from_json(data) -> "SparsePoly":
        terms = {}
        for mono, coeff in data:
            m = tuple(sorted((int(p["var"]) - 1, int(p["exp"])) for p in mono))
            terms[m] = terms.get(m, 0) + int(coeff)
        return SparsePoly(terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in _terms_sorted(self.terms):
            factors = [f"v{v}^{e}" if e != 1 else f"v{v}" for v, e in m]
            if c != 1 or not factors:
                factors = [str(c)] + factors
            bits.append("*".join(factors))
        return " + ".join(bits)


def _normalize_positive(p: SparsePoly):
    """Strip integer and monomial content: p = c * mono * core, core content-free."""
    if p.is_zero():
        raise ZeroDivisionError("zero polynomial in a semifield position")
    if not p.is_positive():
        raise ValueError("subtraction-free value needs positive coefficients")
    c = p.content()
    mono = p.min_exponents()
    core = {}
    for m, coeff in p.terms.items():
        d = dict(m)
        for v, e in mono.items():
            e2 = d.get(v, 0) - e
            if e2:
                d[v] = e2
            else:
                d.pop(v, None)
        core[tuple(sorted(d.items()))] = coeff // c
    return c, mono, tuple(sorted(core.items()))


_ONE_KEY = ((ONE_MONO, 1),)

# Interned polynomial atoms, keyed by their canonical term tuples.  New atoms
# are factored against the ones already seen, so repeated factors produced by
# exchange relations cancel by key identity.  Purely a representation cache:
# values never depend on it, only the fineness of the internal factorization.
_ATOMS: dict = {}
_ATOMS_LOCK = threading.Lock()


def _clear_atom_registry() -> None:
    with _ATOMS_LOCK:
        _ATOMS.clear()


def _factor_key(key) -> dict:
    """Split a content-free positive term-tuple into interned atoms -> exponent."""
    if key == _ONE_KEY:
        return {}
    out = {}
    p = SparsePoly(dict(key))
    with _ATOMS_LOCK:
        atoms = list(_ATOMS)
    atoms.sort(key=len)
    i = 0
    while i < len(atoms):
        a = atoms[i]
        if a != _ONE_KEY and len(a) <= len(p.terms):
            q = p.exact_div(SparsePoly(dict(a)))
            if q is not None and len(q.terms) >= 1:
                out[a] = out.get(a, 0) + 1
                p = q
                if p.is_one():
                    return out
                continue  # retry the same atom
        i += 1
    residue = tuple(sorted(p.terms.items()))
    if residue != _ONE_KEY:
        with _ATOMS_LOCK:
            _ATOMS.setdefault(residue, None)
        out[residue] = out.get(residue, 0) + 1
    return out


class SFRational:
    """Subtraction-free rational function (element of the universal semifield).

    Canonical form: ``num`` and ``den`` are positive-coefficient polynomials
    with no common pure-monomial factor and jointly coprime integer content.
    Internally the value is ``(cn/cd) * mono * prod(atom^e)``.
    """

    __slots__ = ("_cn", "_cd", "_mono", "_fac", "_num", "_den")

    def __init__(self, cn: int, cd: int, mono: dict, fac: dict):
        g = gcd(cn, cd)
        object.__setattr__(self, "_cn", cn // g)
        object.__setattr__(self, "_cd", cd // g)
        object.__setattr__(self, "_mono", {v: e for v, e in mono.items() if e})
        object.__setattr__(self, "_fac", {k: e for k, e in fac.items() if e})
        object.__setattr__(self, "_num", None)
        object.__setattr__(self, "_den", None)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("SFRational is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_pair(num: SparsePoly, den: SparsePoly) -> "SFRational":
        cn, mn, kn = _normalize_positive(num)
        cd, md, kd = _normalize_positive(den)
        mono = dict(mn)
        for v, e in md.items():
            mono[v] = mono.get(v, 0) - e
        fac = dict(_factor_key(kn))
        for k, e in _factor_key(kd).items():
            fac[k] = fac.get(k, 0) - e
        return SFRational(cn, cd, mono, fac)

    @staticmethod
    def from_poly(p: SparsePoly) -> "SFRational":
        return SFRational.from_pair(p, SparsePoly.one())

    @staticmethod
    def from_int(c: int) -> "SFRational":
        if c <= 0:
            raise ValueError("semifield constants are positive")
        return SFRational(c, 1, {}, {})

    @staticmethod
    def from_fraction(p: int, q: int) -> "SFRational":
        if p <= 0 or q <= 0:
            raise ValueError("semifield constants are positive")
        return SFRational(p, q, {}, {})

    @staticmethod
    def one() -> "SFRational":
        return SFRational(1, 1, {}, {})

    @staticmethod
    def var(i: int, exp: int = 1) -> "SFRational":
        return SFRational(1, 1, {i: exp}, {})

    @staticmethod
    def from_monomial(exps: dict) -> "SFRational":
        return SFRational(1, 1, dict(exps), {})

    # -- canonical numerator/denominator -------------------------------

    def _materialize(self):
        num = SparsePoly({tuple(sorted((v, e) for v, e in self._mono.items() if e > 0)): self._cn})
        den = SparsePoly({tuple(sorted((v, -e) for v, e in self._mono.items() if e < 0)): self._cd})
        for k, e in sorted(self._fac.items()):
            atom = SparsePoly(dict(k))
            if e > 0:
                num = num * atom ** e
            else:
                den = den * atom ** (-e)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)

    @property
    def num(self) -> SparsePoly:
        if self._num is None:
            self._materialize()
        return self._num

    @property
    def den(self) -> SparsePoly:
        if self._den is None:
            self._materialize()
        return self._den

    # -- semifield operations ------------------------------------------

    def __mul__(self, other: "SFRational") -> "SFRational":
        mono = dict(self._mono)
        for v, e in other._mono.items():
            mono[v] = mono.get(v, 0) + e
        fac = dict(self._fac)
        for k, e in other._fac.items():
            fac[k] = fac.get(k, 0) + e
        return SFRational(self._cn * other._cn, self._cd * other._cd, mono, fac)

    def inv(self) -> "SFRational":
        return SFRational(
            self._cd,
            self._cn,
            {v: -e for v, e in self._mono.items()},
            {k: -e for k, e in self._fac.items()},
        )

    def __truediv__(self, other: "SFRational") -> "SFRational":
        return self * other.inv()

    def __pow__(self, n: int) -> "SFRational":
        if n == 0:
            return SFRational.one()
        base = self if n > 0 else self.inv()
        n = abs(n)
        return SFRational(
            base._cn**n,
            base._cd**n,
            {v: e * n for v, e in base._mono.items()},
            {k: e * n for k, e in base._fac.items()},
        )

    def __add__(self, other: "SFRational") -> "SFRational":
        com_fac = {
            k: min(self._fac.get(k, 0), other._fac.get(k, 0))
            for k in set(self._fac) | set(other._fac)
        }
        com_mono = {
            v: min(self._mono.get(v, 0), other._mono.get(v, 0))
            for v in set(self._mono) | set(other._mono)
        }
        cd = self._cd * other._cd // gcd(self._cd, other._cd)

        def residual(x: "SFRational") -> SparsePoly:
            base = tuple(
                sorted(
                    (v, x._mono.get(v, 0) - com_mono[v])
                    for v in com_mono
                    if x._mono.get(v, 0) - com_mono[v]
                )
            )
            p = SparsePoly({base: x._cn * (cd // x._cd)})
            for k in set(x._fac) | set(com_fac):
                r = x._fac.get(k, 0) - com_fac.get(k, 0)
                if r:
                    p = p * SparsePoly(dict(k)) ** r
            return p

        c, m, key = _normalize_positive(residual(self) + residual(other))
        mono = dict(com_mono)
        for v, e in m.items():
            mono[v] = mono.get(v, 0) + e
        fac = dict(com_fac)
        for k, e in _factor_key(key).items():
            fac[k] = fac.get(k, 0) + e
        return SFRational(c, cd, mono, fac)

    def _expanded_side(self, positive: bool) -> SparsePoly:
        base = tuple(sorted((v, abs(e)) for v, e in self._mono.items() if (e > 0) == positive))
        p = SparsePoly({base: self._cn if positive else self._cd})
        for k, e in self._fac.items():
            if (e > 0) == positive:
                p = p * SparsePoly(dict(k)) ** abs(e)
        return p

    def eq(self, other: "SFRational") -> bool:
        """Equality as rational functions (cross-multiplication on residuals)."""
        q = self / other
        if not q._fac and not q._mono:
            return q._cn == q._cd
        return q._expanded_side(True) == q._expanded_side(False)

    def __eq__(self, other):
        return isinstance(other, SFRational) and self.eq(other)

    def __hash__(self):  # pragma: no cover
        raise TypeError("SFRational is unhashable (equality is semantic)")

    def is_one(self) -> bool:
        return self.eq(SFRational.one())

    def eval_float(self, values) -> float:
        t = float(self._cn) / float(self._cd)
        for v, e in self._mono.items():
            t *= values[v] ** e
        for k, e in self._fac.items():
            t *= SparsePoly(dict(k)).eval_float(values) ** e
        return t

    # -- tropical data ---------------------------------------------------

    def trop_exponents(self) -> dict:
        """Exponent map of the tropical evaluation (sparse)."""
        # num and den have positive coefficients, so the minimum exponent of a
        # product is the sum of the minima; atoms are content-free, leaving
        # exactly the monomial part.
        return dict(self._mono)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(data) -> "SFRational":
        return SFRational.from_pair(
            SparsePoly.from_json(data["num"]), SparsePoly.from_json(data["den"])
        )

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"


@dataclass(frozen=True)
class TropMonomial:
    """Laurent monomial in the tropical semifield, dense over a fixed index set."""

    exponents: tuple

    @staticmethod
    def one(n: int) -> "TropMonomial":
        return TropMonomial((0,) * n)

    @staticmethod
    def var(i: int, n: int) -> "TropMonomial":
        return TropMonomial(tuple(1 if j == i else 0 for j in range(n)))

    def oplus(self, other: "TropMonomial") -> "TropMonomial":
        return TropMonomial(tuple(min(a, b) for a, b in zip(self.exponents, other.exponents)))

    def __mul__(self, other: "TropMonomial") -> "TropMonomial":
        return TropMonomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def inv(self) -> "TropMonomial":
        return TropMonomial(tuple(-a for a in self.exponents))

    def __pow__(self, n: int) -> "TropMonomial":
        return TropMonomial(tuple(a * n for a in self.exponents))

    def sign(self) -> int:
        """+1 if all exponents >= 0, -1 if all <= 0 (nonzero), else 0."""
        if all(e == 0 for e in self.exponents):
            return 0
        if all(e >= 0 for e in self.exponents):
            return 1
        if all(e <= 0 for e in self.exponents):
            return -1
        return 0

    def to_json(self) -> list:
        return [{"var": v + 1, "exp": e} for v, e in enumerate(self.exponents) if e]


# -- module-level operation names used throughout ------------------------


def sfr_add(a: SFRational, b: SFRational) -> SFRational:
    return a + b


def sfr_mul(a: SFRational, b: SFRational) -> SFRational:
    return a * b


def sfr_div(a: SFRational, b: SFRational) -> SFRational:
    return a / b


def sfr_eq(a: SFRational, b: SFRational) -> bool:
    return a.eq(b)


def trop_oplus(a: TropMonomial, b: TropMonomial) -> TropMonomial:
    if len(a.exponents) != len(b.exponents):
        raise ValueError("tropical addition needs a common index set")
    return a.oplus(b)


def trop_evaluate(a: SFRational, n: int) -> TropMonomial:
    exps = a.trop_exponents()
    if any(v >= n or v < 0 for v in exps):
        raise ValueError("variable index outside the declared index set")
    return TropMonomial(tuple(exps.get(v, 0) for v in range(n)))
