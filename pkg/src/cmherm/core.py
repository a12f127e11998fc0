"""Exact arithmetic kernel: rationals, sparse multivariate polynomials, permutations.

Coefficients are ``gmpy2.mpq`` throughout.  A :class:`MultiPoly` is an
immutable map from exponent tuples to nonzero rationals; the canonical term
order is graded lexicographic (highest term first).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from gmpy2 import mpq

from .errors import NotDivisible

ZERO = mpq(0)
ONE = mpq(1)


def Q(value) -> mpq:
    """Coerce ``value`` (int, str ``"p/q"``, Fraction, mpq) to an exact rational."""
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; pass a string like '1/2'")
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


def grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


def _check_same(a: "MultiPoly", b: "MultiPoly") -> None:
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} != {b.nvars}")


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables over the rationals."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None, *, _trusted: bool = False):
        self.nvars = nvars
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars or any(k < 0 for k in e):
                raise ValueError(f"bad exponent vector {e} for {nvars} variables")
            c = Q(c)
            if c:
                clean[e] = clean.get(e, ZERO) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {}, _trusted=True)

    @classmethod
    def const(cls, nvars: int, c=1) -> "MultiPoly":
        c = Q(c)
        return cls(nvars, {(0,) * nvars: c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, nvars: int) -> "MultiPoly":
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): ONE}, _trusted=True)

    @classmethod
    def gens(cls, nvars: int) -> list:
        return [cls.var(nvars, i) for i in range(nvars)]

    @classmethod
    def monomial(cls, exps, c=1) -> "MultiPoly":
        exps = tuple(exps)
        return cls(len(exps), {exps: c})

    @classmethod
    def root(cls, nvars: int, i: int, j: int) -> "MultiPoly":
        """The linear form x_i - x_j."""
        return cls.var(nvars, i) - cls.var(nvars, j)

    # -- basic protocol ---------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, mpq, Fraction)):
            other = Q(other)
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.to_str()!r})"

    def __str__(self):
        return self.to_str()

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def to_str(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or default_names(self.nvars)
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}" if c.denominator == 1 else f"({c})*{mono}"
            out.append(s)
        return " + ".join(out).replace("+ -", "- ")

    # -- ring operations --------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            _check_same(self, other)
            return other
        if isinstance(other, (int, mpq, Fraction, str)):
            return MultiPoly.const(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly(self.nvars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = -c
            else:
                v = v - c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly(self.nvars, out, _trusted=True)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = Q(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        if c == 1:
            return self
        return MultiPoly(self.nvars, {e: v * c for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, mpq, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        _check_same(self, other)
        if not self.terms or not other.terms:
            return MultiPoly.zero(self.nvars)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return MultiPoly(self.nvars, {e: c for e, c in out.items() if c}, _trusted=True)

    def __rmul__(self, other):
        if isinstance(other, (int, mpq, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, e, c=ONE) -> "MultiPoly":
        return MultiPoly(
            self.nvars,
            {tuple(x + y for x, y in zip(k, e)): v * c for k, v in self.terms.items()},
            _trusted=True,
        )

    # -- structure --------------------------------------------------------
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> mpq:
        return self.terms.get((0,) * self.nvars, ZERO)

    def coefficient(self, e) -> mpq:
        return self.terms.get(tuple(e), ZERO)

    def leading_term(self):
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(
            self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d}, _trusted=True
        )

    def homogeneous_parts(self) -> list:
        """``[(degree, part), ...]`` with strictly increasing degrees."""
        parts = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return [(d, MultiPoly(self.nvars, parts[d], _trusted=True)) for d in sorted(parts)]

    def partial_degree(self, idx) -> int:
        """Max total degree in the variables listed in ``idx``."""
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def filter_terms(self, pred) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if pred(e)}, _trusted=True)

    # -- calculus and substitutions --------------------------------------
    def diff(self, i: int, k: int = 1) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        if k == 0:
            return self
        out = {}
        for e, c in self.terms.items():
            a = e[i]
            if a >= k:
                f = 1
                for t in range(a - k + 1, a + 1):
                    f *= t
                ne = e[:i] + (a - k,) + e[i + 1:]
                out[ne] = c * f
        return MultiPoly(self.nvars, out, _trusted=True)

    def diff_multi(self, beta) -> "MultiPoly":
        p = self
        for i, k in enumerate(beta):
            if k:
                p = p.diff(i, k)
                if not p:
                    break
        return p

    def permute(self, w: "Permutation") -> "MultiPoly":
        """Return ``p(w^{-1} x)``: the variable x_i is renamed x_{w(i)}."""
        if w.n != self.nvars:
            raise ValueError("permutation size does not match variable count")
        img = w.images
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, a in enumerate(e):
                ne[img[i]] = a
            out[tuple(ne)] = c
        return MultiPoly(self.nvars, out, _trusted=True)

    def swap(self, i: int, j: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i], ne[j] = ne[j], ne[i]
            out[tuple(ne)] = c
        return MultiPoly(self.nvars, out, _trusted=True)

    def identify(self, i: int, j: int) -> "MultiPoly":
        """Substitute x_i := x_j."""
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[j] += ne[i]
            ne[i] = 0
            ne = tuple(ne)
            v = out.get(ne)
            out[ne] = c if v is None else v + c
        return MultiPoly(self.nvars, {e: c for e, c in out.items() if c}, _trusted=True)

    def evaluate(self, values) -> mpq:
        vals = [Q(v) for v in values]
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for v, a in zip(vals, e):
                if a:
                    t *= v ** a
            total += t
        return total

    def substitute(self, images) -> "MultiPoly":
        """Replace x_i by the polynomial ``images[i]`` (all in a common ring)."""
        images = list(images)
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        n = images[0].nvars
        cache = [{0: MultiPoly.one(n)} for _ in images]

        def power(i, a):
            d = cache[i]
            if a not in d:
                d[a] = power(i, a - 1) * images[i]
            return d[a]

        total = MultiPoly.zero(n)
        for e, c in self.terms.items():
            t = MultiPoly.const(n, c)
            for i, a in enumerate(e):
                if a:
                    t = t * power(i, a)
            total = total + t
        return total

    def embed(self, nvars: int, positions) -> "MultiPoly":
        """Place variable i at index ``positions[i]`` in a ring with ``nvars`` variables."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, a in enumerate(e):
                ne[positions[i]] += a
            ne = tuple(ne)
            out[ne] = out.get(ne, ZERO) + c
        return MultiPoly(nvars, {e: c for e, c in out.items() if c}, _trusted=True)

    def project(self, positions) -> "MultiPoly":
        """Inverse of :meth:`embed`; every term must live in the listed variables."""
        keep = set(positions)
        out = {}
        for e, c in self.terms.items():
            if any(a for i, a in enumerate(e) if i not in keep):
                raise ValueError("polynomial involves variables outside the projection")
            out[tuple(e[i] for i in positions)] = c
        return MultiPoly(len(positions), out, _trusted=True)

    def is_symmetric(self, idx=None) -> bool:
        idx = list(range(self.nvars)) if idx is None else list(idx)
        return all(self.swap(a, b) == self for a, b in zip(idx, idx[1:]))

    # -- division ---------------------------------------------------------
    def divide_by_root(self, i: int, j: int, power: int = 1) -> "MultiPoly":
        """Exact quotient by (x_i - x_j)^power; raises NotDivisible otherwise."""
        p = self
        for _ in range(power):
            p = p._div_root_once(i, j)
        return p

    def _div_root_once(self, i: int, j: int) -> "MultiPoly":
        if not self.terms:
            return self
        # p = sum_a c_a x_i^a with c_a free of x_i; synthetic division in x_i.
        slices = {}
        for e, c in self.terms.items():
            a = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            slices.setdefault(a, {})[rest] = c
        top = max(slices)
        out = {}
        carry = {}
        for a in range(top, 0, -1):
            cur = dict(slices.get(a, {}))
            for e, c in carry.items():
                v = cur.get(e)
                if v is None:
                    cur[e] = c
                else:
                    v = v + c
                    if v:
                        cur[e] = v
                    else:
                        del cur[e]
            # quotient coefficient of x_i^{a-1}
            for e, c in cur.items():
                out[e[:i] + (a - 1,) + e[i + 1:]] = c
            carry = {}
            for e, c in cur.items():
                ne = list(e)
                ne[j] += 1
                carry[tuple(ne)] = c
        rem = dict(slices.get(0, {}))
        for e, c in carry.items():
            v = rem.get(e, ZERO) + c
            if v:
                rem[e] = v
            else:
                rem.pop(e, None)
        if rem:
            raise NotDivisible(f"not divisible by (x{i + 1} - x{j + 1})")
        return MultiPoly(self.nvars, out, _trusted=True)

    def root_valuation(self, i: int, j: int, limit: int | None = None) -> int:
        """Largest k with (x_i - x_j)^k dividing p (capped at ``limit``); inf-like for 0."""
        if not self.terms:
            return limit if limit is not None else 10 ** 9
        k, p = 0, self
        while limit is None or k < limit:
            try:
                p = p._div_root_once(i, j)
            except NotDivisible:
                break
            k += 1
        return k

    def exact_div(self, d: "MultiPoly") -> "MultiPoly":
        """Exact quotient ``q`` with ``q * d == self``; raises NotDivisible otherwise."""
        _check_same(self, d)
        if not d.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if len(d.terms) == 2:
            root = _as_root(d)
            if root is not None:
                i, j, c = root
                try:
                    return self._div_root_once(i, j).scale(1 / c)
                except NotDivisible:
                    raise NotDivisible(f"{self} is not divisible by {d}") from None
        lt_e, lt_c = d.leading_term()
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem, key=grlex_key)
            c = rem[e]
            if any(a < b for a, b in zip(e, lt_e)):
                raise NotDivisible(f"{self} is not divisible by {d}")
            qe = tuple(a - b for a, b in zip(e, lt_e))
            qc = c / lt_c
            quot[qe] = qc
            for de, dc in d.terms.items():
                ne = tuple(a + b for a, b in zip(qe, de))
                v = rem.get(ne, ZERO) - qc * dc
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        return MultiPoly(self.nvars, quot, _trusted=True)

    # -- serialization helpers -------------------------------------------
    def to_json_obj(self, names=None) -> dict:
        names = list(names or default_names(self.nvars))
        return {
            "vars": names,
            "terms": [{"e": list(e), "c": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "MultiPoly":
        n = len(obj["vars"])
        return cls(n, {tuple(t["e"]): mpq(t["c"]) for t in obj["terms"]})


def _as_root(d: MultiPoly):
    """Recognise c*(x_i - x_j); return (i, j, c) or None."""
    (e1, c1), (e2, c2) = d.terms.items()
    if c1 != -c2 or sum(e1) != 1 or sum(e2) != 1:
        return None
    i, j = e1.index(1), e2.index(1)
    return (i, j, c1)


def default_names(n: int) -> list:
    return [f"x{i + 1}" for i in range(n)]


class Permutation:
    """A bijection of {0..n-1}; ``images[i]`` is the image of i."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation")
        self.images = images

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        img = list(range(n))
        img[i], img[j] = img[j], img[i]
        return cls(img)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(i) = self(other(i))."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Permutation(self.images[k] for k in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, k in enumerate(self.images):
            inv[k] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == k for i, k in enumerate(self.images))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def root_pairs(n: int) -> list:
    return list(combinations(range(n), 2))


def power_sum(n: int, k: int, idx=None) -> MultiPoly:
    idx = range(n) if idx is None else idx
    out = MultiPoly.zero(n)
    for i in idx:
        e = [0] * n
        e[i] = k
        out = out + MultiPoly.monomial(e)
    return out


def multinomial(e) -> int:
    total, out = 0, 1
    for a in e:
        total += a
        out *= comb(total, a)
    return out


def monomials_of_degree(n: int, d: int) -> list:
    """All exponent tuples of total degree d, in descending grlex order."""
    if n == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for a in range(left, -1, -1):
            rec(prefix + [a], left - a, slots - 1)

    rec([], d, n)
    return out
