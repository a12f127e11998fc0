"""Differential operators with root-hyperplane rational coefficients and their
skew extension by the symmetric group.

Coefficients are :class:`RationalFn` values ``num / prod (x_i - x_j)^p``.  A
:class:`SkewElement` is stored normal-ordered, ``sum_w A_w . w`` with each
``A_w`` a :class:`DiffOp` standing to the left of its permutation.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb

from gmpy2 import mpq

from .core import ONE, ZERO, MultiPoly, Permutation, Q
from .errors import NotDivisible, NotInvariant


@lru_cache(maxsize=4096)
def root_power(nvars: int, i: int, j: int, k: int) -> MultiPoly:
    return MultiPoly.root(nvars, i, j) ** k


def _norm_den(den) -> tuple:
    return tuple(sorted((pair, p) for pair, p in den.items() if p > 0))


class RationalFn:
    """``num / prod_{(i,j)} (x_i - x_j)^p`` in reduced form (i < j)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MultiPoly, den=None, *, reduced: bool = False):
        self._hash = None
        den = dict(den or {})
        sign = 1
        fixed = {}
        for (i, j), p in den.items():
            if p < 0:
                raise ValueError("denominator powers must be positive")
            if p == 0:
                continue
            if i == j:
                raise ZeroDivisionError("x_i - x_i")
            if i > j:
                i, j = j, i
                if p % 2:
                    sign = -sign
            fixed[(i, j)] = fixed.get((i, j), 0) + p
        if sign < 0:
            num = -num
        if not num:
            self.num, self.den = num, ()
            return
        if not reduced:
            for (i, j), p in list(fixed.items()):
                k = 0
                while k < p:
                    try:
                        num = num._div_root_once(i, j)
                    except NotDivisible:
                        break
                    k += 1
                fixed[(i, j)] = p - k
        self.num = num
        self.den = _norm_den(fixed)

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RationalFn":
        return cls(p, reduced=True)

    @classmethod
    def const(cls, nvars: int, c) -> "RationalFn":
        return cls(MultiPoly.const(nvars, c), reduced=True)

    @classmethod
    def inv_root(cls, nvars: int, i: int, j: int, power: int = 1, c=1) -> "RationalFn":
        """c / (x_i - x_j)^power."""
        return cls(MultiPoly.const(nvars, c), {(i, j): power})

    def is_poly(self) -> bool:
        return not self.den

    def to_poly(self) -> MultiPoly:
        if self.den:
            raise NotDivisible(f"{self} is not a polynomial")
        return self.num

    def simplify(self):
        """MultiPoly when the denominator is trivial, else self."""
        return self.num if not self.den else self

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return not self.den and self.num == other
        if isinstance(other, RationalFn):
            return self.den == other.den and self.num == other.num
        if isinstance(other, (int, mpq)):
            return not self.den and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        if not self.den:
            return f"RationalFn({self.num})"
        dens = "*".join(f"(x{i + 1}-x{j + 1})^{p}" for (i, j), p in self.den)
        return f"RationalFn(({self.num}) / {dens})"

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, MultiPoly):
            other = RationalFn.from_poly(other)
        elif isinstance(other, (int, mpq)):
            other = RationalFn.const(self.nvars, other)
        return rsum([self, other], self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, dict(self.den), reduced=True)

    def __sub__(self, other):
        if isinstance(other, MultiPoly):
            other = RationalFn.from_poly(other)
        return self + (-other)

    def scale(self, c) -> "RationalFn":
        c = Q(c)
        if not c:
            return RationalFn(MultiPoly.zero(self.nvars))
        return RationalFn(self.num.scale(c), dict(self.den), reduced=True)

    def __mul__(self, other):
        if isinstance(other, (int, mpq)):
            return self.scale(other)
        if isinstance(other, MultiPoly):
            if not self.den:
                return RationalFn(self.num * other, reduced=True)
            return RationalFn(self.num * other, dict(self.den))
        if not isinstance(other, RationalFn):
            return NotImplemented
        den = dict(self.den)
        for pair, p in other.den:
            den[pair] = den.get(pair, 0) + p
        num = self.num * other.num
        if not self.den or not other.den:
            # product of a reduced fraction by a polynomial may still cancel
            return RationalFn(num, den) if den else RationalFn(num, reduced=True)
        return RationalFn(num, den)

    __rmul__ = __mul__

    # -- calculus and symmetries -----------------------------------------
    def diff(self, k: int) -> "RationalFn":
        if not self.den:
            return RationalFn(self.num.diff(k), reduced=True)
        n = self.nvars
        touching = [(pair, p) for pair, p in self.den if k in pair]
        if not touching:
            return RationalFn(self.num.diff(k), dict(self.den), reduced=True)
        ell = {pair: MultiPoly.root(n, *pair) for pair, _ in touching}
        prod_all = MultiPoly.one(n)
        for pair, _ in touching:
            prod_all = prod_all * ell[pair]
        new_num = self.num.diff(k) * prod_all
        for pair, p in touching:
            s = 1 if pair[0] == k else -1
            others = MultiPoly.one(n)
            for q, _ in touching:
                if q != pair:
                    others = others * ell[q]
            new_num = new_num - (self.num * others).scale(p * s)
        den = dict(self.den)
        for pair, _ in touching:
            den[pair] += 1
        return RationalFn(new_num, den)

    def diff_multi(self, beta) -> "RationalFn":
        f = self
        for i, k in enumerate(beta):
            for _ in range(k):
                f = f.diff(i)
                if not f:
                    return f
        return f

    def permute(self, w: Permutation) -> "RationalFn":
        img = w.images
        den = {}
        for (i, j), p in self.den:
            den[(img[i], img[j])] = p
        return RationalFn(self.num.permute(w), den, reduced=True)

    def embed(self, nvars: int, positions) -> "RationalFn":
        den = {(positions[i], positions[j]): p for (i, j), p in self.den}
        return RationalFn(self.num.embed(nvars, positions), den, reduced=True)

    def to_json_obj(self) -> dict:
        return {
            "num": self.num.to_json_obj(),
            "den": [{"pair": [i + 1, j + 1], "pow": p} for (i, j), p in self.den],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "RationalFn":
        num = MultiPoly.from_json_obj(obj["num"])
        den = {(d["pair"][0] - 1, d["pair"][1] - 1): d["pow"] for d in obj["den"]}
        return cls(num, den)


def rsum(items, nvars: int) -> RationalFn:
    """Sum of RationalFn values over one common denominator, reduced once."""
    groups = {}
    for r in items:
        if not r.num:
            continue
        g = groups.get(r.den)
        groups[r.den] = r.num if g is None else g + r.num
    return _combine_groups(groups, nvars)


def _combine_groups(groups: dict, nvars: int) -> RationalFn:
    groups = {d: p for d, p in groups.items() if p}
    if not groups:
        return RationalFn(MultiPoly.zero(nvars), reduced=True)
    if len(groups) == 1:
        (den, num), = groups.items()
        return RationalFn(num, dict(den)) if den else RationalFn(num, reduced=True)
    target = {}
    for den in groups:
        for pair, p in den:
            if p > target.get(pair, 0):
                target[pair] = p
    total = MultiPoly.zero(nvars)
    for den, num in groups.items():
        mine = dict(den)
        for (i, j), p in target.items():
            extra = p - mine.get((i, j), 0)
            if extra:
                num = num * root_power(nvars, i, j, extra)
        total = total + num
    return RationalFn(total, target)


def _as_rf(c, nvars: int) -> RationalFn:
    if isinstance(c, RationalFn):
        return c
    if isinstance(c, MultiPoly):
        return RationalFn.from_poly(c)
    return RationalFn.const(nvars, c)


def _box(alpha):
    return product(*(range(a + 1) for a in alpha))


def _binom_multi(alpha, gamma) -> int:
    out = 1
    for a, g in zip(alpha, gamma):
        out *= comb(a, g)
    return out


class DiffOp:
    """``sum_beta c_beta(x) d^beta`` with RationalFn coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self._hash = None
        clean = {}
        for beta, c in (terms or {}).items():
            beta = tuple(beta)
            if len(beta) != nvars:
                raise ValueError("multi-index length mismatch")
            c = _as_rf(c, nvars)
            if c:
                clean[beta] = c
        self.terms = clean

    @classmethod
    def zero(cls, n: int) -> "DiffOp":
        return cls(n)

    @classmethod
    def identity(cls, n: int) -> "DiffOp":
        return cls(n, {(0,) * n: RationalFn.const(n, 1)})

    @classmethod
    def multiplication(cls, f) -> "DiffOp":
        f = _as_rf(f, f.nvars)
        return cls(f.nvars, {(0,) * f.nvars: f})

    @classmethod
    def partial(cls, n: int, i: int, k: int = 1) -> "DiffOp":
        beta = [0] * n
        beta[i] = k
        return cls(n, {tuple(beta): RationalFn.const(n, 1)})

    @classmethod
    def euler(cls, n: int, idx=None) -> "DiffOp":
        idx = range(n) if idx is None else idx
        terms = {}
        for i in idx:
            beta = [0] * n
            beta[i] = 1
            terms[tuple(beta)] = RationalFn.from_poly(MultiPoly.var(n, i))
        return cls(n, terms)

    def order(self) -> int:
        return max((sum(b) for b in self.terms), default=-1)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        parts = []
        for beta, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
            d = "*".join(f"d{i + 1}^{k}" if k > 1 else f"d{i + 1}" for i, k in enumerate(beta) if k)
            parts.append(f"[{c}]{'*' + d if d else ''}")
        return "DiffOp(" + " + ".join(parts or ["0"]) + ")"

    # -- linear structure -------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._same(other)
        terms = dict(self.terms)
        for beta, c in other.terms.items():
            terms[beta] = rsum([terms[beta], c], self.nvars) if beta in terms else c
        return DiffOp(self.nvars, terms)

    def __neg__(self):
        return DiffOp(self.nvars, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DiffOp":
        c = Q(c)
        return DiffOp(self.nvars, {b: v.scale(c) for b, v in self.terms.items()})

    def left_multiply(self, f) -> "DiffOp":
        """The operator f . self for a function f."""
        f = _as_rf(f, self.nvars)
        return DiffOp(self.nvars, {b: f * c for b, c in self.terms.items()})

    def _same(self, other):
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    # -- composition -------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, mpq)):
            return self.scale(other)
        if isinstance(other, DiffOp):
            return compose(self, other)
        return NotImplemented

    __matmul__ = __mul__

    def permute(self, w: Permutation) -> "DiffOp":
        """The conjugate w . self . w^{-1}."""
        img = w.images
        terms = {}
        for beta, c in self.terms.items():
            nb = [0] * self.nvars
            for i, k in enumerate(beta):
                nb[img[i]] = k
            terms[tuple(nb)] = c.permute(w)
        return DiffOp(self.nvars, terms)

    def embed(self, nvars: int, positions) -> "DiffOp":
        terms = {}
        for beta, c in self.terms.items():
            nb = [0] * nvars
            for i, k in enumerate(beta):
                nb[positions[i]] = k
            terms[tuple(nb)] = c.embed(nvars, positions)
        return DiffOp(nvars, terms)

    # -- action -----------------------------------------------------------
    def apply(self, f):
        """Image of a MultiPoly or RationalFn; MultiPoly whenever all divisions are exact."""
        if isinstance(f, MultiPoly):
            if f.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            groups = {}
            for beta, c in self.terms.items():
                g = f.diff_multi(beta)
                if not g:
                    continue
                t = c.num * g
                prev = groups.get(c.den)
                groups[c.den] = t if prev is None else prev + t
            return _combine_groups(groups, self.nvars).simplify()
        f = _as_rf(f, self.nvars)
        items = [c * f.diff_multi(beta) for beta, c in self.terms.items()]
        return rsum(items, self.nvars).simplify()

    def __call__(self, f):
        return self.apply(f)

    def to_json_obj(self) -> dict:
        out = []
        for beta, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
            out.append(
                {
                    "d": list(beta),
                    "num": c.num.to_json_obj(),
                    "den": [{"pair": [i + 1, j + 1], "pow": p} for (i, j), p in c.den],
                }
            )
        return {"nvars": self.nvars, "terms": out}

    @classmethod
    def from_json_obj(cls, obj) -> "DiffOp":
        n = obj["nvars"]
        terms = {}
        for t in obj["terms"]:
            num = MultiPoly.from_json_obj(t["num"])
            den = {(d["pair"][0] - 1, d["pair"][1] - 1): d["pow"] for d in t["den"]}
            terms[tuple(t["d"])] = RationalFn(num, den)
        return cls(n, terms)


def compose(a: DiffOp, b: DiffOp) -> DiffOp:
    """The operator a . b, by the Leibniz rule on the coefficients of b."""
    a._same(b)
    n = a.nvars
    deriv_cache = {}

    def d(c, gamma):
        key = (id(c), gamma)
        if key not in deriv_cache:
            deriv_cache[key] = c.diff_multi(gamma)
        return deriv_cache[key]

    groups = {}
    for alpha, ca in a.terms.items():
        for gamma in _box(alpha):
            w = _binom_multi(alpha, gamma)
            rest = tuple(x - y for x, y in zip(alpha, gamma))
            for beta, cb in b.terms.items():
                dcb = d(cb, gamma)
                if not dcb:
                    continue
                coef = ca * dcb
                if not coef:
                    continue
                if w != 1:
                    coef = coef.scale(w)
                key = tuple(x + y for x, y in zip(rest, beta))
                groups.setdefault(key, {}).setdefault(coef.den, []).append(coef.num)
    terms = {}
    for key, by_den in groups.items():
        summed = {}
        for den, nums in by_den.items():
            total = MultiPoly.zero(n)
            for p in nums:
                total = total + p
            summed[den] = total
        c = _combine_groups(summed, n)
        if c:
            terms[key] = c
    return DiffOp(n, terms)


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return compose(a, b) - compose(b, a)


class SkewElement:
    """Normal-ordered element ``sum_w A_w . w`` of the skew algebra D(x) # S_N."""

    __slots__ = ("nvars", "parts")

    def __init__(self, nvars: int, parts=None):
        self.nvars = nvars
        self.parts = {w: op for w, op in (parts or {}).items() if op}

    @classmethod
    def from_diffop(cls, op: DiffOp) -> "SkewElement":
        return cls(op.nvars, {Permutation.identity(op.nvars): op})

    @classmethod
    def from_perm(cls, w: Permutation) -> "SkewElement":
        return cls(w.n, {w: DiffOp.identity(w.n)})

    @classmethod
    def identity(cls, n: int) -> "SkewElement":
        return cls.from_perm(Permutation.identity(n))

    @classmethod
    def zero(cls, n: int) -> "SkewElement":
        return cls(n)

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        if not isinstance(other, SkewElement):
            return NotImplemented
        return self.nvars == other.nvars and self.parts == other.parts

    def __repr__(self):
        return "SkewElement(" + ", ".join(
            f"{list(w.images)}: {op}" for w, op in sorted(self.parts.items())
        ) + ")"

    def __add__(self, other):
        other = as_skew(other, self.nvars)
        parts = dict(self.parts)
        for w, op in other.parts.items():
            parts[w] = parts[w] + op if w in parts else op
        return SkewElement(self.nvars, parts)

    __radd__ = __add__

    def __neg__(self):
        return SkewElement(self.nvars, {w: -op for w, op in self.parts.items()})

    def __sub__(self, other):
        return self + (-as_skew(other, self.nvars))

    def __rsub__(self, other):
        return as_skew(other, self.nvars) - self

    def scale(self, c) -> "SkewElement":
        return SkewElement(self.nvars, {w: op.scale(c) for w, op in self.parts.items()})

    def __mul__(self, other):
        if isinstance(other, (int, mpq)):
            return self.scale(other)
        other = as_skew(other, self.nvars)
        parts = {}
        for w, a in self.parts.items():
            for v, b in other.parts.items():
                term = compose(a, b.permute(w))
                key = w * v
                parts[key] = parts[key] + term if key in parts else term
        return SkewElement(self.nvars, parts)

    def __rmul__(self, other):
        if isinstance(other, (int, mpq)):
            return self.scale(other)
        return as_skew(other, self.nvars) * self

    def __pow__(self, k: int) -> "SkewElement":
        out = SkewElement.identity(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self, w: Permutation) -> "SkewElement":
        """w . self . w^{-1}."""
        winv = w.inverse()
        return SkewElement(
            self.nvars, {w * v * winv: op.permute(w) for v, op in self.parts.items()}
        )

    def apply(self, f):
        results = []
        for w, op in self.parts.items():
            g = f.permute(w) if not w.is_identity() else f
            results.append(_as_rf(op.apply(g), self.nvars))
        return rsum(results, self.nvars).simplify()

    def __call__(self, f):
        return self.apply(f)

    def is_invariant(self) -> bool:
        n = self.nvars
        for i in range(n - 1):
            s = Permutation.transposition(n, i, i + 1)
            if self.conjugate(s) != self:
                return False
        return True


def as_skew(x, nvars: int) -> SkewElement:
    if isinstance(x, SkewElement):
        return x
    if isinstance(x, DiffOp):
        return SkewElement.from_diffop(x)
    if isinstance(x, Permutation):
        return SkewElement.from_perm(x)
    if isinstance(x, (MultiPoly, RationalFn)):
        return SkewElement.from_diffop(DiffOp.multiplication(x))
    if isinstance(x, (int, mpq)):
        return SkewElement.from_diffop(DiffOp.identity(nvars).scale(x))
    raise TypeError(f"cannot interpret {type(x).__name__} as a skew element")


def normal_order(word, nvars: int | None = None) -> SkewElement:
    """Multiply out a word of factors (functions, DiffOps, permutations, skew
    elements) into normal-ordered form, moving every permutation to the right."""
    if isinstance(word, SkewElement):
        return word
    word = list(word)
    if nvars is None:
        for f in word:
            nvars = getattr(f, "nvars", None) or getattr(f, "n", None)
            if nvars:
                break
    out = SkewElement.identity(nvars)
    for f in word:
        out = out * as_skew(f, nvars)
    return out


def collapse(e: SkewElement) -> DiffOp:
    """Replace every permutation of an S_N-invariant element by the identity.

    The result agrees with ``e`` on symmetric functions.  Invariance is checked
    on adjacent transpositions."""
    if not e.is_invariant():
        raise NotInvariant("element does not commute with the symmetric group")
    total = DiffOp.zero(e.nvars)
    for op in e.parts.values():
        total = total + op
    return total


def conj_apply_exp(op: DiffOp, P, act=None, shift=None):
    """Cofactor of exp(sum x_i l_i) in op(P . exp(sum x_i l_i)).

    ``op`` acts in the variables ``act`` of P's ring, each derivative d_i being
    replaced by d_i + (paired variable in ``shift``).  Defaults: op in the first
    N variables, shifts in the next N.  P may be a MultiPoly or a RationalFn."""
    n = op.nvars
    act = list(range(n)) if act is None else list(act)
    shift = list(range(n, 2 * n)) if shift is None else list(shift)
    total_vars = P.nvars
    emb = op.embed(total_vars, act)
    shift_vars = {act[i]: MultiPoly.var(total_vars, s) for i, s in enumerate(shift)}
    poly_input = isinstance(P, MultiPoly)
    memo = {(0,) * total_vars: P}

    def shifted(beta):
        if beta not in memo:
            a = next(k for k, v in enumerate(beta) if v)
            prev = beta[:a] + (beta[a] - 1,) + beta[a + 1:]
            f = shifted(prev)
            memo[beta] = f.diff(a) + f * shift_vars[a] if poly_input else rsum(
                [f.diff(a), f * shift_vars[a]], total_vars
            )
        return memo[beta]

    groups = {}
    items = []
    for beta, c in emb.terms.items():
        g = shifted(beta)
        if not g:
            continue
        if poly_input:
            t = c.num * g
            prev = groups.get(c.den)
            groups[c.den] = t if prev is None else prev + t
        else:
            items.append(c * g)
    if poly_input:
        return _combine_groups(groups, total_vars).simplify()
    return rsum(items, total_vars).simplify()
