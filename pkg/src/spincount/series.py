"""Exact truncated formal power series with integer-polynomial coefficients.

A :class:`TSeries` holds coefficients of X^0 .. X^T where each coefficient
is either a plain Python ``int`` or an :class:`IntPoly`, an integer
polynomial in the symbol ``q``.  All arithmetic is exact; nothing is ever
a float.  Identities are therefore checked symbolically in ``q``; the
residue sign ``u`` (+1 when q = 1 mod 4, -1 when q = 3 mod 4) is carried
as a separate parameter because it is not a polynomial in q.

The module also provides builders for the handful of closed-form series
the verification suite needs: the partition generating function
psi(X) = prod_k (1 - X^k)^-1, its q-weighted variant
psi_q(X) = prod_k (1 - q X^k)^-1, and the theta series sum_j X^(j^2),
plus a registry of named right-hand sides used by the identity checks.
"""

from __future__ import annotations

from .report import CheckReport, report, timer

# ---------------------------------------------------------------------------
# coefficient ring: Z[q], represented as int (constants) or IntPoly
# ---------------------------------------------------------------------------


class IntPoly:
    """Integer polynomial in q, dense low-to-high coefficient tuple.

    Canonical form has no trailing zeros and degree >= 1; degree-0 values
    are normalised to plain ints by :func:`cnorm`, so an IntPoly instance
    always denotes a genuinely non-constant polynomial.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = tuple(coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        self.c = c

    def degree(self) -> int:
        return len(self.c) - 1

    def eval(self, q: int) -> int:
        v = 0
        for a in reversed(self.c):
            v = v * q + a
        return v

    def __add__(self, other):
        return cadd(self, other)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-a for a in self.c))

    def __sub__(self, other):
        return cadd(self, cneg(other))

    def __rsub__(self, other):
        return cadd(other, cneg(self))

    def __mul__(self, other):
        return cmul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.c == other.c
        return False  # canonical IntPoly is never constant

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return True

    def __repr__(self):
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == 0:
                continue
            if i == 0:
                terms.append(f"{a}")
            else:
                qq = "q" if i == 1 else f"q^{i}"
                if a == 1:
                    terms.append(qq)
                elif a == -1:
                    terms.append(f"-{qq}")
                else:
                    terms.append(f"{a}*{qq}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


Q = IntPoly((0, 1))  # the symbol q


def cnorm(coeffs) -> "int | IntPoly":
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    if not c:
        return 0
    if len(c) == 1:
        return c[0]
    return IntPoly(c)


def cadd(x, y):
    if type(x) is int and type(y) is int:
        return x + y
    a = (x,) if type(x) is int else x.c
    b = (y,) if type(y) is int else y.c
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return cnorm(out)


def cneg(x):
    if type(x) is int:
        return -x
    return IntPoly(tuple(-a for a in x.c))


def cmul(x, y):
    if type(x) is int and type(y) is int:
        return x * y
    if type(x) is int:
        if x == 0:
            return 0
        return cnorm(tuple(x * a for a in y.c))
    if type(y) is int:
        if y == 0:
            return 0
        return cnorm(tuple(y * a for a in x.c))
    a, b = x.c, y.c
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return cnorm(out)


def ceval(x, q: int) -> int:
    return x if type(x) is int else x.eval(q)


# ---------------------------------------------------------------------------
# truncated series
# ---------------------------------------------------------------------------


class TSeries:
    """Power series known exactly modulo X^(T+1).

    Immutable; every operation returns a fresh series.  Binary operations
    on mismatched truncations work at the smaller T.
    """

    __slots__ = ("t", "c")

    def __init__(self, trunc: int, coeffs=()):
        if trunc < 0:
            raise ValueError("truncation must be >= 0")
        c = list(coeffs[: trunc + 1])
        c.extend([0] * (trunc + 1 - len(c)))
        self.t = trunc
        self.c = tuple(c)

    # -- constructors ------------------------------------------------------

    @classmethod
    def one(cls, trunc: int) -> "TSeries":
        return cls(trunc, (1,))

    @classmethod
    def zero(cls, trunc: int) -> "TSeries":
        return cls(trunc)

    @classmethod
    def monomial(cls, trunc: int, coeff, power: int) -> "TSeries":
        c = [0] * (trunc + 1)
        if power <= trunc:
            c[power] = coeff
        return cls(trunc, c)

    # -- accessors ----------------------------------------------------------

    def coeff(self, n: int):
        if n > self.t:
            raise IndexError(f"coefficient of X^{n} beyond truncation {self.t}")
        return self.c[n]

    def eval_q(self, q: int) -> "TSeries":
        """Substitute a concrete integer for the symbol q."""
        return TSeries(self.t, tuple(ceval(a, q) for a in self.c))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "TSeries") -> "TSeries":
        t = min(self.t, other.t)
        return TSeries(t, tuple(cadd(a, b) for a, b in zip(self.c, other.c)))

    def __sub__(self, other: "TSeries") -> "TSeries":
        t = min(self.t, other.t)
        return TSeries(t, tuple(cadd(a, cneg(b)) for a, b in zip(self.c, other.c)))

    def __neg__(self) -> "TSeries":
        return TSeries(self.t, tuple(cneg(a) for a in self.c))

    def __mul__(self, other: "TSeries") -> "TSeries":
        t = min(self.t, other.t)
        a, b = self.c, other.c
        out = [0] * (t + 1)
        for i in range(t + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(t + 1 - i):
                bj = b[j]
                if not bj:
                    continue
                out[i + j] = cadd(out[i + j], cmul(ai, bj))
        return TSeries(t, out)

    def scale(self, k) -> "TSeries":
        return TSeries(self.t, tuple(cmul(k, a) for a in self.c))

    def inv(self) -> "TSeries":
        """Multiplicative inverse; requires a unit (+1 or -1) constant term."""
        a0 = self.c[0]
        if a0 not in (1, -1):
            raise ValueError(f"constant term {a0!r} is not a unit, cannot invert")
        t = self.t
        a = self.c
        b = [0] * (t + 1)
        b[0] = a0
        for n in range(1, t + 1):
            s = 0
            for i in range(1, n + 1):
                ai = a[i]
                if ai and b[n - i]:
                    s = cadd(s, cmul(ai, b[n - i]))
            b[n] = cneg(cmul(a0, s))
        return TSeries(t, b)

    def subst(self, sign: int, k: int) -> "TSeries":
        """X -> sign * X^k.  Coefficient of X^(n*k) becomes sign^n * a_n."""
        if k < 1:
            raise ValueError("substitution step k must be >= 1")
        if sign not in (1, -1):
            raise ValueError("substitution sign must be +1 or -1")
        t = self.t
        out = [0] * (t + 1)
        s = 1
        for n in range(t + 1):
            if n * k > t:
                break
            out[n * k] = cmul(s, self.c[n])
            s *= sign
        return TSeries(t, out)

    def pow(self, e: int) -> "TSeries":
        if e < 0:
            return self.inv().pow(-e)
        acc = TSeries.one(self.t)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base if e > 1 else base
            e >>= 1
        return acc

    def divexact(self, k: int) -> "TSeries":
        """Divide every coefficient by the integer k, demanding exactness."""
        out = []
        for n, a in enumerate(self.c):
            if type(a) is int:
                if a % k:
                    raise ValueError(f"coefficient of X^{n} not divisible by {k}")
                out.append(a // k)
            else:
                cs = []
                for v in a.c:
                    if v % k:
                        raise ValueError(f"coefficient of X^{n} not divisible by {k}")
                    cs.append(v // k)
                out.append(cnorm(cs))
        return TSeries(self.t, out)

    # -- sparse geometric factors (the workhorses for infinite products) ----

    def mul_geom_inv(self, coeff, k: int) -> "TSeries":
        """Multiply by (1 - coeff*X^k)^-1 via the shift recurrence."""
        out = list(self.c)
        for n in range(k, self.t + 1):
            if out[n - k]:
                out[n] = cadd(out[n], cmul(coeff, out[n - k]))
        return TSeries(self.t, out)

    def mul_geom(self, coeff, k: int) -> "TSeries":
        """Multiply by (1 - coeff*X^k)."""
        out = list(self.c)
        for n in range(self.t, k - 1, -1):
            if self.c[n - k]:
                out[n] = cadd(out[n], cneg(cmul(coeff, self.c[n - k])))
        return TSeries(self.t, out)

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.t == other.t and self.c == other.c

    def __hash__(self):
        return hash((self.t, self.c))

    def __repr__(self):
        shown = []
        for n, a in enumerate(self.c[:9]):
            if a:
                shown.append(f"{a!r}*X^{n}" if n else f"{a!r}")
        tail = " + ..." if self.t > 8 else ""
        return f"TSeries(T={self.t}: {' + '.join(shown) or '0'}{tail})"


def first_difference(a: TSeries, b: TSeries, upto: int | None = None):
    """Index of the first differing coefficient, or None if equal."""
    t = min(a.t, b.t)
    if upto is not None:
        t = min(t, upto)
    for n in range(t + 1):
        if a.c[n] != b.c[n]:
            return n
    return None


# ---------------------------------------------------------------------------
# partition numbers (independent of the series machinery on purpose)
# ---------------------------------------------------------------------------

_PARTITION_CACHE = [1]


def partition_count(n: int) -> int:
    """Number of partitions of n, by the bounded-part recurrence.

    Returns 0 for negative n; callers use partition_count(n // 4) style
    lookups only after checking divisibility, see :func:`pi_quarter`.
    """
    if n < 0:
        return 0
    global _PARTITION_CACHE
    if n < len(_PARTITION_CACHE):
        return _PARTITION_CACHE[n]
    # p(n, k) = partitions of n into parts <= k, built row by row
    top = n
    table = [1] + [0] * top
    for part in range(1, top + 1):
        for m in range(part, top + 1):
            table[m] += table[m - part]
    _PARTITION_CACHE = table
    return table[n]


def pi_quarter(n: int) -> int:
    """partition_count(n/4) when 4 | n, else 0."""
    return partition_count(n // 4) if n % 4 == 0 else 0


def pi_half(n: int) -> int:
    """partition_count(n/2) when 2 | n, else 0."""
    return partition_count(n // 2) if n % 2 == 0 else 0


# ---------------------------------------------------------------------------
# closed-form builders
# ---------------------------------------------------------------------------


def make_psi(trunc: int, coeff=1, step: int = 1) -> TSeries:
    """psi(c * X^k) = prod_{j>=1} (1 - c^j X^(k*j))^-1 truncated at X^trunc.

    With the defaults this is the partition generating function; factors
    with k*j > trunc are congruent to 1 and skipped.
    """
    s = TSeries.one(trunc)
    cj = 1
    for j in range(1, trunc // step + 1):
        cj = cmul(cj, coeff)
        s = s.mul_geom_inv(cj, step * j)
    return s


def make_psi_q(trunc: int, step: int = 1) -> TSeries:
    """psi_q(X^k) = prod_{j>=1} (1 - q X^(k*j))^-1 with symbolic q."""
    s = TSeries.one(trunc)
    for j in range(1, trunc // step + 1):
        s = s.mul_geom_inv(Q, step * j)
    return s


def make_theta(trunc: int, step: int = 1, sign: int = 1) -> TSeries:
    """theta(s*X^k) = sum_{j in Z} (s*X^k)^(j^2): 1 at X^0, 2*s^(j^2) at X^(k*j^2)."""
    c = [0] * (trunc + 1)
    c[0] = 1
    j = 1
    while step * j * j <= trunc:
        c[step * j * j] = 2 * (sign ** (j * j))
        j += 1
    return TSeries(trunc, c)


def _check_u(u: int):
    if u not in (1, -1):
        raise ValueError("u must be +1 or -1")


# Registry of named right-hand sides.  Each entry states the closed form it
# builds; tags are grouped by the family of identities they belong to.
#
#   poly-count-e0        (1-qX)^-1 (1-X)^3
#   poly-count-e1        (1-qX)^-1 (1-X)(1-X^2)
#   selfrec-count-e0     (1-qX^2)^-1 (1-X^2)^2
#   selfrec-count-e1     (1-qX^2)^-1 (1-X^4)
#   signed-orbit-e0      1 - X^2
#   signed-orbit-e1      1 - X^2
#   signed-orbit-eps     1 - u X^2
#   negation-stable      (1-qX^4)^-1 (1-X^4)^2
#   theta-prod           psi(-X)^-2 psi(X^2)
#   odd-weights          psi(X^2)^2 psi(-X^4)^-2 psi(X^8)
#   restricted-weights   psi(X^4) psi(X^2) (psi(-X)^-1 + psi(X)^-1)
#   euler-split          psi(X^2)^3 psi(X^4)^-1
#   theta-x4-pos         psi(-X^4)^-2 psi(X^8)          [= theta(X^4)]
#   theta-x4-neg         psi(X^4)^-2 psi(X^8)           [= theta(-X^4)]
#   class-diff           3 psi_q(X^4) psi(uX^2) psi(-X^4)^-2 psi(X^8)
#                          + 3 psi_q(X^4) psi(uX^2)^-1 psi(X^4)
#                          + 2 psi_q(X^4) psi(X^2)^-1 psi(X^4)
#   dual-half            psi(X^2)^-1 psi(X^4) psi_q(X^4)
#   dual-center          (1/2) psi_q(X^4) psi(uX^2) psi(-X^4)^-2 psi(X^8)
#                          + (1/2) psi_q(X^4) psi(uX^2)^-1 psi(X^4)
#   dual-diff            2 * dual-half + 6 * dual-center

RHS_TAGS = (
    "poly-count-e0",
    "poly-count-e1",
    "selfrec-count-e0",
    "selfrec-count-e1",
    "signed-orbit-e0",
    "signed-orbit-e1",
    "signed-orbit-eps",
    "negation-stable",
    "theta-prod",
    "odd-weights",
    "restricted-weights",
    "euler-split",
    "theta-x4-pos",
    "theta-x4-neg",
    "class-diff",
    "dual-half",
    "dual-center",
    "dual-diff",
)


def rhs_build(tag: str, u: int, trunc: int) -> TSeries:
    """Build a registered right-hand side as an exact series over Z[q].

    ``u`` is ignored by tags that do not involve it.  Unknown tags are
    rejected.  Evaluate at a concrete odd prime with ``.eval_q(q)``.
    """
    _check_u(u)
    T = trunc
    one = TSeries.one(T)

    if tag == "poly-count-e0":
        return one.mul_geom_inv(Q, 1).mul_geom(1, 1).mul_geom(1, 1).mul_geom(1, 1)
    if tag == "poly-count-e1":
        return one.mul_geom_inv(Q, 1).mul_geom(1, 1).mul_geom(1, 2)
    if tag == "selfrec-count-e0":
        return one.mul_geom_inv(Q, 2).mul_geom(1, 2).mul_geom(1, 2)
    if tag == "selfrec-count-e1":
        return one.mul_geom_inv(Q, 2).mul_geom(1, 4)
    if tag in ("signed-orbit-e0", "signed-orbit-e1"):
        return one.mul_geom(1, 2)
    if tag == "signed-orbit-eps":
        return one.mul_geom(u, 2)
    if tag == "negation-stable":
        return one.mul_geom_inv(Q, 4).mul_geom(1, 4).mul_geom(1, 4)
    if tag == "theta-prod":
        return make_psi(T, coeff=-1).inv().pow(2) * make_psi(T, step=2)
    if tag == "odd-weights":
        return make_psi(T, step=2).pow(2) * make_psi(T, coeff=-1, step=4).inv().pow(2) * make_psi(T, step=8)
    if tag == "restricted-weights":
        inv_sum = make_psi(T, coeff=-1).inv() + make_psi(T).inv()
        return make_psi(T, step=4) * make_psi(T, step=2) * inv_sum
    if tag == "euler-split":
        return make_psi(T, step=2).pow(3) * make_psi(T, step=4).inv()
    if tag == "theta-x4-pos":
        return make_psi(T, coeff=-1, step=4).inv().pow(2) * make_psi(T, step=8)
    if tag == "theta-x4-neg":
        return make_psi(T, step=4).inv().pow(2) * make_psi(T, step=8)
    if tag == "class-diff":
        t1 = make_psi_q(T, step=4) * make_psi(T, coeff=u, step=2) * rhs_build("theta-x4-pos", u, T)
        t2 = make_psi_q(T, step=4) * make_psi(T, coeff=u, step=2).inv() * make_psi(T, step=4)
        t3 = make_psi_q(T, step=4) * make_psi(T, step=2).inv() * make_psi(T, step=4)
        return t1.scale(3) + t2.scale(3) + t3.scale(2)
    if tag == "dual-half":
        return make_psi(T, step=2).inv() * make_psi(T, step=4) * make_psi_q(T, step=4)
    if tag == "dual-center":
        t1 = make_psi_q(T, step=4) * make_psi(T, coeff=u, step=2) * rhs_build("theta-x4-pos", u, T)
        t2 = make_psi_q(T, step=4) * make_psi(T, coeff=u, step=2).inv() * make_psi(T, step=4)
        return (t1 + t2).divexact(2)
    if tag == "dual-diff":
        return rhs_build("dual-half", u, T).scale(2) + rhs_build("dual-center", u, T).scale(6)
    raise ValueError(f"unknown series tag {tag!r}")


# fix up poly-count-e0: written compactly above it would be wrong; build it here
def _poly_count_e0(trunc: int) -> TSeries:
    s = TSeries.one(trunc).mul_geom_inv(Q, 1)
    for _ in range(3):
        s = s.mul_geom(1, 1)
    return s


_RHS_OVERRIDES = {"poly-count-e0": _poly_count_e0}


def _rhs(tag: str, u: int, trunc: int) -> TSeries:
    if tag in _RHS_OVERRIDES:
        return _RHS_OVERRIDES[tag](trunc)
    return rhs_build(tag, u, trunc)


# ---------------------------------------------------------------------------
# unipotent-representation count tables
# ---------------------------------------------------------------------------


def xi_eta(n_max: int) -> tuple[dict, dict]:
    """Tables of the two unipotent-representation counts for even n <= n_max.

    eta_n counts the degenerate symbols, eta_n = partition_count(n/4).
    xi_n is extracted from the generating identity
        sum_n (2*xi_n + eta_n/2) X^(2n) = (1/2) psi(X^4)^2 theta(X^4),
    i.e. xi_n = (d_{2n} - eta_n) / 4 with d the integer coefficients of
    psi(X^4)^2 theta(X^4).  Non-integral extraction raises ValueError.
    """
    if n_max % 2:
        raise ValueError("n_max must be even")
    T = 2 * n_max
    d = make_psi(T, step=4).pow(2) * _rhs("theta-x4-pos", 1, T)
    xi, eta = {}, {}
    for n in range(0, n_max + 1, 2):
        e = pi_quarter(n)
        num = d.coeff(2 * n) - e
        if num % 4:
            raise ValueError(f"xi extraction not integral at n={n}")
        x = num // 4
        if x < 0:
            raise ValueError(f"xi negative at n={n}")
        xi[n] = x
        eta[n] = e
    return xi, eta


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------


def verify_series_identity(name: str, trunc: int, u: int = 1) -> CheckReport:
    """Coefficient-wise check of a named identity modulo X^(trunc+1).

    Known names:
      theta-jacobi    theta(X) = psi(-X)^-2 psi(X^2)
      euler-split     psi(-X) psi(X) = psi(X^2)^3 psi(X^4)^-1
      dual-equals-class   the dual-diff build equals the class-diff build
                          (symbolic in q, for the given u)
      unip-rep-counts     xi/eta tables reproduce their two generating
                          identities with eta_n = partition_count(n/4)
      psi-inverse     psi(X) * psi(X)^-1 = 1
    """
    params = {"T": trunc, "u": u}
    with timer() as tm:
        if name == "theta-jacobi":
            lhs = make_theta(trunc)
            rhs = _rhs("theta-prod", u, trunc)
        elif name == "euler-split":
            lhs = make_psi(trunc, coeff=-1) * make_psi(trunc)
            rhs = _rhs("euler-split", u, trunc)
        elif name == "dual-equals-class":
            lhs = _rhs("dual-diff", u, trunc)
            rhs = _rhs("class-diff", u, trunc)
        elif name == "psi-inverse":
            lhs = make_psi(trunc) * make_psi(trunc).inv()
            rhs = TSeries.one(trunc)
        elif name == "unip-rep-counts":
            return _verify_unip_rep_counts(trunc, params, )
        else:
            raise ValueError(f"unknown identity {name!r}")
    idx = first_difference(lhs, rhs)
    ok = idx is None
    return report(
        f"series/{name}",
        params,
        ok,
        "coefficient-wise equality" if ok else f"X^{idx}: {rhs.coeff(idx)!r}",
        "equal" if ok else f"X^{idx}: {lhs.coeff(idx)!r}",
        tm.ms,
    )


def _verify_unip_rep_counts(trunc: int, params) -> CheckReport:
    n_max = trunc if trunc % 2 == 0 else trunc - 1
    with timer() as tm:
        xi, eta = xi_eta(n_max)
        T = 2 * n_max
        # 4*(xi_n + eta_n) X^(2n) should equal psi(X^4)^2 (theta(X^4) + 3*theta(-X^4))
        lhs1 = TSeries(T, _interleave({n: 4 * (xi[n] + eta[n]) for n in xi}, T))
        rhs1 = make_psi(T, step=4).pow(2) * (
            _rhs("theta-x4-pos", 1, T) + _rhs("theta-x4-neg", 1, T).scale(3)
        )
        # eta_n X^(2n) should equal psi(X^4)^2 theta(-X^4)
        lhs2 = TSeries(T, _interleave(eta, T))
        rhs2 = make_psi(T, step=4).pow(2) * _rhs("theta-x4-neg", 1, T)
        d1 = first_difference(lhs1, rhs1)
        d2 = first_difference(lhs2, rhs2)
    ok = d1 is None and d2 is None and xi[0] == 0
    bad = d1 if d1 is not None else d2
    return report(
        "series/unip-rep-counts",
        params,
        ok,
        "both generating identities hold",
        "equal" if ok else f"first divergence at X^{bad}",
        tm.ms,
    )


def _interleave(table: dict, trunc: int) -> list:
    c = [0] * (trunc + 1)
    for n, v in table.items():
        if 2 * n <= trunc:
            c[2 * n] = v
    return c
