"""Explicit model of GF(p^k): arithmetic, trace, additive characters, polynomials.

Elements are canonical integers in [0, q): the base-p digits of an encoding
are the coordinates in the polynomial basis of the chosen irreducible
modulus.  That encoding gives a total order used for canonical witnesses and
for primitive-element enumeration.  Intended for desk-scale fields
(q up to ~10^4); irreducibility is certified by trial division.
"""

from __future__ import annotations

import cmath
from collections import Counter
from dataclasses import dataclass

from .functable import FunctionTable

TABLE_LIMIT = 2048  # largest q for which dense q x q helper tables may be built


class FieldConstructionError(ValueError):
    """Invalid field parameters (non-prime p, reducible modulus, ...)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power_decomposition(q: int) -> tuple[int, int]:
    """Write q = p^k with p prime, or raise."""
    if q < 2:
        raise FieldConstructionError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise FieldConstructionError(f"{q} is not a prime power")
    p = ps[0]
    k = 0
    while q > 1:
        q //= p
        k += 1
    return p, k


# -- polynomial helpers over F_p (little-endian coefficient lists) ----------

def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        shift = len(a) - 1 - dm
        if lead:
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        a.pop()
        _fp_trim(a)
    return a


def _fp_is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    degree = len(poly) - 1
    if degree < 1 or poly[-1] != 1:
        return False
    if degree == 1:
        return True
    if poly[0] == 0:  # divisible by X
        return False
    for d in range(1, degree // 2 + 1):
        for enc in range(p**d):
            div = _digits_of(enc, p, d) + [1]
            if not _fp_mod(poly, div, p):
                return False
    return True


def _digits_of(e: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(e % p)
        e //= p
    return out


def _encode_digits(digits, p: int) -> int:
    e = 0
    for d in reversed(digits):
        e = e * p + d
    return e


class FieldSpec:
    """Immutable description of GF(p^k) with table-backed arithmetic on
    integer encodings.  Use :func:`field_build` to construct one."""

    def __init__(self, p: int, k: int, modulus=None):
        if not is_prime(p):
            raise FieldConstructionError(f"{p} is not prime")
        if k < 1:
            raise FieldConstructionError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            if modulus is not None:
                raise FieldConstructionError("prime fields take no modulus")
            self.modulus = None
        else:
            if modulus is None:
                modulus = self._canonical_modulus(p, k)
            else:
                modulus = list(modulus)
                if (
                    len(modulus) != k + 1
                    or modulus[-1] != 1
                    or any(not (0 <= c < p) for c in modulus)
                ):
                    raise FieldConstructionError(
                        "modulus must be monic of degree k with coefficients in [0, p)"
                    )
                if not _fp_is_irreducible(modulus, p):
                    raise FieldConstructionError(
                        f"modulus {modulus} is reducible over F_{p}"
                    )
            self.modulus = tuple(modulus)
            # X^j for j in [k, 2k-2], reduced, as digit vectors
            self._xpow = []
            cur = [(-c) % p for c in self.modulus[:-1]]  # X^k
            for _ in range(k - 1):
                self._xpow.append(list(cur))
                cur = [0] + cur  # multiply by X
                lead = cur.pop() if len(cur) > k else 0
                if lead:
                    for i, c in enumerate(self.modulus[:-1]):
                        cur[i] = (cur[i] - lead * c) % p
            self._exp, self._log = self._build_log_tables()
        self._trace_cache = None
        self._add_rows_cache = None
        self._sub_rows_cache = None
        self._trace_mul_cache = None

    @staticmethod
    def _canonical_modulus(p: int, k: int) -> list[int]:
        """Monic irreducible of degree k whose non-leading coefficients, read
        as a little-endian base-p integer, are minimal."""
        for enc in range(p**k):
            cand = _digits_of(enc, p, k) + [1]
            if _fp_is_irreducible(cand, p):
                return cand
        raise FieldConstructionError(f"no irreducible of degree {k} over F_{p}")  # unreachable

    def _raw_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        p, k = self.p, self.k
        da = _digits_of(a, p, k)
        db = _digits_of(b, p, k)
        conv = [0] * (2 * k - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    conv[i + j] = (conv[i + j] + ai * bj) % p
        out = conv[:k]
        for j in range(k, 2 * k - 1):
            cj = conv[j]
            if cj:
                red = self._xpow[j - k]
                for i in range(k):
                    out[i] = (out[i] + cj * red[i]) % p
        return _encode_digits(out, p)

    def _raw_pow(self, x: int, e: int) -> int:
        result = 1
        base = x
        while e:
            if e & 1:
                result = self._raw_mul(result, base)
            base = self._raw_mul(base, base)
            e >>= 1
        return result

    def _build_log_tables(self):
        """Find the least generator of the multiplicative group and tabulate
        its powers; multiplication and inversion then go through logs."""
        q = self.q
        factors = prime_factors(q - 1)
        gen = None
        for x in range(1, q):
            if all(self._raw_pow(x, (q - 1) // ell) != 1 for ell in factors):
                gen = x
                break
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._raw_mul(exp[i - 1], gen)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        return exp, log

    # -- arithmetic on integer encodings ------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        da = _digits_of(a, p, self.k)
        db = _digits_of(b, p, self.k)
        return _encode_digits([(x + y) % p for x, y in zip(da, db)], p)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        return _encode_digits([(-x) % p for x in _digits_of(a, p, self.k)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, x: int, e: int) -> int:
        """Square-and-multiply exponentiation; negative e via the inverse."""
        if e < 0:
            return self.pow(self.inv(x), -e)
        if x == 0:
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(x, e, self.p)
        return self._raw_pow_logged(x, e)

    def _raw_pow_logged(self, x: int, e: int) -> int:
        result = 1
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def trace_int(self, a: int) -> int:
        """Tr(a) = a + a^p + ... + a^(p^(k-1)), as an encoding in [0, p)."""
        if self._trace_cache is None:
            table = []
            for x in range(self.q):
                acc = 0
                y = x
                for _ in range(self.k):
                    acc = self.add(acc, y)
                    y = self.pow(y, self.p)
                table.append(acc)
            for v in table:
                if v >= self.p:
                    raise AssertionError("trace left the prime subfield")
            self._trace_cache = table
        return self._trace_cache[a]

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        order = self.q - 1
        for ell in prime_factors(self.q - 1):
            while order % ell == 0 and self.pow(a, order // ell) == 1:
                order //= ell
        return order

    # -- dense helper tables (classification hot paths) ---------------------

    def _check_table_size(self):
        if self.q > TABLE_LIMIT:
            raise FieldConstructionError(
                f"dense q x q tables disabled for q = {self.q} > {TABLE_LIMIT}"
            )

    def add_rows(self) -> list[list[int]]:
        """add_rows()[a][x] = x + a."""
        if self._add_rows_cache is None:
            self._check_table_size()
            self._add_rows_cache = [
                [self.add(x, a) for x in range(self.q)] for a in range(self.q)
            ]
        return self._add_rows_cache

    def sub_rows(self) -> list[list[int]]:
        """sub_rows()[u][v] = u - v."""
        if self._sub_rows_cache is None:
            self._check_table_size()
            self._sub_rows_cache = [
                [self.sub(u, v) for v in range(self.q)] for u in range(self.q)
            ]
        return self._sub_rows_cache

    def trace_mul_rows(self) -> list[list[int]]:
        """trace_mul_rows()[h][c] = Tr(h*c), encodings in [0, p)."""
        if self._trace_mul_cache is None:
            self._check_table_size()
            self._trace_mul_cache = [
                [self.trace_int(self.mul(h, c)) for c in range(self.q)]
                for h in range(self.q)
            ]
        return self._trace_mul_cache

    # -- element / misc ------------------------------------------------------

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def elements(self):
        return (FieldElement(self, v) for v in range(self.q))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"FieldSpec(p={self.p})"
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"


def field_build(p: int, k: int = 1, modulus=None) -> FieldSpec:
    """Build GF(p^k); picks the canonical modulus when none is supplied."""
    return FieldSpec(p, k, modulus)


def all_irreducible_moduli(p: int, k: int) -> list[tuple[int, ...]]:
    """Every monic irreducible of degree k over F_p, in encoding order."""
    out = []
    for enc in range(p**k):
        cand = _digits_of(enc, p, k) + [1]
        if _fp_is_irreducible(cand, p):
            out.append(tuple(cand))
    return out


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.spec.q:
            raise ValueError(f"encoding {self.value} out of range [0, {self.spec.q})")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError("elements belong to different fields")
            return other.value
        if isinstance(other, int):
            if self.spec.k == 1:
                return other % self.spec.q  # residue semantics in prime fields
            if not 0 <= other < self.spec.q:
                raise ValueError(
                    f"int operand must be an element encoding in [0, {self.spec.q})"
                )
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return FieldElement(self.spec, self.spec.add(self.value, v))

    def __sub__(self, other):
        v = self._coerce(other)
        return FieldElement(self.spec, self.spec.sub(self.value, v))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        return FieldElement(self.spec, self.spec.mul(self.value, v))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.value, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    def trace(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.trace_int(self.value))

    def __int__(self):
        return self.value


def is_primitive(x: FieldElement) -> bool:
    """True iff x generates the multiplicative group."""
    if x.value == 0:
        raise ValueError("0 is not in the multiplicative group")
    spec = x.spec
    q = spec.q
    return all(
        spec.pow(x.value, (q - 1) // ell) != 1 for ell in prime_factors(q - 1)
    )


def primitive_elements(spec: FieldSpec) -> list[FieldElement]:
    return [e for e in spec.elements() if e.value != 0 and is_primitive(e)]


class FieldPoly:
    """Polynomial over a FieldSpec, little-endian coefficient encodings with
    trailing zeros trimmed."""

    def __init__(self, spec: FieldSpec, coeffs):
        self.spec = spec
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.spec != spec:
                    raise ValueError("coefficient from a different field")
                vals.append(c.value)
            else:
                c = int(c)
                if not 0 <= c < spec.q:
                    raise ValueError(f"coefficient encoding {c} out of range")
                vals.append(c)
        while vals and vals[-1] == 0:
            vals.pop()
        self.coeffs = tuple(vals)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __eq__(self, other):
        return (
            isinstance(other, FieldPoly)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __repr__(self):
        return f"FieldPoly({self.spec!r}, {list(self.coeffs)})"

    @classmethod
    def monomial(cls, spec: FieldSpec, degree: int, coeff: int = 1) -> "FieldPoly":
        return cls(spec, [0] * degree + [coeff])


def poly_eval(f: FieldPoly, x) -> FieldElement:
    """Horner evaluation."""
    spec = f.spec
    if isinstance(x, FieldElement):
        if x.spec != spec:
            raise ValueError("point from a different field")
        xv = x.value
    else:
        xv = int(x)
        if spec.k == 1:
            xv %= spec.p
        elif not 0 <= xv < spec.q:
            raise ValueError(f"point encoding {xv} out of range [0, {spec.q})")
    acc = 0
    for c in reversed(f.coeffs):
        acc = spec.add(spec.mul(acc, xv), c)
    return FieldElement(spec, acc)


def poly_values(f: FieldPoly) -> list[int]:
    """Value encodings of f at all q points, in encoding order."""
    spec = f.spec
    out = []
    for x in range(spec.q):
        acc = 0
        for c in reversed(f.coeffs):
            acc = spec.add(spec.mul(acc, x), c)
        out.append(acc)
    return out


def poly_table(f: FieldPoly) -> FunctionTable:
    """FunctionTable of f over the whole field, labels = value encodings."""
    return FunctionTable(f.spec.q, tuple(poly_values(f)))


def reduce_mod_qx(f: FieldPoly) -> FieldPoly:
    """Reduced form of f modulo X^q - X: X^j -> X^((j-1) mod (q-1) + 1)."""
    spec = f.spec
    q = spec.q
    out = [0] * q
    for j, c in enumerate(f.coeffs):
        if c == 0:
            continue
        jr = 0 if j == 0 else (j - 1) % (q - 1) + 1
        out[jr] = spec.add(out[jr], c)
    return FieldPoly(spec, out)


def interpolate(table: FunctionTable, spec: FieldSpec) -> FieldPoly:
    """Unique reduced polynomial with the given value table.

    Uses Lagrange interpolation in the form f = -sum_c y_c * (X^q - X)/(X - c),
    exploiting that the derivative of X^q - X is the constant -1.
    """
    q = spec.q
    if table.domain_size != q:
        raise ValueError(f"table must cover all {q} field elements")
    if any(v >= q for v in table.values):
        raise ValueError("table labels must be field-element encodings")
    coeffs = [0] * q
    minus_one = spec.neg(1)
    for c, y in enumerate(table.values):
        if y == 0:
            continue
        # synthetic division of X^q - X by (X - c), highest coefficient first
        scale = spec.mul(minus_one, y)
        b = 1
        coeffs[q - 1] = spec.add(coeffs[q - 1], scale)
        for j in range(q - 2, 0, -1):
            b = spec.mul(c, b)
            coeffs[j] = spec.add(coeffs[j], spec.mul(scale, b))
        b = spec.add(spec.mul(c, b), minus_one)  # absorbs the -X term
        coeffs[0] = spec.add(coeffs[0], spec.mul(scale, b))
    return FieldPoly(spec, coeffs)


@dataclass(frozen=True)
class CharacterCountVector:
    """Pair counts of trace values: d[j] = #{(x,y) : Tr(h (f(x)-f(y))) = j}."""

    spec: FieldSpec
    h: int
    d: tuple[int, ...]

    def __post_init__(self):
        if sum(self.d) != self.spec.q**2:
            raise ValueError("count vector must cover all q^2 pairs")


def _difference_weights(spec: FieldSpec, values) -> list[int]:
    """w[c] = number of ordered pairs (x, y) with f(x) - f(y) = c."""
    q = spec.q
    counts = Counter(values)
    w = [0] * q
    items = list(counts.items())
    for v1, m1 in items:
        for v2, m2 in items:
            w[spec.sub(v1, v2)] += m1 * m2
    return w


def char_count_vector_from_values(spec: FieldSpec, values, h: int) -> CharacterCountVector:
    if h == 0:
        raise ValueError("the trivial character carries no information; h must be nonzero")
    w = _difference_weights(spec, values)
    d = [0] * spec.p
    for c, wc in enumerate(w):
        if wc:
            d[spec.trace_int(spec.mul(h, c))] += wc
    return CharacterCountVector(spec, h, tuple(d))


def char_count_vector(f: FieldPoly, h) -> CharacterCountVector:
    """Count vector of f for the additive character indexed by h != 0."""
    hv = h.value if isinstance(h, FieldElement) else int(h)
    return char_count_vector_from_values(f.spec, poly_values(f), hv)


def char_sum_sq_is_q(v: CharacterCountVector) -> bool:
    """Exact test of |S_h(f)|^2 == q over the integers.

    The squared magnitude is sum_j d[j] w^j with w a primitive p-th root of
    unity; since the minimal polynomial of w is 1 + X + ... + X^(p-1), the sum
    equals q iff d[0] - q = d[1] = ... = d[p-1].
    """
    head = v.d[0] - v.spec.q
    return all(dj == head for dj in v.d[1:])


def char_sum_abs_float(f: FieldPoly, h) -> float:
    """|sum_x w^Tr(h f(x))| in floating point; diagnostic companion of the
    exact test (h = 0 gives exactly q)."""
    spec = f.spec
    hv = h.value if isinstance(h, FieldElement) else int(h)
    omega = cmath.exp(2j * cmath.pi / spec.p)
    total = 0j
    for value in poly_values(f):
        total += omega ** spec.trace_int(spec.mul(hv, value))
    return abs(total)
