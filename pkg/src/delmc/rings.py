"""Exact coefficient rings.

Three kinds of ring are supported, all with the same duck interface:

* ``Rationals`` -- elements are ``fractions.Fraction``.
* ``PrimeField(p)`` -- elements are ints in ``range(p)``.
* ``ArtinianLocal(residue, gens, degree_cap)`` -- a local ring presented on a
  finite monomial basis ``k[x_1, ..., x_g]`` modulo ``x_i^{e_i}`` and
  (optionally) all monomials of total degree >= ``degree_cap``.  Elements are
  tuples of residue-field coefficients over the monomial basis.

Every ring object implements ``zero, one, add, neg, sub, mul, eq, is_zero,
from_int, is_unit, inv, show, descriptor`` and, when the carrier is finite,
``elements()``.  Generic algorithms (linear algebra, group enumeration,
Maurer-Cartan loci) only go through this interface, so they run unchanged
over any of the three kinds.
"""

from fractions import Fraction
from itertools import product


class Rationals:
    kind = "rationals"
    is_field = True
    char = 0
    finite = False

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 is not a unit")
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def show(self, a):
        return str(a)

    def descriptor(self):
        return {"kind": "rationals"}

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rationals")


class PrimeField:
    kind = "prime-field"
    is_field = True
    finite = True

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError("p must be prime, got %r" % (p,))
        self.p = p
        self.char = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise ZeroDivisionError("denominator not invertible mod %d" % self.p)
        return (q.numerator * pow(q.denominator, -1, self.p)) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def is_zero(self, a):
        return a % self.p == 0

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("0 is not a unit")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        return list(range(self.p))

    def show(self, a):
        return str(a % self.p)

    def descriptor(self):
        return {"kind": "prime-field", "p": self.p}

    def __repr__(self):
        return "GF(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime-field", self.p))


def _monomial_str(names, expo):
    parts = []
    for name, e in zip(names, expo):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append("%s^%d" % (name, e))
    return "*".join(parts) if parts else "1"


class ArtinianLocal:
    """Local ring k[x_1..x_g] / (x_i^{e_i}, degree >= cap) on a monomial basis.

    The maximal ideal is spanned by the non-constant monomials and is
    nilpotent; the residue field is ``residue``.
    """

    kind = "artinian-local"
    is_field = False

    def __init__(self, residue, gens, degree_cap=None):
        if not gens:
            raise ValueError("use the residue ring directly instead of 0 generators")
        self.residue = residue
        self.char = residue.char
        self.names = [name for name, _ in gens]
        self.powers = [power for _, power in gens]
        if any(p < 1 for p in self.powers):
            raise ValueError("generator powers must be >= 1")
        self.degree_cap = degree_cap
        monos = []
        for expo in product(*[range(p) for p in self.powers]):
            if degree_cap is None or sum(expo) < degree_cap:
                monos.append(expo)
        monos.sort(key=lambda e: (sum(e), e))
        self.monomials = monos
        self.mono_index = {m: i for i, m in enumerate(monos)}
        n = len(monos)
        # mono_mul[i][j] = index of m_i * m_j, or None when the product is 0
        self.mono_mul = [[None] * n for _ in range(n)]
        for i, mi in enumerate(monos):
            for j, mj in enumerate(monos):
                s = tuple(a + b for a, b in zip(mi, mj))
                self.mono_mul[i][j] = self.mono_index.get(s)
        self.dim = n
        self.finite = residue.finite

    # -- basic element algebra (elements are tuples of residue coefficients) --

    def zero(self):
        return (self.residue.zero(),) * self.dim

    def one(self):
        return (self.residue.one(),) + (self.residue.zero(),) * (self.dim - 1)

    def from_int(self, n):
        return (self.residue.from_int(n),) + (self.residue.zero(),) * (self.dim - 1)

    def from_fraction(self, q):
        return (self.residue.from_fraction(q),) + (self.residue.zero(),) * (self.dim - 1)

    def from_coeffs(self, coeffs):
        if len(coeffs) != self.dim:
            raise ValueError("expected %d coefficients" % self.dim)
        return tuple(coeffs)

    def basis_element(self, i):
        return tuple(
            self.residue.one() if j == i else self.residue.zero() for j in range(self.dim)
        )

    def generator(self, name):
        expo = tuple(1 if n == name else 0 for n in self.names)
        if name not in self.names or expo not in self.mono_index:
            raise ValueError("no generator named %r" % (name,))
        return self.basis_element(self.mono_index[expo])

    def add(self, a, b):
        return tuple(self.residue.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.residue.neg(x) for x in a)

    def sub(self, a, b):
        return tuple(self.residue.sub(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        k = self.residue
        out = [k.zero()] * self.dim
        for i, x in enumerate(a):
            if k.is_zero(x):
                continue
            row = self.mono_mul[i]
            for j, y in enumerate(b):
                if k.is_zero(y):
                    continue
                t = row[j]
                if t is not None:
                    out[t] = k.add(out[t], k.mul(x, y))
        return tuple(out)

    def eq(self, a, b):
        return all(self.residue.eq(x, y) for x, y in zip(a, b))

    def is_zero(self, a):
        return all(self.residue.is_zero(x) for x in a)

    def is_unit(self, a):
        return self.residue.is_unit(a[0])

    def inv(self, a):
        # a = u*(1 + n) with u the constant term and n nilpotent:
        # a^{-1} = u^{-1} * (1 - n + n^2 - ...).
        k = self.residue
        u_inv = k.inv(a[0])
        n = tuple(
            k.zero() if i == 0 else k.mul(u_inv, x) for i, x in enumerate(a)
        )  # u^{-1} a - 1
        acc = self.one()
        term = self.one()
        for _ in range(self.nilpotency_exponent()):
            term = self.neg(self.mul(term, n))
            if self.is_zero(term):
                break
            acc = self.add(acc, term)
        return tuple(k.mul(u_inv, x) for x in acc)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- local structure --

    def reduce(self, a):
        """Image in the residue field."""
        return a[0]

    def section(self, c):
        """Coefficientwise section of the residue map."""
        return (c,) + (self.residue.zero(),) * (self.dim - 1)

    def maximal_ideal_indices(self):
        return [i for i, m in enumerate(self.monomials) if sum(m) > 0]

    def nilpotency_exponent(self):
        """Least e with (maximal ideal)^e = 0."""
        top = max(sum(m) for m in self.monomials)
        return top + 1

    def elements(self):
        if not self.residue.finite:
            raise ValueError("carrier is infinite")
        return [tuple(c) for c in product(self.residue.elements(), repeat=self.dim)]

    def units(self):
        return [a for a in self.elements() if self.is_unit(a)]

    def mul_operator_rows(self, a):
        """Matrix of x -> a*x over the monomial basis: rows[i][j] = coeff of
        m_i in a*m_j (entries in the residue field)."""
        k = self.residue
        rows = [[k.zero()] * self.dim for _ in range(self.dim)]
        for i, x in enumerate(a):
            if k.is_zero(x):
                continue
            for j in range(self.dim):
                t = self.mono_mul[i][j]
                if t is not None:
                    rows[t][j] = k.add(rows[t][j], x)
        return rows

    def truncate_degree(self, cap):
        """Quotient ring dropping all monomials of total degree >= cap."""
        return ArtinianLocal(
            self.residue,
            list(zip(self.names, self.powers)),
            degree_cap=cap if self.degree_cap is None else min(cap, self.degree_cap),
        )

    def project_to(self, other):
        """Coefficient projection onto a quotient with fewer monomials."""

        def proj(a):
            return tuple(a[self.mono_index[m]] for m in other.monomials)

        return proj

    def lift_from(self, other):
        """Coefficientwise section of ``project_to(other)``."""
        k = self.residue

        def lift(b):
            coeffs = [k.zero()] * self.dim
            for c, m in zip(b, other.monomials):
                coeffs[self.mono_index[m]] = c
            return tuple(coeffs)

        return lift

    def show(self, a):
        k = self.residue
        parts = []
        for c, m in zip(a, self.monomials):
            if k.is_zero(c):
                continue
            ms = _monomial_str(self.names, m)
            cs = k.show(c)
            if ms == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(ms)
            else:
                parts.append("%s*%s" % (cs, ms))
        return " + ".join(parts) if parts else "0"

    def descriptor(self):
        d = {
            "kind": "artinian-local",
            "residue": self.residue.descriptor(),
            "generators": [
                {"name": n, "power": p} for n, p in zip(self.names, self.powers)
            ],
        }
        if self.degree_cap is not None:
            d["degree_cap"] = self.degree_cap
        return d

    def __repr__(self):
        gens = ", ".join(
            "%s^%d=0" % (n, p) for n, p in zip(self.names, self.powers)
        )
        cap = "" if self.degree_cap is None else ", deg<%d" % self.degree_cap
        return "%r[%s%s]" % (self.residue, gens, cap)

    def __eq__(self, other):
        return (
            isinstance(other, ArtinianLocal)
            and other.residue == self.residue
            and other.names == self.names
            and other.powers == self.powers
            and other.degree_cap == self.degree_cap
        )

    def __hash__(self):
        return hash(
            ("artinian-local", self.residue, tuple(self.names), tuple(self.powers), self.degree_cap)
        )


class SquareZeroExtension:
    """Surjection of coefficient rings A -> B with square-zero kernel.

    Both rings are ``ArtinianLocal`` over the same residue field (or B is the
    residue field itself); the kernel is spanned by the monomials of A that
    are dropped in B, and the constructor checks the square-zero condition.
    """

    def __init__(self, total, base):
        self.total = total
        self.base = base
        if isinstance(base, ArtinianLocal):
            if base.residue != total.residue or base.names != total.names:
                raise ValueError("base must be a monomial quotient of total")
            missing = [m for m in base.monomials if m not in total.mono_index]
            if missing:
                raise ValueError("base has monomials not present in total")
            self.project = total.project_to(base)
            self.section = total.lift_from(base)
            kept = set(base.monomials)
        else:
            if base != total.residue:
                raise ValueError("base must be the residue field or a quotient ring")
            self.project = total.reduce
            self.section = total.section
            kept = {total.monomials[0]}
        self.kernel_indices = [
            i for i, m in enumerate(total.monomials) if m not in kept
        ]
        self.kernel_basis = [total.basis_element(i) for i in self.kernel_indices]
        for i in self.kernel_indices:
            for j in self.kernel_indices:
                if total.mono_mul[i][j] is not None:
                    raise ValueError("kernel is not square-zero")

    def in_kernel(self, a):
        k = self.total.residue
        kernel = set(self.kernel_indices)
        return all(k.is_zero(c) for i, c in enumerate(a) if i not in kernel)

    def kernel_part(self, a):
        k = self.total.residue
        kernel = set(self.kernel_indices)
        return tuple(c if i in kernel else k.zero() for i, c in enumerate(a))


def ring_from_descriptor(desc):
    """Inverse of ``ring.descriptor()``; used by the CLI config parser."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ValueError("coefficient descriptor must be an object with a 'kind'")
    kind = desc["kind"]
    if kind == "rationals":
        _reject_unknown(desc, {"kind"})
        return Rationals()
    if kind == "prime-field":
        _reject_unknown(desc, {"kind", "p"})
        if "p" not in desc:
            raise ValueError("prime-field descriptor needs 'p'")
        return PrimeField(desc["p"])
    if kind == "artinian-local":
        _reject_unknown(desc, {"kind", "residue", "generators", "degree_cap"})
        if "residue" not in desc or "generators" not in desc:
            raise ValueError("artinian-local descriptor needs 'residue' and 'generators'")
        residue = ring_from_descriptor(desc["residue"])
        if isinstance(residue, ArtinianLocal):
            raise ValueError("residue must be a field")
        gens = []
        for g in desc["generators"]:
            _reject_unknown(g, {"name", "power"})
            gens.append((g["name"], g["power"]))
        return ArtinianLocal(residue, gens, degree_cap=desc.get("degree_cap"))
    raise ValueError("unknown coefficient kind %r" % (kind,))


def _reject_unknown(obj, allowed):
    extra = set(obj) - allowed
    if extra:
        raise ValueError("unknown fields %s" % sorted(extra))
