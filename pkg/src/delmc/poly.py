"""Multivariate polynomials over any of the coefficient rings.

A ``PolyRing`` implements the same duck interface as the rings in
``delmc.rings`` (add, mul, eq, ...), so every generic routine in the package
can be run with symbolic coordinates: plugging polynomial variables into a
Maurer-Cartan equation yields the defining polynomial system, and identities
between two routes can be certified coefficientwise instead of by sampling.

Elements are dicts mapping exponent tuples to nonzero base-ring elements.
Only constant polynomials are treated as units, which is all the generic
code ever inverts.
"""


class PolyRing:
    kind = "poly"
    is_field = False
    finite = False

    def __init__(self, base, names):
        self.base = base
        self.names = list(names)
        self.g = len(self.names)
        self.char = base.char
        self._zero_expo = (0,) * self.g

    def _norm(self, d):
        return {e: c for e, c in d.items() if not self.base.is_zero(c)}

    def zero(self):
        return {}

    def one(self):
        return {self._zero_expo: self.base.one()}

    def from_int(self, n):
        c = self.base.from_int(n)
        return {} if self.base.is_zero(c) else {self._zero_expo: c}

    def constant(self, c):
        return {} if self.base.is_zero(c) else {self._zero_expo: c}

    def from_fraction(self, q):
        return self.constant(self.base.from_fraction(q))

    def var(self, name):
        i = self.names.index(name)
        e = tuple(1 if j == i else 0 for j in range(self.g))
        return {e: self.base.one()}

    def gen(self, i):
        return self.var(self.names[i])

    def add(self, a, b):
        out = dict(a)
        for e, c in b.items():
            if e in out:
                s = self.base.add(out[e], c)
                if self.base.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return out

    def neg(self, a):
        return {e: self.base.neg(c) for e, c in a.items()}

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = self.base.mul(ca, cb)
                if e in out:
                    s = self.base.add(out[e], c)
                    if self.base.is_zero(s):
                        del out[e]
                    else:
                        out[e] = s
                elif not self.base.is_zero(c):
                    out[e] = c
        return out

    def eq(self, a, b):
        return self._norm(a) == self._norm(b)

    def is_zero(self, a):
        return not self._norm(a)

    def is_unit(self, a):
        a = self._norm(a)
        return len(a) == 1 and self._zero_expo in a and self.base.is_unit(a[self._zero_expo])

    def inv(self, a):
        a = self._norm(a)
        if not self.is_unit(a):
            raise ZeroDivisionError("only constant units are invertible here")
        return {self._zero_expo: self.base.inv(a[self._zero_expo])}

    def evaluate(self, a, point):
        """Evaluate at a tuple of base-ring values, one per variable."""
        total = self.base.zero()
        for e, c in a.items():
            term = c
            for x, k in zip(point, e):
                for _ in range(k):
                    term = self.base.mul(term, x)
            total = self.base.add(total, term)
        return total

    def show(self, a):
        a = self._norm(a)
        if not a:
            return "0"
        parts = []
        for e in sorted(a, key=lambda t: (sum(t), t)):
            vars_part = "*".join(
                self.names[i] if k == 1 else "%s^%d" % (self.names[i], k)
                for i, k in enumerate(e)
                if k
            )
            cs = self.base.show(a[e])
            if not vars_part:
                parts.append(cs)
            elif cs == "1":
                parts.append(vars_part)
            else:
                parts.append("%s*%s" % (cs, vars_part))
        return " + ".join(parts)

    def descriptor(self):
        return {"kind": "poly", "base": self.base.descriptor(), "names": self.names}

    def __repr__(self):
        return "%r[%s]" % (self.base, ", ".join(self.names))
