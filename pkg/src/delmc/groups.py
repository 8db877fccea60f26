"""Small finite groups as explicit element lists.

Elements are hashable Python values; the multiplication is a callable.
Inverses are found by scanning once at construction, and ``validate``
checks the group laws exhaustively, so anything that passes through a
``FiniteGroup`` really is one.
"""


class FiniteGroup:
    def __init__(self, elements, mul, identity, name="group"):
        self.members = list(elements)
        self._mul = mul
        self.id = identity
        self.name = name
        if identity not in self.members:
            raise ValueError("identity is not an element")
        self._inv = {}
        for g in self.members:
            for h in self.members:
                if mul(g, h) == identity and mul(h, g) == identity:
                    self._inv[g] = h
                    break
            else:
                raise ValueError("no inverse for %r" % (g,))

    def elements(self):
        return list(self.members)

    def order(self):
        return len(self.members)

    def mul(self, g, h):
        return self._mul(g, h)

    def inv(self, g):
        return self._inv[g]

    def validate(self):
        e = self.id
        mem = set(self.members)
        if len(mem) != len(self.members):
            raise ValueError("duplicate elements")
        for g in self.members:
            if self.mul(e, g) != g or self.mul(g, e) != g:
                raise ValueError("identity law fails at %r" % (g,))
            for h in self.members:
                gh = self.mul(g, h)
                if gh not in mem:
                    raise ValueError("not closed at %r, %r" % (g, h))
                for k in self.members:
                    if self.mul(self.mul(g, h), k) != self.mul(g, self.mul(h, k)):
                        raise ValueError("associativity fails")
        return True


def cyclic(n):
    return FiniteGroup(range(n), lambda a, b: (a + b) % n, 0, name="Z/%d" % n)


def symmetric(n):
    """Permutations of 0..n-1 as tuples; (p * q)(i) = p[q[i]]."""
    from itertools import permutations

    elems = [tuple(p) for p in permutations(range(n))]
    ident = tuple(range(n))

    def mul(p, q):
        return tuple(p[q[i]] for i in range(n))

    return FiniteGroup(elems, mul, ident, name="S%d" % n)


def direct_product(G, H):
    def mul(a, b):
        return (G.mul(a[0], b[0]), H.mul(a[1], b[1]))

    elems = [(g, h) for g in G.members for h in H.members]
    return FiniteGroup(
        elems, mul, (G.id, H.id), name="%s x %s" % (G.name, H.name)
    )
