"""Multi-indices, finite index sets, index maps and slot permutations.

An index set is a finite subset of Z^l held in a canonical order: first
coordinate varies fastest (equivalently, sort by reversed coordinate tuple).
For rectangular sets this order coincides with the mixed-radix linearization
I = i1 + n1*i2 + n1*n2*i3 + ..., which makes the mixed-radix map a plain
reshape under the canonical order.
"""
from __future__ import annotations

from math import isqrt

from .errors import DomainError, ParseError, PermutationDomainError

Point = tuple


def dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def mixed_radix_value(point, dims) -> int:
    value = 0
    stride = 1
    for coord, n in zip(point, dims):
        value += coord * stride
        stride *= n
    return value


def mixed_radix_point(value, dims) -> Point:
    coords = []
    rem = value
    for n in dims:
        coords.append(rem % n)
        rem //= n
    return tuple(coords)


class IndexSet:
    """Finite subset of Z^l, either rectangular or an explicit point list."""

    __slots__ = ("arity", "dims", "points", "_pos")

    def __init__(self, points, dims=None):
        points = tuple(tuple(int(c) for c in p) for p in points)
        if not points:
            raise DomainError("index set must be nonempty")
        arity = len(points[0])
        if arity < 1:
            raise DomainError("index arity must be at least 1")
        if any(len(p) != arity for p in points):
            raise DomainError("all points must share one arity")
        if len(set(points)) != len(points):
            raise DomainError("index set points must be distinct")
        self.arity = arity
        self.dims = tuple(int(n) for n in dims) if dims is not None else None
        self.points = points
        self._pos = {p: i for i, p in enumerate(points)}

    @classmethod
    def rectangular(cls, dims) -> "IndexSet":
        dims = tuple(int(n) for n in dims)
        if not dims or any(n < 1 for n in dims):
            raise DomainError(f"rectangular dims must be positive, got {dims}")
        total = 1
        for n in dims:
            total *= n
        points = [mixed_radix_point(i, dims) for i in range(total)]
        return cls(points, dims)

    @classmethod
    def explicit(cls, points) -> "IndexSet":
        pts = sorted((tuple(int(c) for c in p) for p in points),
                     key=lambda p: tuple(reversed(p)))
        return cls(pts)

    @property
    def is_rectangular(self) -> bool:
        return self.dims is not None

    def position(self, point) -> int:
        try:
            return self._pos[tuple(point)]
        except KeyError:
            raise DomainError(f"point {tuple(point)} is not in the index set") from None

    def __contains__(self, point):
        return tuple(point) in self._pos

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        if not isinstance(other, IndexSet):
            return NotImplemented
        return self.points == other.points

    def __repr__(self):
        if self.is_rectangular:
            return f"IndexSet.rectangular({self.dims})"
        return f"IndexSet.explicit({len(self.points)} points, arity {self.arity})"


class Permutation:
    """Slot permutation in one-line notation over {1, ..., l}.

    ``apply`` realizes the action on multi-indices: the s-th output
    coordinate is the sigma(s)-th input coordinate.
    """

    __slots__ = ("one_line",)

    def __init__(self, one_line):
        one_line = tuple(int(s) for s in one_line)
        if sorted(one_line) != list(range(1, len(one_line) + 1)):
            raise ParseError(f"{one_line} is not a permutation of 1..{len(one_line)}")
        self.one_line = one_line

    @classmethod
    def identity(cls, degree) -> "Permutation":
        return cls(range(1, degree + 1))

    @classmethod
    def reversal(cls, degree) -> "Permutation":
        return cls(range(degree, 0, -1))

    @classmethod
    def from_string(cls, text) -> "Permutation":
        try:
            return cls(int(part) for part in text.split(","))
        except ValueError as exc:
            raise ParseError(f"cannot parse permutation {text!r}: {exc}") from None

    @property
    def degree(self) -> int:
        return len(self.one_line)

    def __call__(self, s: int) -> int:
        return self.one_line[s - 1]

    def apply(self, point) -> Point:
        point = tuple(point)
        if len(point) != self.degree:
            raise DomainError(
                f"permutation of degree {self.degree} applied to arity {len(point)}")
        return tuple(point[s - 1] for s in self.one_line)

    def compose(self, other: "Permutation") -> "Permutation":
        """Plain composition on slots: result(s) = self(other(s))."""
        if self.degree != other.degree:
            raise DomainError("cannot compose permutations of different degrees")
        return Permutation(self.one_line[t - 1] for t in other.one_line)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for s, t in enumerate(self.one_line, start=1):
            inv[t - 1] = s
        return Permutation(inv)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.one_line == other.one_line

    def __hash__(self):
        return hash(self.one_line)

    def __repr__(self):
        return f"Permutation({list(self.one_line)})"


class ClassPartition:
    """Equivalence classes of an index map, ordered by ascending map value."""

    __slots__ = ("values", "classes", "sizes", "class_of_position", "_class_by_point")

    def __init__(self, values, classes, class_of_position):
        self.values = tuple(values)
        self.classes = tuple(tuple(c) for c in classes)
        self.sizes = tuple(len(c) for c in self.classes)
        self.class_of_position = tuple(class_of_position)
        self._class_by_point = {p: ci for ci, cls in enumerate(self.classes) for p in cls}

    def class_of(self, point) -> int:
        try:
            return self._class_by_point[tuple(point)]
        except KeyError:
            raise DomainError(f"point {tuple(point)} is not in the partition") from None

    def __len__(self):
        return len(self.values)


LINEAR = "linear"
MIXED_RADIX = "mixed-radix"
MAX_COORD = "max"
TABLE = "table"
ENUMERATION = "enumeration"
MAP_KINDS = (LINEAR, MIXED_RADIX, MAX_COORD, TABLE, ENUMERATION)


class IndexMap:
    """Integer-valued function on a finite index set, with its class structure."""

    __slots__ = ("kind", "domain", "k", "table", "_part")

    def __init__(self, kind, domain, k=None, table=None):
        if kind not in MAP_KINDS:
            raise ParseError(f"unknown index map kind {kind!r}")
        if kind == MIXED_RADIX and not domain.is_rectangular:
            raise DomainError("mixed-radix map requires a rectangular index set")
        if kind == LINEAR:
            k = tuple(int(c) for c in k)
            if len(k) != domain.arity:
                raise DomainError(
                    f"linear coefficient arity {len(k)} does not match index arity {domain.arity}")
        if kind == TABLE:
            table = {tuple(p): int(v) for p, v in table.items()}
            for p in domain:
                if p not in table:
                    raise DomainError(f"table map is missing point {p}")
        self.kind = kind
        self.domain = domain
        self.k = k
        self.table = table
        self._part = None

    @classmethod
    def linear(cls, domain, k) -> "IndexMap":
        return cls(LINEAR, domain, k=k)

    @classmethod
    def mixed_radix(cls, domain) -> "IndexMap":
        return cls(MIXED_RADIX, domain)

    @classmethod
    def max_coord(cls, domain) -> "IndexMap":
        return cls(MAX_COORD, domain)

    @classmethod
    def from_table(cls, domain, mapping) -> "IndexMap":
        return cls(TABLE, domain, table=dict(mapping))

    @classmethod
    def enumeration(cls, domain) -> "IndexMap":
        return cls(ENUMERATION, domain)

    def value(self, point) -> int:
        point = tuple(point)
        self.domain.position(point)
        if self.kind == LINEAR:
            return dot(self.k, point)
        if self.kind == MIXED_RADIX:
            return mixed_radix_value(point, self.domain.dims)
        if self.kind == MAX_COORD:
            return max(point)
        if self.kind == TABLE:
            return self.table[point]
        return enumerate_z(point)

    def values(self):
        """Map values over the domain in canonical order."""
        return tuple(self.value(p) for p in self.domain)

    def partition(self) -> ClassPartition:
        if self._part is None:
            by_value = {}
            for p in self.domain:
                by_value.setdefault(self.value(p), []).append(p)
            values = sorted(by_value)
            classes = [by_value[v] for v in values]
            cls_index = {v: i for i, v in enumerate(values)}
            class_of_position = [cls_index[self.value(p)] for p in self.domain]
            self._part = ClassPartition(values, classes, class_of_position)
        return self._part

    def is_injective(self) -> bool:
        return len(self.partition()) == len(self.domain)

    def compose(self, sigma: Permutation) -> "IndexMap":
        """The table map p -> F(sigma(p)); requires sigma(A) inside A."""
        if sigma.degree != self.domain.arity:
            raise PermutationDomainError(
                f"permutation degree {sigma.degree} does not match index arity {self.domain.arity}")
        table = {}
        for p in self.domain:
            image = sigma.apply(p)
            if image not in self.domain:
                raise PermutationDomainError(
                    f"permutation sends {p} to {image}, outside the index set")
            table[p] = self.value(image)
        return IndexMap.from_table(self.domain, table)

    def as_table(self) -> "IndexMap":
        return IndexMap.from_table(self.domain, {p: self.value(p) for p in self.domain})

    def pointwise_equal(self, other: "IndexMap") -> bool:
        return self.domain == other.domain and self.values() == other.values()

    def __repr__(self):
        return f"IndexMap({self.kind}, {self.domain!r})"


# Fixed enumeration bijection Z^l -> Z: zigzag each coordinate into N,
# left-fold the coordinates through the Cantor pairing, then map the final
# natural number back into Z with the inverse zigzag.

def _zigzag(n: int) -> int:
    return 2 * n if n >= 0 else -2 * n - 1


def _zigzag_inv(m: int) -> int:
    return m // 2 if m % 2 == 0 else -(m + 1) // 2


def _cantor(x: int, y: int) -> int:
    s = x + y
    return s * (s + 1) // 2 + y


def _cantor_inv(z: int):
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def enumerate_z(point) -> int:
    """Value of the pinned enumeration bijection at a point of Z^l."""
    acc = _zigzag(int(point[0]))
    for coord in point[1:]:
        acc = _cantor(acc, _zigzag(int(coord)))
    return _zigzag_inv(acc)


def enumerate_z_inverse(value: int, arity: int) -> Point:
    """Inverse of :func:`enumerate_z` for the given arity."""
    if arity < 1:
        raise DomainError("arity must be at least 1")
    acc = _zigzag(int(value))
    naturals = []
    for _ in range(arity - 1):
        acc, y = _cantor_inv(acc)
        naturals.append(y)
    naturals.append(acc)
    naturals.reverse()
    return tuple(_zigzag_inv(m) for m in naturals)
