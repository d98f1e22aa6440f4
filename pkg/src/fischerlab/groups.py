"""Concrete finite-group engine: permutations, matrices over small prime fields,
and breadth-first closure enumeration.

Composition convention (fixed globally): ``a * b`` means "apply b first, then a".
Conjugation is written ``conjugate(x, g) == g^-1 * x * g``.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
from pathlib import Path

DEFAULT_MAX_ORDER = 2_000_000
DEFAULT_ORDER_CAP = 512


class GroupError(Exception):
    pass


class StructuralError(GroupError):
    """Incompatible or malformed group elements (degree/modulus mismatch)."""


class OrderOverflowError(GroupError):
    def __init__(self, cap):
        super().__init__(f"element order exceeds cap {cap}")
        self.cap = cap


class EnumerationCapError(GroupError):
    def __init__(self, cap, reached):
        super().__init__(f"closure exceeded cap {cap} (reached {reached} elements)")
        self.cap = cap
        self.reached = reached


class Permutation:
    """A permutation of {0, ..., n-1} stored by its image array."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise StructuralError(f"not a bijection on 0..{len(images) - 1}: {images}")
        self.images = images

    @classmethod
    def _raw(cls, images):
        p = object.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, degree):
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree, cycles):
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(images)

    @property
    def degree(self):
        return len(self.images)

    @property
    def key(self):
        return self.images

    def peer(self, key):
        """Element of the same carrier rebuilt from a canonical key."""
        return Permutation._raw(key)

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        a, b = self.images, other.images
        if len(a) != len(b):
            raise StructuralError(f"degree mismatch: {len(a)} vs {len(b)}")
        return Permutation._raw(tuple(map(a.__getitem__, b)))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def order(self, cap=DEFAULT_ORDER_CAP):
        seen = [False] * len(self.images)
        result = 1
        for start in range(len(self.images)):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            result = math.lcm(result, length)
        if result > cap:
            raise OrderOverflowError(cap)
        return result

    def key_mul(self):
        return _perm_key_mul

    def identity_key(self):
        return tuple(range(len(self.images)))

    def cycles(self):
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "Permutation(id)"
        return "Permutation(" + "".join(str(c) for c in cyc) + ")"


def _perm_key_mul(a, b):
    return tuple(map(a.__getitem__, b))


def _row_decode(row, p, dim):
    out = []
    for _ in range(dim):
        out.append(row % p)
        row //= p
    return out


def _row_encode(digits, p):
    row = 0
    for d in reversed(digits):
        row = row * p + d
    return row


class FpMatrix:
    """Square matrix over F_p (p = 2 or 3), a group element when invertible.

    Acts on column vectors, so ``(a * b) v == a (b v)``: right factor first.
    Rows are stored base-p packed (column 0 is the least significant digit).
    """

    __slots__ = ("p", "dim", "rows")

    def __init__(self, p, dim, rows):
        rows = tuple(rows)
        if len(rows) != dim or any(r < 0 or r >= p**dim for r in rows):
            raise StructuralError(f"bad row data for F_{p}^{dim} matrix")
        self.p = p
        self.dim = dim
        self.rows = rows

    @classmethod
    def _raw(cls, p, dim, rows):
        m = object.__new__(cls)
        m.p = p
        m.dim = dim
        m.rows = rows
        return m

    @classmethod
    def from_entries(cls, p, dim, entries):
        entries = list(entries)
        if len(entries) != dim * dim:
            raise StructuralError(f"expected {dim * dim} entries, got {len(entries)}")
        if any(e < 0 or e >= p for e in entries):
            raise StructuralError("entries must be residues in [0, p)")
        rows = tuple(
            _row_encode(entries[i * dim : (i + 1) * dim], p) for i in range(dim)
        )
        return cls._raw(p, dim, rows)

    @classmethod
    def identity(cls, p, dim):
        return cls._raw(p, dim, tuple(p**i for i in range(dim)))

    @property
    def entries(self):
        out = []
        for r in self.rows:
            out.extend(_row_decode(r, self.p, self.dim))
        return tuple(out)

    @property
    def key(self):
        return self.rows

    def peer(self, key):
        return FpMatrix._raw(self.p, self.dim, key)

    def __mul__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        if self.p != other.p or self.dim != other.dim:
            raise StructuralError("modulus/dimension mismatch")
        p, dim = self.p, self.dim
        cols = list(zip(*(_row_decode(r, p, dim) for r in other.rows)))
        rows = []
        for r in self.rows:
            vec = _row_decode(r, p, dim)
            rows.append(
                _row_encode(
                    [sum(x * c for x, c in zip(vec, col)) % p for col in cols], p
                )
            )
        return FpMatrix._raw(p, dim, tuple(rows))

    def key_mul(self):
        p, dim = self.p, self.dim
        size = p**dim
        cache = {}

        def mul(a, b):
            table = cache.get(b)
            if table is None:
                cols = [
                    list(col) for col in zip(*(_row_decode(r, p, dim) for r in b))
                ]
                table = [0] * size
                for val in range(size):
                    vec = _row_decode(val, p, dim)
                    table[val] = _row_encode(
                        [sum(x * c for x, c in zip(vec, col)) % p for col in cols], p
                    )
                cache[b] = table
            return tuple(table[r] for r in a)

        return mul

    def identity_key(self):
        return tuple(self.p**i for i in range(self.dim))

    def is_identity(self):
        return self.rows == self.identity_key()

    def inverse(self):
        p, dim = self.p, self.dim
        aug = [
            _row_decode(r, p, dim) + [1 if j == i else 0 for j in range(dim)]
            for i, r in enumerate(self.rows)
        ]
        for col in range(dim):
            piv = next((r for r in range(col, dim) if aug[r][col]), None)
            if piv is None:
                raise StructuralError("matrix not invertible")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = pow(aug[col][col], -1, p)
            aug[col] = [x * inv % p for x in aug[col]]
            for r in range(dim):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
        rows = tuple(_row_encode(row[dim:], p) for row in aug)
        return FpMatrix._raw(p, dim, rows)

    def order(self, cap=DEFAULT_ORDER_CAP):
        acc = self
        for k in range(1, cap + 1):
            if acc.is_identity():
                return k
            acc = acc * self
        raise OrderOverflowError(cap)

    def __eq__(self, other):
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.dim == other.dim
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.p, self.rows))

    def __repr__(self):
        return f"FpMatrix(p={self.p}, dim={self.dim}, entries={self.entries})"


def compose(a, b):
    """Product a*b: apply b first, then a."""
    out = a * b
    if out is NotImplemented:
        raise StructuralError(f"cannot compose {type(a).__name__} with {type(b).__name__}")
    return out


def conjugate(x, g):
    """x^g = g^-1 x g."""
    return g.inverse() * x * g


def element_order(g, cap=DEFAULT_ORDER_CAP):
    return g.order(cap)


def _check_compatible(elements):
    if not elements:
        raise StructuralError("need at least one element")
    first = elements[0]
    for e in elements[1:]:
        if type(e) is not type(first):
            raise StructuralError("mixed element kinds")
        if isinstance(first, Permutation):
            if e.degree != first.degree:
                raise StructuralError("degree mismatch among elements")
        else:
            if e.p != first.p or e.dim != first.dim:
                raise StructuralError("modulus/dimension mismatch among elements")
    return first


class GeneratedGroup:
    """A fully enumerated group: deterministic element order (BFS layer, then
    canonical key order within a layer)."""

    def __init__(self, generators, element_keys):
        self.generators = list(generators)
        self.element_keys = list(element_keys)
        self._template = self.generators[0]
        self._index = None

    @property
    def order(self):
        return len(self.element_keys)

    def elements(self):
        peer = self._template.peer
        for k in self.element_keys:
            yield peer(k)

    def element(self, key):
        return self._template.peer(key)

    def index(self, key):
        if self._index is None:
            self._index = {k: i for i, k in enumerate(self.element_keys)}
        return self._index[key]

    def __contains__(self, item):
        if self._index is None:
            self._index = {k: i for i, k in enumerate(self.element_keys)}
        key = item.key if hasattr(item, "key") else item
        return key in self._index

    def __len__(self):
        return len(self.element_keys)


def _carrier_descriptor(template):
    if isinstance(template, Permutation):
        return {"kind": "permutation", "degree": template.degree}
    return {"kind": "fpmatrix", "p": template.p, "dim": template.dim}


def _cache_path(cache_dir, template, gen_keys):
    desc = _carrier_descriptor(template)
    desc["format"] = 1
    desc["generators"] = sorted([list(k) for k in gen_keys])
    blob = json.dumps(desc, sort_keys=True, separators=(",", ":")).encode()
    digest = hashlib.sha256(blob).hexdigest()
    return Path(cache_dir) / f"group-{digest}.json"


def generate(generators, max_order=DEFAULT_MAX_ORDER, cache_dir=None):
    """Breadth-first closure of the generators under multiplication.

    Set ``cache_dir`` (or the FISCHER_LAB_CACHE_DIR environment variable) to
    cache element lists on disk, keyed by a content hash of the generators.
    """
    template = _check_compatible(generators)
    if isinstance(template, FpMatrix):
        for g in generators:
            g.inverse()  # raises if singular
    gen_keys = sorted({g.key for g in generators})

    if cache_dir is None:
        cache_dir = os.environ.get("FISCHER_LAB_CACHE_DIR") or None
    cache_file = None
    if cache_dir:
        cache_file = _cache_path(cache_dir, template, gen_keys)
        if cache_file.exists():
            data = json.loads(cache_file.read_text())
            keys = [tuple(k) for k in data["elements"]]
            if len(keys) > max_order:
                raise EnumerationCapError(max_order, len(keys))
            return GeneratedGroup(generators, keys)

    mul = template.key_mul()
    id_key = template.identity_key()
    seen = {id_key}
    elements = [id_key]
    frontier = [id_key]
    while frontier:
        new = []
        for a in frontier:
            for g in gen_keys:
                k = mul(a, g)
                if k not in seen:
                    seen.add(k)
                    new.append(k)
            if len(seen) > max_order:
                raise EnumerationCapError(max_order, len(seen))
        new.sort()
        elements.extend(new)
        frontier = new

    if cache_file is not None:
        cache_file.parent.mkdir(parents=True, exist_ok=True)
        payload = _carrier_descriptor(template)
        payload["format"] = 1
        payload["order"] = len(elements)
        payload["elements"] = [list(k) for k in elements]
        tmp = cache_file.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, separators=(",", ":")))
        tmp.replace(cache_file)

    return GeneratedGroup(generators, elements)


def conjugacy_closure(seed, group_gens, cap=100_000):
    """Smallest set containing the seed involutions and closed under
    conjugation by the given generators, in canonical key order."""
    template = _check_compatible(list(seed) + list(group_gens))
    for s in seed:
        if s.order(2) != 2:
            raise StructuralError(f"seed element is not an involution: {s!r}")
    mul = template.key_mul()
    conj_pairs = [(g.inverse().key, g.key) for g in group_gens]
    seen = {s.key for s in seed}
    frontier = sorted(seen)
    out = list(frontier)
    while frontier:
        new = []
        for x in frontier:
            for ginv, g in conj_pairs:
                k = mul(mul(ginv, x), g)
                if k not in seen:
                    seen.add(k)
                    new.append(k)
            if len(seen) > cap:
                raise EnumerationCapError(cap, len(seen))
        new.sort()
        out.extend(new)
        frontier = new
    out.sort()
    return [template.peer(k) for k in out]


def center(group):
    """Elements commuting with every generator of an enumerated group."""
    template = group._template
    gen_keys = sorted({g.key for g in group.generators})
    if isinstance(template, FpMatrix):
        out = _matrix_center(template, gen_keys, group.element_keys)
    else:
        mul = template.key_mul()
        out = [
            k
            for k in group.element_keys
            if all(mul(k, g) == mul(g, k) for g in gen_keys)
        ]
    return [template.peer(k) for k in out]


def _matrix_center(template, gen_keys, element_keys):
    # Row-by-row comparison of k*g against g*k with early exit; the k*g side
    # uses the cached row table of g, the g*k side is computed on demand.
    p, dim = template.p, template.dim
    mul = template.key_mul()
    gens = [(g, [_row_decode(r, p, dim) for r in g]) for g in gen_keys]
    out = []
    for k in element_keys:
        cols = None
        ok = True
        for g, g_digits in gens:
            left = mul(k, g)
            if cols is None:
                cols = list(zip(*(_row_decode(r, p, dim) for r in k)))
            for i in range(dim):
                right_row = _row_encode(
                    [sum(x * c for x, c in zip(g_digits[i], col)) % p for col in cols],
                    p,
                )
                if right_row != left[i]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(k)
    return out
