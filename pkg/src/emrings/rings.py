"""Finite commutative rings with identity, represented by operation tables.

Elements are opaque ids ``0..order-1`` indexing the addition and
multiplication tables.  Id 0 is the ring's zero for every ring built by this
package (externally supplied rings may place zero elsewhere).  All derived
sets (zero divisors, units, annihilators, ideals) are computed exhaustively
from the tables, so every decider downstream has a single code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

# Full O(N^3) associativity/distributivity checking is kept below this order;
# larger rings get an exhaustive O(N^2) check of the remaining axioms plus a
# seeded sample of triples (see validate_ring).
EXHAUSTIVE_AXIOM_LIMIT = 600
SAMPLED_TRIPLES = 40_000


class RingAxiomError(ValueError):
    """A ring axiom failed; carries the axiom name and a witnessing triple."""

    def __init__(self, axiom: str, witness: tuple[int, ...]):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"ring axiom violated: {axiom}, witness {witness}")


class InternalInvariantError(AssertionError):
    """An invariant the library guarantees internally did not hold."""


def _table_dtype(order: int):
    return np.uint16 if order <= 0xFFFF else np.uint32


class FiniteRing:
    """A finite commutative ring with one, defined by N x N operation tables.

    Attributes:
        order: number of elements N.
        add_table, mul_table: (N, N) integer arrays of element ids.
        zero, one: ids of the additive and multiplicative identities.
        labels: optional display strings, one per element.
        provenance: JSON-able record of how the ring was constructed.
    """

    def __init__(
        self,
        add_table,
        mul_table,
        zero: int,
        one: int,
        labels: Optional[Sequence[str]] = None,
        provenance: Optional[dict] = None,
    ):
        add = np.asarray(add_table)
        mul = np.asarray(mul_table)
        n = add.shape[0]
        dt = _table_dtype(n)
        self.order = int(n)
        self.add_table = np.ascontiguousarray(add, dtype=dt)
        self.mul_table = np.ascontiguousarray(mul, dtype=dt)
        self.zero = int(zero)
        self.one = int(one)
        self.labels = list(labels) if labels is not None else None
        self.provenance = provenance
        self.aux: dict = {}
        self._cache: dict = {}

    # -- element-level operations ------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    @property
    def neg_table(self) -> np.ndarray:
        neg = self._cache.get("neg")
        if neg is None:
            pairs = np.argwhere(self.add_table == self.zero)
            neg = np.empty(self.order, dtype=self.add_table.dtype)
            neg[pairs[:, 0]] = pairs[:, 1]
            self._cache["neg"] = neg
        return neg

    def elements(self) -> range:
        return range(self.order)

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def __repr__(self) -> str:
        kind = (self.provenance or {}).get("kind", "table")
        return f"FiniteRing(order={self.order}, kind={kind!r})"

    # -- interchange format --------------------------------------------------

    def to_dict(self) -> dict:
        doc = {
            "order": self.order,
            "add": self.add_table.tolist(),
            "mul": self.mul_table.tolist(),
            "zero": self.zero,
            "one": self.one,
        }
        if self.labels is not None:
            doc["labels"] = list(self.labels)
        return doc

    @classmethod
    def from_dict(cls, doc: Mapping) -> "FiniteRing":
        ring = cls(
            doc["add"],
            doc["mul"],
            doc["zero"],
            doc["one"],
            labels=doc.get("labels"),
        )
        return validate_ring(ring)


@dataclass(frozen=True)
class ElementSet:
    """A canonical (sorted, duplicate-free) set of element ids of one ring."""

    ring: FiniteRing = field(repr=False)
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(int(e) for e in self.elements)))
        if elems and not (0 <= elems[0] and elems[-1] < self.ring.order):
            raise ValueError(f"element id out of range for order {self.ring.order}")
        object.__setattr__(self, "elements", elems)

    def __contains__(self, e: int) -> bool:
        return e in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def labels(self) -> list[str]:
        return [self.ring.label(e) for e in self.elements]


@dataclass(frozen=True)
class Ideal(ElementSet):
    """An ideal given by its full element list plus a generating set."""

    generators: tuple[int, ...] = ()

    def validate(self) -> None:
        """Re-check the ideal axioms exhaustively (used by property tests)."""
        ring = self.ring
        ids = np.fromiter(self.elements, dtype=np.int64)
        mask = np.zeros(ring.order, dtype=bool)
        mask[ids] = True
        if not mask[ring.zero]:
            raise InternalInvariantError("ideal does not contain zero")
        if not mask[ring.add_table[np.ix_(ids, ids)]].all():
            raise InternalInvariantError("ideal not closed under addition")
        if not mask[ring.mul_table[ids, :]].all():
            raise InternalInvariantError("ideal not closed under ring multiplication")
        closure = ideal_generated(ring, self.generators)
        if closure.elements != self.elements:
            raise InternalInvariantError("ideal is not the closure of its generators")


# -- validation ---------------------------------------------------------------


def _first_bad(ok: np.ndarray) -> tuple[int, ...]:
    # argwhere returns row-major order, so the first row is the smallest witness
    return tuple(int(x) for x in np.argwhere(~ok)[0])


def validate_ring(candidate, exhaustive: Optional[bool] = None) -> FiniteRing:
    """Check every ring axiom on a FiniteRing or an interchange mapping.

    Associativity and distributivity are O(N^3); above
    ``EXHAUSTIVE_AXIOM_LIMIT`` they are checked on a deterministic sample of
    triples unless ``exhaustive=True`` forces the full scan.  All O(N^2)
    axioms (commutativity, identities, inverses, zero absorption) are always
    checked in full.  Raises :class:`RingAxiomError` naming the first violated
    axiom with a witnessing pair or triple.
    """
    if isinstance(candidate, Mapping):
        ring = FiniteRing(
            candidate["add"],
            candidate["mul"],
            candidate["zero"],
            candidate["one"],
            labels=candidate.get("labels"),
        )
    else:
        ring = candidate
    n = ring.order
    add, mul = ring.add_table, ring.mul_table
    zero, one = ring.zero, ring.one
    if add.shape != (n, n) or mul.shape != (n, n):
        raise ValueError(f"tables must be {n}x{n}")
    if int(add.max(initial=0)) >= n or int(mul.max(initial=0)) >= n:
        raise ValueError("table entry out of range")
    if not (0 <= zero < n and 0 <= one < n):
        raise ValueError("zero/one id out of range")
    if ring.labels is not None and len(ring.labels) != n:
        raise ValueError("labels length does not match order")

    idx = np.arange(n)
    ok = add == add.T
    if not ok.all():
        raise RingAxiomError("add-commutativity", _first_bad(ok))
    ok = add[zero] == idx
    if not ok.all():
        raise RingAxiomError("add-identity", _first_bad(ok))
    ok = (add == zero).any(axis=1)
    if not ok.all():
        raise RingAxiomError("add-inverse", _first_bad(ok))
    ok = mul == mul.T
    if not ok.all():
        raise RingAxiomError("mul-commutativity", _first_bad(ok))
    ok = mul[one] == idx
    if not ok.all():
        raise RingAxiomError("mul-identity", _first_bad(ok))
    ok = mul[zero] == zero
    if not ok.all():
        raise RingAxiomError("zero-absorption", _first_bad(ok))

    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_AXIOM_LIMIT
    if exhaustive:
        for a in range(n):
            ok = add[add[a], :] == add[a][add]
            if not ok.all():
                b, c = _first_bad(ok)
                raise RingAxiomError("add-associativity", (a, b, c))
            ok = mul[mul[a], :] == mul[a][mul]
            if not ok.all():
                b, c = _first_bad(ok)
                raise RingAxiomError("mul-associativity", (a, b, c))
            ok = mul[a][add] == add[np.ix_(mul[a], mul[a])]
            if not ok.all():
                b, c = _first_bad(ok)
                raise RingAxiomError("distributivity", (a, b, c))
    else:
        rng = np.random.default_rng(n)
        trips = rng.integers(0, n, size=(SAMPLED_TRIPLES, 3))
        a, b, c = trips[:, 0], trips[:, 1], trips[:, 2]
        ok = add[add[a, b], c] == add[a, add[b, c]]
        if not ok.all():
            i = int(np.nonzero(~ok)[0][0])
            raise RingAxiomError("add-associativity", (int(a[i]), int(b[i]), int(c[i])))
        ok = mul[mul[a, b], c] == mul[a, mul[b, c]]
        if not ok.all():
            i = int(np.nonzero(~ok)[0][0])
            raise RingAxiomError("mul-associativity", (int(a[i]), int(b[i]), int(c[i])))
        ok = mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]
        if not ok.all():
            i = int(np.nonzero(~ok)[0][0])
            raise RingAxiomError("distributivity", (int(a[i]), int(b[i]), int(c[i])))
    return ring


# -- derived element sets -----------------------------------------------------


def _zero_divisor_mask(ring: FiniteRing) -> np.ndarray:
    mask = ring._cache.get("zd_mask")
    if mask is None:
        hits = ring.mul_table == ring.zero
        hits[:, ring.zero] = False
        mask = hits.any(axis=1)
        ring._cache["zd_mask"] = mask
    return mask


def zero_divisors(ring: FiniteRing) -> ElementSet:
    """All r with r*s = 0 for some s != 0.  Contains 0 whenever order > 1."""
    return ElementSet(ring, np.nonzero(_zero_divisor_mask(ring))[0])


def regular_elements(ring: FiniteRing) -> ElementSet:
    return ElementSet(ring, np.nonzero(~_zero_divisor_mask(ring))[0])


def units(ring: FiniteRing) -> ElementSet:
    mask = ring._cache.get("unit_mask")
    if mask is None:
        mask = (ring.mul_table == ring.one).any(axis=1)
        ring._cache["unit_mask"] = mask
        # in a finite commutative ring the units are exactly the regular elements
        if (mask == _zero_divisor_mask(ring)).any():
            raise InternalInvariantError("units != regular elements")
    return ElementSet(ring, np.nonzero(mask)[0])


def idempotents(ring: FiniteRing) -> ElementSet:
    diag = ring.mul_table.diagonal()
    return ElementSet(ring, np.nonzero(diag == np.arange(ring.order))[0])


def annihilator(ring: FiniteRing, subset: Iterable[int]) -> Ideal:
    """Ann(S) = all t with t*s = 0 for every s in S.  Ann({}) is the ring."""
    ids = sorted(set(int(s) for s in subset))
    if not ids:
        all_elems = tuple(range(ring.order))
        return Ideal(ring, all_elems, generators=(ring.one,))
    members = tuple(int(t) for t in np.nonzero(annihilator_mask(ring, ids))[0])
    return Ideal(ring, members, generators=members)


def annihilator_mask(ring: FiniteRing, subset: Iterable[int]) -> np.ndarray:
    """Boolean mask form of :func:`annihilator` (no Ideal wrapper).

    Reads table rows rather than columns (multiplication is commutative), so
    the gathers stay contiguous; narrows in chunks and stops once only 0 is
    left.
    """
    ids = [int(s) for s in subset]
    if not ids:
        return np.ones(ring.order, dtype=bool)
    mask = np.ones(ring.order, dtype=bool)
    for start in range(0, len(ids), 32):
        chunk = ids[start : start + 32]
        mask &= (ring.mul_table[chunk, :] == ring.zero).all(axis=0)
        if int(mask.sum()) == 1:
            break
    return mask


def divisor_solutions(ring: FiniteRing, c: int, a: int) -> ElementSet:
    """All b with c*b = a; empty or a coset of Ann(c)."""
    sols = np.nonzero(ring.mul_table[c] == a)[0]
    if len(sols):
        n_ann = int((ring.mul_table[c] == ring.zero).sum())
        if len(sols) != n_ann:
            raise InternalInvariantError("solution set is not a coset of Ann(c)")
    return ElementSet(ring, sols)


def additive_span(ring: FiniteRing, elems: Iterable[int]) -> np.ndarray:
    """Smallest additive subgroup containing ``elems``, as a sorted id array."""
    span = np.unique(np.fromiter(set(elems) | {ring.zero}, dtype=np.int64))
    while True:
        bigger = np.unique(ring.add_table[np.ix_(span, span)])
        if bigger.size == span.size:
            return span
        span = bigger


def ideal_generated(ring: FiniteRing, gens: Iterable[int]) -> Ideal:
    """Closure of ``gens`` under addition and ambient multiplication."""
    gen_ids = tuple(sorted(set(int(g) for g in gens)))
    if not gen_ids:
        return Ideal(ring, (ring.zero,), generators=())
    # <g1..gk> = additive span of R*g1 u ... u R*gk  (each R*g is a subgroup)
    multiples = np.unique(ring.mul_table[list(gen_ids), :])
    span = additive_span(ring, multiples)
    return Ideal(ring, tuple(int(x) for x in span), generators=gen_ids)


def is_principal(ring: FiniteRing, ideal: Ideal) -> Optional[int]:
    """Smallest p with <p> equal to the ideal, or None."""
    target = np.fromiter(ideal.elements, dtype=np.int64)
    for p in ideal.elements:
        if np.array_equal(np.unique(ring.mul_table[p]), target):
            return int(p)
    return None


# -- subrings and isomorphisms ------------------------------------------------


def subring(ring: FiniteRing, elems: Iterable[int]) -> tuple[FiniteRing, list[int]]:
    """Extract the subring on ``elems`` (must contain 0, 1 and be closed).

    Returns the re-indexed ring and the embedding list (new id -> old id).
    The new ring keeps id 0 = zero by sorting, since ambient id 0 is zero in
    construction-convention rings; for foreign rings zero lands wherever the
    sort puts it and the explicit zero/one fields track it.
    """
    old = sorted(set(int(e) for e in elems))
    pos = {o: i for i, o in enumerate(old)}
    if ring.zero not in pos or ring.one not in pos:
        raise ValueError("subring must contain zero and one")
    ids = np.fromiter(old, dtype=np.int64)
    sub_add = ring.add_table[np.ix_(ids, ids)]
    sub_mul = ring.mul_table[np.ix_(ids, ids)]
    for table, opname in ((sub_add, "addition"), (sub_mul, "multiplication")):
        if not np.isin(table, ids).all():
            raise ValueError(f"subset not closed under {opname}")
    remap = np.zeros(ring.order, dtype=np.int64)
    remap[ids] = np.arange(len(old))
    labels = [ring.label(o) for o in old] if ring.labels is not None else None
    out = FiniteRing(
        remap[sub_add],
        remap[sub_mul],
        pos[ring.zero],
        pos[ring.one],
        labels=labels,
        provenance={"kind": "subring"},
    )
    return out, old


def _additive_order(ring: FiniteRing, a: int) -> int:
    k, x = 1, a
    while x != ring.zero:
        x = ring.add(x, a)
        k += 1
    return k


def find_isomorphism(r1: FiniteRing, r2: FiniteRing) -> Optional[list[int]]:
    """Search for a ring isomorphism r1 -> r2; returns the image list or None.

    Pins 1 -> 1, then backtracks over images of additive generators (always
    the smallest unmapped id), pruning on additive order and injectivity.
    Complete maps are verified against the full tables, so a returned list is
    a certified isomorphism.
    """
    if r1.order != r2.order:
        return None
    n = r1.order
    if _additive_order(r1, r1.one) != _additive_order(r2, r2.one):
        return None
    orders2: dict[int, list[int]] = {}
    for y in range(n):
        orders2.setdefault(_additive_order(r2, y), []).append(y)

    def extend(mapping: dict[int, int], g: int, u: int) -> Optional[dict[int, int]]:
        # mapping's keys form an additive subgroup S; cover every coset S + k*g
        new_map = dict(mapping)
        used = set(new_map.values())
        kg, ku = g, u
        while kg != r1.zero:
            for x, y in mapping.items():
                xk, yk = r1.add(x, kg), r2.add(y, ku)
                prev = new_map.get(xk)
                if prev is not None:
                    if prev != yk:
                        return None
                elif yk in used:
                    return None
                else:
                    new_map[xk] = yk
                    used.add(yk)
            kg, ku = r1.add(kg, g), r2.add(ku, u)
        if ku != r2.zero:
            return None
        # multiplicative consistency on everything mapped so far prunes the
        # additive-only branches before they fan out
        keys = list(new_map)
        for x1 in keys:
            y1 = new_map[x1]
            for x2 in keys:
                p = r1.mul(x1, x2)
                py = new_map.get(p)
                if py is not None and py != r2.mul(y1, new_map[x2]):
                    return None
        return new_map

    def backtrack(mapping: dict[int, int]) -> Optional[dict[int, int]]:
        if len(mapping) == n:
            return mapping
        g = min(x for x in range(n) if x not in mapping)
        taken = set(mapping.values())
        for u in orders2.get(_additive_order(r1, g), []):
            if u in taken:
                continue
            ext = extend(mapping, g, u)
            if ext is None:
                continue
            got = backtrack(ext)
            if got is not None:
                return got
        return None

    base = extend({r1.zero: r2.zero}, r1.one, r2.one)
    if base is None:
        return None
    result = backtrack(base)
    if result is None:
        return None
    phi = np.empty(n, dtype=np.int64)
    for x, y in result.items():
        phi[x] = y
    if not np.array_equal(phi[r1.add_table], r2.add_table[phi[:, None], phi[None, :]]):
        return None
    if not np.array_equal(phi[r1.mul_table], r2.mul_table[phi[:, None], phi[None, :]]):
        return None
    return [int(x) for x in phi]
