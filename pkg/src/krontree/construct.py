"""Constructive combinatorics for bipartite tree-shaped quivers.

Covers the whole constructive toolbox for dimension vectors (d, e) of the
m-arrow Kronecker shape with d < e <= (m-1)d + 1:

  * starting vectors and the glueing decomposition (d,e) = (d_s,e_s) + k(d',e')
  * the word substitutions eta / theta and the quiver-function recursion that
    evaluates the hatted code word of (d, e)
  * the unique stable simple tuple, by a greedy closed form for its prefix
    sums (certified against brute-force enumeration in the test suite)
  * realization of a tuple as a chain of stars sharing sinks
  * the one-step modifications that raise e by one, used when glueing
  * the chain family for non-coprime targets, with its stability search

Tuples are indexed 1-based in the docstrings to match the usual notation;
code uses plain Python tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, gcd
from typing import NamedTuple, Optional, Sequence

from .core import Arrow, Quiver, glue_with_dims, neighbour_data
from .stability import chain_stable

__all__ = [
    "SimpleTuple",
    "Decomposition",
    "QuiverFunctionChain",
    "starting_vector",
    "decompose",
    "decompose_chain",
    "n_list_from_decompose",
    "eta",
    "theta",
    "quiver_function_chain",
    "n_list_from_chain",
    "simple_tuple",
    "default_n",
    "hat",
    "s_recursion",
    "realize_simple",
    "modify",
    "realize_chain",
    "general_stable_quiver",
]


@dataclass(frozen=True)
class SimpleTuple:
    """The combinatorial code (s_1, ..., s_{t+1}) of a simple quiver.

    n is the arity of the plain stars; separators between consecutive
    entries are (n+1)-stars.  The realized dimension type is

        d = sum(s) + t,    e = (n-1) d + t + 1.

    m, when given, bounds n (a colourable realization needs n + 1 <= m).
    """

    n: int
    entries: tuple
    m: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if self.n < 1:
            raise ValueError("star arity n must be at least 1")
        if not self.entries:
            raise ValueError("empty tuple")
        if any(x < 0 for x in self.entries):
            raise ValueError("negative tuple entry")
        if self.m is not None and self.n > self.m - 1:
            raise ValueError(f"n={self.n} exceeds m-1={self.m - 1}")

    @property
    def t(self) -> int:
        return len(self.entries) - 1

    @property
    def d(self) -> int:
        return sum(self.entries) + self.t

    @property
    def e(self) -> int:
        return (self.n - 1) * self.d + self.t + 1

    @property
    def type(self) -> tuple:
        return (self.d, self.e)


def _require_coprime(d: int, e: int) -> None:
    if gcd(d, e) != 1:
        raise ValueError(f"({d}, {e}) is not coprime")


def starting_vector(d: int, e: int) -> tuple:
    """The unique (d_s, e_s) with d_s <= d, e_s <= e and e_s d - e d_s = 1.

    d_s is the minimal nonnegative solution of d | 1 + e d_s; coprimality
    of (d, e) guarantees one exists below d.
    """
    _require_coprime(d, e)
    if not 1 <= d <= e:
        raise ValueError("starting_vector needs 1 <= d <= e")
    for x in range(d):
        if (1 + e * x) % d == 0:
            return x, (1 + e * x) // d
    raise AssertionError("unreachable: coprimality guarantees a solution")


class Decomposition(NamedTuple):
    """(d, e) = (d_s, e_s) + k * (d_piece, e_piece)."""

    d_s: int
    e_s: int
    k: int
    d_piece: int
    e_piece: int


def decompose(d: int, e: int) -> Decomposition:
    """Split (d, e) into a starting vector plus k copies of a smaller piece.

    The piece (d', e') is fixed by choosing e' minimal with e | 1 + d e';
    the starting vector is the piece's own, and k = (d - d_s) / d' is an
    integer by construction.
    """
    _require_coprime(d, e)
    if not 1 <= d < e:
        raise ValueError("decompose needs 1 <= d < e")
    e_piece = next(x for x in range(e) if (1 + d * x) % e == 0)
    d_piece = (1 + e_piece * d) // e
    if d_piece > e_piece:
        raise AssertionError(f"piece ({d_piece}, {e_piece}) left the cone")
    d_s, e_s = starting_vector(d_piece, e_piece)
    k, rem = divmod(d - d_s, d_piece)
    if rem or (e - e_s) != k * e_piece:
        raise AssertionError("decomposition identity failed")
    return Decomposition(d_s, e_s, k, d_piece, e_piece)


def decompose_chain(d: int, e: int) -> list:
    """Repeated decomposition along pieces, stopping at a piece with d' <= 1."""
    _require_coprime(d, e)
    steps = []
    while d >= 2:
        step = decompose(d, e)
        steps.append(step)
        d, e = step.d_piece, step.e_piece
    return steps


def n_list_from_decompose(d: int, e: int) -> tuple:
    """The multiplicities k collected by decompose_chain, in extraction order."""
    return tuple(step.k for step in decompose_chain(d, e))


def eta(n: int, l: int, word: Sequence) -> tuple:
    """Substitution over the alphabet {l-1, l}:

    l-1  ->  (l-1), l^(n-1)        l  ->  (l-1), l^n
    """
    if n < 0:
        raise ValueError("negative substitution index")
    out = []
    for x in word:
        if x == l - 1:
            out.extend((l - 1,) + (l,) * (n - 1))
        elif x == l:
            out.extend((l - 1,) + (l,) * n)
        else:
            raise ValueError(f"letter {x} outside alphabet {{{l - 1}, {l}}}")
    return tuple(out)


def theta(n: int, l: int, word: Sequence) -> tuple:
    """Substitution over the alphabet {l-1, l}:

    l-1  ->  (l-1)^(n+1), l        l  ->  (l-1)^n, l

    Satisfies theta(n, l, (l,)) == eta(1, l, ...) applied n times to (l,).
    """
    if n < 0:
        raise ValueError("negative substitution index")
    out = []
    for x in word:
        if x == l - 1:
            out.extend((l - 1,) * (n + 1) + (l,))
        elif x == l:
            out.extend((l - 1,) * n + (l,))
        else:
            raise ValueError(f"letter {x} outside alphabet {{{l - 1}, {l}}}")
    return tuple(out)


@dataclass(frozen=True)
class QuiverFunctionChain:
    """Trace of the two-coordinate recursion evaluating the word of (d, e).

    levels[j] holds the pair (k_{j+1,1}, k_{j+1,2}) (0-indexed storage).
    l_values collects l_1, l_2, ... as they are taken; the terminal step is
    ("theta", power) or ("eta", index), or ("letter", x) for the degenerate
    one-letter outcomes at level 1.  word is the fully evaluated result.
    """

    levels: tuple
    l_values: tuple
    terminal: tuple
    word: tuple


def quiver_function_chain(d: int, e: int, n: int) -> QuiverFunctionChain:
    """Evaluate the code word of (d, e) by the two-coordinate recursion.

    Level 1 starts from k_{1,1} = nd - e and k_{1,2} = e - (n-1)d with
    l_1 = ceil(k_{1,1} / k_{1,2}); later levels use the transposed ratio
    l_j = ceil(k_{j,2} / k_{j,1}).  The recursion stops as soon as a
    coordinate reaches 1, with k_{j,2} = 1 taking precedence:

      k_{j,2} = 1:  word = eta_{l_2} o ... o eta_{l_{j-1}} o theta_{k_{j,1}} (l_1)
      k_{j,1} = 1:  word = eta_{l_2} o ... o eta_{l_j} (l_1)

    The precedence matters: when both coordinates are 1 the two rules give
    different words, and only the theta branch matches the stable tuple.
    """
    _require_coprime(d, e)
    k11 = n * d - e
    k12 = e - (n - 1) * d
    if k11 < 0 or k12 < 0:
        raise ValueError(f"({d}, {e}) is outside the slice of n={n}")
    if k11 == 0:
        # e = nd, coprime only for d = 1: the n-star, word a single l-1.
        return QuiverFunctionChain(((k11, k12),), (1,), ("letter", 0), (0,))
    if k12 == 0:
        # e = (n-1)d, coprime only for d = 1: one letter, nothing to expand.
        return QuiverFunctionChain(((k11, k12),), (1,), ("letter", 1), (1,))
    l1 = ceil(k11 / k12)
    levels = [(k11, k12)]
    l_values = [l1]
    kj1 = (l1 + 1) * e - (l1 * n - l1 + n) * d
    kj2 = d * (l1 * n - l1 + 1) - l1 * e
    for _ in range(10 * (d + e) + 16):
        levels.append((kj1, kj2))
        if kj2 == 1:
            terminal = ("theta", kj1)
            word = theta(kj1, l1, (l1,))
            break
        if kj1 == 1:
            lj = ceil(kj2 / kj1)
            terminal = ("eta", lj)
            word = eta(lj, l1, (l1,))
            break
        lj = ceil(kj2 / kj1)
        l_values.append(lj)
        kj1, kj2 = lj * kj1 - kj2, kj2 - (lj - 1) * kj1
    else:
        raise AssertionError("recursion failed to terminate")
    for idx in reversed(l_values[1:]):
        word = eta(idx, l1, word)
    return QuiverFunctionChain(tuple(levels), tuple(l_values), terminal, word)


def n_list_from_chain(chain: QuiverFunctionChain) -> tuple:
    """Extraction-order multiplicity list encoded by a quiver-function chain.

    The terminal step contributes k_{j,1} ones (theta branch; each one is a
    single glueing step) or the single index l_j (eta branch); then come
    l_{j-1}, ..., l_2, and finally l_1 + 1.  Matches the multiplicities
    collected by n_list_from_decompose on every coprime (d, e) with d >= 2.
    """
    kind, value = chain.terminal
    if kind == "letter":
        return ()
    if kind == "theta":
        head = [1] * value
    else:
        head = [value]
    return tuple(head + list(reversed(chain.l_values[1:])) + [chain.l_values[0] + 1])


def default_n(d: int, e: int, m: int) -> int:
    """Star arity used when none is requested: ceil(e/d) clamped to [2, m-1].

    The (1,1) target needs arity 1 (a single arrow), the only case where
    the clamp would leave the valid slice.
    """
    if d < 1:
        raise ValueError("default_n needs d >= 1")
    if (d, e) == (1, 1):
        return 1
    return min(max(ceil(e / d), 2), m - 1)


def simple_tuple(d: int, e: int, n: int) -> SimpleTuple:
    """The unique stable tuple of dimension type (d, e) in the slice of n.

    Valid for coprime (d, e) with (n-1)d < e <= nd + 1.  Interior points
    use the greedy closed form for prefix sums,

        sum_{i<=l} s_i = floor(d l / (t+1)) - l + 1,

    whose correctness is certified against brute-force enumeration in the
    test suite.  The boundary e = nd forces d = 1 (the n-star, tuple (1));
    e = nd + 1 gives the all-zero tuple of length d + 1.
    """
    _require_coprime(d, e)
    if d < 1 or e < 1:
        raise ValueError("dimension type must be positive")
    if not (n - 1) * d < e <= n * d + 1:
        raise ValueError(f"({d}, {e}) is outside the slice of n={n}")
    if e == n * d + 1:
        return SimpleTuple(n, (0,) * (d + 1))
    if e == n * d:
        # coprimality forces d = 1 here
        return SimpleTuple(n, (1,))
    t1 = e - (n - 1) * d  # t + 1
    t = t1 - 1
    prefix = [0]
    for l in range(1, t1):
        prefix.append(d * l // t1 - l + 1)
    prefix.append(d - t)
    entries = tuple(prefix[l] - prefix[l - 1] for l in range(1, t1 + 1))
    if any(x < 0 for x in entries):
        raise AssertionError(f"greedy prefix form produced {entries}")
    return SimpleTuple(n, entries)


def hat(s) -> tuple:
    """First entry decremented: (s_1 - 1, s_2, ..., s_{t+1})."""
    entries = s.entries if isinstance(s, SimpleTuple) else tuple(s)
    if not entries:
        raise ValueError("empty tuple")
    if entries[0] < 1:
        raise ValueError("hat needs a first entry >= 1")
    return (entries[0] - 1,) + tuple(entries[1:])


def s_recursion(subscripts: Sequence) -> tuple:
    """The tuple family s_{n_1, ..., n_k} built by decrement-and-append.

    s_{n_1} = 1^(n_1+1) and

        s_{n_1,...,n_k,n} = (s_{n_1,...,n_k - 1}, hat(s_{n_1,...,n_k})^n),

    where a trailing subscript 0 collapses, s_{..., n, 0} = s_{..., n-1},
    and the empty/zero base is the one-entry tuple (1).  The hat of the
    result equals the eta-composition eta_{n_1} o ... o eta_{n_k} applied
    to the one-letter word (1); the test suite checks that identity.
    """
    ns = tuple(int(x) for x in subscripts)
    if not ns:
        raise ValueError("need at least one subscript")
    if any(x < 1 for x in ns):
        raise ValueError("subscripts must be positive")
    return _s_rec(ns)


def _s_rec(ns: tuple) -> tuple:
    while len(ns) >= 2 and ns[-1] == 0:
        ns = ns[:-2] + (ns[-2] - 1,)
    if len(ns) == 1:
        return (1,) * (ns[0] + 1)
    head, last = ns[:-1], ns[-1]
    body = _s_rec(head)
    hatted = (body[0] - 1,) + body[1:]
    return _s_rec(head[:-1] + (head[-1] - 1,)) + hatted * last


def _pad_ids(prefix: str, count: int) -> list:
    width = len(str(count))
    return [f"{prefix}{k:0{width}d}" for k in range(1, count + 1)]


def _arities(entries: Sequence, n: int) -> list:
    """Star arity sequence: n-stars per entry, (n+1)-star separators."""
    out = []
    for pos, s in enumerate(entries):
        if pos:
            out.append(n + 1)
        out.extend([n] * s)
    return out


def _star_chain(arities: Sequence) -> tuple:
    """Chain of stars sharing one sink between consecutive stars.

    Star k contributes one source and (arity - 1) new sinks after the
    first; its first sink is the previous star's last.  Arrows are laid
    down star by star, each star's shared sink first.
    """
    if not arities:
        raise ValueError("empty star chain")
    if any(a < 1 for a in arities):
        raise ValueError("star arity must be positive")
    nsinks = sum(arities) - (len(arities) - 1)
    narrows = sum(arities)
    src_ids = _pad_ids("i", len(arities))
    snk_ids = _pad_ids("j", nsinks)
    arr_ids = _pad_ids("a", narrows)
    arrows = []
    next_sink = 0
    next_arrow = 0
    for k, arity in enumerate(arities):
        if k == 0:
            star_sinks = list(range(next_sink, next_sink + arity))
            next_sink += arity
        else:
            star_sinks = [next_sink - 1] + list(range(next_sink, next_sink + arity - 1))
            next_sink += arity - 1
        for j in star_sinks:
            arrows.append(Arrow(arr_ids[next_arrow], src_ids[k], snk_ids[j]))
            next_arrow += 1
    quiver = Quiver(
        tuple(src_ids) + tuple(snk_ids),
        tuple(arrows),
        (frozenset(src_ids), frozenset(snk_ids)),
    )
    return quiver, {v: 1 for v in quiver.vertices}


def realize_simple(s: SimpleTuple) -> tuple:
    """Realize a tuple as its bipartite quiver, all dimensions one.

    Returns (Quiver, dims).  Sources i.., sinks j.., zero-padded so that
    lexicographic order equals construction order; arrow count is nd + t.
    """
    return _star_chain(_arities(s.entries, s.n))


def _prefixed(quiver: Quiver, prefix: str) -> Quiver:
    vmap = {v: prefix + v for v in quiver.vertices}
    arrows = tuple(
        Arrow(prefix + a.id, vmap[a.source], vmap[a.target], a.colour) for a in quiver.arrows
    )
    bip = None
    if quiver.bipartition is not None:
        bip = (
            frozenset(vmap[v] for v in quiver.bipartition[0]),
            frozenset(vmap[v] for v in quiver.bipartition[1]),
        )
    return Quiver(tuple(vmap[v] for v in quiver.vertices), arrows, bip)


class ModifiedQuiver(NamedTuple):
    quiver: Quiver
    dims: dict
    modified: str  # the sink whose dimension grew (or the new pendant sink)


def modify(quiver: Quiver, dims, m: int) -> list:
    """All one-step modifications raising the sink total e by one.

    Three moves, each tagged with its modified sink:

      * a source i with fewer than m positive neighbours gains a new
        pendant sink of dimension one;
      * a sink j with 1 < R_j < m has its dimension raised by one;
      * a sink j with dim(j) < sum of its positive neighbours' dimensions
        has its dimension raised by one.

    The last two moves produce identical quivers when both apply to the
    same sink, so results are deduplicated per sink.  Every result has
    dimension type (d, e+1) and keeps dim(modified) <= sum of neighbours,
    which is what a later glueing at that sink needs.
    """
    if quiver.bipartition is None:
        raise ValueError("modify needs a bipartite quiver")
    nb = neighbour_data(quiver, dims)
    out = []
    taken = set(quiver.vertices)
    for i in sorted(quiver.sources):
        if nb.r[i] >= m:
            continue
        pendant = f"{i}p"
        while pendant in taken:
            pendant += "+"
        arrow = f"a{pendant}"
        existing = {a.id for a in quiver.arrows}
        while arrow in existing:
            arrow += "+"
        grown = Quiver(
            quiver.vertices + (pendant,),
            quiver.arrows + (Arrow(arrow, i, pendant),),
            (quiver.sources, quiver.sinks | {pendant}),
        )
        gdims = dict(dims)
        gdims[pendant] = 1
        out.append(ModifiedQuiver(grown, gdims, pendant))
    for j in sorted(quiver.sinks):
        feeding = sum(dims[i] for i in nb.a[j])
        if 1 < nb.r[j] < m or dims[j] < feeding:
            gdims = dict(dims)
            gdims[j] += 1
            out.append(ModifiedQuiver(quiver, gdims, j))
    return out


def realize_chain(s: Sequence, n: int, m: int) -> tuple:
    """Realize a (t+1)-entry chain-family tuple; all dimensions one.

    The base is the star chain of the t-entry tuple (s_1, 0^(t-2), s_{t+1})
    whose t-1 separator stars have arity n+1; for k = 2..t, a chain of s_k
    plain n-stars is glued onto a pendant sink of separator k-1.  Returns
    (Quiver, dims) of dimension type (t-1+S, n(t-1)+(n-1)S+1), S = sum(s).
    """
    entries = tuple(int(x) for x in s)
    if len(entries) < 2:
        raise ValueError("chain tuples need at least two entries")
    if any(x < 0 for x in entries):
        raise ValueError("negative tuple entry")
    if n >= m:
        raise ValueError("chain realization needs n < m")
    t = len(entries) - 1
    if t == 1:
        total = sum(entries)
        if total < 1:
            raise ValueError("empty chain")
        return _star_chain([n] * total)
    base_entries = (entries[0],) + (0,) * (t - 2) + (entries[-1],)
    quiver, dims = _star_chain(_arities(base_entries, n))
    # separator sources sit right after the first entry's stars
    separators = [sorted(quiver.sources)[entries[0] + i] for i in range(t - 1)]
    for k in range(2, t + 1):
        if entries[k - 1] == 0:
            continue
        piece, pdims = _star_chain([n] * entries[k - 1])
        piece = _prefixed(piece, f"c{k}_")
        pdims = {f"c{k}_{v}": 1 for v in pdims}
        q_sep = separators[k - 2]
        pendants = sorted(
            j for j in quiver.neighbours(q_sep) if len(quiver.neighbours(j)) == 1
        )
        if not pendants:
            raise AssertionError(f"separator {q_sep} has no pendant sink")
        # the piece's first star has at least one pendant sink; glue there
        piece_pendants = sorted(
            j
            for j in piece.neighbours(sorted(piece.sources)[0])
            if len(piece.neighbours(j)) == 1
        )
        quiver, dims = glue_with_dims(
            quiver, dims, pendants[0], piece, pdims, piece_pendants[0]
        )
    return quiver, dims


def general_stable_quiver(d: int, e: int, m: int) -> tuple:
    """A stable chain-family quiver of type (d, e), for e not a multiple of d.

    Searches tuples in ascending lexicographic order and realizes the first
    one passing the chain stability test; the family is not unique, so the
    search order is what makes the output deterministic.
    """
    if not 1 <= d < e or e > (m - 1) * d + 1:
        raise ValueError("general_stable_quiver needs d < e <= (m-1)d + 1")
    if e % d == 0:
        raise ValueError(f"no stable chain quiver exists for e = {e // d}*d")
    n = min(ceil(e / d), m - 1)
    t = e - (n - 1) * d
    total = n * d - e + 1
    for entries in _compositions(total, t + 1):
        if chain_stable(entries, t):
            quiver, dims = realize_chain(entries, n, m)
            return quiver, dims, entries
    raise ValueError(f"no stable chain tuple found for ({d}, {e}) at n={n}")


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`, lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
