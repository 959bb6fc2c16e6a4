"""Slope stability tests for bipartite quivers and their combinatorial codes.

The slope of a dimension vector is (sum over sources) / (total), an exact
rational.  A representation with generic maps is stable when every proper
nonzero coordinate subrepresentation generated by a subset of the sources
has strictly smaller slope.  Sink coordinates enter through their generic
image dimensions, which for a sink j fed by a source subset U is
min(dim j, sum of dim i over i in U adjacent to j).

All comparisons are integer cross-multiplications; there are no epsilons
anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Optional, Sequence

from .core import Quiver, neighbour_data


def slope(dims: Mapping, sources) -> Fraction:
    """(sum of source dims) / (sum of all dims), exact."""
    total = sum(dims.values())
    if total <= 0:
        raise ValueError("slope needs positive total dimension")
    return Fraction(sum(dims[v] for v in sources), total)


def generic_image_dim(quiver: Quiver, dims: Mapping, subset):
    """Generic image dimensions of the subspace spanned by a source subset.

    Returns (per-sink dict, total).  Requires dim i <= dim j for every
    arrow i -> j; that hypothesis is what makes "generic" computable as a
    plain min, and it holds for every quiver this package constructs.
    """
    if quiver.bipartition is None:
        raise ValueError("generic_image_dim needs a bipartite quiver")
    subset = set(subset)
    stray = subset - set(quiver.sources)
    if stray:
        raise ValueError(f"not sources: {sorted(stray)}")
    for a in quiver.arrows:
        if dims[a.source] > dims[a.target]:
            raise ValueError(
                f"arrow {a.id}: source dimension {dims[a.source]} exceeds "
                f"sink dimension {dims[a.target]}"
            )
    per_sink = {}
    for j in quiver.sinks:
        fed = sum(dims[a.source] for a in quiver.in_arrows(j) if a.source in subset)
        per_sink[j] = min(dims[j], fed)
    return per_sink, sum(per_sink.values())


@dataclass(frozen=True)
class StabilityVerdict:
    """Boolean result plus, on failure, a violating source subset."""

    stable: bool
    witness: Optional[frozenset] = None

    def __bool__(self) -> bool:
        return self.stable


def is_stable_generic(quiver: Quiver, dims: Mapping) -> StabilityVerdict:
    """Slope stability of the generic representation of a bipartite quiver.

    Enumerates source subsets in Gray-code order, updating the per-sink
    image dimensions incrementally on each single-source flip, so a sweep
    over all 2^n subsets costs O(2^n * max degree).  Sources of dimension
    zero generate nothing and are skipped.  The whole-source subset is
    included because its generated subrepresentation is proper whenever
    some sink is not fully covered; the properness guard below keeps the
    representation itself out of the comparison.
    """
    if quiver.bipartition is None:
        raise ValueError("is_stable_generic needs a bipartite quiver")
    for a in quiver.arrows:
        if dims[a.source] > dims[a.target]:
            raise ValueError(
                f"arrow {a.id}: source dimension {dims[a.source]} exceeds "
                f"sink dimension {dims[a.target]}"
            )
    d_total = sum(dims[v] for v in quiver.sources)
    e_total = sum(dims[v] for v in quiver.sinks)
    if d_total == 0:
        # Only sink subspaces exist and they all have slope 0.
        return StabilityVerdict(e_total == 1)
    if e_total == 0:
        return StabilityVerdict(d_total == 1)

    srcs = sorted(v for v in quiver.sources if dims[v] > 0)
    sinks_of = {i: sorted(quiver.neighbours(i)) for i in srcs}
    n = len(srcs)
    sigma = {j: 0 for j in quiver.sinks}  # source mass feeding each sink
    covered = {j: 0 for j in quiver.sinks}  # min(dims[j], sigma[j])
    d_sub = 0
    e_sub = 0
    state = 0
    for k in range(1, 1 << n):
        bit = (k & -k).bit_length() - 1
        state ^= 1 << bit
        i = srcs[bit]
        di = dims[i]
        if state >> bit & 1:
            d_sub += di
            delta = di
        else:
            d_sub -= di
            delta = -di
        for j in sinks_of[i]:
            sigma[j] += delta
            new = min(dims[j], sigma[j])
            e_sub += new - covered[j]
            covered[j] = new
        if (d_sub, e_sub) == (d_total, e_total):
            continue
        # stable needs d_sub/(d_sub+e_sub) < d_total/(d_total+e_total)
        if d_sub * (d_total + e_total) >= d_total * (d_sub + e_sub):
            witness = frozenset(srcs[b] for b in range(n) if state >> b & 1)
            return StabilityVerdict(False, witness)
    return StabilityVerdict(True)


def glueing_condition(d: int, e: int, d_s: int, e_s: int) -> bool:
    """Arithmetic compatibility of (d_s, e_s) with (d, e) for sink glueing.

    Five clauses, all evaluated by integer cross-multiplication:

      1. (e+e_s) d <= (e+1)(d+d_s)
      2. (e+e_s) d >  e (d+d_s)
      3. (e_s-1) d == e d_s  when d == 1, else (e_s-1) d <= e d_s
      4. (e+e_s) d' < ceil(e d'/d) (d+d_s)  for every 0 < d' < d
      5. gcd(d+d_s, e+e_s) == 1

    Clause 1 admits equality: the base pair (d,e)=(1,n), (d_s,e_s)=(0,1)
    sits exactly on that boundary and must pass.
    """
    if min(d, e, d_s, e_s) < 0 or d > e or d_s > d or e_s > e:
        raise ValueError("glueing_condition needs 0 <= d_s <= d <= e and e_s <= e")
    if (e + e_s) * d > (e + 1) * (d + d_s):
        return False
    if (e + e_s) * d <= e * (d + d_s):
        return False
    if d == 1:
        if (e_s - 1) * d != e * d_s:
            return False
    elif (e_s - 1) * d > e * d_s:
        return False
    for dp in range(1, d):
        ceil_term = -(-e * dp // d)
        if (e + e_s) * dp >= ceil_term * (d + d_s):
            return False
    return gcd(d + d_s, e + e_s) == 1


@dataclass(frozen=True)
class GlueContext:
    """The data of a glueing family: (d,e), its partner (d_s,e_s), and k."""

    d: int
    e: int
    d_s: int
    e_s: int
    k: int

    def __post_init__(self):
        if self.e_s * self.d - self.e * self.d_s != 1:
            raise ValueError("glue context needs e_s*d - e*d_s = 1")
        if self.k < 0:
            raise ValueError("k must be nonnegative")


def f_map(d1: int, ctx: GlueContext) -> int:
    """Minimal n >= 0 with (k e + e_s) d1 + n divisible by k d + d_s."""
    modulus = ctx.k * ctx.d + ctx.d_s
    if not 0 < d1 <= modulus:
        raise ValueError(f"d1 must lie in 1..{modulus}")
    return (-(ctx.k * ctx.e + ctx.e_s) * d1) % modulus


def _as_entries(s: Sequence) -> list:
    entries = [int(x) for x in s]
    if not entries:
        raise ValueError("empty tuple")
    if any(x < 0 for x in entries):
        raise ValueError("negative entry")
    return entries


def simple_stable(s: Sequence) -> bool:
    """Window criterion for stability of the quiver coded by s.

    With t+1 = len(s) and d = sum(s) + t, requires

        d (l-k+1) > (t+1) (sum_{i=k}^{l} s_i + (l-k))

    for every window 1 <= k <= l <= t+1 shorter than the whole tuple
    (l - k < t).  Single-entry tuples have no such window and count as
    stable.  Windows of length one are included: dropping them would admit
    tuples such as (2, 0) whose realizations have unstable coordinate
    subrepresentations.
    """
    entries = _as_entries(s)
    t1 = len(entries)
    t = t1 - 1
    d = sum(entries) + t
    prefix = [0]
    for x in entries:
        prefix.append(prefix[-1] + x)
    for k in range(1, t1 + 1):
        for l in range(k, t1 + 1):
            if l - k >= t:
                continue
            window = prefix[l] - prefix[k - 1]
            if d * (l - k + 1) <= (t1) * (window + (l - k)):
                return False
    return True


def simple_stable_symmetric(s: Sequence) -> bool:
    """Prefix-sum criterion, valid for palindromic tuples only.

    With s_{1,l} = (sum_{i<=l} s_i + l - 1)(t+1), requires the two-sided
    inequality d*l > s_{1,l} > d*l - (t+1) for 1 <= l < t+1.  Agrees with
    simple_stable on every palindromic input; the one-sided variant with
    only the left inequality does not (it passes (0, 2, 0), which the
    window criterion rejects).
    """
    entries = _as_entries(s)
    if entries != entries[::-1]:
        raise ValueError("tuple is not palindromic")
    t1 = len(entries)
    t = t1 - 1
    d = sum(entries) + t
    acc = 0
    for l in range(1, t1):
        acc += entries[l - 1]
        s1l = (acc + l - 1) * t1
        if not (d * l > s1l > d * l - t1):
            return False
    return True


def chain_stable(s: Sequence, t: int) -> bool:
    """Stability of the chain-family quiver coded by a (t+1)-entry tuple.

    With S = sum(s), requires S*l + t > t * sum_{i<=l} s_i + l > S*(l-1) + 1
    for l = 1..t.  Tuples with S = 1 always fail (these are the e = k*d
    dimension types, which admit no stable quiver of this kind).
    """
    entries = _as_entries(s)
    if len(entries) != t + 1:
        raise ValueError(f"expected {t + 1} entries, got {len(entries)}")
    total = sum(entries)
    acc = 0
    for l in range(1, t + 1):
        acc += entries[l - 1]
        mid = t * acc + l
        if not (total * l + t > mid > total * (l - 1) + 1):
            return False
    return True
