"""Threshold graphs: creation sequences, block structure, fast counting.

A threshold graph is grown one vertex at a time, each new vertex either
dominating (adjacent to everything so far) or isolated.  The creation
sequence records those choices as bits for vertices 1..n-1.  Runs of equal
bits form blocks; homomorphism counts depend only on the block structure,
which ``hom_count_blocks`` exploits with a subset dynamic program.  Sending
block sizes to proportions of n gives limit structures with exact limiting
homomorphism densities via ``limit_density``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from threshmax.graphs import Graph, connected_components, induced

__all__ = [
    "CreationSequence",
    "BlockStructure",
    "LimitThreshold",
    "blocks_of",
    "to_sequence",
    "parts",
    "sequence_edge_count",
    "build_graph",
    "is_threshold",
    "creation_sequence_of",
    "quasi_clique",
    "quasi_star",
    "three_part",
    "chromatic_count",
    "hom_count_blocks",
    "limit_density",
    "limit_edge_density",
    "blow_up",
    "effective_blocks",
]


@dataclass(frozen=True)
class CreationSequence:
    """Bits for vertices 1..n-1 in creation order; 1 dominating, 0 isolated."""

    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("creation bits must be 0 or 1")

    @classmethod
    def from_text(cls, text: str) -> "CreationSequence":
        text = text.strip()
        if any(c not in "01" for c in text):
            raise ValueError(f"creation sequence must be a 0/1 string, got {text!r}")
        return cls(tuple(int(c) for c in text))

    @property
    def n(self) -> int:
        return len(self.bits) + 1

    def full_bits(self) -> tuple[int, ...]:
        """Bits for all n vertices.  Vertex 0 never has earlier vertices, so
        its bit is a convention: copying bits[0] puts it in the same block as
        vertex 1, which the pair's symmetry justifies."""
        if not self.bits:
            return (0,)
        return (self.bits[0],) + self.bits

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class BlockStructure:
    """Runs of creation bits: ((bit, size), ...) over all n vertices."""

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((int(b), int(s)) for b, s in self.blocks))
        for b, s in self.blocks:
            if b not in (0, 1):
                raise ValueError("block bit must be 0 or 1")
            if s < 1:
                raise ValueError("block size must be positive")

    @property
    def n(self) -> int:
        return sum(s for _, s in self.blocks)

    def expand(self) -> tuple[int, ...]:
        out: list[int] = []
        for b, s in self.blocks:
            out.extend([b] * s)
        return tuple(out)

    def __str__(self) -> str:
        return ",".join(f"{b}:{s}" for b, s in self.blocks)


@dataclass(frozen=True)
class LimitThreshold:
    """Block structure with sizes replaced by proportions summing to 1.

    Proportions may be floats or Fractions; exact inputs stay exact through
    every density computation.
    """

    blocks: tuple[tuple[int, "Fraction | float"], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((int(b), p) for b, p in self.blocks))
        if not self.blocks:
            raise ValueError("a limit structure needs at least one block")
        total = 0
        for b, p in self.blocks:
            if b not in (0, 1):
                raise ValueError("block bit must be 0 or 1")
            if p < 0:
                raise ValueError(f"negative block proportion {p}")
            total += p
        if abs(total - 1) > 1e-12:
            raise ValueError(f"block proportions sum to {total}, expected 1")

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(b for b, _ in self.blocks)

    @property
    def proportions(self) -> tuple:
        return tuple(p for _, p in self.blocks)

    @classmethod
    def from_text(cls, text: str) -> "LimitThreshold":
        """Parse 'bit:prop,bit:prop,...'; props as decimals or fractions."""
        blocks = []
        for part in text.split(","):
            bit_text, _, prop_text = part.partition(":")
            if not prop_text:
                raise ValueError(f"expected bit:proportion, got {part!r}")
            blocks.append((int(bit_text), Fraction(prop_text)))
        return cls(tuple(blocks))

    def __str__(self) -> str:
        return ",".join(f"{b}:{p}" for b, p in self.blocks)


# ── conversions ──────────────────────────────────────────────────────────


def blocks_of(seq: CreationSequence) -> BlockStructure:
    """Run-length encode the full bit sequence."""
    bits = seq.full_bits()
    blocks: list[tuple[int, int]] = []
    for b in bits:
        if blocks and blocks[-1][0] == b:
            blocks[-1] = (b, blocks[-1][1] + 1)
        else:
            blocks.append((b, 1))
    return BlockStructure(tuple(blocks))


def to_sequence(blocks: BlockStructure) -> CreationSequence:
    """Inverse of blocks_of up to the vertex-0 convention."""
    bits = blocks.expand()
    if not bits:
        raise ValueError("empty block structure")
    return CreationSequence(bits[1:])


def parts(x: "CreationSequence | BlockStructure") -> int:
    """Number of maximal equal-bit runs."""
    if isinstance(x, CreationSequence):
        return len(blocks_of(x).blocks)
    merged = blocks_of(to_sequence(x))
    return len(merged.blocks)


def sequence_edge_count(seq: CreationSequence) -> int:
    """Edges of the built graph: each dominating vertex joins all before it."""
    return sum(i for i, b in enumerate(seq.bits, start=1) if b)


def build_graph(x: "CreationSequence | BlockStructure") -> Graph:
    seq = to_sequence(x) if isinstance(x, BlockStructure) else x
    full = seq.full_bits()
    n = len(full)
    edges = [(u, v) for v in range(1, n) if full[v] for u in range(v)]
    return Graph(n, edges)


# ── recognition ──────────────────────────────────────────────────────────


def is_threshold(g: Graph) -> bool:
    """Neighbourhoods must be nested: for every pair, one vertex's open
    neighbourhood (minus the other) contains the other's."""
    for u in range(g.n):
        nu = g.adjacency[u]
        for v in range(u + 1, g.n):
            nv = g.adjacency[v]
            a = nu - {v}
            b = nv - {u}
            if not (a <= b or b <= a):
                return False
    return True


def creation_sequence_of(g: Graph) -> CreationSequence:
    """Recover a creation sequence by peeling the last-added vertex.

    The returned sequence rebuilds a graph isomorphic to g (vertices are
    relabeled into creation order).  Raises ValueError when some peel step
    finds neither a dominating nor an isolated vertex.
    """
    if g.n == 0:
        raise ValueError("no creation sequence for the empty vertex set")
    active = sorted(range(g.n))
    adj = {v: set(g.adjacency[v]) for v in range(g.n)}
    bits_reversed: list[int] = []
    while len(active) > 1:
        pick = None
        bit = None
        for v in active:
            if len(adj[v]) == len(active) - 1:
                pick, bit = v, 1
                break
        if pick is None:
            for v in active:
                if not adj[v]:
                    pick, bit = v, 0
                    break
        if pick is None:
            raise ValueError(
                "not a threshold graph: no dominating and no isolated vertex "
                f"among {active}"
            )
        bits_reversed.append(bit)
        active.remove(pick)
        for w in adj[pick]:
            adj[w].discard(pick)
        del adj[pick]
    return CreationSequence(tuple(reversed(bits_reversed)))


# ── named extremal constructions ─────────────────────────────────────────


def quasi_clique(n: int, m: int) -> CreationSequence:
    """Clique on k vertices plus one partial vertex, rest isolated.

    k is the largest clique fitting in m edges; the leftover r = m - C(k,2)
    edges attach a further vertex to r clique vertices.  Uses exactly m
    edges.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    if not 0 <= m <= n * (n - 1) // 2:
        raise ValueError(f"edge count {m} out of range for n={n}")
    k = 1
    while k + 1 <= n and (k + 1) * k // 2 <= m:
        k += 1
    r = m - k * (k - 1) // 2
    if r == 0:
        bits = [1] * (k - 1) + [0] * (n - k)
    else:
        # the partial vertex is created before the last r clique vertices,
        # so exactly those r dominating additions reach it
        bits = [1] * (k - r - 1) + [0] + [1] * r + [0] * (n - k - 1)
    return CreationSequence(tuple(bits))


def quasi_star(n: int, m: int) -> CreationSequence:
    """Complement of the quasi clique: dominating vertices plus one partial."""
    if n < 1:
        raise ValueError("need at least one vertex")
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise ValueError(f"edge count {m} out of range for n={n}")
    comp = quasi_clique(n, total - m)
    return CreationSequence(tuple(1 - b for b in comp.bits))


def three_part(n: int, m: int) -> CreationSequence:
    """Clique block, isolated block, dominating block sized for n vertices
    and about m edges (never more than m).

    Clique size isqrt(m), dominating tail m // (2n).  Intended for the
    sparse regime 2n <= m <= C(n,2); outside it the middle block would get
    negative size, which raises.
    """
    if not 2 * n <= m <= n * (n - 1) // 2:
        raise ValueError(f"need 2n <= m <= C(n,2), got n={n}, m={m}")
    clique = isqrt(m)
    tail = m // (2 * n)
    middle = n - clique - tail
    if middle < 0:
        raise ValueError(f"no room for the isolated block at n={n}, m={m}")
    bits = [1] * (clique - 1) + [0] * middle + [1] * tail
    seq = CreationSequence(tuple(bits))
    assert sequence_edge_count(seq) <= m
    return seq


# ── chromatic counting (weight of a dominating block) ────────────────────

_CHROM_CACHE: dict = {}


def _poly_mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return tuple(out)


def _poly_sub(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * max(len(p), len(q))
    for i, a in enumerate(p):
        out[i] += a
    for i, b in enumerate(q):
        out[i] -= b
    return tuple(out)


def _poly_eval(p: tuple[int, ...], x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _contract(g: Graph, u: int, v: int) -> Graph:
    """Identify v with u (u < v) and relabel densely; drops parallel edges."""

    def f(w: int) -> int:
        if w == v:
            return u
        return w if w < v else w - 1

    edges = set()
    for a, b in g.edges:
        fa, fb = f(a), f(b)
        if fa != fb:
            edges.add((fa, fb))
    return Graph(g.n - 1, edges)


def chromatic_polynomial(g: Graph) -> tuple[int, ...]:
    """Coefficients (index = degree) of the chromatic polynomial, by
    deletion and contraction with a product shortcut over components."""
    key = g.key
    cached = _CHROM_CACHE.get(key)
    if cached is not None:
        return cached
    if g.m == 0:
        poly = (0,) * g.n + (1,)
    else:
        comps = connected_components(g)
        if len(comps) > 1:
            poly = (1,)
            for comp in comps:
                poly = _poly_mul(poly, chromatic_polynomial(induced(g, comp)))
        else:
            u, v = min(g.sorted_edges())
            deleted = Graph(g.n, g.edges - {(u, v)})
            poly = _poly_sub(chromatic_polynomial(deleted), chromatic_polynomial(_contract(g, u, v)))
    _CHROM_CACHE[key] = poly
    return poly


def chromatic_count(g: Graph, colors: int) -> int:
    """Number of proper colorings of g with the given number of colors."""
    if colors < 0:
        raise ValueError("color count must be nonnegative")
    return _poly_eval(chromatic_polynomial(g), colors)


# ── homomorphism counts into block structures ────────────────────────────


def _adjacency_masks(h: Graph) -> list[int]:
    masks = [0] * h.n
    for u, v in h.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def hom_count_blocks(h: Graph, target: "BlockStructure | CreationSequence") -> int:
    """hom(h, built graph) directly from the block structure.

    Vertices of h are assigned to blocks left to right.  A subset landing in
    an isolated block must be independent with no edges to earlier blocks
    and contributes size^|subset| maps; a subset landing in a dominating
    block contributes its induced subgraph's proper colorings with size
    colors, cross edges backwards being automatic.
    """
    if isinstance(target, CreationSequence):
        target = blocks_of(target)
    if h.n == 0:
        return 1
    hn = h.n
    full = (1 << hn) - 1
    adjm = _adjacency_masks(h)
    chrom: dict[int, tuple[int, ...]] = {}
    dp = [0] * (1 << hn)
    dp[0] = 1
    for bit, size in target.blocks:
        ndp = [0] * (1 << hn)
        for mask in range(1 << hn):
            base = dp[mask]
            if not base:
                continue
            comp = full & ~mask
            sub = comp
            while True:
                if bit == 0:
                    forbidden = mask | sub
                    ok = True
                    s = sub
                    while s:
                        v = (s & -s).bit_length() - 1
                        if adjm[v] & forbidden:
                            ok = False
                            break
                        s &= s - 1
                    if ok:
                        ndp[mask | sub] += base * size ** sub.bit_count()
                else:
                    poly = chrom.get(sub)
                    if poly is None:
                        verts = [v for v in range(hn) if sub >> v & 1]
                        poly = chromatic_polynomial(induced(h, verts))
                        chrom[sub] = poly
                    w = _poly_eval(poly, size)
                    if w:
                        ndp[mask | sub] += base * w
                if sub == 0:
                    break
                sub = (sub - 1) & comp
        dp = ndp
    return dp[full]


# ── limiting densities ───────────────────────────────────────────────────

_LIMIT_CACHE: dict = {}


def _compile_limit(h: Graph, pattern: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Monomial dictionary of the limiting density of a connected pattern h
    against the given block bit pattern: {per-block exponents: coefficient}.

    In the limit a dominating block of proportion q absorbs a subset S with
    weight q^|S| and no constraint; collision corrections vanish at order
    1/n.  Isolated blocks keep the finite constraints.
    """
    key = (h.key, pattern)
    cached = _LIMIT_CACHE.get(key)
    if cached is not None:
        return cached
    hn = h.n
    full = (1 << hn) - 1
    adjm = _adjacency_masks(h)
    zero = (0,) * len(pattern)
    dp: list[dict[tuple[int, ...], int]] = [dict() for _ in range(1 << hn)]
    dp[0][zero] = 1
    for j, bit in enumerate(pattern):
        ndp: list[dict[tuple[int, ...], int]] = [dict() for _ in range(1 << hn)]
        for mask in range(1 << hn):
            monos = dp[mask]
            if not monos:
                continue
            comp = full & ~mask
            sub = comp
            while True:
                ok = True
                if bit == 0:
                    forbidden = mask | sub
                    s = sub
                    while s:
                        v = (s & -s).bit_length() - 1
                        if adjm[v] & forbidden:
                            ok = False
                            break
                        s &= s - 1
                if ok:
                    k = sub.bit_count()
                    out = ndp[mask | sub]
                    for exps, coeff in monos.items():
                        e2 = exps[:j] + (exps[j] + k,) + exps[j + 1 :]
                        out[e2] = out.get(e2, 0) + coeff
                if sub == 0:
                    break
                sub = (sub - 1) & comp
        dp = ndp
    _LIMIT_CACHE[key] = dp[full]
    return dp[full]


def limit_density(h: Graph, limit: LimitThreshold):
    """Limiting homomorphism density of h in blowups of the limit structure.

    Exact when every proportion is a Fraction; float proportions give float
    output.  Disconnected h multiplies over components.
    """
    pattern = limit.bits
    props = limit.proportions
    result = None
    for comp in connected_components(h):
        monos = _compile_limit(induced(h, comp), pattern)
        val = 0
        for exps, coeff in monos.items():
            term = coeff
            for q, e in zip(props, exps):
                if e:
                    term = term * q**e
            val += term
        result = val if result is None else result * val
    return 1 if result is None else result


def limit_edge_density(limit: LimitThreshold):
    """Limiting edge density t(K2, .) of the limit structure."""
    return limit_density(Graph(2, [(0, 1)]), limit)


# ── discretisation and cleanup ───────────────────────────────────────────


def blow_up(limit: LimitThreshold, n: int) -> BlockStructure:
    """Integer block sizes approximating the proportions at n vertices.

    Sizes are floored; leftover vertices go to the largest block.  Zero
    blocks are dropped and equal-bit neighbours merged.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    sizes = [int(p * n) for p in limit.proportions]
    short = n - sum(sizes)
    if short:
        big = max(range(len(sizes)), key=lambda j: (limit.proportions[j], -j))
        sizes[big] += short
    blocks: list[tuple[int, int]] = []
    for (b, _), s in zip(limit.blocks, sizes):
        if s <= 0:
            continue
        if blocks and blocks[-1][0] == b:
            blocks[-1] = (b, blocks[-1][1] + s)
        else:
            blocks.append((b, s))
    if not blocks:
        raise ValueError("all blocks rounded to zero")
    return BlockStructure(tuple(blocks))


def effective_blocks(limit: LimitThreshold, tol: float = 1e-4) -> LimitThreshold:
    """Drop blocks below tol, merge equal-bit neighbours, renormalize."""
    kept = [(b, p) for b, p in limit.blocks if p >= tol]
    if not kept:
        raise ValueError(f"no block has proportion >= {tol}")
    merged: list[tuple[int, "Fraction | float"]] = []
    for b, p in kept:
        if merged and merged[-1][0] == b:
            merged[-1] = (b, merged[-1][1] + p)
        else:
            merged.append((b, p))
    total = sum(p for _, p in merged)
    return LimitThreshold(tuple((b, p / total) for b, p in merged))
