"""Bicoloured plane trees and the bijection with top factorizations.

An edge-rooted tree is stored as its white root vertex with nested ordered
child lists; the root edge is the edge to the first child, and colour classes
(black/white) alternate with depth.  The rotation at a vertex is (edge to
parent, then child edges in list order); reading the edge labels around white
vertices gives one factor and around black vertices the other, and the
product of the two factors is always the full cycle (1 2 ... k).

Edge labels are assigned by an explicit iterative contour walk that labels an
edge only when traversed from its white endpoint to its black endpoint,
starting with the root edge as label 1.

Colour labels in {1..m} live on white vertices; each black vertex's label is
forced to the maximum label among its neighbours, so black labels are always
derived data (propagate_colours), never enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .perm import Permutation, compose, full_cycle
from .polyring import MultiPoly, PowerSeries, pq_context


class NotATopFactorization(ValueError):
    """The pair does not multiply to the full cycle minimally."""


@dataclass(frozen=True)
class Node:
    """A plane-tree vertex: optional colour label and ordered children."""

    label: int | None
    children: tuple["Node", ...]


@dataclass(frozen=True)
class PlaneTree:
    """A bicoloured plane tree; ``edge_rooted`` marks the full-cycle class."""

    root: Node
    root_white: bool = True
    edge_rooted: bool = True

    def __post_init__(self):
        if self.edge_rooted and (not self.root_white or not self.root.children):
            raise ValueError("an edge-rooted tree needs a white root with a child")

    def edge_count(self) -> int:
        count = 0
        stack = [self.root]
        while stack:
            node = stack.pop()
            count += len(node.children)
            stack.extend(node.children)
        return count

    def vertex_count(self) -> int:
        return self.edge_count() + 1


def leaf(label: int | None = None) -> Node:
    return Node(label, ())


def tree_to_factorization(tree: PlaneTree) -> tuple[Permutation, Permutation]:
    """Edge labels from the contour walk; white cycles, black cycles.

    Returns (alpha, beta) with compose(alpha, beta) equal to the full cycle
    and kappa(alpha) + kappa(beta) = k + 1, k the number of edges.
    """
    if not tree.edge_rooted:
        raise ValueError("factorization reading needs an edge-rooted tree")
    counter = 1
    white_cycles: list[list] = []
    black_cycles: list[list] = []
    # frame: [node, is_white, rotation list, next child index]
    root_rot: list = []
    white_cycles.append(root_rot)
    stack = [[tree.root, True, root_rot, 0]]
    while stack:
        frame = stack[-1]
        node, is_white, rot, idx = frame
        if idx < len(node.children):
            frame[3] += 1
            child = node.children[idx]
            if is_white:
                # white -> black traversal: label now
                child_rot = [counter]
                rot.append(counter)
                counter += 1
            else:
                # black -> white: label assigned on the way back up
                rot.append(None)
                child_rot = [None]
            (black_cycles if is_white else white_cycles).append(child_rot)
            stack.append([child, not is_white, child_rot, 0])
        else:
            stack.pop()
            if stack and is_white and node is not tree.root:
                # ascend white -> black: label now, fill both placeholders
                parent = stack[-1]
                rot[0] = counter
                prot = parent[2]
                prot[prot.index(None)] = counter
                counter += 1
    k = counter - 1
    if k != tree.edge_count():
        raise RuntimeError("contour walk did not label every edge")

    def perm_from_cycles(cycles: list[list]) -> Permutation:
        images = [0] * k
        for cyc in cycles:
            for i, lab in enumerate(cyc):
                images[lab - 1] = cyc[(i + 1) % len(cyc)]
        return Permutation(images)

    return perm_from_cycles(white_cycles), perm_from_cycles(black_cycles)


def factorization_to_tree(
    a: Permutation,
    b: Permutation,
    white_labels_by_min: dict[int, int] | None = None,
) -> PlaneTree:
    """Inverse of :func:`tree_to_factorization`.

    Requires compose(a, b) = (1 2 ... k) and kappa(a) + kappa(b) = k + 1.
    White vertices are the cycles of ``a`` (rotation = cycle order), black
    vertices the cycles of ``b``; the edge labelled j joins the a-cycle and
    b-cycle containing the symbol j, and the root edge is symbol 1.  Optional
    white colour labels are looked up by the minimum symbol of each a-cycle.
    """
    k = a.k
    if b.k != k:
        raise ValueError("size mismatch")
    if compose(a, b) != full_cycle(k):
        raise NotATopFactorization("product is not the full cycle")
    if a.cycle_count() + b.cycle_count() != k + 1:
        raise NotATopFactorization("cycle counts do not reach k + 1")

    used = [False] * (k + 1)

    def consume(symbol: int) -> None:
        if used[symbol]:
            raise NotATopFactorization("symbol reused; factorization is not a tree")
        used[symbol] = True

    def white_label(entry: int) -> int | None:
        if white_labels_by_min is None:
            return None
        return white_labels_by_min[min(_cycle_from(a, entry))]

    def build_white(entry: int) -> Node:
        # rotation at a white vertex is its a-cycle; the entry symbol is the
        # parent edge, the rest are child edges in cycle order
        children = tuple(build_black(s) for s in _cycle_from(a, entry)[1:])
        return Node(white_label(entry), children)

    def build_black(entry: int) -> Node:
        consume(entry)
        children = tuple(build_white_child(s) for s in _cycle_from(b, entry)[1:])
        return Node(None, children)

    def build_white_child(entry: int) -> Node:
        consume(entry)
        return build_white(entry)

    # the root's rotation is its full a-cycle starting at the root edge 1
    root = Node(white_label(1), tuple(build_black(s) for s in _cycle_from(a, 1)))
    if not all(used[1:]):
        raise NotATopFactorization("walk did not reach every symbol")
    return PlaneTree(root, root_white=True, edge_rooted=True)


def _cycle_from(p: Permutation, start: int) -> list[int]:
    seq = [start]
    x = p(start)
    while x != start:
        seq.append(x)
        x = p(x)
    return seq


# -- colour propagation and weights -----------------------------------------


def propagate_colours(
    tree: PlaneTree, white_labels: Sequence[int] | None = None
) -> PlaneTree:
    """Fill black labels as the max over neighbours, given white labels.

    If ``white_labels`` is supplied it relabels the white vertices in
    preorder; otherwise the existing white labels are kept.  Black labels are
    always recomputed (they are forced by the white ones).
    """
    if not tree.root_white:
        raise ValueError("propagation is defined for white-rooted trees")
    it = iter(white_labels) if white_labels is not None else None

    def fill_white(node: Node) -> Node:
        if it is not None:
            lab = next(it)
        else:
            lab = node.label
        if lab is None:
            raise ValueError("white vertex without a label")
        children = tuple(fill_black(c, lab) for c in node.children)
        return Node(lab, children)

    def fill_black(node: Node, parent_label: int) -> Node:
        children = tuple(fill_white(c) for c in node.children)
        lab = max([parent_label] + [c.label for c in children])
        return Node(lab, children)

    root = fill_white(tree.root)
    if it is not None and next(it, None) is not None:
        raise ValueError("too many white labels")
    return PlaneTree(root, tree.root_white, tree.edge_rooted)


def white_count(tree: PlaneTree) -> int:
    count = 0
    stack = [(tree.root, tree.root_white)]
    while stack:
        node, white = stack.pop()
        if white:
            count += 1
        stack.extend((c, not white) for c in node.children)
    return count


def tree_weight(tree: PlaneTree, m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(white label counts, black label counts) as length-m vectors."""
    pvec = [0] * m
    qvec = [0] * m
    stack = [(tree.root, tree.root_white)]
    while stack:
        node, white = stack.pop()
        if node.label is None:
            raise ValueError("tree is not fully coloured")
        (pvec if white else qvec)[node.label - 1] += 1
        stack.extend((c, not white) for c in node.children)
    return tuple(pvec), tuple(qvec)


def weight_monomial(tree: PlaneTree, m: int, ctx) -> MultiPoly:
    pvec, qvec = tree_weight(tree, m)
    return MultiPoly(ctx, {ctx.pack(list(pvec) + list(qvec)): 1})


def colour_tree_by_cycles(tree: PlaneTree, labels_by_min: dict[int, int]) -> PlaneTree:
    """Label whites via the minimum edge label around each white vertex.

    The tree's whites correspond to the cycles of its white-read permutation
    and each white's rotation is exactly its cycle; each is looked up by its
    minimum symbol, then black labels are propagated.
    """
    labels = [labels_by_min[min(rot)] for rot in white_rotations(tree)]
    return propagate_colours(tree, labels)


def white_rotations(tree: PlaneTree) -> list[list[int]]:
    """Edge labels around each white vertex, whites in preorder.

    Reruns the contour-walk labelling; each returned rotation is one cycle of
    the white-read permutation of the tree.
    """
    counter = 1
    root_rot: list = []
    frames = [[tree.root, True, root_rot, 0]]  # node, is_white, rotation, child idx
    whites_rot = [root_rot]
    while frames:
        frame = frames[-1]
        node, is_white, rot, idx = frame
        if idx < len(node.children):
            frame[3] += 1
            child = node.children[idx]
            if is_white:
                child_rot = [counter]
                rot.append(counter)
                counter += 1
            else:
                rot.append(None)
                child_rot = [None]
                whites_rot.append(child_rot)
            frames.append([child, not is_white, child_rot, 0])
        else:
            frames.pop()
            if frames and is_white and node is not tree.root:
                rot[0] = counter
                prot = frames[-1][2]
                prot[prot.index(None)] = counter
                counter += 1
    return whites_rot


# -- enumeration -------------------------------------------------------------


def tree_shapes(edges: int) -> Iterator[Node]:
    """All unlabelled plane trees with the given number of edges below the root."""
    if edges < 0:
        raise ValueError("edges must be >= 0")

    def gen(e: int) -> Iterator[Node]:
        if e == 0:
            yield Node(None, ())
            return
        for first in range(1, e + 1):
            for child in gen(first - 1):
                for rest in gen_forest(e - first):
                    yield Node(None, (child,) + rest)

    def gen_forest(e: int) -> Iterator[tuple[Node, ...]]:
        if e == 0:
            yield ()
            return
        for first in range(1, e + 1):
            for child in gen(first - 1):
                for rest in gen_forest(e - first):
                    yield (child,) + rest

    yield from gen(edges)


def coloured_trees(k: int, m: int) -> Iterator[PlaneTree]:
    """All coloured edge-rooted trees with k edges: shapes x white labelings."""
    if k < 1 or m < 1:
        raise ValueError("k and m must be >= 1")
    for shape in tree_shapes(k):
        bare = PlaneTree(shape, root_white=True, edge_rooted=True)
        w = white_count(bare)
        for labels in product(range(1, m + 1), repeat=w):
            yield propagate_colours(bare, labels)


def tree_series(m: int, order: int) -> PowerSeries:
    """Generating series: x^v coefficient sums tree weights over v-vertex trees."""
    ctx = pq_context(m)
    coeffs: list[dict] = [dict() for _ in range(order + 1)]
    for k in range(1, order):
        v = k + 1
        if v > order:
            break
        acc = coeffs[v]
        for tree in coloured_trees(k, m):
            pvec, qvec = tree_weight(tree, m)
            key = ctx.pack(list(pvec) + list(qvec))
            acc[key] = acc.get(key, 0) + 1
    return PowerSeries(ctx, [MultiPoly(ctx, t) for t in coeffs])


# -- planted-class series -----------------------------------------------------


def _suffix_pvars(ctx, m: int) -> list[MultiPoly]:
    suffix = [MultiPoly.zero(ctx) for _ in range(m + 2)]
    for j in range(m, 0, -1):
        suffix[j] = suffix[j + 1] + MultiPoly.variable(ctx, f"p{j}")
    return suffix


def planted_series(
    m: int, order: int
) -> tuple[list[PowerSeries], list[PowerSeries], list[PowerSeries]]:
    """Fixed point of the planted-class recursions, as (B, W, W-hat) lists.

    B_i: planted black vertex, white root labelled i.  W_i: planted white
    vertex, black root labelled i, properly coloured.  W-hat_i: improperly
    coloured variant (root's white children limited to labels < i, nonempty
    subtree); W-hat_1 is identically zero.  Iteration from B_i = p_i x fixes
    at least one additional x-order per pass.
    """
    if m < 1 or order < 1:
        raise ValueError("m and order must be >= 1")
    ctx = pq_context(m)
    one = PowerSeries.one(ctx, order)
    pvars = [MultiPoly.variable(ctx, f"p{i}") for i in range(1, m + 1)]
    qvars = [MultiPoly.variable(ctx, f"q{i}") for i in range(1, m + 1)]
    px = [PowerSeries.from_list(ctx, [0, pv], order) for pv in pvars]
    qx = [PowerSeries.from_list(ctx, [0, qv], order) for qv in qvars]

    B = list(px)
    W = [PowerSeries.zero(ctx, order)] * m
    What = [PowerSeries.zero(ctx, order)] * m
    for _ in range(order + 2):
        prefix = PowerSeries.zero(ctx, order)
        prefixes = []  # prefix sums B_1 + ... + B_i for i = 0..m
        for i in range(m):
            prefixes.append(prefix)
            prefix = prefix + B[i]
        prefixes.append(prefix)
        What = [
            PowerSeries.zero(ctx, order)
            if i == 0
            else qx[i] * prefixes[i] * (one - prefixes[i]).reciprocal()
            for i in range(m)
        ]
        W = [
            qx[i] * (one - prefixes[i + 1]).reciprocal() - What[i]
            for i in range(m)
        ]
        newB = []
        for i in range(m):
            blocked = W[i] + What[i]
            for j in range(i + 1, m):
                blocked = blocked + (W[j] - qx[j])
            newB.append(px[i] * (one - blocked).reciprocal())
        if newB == B:
            return B, W, What
        B = newB
    raise RuntimeError("planted-series iteration failed to stabilize")


def planted_sum(m: int, order: int) -> PowerSeries:
    """Sum of the B_i series: tree series plus (p_1 + ... + p_m) x."""
    B, _, _ = planted_series(m, order)
    total = B[0]
    for s in B[1:]:
        total = total + s
    return total


def first_recursion_residual(i: int, m: int, order: int) -> PowerSeries:
    """B_i (I - 1 - (p_{i+1}+..+p_m) x + q_i x) - p_i x (B_1+..+B_i - 1)."""
    if not 1 <= i <= m:
        raise ValueError("need 1 <= i <= m")
    ctx = pq_context(m)
    B, _, _ = planted_series(m, order)
    suffix = _suffix_pvars(ctx, m)
    total = B[0]
    for s in B[1:]:
        total = total + s
    partial = B[0]
    for s in B[1:i]:
        partial = partial + s
    qi = MultiPoly.variable(ctx, f"q{i}")
    pi = MultiPoly.variable(ctx, f"p{i}")
    lin = total - 1 + PowerSeries.from_list(ctx, [0, qi - suffix[i + 1]], order)
    px = PowerSeries.from_list(ctx, [0, pi], order)
    return B[i - 1] * lin - px * (partial - 1)


def partial_product_residual(i: int, m: int, order: int) -> PowerSeries:
    """Residual of B_1+..+B_i - 1 = (I-1) prod_{j>i} (ratio of linear shifts)."""
    if not 0 <= i <= m:
        raise ValueError("need 0 <= i <= m")
    ctx = pq_context(m)
    B, _, _ = planted_series(m, order)
    suffix = _suffix_pvars(ctx, m)
    total = B[0]
    for s in B[1:]:
        total = total + s
    lhs = -PowerSeries.one(ctx, order)
    for s in B[:i]:
        lhs = lhs + s
    rhs = total - 1
    for j in range(i + 1, m + 1):
        qj = MultiPoly.variable(ctx, f"q{j}")
        num = total - 1 + PowerSeries.from_list(ctx, [0, qj - suffix[j]], order)
        den = total - 1 + PowerSeries.from_list(ctx, [0, qj - suffix[j + 1]], order)
        rhs = rhs * num * den.reciprocal()
    return lhs - rhs


# -- DOT export ---------------------------------------------------------------


def to_dot(tree: PlaneTree) -> str:
    """Deterministic DOT text; vertex shape encodes the colour class."""
    lines = ["graph planetree {"]
    edges = []
    counter = 0
    stack = [(tree.root, tree.root_white, -1)]
    order = []
    while stack:
        node, white, parent = stack.pop()
        nid = counter
        counter += 1
        order.append((nid, node, white, parent))
        for child in reversed(node.children):
            stack.append((child, not white, nid))
    for nid, node, white, parent in order:
        shape = "circle" if white else "square"
        label = "" if node.label is None else str(node.label)
        lines.append(f'  n{nid} [shape={shape}, label="{label}"];')
        if parent >= 0:
            edges.append((parent, nid))
    first_edge = True
    for u, v in sorted(edges):
        style = ' [penwidth=2]' if first_edge and u == 0 and tree.edge_rooted else ""
        lines.append(f"  n{u} -- n{v}{style};")
        first_edge = False
    lines.append("}")
    return "\n".join(lines)
